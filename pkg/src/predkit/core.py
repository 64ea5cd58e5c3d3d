"""Shared value objects: instances, costs, error measures, claim checking.

All arithmetic is exact. Costs are ints or Fractions, never floats, and
infinity is a dedicated sentinel rather than a numeric value so the
convention Infinite * 0 == 0 can be applied explicitly during claim
evaluation. Every type here is an immutable value object.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Callable, NamedTuple, Optional, Sequence, Tuple, Union


class MalformedInstance(ValueError):
    """Instance data violates a structural precondition (lengths, bit values)."""


class InvalidInsertion(ValueError):
    """An insertion-monotonicity probe carried a wrongly predicted request."""


class PolicyBugError(RuntimeError):
    """A paging policy tried to evict a page that is not in cache."""


class ConfigError(ValueError):
    """A generator or CLI configuration is unsatisfiable."""


# ---------------------------------------------------------------------------
# Costs
# ---------------------------------------------------------------------------

class _Extreme:
    """Signed infinity sentinel. Deliberately not a float."""

    __slots__ = ("sign",)

    def __init__(self, sign: int):
        self.sign = sign

    def __repr__(self) -> str:
        return "INFINITE" if self.sign > 0 else "NEG_INFINITE"

    def __eq__(self, other: object) -> bool:
        return isinstance(other, _Extreme) and other.sign == self.sign

    def __hash__(self) -> int:
        return hash(("predkit-extreme", self.sign))


INFINITE = _Extreme(1)
NEG_INFINITE = _Extreme(-1)

Exact = Union[int, Fraction]
CostValue = Union[int, Fraction, _Extreme]


def is_infinite(value: CostValue) -> bool:
    return isinstance(value, _Extreme)


def ensure_exact(value: Any) -> Exact:
    """Accept ints and Fractions only; floats are rejected outright."""
    if isinstance(value, bool) or not isinstance(value, (int, Fraction)):
        raise TypeError(f"exact int/Fraction required, got {value!r}")
    return value


def cost_add(a: CostValue, b: CostValue) -> CostValue:
    """Addition where Infinite absorbs. NEG_INFINITE never appears in costs."""
    if a is NEG_INFINITE or b is NEG_INFINITE:
        raise ValueError("NEG_INFINITE is a slack value, not a cost")
    if is_infinite(a) or is_infinite(b):
        return INFINITE
    return a + b


def cost_mul(coefficient: CostValue, value: Exact) -> CostValue:
    """Claim-evaluation product: Infinite * 0 == 0 by convention."""
    if is_infinite(coefficient):
        if value == 0:
            return 0
        if value < 0:
            raise ValueError("infinite coefficient times negative value")
        return INFINITE
    return coefficient * value


def cost_le(a: CostValue, b: CostValue) -> bool:
    """Extended-real comparison a <= b."""
    if a == b:
        return True
    if a is NEG_INFINITE or b is INFINITE:
        return True
    if a is INFINITE or b is NEG_INFINITE:
        return False
    return a <= b


def cost_to_text(value: CostValue) -> str:
    """Exact textual form: "5", "7/2", "inf", "-inf"."""
    if value is INFINITE:
        return "inf"
    if value is NEG_INFINITE:
        return "-inf"
    return str(ensure_exact(value))


def cost_from_text(text: str) -> CostValue:
    text = text.strip()
    if text == "inf":
        return INFINITE
    if text == "-inf":
        return NEG_INFINITE
    value = Fraction(text)
    return int(value) if value.denominator == 1 else value


# ---------------------------------------------------------------------------
# Instances
# ---------------------------------------------------------------------------

def _freeze(obj: Any) -> Any:
    if isinstance(obj, (list, tuple)):
        return tuple(_freeze(item) for item in obj)
    return obj


def bits_from_text(text: str) -> Tuple[int, ...]:
    if not all(c in "01" for c in text):
        raise MalformedInstance(f"bit string must contain only 0/1: {text!r}")
    return tuple(int(c) for c in text)


def bits_to_text(bits: Sequence[int]) -> str:
    return "".join(str(b) for b in bits)


@dataclass(frozen=True)
class PredictedInstance:
    """A problem instance (x, xhat, r): true bits, predicted bits, requests.

    `problem` is one of: asg, bdvc, inter, spill, sat2, dom, pag.
    `param` is the problem parameter: t for asg/bdvc/inter (asg also accepts
    "inf"; bdvc/inter accept None for the unbounded variant), (k, d) for
    spill, cache size k for pag, None for sat2/dom.
    """

    problem: str
    param: Any
    x: Tuple[int, ...]
    xhat: Tuple[int, ...]
    requests: Tuple[Any, ...]

    def __post_init__(self):
        object.__setattr__(self, "x", tuple(self.x))
        object.__setattr__(self, "xhat", tuple(self.xhat))
        object.__setattr__(self, "requests", _freeze(tuple(self.requests)))
        object.__setattr__(self, "param", _freeze(self.param))
        if not (len(self.x) == len(self.xhat) == len(self.requests)):
            raise MalformedInstance(
                f"length mismatch: |x|={len(self.x)} |xhat|={len(self.xhat)} "
                f"|r|={len(self.requests)}")
        for bits in (self.x, self.xhat):
            for b in bits:
                if b not in (0, 1):
                    raise MalformedInstance(f"non-bit value {b!r}")

    @property
    def n(self) -> int:
        return len(self.x)


# ---------------------------------------------------------------------------
# Error measures
# ---------------------------------------------------------------------------

def mu0(instance: PredictedInstance) -> int:
    """Count of positions predicted 0 whose true bit is 1."""
    return sum(xi * (1 - xh) for xi, xh in zip(instance.x, instance.xhat))


def mu1(instance: PredictedInstance) -> int:
    """Count of positions predicted 1 whose true bit is 0."""
    return sum((1 - xi) * xh for xi, xh in zip(instance.x, instance.xhat))


def zero_measure(instance: PredictedInstance) -> int:
    """The identically-zero measure, recovering the prediction-free theory."""
    return 0


@dataclass(frozen=True)
class ErrorMeasure:
    id: str
    evaluate: Callable[[PredictedInstance], Exact]
    claims_insertion_monotone: bool = True


MU0 = ErrorMeasure("mu0", mu0)
MU1 = ErrorMeasure("mu1", mu1)
Z0 = ErrorMeasure("Z0", zero_measure)
Z1 = ErrorMeasure("Z1", zero_measure)


@dataclass(frozen=True)
class MeasurePair:
    eta0: ErrorMeasure
    eta1: ErrorMeasure

    @property
    def id(self) -> str:
        return f"({self.eta0.id},{self.eta1.id})"

    def evaluate(self, instance: PredictedInstance) -> Tuple[Exact, Exact]:
        return (self.eta0.evaluate(instance), self.eta1.evaluate(instance))


MU_PAIR = MeasurePair(MU0, MU1)
ZERO_PAIR = MeasurePair(Z0, Z1)

MEASURE_PAIRS = {"mu": MU_PAIR, "zero": ZERO_PAIR}


class MonotoneReport(NamedTuple):
    verdict: str
    base_value: Exact
    extended_value: Exact
    witness: Optional[PredictedInstance]


def check_insertion_monotone(
    measure: ErrorMeasure,
    base: PredictedInstance,
    insertions: Sequence[Tuple[int, int, int, Any]],
) -> MonotoneReport:
    """Check that inserting correctly predicted requests never increases the measure.

    Each insertion is (position, true_bit, predicted_bit, request); the bits
    must agree or InvalidInsertion is raised. Positions index the sequence as
    already extended by earlier insertions. PASS iff measure(extended) <=
    measure(base); the extended instance is returned as witness on FAIL.
    """
    x = list(base.x)
    xhat = list(base.xhat)
    requests = list(base.requests)
    for position, true_bit, predicted_bit, request in insertions:
        if true_bit != predicted_bit:
            raise InvalidInsertion(
                f"insertion at {position} has x={true_bit} xhat={predicted_bit}")
        if not (0 <= position <= len(x)):
            raise InvalidInsertion(f"position {position} out of range 0..{len(x)}")
        x.insert(position, true_bit)
        xhat.insert(position, predicted_bit)
        requests.insert(position, request)
    extended = PredictedInstance(base.problem, base.param, tuple(x), tuple(xhat),
                                 tuple(requests))
    base_value = measure.evaluate(base)
    extended_value = measure.evaluate(extended)
    if extended_value <= base_value:
        return MonotoneReport("PASS", base_value, extended_value, None)
    return MonotoneReport("FAIL", base_value, extended_value, extended)


# ---------------------------------------------------------------------------
# Competitiveness claims
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CompetitiveClaim:
    """(alpha, beta, gamma)-competitiveness with additive term kappa.

    Strict claims require kappa <= 0. Coefficients are exact nonnegative
    values or INFINITE.
    """

    alpha: CostValue
    beta: CostValue
    gamma: CostValue
    kappa: Exact = 0
    strict: bool = True

    def __post_init__(self):
        for name in ("alpha", "beta", "gamma"):
            v = getattr(self, name)
            if v is NEG_INFINITE:
                raise ValueError(f"{name} may not be -inf")
            if not is_infinite(v) and ensure_exact(v) < 0:
                raise ValueError(f"{name} must be nonnegative, got {v}")
        ensure_exact(self.kappa)
        if self.strict and self.kappa > 0:
            raise ValueError("strict claims require kappa <= 0")

    @property
    def id(self) -> str:
        parts = [cost_to_text(self.alpha), cost_to_text(self.beta),
                 cost_to_text(self.gamma)]
        return f"({','.join(parts)};kappa={cost_to_text(self.kappa)};" \
               f"{'strict' if self.strict else 'asymptotic'})"


@dataclass(frozen=True)
class RunRecord:
    """One algorithm run scored under a fixed measure pair."""

    instance_id: str
    alg_cost: CostValue
    opt_cost: CostValue
    eta0: Exact
    eta1: Exact
    decisions: Tuple[int, ...] = ()


def record_slack(record: RunRecord, claim: CompetitiveClaim) -> CostValue:
    """slack = alg - alpha*opt - beta*eta0 - gamma*eta1, in extended reals.

    Infinite * 0 evaluates to 0. When the bound side is infinite it absorbs
    anything, including an infinite algorithm cost, and the slack is
    NEG_INFINITE. An infinite algorithm cost against a finite bound is the
    only other infinite combination and yields slack INFINITE, which any
    finite kappa rejects.
    """
    terms = (cost_mul(claim.alpha, ensure_exact(record.opt_cost))
             if not is_infinite(record.opt_cost) else INFINITE,
             cost_mul(claim.beta, ensure_exact(record.eta0)),
             cost_mul(claim.gamma, ensure_exact(record.eta1)))
    bound_infinite = any(t is INFINITE for t in terms)
    if bound_infinite:
        return NEG_INFINITE
    bound = sum(terms)
    if record.alg_cost is INFINITE:
        return INFINITE
    return ensure_exact(record.alg_cost) - bound


class ClaimReport(NamedTuple):
    verdict: str
    max_slack: CostValue
    witness: Optional[RunRecord]


def check_claim(records: Sequence[RunRecord], claim: CompetitiveClaim) -> ClaimReport:
    """PASS iff every record satisfies the claim inequality, i.e. max slack <= kappa."""
    max_slack: CostValue = NEG_INFINITE
    witness: Optional[RunRecord] = None
    for record in records:
        slack = record_slack(record, claim)
        if not cost_le(slack, max_slack):
            max_slack = slack
            witness = record
    passed = cost_le(max_slack, claim.kappa)
    return ClaimReport("PASS" if passed else "FAIL", max_slack,
                       None if passed else witness)


# ---------------------------------------------------------------------------
# JSONL serialization
# ---------------------------------------------------------------------------

def _param_to_json(problem: str, param: Any) -> Any:
    if isinstance(param, tuple):
        return list(param)
    return param


def _param_from_json(problem: str, value: Any) -> Any:
    if isinstance(value, list):
        return tuple(value)
    return value


def _requests_to_json(problem: str, requests: Tuple[Any, ...]) -> list:
    if problem == "asg":
        return [None] * len(requests)
    out = []
    for req in requests:
        if problem in ("bdvc", "dom", "spill"):
            out.append(list(req))
        elif problem == "inter":
            out.append([req[0], req[1]])
        elif problem == "sat2":
            out.append([list(clause) for clause in req])
        elif problem == "pag":
            out.append(req)
        else:
            raise MalformedInstance(f"unknown problem {problem!r}")
    return out


def _requests_from_json(problem: str, raw: list) -> Tuple[Any, ...]:
    if problem == "asg":
        return tuple(None for _ in raw)
    out = []
    for item in raw:
        if problem in ("bdvc", "dom", "spill"):
            out.append(tuple(int(v) for v in item))
        elif problem == "inter":
            out.append((int(item[0]), int(item[1])))
        elif problem == "sat2":
            out.append(tuple((int(a), int(b)) for a, b in item))
        elif problem == "pag":
            out.append(int(item))
        else:
            raise MalformedInstance(f"unknown problem {problem!r}")
    return tuple(out)


def instance_to_json(instance: PredictedInstance) -> dict:
    """One-object-per-line form: {problem, t_or_k, x, xhat, requests}."""
    return {
        "problem": instance.problem,
        "t_or_k": _param_to_json(instance.problem, instance.param),
        "x": bits_to_text(instance.x),
        "xhat": bits_to_text(instance.xhat),
        "requests": _requests_to_json(instance.problem, instance.requests),
    }


def instance_from_json(obj: dict) -> PredictedInstance:
    problem = obj["problem"]
    return PredictedInstance(
        problem=problem,
        param=_param_from_json(problem, obj.get("t_or_k")),
        x=bits_from_text(obj["x"]),
        xhat=bits_from_text(obj["xhat"]),
        requests=_requests_from_json(problem, obj["requests"]),
    )


def dump_instances_jsonl(instances: Sequence[PredictedInstance]) -> str:
    return "\n".join(
        json.dumps(instance_to_json(inst), sort_keys=True, separators=(",", ":"))
        for inst in instances)


def load_instances_jsonl(text: str) -> list:
    instances = []
    for line in text.splitlines():
        line = line.strip()
        if line:
            instances.append(instance_from_json(json.loads(line)))
    return instances
