"""Adaptive lower-bound instance families for the guessing problem.

Each family fixes a prediction stream and derives the truth adversarially
from the algorithm's own answers (x_i = 1 - y_i), which is well defined
for deterministic algorithms. Determinism itself is enforced the blunt
way: run twice, compare transcripts.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, List, NamedTuple, Optional, Sequence, Tuple

from .core import (CompetitiveClaim, CostValue, INFINITE, MU_PAIR,
                   MeasurePair, PolicyBugError, PredictedInstance, RunRecord,
                   ZERO_PAIR, cost_to_text, is_infinite, record_slack)
from .problems import instance_cost


class DeterminismError(RuntimeError):
    """The algorithm produced two different transcripts on the same feed."""


@dataclass(frozen=True)
class AdversaryFamily:
    """One adaptive family: a prediction stream plus a truth rule.

    predict(i) is the prediction fed at position i; truth(y_i) is the
    revealed bit once the answer is in. measures is the pair the produced
    RunRecord is scored under.
    """

    id: str
    param: object
    predict: Callable[[int], int]
    truth: Callable[[int], int]
    measures: MeasurePair = MU_PAIR


def run_adversary(family: AdversaryFamily, alg,
                  n: int) -> Tuple[PredictedInstance, RunRecord]:
    """Drive one algorithm for n steps and score the induced instance."""
    from .oracles import brute_force_opt

    if n < 1:
        raise ValueError("adversary runs need n >= 1")

    def transcript() -> Tuple[Tuple[int, ...], Tuple[int, ...]]:
        alg.reset()
        xhat: List[int] = []
        answers: List[int] = []
        for i in range(n):
            prediction = family.predict(i)
            xhat.append(prediction)
            answers.append(alg.step(None, prediction))
        return tuple(xhat), tuple(answers)

    first = transcript()
    if transcript() != first:
        raise DeterminismError(
            f"algorithm {getattr(alg, 'id', alg)!r} is not deterministic "
            f"under adversary {family.id}")
    xhat, answers = first
    x = tuple(family.truth(bit) for bit in answers)
    instance = PredictedInstance("asg", family.param, x, xhat, (None,) * n)
    eta0, eta1 = family.measures.evaluate(instance)
    record = RunRecord(
        instance_id=f"adv-{family.id}-{family.param}-n{n}",
        alg_cost=instance_cost(instance, answers),
        opt_cost=brute_force_opt(instance).opt_cost,
        eta0=eta0, eta1=eta1, decisions=answers)
    return instance, record


def purely_online_family(t: int) -> AdversaryFamily:
    """All-zero predictions scored under the zero measures, so the claim
    degenerates to the prediction-free setting."""
    return AdversaryFamily("purely-online", t, lambda i: 0, lambda y: 1 - y,
                           measures=ZERO_PAIR)


def all_ones_family(t: int) -> AdversaryFamily:
    return AdversaryFamily("all-ones", t, lambda i: 1, lambda y: 1 - y)


def asg_inf_family() -> AdversaryFamily:
    return AdversaryFamily("asg-inf", "inf", lambda i: 0, lambda y: 1 - y)


def adv_purely_online(alg, t: int, n: int):
    """Prediction-free lower bound family; checks the exact cost identity
    ALG = (t-1)*OPT + n that every deterministic algorithm satisfies."""
    instance, record = run_adversary(purely_online_family(t), alg, n)
    expected = (t - 1) * record.opt_cost + n
    if record.alg_cost != expected:
        raise PolicyBugError(
            f"adversary identity broken: alg={cost_to_text(record.alg_cost)} "
            f"opt={cost_to_text(record.opt_cost)} t={t} n={n}")
    return instance, record


def adv_all_ones_pred(alg, t: int, n: int):
    """All-ones predictions; mu0 vanishes and ALG = n + (t-1)*sum(x)."""
    instance, record = run_adversary(all_ones_family(t), alg, n)
    if record.eta0 != 0:
        raise PolicyBugError("all-ones adversary produced a nonzero mu0")
    if record.alg_cost != n + (t - 1) * sum(instance.x):
        raise PolicyBugError("all-ones adversary cost identity broken")
    return instance, record


def adv_asg_inf(alg, n: int):
    """All-zero predictions with infinite miss cost: the algorithm either
    misses a 1 (infinite cost) or pays n for guessing 1 everywhere."""
    instance, record = run_adversary(asg_inf_family(), alg, n)
    if record.eta1 != 0:
        raise PolicyBugError("asg-inf adversary produced a nonzero mu1")
    infinite = is_infinite(record.alg_cost)
    clean = record.alg_cost == n and record.opt_cost == 0
    if infinite == clean:
        raise PolicyBugError(
            "asg-inf adversary outcome must be infinite cost or exactly "
            f"n with OPT 0, got alg={cost_to_text(record.alg_cost)} "
            f"opt={cost_to_text(record.opt_cost)}")
    return instance, record


ADVERSARIES = {
    "purely-online": purely_online_family,
    "all-ones": all_ones_family,
    "asg-inf": asg_inf_family,
}


class CurveRow(NamedTuple):
    n: int
    opt: CostValue
    alg: CostValue
    eta0: int
    eta1: int
    slack: CostValue


class SlackCurve(NamedTuple):
    rows: Tuple[CurveRow, ...]
    slope: Optional[Fraction]
    verdict: str  # BOUNDED or UNBOUNDED


def _least_squares_slope(points: Sequence[Tuple[int, CostValue]]) -> Fraction:
    if len(points) < 2:
        return Fraction(0)
    count = len(points)
    sx = sum(Fraction(p[0]) for p in points)
    sy = sum(Fraction(p[1]) for p in points)
    sxx = sum(Fraction(p[0]) ** 2 for p in points)
    sxy = sum(Fraction(p[0]) * Fraction(p[1]) for p in points)
    denom = count * sxx - sx * sx
    if denom == 0:
        return Fraction(0)
    return (count * sxy - sx * sy) / denom


def grow_slack_curve(family: AdversaryFamily, alg, claim: CompetitiveClaim,
                     n_values: Sequence[int]) -> SlackCurve:
    """Slack of one claim against an adversary family as n grows.

    UNBOUNDED when any slack is infinite or the exact least-squares slope
    over the finite points is positive; infinitely satisfied points (an
    infinite bound side) are excluded from the fit.
    """
    rows: List[CurveRow] = []
    for n in n_values:
        _, record = run_adversary(family, alg, n)
        slack = record_slack(record, claim)
        rows.append(CurveRow(n, record.opt_cost, record.alg_cost,
                             record.eta0, record.eta1, slack))
    if any(row.slack is INFINITE for row in rows):
        return SlackCurve(tuple(rows), None, "UNBOUNDED")
    finite = [(row.n, row.slack) for row in rows if not is_infinite(row.slack)]
    slope = _least_squares_slope(finite)
    verdict = "UNBOUNDED" if slope > 0 else "BOUNDED"
    return SlackCurve(tuple(rows), slope, verdict)
