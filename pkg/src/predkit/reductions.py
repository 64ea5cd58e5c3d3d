"""Executable instance reductions between the online problems.

A reduction drives a target-problem algorithm adaptively while replaying a
source instance, producing the target instance it implicitly defines plus
both cost rows. The resulting ReductionTrace is checked against three
conditions:

  O1: alg_P <= alg_Q + a
  O2: opt_Q <= opt_P          (strict; asymptotic relaxes to opt_P + b)
  O3: eta_b(I_Q) <= eta_b(I_P) for b in {0, 1}

Most reductions out of the string-guessing problem share one template:
first every source position becomes a challenge request carrying the source
prediction, then per-position blocks of correctly-0-predicted requests are
appended, built from the revealed truth and the algorithm's challenge
answers.
"""

from __future__ import annotations

import inspect
from dataclasses import dataclass
from typing import Any, Callable, Dict, List, NamedTuple, Optional, Tuple

from .core import (CostValue, INFINITE, NEG_INFINITE, MalformedInstance,
                   MeasurePair, MU_PAIR, PredictedInstance, cost_add, cost_le,
                   is_infinite)
from .problems import (Graph, instance_cost, intervals_overlap, lfd_labels,
                       simulate_paging)


class TemplateViolation(RuntimeError):
    """A block builder emitted a request with a nonzero prediction."""


class ConstructionBug(RuntimeError):
    """A reduction built an instance outside its own declared bounds."""


# ---------------------------------------------------------------------------
# Trace and condition checking
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ReductionTrace:
    """Everything one reduction application produced."""

    reduction_id: str
    variant: str
    measures: str
    instance_p: PredictedInstance
    instance_q: PredictedInstance
    alg_p_cost: CostValue
    alg_q_cost: CostValue
    opt_p: CostValue
    opt_q: CostValue
    eta0_p: int
    eta1_p: int
    eta0_q: int
    eta1_q: int
    a: int = 0
    b: int = 0
    decisions_p: Tuple[int, ...] = ()
    decisions_q: Tuple[int, ...] = ()


class ConditionReport(NamedTuple):
    verdict: str
    conditions: Tuple[Tuple[str, str, CostValue], ...]


def _extended_diff(a: CostValue, b: CostValue) -> CostValue:
    """a - b in extended reals; an infinite bound side absorbs everything."""
    if is_infinite(b):
        return NEG_INFINITE
    if is_infinite(a):
        return INFINITE if a is INFINITE else NEG_INFINITE
    return a - b


def check_conditions(trace: ReductionTrace,
                     variant: Optional[str] = None) -> ConditionReport:
    """Per-condition PASS/FAIL with the violating margin (<= 0 passes)."""
    variant = variant or trace.variant
    margins = [("O1", _extended_diff(trace.alg_p_cost,
                                     cost_add(trace.alg_q_cost, trace.a)))]
    if variant == "strict":
        margins.append(("O2", _extended_diff(trace.opt_q, trace.opt_p)))
    elif variant == "asymptotic":
        margins.append(("O2prime", _extended_diff(trace.opt_q,
                                                  cost_add(trace.opt_p, trace.b))))
    else:
        raise MalformedInstance(f"unknown variant {variant!r}")
    margins.append(("O3_0", trace.eta0_q - trace.eta0_p))
    margins.append(("O3_1", trace.eta1_q - trace.eta1_p))
    rows = tuple((name, "PASS" if cost_le(margin, 0) else "FAIL", margin)
                 for name, margin in margins)
    verdict = "PASS" if all(r[1] == "PASS" for r in rows) else "FAIL"
    return ConditionReport(verdict, rows)


def _make_trace(reduction_id: str, variant: str, instance_p, instance_q,
                y_p, y_q, a=0, b=0, measure_pair: MeasurePair = MU_PAIR,
                alg_p_cost=None, alg_q_cost=None) -> ReductionTrace:
    from .oracles import brute_force_opt

    if alg_p_cost is None:
        alg_p_cost = instance_cost(instance_p, y_p)
    if alg_q_cost is None:
        alg_q_cost = instance_cost(instance_q, y_q)
    eta0_p, eta1_p = measure_pair.evaluate(instance_p)
    eta0_q, eta1_q = measure_pair.evaluate(instance_q)
    return ReductionTrace(
        reduction_id=reduction_id, variant=variant, measures=measure_pair.id,
        instance_p=instance_p, instance_q=instance_q,
        alg_p_cost=alg_p_cost, alg_q_cost=alg_q_cost,
        opt_p=brute_force_opt(instance_p).opt_cost,
        opt_q=brute_force_opt(instance_q).opt_cost,
        eta0_p=eta0_p, eta1_p=eta1_p, eta0_q=eta0_q, eta1_q=eta1_q,
        a=a, b=b, decisions_p=tuple(y_p), decisions_q=tuple(y_q))


def _require(instance: PredictedInstance, problem: str) -> None:
    if instance.problem != problem:
        raise MalformedInstance(
            f"expected a {problem} instance, got {instance.problem}")


def _assert_optimal_encoding(instance: PredictedInstance) -> None:
    from .oracles import verify_optimal_encoding

    if verify_optimal_encoding(instance) != "PASS":
        raise MalformedInstance(
            f"instance truth bits are not an optimal encoding "
            f"({instance.problem}, n={instance.n})")


# ---------------------------------------------------------------------------
# Challenge/block template
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class BlockRequest:
    """Annotated block item; the template rejects nonzero predictions."""

    request: Any
    predicted: int = 0


@dataclass(frozen=True)
class ChallengeBlockSpec:
    """Builders for the challenge-then-blocks construction.

    challenge(i) returns the i-th challenge request. block(x_i, y'_i, j)
    returns the j-th block as a list or a generator; generators receive the
    target algorithm's decision for each yielded request via send(), which
    is how the adaptive constructions steer. Builders may accept a fourth
    argument: the absolute request index at which their block starts.
    """

    problem: str
    param: Any
    challenge: Callable[[int], Any]
    block: Callable


def _block_takes_base(builder: Callable) -> bool:
    params = inspect.signature(builder).parameters
    positional = [p for p in params.values()
                  if p.kind in (p.POSITIONAL_ONLY, p.POSITIONAL_OR_KEYWORD)]
    return len(positional) >= 4


def template_reduce(spec: ChallengeBlockSpec, alg_q, instance_p,
                    reduction_id: str = "template",
                    measure_pair: MeasurePair = MU_PAIR) -> ReductionTrace:
    """Replay the challenge/block construction against one target algorithm.

    Challenges carry the source predictions and truth bits; block requests
    are appended afterwards, all predicted 0 with truth 0, so any insertion
    monotone measure evaluates the target instance at most as high as the
    source.
    """
    _require(instance_p, "asg")
    alg_q.reset()
    n = instance_p.n
    requests: List[Any] = []
    x_q: List[int] = []
    xhat_q: List[int] = []
    y_q: List[int] = []
    y_p: List[int] = []

    for i in range(n):
        request = spec.challenge(i)
        requests.append(request)
        x_q.append(instance_p.x[i])
        xhat_q.append(instance_p.xhat[i])
        decision = alg_q.step(request, instance_p.xhat[i])
        y_q.append(decision)
        y_p.append(decision)

    takes_base = _block_takes_base(spec.block)

    def emit(item) -> int:
        if isinstance(item, BlockRequest):
            if item.predicted != 0:
                raise TemplateViolation(
                    f"block request predicted {item.predicted}, must be 0")
            request = item.request
        else:
            request = item
        requests.append(request)
        x_q.append(0)
        xhat_q.append(0)
        decision = alg_q.step(request, 0)
        y_q.append(decision)
        return decision

    for j in range(n):
        args = (instance_p.x[j], y_p[j], j)
        block = spec.block(*args, len(requests)) if takes_base else spec.block(*args)
        if inspect.isgenerator(block):
            try:
                item = next(block)
                while True:
                    decision = emit(item)
                    item = block.send(decision)
            except StopIteration:
                pass
        else:
            for item in block:
                emit(item)

    instance_q = PredictedInstance(spec.problem, spec.param, tuple(x_q),
                                   tuple(xhat_q), tuple(requests))
    return _make_trace(reduction_id, "strict", instance_p, instance_q,
                       y_p, y_q, measure_pair=measure_pair)


# ---------------------------------------------------------------------------
# String guessing -> covering problems
# ---------------------------------------------------------------------------

def red_asg_to_bdvc(t: int, alg_q, instance_p,
                    measure_pair: MeasurePair = MU_PAIR) -> ReductionTrace:
    """Challenges are isolated vertices; a truth-1 position grows one pendant
    if the algorithm guessed 1, or t pendants if it guessed 0."""
    _require(instance_p, "asg")
    if instance_p.param != t:
        raise MalformedInstance(f"instance has t={instance_p.param}, asked {t}")

    def challenge(i: int):
        return ()

    def block(x_j: int, y_j: int, j: int):
        if x_j == 0:
            return []
        return [(j,)] if y_j == 1 else [(j,)] * t

    spec = ChallengeBlockSpec("bdvc", t, challenge, block)
    return template_reduce(spec, alg_q, instance_p,
                           reduction_id="asg-to-bdvc", measure_pair=measure_pair)


def red_asg_to_bdvc_broken(t: int, alg_q, instance_p,
                           measure_pair: MeasurePair = MU_PAIR) -> ReductionTrace:
    """Deliberately wrong fixture: the 0-guess block is one pendant short, so
    the condition checker must catch it through O1."""
    _require(instance_p, "asg")

    def challenge(i: int):
        return ()

    def block(x_j: int, y_j: int, j: int):
        if x_j == 0:
            return []
        return [(j,)] if y_j == 1 else [(j,)] * (t - 1)

    spec = ChallengeBlockSpec("bdvc", t, challenge, block)
    return template_reduce(spec, alg_q, instance_p,
                           reduction_id="asg-to-bdvc-broken",
                           measure_pair=measure_pair)


def red_asg_to_ir(t: int, alg_q, instance_p,
                  measure_pair: MeasurePair = MU_PAIR) -> ReductionTrace:
    """Interval analogue: disjoint challenge intervals; a truth-1 position
    grows one identical copy (guess 1) or t disjoint sub-intervals (guess 0).

    Challenge i occupies [i*(2t+2), i*(2t+2)+2t]; sub-intervals sit at odd
    offsets inside it, pairwise disjoint under closed-interval overlap.
    """
    _require(instance_p, "asg")
    if instance_p.param != t:
        raise MalformedInstance(f"instance has t={instance_p.param}, asked {t}")
    span = 2 * t + 2

    def challenge(i: int):
        return (i * span, i * span + 2 * t)

    def block(x_j: int, y_j: int, j: int):
        if x_j == 0:
            return []
        base = j * span
        if y_j == 1:
            return [(base, base + 2 * t)]
        return [(base + 2 * m - 1, base + 2 * m) for m in range(1, t + 1)]

    spec = ChallengeBlockSpec("inter", t, challenge, block)
    return template_reduce(spec, alg_q, instance_p,
                           reduction_id="asg-to-ir", measure_pair=measure_pair)


def _has_k_clique(adj: List[set], k: int) -> bool:
    from itertools import combinations

    vertices = range(len(adj))
    if len(adj) < k:
        return False
    return any(all(b in adj[a] for a, b in combinations(combo, 2))
               for combo in combinations(vertices, k))


def red_asg_to_spill(k: int, t: int, alg_q, instance_p,
                     measure_pair: MeasurePair = MU_PAIR) -> ReductionTrace:
    """Degree-bounded k-spill image with adaptive 0-guess blocks.

    Every block ends with a final vertex linking consecutive challenges. A
    truth-1 guess-1 block is a ready-made clique; a truth-1 guess-0 block
    feeds the algorithm vertices until it spills t of them (or keeps k,
    which is already infeasible), then pads to a k-clique. With one color
    the problem collapses to vertex cover, so k=1 routes there.
    """
    if k == 1:
        return red_asg_to_bdvc(t, alg_q, instance_p, measure_pair=measure_pair)
    _require(instance_p, "asg")
    if instance_p.param != t:
        raise MalformedInstance(f"instance has t={instance_p.param}, asked {t}")
    n = instance_p.n
    degree_bound = t + k + 1

    def final_edges(j: int):
        return (j, j + 1) if j + 1 < n else (j,)

    def challenge(i: int):
        return ()

    def block(x_j: int, y_j: int, j: int, base: int):
        if x_j == 0:
            return [final_edges(j)]
        if y_j == 1:
            clique = [tuple([j] + [base + l for l in range(m)])
                      for m in range(k)]
            return clique + [final_edges(j)]

        def grow():
            kept: List[int] = []      # absolute indices with decision 0
            spilled = 0
            count = 0
            local_adj: List[set] = []  # block-local adjacency for clique test
            while spilled < t and len(kept) < k:
                local = {l for l in range(count) if base + l in kept}
                decision = yield tuple([j] + kept)
                for l in local:
                    local_adj[l].add(count)
                local_adj.append(local)
                if decision == 1:
                    spilled += 1
                else:
                    kept.append(base + count)
                count += 1
            while not _has_k_clique(local_adj, k):
                local = set(range(count))
                yield tuple([j] + [base + l for l in range(count)])
                for l in local:
                    local_adj[l].add(count)
                local_adj.append(local)
                count += 1
            if count > t + k - 1:
                raise ConstructionBug(
                    f"block {j} grew {count} nonfinal vertices, bound {t + k - 1}")
            yield final_edges(j)

        return grow()

    spec = ChallengeBlockSpec("spill", (k, degree_bound), challenge, block)
    trace = template_reduce(spec, alg_q, instance_p,
                            reduction_id="asg-to-spill",
                            measure_pair=measure_pair)
    if Graph(trace.instance_q.requests).max_degree() > degree_bound:
        raise ConstructionBug("image exceeds its declared degree bound")
    return trace


# ---------------------------------------------------------------------------
# Covering problems -> string guessing, and between each other
# ---------------------------------------------------------------------------

def red_bdvc_to_asg(t: int, alg_q, instance_p,
                    measure_pair: MeasurePair = MU_PAIR) -> ReductionTrace:
    """Forward the cover instance's predictions to a guessing algorithm and
    copy its guesses, overriding to 1 whenever an already-revealed neighbor
    was left uncovered. The guessing instance's truth is the cover instance's
    own optimal encoding, revealed after the run."""
    _require(instance_p, "bdvc")
    if not isinstance(t, int):
        raise MalformedInstance("degree-bounded source needs an integer t")
    graph = Graph(instance_p.requests)
    if graph.max_degree() > t:
        raise MalformedInstance(
            f"max degree {graph.max_degree()} exceeds the bound {t}")
    _assert_optimal_encoding(instance_p)

    alg_q.reset()
    y_p: List[int] = []
    y_q: List[int] = []
    for i, back in enumerate(instance_p.requests):
        guess = alg_q.step(None, instance_p.xhat[i])
        y_q.append(guess)
        if any(y_p[j] == 0 for j in back):
            y_p.append(1)
        else:
            y_p.append(guess)

    instance_q = PredictedInstance("asg", t, instance_p.x, instance_p.xhat,
                                   (None,) * instance_p.n)
    return _make_trace("bdvc-to-asg", "strict", instance_p, instance_q,
                       y_p, y_q, measure_pair=measure_pair)


def red_ir_to_bdvc(t: int, alg_q, instance_p,
                   measure_pair: MeasurePair = MU_PAIR) -> ReductionTrace:
    """Stream the interval graph: vertex i carries back-edges to every
    earlier overlapping interval. Decisions transfer unchanged, and both
    costs and optima coincide exactly."""
    _require(instance_p, "inter")
    intervals = instance_p.requests

    alg_q.reset()
    requests: List[Tuple[int, ...]] = []
    y: List[int] = []
    for i, interval in enumerate(intervals):
        back = tuple(j for j in range(i)
                     if intervals_overlap(intervals[j], interval))
        requests.append(back)
        y.append(alg_q.step(back, instance_p.xhat[i]))

    instance_q = PredictedInstance("bdvc", t, instance_p.x, instance_p.xhat,
                                   tuple(requests))
    return _make_trace("ir-to-bdvc", "strict", instance_p, instance_q,
                       y, y, measure_pair=measure_pair)


def red_ir_to_sat2(alg_q, instance_p,
                   measure_pair: MeasurePair = MU_PAIR) -> ReductionTrace:
    """Per interval: one interval clause (not-v_i twice) plus a collision
    clause (v_i or v_j) per earlier overlapping interval. The interval
    decision copies the assignment bit unless an earlier kept interval
    overlaps, which forces a rejection."""
    _require(instance_p, "inter")
    intervals = instance_p.requests

    alg_q.reset()
    requests: List[Tuple[Tuple[int, int], ...]] = []
    y_p: List[int] = []
    y_q: List[int] = []
    for i, interval in enumerate(intervals):
        overlapping = [j for j in range(i)
                       if intervals_overlap(intervals[j], interval)]
        var = i + 1
        group = [(-var, -var)] + [(j + 1, var) for j in overlapping]
        requests.append(tuple(group))
        assignment_bit = alg_q.step(tuple(group), instance_p.xhat[i])
        y_q.append(assignment_bit)
        if any(y_p[j] == 0 for j in overlapping):
            y_p.append(1)
        else:
            y_p.append(assignment_bit)

    instance_q = PredictedInstance("sat2", None, instance_p.x,
                                   instance_p.xhat, tuple(requests))
    return _make_trace("ir-to-sat2", "strict", instance_p, instance_q,
                       y_p, y_q, measure_pair=measure_pair)


def red_vc_to_dom(variant: str, alg_q, instance_p,
                  measure_pair: MeasurePair = MU_PAIR) -> ReductionTrace:
    """Stream a domination supergraph in which cover decisions embed.

    Both variants subdivide every edge: the subdivision vertex of (u, w) is
    adjacent to u and w and predicted 0. The strict variant streams exactly
    that and needs every source vertex non-isolated. The asymptotic variant
    first connects everything through a hub: prologue s1 (predicted 1), s2,
    their subdivision vertex, then per step a hub edge and its subdivision
    vertex before the source edges' ones. The cover accepts vertex i exactly
    when the algorithm accepted any vertex of step i.
    """
    _require(instance_p, "bdvc")
    if variant not in ("strict", "asymptotic"):
        raise MalformedInstance(f"unknown variant {variant!r}")
    graph = Graph(instance_p.requests)
    if variant == "strict" and any(graph.degree(v) == 0 for v in range(graph.n)):
        raise MalformedInstance(
            "strict variant requires a source graph without isolated vertices")

    alg_q.reset()
    requests: List[Tuple[int, ...]] = []
    x_q: List[int] = []
    xhat_q: List[int] = []
    y_q: List[int] = []
    y_p: List[int] = []
    position: Dict[Any, int] = {}

    def emit(key, back, truth, predicted) -> int:
        position[key] = len(requests)
        request = tuple(position[b] for b in back)
        requests.append(request)
        x_q.append(truth)
        xhat_q.append(predicted)
        decision = alg_q.step(request, predicted)
        y_q.append(decision)
        return decision

    if variant == "asymptotic":
        emit("s1", (), 1, 1)
        emit("s2", ("s1",), 0, 0)
        emit(("sub", "s1", "s2"), ("s1", "s2"), 0, 0)

    for i, back in enumerate(instance_p.requests):
        step_decisions = []
        source_back = tuple(("v", j) for j in back)
        if variant == "asymptotic":
            step_decisions.append(emit(("v", i), ("s1",) + source_back,
                                       instance_p.x[i], instance_p.xhat[i]))
            step_decisions.append(emit(("hub", i), ("s1", ("v", i)), 0, 0))
        else:
            step_decisions.append(emit(("v", i), source_back,
                                       instance_p.x[i], instance_p.xhat[i]))
        for j in back:
            step_decisions.append(emit(("sub", j, i), (("v", j), ("v", i)),
                                       0, 0))
        y_p.append(1 if any(step_decisions) else 0)

    instance_q = PredictedInstance("dom", None, tuple(x_q), tuple(xhat_q),
                                   tuple(requests))
    b = 1 if variant == "asymptotic" else 0
    return _make_trace("vc-to-dom", variant, instance_p, instance_q,
                       y_p, y_q, b=b, measure_pair=measure_pair)


def red_vc_to_asg(alg_q, instance_p,
                  measure_pair: MeasurePair = MU_PAIR) -> ReductionTrace:
    """Mirror cover decisions into guessing with infinite miss cost. Any
    uncovered edge has an endpoint in the optimal cover, so an infeasible
    cover shows up as a missed true 1 on the guessing side."""
    _require(instance_p, "bdvc")
    _assert_optimal_encoding(instance_p)

    alg_q.reset()
    y = [alg_q.step(None, xh) for xh in instance_p.xhat]
    instance_q = PredictedInstance("asg", "inf", instance_p.x,
                                   instance_p.xhat, (None,) * instance_p.n)
    return _make_trace("vc-to-asg", "strict", instance_p, instance_q,
                       y, y, measure_pair=measure_pair)


# ---------------------------------------------------------------------------
# Paging -> string guessing, and the guessing hierarchy step
# ---------------------------------------------------------------------------

def red_pag_to_asg(t: int, alg_q, instance_p,
                   measure_pair: MeasurePair = MU_PAIR) -> ReductionTrace:
    """Drive the flush-when-zero rule with the guessing algorithm's outputs
    as associated bits, then append t all-ones positions. The truth is the
    optimal eviction encoding followed by t ones, which keeps the guessing
    optimum at t + sum(x) = offline fault count for traces with at least t
    distinct pages."""
    _require(instance_p, "pag")
    if instance_p.param != t:
        raise MalformedInstance(
            f"instance has cache size {instance_p.param}, asked {t}")
    trace = instance_p.requests
    if len(set(trace)) < t:
        raise MalformedInstance(
            f"trace has {len(set(trace))} distinct pages, needs at least {t}")
    labels = lfd_labels(trace, t)
    if tuple(instance_p.x) != labels:
        raise MalformedInstance(
            "paging truth bits disagree with the optimal eviction encoding")

    alg_q.reset()
    bits: Dict[int, int] = {}
    y_q: List[int] = []

    def choose(i: int, page: int, cache: frozenset) -> List[int]:
        flagged = [p for p in cache if bits[p] == 1]
        if flagged:
            return [min(flagged)]
        return sorted(cache)

    def associate(i: int, page: int) -> None:
        guess = alg_q.step(None, instance_p.xhat[i])
        y_q.append(guess)
        bits[page] = guess

    faults, _ = simulate_paging(trace, t, choose, on_request=associate)
    for _ in range(t):
        y_q.append(alg_q.step(None, 1))

    instance_q = PredictedInstance("asg", t, labels + (1,) * t,
                                   tuple(instance_p.xhat) + (1,) * t,
                                   (None,) * (instance_p.n + t))
    return _make_trace("pag-to-asg", "strict", instance_p, instance_q,
                       (), y_q, measure_pair=measure_pair, alg_p_cost=faults)


def red_asg_step(t: int, alg_q, instance_p,
                 measure_pair: MeasurePair = MU_PAIR) -> ReductionTrace:
    """Identity reduction raising the miss penalty from t to t+1; the cost
    difference is exactly the number of missed true 1s."""
    _require(instance_p, "asg")
    if not isinstance(t, int):
        raise MalformedInstance("the penalty step needs a finite t")
    if instance_p.param != t:
        raise MalformedInstance(f"instance has t={instance_p.param}, asked {t}")

    alg_q.reset()
    y = [alg_q.step(None, xh) for xh in instance_p.xhat]
    instance_q = PredictedInstance("asg", t + 1, instance_p.x,
                                   instance_p.xhat, instance_p.requests)
    return _make_trace("asg-step", "strict", instance_p, instance_q,
                       y, y, measure_pair=measure_pair)


# ---------------------------------------------------------------------------
# Registry
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Reduction:
    """Registry row: metadata plus an applier taking (alg_q, instance)."""

    id: str
    source: str
    target: str
    variant: str
    a: int
    b: int
    apply: Callable[..., ReductionTrace]
    expect_opt_equal: bool = False
    expect_alg_equal: bool = False


def _apply_spill(alg_q, instance_p, k: int = 2, **kw) -> ReductionTrace:
    return red_asg_to_spill(k, instance_p.param, alg_q, instance_p, **kw)


def _apply_vc_to_dom(alg_q, instance_p, variant: str = "strict",
                     **kw) -> ReductionTrace:
    return red_vc_to_dom(variant, alg_q, instance_p, **kw)


REDUCTIONS: Dict[str, Reduction] = {r.id: r for r in [
    Reduction("asg-to-bdvc", "asg", "bdvc", "strict", 0, 0,
              lambda alg, inst, **kw: red_asg_to_bdvc(inst.param, alg, inst, **kw),
              expect_opt_equal=True),
    Reduction("asg-to-ir", "asg", "inter", "strict", 0, 0,
              lambda alg, inst, **kw: red_asg_to_ir(inst.param, alg, inst, **kw),
              expect_opt_equal=True),
    Reduction("asg-to-spill", "asg", "spill", "strict", 0, 0, _apply_spill,
              expect_opt_equal=True),
    Reduction("bdvc-to-asg", "bdvc", "asg", "strict", 0, 0,
              lambda alg, inst, **kw: red_bdvc_to_asg(inst.param, alg, inst, **kw),
              expect_opt_equal=True),
    Reduction("ir-to-bdvc", "inter", "bdvc", "strict", 0, 0,
              lambda alg, inst, **kw: red_ir_to_bdvc(inst.param, alg, inst, **kw),
              expect_opt_equal=True, expect_alg_equal=True),
    Reduction("ir-to-sat2", "inter", "sat2", "strict", 0, 0,
              lambda alg, inst, **kw: red_ir_to_sat2(alg, inst, **kw)),
    Reduction("vc-to-dom", "bdvc", "dom", "strict", 0, 1, _apply_vc_to_dom),
    Reduction("vc-to-asg", "bdvc", "asg", "strict", 0, 0,
              lambda alg, inst, **kw: red_vc_to_asg(alg, inst, **kw),
              expect_opt_equal=True),
    Reduction("pag-to-asg", "pag", "asg", "strict", 0, 0,
              lambda alg, inst, **kw: red_pag_to_asg(inst.param, alg, inst, **kw),
              expect_opt_equal=True),
    Reduction("asg-step", "asg", "asg", "strict", 0, 0,
              lambda alg, inst, **kw: red_asg_step(inst.param, alg, inst, **kw),
              expect_opt_equal=True),
]}

BROKEN_REDUCTIONS: Dict[str, Reduction] = {r.id: r for r in [
    Reduction("asg-to-bdvc-broken", "asg", "bdvc", "strict", 0, 0,
              lambda alg, inst, **kw: red_asg_to_bdvc_broken(
                  inst.param, alg, inst, **kw)),
]}
