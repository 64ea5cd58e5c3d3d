"""Feasibility predicates, cost functions, and request semantics.

Seven problems share the instance shape from core:

- asg: asymmetric string guessing. Requests are bare prompts; guessing 1
  costs 1, missing a true 1 costs t (Infinite for t = "inf").
- bdvc: online vertex cover under vertex arrival, optional max-degree bound.
- inter: interval rejection, optional overlap bound. Intervals are closed,
  so sharing an endpoint counts as overlapping.
- spill: keep-set must stay k-colorable, optional degree bound.
- sat2: 2-SAT clause minimization; cost counts unsatisfied clauses.
- dom: dominating set under vertex arrival.
- pag: paging with a size-k cache; cost counts faults.

Graph requests are per-arrival back-edge lists; a vertex arrives together
with its edges to already-revealed vertices.
"""

from __future__ import annotations

from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple

from .core import (CostValue, INFINITE, MalformedInstance, PolicyBugError,
                   PredictedInstance)


class InvalidInstance(ValueError):
    """The instance itself violates a declared bound (degree, overlap)."""


# ---------------------------------------------------------------------------
# Graphs under vertex arrival
# ---------------------------------------------------------------------------

class Graph:
    """Simple graph built from back-edge arrival lists."""

    def __init__(self, arrivals: Sequence[Sequence[int]]):
        self.n = len(arrivals)
        self.adj: List[set] = [set() for _ in range(self.n)]
        self.edges: List[Tuple[int, int]] = []
        for i, back in enumerate(arrivals):
            seen = set()
            for j in back:
                if not (0 <= j < i):
                    raise MalformedInstance(
                        f"vertex {i} lists back-neighbor {j} not yet revealed")
                if j in seen:
                    raise MalformedInstance(f"duplicate edge ({j},{i})")
                seen.add(j)
                self.adj[i].add(j)
                self.adj[j].add(i)
                self.edges.append((j, i))

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def max_degree(self) -> int:
        return max((len(a) for a in self.adj), default=0)


def graph_from_requests(requests: Sequence[Any]) -> Graph:
    return Graph(requests)


# ---------------------------------------------------------------------------
# String guessing
# ---------------------------------------------------------------------------

def _check_bits(name: str, bits: Sequence[int]) -> None:
    for b in bits:
        if b not in (0, 1):
            raise MalformedInstance(f"{name} contains non-bit {b!r}")


def asg_cost(t: int, x: Sequence[int], y: Sequence[int]) -> int:
    """Sum over positions of y_i + t * x_i * (1 - y_i)."""
    if len(x) != len(y):
        raise MalformedInstance(f"length mismatch |x|={len(x)} |y|={len(y)}")
    _check_bits("x", x)
    _check_bits("y", y)
    if not (isinstance(t, int) and t >= 1):
        raise MalformedInstance(f"t must be a positive integer, got {t!r}")
    return sum(yi + t * xi * (1 - yi) for xi, yi in zip(x, y))


def asg_inf_cost(x: Sequence[int], y: Sequence[int]) -> CostValue:
    """Sum of y if no true 1 is missed, Infinite otherwise."""
    if len(x) != len(y):
        raise MalformedInstance(f"length mismatch |x|={len(x)} |y|={len(y)}")
    _check_bits("x", x)
    _check_bits("y", y)
    if any(xi == 1 and yi == 0 for xi, yi in zip(x, y)):
        return INFINITE
    return sum(y)


# ---------------------------------------------------------------------------
# Vertex cover / dominating set / spill
# ---------------------------------------------------------------------------

def vc_check_and_cost(requests: Sequence[Any], y: Sequence[int],
                      t_bound: Optional[int] = None):
    """Feasible iff every edge has an accepted endpoint; cost is sum(y).

    A t_bound applies to the instance, not the solution: exceeding it raises
    InvalidInstance.
    """
    g = graph_from_requests(requests)
    if len(y) != g.n:
        raise MalformedInstance(f"decision length {len(y)} != {g.n} vertices")
    if t_bound is not None and g.max_degree() > t_bound:
        raise InvalidInstance(f"max degree {g.max_degree()} exceeds bound {t_bound}")
    feasible = all(y[u] == 1 or y[v] == 1 for u, v in g.edges)
    return (True, sum(y)) if feasible else (False, None)


def intervals_overlap(a: Tuple[int, int], b: Tuple[int, int]) -> bool:
    """Closed-interval overlap: sharing a single point counts."""
    return max(a[0], b[0]) <= min(a[1], b[1])


def ir_check_and_cost(intervals: Sequence[Tuple[int, int]], y: Sequence[int],
                      t_bound: Optional[int] = None):
    """Feasible iff kept intervals (y_i = 0) are pairwise nonoverlapping."""
    if len(y) != len(intervals):
        raise MalformedInstance("decision length != interval count")
    for left, right in intervals:
        if not left < right:
            raise MalformedInstance(f"interval [{left},{right}] needs left < right")
    n = len(intervals)
    if t_bound is not None:
        for i in range(n):
            overlaps = sum(1 for j in range(n)
                           if j != i and intervals_overlap(intervals[i], intervals[j]))
            if overlaps > t_bound:
                raise InvalidInstance(
                    f"interval {i} overlaps {overlaps} others, bound {t_bound}")
    kept = [i for i in range(n) if y[i] == 0]
    for a in range(len(kept)):
        for b in range(a + 1, len(kept)):
            if intervals_overlap(intervals[kept[a]], intervals[kept[b]]):
                return (False, None)
    return (True, sum(y))


def spill_check_and_cost(requests: Sequence[Any], y: Sequence[int], k: int,
                         d_bound: Optional[int] = None):
    """Feasible iff the subgraph induced by y_i = 0 is k-colorable."""
    from .oracles import k_colorable  # local import breaks the module cycle

    g = graph_from_requests(requests)
    if len(y) != g.n:
        raise MalformedInstance("decision length != vertex count")
    if d_bound is not None and g.max_degree() > d_bound:
        raise InvalidInstance(f"max degree {g.max_degree()} exceeds bound {d_bound}")
    kept = [v for v in range(g.n) if y[v] == 0]
    index = {v: pos for pos, v in enumerate(kept)}
    sub_adj = [[index[u] for u in g.adj[v] if u in index] for v in kept]
    if k_colorable(sub_adj, k):
        return (True, sum(y))
    return (False, None)


def dom_check_and_cost(requests: Sequence[Any], y: Sequence[int]):
    """Feasible iff every vertex is accepted or has an accepted neighbor."""
    g = graph_from_requests(requests)
    if len(y) != g.n:
        raise MalformedInstance("decision length != vertex count")
    for v in range(g.n):
        if y[v] == 1 or any(y[u] == 1 for u in g.adj[v]):
            continue
        return (False, None)
    return (True, sum(y))


# ---------------------------------------------------------------------------
# 2-SAT clause minimization
# ---------------------------------------------------------------------------

def sat2_cost(clauses: Sequence[Tuple[int, int]], assignment: Sequence[int]) -> int:
    """Count unsatisfied clauses. Literals are signed 1-based variable indices."""
    _check_bits("assignment", assignment)

    def lit_true(lit: int) -> bool:
        var = abs(lit)
        if lit == 0 or var > len(assignment):
            raise MalformedInstance(f"unknown variable in literal {lit}")
        value = assignment[var - 1] == 1
        return value if lit > 0 else not value

    return sum(1 for a, b in clauses if not (lit_true(a) or lit_true(b)))


def sat2_clauses_of(requests: Sequence[Any]) -> List[Tuple[int, int]]:
    """Flatten per-arrival clause groups into one clause list."""
    clauses: List[Tuple[int, int]] = []
    for i, group in enumerate(requests):
        for a, b in group:
            if max(abs(a), abs(b)) > i + 1 or a == 0 or b == 0:
                raise MalformedInstance(
                    f"request {i} clause ({a},{b}) references an unrevealed variable")
            clauses.append((a, b))
    return clauses


# ---------------------------------------------------------------------------
# Paging
# ---------------------------------------------------------------------------

def simulate_paging(trace: Sequence[int], k: int,
                    choose_evictions: Callable[[int, int, frozenset], Sequence[int]],
                    on_request: Optional[Callable] = None):
    """Run one eviction policy over a trace with an initially empty cache.

    choose_evictions(i, page, cache) is called only on a fault with a full
    cache and returns the pages to evict; evicting a non-cached page raises
    PolicyBugError. Returns (faults, events) where each event is a dict
    {"i", "page", "kind", "evicted"}.
    """
    if not (isinstance(k, int) and k >= 1):
        raise MalformedInstance(f"cache size must be a positive integer, got {k!r}")
    cache: set = set()
    faults = 0
    events = []
    for i, page in enumerate(trace):
        if page in cache:
            events.append({"i": i, "page": page, "kind": "hit", "evicted": []})
        else:
            faults += 1
            evicted: List[int] = []
            if len(cache) >= k:
                victims = list(choose_evictions(i, page, frozenset(cache)))
                if not victims:
                    raise PolicyBugError(f"no eviction offered on full-cache fault at {i}")
                for victim in victims:
                    if victim not in cache:
                        raise PolicyBugError(f"evicting non-cached page {victim} at {i}")
                    cache.remove(victim)
                    evicted.append(victim)
            cache.add(page)
            events.append({"i": i, "page": page, "kind": "fault", "evicted": evicted})
        if on_request is not None:
            on_request(i, page)
    return faults, events


def paging_cost(trace: Sequence[int], k: int, choose_evictions) -> int:
    """Fault count of the policy on the trace (cache starts empty)."""
    faults, _ = simulate_paging(trace, k, choose_evictions)
    return faults


def _next_occurrence_table(trace: Sequence[int]) -> List[int]:
    """next_occ[i] = index of the next request to trace[i], or len(trace)."""
    n = len(trace)
    next_occ = [n] * n
    last: Dict[int, int] = {}
    for i in range(n - 1, -1, -1):
        page = trace[i]
        next_occ[i] = last.get(page, n)
        last[page] = i
    return next_occ


def lfd_run(trace: Sequence[int], k: int):
    """Deterministic longest-forward-distance run.

    On a full-cache fault, evicts the cached page whose next request is
    furthest away; never-requested-again counts as infinitely far; ties break
    on the smallest page id. Returns (faults, evictions, events) with
    evictions as a list of (request_index, evicted_page).
    """
    n = len(trace)
    next_occ = _next_occurrence_table(trace)
    latest: Dict[int, int] = {}
    evictions: List[Tuple[int, int]] = []

    def choose(i: int, page: int, cache: frozenset) -> List[int]:
        # Next request of a cached page = next_occ of its latest occurrence.
        def key(p: int):
            return (-next_occ[latest[p]], p)
        victim = min(cache, key=key)
        evictions.append((i, victim))
        return [victim]

    def track(i: int, page: int) -> None:
        latest[page] = i

    faults, events = simulate_paging(trace, k, choose, on_request=track)
    return faults, evictions, events


def lfd_labels(trace: Sequence[int], k: int) -> Tuple[int, ...]:
    """True bits from the fixed LFD run: each eviction charges the evicted
    page's latest preceding request with label 1; everything else is 0."""
    import bisect

    _, evictions, _ = lfd_run(trace, k)
    labels = [0] * len(trace)
    positions: Dict[int, List[int]] = {}
    for i, page in enumerate(trace):
        positions.setdefault(page, []).append(i)
    for when, page in evictions:
        occs = positions[page]
        idx = bisect.bisect_left(occs, when) - 1
        if idx < 0:
            raise PolicyBugError("eviction of a never-requested page")
        labels[occs[idx]] = 1
    return tuple(labels)


# ---------------------------------------------------------------------------
# Cost dispatch shared by harness and reductions
# ---------------------------------------------------------------------------

def instance_cost(instance: PredictedInstance, y: Sequence[int]) -> CostValue:
    """Cost of decisions y on an instance; infeasible output costs Infinite."""
    problem, param, requests = instance.problem, instance.param, instance.requests
    if problem == "asg":
        if param == "inf":
            return asg_inf_cost(instance.x, y)
        return asg_cost(param, instance.x, y)
    if problem == "bdvc":
        feasible, cost = vc_check_and_cost(requests, y, t_bound=param)
        return cost if feasible else INFINITE
    if problem == "inter":
        feasible, cost = ir_check_and_cost(requests, y, t_bound=param)
        return cost if feasible else INFINITE
    if problem == "spill":
        k, d = param
        feasible, cost = spill_check_and_cost(requests, y, k, d_bound=d)
        return cost if feasible else INFINITE
    if problem == "sat2":
        return sat2_cost(sat2_clauses_of(requests), y)
    if problem == "dom":
        feasible, cost = dom_check_and_cost(requests, y)
        return cost if feasible else INFINITE
    raise MalformedInstance(f"no decision-vector costing for problem {problem!r}")
