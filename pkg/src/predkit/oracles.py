"""Exact optimum oracles for small instances.

brute_force_opt enumerates all 2^n decision vectors (n <= 24) except where a
closed form or an offline algorithm is exact: guessing costs are minimized by
honest play, and paging optima come from the longest-forward-distance run.
Witnesses are the lexicographically smallest optimal vectors so frozen test
values stay reproducible.
"""

from __future__ import annotations

from typing import NamedTuple, Optional, Sequence, Tuple

import numpy as np

from .core import ConfigError, CostValue, PredictedInstance
from .problems import (graph_from_requests, instance_cost, intervals_overlap,
                       lfd_labels, lfd_run, sat2_clauses_of)

MAX_EXHAUSTIVE_N = 24
_CHUNK = 1 << 18


class OracleResult(NamedTuple):
    opt_cost: CostValue
    witness: Optional[Tuple[int, ...]]
    method: str


def _check_size(n: int) -> None:
    if n > MAX_EXHAUSTIVE_N:
        raise ConfigError(
            f"instance with {n} decision positions exceeds the exhaustive "
            f"oracle limit of {MAX_EXHAUSTIVE_N}")


def _popcount(masks: np.ndarray) -> np.ndarray:
    # SWAR byte-sum; masks hold values below 2^24
    v = masks - ((masks >> 1) & 0x555555)
    v = (v & 0x333333) + ((v >> 2) & 0x333333)
    v = (v + (v >> 4)) & 0x0F0F0F
    return (v + (v >> 8) + (v >> 16)) & 0xFF


def _lex_keys(masks: np.ndarray, n: int) -> np.ndarray:
    """Bit-reverse each mask within width n.

    Bit i of a mask is decision y_i, so the reversed value orders masks by
    the lexicographic order of their bit strings y_0 y_1 ... y_{n-1}.
    """
    keys = np.zeros_like(masks)
    for i in range(n):
        keys |= ((masks >> i) & 1) << (n - 1 - i)
    return keys


def _mask_from_key(key: int, n: int) -> int:
    mask = 0
    for i in range(n):
        if (key >> (n - 1 - i)) & 1:
            mask |= 1 << i
    return mask


def _bits_of_mask(mask: int, n: int) -> Tuple[int, ...]:
    return tuple((mask >> i) & 1 for i in range(n))


def _search_masks(n, cost_fn, feasible_fn) -> Optional[Tuple[int, int]]:
    """Minimize cost_fn over feasible masks; ties go to the smallest lex key.

    Returns (cost, mask) or None when nothing is feasible.
    """
    if n == 0:
        return (0, 0)
    best_cost = None
    best_key = None
    total = 1 << n
    sentinel = np.int64(1 << 40)
    for start in range(0, total, _CHUNK):
        masks = np.arange(start, min(start + _CHUNK, total), dtype=np.int64)
        costs = np.where(feasible_fn(masks), cost_fn(masks), sentinel)
        chunk_min = int(costs.min())
        if chunk_min >= int(sentinel):
            continue
        if best_cost is not None and chunk_min > best_cost:
            continue
        keys = _lex_keys(masks[costs == chunk_min], n)
        chunk_key = int(keys.min())
        if best_cost is None or chunk_min < best_cost or chunk_key < best_key:
            best_cost, best_key = chunk_min, chunk_key
    if best_cost is None:
        return None
    return best_cost, _mask_from_key(best_key, n)


def _cover_oracle(n: int, edges: Sequence[Tuple[int, int]]) -> OracleResult:
    def feasible(masks):
        ok = np.ones(masks.shape, dtype=bool)
        for u, v in edges:
            ok &= (((masks >> u) | (masks >> v)) & 1).astype(bool)
        return ok

    found = _search_masks(n, _popcount, feasible)
    cost, mask = found
    return OracleResult(int(cost), _bits_of_mask(mask, n), "exhaustive")


def _dom_oracle(n: int, adj: Sequence[set]) -> OracleResult:
    def feasible(masks):
        ok = np.ones(masks.shape, dtype=bool)
        for v in range(n):
            covered = ((masks >> v) & 1).astype(bool)
            for u in adj[v]:
                covered |= ((masks >> u) & 1).astype(bool)
            ok &= covered
        return ok

    found = _search_masks(n, _popcount, feasible)
    if found is None:
        raise ConfigError("dominating-set search found no feasible vector")
    cost, mask = found
    return OracleResult(int(cost), _bits_of_mask(mask, n), "exhaustive")


def _sat2_oracle(n: int, clauses: Sequence[Tuple[int, int]]) -> OracleResult:
    def unsat_count(masks):
        total = np.zeros(masks.shape, dtype=np.int64)
        for a, b in clauses:
            la = (masks >> (abs(a) - 1)) & 1
            if a < 0:
                la = 1 - la
            lb = (masks >> (abs(b) - 1)) & 1
            if b < 0:
                lb = 1 - lb
            total += (1 - la) * (1 - lb)
        return total

    def feasible(masks):
        return np.ones(masks.shape, dtype=bool)

    cost, mask = _search_masks(n, unsat_count, feasible)
    return OracleResult(int(cost), _bits_of_mask(mask, n), "exhaustive")


def _fixed_popcount_masks(n: int, c: int):
    """Masks of popcount c, ordered by ascending lex key of their bit string.

    Gosper's hack enumerates same-popcount keys in ascending numeric order;
    keys are bit-reversed masks, so ascending key = ascending bit string.
    """
    if c == 0:
        yield 0
        return
    limit = 1 << n
    key = (1 << c) - 1
    while key < limit:
        yield _mask_from_key(key, n)
        low = key & -key
        ripple = key + low
        key = ripple | (((key ^ ripple) >> 2) // low)


def _spill_oracle(n: int, adj: Sequence[set], k: int) -> OracleResult:
    for c in range(n + 1):
        for mask in _fixed_popcount_masks(n, c):
            kept = [v for v in range(n) if not (mask >> v) & 1]
            index = {v: pos for pos, v in enumerate(kept)}
            sub = [[index[u] for u in adj[v] if u in index] for v in kept]
            if k_colorable(sub, k):
                return OracleResult(c, _bits_of_mask(mask, n), "exhaustive")
    raise ConfigError("k-spill search found no feasible vector")


def brute_force_opt(instance: PredictedInstance) -> OracleResult:
    """Exact optimum with a lex-smallest witness.

    Guessing has a closed form and paging an exact polynomial rule, so
    neither is size-capped; the mask-search problems stay under 24
    positions.
    """
    problem, param, requests = instance.problem, instance.param, instance.requests
    n = instance.n

    if problem == "asg":
        opt = sum(instance.x)
        if param == "inf" or param >= 2:
            witness = tuple(instance.x)
        else:
            # t = 1: guessing 0 on a true 1 also costs 1, so all-zeros ties
            witness = tuple(0 for _ in range(n))
        return OracleResult(opt, witness, "exhaustive")

    if problem == "pag":
        faults, _, _ = lfd_run(requests, param)
        return OracleResult(faults, lfd_labels(requests, param), "lfd")

    _check_size(n)

    if problem == "bdvc":
        g = graph_from_requests(requests)
        return _cover_oracle(n, g.edges)

    if problem == "inter":
        conflicts = [(i, j) for i in range(n) for j in range(i + 1, n)
                     if intervals_overlap(requests[i], requests[j])]
        return _cover_oracle(n, conflicts)

    if problem == "sat2":
        return _sat2_oracle(n, sat2_clauses_of(requests))

    if problem == "dom":
        g = graph_from_requests(requests)
        return _dom_oracle(n, g.adj)

    if problem == "spill":
        k, _ = param
        g = graph_from_requests(requests)
        return _spill_oracle(n, g.adj, k)

    raise ConfigError(f"no oracle for problem {instance.problem!r}")


def k_colorable(adj, k: int) -> bool:
    """Exact backtracking k-colorability; accepts a Graph or adjacency lists."""
    neighbors = adj.adj if hasattr(adj, "adj") else adj
    n = len(neighbors)
    if n > MAX_EXHAUSTIVE_N:
        raise ConfigError(f"{n} vertices exceed the coloring limit of "
                          f"{MAX_EXHAUSTIVE_N}")
    if not (isinstance(k, int) and k >= 0):
        raise ConfigError(f"color count must be a nonnegative integer, got {k!r}")
    if n == 0:
        return True
    if k == 0:
        return False
    if k >= n or k > max(len(nb) for nb in neighbors):
        return True
    if k == 2:
        return _bipartite(neighbors)

    order = sorted(range(n), key=lambda v: -len(neighbors[v]))
    color = [-1] * n

    def assign(pos: int) -> bool:
        if pos == n:
            return True
        v = order[pos]
        used = {color[u] for u in neighbors[v] if color[u] >= 0}
        # trying at most one fresh color breaks color-permutation symmetry
        tried_so_far = max((color[order[p]] for p in range(pos)), default=-1)
        for c in range(min(k, tried_so_far + 2)):
            if c in used:
                continue
            color[v] = c
            if assign(pos + 1):
                return True
            color[v] = -1
        return False

    return assign(0)


def _bipartite(neighbors) -> bool:
    n = len(neighbors)
    side = [-1] * n
    for start in range(n):
        if side[start] >= 0:
            continue
        side[start] = 0
        queue = [start]
        while queue:
            v = queue.pop()
            for u in neighbors[v]:
                if side[u] < 0:
                    side[u] = 1 - side[v]
                    queue.append(u)
                elif side[u] == side[v]:
                    return False
    return True


def greedy_ir_opt(intervals: Sequence[Tuple[int, int]]) -> OracleResult:
    """Minimum rejection set for intervals via earliest-finish greedy.

    Keeps a maximum set of pairwise nonoverlapping intervals (endpoint
    sharing counts as overlap), rejects the rest.
    """
    n = len(intervals)
    order = sorted(range(n), key=lambda i: (intervals[i][1], intervals[i][0], i))
    y = [1] * n
    last_right = None
    for i in order:
        left, right = intervals[i]
        if last_right is None or left > last_right:
            y[i] = 0
            last_right = right
    return OracleResult(sum(y), tuple(y), "greedy")


def verify_optimal_encoding(instance: PredictedInstance) -> str:
    """PASS iff the instance's x is feasible and matches the oracle optimum."""
    if instance.problem == "pag":
        expected = lfd_labels(instance.requests, instance.param)
        return "PASS" if tuple(instance.x) == expected else "FAIL"
    cost = instance_cost(instance, instance.x)
    result = brute_force_opt(instance)
    return "PASS" if cost == result.opt_cost else "FAIL"
