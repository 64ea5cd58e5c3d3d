"""Deterministic online algorithms.

Bit algorithms implement a step protocol: feed (request, prediction) pairs
one at a time, get an irrevocable decision bit back. Paging policies are
plain functions over (trace, cache size, predictions).

Everything here is deterministic by construction; replaying a run on the
same inputs reproduces the decision sequence bit for bit.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Callable, Dict, List, Sequence, Tuple

from .core import MalformedInstance, PredictedInstance
from .problems import lfd_labels, lfd_run, simulate_paging


# ---------------------------------------------------------------------------
# Bit algorithms (decision-per-request problems)
# ---------------------------------------------------------------------------

class BitAlgorithm:
    """Step machine: one decision bit per (request, prediction) pair.

    Subclasses may keep state between steps; create a fresh object (or call
    reset) for every run.
    """

    id = "abstract"

    def reset(self) -> None:
        pass

    def step(self, request: Any, prediction: int) -> int:
        raise NotImplementedError


class FollowThePredictions(BitAlgorithm):
    """Plays each prediction as the decision."""

    id = "ftp"

    def step(self, request: Any, prediction: int) -> int:
        return prediction


class AlwaysZero(BitAlgorithm):
    id = "always-zero"

    def step(self, request: Any, prediction: int) -> int:
        return 0


class AlwaysOne(BitAlgorithm):
    id = "always-one"

    def step(self, request: Any, prediction: int) -> int:
        return 1


class AcceptNonisolated(BitAlgorithm):
    """Vertex-arrival rule: reject vertices that arrive isolated, accept the
    rest. Feasible for vertex cover because the later endpoint of every edge
    arrives with that edge attached."""

    id = "accept-nonisolated"

    def step(self, request: Any, prediction: int) -> int:
        # request is the back-edge list; bare prompts (None) count as isolated
        return 1 if request else 0


class Scripted(BitAlgorithm):
    """Replays a fixed decision list; used to pin down worked examples."""

    id = "scripted"

    def __init__(self, decisions: Sequence[int]):
        self.decisions = tuple(decisions)
        self.cursor = 0

    def reset(self) -> None:
        self.cursor = 0

    def step(self, request: Any, prediction: int) -> int:
        if self.cursor >= len(self.decisions):
            raise MalformedInstance("scripted decisions exhausted")
        bit = self.decisions[self.cursor]
        self.cursor += 1
        return bit


def run_algorithm(algorithm: BitAlgorithm,
                  instance: PredictedInstance) -> Tuple[int, ...]:
    """Drive a bit algorithm over an instance's request/prediction stream."""
    algorithm.reset()
    return tuple(algorithm.step(req, xh)
                 for req, xh in zip(instance.requests, instance.xhat))


def ftp(instance: PredictedInstance) -> Tuple[int, ...]:
    return run_algorithm(FollowThePredictions(), instance)


def always_zero(instance: PredictedInstance) -> Tuple[int, ...]:
    return run_algorithm(AlwaysZero(), instance)


def accept_nonisolated(instance: PredictedInstance) -> Tuple[int, ...]:
    return run_algorithm(AcceptNonisolated(), instance)


ALGORITHMS: Dict[str, Callable[[], BitAlgorithm]] = {
    "ftp": FollowThePredictions,
    "always-zero": AlwaysZero,
    "always-one": AlwaysOne,
    "accept-nonisolated": AcceptNonisolated,
}


# ---------------------------------------------------------------------------
# Paging policies
# ---------------------------------------------------------------------------

def _check_trace_predictions(trace: Sequence[int], predictions: Sequence[int]) -> None:
    if len(predictions) != len(trace):
        raise MalformedInstance(
            f"{len(predictions)} predictions for {len(trace)} requests")
    for b in predictions:
        if b not in (0, 1):
            raise MalformedInstance(f"prediction bits must be 0/1, got {b!r}")


def fwz(trace: Sequence[int], k: int, predictions: Sequence[int]):
    """Flush-when-zero paging.

    Each page carries an associated bit: the prediction of its latest
    request. On a full-cache fault, evict the smallest-id page with bit 1 if
    one exists, otherwise flush the whole cache. Returns (faults, events).
    """
    _check_trace_predictions(trace, predictions)
    bits: Dict[int, int] = {}

    def choose(i: int, page: int, cache: frozenset) -> List[int]:
        flagged = [p for p in cache if bits[p] == 1]
        if flagged:
            return [min(flagged)]
        return sorted(cache)

    def associate(i: int, page: int) -> None:
        bits[page] = predictions[i]

    return simulate_paging(trace, k, choose, on_request=associate)


@dataclass(frozen=True)
class FbbBlockStats:
    """Per-block instrumentation from one flush-between-blocks run.

    end_condition is Cond1 (every cached page predicted 0), Cond2 (some page
    predicted 1 but all such pages already evicted in the block), or
    FinalIncomplete for a trailing block the trace ended before closing.
    s counts distinct pages; d_c / d_w split the pages faulted on twice by
    whether the 1-prediction that got them evicted was correct or wrong;
    lfd and fbb are fault counts on the block replayed from an empty cache;
    mu0 / mu1 are the block's prediction errors against the optimal encoding.
    """

    block: int
    end_condition: str
    s: int
    d_c: int
    d_w: int
    lfd: int
    fbb: int
    mu0: int
    mu1: int

    @property
    def d(self) -> int:
        return self.d_c + self.d_w


def fbb(trace: Sequence[int], t: int, predictions: Sequence[int]):
    """Flush-between-blocks paging with cache size t.

    Within a block, only cached pages predicted 1 (by their latest request)
    and not already evicted in the block are eviction candidates; among them
    the one resident longest goes. A full-cache fault with no candidate ends
    the block: that request still belongs to the block, and the flush that
    follows makes its own eviction choice irrelevant. Returns
    (faults, stats), one FbbBlockStats per block.
    """
    _check_trace_predictions(trace, predictions)
    if not (isinstance(t, int) and t >= 1):
        raise MalformedInstance(f"cache size must be a positive integer, got {t!r}")
    labels = lfd_labels(trace, t)

    bits: Dict[int, int] = {}
    cache: set = set()
    entered: Dict[int, int] = {}
    evicted_in_block: set = set()
    faults = 0
    fault_positions: Dict[int, List[int]] = {}
    blocks: List[dict] = []
    block_start = 0

    def close_block(end: int, condition: str) -> None:
        nonlocal block_start, fault_positions
        blocks.append({"start": block_start, "end": end, "condition": condition,
                       "fault_positions": fault_positions})
        block_start = end + 1
        fault_positions = {}
        cache.clear()
        entered.clear()
        evicted_in_block.clear()

    for i, page in enumerate(trace):
        if page not in cache:
            faults += 1
            fault_positions.setdefault(page, []).append(i)
            if len(cache) >= t:
                candidates = [p for p in cache
                              if bits[p] == 1 and p not in evicted_in_block]
                if candidates:
                    victim = min(candidates, key=lambda p: (entered[p], p))
                    cache.remove(victim)
                    evicted_in_block.add(victim)
                    cache.add(page)
                    entered[page] = i
                else:
                    condition = ("Cond1" if all(bits[p] == 0 for p in cache)
                                 else "Cond2")
                    close_block(i, condition)
            else:
                cache.add(page)
                entered[page] = i
        bits[page] = predictions[i]

    if block_start < len(trace):
        close_block(len(trace) - 1, "FinalIncomplete")

    stats = [_fbb_block_stats(trace, t, predictions, labels, index, info)
             for index, info in enumerate(blocks)]
    return faults, stats


def _fbb_block_stats(trace, t, predictions, labels, index, info) -> FbbBlockStats:
    start, end = info["start"], info["end"]
    fault_positions = info["fault_positions"]

    occurrences: Dict[int, List[int]] = {}
    for i in range(start, end + 1):
        occurrences.setdefault(trace[i], []).append(i)

    d_c = d_w = 0
    for page, fault_idx in fault_positions.items():
        assert len(fault_idx) <= 2, "a page faults at most twice per block"
        if len(fault_idx) < 2:
            continue
        # Last request to the page before its re-fault; the eviction rule
        # guarantees it carried a 1-prediction.
        prior = [i for i in occurrences[page] if i < fault_idx[-1]]
        j = prior[-1]
        assert predictions[j] == 1
        if labels[j] == 1:
            d_c += 1
        else:
            d_w += 1

    chunk = list(trace[start:end + 1])
    block_faults = sum(len(v) for v in fault_positions.values())
    mu0 = sum(labels[i] * (1 - predictions[i]) for i in range(start, end + 1))
    mu1 = sum((1 - labels[i]) * predictions[i] for i in range(start, end + 1))
    lfd_faults, _, _ = lfd_run(chunk, t)
    return FbbBlockStats(block=index, end_condition=info["condition"],
                         s=len(occurrences), d_c=d_c, d_w=d_w,
                         lfd=lfd_faults, fbb=block_faults, mu0=mu0, mu1=mu1)


def lfd(trace: Sequence[int], k: int):
    """Longest-forward-distance (optimal offline) paging.

    Returns (faults, evictions) with evictions as (request index, page).
    """
    faults, evictions, _ = lfd_run(trace, k)
    return faults, evictions
