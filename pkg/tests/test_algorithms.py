"""Bit algorithms and the prediction-guided paging policies."""
import pytest

from predkit.core import MalformedInstance, PredictedInstance
from predkit.algorithms import (
    ALGORITHMS, AcceptNonisolated, AlwaysOne, AlwaysZero,
    FollowThePredictions, Scripted, fbb, fwz, lfd, run_algorithm,
)
from predkit.problems import lfd_run


def asg(t, x, xh):
    return PredictedInstance("asg", t, x, xh, (None,) * len(x))


# ---------------------------------------------------------------------------
# bit algorithms
# ---------------------------------------------------------------------------

def test_registry_ids_match():
    for key, ctor in ALGORITHMS.items():
        assert ctor().id == key


def test_basic_decision_rules():
    inst = asg(3, (1, 0, 1), (0, 1, 1))
    assert run_algorithm(FollowThePredictions(), inst) == (0, 1, 1)
    assert run_algorithm(AlwaysZero(), inst) == (0, 0, 0)
    assert run_algorithm(AlwaysOne(), inst) == (1, 1, 1)


def test_accept_nonisolated_on_vertex_arrivals():
    inst = PredictedInstance("bdvc", 2, (0, 1, 1), (0, 0, 0),
                             ((), (0,), (0, 1)))
    assert run_algorithm(AcceptNonisolated(), inst) == (0, 1, 1)
    # bare prompts count as isolated
    assert run_algorithm(AcceptNonisolated(), asg(2, (1, 1), (1, 1))) == (0, 0)


def test_scripted_replays_and_exhausts():
    s = Scripted([1, 0, 1])
    inst = asg(2, (0, 0, 0), (0, 0, 0))
    assert run_algorithm(s, inst) == (1, 0, 1)
    # reset inside run_algorithm replays from the top
    assert run_algorithm(s, inst) == (1, 0, 1)
    with pytest.raises(MalformedInstance):
        run_algorithm(s, asg(2, (0,) * 4, (0,) * 4))


# ---------------------------------------------------------------------------
# flush-when-zero paging
# ---------------------------------------------------------------------------

def test_fwz_evicts_smallest_flagged_page():
    faults, events = fwz((1, 2, 3), 2, (1, 0, 0))
    assert faults == 3
    assert events[2]["evicted"] == [1]


def test_fwz_flushes_without_flagged_pages():
    faults, events = fwz((1, 2, 3), 2, (0, 0, 0))
    assert faults == 3
    assert events[2]["evicted"] == [1, 2]  # whole cache, sorted


def test_fwz_validates_predictions():
    with pytest.raises(MalformedInstance):
        fwz((1, 2), 2, (0,))
    with pytest.raises(MalformedInstance):
        fwz((1, 2), 2, (0, 2))


def test_fwz_bit_follows_latest_request():
    # page 1's bit flips to 1 on its second request, making it evictable
    faults, events = fwz((1, 2, 1, 3), 2, (0, 0, 1, 0))
    assert events[3]["evicted"] == [1]


# ---------------------------------------------------------------------------
# flush-between-blocks paging
# ---------------------------------------------------------------------------

def test_fbb_cond1_block():
    faults, stats = fbb((1, 2, 3), 2, (0, 0, 0))
    assert faults == 3
    assert len(stats) == 1
    b = stats[0]
    assert b.end_condition == "Cond1"
    assert (b.s, b.fbb, b.d) == (3, 3, 0)
    assert b.mu0 >= 1  # the block holds an incorrect 0-prediction


def test_fbb_cond2_block():
    trace, preds = (1, 2, 3, 1, 4), (1, 1, 0, 1, 0)
    faults, stats = fbb(trace, 2, preds)
    assert faults == 5
    assert len(stats) == 1
    b = stats[0]
    assert b.end_condition == "Cond2"
    assert b.s == 4
    assert (b.d_c, b.d_w) == (0, 1)  # page 1's eviction bit was wrong
    assert b.lfd == 4
    assert (b.mu0, b.mu1) == (0, 1)


def test_fbb_final_incomplete_block():
    faults, stats = fbb((1, 2), 2, (1, 1))
    assert faults == 2
    assert stats[0].end_condition == "FinalIncomplete"
    assert stats[0].s == 2


def test_fbb_faults_sum_over_blocks():
    trace = (1, 2, 3, 4, 1, 2, 5, 1, 2, 3)
    preds = (1, 0, 1, 0, 1, 0, 1, 0, 1, 0)
    faults, stats = fbb(trace, 3, preds)
    assert faults == sum(b.fbb for b in stats)
    assert all(b.d == b.d_c + b.d_w for b in stats)


def test_fbb_evicts_longest_resident_candidate():
    # both cached pages predicted 1; the one that entered first goes
    _, stats = fbb((1, 2, 3), 2, (1, 1, 0))
    faults, stats2 = fbb((1, 2, 3, 1), 2, (1, 1, 0, 0))
    assert faults == 4  # page 1 was evicted at step 2, refaults at step 3


def test_fbb_validates_inputs():
    with pytest.raises(MalformedInstance):
        fbb((1, 2), 0, (0, 0))
    with pytest.raises(MalformedInstance):
        fbb((1, 2), 2, (0,))


# ---------------------------------------------------------------------------
# offline reference policy
# ---------------------------------------------------------------------------

def test_lfd_wrapper_matches_run():
    trace = (1, 2, 3, 1, 2, 4)
    assert lfd(trace, 2) == lfd_run(trace, 2)[:2]


def test_policies_are_deterministic():
    trace = (3, 1, 4, 1, 5, 9, 2, 6, 5, 3)
    preds = (1, 0, 1, 1, 0, 0, 1, 0, 1, 0)
    assert fwz(trace, 3, preds) == fwz(trace, 3, preds)
    first = fbb(trace, 3, preds)
    second = fbb(trace, 3, preds)
    assert first[0] == second[0] and first[1] == second[1]
