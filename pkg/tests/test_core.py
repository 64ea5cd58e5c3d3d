"""Exact cost arithmetic, claims, slack, and serialization."""
import json
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from predkit.core import (
    INFINITE, NEG_INFINITE, MU_PAIR, ZERO_PAIR, MEASURE_PAIRS,
    CompetitiveClaim, ErrorMeasure, InvalidInsertion, MalformedInstance,
    PredictedInstance, RunRecord,
    bits_from_text, bits_to_text, check_claim, check_insertion_monotone,
    cost_add, cost_from_text, cost_le, cost_mul, cost_to_text,
    dump_instances_jsonl, ensure_exact, instance_from_json, instance_to_json,
    is_infinite, load_instances_jsonl, mu0, mu1, record_slack,
)


# ---------------------------------------------------------------------------
# extended-real arithmetic
# ---------------------------------------------------------------------------

def test_infinite_sentinels_distinct():
    assert INFINITE is not NEG_INFINITE
    assert is_infinite(INFINITE) and is_infinite(NEG_INFINITE)
    assert not is_infinite(0) and not is_infinite(Fraction(7, 2))


def test_ensure_exact_rejects_floats_and_bools():
    assert ensure_exact(3) == 3
    assert ensure_exact(Fraction(1, 3)) == Fraction(1, 3)
    with pytest.raises(TypeError):
        ensure_exact(0.5)
    with pytest.raises(TypeError):
        ensure_exact(True)


def test_cost_add():
    assert cost_add(2, Fraction(1, 2)) == Fraction(5, 2)
    assert cost_add(INFINITE, 3) is INFINITE
    assert cost_add(3, INFINITE) is INFINITE
    with pytest.raises(ValueError):
        cost_add(NEG_INFINITE, 1)


def test_cost_mul_infinite_times_zero_is_zero():
    assert cost_mul(INFINITE, 0) == 0
    assert cost_mul(INFINITE, 5) is INFINITE
    assert cost_mul(Fraction(3, 2), 4) == 6
    with pytest.raises(ValueError):
        cost_mul(INFINITE, -1)


def test_cost_le_total_order():
    assert cost_le(NEG_INFINITE, -10)
    assert cost_le(-10, INFINITE)
    assert cost_le(NEG_INFINITE, NEG_INFINITE)
    assert cost_le(INFINITE, INFINITE)
    assert not cost_le(INFINITE, 10 ** 9)
    assert cost_le(Fraction(1, 3), Fraction(1, 2))


def test_cost_text_round_trip():
    for v in (0, 5, -3, Fraction(7, 2), Fraction(-1, 3), INFINITE, NEG_INFINITE):
        assert cost_from_text(cost_to_text(v)) == v or cost_from_text(
            cost_to_text(v)) is v
    assert cost_to_text(Fraction(7, 2)) == "7/2"
    assert cost_to_text(INFINITE) == "inf"
    assert cost_to_text(NEG_INFINITE) == "-inf"
    # whole fractions normalize to ints
    assert cost_from_text("6/2") == 3


def test_bits_text_round_trip():
    assert bits_to_text((1, 0, 1, 1)) == "1011"
    assert bits_from_text("1011") == (1, 0, 1, 1)
    assert bits_from_text("") == ()


# ---------------------------------------------------------------------------
# instances
# ---------------------------------------------------------------------------

def test_instance_freezes_and_validates():
    inst = PredictedInstance("asg", 3, [0, 1], [1, 1], [None, None])
    assert inst.x == (0, 1) and inst.xhat == (1, 1)
    assert inst.n == 2
    with pytest.raises(MalformedInstance):
        PredictedInstance("asg", 3, (0, 1), (1,), (None, None))
    with pytest.raises(MalformedInstance):
        PredictedInstance("asg", 3, (0, 2), (1, 1), (None, None))


def test_mu_measures():
    inst = PredictedInstance("asg", 2, (1, 1, 0, 0), (0, 1, 1, 0), (None,) * 4)
    assert mu0(inst) == 1  # position 0: true 1 predicted 0
    assert mu1(inst) == 1  # position 2: true 0 predicted 1
    assert MU_PAIR.evaluate(inst) == (1, 1)
    assert ZERO_PAIR.evaluate(inst) == (0, 0)
    assert set(MEASURE_PAIRS) == {"mu", "zero"}


@given(st.lists(st.tuples(st.integers(0, 1), st.integers(0, 1)),
                min_size=1, max_size=40))
def test_mu_matches_direct_count(pairs):
    x = tuple(a for a, _ in pairs)
    xh = tuple(b for _, b in pairs)
    inst = PredictedInstance("asg", 2, x, xh, (None,) * len(pairs))
    assert mu0(inst) == sum(1 for a, b in pairs if a == 1 and b == 0)
    assert mu1(inst) == sum(1 for a, b in pairs if a == 0 and b == 1)


# ---------------------------------------------------------------------------
# insertion monotonicity
# ---------------------------------------------------------------------------

def test_insertion_monotone_pass_for_mu():
    base = PredictedInstance("asg", 2, (1, 0), (0, 0), (None, None))
    rep = check_insertion_monotone(
        MU_PAIR.eta0, base, [(0, 1, 1, None), (3, 0, 0, None)])
    assert rep.verdict == "PASS"
    assert rep.base_value == rep.extended_value == 1
    assert rep.witness is None


def test_insertion_rejects_incorrect_bits_and_bad_positions():
    base = PredictedInstance("asg", 2, (1, 0), (0, 0), (None, None))
    with pytest.raises(InvalidInsertion):
        check_insertion_monotone(MU_PAIR.eta0, base, [(0, 1, 0, None)])
    with pytest.raises(InvalidInsertion):
        check_insertion_monotone(MU_PAIR.eta0, base, [(5, 1, 1, None)])


def test_insertion_positions_index_extended_sequence():
    base = PredictedInstance("asg", 2, (1,), (0,), (None,))
    # second insertion lands past the first one
    rep = check_insertion_monotone(
        MU_PAIR.eta0, base, [(1, 1, 1, None), (2, 0, 0, None)])
    assert rep.verdict == "PASS"


def test_non_monotone_measure_fails_with_witness():
    hits = ErrorMeasure("hits", lambda inst: sum(
        a * b for a, b in zip(inst.x, inst.xhat)),
        claims_insertion_monotone=False)
    base = PredictedInstance("asg", 2, (0,), (0,), (None,))
    rep = check_insertion_monotone(hits, base, [(0, 1, 1, None)])
    assert rep.verdict == "FAIL"
    assert rep.extended_value == 1 > rep.base_value
    assert rep.witness is not None and rep.witness.x == (1, 0)


# ---------------------------------------------------------------------------
# claims and slack
# ---------------------------------------------------------------------------

def test_claim_validation():
    c = CompetitiveClaim(1, 2, 1)
    assert c.id == "(1,2,1;kappa=0;strict)"
    c = CompetitiveClaim(1, INFINITE, 1, kappa=0, strict=True)
    assert c.id == "(1,inf,1;kappa=0;strict)"
    with pytest.raises(ValueError):
        CompetitiveClaim(1, -Fraction(1, 2), 1)
    with pytest.raises(ValueError):
        CompetitiveClaim(NEG_INFINITE, 0, 0)
    with pytest.raises(ValueError):
        CompetitiveClaim(1, 0, 0, kappa=1, strict=True)
    # asymptotic claims may carry positive kappa
    c = CompetitiveClaim(1, 0, 0, kappa=6, strict=False)
    assert c.id.endswith("asymptotic)")


def test_record_slack_cases():
    claim = CompetitiveClaim(1, 2, 1)
    rec = RunRecord("i", alg_cost=10, opt_cost=3, eta0=2, eta1=1)
    assert record_slack(rec, claim) == 10 - 3 - 4 - 1
    # infinite coefficient with zero error contributes nothing
    claim_inf = CompetitiveClaim(1, INFINITE, 1)
    rec0 = RunRecord("i", alg_cost=5, opt_cost=5, eta0=0, eta1=0)
    assert record_slack(rec0, claim_inf) == 0
    # infinite bound side absorbs everything
    rec1 = RunRecord("i", alg_cost=INFINITE, opt_cost=3, eta0=1, eta1=0)
    assert record_slack(rec1, claim_inf) is NEG_INFINITE
    # infinite alg against finite bound
    assert record_slack(rec1, claim) is INFINITE
    # infinite opt absorbs via the alpha term
    rec2 = RunRecord("i", alg_cost=INFINITE, opt_cost=INFINITE, eta0=0, eta1=0)
    assert record_slack(rec2, claim) is NEG_INFINITE


def test_check_claim_verdicts():
    claim = CompetitiveClaim(2, 0, 0)
    good = RunRecord("a", 4, 2, 0, 0)
    bad = RunRecord("b", 5, 2, 0, 0)
    rep = check_claim([good], claim)
    assert rep.verdict == "PASS" and rep.max_slack == 0 and rep.witness is None
    rep = check_claim([good, bad], claim)
    assert rep.verdict == "FAIL" and rep.max_slack == 1
    assert rep.witness is bad
    # kappa shifts the gate
    rep = check_claim([bad], CompetitiveClaim(2, 0, 0, kappa=1, strict=False))
    assert rep.verdict == "PASS"


# ---------------------------------------------------------------------------
# serialization
# ---------------------------------------------------------------------------

ROUND_TRIP = [
    PredictedInstance("asg", 3, (0, 1), (1, 1), (None, None)),
    PredictedInstance("asg", "inf", (1, 0), (1, 0), (None, None)),
    PredictedInstance("bdvc", 2, (1, 0, 1), (0, 0, 1), ((), (0,), (1,))),
    PredictedInstance("inter", 2, (0, 1), (0, 1), ((0, 2), (1, 3))),
    PredictedInstance("spill", (2, 3), (0, 1, 0), (0, 0, 0),
                      ((), (0,), (0, 1))),
    PredictedInstance("sat2", 1, (0, 1), (0, 1), (((1, 1),), ((-1, 2),))),
    PredictedInstance("dom", 2, (1, 0), (1, 0), ((), (0,))),
    PredictedInstance("pag", 2, (0, 1, 0), (0, 1, 1), (7, 8, 7)),
]


@pytest.mark.parametrize("inst", ROUND_TRIP, ids=lambda i: i.problem)
def test_instance_json_round_trip(inst):
    obj = instance_to_json(inst)
    assert instance_from_json(json.loads(json.dumps(obj))) == inst


def test_asg_requests_serialize_as_nulls():
    obj = instance_to_json(ROUND_TRIP[0])
    assert obj["requests"] == [None, None]
    assert obj["problem"] == "asg" and obj["t_or_k"] == 3


def test_jsonl_round_trip():
    text = dump_instances_jsonl(ROUND_TRIP)
    assert len(text.strip().splitlines()) == len(ROUND_TRIP)
    assert load_instances_jsonl(text) == list(ROUND_TRIP)


@settings(max_examples=50)
@given(st.integers(1, 12), st.integers(0, 2 ** 12 - 1), st.integers(0, 2 ** 12 - 1))
def test_asg_round_trip_property(n, xm, hm):
    x = tuple((xm >> i) & 1 for i in range(n))
    xh = tuple((hm >> i) & 1 for i in range(n))
    inst = PredictedInstance("asg", 4, x, xh, (None,) * n)
    assert load_instances_jsonl(dump_instances_jsonl([inst])) == [inst]
