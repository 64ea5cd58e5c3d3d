"""Generation, certification, reduction sweeps, pareto, paging bench."""
import random
from fractions import Fraction

import pytest

from predkit.core import (
    MU_PAIR, CompetitiveClaim, ConfigError, PredictedInstance,
    instance_from_json,
)
from predkit.algorithms import (
    AcceptNonisolated, AlwaysOne, AlwaysZero, FollowThePredictions, fwz,
)
from predkit.harness import (
    GeneratorConfig, adversary_family, certify, certify_reduction,
    corrupt_bits, gen_instances, instance_ids, lookup_reduction,
    paging_block_checks, pareto_scan, _record_for,
)
from predkit.oracles import verify_optimal_encoding
from predkit.problems import Graph, intervals_overlap, lfd_labels
from predkit.reductions import REDUCTIONS


# ---------------------------------------------------------------------------
# configuration and corruption
# ---------------------------------------------------------------------------

def test_config_validation():
    with pytest.raises(ConfigError):
        GeneratorConfig("asg", 0, t=2)
    with pytest.raises(ConfigError):
        GeneratorConfig("asg", 4, t=2, count=0)
    with pytest.raises(ConfigError):
        GeneratorConfig("asg", 4, t=2, flip_prob=0.5, target_mu0=1)
    with pytest.raises(ConfigError):
        GeneratorConfig("asg", 4, t=2, flip_prob=1.5)
    with pytest.raises(ConfigError):
        GeneratorConfig("pag", 4, t=2, exhaustive=True)
    with pytest.raises(ConfigError):
        GeneratorConfig("asg", 9, t=2, exhaustive=True)


def test_corrupt_bits_exact_targets():
    rng = random.Random(0)
    x = (1, 1, 1, 0, 0)
    xh = corrupt_bits(x, rng, target_mu0=2, target_mu1=1)
    assert sum(a * (1 - b) for a, b in zip(x, xh)) == 2
    assert sum((1 - a) * b for a, b in zip(x, xh)) == 1
    with pytest.raises(ConfigError):
        corrupt_bits((0, 0), rng, target_mu0=1)
    with pytest.raises(ConfigError):
        corrupt_bits((1, 1), rng, target_mu1=1)


def test_corrupt_bits_flip_prob_extremes():
    rng = random.Random(0)
    x = (1, 0, 1, 1, 0, 0)
    assert corrupt_bits(x, rng, flip_prob=0.0) == x
    assert corrupt_bits(x, rng, flip_prob=1.0) == tuple(1 - b for b in x)


# ---------------------------------------------------------------------------
# generation
# ---------------------------------------------------------------------------

def test_gen_is_seed_deterministic():
    cfg = GeneratorConfig("asg", 6, t=3, seed=9, count=20)
    assert gen_instances(cfg) == gen_instances(cfg)
    other = GeneratorConfig("asg", 6, t=3, seed=10, count=20)
    assert gen_instances(cfg) != gen_instances(other)


def test_gen_exhaustive_covers_the_square():
    cfg = GeneratorConfig("asg", 3, t=2, exhaustive=True)
    insts = gen_instances(cfg)
    assert len(insts) == 64
    assert len({(i.x, i.xhat) for i in insts}) == 64
    ids = instance_ids(cfg, insts)
    assert ids[0] == "exh-asg-t2-x000-p000"
    assert len(set(ids)) == 64


def test_gen_respects_problem_constraints():
    cover = gen_instances(GeneratorConfig("bdvc", 7, t=3, seed=1, count=15))
    for inst in cover:
        assert Graph(inst.requests).max_degree() <= 3
        assert verify_optimal_encoding(inst) == "PASS"
    inter = gen_instances(GeneratorConfig("inter", 6, t=2, seed=1, count=15))
    for inst in inter:
        ivs = inst.requests
        for i in range(len(ivs)):
            assert sum(1 for j in range(len(ivs)) if j != i
                       and intervals_overlap(ivs[i], ivs[j])) <= 2
    pag = gen_instances(GeneratorConfig("pag", 30, t=3, seed=1, count=10,
                                        min_distinct=4))
    for inst in pag:
        assert len(set(inst.requests)) >= 4
        assert inst.x == lfd_labels(inst.requests, 3)


def test_gen_exact_error_targets():
    cfg = GeneratorConfig("asg", 8, t=2, seed=4, count=25,
                          target_mu0=2, target_mu1=1)
    for inst in gen_instances(cfg):
        assert MU_PAIR.evaluate(inst) == (2, 1)


def test_gen_sampled_ids_are_stable():
    cfg = GeneratorConfig("sat2", 5, seed=3, count=4)
    insts = gen_instances(cfg)
    assert instance_ids(cfg, insts) == [
        "gen-sat2-s3-00000", "gen-sat2-s3-00001",
        "gen-sat2-s3-00002", "gen-sat2-s3-00003"]


# ---------------------------------------------------------------------------
# certification
# ---------------------------------------------------------------------------

def test_certify_exhaustive_tight_claim():
    cfg = GeneratorConfig("asg", 3, t=3, exhaustive=True)
    report = certify(FollowThePredictions(), CompetitiveClaim(1, 2, 1),
                     MU_PAIR, cfg)
    assert report.verdict == "PASS"
    assert report.max_slack == 0
    assert report.witness_id is None
    # 64 enumerated pairs plus the two standard adaptive families
    assert len(report.records) == 66
    assert sum(1 for r in report.records
               if r.instance_id.startswith("adv-")) == 2


def test_certify_reports_are_byte_identical():
    cfg = GeneratorConfig("asg", 4, t=2, seed=8, count=12)
    a = certify(AlwaysZero(), CompetitiveClaim(2, 0, 0), MU_PAIR, cfg)
    b = certify(AlwaysZero(), CompetitiveClaim(2, 0, 0), MU_PAIR, cfg)
    assert a.to_json() == b.to_json()
    assert a.to_csv() == b.to_csv()
    assert a.to_csv().splitlines()[0] == "instance_id,opt,alg,eta0,eta1,slack"


def test_certify_fail_witness_reruns():
    cfg = GeneratorConfig("asg", 4, t=3, seed=5, count=30)
    claim = CompetitiveClaim(2, 0, 0)
    report = certify(AlwaysZero(), claim, MU_PAIR, cfg)
    assert report.verdict == "FAIL"
    assert report.witness_id == "adv-all-ones-3-n4"
    # the shipped witness re-runs to the same slack
    inst = instance_from_json(report.witness_instance)
    rec = _record_for(AlwaysZero(), inst, report.witness_id, MU_PAIR)
    from predkit.core import record_slack
    assert record_slack(rec, claim) == report.max_slack == 4


def test_certify_adversary_modes():
    cfg = GeneratorConfig("asg", 20, t=3, seed=0, count=5)
    off = certify(AlwaysZero(), CompetitiveClaim(3, 0, 0), MU_PAIR, cfg,
                  adversaries="off")
    assert all(not r.instance_id.startswith("adv-") for r in off.records)
    only = certify(AlwaysZero(), CompetitiveClaim(3, 0, 0), MU_PAIR, cfg,
                   instances=[], adversaries="purely-online")
    assert [r.instance_id for r in only.records] == ["adv-purely-online-3-n20"]
    assert only.verdict == "PASS"
    with pytest.raises(ConfigError):
        certify(AlwaysZero(), CompetitiveClaim(3, 0, 0), MU_PAIR, cfg,
                adversaries="nonesuch")
    with pytest.raises(ConfigError):
        # paging policies cannot be replayed by the guessing families
        certify(fwz, CompetitiveClaim(1, 1, 1), MU_PAIR,
                GeneratorConfig("pag", 10, t=2, count=2),
                adversaries="purely-online")


def test_adversary_family_lookup():
    fam = adversary_family("all-ones", 4)
    assert fam.id == "all-ones" and fam.param == 4
    assert adversary_family("asg-inf", None).id == "asg-inf"
    with pytest.raises(ConfigError):
        adversary_family("purely-online", "inf")
    with pytest.raises(ConfigError):
        adversary_family("unknown", 3)


def test_certify_paging_policy():
    cfg = GeneratorConfig("pag", 60, t=3, seed=2, count=10, flip_prob=0.2)
    report = certify(fwz, CompetitiveClaim(1, 2, 1), MU_PAIR, cfg)
    assert report.verdict == "PASS"
    assert len(report.records) == 10


# ---------------------------------------------------------------------------
# reduction sweeps
# ---------------------------------------------------------------------------

def test_certify_reduction_pass():
    cfg = GeneratorConfig("asg", 4, t=3, seed=1, count=25)
    report = certify_reduction(
        "asg-to-bdvc",
        [FollowThePredictions(), AlwaysZero(), AlwaysOne()], cfg)
    assert report.verdict == "PASS"
    counts = report.counts
    assert counts["PASS"] == 75 and counts["FAIL"] == 0


def test_certify_reduction_skips_precondition_misses():
    cfg = GeneratorConfig("bdvc", 4, t=3, seed=2, count=40)
    report = certify_reduction("vc-to-dom", [AcceptNonisolated()], cfg,
                               variant="strict")
    assert report.verdict == "PASS"
    counts = report.counts
    assert counts["SKIP"] > 0 and counts["PASS"] > 0
    skip = next(r for r in report.rows if r.verdict == "SKIP")
    assert "isolated" in skip.reason


def test_certify_reduction_catches_broken_fixture():
    cfg = GeneratorConfig("asg", 4, t=3, seed=3, count=60)
    report = certify_reduction("asg-to-bdvc-broken", [AcceptNonisolated()],
                               cfg)
    assert report.verdict == "FAIL"
    bad = next(r for r in report.rows if r.verdict == "FAIL")
    assert bad.witness is not None
    # the witness replays to the same condition failure
    from predkit.reductions import check_conditions, red_asg_to_bdvc_broken
    inst = instance_from_json(bad.witness)
    tr = red_asg_to_bdvc_broken(3, AcceptNonisolated(), inst)
    assert check_conditions(tr).verdict == "FAIL"


def test_certify_reduction_config_checks():
    cfg = GeneratorConfig("bdvc", 4, t=3, count=5)
    with pytest.raises(ConfigError):
        certify_reduction("asg-to-bdvc", [AlwaysZero()], cfg)
    with pytest.raises(ConfigError):
        lookup_reduction("nonesuch")
    assert lookup_reduction("asg-to-bdvc") is REDUCTIONS["asg-to-bdvc"]


# ---------------------------------------------------------------------------
# pareto scan
# ---------------------------------------------------------------------------

def test_pareto_scan_verdicts_and_frontier():
    cfg = GeneratorConfig("asg", 6, t=3, seed=11, count=40)
    grid = [CompetitiveClaim(3, 0, 0), CompetitiveClaim(1, 2, 1),
            CompetitiveClaim(Fraction(5, 2), 0, 0),
            CompetitiveClaim(2, 1, Fraction(1, 2))]
    report = pareto_scan(
        [FollowThePredictions(), AlwaysZero(), AlwaysOne()], grid, cfg)
    verdicts = [row.verdict for row in report.rows]
    assert verdicts == ["PASS", "PASS", "FAIL", "FAIL"]
    assert [row.undominated for row in report.rows] == [True, True, False,
                                                        False]
    for row in report.rows:
        if row.verdict == "FAIL":
            assert row.witness_id.startswith("adv-")
    assert report.to_csv() == (
        "alpha,beta,gamma,verdict\n"
        "3,0,0,PASS\n1,2,1,PASS\n5/2,0,0,FAIL\n2,1,1/2,FAIL\n")


# ---------------------------------------------------------------------------
# paging block instrumentation
# ---------------------------------------------------------------------------

def test_paging_block_checks_random_traces():
    rng = random.Random(42)
    for t in (5, 6):
        for _ in range(40):
            n = rng.randint(t + 1, 80)
            trace = tuple(rng.randrange(rng.randint(t + 1, 3 * t))
                          for _ in range(n))
            labels = lfd_labels(trace, t)
            mode = rng.random()
            if mode < 0.3:
                preds = labels
            elif mode < 0.6:
                preds = tuple(b ^ (rng.random() < 0.3) for b in labels)
            else:
                preds = tuple(rng.randint(0, 1) for _ in labels)
            report = paging_block_checks(trace, t, preds)
            assert report.verdict == "PASS", report.violations
            assert report.faults == sum(b.fbb for b in report.blocks)


def test_paging_block_checks_small_t_still_audits_sums():
    trace = (1, 2, 3, 1, 2, 3, 4, 1)
    report = paging_block_checks(trace, 2, (0,) * len(trace))
    assert report.verdict == "PASS"
    assert report.mu0 == sum(b.mu0 for b in report.blocks)


def test_paging_bench_report_formats():
    trace = (1, 2, 3, 4, 1, 2, 5, 1, 2, 3)
    report = paging_block_checks(trace, 3, lfd_labels(trace, 3), "tr-0")
    csv_text = report.to_csv()
    assert csv_text.splitlines()[0] == \
        "block,end_condition,s,d_c,d_w,lfd,fbb,mu0,mu1"
    assert len(csv_text.splitlines()) == 1 + len(report.blocks)
    assert '"trace_id":"tr-0"' in report.to_json()
