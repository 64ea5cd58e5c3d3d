"""Instance generation, prediction corruption, and claim certification.

Everything here is seed-deterministic: the same GeneratorConfig produces the
same instances, and reports serialize byte-identically. Execution is
sequential with records sorted by instance id, so aggregation order never
depends on scheduling.
"""

from __future__ import annotations

import csv
import io
import itertools
import json
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Dict, List, Optional, Sequence, Tuple

from .core import (CompetitiveClaim, ConfigError, CostValue, MU_PAIR,
                   MalformedInstance, MeasurePair, PredictedInstance,
                   RunRecord, bits_to_text, check_claim, cost_le,
                   cost_to_text, instance_to_json, record_slack)
from .problems import instance_cost, intervals_overlap, lfd_labels, lfd_run
from .algorithms import BitAlgorithm, FbbBlockStats, fbb, run_algorithm
from .oracles import brute_force_opt, verify_optimal_encoding
from .reductions import (BROKEN_REDUCTIONS, REDUCTIONS, Reduction,
                         check_conditions)
from . import adversaries as adv


# ---------------------------------------------------------------------------
# Generation
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class GeneratorConfig:
    """Seeded instance generator settings.

    n is the exact instance size (trace length for paging). t parameterizes
    the problem (guessing penalty, degree/overlap bound, cache size); k is
    the color count for the spill problem; N is the paging page universe
    (default 3t). Prediction corruption is either exact (flip target_mu0
    ones and target_mu1 zeros), independent (flip_prob), or, by default,
    uniformly random predictions.
    """

    problem: str
    n: int
    t: Any = None
    k: Optional[int] = None
    N: Optional[int] = None
    seed: int = 0
    count: int = 100
    exhaustive: bool = False
    target_mu0: Optional[int] = None
    target_mu1: Optional[int] = None
    flip_prob: Optional[float] = None
    min_distinct: Optional[int] = None

    def __post_init__(self):
        if self.n < 1:
            raise ConfigError("n must be at least 1")
        if self.count < 1:
            raise ConfigError("count must be at least 1")
        if self.flip_prob is not None and (
                self.target_mu0 is not None or self.target_mu1 is not None):
            raise ConfigError("choose exact corruption targets or a flip "
                              "probability, not both")
        if self.flip_prob is not None and not 0 <= self.flip_prob <= 1:
            raise ConfigError("flip_prob must be within [0, 1]")
        if self.exhaustive and self.problem != "asg":
            raise ConfigError("exhaustive enumeration is only for guessing")
        if self.exhaustive and self.n > 8:
            raise ConfigError("exhaustive enumeration caps at n = 8")


def corrupt_bits(x: Sequence[int], rng: random.Random,
                 target_mu0: Optional[int] = None,
                 target_mu1: Optional[int] = None,
                 flip_prob: Optional[float] = None) -> Tuple[int, ...]:
    """Predictions from truth bits under one corruption mode."""
    if target_mu0 is not None or target_mu1 is not None:
        m0 = target_mu0 or 0
        m1 = target_mu1 or 0
        ones = [i for i, b in enumerate(x) if b == 1]
        zeros = [i for i, b in enumerate(x) if b == 0]
        if m0 > len(ones):
            raise ConfigError(
                f"target mu0 {m0} exceeds the {len(ones)} true 1s")
        if m1 > len(zeros):
            raise ConfigError(
                f"target mu1 {m1} exceeds the {len(zeros)} true 0s")
        flips = set(rng.sample(ones, m0)) | set(rng.sample(zeros, m1))
        return tuple(1 - b if i in flips else b for i, b in enumerate(x))
    if flip_prob is not None:
        return tuple(b ^ (rng.random() < flip_prob) for b in x)
    return tuple(rng.randint(0, 1) for _ in x)


def _capped_graph(rng: random.Random, n: int, cap: Optional[int],
                  p: float = 0.35) -> Tuple[Tuple[int, ...], ...]:
    """Random back-edge arrivals with every degree kept at or below cap."""
    degree = [0] * n
    requests: List[Tuple[int, ...]] = []
    for i in range(n):
        back: List[int] = []
        for j in range(i):
            if rng.random() < p and (
                    cap is None or (degree[i] < cap and degree[j] < cap)):
                back.append(j)
                degree[i] += 1
                degree[j] += 1
        requests.append(tuple(back))
    return tuple(requests)


def _bounded_intervals(rng: random.Random, n: int,
                       t: int) -> Tuple[Tuple[int, int], ...]:
    """Random closed intervals in which nobody overlaps more than t others."""
    chosen: List[Tuple[int, int]] = []
    counts: List[int] = []
    attempts = 0
    while len(chosen) < n and attempts < 50 * n + 200:
        attempts += 1
        left = rng.randint(0, 4 * n)
        cand = (left, left + rng.randint(1, 5))
        hits = [i for i, iv in enumerate(chosen)
                if intervals_overlap(iv, cand)]
        if len(hits) <= t and all(counts[i] < t for i in hits):
            for i in hits:
                counts[i] += 1
            chosen.append(cand)
            counts.append(len(hits))
    while len(chosen) < n:
        # fall back to far-apart disjoint intervals
        left = 10 * n + 6 * len(chosen)
        chosen.append((left, left + 1))
        counts.append(0)
    return tuple(chosen)


def _random_sat2_requests(rng: random.Random,
                          n: int) -> Tuple[Tuple[Tuple[int, int], ...], ...]:
    requests = []
    for i in range(n):
        group = []
        for _ in range(rng.randint(1, 2)):
            a = rng.randint(1, i + 1) * rng.choice([1, -1])
            b = rng.randint(1, i + 1) * rng.choice([1, -1])
            group.append((a, b))
        requests.append(tuple(group))
    return tuple(requests)


def _random_trace(rng: random.Random, n: int, universe: int,
                  min_distinct: Optional[int]) -> Tuple[int, ...]:
    need = min_distinct or 0
    if need > min(universe, n):
        raise ConfigError(
            f"cannot fit {need} distinct pages into universe {universe} "
            f"and length {n}")
    for _ in range(200):
        trace = tuple(rng.randrange(universe) for _ in range(n))
        if len(set(trace)) >= need:
            return trace
    # force distinctness up front, then fill randomly
    head = list(range(need))
    rng.shuffle(head)
    tail = [rng.randrange(universe) for _ in range(n - need)]
    return tuple(head + tail)


def gen_instances(config: GeneratorConfig) -> List[PredictedInstance]:
    """Seeded instances whose truth bits are oracle-verified optima."""
    rng = random.Random(config.seed)
    problem = config.problem
    out: List[PredictedInstance] = []

    def xhat_of(x: Sequence[int]) -> Tuple[int, ...]:
        return corrupt_bits(x, rng, config.target_mu0, config.target_mu1,
                            config.flip_prob)

    def hosts_targets(x: Sequence[int]) -> bool:
        m0 = config.target_mu0 or 0
        m1 = config.target_mu1 or 0
        return m0 <= sum(x) and m1 <= len(x) - sum(x)

    if problem == "asg":
        if config.t is None:
            raise ConfigError("guessing instances need t")
        prompts = (None,) * config.n
        if config.exhaustive:
            space = list(itertools.product((0, 1), repeat=config.n))
            full_product = (config.target_mu0 is None
                            and config.target_mu1 is None
                            and config.flip_prob is None)
            for x in space:
                if full_product:
                    for xh in space:
                        out.append(PredictedInstance("asg", config.t, x, xh,
                                                     prompts))
                elif hosts_targets(x):
                    # exact targets: enumerate only the x values that can
                    # host them
                    out.append(PredictedInstance("asg", config.t, x,
                                                 xhat_of(x), prompts))
            if not out:
                raise ConfigError("no truth vector of this size can host "
                                  "the requested corruption targets")
        else:
            for _ in range(config.count):
                x = tuple(rng.randint(0, 1) for _ in range(config.n))
                for _retry in range(200):
                    if hosts_targets(x):
                        break
                    x = tuple(rng.randint(0, 1) for _ in range(config.n))
                out.append(PredictedInstance("asg", config.t, x, xhat_of(x),
                                             prompts))
    elif problem in ("bdvc", "dom", "spill"):
        cap = config.t if problem in ("bdvc", "spill") else None
        if problem == "bdvc" and cap is None:
            raise ConfigError("cover instances need a degree bound t")
        if problem == "spill" and (config.k is None or cap is None):
            raise ConfigError("spill instances need k and a degree bound t")
        param = {"bdvc": config.t, "dom": None,
                 "spill": (config.k, config.t)}[problem]
        for _ in range(config.count):
            requests = _capped_graph(rng, config.n, cap)
            shell = PredictedInstance(problem, param, (0,) * config.n,
                                      (0,) * config.n, requests)
            x = brute_force_opt(shell).witness
            out.append(PredictedInstance(problem, param, x, xhat_of(x),
                                         requests))
    elif problem == "inter":
        if config.t is None:
            raise ConfigError("interval instances need an overlap bound t")
        for _ in range(config.count):
            requests = _bounded_intervals(rng, config.n, config.t)
            shell = PredictedInstance("inter", config.t, (0,) * config.n,
                                      (0,) * config.n, requests)
            x = brute_force_opt(shell).witness
            out.append(PredictedInstance("inter", config.t, x, xhat_of(x),
                                         requests))
    elif problem == "sat2":
        for _ in range(config.count):
            requests = _random_sat2_requests(rng, config.n)
            shell = PredictedInstance("sat2", None, (0,) * config.n,
                                      (0,) * config.n, requests)
            x = brute_force_opt(shell).witness
            out.append(PredictedInstance("sat2", None, x, xhat_of(x),
                                         requests))
    elif problem == "pag":
        cache = config.k if config.k is not None else config.t
        if cache is None:
            raise ConfigError("paging instances need a cache size (t or k)")
        universe = config.N if config.N is not None else 3 * cache
        for _ in range(config.count):
            trace = _random_trace(rng, config.n, universe,
                                  config.min_distinct)
            x = lfd_labels(trace, cache)
            out.append(PredictedInstance("pag", cache, x, xhat_of(x), trace))
    else:
        raise ConfigError(f"unknown problem {problem!r}; known: asg, bdvc, "
                          "inter, spill, sat2, dom, pag")

    for instance in out:
        if verify_optimal_encoding(instance) != "PASS":
            raise ConfigError(
                f"generator produced a non-optimal encoding for {problem}")
    return out


def instance_ids(config: GeneratorConfig,
                 instances: Sequence[PredictedInstance]) -> List[str]:
    """Stable ids: exhaustive ids spell the bits, sampled ids the index."""
    ids = []
    for i, inst in enumerate(instances):
        if config.exhaustive:
            ids.append(f"exh-asg-t{inst.param}-x{bits_to_text(inst.x)}"
                       f"-p{bits_to_text(inst.xhat)}")
        else:
            ids.append(f"gen-{config.problem}-s{config.seed}-{i:05d}")
    return ids


# ---------------------------------------------------------------------------
# Certification
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ExperimentReport:
    claim: CompetitiveClaim
    measures: str
    records: Tuple[RunRecord, ...]
    verdict: str
    max_slack: CostValue
    witness_id: Optional[str]
    witness_instance: Optional[dict]

    def to_json(self) -> str:
        payload = {
            "claim": self.claim.id,
            "measures": self.measures,
            "verdict": self.verdict,
            "max_slack": cost_to_text(self.max_slack),
            "witness_id": self.witness_id,
            "witness_instance": self.witness_instance,
            "records": [
                {"instance_id": r.instance_id,
                 "alg": cost_to_text(r.alg_cost),
                 "opt": cost_to_text(r.opt_cost),
                 "eta0": cost_to_text(r.eta0),
                 "eta1": cost_to_text(r.eta1),
                 "slack": cost_to_text(record_slack(r, self.claim))}
                for r in self.records],
        }
        return json.dumps(payload, sort_keys=True, separators=(",", ":"))

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["instance_id", "opt", "alg", "eta0", "eta1",
                         "slack"])
        for r in self.records:
            writer.writerow([r.instance_id, cost_to_text(r.opt_cost),
                             cost_to_text(r.alg_cost), cost_to_text(r.eta0),
                             cost_to_text(r.eta1),
                             cost_to_text(record_slack(r, self.claim))])
        return buf.getvalue()


def _record_for(algorithm, instance: PredictedInstance, instance_id: str,
                measure_pair: MeasurePair) -> RunRecord:
    if instance.problem == "pag":
        result = algorithm(instance.requests, instance.param, instance.xhat)
        alg_cost = result[0] if isinstance(result, tuple) else result
        decisions: Tuple[int, ...] = ()
    else:
        decisions = run_algorithm(algorithm, instance)
        alg_cost = instance_cost(instance, decisions)
    eta0, eta1 = measure_pair.evaluate(instance)
    return RunRecord(instance_id=instance_id, alg_cost=alg_cost,
                     opt_cost=brute_force_opt(instance).opt_cost,
                     eta0=eta0, eta1=eta1, decisions=decisions)


def _adversary_instances(algorithm, t, n: int):
    """The adaptive families run against this algorithm, as plain instances."""
    produced = []
    if t == "inf":
        families = [adv.asg_inf_family()]
    else:
        families = [adv.purely_online_family(t), adv.all_ones_family(t)]
    for family in families:
        instance, record = adv.run_adversary(family, algorithm, n)
        produced.append((record.instance_id, instance))
    return produced


def adversary_family(family_id: str, t):
    """Family constructor lookup; integer-t families reject t = inf."""
    if family_id not in adv.ADVERSARIES:
        known = ", ".join(sorted(adv.ADVERSARIES))
        raise ConfigError(f"unknown adversary {family_id!r}; known: {known}")
    if family_id == "asg-inf":
        return adv.asg_inf_family()
    if t == "inf" or t is None:
        raise ConfigError(f"adversary {family_id} needs a finite t")
    return adv.ADVERSARIES[family_id](t)


def certify(algorithm, claim: CompetitiveClaim, measure_pair: MeasurePair,
            config: GeneratorConfig,
            instances: Optional[Sequence[PredictedInstance]] = None,
            adversaries: str = "auto") -> ExperimentReport:
    """Check one competitiveness claim over a generated suite.

    adversaries picks which adaptive families get appended to guessing
    suites: "auto" runs the standard ones for the suite's t (the tight
    cases are adversarial), "off" runs none, and a family id runs exactly
    that one. Families replay against this very algorithm.
    """
    if instances is None:
        instances = gen_instances(config)
    ids = instance_ids(config, instances)
    rows = list(zip(ids, instances))
    if adversaries != "off":
        applicable = (config.problem == "asg"
                      and isinstance(algorithm, BitAlgorithm))
        if adversaries == "auto":
            if applicable:
                rows.extend(_adversary_instances(algorithm, config.t,
                                                 config.n))
        else:
            family = adversary_family(adversaries, config.t)
            if not applicable:
                raise ConfigError("adversary families replay guessing "
                                  "algorithms only")
            instance, record = adv.run_adversary(family, algorithm, config.n)
            rows.append((record.instance_id, instance))
    rows.sort(key=lambda pair: pair[0])
    by_id = dict(rows)
    records = tuple(_record_for(algorithm, inst, rid, measure_pair)
                    for rid, inst in rows)
    result = check_claim(records, claim)
    witness_id = result.witness.instance_id if result.witness else None
    witness_instance = (instance_to_json(by_id[witness_id])
                        if witness_id else None)
    return ExperimentReport(
        claim=claim, measures=measure_pair.id, records=records,
        verdict=result.verdict, max_slack=result.max_slack,
        witness_id=witness_id, witness_instance=witness_instance)


# ---------------------------------------------------------------------------
# Reduction certification
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ReductionRow:
    instance_id: str
    algorithm: str
    verdict: str  # PASS, FAIL or SKIP
    conditions: Tuple[Tuple[str, str, CostValue], ...]
    reason: str = ""
    witness: Optional[dict] = None


@dataclass(frozen=True)
class ReductionReport:
    reduction_id: str
    rows: Tuple[ReductionRow, ...]
    verdict: str

    @property
    def counts(self) -> Dict[str, int]:
        out = {"PASS": 0, "FAIL": 0, "SKIP": 0}
        for row in self.rows:
            out[row.verdict] += 1
        return out

    def to_json(self) -> str:
        payload = {
            "reduction": self.reduction_id,
            "verdict": self.verdict,
            "counts": self.counts,
            "rows": [
                {"instance_id": r.instance_id, "algorithm": r.algorithm,
                 "verdict": r.verdict, "reason": r.reason,
                 "witness": r.witness,
                 "conditions": [
                     {"name": name, "verdict": v,
                      "margin": cost_to_text(margin)}
                     for name, v, margin in r.conditions]}
                for r in self.rows],
        }
        return json.dumps(payload, sort_keys=True, separators=(",", ":"))


def lookup_reduction(reduction_id: str) -> Reduction:
    table = {**REDUCTIONS, **BROKEN_REDUCTIONS}
    if reduction_id not in table:
        known = ", ".join(sorted(table))
        raise ConfigError(f"unknown reduction {reduction_id!r}; known: {known}")
    return table[reduction_id]


def certify_reduction(reduction_id: str, algorithms: Sequence,
                      config: GeneratorConfig,
                      **apply_kwargs) -> ReductionReport:
    """Apply one reduction over a generated suite and check its conditions.

    Source instances that fail the reduction's preconditions are recorded
    as SKIP rows rather than failures.
    """
    red = lookup_reduction(reduction_id)
    if config.problem != red.source:
        raise ConfigError(
            f"reduction {reduction_id} consumes {red.source} instances, "
            f"config generates {config.problem}")
    instances = gen_instances(config)
    ids = instance_ids(config, instances)
    rows: List[ReductionRow] = []
    for rid, instance in sorted(zip(ids, instances)):
        for algorithm in algorithms:
            alg_id = getattr(algorithm, "id", str(algorithm))
            try:
                trace = red.apply(algorithm, instance, **apply_kwargs)
            except MalformedInstance as exc:
                rows.append(ReductionRow(rid, alg_id, "SKIP", (),
                                         reason=str(exc)))
                continue
            report = check_conditions(trace)
            verdict = report.verdict
            reason = ""
            if verdict == "PASS" and red.expect_opt_equal \
                    and trace.opt_p != trace.opt_q:
                verdict, reason = "FAIL", "optimum equality broken"
            if verdict == "PASS" and red.expect_alg_equal \
                    and trace.alg_p_cost != trace.alg_q_cost:
                verdict, reason = "FAIL", "cost equality broken"
            witness = instance_to_json(instance) if verdict == "FAIL" else None
            rows.append(ReductionRow(rid, alg_id, verdict, report.conditions,
                                     reason=reason, witness=witness))
    verdict = "PASS" if all(r.verdict != "FAIL" for r in rows) else "FAIL"
    return ReductionReport(reduction_id, tuple(rows), verdict)


# ---------------------------------------------------------------------------
# Pareto scan
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ParetoRow:
    claim: CompetitiveClaim
    per_algorithm: Tuple[Tuple[str, str], ...]
    verdict: str
    undominated: bool
    witness_id: Optional[str]


@dataclass(frozen=True)
class ParetoReport:
    rows: Tuple[ParetoRow, ...]

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["alpha", "beta", "gamma", "verdict"])
        for row in self.rows:
            writer.writerow([cost_to_text(row.claim.alpha),
                             cost_to_text(row.claim.beta),
                             cost_to_text(row.claim.gamma), row.verdict])
        return buf.getvalue()

    def to_json(self) -> str:
        payload = [
            {"alpha": cost_to_text(r.claim.alpha),
             "beta": cost_to_text(r.claim.beta),
             "gamma": cost_to_text(r.claim.gamma),
             "verdict": r.verdict, "undominated": r.undominated,
             "witness_id": r.witness_id,
             "per_algorithm": dict(r.per_algorithm)}
            for r in self.rows]
        return json.dumps(payload, sort_keys=True, separators=(",", ":"))


def _dominates(a: CompetitiveClaim, b: CompetitiveClaim) -> bool:
    le = (cost_le(a.alpha, b.alpha) and cost_le(a.beta, b.beta)
          and cost_le(a.gamma, b.gamma))
    strictly = ((a.alpha, a.beta, a.gamma) != (b.alpha, b.beta, b.gamma))
    return le and strictly


def pareto_scan(algorithms: Sequence, grid: Sequence[CompetitiveClaim],
                config: GeneratorConfig,
                measure_pair: MeasurePair = MU_PAIR) -> ParetoReport:
    """PASS/FAIL per claim (a claim passes if any algorithm certifies it),
    with empirically undominated PASS points marked."""
    instances = gen_instances(config)
    prelim: List[Tuple[CompetitiveClaim, Tuple, str, Optional[str]]] = []
    for claim in grid:
        per_alg = []
        witness_id = None
        for algorithm in algorithms:
            report = certify(algorithm, claim, measure_pair, config,
                             instances=instances)
            alg_id = getattr(algorithm, "id", str(algorithm))
            per_alg.append((alg_id, report.verdict))
            if report.verdict == "FAIL" and witness_id is None:
                witness_id = report.witness_id
        verdict = ("PASS" if any(v == "PASS" for _, v in per_alg)
                   else "FAIL")
        prelim.append((claim, tuple(per_alg), verdict,
                       None if verdict == "PASS" else witness_id))
    passing = [claim for claim, _, verdict, _ in prelim if verdict == "PASS"]
    rows = tuple(
        ParetoRow(claim, per_alg, verdict,
                  undominated=(verdict == "PASS" and not any(
                      _dominates(other, claim) for other in passing)),
                  witness_id=witness_id)
        for claim, per_alg, verdict, witness_id in prelim)
    return ParetoReport(rows)


# ---------------------------------------------------------------------------
# Paging block instrumentation
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class PagingBenchReport:
    """One flush-between-blocks run with its per-block accounting audited."""

    t: int
    trace_id: str
    faults: int
    lfd_total: int
    mu0: int
    mu1: int
    blocks: Tuple[FbbBlockStats, ...]
    violations: Tuple[str, ...]

    @property
    def verdict(self) -> str:
        return "PASS" if not self.violations else "FAIL"

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["block", "end_condition", "s", "d_c", "d_w",
                         "lfd", "fbb", "mu0", "mu1"])
        for b in self.blocks:
            writer.writerow([b.block, b.end_condition, b.s, b.d_c, b.d_w,
                             b.lfd, b.fbb, b.mu0, b.mu1])
        return buf.getvalue()

    def to_json(self) -> str:
        payload = {
            "trace_id": self.trace_id,
            "t": self.t,
            "faults": self.faults,
            "lfd": self.lfd_total,
            "mu0": self.mu0,
            "mu1": self.mu1,
            "verdict": self.verdict,
            "violations": list(self.violations),
            "blocks": [
                {"block": b.block, "end_condition": b.end_condition,
                 "s": b.s, "d_c": b.d_c, "d_w": b.d_w, "lfd": b.lfd,
                 "fbb": b.fbb, "mu0": b.mu0, "mu1": b.mu1}
                for b in self.blocks],
        }
        return json.dumps(payload, sort_keys=True, separators=(",", ":"))


def paging_block_checks(trace: Sequence[int], t: int,
                        predictions: Sequence[int],
                        trace_id: str = "trace") -> PagingBenchReport:
    """Instrument one flush-between-blocks run and audit its accounting.

    Each check applies only where its hypothesis does: a complete block saw
    more than t distinct pages; a block closed on all-zero predictions holds
    an incorrect 0-prediction; every block keeps fbb <= (t - 1/t)*lfd + 2t
    once t >= 3; a complete block with no incorrect 0-predictions has
    lfd >= 2 and, for t >= 5, fbb <= (t - e)*lfd + (1 - e)*mu1 with
    e = 1/(3t^2); block fault and error counts sum to the trace totals; and
    for t >= 5 the whole trace keeps
    faults <= (t - e)*LFD + 2t*mu0 + (1 - e)*mu1 + 2t.
    """
    faults, stats = fbb(trace, t, predictions)
    labels = lfd_labels(trace, t)
    lfd_total = lfd_run(trace, t)[0]
    mu0 = sum(b * (1 - p) for b, p in zip(labels, predictions))
    mu1 = sum((1 - b) * p for b, p in zip(labels, predictions))
    eps = Fraction(1, 3 * t * t)
    violations: List[str] = []

    for b in stats:
        where = f"block {b.block} ({b.end_condition})"
        complete = b.end_condition in ("Cond1", "Cond2")
        if complete and b.s <= t:
            violations.append(
                f"{where}: complete with only {b.s} distinct pages")
        if b.end_condition == "Cond1" and b.mu0 < 1:
            violations.append(
                f"{where}: closed on all-zero predictions yet every "
                "0-prediction is correct")
        if t >= 3 and b.fbb > (Fraction(t) - Fraction(1, t)) * b.lfd + 2 * t:
            violations.append(
                f"{where}: {b.fbb} faults exceed (t - 1/t)*{b.lfd} + 2t")
        if complete and b.mu0 == 0:
            if b.lfd < 2:
                violations.append(
                    f"{where}: no incorrect 0-predictions but lfd is "
                    f"{b.lfd}, below 2")
            if t >= 5 and b.fbb > (t - eps) * b.lfd + (1 - eps) * b.mu1:
                violations.append(
                    f"{where}: {b.fbb} faults exceed the clean-block bound "
                    f"at lfd {b.lfd}, mu1 {b.mu1}")
    if faults != sum(b.fbb for b in stats):
        violations.append("block faults do not sum to the trace total")
    if (mu0, mu1) != (sum(b.mu0 for b in stats),
                      sum(b.mu1 for b in stats)):
        violations.append("block errors do not sum to the trace totals")
    if t >= 5 and faults > ((t - eps) * lfd_total + 2 * t * mu0
                            + (1 - eps) * mu1 + 2 * t):
        violations.append(
            f"whole trace: {faults} faults exceed the bound at "
            f"lfd {lfd_total}, mu0 {mu0}, mu1 {mu1}")
    return PagingBenchReport(t=t, trace_id=trace_id, faults=faults,
                             lfd_total=lfd_total, mu0=mu0, mu1=mu1,
                             blocks=tuple(stats), violations=tuple(violations))
