"""Command-line front end over the harness.

Seven commands: certify, check-reduction, adversary, pareto, paging-bench,
gen, and verify-instances. Every command accepts --seed (defaulting to the
PREDKIT_SEED environment variable, then 0), --out for the machine artifact,
and --format json|csv|jsonl. The human-readable summary always goes to
standard output; exit codes are 0 for pass/success, 1 for a failure with a
witness, 2 for usage or configuration errors.
"""

from __future__ import annotations

import csv
import functools
import io
import json
import os
import sys
from typing import List, Optional

import click

from . import adversaries as adv
from .algorithms import ALGORITHMS, fbb, fwz, lfd
from .core import (CompetitiveClaim, ConfigError, MU_PAIR, MalformedInstance,
                   ZERO_PAIR, cost_from_text, cost_to_text,
                   dump_instances_jsonl, instance_to_json,
                   load_instances_jsonl)
from .harness import (GeneratorConfig, adversary_family, certify,
                      certify_reduction, gen_instances, instance_ids,
                      lookup_reduction, paging_block_checks, pareto_scan)
from .oracles import verify_optimal_encoding

PROBLEMS = ("asg", "bdvc", "inter", "spill", "sat2", "dom", "pag")


def _lfd_policy(trace, k, predictions):
    # prediction-blind baseline, same call shape as the prediction-aware ones
    return lfd(trace, k)


PAGING_ALGORITHMS = {"fwz": fwz, "fbb": fbb, "lfd": _lfd_policy}


def make_algorithm(alg_id: str, problem: str):
    if problem == "pag":
        if alg_id not in PAGING_ALGORITHMS:
            raise ConfigError(f"unknown paging algorithm {alg_id!r}; known: "
                              + ", ".join(sorted(PAGING_ALGORITHMS)))
        return PAGING_ALGORITHMS[alg_id]
    if alg_id not in ALGORITHMS:
        raise ConfigError(f"unknown algorithm {alg_id!r}; known: "
                          + ", ".join(sorted(ALGORITHMS)))
    return ALGORITHMS[alg_id]()


def make_bit_algorithms(text: str) -> List:
    out = []
    for alg_id in (p.strip() for p in text.split(",")):
        if not alg_id:
            continue
        if alg_id not in ALGORITHMS:
            raise ConfigError(f"unknown algorithm {alg_id!r}; known: "
                              + ", ".join(sorted(ALGORITHMS)))
        out.append(ALGORITHMS[alg_id]())
    if not out:
        raise ConfigError("no target algorithms given")
    return out


def parse_t(text: Optional[str]):
    if text is None:
        return None
    if text.strip() == "inf":
        return "inf"
    try:
        return int(text)
    except ValueError:
        raise ConfigError(f"--t takes an integer or inf, got {text!r}")


def parse_claim(text: str, kappa: str, strict: bool) -> CompetitiveClaim:
    parts = [p.strip() for p in text.split(",")]
    if len(parts) != 3:
        raise ConfigError(f"claim must be alpha,beta,gamma, got {text!r}")
    try:
        alpha, beta, gamma = (cost_from_text(p) for p in parts)
        return CompetitiveClaim(alpha, beta, gamma,
                                kappa=cost_from_text(kappa), strict=strict)
    except (ValueError, ZeroDivisionError) as exc:
        raise ConfigError(f"bad claim {text!r}: {exc}")


def parse_int_list(text: str, flag: str) -> List[int]:
    try:
        values = [int(p) for p in text.split(",") if p.strip()]
    except ValueError:
        raise ConfigError(f"{flag} takes a comma-separated integer list, "
                          f"got {text!r}")
    if not values:
        raise ConfigError(f"{flag} is empty")
    return values


def parse_cost_list(text: str, flag: str) -> List:
    try:
        values = [cost_from_text(p) for p in text.split(",") if p.strip()]
    except (ValueError, ZeroDivisionError):
        raise ConfigError(f"{flag} takes a comma-separated value list, "
                          f"got {text!r}")
    if not values:
        raise ConfigError(f"{flag} is empty")
    return values


def resolve_seed(seed: Optional[int]) -> int:
    if seed is not None:
        return seed
    env = os.environ.get("PREDKIT_SEED", "").strip()
    if not env:
        return 0
    try:
        return int(env)
    except ValueError:
        raise ConfigError(f"PREDKIT_SEED must be an integer, got {env!r}")


def emit(text: str, out: Optional[str], echo_without_out: bool = False) -> None:
    """Write the machine artifact, or echo it when the command's whole
    point is the artifact and no --out was given."""
    if text and not text.endswith("\n"):
        text += "\n"
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    elif echo_without_out:
        click.echo(text, nl=False)


def common_options(default_fmt: str = "json"):
    def wrap(fn):
        fn = click.option(
            "--format", "fmt", type=click.Choice(["json", "csv", "jsonl"]),
            default=default_fmt, show_default=True,
            help="machine artifact format")(fn)
        fn = click.option("--out", type=click.Path(dir_okay=False),
                          help="write the machine artifact to this file")(fn)
        fn = click.option("--seed", type=int, default=None,
                          help="seed (default: PREDKIT_SEED, then 0)")(fn)
        return fn
    return wrap


def guarded(fn):
    """Map configuration problems to exit 2 and a return value to the code."""
    @functools.wraps(fn)
    def wrapper(*args, **kwargs):
        try:
            code = fn(*args, **kwargs)
        except (ConfigError, MalformedInstance) as exc:
            click.echo(f"error: {exc}", err=True)
            sys.exit(2)
        sys.exit(0 if code is None else code)
    return wrapper


@click.group()
def main() -> None:
    """Competitiveness checks for online algorithms with bit predictions."""


# ---------------------------------------------------------------------------
# certify
# ---------------------------------------------------------------------------

@main.command("certify")
@click.option("--alg", "alg_id", required=True, help="algorithm id")
@click.option("--problem", required=True, type=click.Choice(PROBLEMS))
@click.option("--t", "t_text", default=None, help="problem parameter, or inf")
@click.option("--k", type=int, default=None, help="colors (spill) or cache")
@click.option("--N", "universe", type=int, default=None,
              help="paging page universe")
@click.option("--n", type=int, default=None, help="instance size")
@click.option("--count", type=int, default=100, show_default=True,
              help="sampled instances")
@click.option("--exhaustive-n", type=int, default=None,
              help="enumerate every (x, xhat) pair of this size instead")
@click.option("--claim", "claim_text", required=True,
              help="alpha,beta,gamma")
@click.option("--kappa", default="0", show_default=True)
@click.option("--strict/--asymptotic", "strict", default=True,
              help="claim flavor")
@click.option("--measures", type=click.Choice(["mu", "zero"]), default="mu",
              show_default=True)
@click.option("--adversary", default="auto", show_default=True,
              help="auto, off, or one family id (family only, no suite)")
@click.option("--target-mu0", type=int, default=None)
@click.option("--target-mu1", type=int, default=None)
@click.option("--flip-prob", type=float, default=None)
@click.option("--min-distinct", type=int, default=None)
@common_options()
@guarded
def certify_cmd(alg_id, problem, t_text, k, universe, n, count, exhaustive_n,
                claim_text, kappa, strict, measures, adversary, target_mu0,
                target_mu1, flip_prob, min_distinct, seed, out, fmt) -> int:
    """Check one competitiveness claim over a generated suite."""
    algorithm = make_algorithm(alg_id, problem)
    claim = parse_claim(claim_text, kappa, strict)
    pair = MU_PAIR if measures == "mu" else ZERO_PAIR
    exhaustive = exhaustive_n is not None
    size = exhaustive_n if exhaustive else n
    if size is None:
        raise ConfigError("pass --n (sampled) or --exhaustive-n")
    config = GeneratorConfig(problem=problem, n=size, t=parse_t(t_text), k=k,
                             N=universe, seed=resolve_seed(seed), count=count,
                             exhaustive=exhaustive, target_mu0=target_mu0,
                             target_mu1=target_mu1, flip_prob=flip_prob,
                             min_distinct=min_distinct)
    # a named family means: that family alone is the suite
    instances = [] if adversary not in ("auto", "off") else None
    report = certify(algorithm, claim, pair, config, instances=instances,
                     adversaries=adversary)
    click.echo(f"certify {alg_id} on {problem}: {report.verdict}  "
               f"claim {claim.id}  records {len(report.records)}  "
               f"max slack {cost_to_text(report.max_slack)}")
    if report.verdict == "FAIL":
        click.echo(f"witness: {report.witness_id}")
        click.echo("witness instance: "
                   + json.dumps(report.witness_instance, sort_keys=True))
    if fmt == "json":
        emit(report.to_json(), out)
    elif fmt == "csv":
        emit(report.to_csv(), out)
    else:
        witness = (json.dumps(report.witness_instance, sort_keys=True,
                              separators=(",", ":"))
                   if report.witness_instance else "")
        emit(witness, out)
    return 0 if report.verdict == "PASS" else 1


# ---------------------------------------------------------------------------
# check-reduction
# ---------------------------------------------------------------------------

_SOURCE_DEFAULT_N = {"asg": 4, "bdvc": 6, "inter": 7, "pag": 25}


@main.command("check-reduction")
@click.option("--id", "reduction_id", required=True, help="reduction id")
@click.option("--t", "t_text", default=None,
              help="source problem parameter (default 3, or inf)")
@click.option("--k", type=int, default=None, help="spill color count")
@click.option("--variant", type=click.Choice(["strict", "asymptotic"]),
              default=None, help="reduction variant where one exists")
@click.option("--samples", type=int, default=100, show_default=True)
@click.option("--n", type=int, default=None,
              help="source instance size (default fits the oracle budget)")
@click.option("--targets", default="ftp,always-zero,always-one",
              show_default=True, help="comma list of target algorithm ids")
@common_options()
@guarded
def check_reduction_cmd(reduction_id, t_text, k, variant, samples, n,
                        targets, seed, out, fmt) -> int:
    """Apply one reduction over seeded instances and check its conditions."""
    red = lookup_reduction(reduction_id)
    t = parse_t(t_text)
    if t is None:
        t = 3
    size = n if n is not None else _SOURCE_DEFAULT_N[red.source]
    kwargs = {"problem": red.source, "n": size, "t": t,
              "seed": resolve_seed(seed), "count": samples}
    if red.source == "pag":
        kwargs["min_distinct"] = t if t != "inf" else None
    config = GeneratorConfig(**kwargs)
    apply_kwargs = {}
    if k is not None:
        apply_kwargs["k"] = k
    if variant is not None:
        apply_kwargs["variant"] = variant
    algorithms = make_bit_algorithms(targets)
    report = certify_reduction(reduction_id, algorithms, config,
                               **apply_kwargs)
    counts = report.counts
    click.echo(f"{reduction_id}: {report.verdict}  pass {counts['PASS']}  "
               f"fail {counts['FAIL']}  skip {counts['SKIP']}")
    for row in report.rows:
        if row.verdict == "FAIL":
            broken = [name for name, v, _ in row.conditions if v == "FAIL"]
            click.echo(f"witness: {row.instance_id} under {row.algorithm}: "
                       + (row.reason or ", ".join(broken) + " violated"))
            click.echo("witness instance: "
                       + json.dumps(row.witness, sort_keys=True))
            break
    if fmt == "json":
        emit(report.to_json(), out)
    elif fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["instance_id", "algorithm", "verdict", "reason"])
        for row in report.rows:
            writer.writerow([row.instance_id, row.algorithm, row.verdict,
                             row.reason])
        emit(buf.getvalue(), out)
    else:
        lines = [json.dumps(row.witness, sort_keys=True,
                            separators=(",", ":"))
                 for row in report.rows if row.witness]
        emit("\n".join(lines), out)
    return 0 if report.verdict == "PASS" else 1


# ---------------------------------------------------------------------------
# adversary
# ---------------------------------------------------------------------------

@main.command("adversary")
@click.option("--family", required=True, help="adversary family id")
@click.option("--alg", "alg_id", required=True, help="bit algorithm id")
@click.option("--t", "t_text", default=None, help="guessing penalty, or inf")
@click.option("--n", type=int, default=100, show_default=True,
              help="run length for a single replay")
@click.option("--claim", "claim_text", default=None,
              help="alpha,beta,gamma: grow a slack curve instead")
@click.option("--kappa", default="0", show_default=True)
@click.option("--strict/--asymptotic", "strict", default=True)
@click.option("--n-values", default="10,20,40,80,160", show_default=True,
              help="curve sizes (with --claim)")
@common_options()
@guarded
def adversary_cmd(family, alg_id, t_text, n, claim_text, kappa, strict,
                  n_values, seed, out, fmt) -> int:
    """Replay one adaptive family, or grow a claim's slack curve over n."""
    del seed  # adaptive replay is deterministic; accepted for uniformity
    fam = adversary_family(family, parse_t(t_text))
    if alg_id not in ALGORITHMS:
        raise ConfigError(f"unknown algorithm {alg_id!r}; known: "
                          + ", ".join(sorted(ALGORITHMS)))
    algorithm = ALGORITHMS[alg_id]()

    if claim_text is None:
        instance, record = adv.run_adversary(fam, algorithm, n)
        click.echo(f"{family} vs {alg_id} at n={n}: "
                   f"ALG {cost_to_text(record.alg_cost)}  "
                   f"OPT {cost_to_text(record.opt_cost)}  "
                   f"eta0 {record.eta0}  eta1 {record.eta1}")
        payload = {
            "instance_id": record.instance_id,
            "alg": cost_to_text(record.alg_cost),
            "opt": cost_to_text(record.opt_cost),
            "eta0": record.eta0, "eta1": record.eta1,
            "instance": instance_to_json(instance),
        }
        if fmt == "csv":
            buf = io.StringIO()
            writer = csv.writer(buf, lineterminator="\n")
            writer.writerow(["n", "opt", "alg", "eta0", "eta1", "slack"])
            writer.writerow([n, cost_to_text(record.opt_cost),
                             cost_to_text(record.alg_cost), record.eta0,
                             record.eta1, ""])
            emit(buf.getvalue(), out)
        elif fmt == "jsonl":
            emit(json.dumps(instance_to_json(instance), sort_keys=True,
                            separators=(",", ":")), out)
        else:
            emit(json.dumps(payload, sort_keys=True, separators=(",", ":")),
                 out)
        return 0

    claim = parse_claim(claim_text, kappa, strict)
    sizes = parse_int_list(n_values, "--n-values")
    curve = adv.grow_slack_curve(fam, algorithm, claim, sizes)
    slope = "none" if curve.slope is None else cost_to_text(curve.slope)
    click.echo(f"{family} vs {alg_id}, claim {claim.id}: {curve.verdict}  "
               f"slope {slope}")
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["n", "opt", "alg", "eta0", "eta1", "slack"])
        for row in curve.rows:
            writer.writerow([row.n, cost_to_text(row.opt),
                             cost_to_text(row.alg), row.eta0, row.eta1,
                             cost_to_text(row.slack)])
        emit(buf.getvalue(), out)
    else:
        rows = [{"n": r.n, "opt": cost_to_text(r.opt),
                 "alg": cost_to_text(r.alg), "eta0": r.eta0, "eta1": r.eta1,
                 "slack": cost_to_text(r.slack)} for r in curve.rows]
        if fmt == "jsonl":
            emit("\n".join(json.dumps(r, sort_keys=True,
                                      separators=(",", ":")) for r in rows),
                 out)
        else:
            emit(json.dumps({"verdict": curve.verdict, "slope": slope,
                             "rows": rows},
                            sort_keys=True, separators=(",", ":")), out)
    return 0 if curve.verdict == "BOUNDED" else 1


# ---------------------------------------------------------------------------
# pareto
# ---------------------------------------------------------------------------

@main.command("pareto")
@click.option("--problem", default="asg", show_default=True,
              type=click.Choice(PROBLEMS))
@click.option("--t", "t_text", default="3", show_default=True)
@click.option("--n", type=int, default=6, show_default=True)
@click.option("--count", type=int, default=50, show_default=True)
@click.option("--algs", default="ftp,always-zero,always-one",
              show_default=True)
@click.option("--alphas", default="1,2,3", show_default=True)
@click.option("--betas", default="0,1,2", show_default=True)
@click.option("--gammas", default="0,1/2,1", show_default=True)
@click.option("--kappa", default="0", show_default=True)
@click.option("--strict/--asymptotic", "strict", default=True)
@common_options()
@guarded
def pareto_cmd(problem, t_text, n, count, algs, alphas, betas, gammas, kappa,
               strict, seed, out, fmt) -> int:
    """Scan a claim grid and mark the empirically undominated PASS points."""
    algorithms = make_bit_algorithms(algs)
    grid = []
    kap = cost_from_text(kappa)
    for a in parse_cost_list(alphas, "--alphas"):
        for b in parse_cost_list(betas, "--betas"):
            for g in parse_cost_list(gammas, "--gammas"):
                try:
                    grid.append(CompetitiveClaim(a, b, g, kappa=kap,
                                                 strict=strict))
                except ValueError as exc:
                    raise ConfigError(f"bad grid point ({a},{b},{g}): {exc}")
    config = GeneratorConfig(problem=problem, n=n, t=parse_t(t_text),
                             seed=resolve_seed(seed), count=count)
    report = pareto_scan(algorithms, grid, config)
    passed = sum(1 for r in report.rows if r.verdict == "PASS")
    click.echo(f"pareto over {len(report.rows)} claims: {passed} pass")
    for row in report.rows:
        if row.undominated:
            click.echo(f"undominated: ({cost_to_text(row.claim.alpha)},"
                       f"{cost_to_text(row.claim.beta)},"
                       f"{cost_to_text(row.claim.gamma)})")
    if fmt == "csv":
        emit(report.to_csv(), out)
    elif fmt == "jsonl":
        emit("\n".join(json.dumps(r, sort_keys=True, separators=(",", ":"))
                       for r in json.loads(report.to_json())), out)
    else:
        emit(report.to_json(), out)
    return 0


# ---------------------------------------------------------------------------
# paging-bench
# ---------------------------------------------------------------------------

@main.command("paging-bench")
@click.option("--t", type=int, required=True, help="cache size")
@click.option("--n", type=int, default=200, show_default=True,
              help="trace length")
@click.option("--N", "universe", type=int, default=None,
              help="page universe (default 3t)")
@click.option("--count", type=int, default=1, show_default=True)
@click.option("--min-distinct", type=int, default=None,
              help="distinct pages per trace (default t+1)")
@click.option("--target-mu0", type=int, default=None)
@click.option("--target-mu1", type=int, default=None)
@click.option("--flip-prob", type=float, default=None)
@common_options(default_fmt="csv")
@guarded
def paging_bench_cmd(t, n, universe, count, min_distinct, target_mu0,
                     target_mu1, flip_prob, seed, out, fmt) -> int:
    """Run the block-flushing policy and audit its per-block accounting."""
    if min_distinct is None:
        min_distinct = min(t + 1, n)
    config = GeneratorConfig(problem="pag", n=n, t=t, N=universe,
                             seed=resolve_seed(seed), count=count,
                             min_distinct=min_distinct, target_mu0=target_mu0,
                             target_mu1=target_mu1, flip_prob=flip_prob)
    instances = gen_instances(config)
    ids = instance_ids(config, instances)
    reports = [paging_block_checks(inst.requests, inst.param, inst.xhat,
                                   trace_id=rid)
               for rid, inst in zip(ids, instances)]
    worst = [r for r in reports if r.verdict == "FAIL"]
    blocks = sum(len(r.blocks) for r in reports)
    click.echo(f"paging-bench t={t}: {count} traces, {blocks} blocks, "
               f"{len(worst)} with violations")
    for r in worst:
        click.echo(f"witness: {r.trace_id}: {r.violations[0]}")
        break
    if fmt == "csv":
        text = reports[0].to_csv()
        # one pinned header, then every trace's blocks
        text += "".join("".join(r.to_csv().splitlines(keepends=True)[1:])
                        for r in reports[1:])
        emit(text, out, echo_without_out=True)
    elif fmt == "jsonl":
        emit("\n".join(r.to_json() for r in reports), out)
    else:
        emit(json.dumps([json.loads(r.to_json()) for r in reports],
                        sort_keys=True, separators=(",", ":")), out)
    return 0 if not worst else 1


# ---------------------------------------------------------------------------
# gen / verify-instances
# ---------------------------------------------------------------------------

@main.command("gen")
@click.option("--problem", required=True, type=click.Choice(PROBLEMS))
@click.option("--t", "t_text", default=None)
@click.option("--k", type=int, default=None)
@click.option("--N", "universe", type=int, default=None)
@click.option("--n", type=int, required=True)
@click.option("--count", type=int, default=100, show_default=True)
@click.option("--exhaustive", is_flag=True, default=False)
@click.option("--target-mu0", type=int, default=None)
@click.option("--target-mu1", type=int, default=None)
@click.option("--flip-prob", type=float, default=None)
@click.option("--min-distinct", type=int, default=None)
@common_options(default_fmt="jsonl")
@guarded
def gen_cmd(problem, t_text, k, universe, n, count, exhaustive, target_mu0,
            target_mu1, flip_prob, min_distinct, seed, out, fmt) -> int:
    """Generate a seeded instance suite (the artifact is the instances)."""
    config = GeneratorConfig(problem=problem, n=n, t=parse_t(t_text), k=k,
                             N=universe, seed=resolve_seed(seed), count=count,
                             exhaustive=exhaustive, target_mu0=target_mu0,
                             target_mu1=target_mu1, flip_prob=flip_prob,
                             min_distinct=min_distinct)
    instances = gen_instances(config)
    ids = instance_ids(config, instances)
    if out:
        click.echo(f"generated {len(instances)} {problem} instances -> {out}")
    if fmt == "jsonl":
        emit(dump_instances_jsonl(instances), out, echo_without_out=True)
    elif fmt == "json":
        emit(json.dumps([instance_to_json(i) for i in instances],
                        sort_keys=True, separators=(",", ":")),
             out, echo_without_out=True)
    else:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["instance_id", "problem", "t_or_k", "n", "x",
                         "xhat"])
        for rid, inst in zip(ids, instances):
            obj = instance_to_json(inst)
            writer.writerow([rid, inst.problem, json.dumps(obj["t_or_k"]),
                             len(inst.x), obj["x"], obj["xhat"]])
        emit(buf.getvalue(), out, echo_without_out=True)
    return 0


@main.command("verify-instances")
@click.option("--in", "infile", required=True,
              type=click.Path(exists=True, dir_okay=False),
              help="JSONL instance file")
@common_options()
@guarded
def verify_instances_cmd(infile, seed, out, fmt) -> int:
    """Check that every instance's truth bits encode an optimal solution."""
    del seed  # deterministic; accepted for flag uniformity
    with open(infile, "r", encoding="utf-8") as fh:
        text = fh.read()
    try:
        instances = load_instances_jsonl(text)
    except (KeyError, TypeError, ValueError, json.JSONDecodeError) as exc:
        raise ConfigError(f"unreadable instance file {infile}: {exc}")
    results = [(i, verify_optimal_encoding(inst))
               for i, inst in enumerate(instances)]
    failures = [(i, v) for i, v in results if v != "PASS"]
    click.echo(f"verified {len(instances)} instances: "
               f"{len(instances) - len(failures)} pass, "
               f"{len(failures)} fail")
    for i, _ in failures:
        click.echo(f"witness: line {i + 1}: "
                   + json.dumps(instance_to_json(instances[i]),
                                sort_keys=True))
        break
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["line", "problem", "verdict"])
        for i, v in results:
            writer.writerow([i + 1, instances[i].problem, v])
        emit(buf.getvalue(), out)
    elif fmt == "jsonl":
        lines = [json.dumps(instance_to_json(instances[i]), sort_keys=True,
                            separators=(",", ":")) for i, _ in failures]
        emit("\n".join(lines), out)
    else:
        emit(json.dumps(
            {"total": len(instances), "failures": [i + 1 for i, _ in failures],
             "verdict": "PASS" if not failures else "FAIL"},
            sort_keys=True, separators=(",", ":")), out)
    return 0 if not failures else 1


if __name__ == "__main__":
    main()
