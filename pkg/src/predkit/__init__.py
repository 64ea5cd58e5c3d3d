"""Competitiveness checks for online minimization with bit predictions.

The package simulates online problems whose requests carry 0/1 predictions,
scores algorithms against exact offline optima, and certifies
(alpha, beta, gamma)-competitiveness claims, instance reductions, and
adversarial lower bounds at desk scale. Everything is exact arithmetic and
seed-deterministic.
"""

from .core import (CompetitiveClaim, ConfigError, INFINITE, MU_PAIR,
                   MalformedInstance, MeasurePair, NEG_INFINITE,
                   PredictedInstance, RunRecord, ZERO_PAIR, check_claim,
                   cost_from_text, cost_to_text, dump_instances_jsonl,
                   instance_from_json, instance_to_json,
                   load_instances_jsonl, record_slack)
from .problems import instance_cost, lfd_labels, lfd_run, simulate_paging
from .algorithms import (ALGORITHMS, AcceptNonisolated, AlwaysOne, AlwaysZero,
                         BitAlgorithm, FollowThePredictions, Scripted, fbb,
                         fwz, lfd, run_algorithm)
from .oracles import brute_force_opt, greedy_ir_opt, verify_optimal_encoding
from .reductions import (BROKEN_REDUCTIONS, REDUCTIONS, ReductionTrace,
                         check_conditions)
from .adversaries import (ADVERSARIES, AdversaryFamily, DeterminismError,
                          grow_slack_curve, run_adversary)
from .harness import (ExperimentReport, GeneratorConfig, PagingBenchReport,
                      certify, certify_reduction, corrupt_bits, gen_instances,
                      instance_ids, paging_block_checks, pareto_scan)

__version__ = "0.1.0"
