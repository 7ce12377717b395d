"""
Random benchmark generation and the experiment harness.
"""

from ocalearn.bench.randgen import GenConfig, random_droca, random_voca
from ocalearn.bench.harness import (BENCH_FIELDS, SUMMARY_FIELDS, BenchRecord, BenchSettings,
                                    instance_seed, run_bench, run_instance, summarize)

__all__ = [
    'GenConfig',
    'random_droca',
    'random_voca',
    'BENCH_FIELDS',
    'SUMMARY_FIELDS',
    'BenchRecord',
    'BenchSettings',
    'instance_seed',
    'run_bench',
    'run_instance',
    'summarize',
]
