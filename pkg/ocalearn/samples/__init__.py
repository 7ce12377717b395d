"""
Word orders, sample sets and counter maps.
"""

from ocalearn.samples.order import (Ordering, llex_compare, llex_pair_compare, llex_sorted,
                                    prefixes)
from ocalearn.samples.sample_set import (CounterMap, SampleSet, read_counter_map, read_samples,
                                         write_counter_map, write_samples)

__all__ = [
    'Ordering',
    'llex_compare',
    'llex_pair_compare',
    'llex_sorted',
    'prefixes',
    'CounterMap',
    'SampleSet',
    'read_counter_map',
    'read_samples',
    'write_counter_map',
    'write_samples',
]
