"""
Active learning: the simulated teacher, the observation table and the learning loop.
"""

from ocalearn.active.teacher import (EquivalenceVerdict, MismatchKind, QueryStats, Teacher,
                                     TeacherLimits, VerdictKind, brute_force_equiv,
                                     synchronous_product_search)
from ocalearn.active.observation_table import (InconsistencyWitness, ObservationTable,
                                               RowSignature, TableMode)
from ocalearn.active.learner import (LearnLimits, RoundRecord, RunReport, close_and_consistify,
                                     learn_droca, learn_voca, process_counterexample)

__all__ = [
    'EquivalenceVerdict',
    'MismatchKind',
    'QueryStats',
    'Teacher',
    'TeacherLimits',
    'VerdictKind',
    'brute_force_equiv',
    'synchronous_product_search',
    'InconsistencyWitness',
    'ObservationTable',
    'RowSignature',
    'TableMode',
    'LearnLimits',
    'RoundRecord',
    'RunReport',
    'close_and_consistify',
    'learn_droca',
    'learn_voca',
    'process_counterexample',
]
