"""
Passive learners: RPNI for DFAs and OPNI for one-counter automata.
"""

from ocalearn.passive.rpni import (MergePlan, PrefixTreeAcceptor, build_pta, consistent_with, merge,
                                   rpni)
from ocalearn.passive.opni import (ActionTuple, AnnotatedLetter, EnrichedAlphabet, act_similar,
                                   check_consistency, compute_act, const_oca, encode_word,
                                   enrich_sample, opni)

__all__ = [
    'MergePlan',
    'PrefixTreeAcceptor',
    'build_pta',
    'consistent_with',
    'merge',
    'rpni',
    'ActionTuple',
    'AnnotatedLetter',
    'EnrichedAlphabet',
    'act_similar',
    'check_consistency',
    'compute_act',
    'const_oca',
    'encode_word',
    'enrich_sample',
    'opni',
]
