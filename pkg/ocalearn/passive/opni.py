"""
OPNI: passive learning of deterministic real-time one-counter automata.

The sample is rewritten over an enriched alphabet (letters annotated with the
sign of the counter before them, plus one letter per observed action tuple),
RPNI learns a DFA over it, and the counter machine is read back off that DFA.
"""

import logging
from collections import defaultdict
from typing import Callable, Dict, List, Mapping, NamedTuple, Optional, Sequence, Tuple

from ocalearn.automata.alphabet import Alphabet, Letter, Word, format_word
from ocalearn.automata.machines import (CounterAction, Dfa, Droca, LetterKind, State, Voca,
                                        voca_letter_effect)
from ocalearn.errors import ExtractionError, InconsistentSampleError, InputError
from ocalearn.passive.rpni import rpni
from ocalearn.samples.order import llex_sorted
from ocalearn.samples.sample_set import SampleSet

logger = logging.getLogger(__name__)

Sign = int


def sign_of(value: int) -> Sign:
    return 1 if value > 0 else 0


class ActionTuple:
    """
    Sign of the counter after a word, and the counter change each letter causes
    next (None where unknown).

    Equality and hashing use (sign, effects) only.
    """

    __slots__ = ("sign", "effects", "alphabet", "_hash")

    def __init__(self, sign: Sign, effects: Sequence[Optional[int]], alphabet: Alphabet):
        if sign not in (0, 1):
            raise InputError(f"Action tuple sign must be 0 or 1, got {sign!r}")
        if len(effects) != len(alphabet):
            raise InputError("Action tuple needs one effect per letter")
        effects = tuple(None if e is None else CounterAction(e) for e in effects)
        if sign == 0 and CounterAction.DECREMENT in effects:
            raise InputError("Action tuple with zero sign cannot decrement")
        self.sign = sign
        self.effects: Tuple[Optional[CounterAction], ...] = effects
        self.alphabet = alphabet
        self._hash = hash((sign, effects))

    def effect(self, letter: Letter) -> Optional[CounterAction]:
        return self.effects[self.alphabet.rank(letter)]

    def __eq__(self, other: object) -> bool:
        return (isinstance(other, ActionTuple)
                and self.sign == other.sign
                and self.effects == other.effects)

    def __hash__(self) -> int:
        return self._hash

    def __str__(self) -> str:
        parts = [str(self.sign)] + ["_" if e is None else str(e) for e in self.effects]
        return "(" + ",".join(parts) + ")"

    __repr__ = __str__


class AnnotatedLetter(NamedTuple):
    """A letter tagged with the sign of the counter before it is read."""
    base: Letter
    sign: Sign

    def __str__(self) -> str:
        return f"{self.base}^{self.sign}"


class EnrichedAlphabet:
    """
    Annotated letters a^0, a^1, b^0, b^1, ... in base order, followed by the
    action letters in the order they were first seen.
    """

    def __init__(self, alphabet: Alphabet, actions: Sequence[ActionTuple] = ()):
        self.base = alphabet
        self.annotated: Tuple[AnnotatedLetter, ...] = tuple(
            AnnotatedLetter(letter, sign) for letter in alphabet for sign in (0, 1))
        self.actions: Tuple[ActionTuple, ...] = tuple(actions)

    def as_alphabet(self) -> Alphabet:
        return Alphabet(self.annotated + self.actions)

    def __len__(self) -> int:
        return len(self.annotated) + len(self.actions)


def compute_act(word: Sequence[Letter], ce: Mapping[Word, int], alphabet: Alphabet) -> ActionTuple:
    """
    Action tuple of a word: sgn(ce(w)) and ce(wσ) - ce(w) for every σ whose
    extension has a known counter value.

    Raises:
        InputError: ce has no value for the word
    """
    word = tuple(word)
    if word not in ce:
        raise InputError(f"No counter value for {format_word(word)}")
    base = ce[word]
    effects = []
    for letter in alphabet:
        extended = word + (letter,)
        effects.append(ce[extended] - base if extended in ce else None)
    return ActionTuple(sign_of(base), effects, alphabet)


def act_similar(first: ActionTuple, second: ActionTuple) -> bool:
    """Tuples are similar when their signs differ or every letter agrees up to unknowns."""
    if first.sign != second.sign:
        return True
    return all(x is None or y is None or x == y for x, y in zip(first.effects, second.effects))


def encode_word(word: Sequence[Letter], ce: Mapping[Word, int]) -> Tuple[AnnotatedLetter, ...]:
    """
    Annotate every letter with the sign of the counter value of the prefix before it.

    Raises:
        InputError: a strict prefix without counter value
    """
    word = tuple(word)
    encoded = []
    for i, letter in enumerate(word):
        prefix = word[:i]
        if prefix not in ce:
            raise InputError(f"No counter value for prefix {format_word(prefix)} of {format_word(word)}")
        encoded.append(AnnotatedLetter(letter, sign_of(ce[prefix])))
    return tuple(encoded)


def _restricted(sample: SampleSet, ce: Mapping[Word, int]) -> Dict[Word, int]:
    restricted = {}
    for word in sample.prefixes():
        if word not in ce:
            raise InputError(f"Counter map has no value for prefix {format_word(word)}")
        restricted[word] = ce[word]
    return restricted


def enrich_sample(sample: SampleSet, ce: Mapping[Word, int],
                  alphabet: Alphabet) -> Tuple[SampleSet, EnrichedAlphabet]:
    """
    Rewrite a sample over the enriched alphabet.

    Positives are the encoded positive words and every Enc(w)·Act(w); negatives
    are the encoded negative words and every Enc(w)·op for an action letter op not
    similar to Act(w), for w ranging over the prefixes of the sample.

    Args:
        sample: Positive and negative words
        ce: Counter values, defined at least on every prefix of the sample
        alphabet: Base alphabet

    Returns:
        (SampleSet, EnrichedAlphabet): The enriched sample and its alphabet

    Raises:
        InputError: missing counter values
        InconsistentSampleError: a rewritten word ends up both positive and negative
    """
    sample.check_alphabet(alphabet)
    values = _restricted(sample, ce)
    prefix_order = llex_sorted(values, alphabet)

    acts: Dict[Word, ActionTuple] = {}
    actions: Dict[ActionTuple, None] = {}
    for word in prefix_order:
        act = compute_act(word, values, alphabet)
        acts[word] = act
        actions.setdefault(act, None)

    positives: Dict[tuple, Word] = {}
    negatives: Dict[tuple, Word] = {}
    for word in sample.positives:
        positives[encode_word(word, values)] = word
    for word in sample.negatives:
        negatives[encode_word(word, values)] = word

    for word in prefix_order:
        encoded = encode_word(word, values)
        act = acts[word]
        positives.setdefault(encoded + (act,), word)
        for op in actions:
            if not act_similar(op, act):
                negatives.setdefault(encoded + (op,), word)

    overlap = positives.keys() & negatives.keys()
    if overlap:
        clash = next(iter(overlap))
        raise InconsistentSampleError(
            f"Enriched word {format_word(clash)} is both positive (from {format_word(positives[clash])}) "
            f"and negative (from {format_word(negatives[clash])}); the counter map does not fit the sample")

    enriched = EnrichedAlphabet(alphabet, list(actions))
    logger.debug(f"Enriched sample: +{len(positives)} -{len(negatives)}, {len(actions)} action letters")
    return SampleSet(positives, negatives), enriched


def const_oca(hat_dfa: Dfa, alphabet: Alphabet,
              partition: Optional[Mapping[Letter, LetterKind]] = None) -> Droca:
    """
    Read a counter machine off a DFA over the enriched alphabet.

    An edge q --σ^s--> q' becomes the transition δs(q, σ) = (q', e), where e is
    the σ-effect of the first action letter leaving q with sign s and a known
    σ-effect. With a partition, e comes from the letter class instead and the
    result is a Voca.

    Args:
        hat_dfa: DFA learned over the enriched alphabet
        alphabet: Base alphabet
        partition: Letter classes for visibly one-counter machines

    Returns:
        Droca: The machine on the same states, initial state and finals

    Raises:
        ExtractionError: no action letter witnesses an edge, or two witnesses disagree
    """
    actions_from: Dict[State, List[ActionTuple]] = defaultdict(list)
    annotated_edges: List[Tuple[State, AnnotatedLetter, State]] = []
    for source, letter, target in hat_dfa.transitions():
        if isinstance(letter, ActionTuple):
            actions_from[source].append(letter)
        elif isinstance(letter, AnnotatedLetter):
            annotated_edges.append((source, letter, target))

    delta0: Dict[Tuple[State, Letter], Tuple[State, int]] = {}
    delta1: Dict[Tuple[State, Letter], Tuple[State, int]] = {}
    for source, letter, target in annotated_edges:
        if partition is not None:
            action = voca_letter_effect(partition, letter.base)
            if letter.sign == 0 and action is CounterAction.DECREMENT:
                continue
        else:
            witnesses = [act for act in actions_from[source]
                         if act.sign == letter.sign and act.effect(letter.base) is not None]
            if not witnesses:
                raise ExtractionError(
                    f"State {source} has an edge on {letter} but no action letter with sign "
                    f"{letter.sign} and a known effect on {letter.base}")
            action = witnesses[0].effect(letter.base)
            disagreeing = [act for act in witnesses if act.effect(letter.base) != action]
            if disagreeing:
                raise ExtractionError(
                    f"State {source}: action letters {witnesses[0]} and {disagreeing[0]} "
                    f"disagree on {letter.base}")
        (delta0 if letter.sign == 0 else delta1)[(source, letter.base)] = (target, action)

    if partition is not None:
        return Voca(hat_dfa.states, alphabet, hat_dfa.initial, delta0, delta1, hat_dfa.finals, partition)
    return Droca(hat_dfa.states, alphabet, hat_dfa.initial, delta0, delta1, hat_dfa.finals)


def check_consistency(machine: Droca, sample: SampleSet, ce: Mapping[Word, int]) -> bool:
    """
    True iff the machine accepts every positive word, rejects every negative word,
    and reaches ce(w) on every prefix w of the sample.

    For a Voca the counter value of a word follows from its letters, so prefixes
    without a run still count as matching when the partition gives ce(w).
    """
    if not all(machine.accepts(w) for w in sample.positives):
        return False
    if any(machine.accepts(w) for w in sample.negatives):
        return False
    counter_of = machine.word_counter_effect if isinstance(machine, Voca) else machine.counter_effect
    for word in sample.prefixes():
        if word not in ce or counter_of(word) != ce[word]:
            return False
    return True


def _check_similar_acts(hat_dfa: Dfa, sample: SampleSet, ce: Mapping[Word, int],
                        alphabet: Alphabet) -> None:
    # Prefixes sharing a state and a sign must agree on every known effect
    seen: Dict[Tuple[State, Sign, int], Tuple[CounterAction, Word]] = {}
    for word in sample.prefixes():
        state = hat_dfa.reach(encode_word(word, ce))
        if state is None:
            raise ExtractionError(f"Encoded prefix {format_word(word)} has no run in the learned DFA")
        act = compute_act(word, ce, alphabet)
        for index, effect in enumerate(act.effects):
            if effect is None:
                continue
            key = (state, act.sign, index)
            previous = seen.setdefault(key, (effect, word))
            if previous[0] != effect:
                raise ExtractionError(
                    f"Prefixes {format_word(previous[1])} and {format_word(word)} share state {state} "
                    f"but their action tuples are not similar")


def opni(sample: SampleSet, ce: Mapping[Word, int], alphabet: Alphabet, *,
         partition: Optional[Mapping[Letter, LetterKind]] = None,
         verify: bool = True,
         should_stop: Optional[Callable[[], bool]] = None) -> Droca:
    """
    Learn a one-counter machine consistent with a sample and its counter values.

    Args:
        sample: Positive and negative words
        ce: Counter values, defined on every prefix of the sample
        alphabet: Base alphabet
        partition: When given, learn a Voca: only the sign annotation is applied
            and counter actions come from the letter classes
        verify: Check the learned DFA and the extracted machine against the sample
        should_stop: Forwarded to rpni

    Returns:
        Droca: A possibly partial machine (a Voca when partition is given)

    Raises:
        InputError: missing counter values or foreign letters
        InconsistentSampleError: the sample or its enrichment is inconsistent
        ExtractionError: the learned DFA cannot be turned into a consistent machine
        BudgetExceeded: should_stop fired
    """
    if partition is None:
        hat_sample, enriched = enrich_sample(sample, ce, alphabet)
    else:
        sample.check_alphabet(alphabet)
        values = _restricted(sample, ce)
        hat_sample = SampleSet([encode_word(w, values) for w in sample.positives],
                               [encode_word(w, values) for w in sample.negatives])
        enriched = EnrichedAlphabet(alphabet)

    hat_dfa = rpni(hat_sample, enriched.as_alphabet(), should_stop=should_stop)
    if verify and partition is None:
        _check_similar_acts(hat_dfa, sample, ce, alphabet)

    machine = const_oca(hat_dfa, alphabet, partition)
    if verify and not check_consistency(machine, sample, ce):
        raise ExtractionError("Extracted machine is not consistent with the sample and its counter values")

    logger.debug(f"OPNI: {len(sample)} words -> {machine!r}")
    return machine
