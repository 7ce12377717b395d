"""
RPNI: passive DFA learning by state merging.

The prefix tree acceptor of the positive words is folded, pair by pair in
length-lexicographic order, keeping exactly the merges after which no negative
word is accepted.
"""

import bisect
import logging
from typing import Callable, Dict, Iterator, List, Optional, Sequence, Set, Tuple

from ocalearn.automata.alphabet import Alphabet, Letter, Word, format_word
from ocalearn.automata.machines import Dfa, State
from ocalearn.errors import BudgetExceeded, InconsistentSampleError, OcaLearnError
from ocalearn.samples.order import llex_sorted, prefixes
from ocalearn.samples.sample_set import SampleSet

logger = logging.getLogger(__name__)

MergeCallback = Callable[[Word, Word, int], None]


class PrefixTreeAcceptor:
    """
    Tree-shaped DFA accepting exactly the positive words.

    State ids follow the llex order of the prefixes they stand for, so id 0 is the
    root and ``representative[q]`` is the prefix reaching ``q``.
    """

    def __init__(self, dfa: Dfa, representative: Sequence[Word]):
        self.dfa = dfa
        self.representative: Tuple[Word, ...] = tuple(representative)
        self._node_of: Dict[Word, State] = {word: q for q, word in enumerate(self.representative)}

    def node_of(self, word: Sequence[Letter]) -> Optional[State]:
        return self._node_of.get(tuple(word))

    def __len__(self) -> int:
        return len(self.representative)


def build_pta(positives, alphabet: Alphabet) -> PrefixTreeAcceptor:
    """
    Build the prefix tree acceptor of a set of words.

    Args:
        positives: Positive words (may be empty; the result is then a single
            non-final root)
        alphabet: Alphabet whose order numbers the states

    Returns:
        PrefixTreeAcceptor: The tree
    """
    words = [alphabet.check_word(w) for w in positives]
    nodes = llex_sorted(prefixes(words) | {()}, alphabet)
    node_of = {word: q for q, word in enumerate(nodes)}
    delta = {(node_of[word[:-1]], word[-1]): q for q, word in enumerate(nodes) if word}
    finals = {node_of[word] for word in words}
    return PrefixTreeAcceptor(Dfa(range(len(nodes)), alphabet, delta, 0, finals), nodes)


class MergePlan:
    """
    The ordered pairs (u, v) of PTA prefixes with v strictly llex-smaller than u,
    enumerated lazily in increasing pair order.
    """

    def __init__(self, pta: PrefixTreeAcceptor):
        self.pta = pta

    def __iter__(self) -> Iterator[Tuple[Word, Word]]:
        words = self.pta.representative
        for i, u in enumerate(words):
            for v in words[:i]:
                yield u, v

    def __len__(self) -> int:
        n = len(self.pta)
        return n * (n - 1) // 2


def merge(dfa: Dfa, target: State, survivor: State) -> Dfa:
    """
    Merge ``target`` into ``survivor`` and fold recursively until deterministic.

    Colliding successors are folded the same way, the survivor side keeping its id.
    A merged state is final when either constituent was.

    Args:
        dfa: The automaton (left untouched)
        target: State that disappears
        survivor: State that absorbs it

    Returns:
        Dfa: The folded automaton over the surviving ids
    """
    if target == survivor:
        return dfa

    parent = {q: q for q in dfa.states}
    trans: Dict[State, Dict[Letter, State]] = {q: {} for q in dfa.states}
    for (source, letter), dest in dfa.delta.items():
        trans[source][letter] = dest
    final = {q: q in dfa.finals for q in dfa.states}

    def find(q: State) -> State:
        while parent[q] != q:
            parent[q] = parent[parent[q]]
            q = parent[q]
        return q

    pending = [(survivor, target)]
    while pending:
        keep, gone = pending.pop()
        keep, gone = find(keep), find(gone)
        if keep == gone:
            continue
        parent[gone] = keep
        final[keep] = final[keep] or final[gone]
        for letter, dest in trans[gone].items():
            if letter in trans[keep]:
                pending.append((trans[keep][letter], dest))
            else:
                trans[keep][letter] = dest

    roots = [q for q in dfa.states if find(q) == q]
    delta = {(q, letter): find(dest) for q in roots for letter, dest in trans[q].items()}
    return Dfa(roots, dfa.alphabet, delta, find(dfa.initial), [q for q in roots if final[q]])


def consistent_with(dfa: Dfa, sample: SampleSet) -> bool:
    """True iff every positive word is accepted and every negative word rejected."""
    return (all(dfa.accepts(w) for w in sample.positives)
            and not any(dfa.accepts(w) for w in sample.negatives))


class _NegativeTrie:
    """Prefix tree of the negative words."""

    def __init__(self, words):
        self.children: List[Dict[Letter, int]] = [{}]
        self.is_end: List[bool] = [False]
        for word in words:
            node = 0
            for letter in word:
                child = self.children[node].get(letter)
                if child is None:
                    child = len(self.children)
                    self.children[node][letter] = child
                    self.children.append({})
                    self.is_end.append(False)
                node = child
            self.is_end[node] = True


class _MergeState:
    """
    Partition of the PTA nodes into blocks, with an undo journal.

    Each block root holds its merged transitions, its final flag and the set of
    negative-trie nodes ("hits") whose words lead into the block. A block that is
    final and holds the end of a negative word is a conflict. Roots are always the
    smallest node id of their block.
    """

    def __init__(self, pta: PrefixTreeAcceptor, negatives):
        n = len(pta)
        self.parent = list(range(n))
        self.final = [q in pta.dfa.finals for q in range(n)]
        self.trans: List[Dict[Letter, int]] = [{} for _ in range(n)]
        for (source, letter), dest in pta.dfa.delta.items():
            self.trans[source][letter] = dest
        self.trie = _NegativeTrie(negatives)
        self.hits: List[Set[int]] = [set() for _ in range(n)]
        self.ends = [0] * n
        self.journal: List[tuple] = []
        self.conflict = False
        self._add_hit(0, 0)
        self.journal.clear()
        if self.conflict:
            raise InconsistentSampleError("A negative word is accepted by the prefix tree")

    def find(self, q: int) -> int:
        parent = self.parent
        root = q
        while parent[root] != root:
            root = parent[root]
        while parent[q] != root:
            self.journal.append(("parent", q, parent[q]))
            parent[q], q = root, parent[q]
        return root

    def _add_hit(self, block: int, node: int) -> None:
        stack = [(block, node)]
        children, is_end = self.trie.children, self.trie.is_end
        while stack:
            block, node = stack.pop()
            hits = self.hits[block]
            if node in hits:
                continue
            hits.add(node)
            self.journal.append(("hit", block, node))
            if is_end[node]:
                self.ends[block] += 1
                if self.final[block]:
                    self.conflict = True
                    return
            trans = self.trans[block]
            for letter, child in children[node].items():
                dest = trans.get(letter)
                if dest is not None:
                    stack.append((self.find(dest), child))

    def try_merge(self, keep: int, gone: int) -> bool:
        """Fold ``gone`` into ``keep``; keep the result if no conflict arises, else roll back."""
        self.conflict = False
        mark = len(self.journal)
        pending = [(keep, gone)]
        while pending and not self.conflict:
            a, b = pending.pop()
            a, b = self.find(a), self.find(b)
            if a == b:
                continue
            keep_root, gone_root = (a, b) if a < b else (b, a)
            self._union(keep_root, gone_root, pending)

        if self.conflict:
            self._rollback(mark)
            return False
        self.journal.clear()
        return True

    def _union(self, keep: int, gone: int, pending: List[Tuple[int, int]]) -> None:
        self.parent[gone] = keep
        self.journal.append(("parent", gone, gone))
        if self.final[gone] and not self.final[keep]:
            self.final[keep] = True
            self.journal.append(("final", keep))
            if self.ends[keep]:
                self.conflict = True
                return

        keep_trans = self.trans[keep]
        added: List[Letter] = []
        for letter, dest in self.trans[gone].items():
            if letter in keep_trans:
                pending.append((keep_trans[letter], dest))
            else:
                keep_trans[letter] = dest
                added.append(letter)
                self.journal.append(("trans", keep, letter))

        children = self.trie.children
        if added:
            for node in list(self.hits[keep]):
                for letter in added:
                    child = children[node].get(letter)
                    if child is not None:
                        self._add_hit(self.find(keep_trans[letter]), child)
                        if self.conflict:
                            return

        for node in list(self.hits[gone]):
            self._add_hit(keep, node)
            if self.conflict:
                return

    def _rollback(self, mark: int) -> None:
        journal = self.journal
        is_end = self.trie.is_end
        while len(journal) > mark:
            entry = journal.pop()
            kind = entry[0]
            if kind == "parent":
                self.parent[entry[1]] = entry[2]
            elif kind == "hit":
                self.hits[entry[1]].discard(entry[2])
                if is_end[entry[2]]:
                    self.ends[entry[1]] -= 1
            elif kind == "trans":
                del self.trans[entry[1]][entry[2]]
            elif kind == "final":
                self.final[entry[1]] = False
        self.conflict = False

    def to_dfa(self, alphabet: Alphabet) -> Dfa:
        roots = [q for q in range(len(self.parent)) if self.parent[q] == q]
        number = {q: index for index, q in enumerate(roots)}
        delta = {(number[q], letter): number[self.find(dest)]
                 for q in roots for letter, dest in self.trans[q].items()}
        finals = [number[q] for q in roots if self.final[q]]
        return Dfa(range(len(roots)), alphabet, delta, 0, finals)


def rpni(sample: SampleSet, alphabet: Alphabet, *,
         should_stop: Optional[Callable[[], bool]] = None,
         on_merge: Optional[MergeCallback] = None) -> Dfa:
    """
    Learn a DFA consistent with a sample.

    Pairs (u, v) are visited in increasing llex order. A pair whose blocks
    already coincide is skipped; so is a pair whose u-block is no longer rooted at
    u, and a pair whose v-block is not rooted at v, since the same blocks (or
    finer ones) were already tried under an earlier pair and a coarser quotient
    cannot drop an accepted negative word.

    Args:
        sample: Positive and negative words
        alphabet: Alphabet fixing the llex order
        should_stop: Polled once per prefix; a true result raises BudgetExceeded
        on_merge: Called with (u, v, number of blocks) after every accepted merge

    Returns:
        Dfa: States numbered by the llex order of their smallest prefix; 0 is initial

    Raises:
        InconsistentSampleError: the sample has a word with both signs
        BudgetExceeded: should_stop returned True
    """
    sample.check_alphabet(alphabet)
    if sample.positives & sample.negatives:
        raise InconsistentSampleError("Sample is inconsistent")

    pta = build_pta(sample.positives, alphabet)
    state = _MergeState(pta, sample.negatives)
    roots = list(range(len(pta)))
    words = pta.representative
    merges = 0

    for i in range(1, len(pta)):
        if should_stop is not None and should_stop():
            raise BudgetExceeded(f"RPNI stopped after {merges} merges at prefix {i}/{len(pta)}")
        if state.parent[i] != i:
            continue
        for j in roots[:bisect.bisect_left(roots, i)]:
            if state.try_merge(j, i):
                merges += 1
                roots = [q for q in roots if state.parent[q] == q]
                if on_merge is not None:
                    on_merge(words[i], words[j], len(roots))
                logger.debug(f"Merged {format_word(words[i])} into {format_word(words[j])} "
                             f"({len(roots)} blocks)")
                break

    dfa = state.to_dfa(alphabet)
    if not consistent_with(dfa, sample):
        raise OcaLearnError("RPNI produced an automaton inconsistent with its sample")
    logger.debug(f"RPNI: {len(pta)} prefixes folded into {dfa.num_states} states ({merges} merges)")
    return dfa
