"""
Graphviz export.
"""

from typing import Iterator, Union

from ocalearn.automata.machines import Dfa, Droca


def _gvquote(s: str) -> str:
    return '"{}"'.format(s.replace('"', r'\"'))


def iter_dot(machine: Union[Dfa, Droca], name: str = "automaton") -> Iterator[str]:
    """
    Produce a graphviz document line by line.

    Finals are drawn as double circles and an invisible node points at the initial
    state. DROCA edges are labelled ``a[=0]/+1`` or ``a[>0]/-1``.
    """
    yield f"digraph {_gvquote(name)} {{\n"
    yield "  rankdir=LR;\n"
    yield '  __start [shape=point style=invis];\n'
    for state in sorted(machine.states):
        shape = "doublecircle" if state in machine.finals else "circle"
        yield f"  {_gvquote(f'q{state}')} [shape={shape}];\n"
    yield f"  __start -> {_gvquote(f'q{machine.initial}')};\n"

    if isinstance(machine, Dfa):
        for source, letter, target in machine.transitions():
            yield f"  {_gvquote(f'q{source}')} -> {_gvquote(f'q{target}')} [label={_gvquote(str(letter))}];\n"
    else:
        for source, letter, zero, target, action in machine.transitions():
            label = f"{letter}[{'=0' if zero else '>0'}]/{action}"
            yield f"  {_gvquote(f'q{source}')} -> {_gvquote(f'q{target}')} [label={_gvquote(label)}];\n"
    yield "}\n"


def to_dot(machine: Union[Dfa, Droca], name: str = "automaton") -> str:
    return "".join(iter_dot(machine, name))
