#!/usr/bin/env python3
"""
ocalearn - command-line entry point.

Subcommands generate random machines, learn from sample files or from a
simulated teacher, compare machines, export DOT, trace runs, run benchmark
sweeps or print the effective configuration. Exit codes: 0 success,
1 inequivalent machines, 2 bad input or failed generation, 3 learning timeout.
"""

import argparse
import logging
import sys
from typing import List, Optional, Sequence

from ocalearn import __version__
from ocalearn.automata.alphabet import Alphabet, format_word, parse_word
from ocalearn.automata.dot import to_dot
from ocalearn.automata.machines import Droca, Voca
from ocalearn.automata.serialization import encode_automaton, load_automaton, save_automaton
from ocalearn.active.learner import LearnLimits, learn_droca, learn_voca
from ocalearn.active.teacher import (EquivalenceVerdict, Teacher, TeacherLimits, brute_force_equiv,
                                     synchronous_product_search)
from ocalearn.bench.harness import KINDS, BenchSettings, run_bench, summary_path
from ocalearn.bench.randgen import GenConfig, random_droca, random_voca
from ocalearn.errors import GenerationError, InputError, LearningTimeout, OcaLearnError
from ocalearn.passive.opni import check_consistency, opni
from ocalearn.samples.sample_set import read_counter_map, read_samples
from ocalearn.utils.config_manager import ConfigManager
from ocalearn.utils.logging import get_default_log_file, log_exception, setup_logging

EXIT_OK = 0
EXIT_INEQUIVALENT = 1
EXIT_INPUT = 2
EXIT_TIMEOUT = 3

logger = logging.getLogger(__name__)


def parse_range(text: str) -> List[int]:
    """Parse ``4``, ``2-8`` or ``2,4,6`` into a list of integers."""
    values: List[int] = []
    try:
        for part in text.split(","):
            part = part.strip()
            if "-" in part:
                low, high = (int(v) for v in part.split("-", 1))
                if low > high:
                    raise InputError(f"Empty range {part!r}")
                values.extend(range(low, high + 1))
            elif part:
                values.append(int(part))
    except ValueError:
        raise InputError(f"Malformed range {text!r}") from None
    if not values:
        raise InputError(f"Malformed range {text!r}")
    return values


def _write_or_print(text: str, out: Optional[str]) -> None:
    if out:
        with open(out, 'w', encoding='utf-8') as f:
            f.write(text)
        logger.info(f"Wrote {out}")
    else:
        sys.stdout.write(text)


def _load_droca(path: str) -> Droca:
    machine = load_automaton(path)
    if not isinstance(machine, Droca):
        raise InputError(f"{path} holds a {machine.kind}, expected a droca or voca")
    return machine


def _teacher_limits(config: ConfigManager, max_len: Optional[int] = None) -> TeacherLimits:
    return TeacherLimits(
        max_cex_len=max_len if max_len is not None else config.get("teacher", "max_cex_len"),
        max_configurations=config.get("teacher", "max_configurations"),
        counter_cutoff=config.get("teacher", "counter_cutoff"),
    )


def cmd_generate(args: argparse.Namespace, config: ConfigManager) -> int:
    gen = GenConfig(args.n_states, args.alphabet_size, args.seed,
                    config.get("generation", "max_restarts"),
                    config.get("generation", "reach_cutoff"))
    machine = random_droca(gen) if args.kind == "droca" else random_voca(gen)
    _write_or_print(encode_automaton(machine), args.out)
    return EXIT_OK


def cmd_learn_passive(args: argparse.Namespace, config: ConfigManager) -> int:
    if args.alphabet:
        alphabet: Optional[Alphabet] = Alphabet(args.alphabet.split())
    else:
        alphabet = None
    sample = read_samples(args.samples, alphabet)
    ce = read_counter_map(args.counters, alphabet)
    if alphabet is None:
        letters = sample.letters() | {letter for word in ce for letter in word}
        if not letters:
            raise InputError("Cannot infer an alphabet from empty sample files; pass --alphabet")
        alphabet = Alphabet(sorted(letters))

    machine = opni(sample, ce, alphabet, verify=config.get("learning", "verify_lemmas"))
    consistent = check_consistency(machine, sample, ce)
    _write_or_print(encode_automaton(machine), args.out)
    print(f"consistent {'true' if consistent else 'false'}")
    print(f"states {machine.num_states}")
    return EXIT_OK


def cmd_learn_active(args: argparse.Namespace, config: ConfigManager) -> int:
    target = _load_droca(args.target)
    if args.kind == "voca" and not isinstance(target, Voca):
        raise InputError(f"{args.target} is not a voca; use --kind droca")
    teacher = Teacher(target, _teacher_limits(config))
    limits = LearnLimits(
        max_rounds=args.max_rounds if args.max_rounds is not None else config.get("learning", "max_rounds"),
        timeout_s=args.timeout_s if args.timeout_s is not None else config.get("learning", "timeout_s"),
        verify=config.get("learning", "verify_lemmas"),
    )
    learn = learn_voca if args.kind == "voca" else learn_droca

    try:
        hypothesis, report = learn(teacher, limits)
    except LearningTimeout as e:
        if e.report is not None:
            _print_report(e.report.to_dict())
        if e.hypothesis is not None and args.out:
            save_automaton(e.hypothesis, args.out)
        raise

    _write_or_print(encode_automaton(hypothesis), args.out)
    _print_report(report.to_dict())
    return EXIT_OK


def _print_report(fields: dict) -> None:
    for key, value in fields.items():
        if isinstance(value, bool):
            value = "true" if value else "false"
        print(f"{key} {value}")


def cmd_check_equiv(args: argparse.Namespace, config: ConfigManager) -> int:
    a, b = _load_droca(args.a), _load_droca(args.b)
    limits = _teacher_limits(config, args.max_len)
    found, closed = synchronous_product_search(
        a, b, limits.cutoff_for(a, b), limits.max_cex_len, limits.max_configurations)
    if found is None and args.brute_len > 0:
        found = brute_force_equiv(a, b, args.brute_len)
        if found is not None:
            logger.warning(f"Enumeration found a mismatch at {format_word(found[0])} "
                           f"beyond the product search bounds")

    if found is not None:
        verdict = EquivalenceVerdict.counterexample(*found)
    elif closed:
        verdict = EquivalenceVerdict.equivalent()
    else:
        verdict = EquivalenceVerdict.presumed(f"length {limits.max_cex_len}")
    print(verdict)
    return EXIT_INEQUIVALENT if verdict.is_counterexample else EXIT_OK


def cmd_bench(args: argparse.Namespace, config: ConfigManager) -> int:
    settings = BenchSettings(
        kind=args.kind,
        timeout_s=args.timeout_s if args.timeout_s is not None else config.get("learning", "timeout_s"),
        max_rounds=config.get("learning", "max_rounds"),
        verify_len=args.verify_len if args.verify_len is not None else config.get("bench", "verify_len"),
        max_restarts=config.get("generation", "max_restarts"),
        reach_cutoff=config.get("generation", "reach_cutoff"),
        teacher_limits=_teacher_limits(config),
        verify_lemmas=config.get("learning", "verify_lemmas"),
    )
    if args.per_cell < 0:
        raise InputError("--per-cell must not be negative")
    workers = args.threads if args.threads is not None else config.threads
    records = run_bench(settings, parse_range(args.states), parse_range(args.alphabets),
                        args.per_cell, args.seed, args.out, workers)
    successes = sum(1 for r in records if r.success)
    print(f"{successes}/{len(records)} learned; records {args.out}; summary {summary_path(args.out)}")
    return EXIT_OK


def cmd_dot(args: argparse.Namespace, config: ConfigManager) -> int:
    _write_or_print(to_dot(load_automaton(args.path)), args.out)
    return EXIT_OK


def cmd_config(args: argparse.Namespace, config: ConfigManager) -> int:
    if args.out:
        config.export_config(args.out)
        logger.info(f"Wrote {args.out}")
    else:
        sys.stdout.write(config.dump())
    return EXIT_OK


def cmd_run(args: argparse.Namespace, config: ConfigManager) -> int:
    machine = _load_droca(args.path)
    word = parse_word(args.word, machine.alphabet)
    steps = machine.trace(word)
    for letter, configuration in steps:
        label = "start" if letter is None else str(letter)
        print(f"{label}\t{configuration.state}\t{configuration.counter}")
    if len(steps) <= len(word):
        print(f"stuck after {format_word(word[:len(steps) - 1])}")
    accepted = machine.accepts(word)
    print("accept" if accepted else "reject")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    """Build the argument parser with one subparser per command."""
    parser = argparse.ArgumentParser(
        prog="ocalearn",
        description="ocalearn - passive and active learning of one-counter automata")
    parser.add_argument("--debug", action="store_true", help="Enable debug logging on the console")
    parser.add_argument("--config", default=None, help="YAML configuration file")
    parser.add_argument("--log-file", default=None,
                        help="Also log to this file ('default' for the per-user log directory)")
    parser.add_argument("--version", action="version", version=f"ocalearn {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("generate", help="Generate a random complete machine")
    p.add_argument("kind", choices=KINDS)
    p.add_argument("n_states", type=int)
    p.add_argument("alphabet_size", type=int)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", default=None, help="Output file (default: stdout)")
    p.set_defaults(handler=cmd_generate)

    p = sub.add_parser("learn-passive", help="Learn a droca from a sample and counter file")
    p.add_argument("samples", help="File of '+/-<TAB>word' lines")
    p.add_argument("counters", help="File of 'word<TAB>value' lines")
    p.add_argument("--alphabet", default=None, help="Space-separated letters in order, e.g. 'a b'")
    p.add_argument("--out", default=None)
    p.set_defaults(handler=cmd_learn_passive)

    p = sub.add_parser("learn-active", help="Learn a target machine through queries")
    p.add_argument("target")
    p.add_argument("--kind", choices=KINDS, default="droca")
    p.add_argument("--timeout-s", type=float, default=None)
    p.add_argument("--max-rounds", type=int, default=None)
    p.add_argument("--out", default=None)
    p.set_defaults(handler=cmd_learn_active)

    p = sub.add_parser("check", help="Compare two machines")
    p.add_argument("a")
    p.add_argument("b")
    p.add_argument("--max-len", type=int, default=None)
    p.add_argument("--brute-len", type=int, default=0,
                   help="Also compare every word up to this length")
    p.set_defaults(handler=cmd_check_equiv)

    p = sub.add_parser("bench", help="Run a benchmark sweep and write CSV")
    p.add_argument("--kind", choices=KINDS, default="droca")
    p.add_argument("--states", default="2-8", help="State counts, e.g. '2-8' or '4,6,8'")
    p.add_argument("--alphabets", default="2-3", help="Alphabet sizes")
    p.add_argument("--per-cell", type=int, default=5)
    p.add_argument("--timeout-s", type=float, default=None)
    p.add_argument("--seed", type=int, default=1)
    p.add_argument("--out", default="bench.csv")
    p.add_argument("--verify-len", type=int, default=None)
    p.add_argument("--threads", type=int, default=None)
    p.set_defaults(handler=cmd_bench)

    p = sub.add_parser("dot", help="Export a machine as Graphviz DOT")
    p.add_argument("path")
    p.add_argument("--out", default=None)
    p.set_defaults(handler=cmd_dot)

    p = sub.add_parser("config", help="Print the effective configuration as YAML")
    p.add_argument("--out", default=None, help="Write to this file instead of stdout")
    p.set_defaults(handler=cmd_config)

    p = sub.add_parser("run", help="Trace the run of a machine on a word")
    p.add_argument("path")
    p.add_argument("word", help="Word, or @eps for the empty word")
    p.set_defaults(handler=cmd_run)

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    """Main entry point for the command line."""
    args = build_parser().parse_args(argv)

    log_file = get_default_log_file() if args.log_file == "default" else args.log_file
    setup_logging(log_file, console_level="DEBUG" if args.debug else "WARNING")
    logger.debug(f"ocalearn {__version__}, command {args.command}")

    try:
        config = ConfigManager(args.config)
        return args.handler(args, config)
    except LearningTimeout as e:
        log_exception(logger, e, "Learning stopped before an equivalent hypothesis was found")
        return EXIT_TIMEOUT
    except (InputError, GenerationError) as e:
        log_exception(logger, e, f"{args.command} failed")
        return EXIT_INPUT
    except OcaLearnError as e:
        log_exception(logger, e, f"{args.command} failed", with_traceback=True)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
