"""Command-line interface.

Exit status is 0 on success, 1 on a semantic or validation failure and 2 on
a parse or usage error.
"""

from __future__ import annotations

import argparse
import sys

from . import __version__
from .conversion import (
    mealy_to_moore_labelled,
    moore_to_mealy_labelled,
    roundtrip_check,
    underlying_graph,
    verify_covering,
)
from .dadic import format_word, parse_epword, parse_word, to_rational
from .errors import AutomataError, ParseError
from .machine_file import load_machine, machine_to_dot, print_machine_file
from .mealy import MealyMachine, apply_ep, apply_finite, minimize_mealy
from .moore import MooreMachine, evaluate_from, minimize_moore
from .vanderput import MAHLER, SCHIKHOF, Coefficients, coefficient_source, portrait_of, render_portrait


class UsageError(Exception):
    pass


def _load(path, kind=None):
    m = load_machine(path)
    if kind == "mealy" and not isinstance(m, MealyMachine):
        raise UsageError(f"{path}: expected a Mealy machine file")
    if kind == "moore" and not isinstance(m, MooreMachine):
        raise UsageError(f"{path}: expected a Moore machine file")
    return m


def _at_state(m, state):
    if state is None:
        return m
    if isinstance(m, MealyMachine):
        return m.with_initial(state)
    m._check_state(state)
    return MooreMachine.trimmed(m.radix, m.states, m.transitions, m.outputs, state)


def _emit(out, machine, dot):
    out.write(machine_to_dot(machine) if dot else print_machine_file(machine))


def cmd_vdp(args, out):
    m = _at_state(_load(args.file, "mealy"), args.state)
    coeffs = Coefficients(m, variant=SCHIKHOF if args.schikhof else MAHLER)
    for n in range(args.count):
        b = coeffs(n)
        out.write(f"{n}\t{b.literal}\t{to_rational(b)}\n")
    return 0


def cmd_seq(args, out):
    m = _load(args.file)
    if isinstance(m, MealyMachine):
        src = coefficient_source(m, args.state, SCHIKHOF if args.schikhof else MAHLER)
    else:
        src = coefficient_source(m, args.state)
    values = [src(n) for n in range(args.count)]
    if args.literal:
        out.write(" ".join(v.literal for v in values) + "\n")
    else:
        out.write(" ".join(str(to_rational(v)) for v in values) + "\n")
    return 0


def cmd_eval(args, out):
    m = _load(args.file, args.kind)
    if args.kind == "mealy":
        q = args.state or m.initial
        if "(" in args.input:
            image = apply_ep(m, q, parse_epword(args.input, m.radix))
            text = image.literal
            if args.rational:
                text += f"\t{to_rational(image)}"
        else:
            text = format_word(apply_finite(m, q, parse_word(args.input, m.radix)))
        out.write(text + "\n")
    else:
        q = args.state or m.initial
        try:
            n = int(args.input)
        except ValueError:
            raise UsageError(f"expected a nonnegative integer, got {args.input!r}") from None
        if n < 0:
            raise UsageError("n must be nonnegative")
        value = evaluate_from(m, q, n)
        text = value.literal
        if args.rational:
            text += f"\t{to_rational(value)}"
        out.write(text + "\n")
    return 0


def cmd_convert(args, out):
    if args.direction == "mealy-to-moore":
        m = _at_state(_load(args.file, "mealy"), args.state)
        result = mealy_to_moore_labelled(m).machine
        if args.minimize:
            result = minimize_moore(result)
    else:
        b = _at_state(_load(args.file, "moore"), args.state)
        result = moore_to_mealy_labelled(b).machine
        if args.minimize:
            result = minimize_mealy(result)
    _emit(out, result, args.dot)
    return 0


def cmd_portrait(args, out):
    m = _at_state(_load(args.file), args.state)
    if isinstance(m, MealyMachine):
        src = coefficient_source(m, None, SCHIKHOF if args.schikhof else MAHLER)
    else:
        src = coefficient_source(m)
    p = portrait_of(src, args.depth, m.radix)
    out.write(render_portrait(p, "dot" if args.dot else "text"))
    return 0


def cmd_minimize(args, out):
    m = _load(args.file)
    result = minimize_mealy(m) if isinstance(m, MealyMachine) else minimize_moore(m)
    _emit(out, result, args.dot)
    return 0


def cmd_check(args, out):
    m = _at_state(_load(args.file), args.state)
    if args.what == "roundtrip":
        if not isinstance(m, MealyMachine):
            raise UsageError("check roundtrip expects a Mealy machine file")
        ok = roundtrip_check(m)
        out.write(f"roundtrip: {'ok' if ok else 'FAILED'}\n")
        return 0 if ok else 1
    if isinstance(m, MealyMachine):
        conv = mealy_to_moore_labelled(m)
    else:
        conv = moore_to_mealy_labelled(m)
    if args.dot:
        out.write(underlying_graph(conv.machine).to_dot("big"))
        out.write(underlying_graph(m).to_dot("small"))
    for big, small in conv.projection.items():
        out.write(f"{big} -> {small}\n")
    ok = verify_covering(underlying_graph(conv.machine), underlying_graph(m), conv.projection)
    out.write(f"covering: {'ok' if ok else 'FAILED'}\n")
    return 0 if ok else 1


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="lipschitz-automata",
        description="Mealy machines of 1-Lipschitz d-adic maps and Moore machines "
        "of their reduced van der Put coefficients.",
    )
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, state=True):
        sp.add_argument("file", help="machine file")
        if state:
            sp.add_argument("--state", help="use this state as the initial state")

    sp = sub.add_parser("vdp", help="reduced van der Put coefficients of a Mealy state")
    common(sp)
    sp.add_argument("--count", type=int, default=16)
    sp.add_argument("--schikhof", action="store_true", help="use the Schikhof variant")
    sp.set_defaults(func=cmd_vdp)

    sp = sub.add_parser("seq", help="prefix of the sequence generated by a machine")
    common(sp)
    sp.add_argument("--count", type=int, default=32)
    sp.add_argument("--literal", action="store_true", help="print u(v) literals instead of rationals")
    sp.add_argument("--schikhof", action="store_true")
    sp.set_defaults(func=cmd_seq)

    sp = sub.add_parser("eval", help="apply a Mealy state or evaluate a Moore machine")
    sp.add_argument("kind", choices=["mealy", "moore"])
    common(sp)
    sp.add_argument("input", help="digit word or u(v) literal (mealy), integer n (moore)")
    sp.add_argument("--rational", action="store_true")
    sp.set_defaults(func=cmd_eval)

    sp = sub.add_parser("convert", help="run one of the two conversion algorithms")
    sp.add_argument("direction", choices=["mealy-to-moore", "moore-to-mealy"])
    common(sp)
    sp.add_argument("--minimize", action="store_true")
    sp.add_argument("--dot", action="store_true")
    sp.set_defaults(func=cmd_convert)

    sp = sub.add_parser("portrait", help="labelled tree of the coefficient sequence")
    common(sp)
    sp.add_argument("--depth", type=int, default=3)
    sp.add_argument("--dot", action="store_true")
    sp.add_argument("--schikhof", action="store_true")
    sp.set_defaults(func=cmd_portrait)

    sp = sub.add_parser("minimize", help="minimize a machine")
    common(sp, state=False)
    sp.add_argument("--dot", action="store_true")
    sp.set_defaults(func=cmd_minimize)

    sp = sub.add_parser("check", help="verify a covering or a round trip")
    sp.add_argument("what", choices=["cover", "roundtrip"])
    common(sp)
    sp.add_argument("--dot", action="store_true")
    sp.set_defaults(func=cmd_check)
    return p


def run_cli(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if getattr(args, "count", 0) is not None and getattr(args, "count", 0) < 0:
        err.write("error: --count must be nonnegative\n")
        return 2
    if getattr(args, "depth", 1) < 1:
        err.write("error: --depth must be at least 1\n")
        return 2
    try:
        return args.func(args, out)
    except (ParseError, UsageError) as exc:
        err.write(f"error: {exc}\n")
        return 2
    except OSError as exc:
        err.write(f"error: {exc}\n")
        return 2
    except AutomataError as exc:
        err.write(f"error: {exc}\n")
        return 1


def main():
    sys.exit(run_cli())


if __name__ == "__main__":
    main()
