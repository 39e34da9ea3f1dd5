"""Line-oriented text format for Mealy and Moore machines, plus DOT output.

Mealy files::

    mealy d=2 start=p
    p: 0 -> p / 1 ; 1 -> q / 0
    q = (p, q)                 # wreath sugar is accepted too

Moore files::

    moore d=2 start=a
    a [out=(0)]: 0 -> a ; 1 -> b
    b [out=1(0)]: 0 -> b ; 1 -> a

``#`` starts a comment.  Digits beyond 9 are written ``a`` to ``z``.
"""

from __future__ import annotations

import re
import warnings

from .dadic import DIGITS, parse_epword
from .errors import MachineError, ParseError
from .mealy import MealyMachine
from .moore import MooreMachine, zero_stability_witness

__all__ = [
    "ZeroStabilityWarning",
    "parse_machine_file",
    "print_machine_file",
    "mealy_to_dot",
    "moore_to_dot",
    "machine_to_dot",
    "load_machine",
]


class ZeroStabilityWarning(UserWarning):
    pass


_HEADER_RE = re.compile(r"^(mealy|moore)\s+(.*)$")
_NAME = r"[A-Za-z_][A-Za-z0-9_']*"
_MEALY_LINE_RE = re.compile(rf"^({_NAME})\s*:(.*)$")
_MEALY_ENTRY_RE = re.compile(rf"^([0-9a-zA-Z])\s*->\s*({_NAME})\s*/\s*([0-9a-zA-Z])$")
_WREATH_RE = re.compile(rf"^({_NAME})\s*=\s*\(([^()]*)\)\s*(?:\[([^\[\]]*)\])?$")
_MOORE_LINE_RE = re.compile(rf"^({_NAME})\s*\[\s*out\s*=\s*([^\]]*)\]\s*:(.*)$")
_MOORE_ENTRY_RE = re.compile(rf"^([0-9a-zA-Z])\s*->\s*({_NAME})$")


def _digit(ch, d, lineno, col):
    k = DIGITS.find(ch.lower())
    if k < 0 or k >= d:
        raise ParseError(f"digit {ch!r} out of range for radix {d}", lineno, col)
    return k


def _parse_header(line, lineno):
    m = _HEADER_RE.match(line)
    if not m:
        raise ParseError("expected header 'mealy d=<int> start=<name>' or 'moore ...'", lineno, 1)
    kind = m.group(1)
    fields = {}
    for tok in m.group(2).split():
        key, eq, value = tok.partition("=")
        if not eq or key not in ("d", "start"):
            raise ParseError(f"unexpected header field {tok!r}", lineno, line.find(tok) + 1)
        fields[key] = value
    if "d" not in fields or "start" not in fields:
        raise ParseError("header needs both d=<int> and start=<name>", lineno, 1)
    try:
        d = int(fields["d"])
    except ValueError:
        raise ParseError(f"radix {fields['d']!r} is not an integer", lineno, 1) from None
    if not 2 <= d <= len(DIGITS):
        raise ParseError(f"radix {d} out of range [2, {len(DIGITS)}]", lineno, 1)
    return kind, d, fields["start"]


def _entries(body, line, lineno):
    offset = line.find(body)
    col = offset + 1
    for part in body.split(";"):
        text = part.strip()
        if text:
            yield text, col + len(part) - len(part.lstrip())
        col += len(part) + 1


def _set_row(rows, name, x, value, what, lineno, col):
    row = rows.setdefault(name, {})
    if x in row:
        raise ParseError(f"state {name!r} defines {what} for digit {x} twice", lineno, col)
    row[x] = value


def _finish_rows(names, rows, d, what):
    out = {}
    for q in names:
        row = rows.get(q, {})
        for x in range(d):
            if x not in row:
                raise MachineError(f"state {q!r} is missing the {what} for digit {DIGITS[x]}")
        out[q] = tuple(row[x] for x in range(d))
    return out


def _check_targets(names, trans):
    known = set(names)
    for q in names:
        for x, t in enumerate(trans[q]):
            if t not in known:
                raise MachineError(f"state {q!r} on digit {DIGITS[x]} goes to undefined state {t!r}")


def parse_machine_file(text: str):
    """Parse a machine file into a :class:`MealyMachine` or :class:`MooreMachine`."""
    lines = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].rstrip()
        if line.strip():
            lines.append((lineno, line))
    if not lines:
        raise ParseError("empty machine file")
    lineno, header = lines[0]
    kind, d, start = _parse_header(header.strip(), lineno)
    names = []
    trans = {}
    outs = {}
    moore_out = {}
    for lineno, line in lines[1:]:
        stripped = line.strip()
        indent = len(line) - len(line.lstrip())
        if kind == "mealy":
            w = _WREATH_RE.match(stripped)
            m = _MEALY_LINE_RE.match(stripped)
            if w:
                name = w.group(1)
                if name in names:
                    raise ParseError(f"state {name!r} defined twice", lineno, indent + 1)
                names.append(name)
                secs = [s.strip() for s in w.group(2).split(",")]
                if len(secs) != d:
                    raise ParseError(f"state {name!r} lists {len(secs)} sections, expected {d}",
                                     lineno, indent + 1)
                image = w.group(3)
                if image is None or not image.strip():
                    imgs = list(range(d))
                else:
                    imgs = []
                    for s in image.split(","):
                        s = s.strip()
                        if len(s) != 1:
                            raise ParseError(f"bad map entry {s!r}", lineno, indent + 1)
                        imgs.append(_digit(s, d, lineno, indent + 1))
                    if len(imgs) != d:
                        raise ParseError(f"first-level map of {name!r} needs {d} entries",
                                         lineno, indent + 1)
                for x in range(d):
                    _set_row(trans, name, x, secs[x], "a transition", lineno, indent + 1)
                    _set_row(outs, name, x, imgs[x], "an output", lineno, indent + 1)
            elif m:
                name = m.group(1)
                if name in names:
                    raise ParseError(f"state {name!r} defined twice", lineno, indent + 1)
                names.append(name)
                for entry, col in _entries(m.group(2), line, lineno):
                    e = _MEALY_ENTRY_RE.match(entry)
                    if not e:
                        raise ParseError(f"expected '<digit> -> <state> / <digit>', got {entry!r}",
                                         lineno, col)
                    x = _digit(e.group(1), d, lineno, col)
                    _set_row(trans, name, x, e.group(2), "a transition", lineno, col)
                    _set_row(outs, name, x, _digit(e.group(3), d, lineno, col),
                             "an output", lineno, col)
            else:
                raise ParseError("expected a state line 'name: x -> state / y ; ...' "
                                 "or 'name = (s0, ...) [...]'", lineno, indent + 1)
        else:
            m = _MOORE_LINE_RE.match(stripped)
            if not m:
                raise ParseError("expected a state line 'name [out=u(v)]: x -> state ; ...'",
                                 lineno, indent + 1)
            name = m.group(1)
            if name in names:
                raise ParseError(f"state {name!r} defined twice", lineno, indent + 1)
            names.append(name)
            try:
                moore_out[name] = parse_epword(m.group(2), d)
            except ParseError as exc:
                raise ParseError(str(exc), lineno, line.find(m.group(2)) + 1) from None
            for entry, col in _entries(m.group(3), line, lineno):
                e = _MOORE_ENTRY_RE.match(entry)
                if not e:
                    raise ParseError(f"expected '<digit> -> <state>', got {entry!r}", lineno, col)
                x = _digit(e.group(1), d, lineno, col)
                _set_row(trans, name, x, e.group(2), "a transition", lineno, col)
    if not names:
        raise ParseError("no states defined")
    if start not in names:
        raise MachineError(f"start state {start!r} is not defined")
    transitions = _finish_rows(names, trans, d, "transition")
    _check_targets(names, transitions)
    if kind == "mealy":
        return MealyMachine(d, tuple(names), transitions, _finish_rows(names, outs, d, "output"), start)
    machine = MooreMachine(d, tuple(names), transitions, moore_out, start)
    witness = zero_stability_witness(machine)
    if witness is not None:
        q, k = witness
        warnings.warn(f"Moore machine is not zero-stable: state {q!r} changes output after 0^{k}",
                      ZeroStabilityWarning, stacklevel=2)
    return machine


def print_machine_file(machine) -> str:
    d = machine.radix
    if isinstance(machine, MealyMachine):
        lines = [f"mealy d={d} start={machine.initial}"]
        for q in machine.states:
            entries = " ; ".join(
                f"{DIGITS[x]} -> {machine.transitions[q][x]} / {DIGITS[machine.outputs[q][x]]}"
                for x in range(d)
            )
            lines.append(f"{q}: {entries}")
    elif isinstance(machine, MooreMachine):
        lines = [f"moore d={d} start={machine.initial}"]
        for q in machine.states:
            entries = " ; ".join(f"{DIGITS[x]} -> {machine.transitions[q][x]}" for x in range(d))
            lines.append(f"{q} [out={machine.outputs[q].literal}]: {entries}")
    else:
        raise TypeError(f"not a machine: {machine!r}")
    return "\n".join(lines) + "\n"


def mealy_to_dot(m: MealyMachine, name: str = "mealy") -> str:
    lines = [f"digraph {name} {{", "  rankdir=LR;", '  "" [shape=none];',
             f'  "" -> "{m.initial}";']
    for q in m.states:
        lines.append(f'  "{q}" [shape=circle, label="{q}"];')
    for q in m.states:
        for x in range(m.radix):
            lines.append(
                f'  "{q}" -> "{m.transitions[q][x]}" [label="{DIGITS[x]}|{DIGITS[m.outputs[q][x]]}"];'
            )
    lines.append("}")
    return "\n".join(lines) + "\n"


def moore_to_dot(m: MooreMachine, name: str = "moore") -> str:
    lines = [f"digraph {name} {{", "  rankdir=LR;", '  "" [shape=none];',
             f'  "" -> "{m.initial}";']
    for q in m.states:
        lines.append(f'  "{q}" [shape=box, label="{q}\\n{m.outputs[q].literal}"];')
    for q in m.states:
        for x in range(m.radix):
            lines.append(f'  "{q}" -> "{m.transitions[q][x]}" [label="{DIGITS[x]}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def machine_to_dot(machine) -> str:
    if isinstance(machine, MealyMachine):
        return mealy_to_dot(machine)
    if isinstance(machine, MooreMachine):
        return moore_to_dot(machine)
    raise TypeError(f"not a machine: {machine!r}")


def load_machine(path: str):
    with open(path, encoding="utf-8") as fh:
        return parse_machine_file(fh.read())
