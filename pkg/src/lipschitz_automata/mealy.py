"""Mealy automata acting on the rooted d-ary tree.

A state ``q`` of a :class:`MealyMachine` is a tree endomorphism, which is the
same thing as a 1-Lipschitz map Z_d -> Z_d.  Machines are written either
as transition tables or in wreath-recursion notation::

    p = (p, q) [1, 0]
    q = (p, q)

where the tuple lists the sections at the letters ``0, ..., d-1`` and the
bracket lists the images ``[s(0), ..., s(d-1)]`` of the first-level map
(omitted when it is the identity).
"""

from __future__ import annotations

import re
from collections import deque
from dataclasses import dataclass
from typing import Mapping, Sequence

from .dadic import EPWord, _check_digits, _check_radix
from .errors import MachineError, ParseError

__all__ = [
    "MealyMachine",
    "parse_wreath",
    "print_wreath",
    "apply_finite",
    "apply_ep",
    "section_at",
    "is_invertible",
    "minimize_mealy",
    "mealy_isomorphic",
    "reachable_states",
]

_NAME = r"[A-Za-z_][A-Za-z0-9_']*"
_NAME_RE = re.compile(rf"^{_NAME}$")


def reachable_states(initial, transitions, radix):
    """States reachable from ``initial`` in BFS order (digits ascending)."""
    order = [initial]
    seen = {initial}
    queue = deque([initial])
    while queue:
        q = queue.popleft()
        for x in range(radix):
            t = transitions[q][x]
            if t not in seen:
                seen.add(t)
                order.append(t)
                queue.append(t)
    return order


@dataclass(frozen=True, eq=True)
class MealyMachine:
    """Initial Mealy automaton over the alphabet ``{0, ..., radix-1}``.

    ``transitions[q][x]`` is the target state and ``outputs[q][x]`` the
    emitted digit when reading ``x`` in state ``q``.  Every state must be
    reachable from ``initial``.
    """

    radix: int
    states: tuple
    transitions: Mapping[str, tuple]
    outputs: Mapping[str, tuple]
    initial: str

    def __post_init__(self):
        _check_radix(self.radix)
        d = self.radix
        states = tuple(self.states)
        if len(set(states)) != len(states):
            raise MachineError("duplicate state names")
        if self.initial not in states:
            raise MachineError(f"initial state {self.initial!r} is not a state")
        transitions = {}
        outputs = {}
        for q in states:
            row = tuple(self.transitions.get(q, ()))
            out = tuple(self.outputs.get(q, ()))
            for x in range(d):
                if x >= len(row):
                    raise MachineError(f"state {q!r} has no transition on digit {x}")
                if x >= len(out):
                    raise MachineError(f"state {q!r} has no output on digit {x}")
            if len(row) != d or len(out) != d:
                raise MachineError(f"state {q!r} has more than {d} entries")
            for x, t in enumerate(row):
                if t not in states:
                    raise MachineError(f"state {q!r} on digit {x} goes to undefined state {t!r}")
            try:
                _check_digits(d, out)
            except ValueError as exc:
                raise MachineError(f"state {q!r}: {exc}") from None
            transitions[q] = row
            outputs[q] = out
        extra = set(self.transitions) - set(states)
        if extra:
            raise MachineError(f"transitions given for unknown states {sorted(extra)}")
        object.__setattr__(self, "states", states)
        object.__setattr__(self, "transitions", transitions)
        object.__setattr__(self, "outputs", outputs)
        reach = set(reachable_states(self.initial, transitions, d))
        missing = [q for q in states if q not in reach]
        if missing:
            raise MachineError(f"states unreachable from {self.initial!r}: {', '.join(missing)}")

    def delta(self, q: str, x: int) -> str:
        return self.transitions[q][x]

    def output(self, q: str, x: int) -> int:
        return self.outputs[q][x]

    def _check_state(self, q):
        if q not in self.transitions:
            raise MachineError(f"unknown state {q!r}")

    def with_initial(self, q: str) -> "MealyMachine":
        """The initial automaton at ``q``, keeping only states reachable from it."""
        self._check_state(q)
        keep = reachable_states(q, self.transitions, self.radix)
        return MealyMachine(
            self.radix,
            tuple(keep),
            {s: self.transitions[s] for s in keep},
            {s: self.outputs[s] for s in keep},
            q,
        )

    @classmethod
    def trimmed(cls, radix, states, transitions, outputs, initial) -> "MealyMachine":
        """Build a machine, silently dropping states unreachable from ``initial``."""
        keep = reachable_states(initial, {q: tuple(transitions[q]) for q in states}, radix)
        return cls(radix, tuple(keep), {q: transitions[q] for q in keep},
                   {q: outputs[q] for q in keep}, initial)


# -- wreath recursion text ---------------------------------------------------

_WREATH_RE = re.compile(
    rf"^\s*({_NAME})\s*=\s*\(([^()]*)\)\s*(?:\[([^\[\]]*)\])?\s*$"
)


def _split_statements(text):
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0]
        for part in line.split(";"):
            if part.strip():
                yield lineno, part


def parse_wreath(text: str, radix: int | None = None, initial: str | None = None) -> MealyMachine:
    """Parse wreath-recursion statements separated by newlines or ``;``.

    The radix is the number of sections unless given explicitly; the initial
    state defaults to the first state defined.
    """
    defs = {}
    order = []
    for lineno, part in _split_statements(text):
        m = _WREATH_RE.match(part)
        if not m:
            raise ParseError(f"cannot parse wreath statement {part.strip()!r}", line=lineno)
        name, sections, image = m.group(1), m.group(2), m.group(3)
        if name in defs:
            raise ParseError(f"state {name!r} defined twice", line=lineno)
        secs = tuple(s.strip() for s in sections.split(","))
        if radix is None:
            radix = len(secs)
        if len(secs) != radix:
            raise ParseError(f"state {name!r} has {len(secs)} sections, expected {radix}", line=lineno)
        for s in secs:
            if not _NAME_RE.match(s):
                raise ParseError(f"bad state name {s!r}", line=lineno)
        if image is None or not image.strip():
            imgs = tuple(range(radix))
        else:
            try:
                imgs = tuple(int(s.strip(), 36) for s in image.split(","))
            except ValueError:
                raise ParseError(f"bad first-level map [{image}]", line=lineno) from None
            if len(imgs) != radix or any(not 0 <= y < radix for y in imgs):
                raise ParseError(f"first-level map [{image}] out of range for radix {radix}",
                                 line=lineno)
        defs[name] = (secs, imgs, lineno)
        order.append(name)
    if not order:
        raise ParseError("no states defined")
    for name, (secs, _, lineno) in defs.items():
        for s in secs:
            if s not in defs:
                raise ParseError(f"state {name!r} refers to undefined state {s!r}", line=lineno)
    return MealyMachine(
        radix,
        tuple(order),
        {q: defs[q][0] for q in order},
        {q: defs[q][1] for q in order},
        initial if initial is not None else order[0],
    )


def print_wreath(m: MealyMachine) -> str:
    lines = []
    ident = tuple(range(m.radix))
    for q in m.states:
        text = f"{q} = ({', '.join(m.transitions[q])})"
        if m.outputs[q] != ident:
            text += " [" + ", ".join(str(y) for y in m.outputs[q]) + "]"
        lines.append(text)
    return "\n".join(lines) + "\n"


# -- evaluation --------------------------------------------------------------

def apply_finite(m: MealyMachine, q: str, word: Sequence[int]) -> tuple:
    """Image of the finite word ``word`` under the state ``q``."""
    m._check_state(q)
    _check_digits(m.radix, word)
    out = []
    for x in word:
        out.append(m.outputs[q][x])
        q = m.transitions[q][x]
    return tuple(out)


def section_at(m: MealyMachine, q: str, word: Sequence[int]) -> str:
    m._check_state(q)
    _check_digits(m.radix, word)
    for x in word:
        q = m.transitions[q][x]
    return q


def apply_ep(m: MealyMachine, q: str, a: EPWord) -> EPWord:
    """Exact image of the boundary point ``a`` under the state ``q``.

    After the preperiod the run is determined by the pair (state, phase in
    the period); the first repeated pair closes the output period.
    """
    m._check_state(q)
    if a.radix != m.radix:
        raise MachineError(f"radix mismatch: machine {m.radix}, word {a.radix}")
    u, v = a.preperiod, a.period
    out = []
    for x in u:
        out.append(m.outputs[q][x])
        q = m.transitions[q][x]
    seen = {}
    k = 0
    while (q, k % len(v)) not in seen:
        seen[(q, k % len(v))] = len(out)
        x = v[k % len(v)]
        out.append(m.outputs[q][x])
        q = m.transitions[q][x]
        k += 1
    start = seen[(q, k % len(v))]
    return EPWord(m.radix, tuple(out[:start]), tuple(out[start:]))


def is_invertible(m: MealyMachine) -> bool:
    return all(len(set(m.outputs[q])) == m.radix for q in m.states)


# -- minimization ------------------------------------------------------------

def _refine(states, radix, signature, delta):
    """Moore-style partition refinement; returns state -> block index."""
    keys = {}
    block = {}
    for q in states:
        block[q] = keys.setdefault(signature(q), len(keys))
    while True:
        keys = {}
        new = {}
        for q in states:
            key = (block[q], tuple(block[delta(q, x)] for x in range(radix)))
            new[q] = keys.setdefault(key, len(keys))
        if len(keys) == len(set(block.values())):
            return new
        block = new


def minimize_mealy(m: MealyMachine) -> MealyMachine:
    """Merge states that define the same tree endomorphism."""
    block = _refine(m.states, m.radix, lambda q: m.outputs[q], m.delta)
    rep = {}
    for q in m.states:
        rep.setdefault(block[q], q)
    names = [rep[b] for b in sorted(rep)]
    return MealyMachine(
        m.radix,
        tuple(names),
        {r: tuple(rep[block[t]] for t in m.transitions[r]) for r in names},
        {r: m.outputs[r] for r in names},
        rep[block[m.initial]],
    )


def mealy_isomorphic(m1: MealyMachine, m2: MealyMachine) -> bool:
    """True iff a bijection of states matches initial states, transitions and outputs."""
    if m1.radix != m2.radix or len(m1.states) != len(m2.states):
        return False
    match = {m1.initial: m2.initial}
    used = {m2.initial}
    queue = deque([m1.initial])
    while queue:
        a = queue.popleft()
        b = match[a]
        if m1.outputs[a] != m2.outputs[b]:
            return False
        for x in range(m1.radix):
            ta, tb = m1.transitions[a][x], m2.transitions[b][x]
            if ta in match:
                if match[ta] != tb:
                    return False
            else:
                if tb in used:
                    return False
                match[ta] = tb
                used.add(tb)
                queue.append(ta)
    return len(match) == len(m1.states)
