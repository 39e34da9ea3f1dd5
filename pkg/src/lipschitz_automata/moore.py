"""Deterministic finite automata with output (d-DFAOs) over d-adic outputs.

A :class:`MooreMachine` reads ``[n]_d`` least significant digit first and
emits the :class:`~lipschitz_automata.dadic.EPWord` attached to the state it
ends in.  Symbolic alphabets such as ``{0, 1}`` are embedded through
:func:`~lipschitz_automata.dadic.from_integer`.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Mapping

from .dadic import EPWord, _check_radix, digits_of
from .errors import MachineError
from .mealy import _refine, reachable_states

__all__ = [
    "MooreMachine",
    "evaluate",
    "evaluate_from",
    "sequence_prefix",
    "is_zero_stable",
    "zero_stability_witness",
    "minimize_moore",
    "moore_isomorphic",
]


@dataclass(frozen=True, eq=True)
class MooreMachine:
    radix: int
    states: tuple
    transitions: Mapping[str, tuple]
    outputs: Mapping[str, EPWord]
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
            for x in range(d):
                if x >= len(row):
                    raise MachineError(f"state {q!r} has no transition on digit {x}")
            if len(row) != d:
                raise MachineError(f"state {q!r} has more than {d} transitions")
            for x, t in enumerate(row):
                if t not in states:
                    raise MachineError(f"state {q!r} on digit {x} goes to undefined state {t!r}")
            if q not in self.outputs:
                raise MachineError(f"state {q!r} has no output")
            out = self.outputs[q]
            if not isinstance(out, EPWord) or out.radix != d:
                raise MachineError(f"output of state {q!r} must be a radix-{d} EPWord")
            transitions[q] = row
            outputs[q] = out
        object.__setattr__(self, "states", states)
        object.__setattr__(self, "transitions", transitions)
        object.__setattr__(self, "outputs", outputs)
        reach = set(reachable_states(self.initial, transitions, d))
        missing = [q for q in states if q not in reach]
        if missing:
            raise MachineError(f"states unreachable from {self.initial!r}: {', '.join(missing)}")

    def delta(self, q: str, x: int) -> str:
        return self.transitions[q][x]

    def run(self, q: str, word) -> str:
        for x in word:
            q = self.transitions[q][x]
        return q

    def _check_state(self, q):
        if q not in self.transitions:
            raise MachineError(f"unknown state {q!r}")

    @property
    def output_values(self) -> set:
        return set(self.outputs.values())

    @classmethod
    def trimmed(cls, radix, states, transitions, outputs, initial) -> "MooreMachine":
        keep = reachable_states(initial, {q: tuple(transitions[q]) for q in states}, radix)
        return cls(radix, tuple(keep), {q: transitions[q] for q in keep},
                   {q: outputs[q] for q in keep}, initial)


def evaluate_from(m: MooreMachine, q: str, n: int) -> EPWord:
    """Term ``n`` of the sequence generated from state ``q``."""
    m._check_state(q)
    if n < 0:
        raise ValueError("n must be nonnegative")
    return m.outputs[m.run(q, digits_of(n, m.radix))]


def evaluate(m: MooreMachine, n: int) -> EPWord:
    return evaluate_from(m, m.initial, n)


def sequence_prefix(m: MooreMachine, count: int) -> list:
    if count < 0:
        raise ValueError("count must be nonnegative")
    return [evaluate(m, n) for n in range(count)]


def zero_stability_witness(m: MooreMachine):
    """A state ``q`` and ``k`` with a different output after ``0**k``, or None."""
    for q in m.states:
        t = q
        seen = {q}
        k = 0
        while True:
            t = m.transitions[t][0]
            k += 1
            if m.outputs[t] != m.outputs[q]:
                return q, k
            if t in seen:
                break
            seen.add(t)
    return None


def is_zero_stable(m: MooreMachine) -> bool:
    """True iff no state changes its output after reading trailing zeros."""
    return zero_stability_witness(m) is None


def minimize_moore(m: MooreMachine) -> MooreMachine:
    block = _refine(m.states, m.radix, lambda q: m.outputs[q], m.delta)
    rep = {}
    for q in m.states:
        rep.setdefault(block[q], q)
    names = [rep[b] for b in sorted(rep)]
    return MooreMachine(
        m.radix,
        tuple(names),
        {r: tuple(rep[block[t]] for t in m.transitions[r]) for r in names},
        {r: m.outputs[r] for r in names},
        rep[block[m.initial]],
    )


def moore_isomorphic(m1: MooreMachine, m2: MooreMachine) -> bool:
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
            elif tb in used:
                return False
            else:
                match[ta] = tb
                used.add(tb)
                queue.append(ta)
    return len(match) == len(m1.states)
