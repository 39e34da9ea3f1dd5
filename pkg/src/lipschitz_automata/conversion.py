"""Conversions between a Mealy machine and the Moore machine of its coefficients.

``mealy_to_moore`` builds a d-DFAO generating the reduced van der Put
coefficients of an endomorphism; ``moore_to_mealy`` goes back from such a
d-DFAO to a Mealy machine.  Both run a breadth-first search over labels made
of a machine state and a d-tuple of coefficients, naming each discovered
state after the first vertex word that reached it (``q`` for the root, then
``q0``, ``q1``, ``q01``, ...).
"""

from __future__ import annotations

import logging
import math
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction

from .dadic import EPWord, add, closure_bound, first_digit, format_word, shift, to_rational
from .errors import GuardViolation, NotZeroStableError
from .mealy import MealyMachine, minimize_mealy, mealy_isomorphic
from .moore import MooreMachine, evaluate_from, minimize_moore, zero_stability_witness
from .vanderput import build_table

__all__ = [
    "MealyToMooreLabel",
    "MooreToMealyLabel",
    "LabeledDigraph",
    "Conversion",
    "mealy_to_moore",
    "mealy_to_moore_labelled",
    "moore_to_mealy",
    "moore_to_mealy_labelled",
    "termination_guard",
    "underlying_graph",
    "verify_covering",
    "roundtrip_check",
    "state_name",
]

log = logging.getLogger(__name__)


def state_name(word) -> str:
    return "q" + format_word(word)


@dataclass(frozen=True)
class MealyToMooreLabel:
    """``(g|_v, (b_{vy})_y)``: section at ``v`` and the coefficients below ``v``."""

    section: str
    coeffs: tuple

    def __str__(self):
        return f"({self.section}, ({', '.join(c.literal for c in self.coeffs)}))"


@dataclass(frozen=True)
class MooreToMealyLabel:
    """``((b_n)|_v, (b^{g|_v}_i)_{i<d})``: kernel state and first coefficients of ``g|_v``."""

    kernel_state: str
    coeffs: tuple

    def __str__(self):
        return f"({self.kernel_state}, ({', '.join(c.literal for c in self.coeffs)}))"


@dataclass
class Conversion:
    """Result of a conversion: the machine, its labels and the covering projection."""

    machine: object
    labels: dict
    projection: dict
    guard: tuple | None = None
    observed: set = field(default_factory=set)


# -- Mealy -> Moore ----------------------------------------------------------

def mealy_to_moore_labelled(m: MealyMachine) -> Conversion:
    d = m.radix
    table = build_table(m)
    root = MealyToMooreLabel(m.initial, tuple(table.entry(m.initial, y) for y in range(d)))
    names = {root: state_name(())}
    queue = deque([(root, ())])
    transitions = {}
    while queue:
        label, word = queue.popleft()
        row = []
        for x in range(d):
            # (vx0)bar = (vx)bar, and b at (vxy)bar equals b of g|_v at (xy)bar for y != 0
            coeffs = (label.coeffs[x],) + tuple(
                table.entry(label.section, x + y * d) for y in range(1, d)
            )
            child = MealyToMooreLabel(m.delta(label.section, x), coeffs)
            if child not in names:
                names[child] = state_name(word + (x,))
                queue.append((child, word + (x,)))
            row.append(names[child])
        transitions[names[label]] = tuple(row)
    states = tuple(names.values())
    by_name = {n: lab for lab, n in names.items()}
    moore = MooreMachine(
        d, states, transitions, {n: by_name[n].coeffs[0] for n in states}, names[root]
    )
    projection = {n: by_name[n].section for n in states}
    return Conversion(moore, by_name, projection)


def mealy_to_moore(m: MealyMachine, minimize: bool = False) -> MooreMachine:
    """d-DFAO generating the reduced coefficients of the initial state of ``m``."""
    result = mealy_to_moore_labelled(m).machine
    return minimize_moore(result) if minimize else result


# -- Moore -> Mealy ----------------------------------------------------------

def termination_guard(b: MooreMachine):
    """``(l, m, z)``: max preperiod, lcm of periods and the bound on tuple values."""
    outs = b.output_values
    l = max(len(a.preperiod) for a in outs)
    m = math.lcm(*(len(a.period) for a in outs))
    return l, m, closure_bound(l, b.radix)


def _check_guard(value: EPWord, z: Fraction, D: int, where):
    q = to_rational(value)
    if abs(q) > z or D % q.denominator != 0:
        raise GuardViolation(
            f"internal inconsistency at {where}: coefficient {value} = {q} "
            f"leaves [-{z}, {z}] or has denominator not dividing {D}"
        )
    return q


def moore_to_mealy_labelled(b: MooreMachine, pre_minimize: bool = False) -> Conversion:
    witness = zero_stability_witness(b)
    if witness is not None:
        q, k = witness
        raise NotZeroStableError(
            f"Moore machine is not zero-stable: state {q!r} changes output after reading 0^{k}"
        )
    if pre_minimize:
        b = minimize_moore(b)
    d = b.radix
    l, mm, z = termination_guard(b)
    D = d**mm - 1
    observed = set()
    root = MooreToMealyLabel(b.initial, tuple(evaluate_from(b, b.initial, i) for i in range(d)))
    for c in root.coeffs:
        observed.add(_check_guard(c, z, D, "root"))
    names = {root: state_name(())}
    queue = deque([(root, ())])
    transitions = {}
    outputs = {}
    while queue:
        label, word = queue.popleft()
        row = []
        out = []
        for x in range(d):
            low = shift(label.coeffs[x])
            coeffs = (low,) + tuple(
                add(evaluate_from(b, label.kernel_state, x + i * d), low) for i in range(1, d)
            )
            for c in coeffs:
                observed.add(_check_guard(c, z, D, format_word(word + (x,)) or "root"))
            child = MooreToMealyLabel(b.delta(label.kernel_state, x), coeffs)
            if child not in names:
                names[child] = state_name(word + (x,))
                queue.append((child, word + (x,)))
            row.append(names[child])
            out.append(first_digit(label.coeffs[x]))
        transitions[names[label]] = tuple(row)
        outputs[names[label]] = tuple(out)
    states = tuple(names.values())
    by_name = {n: lab for lab, n in names.items()}
    mealy = MealyMachine(d, states, transitions, outputs, names[root])
    projection = {n: by_name[n].kernel_state for n in states}
    log.debug("moore_to_mealy: %d labels, guard l=%d m=%d z=%s", len(states), l, mm, z)
    return Conversion(mealy, by_name, projection, (l, mm, z), observed)


def moore_to_mealy(b: MooreMachine, minimize: bool = False, pre_minimize: bool = False) -> MealyMachine:
    """Mealy machine whose reduced coefficients are the sequence generated by ``b``."""
    result = moore_to_mealy_labelled(b, pre_minimize).machine
    return minimize_mealy(result) if minimize else result


# -- underlying graphs and coverings ------------------------------------------

@dataclass(frozen=True)
class LabeledDigraph:
    """Digraph with one outgoing edge per digit at every node."""

    radix: int
    nodes: tuple
    edges: tuple  # (source, digit, target)
    annotations: dict = field(default_factory=dict, compare=False)

    def to_dot(self, name: str = "G") -> str:
        lines = [f"digraph {name} {{", "  rankdir=LR;"]
        for n in self.nodes:
            text = n if n not in self.annotations else f"{n}\\n{self.annotations[n]}"
            lines.append(f'  "{n}" [label="{text}"];')
        for s, x, t in self.edges:
            lines.append(f'  "{s}" -> "{t}" [label="{x}"];')
        lines.append("}")
        return "\n".join(lines) + "\n"


def underlying_graph(machine) -> LabeledDigraph:
    d = machine.radix
    edges = tuple((q, x, machine.delta(q, x)) for q in machine.states for x in range(d))
    return LabeledDigraph(d, machine.states, edges)


def verify_covering(big: LabeledDigraph, small: LabeledDigraph, projection: dict) -> bool:
    """Label-preserving graph homomorphism that is onto nodes and onto edges."""
    if any(n not in projection for n in big.nodes):
        return False
    if set(projection[n] for n in big.nodes) != set(small.nodes):
        return False
    small_edges = set(small.edges)
    hit = set()
    for s, x, t in big.edges:
        image = (projection[s], x, projection[t])
        if image not in small_edges:
            return False
        hit.add(image)
    return hit == small_edges


def roundtrip_check(m: MealyMachine) -> bool:
    back = moore_to_mealy(mealy_to_moore(m), minimize=True)
    return mealy_isomorphic(back, minimize_mealy(m))
