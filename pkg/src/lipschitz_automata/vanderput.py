"""Reduced van der Put coefficients of tree endomorphisms.

For a 1-Lipschitz map ``g`` of Z_d the reduced coefficients are::

    b_n = g(n)                                  for 0 <= n < d
    b_n = (g(n) - g(n_)) / d**floor(log_d n)    for n >= d

where ``g(n)`` means ``g`` applied to ``[n]_d 0^oo`` and ``n_`` drops the
most significant base-d digit of ``n``.  Schikhof's variant differs only for
``0 < n < d``, where ``g(0)`` is subtracted as well.

Anything that maps ``n`` to an :class:`EPWord` can serve as a coefficient
source: see :func:`coefficient_source`.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Callable, Mapping

from .dadic import (
    EPWord,
    add,
    digits_of,
    div_power,
    format_word,
    from_integer,
    mul_power,
    shift,
    sub,
    word_value,
)
from .errors import DigitError
from .mealy import MealyMachine, apply_ep
from .moore import MooreMachine, evaluate_from

__all__ = [
    "MAHLER",
    "SCHIKHOF",
    "n_underscore",
    "floor_log",
    "vdp_coefficient",
    "Coefficients",
    "CoefficientTable",
    "build_table",
    "section_coefficient",
    "schikhof_section_coefficient",
    "coefficient_source",
    "evaluate_series",
    "Portrait",
    "portrait_of",
    "render_portrait",
    "labelled_vertices",
]

MAHLER = "mahler"
SCHIKHOF = "schikhof"


def _check_variant(variant):
    if variant not in (MAHLER, SCHIKHOF):
        raise ValueError(f"unknown variant {variant!r}; use 'mahler' or 'schikhof'")


def n_underscore(n: int, d: int) -> int:
    """``n`` with its most significant base-``d`` digit removed."""
    if n < 1:
        raise ValueError("n_ is defined for n >= 1 only")
    word = digits_of(n, d)
    return n - word[-1] * d ** (len(word) - 1)


def floor_log(n: int, d: int) -> int:
    """Number of base-``d`` digits of ``n`` minus one (exact, no floats)."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    return len(digits_of(n, d)) - 1


def _image(m, q, n):
    return apply_ep(m, q, from_integer(n, m.radix))


def vdp_coefficient(m: MealyMachine, q: str, n: int, variant: str = MAHLER) -> EPWord:
    """Reduced van der Put coefficient ``b_n`` of the endomorphism at state ``q``."""
    _check_variant(variant)
    if n < 0:
        raise ValueError("n must be nonnegative")
    d = m.radix
    if n == 0 or (n < d and variant == MAHLER):
        return _image(m, q, n)
    return div_power(sub(_image(m, q, n), _image(m, q, n_underscore(n, d))), floor_log(n, d))


class Coefficients:
    """Memoized coefficient sequence ``n -> b_n`` of one state of a machine."""

    def __init__(self, machine: MealyMachine, state: str | None = None, variant: str = MAHLER):
        _check_variant(variant)
        self.machine = machine
        self.state = machine.initial if state is None else state
        machine._check_state(self.state)
        self.variant = variant
        self._cache = {}

    def __call__(self, n: int) -> EPWord:
        try:
            return self._cache[n]
        except KeyError:
            b = self._cache[n] = vdp_coefficient(self.machine, self.state, n, self.variant)
            return b

    def prefix(self, count: int) -> list:
        return [self(n) for n in range(count)]


@dataclass(frozen=True)
class CoefficientTable:
    """The first ``d**2`` Mahler coefficients of every state of a machine."""

    machine: MealyMachine
    entries: Mapping = field(repr=False)

    def entry(self, q: str, n: int) -> EPWord:
        return self.entries[(q, n)]


def build_table(m: MealyMachine) -> CoefficientTable:
    d = m.radix
    entries = {}
    for q in m.states:
        for n in range(d * d):
            entries[(q, n)] = vdp_coefficient(m, q, n)
    return CoefficientTable(m, entries)


def section_coefficient(m: MealyMachine, q: str, x: int, n: int) -> EPWord:
    """``b_n`` of the section of ``q`` at letter ``x``, from the coefficients of ``q``.

    Uses ``shift(b_x)`` for ``n = 0``, ``b_{x+nd} + shift(b_x)`` for
    ``0 < n < d`` and ``b_{x+nd}`` for ``n >= d``.
    """
    d = m.radix
    if not 0 <= x < d:
        raise DigitError(f"digit {x} out of range for radix {d}")
    if n < 0:
        raise ValueError("n must be nonnegative")
    if n >= d:
        return vdp_coefficient(m, q, x + n * d)
    low = shift(vdp_coefficient(m, q, x))
    if n == 0:
        return low
    return add(vdp_coefficient(m, q, x + n * d), low)


def schikhof_section_coefficient(m: MealyMachine, q: str, x: int, n: int) -> EPWord:
    """Schikhof-variant counterpart of :func:`section_coefficient`.

    For ``n = 0`` and ``x > 0`` the shifted quantity is ``b~_x + b_0``; since
    ``b~_x = g(x) - g(0)`` and ``b_0 = g(0)`` this is just ``g(x)``, and that
    is what is computed.
    """
    d = m.radix
    if not 0 <= x < d:
        raise DigitError(f"digit {x} out of range for radix {d}")
    if n < 0:
        raise ValueError("n must be nonnegative")
    if n > 0:
        return vdp_coefficient(m, q, x + n * d, SCHIKHOF)
    if x == 0:
        return shift(vdp_coefficient(m, q, 0, SCHIKHOF))
    return shift(_image(m, q, x))


def coefficient_source(obj, state: str | None = None, variant: str = MAHLER) -> Callable[[int], EPWord]:
    """Turn a Mealy machine, Moore machine, list or callable into ``n -> EPWord``."""
    if isinstance(obj, MealyMachine):
        return Coefficients(obj, state, variant)
    if isinstance(obj, MooreMachine):
        q = obj.initial if state is None else state
        obj._check_state(q)
        return lambda n: evaluate_from(obj, q, n)
    if callable(obj):
        return obj
    seq = list(obj)
    return seq.__getitem__


def evaluate_series(coeffs: Callable[[int], EPWord], x: EPWord, k: int) -> tuple:
    """First ``k`` digits of ``sum_n b_n d**floor(log_d n) chi_n(x)`` over ``n < d**k``.

    ``chi_n(x)`` is 1 exactly when ``[n]_d`` is a prefix of ``x``, so only the
    prefixes of ``x`` of length at most ``k`` that are labelled vertices
    contribute.
    """
    d = x.radix
    if k < 1:
        return ()
    prefix = x.digits(k)
    total = EPWord(d, (), (0,))
    if prefix[0] == 0:
        total = add(total, coeffs(0))
    for j in range(k):
        if prefix[j] != 0:
            n = word_value(prefix[: j + 1], d)
            total = add(total, mul_power(coeffs(n), j))
    return total.digits(k)


# -- portraits ---------------------------------------------------------------

def labelled_vertices(d: int, depth: int):
    """Vertices carrying a label: ``0`` and words ending in a nonzero digit."""
    yield (0,)
    for length in range(1, depth + 1):
        for word in itertools.product(range(d), repeat=length):
            if word[-1] != 0:
                yield word


@dataclass(frozen=True)
class Portrait:
    radix: int
    depth: int
    labels: Mapping[tuple, EPWord]

    def label(self, word) -> EPWord | None:
        return self.labels.get(tuple(word))


def portrait_of(coeffs: Callable[[int], EPWord], depth: int, radix: int | None = None) -> Portrait:
    """Label vertex ``[n]_d`` with ``coeffs(n)``; the radix defaults to that of ``coeffs(0)``."""
    if depth < 1:
        raise ValueError("depth must be at least 1")
    if radix is None:
        radix = coeffs(0).radix
    labels = {w: coeffs(word_value(w, radix)) for w in labelled_vertices(radix, depth)}
    return Portrait(radix, depth, labels)


def _tree_words(d, depth):
    stack = [()]
    while stack:
        w = stack.pop()
        yield w
        if len(w) < depth:
            stack.extend(w + (x,) for x in reversed(range(d)))


def render_portrait(p: Portrait, format: str = "text") -> str:
    if format == "text":
        lines = []
        for w in _tree_words(p.radix, p.depth):
            label = p.labels.get(w)
            name = format_word(w) or "ε"
            lines.append("  " * len(w) + f"{name}: {label.literal if label else '·'}")
        return "\n".join(lines) + "\n"
    if format == "dot":
        lines = ["digraph portrait {", "  node [shape=box];"]
        for w in _tree_words(p.radix, p.depth):
            node = "v" + format_word(w)
            label = p.labels.get(w)
            name = format_word(w) or "ε"
            text = f"{name}\\n{label.literal}" if label else name
            lines.append(f'  {node} [label="{text}"];')
            if w:
                lines.append(f'  v{format_word(w[:-1])} -> {node} [label="{w[-1]}"];')
        lines.append("}")
        return "\n".join(lines) + "\n"
    raise ValueError(f"unknown portrait format {format!r}")
