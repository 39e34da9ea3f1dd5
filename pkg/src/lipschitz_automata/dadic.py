"""Exact arithmetic on eventually periodic d-adic integers.

An element ``u v v v ...`` of Z_d is stored as an :class:`EPWord` with the
preperiod ``u`` and the period ``v`` as little-endian digit tuples: the digit
at position ``k`` is the coefficient of ``d**k``.  Every EPWord is kept in
canonical form, so two EPWords are equal as records exactly when they denote
the same d-adic integer.

Eventually periodic d-adic integers are precisely the rationals whose
denominator is coprime to ``d``; :func:`to_rational` and :func:`from_rational`
move between the two pictures using :class:`fractions.Fraction`.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import DigitError, GuardViolation, NotDivisibleError, ParseError, RadixMismatchError

__all__ = [
    "DIGITS",
    "EPWord",
    "canonicalize",
    "from_integer",
    "to_rational",
    "from_rational",
    "add",
    "sub",
    "shift",
    "first_digit",
    "div_power",
    "mul_power",
    "digit_mod",
    "rational_shift",
    "enumerate_P",
    "closure_A",
    "closure_bound",
    "parse_epword",
    "parse_rational",
    "format_rational",
    "digits_of",
    "word_value",
    "format_word",
    "parse_word",
]

DIGITS = "0123456789abcdefghijklmnopqrstuvwxyz"
MAX_RADIX = len(DIGITS)


def _check_radix(d):
    if not isinstance(d, int) or d < 2 or d > MAX_RADIX:
        raise DigitError(f"radix must be an integer in [2, {MAX_RADIX}], got {d!r}")


def _check_digits(d, word):
    for x in word:
        if not isinstance(x, int) or not 0 <= x < d:
            raise DigitError(f"digit {x!r} out of range for radix {d}")


def _minimal_period(v):
    n = len(v)
    for p in range(1, n + 1):
        if n % p == 0 and all(v[i] == v[i - p] for i in range(p, n)):
            return v[:p]
    return v


def _canonical_parts(u, v):
    v = _minimal_period(v)
    # roll the preperiod into the period while its last digit repeats the tail
    while u and u[-1] == v[-1]:
        v = (v[-1],) + v[:-1]
        u = u[:-1]
    return u, v


@dataclass(frozen=True)
class EPWord:
    """An eventually periodic d-adic integer ``preperiod . period^oo``.

    The constructor canonicalizes, so ``EPWord(2, (1, 0), (1, 0))`` and
    ``EPWord(2, (), (1, 0))`` compare equal.
    """

    radix: int
    preperiod: tuple = ()
    period: tuple = (0,)

    def __post_init__(self):
        _check_radix(self.radix)
        u = tuple(self.preperiod)
        v = tuple(self.period)
        if not v:
            raise DigitError("period must be nonempty")
        _check_digits(self.radix, u)
        _check_digits(self.radix, v)
        u, v = _canonical_parts(u, v)
        object.__setattr__(self, "preperiod", u)
        object.__setattr__(self, "period", v)

    def digit(self, k: int) -> int:
        u, v = self.preperiod, self.period
        if k < len(u):
            return u[k]
        return v[(k - len(u)) % len(v)]

    def digits(self, count: int) -> tuple:
        """The first ``count`` digits, least significant first."""
        return tuple(self.digit(k) for k in range(count))

    @property
    def literal(self) -> str:
        return format_word(self.preperiod) + "(" + format_word(self.period) + ")"

    def __str__(self):
        return self.literal

    def __repr__(self):
        return f"EPWord({self.radix}, {self.literal!r})"

    @classmethod
    def parse(cls, text: str, radix: int) -> "EPWord":
        return parse_epword(text, radix)

    @property
    def is_zero(self) -> bool:
        return self.preperiod == () and self.period == (0,)


def canonicalize(d: int, u: Sequence[int], v: Sequence[int]) -> EPWord:
    return EPWord(d, tuple(u), tuple(v))


# -- words and literals ------------------------------------------------------

def format_word(word: Iterable[int]) -> str:
    return "".join(DIGITS[x] for x in word)


def parse_word(text: str, radix: int) -> tuple:
    """Parse a little-endian digit string such as ``"0110"``."""
    _check_radix(radix)
    out = []
    for i, ch in enumerate(text.strip().lower()):
        k = DIGITS.find(ch)
        if k < 0 or k >= radix:
            raise ParseError(f"invalid digit {ch!r} for radix {radix}", column=i + 1)
        out.append(k)
    return tuple(out)


_EP_RE = re.compile(r"^\s*([0-9a-zA-Z]*)\(([0-9a-zA-Z]+)\)\s*$")


def parse_epword(text: str, radix: int) -> EPWord:
    """Parse the literal ``u(v)``, e.g. ``"10(1)"`` is -3 in Z_2."""
    m = _EP_RE.match(text)
    if not m:
        raise ParseError(f"malformed d-adic literal {text!r}; expected u(v)")
    return EPWord(radix, parse_word(m.group(1), radix), parse_word(m.group(2), radix))


_RAT_RE = re.compile(r"^\s*([+-]?\d+)(?:\s*/\s*(\d+))?\s*$")


def parse_rational(text: str) -> Fraction:
    m = _RAT_RE.match(text)
    if not m:
        raise ParseError(f"malformed rational {text!r}; expected n or n/m")
    den = int(m.group(2)) if m.group(2) else 1
    if den == 0:
        raise ParseError("zero denominator")
    return Fraction(int(m.group(1)), den)


def format_rational(q: Fraction) -> str:
    return str(q)


def digits_of(n: int, d: int) -> tuple:
    """``[n]_d``: base-``d`` digits of ``n``, least significant first; ``[0]_d = (0,)``."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    if n == 0:
        return (0,)
    out = []
    while n:
        n, r = divmod(n, d)
        out.append(r)
    return tuple(out)


def word_value(word: Sequence[int], d: int) -> int:
    """The integer ``w_0 + w_1 d + w_2 d**2 + ...`` read off a digit word."""
    total = 0
    for x in reversed(word):
        total = total * d + x
    return total


# -- conversions -------------------------------------------------------------

def from_integer(n: int, d: int) -> EPWord:
    if n < 0:
        raise ValueError("from_integer expects n >= 0; use from_rational for negatives")
    _check_radix(d)
    return EPWord(d, digits_of(n, d), (0,))


def to_rational(a: EPWord) -> Fraction:
    d = a.radix
    u, v = a.preperiod, a.period
    return word_value(u, d) + Fraction(word_value(v, d) * d ** len(u), 1 - d ** len(v))


def digit_mod(q: Fraction, d: int) -> int:
    """The residue ``q mod d`` in ``{0, ..., d-1}`` of a rational with denominator coprime to ``d``."""
    den = q.denominator
    return (q.numerator * pow(den, -1, d)) % d


def rational_shift(q: Fraction, d: int) -> Fraction:
    """The shift ``(q - (q mod d)) / d`` on rationals with denominator coprime to ``d``."""
    return (q - digit_mod(q, d)) / d


def from_rational(q, d: int) -> EPWord:
    _check_radix(d)
    q = Fraction(q)
    if math.gcd(q.denominator, d) != 1:
        raise DigitError(f"{q} is not a {d}-adic integer: denominator shares a factor with {d}")
    seen = {}
    digits = []
    while q not in seen:
        seen[q] = len(digits)
        r = digit_mod(q, d)
        digits.append(r)
        q = (q - r) / d
    start = seen[q]
    return EPWord(d, tuple(digits[:start]), tuple(digits[start:]))


# -- arithmetic --------------------------------------------------------------

def _same_radix(a, b):
    if a.radix != b.radix:
        raise RadixMismatchError(f"radix mismatch: {a.radix} vs {b.radix}")
    return a.radix


def _combine(a, b, sign):
    d = _same_radix(a, b)
    start = max(len(a.preperiod), len(b.preperiod))
    period = math.lcm(len(a.period), len(b.period))
    digits = []
    carry = 0
    for k in range(start):
        carry, r = divmod(a.digit(k) + sign * b.digit(k) + carry, d)
        digits.append(r)
    # past `start` the digit pair depends only on the phase; carry is 0/1 (add) or 0/-1 (sub)
    seen = {}
    k = start
    while (carry, (k - start) % period) not in seen:
        seen[(carry, (k - start) % period)] = k
        carry, r = divmod(a.digit(k) + sign * b.digit(k) + carry, d)
        digits.append(r)
        k += 1
    first = seen[(carry, (k - start) % period)]
    return EPWord(d, tuple(digits[:first]), tuple(digits[first:]))


def add(a: EPWord, b: EPWord) -> EPWord:
    return _combine(a, b, 1)


def sub(a: EPWord, b: EPWord) -> EPWord:
    return _combine(a, b, -1)


def first_digit(a: EPWord) -> int:
    return a.digit(0)


def shift(a: EPWord) -> EPWord:
    """Drop the lowest digit: ``(a - (a mod d)) / d``."""
    u, v = a.preperiod, a.period
    if u:
        return EPWord(a.radix, u[1:], v)
    return EPWord(a.radix, (), v[1:] + v[:1])


def div_power(a: EPWord, k: int) -> EPWord:
    """Exact division by ``d**k``; raises :class:`NotDivisibleError` otherwise."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    low = a.digits(k)
    if any(low):
        raise NotDivisibleError(f"{a} is not divisible by {a.radix}^{k}")
    for _ in range(k):
        a = shift(a)
    return a


def mul_power(a: EPWord, k: int) -> EPWord:
    """Multiply by ``d**k`` (prepend ``k`` zero digits)."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    return EPWord(a.radix, (0,) * k + a.preperiod, a.period)


# -- the finite sets P^{l,m} and A^{l,m} ---------------------------------------

def enumerate_P(l: int, m: int, d: int) -> set:
    """Rational values of all ``u v^oo`` with ``|u| = l`` and ``|v| = m``."""
    if l < 0 or m < 1:
        raise ValueError("need l >= 0 and m >= 1")
    scale = Fraction(d**l, 1 - d**m)
    return {i + j * scale for i in range(d**l) for j in range(d**m)}


def closure_bound(l: int, d: int) -> Fraction:
    return Fraction(d ** (l + 1) + d - 1, d - 1)


def closure_A(l: int, m: int, d: int) -> set:
    """Union of ``A_0 = P`` and ``A_{i+1} = shift(A_i) + P``.

    Elements are tracked as numerators over ``D = d**m - 1``; every element
    of the union has a denominator dividing ``D``.
    """
    if l < 0 or m < 1:
        raise ValueError("need l >= 0 and m >= 1")
    D = d**m - 1
    # P as numerators over D: i + j d^l / (1 - d^m) = (i D - j d^l) / D
    P = sorted({i * D - j * d**l for i in range(d**l) for j in range(d**m)})
    z = closure_bound(l, d)
    zD = z * D
    found = set(P)
    frontier = list(P)
    while frontier:
        shifted = set()
        for N in frontier:
            # D = -1 mod d, so N/D = r (mod d) with r = -N mod d
            r = (-N) % d
            shifted.add((N - r * D) // d)
        nxt = []
        for s in shifted:
            for p in P:
                N = s + p
                if N not in found:
                    if abs(N) > zD:
                        raise GuardViolation(f"closure element {Fraction(N, D)} escapes [-{z}, {z}]")
                    found.add(N)
                    nxt.append(N)
        frontier = nxt
    return {Fraction(N, D) for N in found}
