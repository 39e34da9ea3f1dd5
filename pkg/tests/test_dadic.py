from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lipschitz_automata.dadic import (
    EPWord,
    add,
    canonicalize,
    closure_A,
    closure_bound,
    digits_of,
    div_power,
    enumerate_P,
    first_digit,
    from_integer,
    from_rational,
    mul_power,
    parse_epword,
    parse_rational,
    rational_shift,
    shift,
    sub,
    to_rational,
)
from lipschitz_automata.errors import (
    DigitError,
    NotDivisibleError,
    ParseError,
    RadixMismatchError,
)


def ep(text, d=2):
    return parse_epword(text, d)


@st.composite
def epwords(draw, d=None):
    d = draw(st.sampled_from([2, 3, 10])) if d is None else d
    digit = st.integers(0, d - 1)
    u = draw(st.lists(digit, max_size=5))
    v = draw(st.lists(digit, min_size=1, max_size=4))
    return EPWord(d, tuple(u), tuple(v))


@st.composite
def epword_pairs(draw):
    d = draw(st.sampled_from([2, 3, 10]))
    return draw(epwords(d)), draw(epwords(d))


# -- canonical form ----------------------------------------------------------

@pytest.mark.parametrize(
    "u, v, want",
    [
        ((1, 0), (1, 0), "(10)"),
        ((1,), (1, 1), "(1)"),
        ((0, 1), (0,), "01(0)"),
        ((), (0, 1, 0, 1), "(01)"),
        ((1, 0, 1), (0, 1), "(10)"),
        ((1, 1, 0), (0, 1), "110(01)"),
    ],
)
def test_canonicalize(u, v, want):
    assert canonicalize(2, u, v).literal == want


def test_canonicalize_rejects_bad_input():
    with pytest.raises(DigitError):
        canonicalize(2, (2,), (0,))
    with pytest.raises(DigitError):
        canonicalize(2, (0,), ())


@given(epwords())
def test_canonicalize_idempotent(a):
    assert canonicalize(a.radix, a.preperiod, a.period) == a


@given(epwords())
def test_canonical_form_is_minimal(a):
    u, v = a.preperiod, a.period
    # minimal period: no proper divisor works
    for p in range(1, len(v)):
        if len(v) % p == 0:
            assert any(v[i] != v[i - p] for i in range(p, len(v)))
    if u:
        assert u[-1] != v[-1]


@given(epwords(), st.integers(0, 3), st.integers(1, 3))
def test_noncanonical_spellings_collapse(a, extra_pre, reps):
    # unroll the period into the preperiod and repeat it: same element
    u = a.preperiod + a.period * extra_pre
    assert EPWord(a.radix, u, a.period * reps) == a


@settings(max_examples=300)
@given(epwords(2), epwords(2))
def test_equal_records_iff_equal_values(a, b):
    assert (a == b) == (to_rational(a) == to_rational(b))


# -- integers and rationals --------------------------------------------------

def test_from_integer():
    assert from_integer(6, 2).literal == "011(0)"
    assert from_integer(0, 2).literal == "(0)"
    assert from_integer(5, 2).literal == "101(0)"
    assert digits_of(6, 2) == (0, 1, 1)
    assert digits_of(0, 2) == (0,)


def test_from_integer_round_trip_dense():
    for d in (2, 3, 10):
        for n in range(0, 10**6, 997):
            assert to_rational(from_integer(n, d)) == n
    for n in range(2000):
        assert to_rational(from_integer(n, 2)) == n


@pytest.mark.parametrize("text, value", [("(1)", -1), ("(0)", 0), ("00(1)", -4), ("10(1)", -3)])
def test_to_rational(text, value):
    assert to_rational(ep(text)) == value


@pytest.mark.parametrize("q, text", [(-3, "10(1)"), (7, "111(0)"), (Fraction(-1, 3), "(10)")])
def test_from_rational(q, text):
    assert from_rational(q, 2).literal == text


def test_from_rational_rejects_denominators_sharing_factor():
    with pytest.raises(DigitError):
        from_rational(Fraction(1, 2), 2)
    with pytest.raises(DigitError):
        from_rational(Fraction(1, 5), 10)
    assert to_rational(from_rational(Fraction(1, 3), 10)) == Fraction(1, 3)


@given(epwords())
def test_round_trip_from_word(a):
    assert from_rational(to_rational(a), a.radix) == a


@given(
    st.sampled_from([2, 3, 10]),
    st.integers(-10**6, 10**6),
    st.integers(1, 500),
)
def test_round_trip_from_rational(d, num, den):
    q = Fraction(num, den)
    if q.denominator % 2 == 0 and d in (2, 10) or q.denominator % 3 == 0 and d == 3 \
            or q.denominator % 5 == 0 and d == 10:
        return
    assert to_rational(from_rational(q, d)) == q


# -- arithmetic --------------------------------------------------------------

def test_add_sub_examples():
    assert sub(ep("100(1)"), ep("(1)")).literal == "010(1)"
    assert add(ep("(1)"), ep("1(0)")).literal == "(0)"
    assert add(ep("1(0)"), ep("1(0)")).literal == "01(0)"


def test_radix_mismatch():
    with pytest.raises(RadixMismatchError):
        add(ep("(1)", 2), ep("(1)", 3))


@settings(max_examples=400)
@given(epword_pairs())
def test_add_sub_are_homomorphisms(pair):
    a, b = pair
    assert to_rational(add(a, b)) == to_rational(a) + to_rational(b)
    assert to_rational(sub(a, b)) == to_rational(a) - to_rational(b)


def test_shift_examples():
    assert shift(ep("10(1)")).literal == "0(1)"
    assert shift(ep("(0)")).literal == "(0)"
    assert shift(ep("1(0)")).literal == "(0)"
    assert first_digit(ep("10(1)")) == 1
    assert first_digit(ep("(0)")) == 0
    assert first_digit(ep("011(0)")) == 0


@given(epwords())
def test_shift_identity(a):
    q = to_rational(a)
    assert to_rational(shift(a)) == (q - first_digit(a)) / a.radix
    assert rational_shift(q, a.radix) == to_rational(shift(a))


def test_div_power():
    assert div_power(ep("010(1)"), 1).literal == "10(1)"
    a = ep("0110(01)")
    assert div_power(a, 0) == a
    with pytest.raises(NotDivisibleError):
        div_power(ep("1(0)"), 1)


@given(epwords(), st.integers(0, 4))
def test_mul_then_div_power(a, k):
    b = mul_power(a, k)
    assert to_rational(b) == to_rational(a) * a.radix**k
    assert div_power(b, k) == a


# -- literals ----------------------------------------------------------------

def test_literals():
    assert str(ep("10(1)")) == "10(1)"
    assert parse_epword("1a(z)", 36).digits(3) == (1, 10, 35)
    assert parse_rational("-7/3") == Fraction(-7, 3)
    for bad in ("10", "(", "1()", "2(0)"):
        with pytest.raises(ParseError):
            parse_epword(bad, 2)
    with pytest.raises(ParseError):
        parse_rational("1/0")


# -- P^{l,m} and A^{l,m} -----------------------------------------------------

def test_enumerate_P_examples():
    assert enumerate_P(0, 1, 2) == {0, -1}
    assert enumerate_P(0, 2, 2) == {0, Fraction(-1, 3), Fraction(-2, 3), -1}
    assert enumerate_P(1, 1, 2) == {0, -2, 1, -1}


@pytest.mark.parametrize("l, m, d", [(l, m, d) for l in range(3) for m in range(1, 3) for d in (2, 3)])
def test_enumerate_P_matches_words(l, m, d):
    import itertools

    # every u v^oo with |u| = l, |v| = m, read through the inverse map
    words = {
        to_rational(EPWord(d, u, v))
        for u in itertools.product(range(d), repeat=l)
        for v in itertools.product(range(d), repeat=m)
    }
    P = enumerate_P(l, m, d)
    assert P == words
    assert all(-(d**l) <= x <= d**l - 1 for x in P)


def test_closure_A_examples():
    A = closure_A(0, 1, 2)
    assert all(x.denominator == 1 and -3 <= x <= 3 for x in A)
    assert enumerate_P(0, 1, 2) <= A
    assert {x.denominator for x in closure_A(0, 2, 2)} <= {1, 3}


@pytest.mark.parametrize("l, m, d", [(l, m, d) for l in range(4) for m in range(1, 4) for d in (2, 3)])
def test_closure_A_bounds(l, m, d):
    A = closure_A(l, m, d)
    z = closure_bound(l, d)
    assert enumerate_P(l, m, d) <= A
    assert all(-z <= x <= z for x in A)
    assert all((d**m - 1) % x.denominator == 0 for x in A)
    # closed under x -> shift(x) + p
    P = enumerate_P(l, m, d)
    sample = sorted(A)[:: max(1, len(A) // 20)]
    for x in sample:
        for p in list(P)[:10]:
            assert rational_shift(x, d) + p in A
