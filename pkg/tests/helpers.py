"""Shared machines and random corpora for the test suite."""

import random
from pathlib import Path

from lipschitz_automata import MealyMachine, MooreMachine, from_integer, parse_wreath
from lipschitz_automata.dadic import EPWord

MACHINES = Path(__file__).resolve().parent.parent / "machines"

LAMPLIGHTER = "p = (p, q) [1, 0]; q = (p, q)"
TM_ENDO = "t = (t, s); s = (s, t) [0, 0]"


def lamplighter():
    return parse_wreath(LAMPLIGHTER)


def identity(d=2):
    return parse_wreath("e = (" + ", ".join(["e"] * d) + ")")


def constant_zero(d=2):
    return parse_wreath("c = (" + ", ".join(["c"] * d) + ") [" + ", ".join(["0"] * d) + "]")


def tm_endo():
    return parse_wreath(TM_ENDO)


def tm_dfao():
    return MooreMachine(
        2,
        ("a", "b"),
        {"a": ("a", "b"), "b": ("b", "a")},
        {"a": from_integer(0, 2), "b": from_integer(1, 2)},
        "a",
    )


def random_mealy(rng, d, n_states):
    names = [f"s{i}" for i in range(n_states)]
    trans = {q: tuple(rng.choice(names) for _ in range(d)) for q in names}
    outs = {q: tuple(rng.randrange(d) for _ in range(d)) for q in names}
    return MealyMachine.trimmed(d, names, trans, outs, names[0])


def random_epword(rng, d, max_pre=3, max_per=3):
    u = tuple(rng.randrange(d) for _ in range(rng.randint(0, max_pre)))
    v = tuple(rng.randrange(d) for _ in range(rng.randint(1, max_per)))
    return EPWord(d, u, v)


def random_zero_stable_moore(rng, d, n_states, n_values=3):
    """Random d-DFAO whose 0-transitions never change the output."""
    names = [f"m{i}" for i in range(n_states)]
    values = [random_epword(rng, d, 2, 2) for _ in range(n_values)]
    outs = {q: rng.choice(values) for q in names}
    trans = {}
    for q in names:
        same = [r for r in names if outs[r] == outs[q]]
        trans[q] = (rng.choice(same),) + tuple(rng.choice(names) for _ in range(d - 1))
    return MooreMachine.trimmed(d, names, trans, outs, names[0])


def mealy_corpus(count=200, seed=20240601):
    rng = random.Random(seed)
    out = []
    for _ in range(count):
        d = rng.choice([2, 3])
        out.append(random_mealy(rng, d, rng.randint(1, 3)))
    return out


def moore_corpus(count=60, seed=7):
    rng = random.Random(seed)
    out = []
    for _ in range(count):
        d = rng.choice([2, 3])
        out.append(random_zero_stable_moore(rng, d, rng.randint(1, 4)))
    return out

# first 32 terms of the Thue-Morse sequence, n = 0..31
TM_TABLE = (0, 1, 1, 0, 1, 0, 0, 1, 1, 0, 0, 1, 0, 1, 1, 0,
            1, 0, 0, 1, 0, 1, 1, 0, 0, 1, 1, 0, 1, 0, 0, 1)


def leading_ones_dfao():
    """Moore machine generating 0, 1, 1, 1, ... (the identity's coefficients)."""
    return MooreMachine(
        2,
        ("z", "o"),
        {"z": ("z", "o"), "o": ("o", "o")},
        {"z": from_integer(0, 2), "o": from_integer(1, 2)},
        "z",
    )


def perturbed_tm_dfao():
    """Thue-Morse DFAO with the initial 0-transition rerouted."""
    m = tm_dfao()
    trans = dict(m.transitions)
    trans["a"] = ("b", "b")
    return MooreMachine(2, m.states, trans, m.outputs, "a")
