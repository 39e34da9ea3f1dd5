"""Mealy automata of 1-Lipschitz d-adic maps and Moore automata of their
reduced van der Put coefficients, with exact eventually periodic arithmetic."""

__version__ = "0.1.0"

from .dadic import (
    EPWord,
    add,
    canonicalize,
    closure_A,
    div_power,
    enumerate_P,
    first_digit,
    from_integer,
    from_rational,
    parse_epword,
    shift,
    sub,
    to_rational,
)
from .errors import (
    AutomataError,
    DigitError,
    GuardViolation,
    MachineError,
    NotDivisibleError,
    NotZeroStableError,
    ParseError,
    RadixMismatchError,
)
from .mealy import (
    MealyMachine,
    apply_ep,
    apply_finite,
    is_invertible,
    mealy_isomorphic,
    minimize_mealy,
    parse_wreath,
    print_wreath,
    section_at,
)
from .moore import (
    MooreMachine,
    evaluate,
    evaluate_from,
    is_zero_stable,
    minimize_moore,
    moore_isomorphic,
    sequence_prefix,
)
from .vanderput import (
    MAHLER,
    SCHIKHOF,
    Coefficients,
    Portrait,
    build_table,
    coefficient_source,
    evaluate_series,
    n_underscore,
    portrait_of,
    render_portrait,
    schikhof_section_coefficient,
    section_coefficient,
    vdp_coefficient,
)
from .conversion import (
    Conversion,
    LabeledDigraph,
    mealy_to_moore,
    mealy_to_moore_labelled,
    moore_to_mealy,
    moore_to_mealy_labelled,
    roundtrip_check,
    termination_guard,
    underlying_graph,
    verify_covering,
)
from .machine_file import load_machine, machine_to_dot, parse_machine_file, print_machine_file
