"""Divisibility analysis for finitely supported probability measures."""

from ._core import (
    ConstraintSet,
    Delta1Membership,
    DivisError,
    GroupSpec,
    LambdaReport,
    Measure,
    MembershipVerdict,
    Rational,
    RootSet,
    SecondCharacteristic,
    StructureSummary,
    TGridPoint,
    ZeroPoint,
    char_fn,
    char_fn_derivative,
    convolve,
    convolve_power,
    cyclic_char_fn,
    cyclic_nth_roots,
    delta1_membership,
    dirac,
    emit_spec,
    find_zeros,
    fractional_power,
    is_member,
    lambda_scan,
    make_measure,
    make_t_grid,
    nth_root_admissible,
    parse_spec,
    rational_in_constraints,
    run_report,
    second_characteristic,
    t0_lower_bound,
    total_variation,
    winding_constraints,
    winding_number,
    z2_nth_root,
)

__all__ = [
    "ConstraintSet",
    "Delta1Membership",
    "DivisError",
    "GroupSpec",
    "LambdaReport",
    "Measure",
    "MembershipVerdict",
    "Rational",
    "RootSet",
    "SecondCharacteristic",
    "StructureSummary",
    "TGridPoint",
    "ZeroPoint",
    "char_fn",
    "char_fn_derivative",
    "convolve",
    "convolve_power",
    "cyclic_char_fn",
    "cyclic_nth_roots",
    "delta1_membership",
    "dirac",
    "emit_spec",
    "find_zeros",
    "fractional_power",
    "is_member",
    "lambda_scan",
    "make_measure",
    "make_t_grid",
    "nth_root_admissible",
    "parse_spec",
    "rational_in_constraints",
    "run_report",
    "second_characteristic",
    "t0_lower_bound",
    "total_variation",
    "winding_constraints",
    "winding_number",
    "z2_nth_root",
]
