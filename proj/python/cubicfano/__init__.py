"""Cubic hypersurfaces over finite fields and their Fano varieties of lines."""

from ._core import (
    Class,
    InputError,
    IntegralityError,
    ParseError,
    chi_fano,
    chi_real_fano,
    cubic_hodge,
    e_polynomial,
    euler,
    fano_class,
    fano_hodge,
    fano_psi,
    fano_table,
    hasse_weil,
    hilb2_class,
    lines,
    point_count,
    projective_space,
    rational_defect,
    real_euler,
    sym2,
    sym_power,
    verify,
    zeta,
)

__all__ = [
    "Class",
    "InputError",
    "IntegralityError",
    "ParseError",
    "chi_fano",
    "chi_real_fano",
    "cubic_hodge",
    "e_polynomial",
    "euler",
    "fano_class",
    "fano_hodge",
    "fano_psi",
    "fano_table",
    "hasse_weil",
    "hilb2_class",
    "lines",
    "point_count",
    "projective_space",
    "rational_defect",
    "real_euler",
    "sym2",
    "sym_power",
    "verify",
    "zeta",
]
