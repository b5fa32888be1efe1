"""Lyapunov exponents of renewal equations via collocated evolution operators."""

from ._relyap import (
    CoverageError,
    SolverFailure,
    AssemblyError,
    NumericError,
    ConfigError,
    autonomous_operator,
    barycentric_weights,
    characteristic_root,
    cheb_extrema,
    cheb_zeros,
    diagram,
    equilibria,
    interp_eval,
    le_from_eigs,
    lyapunov,
    operator_eigs,
    qr_pos,
    quad_cc,
    random_unitary,
    solve_quadratic,
)

__all__ = [
    "CoverageError",
    "SolverFailure",
    "AssemblyError",
    "NumericError",
    "ConfigError",
    "autonomous_operator",
    "barycentric_weights",
    "characteristic_root",
    "cheb_extrema",
    "cheb_zeros",
    "diagram",
    "equilibria",
    "interp_eval",
    "le_from_eigs",
    "lyapunov",
    "operator_eigs",
    "qr_pos",
    "quad_cc",
    "random_unitary",
    "solve_quadratic",
]

__version__ = "0.1.0"
