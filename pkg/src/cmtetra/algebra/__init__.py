"""Exact scalar, polynomial and linear-algebra kernel."""
from .linalg import PolyMatrix, det_poly_matrix, det_rational, kernel_basis, mat_vec, rank
from .poly import MultiPoly, exact_divide, format_poly, parse_poly, polys
from .rational import (
    GaussianRational,
    Rational,
    as_rational,
    format_rational,
    is_perfect_square_rational,
    parse_gaussian,
    parse_rational,
)
from .sqrt import SquareDecomposition, is_square_up_to_constant


def substitute(p: MultiPoly, assignment, strict: bool = True) -> MultiPoly:
    return p.substitute(assignment, strict=strict)


def partial_derivative(p: MultiPoly, v: str) -> MultiPoly:
    return p.partial_derivative(v)


__all__ = [
    "GaussianRational", "MultiPoly", "PolyMatrix", "Rational", "SquareDecomposition",
    "as_rational", "det_poly_matrix", "det_rational", "exact_divide", "format_poly",
    "format_rational", "is_perfect_square_rational", "is_square_up_to_constant",
    "kernel_basis", "mat_vec", "parse_gaussian", "parse_poly", "parse_rational",
    "partial_derivative", "polys", "rank", "substitute",
]
