"""Detecting polynomials of the form constant * square."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, Optional, Sequence, Tuple

from .poly import MultiPoly, exact_divide


@dataclass(frozen=True)
class SquareDecomposition:
    """``p * denominator == numerator * root**2``.

    ``numerator`` and ``denominator`` involve only the parameter (non-main)
    variables, so together they form the constant in front of the square.
    """

    numerator: MultiPoly
    denominator: MultiPoly
    root: MultiPoly

    def holds_for(self, p: MultiPoly) -> bool:
        return p * self.denominator == self.numerator * self.root ** 2


def _mono_sub(a: Tuple[int, ...], b: Tuple[int, ...]) -> Optional[Tuple[int, ...]]:
    out = tuple(x - y for x, y in zip(a, b))
    return None if any(e < 0 for e in out) else out


def _mono_add(a, b):
    return tuple(x + y for x, y in zip(a, b))


def is_square_up_to_constant(p: MultiPoly, main: Optional[Sequence[str]] = None) -> Optional[SquareDecomposition]:
    """Write ``p = lambda * Q**2`` with ``lambda`` free of the ``main`` variables.

    Coefficients are polynomials in the remaining (parameter) variables. With
    ``lambda`` the lex-leading coefficient of ``p``, the square root of
    ``lambda * p`` is extracted term by term from the top, dividing only by
    ``2 * lambda``; any inexact step means no such decomposition exists.
    The result is checked by re-expansion before it is returned.
    """
    main = tuple(main) if main is not None else p.variables
    params = tuple(v for v in p.variables if v not in main)
    one = MultiPoly.constant(1, params)
    if p.is_zero():
        return SquareDecomposition(one, one, MultiPoly.zero(p.variables))
    coeffs = p.coefficients_in(main)
    lead = max(coeffs)
    if any(e % 2 for e in lead):
        return None
    lam = coeffs[lead]
    half = tuple(e // 2 for e in lead)

    # residual D = lam*p - S^2, kept as main-monomial -> param polynomial
    resid: Dict[Tuple[int, ...], MultiPoly] = {m: lam * c for m, c in coeffs.items()}
    root: Dict[Tuple[int, ...], MultiPoly] = {}

    def add_root_term(m, c):
        # D -= 2*c*m*S + c^2*m^2
        for rm, rc in root.items():
            k = _mono_add(m, rm)
            resid[k] = resid.get(k, 0) - 2 * c * rc
        k = _mono_add(m, m)
        resid[k] = resid.get(k, 0) - c * c
        root[m] = c
        for k in [k for k, v in resid.items() if v.is_zero()]:
            del resid[k]

    add_root_term(half, lam)
    last = half
    two_lam = 2 * lam
    while resid:
        k = max(resid)
        m = _mono_sub(k, half)
        if m is None or not m < last:
            return None
        c = exact_divide(resid[k], two_lam)
        if c is None:
            return None
        add_root_term(m, c.with_variables(params))
        last = m

    s = MultiPoly.from_coefficients(main, root).with_variables(p.variables)
    lam_full = lam.with_variables(p.variables)
    q = exact_divide(s, lam_full)
    if q is not None:
        out = SquareDecomposition(lam_full, MultiPoly.constant(1, p.variables), q)
    else:
        out = SquareDecomposition(MultiPoly.constant(1, p.variables), lam_full, s)
    if not out.holds_for(p):
        return None
    return out
