"""Determinants and kernels over exact entries."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import List, Sequence, Tuple

from .poly import MultiPoly
from .rational import as_rational


@dataclass(frozen=True)
class PolyMatrix:
    """Rectangular matrix of polynomials sharing one variable tuple."""

    entries: Tuple[Tuple[MultiPoly, ...], ...]

    def __init__(self, rows: Sequence[Sequence]):
        rows = [list(r) for r in rows]
        if not rows or not rows[0]:
            raise ValueError("matrix must have at least one row and one column")
        width = len(rows[0])
        if any(len(r) != width for r in rows):
            raise ValueError("ragged matrix")
        variables: Tuple[str, ...] = ()
        for r in rows:
            for x in r:
                if isinstance(x, MultiPoly):
                    variables += tuple(v for v in x.variables if v not in variables)
        norm = []
        for r in rows:
            norm.append(tuple(
                x.with_variables(variables) if isinstance(x, MultiPoly) else MultiPoly.constant(x, variables)
                for x in r))
        object.__setattr__(self, "entries", tuple(norm))

    @property
    def rows(self) -> int:
        return len(self.entries)

    @property
    def cols(self) -> int:
        return len(self.entries[0])

    @property
    def variables(self) -> Tuple[str, ...]:
        return self.entries[0][0].variables

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]


def det_poly_matrix(m: PolyMatrix) -> MultiPoly:
    """Laplace expansion along rows, memoizing minors by their column set.

    Costs O(n * 2^n) polynomial products, fine for the n <= 6 matrices used here
    and free of any polynomial division.
    """
    if not isinstance(m, PolyMatrix):
        m = PolyMatrix(m)
    n = m.rows
    if n != m.cols:
        raise ValueError(f"determinant of non-square {m.rows}x{m.cols} matrix")
    zero = MultiPoly.zero(m.variables)
    memo = {}
    full = (1 << n) - 1

    # minor(cols) = det of the bottom |cols| rows restricted to cols
    def minor(cols: int) -> MultiPoly:
        if cols == 0:
            return MultiPoly.constant(1, m.variables)
        hit = memo.get(cols)
        if hit is not None:
            return hit
        row = n - bin(cols).count("1")
        acc = zero
        sign = 1
        for j in range(n):
            bit = 1 << j
            if cols & bit:
                a = m.entries[row][j]
                if a:
                    sub = minor(cols ^ bit)
                    if sub:
                        acc = acc + a * sub if sign > 0 else acc - a * sub
                sign = -sign
        memo[cols] = acc
        return acc

    return minor(full)


def _as_fraction_rows(m) -> List[List[Fraction]]:
    rows = [[as_rational(x) for x in r] for r in m]
    if rows and any(len(r) != len(rows[0]) for r in rows):
        raise ValueError("ragged matrix")
    return rows


def det_rational(m) -> Fraction:
    """Fraction-free (Bareiss) determinant of a square rational matrix."""
    rows = _as_fraction_rows(m)
    n = len(rows)
    if any(len(r) != n for r in rows):
        raise ValueError("determinant of non-square matrix")
    if n == 0:
        return Fraction(1)
    # clear denominators so Bareiss runs on integers
    scale = Fraction(1)
    a = []
    for r in rows:
        l = 1
        for x in r:
            l = l * x.denominator // _gcd(l, x.denominator)
        scale /= l
        a.append([int(x * l) for x in r])
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return Fraction(0)
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1] * scale


def _gcd(x: int, y: int) -> int:
    while y:
        x, y = y, x % y
    return x


def _echelon(rows: List[List[Fraction]]) -> Tuple[List[List[int]], List[int]]:
    """Fraction-free row echelon form with first-nonzero pivoting.

    Returns the integer echelon rows (one per pivot) and the pivot columns.
    """
    a = []
    for r in rows:
        l = 1
        for x in r:
            l = l * x.denominator // _gcd(l, x.denominator)
        a.append([int(x * l) for x in r])
    ncols = len(a[0]) if a else 0
    pivots: List[int] = []
    r = 0
    prev = 1
    for c in range(ncols):
        p = next((i for i in range(r, len(a)) if a[i][c] != 0), None)
        if p is None:
            continue
        a[r], a[p] = a[p], a[r]
        for i in range(r + 1, len(a)):
            for j in range(c + 1, ncols):
                a[i][j] = (a[i][j] * a[r][c] - a[i][c] * a[r][j]) // prev
            a[i][c] = 0
        prev = a[r][c]
        pivots.append(c)
        r += 1
        if r == len(a):
            break
    return a[:r], pivots


def rank(m) -> int:
    rows = _as_fraction_rows(m)
    if not rows:
        return 0
    return len(_echelon(rows)[1])


def kernel_basis(m) -> List[List[Fraction]]:
    """Basis of the right kernel ``{v : m v = 0}``, one vector per free column.

    Each vector has a 1 in its free column and 0 in the other free columns.
    """
    rows = _as_fraction_rows(m)
    if not rows:
        return []
    ncols = len(rows[0])
    ech, pivots = _echelon(rows)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for i in range(len(pivots) - 1, -1, -1):
            c = pivots[i]
            s = sum((ech[i][j] * v[j] for j in range(c + 1, ncols) if ech[i][j]), Fraction(0))
            v[c] = -s / ech[i][c]
        basis.append(v)
    return basis


def mat_vec(m, v) -> List[Fraction]:
    return [sum((as_rational(x) * y for x, y in zip(r, v)), Fraction(0)) for r in m]
