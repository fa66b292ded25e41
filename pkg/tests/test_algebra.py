from __future__ import annotations

import random
from fractions import Fraction
from itertools import permutations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cmtetra.algebra import (
    GaussianRational,
    MultiPoly,
    PolyMatrix,
    as_rational,
    det_poly_matrix,
    det_rational,
    exact_divide,
    format_poly,
    format_rational,
    is_perfect_square_rational,
    is_square_up_to_constant,
    kernel_basis,
    parse_gaussian,
    parse_poly,
    parse_rational,
    partial_derivative,
    polys,
    rank,
    substitute,
)
from cmtetra.cayley_menger import cm_matrix, heron_matrix, heron_polynomial

VARS = ("x", "y", "z")


def perm_sign(p) -> int:
    sign, seen = 1, set()
    for i in range(len(p)):
        if i in seen:
            continue
        j, length = i, 0
        while j not in seen:
            seen.add(j)
            j = p[j]
            length += 1
        sign *= (-1) ** (length - 1)
    return sign


def leibniz_det(rows):
    """Permutation-sum determinant: the naive oracle."""
    n = len(rows)
    total = 0
    for p in permutations(range(n)):
        term = perm_sign(p)
        for i in range(n):
            term = term * rows[i][p[i]]
        total = total + term
    return total


small_rational = st.fractions(min_value=-5, max_value=5, max_denominator=6)


@st.composite
def small_polys(draw, max_terms=4):
    x, y, z = polys(*VARS)
    gens = [MultiPoly.constant(1, VARS), x, y, z]
    out = MultiPoly.zero(VARS)
    for _ in range(draw(st.integers(0, max_terms))):
        mono = MultiPoly.constant(1, VARS)
        for _ in range(draw(st.integers(0, 3))):
            mono = mono * gens[draw(st.integers(0, 3))]
        out = out + draw(small_rational) * mono
    return out


# -- rationals --------------------------------------------------------------------

def test_rational_round_trip():
    for text in ("0", "7", "-3/4", "10/4"):
        assert parse_rational(format_rational(parse_rational(text))) == parse_rational(text)
    assert format_rational(Fraction(10, 4)) == "5/2"


@pytest.mark.parametrize("bad", ["", "1.5", "1e3", "x", "1/0"])
def test_rational_rejects_inexact_or_malformed(bad):
    with pytest.raises((ValueError, ZeroDivisionError)):
        parse_rational(bad)


def test_floats_never_become_rationals():
    with pytest.raises(TypeError):
        as_rational(0.5)


@pytest.mark.parametrize("value,root", [(576, 24), (Fraction(4, 9), Fraction(2, 3)), (0, 0)])
def test_perfect_square(value, root):
    assert is_perfect_square_rational(value) == root


@pytest.mark.parametrize("value", [2, Fraction(2, 9), -4])
def test_not_a_square(value):
    assert is_perfect_square_rational(value) is None


def test_gaussian_arithmetic():
    i = GaussianRational.i()
    assert i * i == GaussianRational(-1, 0)
    z = GaussianRational(Fraction(1, 2), -3)
    assert z * z.conjugate() == GaussianRational(z.norm(), 0)
    assert parse_gaussian(str(z)) == z


@given(small_rational, small_rational, small_rational, small_rational)
def test_gaussian_norm_is_multiplicative(a, b, c, d):
    u, v = GaussianRational(a, b), GaussianRational(c, d)
    assert (u * v).norm() == u.norm() * v.norm()


# -- polynomials --------------------------------------------------------------------

@given(small_polys(), small_polys(), small_polys())
@settings(max_examples=60, deadline=None)
def test_ring_laws(p, q, r):
    assert p + q == q + p
    assert p * q == q * p
    assert (p * q) * r == p * (q * r)
    assert p * (q + r) == p * q + p * r
    assert p - p == MultiPoly.zero(VARS)


@given(small_polys(), small_polys(), small_rational, small_rational, small_rational)
@settings(max_examples=60, deadline=None)
def test_evaluation_is_a_ring_map(p, q, a, b, c):
    pt = dict(zip(VARS, (a, b, c)))
    assert (p * q).evaluate(pt) == p.evaluate(pt) * q.evaluate(pt)
    assert (p + q).evaluate(pt) == p.evaluate(pt) + q.evaluate(pt)


@given(small_polys(), small_polys())
@settings(max_examples=60, deadline=None)
def test_leibniz_rule(p, q):
    for v in VARS:
        assert partial_derivative(p * q, v) == partial_derivative(p, v) * q + p * partial_derivative(q, v)


@given(small_polys(), small_polys())
@settings(max_examples=40, deadline=None)
def test_exact_divide_recovers_factor(p, q):
    if q.is_zero():
        return
    assert exact_divide(p * q, q) == p


@given(small_polys())
@settings(max_examples=40, deadline=None)
def test_format_parse_round_trip(p):
    assert parse_poly(format_poly(p), VARS) == p


def test_substitute_examples():
    x, y = polys("x", "y")
    assert substitute(x ** 2 + y, {"x": 1, "y": 2}).evaluate({}) == 3
    assert substitute(x, {"x": x}) == x
    H = heron_polynomial()
    assert substitute(H, {"a": 3, "b": 4, "c": 5}).evaluate({}) == 576


def test_substitute_strict_flags_missing_variables():
    x, y = polys("x", "y")
    with pytest.raises(KeyError):
        substitute(x + y, {"x": 1})


def test_partial_derivative_examples():
    x, y = polys("x", "y")
    assert partial_derivative(x ** 2 * y, "x") == 2 * x * y
    dH = partial_derivative(heron_polynomial(), "a")
    assert dH.evaluate({"a": 3, "b": 4, "c": 5}) == 384


def test_partial_derivative_against_finite_differences():
    # H is a quartic in a, so the symmetric 5-point stencil is exact
    H = heron_polynomial()
    f = lambda a: H.evaluate({"a": a, "b": 4, "c": 5})
    h = Fraction(1, 10)
    stencil = (-f(3 + 2 * h) + 8 * f(3 + h) - 8 * f(3 - h) + f(3 - 2 * h)) / (12 * h)
    assert stencil == 384


def test_homogeneity_and_degrees():
    x, y = polys("x", "y")
    p = x ** 3 * y + 2 * x * y ** 3
    assert p.is_homogeneous() and p.total_degree() == 4
    assert p.degree("y") == 3
    assert not (p + x).is_homogeneous()


# -- square roots -----------------------------------------------------------------

def test_square_up_to_constant_examples():
    x, y = polys("x", "y")
    d = is_square_up_to_constant((x + y) ** 2)
    assert d is not None and d.root in (x + y, -(x + y)) and d.holds_for((x + y) ** 2)
    p = 3 * (x + 2 * y) ** 2
    d = is_square_up_to_constant(p)
    assert d is not None and d.holds_for(p)
    assert d.numerator.evaluate({}) / d.denominator.evaluate({}) == 3
    assert d.root == x + 2 * y
    assert is_square_up_to_constant(x ** 2 + y ** 2) is None


@given(small_polys(), st.integers(1, 7))
@settings(max_examples=40, deadline=None)
def test_scaled_squares_are_recognised(p, k):
    if p.is_zero():
        return
    d = is_square_up_to_constant(k * p * p)
    assert d is not None and d.holds_for(k * p * p)


# -- linear algebra ----------------------------------------------------------------

def test_determinant_examples():
    x, = polys("x")
    one = MultiPoly.constant(1, ("x",))
    assert det_poly_matrix(PolyMatrix([[x, one], [one, x]])) == x ** 2 - 1
    assert det_rational(cm_matrix(*[1] * 6)) == 4
    assert det_rational(heron_matrix(3, 4, 5)) == -576


def test_determinant_matches_permutation_sum_oracle():
    rng = random.Random(0)
    cases = 0
    for n in (1, 2, 3, 4):
        for _ in range(30):
            rows = [[Fraction(rng.randint(-9, 9), rng.randint(1, 5)) for _ in range(n)] for _ in range(n)]
            assert det_rational(rows) == leibniz_det(rows)
            cases += 1
    assert cases >= 100


def test_polynomial_determinant_matches_oracle():
    rng = random.Random(1)
    x, y = polys("x", "y")
    gens = [x, y, MultiPoly.constant(1, ("x", "y"))]
    for n in (2, 3, 4):
        for _ in range(5):
            rows = [[rng.randint(-3, 3) * rng.choice(gens) + rng.randint(-2, 2) * rng.choice(gens)
                     for _ in range(n)] for _ in range(n)]
            assert det_poly_matrix(PolyMatrix(rows)) == leibniz_det(rows)


def test_non_square_determinant_rejected():
    x, = polys("x")
    with pytest.raises(ValueError):
        det_poly_matrix(PolyMatrix([[x, x]]))


def test_kernel_examples():
    assert len(kernel_basis([[0, 0, 0]])) == 3
    assert kernel_basis([[1, 0, 0], [0, 1, 0], [0, 0, 1]]) == []


@given(st.lists(st.lists(st.integers(-4, 4), min_size=5, max_size=5), min_size=1, max_size=4))
@settings(max_examples=60, deadline=None)
def test_rank_nullity(rows):
    basis = kernel_basis(rows)
    assert rank(rows) + len(basis) == 5
    for v in basis:
        assert all(sum(a * b for a, b in zip(r, v)) == 0 for r in rows)
