from __future__ import annotations

import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cmtetra.algebra import GaussianRational
from cmtetra.cayley_menger import cm_by_determinant, heron_eval
from cmtetra.points import (
    COLLINEAR_SEED,
    SQUARE_SEED,
    DegenerateTriangle,
    ParallelSlope,
    PointAtInfinity,
    classify_faces,
    conic_descent,
    descent_family,
    gaussian_point,
    heron_cubic_check,
    heron_cubic_residuals,
    heron_point,
    is_norm_from_qi,
    random_weddle_inputs,
    shift_quadratic_at,
    square_class,
    squarefree_part,
    two_squares,
    weddle_point,
)
from cmtetra.tetrahedroid import DegenerateParameters
from cmtetra.verdict import CORRECTED


def test_weddle_point_fixture():
    p = weddle_point(3, 4, 5, (1, 2, 3, 4))
    assert p.edges.serialize() == ["3", "4", "7/5", "5", "8/5", "3"]
    assert p.y == Fraction(672, 25) and p.sign == -1
    assert p.y ** 2 == -cm_by_determinant(p.edges)


def test_gaussian_point_fixture():
    p = gaussian_point(3, 4, 5, (1, 2, 3, 4))
    assert p.y == GaussianRational(0, Fraction(672, 25))
    assert p.y * p.y == GaussianRational(cm_by_determinant(p.edges), 0)
    assert p.y.norm() == abs(cm_by_determinant(p.edges))


def test_weddle_points_sampled():
    rng = random.Random(0)
    for _ in range(100):
        a, b, c, X = random_weddle_inputs(rng)
        p = weddle_point(a, b, c, X)
        assert p.y ** 2 + cm_by_determinant(p.edges) == 0


def test_weddle_point_errors():
    with pytest.raises(DegenerateParameters):
        weddle_point(3, 4, 0, (1, 2, 3, 4))
    with pytest.raises(PointAtInfinity):
        weddle_point(3, 4, 5, (1, 1, 1, 1))


def test_descent_from_collinear_seed_returns_the_seed():
    # beta = 0 and y0 = 0 at every vertex: the seed is a singular point of the conic
    for v in (1, 2, 3, 4):
        alpha, beta, gamma = shift_quadratic_at(COLLINEAR_SEED.edges, v)
        assert beta == 0 and gamma == 0 and alpha in (0, -16)
    assert conic_descent(COLLINEAR_SEED, 1) == COLLINEAR_SEED


def test_descent_from_square_seed():
    family = descent_family(SQUARE_SEED, range(1, 101))
    assert len(family) == 100
    for p in family:
        assert p.y ** 2 == cm_by_determinant(p.edges)


def test_descent_pinned_value():
    p = conic_descent(SQUARE_SEED, 3)
    assert p.edges.serialize() == ["2", "3", "-267/103", "3", "-267/103", "-164/103"]
    assert p.y == Fraction(1568, 103)


def test_descent_slope_through_the_seed_gives_the_seed():
    alpha, beta, gamma = shift_quadratic_at(SQUARE_SEED.edges)
    y0 = SQUARE_SEED.y
    t = beta / (2 * y0)  # s = 0
    assert conic_descent(SQUARE_SEED, t) == SQUARE_SEED


@given(st.fractions(min_value=-20, max_value=20, max_denominator=9))
@settings(max_examples=50, deadline=None)
def test_descent_is_reversible(t):
    try:
        p = conic_descent(SQUARE_SEED, t)
    except ParallelSlope:
        return
    # the same line read from the new point meets the conic again at the seed
    assert conic_descent(p, t) == SQUARE_SEED


def test_parallel_slope_rejected():
    # the square seed has alpha = 112; the collinear seed has alpha = 0 at vertex 4
    with pytest.raises(ParallelSlope):
        conic_descent(COLLINEAR_SEED, 0)


def test_descent_needs_plus_sign():
    with pytest.raises(ValueError):
        conic_descent(weddle_point(3, 4, 5, (1, 2, 3, 4)), 1)


def test_heron_fixture():
    h = heron_point(Fraction(1, 2), 1)
    assert (h.U, h.Z) == (Fraction(1, 6), Fraction(1, 6))
    assert (h.a, h.b, h.c) == (Fraction(5, 12), Fraction(1, 4), Fraction(1, 3))
    assert heron_eval(h.a, h.b, h.c) == Fraction(1, 36) == h.Y ** 2


def test_heron_zero_side_rejected():
    with pytest.raises(DegenerateTriangle):
        heron_point(1, 2)  # V = 1 forces U = 0


def test_heron_sampled():
    rng = random.Random(0)
    made = 0
    while made < 50:
        V = Fraction(rng.randint(1, 99), rng.randint(1, 99))
        t = Fraction(rng.randint(-99, 99), rng.randint(1, 99))
        try:
            h = heron_point(V, t)
        except DegenerateTriangle:
            continue
        assert h.Y ** 2 == heron_eval(h.a, h.b, h.c)
        made += 1


def test_heron_cubic_reading():
    corrected, literal = heron_cubic_residuals()
    assert corrected.is_zero() and not literal.is_zero()
    assert heron_cubic_check().status == CORRECTED


@pytest.mark.parametrize("x,rep", [(576, 1), (Fraction(3, 4), 3), (-8, -2), (Fraction(2, 3), 6), (45, 5)])
def test_square_classes(x, rep):
    assert square_class(x).representative == rep


def test_square_class_of_zero_rejected():
    with pytest.raises(ValueError):
        square_class(0)


@given(st.integers(1, 10 ** 6), st.integers(1, 1000))
@settings(max_examples=60, deadline=None)
def test_square_class_ignores_squares(n, k):
    assert squarefree_part(n * k * k) == squarefree_part(n)


def test_norm_examples():
    assert is_norm_from_qi(5) and not is_norm_from_qi(3)
    assert two_squares(5) == (1, 2)
    assert not is_norm_from_qi(-1)


def test_norm_test_matches_two_squares_oracle():
    # for integers, a rational representation exists iff an integer one does
    for n in range(1, 2000):
        assert is_norm_from_qi(n) == (two_squares(n) is not None), n


def test_classify_rectangle():
    r = classify_faces((3, 5, 4, 4, 5, 3))
    assert r.cm == 0
    assert {c.representative for c in r.classes.values()} == {1}
    assert all(r.equal.values())


def test_classify_regular():
    r = classify_faces((1,) * 6)
    assert set(r.heron.values()) == {3}
    assert all(r.equal.values()) and all(r.norm_ratio.values())


def test_classify_zero_face_rejected():
    with pytest.raises(ValueError):
        classify_faces((1, 2, 3, 1, 2, 1))
