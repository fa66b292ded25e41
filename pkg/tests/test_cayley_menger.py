from __future__ import annotations

import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cmtetra.cayley_menger import (
    EDGE_VARS,
    FACES,
    EdgeTuple,
    NegativeLengthError,
    ankum_shift,
    cm_by_determinant,
    cm_eval,
    cm_expansion_check,
    cm_polynomial,
    d12_from_cm_minor,
    d12_polynomial,
    face_herons,
    heron_eval,
    heron_forms_check,
    heron_polynomial,
    heron_product_form,
    heron_quartic_form,
    neiss_identity_check,
    printed_schulz_A,
    realizability,
    relabel,
    schulz_A,
    schulz_linear_check,
    vertex_relabelings,
)
from cmtetra.verdict import CORRECTED, PASS

edge = st.fractions(min_value=0, max_value=20, max_denominator=7)
six_edges = st.tuples(*[edge] * 6)


def test_cm_has_22_unit_monomials():
    cm = cm_polynomial()
    assert len(cm) == 22
    assert {c for _, c in cm.terms()} == {1, -1}
    assert cm.is_homogeneous() and cm.total_degree() == 6
    assert cm_expansion_check().status == PASS


def test_cm_regular_and_rectangle():
    assert cm_eval((1,) * 6) == 2
    assert cm_polynomial().evaluate(dict(zip(EDGE_VARS, (1,) * 6))) == 2
    assert cm_eval((3, 5, 4, 4, 5, 3)) == 0


@given(six_edges)
@settings(max_examples=80, deadline=None)
def test_fast_form_matches_determinant_oracle(d):
    assert cm_eval(d) == cm_by_determinant(d)


@given(six_edges, st.fractions(min_value=-5, max_value=5, max_denominator=5))
@settings(max_examples=40, deadline=None)
def test_cm_scales_with_sixth_power(d, t):
    assert cm_eval(tuple(t * x for x in d)) == t ** 6 * cm_eval(d)


def test_cm_invariant_under_vertex_relabelings():
    perms = vertex_relabelings()
    assert len(set(perms)) == 24
    rng = random.Random(3)
    for _ in range(20):
        d = tuple(rng.randint(1, 30) for _ in range(6))
        assert {cm_eval(relabel(d, p)) for p in perms} == {cm_eval(d)}


@pytest.mark.parametrize("sides,h", [((3, 4, 5), 576), ((1, 1, 2), 0), ((1, 1, 1), 3)])
def test_heron_values(sides, h):
    assert heron_eval(*sides) == h


def test_heron_area_of_345():
    h = heron_eval(3, 4, 5)
    assert (4 * 6) ** 2 == h


def test_heron_three_forms_agree():
    assert heron_polynomial() == heron_quartic_form() == heron_product_form()
    assert heron_forms_check().status == PASS


def test_neiss_identity_symbolic():
    v = neiss_identity_check()
    assert v.status == PASS and v.residual_terms == 0


@pytest.mark.parametrize("d", [(3, 5, 4, 4, 5, 3), (1, 1, 1, 1, 1, 1), (2, 3, 7, 4, 8, 8)])
def test_neiss_numeric(d):
    h = face_herons(d)
    D = d12_polynomial().evaluate(dict(zip(EDGE_VARS, d)))
    assert h["123"] * h["124"] == D ** 2 + 4 * d[0] ** 2 * cm_eval(d)


def test_printed_d12_is_the_cm0_minor():
    assert d12_polynomial() == d12_from_cm_minor()


def test_ankum_shift_is_quadratic_symbolically():
    sq = ankum_shift()
    assert all(c.is_zero() for c in sq.cm_high_coefficients)
    assert all(c.is_zero() for c in sq.d12_high_coefficients)


@given(st.tuples(*[st.integers(1, 25)] * 6), st.integers(-6, 6))
@settings(max_examples=40, deadline=None)
def test_shift_quadratic_matches_direct_evaluation(d, s):
    sq = ankum_shift(d)
    shifted = (d[0], d[1], d[2] + s, d[3], d[4] + s, d[5] + s)
    assert sq.alpha * s * s + sq.beta * s + sq.gamma == cm_by_determinant(shifted)


def test_schulz_coefficient_is_linear_in_shifted_edges():
    sq = ankum_shift()
    assert sq.A == schulz_A()
    assert sq.A.total_degree() == 3
    assert printed_schulz_A().total_degree() == 4
    v = schulz_linear_check()
    assert v.status == CORRECTED and v.details["printed_residual_terms"] > 0


def test_alpha_counterexample_is_realizable():
    # leading coefficient from second differences of the determinant oracle
    d = (25, 29, 26, 9, 10, 15)
    f = lambda s: cm_by_determinant((d[0], d[1], d[2] + s, d[3], d[4] + s, d[5] + s))
    alpha = (f(1) - 2 * f(0) + f(-1)) / 2
    assert alpha == ankum_shift(d).alpha == -4369
    assert realizability(d).realizable


@pytest.mark.parametrize("d,realizable,degenerate,cm,volume", [
    ((1, 1, 1, 1, 1, 1), True, False, 2, None),
    ((3, 5, 4, 4, 5, 3), False, True, 0, 0),
    ((1, 1, 1, 1, 1, 3), False, False, None, None),
    ((2, 3, 3, 3, 3, 4), True, False, 1024, Fraction(8, 3)),
])
def test_realizability(d, realizable, degenerate, cm, volume):
    rep = realizability(d)
    assert rep.realizable is realizable and rep.degenerate is degenerate
    if cm is not None:
        assert rep.cm_value == cm
    if realizable or degenerate:
        assert rep.volume == volume


def test_face_134_violation_detected():
    h = face_herons((1, 1, 1, 1, 1, 3))
    assert h["134"] < 0


def test_negative_lengths_rejected():
    with pytest.raises(NegativeLengthError):
        realizability((1, 1, -1, 1, 1, 1))


def test_edge_tuple_faces_and_serialisation():
    d = EdgeTuple(3, 4, Fraction(7, 5), 5, Fraction(8, 5), 3)
    assert d.serialize() == ["3", "4", "7/5", "5", "8/5", "3"]
    assert set(FACES) == {"123", "124", "134", "234"}
