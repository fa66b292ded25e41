from __future__ import annotations

import random
from fractions import Fraction

import pytest

from cmtetra.algebra import polys
from cmtetra.cayley_menger import cm_eval
from cmtetra.verdict import CORRECTED, PASS
from cmtetra.weddle import (
    SSTAR_VARS,
    XS,
    ZS,
    DegenerateConfiguration,
    SixPointConfig,
    central_identity_at,
    central_identity_check,
    coefficient_rank,
    corrected_quadrics,
    jacobian_weddle_check,
    pencil_determinant,
    printed_span_report,
    proportionality,
    q_vector,
    q_vector_check,
    quadric_basis_check,
    quadric_basis_through,
    random_configuration,
    random_configurations_check,
    s_star_system,
    symmetroid_quartic,
    tetrahedroid_weddle,
    tetrahedroid_weddle_check,
    weddle_determinant,
)


@pytest.fixture(scope="module")
def configs():
    rng = random.Random(0)
    return [random_configuration(rng) for _ in range(20)]


def _at(form, pt):
    return form.evaluate(dict(zip(XS, pt)))


def test_quadric_space_is_four_dimensional(configs):
    for cfg in configs:
        basis = quadric_basis_through(cfg)
        assert coefficient_rank(basis.forms) == 4
        assert all(_at(f, pt) == 0 for f in basis.forms for pt in cfg.points)


def test_jacobian_proportional_to_weddle(configs):
    for cfg in configs:
        ratio = jacobian_weddle_check(cfg)
        assert ratio is not None and ratio != 0


def test_weddle_passes_through_the_six_points(configs):
    for cfg in configs[:5]:
        W = weddle_determinant(cfg.p, cfg.q)
        assert all(_at(W, pt) == 0 for pt in cfg.points)


def test_weddle_rescaling_changes_only_a_scalar(configs):
    cfg = configs[0]
    W = weddle_determinant(cfg.p, cfg.q)
    W2 = weddle_determinant(tuple(3 * x for x in cfg.p), tuple(-2 * x for x in cfg.q))
    assert proportionality(W2, W) not in (None, 0)


def test_coplanar_configuration_rejected():
    with pytest.raises(DegenerateConfiguration):
        SixPointConfig((1, 1, 0, 0), (1, 2, 3, 4)).validate()


def test_symmetroid_is_a_quartic_and_matches_pencil(configs):
    basis = quadric_basis_through(configs[0])
    quartic = symmetroid_quartic(basis)
    assert quartic.is_homogeneous() and quartic.total_degree() == 4
    rng = random.Random(5)
    for _ in range(50):
        z = [Fraction(rng.randint(-5, 5), rng.randint(1, 3)) for _ in range(4)]
        assert quartic.evaluate(dict(zip(ZS, z))) == pencil_determinant(basis, z)


def test_printed_quadrics_span_report(configs):
    reports = [printed_span_report(cfg) for cfg in configs]
    s1 = sum(r[0]["in_span"] for r in reports)
    s2 = sum(r[1]["in_span"] for r in reports)
    assert (s1, s2) == (20, 20)
    v = random_configurations_check(20, 0)
    assert v.details["printed_in_span"] == {"S1": 20, "S2": 20, "S3": 0, "S4": 0}


def test_corrected_quadrics_form_a_basis(configs):
    for cfg in configs:
        forms = corrected_quadrics(cfg.p, cfg.q)
        assert coefficient_rank(list(forms)) == 4
        assert all(_at(f, pt) == 0 for f in forms for pt in cfg.points)
    assert quadric_basis_check().status == CORRECTED


def test_q_vector_products():
    assert tuple(q_vector(3, 4, 5)) == (8, -72, -12, 48)
    assert q_vector_check().status == PASS


def test_tetrahedroid_configuration_symbolic_proportionality():
    assert tetrahedroid_weddle_check().status == PASS


def test_s_star_pinned_values():
    s = s_star_system(3, 4, 5)
    assert tuple(s.evaluate((1, 2, 3, 4))) == (-20, -28, -32, -60)
    assert s.evaluate((1, 1, 1, 1))[0] == 0


def test_s_star_x1x3_coefficient():
    a, b, c = polys("a", "b", "c")
    s = s_star_system()
    total = sum((f.coefficients_in(SSTAR_VARS).get((1, 0, 1, 0)) for f in s.forms[2:]), start=0 * a)
    assert total == 2 * (a + b + c)


def test_central_identity_symbolic():
    v = central_identity_check()
    assert v.status == PASS and v.residual_terms == 0


def test_central_identity_pinned_point():
    lhs, rhs = central_identity_at(3, 4, 5, (1, 2, 3, 4))
    assert lhs == rhs == -2890137600


def test_central_identity_random_points():
    rng = random.Random(11)
    for _ in range(100):
        a, b, c = (Fraction(rng.randint(-9, 9), rng.randint(1, 4)) for _ in range(3))
        X = [Fraction(rng.randint(-9, 9), rng.randint(1, 4)) for _ in range(4)]
        lhs, rhs = central_identity_at(a, b, c, X)
        assert lhs == rhs


def test_bridge_to_negative_cm():
    rng = random.Random(2)
    checked = 0
    while checked < 30:
        a, b, c = (rng.randint(1, 9) for _ in range(3))
        X = [rng.randint(-9, 9) for _ in range(4)]
        s1, s2, s3, s4 = s_star_system(a, b, c).evaluate(X)
        if s1 == 0:
            continue
        W = tetrahedroid_weddle(a, b, c).evaluate(dict(zip(SSTAR_VARS, X)))
        d = (a, b, Fraction(s2) / s1, c, Fraction(s3) / s1, Fraction(s4) / s1)
        assert -cm_eval(d) == (Fraction(W) / (c * s1 * s1)) ** 2
        checked += 1
