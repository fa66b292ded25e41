from __future__ import annotations

from fractions import Fraction
from itertools import product
from math import isqrt

import pytest

from cmtetra.cayley_menger import cm_by_determinant, realizability
from cmtetra.points import classify_faces
from cmtetra.search import (
    CSV_HEADER,
    SearchOptions,
    _compiled,
    _kernel_py,
    canonical_form,
    search_integer_tetrahedra,
    to_csv,
    to_json,
)


def brute_force(max_edge, include_degenerate):
    out = []
    for d in product(range(1, max_edge + 1), repeat=6):
        rep = realizability(d)
        cm = int(rep.cm_value)
        if cm < 0 or isqrt(cm) ** 2 != cm:
            continue
        if rep.realizable or (include_degenerate and rep.degenerate):
            out.append(d)
    return out


def collinear_tuples(max_edge):
    """Edge tuples of four distinct integer points on a line, all distances <= max_edge."""
    out = set()
    for pos in product(range(max_edge + 1), repeat=4):
        if 0 not in pos or len(set(pos)) < 4:
            continue
        d = tuple(abs(pos[i] - pos[j]) for i, j in ((0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)))
        if max(d) <= max_edge:
            out.add(d)
    return out


@pytest.mark.parametrize("include_degenerate", [False, True])
def test_search_matches_brute_force(include_degenerate):
    hits = search_integer_tetrahedra(5, SearchOptions(include_degenerate=include_degenerate))
    assert [h.edges for h in hits] == brute_force(5, include_degenerate)


@pytest.mark.skipif(_compiled is None, reason="compiled kernel not built")
def test_kernels_agree():
    for d12 in range(1, 13):
        for deg in (False, True):
            assert _compiled.scan_shard(d12, 12, deg) == _kernel_py.scan_shard(d12, 12, deg)


def test_collinear_tuples_appear_with_degenerate_flag():
    hits = {h.edges for h in search_integer_tetrahedra(6, SearchOptions(include_degenerate=True))}
    assert collinear_tuples(6) <= hits
    assert (1, 2, 3, 1, 2, 1) in hits


def test_default_search_excludes_degenerate():
    hits = search_integer_tetrahedra(6)
    assert all(h.report.realizable and h.y > 0 for h in hits)


def test_equal_edges_never_hit():
    edges = {h.edges for h in search_integer_tetrahedra(8)}
    assert not any(len(set(e)) == 1 for e in edges)
    assert cm_by_determinant((1,) * 6) == 2


def test_hits_are_verified_and_sorted():
    hits = search_integer_tetrahedra(8)
    assert [h.edges for h in hits] == sorted(h.edges for h in hits)
    for h in hits:
        assert cm_by_determinant(h.edges) == h.y ** 2
        assert h.report.volume == Fraction(h.y, 12)


def test_output_independent_of_jobs():
    one = search_integer_tetrahedra(7, SearchOptions(include_degenerate=True, jobs=1))
    three = search_integer_tetrahedra(7, SearchOptions(include_degenerate=True, jobs=3))
    assert to_csv(one) == to_csv(three)
    assert to_json(one) == to_json(three)


def test_canonical_orbits():
    full = search_integer_tetrahedra(8)
    canon = search_integer_tetrahedra(8, SearchOptions(canonical=True))
    assert {h.edges for h in canon} == {canonical_form(h.edges) for h in full}
    assert all(canonical_form(h.edges) == h.edges for h in canon)


def test_square_hits_have_norm_ratios():
    for h in search_integer_tetrahedra(10):
        report = classify_faces(h.edges)
        assert all(report.norm_ratio.values()), h.edges


def test_csv_header():
    text = to_csv(search_integer_tetrahedra(3, SearchOptions(include_degenerate=True)))
    lines = text.splitlines()
    assert tuple(lines[0].split(",")) == CSV_HEADER
    assert "1,2,3,1,2,1,0,0,false,true" in lines


def test_invalid_bound():
    with pytest.raises(ValueError):
        search_integer_tetrahedra(0)
