"""Identity verification suites, run in a fixed order.

Order: cm, tetrahedroid, weddle, points. Sampled checks draw from
``random.Random(seed)`` (Mersenne Twister), so a given seed reproduces them.
"""
from __future__ import annotations

import time
from typing import Callable, Dict, List

from . import cayley_menger as cmm
from . import points, tetrahedroid, weddle
from .verdict import FAIL, Verdict

SUITES = ("cm", "tetrahedroid", "weddle", "points")


def _timed_list(fn: Callable[[], List[Verdict]]) -> List[Verdict]:
    t0 = time.perf_counter()
    out = fn()
    ms = int((time.perf_counter() - t0) * 1000)
    for v in out:
        v.elapsed_ms = v.elapsed_ms or ms // max(len(out), 1)
    return out


def _timed(fn: Callable[[], Verdict]) -> Verdict:
    t0 = time.perf_counter()
    v = fn()
    v.elapsed_ms = v.elapsed_ms or int((time.perf_counter() - t0) * 1000)
    return v


def cm_suite(seed: int = 0) -> List[Verdict]:
    return [_timed(f) for f in (
        cmm.cm_expansion_check,
        cmm.heron_forms_check,
        cmm.neiss_identity_check,
        cmm.d12_minor_check,
        cmm.ankum_check,
        cmm.schulz_linear_check,
        cmm.gamma_b_consistency_check,
    )]


def tetrahedroid_suite(seed: int = 0) -> List[Verdict]:
    cfg = tetrahedroid.configuration()
    out = [
        _timed(lambda: tetrahedroid.verify_nodes(cfg)),
        _timed(lambda: tetrahedroid.verify_tropes(cfg)),
        _timed(lambda: tetrahedroid.incidence_check(cfg)),
        _timed(tetrahedroid.homogenization_check),
    ]
    out += _timed_list(tetrahedroid.duality_scaling_checks)
    out += _timed_list(tetrahedroid.irrational_form_check)
    return out


def weddle_suite(seed: int = 0) -> List[Verdict]:
    return [
        _timed(weddle.q_vector_check),
        _timed(weddle.central_identity_check),
        _timed(weddle.tetrahedroid_weddle_check),
        _timed(lambda: weddle.random_configurations_check(20, seed)),
        _timed(lambda: weddle.quadric_basis_check(20, seed)),
    ]


def points_suite(seed: int = 0) -> List[Verdict]:
    return [
        _timed(lambda: points.weddle_points_check(100, seed)),
        _timed(points.descent_check),
        _timed(lambda: points.heron_points_check(50, seed)),
        _timed(points.heron_cubic_check),
    ]


_RUNNERS: Dict[str, Callable[[int], List[Verdict]]] = {
    "cm": cm_suite,
    "tetrahedroid": tetrahedroid_suite,
    "weddle": weddle_suite,
    "points": points_suite,
}


def run_verify_suite(name: str, seed: int = 0) -> List[Verdict]:
    if name == "all":
        return [v for s in SUITES for v in _RUNNERS[s](seed)]
    if name not in _RUNNERS:
        raise ValueError(f"unknown suite {name!r}; choose from {', '.join(SUITES + ('all',))}")
    return _RUNNERS[name](seed)


def any_failed(verdicts: List[Verdict]) -> bool:
    return any(v.status == FAIL for v in verdicts)
