"""Cayley-Menger and Heron polynomials, the two-face identities, realizability.

Edge tuples are always ordered ``(d12, d13, d14, d23, d24, d34)``; the
polynomials take edge *lengths* and square them internally, so CM has degree 6
and H degree 4.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .algebra import (
    MultiPoly,
    PolyMatrix,
    as_rational,
    det_poly_matrix,
    det_rational,
    format_rational,
    is_perfect_square_rational,
    polys,
)
from .verdict import FAIL, PASS, Verdict, residual_verdict, stamped

EDGE_VARS = ("d12", "d13", "d14", "d23", "d24", "d34")
EDGE_INDEX = {v: i for i, v in enumerate(EDGE_VARS)}

# face label -> positions of its sides in the edge tuple
FACES: Dict[str, Tuple[int, int, int]] = {
    "123": (0, 1, 3),
    "124": (0, 2, 4),
    "134": (1, 2, 5),
    "234": (3, 4, 5),
}


class NegativeLengthError(ValueError):
    pass


@dataclass(frozen=True)
class EdgeTuple:
    d12: Fraction
    d13: Fraction
    d14: Fraction
    d23: Fraction
    d24: Fraction
    d34: Fraction

    def __post_init__(self):
        for name in EDGE_VARS:
            val = getattr(self, name)
            if not _is_gaussian(val):
                object.__setattr__(self, name, as_rational(val))

    @classmethod
    def of(cls, values: Iterable) -> "EdgeTuple":
        values = list(values)
        if len(values) != 6:
            raise ValueError(f"an edge tuple has 6 entries, got {len(values)}")
        return cls(*values)

    def as_tuple(self) -> tuple:
        return (self.d12, self.d13, self.d14, self.d23, self.d24, self.d34)

    def __iter__(self):
        return iter(self.as_tuple())

    def __getitem__(self, i):
        return self.as_tuple()[i]

    def face(self, label: str) -> "FaceTriple":
        return FaceTriple(label, tuple(self[i] for i in FACES[label]))

    def faces(self) -> List["FaceTriple"]:
        return [self.face(f) for f in FACES]

    def shifted(self, s) -> "EdgeTuple":
        """Add ``s`` to the three edges at vertex 4."""
        d = self.as_tuple()
        return EdgeTuple(d[0], d[1], d[2] + s, d[3], d[4] + s, d[5] + s)

    def serialize(self) -> List[str]:
        return [str(x) if _is_gaussian(x) else format_rational(x) for x in self]


def _is_gaussian(x) -> bool:
    from .algebra import GaussianRational
    return isinstance(x, GaussianRational)


@dataclass(frozen=True)
class FaceTriple:
    face: str
    sides: tuple


# -- polynomials ---------------------------------------------------------------

def cm_matrix(x12, x13, x14, x23, x24, x34) -> List[list]:
    """The bordered 5x5 matrix whose determinant is CM0 (entries are squares)."""
    return [
        [0, 1, 1, 1, 1],
        [1, 0, x12 ** 2, x13 ** 2, x14 ** 2],
        [1, x12 ** 2, 0, x23 ** 2, x24 ** 2],
        [1, x13 ** 2, x23 ** 2, 0, x34 ** 2],
        [1, x14 ** 2, x24 ** 2, x34 ** 2, 0],
    ]


def heron_matrix(x12, x23, x13) -> List[list]:
    return [
        [0, 1, 1, 1],
        [1, 0, x12 ** 2, x13 ** 2],
        [1, x12 ** 2, 0, x23 ** 2],
        [1, x13 ** 2, x23 ** 2, 0],
    ]


def d12_matrix(x12, x13, x14, x23, x24, x34) -> List[list]:
    """The 4x4 matrix defining D12 (rows: border, 1, 2, 3; columns: border, 1, 2, 4)."""
    return [
        [0, 1, 1, 1],
        [1, 0, x12 ** 2, x14 ** 2],
        [1, x12 ** 2, 0, x24 ** 2],
        [1, x13 ** 2, x23 ** 2, x34 ** 2],
    ]


@lru_cache(maxsize=None)
def cm0_polynomial() -> MultiPoly:
    return det_poly_matrix(PolyMatrix(cm_matrix(*polys(*EDGE_VARS))))


@lru_cache(maxsize=None)
def cm_polynomial() -> MultiPoly:
    """CM = CM0 / 2 in the six edge-length variables (22 terms, coefficients +-1)."""
    return cm0_polynomial() / 2


@lru_cache(maxsize=None)
def heron_polynomial(names: Tuple[str, str, str] = ("a", "b", "c")) -> MultiPoly:
    """H as the negated 4x4 bordered determinant."""
    a, b, c = polys(*names)
    # argument order of the determinant form is (x12, x23, x13)
    return -det_poly_matrix(PolyMatrix(heron_matrix(a, b, c)))


def heron_quartic_form(names=("a", "b", "c")) -> MultiPoly:
    a, b, c = polys(*names)
    return 2 * a**2 * b**2 + 2 * b**2 * c**2 + 2 * c**2 * a**2 - a**4 - b**4 - c**4


def heron_product_form(names=("a", "b", "c")) -> MultiPoly:
    a, b, c = polys(*names)
    return (a + b + c) * (a + b - c) * (a - b + c) * (-a + b + c)


@lru_cache(maxsize=None)
def d12_polynomial() -> MultiPoly:
    return det_poly_matrix(PolyMatrix(d12_matrix(*polys(*EDGE_VARS))))


@lru_cache(maxsize=None)
def d12_from_cm_minor() -> MultiPoly:
    """Independent construction of D12: the CM0 minor deleting vertex-4's row and vertex-3's column.

    Desnanot-Jacobi on the 5x5 matrix then reads
    ``CM0 * M[34,34] = M[33]*M[44] - M[34]*M[43]``, which is the two-face identity.
    """
    m = cm_matrix(*polys(*EDGE_VARS))
    rows = [r for i, r in enumerate(m) if i != 4]
    sub = [[x for j, x in enumerate(r) if j != 3] for r in rows]
    return det_poly_matrix(PolyMatrix(sub))


# -- numeric evaluation --------------------------------------------------------

def heron_eval(a, b, c):
    """H(a, b, c) from the four-factor product form; works over Q and Q(i)."""
    return (a + b + c) * (a + b - c) * (a - b + c) * (-a + b + c)


def cm_from_squares(p12, p13, p14, p23, p24, p34):
    """CM written in the squared lengths; the fast evaluation path."""
    return (p12 * p34 * (p13 + p14 + p23 + p24 - p12 - p34)
            + p13 * p24 * (p12 + p14 + p23 + p34 - p13 - p24)
            + p14 * p23 * (p12 + p13 + p24 + p34 - p14 - p23)
            - p12 * p13 * p23 - p12 * p14 * p24 - p13 * p14 * p34 - p23 * p24 * p34)


def cm_eval(d) -> Fraction:
    """CM at an edge tuple (any ring elements supporting + and *)."""
    d = list(d)
    if len(d) != 6:
        raise ValueError("CM takes six edge lengths")
    v = cm_from_squares(*(x * x for x in d))
    return as_rational(v) if isinstance(v, (int, Fraction)) else v


def cm_by_determinant(d) -> Fraction:
    """Independent oracle: Bareiss determinant of the numeric 5x5 matrix, halved."""
    d = [as_rational(x) for x in d]
    return det_rational(cm_matrix(*d)) / 2


def face_herons(d) -> Dict[str, object]:
    d = list(d)
    return {f: heron_eval(*(d[i] for i in idx)) for f, idx in FACES.items()}


# -- identities ----------------------------------------------------------------

@stamped
def cm_expansion_check() -> Verdict:
    cm = cm_polynomial()
    coeffs = sorted({c for _, c in cm.terms()})
    cm0_coeffs = sorted({c for _, c in cm0_polynomial().terms()})
    ok = len(cm) == 22 and coeffs == [-1, 1] and cm0_coeffs == [-2, 2] and cm.is_homogeneous() \
        and cm.total_degree() == 6
    return Verdict("cm.expansion", PASS if ok else FAIL, 0 if ok else 1,
                   f"{len(cm)} monomials of degree {cm.total_degree()}; CM coefficients {[int(c) for c in coeffs]}, "
                   f"CM0 coefficients {[int(c) for c in cm0_coeffs]}",
                   details={"terms": len(cm)})


@stamped
def heron_forms_check() -> Verdict:
    det_form = heron_polynomial()
    r1 = det_form - heron_quartic_form()
    r2 = det_form - heron_product_form()
    return residual_verdict("cm.heron_forms", r1 + r2 if r1.is_zero() else r1,
                            "determinant form == quartic expansion == product of four linear forms")


@stamped
def neiss_identity_check() -> Verdict:
    """H(d12,d13,d23) * H(d12,d24,d14) - D12^2 - (2 d12)^2 CM == 0, symbolically."""
    vs = EDGE_VARS
    d12, d13, d14, d23, d24, d34 = polys(*vs)
    h = heron_product_form(("x", "y", "z"))
    h123 = h.substitute({"x": d12, "y": d13, "z": d23})
    h124 = h.substitute({"x": d12, "y": d24, "z": d14})
    printed = d12_polynomial()
    residual = h123 * h124 - printed ** 2 - 4 * d12 ** 2 * cm_polynomial()
    if residual.is_zero():
        return residual_verdict("cm.neiss", residual, "printed D12 satisfies the identity",
                                residual_poly="0")
    # fall back to the minor-derived D12 and report the correction
    minor = d12_from_cm_minor()
    corrected = h123 * h124 - minor ** 2 - 4 * d12 ** 2 * cm_polynomial()
    if corrected.is_zero():
        return residual_verdict("cm.neiss", corrected,
                                "printed D12 fails; D12 replaced by the CM0 minor (row 4, column 3 deleted)",
                                corrected=True, printed_residual_terms=len(residual))
    return Verdict("cm.neiss", FAIL, len(residual), "identity fails for printed and minor-derived D12",
                   details={"residual_poly": str(residual)})


@stamped
def d12_minor_check() -> Verdict:
    """Printed D12 agrees with the minor of the CM0 matrix."""
    return residual_verdict("cm.d12_minor", d12_polynomial() - d12_from_cm_minor(),
                            "printed D12 equals the CM0 minor deleting vertex-4 row and vertex-3 column")


# -- shifts --------------------------------------------------------------------

@dataclass(frozen=True)
class ShiftQuadratic:
    """CM(d shifted by s at vertex 4) = alpha s^2 + beta s + gamma; D12 shift = A s + B."""

    alpha: object
    beta: object
    gamma: object
    A: object
    B: object
    cm_high_coefficients: Tuple[object, ...] = ()   # s^3, s^4, ... (all zero)
    d12_high_coefficients: Tuple[object, ...] = ()  # s^2, ... (all zero)

    def value(self, s):
        return self.alpha * s * s + self.beta * s + self.gamma


def _shift_coefficients(p: MultiPoly) -> Dict[int, MultiPoly]:
    d12, d13, d14, d23, d24, d34, s = polys(*EDGE_VARS, "s")
    shifted = p.substitute({"d12": d12, "d13": d13, "d14": d14 + s, "d23": d23,
                            "d24": d24 + s, "d34": d34 + s})
    by_s = shifted.coefficients_in(("s",))
    return {k[0]: v.with_variables(EDGE_VARS) for k, v in by_s.items()}


@lru_cache(maxsize=None)
def _symbolic_shift() -> ShiftQuadratic:
    cm = _shift_coefficients(cm_polynomial())
    dd = _shift_coefficients(d12_polynomial())
    zero = MultiPoly.zero(EDGE_VARS)
    cm_high = tuple(cm.get(k, zero) for k in range(3, max(max(cm), 4) + 1))
    d_high = tuple(dd.get(k, zero) for k in range(2, max(max(dd), 2) + 1))
    return ShiftQuadratic(cm.get(2, zero), cm.get(1, zero), cm.get(0, zero),
                          dd.get(1, zero), dd.get(0, zero), cm_high, d_high)


def ankum_shift(d: Optional[Sequence] = None) -> ShiftQuadratic:
    """Coefficients of the vertex-4 shift; symbolic when ``d`` is None."""
    sym = _symbolic_shift()
    if d is None:
        return sym
    vals = dict(zip(EDGE_VARS, (as_rational(x) for x in d)))
    ev = lambda p: as_rational(p.evaluate(vals))
    return ShiftQuadratic(ev(sym.alpha), ev(sym.beta), ev(sym.gamma), ev(sym.A), ev(sym.B),
                          tuple(ev(p) for p in sym.cm_high_coefficients),
                          tuple(ev(p) for p in sym.d12_high_coefficients))


def shift_alpha(d) -> Fraction:
    """Leading shift coefficient via second differences of CM (no symbolic work)."""
    e = EdgeTuple.of(d)
    return (cm_eval(e.shifted(1)) + cm_eval(e.shifted(-1)) - 2 * cm_eval(e)) / 2


def printed_schulz_A() -> MultiPoly:
    """A exactly as printed: squares on d14, d24, d34."""
    d12, d13, d14, d23, d24, d34 = polys(*EDGE_VARS)
    return -2 * ((d12**2 - d13**2 + d23**2) * d14**2 + (d12**2 + d13**2 - d23**2) * d24**2
                 - 2 * d12**2 * d34**2)


def schulz_A() -> MultiPoly:
    """A with first powers of d14, d24, d34 (the degree-3 reading)."""
    d12, d13, d14, d23, d24, d34 = polys(*EDGE_VARS)
    return -2 * ((d12**2 - d13**2 + d23**2) * d14 + (d12**2 + d13**2 - d23**2) * d24
                 - 2 * d12**2 * d34)


@stamped
def ankum_check() -> Verdict:
    sym = _symbolic_shift()
    bad = sum(len(p) for p in sym.cm_high_coefficients)
    deg = max((k for k, p in enumerate((sym.gamma, sym.beta, sym.alpha)) if p), default=0)
    return Verdict("cm.ankum", PASS if bad == 0 else FAIL, bad,
                   f"shifted CM has degree {deg} in s; coefficients of s^3 and s^4 vanish")


@stamped
def schulz_linear_check() -> Verdict:
    """Shifted D12 is A s + B; compares the s-coefficient with the printed A."""
    sym = _symbolic_shift()
    high = sum(len(p) for p in sym.d12_high_coefficients)
    if high:
        return Verdict("cm.schulz_A", FAIL, high, "shifted D12 is not linear in s")
    literal = sym.A - printed_schulz_A()
    if literal.is_zero():
        return residual_verdict("cm.schulz_A", literal, "s-coefficient equals the printed A")
    fixed = sym.A - schulz_A()
    return residual_verdict(
        "cm.schulz_A", fixed,
        "printed A has d14^2, d24^2, d34^2 (degree 4) but the s-coefficient has degree 3; "
        "read as first powers d14, d24, d34",
        corrected=True, printed_residual_terms=len(literal))


@stamped
def gamma_b_consistency_check() -> Verdict:
    sym = _symbolic_shift()
    r = (sym.gamma - cm_polynomial()) + (sym.B - d12_polynomial())
    return residual_verdict("cm.shift_constant_terms", r, "gamma = CM(d) and B = D12(d) at s = 0")


def random_realizable_tuple(rng: random.Random, max_edge: int = 30) -> Tuple[int, ...]:
    while True:
        d = tuple(rng.randint(1, max_edge) for _ in range(6))
        if all(h > 0 for h in face_herons(d).values()) and cm_eval(d) > 0:
            return d


def alpha_positivity_sample(n: int = 1000, seed: int = 0, max_edge: int = 30) -> dict:
    """Sample realizable integer tuples and record the sign of the shift's leading coefficient."""
    rng = random.Random(seed)
    negative, zero = [], []
    for _ in range(n):
        d = random_realizable_tuple(rng, max_edge)
        a = shift_alpha(d)
        if a < 0:
            negative.append((d, a))
        elif a == 0:
            zero.append(d)
    return {"samples": n, "positive": n - len(negative) - len(zero),
            "negative": negative, "zero": zero}


# -- geometry ------------------------------------------------------------------

@dataclass(frozen=True)
class RealizabilityReport:
    cm_value: Fraction
    face_heron: Tuple[Fraction, Fraction, Fraction, Fraction]
    realizable: bool
    degenerate: bool
    volume: Optional[Fraction]

    def as_json(self) -> dict:
        return {
            "cm": format_rational(self.cm_value),
            "face_heron": {f: format_rational(h) for f, h in zip(FACES, self.face_heron)},
            "realizable": self.realizable,
            "degenerate": self.degenerate,
            "volume": None if self.volume is None else format_rational(self.volume),
        }


def realizability(d) -> RealizabilityReport:
    """Realizable in R^3 iff every face has H > 0 and CM > 0.

    Degenerate means CM = 0 with every face H >= 0 (a planar, possibly
    collinear, configuration). ``volume`` is set when CM is a rational square.
    """
    d = [as_rational(x) for x in d]
    if len(d) != 6:
        raise ValueError("an edge tuple has 6 entries")
    if any(x < 0 for x in d):
        raise NegativeLengthError(f"negative edge length in {[format_rational(x) for x in d]}")
    cm = cm_eval(d)
    herons = tuple(as_rational(h) for h in face_herons(d).values())
    realizable = cm > 0 and all(h > 0 for h in herons)
    degenerate = cm == 0 and all(h >= 0 for h in herons)
    root = is_perfect_square_rational(cm)
    volume = root / 12 if root is not None else None
    return RealizabilityReport(cm, herons, realizable, degenerate, volume)


# vertex relabelings act on edge positions
def _edge_permutation(perm: Sequence[int]) -> Tuple[int, ...]:
    out = []
    for v in EDGE_VARS:
        i, j = int(v[1]) - 1, int(v[2]) - 1
        a, b = sorted((perm[i] + 1, perm[j] + 1))
        out.append(EDGE_INDEX[f"d{a}{b}"])
    return tuple(out)


def vertex_relabelings() -> List[Tuple[int, ...]]:
    """The 24 permutations of the edge positions induced by relabeling vertices.

    Entry ``k`` of a returned tuple is the position that edge ``k`` moves to.
    """
    from itertools import permutations
    return [_edge_permutation(p) for p in permutations(range(4))]


def relabel(d: Sequence, edge_perm: Sequence[int]) -> tuple:
    out = [None] * 6
    for k, target in enumerate(edge_perm):
        out[target] = d[k]
    return tuple(out)
