"""The tetrahedroid quartic T_{a,b,c}, its dual, and the 16_6 node/trope configuration."""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Dict, List, Optional, Sequence, Tuple

from .algebra import (
    MultiPoly,
    PolyMatrix,
    as_rational,
    det_poly_matrix,
    is_square_up_to_constant,
    polys,
)
from .cayley_menger import cm_polynomial, heron_product_form
from .verdict import FAIL, PASS, Verdict, residual_verdict, stamped

PARAMS = ("a", "b", "c")
XVARS = ("X0", "X1", "X2", "X3")
ALL_VARS = PARAMS + XVARS


class DegenerateParameters(ValueError):
    """a, b, c must be nonzero with H(a, b, c) != 0 for numeric configurations."""


@dataclass(frozen=True)
class TetraParams:
    a: object
    b: object
    c: object

    @classmethod
    def symbolic(cls) -> "TetraParams":
        return cls(*polys(*PARAMS))

    @property
    def is_symbolic(self) -> bool:
        return any(isinstance(x, MultiPoly) for x in (self.a, self.b, self.c))

    def assignment(self) -> Dict[str, object]:
        return {"a": self.a, "b": self.b, "c": self.c}

    def check_nondegenerate(self):
        if self.is_symbolic:
            return
        a, b, c = (as_rational(x) for x in (self.a, self.b, self.c))
        h = (a + b + c) * (a + b - c) * (a - b + c) * (-a + b + c)
        if a == 0 or b == 0 or c == 0 or h == 0:
            raise DegenerateParameters(f"degenerate parameters (a, b, c) = ({a}, {b}, {c})")


@dataclass(frozen=True)
class ProjPoint4:
    """Projective point (or plane coefficient vector); equality up to scale."""

    coords: Tuple[object, object, object, object]
    label: str = field(default="", compare=False)

    def __post_init__(self):
        if len(self.coords) != 4:
            raise ValueError("projective 3-space points have four coordinates")

    def __iter__(self):
        return iter(self.coords)

    def __getitem__(self, i):
        return self.coords[i]

    def specialize(self, params: TetraParams) -> "ProjPoint4":
        sub = params.assignment()
        return ProjPoint4(tuple(_eval(x, sub) for x in self.coords), self.label)

    def same_point(self, other: "ProjPoint4") -> bool:
        pairs = list(zip(self.coords, other.coords))
        return all(_is_zero(x * w - y * v) for (x, y) in pairs for (v, w) in pairs)

    def __str__(self):
        return "[" + ":".join(_fmt(x) for x in self.coords) + "]"


def _eval(x, sub):
    if isinstance(x, MultiPoly):
        v = x.substitute(sub, strict=False)
        return v.constant_value() if v.is_constant() else v
    return x


def _is_zero(x) -> bool:
    return x.is_zero() if isinstance(x, MultiPoly) else x == 0


def _fmt(x) -> str:
    if isinstance(x, MultiPoly):
        return str(x.with_variables(x.used_variables()))
    return str(x)


def _entry(token: str) -> MultiPoly:
    a, b, c = polys(*PARAMS)
    env = {"0": 0 * a, "1": 1 + 0 * a, "a": a, "b": b, "c": c}
    neg = token.startswith("-")
    v = env[token.lstrip("-")]
    return -v if neg else v


def _point(spec: str, label: str = "") -> ProjPoint4:
    return ProjPoint4(tuple(_entry(t) for t in spec.split(":")), label)


# (label, coordinates as printed, coordinates used); labels are carried opaquely
NODE_TABLE: List[Tuple[str, str, str]] = [
    ("{}|{1,2,3,4,5,6}", "0:1:1:1", "0:1:1:1"),
    ("{3,4}|{1,2,5,6}", "0:1:-1:1", "0:1:-1:1"),
    ("{5,6}|{1,2,3,4}", "0:1:1:-1", "0:1:1:-1"),
    ("{1,2}|{3,4,5,6}", "0:1:-1:-1", "0:1:-1:-1"),
    ("{4,6}|{1,2,3,5}", "1:0:a:b", "1:0:a:b"),
    ("{4,5}|{1,2,3,6}", "1:0:-a:b", "1:0:-a:b"),
    ("{3,6}|{1,2,4,5}", "1:0:a:-b", "1:0:a:-b"),
    ("{3,5}|{1,2,4,6}", "1:0:-a:-b", "1:0:-a:-b"),
    ("{2,5}|{1,2,3,5}", "1:a:0:c", "1:a:0:c"),
    ("{2,6}|{1,2,5,6}", "1:-a:0:c", "1:-a:0:c"),
    ("{1,5}|{1,2,3,4}", "1:a:0:-c", "1:a:0:-c"),
    ("{1,6}|{3,4,5,6}", "1:-a:0:-c", "1:-a:0:-c"),
    ("{1,3}|{1,2,3,5}", "1:b:c:0", "1:b:c:0"),
    ("{1,4}|{1,2,3,6}", "1:-b:c:0", "1:-b:c:0"),
    # printed with the zero in the third slot; only the X3 = 0 reading is singular
    ("{2,3}|{1,2,4,5}", "1:b:0:-c", "1:b:-c:0"),
    ("{2,4}|{1,2,4,6}", "1:-b:0:-c", "1:-b:-c:0"),
]

TROPE_TABLE: List[Tuple[str, str]] = [
    ("{1,3,5}|{2,4,6}", "0:c:b:a"),
    ("{2,3,5}|{1,4,6}", "0:c:-b:a"),
    ("{1,3,6}|{2,4,5}", "0:c:b:-a"),
    ("{1,4,5}|{1,3,6}", "0:c:-b:-a"),
    ("{1,4,6}|{2,3,5}", "c:0:1:1"),
    ("{1}|{2,3,4,5,6}", "c:0:-1:1"),
    ("{2}|{1,3,4,5,6}", "c:0:1:-1"),
    ("{1,3,4}|{2,5,6}", "c:0:-1:-1"),
    ("{1,2,4}|{3,5,6}", "b:1:0:1"),
    ("{3}|{1,2,4,5,6}", "b:-1:0:1"),
    ("{4}|{1,2,3,5,6}", "b:1:0:-1"),
    ("{1,2,3}|{4,5,6}", "b:-1:0:-1"),
    ("{1,2,6}|{3,4,5}", "a:1:1:0"),
    ("{5}|{1,2,3,4,6}", "a:-1:1:0"),
    ("{6}|{1,2,3,4,5}", "a:1:-1:0"),
    ("{1,2,5}|{3,4,6}", "a:-1:-1:0"),
]

NODE_CORRECTION_NOTE = ("printed nodes [1:b:0:-c] and [1:-b:0:-c] are not singular; "
                        "read as [1:b:-c:0] and [1:-b:-c:0] (vertex 4 on vertex 3)")


# -- polynomials -----------------------------------------------------------------

def _bordered(top: Sequence, X: Sequence) -> List[list]:
    rows = [list(r) + [x ** 2] for r, x in zip(top, X)]
    rows.append([x ** 2 for x in X] + [0])
    return rows


@lru_cache(maxsize=None)
def _t_symbolic() -> MultiPoly:
    a, b, c, *X = polys(*ALL_VARS)
    top = [[0, 1, 1, 1], [1, 0, a**2, b**2], [1, a**2, 0, c**2], [1, b**2, c**2, 0]]
    return det_poly_matrix(PolyMatrix(_bordered(top, X))) / 2


@lru_cache(maxsize=None)
def _t_dual_symbolic() -> MultiPoly:
    a, b, c, *X = polys(*ALL_VARS)
    top = [[0, c**2, b**2, a**2], [c**2, 0, 1, 1], [b**2, 1, 0, 1], [a**2, 1, 1, 0]]
    return det_poly_matrix(PolyMatrix(_bordered(top, X))) / 2


def _specialize(p: MultiPoly, params: Optional[TetraParams]) -> MultiPoly:
    if params is None:
        return p
    out = p.substitute(params.assignment(), strict=False)
    if not params.is_symbolic:
        out = out.with_variables(XVARS)
    return out


def t_polynomial(params: Optional[TetraParams] = None) -> MultiPoly:
    """T_{a,b,c}(X0..X3); symbolic in a, b, c unless ``params`` are given."""
    return _specialize(_t_symbolic(), params)


def t_dual_polynomial(params: Optional[TetraParams] = None) -> MultiPoly:
    return _specialize(_t_dual_symbolic(), params)


def x_monomial_count(p: MultiPoly) -> int:
    return len(p.coefficients_in(XVARS))


def homogenized_cm() -> MultiPoly:
    """X0^4 * CM(a, b, X1/X0, c, X2/X0, X3/X0), built term by term."""
    a, b, c, x14, x24, x34 = polys("a", "b", "c", "x14", "x24", "x34")
    cm = cm_polynomial().substitute({"d12": a, "d13": b, "d14": x14, "d23": c, "d24": x24, "d34": x34})
    out = {}
    vs = cm.variables
    for exps, coeff in cm.terms():
        e = dict(zip(vs, exps))
        k = e["x14"] + e["x24"] + e["x34"]
        if k > 4:
            raise ArithmeticError("CM has degree > 4 in the vertex-4 edges")
        out[(e["a"], e["b"], e["c"], 4 - k, e["x14"], e["x24"], e["x34"])] = coeff
    return MultiPoly(ALL_VARS, out)


# -- configuration ---------------------------------------------------------------

@dataclass
class SurfaceConfiguration:
    nodes: List[ProjPoint4]
    tropes: List[ProjPoint4]
    incidence: List[List[bool]]   # incidence[t][n]: node n lies on trope t
    params: TetraParams

    def row_sums(self) -> List[int]:
        return [sum(r) for r in self.incidence]

    def column_sums(self) -> List[int]:
        return [sum(self.incidence[t][n] for t in range(len(self.tropes))) for n in range(len(self.nodes))]

    def coplanar_quadruples(self) -> Dict[int, List[int]]:
        """Nodes grouped by the coordinate plane X_k = 0 containing them."""
        groups: Dict[int, List[int]] = {k: [] for k in range(4)}
        for i, n in enumerate(self.nodes):
            for k in range(4):
                if _is_zero(n[k]):
                    groups[k].append(i)
        return groups


def incident(plane: ProjPoint4, point: ProjPoint4) -> bool:
    return _is_zero(sum(u * x for u, x in zip(plane, point)))


def printed_nodes() -> List[ProjPoint4]:
    return [_point(printed, label) for label, printed, _ in NODE_TABLE]


def configuration(params: Optional[TetraParams] = None) -> SurfaceConfiguration:
    """The 16 nodes and 16 tropes with exact incidence.

    Symbolic by default; numeric parameters are checked for degeneracy and the
    symbolic tables are specialized.
    """
    nodes = [_point(used, label) for label, _, used in NODE_TABLE]
    tropes = [_point(spec, label) for label, spec in TROPE_TABLE]
    if params is None:
        params = TetraParams.symbolic()
    elif not params.is_symbolic:
        params.check_nondegenerate()
        nodes = [n.specialize(params) for n in nodes]
        tropes = [t.specialize(params) for t in tropes]
    inc = [[incident(t, n) for n in nodes] for t in tropes]
    return SurfaceConfiguration(nodes, tropes, inc, params)


# -- checks ----------------------------------------------------------------------

def _point_assignment(point: ProjPoint4) -> Dict[str, object]:
    return dict(zip(XVARS, point.coords))


def singular_residuals(T: MultiPoly, point: ProjPoint4) -> List[MultiPoly]:
    """T and its four X-partials at the point (all zero iff the point is singular)."""
    sub = _point_assignment(point)
    out = [T.substitute(sub, strict=False)]
    for v in XVARS:
        out.append(T.partial_derivative(v).substitute(sub, strict=False))
    return out


@stamped
def verify_nodes(cfg: Optional[SurfaceConfiguration] = None, T: Optional[MultiPoly] = None) -> Verdict:
    cfg = cfg or configuration()
    T = T if T is not None else t_polynomial(None if cfg.params.is_symbolic else cfg.params)
    failures = []
    for n in cfg.nodes:
        res = singular_residuals(T, n)
        bad = sum(len(r) if isinstance(r, MultiPoly) else int(r != 0) for r in res)
        if bad:
            failures.append((str(n), bad))
    printed_bad = []
    if cfg.params.is_symbolic:
        for n in printed_nodes():
            if any(not _is_zero(r) for r in singular_residuals(T, n)):
                printed_bad.append(str(n))
    residual = sum(b for _, b in failures)
    if failures:
        return Verdict("tetrahedroid.nodes", FAIL, residual, f"non-singular nodes: {failures}")
    status = "corrected" if printed_bad else PASS
    notes = f"{len(cfg.nodes)} nodes singular identically in (a, b, c)"
    if printed_bad:
        notes += "; " + NODE_CORRECTION_NOTE
    return Verdict("tetrahedroid.nodes", status, 0, notes, details={"printed_non_singular": printed_bad})


def restrict_to_plane(T: MultiPoly, plane: ProjPoint4) -> Tuple[MultiPoly, Tuple[str, ...]]:
    """Restrict T to a plane sum u_i X_i = 0.

    The eliminated coordinate is the first with a nonzero coefficient, u_i;
    points of the plane are X_k = u_i Y_k (k != i), X_i = -sum_{k != i} u_k Y_k,
    which keeps everything polynomial.
    """
    i = next(k for k in range(4) if not _is_zero(plane[k]))
    keep = tuple(f"Y{k}" for k in range(4) if k != i)
    ys = polys(*keep)
    ymap = dict(zip((k for k in range(4) if k != i), ys))
    sub = {}
    elim = 0
    for k in range(4):
        if k == i:
            continue
        sub[XVARS[k]] = plane[i] * ymap[k]
        elim = elim - plane[k] * ymap[k]
    sub[XVARS[i]] = elim
    return T.substitute(sub, strict=False), keep


@stamped
def verify_tropes(cfg: Optional[SurfaceConfiguration] = None, T: Optional[MultiPoly] = None) -> Verdict:
    cfg = cfg or configuration()
    T = T if T is not None else t_polynomial(None if cfg.params.is_symbolic else cfg.params)
    failures = []
    for t in cfg.tropes:
        r, keep = restrict_to_plane(T, t)
        if r.is_zero() or is_square_up_to_constant(r, keep) is None:
            failures.append(str(t))
    if failures:
        return Verdict("tetrahedroid.tropes", FAIL, len(failures), f"planes not doubled conics: {failures}")
    return Verdict("tetrahedroid.tropes", PASS, 0,
                   f"{len(cfg.tropes)} trope planes restrict T to constant * square")


@stamped
def incidence_check(cfg: Optional[SurfaceConfiguration] = None) -> Verdict:
    cfg = cfg or configuration()
    rows, cols = cfg.row_sums(), cfg.column_sums()
    quads = cfg.coplanar_quadruples()
    ok = all(r == 6 for r in rows) and all(c == 6 for c in cols) and all(len(g) == 4 for g in quads.values()) \
        and sorted(i for g in quads.values() for i in g) == list(range(16))
    return Verdict("tetrahedroid.incidence", PASS if ok else FAIL, 0 if ok else 1,
                   f"row sums {sorted(set(rows))}, column sums {sorted(set(cols))}; "
                   f"nodes per coordinate plane {[len(quads[k]) for k in range(4)]}")


@stamped
def homogenization_check() -> Verdict:
    T = t_polynomial()
    r = homogenized_cm() - T
    n = x_monomial_count(T)
    v = residual_verdict("tetrahedroid.homogenization", r,
                         f"T = X0^4 CM(a,b,X1/X0,c,X2/X0,X3/X0); {n} monomials in X")
    if n != 10:
        v.status, v.residual_terms = FAIL, max(v.residual_terms, 1)
    return v


def _scaling_residuals():
    T, Ts = t_polynomial(), t_dual_polynomial()
    a, b, c, X0, X1, X2, X3, lam = polys(*ALL_VARS, "l")
    duality = Ts.substitute({"X0": a * b * c * X0, "X1": c * X1, "X2": b * X2, "X3": a * X3}, strict=False) \
        - (a * b * c) ** 2 * T
    scaled = {"a": lam * a, "b": lam * b, "c": lam * c}
    t_scale = T.substitute(scaled, strict=False) - lam ** 2 * T.substitute({"X0": lam * X0}, strict=False)
    # lam^k T*(X0/lam, X) = lam^(k-4) T*(X0, lam X1, lam X2, lam X3) by homogeneity
    ts_lam = Ts.substitute(scaled, strict=False)
    ts_x = Ts.substitute({"X1": lam * X1, "X2": lam * X2, "X3": lam * X3}, strict=False)
    printed = lam ** 2 * ts_lam - ts_x          # lam^2 factor as printed
    fixed = ts_lam - ts_x                       # lam^4 factor
    return duality, t_scale, printed, fixed


def duality_scaling_checks() -> List[Verdict]:
    import time
    t0 = time.perf_counter()
    duality, t_scale, printed, fixed = _scaling_residuals()
    ms = int((time.perf_counter() - t0) * 1000)
    out = [
        residual_verdict("tetrahedroid.duality", duality, "T*(abcX0, cX1, bX2, aX3) = (abc)^2 T(X)"),
        residual_verdict("tetrahedroid.scaling_T", t_scale, "T_{la,lb,lc}(X) = l^2 T(lX0, X1, X2, X3)"),
    ]
    if printed.is_zero():
        out.append(residual_verdict("tetrahedroid.scaling_T_dual", printed,
                                    "T*_{la,lb,lc}(X) = l^2 T*(X0/l, X1, X2, X3)"))
    else:
        out.append(residual_verdict(
            "tetrahedroid.scaling_T_dual", fixed,
            "printed factor l^2 fails (T*'s X0^4 term has a parameter-free coefficient); "
            "holds as T*_{la,lb,lc}(X) = l^4 T*(X0/l, X1, X2, X3)",
            corrected=True, printed_residual_terms=len(printed)))
    for v in out:
        v.elapsed_ms = ms
    return out


# -- irrational form -------------------------------------------------------------

@dataclass(frozen=True)
class IrrationalFormData:
    L1: MultiPoly
    L1p: MultiPoly
    L2: MultiPoly
    L2p: MultiPoly
    L3: MultiPoly
    L3p: MultiPoly
    q: Tuple[MultiPoly, MultiPoly, MultiPoly, MultiPoly]


def q_products(a, b, c):
    """(q1, q2, q3, q4); works for numbers and polynomials alike."""
    return ((a + b - c) * (a - b + c),
            -(a + b + c) * (-a + b + c),
            -(-a + b + c) * (a + b - c),
            (a + b + c) * (a - b + c))


def irrational_form_data() -> IrrationalFormData:
    a, b, c, x0, x1, x2, x3 = polys(*ALL_VARS)
    return IrrationalFormData(
        L1=-(a - b + c) * (c * x0 + x2 + x3),
        L1p=(-a + b + c) * (-c * x0 + x2 + x3),
        L2=(a + b + c) * (c * x0 + x2 - x3),
        L2p=(a + b - c) * (-c * x0 + x2 - x3),
        L3=2 * (-c * x1 - b * x2 + a * x3),
        L3p=2 * (c * x1 - b * x2 + a * x3),
        q=q_products(a, b, c),
    )


def irrational_form_check() -> List[Verdict]:
    import time
    t0 = time.perf_counter()
    f = irrational_form_data()
    q1, q2, q3, q4 = f.q
    T = t_polynomial()
    c = MultiPoly.var("c", ALL_VARS)
    H = heron_product_form(PARAMS)
    sum_l = f.L1 + f.L1p + f.L2 + f.L2p + f.L3 + f.L3p
    weighted = (f.L1 * q2 * q3 + f.L1p * q1 * q4 + f.L2 * q1 * q3 + f.L2p * q2 * q4
                + f.L3 * q1 * q2 + f.L3p * q3 * q4)
    p1, p2, p3 = f.L1 * f.L1p, f.L2 * f.L2p, f.L3 * f.L3p
    lhs = 16 * c ** 2 * T
    literal = lhs + ((p1 + p2 - p3) ** 2 - 4 * p1 * f.L2 * f.L2)
    fixed = lhs + ((p1 + p2 - p3) ** 2 - 4 * p1 * p2)
    ms = int((time.perf_counter() - t0) * 1000)
    out = [
        residual_verdict("tetrahedroid.irrational_sum", sum_l, "L1+L1'+L2+L2'+L3+L3' = 0"),
        residual_verdict("tetrahedroid.irrational_weighted", weighted,
                         "L1 q2q3 + L1' q1q4 + L2 q1q3 + L2' q2q4 + L3 q1q2 + L3' q3q4 = 0"),
    ]
    if literal.is_zero():
        out.append(residual_verdict("tetrahedroid.irrational_quartic", literal,
                                    "16c^2 T = -((L1L1'+L2L2'-L3L3')^2 - 4 L1L1'L2L2)"))
    else:
        out.append(residual_verdict("tetrahedroid.irrational_quartic", fixed,
                                    "printed final factor L2L2 read as L2L2': "
                                    "16c^2 T = -((L1L1'+L2L2'-L3L3')^2 - 4 L1L1'L2L2')",
                                    corrected=True, printed_residual_terms=len(literal)))
    r_q = (q1 * q2 + H) + (q3 * q4 + H) if (q1 * q2 + H).is_zero() else q1 * q2 + H
    out.append(residual_verdict("tetrahedroid.q_products", r_q, "q1 q2 = q3 q4 = -H(a, b, c)"))
    for v in out:
        v.elapsed_ms = ms
    return out


def random_plane(rng: random.Random) -> ProjPoint4:
    return ProjPoint4(tuple(as_rational(rng.randint(-9, 9) or 1) for _ in range(4)))
