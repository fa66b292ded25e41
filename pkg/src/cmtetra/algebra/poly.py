"""Sparse multivariate polynomials with exact rational coefficients.

Monomials are stored as packed integers: the exponent of the i-th declared
variable occupies a fixed-width bit field, most significant first. Adding two
keys multiplies the monomials, and integer comparison of keys is the
lexicographic monomial order, so the hot loop of multiplication is a single
integer addition per term pair.
"""
from __future__ import annotations

import re
from fractions import Fraction
from typing import Callable, Dict, Iterable, Iterator, Mapping, Optional, Sequence, Tuple

from .rational import as_rational, format_rational, normalize, parse_rational

BITS = 16
_FIELD = (1 << BITS) - 1
MAX_EXPONENT = _FIELD


def _pack(exps: Sequence[int]) -> int:
    key = 0
    for e in exps:
        if e < 0 or e > _FIELD:
            raise OverflowError(f"exponent {e} outside [0, {_FIELD}]")
        key = (key << BITS) | e
    return key


def _unpack(key: int, n: int) -> Tuple[int, ...]:
    out = [0] * n
    for i in range(n - 1, -1, -1):
        out[i] = key & _FIELD
        key >>= BITS
    return tuple(out)


def _degree_of_key(key: int) -> int:
    d = 0
    while key:
        d += key & _FIELD
        key >>= BITS
    return d


class MultiPoly:
    """Polynomial over Q in an ordered tuple of named variables.

    Instances are treated as immutable. Arithmetic between polynomials over
    different variable tuples works over the ordered union (left operand's
    variables first).
    """

    __slots__ = ("variables", "_terms", "_maxdeg", "_hash")

    def __init__(self, variables: Sequence[str], terms: Optional[Mapping] = None):
        self.variables: Tuple[str, ...] = tuple(variables)
        if len(set(self.variables)) != len(self.variables):
            raise ValueError(f"duplicate variable names in {self.variables}")
        n = len(self.variables)
        packed: Dict[int, object] = {}
        if terms:
            for exps, c in terms.items():
                if len(exps) != n:
                    raise ValueError(f"exponent vector {exps} has wrong length for {self.variables}")
                c = normalize(as_rational(c))
                if c:
                    k = _pack(exps)
                    packed[k] = normalize(packed.get(k, 0) + c)
                    if not packed[k]:
                        del packed[k]
        self._terms = packed
        self._maxdeg = None
        self._hash = None

    @classmethod
    def _raw(cls, variables: Tuple[str, ...], packed: Dict[int, object]) -> "MultiPoly":
        obj = cls.__new__(cls)
        obj.variables = variables
        obj._terms = packed
        obj._maxdeg = None
        obj._hash = None
        return obj

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, variables: Sequence[str] = ()) -> "MultiPoly":
        return cls._raw(tuple(variables), {})

    @classmethod
    def constant(cls, c, variables: Sequence[str] = ()) -> "MultiPoly":
        c = normalize(as_rational(c))
        return cls._raw(tuple(variables), {0: c} if c else {})

    @classmethod
    def var(cls, name: str, variables: Optional[Sequence[str]] = None) -> "MultiPoly":
        variables = tuple(variables) if variables is not None else (name,)
        if name not in variables:
            raise ValueError(f"{name!r} not among {variables}")
        i = variables.index(name)
        return cls._raw(variables, {1 << (BITS * (len(variables) - 1 - i)): 1})

    # -- basic queries -----------------------------------------------------

    def __len__(self) -> int:
        return len(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def is_constant(self) -> bool:
        return not self._terms or (len(self._terms) == 1 and 0 in self._terms)

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise ValueError("polynomial is not constant")
        return as_rational(self._terms.get(0, 0))

    def terms(self) -> Iterator[Tuple[Tuple[int, ...], Fraction]]:
        """(exponent tuple, coefficient) pairs in canonical graded-lex order."""
        n = len(self.variables)
        for k in self._sorted_keys():
            yield _unpack(k, n), as_rational(self._terms[k])

    def _sorted_keys(self):
        return sorted(self._terms, key=lambda k: (_degree_of_key(k), k), reverse=True)

    def coefficient(self, exps: Sequence[int]) -> Fraction:
        return as_rational(self._terms.get(_pack(exps), 0))

    def total_degree(self) -> int:
        if self._maxdeg is None:
            self._maxdeg = max((_degree_of_key(k) for k in self._terms), default=-1)
        return self._maxdeg

    def degree(self, v: Optional[str] = None) -> int:
        """Total degree, or degree in ``v``; the zero polynomial has degree -1."""
        if v is None:
            return self.total_degree()
        i = self._index(v)
        shift = BITS * (len(self.variables) - 1 - i)
        return max(((k >> shift) & _FIELD for k in self._terms), default=-1)

    def used_variables(self) -> Tuple[str, ...]:
        n = len(self.variables)
        seen = [False] * n
        for k in self._terms:
            for i, e in enumerate(_unpack(k, n)):
                if e:
                    seen[i] = True
        return tuple(v for v, s in zip(self.variables, seen) if s)

    def is_homogeneous(self, variables: Optional[Iterable[str]] = None) -> bool:
        idx = [self._index(v) for v in variables] if variables is not None else range(len(self.variables))
        n = len(self.variables)
        degs = {sum(_unpack(k, n)[i] for i in idx) for k in self._terms}
        return len(degs) <= 1

    def _index(self, v: str) -> int:
        try:
            return self.variables.index(v)
        except ValueError:
            raise KeyError(f"unknown variable {v!r}; polynomial is over {self.variables}") from None

    # -- variable-set handling ---------------------------------------------

    def with_variables(self, variables: Sequence[str]) -> "MultiPoly":
        """Re-express over ``variables`` (must contain every variable in use)."""
        variables = tuple(variables)
        if variables == self.variables:
            return self
        n = len(self.variables)
        pos = {}
        for i, v in enumerate(self.variables):
            if v in variables:
                pos[i] = variables.index(v)
        m = len(variables)
        out = {}
        for k, c in self._terms.items():
            exps = _unpack(k, n)
            new = [0] * m
            for i, e in enumerate(exps):
                if e:
                    if i not in pos:
                        raise ValueError(f"variable {self.variables[i]!r} in use but not in {variables}")
                    new[pos[i]] = e
            out[_pack(new)] = c
        return MultiPoly._raw(variables, out)

    def _align(self, other: "MultiPoly") -> Tuple[Dict[int, object], Dict[int, object], Tuple[str, ...]]:
        if self.variables == other.variables:
            return self._terms, other._terms, self.variables
        union = self.variables + tuple(v for v in other.variables if v not in self.variables)
        return self.with_variables(union)._terms, other.with_variables(union)._terms, union

    def _coerce(self, other) -> Optional["MultiPoly"]:
        if isinstance(other, MultiPoly):
            return other
        try:
            return MultiPoly.constant(other, self.variables)
        except TypeError:
            return None

    # -- arithmetic --------------------------------------------------------

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        a, b, vs = self._align(o)
        if len(a) < len(b):
            a, b = b, a
        out = dict(a)
        for k, c in b.items():
            s = out.get(k)
            if s is None:
                out[k] = c
            else:
                s = normalize(s + c)
                if s:
                    out[k] = s
                else:
                    del out[k]
        return MultiPoly._raw(vs, out)

    def __radd__(self, other):
        return self.__add__(other)

    def __neg__(self):
        return MultiPoly._raw(self.variables, {k: -c for k, c in self._terms.items()})

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if o.is_constant():
            c = o._terms.get(0, 0)
            if not c:
                return MultiPoly.zero(self._align(o)[2])
            vs = self._align(o)[2]
            base = self.with_variables(vs)
            return MultiPoly._raw(vs, {k: normalize(v * c) for k, v in base._terms.items()})
        a, b, vs = self._align(o)
        if self.total_degree() + o.total_degree() > _FIELD:
            raise OverflowError("product degree exceeds packed exponent width")
        out: Dict[int, object] = {}
        get = out.get
        if len(a) < len(b):
            a, b = b, a
        for kb, cb in b.items():
            for ka, ca in a.items():
                k = ka + kb
                out[k] = get(k, 0) + ca * cb
        packed = {}
        for k, c in out.items():
            if c:
                packed[k] = normalize(c)
        return MultiPoly._raw(vs, packed)

    def __rmul__(self, other):
        return self.__mul__(other)

    def __truediv__(self, other):
        """Division by a nonzero scalar only."""
        if isinstance(other, MultiPoly):
            if not other.is_constant():
                raise TypeError("only division by constants is supported; see exact_divide")
            other = other.constant_value()
        c = as_rational(other)
        if c == 0:
            raise ZeroDivisionError("polynomial division by zero")
        inv = 1 / c
        return MultiPoly._raw(self.variables, {k: normalize(v * inv) for k, v in self._terms.items()})

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            return NotImplemented
        result = MultiPoly.constant(1, self.variables)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        a, b, _ = self._align(o)
        return a == b

    def __hash__(self):
        if self._hash is None:
            used = self.used_variables()
            p = self.with_variables(used)
            self._hash = hash((used, frozenset(p._terms.items())))
        return self._hash

    # -- calculus / composition --------------------------------------------

    def partial_derivative(self, v: str) -> "MultiPoly":
        i = self._index(v)
        shift = BITS * (len(self.variables) - 1 - i)
        unit = 1 << shift
        out = {}
        for k, c in self._terms.items():
            e = (k >> shift) & _FIELD
            if e:
                out[k - unit] = normalize(c * e)
        return MultiPoly._raw(self.variables, out)

    def evaluate(self, assignment: Mapping[str, object]):
        """Evaluate at scalar values (ints, Fractions, GaussianRationals...).

        Every variable in use must be assigned.
        """
        n = len(self.variables)
        values = []
        for v in self.variables:
            values.append(assignment.get(v))
        powers: Dict[Tuple[int, int], object] = {}
        total = 0
        for k, c in self._terms.items():
            term = c
            for i, e in enumerate(_unpack(k, n)):
                if e:
                    x = values[i]
                    if x is None:
                        raise KeyError(f"no value for variable {self.variables[i]!r}")
                    p = powers.get((i, e))
                    if p is None:
                        p = powers[(i, e)] = x ** e
                    term = term * p
            total = total + term
        return normalize(total) if isinstance(total, (int, Fraction)) else total

    def substitute(self, assignment: Mapping[str, object], strict: bool = True) -> "MultiPoly":
        """Ring homomorphism sending each variable to the assigned polynomial or scalar.

        With ``strict`` (the default) every variable in use must have an image;
        otherwise unassigned variables map to themselves.
        """
        n = len(self.variables)
        images = []
        for v in self.variables:
            img = assignment.get(v)
            if img is None:
                if strict and v in self.used_variables():
                    raise KeyError(f"unassigned variable {v!r}")
                img = MultiPoly.var(v)
            if not isinstance(img, MultiPoly):
                img = MultiPoly.constant(img)
            images.append(img)
        target: Tuple[str, ...] = ()
        for img in images:
            target += tuple(v for v in img.variables if v not in target)
        images = [img.with_variables(target) for img in images]
        cache: Dict[Tuple[int, int], MultiPoly] = {}

        def power(i: int, e: int) -> MultiPoly:
            p = cache.get((i, e))
            if p is None:
                if e == 1:
                    p = images[i]
                else:
                    half = power(i, e // 2)
                    p = half * half
                    if e & 1:
                        p = p * images[i]
                cache[(i, e)] = p
            return p

        acc: Dict[int, object] = {}
        for k, c in self._terms.items():
            term = None
            for i, e in enumerate(_unpack(k, n)):
                if e:
                    p = power(i, e)
                    term = p if term is None else term * p
            if term is None:
                acc[0] = acc.get(0, 0) + c
                continue
            for tk, tc in term._terms.items():
                acc[tk] = acc.get(tk, 0) + c * tc
        return MultiPoly._raw(target, {k: normalize(c) for k, c in acc.items() if c})

    # -- structure ---------------------------------------------------------

    def coefficients_in(self, main: Sequence[str]) -> Dict[Tuple[int, ...], "MultiPoly"]:
        """Split as sum over monomials m in ``main`` of coeff_m * m.

        Coefficients are polynomials over the remaining variables.
        """
        main = tuple(main)
        for v in main:
            self._index(v)
        rest = tuple(v for v in self.variables if v not in main)
        n = len(self.variables)
        mi = [self.variables.index(v) for v in main]
        ri = [self.variables.index(v) for v in rest]
        groups: Dict[Tuple[int, ...], Dict[int, object]] = {}
        for k, c in self._terms.items():
            exps = _unpack(k, n)
            mk = tuple(exps[i] for i in mi)
            rk = _pack([exps[i] for i in ri])
            groups.setdefault(mk, {})[rk] = c
        return {mk: MultiPoly._raw(rest, d) for mk, d in groups.items()}

    @classmethod
    def from_coefficients(cls, main: Sequence[str], coeffs: Mapping[Tuple[int, ...], "MultiPoly"],
                          variables: Optional[Sequence[str]] = None) -> "MultiPoly":
        """Inverse of :meth:`coefficients_in`."""
        main = tuple(main)
        out = MultiPoly.zero(main)
        for mk, c in coeffs.items():
            mono = MultiPoly(main, {mk: 1})
            out = out + mono * c
        if variables is not None:
            out = out.with_variables(variables)
        return out

    def map_coefficients(self, f: Callable) -> "MultiPoly":
        return MultiPoly(self.variables, {e: f(c) for e, c in self.terms()})

    # -- text --------------------------------------------------------------

    def __str__(self) -> str:
        return format_poly(self)

    def __repr__(self) -> str:
        return f"MultiPoly({self.variables}, {format_poly(self)!r})"


def polys(*names: str) -> Tuple[MultiPoly, ...]:
    """Variables over the common tuple ``names``: ``x, y = polys("x", "y")``."""
    return tuple(MultiPoly.var(n, names) for n in names)


def format_poly(p: MultiPoly) -> str:
    """Canonical text form: ``+``-joined ``coeff*v1^e1*v2^e2`` terms, graded lex."""
    if p.is_zero():
        return "0"
    parts = []
    for exps, c in p.terms():
        factors = [format_rational(c)]
        for v, e in zip(p.variables, exps):
            if e == 1:
                factors.append(v)
            elif e:
                factors.append(f"{v}^{e}")
        parts.append("*".join(factors))
    return "+".join(parts)


_TERM_SPLIT = re.compile(r"\+(?=[^+])")


def parse_poly(text: str, variables: Sequence[str]) -> MultiPoly:
    """Inverse of :func:`format_poly` over the given variable tuple."""
    variables = tuple(variables)
    s = text.replace(" ", "")
    if s == "0":
        return MultiPoly.zero(variables)
    out: Dict[Tuple[int, ...], Fraction] = {}
    for chunk in _TERM_SPLIT.split(s):
        if not chunk:
            raise ValueError(f"empty term in {text!r}")
        factors = chunk.split("*")
        coeff = Fraction(1)
        exps = [0] * len(variables)
        for j, f in enumerate(factors):
            name, _, e = f.partition("^")
            if name in variables:
                exps[variables.index(name)] += int(e) if e else 1
            elif j == 0 and not e:
                coeff = parse_rational(name)
            else:
                raise ValueError(f"unknown factor {f!r} in {text!r}")
        key = tuple(exps)
        out[key] = out.get(key, 0) + coeff
    return MultiPoly(variables, out)


def exact_divide(p: MultiPoly, d: MultiPoly) -> Optional[MultiPoly]:
    """Quotient ``p / d`` if ``d`` divides ``p`` exactly, else ``None``.

    Plain leading-term division in lex order; the remainder is zero iff the
    division is exact because a single divisor is always its own Groebner basis.
    """
    if d.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    _, _, vs = p._align(d)
    p = p.with_variables(vs)
    d = d.with_variables(vs)
    if d.is_constant():
        return p / d.constant_value()
    n = len(vs)
    lead = max(d._terms)
    lead_exps = _unpack(lead, n)
    lead_c = as_rational(d._terms[lead])
    rem = dict(p._terms)
    quot: Dict[int, object] = {}
    while rem:
        k = max(rem)
        exps = _unpack(k, n)
        if any(e < le for e, le in zip(exps, lead_exps)):
            return None
        qk = k - lead
        qc = normalize(as_rational(rem[k]) / lead_c)
        quot[qk] = qc
        for dk, dc in d._terms.items():
            t = qk + dk
            v = normalize(rem.get(t, 0) - qc * dc)
            if v:
                rem[t] = v
            else:
                rem.pop(t, None)
    return MultiPoly._raw(vs, quot)
