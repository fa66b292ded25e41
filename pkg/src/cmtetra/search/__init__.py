"""Exhaustive search for integer edge tuples with CM a perfect square.

The hot loop lives in a kernel module: the compiled ``_kernel`` when it was
built, otherwise ``_kernel_py``. Set ``CMTETRA_PURE_PYTHON=1`` to force the
fallback. Both return identical sorted shard lists.
"""
from __future__ import annotations

import csv
import io
import json
import os
from dataclasses import dataclass
from multiprocessing import get_context
from typing import Iterable, List, Optional, Sequence, Tuple

from ..algebra import format_rational
from ..cayley_menger import RealizabilityReport, cm_by_determinant, realizability, relabel, vertex_relabelings
from . import _kernel_py

_compiled = None
if not os.environ.get("CMTETRA_PURE_PYTHON"):
    try:
        from . import _kernel as _compiled
    except ImportError:
        _compiled = None

KERNEL = "compiled" if _compiled is not None else "python"

CSV_HEADER = ("d12", "d13", "d14", "d23", "d24", "d34", "y", "volume", "realizable", "degenerate")


class OracleMismatch(ArithmeticError):
    """The determinant oracle disagrees with the kernel on a hit."""


@dataclass(frozen=True)
class SearchOptions:
    include_degenerate: bool = False
    canonical: bool = False
    jobs: int = 1
    kernel: Optional[str] = None  # "compiled" | "python" | None (best available)


@dataclass(frozen=True)
class SearchHit:
    edges: Tuple[int, ...]
    y: int
    report: RealizabilityReport

    def row(self) -> List[str]:
        vol = self.report.volume
        return [*map(str, self.edges), str(self.y),
                "" if vol is None else format_rational(vol),
                str(self.report.realizable).lower(), str(self.report.degenerate).lower()]

    def as_json(self) -> dict:
        vol = self.report.volume
        return {"edges": [str(x) for x in self.edges], "y": str(self.y),
                "volume": None if vol is None else format_rational(vol),
                "realizable": self.report.realizable, "degenerate": self.report.degenerate}


def kernel_module(name: Optional[str] = None):
    if name in (None, "compiled") and _compiled is not None:
        return _compiled
    if name == "compiled":
        raise RuntimeError("compiled kernel not built; reinstall with Cython available")
    return _kernel_py


def scan(d12: int, max_edge: int, include_degenerate: bool, kernel: Optional[str] = None):
    mod = kernel_module(kernel)
    limit = getattr(mod, "MAX_EDGE", None)
    if limit is not None and max_edge > limit:
        mod = _kernel_py
    return mod.scan_shard(d12, max_edge, include_degenerate)


def _scan_verified(args) -> List["SearchHit"]:
    return [_verify(t) for t in scan(*args)]


def canonical_form(d: Sequence[int]) -> Tuple[int, ...]:
    """Lexicographically least image under the 24 vertex relabelings."""
    return min(tuple(relabel(d, p)) for p in vertex_relabelings())


def _verify(raw: Tuple[int, ...]) -> SearchHit:
    edges, y = raw[:6], raw[6]
    cm = cm_by_determinant(edges)
    if cm != y * y:
        raise OracleMismatch(f"determinant oracle gives CM = {cm} at {edges}, kernel y = {y}")
    rep = realizability(edges)
    if not (rep.realizable or rep.degenerate):
        raise OracleMismatch(f"kernel kept a non-embeddable tuple {edges}")
    return SearchHit(edges, y, rep)


def search_integer_tetrahedra(max_edge: int, options: SearchOptions = SearchOptions()) -> List[SearchHit]:
    """All integer tuples in [1, max_edge]^6 with CM a square, filtered and sorted.

    Shards are the values of d12; with ``jobs > 1`` they run in worker
    processes, each re-checking its hits against the determinant oracle.
    The merge sorts, so output does not depend on ``jobs``.
    """
    if max_edge < 1:
        raise ValueError("max_edge must be >= 1")
    if options.jobs < 1:
        raise ValueError("jobs must be >= 1")
    args = [(d12, max_edge, options.include_degenerate, options.kernel) for d12 in range(max_edge, 0, -1)]
    if options.jobs == 1:
        shards = [_scan_verified(a) for a in args]
    else:
        # largest d12 first: those shards prune least
        with get_context("spawn").Pool(options.jobs) as pool:
            shards = pool.map(_scan_verified, args, chunksize=1)
    hits = sorted((h for shard in shards for h in shard), key=lambda h: h.edges)
    if options.canonical:
        seen = {}
        for h in hits:
            key = canonical_form(h.edges)
            if key not in seen:
                seen[key] = SearchHit(key, h.y, realizability(key))
        hits = sorted(seen.values(), key=lambda h: h.edges)
    return hits


def to_csv(hits: Iterable[SearchHit]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_HEADER)
    for h in hits:
        w.writerow(h.row())
    return buf.getvalue()


def to_json(hits: Iterable[SearchHit]) -> str:
    return json.dumps([h.as_json() for h in hits], indent=None, separators=(",", ":")) + "\n"


def to_text(hits: Sequence[SearchHit]) -> str:
    lines = [f"{' '.join(map(str, h.edges))}  y={h.y}  "
             f"{'realizable' if h.report.realizable else 'degenerate'}" for h in hits]
    lines.append(f"{len(hits)} hits")
    return "\n".join(lines) + "\n"
