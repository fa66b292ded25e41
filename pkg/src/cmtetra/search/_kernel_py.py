"""Pure-Python scan of one d12 shard (reference and fallback for the compiled kernel)."""
from __future__ import annotations

from math import isqrt
from typing import List, Tuple


def _weak(a: int, b: int, c: int) -> bool:
    # H(a, b, c) >= 0 for positive sides
    return a <= b + c and b <= a + c and c <= a + b


def _flat(a: int, b: int, c: int) -> bool:
    # H(a, b, c) == 0 for positive sides
    return a == b + c or b == a + c or c == a + b


def scan_shard(d12: int, max_edge: int, include_degenerate: bool) -> List[Tuple[int, ...]]:
    """Tuples (d12, d13, d14, d23, d24, d34, y) with first edge ``d12`` and CM = y^2.

    Kept: CM > 0 with every face H > 0, plus CM = 0 with every face H >= 0
    when ``include_degenerate``. A tuple breaking a face triangle inequality
    passes neither filter, so the loops prune face by face.
    """
    out = []
    rng = range(1, max_edge + 1)
    p12 = d12 * d12
    for d13 in rng:
        p13 = d13 * d13
        for d23 in rng:
            if not _weak(d12, d13, d23):
                continue
            p23 = d23 * d23
            f123 = _flat(d12, d13, d23)
            for d14 in rng:
                p14 = d14 * d14
                for d24 in rng:
                    if not _weak(d12, d14, d24):
                        continue
                    p24 = d24 * d24
                    flat = f123 or _flat(d12, d14, d24)
                    # CM = -p12 p34^2 + c1 p34 + c0
                    c1 = (p12 * (p13 + p14 + p23 + p24 - p12)
                          + p13 * p24 + p14 * p23 - p13 * p14 - p23 * p24)
                    c0 = (p13 * p24 * (p12 + p14 + p23 - p13 - p24)
                          + p14 * p23 * (p12 + p13 + p24 - p14 - p23)
                          - p12 * p13 * p23 - p12 * p14 * p24)
                    for d34 in rng:
                        if not (_weak(d13, d14, d34) and _weak(d23, d24, d34)):
                            continue
                        p34 = d34 * d34
                        cm = (c1 - p12 * p34) * p34 + c0
                        if cm > 0:
                            if flat or _flat(d13, d14, d34) or _flat(d23, d24, d34):
                                continue
                        elif cm < 0 or not include_degenerate:
                            continue
                        y = isqrt(cm)
                        if y * y == cm:
                            out.append((d12, d13, d14, d23, d24, d34, y))
    out.sort()
    return out
