# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled scan of one d12 shard; same contract as the pure-Python kernel."""
from libc.math cimport sqrt

# every intermediate of the cubic in squared edges fits in int64 below this
MAX_EDGE = 500


cdef inline bint _weak(long long a, long long b, long long c) nogil:
    return a <= b + c and b <= a + c and c <= a + b


cdef inline bint _flat(long long a, long long b, long long c) nogil:
    return a == b + c or b == a + c or c == a + b


cdef inline long long _isqrt(long long n) nogil:
    cdef long long r = <long long> sqrt(<double> n)
    while r * r > n:
        r -= 1
    while (r + 1) * (r + 1) <= n:
        r += 1
    return r


def scan_shard(long long d12, long long max_edge, bint include_degenerate):
    if max_edge > MAX_EDGE:
        raise OverflowError(f"compiled kernel supports max_edge <= {MAX_EDGE}")
    cdef long long d13, d14, d23, d24, d34
    cdef long long p12 = d12 * d12, p13, p14, p23, p24, p34
    cdef long long c0, c1, cm, y
    cdef bint f123, flat
    out = []
    for d13 in range(1, max_edge + 1):
        p13 = d13 * d13
        for d23 in range(1, max_edge + 1):
            if not _weak(d12, d13, d23):
                continue
            p23 = d23 * d23
            f123 = _flat(d12, d13, d23)
            for d14 in range(1, max_edge + 1):
                p14 = d14 * d14
                for d24 in range(1, max_edge + 1):
                    if not _weak(d12, d14, d24):
                        continue
                    p24 = d24 * d24
                    flat = f123 or _flat(d12, d14, d24)
                    c1 = (p12 * (p13 + p14 + p23 + p24 - p12)
                          + p13 * p24 + p14 * p23 - p13 * p14 - p23 * p24)
                    c0 = (p13 * p24 * (p12 + p14 + p23 - p13 - p24)
                          + p14 * p23 * (p12 + p13 + p24 - p14 - p23)
                          - p12 * p13 * p23 - p12 * p14 * p24)
                    for d34 in range(1, max_edge + 1):
                        if not (_weak(d13, d14, d34) and _weak(d23, d24, d34)):
                            continue
                        p34 = d34 * d34
                        cm = (c1 - p12 * p34) * p34 + c0
                        if cm > 0:
                            if flat or _flat(d13, d14, d34) or _flat(d23, d24, d34):
                                continue
                        elif cm < 0 or not include_degenerate:
                            continue
                        y = _isqrt(cm)
                        if y * y == cm:
                            out.append((d12, d13, d14, d23, d24, d34, y))
    out.sort()
    return out
