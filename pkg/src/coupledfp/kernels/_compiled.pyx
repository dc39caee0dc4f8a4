# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled twin of coupledfp.kernels.pure.

Statement-for-statement mirror of the pure-Python kernels; must stay
bit-identical (same splitmix64 stream, same arithmetic order). Built with
-ffp-contract=off so the C compiler cannot fuse multiply-adds.
"""

from libc.math cimport fabs

cdef extern from *:
    """
    #include <stdint.h>
    """
    ctypedef unsigned long long uint64_t

cdef uint64_t _GOLDEN = 0x9E3779B97F4A7C15ULL
cdef double _INV_2_53 = 1.0 / 9007199254740992.0


cdef inline uint64_t _mix64(uint64_t z) nogil:
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL
    return z ^ (z >> 31)


def stream_seed(seed, tag):
    """Initial splitmix64 state for the (seed, tag) stream."""
    cdef uint64_t s = <uint64_t> (seed & 0xFFFFFFFFFFFFFFFF)
    cdef uint64_t t = <uint64_t> (tag & 0xFFFFFFFFFFFFFFFF)
    return _mix64(s ^ (t * _GOLDEN))


cdef inline double _unif(uint64_t *state) nogil:
    state[0] = state[0] + _GOLDEN
    cdef uint64_t z = _mix64(state[0])
    return (z >> 11) * _INV_2_53


def rand_doubles(seed, tag, n):
    """The raw uniform stream; used to lock the two backends together in tests."""
    cdef uint64_t state = <uint64_t> stream_seed(seed, tag)
    cdef Py_ssize_t i
    out = []
    for i in range(n):
        out.append(_unif(&state))
    return out


def banach_sweep(double a, double b, double c, double k, long n, seed, tag,
                 double scale, double slack):
    """Search for a violation of  d(F(x,y), F(u,v)) <= (k/2) * [d(x,u) + d(y,v)]
    over n random comparable quadruples.

    Returns (found, checked, x, y, u, v, lhs, rhs).
    """
    cdef uint64_t state = <uint64_t> stream_seed(seed, tag)
    cdef long i
    cdef double r1, r2, r3, r4, x, v, p, q, u, y, fxy, fuv, lhs, rhs, m
    for i in range(n):
        r1 = _unif(&state)
        r2 = _unif(&state)
        r3 = _unif(&state)
        r4 = _unif(&state)
        x = (2.0 * r1 - 1.0) * scale
        v = (2.0 * r2 - 1.0) * scale
        p = r3 * scale
        q = r4 * scale
        u = x - p
        y = v - q
        fxy = (a * x - b * y) / c
        fuv = (a * u - b * v) / c
        lhs = fabs(fxy - fuv)
        rhs = 0.5 * k * (fabs(x - u) + fabs(y - v))
        m = rhs if rhs > 1.0 else 1.0
        if lhs > rhs + slack * m:
            return (1, i + 1, x, y, u, v, lhs, rhs)
    return (0, n, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0)


def band_sweep(double a, double b, double c, double eps, double delta, long n,
               seed, tag, double scale, int mode, int symmetric, double slack):
    """Meir-Keeler band search: quadruples with half-sum in [eps, eps + delta).

    Returns (found, hits, x, y, u, v, half, lhs). See the pure twin for the
    mode/violation semantics.
    """
    cdef uint64_t state = <uint64_t> stream_seed(seed, tag)
    cdef long i
    cdef long hits = 0
    cdef double hi = eps + delta
    cdef double m = eps if eps > 1.0 else 1.0
    cdef double thresh = eps + slack * m
    cdef double r1, r2, r3, r4, h, p, q, x, v, u, y, dxu, dyv, half
    cdef double fxy, fuv, fyx, fvu, lhs
    for i in range(n):
        r1 = _unif(&state)
        r2 = _unif(&state)
        r3 = _unif(&state)
        h = eps + r1 * delta
        if mode == 0:
            r4 = _unif(&state)
            p = 2.0 * h * r4
            q = 2.0 * h - p
        elif mode == 1:
            p = 0.0
            q = 2.0 * h
        else:
            p = 2.0 * h
            q = 0.0
        x = (2.0 * r2 - 1.0) * scale
        v = (2.0 * r3 - 1.0) * scale
        u = x - p
        y = v - q
        dxu = fabs(x - u)
        dyv = fabs(y - v)
        half = 0.5 * (dxu + dyv)
        if not (half >= eps and half < hi):
            continue
        hits += 1
        fxy = (a * x - b * y) / c
        fuv = (a * u - b * v) / c
        lhs = fabs(fxy - fuv)
        if symmetric:
            fyx = (a * y - b * x) / c
            fvu = (a * v - b * u) / c
            lhs = 0.5 * (lhs + fabs(fyx - fvu))
        if lhs >= thresh:
            return (1, hits, x, y, u, v, half, lhs)
    return (0, hits, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0)


def strict_sweep(double a, double b, double c, long n, seed, tag, double scale,
                 double slack):
    """Strict contraction of the pair map under the product metric.

    Returns (found, checked, x, y, u, v, d2_before, d2_after).
    """
    cdef uint64_t state = <uint64_t> stream_seed(seed, tag)
    cdef long i
    cdef long checked = 0
    cdef double r1, r2, r3, r4, x, v, p, q, u, y, dxu, dyv, d2yv
    cdef double fxy, fuv, fyx, fvu, d2t, m
    for i in range(n):
        r1 = _unif(&state)
        r2 = _unif(&state)
        r3 = _unif(&state)
        r4 = _unif(&state)
        x = (2.0 * r1 - 1.0) * scale
        v = (2.0 * r2 - 1.0) * scale
        p = r3 * scale
        q = r4 * scale
        u = x - p
        y = v - q
        dxu = fabs(x - u)
        dyv = fabs(y - v)
        d2yv = 0.5 * (dxu + dyv)
        if d2yv <= 0.0:
            continue
        checked += 1
        fxy = (a * x - b * y) / c
        fuv = (a * u - b * v) / c
        fyx = (a * y - b * x) / c
        fvu = (a * v - b * u) / c
        d2t = 0.5 * (fabs(fxy - fuv) + fabs(fyx - fvu))
        m = d2yv if d2yv > 1.0 else 1.0
        if d2t >= d2yv - slack * m:
            return (1, checked, x, y, u, v, d2yv, d2t)
    return (0, checked, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0)
