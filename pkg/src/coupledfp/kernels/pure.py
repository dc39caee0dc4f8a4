"""Pure-Python sweep kernels for linear coupled maps F(x, y) = (a*x - b*y)/c on the real line.

This module is the reference implementation. The Cython twin
(``coupledfp.kernels._compiled``) mirrors it statement for statement; both
must produce bit-identical tuples for identical arguments (same RNG stream,
same arithmetic, same evaluation order). Any semantic change here must be
replicated in the .pyx file.

All sweeps draw comparable quadruples (x >= u, y <= v) and stop at the first
violation. Floats only; exact (rational) spaces are handled elsewhere.
"""

_MASK64 = (1 << 64) - 1
_GOLDEN = 0x9E3779B97F4A7C15
_INV_2_53 = 1.0 / 9007199254740992.0  # 2^-53


def _mix64(z):
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
    return z ^ (z >> 31)


def stream_seed(seed, tag):
    """Initial splitmix64 state for the (seed, tag) stream."""
    return _mix64((seed & _MASK64) ^ ((tag & _MASK64) * _GOLDEN & _MASK64))


def _next_unif(state):
    # splitmix64 step, then map the top 53 bits to [0, 1)
    state = (state + _GOLDEN) & _MASK64
    z = _mix64(state)
    return state, (z >> 11) * _INV_2_53


def rand_doubles(seed, tag, n):
    """The raw uniform stream; used to lock the two backends together in tests."""
    state = stream_seed(seed, tag)
    out = []
    for _ in range(n):
        state, r = _next_unif(state)
        out.append(r)
    return out


def banach_sweep(a, b, c, k, n, seed, tag, scale, slack):
    """Search for a violation of  d(F(x,y), F(u,v)) <= (k/2) * [d(x,u) + d(y,v)]
    over n random comparable quadruples.

    Returns (found, checked, x, y, u, v, lhs, rhs).
    """
    state = stream_seed(seed, tag)
    for i in range(n):
        state, r1 = _next_unif(state)
        state, r2 = _next_unif(state)
        state, r3 = _next_unif(state)
        state, r4 = _next_unif(state)
        x = (2.0 * r1 - 1.0) * scale
        v = (2.0 * r2 - 1.0) * scale
        p = r3 * scale
        q = r4 * scale
        u = x - p
        y = v - q
        fxy = (a * x - b * y) / c
        fuv = (a * u - b * v) / c
        lhs = abs(fxy - fuv)
        rhs = 0.5 * k * (abs(x - u) + abs(y - v))
        m = rhs if rhs > 1.0 else 1.0
        if lhs > rhs + slack * m:
            return (1, i + 1, x, y, u, v, lhs, rhs)
    return (0, n, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0)


def band_sweep(a, b, c, eps, delta, n, seed, tag, scale, mode, symmetric, slack):
    """Meir-Keeler band search: quadruples with half-sum in [eps, eps + delta).

    mode 0 draws a random split of the half-sum across the two coordinates,
    mode 1 pins x == u (all mass on the second coordinate), mode 2 pins y == v.
    The half-sum is re-derived from the constructed coordinates and checked
    against the band, so edge rounding can only drop a draw, never let an
    out-of-band quadruple through.

    A draw violates the condition when the conclusion quantity (coordinate
    image distance, or the averaged pair of image distances when symmetric)
    reaches eps + slack * max(1, eps).

    Returns (found, hits, x, y, u, v, half, lhs).
    """
    state = stream_seed(seed, tag)
    hits = 0
    hi = eps + delta
    m = eps if eps > 1.0 else 1.0
    thresh = eps + slack * m
    for _ in range(n):
        state, r1 = _next_unif(state)
        state, r2 = _next_unif(state)
        state, r3 = _next_unif(state)
        h = eps + r1 * delta
        if mode == 0:
            state, r4 = _next_unif(state)
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
        dxu = abs(x - u)
        dyv = abs(y - v)
        half = 0.5 * (dxu + dyv)
        if not (half >= eps and half < hi):
            continue
        hits += 1
        fxy = (a * x - b * y) / c
        fuv = (a * u - b * v) / c
        lhs = abs(fxy - fuv)
        if symmetric:
            fyx = (a * y - b * x) / c
            fvu = (a * v - b * u) / c
            lhs = 0.5 * (lhs + abs(fyx - fvu))
        if lhs >= thresh:
            return (1, hits, x, y, u, v, half, lhs)
    return (0, hits, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0)


def strict_sweep(a, b, c, n, seed, tag, scale, slack):
    """Strict contraction of the pair map under the product metric:
    d2(T(Y), T(V)) < d2(Y, V) over strictly comparable distinct pairs.

    Equality within slack counts as a violation (nonexpansive maps must be
    flagged), so this check errs on the strict side of the inequality.

    Returns (found, checked, x, y, u, v, d2_before, d2_after).
    """
    state = stream_seed(seed, tag)
    checked = 0
    for _ in range(n):
        state, r1 = _next_unif(state)
        state, r2 = _next_unif(state)
        state, r3 = _next_unif(state)
        state, r4 = _next_unif(state)
        x = (2.0 * r1 - 1.0) * scale
        v = (2.0 * r2 - 1.0) * scale
        p = r3 * scale
        q = r4 * scale
        u = x - p
        y = v - q
        dxu = abs(x - u)
        dyv = abs(y - v)
        d2yv = 0.5 * (dxu + dyv)
        if d2yv <= 0.0:
            continue
        checked += 1
        fxy = (a * x - b * y) / c
        fuv = (a * u - b * v) / c
        fyx = (a * y - b * x) / c
        fvu = (a * v - b * u) / c
        d2t = 0.5 * (abs(fxy - fuv) + abs(fyx - fvu))
        m = d2yv if d2yv > 1.0 else 1.0
        if d2t >= d2yv - slack * m:
            return (1, checked, x, y, u, v, d2yv, d2t)
    return (0, checked, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0)
