"""Pure-Python sweep kernel over table-encoded local rings.

Same contract as the compiled kernel in ``_core``: matrices are flat
row-major lists of element indices, polynomials are trimmed constant-first
index lists, and every function takes a :class:`..tables.LocalRingTables`.
The decomposition pipeline here must stay in exact agreement with the
object-level implementation in :mod:`cleanforge.matclean`; the lifted data
is mathematically unique, so agreement is testable by equality.

Sampling uses the splitmix-style 64-bit generator; entries are drawn
row-major as ``next() % size``.  Exhaustive sweeps enumerate flat matrices
with entry 0 varying fastest.
"""

from __future__ import annotations

BACKEND = "pure-python"

_MASK = (1 << 64) - 1
_GAMMA = 0x9E3779B97F4A7C15
_MIX1 = 0xBF58476D1CE4E5B9
_MIX2 = 0x94D049BB133111EB


def _sm_next(state):
    state = (state + _GAMMA) & _MASK
    z = state
    z = ((z ^ (z >> 30)) * _MIX1) & _MASK
    z = ((z ^ (z >> 27)) * _MIX2) & _MASK
    return state, z ^ (z >> 31)


def splitmix_values(seed, count):
    state = seed & _MASK
    out = []
    for _ in range(count):
        state, v = _sm_next(state)
        out.append(v)
    return out


def _matmul(addt, mult, s, n, A, B):
    out = [0] * (n * n)
    for i in range(n):
        ib = i * n
        for j in range(n):
            acc = 0
            for l in range(n):
                acc = addt[acc * s + mult[A[ib + l] * s + B[l * n + j]]]
            out[ib + j] = acc
    return out


def _matpow(addt, mult, s, n, A, e):
    out = [0] * (n * n)
    for i in range(n):
        out[i * n + i] = 1
    base = list(A)
    while e:
        if e & 1:
            out = _matmul(addt, mult, s, n, out, base)
        e >>= 1
        if e:
            base = _matmul(addt, mult, s, n, base, base)
    return out


def _charpoly(addt, mult, negt, s, n, A):
    """Berkowitz recurrence; returns constant-first index list, monic."""
    prev = [1, negt[A[0]]]  # leading coefficient first while iterating
    for r in range(1, n):
        row = [A[r * n + j] for j in range(r)]
        w = [A[i * n + r] for i in range(r)]

        def dot(u, v):
            acc = 0
            for x, y in zip(u, v):
                acc = addt[acc * s + mult[x * s + y]]
            return acc

        svals = [dot(row, w)]
        for _ in range(r - 1):
            w = [dot([A[i * n + l] for l in range(r)], w) for i in range(r)]
            svals.append(dot(row, w))
        t = [1, negt[A[r * n + r]]] + [negt[x] for x in svals]
        new = []
        for i in range(r + 2):
            acc = 0
            lo = i - r - 1
            if lo < 0:
                lo = 0
            hi = i if i < r else r
            for j in range(lo, hi + 1):
                acc = addt[acc * s + mult[t[i - j] * s + prev[j]]]
            new.append(acc)
        prev = new
    prev.reverse()
    return prev


def _trim(c):
    while c and c[-1] == 0:
        c.pop()
    return c


def _padd(addt, s, a, b):
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, x in enumerate(b):
        out[i] = addt[out[i] * s + x]
    return _trim(out)


def _psub(addt, negt, s, a, b):
    out = list(a)
    if len(out) < len(b):
        out.extend([0] * (len(b) - len(out)))
    for i, x in enumerate(b):
        out[i] = addt[out[i] * s + negt[x]]
    return _trim(out)


def _pmul(addt, mult, s, a, b):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x == 0:
            continue
        base = x * s
        for j, y in enumerate(b):
            if y:
                out[i + j] = addt[out[i + j] * s + mult[base + y]]
    return _trim(out)


def _pdivmod_monic(addt, mult, negt, s, f, g):
    dg = len(g) - 1
    rem = list(f)
    if len(rem) - 1 < dg:
        return [], _trim(rem)
    quot = [0] * (len(rem) - dg)
    for i in range(len(rem) - dg - 1, -1, -1):
        c = rem[i + dg]
        if c == 0:
            continue
        quot[i] = c
        nc = negt[c] * s
        for j, b in enumerate(g):
            if b:
                rem[i + j] = addt[rem[i + j] * s + mult[nc + b]]
    del rem[dg:]
    return _trim(quot), _trim(rem)


def _peval(addt, mult, s, n, f, A):
    out = [0] * (n * n)
    for c in reversed(f):
        out = _matmul(addt, mult, s, n, out, A)
        if c:
            for i in range(n):
                di = i * n + i
                out[di] = addt[out[di] * s + c]
    return out


def _rp_trim(c):
    while c and c[-1] == 0:
        c.pop()
    return c


def _rp_mul(p, a, b):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x == 0:
            continue
        for j, y in enumerate(b):
            out[i + j] = (out[i + j] + x * y) % p
    return _rp_trim(out)


def _rp_sub(p, a, b):
    out = list(a)
    if len(out) < len(b):
        out.extend([0] * (len(b) - len(out)))
    for i, x in enumerate(b):
        out[i] = (out[i] - x) % p
    return _rp_trim(out)


def _rp_add(p, a, b):
    out = list(a)
    if len(out) < len(b):
        out.extend([0] * (len(b) - len(out)))
    for i, x in enumerate(b):
        out[i] = (out[i] + x) % p
    return _rp_trim(out)


def _rp_divmod(p, f, g):
    dg = len(g) - 1
    inv_lead = pow(g[-1], -1, p)
    rem = list(f)
    if len(rem) - 1 < dg:
        return [], _rp_trim(rem)
    quot = [0] * (len(rem) - dg)
    for i in range(len(rem) - dg - 1, -1, -1):
        c = rem[i + dg] * inv_lead % p
        if c == 0:
            continue
        quot[i] = c
        for j, b in enumerate(g):
            rem[i + j] = (rem[i + j] - c * b) % p
    del rem[dg:]
    return _rp_trim(quot), _rp_trim(rem)


def _rp_bezout_coprime(p, g, h):
    """(u, v) with u*g + v*h = 1, deg u < deg h, deg v < deg g."""
    r0, r1 = list(g), list(h)
    s0, s1 = [1], []
    t0, t1 = [], [1]
    while r1:
        q, r = _rp_divmod(p, r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, _rp_sub(p, s0, _rp_mul(p, q, s1))
        t0, t1 = t1, _rp_sub(p, t0, _rp_mul(p, q, t1))
    if len(r0) != 1:
        raise RuntimeError("kernel Bezout on non-coprime inputs")
    cinv = pow(r0[0], -1, p)
    u = [x * cinv % p for x in s0]
    v = [x * cinv % p for x in t0]
    q, u = _rp_divmod(p, u, h)
    v = _rp_add(p, v, _rp_mul(p, q, g))
    return u, v


def decompose_one(t, n, a):
    """Strongly clean decomposition of a flat matrix of element indices.

    Returns ``(case, e, u, cert)`` with case 0 = unit, 1 = unipotent shift,
    2 = split; ``cert`` is ``(g, h, u, v)`` as index lists for case 2.
    """
    s = t.size
    addt, mult, negt, rest, liftt = t.add, t.mul, t.neg, t.res, t.lift
    p, k = t.p, t.k
    nn = n * n
    f = _charpoly(addt, mult, negt, s, n, a)
    m = 0
    while rest[f[m]] == 0:
        m += 1
    if m == 0:
        return 0, [0] * nn, list(a), None
    if m == n:
        e = [0] * nn
        for i in range(n):
            e[i * n + i] = 1
        u = [addt[a[i] * s + negt[e[i]]] for i in range(nn)]
        return 1, e, u, None
    fb = [rest[c] for c in f]
    gbar = [0] * m + [1]
    hbar = fb[m:]
    ubar, vbar = _rp_bezout_coprime(p, gbar, hbar)
    g = [0] * m + [1]
    h = [liftt[c] for c in hbar]
    u0 = [liftt[c] for c in ubar]
    v0 = [liftt[c] for c in vbar]
    deg_h = n - m
    for _ in range(k - 1):
        err = _psub(addt, negt, s, f, _pmul(addt, mult, s, g, h))
        if not err:
            break
        q, r = _pdivmod_monic(addt, mult, negt, s, _pmul(addt, mult, s, v0, err), g)
        dh = _padd(addt, s, _pmul(addt, mult, s, u0, err), _pmul(addt, mult, s, q, h))
        del dh[deg_h:]
        g = _padd(addt, s, g, r)
        h = _padd(addt, s, h, _trim(dh))
    if _psub(addt, negt, s, f, _pmul(addt, mult, s, g, h)):
        raise RuntimeError("kernel factor lifting did not converge")
    uu, vv = list(u0), list(v0)
    for _ in range(k - 1):
        acc = _padd(
            addt, s, _pmul(addt, mult, s, uu, g), _pmul(addt, mult, s, vv, h)
        )
        b = _psub(addt, negt, s, [1], acc)
        if not b:
            break
        q, r = _pdivmod_monic(addt, mult, negt, s, _pmul(addt, mult, s, vv, b), g)
        du = _padd(addt, s, _pmul(addt, mult, s, uu, b), _pmul(addt, mult, s, q, h))
        del du[deg_h:]
        uu = _padd(addt, s, uu, _trim(du))
        vv = _padd(addt, s, vv, r)
    acc = _padd(addt, s, _pmul(addt, mult, s, uu, g), _pmul(addt, mult, s, vv, h))
    if _psub(addt, negt, s, [1], acc):
        raise RuntimeError("kernel Bezout refinement did not converge")
    e = _matmul(
        addt, mult, s, n, _peval(addt, mult, s, n, vv, a), _peval(addt, mult, s, n, h, a)
    )
    u = [addt[a[i] * s + negt[e[i]]] for i in range(nn)]
    return 2, e, u, (g, h, uu, vv)


def check_clean(t, n, a, e, u):
    """Verify A = E+U, E idempotent, EU = UE, det(U) a unit."""
    s = t.size
    addt, mult, negt, rest = t.add, t.mul, t.neg, t.res
    for i in range(n * n):
        if addt[e[i] * s + u[i]] != a[i]:
            return False
    if _matmul(addt, mult, s, n, e, e) != list(e):
        return False
    if _matmul(addt, mult, s, n, e, u) != _matmul(addt, mult, s, n, u, e):
        return False
    cp = _charpoly(addt, mult, negt, s, n, u)
    return rest[cp[0]] != 0


def _each_matrix(t, n, sample, count, seed):
    s = t.size
    nn = n * n
    if sample:
        state = seed & _MASK
        for _ in range(count):
            a = [0] * nn
            for i in range(nn):
                state, v = _sm_next(state)
                a[i] = v % s
            yield a
    else:
        a = [0] * nn
        total = s**nn
        for _ in range(total):
            yield a
            i = 0
            while i < nn:
                a[i] += 1
                if a[i] < s:
                    break
                a[i] = 0
                i += 1


def sweep_decompose(t, n, sample, count, seed, fail_cap):
    """Decompose and verify every matrix; returns (checked, nfail, fails)."""
    checked = 0
    nfail = 0
    fails = []
    for a in _each_matrix(t, n, sample, count, seed):
        checked += 1
        try:
            _case, e, u, _cert = decompose_one(t, n, a)
            ok = check_clean(t, n, a, e, u)
        except RuntimeError:
            ok = False
        if not ok:
            nfail += 1
            if len(fails) < fail_cap:
                fails.append(tuple(a))
    return checked, nfail, fails


def pireg_one(t, n, a):
    """Power-cycle witness; returns (q, s_matrix, period)."""
    s = t.size
    addt, mult = t.add, t.mul
    ident = [0] * (n * n)
    for i in range(n):
        ident[i * n + i] = 1
    key = 0
    for x in ident:
        key = key * s + x
    seen = {key: 0}
    cur = list(a)
    e = 1
    while True:
        key = 0
        for x in cur:
            key = key * s + x
        if key in seen:
            start = seen[key]
            period = e - start
            break
        seen[key] = e
        cur = _matmul(addt, mult, s, n, cur, a)
        e += 1
    q = start if start >= 1 else 1
    s_mat = _matpow(addt, mult, s, n, a, period - 1)
    return q, s_mat, period


def check_pireg(t, n, a, q, s_mat, period):
    s = t.size
    addt, mult = t.add, t.mul
    aq = _matpow(addt, mult, s, n, a, q)
    rhs = _matmul(addt, mult, s, n, _matmul(addt, mult, s, n, aq, a), s_mat)
    if aq != rhs:
        return False
    w = _matmul(addt, mult, s, n, aq, _matpow(addt, mult, s, n, s_mat, q))
    return _matmul(addt, mult, s, n, w, w) == w


def sweep_pireg(t, n, sample, count, seed, fail_cap):
    """Witness and verify every matrix; returns (checked, nfail, fails, max_q)."""
    checked = 0
    nfail = 0
    fails = []
    max_q = 0
    q_bound_factor = n * t.k
    for a in _each_matrix(t, n, sample, count, seed):
        checked += 1
        q, s_mat, period = pireg_one(t, n, a)
        if q > max_q:
            max_q = q
        if not check_pireg(t, n, a, q, s_mat, period) or q > q_bound_factor * period:
            nfail += 1
            if len(fails) < fail_cap:
                fails.append(tuple(a))
    return checked, nfail, fails, max_q
