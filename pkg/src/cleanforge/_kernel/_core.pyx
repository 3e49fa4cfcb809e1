# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled sweep kernel; must agree bit-for-bit with ``_core_py``.

Matrices are flat row-major index lists, polynomials trimmed constant-first
index lists.  Dimensions are capped by ``tables.TABLE_DIM_LIMIT`` (6) and
ring size by ``tables.TABLE_SIZE_LIMIT`` (128), so every intermediate fits
the fixed stack buffers used here.
"""

import array as _array

from cpython cimport array
from cpython.bytes cimport PyBytes_FromStringAndSize

BACKEND = "compiled"

cdef inline unsigned long long _sm_next(unsigned long long *state):
    state[0] = state[0] + 0x9E3779B97F4A7C15ULL
    cdef unsigned long long z = state[0]
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL
    return z ^ (z >> 31)


def splitmix_values(seed, count):
    cdef unsigned long long state = <unsigned long long> (seed & 0xFFFFFFFFFFFFFFFF)
    cdef long long i
    out = []
    for i in range(count):
        out.append(_sm_next(&state))
    return out


cdef class _KTab:
    cdef array.array add_a, mul_a, neg_a, res_a, lift_a
    cdef int[::1] add, mul, neg, res, lift
    cdef int s, p, k

_KTAB_CACHE = {}


cdef _KTab _ktab(t):
    cached = _KTAB_CACHE.get(t.spec)
    if cached is not None:
        return <_KTab> cached
    cdef _KTab kt = _KTab.__new__(_KTab)
    kt.add_a = _array.array("i", t.add)
    kt.mul_a = _array.array("i", t.mul)
    kt.neg_a = _array.array("i", t.neg)
    kt.res_a = _array.array("i", t.res)
    kt.lift_a = _array.array("i", t.lift)
    kt.add = kt.add_a
    kt.mul = kt.mul_a
    kt.neg = kt.neg_a
    kt.res = kt.res_a
    kt.lift = kt.lift_a
    kt.s = t.size
    kt.p = t.p
    kt.k = t.k
    _KTAB_CACHE[t.spec] = kt
    return kt


cdef void _mmul(int[::1] addt, int[::1] mult, int s, int n, int *A, int *B, int *out):
    cdef int i, j, l, acc
    for i in range(n):
        for j in range(n):
            acc = 0
            for l in range(n):
                acc = addt[acc * s + mult[A[i * n + l] * s + B[l * n + j]]]
            out[i * n + j] = acc


cdef void _mpow(int[::1] addt, int[::1] mult, int s, int n, int *A, long long e, int *out):
    cdef int base[36]
    cdef int work[36]
    cdef int i
    for i in range(n * n):
        out[i] = 0
        base[i] = A[i]
    for i in range(n):
        out[i * n + i] = 1
    while e:
        if e & 1:
            _mmul(addt, mult, s, n, out, base, work)
            for i in range(n * n):
                out[i] = work[i]
        e >>= 1
        if e:
            _mmul(addt, mult, s, n, base, base, work)
            for i in range(n * n):
                base[i] = work[i]


cdef void _cpoly(int[::1] addt, int[::1] mult, int[::1] negt, int s, int n, int *A, int *out):
    cdef int prev[8]
    cdef int newv[8]
    cdef int w[8]
    cdef int w2[8]
    cdef int sv[8]
    cdef int tt[8]
    cdef int plen, r, i, j, l, acc, lo, hi, svn
    prev[0] = 1
    prev[1] = negt[A[0]]
    plen = 2
    for r in range(1, n):
        for i in range(r):
            w[i] = A[i * n + r]
        acc = 0
        for j in range(r):
            acc = addt[acc * s + mult[A[r * n + j] * s + w[j]]]
        sv[0] = acc
        svn = 1
        for l in range(r - 1):
            for i in range(r):
                acc = 0
                for j in range(r):
                    acc = addt[acc * s + mult[A[i * n + j] * s + w[j]]]
                w2[i] = acc
            for i in range(r):
                w[i] = w2[i]
            acc = 0
            for j in range(r):
                acc = addt[acc * s + mult[A[r * n + j] * s + w[j]]]
            sv[svn] = acc
            svn += 1
        tt[0] = 1
        tt[1] = negt[A[r * n + r]]
        for i in range(svn):
            tt[2 + i] = negt[sv[i]]
        for i in range(r + 2):
            acc = 0
            lo = i - r - 1
            if lo < 0:
                lo = 0
            hi = i
            if hi > r:
                hi = r
            for j in range(lo, hi + 1):
                acc = addt[acc * s + mult[tt[i - j] * s + prev[j]]]
            newv[i] = acc
        for i in range(r + 2):
            prev[i] = newv[i]
        plen = r + 2
    for i in range(plen):
        out[i] = prev[plen - 1 - i]


cdef inline int _ptrim(int *a, int alen):
    while alen > 0 and a[alen - 1] == 0:
        alen -= 1
    return alen


cdef int _padd(int[::1] addt, int s, int *a, int alen, int *b, int blen, int *out):
    cdef int olen = alen if alen > blen else blen
    cdef int i, x, y
    for i in range(olen):
        x = a[i] if i < alen else 0
        y = b[i] if i < blen else 0
        out[i] = addt[x * s + y]
    return _ptrim(out, olen)


cdef int _psub(int[::1] addt, int[::1] negt, int s, int *a, int alen, int *b, int blen, int *out):
    cdef int olen = alen if alen > blen else blen
    cdef int i, x, y
    for i in range(olen):
        x = a[i] if i < alen else 0
        y = b[i] if i < blen else 0
        out[i] = addt[x * s + negt[y]]
    return _ptrim(out, olen)


cdef int _pmul(int[::1] addt, int[::1] mult, int s, int *a, int alen, int *b, int blen, int *out):
    cdef int i, j, base, olen
    if alen == 0 or blen == 0:
        return 0
    olen = alen + blen - 1
    for i in range(olen):
        out[i] = 0
    for i in range(alen):
        if a[i] == 0:
            continue
        base = a[i] * s
        for j in range(blen):
            if b[j]:
                out[i + j] = addt[out[i + j] * s + mult[base + b[j]]]
    return _ptrim(out, olen)


cdef int _pdivmod_monic(int[::1] addt, int[::1] mult, int[::1] negt, int s,
                        int *f, int flen, int *g, int glen,
                        int *quot, int *rem, int *remlen):
    cdef int dg = glen - 1
    cdef int i, j, c, nc, qlen
    for i in range(flen):
        rem[i] = f[i]
    if flen - 1 < dg:
        remlen[0] = _ptrim(rem, flen)
        return 0
    qlen = flen - dg
    for i in range(qlen):
        quot[i] = 0
    for i in range(qlen - 1, -1, -1):
        c = rem[i + dg]
        if c == 0:
            continue
        quot[i] = c
        nc = negt[c] * s
        for j in range(glen):
            if g[j]:
                rem[i + j] = addt[rem[i + j] * s + mult[nc + g[j]]]
    remlen[0] = _ptrim(rem, dg)
    return _ptrim(quot, qlen)


cdef void _peval(int[::1] addt, int[::1] mult, int s, int n, int *f, int flen, int *A, int *out):
    cdef int work[36]
    cdef int i, ci, c, di
    for i in range(n * n):
        out[i] = 0
    for ci in range(flen - 1, -1, -1):
        _mmul(addt, mult, s, n, out, A, work)
        for i in range(n * n):
            out[i] = work[i]
        c = f[ci]
        if c:
            for i in range(n):
                di = i * n + i
                out[di] = addt[out[di] * s + c]


cdef int _minv(int a, int p):
    cdef int t = 0, newt = 1, r = p, newr = a % p, q, tmp
    while newr != 0:
        q = r / newr
        tmp = t - q * newt
        t = newt
        newt = tmp
        tmp = r % newr
        r = newr
        newr = tmp
    if t < 0:
        t += p
    return t


cdef int _rp_divmod(int p, int *f, int flen, int *g, int glen, int *quot, int *rem, int *remlen):
    cdef int dg = glen - 1
    cdef int inv_lead = _minv(g[dg], p)
    cdef int i, j, c, qlen
    for i in range(flen):
        rem[i] = f[i]
    if flen - 1 < dg:
        remlen[0] = _ptrim(rem, flen)
        return 0
    qlen = flen - dg
    for i in range(qlen):
        quot[i] = 0
    for i in range(qlen - 1, -1, -1):
        c = rem[i + dg] * inv_lead % p
        if c == 0:
            continue
        quot[i] = c
        for j in range(glen):
            rem[i + j] = (rem[i + j] - c * g[j]) % p
            if rem[i + j] < 0:
                rem[i + j] += p
    remlen[0] = _ptrim(rem, dg)
    return _ptrim(quot, qlen)


cdef int _rp_mulsub(int p, int *a, int alen, int *q, int qlen, int *b, int blen, int *out):
    # out = a - q*b over Z/p
    cdef int olen = alen
    cdef int plen = 0
    cdef int i, j
    if qlen and blen:
        plen = qlen + blen - 1
    if plen > olen:
        olen = plen
    for i in range(olen):
        out[i] = a[i] if i < alen else 0
    for i in range(qlen):
        if q[i] == 0:
            continue
        for j in range(blen):
            out[i + j] = (out[i + j] - q[i] * b[j]) % p
            if out[i + j] < 0:
                out[i + j] += p
    return _ptrim(out, olen)


cdef int _rp_muladd(int p, int *a, int alen, int *q, int qlen, int *b, int blen, int *out):
    # out = a + q*b over Z/p
    cdef int olen = alen
    cdef int plen = 0
    cdef int i, j
    if qlen and blen:
        plen = qlen + blen - 1
    if plen > olen:
        olen = plen
    for i in range(olen):
        out[i] = a[i] if i < alen else 0
    for i in range(qlen):
        if q[i] == 0:
            continue
        for j in range(blen):
            out[i + j] = (out[i + j] + q[i] * b[j]) % p
    return _ptrim(out, olen)


cdef int _rp_bezout(int p, int *g, int glen, int *h, int hlen,
                    int *u, int *v, int *vlen) except -1:
    # u*g + v*h = 1 for coprime residues; returns len(u), sets len(v)
    cdef int r0[32]
    cdef int r1[32]
    cdef int s0[32]
    cdef int s1[32]
    cdef int t0[32]
    cdef int t1[32]
    cdef int q[32]
    cdef int rem[32]
    cdef int tmp[32]
    cdef int r0len, r1len, s0len, s1len, t0len, t1len
    cdef int qlen, remlen, tmplen, i, cinv, ulen
    for i in range(glen):
        r0[i] = g[i]
    r0len = glen
    for i in range(hlen):
        r1[i] = h[i]
    r1len = hlen
    s0[0] = 1
    s0len = 1
    s1len = 0
    t0len = 0
    t1[0] = 1
    t1len = 1
    while r1len:
        qlen = _rp_divmod(p, r0, r0len, r1, r1len, q, rem, &remlen)
        for i in range(r1len):
            r0[i] = r1[i]
        r0len = r1len
        for i in range(remlen):
            r1[i] = rem[i]
        r1len = remlen
        tmplen = _rp_mulsub(p, s0, s0len, q, qlen, s1, s1len, tmp)
        for i in range(s1len):
            s0[i] = s1[i]
        s0len = s1len
        for i in range(tmplen):
            s1[i] = tmp[i]
        s1len = tmplen
        tmplen = _rp_mulsub(p, t0, t0len, q, qlen, t1, t1len, tmp)
        for i in range(t1len):
            t0[i] = t1[i]
        t0len = t1len
        for i in range(tmplen):
            t1[i] = tmp[i]
        t1len = tmplen
    if r0len != 1:
        raise RuntimeError("kernel Bezout on non-coprime inputs")
    cinv = _minv(r0[0], p)
    for i in range(s0len):
        s0[i] = s0[i] * cinv % p
    for i in range(t0len):
        t0[i] = t0[i] * cinv % p
    qlen = _rp_divmod(p, s0, s0len, h, hlen, q, rem, &remlen)
    for i in range(remlen):
        u[i] = rem[i]
    ulen = remlen
    vlen[0] = _rp_muladd(p, t0, t0len, q, qlen, g, glen, v)
    return ulen


cdef int _decomp(_KTab kt, int n, int *a, int *e, int *u,
                 int *g, int *glen, int *h, int *hlen,
                 int *uu, int *uulen, int *vv, int *vvlen) except -1:
    cdef int[::1] addt = kt.add
    cdef int[::1] mult = kt.mul
    cdef int[::1] negt = kt.neg
    cdef int[::1] rest = kt.res
    cdef int[::1] liftt = kt.lift
    cdef int s = kt.s
    cdef int p = kt.p
    cdef int k = kt.k
    cdef int nn = n * n
    cdef int f[8]
    cdef int fb[8]
    cdef int gbar[8]
    cdef int hbar[8]
    cdef int ubar[32]
    cdef int vbar[32]
    cdef int u0[32]
    cdef int v0[32]
    cdef int err[32]
    cdef int prod[32]
    cdef int quot[32]
    cdef int rem[32]
    cdef int dh[32]
    cdef int acc[32]
    cdef int evh[36]
    cdef int evv[36]
    cdef int onep[1]
    cdef int m, i, deg_h, it
    cdef int ublen, vblen, u0len, v0len, errlen, prodlen, qlen, remlen, dhlen, acclen
    _cpoly(addt, mult, negt, s, n, a, f)
    m = 0
    while rest[f[m]] == 0:
        m += 1
    if m == 0:
        for i in range(nn):
            e[i] = 0
            u[i] = a[i]
        return 0
    if m == n:
        for i in range(nn):
            e[i] = 0
        for i in range(n):
            e[i * n + i] = 1
        for i in range(nn):
            u[i] = addt[a[i] * s + negt[e[i]]]
        return 1
    for i in range(n + 1):
        fb[i] = rest[f[i]]
    for i in range(m):
        gbar[i] = 0
    gbar[m] = 1
    for i in range(n + 1 - m):
        hbar[i] = fb[m + i]
    ublen = _rp_bezout(p, gbar, m + 1, hbar, n + 1 - m, ubar, vbar, &vblen)
    for i in range(m):
        g[i] = 0
    g[m] = 1
    glen[0] = m + 1
    for i in range(n + 1 - m):
        h[i] = liftt[hbar[i]]
    hlen[0] = n + 1 - m
    for i in range(ublen):
        u0[i] = liftt[ubar[i]]
    u0len = ublen
    for i in range(vblen):
        v0[i] = liftt[vbar[i]]
    v0len = vblen
    deg_h = n - m
    for it in range(k - 1):
        prodlen = _pmul(addt, mult, s, g, glen[0], h, hlen[0], prod)
        errlen = _psub(addt, negt, s, f, n + 1, prod, prodlen, err)
        if errlen == 0:
            break
        prodlen = _pmul(addt, mult, s, v0, v0len, err, errlen, prod)
        qlen = _pdivmod_monic(addt, mult, negt, s, prod, prodlen, g, glen[0], quot, rem, &remlen)
        prodlen = _pmul(addt, mult, s, u0, u0len, err, errlen, prod)
        acclen = _pmul(addt, mult, s, quot, qlen, h, hlen[0], acc)
        dhlen = _padd(addt, s, prod, prodlen, acc, acclen, dh)
        if dhlen > deg_h:
            dhlen = _ptrim(dh, deg_h)
        acclen = _padd(addt, s, g, glen[0], rem, remlen, acc)
        for i in range(acclen):
            g[i] = acc[i]
        glen[0] = acclen
        acclen = _padd(addt, s, h, hlen[0], dh, dhlen, acc)
        for i in range(acclen):
            h[i] = acc[i]
        hlen[0] = acclen
    prodlen = _pmul(addt, mult, s, g, glen[0], h, hlen[0], prod)
    errlen = _psub(addt, negt, s, f, n + 1, prod, prodlen, err)
    if errlen != 0:
        raise RuntimeError("kernel factor lifting did not converge")
    for i in range(u0len):
        uu[i] = u0[i]
    uulen[0] = u0len
    for i in range(v0len):
        vv[i] = v0[i]
    vvlen[0] = v0len
    onep[0] = 1
    for it in range(k - 1):
        prodlen = _pmul(addt, mult, s, uu, uulen[0], g, glen[0], prod)
        acclen = _pmul(addt, mult, s, vv, vvlen[0], h, hlen[0], acc)
        dhlen = _padd(addt, s, prod, prodlen, acc, acclen, dh)
        errlen = _psub(addt, negt, s, onep, 1, dh, dhlen, err)
        if errlen == 0:
            break
        prodlen = _pmul(addt, mult, s, vv, vvlen[0], err, errlen, prod)
        qlen = _pdivmod_monic(addt, mult, negt, s, prod, prodlen, g, glen[0], quot, rem, &remlen)
        prodlen = _pmul(addt, mult, s, uu, uulen[0], err, errlen, prod)
        acclen = _pmul(addt, mult, s, quot, qlen, h, hlen[0], acc)
        dhlen = _padd(addt, s, prod, prodlen, acc, acclen, dh)
        if dhlen > deg_h:
            dhlen = _ptrim(dh, deg_h)
        acclen = _padd(addt, s, uu, uulen[0], dh, dhlen, acc)
        for i in range(acclen):
            uu[i] = acc[i]
        uulen[0] = acclen
        acclen = _padd(addt, s, vv, vvlen[0], rem, remlen, acc)
        for i in range(acclen):
            vv[i] = acc[i]
        vvlen[0] = acclen
    prodlen = _pmul(addt, mult, s, uu, uulen[0], g, glen[0], prod)
    acclen = _pmul(addt, mult, s, vv, vvlen[0], h, hlen[0], acc)
    dhlen = _padd(addt, s, prod, prodlen, acc, acclen, dh)
    errlen = _psub(addt, negt, s, onep, 1, dh, dhlen, err)
    if errlen != 0:
        raise RuntimeError("kernel Bezout refinement did not converge")
    _peval(addt, mult, s, n, vv, vvlen[0], a, evv)
    _peval(addt, mult, s, n, h, hlen[0], a, evh)
    _mmul(addt, mult, s, n, evv, evh, e)
    for i in range(nn):
        u[i] = addt[a[i] * s + negt[e[i]]]
    return 2


cdef bint _check(_KTab kt, int n, int *a, int *e, int *u):
    cdef int[::1] addt = kt.add
    cdef int[::1] mult = kt.mul
    cdef int[::1] negt = kt.neg
    cdef int[::1] rest = kt.res
    cdef int s = kt.s
    cdef int w1[36]
    cdef int w2[36]
    cdef int cp[8]
    cdef int i
    for i in range(n * n):
        if addt[e[i] * s + u[i]] != a[i]:
            return False
    _mmul(addt, mult, s, n, e, e, w1)
    for i in range(n * n):
        if w1[i] != e[i]:
            return False
    _mmul(addt, mult, s, n, e, u, w1)
    _mmul(addt, mult, s, n, u, e, w2)
    for i in range(n * n):
        if w1[i] != w2[i]:
            return False
    _cpoly(addt, mult, negt, s, n, u, cp)
    return rest[cp[0]] != 0


cdef void _fill_list(int *buf, int blen, object lst):
    cdef int i
    for i in range(blen):
        lst.append(buf[i])


def decompose_one(t, n, a):
    """Strongly clean decomposition of a flat matrix of element indices.

    Returns ``(case, e, u, cert)`` with case 0 = unit, 1 = unipotent shift,
    2 = split; ``cert`` is ``(g, h, u, v)`` as index lists for case 2.
    """
    cdef _KTab kt = _ktab(t)
    cdef int cn = n
    cdef int am[36]
    cdef int em[36]
    cdef int um[36]
    cdef int g[32]
    cdef int h[32]
    cdef int uu[32]
    cdef int vv[32]
    cdef int glen = 0, hlen = 0, uulen = 0, vvlen = 0
    cdef int i, case
    for i in range(cn * cn):
        am[i] = a[i]
    case = _decomp(kt, cn, am, em, um, g, &glen, h, &hlen, uu, &uulen, vv, &vvlen)
    e_out = []
    u_out = []
    _fill_list(em, cn * cn, e_out)
    _fill_list(um, cn * cn, u_out)
    if case != 2:
        return case, e_out, u_out, None
    g_out = []
    h_out = []
    uu_out = []
    vv_out = []
    _fill_list(g, glen, g_out)
    _fill_list(h, hlen, h_out)
    _fill_list(uu, uulen, uu_out)
    _fill_list(vv, vvlen, vv_out)
    return case, e_out, u_out, (g_out, h_out, uu_out, vv_out)


def check_clean(t, n, a, e, u):
    """Verify A = E+U, E idempotent, EU = UE, det(U) a unit."""
    cdef _KTab kt = _ktab(t)
    cdef int cn = n
    cdef int am[36]
    cdef int em[36]
    cdef int um[36]
    cdef int i
    for i in range(cn * cn):
        am[i] = a[i]
        em[i] = e[i]
        um[i] = u[i]
    return bool(_check(kt, cn, am, em, um))


def sweep_decompose(t, n, sample, count, seed, fail_cap):
    """Decompose and verify every matrix; returns (checked, nfail, fails)."""
    cdef _KTab kt = _ktab(t)
    cdef int cn = n
    cdef int nn = cn * cn
    cdef int s = kt.s
    cdef int am[36]
    cdef int em[36]
    cdef int um[36]
    cdef int g[32]
    cdef int h[32]
    cdef int uu[32]
    cdef int vv[32]
    cdef int glen = 0, hlen = 0, uulen = 0, vvlen = 0
    cdef int i, ok
    cdef unsigned long long state
    cdef long long idx, total, checked = 0, nfail = 0
    cdef bint do_sample = bool(sample)
    fails = []
    cdef long long cap = fail_cap
    if do_sample:
        total = count
        state = <unsigned long long> (seed & 0xFFFFFFFFFFFFFFFF)
    else:
        py_total = (<object> s) ** nn
        if py_total >= (1 << 62):
            raise ValueError("exhaustive sweep too large for kernel")
        total = <long long> py_total
        for i in range(nn):
            am[i] = 0
    for idx in range(total):
        if do_sample:
            for i in range(nn):
                am[i] = <int> (_sm_next(&state) % <unsigned long long> s)
        checked += 1
        ok = 1
        try:
            _decomp(kt, cn, am, em, um, g, &glen, h, &hlen, uu, &uulen, vv, &vvlen)
            if not _check(kt, cn, am, em, um):
                ok = 0
        except RuntimeError:
            ok = 0
        if not ok:
            nfail += 1
            if <long long> len(fails) < cap:
                bad = []
                _fill_list(am, nn, bad)
                fails.append(tuple(bad))
        if not do_sample:
            i = 0
            while i < nn:
                am[i] += 1
                if am[i] < s:
                    break
                am[i] = 0
                i += 1
    return checked, nfail, fails


def pireg_one(t, n, a):
    """Power-cycle witness; returns (q, s_matrix, period)."""
    cdef _KTab kt = _ktab(t)
    cdef int cn = n
    cdef int nn = cn * cn
    cdef int s = kt.s
    cdef int am[36]
    cdef int cur[36]
    cdef int work[36]
    cdef int sm[36]
    cdef unsigned char kb[36]
    cdef int i
    cdef long long e, start, period, q
    for i in range(nn):
        am[i] = a[i]
        cur[i] = a[i]
    for i in range(nn):
        kb[i] = 0
    for i in range(cn):
        kb[i * cn + i] = 1
    seen = {PyBytes_FromStringAndSize(<char *> kb, nn): 0}
    e = 1
    while True:
        for i in range(nn):
            kb[i] = <unsigned char> cur[i]
        key = PyBytes_FromStringAndSize(<char *> kb, nn)
        hit = seen.get(key)
        if hit is not None:
            start = hit
            period = e - start
            break
        seen[key] = e
        _mmul(kt.add, kt.mul, s, cn, cur, am, work)
        for i in range(nn):
            cur[i] = work[i]
        e += 1
    q = start if start >= 1 else 1
    _mpow(kt.add, kt.mul, s, cn, am, period - 1, sm)
    s_out = []
    _fill_list(sm, nn, s_out)
    return q, s_out, period


cdef bint _check_pireg(_KTab kt, int n, int *a, long long q, int *sm, long long period):
    cdef int aq[36]
    cdef int w1[36]
    cdef int w2[36]
    cdef int i
    cdef int s = kt.s
    _mpow(kt.add, kt.mul, s, n, a, q, aq)
    _mmul(kt.add, kt.mul, s, n, aq, a, w1)
    _mmul(kt.add, kt.mul, s, n, w1, sm, w2)
    for i in range(n * n):
        if aq[i] != w2[i]:
            return False
    _mpow(kt.add, kt.mul, s, n, sm, q, w1)
    _mmul(kt.add, kt.mul, s, n, aq, w1, w2)
    _mmul(kt.add, kt.mul, s, n, w2, w2, w1)
    for i in range(n * n):
        if w1[i] != w2[i]:
            return False
    return True


def check_pireg(t, n, a, q, s_mat, period):
    cdef _KTab kt = _ktab(t)
    cdef int cn = n
    cdef int am[36]
    cdef int sm[36]
    cdef int i
    for i in range(cn * cn):
        am[i] = a[i]
        sm[i] = s_mat[i]
    return bool(_check_pireg(kt, cn, am, <long long> q, sm, <long long> period))


def sweep_pireg(t, n, sample, count, seed, fail_cap):
    """Witness and verify every matrix; returns (checked, nfail, fails, max_q)."""
    cdef _KTab kt = _ktab(t)
    cdef int cn = n
    cdef int nn = cn * cn
    cdef int s = kt.s
    cdef int am[36]
    cdef int cur[36]
    cdef int work[36]
    cdef int sm[36]
    cdef unsigned char kb[36]
    cdef int i
    cdef unsigned long long state
    cdef long long idx, total, checked = 0, nfail = 0, max_q = 0
    cdef long long e, start, period, q
    cdef bint do_sample = bool(sample)
    cdef long long cap = fail_cap
    fails = []
    if do_sample:
        total = count
        state = <unsigned long long> (seed & 0xFFFFFFFFFFFFFFFF)
    else:
        py_total = (<object> s) ** nn
        if py_total >= (1 << 62):
            raise ValueError("exhaustive sweep too large for kernel")
        total = <long long> py_total
        for i in range(nn):
            am[i] = 0
    for idx in range(total):
        if do_sample:
            for i in range(nn):
                am[i] = <int> (_sm_next(&state) % <unsigned long long> s)
        checked += 1
        seen = {}
        for i in range(nn):
            kb[i] = 0
        for i in range(cn):
            kb[i * cn + i] = 1
        seen[PyBytes_FromStringAndSize(<char *> kb, nn)] = 0
        for i in range(nn):
            cur[i] = am[i]
        e = 1
        while True:
            for i in range(nn):
                kb[i] = <unsigned char> cur[i]
            key = PyBytes_FromStringAndSize(<char *> kb, nn)
            hit = seen.get(key)
            if hit is not None:
                start = hit
                period = e - start
                break
            seen[key] = e
            _mmul(kt.add, kt.mul, s, cn, cur, am, work)
            for i in range(nn):
                cur[i] = work[i]
            e += 1
        q = start if start >= 1 else 1
        if q > max_q:
            max_q = q
        _mpow(kt.add, kt.mul, s, cn, am, period - 1, sm)
        if not _check_pireg(kt, cn, am, q, sm, period) or q > <long long> cn * kt.k * period:
            nfail += 1
            if <long long> len(fails) < cap:
                bad = []
                _fill_list(am, nn, bad)
                fails.append(tuple(bad))
        if not do_sample:
            i = 0
            while i < nn:
                am[i] += 1
                if am[i] < s:
                    break
                am[i] = 0
                i += 1
    return checked, nfail, fails, max_q
