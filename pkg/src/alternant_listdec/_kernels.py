"""Compiled inner loops. All field values are ints; tables come from the caller.

`exp` is the doubled antilog table (length 2(q-1)) and `log[0]` is -1, so a
product of nonzero a, b is exp[log[a] + log[b]].
"""
import numpy as np
from numba import njit


@njit(cache=True)
def _build_tables(e, modulus):
    q = 1 << e
    q1 = q - 1
    exp = np.zeros(2 * q1, dtype=np.int32)
    log = np.full(q, -1, dtype=np.int32)
    v = 1
    for i in range(q1):
        if i > 0 and v == 1:
            return exp, log, False
        exp[i] = v
        exp[i + q1] = v
        log[v] = i
        v <<= 1
        if v & q:
            v ^= modulus
    return exp, log, v == 1


def build_tables(e, modulus):
    exp, log, ok = _build_tables(e, modulus)
    if not ok:
        return None, None
    return exp, log


@njit(cache=True, inline="always")
def _mul(a, b, exp, log):
    if a == 0 or b == 0:
        return 0
    return exp[log[a] + log[b]]


@njit(cache=True)
def _inv(a, exp, log, q1):
    return exp[(q1 - log[a]) % q1]


@njit(cache=True)
def _pow(a, e, exp, log, q1):
    if e == 0:
        return 1
    if a == 0:
        return 0
    return exp[(log[a] * e) % q1]


# ---------------------------------------------------------------------------
# Koetter interpolation
#
# G[j, t, p] is the coefficient of X^p Y^q Z^r in G_j where slice t <-> (q, r)
# and q + r < mu. Every G_j only has terms of weighted degree <= its leading
# monomial's, so slice t of G_j lives in p <= lmdeg_j - K*(q+r).


@njit(cache=True)
def _key_less(j, k, lm_a, lm_b, lm_c, K):
    dj = lm_a[j] + K * (lm_b[j] + lm_c[j])
    dk = lm_a[k] + K * (lm_b[k] + lm_c[k])
    if dj != dk:
        return dj < dk
    if lm_a[j] != lm_a[k]:
        return lm_a[j] < lm_a[k]
    return lm_b[j] < lm_b[k]


@njit(cache=True)
def interpolate_point(G, lm_a, lm_b, lm_c, tq, tr, K, x, y, z, M, exp, log, q1):
    """Impose every Hasse constraint of order < M at (x, y, z). Returns #visited."""
    l = G.shape[0]
    T = G.shape[1]
    if M <= 0:
        return 0
    XC = G.shape[2]
    # local jets: J[j, a, b, c] = D_{a,b,c}[G_j](x, y, z) for a+b+c < M
    J = np.zeros((l, M, M, M), dtype=np.int32)
    xl = log[x] if x != 0 else 0
    yl = log[y] if y != 0 else 0
    zl = log[z] if z != 0 else 0
    xpl = np.zeros(XC + 1, dtype=np.int64)
    for e in range(1, XC + 1):
        xpl[e] = (xl * e) % q1
    for j in range(l):
        D = lm_a[j] + K * (lm_b[j] + lm_c[j])
        for t in range(T):
            q = tq[t]
            r = tr[t]
            if y == 0 and q >= M:
                continue
            if z == 0 and r >= M:
                continue
            hi = D - K * (q + r)
            if hi < 0:
                continue
            bmin = 0 if y != 0 else q
            cmin = 0 if z != 0 else r
            amax = M - 1 - bmin - cmin
            for a in range(amax + 1):
                s = 0
                if x == 0:
                    if a <= hi:
                        s = G[j, t, a]
                else:
                    p = a
                    while p <= hi:
                        g = G[j, t, p]
                        if g != 0:
                            s ^= exp[log[g] + xpl[p - a]]
                        p = (p + 1) | a
                if s == 0:
                    continue
                ls = log[s]
                bmax = min(q, M - 1 - a)
                for b in range(bmin, bmax + 1):
                    if (q & b) != b:
                        continue
                    cmax = min(r, M - 1 - a - b)
                    for c in range(cmin, cmax + 1):
                        if (r & c) != c:
                            continue
                        e = ls + (yl * (q - b)) % q1 + (zl * (r - c)) % q1
                        J[j, a, b, c] ^= exp[e % q1]
    visited = 0
    for a in range(M):
        for b in range(M - a):
            for c in range(M - a - b):
                visited += 1
                jp = -1
                for j in range(l):
                    if J[j, a, b, c] != 0:
                        if jp < 0 or _key_less(j, jp, lm_a, lm_b, lm_c, K):
                            jp = j
                if jp < 0:
                    continue
                dl = log[J[jp, a, b, c]]
                Dp = lm_a[jp] + K * (lm_b[jp] + lm_c[jp])
                for j in range(l):
                    if j == jp:
                        continue
                    d = J[j, a, b, c]
                    if d == 0:
                        continue
                    cl = (log[d] - dl) % q1
                    for t in range(T):
                        hi = Dp - K * (tq[t] + tr[t])
                        for p in range(hi + 1):
                            g = G[jp, t, p]
                            if g != 0:
                                G[j, t, p] ^= exp[log[g] + cl]
                    for a2 in range(M):
                        for b2 in range(M - a2):
                            for c2 in range(M - a2 - b2):
                                g = J[jp, a2, b2, c2]
                                if g != 0:
                                    J[j, a2, b2, c2] ^= exp[log[g] + cl]
                # G_jp <- (X + x) G_jp
                for t in range(T):
                    hi = Dp - K * (tq[t] + tr[t])
                    if hi < 0:
                        continue
                    for p in range(hi + 1, 0, -1):
                        g = G[jp, t, p]
                        v = G[jp, t, p - 1]
                        if g != 0 and x != 0:
                            v ^= exp[log[g] + xl]
                        G[jp, t, p] = v
                    g = G[jp, t, 0]
                    G[jp, t, 0] = exp[log[g] + xl] if (g != 0 and x != 0) else 0
                for a2 in range(M - 1, 0, -1):
                    for b2 in range(M - a2):
                        for c2 in range(M - a2 - b2):
                            J[jp, a2, b2, c2] = J[jp, a2 - 1, b2, c2]
                for b2 in range(M):
                    for c2 in range(M - b2):
                        J[jp, 0, b2, c2] = 0
                lm_a[jp] += 1
    return visited


# ---------------------------------------------------------------------------
# Resultant by evaluation / interpolation over an extension field.
#
# A[r, q, p] is the coefficient of X^p V^q W^r where W is the eliminated
# variable and V the surviving one. Output H[p, q] with X^p V^q.


@njit(cache=True)
def _poly_mod_deg(A, da, B, db, exp, log, q1):
    """A <- A mod B in place (B monic not required). Returns the new degree of A."""
    lb = log[B[db]]
    while da >= db:
        c = A[da]
        if c != 0:
            sh = da - db
            f = (log[c] - lb) % q1
            for i in range(db + 1):
                g = B[i]
                if g != 0:
                    A[i + sh] ^= exp[log[g] + f]
        da -= 1
        while da >= 0 and A[da] == 0:
            da -= 1
    return da


@njit(cache=True)
def _scalar_resultant(Qv, dQ, Pv, dP, wa, wb, exp, log, q1):
    """Determinant of the Sylvester matrix with formal degrees dQ, dP."""
    if dQ == 0:
        return _pow(Qv[0], dP, exp, log, q1)
    if dP == 0:
        return _pow(Pv[0], dQ, exp, log, q1)
    aq = dQ
    while aq >= 0 and Qv[aq] == 0:
        aq -= 1
    ap = dP
    while ap >= 0 and Pv[ap] == 0:
        ap -= 1
    if aq < 0 or ap < 0:
        return 0
    if aq < dQ and ap < dP:
        return 0
    res = 1
    if aq < dQ:
        res = _pow(Pv[ap], dQ - aq, exp, log, q1)
    elif ap < dP:
        res = _pow(Qv[aq], dP - ap, exp, log, q1)
    if aq == 0:
        return _mul(res, _pow(Qv[0], ap, exp, log, q1), exp, log)
    if ap == 0:
        return _mul(res, _pow(Pv[0], aq, exp, log, q1), exp, log)
    for i in range(aq + 1):
        wa[i] = Qv[i]
    for i in range(ap + 1):
        wb[i] = Pv[i]
    A = wa
    B = wb
    da = aq
    db = ap
    while True:
        if db == 0:
            return _mul(res, _pow(B[0], da, exp, log, q1), exp, log)
        r = _poly_mod_deg(A, da, B, db, exp, log, q1)
        if r < 0:
            return 0
        res = _mul(res, _pow(B[db], da - r, exp, log, q1), exp, log)
        A, B = B, A
        da, db = db, r


@njit(cache=True)
def _newton_coeffs(vals, n, exp, log, q1, out, work):
    """Interpolate through (i, vals[i]) for i < n; points are the ints 0..n-1.

    Writes monomial coefficients to out[:n].
    """
    for i in range(n):
        work[i] = vals[i]
    for lvl in range(1, n):
        for i in range(n - 1, lvl - 1, -1):
            num = work[i] ^ work[i - 1]
            if num == 0:
                work[i] = 0
            else:
                den = i ^ (i - lvl)
                work[i] = exp[(log[num] - log[den]) % q1]
    # Horner-style conversion of the Newton form
    for i in range(n):
        out[i] = 0
    for i in range(n - 1, -1, -1):
        # out <- out * (X - i) + work[i]
        node = i
        if node != 0:
            nl = log[node]
            for d in range(n - 1 - i, 0, -1):
                g = out[d]
                v = out[d - 1]
                if g != 0:
                    v ^= exp[log[g] + nl]
                out[d] = v
            g = out[0]
            out[0] = exp[log[g] + nl] if g != 0 else 0
        else:
            for d in range(n - 1 - i, 0, -1):
                out[d] = out[d - 1]
            out[0] = 0
        out[0] ^= work[i]


@njit(cache=True)
def resultant_grid(Aq, dQ, Ap, dP, NX, NY, XB, exp, log, q1):
    """Coefficients H[p, q] of the resultant; XB[q] bounds deg_X of the V^q coefficient.

    Inputs are already embedded in the evaluation field.
    """
    RQ = Aq.shape[1]
    RP = Ap.shape[1]
    XQ = Aq.shape[2]
    XP = Ap.shape[2]
    # values V_eval[i, q] = h_q(xi_i) after interpolation in V for each xi
    HV = np.zeros((NX, NY), dtype=np.int32)
    CQ = np.zeros((dQ + 1, RQ), dtype=np.int32)
    CP = np.zeros((dP + 1, RP), dtype=np.int32)
    Qv = np.zeros(dQ + 1, dtype=np.int32)
    Pv = np.zeros(dP + 1, dtype=np.int32)
    wa = np.zeros(max(dQ, dP) + 1, dtype=np.int32)
    wb = np.zeros(max(dQ, dP) + 1, dtype=np.int32)
    yv = np.zeros(NY, dtype=np.int32)
    ny_work = np.zeros(NY, dtype=np.int32)
    ny_out = np.zeros(NY, dtype=np.int32)
    for i in range(NX):
        xi = i
        xil = log[xi] if xi != 0 else 0
        # Horner in X for every (r, q) slice
        for r in range(dQ + 1):
            for q in range(RQ):
                acc = 0
                for p in range(XQ - 1, -1, -1):
                    if acc != 0 and xi != 0:
                        acc = exp[log[acc] + xil]
                    elif xi == 0:
                        acc = 0
                    acc ^= Aq[r, q, p]
                CQ[r, q] = acc
        for r in range(dP + 1):
            for q in range(RP):
                acc = 0
                for p in range(XP - 1, -1, -1):
                    if acc != 0 and xi != 0:
                        acc = exp[log[acc] + xil]
                    elif xi == 0:
                        acc = 0
                    acc ^= Ap[r, q, p]
                CP[r, q] = acc
        for jv in range(NY):
            eta = jv
            el = log[eta] if eta != 0 else 0
            for r in range(dQ + 1):
                acc = 0
                for q in range(RQ - 1, -1, -1):
                    if acc != 0 and eta != 0:
                        acc = exp[log[acc] + el]
                    elif eta == 0:
                        acc = 0
                    acc ^= CQ[r, q]
                Qv[r] = acc
            for r in range(dP + 1):
                acc = 0
                for q in range(RP - 1, -1, -1):
                    if acc != 0 and eta != 0:
                        acc = exp[log[acc] + el]
                    elif eta == 0:
                        acc = 0
                    acc ^= CP[r, q]
                Pv[r] = acc
            yv[jv] = _scalar_resultant(Qv, dQ, Pv, dP, wa, wb, exp, log, q1)
        _newton_coeffs(yv, NY, exp, log, q1, ny_out, ny_work)
        for q in range(NY):
            HV[i, q] = ny_out[q]
    XM = 0
    for q in range(NY):
        if XB[q] + 1 > XM:
            XM = XB[q] + 1
    H = np.zeros((XM, NY), dtype=np.int32)
    colv = np.zeros(NX, dtype=np.int32)
    work = np.zeros(NX, dtype=np.int32)
    out = np.zeros(NX, dtype=np.int32)
    for q in range(NY):
        nb = XB[q] + 1
        if nb <= 0:
            continue
        for i in range(nb):
            colv[i] = HV[i, q]
        _newton_coeffs(colv, nb, exp, log, q1, out, work)
        for p in range(nb):
            H[p, q] = out[p]
    return H


# ---------------------------------------------------------------------------
# Roth-Ruckenstein node transform on dense bivariate arrays A[x_deg, y_deg]


@njit(cache=True)
def rr_children_roots(A, field_order, exp, log):
    """Roots of A(0, Y) in ascending order of value."""
    dy = A.shape[1] - 1
    roots = np.zeros(field_order, dtype=np.int64)
    nr = 0
    for c in range(field_order):
        acc = 0
        cl = log[c] if c != 0 else 0
        for b in range(dy, -1, -1):
            if acc != 0 and c != 0:
                acc = exp[log[acc] + cl]
            elif c == 0:
                acc = 0
            acc ^= A[0, b]
        if acc == 0:
            roots[nr] = c
            nr += 1
    return roots[:nr]


@njit(cache=True)
def rr_shift(A, c, exp, log, q1):
    """Return A(X, X*Y + c) / X^v, trimmed. A must be nonzero."""
    nx = A.shape[0]
    ny = A.shape[1]
    # Taylor shift Y -> Y + c: B[a, j] = sum_{b >= j, b & j == j} c^(b-j) A[a, b]
    B = np.zeros((nx, ny), dtype=np.int32)
    cl = log[c] if c != 0 else 0
    if c == 0:
        for a in range(nx):
            for b in range(ny):
                B[a, b] = A[a, b]
    else:
        for b in range(ny):
            for a in range(nx):
                g = A[a, b]
                if g == 0:
                    continue
                lg = log[g]
                # enumerate j subset of b
                j = b
                while True:
                    B[a, j] ^= exp[lg + (cl * (b - j)) % q1]
                    if j == 0:
                        break
                    j = (j - 1) & b
    # Y -> X Y: term X^a Y^j moves to X^(a+j) Y^j; then strip X^v
    v = nx + ny
    maxdeg = -1
    maxy = -1
    for a in range(nx):
        for j in range(ny):
            if B[a, j] != 0:
                if a + j < v:
                    v = a + j
                if a + j > maxdeg:
                    maxdeg = a + j
                if j > maxy:
                    maxy = j
    if maxdeg < 0:
        return np.zeros((1, 1), dtype=np.int32)
    C = np.zeros((maxdeg - v + 1, maxy + 1), dtype=np.int32)
    for a in range(nx):
        for j in range(maxy + 1):
            g = B[a, j]
            if g != 0:
                C[a + j - v, j] = g
    return C


@njit(cache=True)
def strip_x(A):
    """Divide by the largest power of X dividing A and trim trailing zeros."""
    nx = A.shape[0]
    ny = A.shape[1]
    lo = nx
    hi = -1
    maxy = -1
    for a in range(nx):
        for b in range(ny):
            if A[a, b] != 0:
                if a < lo:
                    lo = a
                if a > hi:
                    hi = a
                if b > maxy:
                    maxy = b
    if hi < 0:
        return np.zeros((1, 1), dtype=np.int32)
    return A[lo:hi + 1, :maxy + 1].copy()


@njit(cache=True)
def eval_bivariate_at_poly(A, f, exp, log):
    """Coefficients of A(X, f(X)) (dense, possibly with trailing zeros)."""
    nx = A.shape[0]
    ny = A.shape[1]
    df = f.shape[0] - 1
    out = np.zeros(nx + (ny - 1) * max(df, 0) + 1, dtype=np.int32)
    # Horner in Y with polynomial multiplication by f
    acc = np.zeros(out.shape[0], dtype=np.int32)
    tmp = np.zeros(out.shape[0], dtype=np.int32)
    dacc = -1
    for b in range(ny - 1, -1, -1):
        # acc <- acc * f
        if dacc >= 0:
            for i in range(dacc + df + 1):
                tmp[i] = 0
            for i in range(dacc + 1):
                g = acc[i]
                if g == 0:
                    continue
                lg = log[g]
                for k in range(df + 1):
                    h = f[k]
                    if h != 0:
                        tmp[i + k] ^= exp[lg + log[h]]
            nd = dacc + df
            for i in range(nd + 1):
                acc[i] = tmp[i]
            dacc = nd
        # acc += A[:, b]
        for a in range(nx):
            g = A[a, b]
            if g != 0:
                acc[a] ^= g
                if a > dacc:
                    dacc = a
        if dacc >= 0:
            while dacc >= 0 and acc[dacc] == 0:
                dacc -= 1
    for i in range(out.shape[0]):
        out[i] = acc[i]
    return out
