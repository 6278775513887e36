"""Shared exact-arithmetic helpers for the fixture generators.

The artifact consumes curve bundles as input data; these scripts play the
role of the external computer-algebra system that produced them. Everything
here is exact (gmpy2 rationals) except where a numeric value is explicitly
recognized and then verified exactly downstream.
"""

import json
from fractions import Fraction

import gmpy2
from gmpy2 import mpq


# ---------------------------------------------------------------------------
# cyclotomic numbers: vectors of mpq modulo Phi_N


def moebius(n):
    m, p, r = n, 2, 1
    while p * p <= m:
        if m % p == 0:
            m //= p
            if m % p == 0:
                return 0
            r = -r
        p += 1
    if m > 1:
        r = -r
    return r


def poly_mul(a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x == 0:
            continue
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


def poly_divexact(a, b):
    a = list(a)
    out = [0] * (len(a) - len(b) + 1)
    for k in range(len(out) - 1, -1, -1):
        c = a[k + len(b) - 1]
        if c % b[-1] != 0:
            c = mpq(c, b[-1])
        else:
            c = c // b[-1]
        out[k] = c
        for j, y in enumerate(b):
            a[k + j] -= c * y
    assert all(x == 0 for x in a)
    return out


def cyclotomic_poly(N):
    num = [1]
    den = [1]
    for d in range(1, N + 1):
        if N % d:
            continue
        mu = moebius(N // d)
        f = [-1] + [0] * (d - 1) + [1]
        if mu == 1:
            num = poly_mul(num, f)
        elif mu == -1:
            den = poly_mul(den, f)
    return poly_divexact(num, den)


class CycloField:
    def __init__(self, N):
        self.N = N
        self.phi_poly = cyclotomic_poly(N)
        self.phi = len(self.phi_poly) - 1
        # x^k mod Phi for k up to 2 phi - 2, and zeta^m for m < N
        red = []
        cur = [mpq(-c) for c in self.phi_poly[:-1]]
        red.append(list(cur))
        for _ in range(self.phi + 1, 2 * self.phi - 1):
            top = cur[-1]
            cur = [mpq(0)] + cur[:-1]
            if top != 0:
                cur = [c + top * r for c, r in zip(cur, red[0])]
            red.append(list(cur))
        self.red = red
        self.zpow = []
        p = [mpq(0)] * self.phi
        p[0] = mpq(1)
        for _ in range(N):
            self.zpow.append(list(p))
            top = p[-1]
            p = [mpq(0)] + p[:-1]
            if top != 0:
                p = [c + top * r for c, r in zip(p, red[0])]


class Cyclo:
    __slots__ = ("f", "c")

    def __init__(self, f, c=None):
        self.f = f
        self.c = [mpq(0)] * f.phi if c is None else c

    @staticmethod
    def rat(f, r):
        x = Cyclo(f)
        x.c[0] = mpq(r)
        return x

    @staticmethod
    def zeta(f, k=1):
        x = Cyclo(f)
        x.c = list(f.zpow[k % f.N])
        return x

    def is_zero(self):
        return all(v == 0 for v in self.c)

    def __add__(self, o):
        return Cyclo(self.f, [a + b for a, b in zip(self.c, o.c)])

    def __sub__(self, o):
        return Cyclo(self.f, [a - b for a, b in zip(self.c, o.c)])

    def __neg__(self):
        return Cyclo(self.f, [-a for a in self.c])

    def scale(self, r):
        return Cyclo(self.f, [a * mpq(r) for a in self.c])

    def __mul__(self, o):
        phi = self.f.phi
        prod = [mpq(0)] * (2 * phi - 1)
        for i, a in enumerate(self.c):
            if a == 0:
                continue
            for j, b in enumerate(o.c):
                if b == 0:
                    continue
                prod[i + j] += a * b
        out = prod[:phi]
        for k in range(phi, 2 * phi - 1):
            if prod[k] != 0:
                row = self.f.red[k - phi]
                for i in range(phi):
                    out[i] += prod[k] * row[i]
        return Cyclo(self.f, out)

    def inv(self):
        # extended Euclid in Q[x] against Phi_N
        a = list(self.c)
        while a and a[-1] == 0:
            a.pop()
        b = [mpq(c) for c in self.f.phi_poly]
        s0, s1 = [mpq(1)], []
        r0, r1 = a, b

        def pdiv(x, y):
            x = list(x)
            q = [mpq(0)] * max(1, len(x) - len(y) + 1)
            while x and len(x) >= len(y):
                f = x[-1] / y[-1]
                q[len(x) - len(y)] += f
                for j in range(len(y)):
                    x[len(x) - len(y) + j] -= f * y[j]
                while x and x[-1] == 0:
                    x.pop()
            return q, x

        while r1:
            q, r2 = pdiv(r0, r1)
            s2 = list(s0)
            qs = poly_mul(q, s1) if s1 else []
            s2 = [
                (s2[i] if i < len(s2) else mpq(0)) - (qs[i] if i < len(qs) else mpq(0))
                for i in range(max(len(s2), len(qs)))
            ]
            r0, r1, s0, s1 = r1, r2, s1, s2
        inv = [c / r0[0] for c in s0]
        out = [mpq(0)] * self.f.phi
        for i, c in enumerate(inv):
            out[i] = c
        return Cyclo(self.f, out)

    def galois(self, k):
        out = Cyclo(self.f)
        for i, a in enumerate(self.c):
            if a == 0:
                continue
            row = self.f.zpow[(i * k) % self.f.N]
            for j in range(self.f.phi):
                out.c[j] += a * row[j]
        return out


# ---------------------------------------------------------------------------
# truncated series in q^{1/w} with Cyclo (or mpq) coefficients


class QSeries:
    """coeffs[i] = coefficient of q^{(v+i)/w}; prec is the exclusive cutoff."""

    __slots__ = ("f", "w", "v", "prec", "a")

    def __init__(self, f, w, v, prec, coeffs=None):
        self.f = f
        self.w = w
        self.v = v
        self.prec = prec
        self.a = coeffs if coeffs is not None else [Cyclo(f) for _ in range(prec - v)]

    @staticmethod
    def zero(f, w, prec):
        return QSeries(f, w, prec, prec, [])

    def coeff(self, n):
        if n < self.v or n >= self.v + len(self.a):
            return Cyclo(self.f)
        return self.a[n - self.v]

    def normalized(self):
        i = 0
        while i < len(self.a) and self.a[i].is_zero():
            i += 1
        return QSeries(self.f, self.w, self.v + i, self.prec, self.a[i:])

    def is_zero(self):
        return all(c.is_zero() for c in self.a)

    def __add__(self, o):
        assert self.w == o.w
        v = min(self.v, o.v)
        prec = min(self.prec, o.prec)
        out = QSeries(self.f, self.w, v, prec)
        for n in range(v, prec):
            out.a[n - v] = self.coeff(n) + o.coeff(n)
        return out.normalized()

    def __sub__(self, o):
        return self + o.scale(-1)

    def scale(self, r):
        return QSeries(self.f, self.w, self.v, self.prec, [c.scale(r) for c in self.a])

    def cmul(self, cy):
        return QSeries(self.f, self.w, self.v, self.prec, [c * cy for c in self.a])

    def __mul__(self, o):
        assert self.w == o.w
        rel = min(self.prec - self.v, o.prec - o.v)
        v = self.v + o.v
        out = QSeries(self.f, self.w, v, v + rel)
        if self.is_zero() or o.is_zero():
            return QSeries.zero(self.f, self.w, v + rel)
        for i, x in enumerate(self.a):
            if x.is_zero():
                continue
            jmax = min(len(o.a), rel - i)
            for j in range(jmax):
                y = o.a[j]
                if y.is_zero():
                    continue
                out.a[i + j] = out.a[i + j] + x * y
        return out

    def inverse(self):
        s = self.normalized()
        assert s.a and not s.a[0].is_zero()
        rel = s.prec - s.v
        lead = s.a[0].inv()
        rem = [Cyclo(self.f) for _ in range(rel)]
        rem[0] = Cyclo.rat(self.f, 1)
        out = QSeries(self.f, self.w, -s.v, -s.v + rel)
        for k in range(rel):
            q = rem[k] * lead
            out.a[k] = q
            if not q.is_zero():
                for j in range(min(rel - k, len(s.a))):
                    rem[k + j] = rem[k + j] - q * s.a[j]
        return out

    def antiderivative(self):
        # a(n) q^{n/w} -> (w/n) a(n) q^{n/w}; needs v >= 1
        s = self.normalized()
        assert s.v >= 1 or s.is_zero()
        return QSeries(
            self.f, self.w, s.v, s.prec, [c.scale(mpq(s.w, s.v + i)) for i, c in enumerate(s.a)]
        )


def wp_coeffs(g2, g3, terms):
    """d[k-1] = coefficient of z^{2k} in p(z) = z^{-2} + sum d_k z^{2k}."""
    d = [mpq(0)] * terms
    if terms >= 1:
        d[0] = mpq(g2) / 20
    if terms >= 2:
        d[1] = mpq(g3) / 28
    for k in range(3, terms + 1):
        s = sum(d[m - 1] * d[k - 1 - m - 1] for m in range(1, k - 1))
        d[k - 1] = mpq(3, (2 * k + 3) * (k - 2)) * s
    return d


def wp_compose(F, g2, g3):
    """(X, Y) = (p(F), p'(F)) as exact series; F must have valuation >= 1."""
    f = F.f
    v0 = F.normalized().v
    terms = F.prec // (2 * v0) + 2
    d = wp_coeffs(g2, g3, terms)
    G = F * F
    one = QSeries(f, F.w, 0, G.prec - 2 * G.v)
    one.a[0] = Cyclo.rat(f, 1)
    Ginv = one * G.inverse()
    acc = QSeries.zero(f, F.w, G.prec)
    for k in range(terms, 0, -1):
        dk = QSeries(f, F.w, 0, G.prec)
        dk.a[0] = Cyclo.rat(f, d[k - 1])
        acc = (acc + dk) * G
    X = Ginv + acc
    dacc = QSeries.zero(f, F.w, G.prec)
    for k in range(terms, 0, -1):
        dk = QSeries(f, F.w, 0, G.prec)
        dk.a[0] = Cyclo.rat(f, 2 * k * d[k - 1])
        dacc = dk if k == terms else dacc * G + dk
    Yp = (one * (G * F).inverse()).scale(-2) + dacc * F
    return X, Yp


def series_point_plus(ainvs, X, Y, T, f):
    """(X(q), Y(q)) + T by the chord law over the series ring; T = (tx, ty) exact."""
    a1, a2, a3, a4, a6 = [mpq(a) for a in ainvs]
    tx, ty = T
    w, prec = X.w, min(X.prec, Y.prec)

    def const(cy):
        s = QSeries(f, w, 0, prec)
        s.a[0] = cy
        return s

    txs, tys = const(tx), const(ty)
    lam = (Y - tys) * (X - txs).inverse()
    nu = Y - lam * X
    x3 = lam * lam + lam.scale(a1) - const(Cyclo.rat(f, a2)) - X - txs
    y3 = (lam.scale(1) + const(Cyclo.rat(f, a1))).scale(-1) * x3 - nu - const(Cyclo.rat(f, a3))
    return x3, y3


def check_weierstrass(ainvs, x, y, where):
    a1, a2, a3, a4, a6 = [mpq(a) for a in ainvs]
    lhs = y * y + (x * y).scale(a1) + y.scale(a3)
    rhs = x * x * x + (x * x).scale(a2) + x.scale(a4)
    diff = lhs - rhs
    c = QSeries(diff.f, diff.w, 0, diff.prec)
    c.a[0] = Cyclo.rat(diff.f, a6)
    diff = diff - c
    assert diff.is_zero(), f"Weierstrass relation fails at {where}"


# ---------------------------------------------------------------------------
# JSON emission (bundle schema)


def rat_str(r):
    r = mpq(r)
    return f"{r.numerator}/{r.denominator}" if r.denominator != 1 else f"{r.numerator}"


def series_json(s):
    return {
        "width": s.w,
        "valuation": s.v,
        "prec": s.prec,
        "coeffs": [[rat_str(c) for c in cy.c] for cy in s.a],
    }


def poly_json(nvars, degree, terms):
    return {
        "nvars": nvars,
        "degree": degree,
        "terms": [[list(e), rat_str(c)] for e, c in terms],
    }


def pochhammer_sq(n_terms, m):
    """prod_{k>=1} (1 - t^{mk})^2 up to t^{n_terms}, exact ints."""
    a = [0] * n_terms
    a[0] = 1
    k = 1
    while m * k < n_terms:
        for _ in range(2):
            # multiply by (1 - t^{mk}) in place (descending not needed: sparse)
            for i in range(n_terms - 1, m * k - 1, -1):
                a[i] -= a[i - m * k]
        k += 1
    return a
