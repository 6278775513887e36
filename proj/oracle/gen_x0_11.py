#!/usr/bin/env python3
"""Bundle generator for the level-11 Borel curve (X_0(11), genus 1).

The weight-2 form is the eta product q prod (1-q^n)^2 (1-q^{11n})^2 with
expansions at the cusps infinity (width 1) and 0 (width 11). The model is the
plane cubic for 11a1 with the degree-3 line bundle O(3*infinity); the
coordinate sections (x, y, 1) are obtained exactly by composing the
Abel-Jacobi series with the Weierstrass functions. The cusp-0 Abel-Jacobi
constant is located numerically (AGM lattice + row-summed Weierstrass p) and
then pinned to an exact 5-torsion point, which the exact series arithmetic
verifies downstream.
"""

import json
import math
import sys

import mpmath as mp
from gmpy2 import mpq

from oraclelib import (Cyclo, CycloField, QSeries, check_weierstrass, poly_json, pochhammer_sq,
                       rat_str, series_json, series_point_plus, wp_compose)

N = 11
PREC = 200
GEN = PREC + 16  # working precision; compositions lose a few terms
AINVS = [0, -1, 1, -10, -20]  # 11a1
mp.mp.prec = 180


def curve_data(ainvs):
    a1, a2, a3, a4, a6 = [mpq(a) for a in ainvs]
    b2 = a1 * a1 + 4 * a2
    b4 = 2 * a4 + a1 * a3
    b6 = a3 * a3 + 4 * a6
    c4 = b2 * b2 - 24 * b4
    c6 = -b2 ** 3 + 36 * b2 * b4 - 216 * b6
    return b2, c4 / 12, c6 / 216  # b2, g2, g3


def agm(a, b):
    for _ in range(200):
        am = (a + b) / 2
        gm = mp.sqrt(a * b)
        if abs(am - gm) > abs(am + gm):
            gm = -gm
        a, b = am, gm
        if abs(a - b) < mp.mpf(2) ** (-mp.mp.prec + 8) * abs(a):
            break
    return a


def lattice(g2, g3):
    """(om1, om2) with om1 real > 0; triangular normalization for disc < 0."""
    g2f, g3f = mp.mpf(g2.numerator) / g2.denominator, mp.mpf(g3.numerator) / g3.denominator
    rts = mp.polyroots([4, 0, -g2f, -g3f], maxsteps=200, extraprec=120)
    disc = g2f ** 3 - 27 * g3f ** 2
    if disc > 0:
        e = sorted([r.real for r in rts], reverse=True)
        om1 = mp.pi / agm(mp.sqrt(e[0] - e[2]), mp.sqrt(e[0] - e[1]))
        om2 = mp.mpc(0, 1) * mp.pi / agm(mp.sqrt(e[0] - e[2]), mp.sqrt(e[1] - e[2]))
        return om1, om2
    rts = sorted(rts, key=lambda r: abs(r.imag))
    e1 = rts[0]
    e2 = rts[1] if rts[1].imag > 0 else rts[2]
    e3 = rts[1] if rts[1].imag <= 0 else rts[2]
    om1 = (mp.pi / agm(mp.sqrt(e1 - e3), mp.sqrt(e1 - e2))).real
    om2 = mp.mpc(0, 1) * mp.pi / agm(mp.sqrt(e1 - e3), mp.sqrt(e2 - e3))
    om1 = abs(om1)
    im = abs(om2.imag)
    return om1, mp.mpc(om1 / 2, im)


def wp_rowsum(z, om1, om2, M=60):
    """p(z) and p'(z) by row-wise cotangent summation (independent of the
    Laurent recurrence)."""
    c = mp.pi / om1
    s = 1 / mp.sin(c * z) ** 2
    ds = -2 * c * mp.cos(c * z) / mp.sin(c * z) ** 3
    for m in range(1, M):
        for sg in (1, -1):
            zz = z + sg * m * om2
            s += 1 / mp.sin(c * zz) ** 2 - 1 / mp.sin(c * m * om2) ** 2
            ds += -2 * c * mp.cos(c * zz) / mp.sin(c * zz) ** 3
    return c ** 2 * s - c ** 2 / 3, c ** 2 * ds


def main():
    field = CycloField(N)

    def rat_series(w, v, prec, ints, scale=mpq(1)):
        s = QSeries(field, w, v, prec)
        for i, c in enumerate(ints[: prec - v]):
            s.a[i] = Cyclo.rat(field, mpq(c) * scale)
        return s

    # f at infinity: q prod (1-q^n)^2 (1-q^{11n})^2, width 1
    p1 = pochhammer_sq(GEN, 1)
    p11 = pochhammer_sq(GEN, 11)
    # product of the two (p11 is exponent-indexed, supported on multiples of 11)
    prod = [0] * GEN
    for i, x in enumerate(p1):
        if x == 0:
            continue
        for j in range(0, GEN - i, 11):
            y = p11[j]
            if y:
                prod[i + j] += x * y
    f_inf = rat_series(1, 1, GEN, prod)

    # f | S at cusp 0 (width 11): -(1/11) t prod (1-t^n)^2 (1-t^{11n})^2, t = q^{1/11}
    f_zero = rat_series(11, 1, GEN, prod, scale=mpq(-1, 11))

    b2, g2, g3 = curve_data(AINVS)

    # coordinates at infinity: x = p(F) - b2/12, y = (p'(F) - a1 x - a3)/2
    F = f_inf.antiderivative()
    X, Yp = wp_compose(F, g2, g3)
    b2s = QSeries(field, 1, 0, X.prec)
    b2s.a[0] = Cyclo.rat(field, b2 / 12)
    x_inf = X - b2s
    a1, a2_, a3, a4, a6 = [mpq(a) for a in AINVS]
    a3s = QSeries(field, 1, 0, Yp.prec)
    a3s.a[0] = Cyclo.rat(field, a3)
    y_inf = (Yp - x_inf.scale(a1) - a3s).scale(mpq(1, 2))
    check_weierstrass(AINVS, x_inf, y_inf, "cusp infinity")

    # cusp 0: Abel-Jacobi constant c0 = F_inf(i) - F_zero(i), then the exact
    # torsion point it represents
    def eval_F(series, z):
        tot = mp.mpc(0)
        for i, cy in enumerate(series.a):
            n = series.v + i
            c = cy.c[0]
            if c == 0:
                continue
            tot += mp.mpf(c.numerator) / mp.mpf(c.denominator) * mp.e ** (
                2j * mp.pi * z * n / series.w
            )
        return tot

    Fi = eval_F(f_inf.antiderivative(), mp.mpc(0, 1))
    F0 = eval_F(f_zero.antiderivative(), mp.mpc(0, 1))
    c0 = Fi - F0
    om1, om2 = lattice(g2, g3)
    # lattice coordinates of c0
    t = c0.imag / om2.imag
    s = (c0.real - t * om2.real) / om1
    sq = mp.nint(5 * s) / 5
    tq = mp.nint(5 * t) / 5
    assert abs(s - sq) < 1e-20 and abs(t - tq) < 1e-20, (s, t)
    assert not (mp.nint(5 * sq) % 5 == 0 and mp.nint(5 * tq) % 5 == 0), "expected 5-torsion"
    px, ppx = wp_rowsum(c0, om1, om2)
    xT = px - mp.mpf(b2.numerator) / b2.denominator / 12
    yT = (ppx - float(a1) * xT - mp.mpf(a3.numerator) / a3.denominator) / 2
    torsion = [(mpq(5), mpq(5)), (mpq(5), mpq(-6)), (mpq(16), mpq(60)), (mpq(16), mpq(-61))]
    T = min(torsion, key=lambda P: abs(xT - float(P[0])) + abs(yT - float(P[1])))
    assert abs(xT - float(T[0])) < 1e-15 and abs(yT - float(T[1])) < 1e-15, (xT, yT, T)
    print(f"cusp 0 maps to the 5-torsion point {T}")

    F0s = f_zero.antiderivative()
    X0, Yp0 = wp_compose(F0s, g2, g3)
    b2s0 = QSeries(field, 11, 0, X0.prec)
    b2s0.a[0] = Cyclo.rat(field, b2 / 12)
    x0_pre = X0 - b2s0
    a3s0 = QSeries(field, 11, 0, Yp0.prec)
    a3s0.a[0] = Cyclo.rat(field, a3)
    y0_pre = (Yp0 - x0_pre.scale(a1) - a3s0).scale(mpq(1, 2))
    Tc = (Cyclo.rat(field, T[0]), Cyclo.rat(field, T[1]))
    x_zero, y_zero = series_point_plus(AINVS, x0_pre, y0_pre, Tc, field)
    check_weierstrass(AINVS, x_zero, y_zero, "cusp 0")

    # constant-1 sections
    def one_series(w, prec):
        s = QSeries(field, w, 0, prec)
        s.a[0] = Cyclo.rat(field, 1)
        return s

    # trim all series to a uniform prec window [v, PREC)
    def trim(s, prec):
        keep = prec - s.v
        assert len(s.a) >= keep, (s.v, s.prec, len(s.a), prec)
        return QSeries(field, s.w, s.v, prec, s.a[:keep])

    x_inf, y_inf = trim(x_inf, PREC), trim(y_inf, PREC)
    x_zero, y_zero = trim(x_zero, PREC), trim(y_zero, PREC)

    # model: homogenized 11a1,  Y^2 Z + Y Z^2 = X^3 - X^2 Z - 10 X Z^2 - 20 Z^3
    # X^3 + a2 X^2 Z + a4 X Z^2 + a6 Z^3 - Y^2 Z - a1 X Y Z - a3 Y Z^2
    terms = [
        ([3, 0, 0], mpq(1)),
        ([2, 0, 1], a2_),
        ([1, 0, 2], a4),
        ([0, 0, 3], a6),
        ([0, 2, 1], mpq(-1)),
        ([1, 1, 1], -a1),
        ([0, 1, 2], -a3),
    ]
    model = poly_json(3, 3, [(e, c) for e, c in terms if c != 0])

    bundle = {
        "label": "11.12.1.a.1-x0",
        "level": N,
        "index": 12,
        "genus": 1,
        "graded_deg": 3,
        "prec": PREC,
        "model": [model],
        "cusps": [
            {"alpha": [1, 0, 0, 1], "width": 1, "rational": True},
            {"alpha": [0, -1, 1, 0], "width": 11, "rational": True},
        ],
        "forms": [[series_json(trim(f_inf, PREC)), series_json(trim(f_zero, PREC))]],
        "coords": [
            [series_json(x_inf), series_json(x_zero)],
            [series_json(y_inf), series_json(y_zero)],
            [series_json(one_series(1, PREC)), series_json(one_series(11, PREC))],
        ],
        "group": [[1, 1, 0, 1], [2, 0, 0, 1], [1, 0, 0, 2]],
        "rational_cusp_count": 2,
    }
    out = sys.argv[1] if len(sys.argv) > 1 else "../data/x0_11.bundle.json"
    with open(out, "w") as fh:
        json.dump(bundle, fh, indent=1)
    print(f"wrote {out}")


if __name__ == "__main__":
    main()
