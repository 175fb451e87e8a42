#!/usr/bin/env python3
"""Regenerate the frozen reference constants used by the Rust test suites.

Every numeric literal in the Rust tests that is not derived in-test comes from
this script: theta values, Chebyshev-variable derivatives, energies, magic
coefficients, and ledger spot values, all computed with mpmath at 60+ digits
through two independent routes (q-series vs. Gaussian image sums, analytic
series vs. mpmath.jtheta) that are cross-checked before anything is printed.

Run:  python3 python/tools/gen_reference.py
"""

from mpmath import mp, mpf, exp, cos, acos, sqrt, pi, jtheta, diff, chebyt, nstr

mp.dps = 60

PAD = mpf(10) ** (-mp.dps + 8)


def fmt(x, name):
    return f"const {name}: f64 = {nstr(mpf(x), 17, strip_zeros=False)};"


def theta_fourier(c, x):
    """theta(c; x) = 1 + 2 sum e^{-pi k^2 c} cos(2 pi k x)."""
    c, x = mpf(c), mpf(x)
    s = mpf(1)
    k = 1
    while True:
        w = 2 * exp(-pi * k * k * c)
        s += w * cos(2 * pi * k * x)
        if w < PAD:
            break
        k += 1
    return s


def theta_gauss(c, x):
    """theta(c; x) = c^{-1/2} sum e^{-pi (k+x)^2 / c}."""
    c, x = mpf(c), mpf(x)
    s = mpf(0)
    k = 0
    while True:
        t = exp(-pi * (k + x) ** 2 / c)
        s += t
        if t < PAD and k > 0:
            break
        k += 1
    k = -1
    while True:
        t = exp(-pi * (k + x) ** 2 / c)
        s += t
        if t < PAD and k < -1:
            break
        k -= 1
    return s / sqrt(c)


def theta(c, x):
    a = theta_fourier(c, x)
    b = theta_gauss(c, x)
    assert abs(a - b) < mpf(10) ** (-40) * abs(a), f"theta paths disagree at c={c} x={x}"
    return a


def theta_tilde(c, t, order=0):
    """d^order/dt^order of theta(c; acos(t)/(2 pi)), via the Chebyshev series."""
    c = mpf(c)

    def series(s):
        acc = mpf(1)
        k = 1
        while True:
            w = exp(-pi * k * k * c)
            acc += 2 * w * chebyt(k, s)
            if w * max(1, k * k) ** 4 < PAD:
                break
            k += 1
        return acc

    if order == 0:
        val = series(mpf(t))
        # Cross-check against jtheta through the angular substitution.
        if abs(mpf(t)) <= mpf("0.999"):
            alt = jtheta(3, acos(mpf(t)) / 2, exp(-pi * c))
            assert abs(val - alt) < mpf(10) ** (-40) * abs(val)
        return val
    return diff(series, mpf(t), order)


def log_deriv_tilde(c, t):
    return theta_tilde(c, t, 1) / theta_tilde(c, t, 0)


def magic_pieces(a1, beta):
    a1 = mpf(a1)
    beta = mpf(beta)
    a2 = 4 * beta * beta * a1
    c1, c2 = pi / a1, pi / a2
    f1 = lambda t, m=0: theta_tilde(c1, t, m)
    f2 = lambda t, m=0: theta_tilde(c2, t, m)
    A = f1(1, 1) * f2(-1) + f1(-1) * f2(0)
    B = f1(1, 1) * f2(-1)
    C = f1(-1) * f2(0, 1)
    D = f1(-1) * (f2(0, 1) - f2(0)) - f2(-1) * (2 * f1(1, 1) - f1(1))
    e_canon = 4 * f1(1) * f2(-1) + 8 * f1(-1) * f2(0)
    lp = 12 * A - 4 * B - 4 * C + 4 * D
    return A, B, C, D, e_canon, lp


def main():
    print("// ---- xf: exp anchors ----")
    v = exp(mpf(-1250))
    e = mp.floor(mp.log(v, 2)) + 1
    m = v / mpf(2) ** e
    assert mpf("0.5") <= m < 1
    print(f"// e^-1250 = m * 2^e with e = {int(e)}")
    print(fmt(m, "EXP_M1250_MANTISSA"))

    print()
    print("// ---- theta: point values ----")
    cases = [
        ("THETA_C005_X05", "0.05", "0.5"),
        ("THETA_C005_X0125", "0.05", "0.125"),
        ("THETA_C02_X03", "0.2", "0.3"),
        ("THETA_C1_X0", "1", "0"),
        ("THETA_C1_X05", "1", "0.5"),
        ("THETA_C50_X025", "50", "0.25"),
    ]
    for name, c, x in cases:
        print(f"// theta({c}; {x})")
        print(fmt(theta(c, x), name))

    print()
    print("// ---- theta: tilde derivatives ----")
    for c in ("0.5", "1.5"):
        for t in ("-1", "-0.3", "0", "0.7", "1"):
            for m in range(5):
                name = (
                    f"TT_C{c.replace('.', 'P').replace('-', 'M')}"
                    f"_T{t.replace('.', 'P').replace('-', 'M')}_D{m}"
                )
                print(fmt(theta_tilde(c, t, m), name))

    print()
    print("// ---- theta: log-derivative samples ----")
    for c, t in (("0.2", "-0.4"), ("1", "0.55"), ("5", "0.9")):
        name = f"LOGD_C{c.replace('.', 'P')}_T{t.replace('.', 'P').replace('-', 'M')}"
        print(fmt(log_deriv_tilde(c, t), name))

    print()
    print("// ---- energy: canonical 4-point values ----")
    # r = (1, 2 beta), ordered-pair displacement classes of the canonical
    # configuration: 4 pairs at (t1, t2) = (1, -1), 8 pairs at (-1, 0).
    for tag, a1, beta in (("A1_B1", "1", "1"), ("A20_B1", "20", "1"),
                          ("A5_BC", "5", 1 / sqrt(mpf(3)))):
        A, B, C, D, e_canon, lp = magic_pieces(a1, beta)
        gap = abs(e_canon - lp) / e_canon
        print(f"// a1 = {a1}, beta = {nstr(mpf(beta), 17)}; lp gap = {nstr(gap, 3)}")
        print(fmt(e_canon, f"E_CANON_{tag}"))
        print(fmt(A, f"MAGIC_A_{tag}"))
        print(fmt(B, f"MAGIC_B_{tag}"))
        print(fmt(C, f"MAGIC_C_{tag}"))
        print(fmt(D, f"MAGIC_D_{tag}"))
        assert gap < mpf(10) ** (-45), f"lp bound not sharp at {tag}: {gap}"

    print()
    print("// ---- energy: lattice Gaussian sum, L = Z x 2Z, a = 1 ----")
    s = mpf(0)
    R = 14
    for i in range(-R, R + 1):
        for j in range(-R, R + 1):
            if i == 0 and j == 0:
                continue
            s += exp(-(mpf(i) ** 2 + (2 * mpf(j)) ** 2))
    print(fmt(s, "LATTICE_SUM_A1_B1"))

    print()
    print("// ---- bounds: ledger spot values ----")
    a = pi * pi
    m5 = sqrt(pi / a) * theta_tilde(pi / a, 0, 1)
    print("// sqrt(pi/a) * d/dt theta~(pi/a; t) at t=0, a=pi^2, with its window")
    print(fmt(m5, "M5_SCALED_AT_PI2"))
    print(fmt((1 - mpf(1) / 40) * (a / (4 * pi)) * exp(-a / 16), "M5_LOWER_AT_PI2"))
    print(fmt((a / (4 * pi)) * exp(-a / 16), "M5_UPPER_AT_PI2"))

    d2 = mpf(1)
    p = (mpf(767) / 200 * exp(-4 * d2) - mpf(599) / 25 * exp(-16 * d2 / 3)
         + mpf(1629) / 50 * exp(-19 * d2 / 3) - mpf(9803) / 400 * exp(-28 * d2 / 3))
    dl = 1 + mpf(99) / 50 * exp(-4 * d2) - 2 * exp(-d2)
    du = 1 + mpf(101) / 50 * exp(-16 * d2 / 3) - 2 * exp(-4 * d2 / 3)
    print("// region-3 separation margin at d2 = 1")
    print(fmt(p / (dl * du), "B3_MARGIN_AT_1"))

    poly = (8 * exp(-7 * d2 / 3) - mpf(1633) / 100 * exp(-16 * d2 / 3)
            - mpf(65) / 2 * exp(-28 * d2 / 3))
    print("// cross-multiplied corner-slope numerator at d2 = 1")
    print(fmt(poly, "C3_NUMERATOR_AT_1"))

    a1 = pi * pi
    red = exp(a1 / 4) * (13 * a1 * (25 * pi - 77) - 19 * pi * pi) / (2002 * pi * pi)
    print("// region-1 reduced-difference value at a1 = pi^2")
    print(fmt(red, "B1_REDUCED_AT_PI2"))


if __name__ == "__main__":
    main()
