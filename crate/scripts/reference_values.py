"""High-precision reference values for the frequency-integral correlator.

Every raw term is integrated over the full frequency axis (folded onto
omega > 0 numerically, no cancellation applied) with mpmath, so the Rust
implementation's term reduction and quadrature are checked independently.
"""
import mpmath as mp

mp.mp.dps = 40
A, OMEGA0, GAMMA = mp.mpf(1), mp.mpf(2), mp.mpf("0.1")


def chi(w):
    return 1j * w / (OMEGA0**2 - w**2 + 2j * GAMMA * w)


def weight(kind, w):
    if kind == "planck":
        return 1 / (1 - mp.exp(-2 * mp.pi * w / A))
    return 1 / mp.sinh(mp.pi * w / A)


def coeff(kind, w):
    c = chi(w)
    return {"chi*": mp.conj(c), "chi": c, "abs2": -4 * GAMMA * abs(c) ** 2}[kind]


def phase_x(kind, p, q):
    (u, v), (u2, v2) = p, q
    return {
        "uu": (abs(A * u / (A * u2)), 1),
        "vv": (abs(A * v / (A * v2)), -1),
        "uv'": (abs(A * A * u * v2), 1),
        "u'v": (abs(A * A * u2 * v), -1),
    }[kind]


def terms(p, q):
    (u, v), (u2, v2) = p, q
    l1, l2 = 1 + A * A * u * v, 1 + A * A * u2 * v2
    th = lambda x: x > 0
    out = []
    first = [
        ("uu", th(-u) and th(-u2), [("chi*", th(-l1)), ("chi", th(-l2)), ("abs2", th(-l1) and th(-l2))]),
        ("vv", th(v) and th(v2), [("chi*", th(l1)), ("chi", th(l2)), ("abs2", th(l1) and th(l2))]),
        ("uv'", th(-u) and th(v2), [("chi*", th(-l1)), ("chi", th(l2)), ("abs2", th(-l1) and th(l2))]),
        ("u'v", th(-u2) and th(v), [("chi*", th(l1)), ("chi", th(-l2)), ("abs2", th(l1) and th(-l2))]),
    ]
    for ph, outer, inner in first:
        for c, s in inner:
            if outer and s:
                out.append(("planck", ph, c))
    second = [
        ("uu", "chi*", th(-u) and th(-l1) and th(u2)),
        ("uu", "chi", th(-u2) and th(-l2) and th(u)),
        ("vv", "chi*", th(v) and th(l1) and th(-v2)),
        ("vv", "chi", th(v2) and th(l2) and th(-v)),
        ("uv'", "chi*", th(-u) and th(-l1) and th(-v2)),
        ("uv'", "chi", th(v2) and th(l2) and th(u)),
        ("u'v", "chi*", th(u2) and th(l1) and th(v)),
        ("u'v", "chi", th(-u2) and th(-l2) and th(-v)),
    ]
    for ph, c, s in second:
        if s:
            out.append(("sinh", ph, c))
    return out


def term_integral(block, ph, c, p, q):
    x, sgn = phase_x(ph, p, q)
    ell = sgn * mp.log(x) / A
    pref = -GAMMA / (2 * mp.pi) if block == "planck" else -GAMMA / (4 * mp.pi)

    def f(w):
        return coeff(c, w) * mp.expj(w * ell) * weight(block, w) / w

    g = lambda w: f(w) + f(-w)
    pts = [mp.mpf(x) for x in ("1e-25", "0.05", "0.25", "1", "1.7", "1.9", "2", "2.1", "2.3", "3", "5", "8")]
    body = mp.quad(g, pts, maxdegree=10)
    if abs(ell) > mp.mpf("1e-20"):
        tail = mp.quadosc(g, [8, mp.inf], omega=abs(ell))
    else:
        tail = mp.quad(g, [8, 100, 1000, mp.inf])
    return pref * (body + tail)


def delta(p, q):
    return sum(term_integral(b, ph, c, p, q) for b, ph, c in terms(p, q))


if __name__ == "__main__":
    pairs = [
        ((-2, 2), (-3, 3)),
        ((-2, 1), (-1.5, 2.5)),
        ((-0.5, 0.5), (-0.3, 0.8)),
        ((1, 2), (0.5, 1.5)),
        ((-2, 2), (-0.5, 0.5)),
        ((-2, 2), (1, 2)),
        ((-2, 2), (-2, 2)),
        ((1, 2), (1, 2)),
        ((-0.5, 0.5), (-0.5, 0.5)),
    ]
    for p, q in pairs:
        p = tuple(mp.mpf(x) for x in p)
        q = tuple(mp.mpf(x) for x in q)
        d = delta(p, q)
        print(p, q, mp.nstr(mp.re(d), 20), mp.nstr(mp.im(d), 20))
