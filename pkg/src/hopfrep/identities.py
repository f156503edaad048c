"""Built-in identity suites for L, H and K, plus identity-file checking.

The K suite covers the five displayed product identities, the inductive
``x1 x2^n`` expansion and the six power identities in s = x21, t = x2^2,
w = s - a, z = t - a (bounded instantiation in n; parameters sampled from a
scalar grid).  All checks are nf(lhs - rhs) == 0 in exact arithmetic.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, List, Optional, Tuple

from .field import Scalar, sc
from .presentations import NcPoly, Presentation, get_presentation

DEFAULT_SCALARS = (sc(0), sc(1), sc(-1), sc(2), sc(-2), sc(Fraction(1, 2)))


class IdentityCheck:
    def __init__(self, label: str, ok: bool):
        self.label = label
        self.ok = ok

    def __repr__(self):
        return f"[{'ok' if self.ok else 'FAIL'}] {self.label}"


def _zeta(n: int, j: int) -> Scalar:
    return sc(math.factorial(n) // math.factorial(n - j))


def k_relation_identities() -> List[IdentityCheck]:
    """The five displayed identities of K."""
    K = get_presentation("K")
    x1, x2, g = NcPoly.gen("x1"), NcPoly.gen("x2"), NcPoly.gen("g")
    s = NcPoly.gen("x21")
    checks = [
        ("x21*x1 = x1*x21", s * x1, x1 * s),
        ("x2^2*x1 = x1*x2^2 + x1*x2*x1", x2 * x2 * x1, x1 * x2 * x2 + x1 * x2 * x1),
        ("x21*x2^2 = (x2^2 - x21)*x21", s * x2 * x2, (x2 * x2 - s) * s),
        ("g*x21 = x21*g", g * s, s * g),
        ("g*x2^2 = (x2^2 - x21)*g", g * x2 * x2, (x2 * x2 - s) * g),
    ]
    return [IdentityCheck(label, bool(K.verify_identity(a, b))) for label, a, b in checks]


def k_aux_expansion(n_max: int = 8) -> List[IdentityCheck]:
    """x1 x2^n = (-1)^n x2^n x1 + ((-1)^{n-1} x2^{n-1} + ... + x2^2 r^{n-3} - x1 r^{n-2}) x21,
    with r = x2 - x1; instances n <= n_max."""
    K = get_presentation("K")
    x1, x2 = NcPoly.gen("x1"), NcPoly.gen("x2")
    s = NcPoly.gen("x21")
    r = x2 - x1
    out = []
    for n in range(1, n_max + 1):
        if n == 1:
            mid = NcPoly.const(1)
        else:
            mid = NcPoly()
            for k in range(2, n):
                mid = mid + K.mul_nf(K.pow_nf(x2, k), K.pow_nf(r, n - 1 - k)).scale(sc((-1) ** k))
            mid = mid - K.mul_nf(x1, K.pow_nf(r, n - 2))
        lhs = K.mul_nf(x1, K.pow_nf(x2, n))
        rhs = K.mul_nf(K.pow_nf(x2, n), x1).scale(sc((-1) ** n)) + K.mul_nf(mid, s)
        out.append(IdentityCheck(f"x1*x2^{n} expansion", bool(K.verify_identity(lhs, rhs))))
    return out


def k_power_identities(n_max: int = 8, scalars: Iterable[Scalar] = DEFAULT_SCALARS) -> List[IdentityCheck]:
    """The six identities in w = s - a, z = t - a and (g -+ b), n <= n_max."""
    K = get_presentation("K")
    x1, x2, g = NcPoly.gen("x1"), NcPoly.gen("x2"), NcPoly.gen("g")
    s = NcPoly.gen("x21")
    t = K.nf(x2 * x2)
    out = []
    scalars = list(scalars)
    for a in scalars:
        w = s - NcPoly.const(a)
        z = t - NcPoly.const(a)
        zs = z + s
        zp = [K.pow_nf(z, k) for k in range(n_max + 1)]
        wp = [K.pow_nf(w, k) for k in range(n_max + 1)]
        sp = [K.pow_nf(s, k) for k in range(n_max + 1)]
        zsp = [K.pow_nf(zs, k) for k in range(n_max + 1)]
        for n in range(1, n_max + 1):
            zeta_sum = NcPoly()
            for j in range(0, n + 1):
                zeta_sum = zeta_sum + K.mul_nf(sp[j], zp[n - j]).scale(_zeta(n, j))
            ok1 = K.mul_nf(zp[n], x1) == K.mul_nf(x1, zeta_sum)
            ok2 = K.mul_nf(zp[n], g) == K.mul_nf(g, zsp[n])
            ok3 = zsp[n] == K.nf(zeta_sum)
            ok4 = K.mul_nf(wp[n], x2) == K.nf(K.mul_nf(x2, wp[n]) - K.mul_nf(x1, s, wp[n - 1]).scale(sc(n)))
            out.append(IdentityCheck(f"z^n x1 rule (n={n}, a={a.r})", ok1))
            out.append(IdentityCheck(f"z^n g rule (n={n}, a={a.r})", ok2))
            out.append(IdentityCheck(f"(z+s)^n expansion (n={n}, a={a.r})", ok3))
            out.append(IdentityCheck(f"w^n x2 rule (n={n}, a={a.r})", ok4))
    for b in scalars:
        gm = g - NcPoly.const(b)
        gp = g + NcPoly.const(b)
        gmp = [K.pow_nf(gm, k) for k in range(n_max + 1)]
        gpp = [K.pow_nf(gp, k) for k in range(n_max + 1)]
        for n in range(1, n_max + 1):
            ok5 = K.mul_nf(gmp[n], x1) == K.mul_nf(x1, gpp[n]).scale(sc((-1) ** n))
            rhs = K.mul_nf(K.nf(K.mul_nf(x1, g).scale(sc(n)) - K.mul_nf(x2, gp)), gpp[n - 1])
            ok6 = K.mul_nf(gmp[n], x2) == rhs.scale(sc((-1) ** (n - 1)))
            out.append(IdentityCheck(f"(g-b)^n x1 rule (n={n}, b={b.r})", ok5))
            out.append(IdentityCheck(f"(g-b)^n x2 rule (n={n}, b={b.r})", ok6))
    return out


def l_identities(n_max: int = 8) -> List[IdentityCheck]:
    """g^n y = (-1)^n y g^n and antipode-style consequences in L."""
    L = get_presentation("L")
    g, ginv, y = NcPoly.gen("g"), NcPoly.gen("ginv"), NcPoly.gen("y")
    out = [
        IdentityCheck("g*y*g^-1 = -y", bool(L.verify_identity(g * y * ginv, -y))),
        IdentityCheck("g^-1*y*g = -y", bool(L.verify_identity(ginv * y * g, -y))),
    ]
    for n in range(1, n_max + 1):
        lhs = L.mul_nf(L.pow_nf(g, n), y)
        rhs = L.mul_nf(y, L.pow_nf(g, n)).scale(sc((-1) ** n))
        out.append(IdentityCheck(f"g^{n} y = (-1)^{n} y g^{n}", lhs == rhs))
        lhs2 = L.mul_nf(L.pow_nf(y, n), g)
        rhs2 = L.mul_nf(g, L.pow_nf(y, n)).scale(sc((-1) ** n))
        out.append(IdentityCheck(f"y^{n} g = (-1)^{n} g y^{n}", lhs2 == rhs2))
    return out


def h_identities(n_max: int = 8) -> List[IdentityCheck]:
    """Derived commutation rules of the bosonized Jordan plane."""
    H = get_presentation("H")
    a1, a2, g = NcPoly.gen("a1"), NcPoly.gen("a2"), NcPoly.gen("g")
    out = [
        IdentityCheck("a2*a1 = a1*a2 - a1^2/2", bool(H.verify_identity(a2 * a1, a1 * a2 - (a1 * a1).scale(Fraction(1, 2))))),
        IdentityCheck("g*a2*g^-1 = a1 + a2", bool(H.verify_identity(g * a2 * NcPoly.gen("ginv"), a1 + a2))),
    ]
    for n in range(1, n_max + 1):
        # a2 a1^n = a1^n a2 - (n/2) a1^{n+1}
        lhs = H.mul_nf(a2, H.pow_nf(a1, n))
        rhs = H.nf(H.mul_nf(H.pow_nf(a1, n), a2) - H.pow_nf(a1, n + 1).scale(Fraction(n, 2)))
        out.append(IdentityCheck(f"a2 a1^{n} straightening", lhs == rhs))
        # g a2^n g^-1 = (a1 + a2)^n
        lhs2 = H.mul_nf(g, H.pow_nf(a2, n), NcPoly.gen("ginv"))
        rhs2 = H.pow_nf(a1 + a2, n)
        out.append(IdentityCheck(f"g a2^{n} g^-1 = (a1+a2)^{n}", lhs2 == rhs2))
    return out


def suite_for(name: str, n_max: int = 8, scalars: Iterable[Scalar] = DEFAULT_SCALARS) -> List[IdentityCheck]:
    if name == "K":
        return k_relation_identities() + k_aux_expansion(n_max) + k_power_identities(n_max, scalars)
    if name == "L":
        return l_identities(n_max)
    if name == "H":
        return h_identities(n_max)
    raise ValueError(f"no built-in identity suite for {name!r}")


def check_identity_file(pres: Presentation, text: str) -> List[IdentityCheck]:
    """One ``lhs == rhs`` per line, ``#`` comments, expression grammar."""
    from .exprs import parse_expression

    out = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "==" not in line:
            raise ValueError(f"line {lineno}: expected 'lhs == rhs'")
        lhs_text, rhs_text = line.split("==", 1)
        lhs = parse_expression(lhs_text, pres)
        rhs = parse_expression(rhs_text, pres)
        ok = bool(pres.verify_identity(lhs, rhs))
        out.append(IdentityCheck(f"line {lineno}: {line}", ok))
    return out
