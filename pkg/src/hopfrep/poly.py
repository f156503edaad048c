"""Characteristic/minimal polynomials, factorization over Q(sqrt(d)), Jordan data.

Factorization strategy: squarefree decomposition (Yun), then rational-root
extraction and quadratic-formula splitting inside the field.  Anything of
degree >= 3 that survives is handed to sympy's number-field factorizer as a
completeness backstop, so reported irreducible factors really are irreducible
over the ambient Q(sqrt(d)).  Degree >= 2 irreducible factors are reported,
never split.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from .field import ONE, ZERO, FieldError, Scalar, format_scalar, join_ext, sqrt_in_field
from .linalg import Mat, Vec, kernel_basis, rref, span_basis


class SplitError(FieldError):
    """A spectrum did not split over the working field; carries the factor."""

    def __init__(self, factor: "Poly"):
        self.factor = factor
        super().__init__(f"needs field extension: irreducible factor {factor}")


class Poly:
    """Univariate polynomial, coefficients low-to-high, normalized (no top zeros)."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs):
        cs = [Scalar.of(c) for c in coeffs]
        while cs and not cs[-1]:
            cs.pop()
        self.coeffs = cs

    @staticmethod
    def x_minus(a: Scalar) -> "Poly":
        return Poly([-Scalar.of(a), ONE])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def lead(self) -> Scalar:
        return self.coeffs[-1]

    def monic(self) -> "Poly":
        if self.is_zero():
            return self
        inv = self.lead().inv()
        return Poly([c * inv for c in self.coeffs])

    def __eq__(self, other):
        return isinstance(other, Poly) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(tuple(c.sort_key() for c in self.coeffs))

    def __add__(self, other):
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + [ZERO] * (n - len(self.coeffs))
        b = other.coeffs + [ZERO] * (n - len(other.coeffs))
        return Poly([x + y for x, y in zip(a, b)])

    def __sub__(self, other):
        return self + Poly([-c for c in other.coeffs])

    def __mul__(self, other):
        if self.is_zero() or other.is_zero():
            return Poly([])
        out = [ZERO] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if not a:
                continue
            for j, b in enumerate(other.coeffs):
                if b:
                    out[i + j] = out[i + j] + a * b
        return Poly(out)

    def divmod(self, other: "Poly") -> Tuple["Poly", "Poly"]:
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = self.coeffs[:]
        q = [ZERO] * max(0, len(rem) - len(other.coeffs) + 1)
        dl = other.lead().inv()
        while len(rem) >= len(other.coeffs) and any(rem):
            while rem and not rem[-1]:
                rem.pop()
            if len(rem) < len(other.coeffs):
                break
            f = rem[-1] * dl
            shift = len(rem) - len(other.coeffs)
            q[shift] = f
            for i, c in enumerate(other.coeffs):
                rem[shift + i] = rem[shift + i] - f * c
        return Poly(q), Poly(rem)

    def eval(self, x: Scalar) -> Scalar:
        acc = ZERO
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def eval_matrix(self, m: Mat) -> Mat:
        acc = Mat.zeros(m.nrows, m.ncols)
        for c in reversed(self.coeffs):
            acc = acc * m
            if c:
                for i in range(m.nrows):
                    acc.rows[i][i] = acc.rows[i][i] + c
        return acc

    def deriv(self) -> "Poly":
        return Poly([Scalar.of(i) * c for i, c in enumerate(self.coeffs)][1:])

    def sort_key(self):
        return (self.degree, tuple(c.sort_key() for c in self.coeffs))

    def __repr__(self):
        if self.is_zero():
            return "0"
        parts = []
        for i in reversed(range(len(self.coeffs))):
            c = self.coeffs[i]
            if not c:
                continue
            cs = format_scalar(c)
            if i == 0:
                parts.append(cs)
            else:
                xpow = "x" if i == 1 else f"x^{i}"
                parts.append(xpow if cs == "1" else (f"-{xpow}" if cs == "-1" else f"{cs}*{xpow}"))
        return " + ".join(parts).replace("+ -", "- ")


def poly_gcd(a: Poly, b: Poly) -> Poly:
    while not b.is_zero():
        a, b = b, a.divmod(b)[1]
    return a.monic() if not a.is_zero() else a


# -- char/min polynomials ----------------------------------------------------


def charpoly(m: Mat) -> Poly:
    """Characteristic polynomial det(xI - M) by Faddeev-LeVerrier (exact)."""
    if not m.is_square():
        raise ValueError("charpoly of non-square matrix")
    n = m.nrows
    coeffs = [ONE]  # c_n = 1, then c_{n-1}, ...
    mk = Mat.zeros(n, n)
    for k in range(1, n + 1):
        for i in range(n):
            mk.rows[i][i] = mk.rows[i][i] + coeffs[-1]
        mk = m * mk
        ck = -(mk.trace() / Scalar.of(k))
        coeffs.append(ck)
    return Poly(list(reversed(coeffs)))


def minpoly(m: Mat) -> Poly:
    """Minimal polynomial via the first linear dependency among powers of M."""
    if not m.is_square():
        raise ValueError("minpoly of non-square matrix")
    n = m.nrows
    powers = [Mat.identity(n)]
    flat = [[x for row in powers[0].rows for x in row]]
    for k in range(1, n + 1):
        powers.append(powers[-1] * m)
        flat.append([x for row in powers[-1].rows for x in row])
        dep = kernel_basis(Mat.from_cols([list(f) for f in flat]))
        if dep:
            v = dep[0]
            return Poly(v).monic()
    raise AssertionError("minimal polynomial must exist by Cayley-Hamilton")


# -- factorization -----------------------------------------------------------


def squarefree_decomposition(p: Poly) -> List[Tuple[Poly, int]]:
    """Yun's algorithm (characteristic 0): [(squarefree factor, multiplicity)]."""
    p = p.monic()
    if p.degree < 1:
        return []
    g = poly_gcd(p, p.deriv())
    if g.degree == 0:
        return [(p, 1)]
    out = []
    c = p.divmod(g)[0]
    d = p.deriv().divmod(g)[0] - c.deriv()
    i = 1
    while c.degree > 0:
        a = poly_gcd(c, d)
        if a.degree > 0:
            out.append((a, i))
        c2 = c.divmod(a)[0]
        d = d.divmod(a)[0] - c2.deriv()
        c = c2
        i += 1
    return out


def _rational_root_candidates(p: Poly) -> List[Fraction]:
    # integer-coefficient version of p (all coefficients rational here)
    from math import gcd

    den = 1
    for c in p.coeffs:
        den = den * c.r.denominator // gcd(den, c.r.denominator)
    ints = [int(c.r * den) for c in p.coeffs]
    while ints and ints[0] == 0:
        ints = ints[1:]
    if not ints:
        return [Fraction(0)]
    a0, an = abs(ints[0]), abs(ints[-1])

    def divisors(n: int) -> List[int]:
        ds = []
        k = 1
        while k * k <= n:
            if n % k == 0:
                ds.append(k)
                ds.append(n // k)
            k += 1
        return sorted(set(ds))

    cands = {Fraction(0)}
    for num in divisors(a0):
        for d in divisors(an):
            cands.add(Fraction(num, d))
            cands.add(Fraction(-num, d))
    return sorted(cands)


def factor(p: Poly, ext: Optional[int]) -> List[Tuple[Poly, int]]:
    """Complete factorization of p into monic irreducibles over Q(sqrt(ext)).

    Returns [(factor, multiplicity)], deterministically sorted.
    """
    if p.degree < 1:
        return []
    out: List[Tuple[Poly, int]] = []
    for sf, mult in squarefree_decomposition(p):
        for f in _factor_squarefree(sf, ext):
            out.append((f, mult))
    out.sort(key=lambda fm: fm[0].sort_key())
    return out


def _factor_squarefree(p: Poly, ext: Optional[int]) -> List[Poly]:
    p = p.monic()
    if p.degree <= 1:
        return [p]
    factors: List[Poly] = []
    # strip roots that are visible without leaving the field
    changed = True
    while changed and p.degree >= 1:
        changed = False
        if p.degree == 1:
            factors.append(p)
            p = Poly([ONE])
            break
        if p.degree == 2:
            split = _split_quadratic(p, ext)
            factors.extend(split)
            p = Poly([ONE])
            break
        if all(c.is_rational() for c in p.coeffs):
            for cand in _rational_root_candidates(p):
                x = Scalar(cand)
                if not p.eval(x):
                    factors.append(Poly.x_minus(x))
                    p = p.divmod(Poly.x_minus(x))[0]
                    changed = True
                    break
    if p.degree >= 1:
        factors.extend(_factor_sympy(p, ext))
    return factors


def _split_quadratic(p: Poly, ext: Optional[int]) -> List[Poly]:
    c0, c1, _ = p.coeffs  # monic x^2 + c1 x + c0
    disc = c1 * c1 - Scalar.of(4) * c0
    for c in p.coeffs:
        ext = join_ext(c.d, ext)
    root = sqrt_in_field(disc, ext)
    if root is None:
        return [p]
    half = Scalar(Fraction(1, 2))
    r1 = (-c1 + root) * half
    r2 = (-c1 - root) * half
    return sorted([Poly.x_minus(r1), Poly.x_minus(r2)], key=Poly.sort_key)


def _factor_sympy(p: Poly, ext: Optional[int]) -> List[Poly]:
    """Backstop: factor over the number field with sympy, convert back exactly."""
    import sympy

    x = sympy.Symbol("x")

    def to_sym(c: Scalar):
        expr = sympy.Rational(c.r.numerator, c.r.denominator)
        if c.s:
            expr += sympy.Rational(c.s.numerator, c.s.denominator) * sympy.sqrt(c.d)
        return expr

    expr = sympy.Add(*[to_sym(c) * x**i for i, c in enumerate(p.coeffs)])
    if ext is not None:
        _, fl = sympy.factor_list(expr, x, extension=[sympy.sqrt(ext)])
    else:
        _, fl = sympy.factor_list(expr, x, domain="QQ")
    out = []
    for f, mult in fl:
        q = _poly_from_sympy(f, x, ext)
        for _ in range(mult):
            out.append(q.monic())
    out.sort(key=Poly.sort_key)
    return out


def _poly_from_sympy(f, x, ext: Optional[int]) -> Poly:
    import sympy

    fe = sympy.expand(f.as_expr() if hasattr(f, "as_expr") else f)
    coeffs = []
    for i in range(sympy.degree(fe, x) + 1):
        r, s = _sym_to_pair(sympy.expand(fe.coeff(x, i)), ext)
        coeffs.append(Scalar(r, s, ext if s else None))
    return Poly(coeffs)


def _sym_to_pair(c, ext: Optional[int]):
    import sympy

    if ext is None:
        rn, rd = sympy.fraction(sympy.together(c))
        return Fraction(int(rn), int(rd)), Fraction(0)
    sq = sympy.sqrt(ext)
    s = sympy.expand(c.coeff(sq, 1))
    r = sympy.expand(c - s * sq)
    rn, rd = sympy.fraction(sympy.together(r))
    sn, sd = sympy.fraction(sympy.together(s))
    return Fraction(int(rn), int(rd)), Fraction(int(sn), int(sd))


# -- spectra, generalized eigenspaces, Jordan data ---------------------------


def eigenvalues(m: Mat, ext: Optional[int]) -> Dict[Scalar, int]:
    """Eigenvalues with algebraic multiplicities; SplitError if non-split."""
    out: Dict[Scalar, int] = {}
    for f, mult in factor(charpoly(m), ext):
        if f.degree > 1:
            raise SplitError(f)
        out[-f.coeffs[0]] = out.get(-f.coeffs[0], 0) + mult
    return out


def generalized_eigenspaces(m: Mat, ext: Optional[int]) -> Dict[Scalar, List[Vec]]:
    """lambda -> echelon basis of union_j ker (M - lambda)^j; requires split charpoly."""
    n = m.nrows
    spaces: Dict[Scalar, List[Vec]] = {}
    for lam, mult in sorted(eigenvalues(m, ext).items(), key=lambda kv: kv[0].sort_key()):
        shifted = m - Mat.identity(n).scale(lam)
        basis = kernel_basis(shifted.power(mult))
        spaces[lam] = basis
    total = sum(len(b) for b in spaces.values())
    assert total == n, "generalized eigenspaces must fill the space"
    return spaces


def jordan_type(m: Mat, lam: Scalar) -> List[int]:
    """Sizes (descending) of the Jordan blocks of M at eigenvalue lam, via ranks."""
    n = m.nrows
    shifted = m - Mat.identity(n).scale(lam)
    ranks = [n]
    power = Mat.identity(n)
    while True:
        power = power * shifted
        r = len(rref(power)[1])
        ranks.append(r)
        if r == ranks[-2]:
            break
    # rank(N^{k-1}) - rank(N^k) counts blocks of size >= k
    diffs = [ranks[k - 1] - ranks[k] for k in range(1, len(ranks))]
    blocks: List[int] = []
    for k in range(len(diffs), 0, -1):
        exactly_k = diffs[k - 1] - (diffs[k] if k < len(diffs) else 0)
        blocks.extend([k] * exactly_k)
    return sorted(blocks, reverse=True)


def jordan_profile(m: Mat, ext: Optional[int]):
    """Sorted [(eigenvalue, block sizes)] -- a conjugation invariant."""
    return [
        (lam, tuple(jordan_type(m, lam)))
        for lam in sorted(eigenvalues(m, ext), key=lambda s: s.sort_key())
    ]


def jordan_basis(m: Mat, ext: Optional[int]) -> Tuple[Mat, List[Tuple[Scalar, int]]]:
    """Exact Jordan basis: P with P^-1 M P in Jordan form (upper, 1s above diagonal).

    Blocks are ordered by eigenvalue sort key, then by size descending; chain
    columns run bottom (kernel) vector first, so each block is upper Jordan.
    Returns (P, [(eigenvalue, size), ...]).  The result is verified exactly.
    """
    from .linalg import in_span, inverse

    n = m.nrows
    spaces = generalized_eigenspaces(m, ext)
    cols: List[Vec] = []
    blocks: List[Tuple[Scalar, int]] = []
    for lam in sorted(spaces, key=lambda s: s.sort_key()):
        shifted = m - Mat.identity(n).scale(lam)
        d = len(spaces[lam])
        ker_chain: List[List[Vec]] = [[]]
        power = Mat.identity(n)
        while len(ker_chain[-1]) < d:
            power = power * shifted
            ker_chain.append(kernel_basis(power))
        height = len(ker_chain) - 1
        chains: List[List[Vec]] = []
        for h in range(height, 0, -1):
            avoid = list(ker_chain[h - 1])
            for c in chains:  # all existing chains are strictly longer than h
                w = c[-1]
                for _ in range(len(c) - h):
                    w = shifted.mat_vec(w)
                avoid.append(w)
            avoid = span_basis(avoid)
            for v in ker_chain[h]:
                if in_span(avoid, v):
                    continue
                chain = [v]
                w = v
                for _ in range(h - 1):
                    w = shifted.mat_vec(w)
                    chain.append(w)
                chains.append(list(reversed(chain)))
                avoid = span_basis(avoid + [v])
        chains.sort(key=lambda ch: (-len(ch), Mat.from_cols(ch).sort_key()))
        for ch in chains:
            cols.extend(ch)
            blocks.append((lam, len(ch)))
    p = Mat.from_cols(cols)
    assert inverse(p) * m * p == jordan_matrix(blocks), "jordan basis certification failed"
    return p, blocks


def jordan_matrix(blocks: List[Tuple[Scalar, int]]) -> Mat:
    from .linalg import block_diag

    mats = []
    for lam, size in blocks:
        b = Mat.zeros(size, size)
        for i in range(size):
            b.rows[i][i] = Scalar.of(lam)
            if i + 1 < size:
                b.rows[i][i + 1] = ONE
        mats.append(b)
    return block_diag(*mats)
