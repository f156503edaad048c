"""Constructors for every named module family and the dim <= 5 recognizer.

Families over L (g-blocks diag(A, B), y-blocks [[0, C], [D, 0]]):

    k(a)        1-dim, y = 0                      V(a, n)   g = J_n(a), y = 0
    U(a, b)     g = diag(a,-a), y = [[0,b],[1,0]]  (simple)
    W(a)        g = diag(a,-a), y = [[0,1],[0,0]]
    C(a, n)     A = a*I_{n-1}, B = -a, C = e1, D = e_{n-1}^t       (indec iff n = 3)
    D1(a) D2(a,b) D3(a)   n = 4, A = a*I_2, B = -a*I_2
    D4(a)       n = 5, A = a*I_3, B = -a*I_2
    E1(a,n) E2(a,n) E3(a,b,n)   A = J_{n-1}(a), B = -a
    F1..F8      A = J_{n-2}(a), B = J_2(-a); block index i = n-3 is the only
                index for which the displayed D_i solves BD = -DA
    G(a, n)     A = J_{n-2}(a), B = -a*I_2
    H1 H2 H3(a[,b],n)   A = J_{n-2}(a) + line(a), B = -a
    I(a, n)     n = 2r+1, A = J_r(a)^2, B = -a

over Hbar:  kGamma(a, b), J(a, b), K3(a, b, c)
over K:     L3_1(a), L3_2(a), Ln_1(a, b, n), Ln_2(a, b, n)
over Lq:    Uq via make_Uq(n, q, a, b)

The recognizer normalizes parameters: U(a,b) ~ U(-a,b) and D2(a,b) ~ D2(-a,b)
pick the sort-key-minimal a; for the F5..F8 families only the product b*c is
an isomorphism invariant (the commutant rescales (b,c) to (tb, c/t)), so tags
are normalized to c = 1; at n = 4 the coincidences F3(a) ~ F1(-a),
F4(a) ~ F2(-a), F7(a,b,c) ~ F6(-a,c,b), D3(a) ~ D1(-a) and the +-a symmetry of
F5/F8 collapse onto the family list of the dimension-4 classification.
Every recognition is cross-verified by an explicit isomorphism witness.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .field import FieldDesc, Scalar, format_scalar, parse_scalar, sc
from .linalg import Mat, Vec, block2x2, block_diag, coords_in_basis, kernel_basis, rref
from .modules import Module, direct_sum, hbar_to_H
from .poly import SplitError, factor, generalized_eigenspaces, jordan_basis, jordan_type, minpoly
from .structure import are_isomorphic, decompose, hom_space

HALF = Scalar(Fraction(1, 2))


class TagError(ValueError):
    """Out-of-range family parameters or dimensions."""


class FamilyTag:
    """A catalog label: algebra, family symbol, normalized parameters, dim."""

    def __init__(self, family: str, params: Dict[str, object]):
        self.family = family
        spec = FAMILIES.get(family)
        if spec is None:
            raise TagError(f"unknown family {family!r}")
        self.algebra = spec.algebra
        self.params = {}
        for name in spec.scalar_params:
            if name not in params:
                raise TagError(f"family {family} needs parameter {name}")
            val = params[name]
            self.params[name] = val if isinstance(val, Scalar) else sc(val)
        for name in spec.int_params:
            if name not in params:
                raise TagError(f"family {family} needs parameter {name}")
            self.params[name] = int(params[name])
        extra = set(params) - set(spec.scalar_params) - set(spec.int_params)
        if extra:
            raise TagError(f"family {family} does not take parameters {sorted(extra)}")
        self.dim = spec.dim_of(self.params)

    def __eq__(self, other):
        return (
            isinstance(other, FamilyTag)
            and self.family == other.family
            and self.params == other.params
        )

    def __hash__(self):
        items = tuple(
            (k, v.sort_key() if isinstance(v, Scalar) else v) for k, v in sorted(self.params.items())
        )
        return hash((self.family, items))

    def sort_key(self):
        items = tuple(
            (k, v.sort_key() if isinstance(v, Scalar) else (v,)) for k, v in sorted(self.params.items())
        )
        return (FAMILY_ORDER.index(self.family), items)

    def __repr__(self):
        inner = ",".join(
            f"{k}={format_scalar(v) if isinstance(v, Scalar) else v}" for k, v in self.params.items()
        )
        return f"{self.family}({inner})"


class FamilySpec:
    def __init__(self, algebra, scalar_params, int_params, dim_of, builder, validate=None):
        self.algebra = algebra
        self.scalar_params = scalar_params
        self.int_params = int_params
        self.dim_of = dim_of
        self.builder = builder
        self.validate = validate


def _nonzero(tag: FamilyTag, *names: str):
    for n in names:
        if tag.params[n].is_zero():
            raise TagError(f"{tag.family}: parameter {n} must be nonzero")


def _e(n: int, i: int) -> Vec:
    v = [sc(0)] * n
    v[i - 1] = sc(1)
    return v


def _jordan(n: int, a: Scalar) -> Mat:
    m = Mat.zeros(n, n)
    for i in range(n):
        m.rows[i][i] = a
        if i + 1 < n:
            m.rows[i][i + 1] = sc(1)
    return m


def _scalar_mat(n: int, a: Scalar) -> Mat:
    return Mat.diag([a] * n)


def _y_blocks(a_block: Mat, b_block: Mat, c: Mat, d: Mat) -> Dict[str, Mat]:
    g = block_diag(a_block, b_block)
    y = block2x2(Mat.zeros(a_block.nrows, a_block.nrows), c, d, Mat.zeros(b_block.nrows, b_block.nrows))
    return {"g": g, "y": y}


def _col(n: int, vec: Vec) -> Mat:
    return Mat.from_cols([vec])


def _cols(vecs: Sequence[Vec]) -> Mat:
    return Mat.from_cols(list(vecs))


def _row(vec: Vec) -> Mat:
    return Mat([list(vec)])


def _rows(vecs: Sequence[Vec]) -> Mat:
    return Mat([list(v) for v in vecs])


# -- family builders (L) -------------------------------------------------------


def _build_k(tag):
    _nonzero(tag, "a")
    return {"g": Mat.diag([tag.params["a"]]), "y": Mat.zeros(1, 1)}


def _build_V(tag):
    _nonzero(tag, "a")
    n = tag.params["n"]
    if n < 1:
        raise TagError("V: n >= 1")
    return {"g": _jordan(n, tag.params["a"]), "y": Mat.zeros(n, n)}


def _build_U(tag):
    _nonzero(tag, "a", "b")
    a, b = tag.params["a"], tag.params["b"]
    return {"g": Mat.diag([a, -a]), "y": Mat([[0, b], [1, 0]])}


def _build_W(tag):
    _nonzero(tag, "a")
    a = tag.params["a"]
    return {"g": Mat.diag([a, -a]), "y": Mat([[0, 1], [0, 0]])}


def _build_C(tag):
    _nonzero(tag, "a")
    n = tag.params["n"]
    if n < 3:
        raise TagError("C: n >= 3")
    a = tag.params["a"]
    l = n - 1
    return _y_blocks(_scalar_mat(l, a), _scalar_mat(1, -a), _col(l, _e(l, 1)), _row(_e(l, l)))


def _build_D1(tag):
    _nonzero(tag, "a")
    a = tag.params["a"]
    c = _cols([[sc(0), sc(0)], _e(2, 1)])
    d = Mat.identity(2)
    return _y_blocks(_scalar_mat(2, a), _scalar_mat(2, -a), c, d)


def _build_D2(tag):
    _nonzero(tag, "a", "b")
    a, b = tag.params["a"], tag.params["b"]
    c = Mat.identity(2)
    d = Mat([[b, 1], [0, b]])
    return _y_blocks(_scalar_mat(2, a), _scalar_mat(2, -a), c, d)


def _build_D3(tag):
    _nonzero(tag, "a")
    a = tag.params["a"]
    c = Mat.identity(2)
    d = Mat([[0, 1], [0, 0]])
    return _y_blocks(_scalar_mat(2, a), _scalar_mat(2, -a), c, d)


def _build_D4(tag):
    _nonzero(tag, "a")
    a = tag.params["a"]
    c = _cols([_e(3, 1), _e(3, 2)])
    d = _rows([_e(3, 2), _e(3, 3)])
    return _y_blocks(_scalar_mat(3, a), _scalar_mat(2, -a), c, d)


def _build_E(j):
    def build(tag):
        _nonzero(tag, "a")
        n = tag.params["n"]
        if n < 3:
            raise TagError("E: n >= 3")
        a = tag.params["a"]
        l = n - 1
        c = Mat.zeros(l, 1)
        d = Mat.zeros(1, l)
        if j in (1, 3):
            b = tag.params.get("b", sc(1))
            if j == 3:
                _nonzero(tag, "b")
            c = _col(l, [x * (b if j == 3 else sc(1)) for x in _e(l, 1)])
        if j in (2, 3):
            d = _row(_e(l, l))
        return _y_blocks(_jordan(l, a), _scalar_mat(1, -a), c, d)

    return build


def _f_basis(l: int):
    """The two-dimensional solution spaces for A = J_l(a), B = J_2(-a)."""
    c1 = _cols([[sc(0)] * l, _e(l, 1)])
    c2 = _cols([_e(l, 1), [-x for x in _e(l, 2)]])
    d_top = _rows([_e(l, l), [sc(0)] * l])
    d_i = _rows([_e(l, l - 1), [-x for x in _e(l, l)]])
    return c1, c2, d_top, d_i


def _build_F(j):
    def build(tag):
        _nonzero(tag, "a")
        n = tag.params["n"]
        if n < 4:
            raise TagError("F: n >= 4")
        a = tag.params["a"]
        l = n - 2
        if j in (4, 6, 8):
            i = tag.params["i"]
            # only i = l-1 makes the displayed D_i satisfy BD = -DA; the
            # constructor certifies, so other i are rejected up front
            if i != l - 1:
                raise TagError(f"F{j}: block index i must equal n-3 = {l - 1} (BD = -DA fails otherwise)")
        c1, c2, d_top, d_i = _f_basis(l)
        b = tag.params.get("b", sc(1))
        cc = tag.params.get("c", sc(1))
        if j in (5, 6, 7, 8):
            _nonzero(tag, "b", "c")
        cmat = {1: c1, 2: c2, 3: Mat.zeros(l, 2), 4: Mat.zeros(l, 2), 5: c1.scale(b), 6: c1.scale(b), 7: c2.scale(b), 8: c2.scale(b)}[j]
        dmat = {1: Mat.zeros(2, l), 2: Mat.zeros(2, l), 3: d_top, 4: d_i, 5: d_top.scale(cc), 6: d_i.scale(cc), 7: d_top.scale(cc), 8: d_i.scale(cc)}[j]
        return _y_blocks(_jordan(l, a), _jordan(2, -a), cmat, dmat)

    return build


def _build_G(tag):
    _nonzero(tag, "a")
    n = tag.params["n"]
    if n < 4:
        raise TagError("G: n >= 4")
    a = tag.params["a"]
    l = n - 2
    c = _cols([[sc(0)] * l, _e(l, 1)])
    d = _rows([_e(l, l), [sc(0)] * l])
    return _y_blocks(_jordan(l, a), _scalar_mat(2, -a), c, d)


def _build_H(j):
    def build(tag):
        _nonzero(tag, "a")
        n = tag.params["n"]
        if n < 4:
            raise TagError("H: n >= 4")
        a = tag.params["a"]
        l = n - 1
        a_block = block_diag(_jordan(n - 2, a), Mat.diag([a]))
        if j == 1:
            c, d = _col(l, _e(l, 1)), _row(_e(l, l))
        elif j == 2:
            c, d = _col(l, _e(l, l)), _row(_e(l, l - 1))
        else:
            _nonzero(tag, "b")
            b = tag.params["b"]
            # the displayed D = b e_{n-1}^t alone splits off U(a,b); the
            # orbit analysis of (C, D) pairs forces D = e_{n-2}^t + b e_{n-1}^t
            c = _col(l, _e(l, l))
            d = _row([x + b * y for x, y in zip(_e(l, l - 1), _e(l, l))])
        return _y_blocks(a_block, _scalar_mat(1, -a), c, d)

    return build


def _build_I(tag):
    _nonzero(tag, "a")
    n = tag.params["n"]
    if n < 5 or n % 2 == 0:
        raise TagError("I: n = 2r+1 with r >= 2")
    r = (n - 1) // 2
    a = tag.params["a"]
    a_block = block_diag(_jordan(r, a), _jordan(r, a))
    c = _col(2 * r, _e(2 * r, 1))
    d = _row(_e(2 * r, 2 * r))
    return _y_blocks(a_block, _scalar_mat(1, -a), c, d)


# -- family builders (Hbar, K) ---------------------------------------------------


def _build_kGamma(tag):
    _nonzero(tag, "a")
    return {"g": Mat.diag([tag.params["a"]]), "x2": Mat.diag([tag.params["b"]])}


def _build_J(tag):
    _nonzero(tag, "a")
    a, b = tag.params["a"], tag.params["b"]
    return {"g": _scalar_mat(2, a), "x2": Mat([[b, 1], [0, b]])}


def _build_K3(tag):
    _nonzero(tag, "a")
    a, b, c = tag.params["a"], tag.params["b"], tag.params["c"]
    return {"g": Mat([[a, 1], [0, a]]), "x2": Mat([[b, c], [0, b]])}


def _build_L3(j):
    def build(tag):
        _nonzero(tag, "a")
        a = tag.params["a"]
        g = block_diag(_jordan(2, a), Mat.diag([-a]))
        if j == 1:
            x1 = block2x2(Mat.zeros(2, 2), Mat.zeros(2, 1), _row(_e(2, 2)), Mat.zeros(1, 1))
            x2 = block2x2(Mat.zeros(2, 2), Mat.zeros(2, 1), _row([a, sc(0)]), Mat.zeros(1, 1))
        else:
            x1 = block2x2(Mat.zeros(2, 2), _col(2, _e(2, 1)), Mat.zeros(1, 2), Mat.zeros(1, 1))
            x2 = block2x2(Mat.zeros(2, 2), _col(2, [sc(0), -a]), Mat.zeros(1, 2), Mat.zeros(1, 1))
        return {"g": g, "x1": x1, "x2": x2}

    return build


def _build_Ln(j):
    def build(tag):
        _nonzero(tag, "a")
        n = tag.params["n"]
        if n <= 3:
            raise TagError("Ln: n > 3 (use L3_1/L3_2 for n = 3)")
        a, b = tag.params["a"], tag.params["b"]
        l = n - 1
        g = block_diag(_jordan(l, a), Mat.diag([-a]))
        z_l1 = Mat.zeros(l, 1)
        z_1l = Mat.zeros(1, l)
        if j == 1:
            x1 = block2x2(Mat.zeros(l, l), z_l1, _row(_e(l, l)), Mat.zeros(1, 1))
            x2 = block2x2(
                Mat.zeros(l, l),
                _col(l, [b * x for x in _e(l, 1)]),
                _row([a * x for x in _e(l, l - 1)]),
                Mat.zeros(1, 1),
            )
        else:
            x1 = block2x2(Mat.zeros(l, l), _col(l, _e(l, 1)), z_1l, Mat.zeros(1, 1))
            x2 = block2x2(
                Mat.zeros(l, l),
                _col(l, [-a * x for x in _e(l, 2)]),
                _row([b * x for x in _e(l, l)]),
                Mat.zeros(1, 1),
            )
        return {"g": g, "x1": x1, "x2": x2}

    return build


FAMILIES: Dict[str, FamilySpec] = {
    "k": FamilySpec("L", ("a",), (), lambda p: 1, _build_k),
    "U": FamilySpec("L", ("a", "b"), (), lambda p: 2, _build_U),
    "V": FamilySpec("L", ("a",), ("n",), lambda p: p["n"], _build_V),
    "W": FamilySpec("L", ("a",), (), lambda p: 2, _build_W),
    "C": FamilySpec("L", ("a",), ("n",), lambda p: p["n"], _build_C),
    "D1": FamilySpec("L", ("a",), (), lambda p: 4, _build_D1),
    "D2": FamilySpec("L", ("a", "b"), (), lambda p: 4, _build_D2),
    "D3": FamilySpec("L", ("a",), (), lambda p: 4, _build_D3),
    "D4": FamilySpec("L", ("a",), (), lambda p: 5, _build_D4),
    "E1": FamilySpec("L", ("a",), ("n",), lambda p: p["n"], _build_E(1)),
    "E2": FamilySpec("L", ("a",), ("n",), lambda p: p["n"], _build_E(2)),
    "E3": FamilySpec("L", ("a", "b"), ("n",), lambda p: p["n"], _build_E(3)),
    "F1": FamilySpec("L", ("a",), ("n",), lambda p: p["n"], _build_F(1)),
    "F2": FamilySpec("L", ("a",), ("n",), lambda p: p["n"], _build_F(2)),
    "F3": FamilySpec("L", ("a",), ("n",), lambda p: p["n"], _build_F(3)),
    "F4": FamilySpec("L", ("a",), ("n", "i"), lambda p: p["n"], _build_F(4)),
    "F5": FamilySpec("L", ("a", "b", "c"), ("n",), lambda p: p["n"], _build_F(5)),
    "F6": FamilySpec("L", ("a", "b", "c"), ("n", "i"), lambda p: p["n"], _build_F(6)),
    "F7": FamilySpec("L", ("a", "b", "c"), ("n",), lambda p: p["n"], _build_F(7)),
    "F8": FamilySpec("L", ("a", "b", "c"), ("n", "i"), lambda p: p["n"], _build_F(8)),
    "G": FamilySpec("L", ("a",), ("n",), lambda p: p["n"], _build_G),
    "H1": FamilySpec("L", ("a",), ("n",), lambda p: p["n"], _build_H(1)),
    "H2": FamilySpec("L", ("a",), ("n",), lambda p: p["n"], _build_H(2)),
    "H3": FamilySpec("L", ("a", "b"), ("n",), lambda p: p["n"], _build_H(3)),
    "I": FamilySpec("L", ("a",), ("n",), lambda p: p["n"], _build_I),
    "kGamma": FamilySpec("Hbar", ("a", "b"), (), lambda p: 1, _build_kGamma),
    "J": FamilySpec("Hbar", ("a", "b"), (), lambda p: 2, _build_J),
    "K3": FamilySpec("Hbar", ("a", "b", "c"), (), lambda p: 2, _build_K3),
    "L3_1": FamilySpec("K", ("a",), (), lambda p: 3, _build_L3(1)),
    "L3_2": FamilySpec("K", ("a",), (), lambda p: 3, _build_L3(2)),
    "Ln_1": FamilySpec("K", ("a", "b"), ("n",), lambda p: p["n"], _build_Ln(1)),
    "Ln_2": FamilySpec("K", ("a", "b"), ("n",), lambda p: p["n"], _build_Ln(2)),
}

FAMILY_ORDER = list(FAMILIES)


def make(family: str, **params) -> Module:
    """Certified module for a catalog tag; errors name the violated constraint."""
    tag = FamilyTag(family, params)
    action = FAMILIES[family].builder(tag)
    return Module(FAMILIES[family].algebra, action)


def make_tag(tag: FamilyTag) -> Module:
    return Module(FAMILIES[tag.family].algebra, FAMILIES[tag.family].builder(tag))


def make_Uq(n: int, q: Scalar, a, b) -> Module:
    """The n-dimensional simple over the quantum Borel at a primitive root q."""
    a, b = sc(a) if not isinstance(a, Scalar) else a, sc(b) if not isinstance(b, Scalar) else b
    if a.is_zero() or b.is_zero():
        raise TagError("Uq: a, b must be nonzero")
    if q.is_zero():
        raise TagError("Uq: q must be nonzero")
    pw = q
    order = 1
    while not pw.is_one():
        pw = pw * q
        order += 1
        if order > n:
            break
    if order != n:
        raise TagError(f"Uq: q is not a primitive {n}-th root of unity in the field")
    g = Mat.diag([a * q**i for i in range(n)])
    y = Mat.zeros(n, n)
    for j in range(n - 1):
        y.rows[j + 1][j] = sc(1)
    y.rows[0][n - 1] = b
    return Module("Lq", {"g": g, "y": y}, q=q)
