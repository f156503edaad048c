"""The structural engine: Hom spaces, spinning, simplicity, Fitting splits,
Krull-Schmidt decomposition, isomorphism testing and Ext^1.

Soundness contract (over a possibly non-closed field):

* ``hom_space`` is an exact linear solve, so Hom dimensions are exact.
* ``is_simple`` is the Norton/MeatAxe test: a kernel vector of an irreducible
  factor of some algebra element either spins to a proper submodule (witness)
  or, when the factor has minimal nullity, certifies simplicity together with
  the transposed spin.  Elements are enumerated deterministically, then from a
  seeded stream.
* ``decompose`` applies Fitting splittings along endomorphisms (every basis
  element of End, then seeded random combinations).  Over Q(sqrt(d)) a module
  may be indecomposable relative to the field while splitting over a bigger
  field; reports carry an ``indecomposable_relative_to_field`` flag.
* ``are_isomorphic`` proves absence (dimension/invariant/Hom obstructions or
  differing decompositions), proves presence with an invertible intertwiner,
  decides exactly by a finite grid when Hom is small (det of the generic
  intertwiner has per-variable degree <= dim, so a grid of size dim+1 per
  variable is conclusive), and otherwise returns "undetermined" -- never a
  false claim.
"""

from __future__ import annotations

from typing import Dict, List, Optional, Sequence, Tuple

from .field import ONE, ZERO, Scalar, sc
from .linalg import (
    Mat,
    Vec,
    block_diag,
    coords_in_basis,
    det,
    hstack,
    image_basis,
    in_span,
    inverse,
    kernel_basis,
    rref,
    span_basis,
)
from .modules import Module, direct_sum
from .poly import Poly, charpoly, factor, jordan_basis, jordan_profile, minpoly
from .presentations import NcPoly
from .rng import random_scalar, stream


# -- Hom spaces ---------------------------------------------------------------


class HomSpace:
    """Solution space of {T X_V = X_W T : generators X}, as matrices V -> W."""

    def __init__(self, source: Module, target: Module, basis: List[Mat]):
        self.source = source
        self.target = target
        self.basis = basis

    @property
    def dim(self) -> int:
        return len(self.basis)

    def element(self, coeffs: Sequence[Scalar]) -> Mat:
        acc = Mat.zeros(self.target.dim, self.source.dim)
        for c, t in zip(coeffs, self.basis):
            if c:
                acc = acc + t.scale(c)
        return acc

    def __repr__(self):
        return f"HomSpace(dim={self.dim}, {self.source.dim}->{self.target.dim})"


def hom_space(v: Module, w: Module) -> HomSpace:
    if v.algebra != w.algebra or v.q != w.q:
        raise ValueError("Hom between modules over different algebras")
    n, m = v.dim, w.dim
    if n == 0 or m == 0:
        return HomSpace(v, w, [])
    rows = []
    for gen in v.generator_symbols():
        xv, xw = v.action[gen], w.action[gen]
        # (T xv - xw T)[i][j] as a linear functional of the entries of T
        for i in range(m):
            for j in range(n):
                row = [ZERO] * (m * n)
                for k in range(n):
                    row[i * n + k] = row[i * n + k] + xv.rows[k][j]
                for k in range(m):
                    row[k * n + j] = row[k * n + j] - xw.rows[i][k]
                rows.append(row)
    basis = kernel_basis(Mat(rows))
    mats = [Mat([vec[i * n : (i + 1) * n] for i in range(m)]) for vec in basis]
    return HomSpace(v, w, mats)


def end_space(v: Module) -> HomSpace:
    return hom_space(v, v)


# -- spinning and simplicity ---------------------------------------------------


def spin(v: Module, vectors: List[Vec]) -> List[Vec]:
    """Smallest invariant subspace containing the vectors (echelon basis)."""
    basis = span_basis([list(x) for x in vectors])
    gens = [v.action[g] for g in v.generator_symbols()]
    frontier = list(basis)
    while frontier:
        new_frontier = []
        for m in gens:
            for vec in frontier:
                img = m.mat_vec(vec)
                if not in_span(basis, img):
                    basis = span_basis(basis + [img])
                    new_frontier.append(img)
        frontier = new_frontier
    return basis


def spin_transposed(v: Module, vectors: List[Vec]) -> List[Vec]:
    gens = [v.action[g].transpose() for g in v.generator_symbols()]
    basis = span_basis([list(x) for x in vectors])
    frontier = list(basis)
    while frontier:
        new_frontier = []
        for m in gens:
            for vec in frontier:
                img = m.mat_vec(vec)
                if not in_span(basis, img):
                    basis = span_basis(basis + [img])
                    new_frontier.append(img)
        frontier = new_frontier
    return basis


def _perp(basis: List[Vec], n: int) -> List[Vec]:
    """Annihilator {v : b . v = 0 for all b in basis}."""
    if not basis:
        return [list(row) for row in Mat.identity(n).rows]
    return kernel_basis(Mat(basis))


class SimplicityResult:
    def __init__(self, simple: bool, witness: Optional[List[Vec]] = None, conclusive: bool = True):
        self.simple = simple
        self.witness = witness  # proper nonzero submodule basis when not simple
        self.conclusive = conclusive

    def __bool__(self):
        return self.simple


def _algebra_elements(v: Module, seed: int, count: int):
    """Deterministic then seeded elements of the acting algebra."""
    gens = [v.action[g] for g in v.generator_symbols()]
    for m in gens:
        yield m
    for i, a in enumerate(gens):
        for b in gens[i + 1 :]:
            yield a * b
            yield a + b
    rng = stream(seed, "algebra-elements", v.sort_key())
    words = gens + [a * b for a in gens for b in gens]
    for _ in range(count):
        acc = Mat.zeros(v.dim, v.dim)
        for w in words:
            c = random_scalar(rng)
            if c:
                acc = acc + w.scale(c)
        yield acc


def is_simple(v: Module, seed: int = 0, tries: int = 40) -> SimplicityResult:
    """Norton irreducibility test with explicit submodule witnesses."""
    if v.dim == 0:
        return SimplicityResult(False, [])
    if v.dim == 1:
        return SimplicityResult(True)
    for elem in _algebra_elements(v, seed, tries):
        mp = minpoly(elem)
        for f, _ in factor(mp, v.field.ext):
            nmat = f.eval_matrix(elem)
            ker = kernel_basis(nmat)
            if not ker:
                continue
            w = spin(v, [ker[0]])
            if len(w) < v.dim:
                return SimplicityResult(False, w)
            if len(ker) == f.degree:
                # Norton: check the transposed module through ker of f(elem)^T
                kert = kernel_basis(nmat.transpose())
                wt = spin_transposed(v, [kert[0]])
                if len(wt) < v.dim:
                    return SimplicityResult(False, _perp(wt, v.dim))
                return SimplicityResult(True)
            # nullity > degree: every kernel vector must spin to V to conclude
            all_full = all(len(spin(v, [k])) == v.dim for k in ker[1:])
            if not all_full:
                for k in ker[1:]:
                    w2 = spin(v, [k])
                    if len(w2) < v.dim:
                        return SimplicityResult(False, w2)
            # inconclusive for simplicity; try the next element
    return SimplicityResult(False, None, conclusive=False)


# -- Fitting splitting and decomposition ---------------------------------------


def fitting_split(v: Module, endo: Mat) -> List[List[Vec]]:
    """Primary components ker f_i(endo)^{e_i}; a genuine split when >= 2 factors."""
    mp = minpoly(endo)
    facs = factor(mp, v.field.ext)
    if len(facs) <= 1:
        return []
    comps = []
    for f, e in facs:
        pow_mat = f.eval_matrix(endo).power(e)
        comps.append(kernel_basis(pow_mat))
    return comps


class DecompositionReport:
    """Indecomposable summands with multiplicities and a change-of-basis witness.

    Conjugating the original action by ``witness`` gives exact block-diagonal
    form whose blocks are the summand actions, in order.
    """

    def __init__(
        self,
        module: Module,
        summand_list: List[Module],
        witness: Mat,
        relative_to_field: bool,
    ):
        self.module = module
        self.summand_list = summand_list  # in block order of the witness
        self.witness = witness
        self.indecomposable_relative_to_field = relative_to_field
        self.certified = self._certify()
        self.summands = self._group()

    def _certify(self) -> bool:
        winv = inverse(self.witness)
        for g in self.module.generator_symbols():
            expected = block_diag(*[s.action[g] for s in self.summand_list])
            if winv * self.module.action[g] * self.witness != expected:
                return False
        return True

    def _group(self) -> List[Tuple[Module, int]]:
        groups: List[Tuple[Module, int]] = []
        for s in self.summand_list:
            for i, (rep, mult) in enumerate(groups):
                if s.dim == rep.dim and are_isomorphic(s, rep).isomorphic:
                    groups[i] = (rep, mult + 1)
                    break
            else:
                groups.append((s, 1))
        return groups

    def dims(self) -> List[int]:
        return [s.dim for s in self.summand_list]

    def __repr__(self):
        parts = ", ".join(f"dim {m.dim} x{k}" for m, k in self.summands)
        return f"DecompositionReport({parts}; certified={self.certified})"

    def to_json(self) -> dict:
        from .field import format_scalar

        return {
            "summands": [
                {"module": m.to_json(), "multiplicity": k} for m, k in self.summands
            ],
            "blocks": [s.to_json() for s in self.summand_list],
            "witness": [[format_scalar(x) for x in row] for row in self.witness.rows],
            "certified": self.certified,
            "indecomposable_relative_to_field": self.indecomposable_relative_to_field,
        }


def _try_split(v: Module, seed: int, random_tries: int) -> Optional[List[List[Vec]]]:
    """A Fitting split along some endomorphism, or None if none found."""
    ends = end_space(v)
    if ends.dim <= 1:
        return None  # local: scalars (or a single nilpotent direction) only
    for t in ends.basis:
        comps = fitting_split(v, t)
        if len(comps) >= 2:
            return comps
    rng = stream(seed, "decompose", v.sort_key())
    for _ in range(random_tries):
        coeffs = [random_scalar(rng) for _ in range(ends.dim)]
        t = ends.element(coeffs)
        comps = fitting_split(v, t)
        if len(comps) >= 2:
            return comps
    return None


def _is_y_zero_like(v: Module) -> bool:
    return all(v.action[g].is_zero() for g in v.generator_symbols() if g != "g")


def decompose(v: Module, seed: int = 0, random_tries: int = 64) -> DecompositionReport:
    """Full Krull-Schmidt decomposition with certified block-diagonal witness."""
    if v.dim == 0:
        return DecompositionReport(v, [], Mat([]), False)
    # fast path: only g acts, so the decomposition is the Jordan form of g
    if _is_y_zero_like(v):
        p, blocks = jordan_basis(v.action["g"], v.field.ext)
        pinv = inverse(p)
        summands = []
        offset = 0
        for lam, size in blocks:
            cols = [p.col(j) for j in range(offset, offset + size)]
            summands.append(v.submodule(cols))
            offset += size
        return DecompositionReport(v, summands, p, False)

    pieces: List[Tuple[Module, List[Vec]]] = []  # (module, embedding basis into v)
    full = [list(row) for row in Mat.identity(v.dim).rows]
    work: List[Tuple[Module, List[Vec]]] = [(v, full)]
    relative = False
    while work:
        m, emb = work.pop()
        split = _try_split(m, seed, random_tries)
        if split is None:
            # Jordan fast path on a block where only g survives (a genuine
            # Fitting split needs two eigenvalues; a single Jordan string of
            # g is indecomposable, so only recurse when it actually splits)
            if _is_y_zero_like(m) and m.dim > 1:
                sub = decompose(m, seed, random_tries)
                if len(sub.summand_list) > 1:
                    for s, basis in zip(sub.summand_list, _witness_blocks(sub)):
                        work.append((s, _compose_embedding(emb, basis)))
                    continue
            ends = end_space(m)
            if any(_nonsplit_quadratic(m, t) for t in ends.basis):
                relative = True
            pieces.append((m, emb))
            continue
        for comp in split:
            sub = m.submodule(comp)
            work.append((sub, _compose_embedding(emb, comp)))
    pieces.sort(key=lambda p: p[0].sort_key())
    cols: List[Vec] = []
    for _, emb in pieces:
        cols.extend(emb)
    witness = Mat.from_cols(cols)
    return DecompositionReport(v, [m for m, _ in pieces], witness, relative)


def _witness_blocks(report: DecompositionReport) -> List[List[Vec]]:
    blocks = []
    offset = 0
    for s in report.summand_list:
        blocks.append([report.witness.col(j) for j in range(offset, offset + s.dim)])
        offset += s.dim
    return blocks


def _compose_embedding(emb: List[Vec], inner: List[Vec]) -> List[Vec]:
    """emb: basis of a subspace W <= V in V-coordinates; inner: vectors in W-coords."""
    e = Mat.from_cols(emb)
    return [e.mat_vec(w) for w in inner]


def _nonsplit_quadratic(v: Module, endo: Mat) -> bool:
    """True when the endomorphism's minimal polynomial has an irreducible
    factor of degree >= 2 (the module might split over a field extension)."""
    mp = minpoly(endo)
    return any(f.degree >= 2 for f, _ in factor(mp, v.field.ext))


def is_indecomposable(v: Module, seed: int = 0, random_tries: int = 64) -> bool:
    return len(decompose(v, seed, random_tries).summand_list) == 1


# -- isomorphism ---------------------------------------------------------------


class IsoResult:
    def __init__(self, status: str, witness: Optional[Mat] = None, reason: str = ""):
        self.status = status  # "yes" | "no" | "undetermined"
        self.witness = witness
        self.reason = reason

    @property
    def isomorphic(self) -> bool:
        return self.status == "yes"

    @property
    def certified_absence(self) -> bool:
        return self.status == "no"

    def __bool__(self):
        return self.isomorphic

    def __repr__(self):
        return f"IsoResult({self.status}{': ' + self.reason if self.reason else ''})"


def _invariant_mismatch(v: Module, w: Module) -> Optional[str]:
    """A cheap sound obstruction to isomorphism, or None."""
    for g in v.generator_symbols():
        a, b = v.action[g], w.action[g]
        if charpoly(a) != charpoly(b):
            return f"charpoly of {g} differs"
        if len(rref(a)[1]) != len(rref(b)[1]):
            return f"rank of {g} differs"
    gens = v.generator_symbols()
    for g1 in gens:
        for g2 in gens:
            a = v.action[g1] * v.action[g2]
            b = w.action[g1] * w.action[g2]
            if len(rref(a)[1]) != len(rref(b)[1]):
                return f"rank of {g1}{g2} differs"
            if a.trace() != b.trace():
                return f"trace of {g1}{g2} differs"
    return None


def are_isomorphic(v: Module, w: Module, seed: int = 0, random_tries: int = 64, _depth: int = 0) -> IsoResult:
    if v.algebra != w.algebra or v.q != w.q:
        return IsoResult("no", reason="different algebras")
    if v.dim != w.dim:
        return IsoResult("no", reason="different dimensions")
    if v.dim == 0:
        return IsoResult("yes", Mat([]))
    mismatch = _invariant_mismatch(v, w)
    if mismatch:
        return IsoResult("no", reason=mismatch)
    hom = hom_space(v, w)
    if hom.dim == 0:
        return IsoResult("no", reason="Hom(V,W) = 0")
    n = v.dim
    for t in hom.basis:
        if det(t):
            return IsoResult("yes", t)
    # exact decision on a finite grid: det of the generic intertwiner is a
    # polynomial of per-variable degree <= n, so vanishing on {0..n}^h is
    # vanishing identically (and then no invertible intertwiner exists)
    if hom.dim <= 4 and (n + 1) ** hom.dim <= 4096:
        found = _grid_search(hom, n)
        if found is not None:
            return IsoResult("yes", found)
        return IsoResult("no", reason=f"det vanishes on the full ({n+1})^{hom.dim} grid")
    rng = stream(seed, "iso", v.sort_key(), w.sort_key())
    for _ in range(random_tries):
        t = hom.element([random_scalar(rng) for _ in range(hom.dim)])
        if det(t):
            return IsoResult("yes", t)
    if _depth == 0:
        rv = decompose(v, seed)
        rw = decompose(w, seed)
        matched = _match_summands(rv, rw, seed)
        if matched is None:
            return IsoResult("no", reason="Krull-Schmidt decompositions differ")
        if matched:
            witness = _assemble_witness(rv, rw, matched)
            if witness is not None:
                return IsoResult("yes", witness)
    return IsoResult("undetermined", reason=f"no invertible map among {random_tries} samples, dim Hom = {hom.dim}")


def _grid_search(hom: HomSpace, n: int) -> Optional[Mat]:
    from itertools import product

    values = [sc(k) for k in range(n + 1)]
    for coeffs in product(values, repeat=hom.dim):
        t = hom.element(list(coeffs))
        if det(t):
            return t
    return None


def _match_summands(rv: DecompositionReport, rw: DecompositionReport, seed: int):
    """Pair up summands via are_isomorphic; None if the multisets differ.

    Returns a list of (i, j, witness) or None; [] means both are empty.
    """
    unused = list(range(len(rw.summand_list)))
    matches = []
    for i, s in enumerate(rv.summand_list):
        hit = None
        for j in unused:
            t = rw.summand_list[j]
            res = are_isomorphic(s, t, seed, _depth=1)
            if res.isomorphic:
                hit = (j, res.witness)
                break
            if res.status == "undetermined":
                return None  # refuse to claim absence
        if hit is None:
            return None
        matches.append((i, hit[0], hit[1]))
        unused.remove(hit[0])
    return matches


def _assemble_witness(rv, rw, matches) -> Optional[Mat]:
    """Combine summand-wise intertwiners into a V -> W isomorphism."""
    n = rv.module.dim
    blocks_v = _witness_blocks(rv)
    blocks_w = _witness_blocks(rw)
    t = Mat.zeros(n, n)
    for i, j, small in matches:
        bv = Mat.from_cols(blocks_v[i])
        bw = Mat.from_cols(blocks_w[j])
        # map: V -> summand_i coords -> summand_j coords -> W
        piece = bw * small
        # express projection of V onto summand_i coords via the witness inverse
        t = t + piece * _projector_rows(rv, i)
    if det(t):
        return t
    return None


def _projector_rows(report: DecompositionReport, idx: int) -> Mat:
    winv = inverse(report.witness)
    offset = sum(s.dim for s in report.summand_list[:idx])
    k = report.summand_list[idx].dim
    return Mat([winv.rows[offset + i] for i in range(k)])


# -- quotients/spin conveniences ------------------------------------------------


def quotient(v: Module, sub_basis: List[Vec]) -> Module:
    closed = spin(v, sub_basis)
    if len(closed) != len(span_basis([list(b) for b in sub_basis])):
        raise ValueError("quotient by a non-invariant subspace")
    return v.quotient(sub_basis)


# -- Ext^1 ----------------------------------------------------------------------


class Ext1Result:
    def __init__(self, dim: int, representatives: List[Module], cocycle_dim: int, coboundary_dim: int):
        self.dim = dim
        self.representatives = representatives
        self.cocycle_dim = cocycle_dim
        self.coboundary_dim = coboundary_dim

    def __repr__(self):
        return f"Ext1(dim={self.dim})"


def ext1(v: Module, w: Module, max_representatives: int = 4) -> Ext1Result:
    """Extensions 0 -> W -> E -> V -> 0 as block-upper-triangular structures.

    For each generator x the extension acts by [[X_W, B_x], [0, X_V]]; every
    defining relation is linear in the blocks {B_x} jointly, so cocycles are
    an exact kernel; coboundaries are the image of T |-> X_W T - T X_V.
    """
    if v.algebra != w.algebra or v.q != w.q:
        raise ValueError("Ext between modules over different algebras")
    pres = v.pres
    gens = list(pres.module_generators) + ["ginv"]
    nv, nw = v.dim, w.dim
    if nv == 0 or nw == 0:
        return Ext1Result(0, [], 0, 0)
    nblk = nw * nv
    nunk = nblk * len(gens)

    relations = list(pres.relations) + [
        NcPoly.word("g", "ginv") - NcPoly.const(1),
        NcPoly.word("ginv", "g") - NcPoly.const(1),
    ]

    def eval_relation_offdiag(rel: NcPoly, bmats: Dict[str, Mat]) -> Mat:
        # off-diagonal block of rel evaluated on [[X_W, B], [0, X_V]]
        acc = Mat.zeros(nw, nv)
        for word, c in rel.terms.items():
            top = Mat.identity(nw)
            off = Mat.zeros(nw, nv)
            for s in word:
                xw_s = w.generator_matrix(s)
                xv_s = v.generator_matrix(s)
                off = top * bmats[s] + off * xv_s
                top = top * xw_s
            acc = acc + off.scale(c)
        return acc

    def unknowns_to_blocks(vec: Vec) -> Dict[str, Mat]:
        out = {}
        for gi, g in enumerate(gens):
            base = gi * nblk
            out[g] = Mat([[vec[base + i * nv + j] for j in range(nv)] for i in range(nw)])
        return out

    # one column per unknown entry: residual entries of every relation
    zero_blocks = {g: Mat.zeros(nw, nv) for g in gens}
    cols = []
    for gi, g in enumerate(gens):
        for i in range(nw):
            for j in range(nv):
                bm = dict(zero_blocks)
                bm[g] = _unit_matrix(nw, nv, i, j)
                colvec: Vec = []
                for rel in relations:
                    res = eval_relation_offdiag(rel, bm)
                    colvec.extend(res.rows[a][b] for a in range(nw) for b in range(nv))
                cols.append(colvec)
    cocycles = kernel_basis(Mat.from_cols(cols))
    # coboundaries: T in Hom_k(V, W) -> (X_W T - T X_V)_x stacked over gens
    cob_cols = []
    for i in range(nw):
        for j in range(nv):
            t = _unit_matrix(nw, nv, i, j)
            vec = []
            for g in gens:
                xw_g = w.action[g] if g == "ginv" else w.generator_matrix(g)
                xv_g = v.action[g] if g == "ginv" else v.generator_matrix(g)
                m = xw_g * t - t * xv_g
                vec.extend([m.rows[a][b] for a in range(nw) for b in range(nv)])
            cob_cols.append(vec)
    cob_basis = span_basis(cob_cols)
    cocycle_dim = len(cocycles)
    coboundary_dim = len(cob_basis)
    ext_dim = cocycle_dim - coboundary_dim

    reps: List[Module] = []
    if ext_dim > 0:
        # representatives: cocycles independent modulo coboundaries
        chosen: List[Vec] = []
        current = list(cob_basis)
        for z in cocycles:
            if len(chosen) >= min(ext_dim, max_representatives):
                break
            if not in_span(current, z):
                chosen.append(z)
                current = span_basis(current + [z])
        for z in chosen:
            blocks = unknowns_to_blocks(z)
            action = {}
            for g in v.generator_symbols():
                action[g] = _block_upper(w.action[g], blocks[g], v.action[g])
            reps.append(Module(v.algebra, action, v.field, v.q))
    return Ext1Result(ext_dim, reps, cocycle_dim, coboundary_dim)


def _unit_matrix(n: int, m: int, i: int, j: int) -> Mat:
    out = Mat.zeros(n, m)
    out.rows[i][j] = ONE
    return out


def _block_upper(tl: Mat, tr: Mat, br: Mat) -> Mat:
    from .linalg import block2x2

    return block2x2(tl, tr, Mat.zeros(tl.nrows, br.ncols), br)
