"""Machine-readable presentations of L, Lq, H, Hbar, K with PBW rewriting.

Words are tuples of generator symbols; ``ginv`` is a first-class symbol with
two-sided cancellation rules, and ``x21`` (the quadratic element of the super
Jordan plane) is a first-class derived symbol of K so that the PBW basis
``x1^a x21^b x2^c g^d`` (a in {0,1}) is the set of normal words.

Every rewrite rule strictly decreases a graded-lexicographic monomial order
with the group-like generator heaviest, so rewriting terminates; confluence is
exercised by randomized smoke tests rather than assumed.  Identity checking is
``nf(lhs - rhs) == 0`` and returns a transcript of rule applications.

The Hopf data (coproduct, counit, antipode on generators) lives here too, as
do the algebra maps phi: H -> K (l1 -> x21, l2 -> -x2^2/2, g -> g^2) and the
quotient map pi: K -> L (x1 -> 0, x2 -> y, g -> g).
"""

from __future__ import annotations

from fractions import Fraction
from typing import Callable, Dict, Iterable, List, Optional, Sequence, Tuple

from .field import ONE, ZERO, Scalar, format_scalar

Word = Tuple[str, ...]
EMPTY: Word = ()

HALF = Scalar(Fraction(1, 2))


class NcPoly:
    """Noncommutative polynomial: {word: scalar}, zero coefficients absent."""

    __slots__ = ("terms",)

    def __init__(self, terms: Optional[Dict[Word, Scalar]] = None):
        self.terms: Dict[Word, Scalar] = {}
        if terms:
            for w, c in terms.items():
                c = Scalar.of(c)
                if c:
                    self.terms[tuple(w)] = c

    @staticmethod
    def gen(symbol: str) -> "NcPoly":
        return NcPoly({(symbol,): ONE})

    @staticmethod
    def word(*symbols: str) -> "NcPoly":
        return NcPoly({tuple(symbols): ONE})

    @staticmethod
    def const(c) -> "NcPoly":
        return NcPoly({EMPTY: Scalar.of(c)})

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other: "NcPoly") -> "NcPoly":
        out = dict(self.terms)
        for w, c in other.terms.items():
            s = out.get(w, ZERO) + c
            if s:
                out[w] = s
            else:
                out.pop(w, None)
        return NcPoly(out)

    def __sub__(self, other: "NcPoly") -> "NcPoly":
        return self + other.scale(Scalar(-1))

    def __neg__(self) -> "NcPoly":
        return self.scale(Scalar(-1))

    def scale(self, c) -> "NcPoly":
        c = Scalar.of(c)
        if not c:
            return NcPoly()
        return NcPoly({w: c * x for w, x in self.terms.items()})

    def __mul__(self, other: "NcPoly") -> "NcPoly":
        out: Dict[Word, Scalar] = {}
        for w1, c1 in self.terms.items():
            for w2, c2 in other.terms.items():
                w = w1 + w2
                s = out.get(w, ZERO) + c1 * c2
                if s:
                    out[w] = s
                else:
                    out.pop(w, None)
        return NcPoly(out)

    def __pow__(self, n: int) -> "NcPoly":
        out = NcPoly.const(1)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __eq__(self, other):
        return isinstance(other, NcPoly) and self.terms == other.terms

    def __repr__(self):
        if not self.terms:
            return "0"
        bits = []
        for w in sorted(self.terms, key=lambda w: (len(w), w)):
            c = format_scalar(self.terms[w])
            mono = "*".join(w) if w else "1"
            bits.append(f"({c})*{mono}")
        return " + ".join(bits)

    def support(self) -> List[Word]:
        return sorted(self.terms, key=lambda w: (len(w), w))


Rule = Tuple[Word, NcPoly]


class Presentation:
    """A named algebra with rewrite rules to PBW normal form and Hopf data."""

    def __init__(
        self,
        name: str,
        generators: Sequence[str],
        rules: Sequence[Rule],
        relations: Sequence[NcPoly],
        grouplike: str,
        skew_primitives: Sequence[str],
        module_generators: Sequence[str],
        q: Optional[Scalar] = None,
        antipode: Optional[Dict[str, NcPoly]] = None,
    ):
        self.name = name
        self.generators = tuple(generators)  # full rewriting alphabet, incl. ginv
        self.rules = list(rules)
        self.relations = list(relations)  # defining relations as word polynomials
        self.grouplike = grouplike
        self.skew_primitives = tuple(skew_primitives)
        self.module_generators = tuple(module_generators)  # matrices a Module must supply
        self.q = q
        self._antipode = antipode or {}
        self._rule_index: Dict[str, List[Tuple[Word, NcPoly]]] = {}
        for lhs, rhs in self.rules:
            self._rule_index.setdefault(lhs[0], []).append((lhs, rhs))
        self._nf_cache: Dict[Word, Dict[Word, Scalar]] = {}
        # graded-lex monomial order that every rewrite rule strictly decreases
        self._rank = {g: i for i, g in enumerate(self.generators)}

    def _order_key(self, w: Word):
        # heapq is a min-heap; negate so the largest word pops first
        return (-len(w), tuple(-self._rank[s] for s in w))

    # -- rewriting -------------------------------------------------------

    def _find_redex(self, word: Word, rightmost: bool = False):
        rng = range(len(word) - 1, -1, -1) if rightmost else range(len(word))
        for i in rng:
            for lhs, rhs in self._rule_index.get(word[i], ()):
                if word[i : i + len(lhs)] == lhs:
                    return i, lhs, rhs
        return None

    def normal_form(self, p: NcPoly, strategy: str = "leftmost", transcript: Optional[List[str]] = None) -> NcPoly:
        """Reduce p to PBW normal form; strategy picks which redex fires first."""
        rightmost = strategy == "rightmost"
        use_cache = transcript is None and not rightmost
        out: Dict[Word, Scalar] = {}
        for w, c in p.terms.items():
            if use_cache:
                nfw = self._nf_word_cached(w)
            else:
                nfw = self._nf_word(w, rightmost, transcript)
            for w2, c2 in nfw.items():
                s = out.get(w2, ZERO) + c * c2
                if s:
                    out[w2] = s
                else:
                    out.pop(w2, None)
        return NcPoly(out)

    def _nf_word(self, word: Word, rightmost: bool, transcript) -> Dict[Word, Scalar]:
        # worklist keyed by the monomial order: the largest word is expanded
        # first, and since every rule strictly decreases the order, each
        # distinct word is rewritten at most once per call
        import heapq

        out: Dict[Word, Scalar] = {}
        work: Dict[Word, Scalar] = {word: ONE}
        heap = [(self._order_key(word), word)]
        while heap:
            _, w = heapq.heappop(heap)
            coeff = work.pop(w, None)
            if coeff is None:
                continue  # cancelled or already handled
            hit = self._find_redex(w, rightmost)
            if hit is None:
                s = out.get(w, ZERO) + coeff
                if s:
                    out[w] = s
                else:
                    out.pop(w, None)
                continue
            i, lhs, rhs = hit
            if transcript is not None and len(transcript) < 2000:
                transcript.append(f"{'*'.join(w) or '1'} : apply {'*'.join(lhs)} -> {rhs!r} at position {i}")
            pre, post = w[:i], w[i + len(lhs) :]
            for w2, c2 in rhs.terms.items():
                nw = pre + w2 + post
                if nw not in work:
                    heapq.heappush(heap, (self._order_key(nw), nw))
                    work[nw] = coeff * c2
                else:
                    s = work[nw] + coeff * c2
                    if s:
                        work[nw] = s
                    else:
                        del work[nw]
        return out

    def _nf_word_cached(self, word: Word) -> Dict[Word, Scalar]:
        # same heap-driven reduction, consulting/feeding the cross-call cache
        import heapq

        cached = self._nf_cache.get(word)
        if cached is not None:
            return cached
        out: Dict[Word, Scalar] = {}
        work: Dict[Word, Scalar] = {word: ONE}
        heap = [(self._order_key(word), word)]
        while heap:
            _, w = heapq.heappop(heap)
            coeff = work.pop(w, None)
            if coeff is None:
                continue
            known = self._nf_cache.get(w)
            if known is None:
                hit = self._find_redex(w, False)
                if hit is None:
                    known = {w: ONE}
                else:
                    i, lhs, rhs = hit
                    pre, post = w[:i], w[i + len(lhs) :]
                    for w2, c2 in rhs.terms.items():
                        nw = pre + w2 + post
                        if nw not in work:
                            heapq.heappush(heap, (self._order_key(nw), nw))
                            work[nw] = coeff * c2
                        else:
                            s = work[nw] + coeff * c2
                            if s:
                                work[nw] = s
                            else:
                                del work[nw]
                    continue
            for w2, c2 in known.items():
                s = out.get(w2, ZERO) + coeff * c2
                if s:
                    out[w2] = s
                else:
                    out.pop(w2, None)
        if len(self._nf_cache) < 500000:
            self._nf_cache[word] = out
        return out

    def nf(self, p: NcPoly) -> NcPoly:
        return self.normal_form(p)

    def mul_nf(self, *polys: NcPoly) -> NcPoly:
        """Product reduced after every factor; same value as nf of the free
        product but without expanding exponentially many unreduced words."""
        acc = NcPoly.const(1)
        for p in polys:
            acc = self.nf(acc * p)
        return acc

    def pow_nf(self, p: NcPoly, n: int) -> NcPoly:
        acc = NcPoly.const(1)
        p = self.nf(p)
        for _ in range(n):
            acc = self.nf(acc * p)
        return acc

    def verify_identity(self, lhs: NcPoly, rhs: NcPoly, want_transcript: bool = False) -> "IdentityOutcome":
        """Succeeds iff nf(lhs - rhs) = 0.  The transcript of rule applications
        is only recorded on request: recording disables the word cache and is
        meant for small demonstration inputs, not the bulk identity suites."""
        transcript: Optional[List[str]] = [] if want_transcript else None
        residual = self.normal_form(lhs - rhs, transcript=transcript)
        counterexample = residual.support()[0] if residual.terms else None
        return IdentityOutcome(residual.is_zero(), transcript or [], residual, counterexample)

    # -- Hopf structure ----------------------------------------------------

    def delta_gen(self, g: str) -> "TensorPoly":
        if g == self.grouplike:
            return TensorPoly({((g,), (g,)): ONE})
        if g == "ginv":
            return TensorPoly({(("ginv",), ("ginv",)): ONE})
        if g in self.skew_primitives:
            return TensorPoly({((g,), EMPTY): ONE, ((self.grouplike,), (g,)): ONE})
        if g == "x21":
            # derived symbol: Delta(x21) = Delta(x1)Delta(x2) + Delta(x2)Delta(x1)
            d1, d2 = self.delta_gen("x1"), self.delta_gen("x2")
            return (d1.mul(d2, self) + d2.mul(d1, self)).reduce(self)
        raise KeyError(g)

    def delta(self, p: NcPoly) -> "TensorPoly":
        out = TensorPoly()
        for w, c in p.terms.items():
            t = TensorPoly({(EMPTY, EMPTY): ONE})
            for sym in w:
                t = t.mul(self.delta_gen(sym), self)
            out = out + t.scale(c)
        return out.reduce(self)

    def counit_gen(self, g: str) -> Scalar:
        if g in (self.grouplike, "ginv"):
            return ONE
        return ZERO

    def counit(self, p: NcPoly) -> Scalar:
        total = ZERO
        for w, c in p.terms.items():
            f = c
            for sym in w:
                f = f * self.counit_gen(sym)
                if not f:
                    break
            total = total + f
        return total

    def antipode_gen(self, g: str) -> NcPoly:
        if g in self._antipode:
            return self._antipode[g]
        if g == self.grouplike:
            return NcPoly.gen("ginv")
        if g == "ginv":
            return NcPoly.gen(self.grouplike)
        if g in self.skew_primitives:
            # m(S (x) id)Delta(x) = S(x) + S(g)x = 0 forces S(x) = -g^-1 x
            return NcPoly({("ginv", g): Scalar(-1)})
        if g == "x21":
            s1, s2 = self.antipode_gen("x1"), self.antipode_gen("x2")
            return self.nf(s2 * s1 + s1 * s2)
        raise KeyError(g)

    def antipode(self, p: NcPoly) -> NcPoly:
        # antihomomorphism: S(uv) = S(v)S(u)
        out = NcPoly()
        for w, c in p.terms.items():
            acc = NcPoly.const(c)
            for sym in reversed(w):
                acc = acc * self.antipode_gen(sym)
            out = out + acc
        return self.nf(out)


class IdentityOutcome:
    def __init__(self, equal: bool, transcript: List[str], residual: NcPoly, counterexample: Optional[Word]):
        self.equal = equal
        self.transcript = transcript
        self.residual = residual
        self.counterexample = counterexample

    def __bool__(self):
        return self.equal

    def __repr__(self):
        if self.equal:
            return f"IdentityOutcome(equal, {len(self.transcript)} rule applications)"
        return f"IdentityOutcome(NOT equal, counterexample monomial {self.counterexample})"


class TensorPoly:
    """Element of A (x) A (or higher tensor powers): {(word, ..., word): scalar}."""

    __slots__ = ("terms",)

    def __init__(self, terms: Optional[Dict[Tuple[Word, ...], Scalar]] = None):
        self.terms: Dict[Tuple[Word, ...], Scalar] = {}
        if terms:
            for k, c in terms.items():
                c = Scalar.of(c)
                if c:
                    self.terms[tuple(tuple(w) for w in k)] = c

    def __add__(self, other: "TensorPoly") -> "TensorPoly":
        out = dict(self.terms)
        for k, c in other.terms.items():
            s = out.get(k, ZERO) + c
            if s:
                out[k] = s
            else:
                out.pop(k, None)
        return TensorPoly(out)

    def __sub__(self, other: "TensorPoly") -> "TensorPoly":
        return self + other.scale(Scalar(-1))

    def scale(self, c) -> "TensorPoly":
        c = Scalar.of(c)
        return TensorPoly({k: c * x for k, x in self.terms.items()}) if c else TensorPoly()

    def mul(self, other: "TensorPoly", pres: "Presentation") -> "TensorPoly":
        out: Dict[Tuple[Word, ...], Scalar] = {}
        for k1, c1 in self.terms.items():
            for k2, c2 in other.terms.items():
                k = tuple(w1 + w2 for w1, w2 in zip(k1, k2))
                s = out.get(k, ZERO) + c1 * c2
                if s:
                    out[k] = s
                else:
                    out.pop(k, None)
        return TensorPoly(out).reduce(pres)

    def reduce(self, pres: "Presentation") -> "TensorPoly":
        out = TensorPoly()
        for k, c in self.terms.items():
            reduced_slots = [pres.nf(NcPoly({w: ONE})) for w in k]
            # distribute the product of slotwise normal forms
            combos: List[Tuple[Tuple[Word, ...], Scalar]] = [((), c)]
            for slot in reduced_slots:
                combos = [
                    (key + (w,), coeff * c2) for key, coeff in combos for w, c2 in slot.terms.items()
                ]
            out = out + TensorPoly({k2: c2 for k2, c2 in combos})
        return out

    def apply_slot(self, i: int, fn) -> "TensorPoly":
        """Apply fn: NcPoly -> TensorPoly-ish expansion at slot i (for coassociativity)."""
        out = TensorPoly()
        for k, c in self.terms.items():
            expanded = fn(NcPoly({k[i]: ONE}))
            for k2, c2 in expanded.terms.items():
                key = k[:i] + k2 + k[i + 1 :]
                out = out + TensorPoly({key: c * c2})
        return out

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other):
        return isinstance(other, TensorPoly) and self.terms == other.terms

    def __repr__(self):
        bits = []
        for k in sorted(self.terms, key=lambda k: tuple((len(w), w) for w in k)):
            mono = " (x) ".join("*".join(w) if w else "1" for w in k)
            bits.append(f"({format_scalar(self.terms[k])})*[{mono}]")
        return " + ".join(bits) if bits else "0"


# -- concrete presentations --------------------------------------------------


def _nc(*pairs) -> NcPoly:
    """Helper: _nc((coeff, 'a','b'), ...) -> sum of coeff * word."""
    out: Dict[Word, Scalar] = {}
    for coeff, *word in pairs:
        w = tuple(word)
        c = out.get(w, ZERO) + Scalar.of(coeff)
        if c:
            out[w] = c
        else:
            out.pop(w, None)
    return NcPoly(out)


def _inverse_rules() -> List[Rule]:
    return [
        (("g", "ginv"), NcPoly.const(1)),
        (("ginv", "g"), NcPoly.const(1)),
    ]


def build_presentation(name: str, q: Optional[Scalar] = None) -> Presentation:
    """Presentations with rules producing the PBW bases:

    L:    y^a g^b            H:  a1^a a2^b g^c
    K:    x1^a x21^b x2^c g^d (a in {0,1})
    Hbar: x2^b g^c (commutative)
    """
    if name == "L":
        rules = [
            (("g", "y"), _nc((-1, "y", "g"))),
            (("ginv", "y"), _nc((-1, "y", "ginv"))),
        ] + _inverse_rules()
        relations = [_nc((1, "g", "y"), (1, "y", "g"))]  # gyg^-1 = -y
        return Presentation("L", ("y", "g", "ginv"), rules, relations, "g", ("y",), ("g", "y"))
    if name == "Lq":
        if q is None:
            raise ValueError("Lq requires the parameter q")
        qi = q.inv()
        rules = [
            (("g", "y"), _nc((q, "y", "g"))),
            (("ginv", "y"), _nc((qi, "y", "ginv"))),
        ] + _inverse_rules()
        relations = [_nc((1, "g", "y"), (-q, "y", "g"))]
        return Presentation("Lq", ("y", "g", "ginv"), rules, relations, "g", ("y",), ("g", "y"), q=q)
    if name == "H":
        rules = [
            (("a2", "a1"), _nc((1, "a1", "a2"), (-HALF, "a1", "a1"))),
            (("g", "a1"), _nc((1, "a1", "g"))),
            (("ginv", "a1"), _nc((1, "a1", "ginv"))),
            (("g", "a2"), _nc((1, "a1", "g"), (1, "a2", "g"))),
            (("ginv", "a2"), _nc((1, "a2", "ginv"), (-1, "a1", "ginv"))),
        ] + _inverse_rules()
        relations = [
            _nc((1, "a2", "a1"), (-1, "a1", "a2"), (HALF, "a1", "a1")),
            _nc((1, "g", "a1"), (-1, "a1", "g")),
            _nc((1, "g", "a2"), (-1, "a1", "g"), (-1, "a2", "g")),
        ]
        return Presentation("H", ("a1", "a2", "g", "ginv"), rules, relations, "g", ("a1", "a2"), ("g", "a1", "a2"))
    if name == "Hbar":
        rules = [
            (("g", "x2"), _nc((1, "x2", "g"))),
            (("ginv", "x2"), _nc((1, "x2", "ginv"))),
        ] + _inverse_rules()
        relations = [_nc((1, "g", "x2"), (-1, "x2", "g"))]
        return Presentation("Hbar", ("x2", "g", "ginv"), rules, relations, "g", ("x2",), ("g", "x2"))
    if name == "K":
        rules = [
            (("x1", "x1"), NcPoly()),
            (("x2", "x1"), _nc((1, "x21"), (-1, "x1", "x2"))),
            (("x21", "x1"), _nc((1, "x1", "x21"))),
            (("x2", "x21"), _nc((1, "x21", "x2"), (1, "x1", "x21"))),
            (("g", "x1"), _nc((-1, "x1", "g"))),
            (("ginv", "x1"), _nc((-1, "x1", "ginv"))),
            (("g", "x2"), _nc((1, "x1", "g"), (-1, "x2", "g"))),
            (("ginv", "x2"), _nc((-1, "x1", "ginv"), (-1, "x2", "ginv"))),
            (("g", "x21"), _nc((1, "x21", "g"))),
            (("ginv", "x21"), _nc((1, "x21", "ginv"))),
        ] + _inverse_rules()
        relations = [
            _nc((1, "x1", "x1")),
            # x2*x21 - x21*x2 - x1*x21 with x21 = x1x2 + x2x1 expanded
            _nc(
                (1, "x2", "x2", "x1"),
                (-1, "x1", "x2", "x2"),
                (-1, "x1", "x1", "x2"),
                (-1, "x1", "x2", "x1"),
            ),
            _nc((1, "g", "x1"), (1, "x1", "g")),
            _nc((1, "g", "x2"), (-1, "x1", "g"), (1, "x2", "g")),
        ]
        return Presentation("K", ("x1", "x21", "x2", "g", "ginv"), rules, relations, "g", ("x1", "x2"), ("g", "x1", "x2"))
    raise ValueError(f"unknown presentation {name!r}")


# x21 as an element of K in base generators
X21_EXPANDED = _nc((1, "x1", "x2"), (1, "x2", "x1"))

_PRESENTATION_CACHE: Dict[tuple, Presentation] = {}


def get_presentation(name: str, q: Optional[Scalar] = None) -> Presentation:
    """Cached presentations (they are immutable and their nf caches are shared)."""
    key = (name, None if q is None else (q.r, q.s, q.d))
    pres = _PRESENTATION_CACHE.get(key)
    if pres is None:
        pres = build_presentation(name, q)
        _PRESENTATION_CACHE[key] = pres
    return pres


def substitute(p: NcPoly, images: Dict[str, NcPoly], target: Presentation) -> NcPoly:
    """Algebra-map substitution followed by normal form in the target."""
    out = NcPoly()
    for w, c in p.terms.items():
        acc = NcPoly.const(c)
        for sym in w:
            acc = acc * images[sym]
        out = out + acc
    return target.nf(out)


def phi_map(p: NcPoly, h: Presentation, k: Presentation) -> NcPoly:
    """The injective algebra map H -> K: a1 -> x21, a2 -> -x2^2/2, g -> g^2."""
    images = {
        "a1": NcPoly.gen("x21"),
        "a2": _nc((-HALF, "x2", "x2")),
        "g": NcPoly.word("g", "g"),
        "ginv": NcPoly.word("ginv", "ginv"),
    }
    return substitute(p, images, k)


def pi_map(p: NcPoly, k: Presentation, l: Presentation) -> NcPoly:
    """The Hopf quotient K -> K/Kx1K = L: x1 -> 0, x21 -> 0, x2 -> y, g -> g."""
    images = {
        "x1": NcPoly(),
        "x21": NcPoly(),
        "x2": NcPoly.gen("y"),
        "g": NcPoly.gen("g"),
        "ginv": NcPoly.gen("ginv"),
    }
    return substitute(p, images, l)


# -- Hopf axiom checking -----------------------------------------------------


class HopfReport:
    def __init__(self):
        self.checks: List[Tuple[str, bool]] = []

    def add(self, label: str, ok: bool):
        self.checks.append((label, ok))

    @property
    def ok(self) -> bool:
        return all(ok for _, ok in self.checks)

    def failures(self) -> List[str]:
        return [label for label, ok in self.checks if not ok]

    def __repr__(self):
        n = len(self.checks)
        return f"HopfReport({sum(ok for _, ok in self.checks)}/{n} checks passed)"


def check_hopf_axioms(pres: Presentation, degree_bound: int = 4, rng=None) -> HopfReport:
    """Verify coassociativity, counit and antipode axioms on every generator,
    plus compatibility of Delta, eps, S with every rewrite rule (so the Hopf
    structure is well defined on the quotient), plus random-word antipode
    checks up to the degree bound."""
    rep = HopfReport()
    gens = [g for g in pres.generators]

    for g in gens:
        d = pres.delta_gen(g)
        left = d.apply_slot(0, pres.delta).reduce(pres)
        right = d.apply_slot(1, pres.delta).reduce(pres)
        rep.add(f"coassociativity on {g}", left == right)

        # (eps (x) id) Delta = id = (id (x) eps) Delta
        lhs1 = NcPoly()
        lhs2 = NcPoly()
        for (w1, w2), c in d.terms.items():
            lhs1 = lhs1 + NcPoly({w2: c * pres.counit(NcPoly({w1: ONE}))})
            lhs2 = lhs2 + NcPoly({w1: c * pres.counit(NcPoly({w2: ONE}))})
        rep.add(f"counit on {g}", pres.nf(lhs1) == pres.nf(NcPoly.gen(g)) == pres.nf(lhs2))

        # m(S (x) id)Delta = eta eps = m(id (x) S)Delta
        s_left = NcPoly()
        s_right = NcPoly()
        for (w1, w2), c in d.terms.items():
            s_left = s_left + (pres.antipode(NcPoly({w1: ONE})) * NcPoly({w2: ONE})).scale(c)
            s_right = s_right + (NcPoly({w1: ONE}) * pres.antipode(NcPoly({w2: ONE}))).scale(c)
        target = NcPoly.const(pres.counit_gen(g))
        rep.add(f"antipode on {g}", pres.nf(s_left) == target and pres.nf(s_right) == target)

    for lhs, rhs in pres.rules:
        pl, pr = NcPoly({lhs: ONE}), rhs
        rep.add(f"Delta respects {'*'.join(lhs)}", (pres.delta(pl) - pres.delta(pr)).is_zero())
        rep.add(f"eps respects {'*'.join(lhs)}", pres.counit(pl) == pres.counit(pr))
        rep.add(
            f"S respects {'*'.join(lhs)}",
            pres.nf(pres.antipode(pl) - pres.antipode(pr)).is_zero(),
        )

    if rng is not None:
        alphabet = [g for g in pres.generators]
        for _ in range(10):
            n = rng.randrange(1, degree_bound + 1)
            w = tuple(rng.choice(alphabet) for _ in range(n))
            p = NcPoly({w: ONE})
            d = pres.delta(p)
            s_left = NcPoly()
            for (w1, w2), c in d.terms.items():
                s_left = s_left + (pres.antipode(NcPoly({w1: ONE})) * NcPoly({w2: ONE})).scale(c)
            rep.add(
                f"antipode on random word {'*'.join(w)}",
                pres.nf(s_left) == NcPoly.const(pres.counit(p)),
            )
    return rep
