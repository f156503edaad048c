"""Exact scalars over Q or a fixed real/imaginary quadratic extension Q(sqrt(d)).

A :class:`Scalar` is ``r + s*sqrt(d)`` with ``r, s`` reduced fractions.  The
extension ``d`` is a nonzero square-free integer, ``d not in {0, 1}``; scalars
with ``s == 0`` are stored with ``d = None`` and coerce freely into any
extension (Q embeds in every Q(sqrt(d))).  Mixing two *distinct* nontrivial
extensions raises :class:`FieldError`.  There is no floating point anywhere.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Optional, Union

Rat = Union[int, Fraction]


class FieldError(ValueError):
    """Illegal field operation: mixed extensions, division by zero, bad d."""


def _is_squarefree(n: int) -> bool:
    n = abs(n)
    k = 2
    while k * k <= n:
        if n % (k * k) == 0:
            return False
        k += 1
    return True


class FieldDesc:
    """Base field marker: ``ext`` is None (Q) or a square-free integer d."""

    __slots__ = ("ext",)

    def __init__(self, ext: Optional[int] = None):
        if ext is not None:
            if ext in (0, 1) or not _is_squarefree(ext):
                raise FieldError(f"extension must be square-free and not 0 or 1, got {ext}")
        self.ext = ext

    def __eq__(self, other):
        return isinstance(other, FieldDesc) and self.ext == other.ext

    def __hash__(self):
        return hash(("FieldDesc", self.ext))

    def __repr__(self):
        return "QQ" if self.ext is None else f"QQ(sqrt({self.ext}))"

    def to_json(self):
        return {"ext": self.ext}

    @staticmethod
    def from_json(obj) -> "FieldDesc":
        return FieldDesc(obj.get("ext") if obj else None)


def join_ext(d1: Optional[int], d2: Optional[int]) -> Optional[int]:
    if d1 is None:
        return d2
    if d2 is None or d1 == d2:
        return d1
    raise FieldError(f"mixed field extensions sqrt({d1}) and sqrt({d2})")


_ZERO = Fraction(0)
_ONE = Fraction(1)


class Scalar:
    """Element r + s*sqrt(d) of Q(sqrt(d)); immutable, exact."""

    __slots__ = ("r", "s", "d")

    def __init__(self, r: Rat = 0, s: Rat = 0, d: Optional[int] = None):
        r = Fraction(r)
        s = Fraction(s)
        if s == 0:
            d = None
        elif d is None:
            raise FieldError("irrational part requires an extension d")
        elif d in (0, 1) or not _is_squarefree(d):
            raise FieldError(f"extension must be square-free and not 0 or 1, got {d}")
        self.r = r
        self.s = s
        self.d = d

    # -- constructors -------------------------------------------------

    @staticmethod
    def of(x: Union["Scalar", Rat]) -> "Scalar":
        if isinstance(x, Scalar):
            return x
        return Scalar(x)

    @staticmethod
    def sqrt_gen(d: int) -> "Scalar":
        """The generator sqrt(d) itself."""
        return Scalar(0, 1, d)

    # -- predicates ----------------------------------------------------

    def is_zero(self) -> bool:
        return not self.r and not self.s

    def is_one(self) -> bool:
        return self.r == _ONE and not self.s

    def is_rational(self) -> bool:
        return not self.s

    def __bool__(self):
        return bool(self.r or self.s)

    # -- arithmetic ----------------------------------------------------

    def __add__(self, other):
        other = Scalar.of(other)
        return Scalar(self.r + other.r, self.s + other.s, join_ext(self.d, other.d))

    __radd__ = __add__

    def __sub__(self, other):
        other = Scalar.of(other)
        return Scalar(self.r - other.r, self.s - other.s, join_ext(self.d, other.d))

    def __rsub__(self, other):
        return Scalar.of(other) - self

    def __neg__(self):
        return Scalar(-self.r, -self.s, self.d)

    def __mul__(self, other):
        other = Scalar.of(other)
        if not self.s and not other.s:
            return Scalar(self.r * other.r)
        d = join_ext(self.d, other.d)
        r = self.r * other.r
        if self.s and other.s:
            r += self.s * other.s * d
        return Scalar(r, self.r * other.s + self.s * other.r, d)

    __rmul__ = __mul__

    def inv(self) -> "Scalar":
        if self.is_zero():
            raise FieldError("division by zero")
        if not self.s:
            return Scalar(1 / self.r)
        n = self.r * self.r - self.d * self.s * self.s  # norm; nonzero since d is not a square
        return Scalar(self.r / n, -self.s / n, self.d)

    def __truediv__(self, other):
        return self * Scalar.of(other).inv()

    def __rtruediv__(self, other):
        return Scalar.of(other) * self.inv()

    def __pow__(self, n: int):
        if n < 0:
            return self.inv() ** (-n)
        out = Scalar(1)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def conj(self) -> "Scalar":
        """Galois conjugate r - s*sqrt(d)."""
        return Scalar(self.r, -self.s, self.d)

    # -- structure -----------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return not self.s and self.r == other
        if not isinstance(other, Scalar):
            return NotImplemented
        return self.r == other.r and self.s == other.s

    def __hash__(self):
        if not self.s:
            return hash(self.r)
        return hash((self.r, self.s, self.d))

    def sort_key(self):
        """Total order on the (r, s) encoding; used for canonical choices."""
        return (self.r, self.s)

    def __repr__(self):
        return f"Scalar({format_scalar(self)!r})"


def sc(x: Rat) -> Scalar:
    return Scalar(x)


ZERO = Scalar(0)
ONE = Scalar(1)


def sqrt_in_field(x: Scalar, ext: Optional[int]) -> Optional[Scalar]:
    """A scalar whose square is ``x``, inside Q(sqrt(ext)), or None.

    Covers all cases exactly: rational squares, multiples of the generator,
    and genuine ``u + v*sqrt(d)`` roots of irrational arguments.
    """
    x = Scalar.of(x)
    if x.is_zero():
        return ZERO
    ext = join_ext(x.d, ext)
    if x.is_rational():
        u = _rat_sqrt(x.r)
        if u is not None:
            return Scalar(u)
        if ext is not None:
            # x = d * v^2 gives sqrt(x) = v*sqrt(d)
            v2 = x.r / ext
            v = _rat_sqrt(v2)
            if v is not None:
                return Scalar(0, v, ext)
        return None
    # (u + v sqrt(d))^2 = u^2 + d v^2 + 2uv sqrt(d)
    d = ext
    n = x.r * x.r - Fraction(d) * x.s * x.s
    sn = _rat_sqrt(n)
    if sn is None:
        return None
    for root_n in (sn, -sn):
        u2 = (x.r + root_n) / 2
        u = _rat_sqrt(u2)
        if u is not None and u != 0:
            v = x.s / (2 * u)
            cand = Scalar(u, v, d)
            if cand * cand == x:
                return cand
    return None


def _rat_sqrt(q: Fraction) -> Optional[Fraction]:
    if q < 0:
        return None
    pn = _int_sqrt(q.numerator)
    pd = _int_sqrt(q.denominator)
    if pn is None or pd is None:
        return None
    return Fraction(pn, pd)


def _int_sqrt(n: int) -> Optional[int]:
    if n < 0:
        return None
    r = int(n ** 0.5)
    for c in (r - 1, r, r + 1, r + 2):
        if c >= 0 and c * c == n:
            return c
    return None


# -- text format ------------------------------------------------------------
#
# Canonical grammar (whitespace-free): "p/q" or "p/q+r/s*sqrt(d)", with signs
# allowed and "/1" omitted.  This is the single scalar format used by module
# files, fusion records and the CLI.


def format_scalar(x: Scalar) -> str:
    if x.is_rational():
        return str(x.r)
    head = str(x.r)
    tail = f"{str(abs(x.s))}*sqrt({x.d})"
    sign = "+" if x.s > 0 else "-"
    return head + sign + tail


def parse_scalar(text: str, ext: Optional[int] = None) -> Scalar:
    """Parse the scalar grammar; accepts shorthand like ``sqrt(2)``, ``-3*sqrt(5)``."""
    t = text.strip().replace(" ", "")
    if not t:
        raise FieldError("empty scalar literal")
    body, s_part = _split_outer(t)
    r = Fraction(body) if body else Fraction(0)
    if s_part is None:
        return Scalar(r)
    coeff_text, d_text = s_part
    s = Fraction(coeff_text) if coeff_text not in ("", "+", "-") else Fraction(coeff_text + "1")
    d = int(d_text)
    d = join_ext(d, ext)
    return Scalar(r, s, d)


def _split_outer(t: str):
    """Split 'A+B*sqrt(d)' into (A, (B, d)); either part may be missing."""
    i = t.find("sqrt(")
    if i < 0:
        return t, None
    j = t.index(")", i)
    d_text = t[i + 5 : j]
    if t[j + 1 :]:
        raise FieldError(f"trailing characters in scalar literal: {t!r}")
    coeff = t[:i]
    if coeff.endswith("*"):
        coeff = coeff[:-1]
    # find the split point between the rational part and the sqrt coefficient
    k = max(coeff.rfind("+"), coeff.rfind("-"))
    while k > 0 and coeff[k - 1] == "/":
        k = max(coeff.rfind("+", 0, k), coeff.rfind("-", 0, k))
    if k <= 0:
        return "", (coeff, d_text)
    return coeff[:k], (coeff[k:], d_text)
