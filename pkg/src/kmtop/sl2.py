"""SL2(K) with exact decompositions, filtration membership, and its tree.

Tree points are pairs (g, y): the point g·p_y where p_y = y·å∨ in the
standard apartment, so walls sit at 2y + k = 0.  Point equality is DEFINED by
the four-valuation predicate obtained by formally conjugating the SL2(O)
fixator of 0 by the diagonal translation to y; operations emit canonical
representatives with y in (1/2)Z but accept any rational y.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .valued import INFINITY, Field, ValuedScalar


class NotInBigCell(ValueError):
    pass


@dataclass(frozen=True)
class SL2Elt:
    a: ValuedScalar
    b: ValuedScalar
    c: ValuedScalar
    d: ValuedScalar

    def __post_init__(self):
        if not (self.a * self.d - self.b * self.c).is_one():
            raise ValueError("determinant must be 1")

    @property
    def field(self) -> Field:
        return self.a.field

    def __mul__(self, other: "SL2Elt") -> "SL2Elt":
        return SL2Elt(
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
        )

    def inverse(self) -> "SL2Elt":
        return SL2Elt(self.d, -self.b, -self.c, self.a)

    def entries(self):
        return (self.a, self.b, self.c, self.d)

    def __str__(self):
        return f"[[{self.a}, {self.b}], [{self.c}, {self.d}]]"


def identity(field: Field) -> SL2Elt:
    one, zero = field.one(), field.zero()
    return SL2Elt(one, zero, zero, one)


def x_plus(c: ValuedScalar) -> SL2Elt:
    f = c.field
    return SL2Elt(f.one(), c, f.zero(), f.one())


def x_minus(c: ValuedScalar) -> SL2Elt:
    f = c.field
    return SL2Elt(f.one(), f.zero(), c, f.one())


def diag_torus(f: ValuedScalar) -> SL2Elt:
    """diag(f, f^{-1})."""
    z = f.field.zero()
    return SL2Elt(f, z, z, f.inv())


def weyl_w(field: Field) -> SL2Elt:
    one, zero = field.one(), field.zero()
    return SL2Elt(zero, -one, one, zero)


def upt_decompose(g: SL2Elt):
    """The unique (b, c, δ) with g = x_+(b)·x_-(c)·diag(δ, δ^{-1}).

    Reading off the product ((1+bc)δ, bδ^{-1}; cδ, δ^{-1}) gives δ = g22^{-1},
    c = g21·g22, b = g12·g22^{-1}; requires the big cell g22 ≠ 0.
    """
    if g.d.is_zero():
        raise NotInBigCell("g22 = 0")
    delta = g.d.inv()
    return (g.b * delta, g.c * g.d, delta)


def compose_upt(b: ValuedScalar, c: ValuedScalar, delta: ValuedScalar) -> SL2Elt:
    return x_plus(b) * x_minus(c) * diag_torus(delta)


def birkhoff_decompose(g: SL2Elt):
    """(β, n, γ) with g = x_+(β)·n·x_-(γ), n the monomial of the Birkhoff cell.

    Big cell: n = diag(g22^{-1}, g22), β = g12/g22, γ = g21/g22.  Antidiagonal
    cell: n = (0, g12; −g12^{-1}, 0) with the canonical tie-break γ = 0 and
    β = −g11·g12.
    """
    f = g.field
    if not g.d.is_zero():
        return (g.b / g.d, diag_torus(g.d.inv()), g.c / g.d)
    n = SL2Elt(f.zero(), g.b, -g.b.inv(), f.zero())
    return (-(g.a * g.b), n, f.zero())


# ---------------------------------------------------------------------------
# Subgroup specifications and membership.

@dataclass(frozen=True)
class SL2SubgroupSpec:
    kind: str
    n: int | None = None
    y: Fraction | None = None

    @staticmethod
    def kerpi(n: int) -> "SL2SubgroupSpec":
        return SL2SubgroupSpec("kerpi", n=_positive(n))

    @staticmethod
    def tn(n: int) -> "SL2SubgroupSpec":
        return SL2SubgroupSpec("tn", n=_positive(n))

    @staticmethod
    def tn_units() -> "SL2SubgroupSpec":
        return SL2SubgroupSpec("tnunits")

    @staticmethod
    def v_lambda(n: int) -> "SL2SubgroupSpec":
        return SL2SubgroupSpec("vlambda", n=_positive(n))

    @staticmethod
    def fix_point(y) -> "SL2SubgroupSpec":
        return SL2SubgroupSpec("fixpoint", y=Fraction(y))

    @staticmethod
    def big_cell_integral() -> "SL2SubgroupSpec":
        return SL2SubgroupSpec("bigcello")


def _positive(n: int) -> int:
    if n < 1:
        raise ValueError("filtration level must be >= 1")
    return n


def sl2_violations(g: SL2Elt, spec: SL2SubgroupSpec) -> list[str]:
    """Empty list iff g belongs to the described subgroup."""
    kind, n = spec.kind, spec.n
    out: list[str] = []
    if kind == "kerpi":
        for name, e, target in (("a", g.a, 1), ("b", g.b, 0), ("c", g.c, 0), ("d", g.d, 1)):
            dev = e - target if target else e
            if dev.valuation() < n:
                out.append(f"ω({name}{'-1' if target else ''}) = {dev.valuation()} < {n}")
    elif kind in ("tn", "tnunits"):
        if not (g.b.is_zero() and g.c.is_zero()):
            out.append("not diagonal")
        elif kind == "tn":
            if (g.a - 1).valuation() < n:
                out.append(f"ω(δ-1) = {(g.a - 1).valuation()} < {n}")
        elif g.a.valuation() != 0:
            out.append(f"ω(δ) = {g.a.valuation()} != 0")
    elif kind == "vlambda":
        # λ = å∨, so N(λ) = 2: x_+(ω≥2n)·x_-(ω≥2n)·T_{4n}
        try:
            b, c, delta = upt_decompose(g)
        except NotInBigCell:
            return ["not in the big cell"]
        if b.valuation() < 2 * n:
            out.append(f"ω(b) = {b.valuation()} < {2 * n}")
        if c.valuation() < 2 * n:
            out.append(f"ω(c) = {c.valuation()} < {2 * n}")
        if (delta - 1).valuation() < 4 * n:
            out.append(f"ω(δ-1) = {(delta - 1).valuation()} < {4 * n}")
    elif kind == "fixpoint":
        y = spec.y
        for name, e, bound in (("a", g.a, 0), ("d", g.d, 0),
                               ("b", g.b, -2 * y), ("c", g.c, 2 * y)):
            if e.valuation() < bound:
                out.append(f"ω({name}) = {e.valuation()} < {bound}")
    elif kind == "bigcello":
        try:
            b, c, delta = upt_decompose(g)
        except NotInBigCell:
            return ["not in the big cell"]
        if b.valuation() < 0:
            out.append(f"ω(b) = {b.valuation()} < 0")
        if c.valuation() < 0:
            out.append(f"ω(c) = {c.valuation()} < 0")
        if delta.valuation() != 0:
            out.append(f"ω(δ) = {delta.valuation()} != 0")
    else:
        raise ValueError(f"unknown SL2 subgroup kind {kind!r}")
    return out


def sl2_member(g: SL2Elt, spec: SL2SubgroupSpec) -> bool:
    return not sl2_violations(g, spec)


def kerpi_product_member(g: SL2Elt, n: int) -> bool:
    """ker π_n via the product form x_+(ϖ^n O)·x_-(ϖ^n O)·diag(1+ϖ^n O).

    Independent of the entry-congruence route in sl2_member.
    """
    try:
        b, c, delta = upt_decompose(g)
    except NotInBigCell:
        return False
    return (b.valuation() >= n and c.valuation() >= n
            and (delta - 1).valuation() >= n)


# ---------------------------------------------------------------------------
# The rank-one masure: the Bruhat-Tits tree.

@dataclass(frozen=True)
class TreePoint:
    g: SL2Elt
    y: Fraction

    @staticmethod
    def make(g: SL2Elt, y) -> "TreePoint":
        return TreePoint(g, Fraction(y))


def apartment_point(field: Field, y) -> TreePoint:
    return TreePoint.make(identity(field), y)


def tree_point_equal(p: TreePoint, q: TreePoint) -> bool:
    """Defined equivalence: h = g_P^{-1} g_Q maps p_{y_Q} to p_{y_P}.

    Conjugating the SL2(O) fixator of 0 by the formal diagonal translation
    gives the four valuation conditions below (exact for half-integral y,
    extension-by-formula for other rationals).
    """
    h = p.g.inverse() * q.g
    yp, yq = p.y, q.y
    return (h.a.valuation() >= yq - yp
            and h.b.valuation() >= -(yp + yq)
            and h.c.valuation() >= yp + yq
            and h.d.valuation() >= yp - yq)


def tree_act(g: SL2Elt, p: TreePoint) -> TreePoint:
    return TreePoint(g * p.g, p.y)


def tree_retract(p: TreePoint) -> Fraction:
    """Apartment coordinate of the retraction of p centred at +∞.

    y' is the unique value admitting c0 with (x_+(c0), y') equal to p; with
    bottom row (c, d) of g the conditions force y' ≤ min(ω(c) − y, ω(d) + y),
    and taking c0 = b/d (resp. a/c) attains the bound, so the minimum is it.
    """
    vc = p.g.c.valuation()
    vd = p.g.d.valuation()
    u1 = vc - p.y if vc != INFINITY else None
    u2 = vd + p.y if vd != INFINITY else None
    if u1 is None:
        return Fraction(u2)
    if u2 is None:
        return Fraction(u1)
    return Fraction(min(u1, u2))


def fixed_interval(g: SL2Elt):
    """{y : g fixes p_y}: None (empty), or (lo, hi) with None for ±∞.

    Empty iff ω(a) < 0 or ω(d) < 0; otherwise [−ω(b)/2, ω(c)/2], where a
    vanishing b (resp. c) unbounds the left (right) end.  (None, None) is the
    whole apartment, e.g. any diagonal with unit entries, in particular −I.
    """
    if g.a.valuation() < 0 or g.d.valuation() < 0:
        return None
    lo = None if g.b.is_zero() else -Fraction(g.b.valuation()) / 2
    hi = None if g.c.is_zero() else Fraction(g.c.valuation()) / 2
    return (lo, hi)
