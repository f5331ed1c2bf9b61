"""The affine Kac-Moody group G = SL2(K[u,u^{-1}]) ⋊ K* with exact arithmetic.

Semidirect law: (M, z)·(M1, z1) = (M·M1[u ← z·u], z·z1).

Congruence caveat: ker π_n for this group is not independently computable
here; following the source theory's own unproven assumption we ADOPT the
coefficient-wise description (M ≡ I mod ϖ^n, ω(z−1) ≥ n) as the definition.
Every ker-π_n-dependent predicate and suite inherits this caveat.

H_n is ker π_n intersected with matrices whose coefficient at exponent j has
ω ≥ n·|j| (the ring O[ϖ^n u, ϖ^n u^{-1}] that the equivalence proof actually
manipulates).
"""

from __future__ import annotations

from dataclasses import dataclass
from math import factorial

from . import roots
from .valued import Field, ValuedScalar


class NotTorus(ValueError):
    pass


class LaurentPoly:
    """Element of K[u, u^{-1}]: a finite map exponent -> nonzero coefficient."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field: Field, coeffs: dict[int, ValuedScalar] | None = None):
        self.field = field
        cleaned = {}
        if coeffs:
            for k, v in coeffs.items():
                if not v.is_zero():
                    cleaned[int(k)] = v
        self.coeffs = cleaned

    @staticmethod
    def const(s: ValuedScalar) -> "LaurentPoly":
        return LaurentPoly(s.field, {0: s})

    @staticmethod
    def monomial(field: Field, k: int, s: ValuedScalar) -> "LaurentPoly":
        return LaurentPoly(field, {k: s})

    @staticmethod
    def zero(field: Field) -> "LaurentPoly":
        return LaurentPoly(field, {})

    @staticmethod
    def one(field: Field) -> "LaurentPoly":
        return LaurentPoly(field, {0: field.one()})

    def __add__(self, other: "LaurentPoly") -> "LaurentPoly":
        out = dict(self.coeffs)
        for k, v in other.coeffs.items():
            s = out.get(k)
            out[k] = v if s is None else s + v
        return LaurentPoly(self.field, out)

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly(self.field, {k: -v for k, v in self.coeffs.items()})

    def __sub__(self, other: "LaurentPoly") -> "LaurentPoly":
        return self + (-other)

    def __mul__(self, other: "LaurentPoly") -> "LaurentPoly":
        out: dict[int, ValuedScalar] = {}
        for k1, v1 in self.coeffs.items():
            for k2, v2 in other.coeffs.items():
                k = k1 + k2
                prod = v1 * v2
                s = out.get(k)
                out[k] = prod if s is None else s + prod
        return LaurentPoly(self.field, out)

    def substitute_scale(self, z: ValuedScalar) -> "LaurentPoly":
        """u ← z·u: the exponent-k coefficient is multiplied by z^k."""
        if not self.coeffs or z.is_one():
            return self
        powers: dict[int, ValuedScalar] = {}
        out = {}
        for k, v in self.coeffs.items():
            zp = powers.get(k)
            if zp is None:
                zp = powers[k] = z ** k
            out[k] = v * zp
        return LaurentPoly(self.field, out)

    def __eq__(self, other):
        return (isinstance(other, LaurentPoly) and other.field == self.field
                and other.coeffs == self.coeffs)

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_one(self) -> bool:
        return len(self.coeffs) == 1 and 0 in self.coeffs and self.coeffs[0].is_one()

    def get(self, k: int) -> ValuedScalar:
        return self.coeffs.get(k, self.field.zero())

    def constant_value(self) -> ValuedScalar | None:
        """The scalar if this is a constant polynomial, else None."""
        if not self.coeffs:
            return self.field.zero()
        if len(self.coeffs) == 1 and 0 in self.coeffs:
            return self.coeffs[0]
        return None

    def max_exponent(self) -> int:
        return max(self.coeffs, default=0)

    def min_exponent(self) -> int:
        return min(self.coeffs, default=0)

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for k in sorted(self.coeffs):
            c = self.coeffs[k]
            cs = str(c)
            if "/" in cs or "+" in cs or "-" in cs[1:]:
                cs = f"({cs})"
            if k == 0:
                parts.append(cs)
            else:
                power = "u" if k == 1 else f"u^{k}"
                parts.append(power if c.is_one() else f"{cs}*{power}")
        return " + ".join(parts)


Matrix = tuple[tuple[LaurentPoly, LaurentPoly], tuple[LaurentPoly, LaurentPoly]]


def _mat_mul(m1: Matrix, m2: Matrix) -> Matrix:
    return tuple(
        tuple(m1[r][0] * m2[0][c] + m1[r][1] * m2[1][c] for c in range(2))
        for r in range(2))


def _mat_det(m: Matrix) -> LaurentPoly:
    return m[0][0] * m[1][1] - m[0][1] * m[1][0]


def _mat_subst(m: Matrix, z: ValuedScalar) -> Matrix:
    return tuple(tuple(e.substitute_scale(z) for e in row) for row in m)


@dataclass(frozen=True)
class AffElt:
    m: Matrix
    z: ValuedScalar

    def __post_init__(self):
        if self.z.is_zero():
            raise ValueError("semidirect scalar must be nonzero")
        if not _mat_det(self.m).is_one():
            raise ValueError("determinant must be 1")

    @property
    def field(self) -> Field:
        return self.z.field

    def __mul__(self, other: "AffElt") -> "AffElt":
        return AffElt(_mat_mul(self.m, _mat_subst(other.m, self.z)), self.z * other.z)

    def inverse(self) -> "AffElt":
        adj = ((self.m[1][1], -self.m[0][1]), (-self.m[1][0], self.m[0][0]))
        zi = self.z.inv()
        return AffElt(_mat_subst(adj, zi), zi)

    def conj(self, h: "AffElt") -> "AffElt":
        return self * h * self.inverse()

    def is_identity(self) -> bool:
        return (self.z.is_one() and self.m[0][0].is_one() and self.m[1][1].is_one()
                and self.m[0][1].is_zero() and self.m[1][0].is_zero())

    def __str__(self):
        return (f"([[{self.m[0][0]}, {self.m[0][1]}], "
                f"[{self.m[1][0]}, {self.m[1][1]}]], {self.z})")


def aff_identity(field: Field) -> AffElt:
    one = LaurentPoly.one(field)
    zero = LaurentPoly.zero(field)
    return AffElt(((one, zero), (zero, one)), field.one())


def aff_x_plus(field: Field, k: int, y: ValuedScalar) -> AffElt:
    """x_{å+kδ}(y) = ((1, u^k y; 0, 1), 1)."""
    one = LaurentPoly.one(field)
    zero = LaurentPoly.zero(field)
    return AffElt(((one, LaurentPoly.monomial(field, k, y)), (zero, one)), field.one())


def aff_x_minus(field: Field, k: int, y: ValuedScalar) -> AffElt:
    """x_{−å+kδ}(y) = ((1, 0; u^k y, 1), 1)."""
    one = LaurentPoly.one(field)
    zero = LaurentPoly.zero(field)
    return AffElt(((one, zero), (LaurentPoly.monomial(field, k, y), one)), field.one())


def aff_torus(f: ValuedScalar, z: ValuedScalar) -> AffElt:
    field = f.field
    zero = LaurentPoly.zero(field)
    return AffElt(((LaurentPoly.const(f), zero), (zero, LaurentPoly.const(f.inv()))), z)


def aff_t_mu(field: Field, ell: int, n: int) -> AffElt:
    """t_μ for μ = ell·å∨ + n·d: (diag(ϖ^{-ell}, ϖ^{ell}), ϖ^{-n})."""
    return aff_torus(field.pi_power(-ell), field.pi_power(-n))


def aff_s1(field: Field) -> AffElt:
    """r̃_1 = x_{α1}(1)·x_{−α1}(−1)·x_{α1}(1) = ((0, 1; −1, 0), 1)."""
    one = field.one()
    return aff_x_plus(field, 0, one) * aff_x_minus(field, 0, -one) * aff_x_plus(field, 0, one)


def aff_s0(field: Field) -> AffElt:
    """r̃_0 for α0 = δ − å: x_{α0}(1)·x_{−α0}(−1)·x_{α0}(1) = ((0, −u^{-1}; u, 0), 1)."""
    one = field.one()
    return aff_x_minus(field, 1, one) * aff_x_plus(field, -1, -one) * aff_x_minus(field, 1, one)


def torus_parts(g: AffElt) -> tuple[ValuedScalar, ValuedScalar]:
    """(f, z) for a torus element (diag(f, f^{-1}), z); NotTorus otherwise."""
    if not (g.m[0][1].is_zero() and g.m[1][0].is_zero()):
        raise NotTorus("not a torus element: off-diagonal entries present")
    f = g.m[0][0].constant_value()
    finv = g.m[1][1].constant_value()
    if f is None or finv is None or f.is_zero() or not (f * finv).is_one():
        raise NotTorus("not a torus element: diagonal is not a constant pair (f, 1/f)")
    return f, g.z


def eval_char(chi: tuple[int, int], g: AffElt) -> ValuedScalar:
    """Value of the character m·å + n·δ on a torus element: f^{2m}·z^n."""
    m, n = chi
    f, z = torus_parts(g)
    return f ** (2 * m) * z ** n


ALPHA_1 = (1, 0)
ALPHA_0 = (-1, 1)
DELTA = (0, 1)


def nu_translation(g: AffElt):
    """Translation vector ν(t) in the (å∨, d) basis: χ(ν(t)) = −ω(χ(t))."""
    f, z = torus_parts(g)
    return (-f.valuation(), -z.valuation())


def fixes_test_point(g: AffElt, i: int, n: int) -> bool:
    """ω(α_i(t) − 1) ≥ n: the criterion for a torus t to fix x_{α_i}(ϖ^{-n})·0."""
    if i not in (0, 1):
        raise ValueError("i must be 0 or 1")
    chi = ALPHA_0 if i == 0 else ALPHA_1
    return (eval_char(chi, g) - 1).valuation() >= n


# ---------------------------------------------------------------------------
# Subgroup membership.

@dataclass(frozen=True)
class AffSubgroupSpec:
    kind: str
    n: int | None = None

    @staticmethod
    def kerpi(n: int) -> "AffSubgroupSpec":
        return AffSubgroupSpec("kerpi", _check_level(n))

    @staticmethod
    def hn(n: int) -> "AffSubgroupSpec":
        return AffSubgroupSpec("hn", _check_level(n))

    @staticmethod
    def tn(n: int) -> "AffSubgroupSpec":
        return AffSubgroupSpec("tn", _check_level(n))

    @staticmethod
    def tnphi(n: int) -> "AffSubgroupSpec":
        return AffSubgroupSpec("tnphi", _check_level(n))

    @staticmethod
    def center() -> "AffSubgroupSpec":
        return AffSubgroupSpec("center")

    @staticmethod
    def center_integral() -> "AffSubgroupSpec":
        return AffSubgroupSpec("centero")

    @staticmethod
    def vform(n: int) -> "AffSubgroupSpec":
        return AffSubgroupSpec("vform", _check_level(n))


def _check_level(n: int) -> int:
    if n < 1:
        raise ValueError("filtration level must be >= 1")
    return n


def _kerpi_violations(g: AffElt, n: int) -> list[str]:
    out = []
    one = LaurentPoly.one(g.field)
    for r in range(2):
        for c in range(2):
            dev = g.m[r][c] - one if r == c else g.m[r][c]
            for k, coeff in sorted(dev.coeffs.items()):
                if coeff.valuation() < n:
                    out.append(f"entry ({r + 1},{c + 1}) u^{k}: ω = {coeff.valuation()} < {n}")
    if (g.z - 1).valuation() < n:
        out.append(f"ω(z-1) = {(g.z - 1).valuation()} < {n}")
    return out


def _hn_ring_violations(g: AffElt, n: int) -> list[str]:
    out = []
    for r in range(2):
        for c in range(2):
            for k, coeff in sorted(g.m[r][c].coeffs.items()):
                if coeff.valuation() < n * abs(k):
                    out.append(
                        f"entry ({r + 1},{c + 1}) u^{k}: ω = {coeff.valuation()} < {n * abs(k)}")
    return out


def aff_violations(g: AffElt, spec: AffSubgroupSpec) -> list[str]:
    kind, n = spec.kind, spec.n
    if kind == "kerpi":
        return _kerpi_violations(g, n)
    if kind == "hn":
        return _kerpi_violations(g, n) + _hn_ring_violations(g, n)
    if kind == "tn":
        f, z = torus_parts(g)
        out = []
        if (f - 1).valuation() < n:
            out.append(f"ω(f-1) = {(f - 1).valuation()} < {n}")
        if (z - 1).valuation() < n:
            out.append(f"ω(z-1) = {(z - 1).valuation()} < {n}")
        return out
    if kind == "tnphi":
        out = []
        for i in (0, 1):
            if not fixes_test_point(g, i, n):
                out.append(f"ω(α{i}(t)-1) < {n}")
        return out
    if kind in ("center", "centero"):
        f, z = torus_parts(g)
        out = []
        if not (f * f).is_one():
            out.append("f^2 != 1")
        if not z.is_one():
            out.append("z != 1")
        if kind == "centero" and f.valuation() != 0:
            out.append("ω(f) != 0")
        return out
    if kind == "vform":
        return vform_violations(g, n)
    raise ValueError(f"unknown affine subgroup kind {kind!r}")


def aff_member(g: AffElt, spec: AffSubgroupSpec) -> bool:
    return not aff_violations(g, spec)


# ---------------------------------------------------------------------------
# V-form: sufficient-pattern membership for the λ-segment filtration sets,
# λ = å∨ + 3d.  g must factor as u_+ · u_- · t with u_± in the t_{∓nλ}-shifted
# unit-at-0 patterns and t in T_{2n}.  The factorization M = A·B·diag(f,f^{-1})
# (A polynomial in u with A(0) upper-unitriangular, B polynomial in u^{-1}
# with B(∞) lower-unitriangular) is unique when it exists and is found by two
# small exact linear solves; each factor is then checked entry-wise.

def _pos_pattern_violations(a: Matrix, n: int) -> list[str]:
    """t_{-nλ}·U0^{pm+}·t_{nλ} entry conditions (λ = å∨ + 3d)."""
    out = []
    bounds = ((lambda k: 3 * n * k, lambda k: 2 * n + 3 * n * k),
              (lambda k: 3 * n * k - 2 * n, lambda k: 3 * n * k))
    for r in range(2):
        for c in range(2):
            dev = a[r][c]
            if r == c:
                dev = dev - LaurentPoly.one(dev.field)
            lowest = 1 if r == c or (r, c) == (1, 0) else 0
            for k, coeff in sorted(dev.coeffs.items()):
                if k < lowest:
                    out.append(f"u_+ entry ({r + 1},{c + 1}) has exponent {k} < {lowest}")
                elif coeff.valuation() < bounds[r][c](k):
                    out.append(
                        f"u_+ entry ({r + 1},{c + 1}) u^{k}: ω < {bounds[r][c](k)}")
    return out


def _neg_pattern_violations(b: Matrix, n: int) -> list[str]:
    """t_{nλ}·U0^{nm-}·t_{-nλ} entry conditions (mirror of the + pattern)."""
    out = []
    bounds = ((lambda k: 3 * n * k, lambda k: 3 * n * k - 2 * n),
              (lambda k: 2 * n + 3 * n * k, lambda k: 3 * n * k))
    for r in range(2):
        for c in range(2):
            dev = b[r][c]
            if r == c:
                dev = dev - LaurentPoly.one(dev.field)
            highest = -1 if r == c or (r, c) == (0, 1) else 0
            for k, coeff in sorted(dev.coeffs.items()):
                if k > highest:
                    out.append(f"u_- entry ({r + 1},{c + 1}) has exponent {k} > {highest}")
                elif coeff.valuation() < bounds[r][c](abs(k)):
                    out.append(
                        f"u_- entry ({r + 1},{c + 1}) u^{k}: ω < {bounds[r][c](abs(k))}")
    return out


def _solve_linear(rows, rhs, nvars, field):
    """One exact solution of rows·x = rhs with free variables zeroed, or None."""
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    pivots = []
    row = 0
    for col in range(nvars):
        pivot = next((r for r in range(row, len(aug)) if not aug[r][col].is_zero()), None)
        if pivot is None:
            continue
        aug[row], aug[pivot] = aug[pivot], aug[row]
        inv = aug[row][col].inv()
        aug[row] = [e * inv for e in aug[row]]
        for r in range(len(aug)):
            if r != row and not aug[r][col].is_zero():
                factor = aug[r][col]
                aug[r] = [e - factor * p for e, p in zip(aug[r], aug[row])]
        pivots.append(col)
        row += 1
        if row == len(aug):
            break
    for r in range(row, len(aug)):
        if not aug[r][nvars].is_zero():
            return None
    x = [field.zero()] * nvars
    for r, col in enumerate(pivots):
        x[col] = aug[r][nvars]
    return x


def _birkhoff_row_solve(m: Matrix, top_row: bool, field: Field):
    """Solve for one row pair of the polynomial factor A.

    For the bottom row: A11 = 1 + Σ a_k u^k, A21 = Σ c_k u^k (k = 1..N) with
    A11·M2j − A21·M1j ∈ K[u^{-1}]; top row mirrors it with A22 (constant 1)
    and A12 (free constant term).  The top row additionally imposes the
    normalization coefficient (A22·M12 − A12·M22)(u^0) = 0, without which the
    system has the spurious one-parameter family A ← A·x_+(q0).  Returns the
    pair (diag_poly, off_poly).
    """
    N = max(0, max(e.max_exponent() for row in m for e in row))
    if top_row:
        diag_ref, off_ref = (m[0][0], m[0][1]), (m[1][0], m[1][1])
        off_lowest = 0
    else:
        diag_ref, off_ref = (m[1][0], m[1][1]), (m[0][0], m[0][1])
        off_lowest = 1
    n_diag = N                       # unknowns u^1..u^N on the diagonal factor
    n_off = N + 1 - off_lowest       # unknowns u^{off_lowest}..u^N off diagonal
    nvars = n_diag + n_off
    rows, rhs = [], []
    for j in range(2):
        ref_d, ref_o = diag_ref[j], off_ref[j]
        max_e = N + max(ref_d.max_exponent(), ref_o.max_exponent(), 0)
        lowest_e = 0 if (top_row and j == 1) else 1
        for e in range(lowest_e, max_e + 1):
            row = [field.zero()] * nvars
            for k in range(1, N + 1):
                row[k - 1] = ref_d.get(e - k)
            for idx, k in enumerate(range(off_lowest, N + 1)):
                row[n_diag + idx] = -ref_o.get(e - k)
            rows.append(row)
            rhs.append(-ref_d.get(e))   # constant-term-1 contribution moved right
    sol = _solve_linear(rows, rhs, nvars, field)
    if sol is None:
        return None
    diag = {0: field.one()}
    for k in range(1, N + 1):
        diag[k] = sol[k - 1]
    off = {}
    for idx, k in enumerate(range(off_lowest, N + 1)):
        off[k] = sol[n_diag + idx]
    return LaurentPoly(field, diag), LaurentPoly(field, off)


def vform_violations(g: AffElt, n: int) -> list[str]:
    field = g.field
    if (g.z - 1).valuation() < 2 * n:
        return [f"ω(z-1) = {(g.z - 1).valuation()} < {2 * n}"]
    bottom = _birkhoff_row_solve(g.m, False, field)
    top = _birkhoff_row_solve(g.m, True, field)
    if bottom is None or top is None:
        return ["no polynomial factorization"]
    a11, a21 = bottom
    a22, a12 = top
    A: Matrix = ((a11, a12), (a21, a22))
    if not _mat_det(A).is_one():
        return ["factorization candidate has det != 1"]
    adj = ((a22, -a12), (-a21, a11))
    C = _mat_mul(adj, g.m)
    if any(e.max_exponent() > 0 for row in C for e in row if not e.is_zero()):
        return ["residual factor is not polynomial in u^{-1}"]
    if not C[0][1].get(0).is_zero():
        return ["residual factor is not lower triangular at u = ∞"]
    f = C[0][0].get(0)
    if f.is_zero():
        return ["torus factor vanishes"]
    D_inv: Matrix = ((LaurentPoly.const(f.inv()), LaurentPoly.zero(field)),
                     (LaurentPoly.zero(field), LaurentPoly.const(f)))
    B = _mat_mul(C, D_inv)
    out = []
    if (f - 1).valuation() < 2 * n:
        out.append(f"torus factor: ω(f-1) = {(f - 1).valuation()} < {2 * n}")
    out.extend(_pos_pattern_violations(A, n))
    out.extend(_neg_pattern_violations(B, n))
    return out


# ---------------------------------------------------------------------------
# Kac-Peterson strictness witness.

def kp_witness(n: int, depth: int):
    """Roots β[i] of the alternating word r1 r0 r1 ... and the least index
    where n·ht(β[i]) < ht(β[i])!, witnessing escape from the colimit open set.

    Returns ([(beta, height), ...], index or None), indices 1-based.
    """
    if n < 1 or depth < 1:
        raise ValueError("n and depth must be >= 1")
    system = roots.affine_sl2_system()
    betas = []
    witness = None
    word: list[int] = []
    letters = [1, 0]
    for i in range(1, depth + 1):
        next_letter = letters[(i - 1) % 2]
        beta = roots.WeylElt(system, tuple(word)).apply_root(
            (1, 0) if next_letter == 0 else (0, 1))
        ht = roots.height(beta)
        betas.append((beta, ht))
        if witness is None and n * ht < factorial(ht):
            witness = i
        word.append(next_letter)
    return betas, witness
