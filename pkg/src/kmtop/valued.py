"""Exact scalars in a field K with a discrete valuation normalized so ω(ϖ) = 1.

Two field kinds are supported:

* ``PAdicField(p)`` -- K = Q with the p-adic valuation, ϖ = p, O = rationals
  with no p in the denominator.
* ``RationalFunctionField(q)`` -- K = F_q(t) (q prime) with the order-at-zero
  valuation, ϖ = t, O = ratios whose denominator is a unit at t = 0.

Values are immutable and kept in canonical form (rationals in lowest terms;
polynomial ratios reduced with monic denominator), so equality is structural
and every operation is pure.  ω(0) is the distinguished tag ``INFINITY``,
never an integer sentinel.
"""

from __future__ import annotations

import math
from fractions import Fraction

INFINITY = math.inf


class DivisionByZero(ZeroDivisionError):
    pass


class FieldMismatch(TypeError):
    pass


class NotIntegral(ValueError):
    pass


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def _prime_power_base(q: int) -> tuple[int, int] | None:
    """Return (p, k) with q = p**k, or None if q is not a prime power."""
    for p in range(2, q + 1):
        if not _is_prime(p):
            continue
        k = 0
        m = q
        while m % p == 0:
            m //= p
            k += 1
        if m == 1 and k >= 1:
            return p, k
        if q % p == 0:
            return None
    return None


# ---------------------------------------------------------------------------
# Dense polynomials over F_p, as tuples of ints in [0, p).  () is zero.

def _ptrim(c: list[int]) -> tuple[int, ...]:
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


def _padd(a, b, p):
    n = max(len(a), len(b))
    return _ptrim([((a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0)) % p
                   for i in range(n)])


def _pneg(a, p):
    return tuple((-x) % p for x in a)


def _pmul(a, b, p):
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x == 0:
            continue
        for j, y in enumerate(b):
            out[i + j] = (out[i + j] + x * y) % p
    return _ptrim(out)

def _pdivmod(a, b, p):
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    a = list(a)
    q = [0] * max(0, len(a) - len(b) + 1)
    inv_lead = pow(b[-1], -1, p)
    for i in range(len(a) - len(b), -1, -1):
        coeff = (a[i + len(b) - 1] * inv_lead) % p
        if coeff:
            q[i] = coeff
            for j, y in enumerate(b):
                a[i + j] = (a[i + j] - coeff * y) % p
    return _ptrim(q), _ptrim(a)


def _pgcd(a, b, p):
    while b:
        a, b = b, _pdivmod(a, b, p)[1]
    if a:
        inv = pow(a[-1], -1, p)
        a = tuple((x * inv) % p for x in a)
    return a


def _pord(a) -> int:
    for i, x in enumerate(a):
        if x:
            return i
    raise ValueError("zero polynomial has no order")


def _pscale(a, s, p):
    return _ptrim([(x * s) % p for x in a])


def _pformat(a) -> str:
    """Render a polynomial so it re-parses under the scalar grammar."""
    if not a:
        return "0"
    terms = []
    for i, x in enumerate(a):
        if x == 0:
            continue
        if i == 0:
            terms.append(str(x))
        elif i == 1:
            terms.append("t" if x == 1 else f"{x}*t")
        else:
            terms.append(f"t^{i}" if x == 1 else f"{x}*t^{i}")
    return "+".join(terms)


# ---------------------------------------------------------------------------


class Field:
    """Base of the two field kinds; subclasses store raw values."""

    uniformizer_name: str

    def scalar(self, value):
        raise NotImplementedError

    def zero(self) -> "ValuedScalar":
        return self.scalar(0)

    def one(self) -> "ValuedScalar":
        return self.scalar(1)

    def uniformizer(self) -> "ValuedScalar":
        raise NotImplementedError

    def pi_power(self, n: int) -> "ValuedScalar":
        return self.uniformizer() ** n

    def spec_string(self) -> str:
        raise NotImplementedError

    def __repr__(self):
        return f"<field {self.spec_string()}>"


class PAdicField(Field):
    """Q with the p-adic valuation; ϖ = p."""

    uniformizer_name = "p"

    def __init__(self, p: int):
        if not _is_prime(p):
            raise ValueError(f"p must be prime, got {p}")
        self.p = p

    def __eq__(self, other):
        return isinstance(other, PAdicField) and other.p == self.p

    def __hash__(self):
        return hash(("p", self.p))

    def spec_string(self) -> str:
        return f"p:{self.p}"

    def scalar(self, value) -> "ValuedScalar":
        if isinstance(value, ValuedScalar):
            if value.field != self:
                raise FieldMismatch("scalar belongs to a different field")
            return value
        return ValuedScalar(self, Fraction(value))

    def uniformizer(self) -> "ValuedScalar":
        return self.scalar(self.p)

    # raw ops on Fraction values
    def _val(self, raw: Fraction):
        if raw == 0:
            return INFINITY
        v = 0
        n = raw.numerator
        while n % self.p == 0:
            n //= self.p
            v += 1
        d = raw.denominator
        while d % self.p == 0:
            d //= self.p
            v -= 1
        return v

    def _reduce(self, raw: Fraction, n: int):
        mod = self.p ** n
        den = raw.denominator
        if den % self.p == 0:
            raise NotIntegral(f"{raw} has negative valuation")
        return (raw.numerator * pow(den, -1, mod)) % mod

    def _format(self, raw: Fraction) -> str:
        return str(raw)


class RationalFunctionField(Field):
    """F_q(t), q prime, with the order-at-zero valuation; ϖ = t.

    Raw values are pairs (num, den) of coefficient tuples over F_q, reduced
    with monic denominator.  Prime powers q = p^k, k > 1 are recognized but
    deferred (coefficient arithmetic is plain F_p here).
    """

    uniformizer_name = "t"

    def __init__(self, q: int):
        pk = _prime_power_base(q)
        if pk is None:
            raise ValueError(f"q must be a prime power, got {q}")
        if pk[1] != 1:
            raise ValueError(f"only prime q is supported (got {q} = {pk[0]}^{pk[1]})")
        self.q = q

    def __eq__(self, other):
        return isinstance(other, RationalFunctionField) and other.q == self.q

    def __hash__(self):
        return hash(("fq", self.q))

    def spec_string(self) -> str:
        return f"fq:{self.q}"

    def _canonical(self, num, den):
        num = _ptrim(list(num))
        den = _ptrim(list(den))
        if not den:
            raise DivisionByZero("zero denominator")
        if not num:
            return ((), (1,))
        g = _pgcd(num, den, self.q)
        if len(g) > 1 or g != (1,):
            num = _pdivmod(num, g, self.q)[0]
            den = _pdivmod(den, g, self.q)[0]
        lead = den[-1]
        if lead != 1:
            inv = pow(lead, -1, self.q)
            num = _pscale(num, inv, self.q)
            den = _pscale(den, inv, self.q)
        return (num, den)

    def ratio(self, num, den=(1,)) -> "ValuedScalar":
        """Build a scalar from raw coefficient sequences num/den."""
        num = tuple(c % self.q for c in num)
        den = tuple(c % self.q for c in den)
        return ValuedScalar(self, self._canonical(num, den))

    def scalar(self, value) -> "ValuedScalar":
        if isinstance(value, ValuedScalar):
            if value.field != self:
                raise FieldMismatch("scalar belongs to a different field")
            return value
        if isinstance(value, int):
            c = value % self.q
            return ValuedScalar(self, ((c,) if c else (), (1,)))
        raise TypeError(f"cannot build an F_q(t) scalar from {value!r}")

    def uniformizer(self) -> "ValuedScalar":
        return ValuedScalar(self, ((0, 1), (1,)))

    def _val(self, raw):
        num, den = raw
        if not num:
            return INFINITY
        return _pord(num) - _pord(den)

    def _reduce(self, raw, n: int):
        num, den = raw
        if not num:
            return ()
        if _pord(den) > 0:
            raise NotIntegral("negative valuation")
        # power-series inverse of den to order n
        p = self.q
        inv0 = pow(den[0], -1, p)
        inv = [inv0] + [0] * (n - 1)
        for i in range(1, n):
            s = 0
            for j in range(1, min(i, len(den) - 1) + 1):
                s += den[j] * inv[i - j]
            inv[i] = (-inv0 * s) % p
        out = [0] * n
        for i, x in enumerate(num[:n]):
            if x == 0:
                continue
            for j in range(n - i):
                out[i + j] = (out[i + j] + x * inv[j]) % p
        return _ptrim(out)

    def _format(self, raw) -> str:
        num, den = raw
        if den == (1,):
            return _pformat(num)
        num_s = _pformat(num)
        if "+" in num_s:
            num_s = f"({num_s})"
        den_s = _pformat(den)
        if "+" in den_s or "*" in den_s:
            den_s = f"({den_s})"
        return f"{num_s}/{den_s}"


class ValuedScalar:
    """An exact element of K carrying its field; canonical and immutable."""

    __slots__ = ("field", "raw")

    def __init__(self, field: Field, raw):
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "raw", raw)

    def __setattr__(self, *_):
        raise AttributeError("ValuedScalar is immutable")

    def _peer(self, other) -> "ValuedScalar":
        if isinstance(other, ValuedScalar):
            if other.field != self.field:
                raise FieldMismatch(
                    f"mixed fields: {self.field.spec_string()} vs {other.field.spec_string()}")
            return other
        if isinstance(other, (int, Fraction)):
            return self.field.scalar(other)
        return NotImplemented

    # arithmetic -----------------------------------------------------------
    def __add__(self, other):
        other = self._peer(other)
        if other is NotImplemented:
            return NotImplemented
        f = self.field
        if isinstance(f, PAdicField):
            return ValuedScalar(f, self.raw + other.raw)
        (n1, d1), (n2, d2) = self.raw, other.raw
        q = f.q
        num = _padd(_pmul(n1, d2, q), _pmul(n2, d1, q), q)
        return ValuedScalar(f, f._canonical(num, _pmul(d1, d2, q)))

    __radd__ = __add__

    def __neg__(self):
        f = self.field
        if isinstance(f, PAdicField):
            return ValuedScalar(f, -self.raw)
        num, den = self.raw
        return ValuedScalar(f, (_pneg(num, f.q), den))

    def __sub__(self, other):
        other = self._peer(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._peer(other)
        if other is NotImplemented:
            return NotImplemented
        f = self.field
        if isinstance(f, PAdicField):
            return ValuedScalar(f, self.raw * other.raw)
        (n1, d1), (n2, d2) = self.raw, other.raw
        q = f.q
        return ValuedScalar(f, f._canonical(_pmul(n1, n2, q), _pmul(d1, d2, q)))

    __rmul__ = __mul__

    def inv(self) -> "ValuedScalar":
        if self.is_zero():
            raise DivisionByZero("inverse of zero")
        f = self.field
        if isinstance(f, PAdicField):
            return ValuedScalar(f, 1 / self.raw)
        num, den = self.raw
        return ValuedScalar(f, f._canonical(den, num))

    def __truediv__(self, other):
        other = self._peer(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inv()

    def __rtruediv__(self, other):
        return self.inv() * other

    def __pow__(self, k: int):
        if k == 0:
            return self.field.one()
        if isinstance(self.field, PAdicField):
            if self.raw == 0 and k < 0:
                raise DivisionByZero("inverse of zero")
            return ValuedScalar(self.field, self.raw ** k)
        base = self if k > 0 else self.inv()
        out = self.field.one()
        e = abs(k)
        while e:
            if e & 1:
                out = out * base
            base = base * base if e > 1 else base
            e >>= 1
        return out

    # predicates and views ---------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            try:
                other = self.field.scalar(other)
            except TypeError:
                return NotImplemented
        if not isinstance(other, ValuedScalar) or other.field != self.field:
            return NotImplemented
        return self.raw == other.raw

    def __hash__(self):
        return hash((self.field, self.raw))

    def is_zero(self) -> bool:
        if isinstance(self.field, PAdicField):
            return self.raw == 0
        return not self.raw[0]

    def is_one(self) -> bool:
        return self == self.field.one()

    def valuation(self):
        """ω(x): an integer, or INFINITY iff x = 0."""
        return self.field._val(self.raw)

    def in_integers(self) -> bool:
        return self.valuation() >= 0

    def is_integral_unit(self) -> bool:
        return self.valuation() == 0

    def in_pi_power(self, n: int) -> bool:
        return self.valuation() >= n

    def in_one_plus_pi_power(self, n: int) -> bool:
        return (self - 1).valuation() >= n

    def reduce_mod(self, n: int) -> "ResidueElt":
        """Image in O/ϖ^n O; raises NotIntegral when ω(x) < 0."""
        if n < 1:
            raise ValueError("level must be >= 1")
        return ResidueElt(self.field, n, self.field._reduce(self.raw, n))

    def __str__(self):
        return self.field._format(self.raw)

    def __repr__(self):
        return f"<{self} @ {self.field.spec_string()}>"


class ResidueElt:
    """Canonical representative in O/ϖ^n O (int mod p^n, or poly mod t^n)."""

    __slots__ = ("field", "level", "raw")

    def __init__(self, field: Field, level: int, raw):
        self.field = field
        self.level = level
        self.raw = raw

    def _peer(self, other):
        if not isinstance(other, ResidueElt) or other.field != self.field \
                or other.level != self.level:
            raise FieldMismatch("mismatched residue rings")
        return other

    def __add__(self, other):
        other = self._peer(other)
        f, n = self.field, self.level
        if isinstance(f, PAdicField):
            return ResidueElt(f, n, (self.raw + other.raw) % f.p ** n)
        return ResidueElt(f, n, _ptrim(list(_padd(self.raw, other.raw, f.q))[:n]))

    def __mul__(self, other):
        other = self._peer(other)
        f, n = self.field, self.level
        if isinstance(f, PAdicField):
            return ResidueElt(f, n, (self.raw * other.raw) % f.p ** n)
        return ResidueElt(f, n, _ptrim(list(_pmul(self.raw, other.raw, f.q))[:n]))

    def __eq__(self, other):
        return (isinstance(other, ResidueElt) and other.field == self.field
                and other.level == self.level and other.raw == self.raw)

    def __hash__(self):
        return hash((self.field, self.level, self.raw))

    def __repr__(self):
        if isinstance(self.field, PAdicField):
            return f"<{self.raw} mod {self.field.uniformizer_name}^{self.level}>"
        return f"<{_pformat(self.raw)} mod t^{self.level}>"


def parse_field(text: str) -> Field:
    """Parse a --field flag value: ``p:<prime>`` or ``fq:<prime>``."""
    kind, _, arg = text.partition(":")
    if not arg or not arg.isdigit():
        raise ValueError(f"bad field spec {text!r}; expected p:<prime> or fq:<prime>")
    if kind == "p":
        return PAdicField(int(arg))
    if kind == "fq":
        return RationalFunctionField(int(arg))
    raise ValueError(f"unknown field kind {kind!r}")
