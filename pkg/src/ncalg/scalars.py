"""Exact scalar arithmetic for the engine.

Four scalar variants, each attached to a field object:

* ``Rat``    -- rational numbers (``fractions.Fraction`` payload),
* ``Cyc``    -- elements of the cyclotomic field Q(zeta_l), stored as
  coefficient vectors in the power basis 1, zeta, ..., zeta^(d-1) with
  d = deg Phi_l, reduced modulo the l-th cyclotomic polynomial,
* ``RatFun`` -- rational functions in the indeterminate ``q`` over Q,
  stored as coprime numerator/denominator with monic denominator,
* ``Approx`` -- 64-bit reals for the numeric rotation engine only.

Exact variants use structural equality (identical canonical payloads),
never coerce to ``Approx``, and refuse mixed arithmetic with a different
exact variant.  Plain ``int`` and ``Fraction`` literals coerce into any
field.  All values are immutable, so everything here is safe to share
freely between threads.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .errors import BadParameter, DivisionByZero, VariantMismatch, ZeroScalarQ

#: absolute tolerance used by Approx.__eq__ (configurable)
APPROX_EQ_TOL = 1e-12

_F0 = Fraction(0)
_F1 = Fraction(1)


# ---------------------------------------------------------------------------
# dense univariate polynomials over Q, low degree first, trailing zeros
# stripped; the zero polynomial is the empty tuple
# ---------------------------------------------------------------------------

def _pstrip(cs):
    cs = list(cs)
    while cs and cs[-1] == 0:
        cs.pop()
    return tuple(cs)


def _padd(a, b):
    n = max(len(a), len(b))
    return _pstrip(
        (a[i] if i < len(a) else _F0) + (b[i] if i < len(b) else _F0)
        for i in range(n)
    )


def _pneg(a):
    return tuple(-c for c in a)


def _pmul(a, b):
    if not a or not b:
        return ()
    out = [_F0] * (len(a) + len(b) - 1)
    for i, ca in enumerate(a):
        if ca == 0:
            continue
        for j, cb in enumerate(b):
            out[i + j] += ca * cb
    return _pstrip(out)


def _pdivmod(a, b):
    if not b:
        raise DivisionByZero("polynomial division by zero")
    a = list(a)
    q = [_F0] * max(0, len(a) - len(b) + 1)
    lb = b[-1]
    while len(a) >= len(b) and _pstrip(a):
        a = list(_pstrip(a))
        if len(a) < len(b):
            break
        c = a[-1] / lb
        k = len(a) - len(b)
        q[k] = c
        for i, cb in enumerate(b):
            a[k + i] -= c * cb
        a.pop()
    return _pstrip(q), _pstrip(a)


def _pgcd(a, b):
    while b:
        a, b = b, _pdivmod(a, b)[1]
    if not a:
        return ()
    lc = a[-1]
    return tuple(c / lc for c in a)  # monic


def _pxgcd(a, b):
    """Extended Euclid: returns (g, u, v) with u*a + v*b = g, g monic."""
    r0, r1 = a, b
    s0, s1 = (_F1,), ()
    t0, t1 = (), (_F1,)
    while r1:
        q, r = _pdivmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, _padd(s0, _pneg(_pmul(q, s1)))
        t0, t1 = t1, _padd(t0, _pneg(_pmul(q, t1)))
    if not r0:
        return (), s0, t0
    lc = r0[-1]
    inv = 1 / lc
    scale = (Fraction(inv),)
    return tuple(c * inv for c in r0), _pmul(scale, s0), _pmul(scale, t0)


def _pscale(a, c):
    if c == 0:
        return ()
    return tuple(x * c for x in a)


def _ppow(a, n):
    out = (_F1,)
    base = a
    while n:
        if n & 1:
            out = _pmul(out, base)
        base = _pmul(base, base)
        n >>= 1
    return out


def _peval(a, x):
    acc = _F0
    for c in reversed(a):
        acc = acc * x + c
    return acc


@lru_cache(maxsize=None)
def cyclotomic_polynomial(ell: int) -> tuple:
    """Coefficients of the ell-th cyclotomic polynomial (monic, over Q)."""
    if ell < 1:
        raise BadParameter("cyclotomic order must be >= 1")
    num = (_F1 * -1,) + (_F0,) * (ell - 1) + (_F1,)  # x^ell - 1
    for d in range(1, ell):
        if ell % d == 0:
            num, rem = _pdivmod(num, cyclotomic_polynomial(d))
            assert not rem
    return num


# ---------------------------------------------------------------------------
# fields
# ---------------------------------------------------------------------------

class Field:
    """Common interface of the four scalar fields."""

    name: str

    def zero(self):
        return self.from_fraction(_F0)

    def one(self):
        return self.from_fraction(_F1)

    def from_int(self, n: int):
        return self.from_fraction(Fraction(n))

    def from_fraction(self, fr: Fraction):
        raise NotImplementedError

    def coerce(self, x):
        """Turn an int/Fraction literal or a scalar of this field into a scalar."""
        if isinstance(x, Scalar):
            if x.field == self:
                return x
            raise VariantMismatch(f"cannot use {x.field.name} scalar in {self.name}")
        if isinstance(x, bool):
            raise VariantMismatch("bool is not a scalar")
        if isinstance(x, int):
            return self.from_int(x)
        if isinstance(x, Fraction):
            return self.from_fraction(x)
        raise VariantMismatch(f"cannot coerce {type(x).__name__} into {self.name}")

    def __repr__(self):
        return f"<field {self.name}>"


class RationalField(Field):
    name = "Q"

    def from_fraction(self, fr):
        return Rat(fr)

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("Q")


class CyclotomicField(Field):
    """Q(zeta_ell), elements reduced modulo Phi_ell."""

    def __init__(self, ell: int):
        if ell < 1:
            raise BadParameter("cyclotomic order must be >= 1")
        self.ell = ell
        self.modulus = cyclotomic_polynomial(ell)
        self.degree = len(self.modulus) - 1
        self.name = f"cyclo {ell}"
        # power basis images of zeta^k for k up to 2(d-1): makes products a
        # convolution plus table lookups instead of a polynomial division
        d = self.degree
        table = [tuple(_F1 if i == k else _F0 for i in range(d))
                 for k in range(d)]
        if d >= 1:
            cur = tuple(-c for c in self.modulus[:d])
            table.append(cur)
            for _ in range(d + 1, 2 * d - 1):
                shifted = (_F0,) + cur[:d - 1]
                top = cur[d - 1]
                cur = tuple(s + top * m for s, m in zip(shifted, table[d]))
                table.append(cur)
        self._pow_table = table

    def from_fraction(self, fr):
        return Cyc(self, self._pad((fr,) if fr != 0 else ()))

    def _pad(self, coeffs):
        coeffs = tuple(coeffs)
        return coeffs + (_F0,) * (self.degree - len(coeffs))

    def reduce(self, coeffs) -> "Cyc":
        _, rem = _pdivmod(_pstrip(coeffs), self.modulus)
        return Cyc(self, self._pad(rem))

    def zeta(self) -> "Cyc":
        """The canonical primitive ell-th root of unity."""
        return self.reduce((_F0, _F1))

    def __eq__(self, other):
        return isinstance(other, CyclotomicField) and other.ell == self.ell

    def __hash__(self):
        return hash(("cyclo", self.ell))


class RationalFunctionField(Field):
    """Field of rational functions in q with rational coefficients."""

    name = "Qq"

    def from_fraction(self, fr):
        return RatFun((fr,) if fr != 0 else (), (_F1,))

    def q(self) -> "RatFun":
        """The indeterminate q."""
        return RatFun((_F0, _F1), (_F1,))

    def __eq__(self, other):
        return isinstance(other, RationalFunctionField)

    def __hash__(self):
        return hash("Qq")


class ApproxRealField(Field):
    name = "R"

    def from_fraction(self, fr):
        return Approx(float(fr))

    def coerce(self, x):
        if isinstance(x, float):
            return Approx(x)
        return super().coerce(x)

    def __eq__(self, other):
        return isinstance(other, ApproxRealField)

    def __hash__(self):
        return hash("R")


QQ = RationalField()
Qq = RationalFunctionField()
RR = ApproxRealField()


@lru_cache(maxsize=None)
def cyclotomic_field(ell: int) -> CyclotomicField:
    return CyclotomicField(ell)


# ---------------------------------------------------------------------------
# scalar variants
# ---------------------------------------------------------------------------

class Scalar:
    """Immutable field element; concrete subclasses carry the payload."""

    __slots__ = ()
    field: Field

    def is_zero(self) -> bool:
        raise NotImplementedError

    def inv(self):
        raise NotImplementedError

    def __bool__(self):
        return not self.is_zero()

    # shared operator plumbing -------------------------------------------
    def _coerced(self, other):
        try:
            return self.field.coerce(other)
        except VariantMismatch:
            raise
        except Exception:
            return None

    def __sub__(self, other):
        return self + (-other if isinstance(other, Scalar) else self.field.coerce(other).__neg__())

    def __rsub__(self, other):
        return self.field.coerce(other) + (-self)

    def __radd__(self, other):
        return self + other

    def __rmul__(self, other):
        return self * other

    def __truediv__(self, other):
        other = self.field.coerce(other)
        return self * other.inv()

    def __rtruediv__(self, other):
        return self.field.coerce(other) * self.inv()

    def __pow__(self, n: int):
        if not isinstance(n, int):
            raise TypeError("scalar powers must be integers")
        if n < 0:
            return self.inv() ** (-n)
        out = self.field.one()
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out


class Rat(Scalar):
    __slots__ = ("value",)
    field = QQ

    def __init__(self, value):
        self.value = Fraction(value)

    def is_zero(self):
        return self.value == 0

    def inv(self):
        if self.value == 0:
            raise DivisionByZero("inverse of zero")
        return Rat(1 / self.value)

    def __add__(self, other):
        other = self.field.coerce(other)
        return Rat(self.value + other.value)

    def __mul__(self, other):
        if isinstance(other, Rat):
            return Rat(self.value * other.value)
        other = self.field.coerce(other)
        return Rat(self.value * other.value)

    def __neg__(self):
        return Rat(-self.value)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.value == other
        if isinstance(other, Rat):
            return self.value == other.value
        return NotImplemented

    def __hash__(self):
        return hash(("Rat", self.value))

    def __repr__(self):
        return f"Rat({self.value})"


class Cyc(Scalar):
    __slots__ = ("field", "coeffs")

    def __init__(self, field: CyclotomicField, coeffs):
        self.field = field
        self.coeffs = tuple(coeffs)
        assert len(self.coeffs) == field.degree

    def is_zero(self):
        return all(c == 0 for c in self.coeffs)

    def inv(self):
        poly = _pstrip(self.coeffs)
        if not poly:
            raise DivisionByZero("inverse of zero")
        g, u, _ = _pxgcd(poly, self.field.modulus)
        if len(g) != 1:
            # modulus irreducible over Q, so gcd with a nonzero element is 1
            raise DivisionByZero("element not invertible")
        return self.field.reduce(_pscale(u, 1 / g[0]))

    def _binop(self, other):
        other = self.field.coerce(other)
        return other

    def __add__(self, other):
        other = self._binop(other)
        return Cyc(self.field, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __mul__(self, other):
        other = self._binop(other)
        fld = self.field
        d = fld.degree
        a, b = self.coeffs, other.coeffs
        out = [_F0] * d
        table = fld._pow_table
        for i, ca in enumerate(a):
            if ca == 0:
                continue
            for j, cb in enumerate(b):
                if cb == 0:
                    continue
                c = ca * cb
                row = table[i + j]
                for t in range(d):
                    if row[t] != 0:
                        out[t] += c * row[t]
        return Cyc(fld, out)

    def __neg__(self):
        return Cyc(self.field, tuple(-c for c in self.coeffs))

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self == self.field.coerce(other)
        if isinstance(other, Cyc) and other.field == self.field:
            return self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self):
        return hash(("Cyc", self.field.ell, self.coeffs))

    def rational_value(self) -> Fraction:
        """The payload as a Fraction; only valid for rational elements."""
        if any(c != 0 for c in self.coeffs[1:]):
            raise VariantMismatch("element is not rational")
        return self.coeffs[0] if self.coeffs else _F0

    def is_rational(self) -> bool:
        return all(c == 0 for c in self.coeffs[1:])

    def __repr__(self):
        return f"Cyc({self.field.ell}; {list(self.coeffs)})"


class RatFun(Scalar):
    __slots__ = ("num", "den")
    field = Qq

    def __init__(self, num, den=(_F1,), reduce=True):
        num = _pstrip(num)
        den = _pstrip(den)
        if not den:
            raise DivisionByZero("zero denominator")
        if reduce:
            if not num:
                den = (_F1,)
            else:
                g = _pgcd(num, den)
                if len(g) > 1:
                    num = _pdivmod(num, g)[0]
                    den = _pdivmod(den, g)[0]
                lc = den[-1]
                if lc != 1:
                    num = tuple(c / lc for c in num)
                    den = tuple(c / lc for c in den)
        self.num = num
        self.den = den

    def is_zero(self):
        return not self.num

    def inv(self):
        if not self.num:
            raise DivisionByZero("inverse of zero")
        return RatFun(self.den, self.num)

    def __add__(self, other):
        other = self.field.coerce(other)
        num = _padd(_pmul(self.num, other.den), _pmul(other.num, self.den))
        return RatFun(num, _pmul(self.den, other.den))

    def __mul__(self, other):
        other = self.field.coerce(other)
        return RatFun(_pmul(self.num, other.num), _pmul(self.den, other.den))

    def __neg__(self):
        return RatFun(_pneg(self.num), self.den, reduce=False)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self == self.field.coerce(other)
        if isinstance(other, RatFun):
            return self.num == other.num and self.den == other.den
        return NotImplemented

    def __hash__(self):
        return hash(("RatFun", self.num, self.den))

    def eval_at(self, x) -> Fraction:
        """Evaluate at a rational point where the denominator is nonzero."""
        x = Fraction(x)
        d = _peval(self.den, x)
        if d == 0:
            raise DivisionByZero(f"pole at q = {x}")
        return _peval(self.num, x) / d

    def __repr__(self):
        return f"RatFun({list(self.num)}/{list(self.den)})"


class Approx(Scalar):
    __slots__ = ("value",)
    field = RR
    __hash__ = None  # tolerance-based equality

    def __init__(self, value: float):
        self.value = float(value)

    def is_zero(self):
        return abs(self.value) <= APPROX_EQ_TOL

    def inv(self):
        if self.value == 0.0:
            raise DivisionByZero("inverse of zero")
        return Approx(1.0 / self.value)

    def __add__(self, other):
        other = self.field.coerce(other)
        return Approx(self.value + other.value)

    def __mul__(self, other):
        other = self.field.coerce(other)
        return Approx(self.value * other.value)

    def __neg__(self):
        return Approx(-self.value)

    def __eq__(self, other):
        if isinstance(other, (int, float, Fraction)):
            return abs(self.value - float(other)) <= APPROX_EQ_TOL
        if isinstance(other, Approx):
            return abs(self.value - other.value) <= APPROX_EQ_TOL
        return NotImplemented

    def __repr__(self):
        return f"Approx({self.value!r})"


# ---------------------------------------------------------------------------
# operations from the module contract
# ---------------------------------------------------------------------------

def cyclotomic_reduce(coeffs, ell: int) -> Cyc:
    """Reduce a rational polynomial in zeta modulo Phi_ell.

    ``coeffs`` lists coefficients of 1, zeta, zeta^2, ... as ints/Fractions.
    """
    field = cyclotomic_field(ell)
    return field.reduce(tuple(Fraction(c) for c in coeffs))


@dataclass(frozen=True)
class QNumberContext:
    """An invertible q together with its multiplicative order.

    ``order`` is a positive integer for a primitive root of unity, or
    ``None`` when q has infinite order ("generic").
    """

    q: Scalar
    order: int | None = None

    def __post_init__(self):
        if self.q.is_zero():
            raise ZeroScalarQ("q must be invertible")
        if self.order is not None:
            if self.order < 1:
                raise BadParameter("order must be positive")
            if self.q ** self.order != self.q.field.one():
                raise BadParameter("q^order != 1")
            for m in range(1, self.order):
                if self.q ** m == self.q.field.one():
                    raise BadParameter(f"q has smaller order {m}")


def q_number(j: int, ctx: QNumberContext) -> Scalar:
    """[j]_q = (q^j - q^-j)/(q - q^-1), via its Laurent-polynomial form.

    The polynomial form q^(j-1) + q^(j-3) + ... + q^(1-j) is defined for
    every invertible q, including q = 1 where the quotient formula has a
    removable singularity.
    """
    q = ctx.q
    if q.is_zero():
        raise ZeroScalarQ("q must be invertible")
    if j == 0:
        return q.field.zero()
    if j < 0:
        return -q_number(-j, ctx)
    total = q.field.zero()
    for t in range(j):
        total = total + q ** (j - 1 - 2 * t)
    return total
