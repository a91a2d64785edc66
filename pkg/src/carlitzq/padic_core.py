"""Fixed-precision p-adic numbers and the exact-rational bridge.

A ``PadicNumber`` is stored as ``p^valuation * unit`` where ``unit`` is an
integer in ``[0, p^(precision - valuation))`` prime to ``p``.  The value is
known modulo ``p^precision`` (absolute precision).  Exact rationals are plain
:class:`fractions.Fraction` objects; together the two types form the
``Scalar`` backends that every higher module is generic over.

Precision propagation is pessimistic: every digit a result reports is
certified by the digits of its operands.
"""

from __future__ import annotations

import math
import operator
from fractions import Fraction
from typing import Union

from .errors import (
    BackendMismatch,
    DomainError,
    NotAUnit,
    NotPIntegral,
    PrecisionExhausted,
)

INF = math.inf


def vp(x, p: int):
    """p-adic valuation of an int or Fraction (``INF`` for zero)."""
    if isinstance(x, Fraction):
        if x == 0:
            return INF
        return vp(x.numerator, p) - vp(x.denominator, p)
    x = int(x)
    if x == 0:
        return INF
    x = abs(x)
    k = 0
    while x % p == 0:
        x //= p
        k += 1
    return k


def legendre(n: int, p: int) -> int:
    """v_p(n!) by Legendre's formula."""
    total = 0
    while n:
        n //= p
        total += n
    return total


def split_p(x: int, p: int) -> tuple[int, int]:
    """Return (k, u) with x = p^k * u and p not dividing u; x != 0."""
    k = 0
    while x % p == 0:
        x //= p
        k += 1
    return k, x


def reduce_rational(r, p: int, n: int) -> int:
    """Reduce an int or p-integral Fraction to an integer in [0, p^n)."""
    mod = p ** n
    if isinstance(r, Fraction):
        if r.denominator % p == 0:
            raise NotPIntegral(f"{r} is not {p}-integral")
        return r.numerator * pow(r.denominator, -1, mod) % mod
    return int(r) % mod


class PadicNumber:
    """An element of Q_p known modulo p^precision.

    The zero element has ``valuation == INF`` and no unit digits; it stands for
    every value of valuation at least ``precision``.  Equality is congruence
    modulo the smaller of the two absolute precisions, so instances are not
    hashable.
    """

    __slots__ = ("prime", "valuation", "unit", "precision")

    def __init__(self, prime: int, valuation, unit: int, precision: int):
        if valuation is INF or valuation == INF:
            unit = 0
            valuation = INF
        else:
            rel = precision - valuation
            if rel <= 0:
                raise PrecisionExhausted(
                    f"valuation {valuation} leaves no digits at precision {precision}"
                )
            if unit % prime == 0:
                raise ValueError("unit part must be prime to p")
            unit %= prime ** rel
        object.__setattr__(self, "prime", prime)
        object.__setattr__(self, "valuation", valuation)
        object.__setattr__(self, "unit", unit)
        object.__setattr__(self, "precision", precision)

    def __setattr__(self, name, value):
        raise AttributeError("PadicNumber is immutable")

    # construction helpers

    @classmethod
    def zero(cls, p: int, precision: int) -> "PadicNumber":
        return cls(p, INF, 0, precision)

    @classmethod
    def one(cls, p: int, precision: int) -> "PadicNumber":
        if precision <= 0:
            return cls.zero(p, precision)
        return cls(p, 0, 1, precision)

    @classmethod
    def from_scaled(cls, p: int, x: int, shift: int, precision: int) -> "PadicNumber":
        """The value p^shift * x, known modulo p^precision."""
        if precision <= shift:
            return cls.zero(p, precision)
        x %= p ** (precision - shift)
        if x == 0:
            return cls.zero(p, precision)
        k, u = split_p(x, p)
        return cls(p, shift + k, u, precision)

    @classmethod
    def from_rational(cls, r, p: int, precision: int) -> "PadicNumber":
        if isinstance(r, PadicNumber):
            if r.prime != p:
                raise BackendMismatch("different primes")
            return r.with_precision(min(precision, r.precision))
        r = Fraction(r)
        if r == 0:
            return cls.zero(p, precision)
        vn, un = split_p(r.numerator, p)
        vd, ud = split_p(r.denominator, p)
        v = vn - vd
        if precision <= v:
            return cls.zero(p, precision)
        mod = p ** (precision - v)
        return cls(p, v, un * pow(ud, -1, mod) % mod, precision)

    from_int = from_rational

    # basic views

    @property
    def relprec(self) -> int:
        if self.is_zero():
            return 0
        return self.precision - self.valuation

    @property
    def digits(self) -> tuple[int, ...]:
        """Base-p digits of the unit part, least significant first."""
        if self.is_zero():
            return ()
        out = []
        u = self.unit
        for _ in range(self.relprec):
            u, d = divmod(u, self.prime)
            out.append(d)
        return tuple(out)

    def is_zero(self) -> bool:
        return self.valuation == INF

    def is_unit(self) -> bool:
        return self.valuation == 0

    def with_precision(self, precision: int) -> "PadicNumber":
        """Forget digits beyond ``precision``; precision can only be lowered."""
        if precision > self.precision:
            raise PrecisionExhausted(
                f"cannot raise precision from {self.precision} to {precision}"
            )
        if precision == self.precision:
            return self
        if self.is_zero():
            return PadicNumber.zero(self.prime, precision)
        return PadicNumber.from_scaled(self.prime, self.unit, self.valuation, precision)

    def lift(self) -> int:
        """Canonical integer representative in [0, p^precision)."""
        if self.is_zero():
            return 0
        if self.valuation < 0:
            raise NotPIntegral(f"valuation {self.valuation} < 0")
        return self.unit * self.prime ** self.valuation

    def reduce(self, n: int) -> int:
        """The value modulo p^n as an integer in [0, p^n)."""
        if n > self.precision:
            raise PrecisionExhausted(f"value known only mod p^{self.precision}")
        return self.lift() % self.prime ** n

    # arithmetic

    def _coerce(self, other) -> "PadicNumber":
        if isinstance(other, PadicNumber):
            if other.prime != self.prime:
                raise BackendMismatch(f"primes {self.prime} and {other.prime}")
            return other
        if isinstance(other, bool) or not isinstance(other, int):
            raise BackendMismatch(f"cannot combine PadicNumber with {type(other).__name__}")
        # exact integer: give it enough digits never to be the binding operand
        rel = self.relprec if not self.is_zero() else self.precision
        room = max(self.precision, 0) + max(rel, 1) + abs(self.valuation if not self.is_zero() else 0)
        v = vp(other, self.prime)
        if v == INF:
            return PadicNumber.zero(self.prime, room + self.precision)
        return PadicNumber.from_rational(other, self.prime, v + room)

    def __add__(self, other):
        b = self._coerce(other)
        p = self.prime
        n = min(self.precision, b.precision)
        if self.is_zero() and b.is_zero():
            return PadicNumber.zero(p, n)
        if self.is_zero():
            return b.with_precision(n) if b.precision > n else b
        if b.is_zero():
            return self.with_precision(n) if self.precision > n else self
        m = min(self.valuation, b.valuation)
        x = self.unit * p ** (self.valuation - m) + b.unit * p ** (b.valuation - m)
        return PadicNumber.from_scaled(p, x, m, n)

    __radd__ = __add__

    def __neg__(self):
        if self.is_zero():
            return self
        return PadicNumber(self.prime, self.valuation, -self.unit, self.precision)

    def __pos__(self):
        return self

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        b = self._coerce(other)
        p = self.prime
        if self.is_zero() or b.is_zero():
            va = self.precision if self.is_zero() else self.valuation
            vb = b.precision if b.is_zero() else b.valuation
            n = min(self.precision + vb, b.precision + va)
            return PadicNumber.zero(p, n)
        r = min(self.relprec, b.relprec)
        v = self.valuation + b.valuation
        return PadicNumber(p, v, self.unit * b.unit % p ** r, v + r)

    __rmul__ = __mul__

    def __truediv__(self, other):
        b = self._coerce(other)
        p = self.prime
        if b.is_zero():
            raise ZeroDivisionError("division by a p-adic zero")
        if self.is_zero():
            return PadicNumber.zero(p, self.precision - b.valuation)
        r = min(self.relprec, b.relprec)
        v = self.valuation - b.valuation
        mod = p ** r
        return PadicNumber(p, v, self.unit * pow(b.unit, -1, mod) % mod, v + r)

    def __rtruediv__(self, other):
        return self._coerce(other) / self

    def __pow__(self, n):
        if not isinstance(n, int):
            return NotImplemented
        p = self.prime
        if n == 0:
            # x^0 = 1 exactly
            return PadicNumber.one(p, max(self.precision, self.relprec if not self.is_zero() else 0))
        if n < 0:
            if self.is_zero():
                raise ZeroDivisionError("negative power of a p-adic zero")
            return PadicNumber.one(p, self.relprec) / (self ** -n)
        if self.is_zero():
            return PadicNumber.zero(p, n * self.precision if self.precision > 0 else self.precision)
        r = self.relprec
        v = n * self.valuation
        return PadicNumber(p, v, pow(self.unit, n, p ** r), v + r)

    def __eq__(self, other):
        if isinstance(other, Fraction) and other.denominator != 1:
            return NotImplemented
        if isinstance(other, Fraction):
            other = other.numerator
        if not isinstance(other, (int, PadicNumber)) or isinstance(other, bool):
            return NotImplemented
        if isinstance(other, PadicNumber) and other.prime != self.prime:
            return False
        return (self - other).is_zero()

    __hash__ = None

    def agreement(self, other) -> float:
        """Valuation of the difference, capped at the common precision."""
        diff = self - other
        if diff.is_zero():
            return diff.precision
        return diff.valuation

    def __repr__(self):
        if self.is_zero():
            return f"PadicNumber(p={self.prime}, 0 + O({self.prime}^{self.precision}))"
        return (
            f"PadicNumber(p={self.prime}, v={self.valuation}, "
            f"digits={self.digits}, N={self.precision})"
        )

    def to_dict(self) -> dict:
        return {
            "prime": self.prime,
            "valuation": None if self.is_zero() else self.valuation,
            "digits": list(self.digits),
            "precision": self.precision,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "PadicNumber":
        p = data["prime"]
        if data["valuation"] is None:
            return cls.zero(p, data["precision"])
        unit = sum(d * p ** i for i, d in enumerate(data["digits"]))
        return cls(p, data["valuation"], unit, data["precision"])


Scalar = Union[PadicNumber, Fraction]


def from_rational(r, p: int, precision: int) -> PadicNumber:
    return PadicNumber.from_rational(r, p, precision)


_OPS = {
    "add": operator.add,
    "sub": operator.sub,
    "mul": operator.mul,
    "div": operator.truediv,
    "pow_int": operator.pow,
}


def arithmetic(op: str, a, b):
    """Apply one of add/sub/mul/div/pow_int to two scalars of the same backend."""
    if op not in _OPS:
        raise DomainError(f"unknown operation {op!r}")
    if op != "pow_int":
        if isinstance(a, PadicNumber) != isinstance(b, PadicNumber):
            raise BackendMismatch("operands in different backends")
    if op == "div" and b == 0 and not isinstance(b, PadicNumber):
        raise ZeroDivisionError("division by zero")
    if isinstance(a, int) and not isinstance(a, bool):
        a = Fraction(a)
    return _OPS[op](a, b)


def serialize(x):
    """JSON-ready form: ``"a/b"`` for rationals, a record for p-adic numbers."""
    if isinstance(x, PadicNumber):
        return x.to_dict()
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def deserialize(data):
    if isinstance(data, dict):
        return PadicNumber.from_dict(data)
    return Fraction(data)


def teichmuller(a, p: int, precision: int) -> PadicNumber:
    """The (p-1)-th root of unity congruent to ``a`` mod p, correct mod p^precision."""
    if isinstance(a, PadicNumber):
        if a.valuation != 0:
            raise NotAUnit(f"{a} is not a unit")
        a = a.reduce(1)
    a = int(a)
    if a % p == 0:
        raise NotAUnit(f"{p} divides {a}")
    mod = p ** precision
    x = a % mod
    for _ in range(precision + 1):
        y = pow(x, p, mod)
        if y == x:
            break
        x = y
    return PadicNumber.from_int(x, p, precision)


def teichmuller_int(a: int, p: int, precision: int) -> int:
    """Integer representative of teichmuller(a) in [0, p^precision)."""
    return teichmuller(a, p, precision).lift()


def _log_terms_bound(vw: int, p: int, n: int) -> int:
    # first k with k*vw - log_p(k) >= n; the left side increases with k
    k = 1
    while k * vw - math.log(k, p) < n + 1e-9:
        k += 1
    return k


def plog(u: PadicNumber) -> PadicNumber:
    """p-adic logarithm of a principal unit (v(u - 1) >= 1)."""
    p = u.prime
    if u.valuation != 0:
        raise DomainError("plog needs a unit argument")
    w = u - 1
    n = u.precision
    if w.is_zero():
        return PadicNumber.zero(p, n)
    vw = w.valuation
    if vw < 1:
        raise DomainError(f"plog needs v(u-1) >= 1, got {vw}")
    kmax = _log_terms_bound(vw, p, n)
    extra = 0
    while p ** (extra + 1) <= kmax:
        extra += 1
    mod = p ** (n + extra)
    base = w.unit * p ** vw % mod
    power = 1
    total = 0
    for k in range(1, kmax):
        power = power * base % mod
        e, unit_k = split_p(k, p)
        term = (power // p ** e) * pow(unit_k, -1, p ** n)
        total += -term if k % 2 == 0 else term
    return PadicNumber.from_int(total, p, n)


def pexp(w: PadicNumber) -> PadicNumber:
    """p-adic exponential on v(w) >= 1."""
    p = w.prime
    n = w.precision
    if w.is_zero():
        return PadicNumber.one(p, n)
    vw = w.valuation
    if vw < 1:
        raise DomainError(f"pexp needs v(w) >= 1, got {vw}")
    # v(w^k/k!) >= k*vw - (k-1)/(p-1), increasing in k
    kmax = 1
    while kmax * vw - (kmax - 1) / (p - 1) < n:
        kmax += 1
    extra = legendre(kmax, p)
    mod = p ** (n + extra)
    base = w.unit * p ** vw % mod
    power = 1
    fact_unit = 1
    fact_v = 0
    total = 1
    for k in range(1, kmax):
        power = power * base % mod
        e, uk = split_p(k, p)
        fact_v += e
        fact_unit = fact_unit * uk % p ** n
        total += (power // p ** fact_v) * pow(fact_unit, -1, p ** n)
    return PadicNumber.from_int(total, p, n)


def padic_binomial(x, i: int):
    """Generalized binomial coefficient x(x-1)...(x-i+1)/i! in x's backend."""
    if i < 0:
        raise DomainError("binomial index must be non-negative")
    if isinstance(x, PadicNumber):
        p = x.prime
        if i == 0:
            return PadicNumber.one(p, x.precision)
        if x.is_zero() or x.valuation >= 0:
            # binom(., i) = P(.)/i! with P integral: lifting costs v_p(i!) digits
            n = x.precision - legendre(i, p)
            if n <= 0:
                raise PrecisionExhausted(f"binomial({i}) needs more than {x.precision} digits")
            return PadicNumber.from_int(math.comb(x.lift(), i), p, n)
        num = x
        for j in range(1, i):
            num = num * (x - j)
        return num / math.factorial(i)
    if isinstance(x, int) and not isinstance(x, bool):
        if x >= 0:
            return math.comb(x, i)
        return (-1) ** i * math.comb(i - x - 1, i)
    x = Fraction(x)
    num = Fraction(1)
    for j in range(i):
        num *= x - j
    return num / math.factorial(i)
