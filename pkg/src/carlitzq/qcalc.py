"""q-numbers [x]_q, [x]_{-q}, q^x and the bracket <a> = [a]_q / omega(a)."""

from __future__ import annotations

from fractions import Fraction

from .errors import BackendMismatch, DomainError, NotAUnit, PrecisionExhausted
from .padic_core import INF, PadicNumber, pexp, plog, reduce_rational, teichmuller, vp


class QParam:
    """The deformation parameter q together with the prime it lives over.

    ``QParam(6, p=5, precision=20)`` is the 5-adic backend with q = 6 known to
    20 digits (the exact value is kept so it can be re-materialized at any
    precision).  ``QParam(Fraction(7, 2), p=5)`` is the rational backend; the
    prime is then only used when values get reduced mod p^N.  A bare
    ``PadicNumber`` is accepted as well, without an exact source.
    """

    __slots__ = ("q", "prime", "exact")

    def __init__(self, q, p: int | None = None, precision: int | None = None):
        exact = None
        if isinstance(q, PadicNumber):
            if p is not None and p != q.prime:
                raise BackendMismatch(f"q lives over {q.prime}, not {p}")
            p = q.prime
            if precision is not None:
                q = q.with_precision(min(precision, q.precision))
        else:
            exact = Fraction(q)
            if exact == 1:
                raise DomainError("q must differ from 1")
            if precision is not None:
                if p is None:
                    raise DomainError("a p-adic q needs a prime")
                q = PadicNumber.from_rational(exact, p, precision)
            else:
                q = exact
        if p is not None:
            v = vp(exact - 1, p) if exact is not None else (q - 1).valuation
            if exact is None and (q - 1).is_zero():
                raise DomainError("q is indistinguishable from 1 at this precision")
            if v < 1:
                raise DomainError(f"need v_p(q - 1) >= 1, got {v}")
        self.q = q
        self.prime = p
        self.exact = exact

    @property
    def backend(self) -> str:
        return "padic" if isinstance(self.q, PadicNumber) else "rational"

    @property
    def precision(self):
        return self.q.precision if self.backend == "padic" else INF

    @property
    def t(self):
        return self.q - 1

    @property
    def t_valuation(self) -> int:
        if self.prime is None:
            raise DomainError("no prime attached to q")
        if self.exact is not None:
            return vp(self.exact - 1, self.prime)
        return (self.q - 1).valuation

    def at_precision(self, precision: int) -> "QParam":
        """Same q in the p-adic backend at a new absolute precision."""
        if self.exact is not None:
            return QParam(self.exact, self.prime, precision)
        if precision > self.q.precision:
            return self
        return QParam(self.q.with_precision(precision))

    def rational(self) -> "QParam":
        if self.exact is None:
            raise DomainError("q has no exact rational value")
        return QParam(self.exact, self.prime)

    def power(self, k: int) -> "QParam":
        """The parameter q^k (used for q^p and q^F)."""
        if self.exact is not None:
            if self.backend == "padic":
                return QParam(self.exact ** k, self.prime, self.q.precision)
            return QParam(self.exact ** k, self.prime)
        return QParam(self.q ** k)

    def lift(self, n: int) -> int:
        """Integer representative of q mod p^n."""
        if self.exact is not None:
            return reduce_rational(self.exact, self.prime, n)
        return self.q.reduce(n)

    def scalar(self, c):
        """Embed an int or Fraction into this parameter's backend."""
        if isinstance(c, PadicNumber):
            if self.backend != "padic":
                raise BackendMismatch("p-adic value in the rational backend")
            return c
        if self.backend == "padic":
            return PadicNumber.from_rational(c, self.prime, self.q.precision)
        return Fraction(c)

    def __repr__(self):
        src = self.exact if self.exact is not None else self.q
        if self.backend == "padic":
            return f"QParam({src}, p={self.prime}, precision={self.q.precision})"
        return f"QParam({src}, p={self.prime})"


def _is_integer(x) -> bool:
    if isinstance(x, bool):
        return False
    if isinstance(x, int):
        return True
    return isinstance(x, Fraction) and x.denominator == 1


def _exact_exponent(x, qp: QParam):
    """Return (exact exponent, absolute precision it certifies) for a p-adic x."""
    if qp.backend != "padic":
        raise DomainError("non-integer exponents need the p-adic backend")
    if isinstance(x, PadicNumber):
        if x.prime != qp.prime:
            raise BackendMismatch("exponent over a different prime")
        if not x.is_zero() and x.valuation < 0:
            raise DomainError("exponent must lie in Z_p")
        # q^(x + p^N d) = q^x * q^(p^N d) and v(q^(p^N) - 1) = N + v(q - 1)
        return x.lift(), x.precision + qp.t_valuation
    x = Fraction(x)
    if vp(x, qp.prime) < 0:
        raise DomainError("exponent must lie in Z_p")
    return x, INF


def _binomial_series(x, t_int: int, vt: int, p: int, n: int, start: int) -> int:
    """sum_{i >= start} binom(x, i) t^(i - start) mod p^n for exact x in Z_p."""
    mod = p ** n
    total = 0
    coeff = Fraction(1)
    for i in range(1, start):
        coeff = coeff * (x - i + 1) / i
    tpow = 1
    i = start
    while (i - start) * vt < n:
        if i > 0:
            coeff = coeff * (x - i + 1) / i
        if coeff == 0:
            break
        total += reduce_rational(coeff, p, n) * tpow
        tpow = tpow * t_int % mod
        i += 1
    return total % mod


def q_pow(x, qp: QParam):
    """q^x for integer x (any backend) or x in Z_p (p-adic backend)."""
    if _is_integer(x):
        return qp.q ** int(x)
    xr, xprec = _exact_exponent(x, qp)
    p = qp.prime
    n = min(qp.precision, xprec)
    vt = qp.t_valuation
    val = _binomial_series(xr, qp.lift(n) - 1, vt, p, n, 0)
    return PadicNumber.from_int(val, p, n)


def q_pow_exp_log(x, qp: QParam) -> PadicNumber:
    """q^x through exp(x log q); the cross-route for :func:`q_pow`."""
    if qp.backend != "padic":
        raise DomainError("exp/log route needs the p-adic backend")
    if not isinstance(x, PadicNumber):
        x = PadicNumber.from_rational(x, qp.prime, qp.precision)
    return pexp(x * plog(qp.q))


def q_int(x, qp: QParam):
    """The q-number [x]_q = (1 - q^x) / (1 - q)."""
    if _is_integer(x):
        x = int(x)
        if x >= 0:
            # binary doubling: [2k] = [k](1 + q^k), [k + 1] = 1 + q[k]
            one = qp.scalar(1)
            acc = qp.scalar(0)
            qk = one
            for bit in bin(x)[2:]:
                acc = acc * (one + qk)
                qk = qk * qk
                if bit == "1":
                    acc = acc * qp.q + one
                    qk = qk * qp.q
            return acc
        return -q_pow(x, qp) * q_int(-x, qp)
    xr, xprec = _exact_exponent(x, qp)
    p = qp.prime
    vt = qp.t_valuation
    # [x + d]_q - [x]_q = q^x [d]_q has valuation v(d)
    n = min(qp.precision, xprec - vt if xprec != INF else INF)
    val = _binomial_series(xr, qp.lift(n) - 1, vt, p, n, 1)
    return PadicNumber.from_int(val, p, n)


def q_int_neg(x, qp: QParam):
    """[x]_{-q} = (1 - (-q)^x) / (1 + q) for a non-negative integer x."""
    if not _is_integer(x) or int(x) < 0:
        raise DomainError("[x]_{-q} is only defined here for integers x >= 0")
    acc = qp.scalar(0)
    one = qp.scalar(1)
    for _ in range(int(x)):
        acc = -acc * qp.q + one
    return acc


def _unit_residue(a, p: int) -> int:
    if isinstance(a, PadicNumber):
        if a.valuation != 0:
            raise NotAUnit(f"{a} is not a unit")
        return a.reduce(1)
    if int(a) % p == 0:
        raise NotAUnit(f"{p} divides {a}")
    return int(a) % p


def angle_bracket(a, qp: QParam) -> PadicNumber:
    """<a> = [a]_q / omega(a); a principal unit for every p-adic unit a."""
    if qp.backend != "padic":
        raise DomainError("the bracket <a> needs the p-adic backend")
    p = qp.prime
    r = _unit_residue(a, p)
    qa = q_int(a, qp)
    return qa / teichmuller(r, p, qa.precision)


def angle_power(a, s, qp: QParam) -> PadicNumber:
    """<a>^s = exp(s log <a>) for s in Z_p."""
    br = angle_bracket(a, qp)
    if not isinstance(s, PadicNumber):
        if vp(Fraction(s), qp.prime) < 0:
            raise DomainError("exponent s must lie in Z_p")
        s = PadicNumber.from_rational(s, qp.prime, br.precision)
    elif not s.is_zero() and s.valuation < 0:
        raise DomainError("exponent s must lie in Z_p")
    if s.is_zero() and s.precision >= br.precision:
        return PadicNumber.one(qp.prime, br.precision)
    return pexp(s * plog(br))


__all__ = [
    "QParam",
    "q_int",
    "q_int_neg",
    "q_pow",
    "q_pow_exp_log",
    "angle_bracket",
    "angle_power",
    "PrecisionExhausted",
]
