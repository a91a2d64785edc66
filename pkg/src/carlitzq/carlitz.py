"""Euler numbers and Carlitz-type q-Euler numbers/polynomials.

Three routes for E_{n,q}: the recurrence q(qE + 1)^n + E_{n,q} = 2[n = 0],
the finite closed sum over 2/(1 + q^(i+1)), and the fermionic integral of
q^x [x]_q^n.  Every function is generic over the scalar backend carried by the
:class:`~carlitzq.qcalc.QParam`.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb

from .errors import DomainError, PrecisionExhausted
from .fermionic import Bracket, QPower, integrate_fermionic_zp
from .padic_core import PadicNumber
from .qcalc import QParam, q_int, q_pow

GUARD = 2


@lru_cache(maxsize=None)
def _classical_table(n: int) -> tuple:
    table = [Fraction(1)]
    for m in range(1, n + 1):
        table.append(-sum(comb(m, k) * table[k] for k in range(m)) / 2)
    return tuple(table)


def classical_euler(n: int) -> Fraction:
    """E_n from E_0 = 1, (E + 1)^n + E_n = 0."""
    return _classical_table(n)[n]


def classical_euler_poly(n: int, x):
    """E_n(x) = sum_k binom(n, k) E_k x^(n-k)."""
    table = _classical_table(n)
    if isinstance(x, PadicNumber):
        conv = lambda c: PadicNumber.from_rational(c, x.prime, x.precision)  # noqa: E731
    else:
        x = Fraction(x)
        conv = Fraction
    total = conv(0)
    for k in range(n + 1):
        total = total + conv(comb(n, k) * table[k]) * x ** (n - k)
    return total


def euler_star_q(n: int, qp: QParam):
    """E*_{n,q} from E*_0 = 1, (qE* + 1)^n + E*_{n,q} = 0 for n > 0."""
    table = [qp.scalar(1)]
    q = qp.q
    for m in range(1, n + 1):
        rhs = qp.scalar(0)
        for k in range(m):
            rhs = rhs + comb(m, k) * q ** k * table[k]
        table.append(-rhs / (q ** m + 1))
    return table[n]


def euler_q_table(nmax: int, qp: QParam) -> list:
    """[E_{0,q}, ..., E_{nmax,q}] by the recurrence.

    Each step divides by 1 + q^(n+1), a unit, so no precision is lost.
    """
    q = qp.q
    table = [qp.scalar(2) / (1 + q)]
    for n in range(1, nmax + 1):
        acc = qp.scalar(0)
        qk = qp.scalar(1)
        for k in range(n):
            acc = acc + comb(n, k) * qk * table[k]
            qk = qk * q
        table.append(-(q * acc) / (q ** (n + 1) + 1))
    return table


def euler_q_recurrence(n: int, qp: QParam):
    return euler_q_table(n, qp)[n]


def _padded(qp: QParam, n: int, prec, extra_valuation: int = 0):
    """Working parameter and target for a sum divided by (1 - q)^n."""
    target = qp.precision if prec is None else prec
    pad = n * (qp.t_valuation + extra_valuation) + GUARD
    return qp.at_precision(target + pad), target


def _finish(value, target):
    if value.precision < target:
        raise PrecisionExhausted(
            f"closed form kept only {value.precision} digits, {target} requested"
        )
    return value.with_precision(target)


def _closed_poly(n: int, qp: QParam, qx) -> object:
    """(1/(1-q)^n) sum_k binom(n,k) (-1)^k qx^k * 2/(1 + q^(k+1))."""
    q = qp.q
    total = qp.scalar(0)
    qxk = qp.scalar(1)
    for k in range(n + 1):
        term = comb(n, k) * qxk * 2 / (1 + q ** (k + 1))
        total = total - term if k % 2 else total + term
        qxk = qxk * qx
    return total / (1 - q) ** n


def euler_q_closed(n: int, qp: QParam, prec: int | None = None):
    """E_{n,q} = (1/(1-q)^n) sum_i binom(n,i) (-1)^i 2/(1 + q^(i+1))."""
    if qp.backend == "rational":
        return _closed_poly(n, qp, qp.scalar(1))
    target = qp.precision if prec is None else prec
    if qp.t_valuation >= target or (qp.exact is None and n * qp.t_valuation >= qp.precision):
        # dividing by a near-zero (1 - q)^n: the recurrence is exact here
        return euler_q_recurrence(n, qp.at_precision(target)).with_precision(target)
    work, target = _padded(qp, n, prec)
    return _finish(_closed_poly(n, work, work.scalar(1)), target)


def euler_q_integral(n: int, qp: QParam, target: int, **engine):
    """E_{n,q} as the fermionic integral of q^x [x]_q^n over Z_p."""
    f = QPower(qp, 1) * Bracket(qp, 0, n)
    return integrate_fermionic_zp(f, qp.prime, target, **engine).value


def euler_poly_q_closed(n: int, x, qp: QParam, prec: int | None = None):
    """E_{n,q}(x) = (2/(1-q)^n) sum_k binom(n,k) (-1)^k q^(xk)/(1 + q^(k+1))."""
    if qp.backend == "rational":
        return _closed_poly(n, qp, q_pow(x, qp))
    work, target = _padded(qp, n, prec)
    return _finish(_closed_poly(n, work, q_pow(x, work)), target)


def euler_poly_q_integral(n: int, x, qp: QParam, target: int, **engine):
    """E_{n,q}(x) as the fermionic integral of [x + y]_q^n q^y dy."""
    f = QPower(qp, 1) * Bracket(qp, x, n)
    return integrate_fermionic_zp(f, qp.prime, target, **engine).value


def euler_poly_q_addition(n: int, x, qp: QParam, prec: int | None = None):
    """E_{n,q}(x) = sum_k binom(n,k) [x]_q^(n-k) q^(kx) E_{k,q}."""
    if qp.backend == "padic" and prec is not None:
        qp = qp.at_precision(prec + GUARD)
    table = euler_q_table(n, qp)
    bx = q_int(x, qp)
    qx = q_pow(x, qp)
    total = qp.scalar(0)
    qxk = qp.scalar(1)
    for k in range(n + 1):
        total = total + comb(n, k) * bx ** (n - k) * qxk * table[k]
        qxk = qxk * qx
    if qp.backend == "padic" and prec is not None:
        return _finish(total, prec)
    return total


def alternating_sum(m: int, n: int, x, qp: QParam):
    """sum_{k < m} (-1)^k q^k [k + x]_q^n."""
    if m < 1:
        raise DomainError("m must be a positive integer")
    total = qp.scalar(0)
    qk = qp.scalar(1)
    for k in range(m):
        term = qk * q_int(x + k, qp) ** n
        total = total - term if k % 2 else total + term
        qk = qk * qp.q
    return total


@dataclass(frozen=True)
class EulerFamilyValue:
    n: int
    value: object
    route: str
    qp: QParam


ROUTES = ("recurrence", "closed_form", "integral")


def euler_q(n: int, qp: QParam, route: str = "recurrence", target: int | None = None,
            **engine) -> EulerFamilyValue:
    """E_{n,q} by the named route."""
    if route == "recurrence":
        work = qp if target is None or qp.backend == "rational" else qp.at_precision(target)
        value = euler_q_recurrence(n, work)
    elif route == "closed_form":
        value = euler_q_closed(n, qp, target)
    elif route == "integral":
        if target is None:
            target = qp.precision
        value = euler_q_integral(n, qp, target, **engine)
    else:
        raise DomainError(f"unknown route {route!r}")
    return EulerFamilyValue(n, value, route, qp)
