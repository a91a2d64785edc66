"""Generalized Carlitz-type q-Euler polynomials E_{n,chi,q}(x)."""

from __future__ import annotations

from math import comb

from .carlitz import GUARD, _finish
from .characters import (
    DirichletCharacter,
    from_table,
    make_character,
    omega_power,
    parse_character,
    quadratic,
    trivial,
    twist,
)
from .errors import BadConductorMultiple, DomainError
from .fermionic import Bracket, CharacterFactor, QPower, integrate_fermionic_x
from .padic_core import vp
from .qcalc import QParam, q_int, q_pow

__all__ = [
    "DirichletCharacter",
    "make_character",
    "parse_character",
    "trivial",
    "quadratic",
    "omega_power",
    "from_table",
    "twist",
    "gen_euler_closed",
    "gen_euler_integral",
    "distribution_rhs",
    "check_conductor_multiple",
]


def _chi_value(chi: DirichletCharacter, a: int, qp: QParam):
    if qp.backend == "rational":
        return chi.value(a)
    return chi.value(a, qp.precision) if chi.order > 2 else chi.value(a)


def _realize(chi: DirichletCharacter, qp: QParam) -> DirichletCharacter:
    if chi.prime is None and qp.prime is not None:
        return chi.at_prime(qp.prime)
    return chi


def gen_euler_closed(n: int, x, qp: QParam, chi: DirichletCharacter, prec: int | None = None,
                     period: int | None = None):
    """(1/(1-q)^n) sum_{j<d} chi(j)(-q)^j sum_i binom(n,i)(-1)^i q^(i(x+j)) 2/(1+q^(d(i+1))).

    ``period`` may be any odd multiple of chi's period; the value does not
    depend on it.
    """
    chi = _realize(chi, qp)
    d = chi.period if period is None else period
    if d % chi.period or d % 2 == 0:
        raise DomainError(f"period {d} must be an odd multiple of {chi.period}")
    if qp.backend == "padic":
        target = qp.precision if prec is None else prec
        work = qp.at_precision(target + n * qp.t_valuation + GUARD)
    else:
        target, work = None, qp
    q = work.q
    qx = q_pow(x, work)
    total = work.scalar(0)
    for j in range(d):
        cj = _chi_value(chi, j, work)
        if cj == 0 and not hasattr(cj, "precision"):
            continue
        qxj = qx * q ** j
        inner = work.scalar(0)
        step = work.scalar(1)
        for i in range(n + 1):
            term = comb(n, i) * step * 2 / (1 + q ** (d * (i + 1)))
            inner = inner - term if i % 2 else inner + term
            step = step * qxj
        weight = cj * (-q) ** j
        total = total + weight * inner
    value = total / (1 - q) ** n
    return _finish(value, target) if target is not None else value


def gen_euler_integral(n: int, x, qp: QParam, chi: DirichletCharacter, target: int, **engine):
    """E_{n,chi,q}(x) as the fermionic integral over X of chi(y)[x+y]_q^n q^y."""
    chi = _realize(chi, qp)
    f = CharacterFactor(chi) * Bracket(qp, x, n) * QPower(qp, 1)
    return integrate_fermionic_x(f, chi.period, qp.prime, target, **engine).value


def check_conductor_multiple(F: int, p: int, d: int):
    if F < 1 or F % 2 == 0 or F % p or F % d:
        raise BadConductorMultiple(f"F={F} must be an odd multiple of p={p} and d={d}")


def distribution_rhs(n: int, x, qp: QParam, chi: DirichletCharacter, F: int,
                     prec: int | None = None):
    """[F]_q^n sum_{a<F} chi(a)(-q)^a E_{n,q^F}((x+a)/F).

    E_{n,q^F}(y) uses the closed form with (q^F)^(yk) rewritten as q^((x+a)k),
    so no p-adic division by F is needed.
    """
    if qp.prime is None:
        raise DomainError("the distribution relation needs a prime")
    chi = _realize(chi, qp)
    check_conductor_multiple(F, qp.prime, chi.period)
    if qp.backend == "padic":
        target = qp.precision if prec is None else prec
        work = qp.at_precision(target + n * (qp.t_valuation + 2 * vp(F, qp.prime)) + GUARD)
    else:
        target, work = None, qp
    q = work.q
    qF = q ** F
    qx = q_pow(x, work)
    total = work.scalar(0)
    for a in range(F):
        ca = _chi_value(chi, a, work)
        if ca == 0 and not hasattr(ca, "precision"):
            continue
        base = qx * q ** a  # q^(x+a) = (q^F)^((x+a)/F)
        poly = work.scalar(0)
        step = work.scalar(1)
        for k in range(n + 1):
            term = comb(n, k) * step / (1 + qF ** (k + 1))
            poly = poly - term if k % 2 else poly + term
            step = step * base
        poly = 2 * poly / (1 - qF) ** n
        total = total + ca * (-q) ** a * poly
    value = q_int(F, work) ** n * total
    return _finish(value, target) if target is not None else value
