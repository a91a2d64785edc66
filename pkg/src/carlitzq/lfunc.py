"""The p-adic q-l-function l_{p,q}(s, chi) and its three routes.

``l_integral`` integrates <x>^(-s) chi(x) q^x over the units X*,
``l_neg_int`` evaluates the negative-integer formula through generalized
q-Euler numbers of the twist chi_n = chi omega^(-n), and ``l_series`` sums the
expansion in binomial(-s, k) [F/a]_{q^a}^k q^(ka) E_{k,q^F}.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field
from fractions import Fraction

from .carlitz import GUARD, euler_q_table
from .characters import DirichletCharacter, twist
from .dirichlet import check_conductor_multiple, gen_euler_closed
from .errors import DomainError, PrecisionExhausted, PrecisionNotReached
from .fermionic import AnglePower, CharacterFactor, QPower, integrate_fermionic_x_units
from .padic_core import INF, PadicNumber, legendre, padic_binomial, vp
from .qcalc import QParam, angle_power, q_int

K_CAP = 200


@dataclass(frozen=True)
class LEvalRequest:
    """Parameters of one evaluation of l_{p,q}(s, chi)."""

    s: object
    chi: DirichletCharacter
    qp: QParam
    target: int = 8
    F: int | None = None
    K: int | None = None

    def __post_init__(self):
        if self.qp.prime is None:
            raise DomainError("l_{p,q} needs a prime")
        if self.target < 1:
            raise DomainError("target precision must be positive")
        _check_s(self.s, self.qp.prime)
        if self.F is not None:
            check_conductor_multiple(self.F, self.qp.prime, self.chi.period)

    @property
    def prime(self) -> int:
        return self.qp.prime

    @property
    def character(self) -> DirichletCharacter:
        if self.chi.prime is None:
            return self.chi.at_prime(self.prime)
        return self.chi

    def default_F(self) -> int:
        return self.F if self.F is not None else self.prime * self.chi.period


def _check_s(s, p: int):
    if isinstance(s, PadicNumber):
        if s.prime != p:
            raise DomainError(f"s lives over {s.prime}, not {p}")
        if not s.is_zero() and s.valuation < 0:
            raise DomainError("s must lie in Z_p")
        return
    if isinstance(s, bool) or not isinstance(s, (int, Fraction)):
        raise DomainError(f"unsupported s {s!r}")
    if vp(Fraction(s), p) < 0:
        raise DomainError("s must lie in Z_p")


def _neg(s):
    return -s


def l_integral(req: LEvalRequest, **engine) -> PadicNumber:
    """Fermionic integral over X* of <x>^(-s) chi(x) q^x (period of chi)."""
    chi = req.character
    qp = req.qp
    f = AnglePower(qp, _neg(req.s)) * CharacterFactor(chi) * QPower(qp, 1)
    return integrate_fermionic_x_units(f, chi.period, req.prime, req.target, **engine).value


def twist_at_p(chi: DirichletCharacter, n: int, p: int):
    """(chi_n on its period lcm(d, p), primitive chi_n, chi_n(p) for the primitive one)."""
    chi_n = twist(chi, n, p)
    prim = chi_n.primitive()
    return chi_n, prim, prim.exponent(p)


def l_neg_int(n: int, chi: DirichletCharacter, qp: QParam, prec: int | None = None,
              reading: str = "period"):
    """l_{p,q}(-n, chi) = E_{n,chi_n,q} - chi_n(p) [p]_q^n E_{n,chi_n,q^p}.

    ``reading="period"`` views chi_n at its period lcm(d, p), where
    chi_n(p) = 0 and only the first term survives.  ``reading="primitive"``
    uses the primitive character inducing chi_n, for which chi_n(p) can be
    nonzero.  Both give the same number.
    """
    if n < 0 or isinstance(n, bool) or not isinstance(n, int):
        raise DomainError("n must be a non-negative integer")
    p = qp.prime
    if p is None:
        raise DomainError("l_{p,q} needs a prime")
    if chi.prime is None:
        chi = chi.at_prime(p)
    chi_n, prim, e_p = twist_at_p(chi, n, p)
    if reading == "period":
        return gen_euler_closed(n, 0, qp, chi_n, prec)
    if reading != "primitive":
        raise DomainError(f"unknown reading {reading!r}")
    first = gen_euler_closed(n, 0, qp, prim, prec)
    if e_p is None:
        return first
    qpp = qp.power(p)
    second = gen_euler_closed(n, 0, qpp, prim, prec)
    if qp.backend == "padic":
        target = first.precision
        work = qp.at_precision(target + n * qp.t_valuation)
        cp = prim.value(p, work.precision) if prim.order > 2 else prim.value(p)
    else:
        work = qp
        cp = prim.value(p)
    value = first - cp * q_int(p, work) ** n * second
    if qp.backend == "padic":
        return value.with_precision(min(value.precision, first.precision))
    return value


def l_neg_int_candidates(n: int, chi: DirichletCharacter, qp: QParam,
                         prec: int | None = None) -> dict:
    return {r: l_neg_int(n, chi, qp, prec, reading=r) for r in ("period", "primitive")}


def _series_cutoff(req: LEvalRequest, F: int) -> int:
    if isinstance(req.s, int) and req.s <= 0:
        return -req.s  # binom(n, k) = 0 for k > n
    if req.K is not None:
        return req.K
    return math.ceil(req.target / vp(F, req.prime)) + 2


def _binomials(ms, K: int, p: int, w: int):
    """binom(-s, k) for k <= K, as p-adic numbers at precision about w."""
    if isinstance(ms, PadicNumber):
        out = []
        for k in range(K + 1):
            b = padic_binomial(ms, k)
            out.append(b)
        return out
    return [PadicNumber.from_rational(padic_binomial(ms, k), p, w) for k in range(K + 1)]


def l_series(req: LEvalRequest) -> PadicNumber:
    """sum_{a<F, p∤a} chi(a)<a>^(-s)(-q)^a sum_k binom(-s,k)[F/a]_{q^a}^k q^(ka) E_{k,q^F}."""
    p = req.prime
    chi = req.character
    F = req.default_F()
    check_conductor_multiple(F, p, chi.period)
    K = _series_cutoff(req, F)
    if K > K_CAP:
        raise PrecisionNotReached(K_CAP, req.target)
    ms = _neg(req.s)
    vt = req.qp.t_valuation
    w = req.target + vt + legendre(K, p) + GUARD
    if isinstance(ms, PadicNumber) and ms.precision < w:
        w = max(ms.precision, req.target)
    qp = req.qp.at_precision(w)
    q = qp.q
    qF = q ** F
    etab = euler_q_table(K, QParam(qF))
    binoms = _binomials(ms, K, p, qp.precision)
    one_minus_qF = 1 - qF
    total = PadicNumber.zero(p, qp.precision)
    for a in range(1, F):
        if a % p == 0 or chi.exponent(a) is None:
            continue
        qa = q ** a
        r_a = one_minus_qF / (1 - qa)  # [F/a]_{q^a}
        step = r_a * qa
        inner = PadicNumber.zero(p, qp.precision)
        pw = PadicNumber.one(p, qp.precision)
        for k in range(K + 1):
            inner = inner + binoms[k] * pw * etab[k]
            pw = pw * step
        ca = chi.value(a, qp.precision) if chi.order > 2 else chi.value(a)
        total = total + ca * angle_power(a, ms, qp) * (-qa if a % 2 else qa) * inner
    if total.precision < req.target:
        raise PrecisionExhausted(
            f"series kept only {total.precision} digits, {req.target} requested"
        )
    return total.with_precision(req.target)


@dataclass
class ProbeReport:
    """Empirical continuity of s -> l(s) on a finite sample."""

    pairs: list = field(default_factory=list)
    fitted_c: int = 0
    congruences: list = field(default_factory=list)
    passed: bool = True
    runtime: float = 0.0
    failures: list = field(default_factory=list)


def analyticity_probe(chi: DirichletCharacter, qp: QParam, sample, target: int,
                      max_c: int = 1, F: int | None = None) -> ProbeReport:
    """Check v(l(s) - l(s')) >= v(s - s') - C and fit the smallest such C >= 0."""
    t0 = time.perf_counter()
    report = ProbeReport()
    p = qp.prime
    values = []
    for s in sample:
        try:
            values.append((s, l_series(LEvalRequest(s, chi, qp, target, F=F))))
        except (DomainError, PrecisionExhausted, PrecisionNotReached) as exc:
            report.failures.append((s, str(exc)))
    worst = 0
    for i, (s, ls) in enumerate(values):
        for s2, ls2 in values[i + 1:]:
            ds = _valuation_diff(s, s2, p)
            dl = ls.agreement(ls2)
            gap = 0 if dl >= target else max(0, ds - dl) if ds != INF else target - dl
            worst = max(worst, gap)
            report.pairs.append((s, s2, ds, dl))
            if isinstance(s, int) and isinstance(s2, int) and s <= 0 and s2 <= 0 \
                    and (s - s2) % (p - 1) == 0:
                report.congruences.append((s, s2, dl))
    report.fitted_c = worst
    report.passed = not report.failures and worst <= max_c
    report.runtime = time.perf_counter() - t0
    return report


def _valuation_diff(s, s2, p: int):
    d = s - s2
    if isinstance(d, PadicNumber):
        return INF if d.is_zero() else d.valuation
    return vp(Fraction(d), p)
