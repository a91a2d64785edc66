"""Cross-route verification suites producing :class:`VerificationReport` rows."""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from fractions import Fraction

from . import carlitz, dirichlet, lfunc
from .characters import omega_power, quadratic, trivial
from .errors import CarlitzError
from .fermionic import (
    Bracket,
    CharacterFactor,
    QPower,
    integrate_fermionic_x,
    shift,
)
from .padic_core import INF, PadicNumber, serialize
from .qcalc import QParam

SUITES = (
    "integral-equations",
    "witt",
    "polynomial-identities",
    "distribution",
    "interpolation",
    "series",
)


@dataclass
class VerificationReport:
    identity: str
    params: dict
    routes: tuple
    agreement: float
    target: float
    runtime: float = 0.0
    detail: str = ""

    @property
    def passed(self) -> bool:
        return self.agreement >= self.target

    def to_dict(self) -> dict:
        return {
            "identity": self.identity,
            "params": {k: _plain(v) for k, v in self.params.items()},
            "routes": list(self.routes),
            "agreement": _plain(self.agreement),
            "target": _plain(self.target),
            "passed": self.passed,
            "runtime": round(self.runtime, 4),
            "detail": self.detail,
        }


def _plain(v):
    if v == INF:
        return "exact"
    if isinstance(v, (Fraction, PadicNumber)):
        return serialize(v) if isinstance(v, Fraction) else str(v.lift())
    return v


@dataclass
class SweepConfig:
    primes: tuple = (5, 7)
    q_kinds: tuple = ("1+p", "1+2p", "1+p^2")
    n_max: int = 8
    target: int | None = None
    max_level: int | None = None
    seed: int = 0
    quick: bool = False
    d: int | None = None
    F: int | None = None
    q: object = None
    chi: object = None
    samples: int = 20
    extra: dict = field(default_factory=dict)

    def qs(self, p: int):
        if self.q is not None:
            return [self.q(p) if callable(self.q) else self.q]
        kinds = self.q_kinds[:1] if self.quick else self.q_kinds
        return [Q_KINDS[k](p) for k in kinds]

    def prime_list(self):
        return self.primes[:1] if self.quick else self.primes

    def engine(self, default: int):
        return {"max_level": self.max_level if self.max_level is not None else default}


Q_KINDS = {
    "1+p": lambda p: 1 + p,
    "1+2p": lambda p: 1 + 2 * p,
    "1+p^2": lambda p: 1 + p * p,
}


def _agreement(a, b) -> float:
    if isinstance(a, PadicNumber) or isinstance(b, PadicNumber):
        if not isinstance(a, PadicNumber):
            a, b = b, a
        return a.agreement(b)
    return INF if a == b else -1  # exact routes either match or fail


def _report(identity, params, routes, a, b, target, t0, detail=""):
    return VerificationReport(identity, params, tuple(routes), _agreement(a, b), target,
                              time.perf_counter() - t0, detail)


def _failure(identity, params, routes, target, t0, exc):
    return VerificationReport(identity, params, tuple(routes), -1, target,
                              time.perf_counter() - t0, f"{type(exc).__name__}: {exc}")


def _characters(p: int, cfg: SweepConfig):
    if cfg.chi is not None:
        return [cfg.chi]
    chis = [trivial(), quadratic(3), omega_power(1, p), omega_power(2, p)]
    if cfg.d is not None:
        chis = [c for c in chis if c.period == cfg.d] or [quadratic(cfg.d)]
    return chis[:2] if cfg.quick else chis


# integral equations


def integral_equations(cfg: SweepConfig):
    target = cfg.target or 8
    for p in cfg.prime_list():
        for q in cfg.qs(p):
            qp = QParam(q, p, target + 6)
            chi = quadratic(3, p)
            library = {
                "q^a": (QPower(qp, 1), 1),
                "q^a[a]^2": (QPower(qp, 1) * Bracket(qp, 0, 2), 1),
                "chi(a)q^a[a]": (CharacterFactor(chi) * QPower(qp, 1) * Bracket(qp, 0, 1), 3),
            }
            for name, (f, d) in library.items():
                base = integrate_fermionic_x(f, d, p, target, **cfg.engine(7)).value
                for n in range(1, (3 if cfg.quick else 5) + 1):
                    t0 = time.perf_counter()
                    params = {"p": p, "q": q, "f": name, "n": n}
                    try:
                        shifted = integrate_fermionic_x(shift(f, n), d, p, target,
                                                        **cfg.engine(7)).value
                        rhs = 0
                        for i in range(n):
                            term = 2 * f.evaluate(i, p, target + 2)
                            rhs = rhs - term if (n - 1 - i) % 2 else rhs + term
                        lhs = shifted - base if n % 2 == 0 else shifted + base
                        yield _report("shift-equation", params, ("integral", "finite-sum"),
                                      lhs, rhs, target, t0)
                    except CarlitzError as exc:
                        yield _failure("shift-equation", params, ("integral", "finite-sum"),
                                       target, t0, exc)


# three routes for E_{n,q}


def _random_q(rng: random.Random, p: int) -> Fraction:
    while True:
        b = rng.randrange(1, 50)
        if b % p == 0:
            continue
        a = b + p * rng.randrange(-40, 40)
        if a != b:
            return Fraction(a, b)


def witt(cfg: SweepConfig):
    target = cfg.target or 10
    n_max = min(cfg.n_max, 4) if cfg.quick else cfg.n_max
    for p in cfg.prime_list():
        for q in cfg.qs(p):
            qp = QParam(q, p, target + 4)
            rec = carlitz.euler_q_table(n_max, qp.at_precision(target))
            for n in range(n_max + 1):
                t0 = time.perf_counter()
                params = {"p": p, "q": q, "n": n}
                try:
                    closed = carlitz.euler_q_closed(n, qp, target)
                    integral = carlitz.euler_q_integral(n, qp, target, **cfg.engine(7))
                    yield _report("witt-recurrence-closed", params, ("recurrence", "closed_form"),
                                  rec[n], closed, target, t0)
                    yield _report("witt-closed-integral", params, ("closed_form", "integral"),
                                  closed, integral, target, t0)
                except CarlitzError as exc:
                    yield _failure("witt", params, ("closed_form", "integral"), target, t0, exc)
        rng = random.Random(cfg.seed * 1000 + p)
        for _ in range(5 if cfg.quick else cfg.samples):
            q = _random_q(rng, p)
            qr = QParam(q, p)
            t0 = time.perf_counter()
            table = carlitz.euler_q_table(n_max, qr)
            worst = INF
            for n in range(n_max + 1):
                if carlitz.euler_q_closed(n, qr) != table[n]:
                    worst = -1
            yield VerificationReport("witt-rational", {"p": p, "q": q, "n_max": n_max},
                                     ("recurrence", "closed_form"), worst, INF,
                                     time.perf_counter() - t0)
        if p == cfg.prime_list()[0]:
            yield from _degeneration(p, n_max, cfg)


def _degeneration(p: int, n_max: int, cfg: SweepConfig):
    for m in range(2, (4 if cfg.quick else 6) + 1):
        qp = QParam(1 + p ** m, p, m + 2)
        for n in range(n_max + 1):
            t0 = time.perf_counter()
            value = carlitz.euler_q_closed(n, qp, m)
            classical = PadicNumber.from_rational(carlitz.classical_euler(n), p, m)
            yield _report("q-to-1-degeneration", {"p": p, "m": m, "n": n},
                          ("closed_form", "classical"), value, classical, m, t0)


# polynomial identities


def polynomial_identities(cfg: SweepConfig):
    rng = random.Random(cfg.seed)
    for p in cfg.prime_list():
        q0 = cfg.qs(p)[0]
        qr = QParam(Fraction(q0), p)
        for m in range(1, 6):
            for n in range(0, 7):
                for x in (0, 1, 2):
                    t0 = time.perf_counter()
                    lhs = carlitz.alternating_sum(m, n, x, qr)
                    sign = 1 if m % 2 else -1
                    rhs = (carlitz.euler_poly_q_closed(n, x, qr)
                           + sign * qr.q ** m * carlitz.euler_poly_q_closed(n, x + m, qr)) / 2
                    yield _report("alternating-sum", {"p": p, "q": q0, "m": m, "n": n, "x": x},
                                  ("finite-sum", "closed_form"), lhs, rhs, INF, t0)
        for q in cfg.qs(p):
            qp = QParam(q, p, 16)
            for _ in range(2 if cfg.quick else 4):
                x = PadicNumber.from_int(rng.randrange(p ** 30), p, 30)
                for n in range(0, 7):
                    t0 = time.perf_counter()
                    params = {"p": p, "q": q, "n": n, "x": x}
                    a = carlitz.euler_poly_q_addition(n, x, qp, 10)
                    b = carlitz.euler_poly_q_closed(n, x, qp, 10)
                    yield _report("addition-formula", params, ("addition", "closed_form"),
                                  a, b, 10, t0)
            for x in (0, 1, PadicNumber.from_int(rng.randrange(p ** 30), p, 30)):
                for n in range(0, (3 if cfg.quick else 6) + 1):
                    t0 = time.perf_counter()
                    params = {"p": p, "q": q, "n": n, "x": x}
                    try:
                        a = carlitz.euler_poly_q_integral(n, x, qp, 8, **cfg.engine(7))
                        b = carlitz.euler_poly_q_closed(n, x, qp, 8)
                        yield _report("polynomial-integral", params, ("integral", "closed_form"),
                                      a, b, 8, t0)
                    except CarlitzError as exc:
                        yield _failure("polynomial-integral", params, ("integral", "closed_form"),
                                       8, t0, exc)


# generalized numbers and the distribution relation


def distribution(cfg: SweepConfig):
    target = cfg.target or 8
    n_gen = 2 if cfg.quick else 4
    for p in cfg.prime_list():
        for q in cfg.qs(p):
            qp = QParam(q, p, target + 4)
            for chi in _characters(p, cfg):
                chi = chi if chi.prime is not None else chi.at_prime(p)
                for n in range(n_gen + 1):
                    t0 = time.perf_counter()
                    params = {"p": p, "q": q, "chi": chi.to_spec(), "n": n}
                    try:
                        a = dirichlet.gen_euler_closed(n, 0, qp, chi, target)
                        b = dirichlet.gen_euler_integral(n, 0, qp, chi, target, **cfg.engine(7))
                        yield _report("generalized-closed-integral", params,
                                      ("closed_form", "integral"), a, b, target, t0)
                    except CarlitzError as exc:
                        yield _failure("generalized-closed-integral", params,
                                       ("closed_form", "integral"), target, t0, exc)
                for F in _f_values(p, chi, cfg):
                    for n in range((3 if cfg.quick else 6) + 1):
                        t0 = time.perf_counter()
                        params = {"p": p, "q": q, "chi": chi.to_spec(), "F": F, "n": n}
                        if chi.order <= 2:
                            qr = QParam(Fraction(q), p)
                            a = dirichlet.gen_euler_closed(n, 1, qr, chi)
                            b = dirichlet.distribution_rhs(n, 1, qr, chi, F)
                            yield _report("distribution-rational", params,
                                          ("closed_form", "distribution"), a, b, INF, t0)
                        t0 = time.perf_counter()
                        a = dirichlet.gen_euler_closed(n, 1, qp, chi, target)
                        b = dirichlet.distribution_rhs(n, 1, qp, chi, F, target)
                        yield _report("distribution-padic", params,
                                      ("closed_form", "distribution"), a, b, target, t0)
                if p != 3:
                    t0 = time.perf_counter()
                    a = dirichlet.gen_euler_closed(3, 0, qp, chi, target)
                    b = dirichlet.gen_euler_closed(3, 0, qp, chi, target, period=3 * chi.period)
                    yield _report("period-robustness", {"p": p, "q": q, "chi": chi.to_spec()},
                                  ("period d", "period 3d"), a, b, target, t0)


def _f_values(p, chi, cfg: SweepConfig):
    if cfg.F is not None:
        return [cfg.F]
    base = p * chi.period
    return [base] if cfg.quick else [base, 3 * base]


# l-function routes


def interpolation(cfg: SweepConfig):
    target = cfg.target or 6
    for p in cfg.prime_list():
        for q in cfg.qs(p):
            qp = QParam(q, p, target + 6)
            for chi in _characters(p, cfg):
                for n in range((3 if cfg.quick else 5) + 1):
                    t0 = time.perf_counter()
                    params = {"p": p, "q": q, "chi": chi.to_spec(), "n": n}
                    routes = ("integral", "negative-integer")
                    try:
                        req = lfunc.LEvalRequest(-n, chi, qp, target)
                        integral = lfunc.l_integral(req, **cfg.engine(6))
                        cands = lfunc.l_neg_int_candidates(n, chi, qp, integral.precision)
                        agreement = min(integral.agreement(c) for c in cands.values())
                        yield VerificationReport("interpolation", params, routes, agreement,
                                                 max(target, integral.precision),
                                                 time.perf_counter() - t0,
                                                 "period and primitive readings checked")
                    except CarlitzError as exc:
                        yield _failure("interpolation", params, routes, target, t0, exc)


def series(cfg: SweepConfig):
    target = cfg.target or 6
    for p in cfg.prime_list():
        for q in cfg.qs(p):
            qp = QParam(q, p, target + 6)
            for chi in _characters(p, cfg):
                for s in (2, -3, p, 1 + p):
                    params = {"p": p, "q": q, "chi": chi.to_spec(), "s": s}
                    t0 = time.perf_counter()
                    try:
                        req = lfunc.LEvalRequest(s, chi, qp, target, F=cfg.F)
                        ser = lfunc.l_series(req)
                        integral = lfunc.l_integral(req, **cfg.engine(7))
                        yield _report("series-integral", params, ("series", "integral"),
                                      ser, integral, target, t0)
                        if s > 0:
                            t0 = time.perf_counter()
                            k0 = lfunc._series_cutoff(req, req.default_F())
                            longer = lfunc.l_series(
                                lfunc.LEvalRequest(s, chi, qp, target, F=cfg.F, K=k0 + 5))
                            yield _report("series-K-stability", params, ("K", "K+5"),
                                          ser, longer, target, t0)
                    except CarlitzError as exc:
                        yield _failure("series-integral", params, ("series", "integral"),
                                       target, t0, exc)
                for n in range((2 if cfg.quick else 5) + 1):
                    t0 = time.perf_counter()
                    params = {"p": p, "q": q, "chi": chi.to_spec(), "s": -n}
                    ser = lfunc.l_series(lfunc.LEvalRequest(-n, chi, qp, target, F=cfg.F))
                    neg = lfunc.l_neg_int(n, chi, qp, target)
                    yield _report("series-termination", params, ("series", "negative-integer"),
                                  ser, neg, target, t0)
        if not cfg.quick:
            qp = QParam(cfg.qs(p)[0], p, target + 6)
            sample = [2, 2 + p, 2 + p * p, 1, 1 + p ** 3]
            t0 = time.perf_counter()
            probe = lfunc.analyticity_probe(trivial(), qp, sample, target)
            yield VerificationReport("analyticity-probe", {"p": p, "samples": len(sample)},
                                     ("l(s)", "l(s')"), -probe.fitted_c, -1,
                                     time.perf_counter() - t0,
                                     f"fitted C = {probe.fitted_c}")


_RUNNERS = {
    "integral-equations": integral_equations,
    "witt": witt,
    "polynomial-identities": polynomial_identities,
    "distribution": distribution,
    "interpolation": interpolation,
    "series": series,
}


def run_suite(name: str, cfg: SweepConfig | None = None):
    """Yield reports for one suite, or for all of them with ``name="all"``."""
    cfg = cfg or SweepConfig()
    names = SUITES if name == "all" else (name,)
    for n in names:
        if n not in _RUNNERS:
            raise KeyError(n)
        yield from _RUNNERS[n](cfg)


__all__ = ["VerificationReport", "SweepConfig", "SUITES", "run_suite"]
