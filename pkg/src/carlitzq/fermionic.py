"""Numerical p-adic integration: I_q and the fermionic integral I_{-1}.

Integrands are small expression trees (:class:`IntegrandSpec`) built from
``Const``, ``QPower``, ``Bracket``, ``CharacterFactor`` and ``AnglePower``
with ``*``, ``+`` and :func:`shift`.  They are compiled to integer tables and
geometric recurrences modulo p^W and summed over the lattice
``0 <= a < d p^N`` by the kernel in :mod:`carlitzq.kernels`.

The fermionic partial sums S_N gain roughly one digit per level.  Because S_N
is a power series in h = p^N with p-integral coefficients, the engine by
default applies p-adic Richardson extrapolation across levels (each round
divides by the unit 1 - p^r) and stops once two consecutive estimates agree
modulo p^target.  ``accelerate=False`` gives the plain S_N.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass
from fractions import Fraction

from . import kernels
from .errors import BackendMismatch, DomainError, EvenModulus, PrecisionExhausted, PrecisionNotReached
from .padic_core import INF, PadicNumber, reduce_rational, teichmuller_int, vp
from .qcalc import QParam, q_int, q_pow

DEFAULT_MAX_LEVEL = 12
GUARD_DIGITS = 3


def default_max_level() -> int:
    env = os.environ.get("CARLITZ_MAX_LEVEL")
    return int(env) if env else DEFAULT_MAX_LEVEL


# integrand algebra


class IntegrandSpec:
    """A function on the integers a >= 0 (lifts of Z_p or X)."""

    def __mul__(self, other):
        if not isinstance(other, IntegrandSpec):
            other = Const(other)
        return Product((self, other))

    def __rmul__(self, other):
        return Const(other) * self if not isinstance(other, IntegrandSpec) else other * self

    def __add__(self, other):
        if not isinstance(other, IntegrandSpec):
            other = Const(other)
        return Sum((self, other))

    __radd__ = __add__

    def __neg__(self):
        return Const(-1) * self

    def __sub__(self, other):
        return self + (-other if isinstance(other, IntegrandSpec) else Const(-other))

    def shift(self, n: int) -> "IntegrandSpec":
        return shift(self, n)

    def expand(self, offset: int = 0):
        """Flatten into a list of products: (constants, [(primitive, offset)])."""
        raise NotImplementedError

    def evaluate(self, a: int, p: int, precision: int) -> PadicNumber:
        """f(a) for an integer a >= 0, as a p-adic number."""
        if a < 0:
            raise DomainError("integrands are evaluated at non-negative lifts")
        terms, cert = compile_integrand(self, p, precision)
        n = min(precision, cert)
        mod = p ** n
        total = 0
        for term in terms:
            total += term.lattice_sum(a, a + 1, mod, alternate=False, skip_p=0)
        return PadicNumber.from_int(total, p, n)


class _Primitive(IntegrandSpec):
    def expand(self, offset=0):
        return [([], [(self, offset)])]


@dataclass(frozen=True, eq=False)
class Const(_Primitive):
    value: object

    def expand(self, offset=0):
        return [([self.value], [])]


@dataclass(frozen=True, eq=False)
class QPower(_Primitive):
    """a -> q^(c a)."""

    qp: QParam
    c: int = 1


@dataclass(frozen=True, eq=False)
class Bracket(_Primitive):
    """a -> [a + x]_q^n."""

    qp: QParam
    x: object = 0
    n: int = 1

    def __post_init__(self):
        if self.n < 0:
            raise DomainError("bracket powers must be non-negative")


@dataclass(frozen=True, eq=False)
class CharacterFactor(_Primitive):
    """a -> chi(a)."""

    chi: object


@dataclass(frozen=True, eq=False)
class AnglePower(_Primitive):
    """a -> <a>^s with <a> = [a]_q / omega(a); zero on multiples of p if units_only."""

    qp: QParam
    s: object
    units_only: bool = True


@dataclass(frozen=True, eq=False)
class Product(IntegrandSpec):
    factors: tuple

    def expand(self, offset=0):
        out = [([], [])]
        for f in self.factors:
            new = []
            for c1, p1 in out:
                for c2, p2 in f.expand(offset):
                    new.append((c1 + c2, p1 + p2))
            out = new
        return out


@dataclass(frozen=True, eq=False)
class Sum(IntegrandSpec):
    terms: tuple

    def expand(self, offset=0):
        out = []
        for t in self.terms:
            out.extend(t.expand(offset))
        return out


@dataclass(frozen=True, eq=False)
class Shift(IntegrandSpec):
    """a -> f(a + n)."""

    inner: IntegrandSpec
    n: int

    def expand(self, offset=0):
        return self.inner.expand(offset + self.n)


def shift(f: IntegrandSpec, n: int) -> IntegrandSpec:
    """f_n(a) = f(a + n)."""
    if n < 0:
        raise DomainError("shift must be non-negative")
    if n == 0:
        return f
    if isinstance(f, Shift):
        return Shift(f.inner, f.n + n)
    return Shift(f, n)


# compilation to kernel terms


def _geom_sum(g: int, n: int, mod: int) -> int:
    """1 + g + ... + g^(n-1) mod ``mod`` by binary doubling."""
    acc, gk = 0, 1
    for bit in bin(n)[2:]:
        acc = acc * (1 + gk) % mod
        gk = gk * gk % mod
        if bit == "1":
            acc = (acc * g + 1) % mod
            gk = gk * g % mod
    return acc


@dataclass
class _BracketSpec:
    base: int  # q mod p^W
    y_int: int  # [y]_q mod p^W, where B(a) = [a + y]_q
    q_y: int  # q^y mod p^W
    exponent: int
    wtab: tuple | None


@dataclass
class LatticeTerm:
    table: tuple
    geom: int
    brackets: list

    def lattice_sum(self, lo, hi, mod, *, alternate, skip_p, force_python=False):
        g0 = pow(self.geom, lo, mod)
        states = []
        for b in self.brackets:
            ql = pow(b.base, lo, mod)
            b0 = (b.y_int + b.q_y * _geom_sum(b.base, lo, mod)) % mod
            states.append((b0, b.q_y * ql % mod, b.base, b.exponent, b.wtab))
        return kernels.lattice_sum(
            lo, hi, mod, 1 if alternate else 0, skip_p, self.table, g0, self.geom, states,
            force_python=force_python,
        )


def _check_prime(qp: QParam, p: int):
    if qp.prime != p:
        raise BackendMismatch(f"integrand q lives over {qp.prime}, integration over {p}")


def _available(qp: QParam):
    return INF if qp.exact is not None else qp.q.precision


def _padic_exponent(x, p: int):
    """(exact value, certified precision) of an exponent or shift parameter."""
    if isinstance(x, PadicNumber):
        if x.prime != p:
            raise BackendMismatch("parameter over a different prime")
        return x, x.precision
    return Fraction(x), INF


def _certified_precision(prims, p: int):
    cert = INF
    for prim, _ in prims:
        if isinstance(prim, (QPower, Bracket, AnglePower)):
            _check_prime(prim.qp, p)
            cert = min(cert, _available(prim.qp))
        if isinstance(prim, Bracket):
            _, xp = _padic_exponent(prim.x, p)
            cert = min(cert, xp)
        if isinstance(prim, AnglePower):
            # <a>^s mod p^W depends on s mod p^(W-1)
            _, sp = _padic_exponent(prim.s, p)
            cert = min(cert, sp + 1)
        if isinstance(prim, CharacterFactor) and prim.chi.order > 2 and prim.chi.prime != p:
            raise BackendMismatch("character realized over a different prime")
    return cert


def _rotate(table, offset):
    n = len(table)
    return tuple(table[(r + offset) % n] for r in range(n))


def _merge_tables(a, b, mod):
    n = len(a) * len(b) // math.gcd(len(a), len(b))
    return tuple(a[r % len(a)] * b[r % len(b)] % mod for r in range(n))


def _compile_term(consts, prims, p: int, w: int) -> LatticeTerm:
    mod = p ** w
    coeff = 1
    for c in consts:
        if isinstance(c, PadicNumber):
            coeff = coeff * c.reduce(w) % mod if not c.is_zero() else 0
        else:
            coeff = coeff * reduce_rational(Fraction(c), p, w) % mod
    table = (coeff,)
    geom = 1
    brackets = []
    for prim, off in prims:
        if isinstance(prim, QPower):
            qv = prim.qp.lift(w)
            g = pow(qv, prim.c, mod)
            table = tuple(t * pow(g, off, mod) % mod for t in table)
            geom = geom * g % mod
        elif isinstance(prim, CharacterFactor):
            table = _merge_tables(table, _rotate(prim.chi.lattice_table(p, w), off), mod)
        elif isinstance(prim, Bracket):
            qpw = prim.qp.at_precision(w)
            x, _ = _padic_exponent(prim.x, p)
            y = x + off
            y_int = q_int(y, qpw).reduce(w) if not _is_zero(y) else 0
            q_y = q_pow(y, qpw).reduce(w)
            brackets.append(_BracketSpec(qpw.lift(w), y_int, q_y, prim.n, None))
        elif isinstance(prim, AnglePower):
            qpw = prim.qp.at_precision(w)
            s, _ = _padic_exponent(prim.s, p)
            exp_mod = p ** (w - 1)
            if isinstance(s, PadicNumber):
                e = s.reduce(w - 1) if not s.is_zero() else 0
            else:
                e = reduce_rational(s, p, w - 1)
            e %= exp_mod
            winv = tuple(
                0 if r == 0 else pow(teichmuller_int(r, p, w), -1, mod) for r in range(p)
            )
            winv = _rotate(winv, off)
            y_int = q_int(off, qpw).reduce(w)
            q_y = q_pow(off, qpw).reduce(w)
            brackets.append(_BracketSpec(qpw.lift(w), y_int, q_y, e, winv))
            if prim.units_only:
                ind = tuple(0 if (r + off) % p == 0 else 1 for r in range(p))
                table = _merge_tables(table, ind, mod)
        else:
            raise DomainError(f"unsupported integrand primitive {prim!r}")
    return LatticeTerm(table, geom, brackets)


def _is_zero(y):
    return (isinstance(y, PadicNumber) and y.is_zero() and y.precision >= 0) or (
        not isinstance(y, PadicNumber) and y == 0
    )


def compile_integrand(f: IntegrandSpec, p: int, precision: int):
    """Compile ``f`` to kernel terms mod p^W; returns (terms, certified precision)."""
    expanded = f.expand()
    cert = INF
    for _, prims in expanded:
        cert = min(cert, _certified_precision(prims, p))
    w = precision if cert == INF else min(precision, int(cert))
    if w < 1:
        raise PrecisionExhausted("integrand parameters carry no digits")
    return [_compile_term(c, prims, p, w) for c, prims in expanded], cert


# the engine


@dataclass(frozen=True)
class IntegralResult:
    value: PadicNumber
    stabilized_precision: int
    lattice_level: int


def _valuation_mod(x: int, p: int, w: int) -> int:
    x %= p ** w
    if x == 0:
        return w
    return vp(x, p)


def richardson(sums, p: int, mod: int) -> int:
    """Extrapolate S_1..S_N (S_N analytic in p^N) to N -> infinity."""
    col = list(sums)
    r = 0
    while len(col) > 1:
        r += 1
        pr = p ** r
        inv = pow(1 - pr, -1, mod)
        col = [(col[i + 1] - pr * col[i]) * inv % mod for i in range(len(col) - 1)]
    return col[0] % mod


def lattice_partial_sum(f: IntegrandSpec, p: int, level: int, *, d: int = 1,
                        precision: int = 20, units_only: bool = False,
                        alternate: bool = True) -> PadicNumber:
    """S_N = sum_{a < d p^N} (-1)^a f(a) (skipping p | a if ``units_only``)."""
    terms, cert = compile_integrand(f, p, precision)
    w = min(precision, cert)
    mod = p ** w
    hi = d * p ** level
    total = sum(
        t.lattice_sum(0, hi, mod, alternate=alternate, skip_p=p if units_only else 0)
        for t in terms
    )
    return PadicNumber.from_int(total, p, w)


def _fermionic(f, p, d, target, *, units_only, max_level, accelerate, guard, min_level):
    if d < 1 or d % 2 == 0:
        raise EvenModulus(f"modulus {d} must be odd")
    if max_level is None:
        max_level = default_max_level()
    terms, cert = compile_integrand(f, p, target + guard)
    w = int(min(target + guard, cert))
    if w < target:
        raise PrecisionExhausted(f"integrand known only mod p^{w}, target p^{target}")
    mod = p ** w
    skip = p if units_only else 0
    sums = []
    running = 0
    prev = None
    last_agree = None
    best = None
    for level in range(1, max_level + 1):
        lo = d * p ** (level - 1) if level > 1 else 0
        hi = d * p ** level
        running = (running + sum(t.lattice_sum(lo, hi, mod, alternate=True, skip_p=skip)
                                 for t in terms)) % mod
        sums.append(running)
        est = richardson(sums, p, mod) if accelerate else running
        if prev is not None:
            agree = _valuation_mod(est - prev, p, w)
            # two consecutive agreements guard against a chance coincidence
            stable = agree if last_agree is None else min(agree, last_agree)
            if last_agree is not None:
                best = stable if best is None else max(best, stable)
            if last_agree is not None and stable >= target and level >= min_level:
                return IntegralResult(PadicNumber.from_int(est, p, stable), stable, level)
            last_agree = agree
        prev = est
    raise PrecisionNotReached(max_level, target, best)


def integrate_fermionic_zp(f: IntegrandSpec, p: int, target: int, *, max_level=None,
                           accelerate=True, guard=GUARD_DIGITS, min_level=2) -> IntegralResult:
    """I_{-1}(f) = lim sum_{a < p^N} (-1)^a f(a)."""
    return _fermionic(f, p, 1, target, units_only=False, max_level=max_level,
                      accelerate=accelerate, guard=guard, min_level=min_level)


def integrate_fermionic_x(f: IntegrandSpec, d: int, p: int, target: int, *, max_level=None,
                          accelerate=True, guard=GUARD_DIGITS, min_level=2) -> IntegralResult:
    """Fermionic integral over X = lim Z/(d p^N)."""
    return _fermionic(f, p, d, target, units_only=False, max_level=max_level,
                      accelerate=accelerate, guard=guard, min_level=min_level)


def integrate_fermionic_x_units(f: IntegrandSpec, d: int, p: int, target: int, *,
                                max_level=None, accelerate=True, guard=GUARD_DIGITS,
                                min_level=2) -> IntegralResult:
    """Fermionic integral over the units X* (lifts with p | a are skipped)."""
    return _fermionic(f, p, d, target, units_only=True, max_level=max_level,
                      accelerate=accelerate, guard=guard, min_level=min_level)


def q_lattice_sum(f: IntegrandSpec, q_meas: QParam, level: int, *, d: int = 1,
                  precision: int = 20) -> PadicNumber:
    """[d p^N]_q^{-1} sum_{a < d p^N} f(a) q^a at a finite level N."""
    p = q_meas.prime
    num = lattice_partial_sum(f * QPower(q_meas, 1), p, level, d=d, precision=precision,
                              alternate=False)
    den = q_int(d * p ** level, q_meas.at_precision(precision))
    return num / den


def integrate_q(f: IntegrandSpec, q_meas: QParam, d: int, target: int, *, max_level=None,
                guard=GUARD_DIGITS) -> IntegralResult:
    """I_q(f) = lim [d p^N]_q^{-1} sum_{a < d p^N} f(a) q^a by level stabilization.

    Dividing by [d p^N]_q costs N digits per level, so sums are formed at
    precision target + guard + max_level.
    """
    if d < 1 or d % 2 == 0:
        raise EvenModulus(f"modulus {d} must be odd")
    if q_meas.backend != "padic" and q_meas.prime is None:
        raise DomainError("I_q needs a prime")
    if max_level is None:
        max_level = default_max_level()
    w = target + guard + max_level
    prev = None
    last_agree = None
    best = None
    for level in range(1, max_level + 1):
        est = q_lattice_sum(f, q_meas, level, d=d, precision=w)
        if prev is not None:
            agree = est.agreement(prev)
            if last_agree is not None:
                stable = min(agree, last_agree)
                best = stable if best is None else max(best, stable)
                if stable >= target:
                    n = int(min(stable, est.precision))
                    return IntegralResult(est.with_precision(n), n, level)
            last_agree = agree
        prev = est
    raise PrecisionNotReached(max_level, target, best)
