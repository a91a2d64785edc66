"""Dirichlet characters of odd period with values in the (p-1)-th roots of unity."""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

from .errors import DomainError, EvenModulus, NotMultiplicative, OrderNotDividing
from .padic_core import PadicNumber, teichmuller_int


@lru_cache(maxsize=None)
def primitive_root(p: int) -> int:
    phi = p - 1
    factors = [f for f in range(2, phi + 1) if phi % f == 0 and all(f % g for g in range(2, f))]
    for g in range(2, p):
        if all(pow(g, phi // f, p) != 1 for f in factors):
            return g
    return 1  # p = 2 is never used; keeps the function total


@lru_cache(maxsize=None)
def discrete_log_table(p: int) -> dict[int, int]:
    g = primitive_root(p)
    table = {}
    x = 1
    for k in range(p - 1):
        table[x] = k
        x = x * g % p
    return table


def jacobi(a: int, n: int) -> int:
    """Jacobi symbol (a/n) for odd positive n."""
    a %= n
    result = 1
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


@dataclass(frozen=True)
class DirichletCharacter:
    """chi(a) = zeta^exponents[a mod period], or 0 where the entry is None.

    ``zeta`` is a primitive ``order``-th root of unity.  Over a prime p it is
    realized as ``omega(g)^((p-1)/order)`` with g the least primitive root mod
    p; without a prime only orders 1 and 2 (values +-1) are allowed.
    """

    period: int
    order: int
    exponents: tuple
    prime: int | None = None
    label: str = ""

    def __post_init__(self):
        d, m, p = self.period, self.order, self.prime
        if d < 1 or d % 2 == 0:
            raise EvenModulus(f"period {d} must be odd")
        if len(self.exponents) != d:
            raise DomainError("exponent table must have one entry per residue")
        if p is None:
            if m not in (1, 2):
                raise OrderNotDividing(f"order {m} needs a prime to realize its values")
        elif (p - 1) % m:
            raise OrderNotDividing(f"order {m} does not divide p - 1 = {p - 1}")
        for a, e in enumerate(self.exponents):
            if (math.gcd(a, d) == 1) != (e is not None):
                raise NotMultiplicative(f"chi({a}) must vanish exactly on non-units")
        if self.exponents[1 % d] not in (0, None) or (d > 1 and self.exponents[1] != 0):
            raise NotMultiplicative("chi(1) must be 1")
        units = [a for a in range(d) if self.exponents[a] is not None]
        for a in units:
            for b in units:
                if (self.exponents[a] + self.exponents[b] - self.exponents[a * b % d]) % m:
                    raise NotMultiplicative(f"chi({a}*{b}) != chi({a})chi({b})")

    # evaluation

    def exponent(self, a: int):
        return self.exponents[a % self.period]

    def value(self, a: int, precision: int | None = None):
        """chi(a) as an int (orders 1, 2) or as a p-adic number at ``precision``."""
        e = self.exponent(a)
        if precision is None:
            if self.order > 2:
                raise DomainError("a precision is needed for characters of order > 2")
            if e is None:
                return 0
            return -1 if e % 2 else 1
        if self.prime is None:
            raise DomainError("character is not attached to a prime")
        if e is None:
            return PadicNumber.zero(self.prime, precision)
        return PadicNumber.from_int(self.root_of_unity(precision) ** e, self.prime, precision)

    __call__ = value

    def root_of_unity(self, precision: int) -> int:
        """Integer representative of zeta mod p^precision."""
        if self.order == 1:
            return 1
        if self.order == 2:
            return -1
        p = self.prime
        mod = p ** precision
        return pow(teichmuller_int(primitive_root(p), p, precision), (p - 1) // self.order, mod)

    def lattice_table(self, prime: int, precision: int) -> tuple[int, ...]:
        """Values mod prime^precision for residues 0..period-1."""
        if self.order > 2 and self.prime != prime:
            raise DomainError(f"character realized over {self.prime}, not {prime}")
        mod = prime ** precision
        if self.order <= 2:
            z = mod - 1
        else:
            z = self.root_of_unity(precision)
        powers = [pow(z, k, mod) for k in range(self.order)]
        return tuple(0 if e is None else powers[e % self.order] for e in self.exponents)

    # structure

    def is_trivial(self) -> bool:
        return all(e in (None, 0) for e in self.exponents)

    def at_prime(self, p: int) -> "DirichletCharacter":
        return DirichletCharacter(self.period, self.order, self.exponents, p, self.label)

    def extend(self, period: int) -> "DirichletCharacter":
        """The same character viewed at a multiple of its period (imprimitive)."""
        if period % self.period or period % 2 == 0:
            raise DomainError("new period must be an odd multiple of the old one")
        exps = tuple(
            self.exponents[a % self.period] if math.gcd(a, period) == 1 else None
            for a in range(period)
        )
        return _normalized(period, self.order, exps, self.prime, self.label)

    def conductor(self) -> int:
        d = self.period
        for f in sorted(f for f in range(1, d + 1) if d % f == 0):
            if all(
                self.exponents[a] % self.order == 0
                for a in range(1, d, f)
                if self.exponents[a] is not None
            ):
                return f
        return d

    def primitive(self) -> "DirichletCharacter":
        """The primitive character inducing this one."""
        f = self.conductor()
        d = self.period
        exps = []
        for r in range(f):
            if math.gcd(r, f) != 1:
                exps.append(None)
                continue
            b = next(b for b in range(r, d + f, f) if math.gcd(b, d) == 1)
            exps.append(self.exponents[b % d])
        return _normalized(f, self.order, tuple(exps), self.prime, self.label)

    def to_spec(self) -> str:
        return self.label or f"table:{self.period}:{self.order}"


def _normalized(period, order, exps, prime, label=""):
    g = order
    for e in exps:
        if e is not None:
            g = math.gcd(g, e % order)
    g = g or order
    new_order = order // g
    new_exps = tuple(None if e is None else (e % order) // g for e in exps)
    return DirichletCharacter(period, max(new_order, 1), new_exps, prime, label)


def trivial(d: int = 1, p: int | None = None) -> DirichletCharacter:
    exps = tuple(0 if math.gcd(a, d) == 1 else None for a in range(d))
    return DirichletCharacter(d, 1, exps, p, "trivial" if d == 1 else f"trivial:{d}")


def quadratic(d: int, p: int | None = None) -> DirichletCharacter:
    """The Jacobi-symbol character a -> (a/d); for prime d the quadratic character."""
    if d % 2 == 0:
        raise EvenModulus(f"period {d} must be odd")
    exps = tuple(
        None if math.gcd(a, d) != 1 else (0 if jacobi(a, d) == 1 else 1) for a in range(d)
    )
    return _normalized(d, 2, exps, p, f"quadratic:{d}")


def omega_power(j: int, p: int) -> DirichletCharacter:
    """omega^j: a -> omega(a)^j with period p."""
    logs = discrete_log_table(p)
    exps = tuple(None if a == 0 else j * logs[a] % (p - 1) for a in range(p))
    return _normalized(p, p - 1, exps, p, f"omega:{j}")


def from_table(d: int, exponents, order: int, p: int | None = None) -> DirichletCharacter:
    return DirichletCharacter(d, order, tuple(exponents), p, f"table:{d}:{order}")


def make_character(kind: str, p: int | None = None, **params) -> DirichletCharacter:
    """Build a character from a kind name and parameters.

    kinds: ``trivial`` (modulus), ``quadratic`` (modulus), ``omega_power``
    (j), ``table`` (modulus, exponents, order).
    """
    kind = kind.replace("-", "_")
    if kind == "trivial":
        return trivial(params.get("modulus", 1), p)
    if kind == "quadratic":
        return quadratic(params["modulus"], p)
    if kind in ("omega_power", "omega", "teichmuller_power"):
        if p is None:
            raise DomainError("omega powers need a prime")
        return omega_power(params["j"], p)
    if kind == "table":
        return from_table(params["modulus"], params["exponents"], params["order"], p)
    raise DomainError(f"unknown character kind {kind!r}")


def parse_character(text: str, p: int | None = None) -> DirichletCharacter:
    """Parse ``trivial``, ``trivial:3``, ``quadratic:3``, ``omega:2`` or
    ``table:d:m:e0,e1,...`` (``-`` marks a non-unit residue)."""
    parts = text.strip().split(":")
    kind = parts[0].replace("-", "_")
    if kind == "trivial":
        return trivial(int(parts[1]) if len(parts) > 1 else 1, p)
    if kind == "quadratic":
        return quadratic(int(parts[1]), p)
    if kind in ("omega", "omega_power"):
        return make_character("omega_power", p, j=int(parts[1]) if len(parts) > 1 else 1)
    if kind == "table":
        exps = [None if e in ("-", "") else int(e) for e in parts[3].split(",")]
        return from_table(int(parts[1]), exps, int(parts[2]), p)
    raise DomainError(f"cannot parse character {text!r}")


def twist(chi: DirichletCharacter, n: int, p: int | None = None) -> DirichletCharacter:
    """chi_n = chi * omega^(-n), with period lcm(period, p)."""
    p = p or chi.prime
    if p is None:
        raise DomainError("twisting by omega needs a prime")
    if chi.order > 2 and chi.prime not in (None, p):
        raise DomainError("character realized over a different prime")
    period = chi.period * p // math.gcd(chi.period, p)
    logs = discrete_log_table(p)
    scale = (p - 1) // chi.order
    exps = []
    for a in range(period):
        e = chi.exponents[a % chi.period]
        if e is None or a % p == 0:
            exps.append(None)
        else:
            exps.append((e * scale - n * logs[a % p]) % (p - 1))
    label = f"{chi.to_spec()}*omega^{-n}"
    return _normalized(period, p - 1, tuple(exps), p, label)
