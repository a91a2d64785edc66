from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from carlitzq.errors import BackendMismatch, PrecisionExhausted
from carlitzq.padic_core import (
    PadicNumber,
    arithmetic,
    deserialize,
    legendre,
    padic_binomial,
    pexp,
    plog,
    serialize,
    teichmuller,
    teichmuller_int,
    vp,
)

P = 5
N = 8


def padic(r, p=P, n=N):
    return PadicNumber.from_rational(r, p, n)


rationals = st.fractions(max_denominator=10**4).filter(lambda r: r.denominator % P)


def test_half_digits():
    h = padic(Fraction(1, 2), n=3)
    assert h.digits == (3, 2, 2)
    assert h.valuation == 0


def test_valuation_and_digits_of_p():
    x = PadicNumber.from_int(5, 5, 4)
    assert x.valuation == 1
    assert x.digits == (1, 0, 0)
    assert x.relprec == 3


def test_vp_and_legendre():
    assert vp(Fraction(50, 3), 5) == 2
    assert vp(Fraction(3, 25), 5) == -2
    assert legendre(25, 5) == 6


def test_equality_is_congruence_at_min_precision():
    a = PadicNumber.from_int(1 + 5**4, 5, 8)
    b = PadicNumber.from_int(1, 5, 4)
    assert a == b
    assert a != PadicNumber.from_int(1, 5, 8)


def test_fraction_operand_is_rejected():
    with pytest.raises(BackendMismatch):
        padic(1) + Fraction(1, 2)


def test_with_precision_cannot_raise():
    with pytest.raises(PrecisionExhausted):
        padic(3, n=4).with_precision(6)


def test_division_by_p_lowers_valuation():
    x = padic(1) / 5
    assert x.valuation == -1
    assert x * 5 == padic(1)


def test_zero_power_is_exact_one():
    x = PadicNumber.from_int(25, 5, 10)
    assert (x ** 0).precision >= 10


@given(rationals, rationals)
def test_ring_axioms(a, b):
    x, y = padic(a), padic(b)
    assert x + y == padic(a + b)
    assert x * y == padic(a * b)
    assert x - y == padic(a - b)
    assert x * (x + y) == x * x + x * y


@given(rationals, rationals.filter(lambda r: r != 0 and vp(r, P) < 3))
def test_division_matches_rationals(a, b):
    assert padic(a) / padic(b) == padic(a / b, n=N - 2 * max(0, vp(b, P)))


@given(rationals)
def test_serialize_round_trip(a):
    x = padic(a)
    assert deserialize(serialize(x)) == x
    assert deserialize(serialize(a)) == a


def test_arithmetic_dispatch():
    assert arithmetic("add", Fraction(1, 2), Fraction(1, 3)) == Fraction(5, 6)
    with pytest.raises(BackendMismatch):
        arithmetic("mul", padic(1), Fraction(1))


# frozen: fixed point of x -> x^p starting from a
@pytest.mark.parametrize("a,p,n,expected", [(2, 5, 3, 57), (3, 5, 3, 68), (2, 7, 4, 1353),
                                              (3, 7, 2, 31)])
def test_teichmuller_oracle(a, p, n, expected):
    assert teichmuller_int(a, p, n) == expected
    assert teichmuller(a, p, n).reduce(n) == expected


@pytest.mark.parametrize("p", [5, 7])
def test_teichmuller_properties(p):
    n = 6
    for a in range(1, p ** 3):
        if a % p == 0:
            continue
        w = teichmuller(a, p, n)
        assert w ** (p - 1) == PadicNumber.one(p, n)
        assert w.reduce(1) == a % p
    assert teichmuller(2, p, n) * teichmuller(3, p, n) == teichmuller(6, p, n)


def test_log_of_six_oracle():
    # series sum (-1)^(k+1) 5^k / k reduced mod 5^6
    assert plog(padic(6, n=6)).reduce(6) == 1805


@given(st.integers(min_value=1, max_value=5**6))
def test_exp_log_round_trip(k):
    w = PadicNumber.from_int(5 * k, 5, 20)
    assert plog(pexp(w)) == w
    u = PadicNumber.from_int(1 + 5 * k, 5, 20)
    assert pexp(plog(u)) == u


def test_binomial():
    assert padic_binomial(Fraction(1, 2), 2) == Fraction(-1, 8)
    assert padic_binomial(-3, 2) == 6
    x = padic(Fraction(1, 2), n=12)
    assert padic_binomial(x, 2) == padic(Fraction(-1, 8), n=12)
