from fractions import Fraction

import pytest

from carlitzq import carlitz
from carlitzq.dirichlet import (
    distribution_rhs,
    gen_euler_closed,
    gen_euler_integral,
    omega_power,
    quadratic,
    trivial,
)
from carlitzq.errors import BadConductorMultiple, DomainError
from carlitzq.qcalc import QParam

Q6 = QParam(Fraction(6), 5)
# frozen from sympy evaluation of the finite character sum, chi = (./3), q = 6, x = 0
GEN_QUAD3 = [Fraction(-12, 31), Fraction(2580, 39091), Fraction(-20492796, 1815425131)]


@pytest.mark.parametrize("n", range(3))
def test_quadratic_oracle(n):
    assert gen_euler_closed(n, 0, Q6, quadratic(3)) == GEN_QUAD3[n]


@pytest.mark.parametrize("n", range(5))
def test_trivial_reduces_to_polynomials(n):
    for x in (0, 1, 2):
        assert gen_euler_closed(n, x, Q6, trivial()) == carlitz.euler_poly_q_closed(n, x, Q6)


CHARS = [trivial(), quadratic(3), omega_power(1, 5), omega_power(2, 5)]


@pytest.mark.parametrize("chi", CHARS, ids=lambda c: c.to_spec())
def test_closed_matches_integral(chi):
    qp = QParam(11, 5, 12)
    for n in range(5):
        assert gen_euler_closed(n, 0, qp, chi, 8) == gen_euler_integral(n, 0, qp, chi, 8)


@pytest.mark.parametrize("chi", [trivial(), quadratic(3)], ids=lambda c: c.to_spec())
def test_distribution_exact(chi):
    for F in (5 * chi.period, 15 * chi.period):
        for n in range(7):
            assert distribution_rhs(n, 1, Q6, chi, F) == gen_euler_closed(n, 1, Q6, chi)


def test_distribution_trivial_equals_plain_numbers():
    for n in range(7):
        assert distribution_rhs(n, 0, Q6, trivial(), 5) == carlitz.euler_q_closed(n, Q6)


@pytest.mark.parametrize("chi", CHARS, ids=lambda c: c.to_spec())
def test_distribution_padic(chi):
    qp = QParam(6, 5, 10)
    for F in (5 * chi.period, 15 * chi.period):
        for n in range(5):
            assert distribution_rhs(n, 0, qp, chi, F, 8) == gen_euler_closed(n, 0, qp, chi, 8)


def test_bad_F():
    with pytest.raises(BadConductorMultiple):
        distribution_rhs(1, 0, Q6, quadratic(3), 30)
    with pytest.raises(BadConductorMultiple):
        distribution_rhs(1, 0, Q6, quadratic(3), 5)


@pytest.mark.parametrize("chi", CHARS, ids=lambda c: c.to_spec())
def test_period_robustness(chi):
    qp = QParam(6, 5, 12)
    assert gen_euler_closed(3, 0, qp, chi, 8) == gen_euler_closed(3, 0, qp, chi, 8,
                                                                   period=3 * chi.period)
    with pytest.raises(DomainError):
        gen_euler_closed(3, 0, qp, chi, 8, period=2 * chi.period)
