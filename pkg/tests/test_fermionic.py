import pytest
from hypothesis import given, strategies as st

from carlitzq.characters import quadratic
from carlitzq.errors import EvenModulus, PrecisionNotReached
from carlitzq.fermionic import (
    Bracket,
    CharacterFactor,
    Const,
    QPower,
    integrate_fermionic_x,
    integrate_fermionic_x_units,
    integrate_fermionic_zp,
    integrate_q,
    lattice_partial_sum,
    richardson,
    shift,
)
from carlitzq.padic_core import PadicNumber
from carlitzq.qcalc import QParam

QP = QParam(6, 5, 14)


def test_constant_integrates_to_one():
    r = integrate_fermionic_zp(Const(1), 5, 8)
    assert r.value == 1
    assert r.stabilized_precision >= 8


def test_q_power_integral_is_two_over_one_plus_q():
    r = integrate_fermionic_zp(QPower(QP, 1), 5, 10)
    assert r.value == PadicNumber.from_rational(2, 5, 10) / 7


def test_plain_partial_sums_converge_slowly():
    f = QPower(QP, 1) * Bracket(QP, 0, 2)
    exact = integrate_fermionic_zp(f, 5, 10).value
    agreements = [lattice_partial_sum(f, 5, n, precision=12).agreement(exact) for n in (1, 2, 3, 4)]
    assert agreements == sorted(agreements)
    assert agreements[-1] < 10


def test_richardson_removes_geometric_error():
    p, mod = 5, 5 ** 12
    # S_N = I + c p^N + c' p^(2N)
    sums = [(7 + 3 * p ** n + 11 * p ** (2 * n)) % mod for n in range(1, 5)]
    assert richardson(sums, p, mod) == 7


def test_unaccelerated_run_hits_the_level_cap():
    f = QPower(QP, 1) * Bracket(QP, 0, 2)
    with pytest.raises(PrecisionNotReached) as info:
        integrate_fermionic_zp(f, 5, 10, max_level=5, accelerate=False)
    assert info.value.max_level == 5


def test_even_modulus_rejected():
    with pytest.raises(EvenModulus):
        integrate_fermionic_x(Const(1), 4, 5, 6)


def test_shift_composition():
    f = QPower(QP, 1) * Bracket(QP, 0, 3)
    for a in range(5):
        assert shift(shift(f, 1), 1).evaluate(a, 5, 10) == shift(f, 2).evaluate(a, 5, 10)
        assert shift(f, 0).evaluate(a, 5, 10) == f.evaluate(a, 5, 10)


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5, 6])
def test_shift_equation(n):
    chi = quadratic(3, 5)
    f = CharacterFactor(chi) * QPower(QP, 1) * Bracket(QP, 0, 2)
    base = integrate_fermionic_x(f, 3, 5, 8).value
    shifted = integrate_fermionic_x(shift(f, n), 3, 5, 8).value
    rhs = sum((2 * f.evaluate(i, 5, 10) * (-1) ** (n - 1 - i) for i in range(n)),
              PadicNumber.zero(5, 10))
    lhs = shifted + base if n % 2 else shifted - base
    assert lhs == rhs


def test_units_integral_of_one_is_zero():
    # lattice sums over X* with d = 1 cancel in pairs
    r = integrate_fermionic_x_units(Const(1), 1, 5, 6)
    assert r.value == 0


def test_q_integral_of_one():
    r = integrate_q(Const(1), QP, 1, 6)
    assert r.value == 1


@given(st.integers(min_value=0, max_value=40))
def test_evaluate_matches_direct_formula(a):
    f = QPower(QP, 1) * Bracket(QP, 0, 2)
    q = PadicNumber.from_int(6, 5, 12)
    expected = q ** a * ((1 - q ** a) / (1 - q)) ** 2
    assert f.evaluate(a, 5, 10) == expected
