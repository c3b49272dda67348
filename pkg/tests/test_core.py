import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from thzcoexist.core import (
    BOLTZMANN,
    DecibelQuantity,
    DomainError,
    dbm_from_watts,
    power_sum_db,
    watts_from_dbm,
)

levels = st.floats(min_value=-300, max_value=100, allow_nan=False)


def test_dbm_from_watts_examples():
    assert dbm_from_watts(0.2).value == pytest.approx(23.0103, abs=5e-5)
    assert dbm_from_watts(1.0).value == pytest.approx(30.0)
    # k*dT*B for dT=0.1 K, B=200 MHz: 10*log10(2.76e-13) by hand = -125.5909
    assert dbm_from_watts(2.76e-16).value == pytest.approx(-125.59, abs=0.005)
    assert dbm_from_watts(1.0).absolute


@pytest.mark.parametrize("bad", [0.0, -1.0, float("nan"), float("inf")])
def test_dbm_from_watts_rejects(bad):
    with pytest.raises(DomainError):
        dbm_from_watts(bad)


def test_watts_from_dbm_examples():
    assert watts_from_dbm(DecibelQuantity.dbm(30.0)) == pytest.approx(1.0, rel=1e-12)
    assert watts_from_dbm(DecibelQuantity.dbm(0.0)) == pytest.approx(1e-3, rel=1e-12)
    assert watts_from_dbm(DecibelQuantity.dbm(23.01)) == pytest.approx(0.2, abs=1e-4)
    assert watts_from_dbm(dbm_from_watts(0.2)) == pytest.approx(0.2, rel=1e-12)


def test_watts_from_dbm_rejects_relative():
    with pytest.raises(TypeError):
        watts_from_dbm(DecibelQuantity.db(3.0))
    with pytest.raises(TypeError):
        watts_from_dbm(30.0)


def test_power_sum_examples():
    assert power_sum_db([DecibelQuantity.dbm(-100.0)]).value == pytest.approx(-100.0)
    assert power_sum_db([-100.0, -100.0]).value == pytest.approx(-96.99, abs=0.005)
    assert power_sum_db([-201.2] * 10).value == pytest.approx(-191.2, abs=1e-9)
    with pytest.raises(DomainError):
        power_sum_db([])
    with pytest.raises(TypeError):
        power_sum_db([DecibelQuantity.db(1.0)])


@given(st.lists(levels, min_size=1, max_size=20), st.randoms())
def test_power_sum_permutation_invariant(xs, rnd):
    shuffled = list(xs)
    rnd.shuffle(shuffled)
    assert power_sum_db(shuffled).value == pytest.approx(power_sum_db(xs).value, abs=1e-9)


@given(st.lists(levels, min_size=1, max_size=8), st.lists(levels, min_size=1, max_size=8))
def test_power_sum_associative(a, b):
    nested = power_sum_db([power_sum_db(a), power_sum_db(b)]).value
    assert nested == pytest.approx(power_sum_db(a + b).value, abs=1e-9)


@given(levels)
def test_dbm_watts_round_trip(x):
    assert dbm_from_watts(watts_from_dbm(DecibelQuantity.dbm(x))).value == pytest.approx(x, abs=1e-9)


def test_decibel_arithmetic_rules():
    a = DecibelQuantity.dbm(10.0)
    r = DecibelQuantity.db(3.0)
    assert (a + r) == DecibelQuantity.dbm(13.0)
    assert (a - r) == DecibelQuantity.dbm(7.0)
    assert (r + r) == DecibelQuantity.db(6.0)
    assert (a + 2.0) == DecibelQuantity.dbm(12.0)
    assert (a - DecibelQuantity.dbm(4.0)) == DecibelQuantity.db(6.0)
    with pytest.raises(TypeError):
        a + a
    with pytest.raises(TypeError):
        r - a
    assert str(DecibelQuantity.dbm(-201.23)) == "-201.2 dBm"


def test_boltzmann_is_the_rounded_value():
    assert BOLTZMANN == 1.38e-23
    assert math.log10(BOLTZMANN * 0.1 * 200e6 * 1e3) * 10 == pytest.approx(-125.5909, abs=1e-4)
