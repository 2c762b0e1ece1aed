from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from hhfermat.cyclotomic import CyclotomicField, cyclotomic_polynomial, cyc_inv, lcm, zeta


@pytest.mark.parametrize("L,coeffs", [
    (1, [-1, 1]),
    (2, [1, 1]),
    (3, [1, 1, 1]),
    (4, [1, 0, 1]),
    (6, [1, -1, 1]),
    (12, [1, 0, -1, 0, 1]),
])
def test_cyclotomic_polynomial(L, coeffs):
    assert cyclotomic_polynomial(L) == coeffs


def test_lcm():
    assert lcm(4, 6) == 12
    assert lcm(3) == 3


def test_root_relations():
    F = CyclotomicField(12)
    z = F.root(1)
    assert z ** 12 == F.one()
    assert z ** 6 == -F.one()
    assert F.zeta(4) == z ** 3
    assert F.zeta(3) ** 3 == F.one()
    assert sum((F.zeta(3, e) for e in range(3)), F.zero()) == F.zero()


def test_zeta_needs_divisor():
    with pytest.raises(ValueError):
        CyclotomicField(4).zeta(3)


def test_fields_are_cached():
    assert CyclotomicField(5) is CyclotomicField(5)


def test_example1_scalar():
    # (3/(zeta_3 - 1))^3 times (zeta_3 - 1)^3 is 27
    F = CyclotomicField(3)
    v = (3 * cyc_inv(zeta(F, 3) - 1)) ** 3
    assert v * (zeta(F, 3) - 1) ** 3 == F.rational(27)
    assert v == -F.rational(3) - 6 * F.root(1)


def test_sqrt3_in_q_zeta12():
    F = CyclotomicField(12)
    s = F.root(1) + F.root(11)
    assert s * s == F.rational(3)


def test_rational_value_and_complex():
    F = CyclotomicField(8)
    assert F.rational(Fraction(3, 4)).rational_value() == Fraction(3, 4)
    assert abs(F.root(2).to_complex() - 1j) < 1e-12
    with pytest.raises(ValueError):
        F.root(1).rational_value()


def test_json_roundtrip():
    F = CyclotomicField(12)
    x = F.root(5) * Fraction(-2, 7) + F.rational(1)
    assert F.from_json(x.to_json()) == x


def test_division_by_zero():
    F = CyclotomicField(3)
    with pytest.raises(ZeroDivisionError):
        F.zero().inverse()


coeffs = st.lists(st.fractions(min_value=-5, max_value=5, max_denominator=7), min_size=1, max_size=8)
orders = st.sampled_from([1, 3, 4, 5, 8, 12])


@settings(max_examples=60, deadline=None)
@given(orders, coeffs, coeffs, coeffs)
def test_field_axioms(L, a, b, c):
    F = CyclotomicField(L)
    x, y, w = F.from_coeffs(a), F.from_coeffs(b), F.from_coeffs(c)
    assert x + y == y + x
    assert x * y == y * x
    assert (x * y) * w == x * (y * w)
    assert x * (y + w) == x * y + x * w
    assert x - x == F.zero()


@settings(max_examples=60, deadline=None)
@given(orders, coeffs)
def test_inverse(L, a):
    F = CyclotomicField(L)
    x = F.from_coeffs(a)
    if x.is_zero():
        return
    assert x * x.inverse() == F.one()
    assert abs((x * x.inverse()).to_complex() - 1) < 1e-9


@settings(max_examples=40, deadline=None)
@given(orders, st.integers(-30, 30), st.integers(-30, 30))
def test_root_exponents_add(L, e, f):
    F = CyclotomicField(L)
    assert F.root(e) * F.root(f) == F.root(e + f)
    assert F.root(e).inverse() == F.root(-e)
