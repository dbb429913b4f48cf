from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from thetafan.errors import InputError
from thetafan.series import Series, WallFunction, series_multiply, wall_power


def mono(exp, order, coeff=1):
    """A term z^exp with base 0, as an offset term of a unit-based series."""
    return Series(2, order=order, terms={tuple(exp): coeff})


def one_plus(exp, order):
    return Series.one(2, order) + mono(exp, order)


def test_multiply_identity():
    b = one_plus((1, 0), 3) + mono((0, 2), 3, Fraction(5, 2))
    assert series_multiply(Series.one(2, 3), b) == b


def test_difference_of_squares():
    a = one_plus((1, 0), 2)
    b = Series.one(2, 2) - mono((1, 0), 2)
    prod = a * b
    assert prod == Series.one(2, 2) - mono((2, 0), 2)


def test_binomial_cube_truncates():
    a = one_plus((1, 0), 2)
    cube = a * a * a
    expect = Series.one(2, 2) + mono((1, 0), 2, 3) + mono((2, 0), 2, 3)
    assert cube == expect


def test_mismatched_orders_rejected():
    with pytest.raises(InputError):
        one_plus((1, 0), 2) * one_plus((1, 0), 3)


def test_canonical_form_drops_zeros():
    s = one_plus((1, 0), 2) - mono((1, 0), 2)
    assert s.terms == {(0, 0): Fraction(1)}


def test_series_json_sorted():
    s = mono((0, 1), 3, Fraction(1, 2)) + mono((1, 0), 3, -2)
    data = s.to_json()
    assert data == [{"exp": [0, 1], "num": 1, "den": 2},
                    {"exp": [1, 0], "num": -2, "den": 1}]


def test_wall_power_zero_exponent():
    f = WallFunction(2, (1, 0), [Fraction(1)])
    assert wall_power(f, 0, 4).is_one()


def test_wall_power_geometric_inverse():
    f = WallFunction(2, (1, 0), [Fraction(1)])
    inv = wall_power(f, -1, 3)
    expect = (Series.one(2, 3) - mono((1, 0), 3) + mono((2, 0), 3)
              - mono((3, 0), 3))
    assert inv == expect


def test_wall_power_square():
    f = WallFunction.from_binomial(2, (1, 0), 2, 2)
    assert f.unit_coeffs(2) == [Fraction(2), Fraction(1)]
    s = wall_power(f, 1, 2)
    assert s == Series.one(2, 2) + mono((1, 0), 2, 2) + mono((2, 0), 2)


def test_from_binomial_non_primitive_direction():
    f = WallFunction.from_binomial(2, (2, 2), 1, 8)
    s = f.to_series(8)
    assert s.coefficient((2, 2)) == 1
    assert s.coefficient((4, 4)) == 0
    assert s.coefficient((1, 1)) == 0


def test_from_single_term_spreads_to_primitive_grid():
    f = WallFunction.from_single_term(2, (2, 2), Fraction(-3, 2))
    assert f.n == (1, 1)
    assert f.unit_coeffs(4) == [Fraction(0), Fraction(-3, 2)]


@settings(max_examples=40, deadline=None)
@given(st.integers(-3, 3), st.integers(-3, 3))
def test_wall_power_additive_in_exponent(a, b):
    f = WallFunction(2, (1, 1), [Fraction(1), Fraction(-1, 2)])
    lhs = wall_power(f, a + b, 6)
    rhs = wall_power(f, a, 6) * wall_power(f, b, 6)
    assert lhs == rhs


_coeffs = st.lists(
    st.tuples(st.tuples(st.integers(0, 2), st.integers(0, 2)),
              st.fractions(max_denominator=6,
                           min_value=Fraction(-3), max_value=Fraction(3))),
    max_size=4)


def _series(pairs, order=3):
    s = Series(2, order=order)
    for exp, c in pairs:
        s = s + Series(2, order=order, terms={exp: c})
    return s


@settings(max_examples=40, deadline=None)
@given(_coeffs, _coeffs, _coeffs)
def test_ring_axioms(pa, pb, pc):
    a, b, c = _series(pa), _series(pb), _series(pc)
    assert a * b == b * a
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c


def test_rebase_and_exponents():
    s = Series.monomial(2, (2, 1), 4, Fraction(3)) + Series(
        2, base=(2, 1), order=4, terms={(1, 0): Fraction(-1)})
    r = s.rebased((1, 1))
    assert r.base == (1, 1)
    assert r.exponents() == s.exponents() == [(2, 1), (3, 1)]
    assert r.coefficient((3, 1)) == -1
    with pytest.raises(Exception):
        s.rebased((3, 1))
