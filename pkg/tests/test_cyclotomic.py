"""Cyclotomic integers: reduced power-basis arithmetic and numerics."""

import cmath

import pytest

from cyclodiff.config import current_limits
from cyclodiff.cyclotomic import (ComplexInterval, CycInt, CycNum, cyc_arith,
                                  cyc_lift, cyclotomic_polynomial, embed,
                                  galois, zeta_interval)
from cyclodiff.errors import (BoundExceeded, NotAMultiple, NotCoprime,
                              OrderMismatch)
from cyclodiff.intpoly import cyclotomic_polynomial_unbounded


def _close(a: CycInt, z: complex, eps=1e-12) -> bool:
    return abs(embed(a).midpoint() - z) < eps


def test_bounded_matches_unbounded():
    for n in (1, 2, 6, 12, 30, 100):
        assert cyclotomic_polynomial(n) == cyclotomic_polynomial_unbounded(n)


def test_roots_embed_on_the_unit_circle():
    for n in (1, 2, 3, 4, 5, 6, 7, 8, 9, 12, 30):
        for k in range(n):
            want = cmath.exp(2j * cmath.pi * k / n)
            assert _close(CycInt.root(n, k), want)


def test_minimal_polynomial_annihilates_the_root():
    for n in (3, 4, 5, 6, 8, 12, 15):
        z = CycInt.root(n)
        phi = cyclotomic_polynomial(n)
        acc = CycInt.zero(n)
        power = CycInt.integer(1, n)
        for c in phi.coeffs:
            acc = acc + power * c
            power = power * z
        assert acc.is_zero()


def test_root_sums_and_integers():
    for n in (2, 3, 6, 10):
        total = CycInt.zero(n)
        for k in range(n):
            total = total + CycInt.root(n, k)
        assert total.is_zero()
    assert CycInt.root(4, 2).as_integer() == -1
    assert CycInt.root(2, 1).as_integer() == -1
    assert CycInt.root(5, 0).as_integer() == 1
    assert CycInt.root(5, 1).as_integer() is None


def test_power_reduction_identity():
    # zeta_6^2 = zeta_6 - 1 in the reduced basis
    z = CycInt.root(6)
    assert z * z == CycInt.root(6, 2)
    assert z * z == z - CycInt.integer(1, 6)
    assert CycInt.root(4) * CycInt.root(4, 3) == CycInt.integer(1, 4)


def test_conjugate():
    for n in (5, 7, 12):
        z = CycInt.root(n, 1) + CycInt.root(n, 3) * 2
        assert z.conjugate() == galois(z, -1)
        mid = embed(z).midpoint()
        assert abs(embed(z.conjugate()).midpoint() - mid.conjugate()) < 1e-12
        prod = z * z.conjugate()
        assert abs(embed(prod).midpoint().imag) < 1e-12


def test_galois_action():
    z = CycInt.root(12)
    for k in (1, 5, 7, 11):
        assert galois(z, k) == CycInt.root(12, k)
    two = galois(z, 5) * galois(z, 5)
    assert two == CycInt.root(12, 10)
    with pytest.raises(NotCoprime):
        galois(z, 4)


def test_galois_is_multiplicative():
    a = CycInt.root(10, 1) + CycInt.integer(2, 10)
    b = CycInt.root(10, 3) - CycInt.integer(1, 10)
    assert galois(a * b, 3) == galois(a, 3) * galois(b, 3)
    assert galois(a + b, 3) == galois(a, 3) + galois(b, 3)


def test_lift():
    a = CycInt.root(3, 1)
    assert cyc_lift(a, 6) == CycInt.root(6, 2)
    assert cyc_lift(a, 12) == CycInt.root(12, 4)
    assert cyc_lift(CycInt.integer(5, 1), 8).as_integer() == 5
    with pytest.raises(NotAMultiple):
        cyc_lift(a, 8)


def test_cyc_arith_is_strict():
    a, b = CycInt.root(3), CycInt.root(4)
    with pytest.raises(OrderMismatch):
        cyc_arith("add", a, b)
    assert cyc_arith("mul", a, a) == CycInt.root(3, 2)
    assert cyc_arith("scalar_mul", a, 3) == a * 3
    with pytest.raises(TypeError):
        cyc_arith("scalar_mul", a, a)
    with pytest.raises(TypeError):
        cyc_arith("add", a, 1)


def test_order_bound_enforced():
    bound = current_limits().cyclotomic_n_max
    with pytest.raises(BoundExceeded):
        CycInt.root(bound + 1)


def test_cycnum():
    half = CycNum(CycInt.root(8), 2)
    assert (half + half).is_zero() is False
    two_halves = half.scaled_by(2)
    assert two_halves == CycNum(CycInt.root(8), 1)
    assert CycNum.of(3) == CycNum(CycInt.integer(3), 1)
    z = CycNum.of(CycInt.root(6))
    assert z.den == 1 and z.num == CycInt.root(6)


def test_intervals():
    iv = zeta_interval(7, 1)
    want = cmath.exp(2j * cmath.pi / 7)
    assert abs(iv.midpoint() - want) < 1e-15
    assert not iv.contains_zero()
    assert embed(CycInt.zero(9)).contains_zero()
    assert embed(CycInt.zero(9)).abs_upper() < 1e-30
    a = embed(CycInt.root(5))
    assert 1 - 1e-12 < a.abs_upper() < 1 + 1e-12
    total = a + ComplexInterval(1, 0)
    assert abs(total.midpoint() - (want := cmath.exp(2j * cmath.pi / 5) + 1)) < 1e-12
    assert abs((a * a).midpoint() - cmath.exp(4j * cmath.pi / 5)) < 1e-12
    assert abs((-a).midpoint() + a.midpoint()) < 1e-15
