from fractions import Fraction

import pytest

from unifkit.poly import Polynomial, RatFunc, partial_fractions, rational_roots

z = Polynomial.variable()


def test_degree_conventions():
    assert Polynomial().degree == -1
    assert Polynomial.const(3).degree == 0
    assert (z ** 4 - z).degree == 4


def test_trailing_zeros_normalized():
    assert Polynomial((1, 2, 0, 0)) == Polynomial((1, 2))


def test_ring_identities():
    p = 2 * z ** 2 - 3 * z + 1
    q = z - 5
    quo, rem = divmod(p, q)
    assert quo * q + rem == p
    assert rem.degree < q.degree


def test_gcd_is_monic_common_factor():
    p = (z - 1) * (z + 2)
    q = (z - 1) * z
    assert p.gcd(q) == z - 1


def test_shift_then_eval():
    p = z ** 2 + 1
    s = p.shift(Fraction(3))
    assert s.eval(Fraction(0)) == p.eval(Fraction(3))


def test_valuation_at_root():
    p = z ** 2 * (z - 1)
    assert p.valuation_at(Fraction(0)) == 2
    assert p.valuation_at(Fraction(1)) == 1
    assert p.valuation_at(Fraction(2)) == 0


def test_rational_roots():
    p = (2 * z - 1) ** 2 * (z + 3)
    roots, cofactor = rational_roots(p)
    assert roots == {Fraction(1, 2): 2, Fraction(-3): 1}
    assert cofactor.degree == 0


def test_ratfunc_reduction():
    f = RatFunc(z ** 2 - 1, z - 1)
    assert f == RatFunc(z + 1)
    assert f.den == Polynomial.const(1)


def test_ratfunc_denominator_is_monic():
    f = RatFunc(Polynomial.const(1), 2 * z)
    assert f.den.lc() == 1


def test_euler_derivative():
    # z d/dz of z^k is k z^k
    f = RatFunc(z ** 3)
    assert f.euler() == RatFunc(3 * z ** 3)


def test_valuations():
    f = RatFunc(z ** 2, z - 1)
    assert f.valuation(Fraction(0)) == 2
    assert f.valuation(Fraction(1)) == -1
    assert f.valuation_inf() == -1  # degree 2 over degree 1


def test_inverted_swaps_valuations():
    f = RatFunc(z ** 3 + z)
    assert f.inverted().valuation(Fraction(0)) == f.valuation_inf()


def test_negative_power():
    f = RatFunc(z)
    assert f ** -2 == RatFunc(Polynomial.const(1), z ** 2)


def test_zero_division_guard():
    with pytest.raises((ValueError, ZeroDivisionError)):
        RatFunc(z) / RatFunc(0)


def test_partial_fractions_reconstruction():
    f = RatFunc(z ** 3 + 2, z ** 2 * (z - 1))
    poly_part, parts = partial_fractions(f, [Fraction(0), Fraction(1)])
    rebuilt = RatFunc(poly_part)
    for x, terms in parts.items():
        for k, c in terms.items():
            rebuilt = rebuilt + RatFunc(Polynomial.const(c)) * (
                RatFunc(z - x) ** -k)
    assert rebuilt == f


def test_partial_fractions_rejects_hidden_pole():
    f = RatFunc(Polynomial.const(1), z - 1)
    with pytest.raises(ValueError):
        partial_fractions(f, [Fraction(0)])
