import random
from fractions import Fraction

import pytest

from gbpredict.algebra import (
    Binomial,
    DimensionError,
    grevlex_compare,
    monomial_divides,
    monomial_lcm,
    monomial_mul,
    monomial_str,
    poly_add_scaled,
    poly_normalize,
    poly_sub,
    zero_polynomial,
)

from util import poly, poly_product, random_exponent, random_polynomial


class TestGrevlexCompare:
    def test_equal_degree_rightmost_rule(self):
        assert grevlex_compare((2, 0, 0), (1, 1, 0)) == 1
        assert grevlex_compare((1, 1, 1), (3, 0, 0)) == -1

    def test_degree_dominates(self):
        assert grevlex_compare((0, 0, 2), (1, 0, 0)) == 1

    def test_equality(self):
        assert grevlex_compare((1, 2, 3), (1, 2, 3)) == 0

    def test_dimension_error(self):
        with pytest.raises(DimensionError):
            grevlex_compare((1, 0), (1, 0, 0))

    def test_total_order_properties(self):
        rng = random.Random(11)
        for _ in range(300):
            n = rng.randint(1, 7)
            a, b, c = (random_exponent(rng, n) for _ in range(3))
            # antisymmetry
            assert grevlex_compare(a, b) == -grevlex_compare(b, a)
            # equality iff identical
            assert (grevlex_compare(a, b) == 0) == (a == b)
            # transitivity
            if grevlex_compare(a, b) >= 0 and grevlex_compare(b, c) >= 0:
                assert grevlex_compare(a, c) >= 0

    def test_multiplicative_compatibility(self):
        rng = random.Random(12)
        for _ in range(300):
            n = rng.randint(1, 7)
            a, b, c = (random_exponent(rng, n) for _ in range(3))
            if grevlex_compare(a, b) == 1:
                assert grevlex_compare(monomial_mul(a, c), monomial_mul(b, c)) == 1

    def test_degree_dominance_random(self):
        rng = random.Random(13)
        for _ in range(300):
            n = rng.randint(1, 7)
            a, b = random_exponent(rng, n), random_exponent(rng, n)
            if sum(a) > sum(b):
                assert grevlex_compare(a, b) == 1


class TestMonomialOps:
    def test_divides(self):
        assert monomial_divides((1, 0, 1), (2, 0, 1))
        assert not monomial_divides((0, 2, 0), (1, 1, 1))
        assert monomial_divides((0, 0, 0), (5, 7, 9))

    def test_lcm(self):
        assert monomial_lcm((2, 1, 0), (1, 3, 0)) == (2, 3, 0)
        assert monomial_lcm((2, 1), (2, 1)) == (2, 1)
        assert monomial_lcm((1, 0), (0, 1)) == (1, 1)

    def test_dimension_errors(self):
        with pytest.raises(DimensionError):
            monomial_divides((1,), (1, 2))
        with pytest.raises(DimensionError):
            monomial_lcm((1,), (1, 2))

    def test_monomial_str(self):
        assert monomial_str((2, 0, 2, 1, 2)) == "v^2*x^2*y*z^2"
        assert monomial_str((0, 0, 0)) == "1"
        assert monomial_str((1, 1, 1)) == "x*y*z"


class TestPolyNormalize:
    def test_cancellation_to_zero(self):
        f = poly_normalize([((1, 0), 1), ((1, 0), -1)], 2)
        assert f.is_zero

    def test_sorting(self):
        f = poly_normalize([((0, 1), -1), ((2, 0), 1)], 2)
        assert f.terms[0][0] == (2, 0)
        assert str(f) == "y^2 - z"

    def test_combining(self):
        f = poly_normalize([((1, 0), 1), ((1, 0), 1)], 2)
        assert f.terms == (((1, 0), Fraction(2)),)

    def test_idempotent_and_order_insensitive(self):
        rng = random.Random(21)
        for _ in range(100):
            n = rng.randint(1, 4)
            raw = [(random_exponent(rng, n, 5), Fraction(rng.randint(-5, 5)))
                   for _ in range(6)]
            f = poly_normalize(raw, n)
            rng.shuffle(raw)
            assert poly_normalize(raw, n) == f
            assert poly_normalize(f.terms, n) == f

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionError):
            poly_normalize([((1, 0, 0), 1)], 2)


class TestPolyAddScaled:
    def test_single_division_step(self):
        f = poly({(2, 1, 0): 1}, 3)            # x^2 y
        g = poly({(2, 0, 0): 1, (0, 1, 0): -1}, 3)  # x^2 - y
        out = poly_add_scaled(f, -1, (0, 1, 0), g)
        assert out == poly({(0, 2, 0): 1}, 3)  # y^2

    def test_zero_scale_is_identity(self):
        f = poly({(1, 0): 2, (0, 1): 3}, 2)
        g = poly({(1, 1): 7}, 2)
        assert poly_add_scaled(f, 0, (0, 0), g) is f

    def test_zero_plus_g(self):
        g = poly({(1, 0): 2, (0, 1): -5}, 2)
        assert poly_add_scaled(zero_polynomial(2), 1, (0, 0), g) == g

    def test_exact_arithmetic_roundtrip(self):
        rng = random.Random(31)
        for _ in range(200):
            n = rng.randint(1, 4)
            f = random_polynomial(rng, n)
            g = random_polynomial(rng, n)
            total = poly_add_scaled(f, 1, (0,) * n, g)
            assert poly_sub(total, g) == f

    def test_leading_term_of_product(self):
        rng = random.Random(32)
        for _ in range(200):
            n = rng.randint(1, 4)
            f = random_polynomial(rng, n)
            g = random_polynomial(rng, n)
            prod = poly_product(f, g)
            if prod.is_zero:
                continue
            assert prod.leading_monomial == monomial_mul(
                f.leading_monomial, g.leading_monomial
            )
            assert prod.leading_coeff == f.leading_coeff * g.leading_coeff


class TestBinomial:
    def test_ordering_enforced(self):
        with pytest.raises(ValueError):
            Binomial((1, 1, 0), (2, 0, 0))
        with pytest.raises(ValueError):
            Binomial((1, 0), (1, 0))

    def test_to_polynomial(self):
        b = Binomial((2, 0), (0, 1))
        f = b.to_polynomial()
        assert f.leading_monomial == (2, 0)
        assert f.terms[1] == ((0, 1), Fraction(-1))
