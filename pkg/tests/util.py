"""Shared helpers for building polynomials and random test data."""

from fractions import Fraction
import random

from gbpredict.algebra import Polynomial, poly_add_scaled, poly_normalize, zero_polynomial


def poly(term_map, n):
    """Polynomial from {exponent tuple: coefficient}."""
    return poly_normalize([(m, Fraction(c)) for m, c in term_map.items()], n)


def poly_product(f: Polynomial, g: Polynomial) -> Polynomial:
    """Test-side product: sum of term-scaled copies of g."""
    acc = zero_polynomial(f.n)
    for mon, coeff in f.terms:
        acc = poly_add_scaled(acc, coeff, mon, g)
    return acc


def random_exponent(rng: random.Random, n: int, max_entry: int = 20):
    return tuple(rng.randint(0, max_entry) for _ in range(n))


def random_polynomial(rng: random.Random, n: int, max_terms: int = 5,
                      max_entry: int = 6):
    terms = []
    for _ in range(rng.randint(1, max_terms)):
        mon = tuple(rng.randint(0, max_entry) for _ in range(n))
        coeff = Fraction(rng.randint(-9, 9), rng.randint(1, 9))
        terms.append((mon, coeff))
    return poly_normalize(terms, n)
