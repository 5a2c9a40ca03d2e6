import itertools
import math
import random

import pytest

from gbpredict.algebra import Binomial
from gbpredict.encoding import (
    FeatureVector,
    InconsistentHilbertDataError,
    MalformedEncodingError,
    canonicalize,
    compute_features,
    decode_flat,
    degree_stats,
    encode_flat,
    euclidean_distance,
    hilbert_numerator,
    hilbert_series_coeffs,
    krull_dimension,
    variety_degree,
)
from gbpredict.sampler import IdealSample, RandomModel, sample_ideal

# Worked five-generator example in Q[v,w,x,y,z] and its exponent matrix.
WORKED_EXAMPLE_ROWS = [
    (0, 0, 7, 0, 8, 2, 0, 2, 1, 2),
    (0, 0, 13, 2, 0, 3, 3, 5, 0, 1),
    (6, 4, 1, 3, 0, 0, 3, 2, 4, 3),
    (0, 2, 5, 2, 2, 0, 1, 2, 1, 6),
    (3, 2, 0, 5, 1, 3, 1, 1, 3, 2),
]

# Printed 30-entry vectors for the three degree-7 ideals I, J, K.
V_I = (3, 3, 1, 1, 3, 3, 6, 1, 0, 2, 1, 4, 1, 5, 1, 4, 1, 2,
       0, 6, 1, 3, 2, 2, 6, 1, 0, 1, 3, 3)
V_J = (6, 0, 1, 3, 2, 2, 1, 3, 3, 1, 0, 6, 0, 7, 0, 0, 4, 3,
       4, 1, 2, 1, 1, 5, 1, 6, 0, 0, 3, 4)
V_K = (5, 2, 0, 0, 1, 6, 6, 1, 0, 2, 2, 3, 3, 4, 0, 3, 1, 3,
       0, 3, 4, 1, 0, 6, 3, 4, 0, 0, 7, 0)


def sample_from_pairs(pairs, n):
    return IdealSample(gens=tuple(Binomial(a, b) for a, b in pairs), n=n)


class TestCanonicalize:
    def test_sorts_descending_by_lead(self):
        g1 = Binomial((3, 0, 0), (0, 1, 0))
        g2 = Binomial((1, 1, 0), (0, 0, 1))
        sample = IdealSample(gens=(g2, g1), n=3)
        assert canonicalize(sample).gens == (g1, g2)

    def test_idempotent(self):
        model = RandomModel(n=4, d=5, s=6, mode="up_to_degree", seed=7)
        for i in range(30):
            once = canonicalize(sample_ideal(model, i))
            assert canonicalize(once) == once

    def test_tie_break_on_trail(self):
        lead = (2, 1, 0)
        a = Binomial(lead, (1, 1, 1))
        b = Binomial(lead, (0, 0, 3))
        sample = IdealSample(gens=(b, a), n=3)
        # (1,1,1) is grevlex-greater than (0,0,3), so a comes first
        assert canonicalize(sample).gens == (a, b)

    def test_encoding_stable_under_permutation(self):
        model = RandomModel(n=3, d=6, s=5, mode="up_to_degree", seed=8)
        rng = random.Random(8)
        for i in range(30):
            sample = sample_ideal(model, i)
            gens = list(sample.gens)
            rng.shuffle(gens)
            shuffled = IdealSample(gens=tuple(gens), n=3)
            assert encode_flat(sample, canonical=True) == encode_flat(
                shuffled, canonical=True
            )


class TestFlatEncoding:
    def test_worked_example_matrix(self):
        pairs = [(tuple(r[:5]), tuple(r[5:])) for r in WORKED_EXAMPLE_ROWS]
        sample = sample_from_pairs(pairs, 5)
        flat = encode_flat(sample)
        expected = tuple(itertools.chain.from_iterable(WORKED_EXAMPLE_ROWS))
        assert flat == expected
        assert decode_flat(expected, 5, 5) == sample

    def test_roundtrip_random(self):
        model = RandomModel(n=5, d=15, s=5, mode="up_to_degree", seed=9)
        for i in range(1000):
            sample = sample_ideal(model, i)
            flat = encode_flat(sample)
            back = decode_flat(flat, 5, 5)
            assert back.gens == sample.gens
            assert encode_flat(back) == flat

    def test_decode_errors(self):
        with pytest.raises(MalformedEncodingError):
            decode_flat([0] * 12, 3, 2)  # lead == trail
        with pytest.raises(MalformedEncodingError):
            decode_flat([1, 0, 0, 0, 0, 1], 3, 2)  # wrong length
        with pytest.raises(MalformedEncodingError):
            decode_flat([1, 0, -1, 0, 0, 0], 3, 1)  # negative exponent


class TestEuclideanDistance:
    def test_basics(self):
        assert euclidean_distance((1, 2), (1, 2)) == 0
        assert euclidean_distance((0, 0), (3, 4)) == 5
        with pytest.raises(ValueError):
            euclidean_distance((1,), (1, 2))

    def test_table_ordering(self):
        d_ik = euclidean_distance(V_I, V_K)
        d_jk = euclidean_distance(V_J, V_K)
        d_ij = euclidean_distance(V_I, V_J)
        assert d_ik < d_jk < d_ij


class TestDegreeStats:
    def test_homogeneous(self):
        model = RandomModel(n=5, d=15, s=5, mode="exact_degree", seed=10)
        assert degree_stats(sample_ideal(model, 0)) == (15, 15, 15.0, 0.0)

    def test_population_variance(self):
        pairs = [
            ((3, 0, 0), (0, 2, 1)),
            ((7, 0, 0), (0, 0, 7)),
            ((5, 0, 0), (1, 1, 3)),
        ]
        mn, mx, mean, var = degree_stats(sample_from_pairs(pairs, 3))
        assert (mn, mx, mean) == (3, 7, 5.0)
        assert var == pytest.approx(8 / 3)

    def test_single_generator(self):
        sample = sample_from_pairs([((4, 0), (0, 4))], 2)
        assert degree_stats(sample) == (4, 4, 4.0, 0.0)


def brute_force_dimension(gens, n):
    """Largest coordinate subset containing no generator support."""
    supports = [frozenset(i for i, e in enumerate(m) if e > 0) for m in gens]
    if not gens:
        return n
    if any(not s for s in supports):
        return -1
    best = -1
    for r in range(n, -1, -1):
        for subset in itertools.combinations(range(n), r):
            chosen = set(subset)
            if all(not s <= chosen for s in supports):
                return r
    return best


def random_monomial_ideal(rng, n, max_deg=6, max_gens=6):
    gens = []
    for _ in range(rng.randint(1, max_gens)):
        m = tuple(rng.randint(0, max_deg) for _ in range(n))
        if sum(m) > 0:
            gens.append(m)
    return gens or [(1,) * n]


class TestKrullDimension:
    def test_examples(self):
        assert krull_dimension([(1, 1)], 2) == 1
        assert krull_dimension([(1, 0, 0), (0, 1, 0)], 3) == 1
        assert krull_dimension([(2, 0, 0), (1, 1, 0), (0, 2, 0)], 3) == 1

    def test_extremes(self):
        assert krull_dimension([], 4) == 4
        assert krull_dimension([(0, 0, 0)], 3) == -1

    def test_against_subset_oracle(self):
        rng = random.Random(55)
        for _ in range(200):
            n = rng.randint(1, 5)
            gens = random_monomial_ideal(rng, n)
            assert krull_dimension(gens, n) == brute_force_dimension(gens, n)


def standard_monomial_counts(gens, n, upto):
    """Direct count of monomials outside the ideal, degree by degree."""
    counts = []
    for k in range(upto + 1):
        total = 0
        for m in itertools.combinations_with_replacement(range(n), k):
            e = [0] * n
            for v in m:
                e[v] += 1
            if not any(all(g[i] <= e[i] for i in range(n)) for g in gens):
                total += 1
        counts.append(total)
    return counts


class TestHilbertNumerator:
    def test_base_cases(self):
        assert hilbert_numerator([(2,)], 1).coeffs == (1, 0, -1)
        assert hilbert_numerator([(1, 0), (0, 1)], 2).coeffs == (1, -2, 1)
        assert hilbert_numerator([], 3).coeffs == (1,)

    def test_recursive_example(self):
        # (x^2, xy, y^2) in 3 variables: (1 + 2t)(1 - t)^2
        num = hilbert_numerator([(2, 0, 0), (1, 1, 0), (0, 2, 0)], 3)
        assert num.coeffs == (1, 0, -3, 2)
        assert hilbert_series_coeffs(num, 3, 6) == [1, 3, 3, 3, 3, 3, 3]

    def test_unit_ideal(self):
        assert hilbert_numerator([(0, 0)], 2).coeffs == (0,)

    def test_series_matches_direct_counts(self):
        rng = random.Random(66)
        for _ in range(60):
            n = rng.randint(1, 4)
            gens = random_monomial_ideal(rng, n)
            num = hilbert_numerator(gens, n)
            assert hilbert_series_coeffs(num, n, 10) == standard_monomial_counts(
                gens, n, 10
            )

    def test_pivot_invariance(self):
        rng = random.Random(67)
        for _ in range(40):
            n = rng.randint(2, 4)
            gens = random_monomial_ideal(rng, n)
            base = hilbert_numerator(gens, n).coeffs
            for heuristic in ("first", "least_frequent"):
                assert hilbert_numerator(gens, n, heuristic).coeffs == base


class TestVarietyDegree:
    def test_examples(self):
        assert variety_degree(hilbert_numerator([(2, 0)], 2), 2, 1) == 2
        num = hilbert_numerator([(2, 0, 0), (1, 1, 0), (0, 2, 0)], 3)
        assert variety_degree(num, 3, 1) == 3
        assert variety_degree(hilbert_numerator([], 3), 3, 3) == 1

    def test_inconsistent_dim_raises(self):
        num = hilbert_numerator([(2, 0)], 2)
        with pytest.raises(InconsistentHilbertDataError):
            variety_degree(num, 2, 0)  # (1-t)^2 does not divide 1 - t^2

    def test_divisibility_and_positivity(self):
        rng = random.Random(68)
        for _ in range(60):
            n = rng.randint(1, 4)
            gens = random_monomial_ideal(rng, n)
            dim = krull_dimension(gens, n)
            if dim < 0:
                continue
            num = hilbert_numerator(gens, n)
            assert variety_degree(num, n, dim) >= 1


class TestComputeFeatures:
    def test_unit_ideal_conventions(self):
        sample = sample_from_pairs([((1, 0), (0, 1))], 2)
        fv = compute_features(sample, [(0, 0)])
        assert fv.dim == -1 and fv.degree == 0

    def test_feature_row_shape(self):
        model = RandomModel(n=3, d=5, s=4, mode="up_to_degree", seed=12)
        sample = sample_ideal(model, 0)
        from gbpredict.groebner import buchberger

        basis = buchberger([g.to_polynomial() for g in sample.gens]).basis
        fv = compute_features(sample, [g.leading_monomial for g in basis])
        assert isinstance(fv, FeatureVector)
        assert fv.min_deg <= fv.mean_deg <= fv.max_deg
        assert fv.var_deg >= 0
        assert fv.num_gens == 4
        assert -1 <= fv.dim <= 3
