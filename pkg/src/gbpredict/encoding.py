"""Exponent-vector encodings and engineered features for binomial ideals.

The flat encoding concatenates, generator by generator, the lead and trail
exponent vectors (2*n*s integers in total); it is lossless and round-trips.
The feature vector summarizes generator degrees and adds the dimension and
degree of the variety, computed from the initial ideal of a reduced basis
via a Hilbert-series numerator recursion.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

from .algebra import Binomial, Exponent, grevlex_key
from .sampler import IdealSample

FEATURE_COLUMNS = ("min_deg", "max_deg", "mean_deg", "var_deg", "num_gens", "dim", "degree")


class MalformedEncodingError(ValueError):
    """A flat encoding does not describe a valid binomial ideal."""


class InconsistentHilbertDataError(ValueError):
    """Numerator and claimed dimension disagree."""


@dataclass(frozen=True)
class FeatureVector:
    min_deg: int
    max_deg: int
    mean_deg: float
    var_deg: float
    num_gens: int
    dim: int
    degree: int

    def as_row(self) -> tuple:
        return (self.min_deg, self.max_deg, self.mean_deg, self.var_deg,
                self.num_gens, self.dim, self.degree)


def canonicalize(sample: IdealSample) -> IdealSample:
    """Sort generators descending by (lead, trail) under grevlex; idempotent."""
    gens = sorted(
        sample.gens,
        key=lambda b: (grevlex_key(b.lead), grevlex_key(b.trail)),
        reverse=True,
    )
    return IdealSample(gens=tuple(gens), n=sample.n, model=sample.model, index=sample.index)


def encode_flat(sample: IdealSample, canonical: bool = False) -> tuple:
    """Generator-major concatenation of lead then trail exponents."""
    if canonical:
        sample = canonicalize(sample)
    out = []
    for g in sample.gens:
        out.extend(g.lead)
        out.extend(g.trail)
    return tuple(out)


def decode_flat(values: Sequence[int], n: int, s: int) -> IdealSample:
    """Inverse of encode_flat; validates shape and the lead > trail invariant."""
    values = tuple(values)
    if len(values) != 2 * n * s:
        raise MalformedEncodingError(
            f"expected {2 * n * s} values for n={n}, s={s}, got {len(values)}"
        )
    if any(v < 0 for v in values):
        raise MalformedEncodingError("exponents must be nonnegative")
    gens = []
    for i in range(s):
        block = values[2 * n * i: 2 * n * (i + 1)]
        lead, trail = block[:n], block[n:]
        if grevlex_key(lead) <= grevlex_key(trail):
            raise MalformedEncodingError(
                f"generator {i}: lead {lead} is not grevlex-greater than trail {trail}"
            )
        gens.append(Binomial(lead, trail))
    return IdealSample(gens=tuple(gens), n=n)


def euclidean_distance(u: Sequence[float], v: Sequence[float]) -> float:
    if len(u) != len(v):
        raise ValueError(f"length mismatch: {len(u)} vs {len(v)}")
    return math.sqrt(sum((a - b) ** 2 for a, b in zip(u, v)))


def degree_stats(sample: IdealSample):
    """(min, max, mean, population variance) of the generator degrees."""
    degs = [g.degree for g in sample.gens]
    mean = sum(degs) / len(degs)
    var = sum((d - mean) ** 2 for d in degs) / len(degs)
    return min(degs), max(degs), mean, var


def _minimalize(gens: Iterable[Exponent]) -> list:
    """Minimal generating set of the monomial ideal (no divisibilities)."""
    out = []
    for m in sorted(set(gens), key=sum):
        if not any(all(x <= y for x, y in zip(g, m)) for g in out):
            out.append(m)
    return out


def _supports(gens):
    return [frozenset(i for i, e in enumerate(m) if e > 0) for m in gens]


def krull_dimension(lead_monomials: Iterable[Exponent], n: int) -> int:
    """dim R/I for the monomial ideal I: n minus the size of a minimum
    hitting set of the generator supports (branch and bound)."""
    gens = _minimalize(lead_monomials)
    if not gens:
        return n
    supports = _supports(gens)
    if any(not s for s in supports):
        return -1  # a unit generator: R/I = 0
    best = n

    def cover(remaining, used):
        nonlocal best
        if used >= best:
            return
        if not remaining:
            best = used
            return
        # branch on each variable of the smallest uncovered support
        pivot = min(remaining, key=len)
        for v in sorted(pivot):
            rest = [s for s in remaining if v not in s]
            cover(rest, used + 1)

    cover(supports, 0)
    return n - best


def _poly_mul(a: Sequence[int], b: Sequence[int]) -> list:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _poly_add(a: Sequence[int], b: Sequence[int]) -> list:
    out = [0] * max(len(a), len(b))
    for i, x in enumerate(a):
        out[i] += x
    for i, x in enumerate(b):
        out[i] += x
    return out


def _trim(a: Sequence[int]) -> tuple:
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return tuple(a) if a else (0,)


@dataclass(frozen=True)
class HilbertNumerator:
    """Coefficients of N(t), where HS_{R/I}(t) = N(t) / (1-t)^n."""

    coeffs: tuple

    def at_one(self) -> int:
        return sum(self.coeffs)


def _pivot_variable(gens, n, heuristic: str = "most_frequent"):
    counts = [0] * n
    for m in gens:
        for i, e in enumerate(m):
            if e > 0:
                counts[i] += 1
    shared = [i for i in range(n) if counts[i] >= 2]
    if not shared:
        return None
    if heuristic == "most_frequent":
        return max(shared, key=lambda i: counts[i])
    if heuristic == "first":
        return shared[0]
    if heuristic == "least_frequent":
        return min(shared, key=lambda i: counts[i])
    raise ValueError(f"unknown pivot heuristic: {heuristic}")


def _numerator(gens, n, heuristic) -> list:
    gens = _minimalize(gens)
    if any(sum(m) == 0 for m in gens):
        return [0]  # unit ideal
    var = _pivot_variable(gens, n, heuristic)
    if var is None:
        # pairwise-coprime supports: N = prod (1 - t^deg)
        out = [1]
        for m in gens:
            factor = [0] * (sum(m) + 1)
            factor[0], factor[-1] = 1, -1
            out = _poly_mul(out, factor)
        return out
    e = min(m[var] for m in gens if m[var] > 0)
    pivot = tuple(e if i == var else 0 for i in range(n))
    # N(I) = N(I + (p)) + t^deg(p) * N(I : p)
    added = _numerator(gens + [pivot], n, heuristic)
    colon = _numerator(
        [tuple(x - e if i == var and x >= e else (0 if i == var else x)
               for i, x in enumerate(m)) for m in gens],
        n, heuristic,
    )
    shifted = [0] * e + list(colon)
    return _poly_add(added, shifted)


def hilbert_numerator(
    min_gens: Iterable[Exponent], n: int, pivot_heuristic: str = "most_frequent"
) -> HilbertNumerator:
    """Numerator of the Hilbert series of R/I by pivot recursion.

    The pivot is a power of the most frequently occurring variable, raised
    to the minimum positive exponent among generators containing it; the
    result is independent of that choice.
    """
    return HilbertNumerator(coeffs=_trim(_numerator(list(min_gens), n, pivot_heuristic)))


def hilbert_series_coeffs(numerator: HilbertNumerator, n: int, upto: int) -> list:
    """Hilbert function values of R/I for degrees 0..upto, by expanding
    N(t) / (1-t)^n as a power series."""
    out = []
    coeffs = numerator.coeffs
    for k in range(upto + 1):
        # coefficient of t^k in N(t) * sum_j C(j+n-1, n-1) t^j
        val = sum(
            coeffs[i] * math.comb(k - i + n - 1, n - 1)
            for i in range(min(k, len(coeffs) - 1) + 1)
        )
        out.append(val)
    return out


def variety_degree(numerator: HilbertNumerator, n: int, dim: int) -> int:
    """Q(1) after factoring N(t) = (1-t)^(n-dim) * Q(t) with Q(1) != 0."""
    if dim < 0:
        raise ValueError("variety_degree requires dim >= 0")
    q = list(numerator.coeffs)
    for _ in range(n - dim):
        if sum(q) != 0:
            raise InconsistentHilbertDataError(
                f"(1-t)^{n - dim} does not divide the numerator {numerator.coeffs}"
            )
        # synthetic division by (1 - t)
        out = []
        acc = 0
        for c in q[:-1]:
            acc += c
            out.append(acc)
        q = out if out else [0]
    return sum(q)


def compute_features(sample: IdealSample, basis_lead_monomials: Iterable[Exponent]) -> FeatureVector:
    """Dataset-C feature row for a sample whose reduced basis is known."""
    mn, mx, mean, var = degree_stats(sample)
    gens = _minimalize(basis_lead_monomials)
    dim = krull_dimension(gens, sample.n)
    if dim < 0:
        degree = 0
    else:
        degree = variety_degree(hilbert_numerator(gens, sample.n), sample.n, dim)
    return FeatureVector(
        min_deg=mn, max_deg=mx, mean_deg=mean, var_deg=var,
        num_gens=len(sample.gens), dim=dim, degree=degree,
    )
