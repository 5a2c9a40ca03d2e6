"""Random binomial-ideal models with reproducible, index-keyed sampling.

Monomials of a fixed total degree are drawn uniformly by combinatorial
unranking (stars and bars), so every draw is a pure function of the model
seed and the sample index.  The per-sample stream is derived splitmix-style,
which makes generation bit-identical regardless of worker count.
"""

from __future__ import annotations

from bisect import bisect_right
from dataclasses import dataclass
from functools import lru_cache
from math import comb
from typing import Optional

from .algebra import Binomial, Exponent, grevlex_compare

_MASK = (1 << 64) - 1
_GOLDEN = 0x9E3779B97F4A7C15

EXACT_DEGREE = "exact_degree"
UP_TO_DEGREE = "up_to_degree"
MODES = (EXACT_DEGREE, UP_TO_DEGREE)


def _mix(z: int) -> int:
    z &= _MASK
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK
    return z ^ (z >> 31)


class SplitMix64:
    """64-bit splitmix generator; deterministic and platform-independent."""

    def __init__(self, seed: int):
        self._state = seed & _MASK

    def next_uint64(self) -> int:
        self._state = (self._state + _GOLDEN) & _MASK
        return _mix(self._state)

    def below(self, bound: int) -> int:
        """Uniform integer in [0, bound) via rejection sampling."""
        if bound <= 0:
            raise ValueError("bound must be positive")
        limit = (1 << 64) - ((1 << 64) % bound)
        while True:
            r = self.next_uint64()
            if r < limit:
                return r % bound


def stream_rng(seed: int, index: int) -> SplitMix64:
    """Independent generator for sample `index` of a run seeded by `seed`."""
    return SplitMix64(_mix((seed & _MASK) ^ _mix((index + 1) * _GOLDEN)))


@dataclass(frozen=True)
class RandomModel:
    n: int
    d: int
    s: int
    mode: str
    seed: int

    def __post_init__(self):
        if self.n < 1 or self.d < 1 or self.s < 1:
            raise ValueError("n, d, and s must all be at least 1")
        if self.mode not in MODES:
            raise ValueError(f"mode must be one of {MODES}, got {self.mode!r}")


@dataclass(frozen=True)
class IdealSample:
    gens: tuple  # tuple of Binomial
    n: int
    model: Optional[RandomModel] = None
    index: Optional[int] = None


def count_monomials(n: int, k: int) -> int:
    """Number of monomials in n variables of total degree exactly k."""
    if n < 1 or k < 0:
        raise ValueError("need n >= 1 and k >= 0")
    return comb(k + n - 1, n - 1)


def unrank_monomial(n: int, k: int, r: int) -> Exponent:
    """The r-th degree-k exponent vector in descending lexicographic order,
    from (k,0,...,0) down to (0,...,0,k)."""
    total = count_monomials(n, k)
    if not 0 <= r < total:
        raise ValueError(f"rank {r} out of range [0, {total})")
    out = []
    rem = k
    for pos in range(n - 1):
        vars_left = n - pos - 1
        for e in range(rem, -1, -1):
            c = count_monomials(vars_left, rem - e)
            if r < c:
                out.append(e)
                rem -= e
                break
            r -= c
    out.append(rem)
    return tuple(out)


@lru_cache(maxsize=None)
def _degree_cumulative(n: int, d: int) -> tuple:
    """Cumulative counts of monomials of degree 1..d (constant excluded)."""
    acc, out = 0, []
    for k in range(1, d + 1):
        acc += count_monomials(n, k)
        out.append(acc)
    return tuple(out)


def sample_monomial(model: RandomModel, rng: SplitMix64) -> Exponent:
    """One uniform draw: over degree-d monomials in exact mode, over all
    monomials of degree 1..d in up-to mode."""
    if model.mode == EXACT_DEGREE:
        return unrank_monomial(model.n, model.d, rng.below(count_monomials(model.n, model.d)))
    cum = _degree_cumulative(model.n, model.d)
    r = rng.below(cum[-1])
    k = bisect_right(cum, r)
    offset = r - (cum[k - 1] if k > 0 else 0)
    return unrank_monomial(model.n, k + 1, offset)


def sample_ideal(model: RandomModel, index: int) -> IdealSample:
    """The `index`-th sample of the model: s binomials, each a difference of
    two distinct uniform monomials, stored lead-first under grevlex."""
    rng = stream_rng(model.seed, index)
    gens = []
    for _ in range(model.s):
        a = sample_monomial(model, rng)
        b = sample_monomial(model, rng)
        while b == a:
            b = sample_monomial(model, rng)
        if grevlex_compare(a, b) < 0:
            a, b = b, a
        gens.append(Binomial(a, b))
    return IdealSample(gens=tuple(gens), n=model.n, model=model, index=index)
