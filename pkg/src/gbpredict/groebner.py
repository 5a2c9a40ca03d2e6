"""Buchberger's algorithm under grevlex with the standard pair criteria.

Pair selection follows the normal strategy (grevlex-smallest lcm first,
ties broken by pair creation index).  The coprime-lcm criterion and a
Gebauer-Moeller style chain criterion are controlled by flags; output is
deterministic for a fixed input and options.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from .algebra import (
    DimensionError,
    Polynomial,
    grevlex_key,
    monomial_divides,
    monomial_lcm,
    monomial_mul,
    monomial_quotient,
    poly_add_scaled,
    poly_mul_term,
    zero_polynomial,
)


class BudgetExceededError(RuntimeError):
    """The configured pair budget ran out before the basis was complete."""

    def __init__(self, pairs_processed: int, reductions_to_zero: int):
        super().__init__(
            f"pair budget exhausted after {pairs_processed} pairs "
            f"({reductions_to_zero} zero reductions)"
        )
        self.pairs_processed = pairs_processed
        self.reductions_to_zero = reductions_to_zero


@dataclass(frozen=True)
class BuchbergerOptions:
    use_coprime_criterion: bool = True
    use_chain_criterion: bool = True
    pair_strategy: str = "normal"
    max_pairs: Optional[int] = None

    def __post_init__(self):
        if self.pair_strategy != "normal":
            raise ValueError(f"unknown pair strategy: {self.pair_strategy}")
        if self.max_pairs is not None and self.max_pairs <= 0:
            raise ValueError("max_pairs must be positive")


@dataclass(frozen=True)
class GroebnerResult:
    basis: tuple
    cardinality: int
    max_total_degree: int
    pairs_processed: int
    reductions_to_zero: int


def s_polynomial(f: Polynomial, g: Polynomial) -> Polynomial:
    """(L/lt(f))*f - (L/lt(g))*g for L = lcm of the leading monomials."""
    if f.is_zero or g.is_zero:
        raise ValueError("s_polynomial requires nonzero polynomials")
    if f.n != g.n:
        raise DimensionError(f"variable counts differ: {f.n} vs {g.n}")
    lcm = monomial_lcm(f.leading_monomial, g.leading_monomial)
    sf = poly_mul_term(
        f, 1 / f.leading_coeff, monomial_quotient(lcm, f.leading_monomial)
    )
    return poly_add_scaled(
        sf, -1 / g.leading_coeff, monomial_quotient(lcm, g.leading_monomial), g
    )


def _sorted_by_lm(G: Sequence[Polynomial]):
    return sorted(
        ((g.leading_monomial, g) for g in G if not g.is_zero),
        key=lambda t: grevlex_key(t[0]),
    )


def normal_form(f: Polynomial, G: Sequence[Polynomial]) -> Polynomial:
    """Full remainder of f modulo G: no term of the result is divisible by
    any leading monomial of G.

    Deterministic: the reducer is the element with the grevlex-smallest
    leading monomial among those dividing the current term, and the largest
    reducible term is rewritten first.
    """
    return _normal_form_sorted(f, _sorted_by_lm(G))


def _normal_form_sorted(f: Polynomial, lm_sorted) -> Polynomial:
    n = f.n
    tail = []  # irreducible terms, descending; always grevlex-above `work`
    work = f
    while not work.is_zero:
        mon, coeff = work.terms[0]
        reducer = None
        for lm, g in lm_sorted:
            if monomial_divides(lm, mon):
                reducer = g
                break
        if reducer is None:
            tail.append((mon, coeff))
            work = Polynomial(work.terms[1:], n)
        else:
            work = poly_add_scaled(
                work,
                -coeff / reducer.leading_coeff,
                monomial_quotient(mon, reducer.leading_monomial),
                reducer,
            )
    return Polynomial(tuple(tail), n)


@dataclass
class _PairQueue:
    """Min-heap over (grevlex key of pair lcm, creation index)."""

    heap: list = field(default_factory=list)
    alive: set = field(default_factory=set)
    created: int = 0

    def push(self, i: int, j: int, lcm):
        heapq.heappush(self.heap, (grevlex_key(lcm), self.created, i, j))
        self.alive.add((i, j))
        self.created += 1

    def discard(self, pair):
        self.alive.discard(pair)

    def pop(self):
        while self.heap:
            _, _, i, j = heapq.heappop(self.heap)
            if (i, j) in self.alive:
                self.alive.remove((i, j))
                return i, j
        return None

    def __len__(self):
        return len(self.alive)


def _update_pairs(G, lmG, queue, f, opts):
    """Add f to G, installing new pairs and pruning per the criteria."""
    lmf = f.leading_monomial
    t = len(G)

    if opts.use_chain_criterion:
        # Drop old pairs whose lcm is a proper multiple of lmf.
        for (i, j) in list(queue.alive):
            lcm_ij = monomial_lcm(lmG[i], lmG[j])
            if (
                monomial_divides(lmf, lcm_ij)
                and lcm_ij != monomial_lcm(lmG[i], lmf)
                and lcm_ij != monomial_lcm(lmG[j], lmf)
            ):
                queue.discard((i, j))

    candidates = list(range(t))
    if opts.use_chain_criterion:
        # Gebauer-Moeller: keep one representative per minimal new lcm.
        lcm_groups = {}
        for i in candidates:
            lcm_groups.setdefault(monomial_lcm(lmG[i], lmf), []).append(i)
        minimal = []
        for lcm in sorted(lcm_groups, key=grevlex_key):
            if all(not monomial_divides(other, lcm) for other in minimal):
                minimal.append(lcm)
        candidates = [min(lcm_groups[lcm]) for lcm in minimal]

    for i in sorted(candidates):
        lcm = monomial_lcm(lmG[i], lmf)
        if opts.use_coprime_criterion and lcm == monomial_mul(lmG[i], lmf):
            continue
        queue.push(i, t, lcm)

    G.append(f)
    lmG.append(lmf)


def buchberger(
    gens: Sequence[Polynomial], opts: Optional[BuchbergerOptions] = None
) -> GroebnerResult:
    """Reduced grevlex Groebner basis of the ideal generated by gens."""
    opts = opts or BuchbergerOptions()
    gens = list(gens)
    if not gens:
        raise ValueError("generator set must be nonempty")
    if any(g.is_zero for g in gens):
        raise ValueError("generators must be nonzero")
    n = gens[0].n
    if any(g.n != n for g in gens):
        raise DimensionError("generators must share the variable count")

    G: list = []
    lmG: list = []
    queue = _PairQueue()
    for f in gens:
        _update_pairs(G, lmG, queue, f.monic(), opts)

    pairs_processed = 0
    reductions_to_zero = 0
    lm_sorted = _sorted_by_lm(G)
    while True:
        pair = queue.pop()
        if pair is None:
            break
        if opts.max_pairs is not None and pairs_processed >= opts.max_pairs:
            raise BudgetExceededError(pairs_processed, reductions_to_zero)
        pairs_processed += 1
        i, j = pair
        r = _normal_form_sorted(s_polynomial(G[i], G[j]), lm_sorted)
        if r.is_zero:
            reductions_to_zero += 1
        else:
            _update_pairs(G, lmG, queue, r.monic(), opts)
            lm_sorted = _sorted_by_lm(G)

    basis = reduce_basis(G)
    size, max_deg = gb_metrics(basis)
    return GroebnerResult(
        basis=tuple(basis),
        cardinality=size,
        max_total_degree=max_deg,
        pairs_processed=pairs_processed,
        reductions_to_zero=reductions_to_zero,
    )


def reduce_basis(G: Sequence[Polynomial]) -> list:
    """Unique reduced basis from a Groebner basis: minimal, monic, each
    element fully reduced against the others; sorted ascending by lt."""
    ordered = [g.monic() for g in G if not g.is_zero]
    ordered.sort(key=lambda g: grevlex_key(g.leading_monomial))
    minimal = []
    for g in ordered:
        if not any(
            monomial_divides(h.leading_monomial, g.leading_monomial)
            for h in minimal
        ):
            minimal.append(g)
    reduced = []
    for i, g in enumerate(minimal):
        others = minimal[:i] + minimal[i + 1:]
        reduced.append(normal_form(g, others).monic())
    reduced.sort(key=lambda g: grevlex_key(g.leading_monomial))
    return reduced


def verify_groebner(G: Sequence[Polynomial]) -> bool:
    """Buchberger's criterion: every S-polynomial reduces to zero mod G."""
    lm_sorted = _sorted_by_lm(G)
    for i in range(len(G)):
        for j in range(i + 1, len(G)):
            s = s_polynomial(G[i], G[j])
            if not _normal_form_sorted(s, lm_sorted).is_zero:
                return False
    return True


def gb_metrics(basis: Sequence[Polynomial]):
    """(cardinality, max total degree) of a reduced basis."""
    return len(basis), max(g.max_term_degree() for g in basis)
