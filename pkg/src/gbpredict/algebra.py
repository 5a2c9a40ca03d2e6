"""Exact sparse multivariate polynomial arithmetic over Q under grevlex.

Monomials are tuples of nonnegative integer exponents; variable 0 is the
greatest variable.  Polynomials keep their terms strictly descending under
the graded reverse-lexicographic order, so the leading term is terms[0].
All coefficient arithmetic uses Fraction and is exact.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence

Exponent = tuple  # tuple of nonnegative ints

_ALPHABET = "abcdefghijklmnopqrstuvwxyz"


class DimensionError(ValueError):
    """Operands belong to rings with different numbers of variables."""


def _check_dims(a: Exponent, b: Exponent) -> None:
    if len(a) != len(b):
        raise DimensionError(f"exponent lengths differ: {len(a)} vs {len(b)}")


def total_degree(a: Exponent) -> int:
    return sum(a)


def grevlex_key(a: Exponent):
    """Sort key compatible with grevlex: bigger key means larger monomial.

    Ties in total degree are broken by the rightmost differing exponent,
    where the monomial with the *smaller* entry there is the larger one.
    """
    return (sum(a), tuple(-e for e in reversed(a)))


def grevlex_compare(a: Exponent, b: Exponent) -> int:
    """Return -1, 0, or 1 as a is smaller than, equal to, or larger than b."""
    _check_dims(a, b)
    if a == b:
        return 0
    return 1 if grevlex_key(a) > grevlex_key(b) else -1


def monomial_divides(a: Exponent, b: Exponent) -> bool:
    _check_dims(a, b)
    return all(x <= y for x, y in zip(a, b))


def monomial_lcm(a: Exponent, b: Exponent) -> Exponent:
    _check_dims(a, b)
    return tuple(max(x, y) for x, y in zip(a, b))


def monomial_mul(a: Exponent, b: Exponent) -> Exponent:
    _check_dims(a, b)
    return tuple(x + y for x, y in zip(a, b))


def monomial_quotient(a: Exponent, b: Exponent) -> Exponent:
    """a / b, assuming b divides a."""
    _check_dims(a, b)
    q = tuple(x - y for x, y in zip(a, b))
    if any(e < 0 for e in q):
        raise ValueError(f"{b} does not divide {a}")
    return q


def default_var_names(n: int) -> list:
    """Trailing slice of the alphabet ending at z (v,w,x,y,z for n=5)."""
    if n <= 26:
        return list(_ALPHABET[26 - n:])
    return [f"x{i + 1}" for i in range(n)]


def monomial_str(mon: Exponent, names: Optional[Sequence[str]] = None) -> str:
    names = names or default_var_names(len(mon))
    factors = []
    for name, e in zip(names, mon):
        if e == 1:
            factors.append(name)
        elif e > 1:
            factors.append(f"{name}^{e}")
    return "*".join(factors) if factors else "1"


@dataclass(frozen=True)
class Polynomial:
    """Canonical polynomial: terms are (monomial, coeff) pairs, strictly
    descending under grevlex, no zero coefficients.  Build via poly_normalize
    unless the input is already canonical."""

    terms: tuple
    n: int

    @property
    def is_zero(self) -> bool:
        return not self.terms

    @property
    def leading_monomial(self) -> Exponent:
        return self.terms[0][0]

    @property
    def leading_coeff(self) -> Fraction:
        return self.terms[0][1]

    def max_term_degree(self) -> int:
        return max(sum(m) for m, _ in self.terms) if self.terms else 0

    def monic(self) -> "Polynomial":
        if self.is_zero:
            return self
        lc = self.leading_coeff
        if lc == 1:
            return self
        return Polynomial(tuple((m, c / lc) for m, c in self.terms), self.n)

    def monomials(self) -> tuple:
        return tuple(m for m, _ in self.terms)

    def __str__(self) -> str:
        if self.is_zero:
            return "0"
        parts = []
        for m, c in self.terms:
            mon = monomial_str(m)
            if c == 1:
                piece = mon
            elif c == -1:
                piece = f"-{mon}"
            elif c.denominator == 1:
                piece = f"{c.numerator}*{mon}"
            else:
                piece = f"({c})*{mon}"
            parts.append(piece)
        out = parts[0]
        for piece in parts[1:]:
            out += f" - {piece[1:]}" if piece.startswith("-") else f" + {piece}"
        return out


def zero_polynomial(n: int) -> Polynomial:
    return Polynomial((), n)


def poly_normalize(raw: Iterable, n: int) -> Polynomial:
    """Canonicalize a term sequence: sort descending, combine equal
    monomials, drop zeros.  Idempotent and insensitive to input order."""
    combined = {}
    for mon, coeff in raw:
        if len(mon) != n:
            raise DimensionError(f"term has {len(mon)} exponents, expected {n}")
        mon = tuple(mon)
        coeff = coeff if isinstance(coeff, Fraction) else Fraction(coeff)
        acc = combined.get(mon, 0) + coeff
        if acc == 0:
            combined.pop(mon, None)
        else:
            combined[mon] = acc
    ordered = sorted(combined.items(), key=lambda t: grevlex_key(t[0]), reverse=True)
    return Polynomial(tuple(ordered), n)


def poly_mul_term(f: Polynomial, c, m: Exponent) -> Polynomial:
    """c * x^m * f, exact.  Multiplying by a term preserves the term order."""
    c = c if isinstance(c, Fraction) else Fraction(c)
    if c == 0 or f.is_zero:
        return zero_polynomial(f.n)
    _check_dims(m, f.terms[0][0])
    return Polynomial(
        tuple((monomial_mul(mon, m), coeff * c) for mon, coeff in f.terms), f.n
    )


def poly_add_scaled(f: Polynomial, c, m: Exponent, g: Polynomial) -> Polynomial:
    """f + c * x^m * g by merging the two sorted term lists."""
    if f.n != g.n:
        raise DimensionError(f"variable counts differ: {f.n} vs {g.n}")
    c = c if isinstance(c, Fraction) else Fraction(c)
    if c == 0 or g.is_zero:
        return f
    if len(m) != g.n:
        raise DimensionError(f"multiplier has {len(m)} exponents, expected {g.n}")
    ft, gt = f.terms, g.terms
    out = []
    i = j = 0
    while i < len(ft) and j < len(gt):
        mf = ft[i][0]
        mg = monomial_mul(gt[j][0], m)
        if mf == mg:
            coeff = ft[i][1] + c * gt[j][1]
            if coeff != 0:
                out.append((mf, coeff))
            i += 1
            j += 1
        elif grevlex_key(mf) > grevlex_key(mg):
            out.append(ft[i])
            i += 1
        else:
            out.append((mg, c * gt[j][1]))
            j += 1
    out.extend(ft[i:])
    for mon, coeff in gt[j:]:
        out.append((monomial_mul(mon, m), c * coeff))
    return Polynomial(tuple(out), f.n)


def poly_sub(f: Polynomial, g: Polynomial) -> Polynomial:
    return poly_add_scaled(f, Fraction(-1), (0,) * f.n, g)


@dataclass(frozen=True)
class Binomial:
    """Difference of two monomials with unit coefficients: lead - trail."""

    lead: Exponent
    trail: Exponent

    def __post_init__(self):
        if grevlex_compare(self.lead, self.trail) <= 0:
            raise ValueError("lead must be strictly grevlex-greater than trail")

    @property
    def n(self) -> int:
        return len(self.lead)

    @property
    def degree(self) -> int:
        return sum(self.lead)

    def to_polynomial(self) -> Polynomial:
        return Polynomial(
            ((self.lead, Fraction(1)), (self.trail, Fraction(-1))), self.n
        )

    def __str__(self) -> str:
        return f"{monomial_str(self.lead)} - {monomial_str(self.trail)}"
