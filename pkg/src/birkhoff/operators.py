"""Frequency data and the kernel/image calculus for the quadratic bracket.

With H2 = sum_j lambda_j x_j y_j, the operator D = {., H2} acts diagonally on
monomials:

    D(x^alpha y^beta) = <alpha - beta, lambda> x^alpha y^beta.

Three companions are defined termwise from that diagonal action:

* ``homological_operator``  -- D itself;
* ``resonant_projection``   -- A, keeping exactly the kernel terms
  (<lambda, beta - alpha> = 0);
* ``partial_inverse``       -- B, dividing non-kernel terms by the eigenvalue
  and killing kernel terms.

They satisfy AB = BA = AD = DA = 0, A^2 = A, DB = BD = I - A; these are the
identities the property tests exercise.  Resonance is decided by an exact
zero test in Q(i), never by a tolerance.
"""

from __future__ import annotations

from typing import Iterable, Sequence

from .errors import UsageError
from .scalars import GAUSSIAN_RING, GAUSSIAN_ZERO, CoefficientRing, GaussianRational
from .series import ExponentPair, PolySeries


class FreqVector:
    """Nonzero frequencies lambda_1..lambda_n in Q(i)."""

    __slots__ = ("entries",)

    def __init__(self, entries: Sequence[GaussianRational]):
        items = tuple(entries)
        if not items:
            raise UsageError("frequency vector must be non-empty")
        for j, value in enumerate(items):
            if not isinstance(value, GaussianRational):
                raise UsageError(
                    f"frequency {j + 1} must be a GaussianRational, got {type(value).__name__}"
                )
            if value.is_zero:
                raise UsageError(f"frequency {j + 1} is zero; all frequencies must be nonzero")
        self.entries = items

    @staticmethod
    def of(*values) -> "FreqVector":
        """Convenience constructor from ints/Fractions/GaussianRationals."""
        converted = []
        for v in values:
            if isinstance(v, GaussianRational):
                converted.append(v)
            else:
                converted.append(GaussianRational.of(v))
        return FreqVector(converted)

    @staticmethod
    def from_json(rows: Iterable) -> "FreqVector":
        return FreqVector([GaussianRational.from_json(row) for row in rows])

    @property
    def n(self) -> int:
        return len(self.entries)

    @property
    def is_real(self) -> bool:
        return all(v.is_real for v in self.entries)

    def eigenvalue(self, pair: ExponentPair) -> GaussianRational:
        """<alpha - beta, lambda> for the monomial x^alpha y^beta."""
        total = GAUSSIAN_ZERO
        for a, b, lam in zip(pair.alpha, pair.beta, self.entries):
            k = a - b
            if k:
                total = total + lam.scaled(k)
        return total

    def is_resonant(self, pair: ExponentPair) -> bool:
        return self.eigenvalue(pair).is_zero

    def quadratic_part(
        self, order: int, ring: CoefficientRing = GAUSSIAN_RING
    ) -> PolySeries:
        """The series sum_j lambda_j x_j y_j at the given truncation order."""
        n = self.n
        terms = {}
        for j, lam in enumerate(self.entries):
            alpha = tuple(1 if k == j else 0 for k in range(n))
            beta = alpha
            terms[ExponentPair(alpha, beta)] = ring.scale_by_gaussian(ring.one, lam)
        return PolySeries(n, order, ring, terms)

    def to_json(self) -> list[dict]:
        return [v.to_json() for v in self.entries]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FreqVector):
            return NotImplemented
        return other.entries == self.entries

    def __hash__(self) -> int:
        return hash(self.entries)

    def __repr__(self) -> str:
        return f"FreqVector({', '.join(str(v) for v in self.entries)})"


def _check_dimension(series: PolySeries, freq: FreqVector) -> None:
    if series.n != freq.n:
        raise UsageError(
            f"series has {series.n} degrees of freedom but frequency vector has {freq.n}"
        )


def homological_operator(series: PolySeries, freq: FreqVector) -> PolySeries:
    """D: multiply each monomial by its eigenvalue <alpha - beta, lambda>."""
    _check_dimension(series, freq)
    ring = series.ring
    out = {}
    for pair, value in series.terms.items():
        eig = freq.eigenvalue(pair)
        if eig.is_zero:
            continue
        out[pair] = ring.scale_by_gaussian(value, eig)
    return PolySeries(series.n, series.order, ring, out)


def resonant_projection(series: PolySeries, freq: FreqVector) -> PolySeries:
    """A: keep exactly the terms with eigenvalue zero."""
    _check_dimension(series, freq)
    return series.filter_terms(freq.is_resonant)


def partial_inverse(series: PolySeries, freq: FreqVector) -> PolySeries:
    """B: divide non-resonant terms by their eigenvalue, kill resonant ones."""
    _check_dimension(series, freq)
    ring = series.ring
    out = {}
    for pair, value in series.terms.items():
        eig = freq.eigenvalue(pair)
        if eig.is_zero:
            continue
        out[pair] = ring.divide_by_eigenvalue(value, eig, context=f"monomial {pair}")
    return PolySeries(series.n, series.order, ring, out)


def resonant_pairs(freq: FreqVector, order: int) -> list[ExponentPair]:
    """All non-trivial resonant exponent pairs of total degree <= order.

    Trivial means diagonal (alpha == beta): those are resonant for every
    frequency vector and are omitted.  Results are in canonical term order.
    """
    n = freq.n
    found = []

    def exponents(total: int, slots: int):
        if slots == 1:
            yield (total,)
            return
        for head in range(total + 1):
            for rest in exponents(total - head, slots - 1):
                yield (head,) + rest

    for degree in range(1, order + 1):
        for da in range(degree + 1):
            for alpha in exponents(da, n):
                for beta in exponents(degree - da, n):
                    if alpha == beta:
                        continue
                    pair = ExponentPair(alpha, beta)
                    if freq.is_resonant(pair):
                        found.append(pair)
    found.sort(key=lambda p: (p.degree, p.alpha, p.beta))
    return found
