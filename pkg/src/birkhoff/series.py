"""Sparse truncated series in x_1..x_n, y_1..y_n with a Poisson bracket.

A :class:`PolySeries` is a map from exponent pairs to coefficient-ring values
together with a truncation order M: every operation discards terms of total
degree above M.  The truncation order is part of a series' identity; mixing
two different orders (or dimensions, or rings) is a usage error rather than a
silent re-truncation, so differential tests cannot lose coverage quietly.

The bracket is
    {F, G} = sum_j (dF/dy_j dG/dx_j - dF/dx_j dG/dy_j),
computed term-pair-wise with an early cutoff on pairs whose combined degree
minus 2 already exceeds the truncation order.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Callable, Iterable, Iterator, NamedTuple

from .errors import UsageError
from .scalars import CoefficientRing, GAUSSIAN_RING


class ExponentPair(NamedTuple):
    """Multi-index pair (alpha, beta) labelling the monomial x^alpha y^beta."""

    alpha: tuple[int, ...]
    beta: tuple[int, ...]

    @property
    def degree(self) -> int:
        return sum(self.alpha) + sum(self.beta)

    @property
    def is_diagonal(self) -> bool:
        return self.alpha == self.beta

    def delta(self) -> tuple[int, ...]:
        return tuple(b - a for a, b in zip(self.alpha, self.beta))


def make_pair(alpha: Iterable[int], beta: Iterable[int]) -> ExponentPair:
    a = tuple(int(v) for v in alpha)
    b = tuple(int(v) for v in beta)
    if len(a) != len(b):
        raise UsageError(f"alpha and beta have different lengths: {a} vs {b}")
    if a and min(a + b) < 0:
        raise UsageError(f"negative exponent in pair ({a}, {b})")
    return ExponentPair(a, b)


def _term_sort_key(pair: ExponentPair):
    return (pair.degree, pair.alpha, pair.beta)


class PolySeries:
    """Sparse graded series truncated at a fixed total-degree order."""

    __slots__ = ("n", "order", "ring", "terms")

    def __init__(
        self,
        n: int,
        order: int,
        ring: CoefficientRing,
        terms: dict[ExponentPair, object] | None = None,
    ):
        if n < 1:
            raise UsageError(f"dimension must be positive, got {n}")
        if order < 0:
            raise UsageError(f"truncation order must be non-negative, got {order}")
        self.n = n
        self.order = order
        self.ring = ring
        cleaned: dict[ExponentPair, object] = {}
        if terms:
            for pair, value in terms.items():
                if len(pair.alpha) != n:
                    raise UsageError(
                        f"exponent pair {pair} does not match dimension {n}"
                    )
                if pair.degree > order or ring.is_zero(value):
                    continue
                cleaned[pair] = value
        self.terms = cleaned

    @staticmethod
    def zero(n: int, order: int, ring: CoefficientRing = GAUSSIAN_RING) -> "PolySeries":
        return PolySeries(n, order, ring)

    @staticmethod
    def monomial(
        n: int,
        order: int,
        alpha: Iterable[int],
        beta: Iterable[int],
        value,
        ring: CoefficientRing = GAUSSIAN_RING,
    ) -> "PolySeries":
        return PolySeries(n, order, ring, {make_pair(alpha, beta): value})

    def _require_compatible(self, other: "PolySeries") -> None:
        if not isinstance(other, PolySeries):
            raise UsageError(f"expected a PolySeries, got {type(other).__name__}")
        if other.n != self.n:
            raise UsageError(f"dimension mismatch: {self.n} vs {other.n}")
        if other.order != self.order:
            raise UsageError(
                f"truncation order mismatch: {self.order} vs {other.order}; "
                "re-truncate explicitly with with_order()"
            )
        if other.ring is not self.ring and other.ring != self.ring:
            raise UsageError("coefficient ring mismatch")

    def __add__(self, other: "PolySeries") -> "PolySeries":
        self._require_compatible(other)
        merged = dict(self.terms)
        for pair, value in other.terms.items():
            if pair in merged:
                merged[pair] = merged[pair] + value
            else:
                merged[pair] = value
        return PolySeries(self.n, self.order, self.ring, merged)

    def __neg__(self) -> "PolySeries":
        return PolySeries(
            self.n, self.order, self.ring,
            {pair: -value for pair, value in self.terms.items()},
        )

    def __sub__(self, other: "PolySeries") -> "PolySeries":
        return self + (-other)

    def __mul__(self, other: "PolySeries") -> "PolySeries":
        self._require_compatible(other)
        product: dict[ExponentPair, object] = {}
        for p1, v1 in self.terms.items():
            d1 = p1.degree
            if d1 > self.order:
                continue
            for p2, v2 in other.terms.items():
                if d1 + p2.degree > self.order:
                    continue
                key = ExponentPair(
                    tuple(a + b for a, b in zip(p1.alpha, p2.alpha)),
                    tuple(a + b for a, b in zip(p1.beta, p2.beta)),
                )
                piece = v1 * v2
                if key in product:
                    product[key] = product[key] + piece
                else:
                    product[key] = piece
        return PolySeries(self.n, self.order, self.ring, product)

    def scale(self, q: Fraction) -> "PolySeries":
        if q == 0:
            return PolySeries(self.n, self.order, self.ring)
        return PolySeries(
            self.n, self.order, self.ring,
            {pair: self.ring.scale(value, q) for pair, value in self.terms.items()},
        )

    def map_terms(self, fn: Callable[[ExponentPair, object], object]) -> "PolySeries":
        """Apply fn to every (pair, value); drop results that are zero."""
        return PolySeries(
            self.n, self.order, self.ring,
            {pair: fn(pair, value) for pair, value in self.terms.items()},
        )

    def filter_terms(self, keep: Callable[[ExponentPair], bool]) -> "PolySeries":
        return PolySeries(
            self.n, self.order, self.ring,
            {pair: value for pair, value in self.terms.items() if keep(pair)},
        )

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def coefficient(self, pair: ExponentPair):
        return self.terms.get(pair, self.ring.zero)

    def grade(self, s: int) -> "PolySeries":
        """The homogeneous degree-s part, as a series of the same order."""
        return self.filter_terms(lambda pair: pair.degree == s)

    def grades(self) -> list[int]:
        return sorted({pair.degree for pair in self.terms})

    def min_degree(self) -> int | None:
        if not self.terms:
            return None
        return min(pair.degree for pair in self.terms)

    def with_order(self, order: int) -> "PolySeries":
        """Explicit re-truncation (or headroom extension) to a new order."""
        return PolySeries(self.n, order, self.ring, dict(self.terms))

    def poisson(self, other: "PolySeries") -> "PolySeries":
        self._require_compatible(other)
        result: dict[ExponentPair, object] = {}
        for p1, v1 in self.terms.items():
            d1 = p1.degree
            # combined bracket degree is d1 + d2 - 2
            if d1 - 2 > self.order:
                continue
            for p2, v2 in other.terms.items():
                if d1 + p2.degree - 2 > self.order:
                    continue
                base = None
                for j in range(self.n):
                    factor = p1.beta[j] * p2.alpha[j] - p1.alpha[j] * p2.beta[j]
                    if factor == 0:
                        continue
                    key = ExponentPair(
                        tuple(
                            a + b - (1 if k == j else 0)
                            for k, (a, b) in enumerate(zip(p1.alpha, p2.alpha))
                        ),
                        tuple(
                            a + b - (1 if k == j else 0)
                            for k, (a, b) in enumerate(zip(p1.beta, p2.beta))
                        ),
                    )
                    if base is None:
                        base = v1 * v2
                    piece = self.ring.scale(base, Fraction(factor))
                    if key in result:
                        result[key] = result[key] + piece
                    else:
                        result[key] = piece
        return PolySeries(self.n, self.order, self.ring, result)

    def sorted_terms(self) -> list[tuple[ExponentPair, object]]:
        return sorted(self.terms.items(), key=lambda item: _term_sort_key(item[0]))

    def __iter__(self) -> Iterator[tuple[ExponentPair, object]]:
        return iter(self.sorted_terms())

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PolySeries):
            return NotImplemented
        return (
            other.n == self.n
            and other.order == self.order
            and (other.ring is self.ring or other.ring == self.ring)
            and other.terms == self.terms
        )

    def __hash__(self) -> int:
        return hash((self.n, self.order, tuple(sorted(self.terms.keys()))))

    def _monomial_text(self, pair: ExponentPair) -> str:
        pieces = []
        for j, power in enumerate(pair.alpha):
            if power == 1:
                pieces.append(f"x{j + 1}")
            elif power > 1:
                pieces.append(f"x{j + 1}^{power}")
        for j, power in enumerate(pair.beta):
            if power == 1:
                pieces.append(f"y{j + 1}")
            elif power > 1:
                pieces.append(f"y{j + 1}^{power}")
        return " ".join(pieces)

    def render(self) -> str:
        """Canonical text form: graded-lex term order, explicit coefficients."""
        if self.is_zero:
            return "0"
        parts = []
        for pair, value in self.sorted_terms():
            coeff = self.ring.render(value)
            body = self._monomial_text(pair)
            parts.append(f"{coeff} {body}".strip())
        text = parts[0]
        for piece in parts[1:]:
            if piece.startswith("-") and not piece.startswith("(-"):
                text += f" - {piece[1:]}"
            else:
                text += f" + {piece}"
        return text

    def __repr__(self) -> str:
        return f"PolySeries(n={self.n}, order={self.order}, {self.render()})"

    def to_json_terms(self) -> list[dict]:
        rows = []
        for pair, value in self.sorted_terms():
            rows.append(
                {
                    "alpha": list(pair.alpha),
                    "beta": list(pair.beta),
                    "coeff": self.ring.value_to_json(value),
                }
            )
        return rows


def from_json_terms(
    n: int,
    order: int,
    rows: Iterable[dict],
    ring: CoefficientRing = GAUSSIAN_RING,
) -> PolySeries:
    """Build a numeric series from a list of {"alpha","beta","coeff"} rows.

    Duplicate exponent pairs are summed.
    """
    from .scalars import GaussianRational

    total = PolySeries.zero(n, order, ring)
    acc: dict[ExponentPair, object] = {}
    for row in rows:
        pair = make_pair(row["alpha"], row["beta"])
        value = GaussianRational.from_json(row["coeff"])
        if pair in acc:
            acc[pair] = acc[pair] + value
        else:
            acc[pair] = value
    return total + PolySeries(n, order, ring, acc)
