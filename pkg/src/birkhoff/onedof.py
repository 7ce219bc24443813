"""Closed-form pipeline for one degree of freedom.

For n = 1 every non-diagonal monomial is non-resonant, so the normal form is
a power series in the single product w = x y.  This module computes it
without running the degree-by-degree recursion:

1. ``average`` projects a series onto its diagonal part, read as a series in
   w: the terms (xy)^a with a >= 2.
2. ``compute_S`` evaluates the invariant functional

       S[H] = sum_{m>=1} (-1)^{m-1} / (lambda^{m-1} m!) d_w^{m-1} <H_*^m>,

   where H_* is H minus its quadratic part.  S is invariant under formal
   symplectic changes of variables fixing the origin, which the property
   tests exercise by conjugating with random time-1 flows.
3. ``nf_from_S`` recovers the normal form nu(z) = lambda z + N_2 z^2 + ...
   by series reversion: the inverse function of nu is assembled from S and
   then reverted with the Lagrange-Buermann coefficients
   g_s = (1/s) [z^{s-1}] (z / nu(z))^s.

Two candidate assemblies of nu^{-1} from S are implemented:

* ``convention="proof"`` (default):  nu^{-1}(w) = w/lambda - (1/lambda) S(w/lambda)
* ``convention="stated"``:           nu^{-1}(w) = w/lambda + S(w/lambda)

The default is the one validated by exact agreement with the two other
pipelines; the alternative is kept for comparison and fails that agreement.
Under the default convention the result is additionally cross-checked, term
by term, against an independent partition-sum formula evaluated in rescaled
variables (lambda normalized to 1); any mismatch raises
``InternalCheckError`` with a full diagnostic.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Sequence

from .errors import InternalCheckError, UsageError
from .scalars import GAUSSIAN_RING, CoefficientRing, GaussianRational
from .series import ExponentPair, PolySeries

CONVENTIONS = ("proof", "stated")


class WSeries:
    """Truncated power series in the scalar variable w."""

    __slots__ = ("order", "ring", "coeffs")

    def __init__(
        self,
        order: int,
        ring: CoefficientRing = GAUSSIAN_RING,
        coeffs: dict[int, object] | None = None,
    ):
        if order < 0:
            raise UsageError(f"truncation order must be non-negative, got {order}")
        self.order = order
        self.ring = ring
        cleaned: dict[int, object] = {}
        if coeffs:
            for k, value in coeffs.items():
                if k < 0:
                    raise UsageError(f"negative w-power {k}")
                if k > order or ring.is_zero(value):
                    continue
                cleaned[k] = value
        self.coeffs = cleaned

    @staticmethod
    def zero(order: int, ring: CoefficientRing = GAUSSIAN_RING) -> "WSeries":
        return WSeries(order, ring)

    def _require_compatible(self, other: "WSeries") -> None:
        if not isinstance(other, WSeries):
            raise UsageError(f"expected a WSeries, got {type(other).__name__}")
        if other.order != self.order:
            raise UsageError(
                f"truncation order mismatch: {self.order} vs {other.order}; "
                "re-truncate explicitly with with_order()"
            )
        if other.ring is not self.ring and other.ring != self.ring:
            raise UsageError("coefficient ring mismatch")

    def __add__(self, other: "WSeries") -> "WSeries":
        self._require_compatible(other)
        merged = dict(self.coeffs)
        for k, value in other.coeffs.items():
            merged[k] = merged[k] + value if k in merged else value
        return WSeries(self.order, self.ring, merged)

    def __neg__(self) -> "WSeries":
        return WSeries(
            self.order, self.ring, {k: -v for k, v in self.coeffs.items()}
        )

    def __sub__(self, other: "WSeries") -> "WSeries":
        return self + (-other)

    def __mul__(self, other: "WSeries") -> "WSeries":
        self._require_compatible(other)
        out: dict[int, object] = {}
        for k1, v1 in self.coeffs.items():
            for k2, v2 in other.coeffs.items():
                k = k1 + k2
                if k > self.order:
                    continue
                piece = v1 * v2
                out[k] = out[k] + piece if k in out else piece
        return WSeries(self.order, self.ring, out)

    def scale(self, q: Fraction) -> "WSeries":
        return WSeries(
            self.order, self.ring,
            {k: self.ring.scale(v, q) for k, v in self.coeffs.items()},
        )

    def scale_by_gaussian(self, g: GaussianRational) -> "WSeries":
        return WSeries(
            self.order, self.ring,
            {k: self.ring.scale_by_gaussian(v, g) for k, v in self.coeffs.items()},
        )

    def scale_argument(self, g: GaussianRational) -> "WSeries":
        """Substitute w -> g w, i.e. c_k -> c_k g^k."""
        out = {}
        power = GaussianRational.of(1)
        current = 0
        for k in sorted(self.coeffs):
            while current < k:
                power = power * g
                current += 1
            out[k] = self.ring.scale_by_gaussian(self.coeffs[k], power)
        return WSeries(self.order, self.ring, out)

    def derivative(self) -> "WSeries":
        if self.order == 0:
            return WSeries(0, self.ring)
        return WSeries(
            self.order - 1,
            self.ring,
            {k - 1: self.ring.scale(v, Fraction(k)) for k, v in self.coeffs.items() if k >= 1},
        )

    def with_order(self, order: int) -> "WSeries":
        return WSeries(order, self.ring, dict(self.coeffs))

    def coefficient(self, k: int):
        return self.coeffs.get(k, self.ring.zero)

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    def min_degree(self) -> int | None:
        return min(self.coeffs) if self.coeffs else None

    def sorted_items(self) -> list[tuple[int, object]]:
        return sorted(self.coeffs.items())

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, WSeries):
            return NotImplemented
        return (
            other.order == self.order
            and (other.ring is self.ring or other.ring == self.ring)
            and other.coeffs == self.coeffs
        )

    def __hash__(self) -> int:
        return hash((self.order, tuple(sorted(self.coeffs))))

    def render(self) -> str:
        if self.is_zero:
            return "0"
        parts = []
        for k, value in self.sorted_items():
            body = "1" if k == 0 else ("w" if k == 1 else f"w^{k}")
            parts.append(f"{self.ring.render(value)} {body}")
        text = parts[0]
        for piece in parts[1:]:
            if piece.startswith("-") and not piece.startswith("(-"):
                text += f" - {piece[1:]}"
            else:
                text += f" + {piece}"
        return text

    def __repr__(self) -> str:
        return f"WSeries(order={self.order}, {self.render()})"

    def to_rows(self) -> list[list[str]]:
        return [[str(k), self.ring.render_plain(v)] for k, v in self.sorted_items()]


def average(series: PolySeries) -> WSeries:
    """Diagonal projection <G> = sum_{a>=2} G_{aa} w^a (one degree of freedom)."""
    if series.n != 1:
        raise UsageError(
            f"averaging is defined for one degree of freedom, got n={series.n}"
        )
    out = {}
    for pair, value in series.terms.items():
        a = pair.alpha[0]
        if pair.beta[0] == a and a >= 2:
            out[a] = out[a] + value if a in out else value
    return WSeries(series.order // 2, series.ring, out)


def _validate_onedof(hamiltonian: PolySeries, lam: GaussianRational) -> None:
    if hamiltonian.n != 1:
        raise UsageError(
            f"this pipeline needs one degree of freedom, got n={hamiltonian.n}"
        )
    if lam.is_zero:
        raise UsageError("the frequency lambda must be nonzero")
    for s in (0, 1):
        if not hamiltonian.grade(s).is_zero:
            raise UsageError(f"input has terms of degree {s}; degrees 0 and 1 must vanish")
    quad = hamiltonian.grade(2)
    expected = PolySeries.monomial(
        1, hamiltonian.order, (1,), (1,),
        hamiltonian.ring.scale_by_gaussian(hamiltonian.ring.one, lam),
        hamiltonian.ring,
    )
    if quad != expected:
        raise UsageError(
            "quadratic part must be exactly lambda x y; got "
            f"{quad.render()!r}, expected {expected.render()!r}"
        )


def compute_S(
    hamiltonian: PolySeries, lam: GaussianRational, wmax: int
) -> WSeries:
    """The invariant series S[H] through w^wmax, exactly.

    The input is treated as an exact polynomial: powers of its nonlinear
    part are formed at whatever working order each summand needs, regardless
    of the truncation order the input series was carried at.
    """
    _validate_onedof(hamiltonian, lam)
    if wmax < 1:
        raise UsageError(f"wmax must be at least 1, got {wmax}")
    ring = hamiltonian.ring
    result = WSeries.zero(wmax, ring)
    mmax = max(1, 2 * wmax - 2)
    working_order = 2 * (wmax + mmax - 1)
    tail = hamiltonian.filter_terms(lambda pair: pair.degree >= 3).with_order(
        working_order
    )
    if tail.is_zero:
        return result
    lam_inv = lam.inverse()
    power = tail
    lam_power = GaussianRational.of(1)
    for m in range(1, mmax + 1):
        piece = average(power).with_order(wmax + m - 1)
        for _ in range(m - 1):
            piece = piece.derivative()
        # piece now has order wmax
        piece = piece.scale(Fraction((-1) ** (m - 1), math.factorial(m)))
        piece = piece.scale_by_gaussian(lam_power)
        result = result + piece.with_order(wmax)
        if m < mmax:
            power = power * tail
            lam_power = lam_power * lam_inv
    return result


def is_linearizable(
    hamiltonian: PolySeries, lam: GaussianRational, wmax: int
) -> bool:
    """True iff S[H] vanishes identically through w^wmax."""
    return compute_S(hamiltonian, lam, wmax).is_zero


@dataclass(frozen=True)
class NuSeries:
    """nu(z) = lambda z + N_2 z^2 + ... + N_M z^M."""

    lam: GaussianRational
    order: int
    tail: tuple[tuple[int, GaussianRational], ...]

    @staticmethod
    def build(
        lam: GaussianRational, order: int, coeffs: dict[int, GaussianRational]
    ) -> "NuSeries":
        if lam.is_zero:
            raise UsageError("the linear coefficient lambda must be nonzero")
        if order < 1:
            raise UsageError(f"order must be at least 1, got {order}")
        items = []
        for k in sorted(coeffs):
            if k < 2:
                raise UsageError(f"tail coefficients start at z^2, got z^{k}")
            if k > order:
                continue
            value = coeffs[k]
            if not value.is_zero:
                items.append((k, value))
        return NuSeries(lam=lam, order=order, tail=tuple(items))

    def coefficient(self, k: int) -> GaussianRational:
        if k == 1:
            return self.lam
        for j, value in self.tail:
            if j == k:
                return value
        return GaussianRational.of(0)

    def as_wseries(self) -> WSeries:
        coeffs = {1: self.lam}
        for k, value in self.tail:
            coeffs[k] = value
        return WSeries(self.order, GAUSSIAN_RING, coeffs)

    def diagonal_series(self, order: int) -> PolySeries:
        """nu(x y) as a series in one degree of freedom, truncated at order."""
        terms = {}
        for k, value in ((1, self.lam),) + self.tail:
            if 2 * k > order:
                continue
            terms[ExponentPair((k,), (k,))] = value
        return PolySeries(1, order, GAUSSIAN_RING, terms)

    def rescaled(self) -> "NuSeries":
        """Divide through by lambda: the tilde-series with unit linear term."""
        inv = self.lam.inverse()
        return NuSeries.build(
            GaussianRational.of(1),
            self.order,
            {k: value * inv for k, value in self.tail},
        )

    def to_rows(self) -> list[list[str]]:
        return [[str(k), str(value)] for k, value in self.tail]


def invert_unit_series(
    coeffs: Sequence[GaussianRational], order: int
) -> list[GaussianRational]:
    """Coefficients of 1 / (a_0 + a_1 u + ...) through u^order; a_0 != 0."""
    series = list(coeffs) + [GaussianRational.of(0)] * (order + 1 - len(coeffs))
    if series[0].is_zero:
        raise UsageError("cannot invert a series with zero constant term")
    lead_inv = series[0].inverse()
    out = [lead_inv]
    for k in range(1, order + 1):
        total = GaussianRational.of(0)
        for i in range(1, k + 1):
            total = total + series[i] * out[k - i]
        out.append(-(lead_inv * total))
    return out


def revert_series(nu: NuSeries) -> WSeries:
    """The inverse function of nu as a series in w, to the same order.

    Uses the Lagrange-Buermann coefficients g_s = (1/s)[z^{s-1}](z/nu(z))^s.
    """
    return revert_wseries(nu.as_wseries())


def revert_wseries(series: WSeries) -> WSeries:
    """Reversion of a general series with zero constant and nonzero linear term."""
    if series.ring is not GAUSSIAN_RING and series.ring != GAUSSIAN_RING:
        raise UsageError("series reversion works over the numeric ring only")
    if not series.coefficient(0).is_zero:
        raise UsageError("cannot revert a series with a constant term")
    lam = series.coefficient(1)
    if lam.is_zero:
        raise UsageError("cannot revert a series with zero linear coefficient")
    order = series.order
    line = [series.coefficient(k + 1) for k in range(order)]
    base = invert_unit_series(line, order - 1)
    coeffs: dict[int, GaussianRational] = {}
    power = [GaussianRational.of(1)] + [GaussianRational.of(0)] * (order - 1)
    for s in range(1, order + 1):
        new_power = [GaussianRational.of(0)] * order
        for i, left in enumerate(power):
            if left.is_zero:
                continue
            for j, right in enumerate(base):
                if i + j >= order:
                    break
                new_power[i + j] = new_power[i + j] + left * right
        power = new_power
        coeffs[s] = power[s - 1].scaled(Fraction(1, s))
    return WSeries(order, GAUSSIAN_RING, coeffs)


def _partitions(total: int, largest: int | None = None) -> Iterator[tuple[int, ...]]:
    """Partitions of total into non-increasing parts >= 1."""
    if largest is None:
        largest = total
    if total == 0:
        yield ()
        return
    for head in range(min(total, largest), 0, -1):
        for rest in _partitions(total - head, head):
            yield (head,) + rest


def partition_normal_form(s_series: WSeries, m: int) -> GaussianRational:
    """Independent partition-sum value for N_m under unit linear frequency.

    N_m = sum over multisets {alpha_k} with sum (k-1) alpha_k = m - 1 of
    (m - 1 + |alpha|)! / (alpha! m!) * prod S_k^{alpha_k}.
    """
    if m < 2:
        raise UsageError(f"the partition formula starts at m=2, got m={m}")
    total = GaussianRational.of(0)
    for parts in _partitions(m - 1):
        multiplicity: dict[int, int] = {}
        for p in parts:
            k = p + 1
            multiplicity[k] = multiplicity.get(k, 0) + 1
        size = len(parts)
        weight = Fraction(math.factorial(m - 1 + size), math.factorial(m))
        product = GaussianRational.of(1)
        for k, count in multiplicity.items():
            weight /= math.factorial(count)
            coeff = s_series.coefficient(k)
            for _ in range(count):
                product = product * coeff
        if product.is_zero:
            continue
        total = total + product.scaled(weight)
    return total


def nf_from_S(
    s_series: WSeries, lam: GaussianRational, convention: str = "proof"
) -> NuSeries:
    """Recover nu from S by series reversion.

    Under the default convention the tail is cross-checked against the
    partition-sum formula in rescaled variables; a mismatch raises
    InternalCheckError.
    """
    if convention not in CONVENTIONS:
        raise UsageError(
            f"unknown convention {convention!r}; choose one of {CONVENTIONS}"
        )
    if s_series.ring is not GAUSSIAN_RING and s_series.ring != GAUSSIAN_RING:
        raise UsageError("nf_from_S works over the numeric ring only")
    if lam.is_zero:
        raise UsageError("the frequency lambda must be nonzero")
    order = s_series.order
    lam_inv = lam.inverse()
    shrunk = s_series.scale_argument(lam_inv)
    if convention == "proof":
        inverse_tail = shrunk.scale_by_gaussian(-lam_inv)
    else:
        inverse_tail = shrunk
    coeffs = {1: lam_inv}
    for k, value in inverse_tail.sorted_items():
        if k == 0:
            raise InternalCheckError("inverse series acquired a constant term")
        if k == 1:
            coeffs[1] = coeffs[1] + value
        else:
            coeffs[k] = value
    psi = WSeries(order, GAUSSIAN_RING, coeffs)
    nu_coeffs = revert_wseries(psi)
    lead = nu_coeffs.coefficient(1)
    if lead != lam:
        raise InternalCheckError(
            f"reversion produced linear coefficient {lead}, expected {lam}"
        )
    nu = NuSeries.build(
        lam, order, {k: v for k, v in nu_coeffs.sorted_items() if k >= 2}
    )
    if convention == "proof":
        rescaled_s = s_series.scale_by_gaussian(lam_inv)
        rescaled_nu = nu.rescaled()
        for m in range(2, order + 1):
            expected = partition_normal_form(rescaled_s, m)
            actual = rescaled_nu.coefficient(m)
            if expected != actual:
                raise InternalCheckError(
                    "partition cross-check failed at degree "
                    f"{m}: reversion gives {actual}, partition sum gives {expected}; "
                    f"S = {s_series.render()}, nu tail = {nu.to_rows()}"
                )
    return nu


@dataclass(frozen=True)
class OneDofResult:
    """Full output of the closed-form pipeline."""

    s_series: WSeries
    nu: NuSeries
    normal_form: PolySeries
    order: int
    convention: str


def onedof_normal_form(
    hamiltonian: PolySeries,
    lam: GaussianRational,
    convention: str = "proof",
) -> OneDofResult:
    """Normal form of a 1-DOF Hamiltonian through its truncation order."""
    _validate_onedof(hamiltonian, lam)
    order = hamiltonian.order
    wmax = max(1, order // 2)
    s_series = compute_S(hamiltonian, lam, wmax)
    nu = nf_from_S(s_series, lam, convention)
    normal_form = nu.diagonal_series(order)
    return OneDofResult(
        s_series=s_series,
        nu=nu,
        normal_form=normal_form,
        order=order,
        convention=convention,
    )
