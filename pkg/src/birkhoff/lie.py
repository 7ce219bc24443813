"""Degree-by-degree normalization driven by the homological equation.

Given H = H2 + H3 + H4 + ... with semisimple quadratic part
H2 = sum_j lambda_j x_j y_j, the pipeline builds for each degree m >= 3 a
right-hand side Phi_m collecting every contribution of degree m produced by
the already-chosen generator parts, then splits it:

    N_m = A Phi_m        (resonant part, kept in the normal form)
    F_m = B Phi_m        (generator part, removing the rest)

The recursion for Phi_m has two groups, both summing over ordered
compositions with parts >= 3 and weights 1/k!:

  group 1 (+):  nested brackets {F_{j_1}, {..., {F_{j_k}, H_j}..}} over
                j_1 + .. + j_k + j = m + 2k, for k = 1 .. m-3;
  group 2 (-):  nested brackets {F_{j_1}, {..., {F_{j_{k-1}}, R_{j_k}}..}}
                over j_1 + .. + j_k = m + 2(k-1), for k = 2 .. m-2,

where the innermost slot R_j of group 2 depends on the mode:

* ``kernel_corrected=True`` (default): R_j = Phi_j - N_j, the image-part of
  the right-hand side.  This is the exact bookkeeping: the generator part
  F_j solves {F_j, H2} = -(Phi_j - N_j), not -Phi_j, whenever Phi_j has a
  resonant component.  With this mode the single combined generator
  F = sum_m F_m reproduces the normal form through ``exp_lie`` exactly.
* ``kernel_corrected=False``: R_j = Phi_j.  This drops the resonant
  correction; it agrees with the default whenever every intermediate Phi_j
  is resonance-free, and differs otherwise (see the regression tests for a
  one-degree-of-freedom counterexample where the two modes disagree at
  degree 6).

All arithmetic is exact; the mode never changes types or tolerances.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction

from .errors import InternalCheckError, UsageError
from .operators import (
    FreqVector,
    partial_inverse,
    resonant_pairs,
    resonant_projection,
)
from .scalars import GAUSSIAN_RING, GaussianRational
from .series import ExponentPair, PolySeries
from .trees import compositions


def validate_hamiltonian(hamiltonian: PolySeries, freq: FreqVector) -> None:
    """Check H = H2 + (degree >= 3 tail) with H2 matching the frequencies."""
    if hamiltonian.n != freq.n:
        raise UsageError(
            f"series has {hamiltonian.n} degrees of freedom "
            f"but frequency vector has {freq.n}"
        )
    if hamiltonian.order < 2:
        raise UsageError(
            f"truncation order {hamiltonian.order} is too small to hold the quadratic part"
        )
    for s in (0, 1):
        if not hamiltonian.grade(s).is_zero:
            raise UsageError(f"input has terms of degree {s}; degrees 0 and 1 must vanish")
    expected = freq.quadratic_part(hamiltonian.order, hamiltonian.ring)
    if hamiltonian.grade(2) != expected:
        raise UsageError(
            "quadratic part must be exactly sum_j lambda_j x_j y_j "
            "for the given frequencies; got "
            f"{hamiltonian.grade(2).render()!r}, expected {expected.render()!r}"
        )


@dataclass(frozen=True)
class NormalizationResult:
    """Output of one normalization run, graded pieces included."""

    normal_form: PolySeries
    generator: PolySeries
    order: int
    freq: FreqVector
    kernel_corrected: bool
    rhs_parts: dict[int, PolySeries]
    resonant_parts: dict[int, PolySeries]
    generator_parts: dict[int, PolySeries]

    def resonant_pair_list(self):
        return resonant_pairs(self.freq, self.order)


def homological_rhs(
    hamiltonian: PolySeries,
    freq: FreqVector,
    kernel_corrected: bool = True,
) -> NormalizationResult:
    """Run the degree-by-degree recursion up to the series' truncation order."""
    validate_hamiltonian(hamiltonian, freq)
    order = hamiltonian.order
    ring = hamiltonian.ring
    n = hamiltonian.n

    hparts = {m: hamiltonian.grade(m) for m in range(3, order + 1)}
    rhs: dict[int, PolySeries] = {}
    res: dict[int, PolySeries] = {}
    gen: dict[int, PolySeries] = {}

    for m in range(3, order + 1):
        acc = hparts[m]
        for k in range(1, m - 2):
            weight = Fraction(1, math.factorial(k))
            for comp in compositions(m + 2 * k, k + 1, 3):
                js, j = comp[:-1], comp[-1]
                term = hparts[j]
                if term.is_zero:
                    continue
                for ji in reversed(js):
                    term = gen[ji].poisson(term)
                    if term.is_zero:
                        break
                if not term.is_zero:
                    acc = acc + term.scale(weight)
        for k in range(2, m - 1):
            weight = Fraction(1, math.factorial(k))
            for comp in compositions(m + 2 * (k - 1), k, 3):
                js, jk = comp[:-1], comp[-1]
                term = rhs[jk] - res[jk] if kernel_corrected else rhs[jk]
                if term.is_zero:
                    continue
                for ji in reversed(js):
                    term = gen[ji].poisson(term)
                    if term.is_zero:
                        break
                if not term.is_zero:
                    acc = acc - term.scale(weight)
        rhs[m] = acc
        res[m] = resonant_projection(acc, freq)
        gen[m] = partial_inverse(acc, freq)

    normal_form = freq.quadratic_part(order, ring)
    generator = PolySeries.zero(n, order, ring)
    for m in range(3, order + 1):
        normal_form = normal_form + res[m]
        generator = generator + gen[m]
    return NormalizationResult(
        normal_form=normal_form,
        generator=generator,
        order=order,
        freq=freq,
        kernel_corrected=kernel_corrected,
        rhs_parts=rhs,
        resonant_parts=res,
        generator_parts=gen,
    )


def lie_normalize(
    hamiltonian: PolySeries,
    freq: FreqVector,
    kernel_corrected: bool = True,
) -> NormalizationResult:
    """Normalize H up to its truncation order; alias of the rhs recursion."""
    return homological_rhs(hamiltonian, freq, kernel_corrected)


def exp_lie(generator: PolySeries, target: PolySeries) -> PolySeries:
    """Time-1 Lie transform: exp(L_F) G = G + {F,G} + (1/2!){F,{F,G}} + ...

    The generator must contain only terms of degree >= 3, so each nested
    bracket strictly raises the minimum degree and the truncated sum is
    finite.
    """
    if generator.is_zero:
        return target
    min_deg = generator.min_degree()
    if min_deg is not None and min_deg < 3:
        raise UsageError(
            f"generator has a term of degree {min_deg}; "
            "only degrees 3 and higher are allowed"
        )
    result = target
    term = target
    k = 1
    while not term.is_zero:
        if k > target.order + 2:
            raise InternalCheckError(
                "exp_lie failed to terminate within the truncation bound"
            )
        term = generator.poisson(term).scale(Fraction(1, k))
        result = result + term
        k += 1
    return result


def random_generator(
    n: int,
    order: int,
    seed: int,
    max_degree: int | None = None,
) -> PolySeries:
    """Deterministic pseudo-random generator series with terms of degree >= 3.

    Seed 0 is reserved for the zero generator, giving every seeded sweep one
    guaranteed identity-transformation instance.
    """
    if max_degree is None:
        max_degree = order
    if max_degree > order:
        raise UsageError(
            f"max_degree {max_degree} exceeds the truncation order {order}"
        )
    if seed == 0:
        return PolySeries.zero(n, order)
    rng = random.Random(seed)
    terms = {}

    def exponents(total: int, slots: int):
        if slots == 1:
            yield (total,)
            return
        for head in range(total + 1):
            for rest in exponents(total - head, slots - 1):
                yield (head,) + rest

    for degree in range(3, max_degree + 1):
        for da in range(degree + 1):
            for alpha in exponents(da, n):
                for beta in exponents(degree - da, n):
                    if rng.randint(0, 2) != 0:
                        continue
                    num = rng.randint(-6, 6)
                    if num == 0:
                        continue
                    den = rng.randint(1, 4)
                    terms[ExponentPair(alpha, beta)] = GaussianRational.of(
                        Fraction(num, den)
                    )
    return PolySeries(n, order, GAUSSIAN_RING, terms)


def random_symplectic_conjugate(
    hamiltonian: PolySeries,
    seed: int,
    max_degree: int | None = None,
) -> PolySeries:
    """Conjugate H by the time-1 flow of a seeded random generator."""
    gen = random_generator(hamiltonian.n, hamiltonian.order, seed, max_degree)
    return exp_lie(gen, hamiltonian)
