"""Independent oracles and builders shared by the test suite.

Everything here recomputes results through a different route than the
library code under test: dense dict arithmetic instead of the series
class, derivative-based Poisson brackets, normalization driven purely by
flow conjugation, series composition instead of reversion, and the
Akiyama-Tanigawa tableau for Bernoulli numbers.  Tests compare library
output against these, so a shared bug would have to be implemented twice
in two different shapes to slip through.
"""

from __future__ import annotations

import random
from fractions import Fraction

from birkhoff import (
    GAUSSIAN_RING,
    ExponentPair,
    FreqVector,
    GaussianRational,
    PolySeries,
    WSeries,
    exp_lie,
    make_pair,
    partial_inverse,
)

Coeff = GaussianRational


def gr(re: int | Fraction, im: int | Fraction = 0) -> GaussianRational:
    return GaussianRational.of(re, im)


def build_series(n: int, order: int, entries: dict) -> PolySeries:
    """Build a numeric series from {(alpha, beta): coeff} with lax coeffs."""
    terms = {}
    for (alpha, beta), value in entries.items():
        if not isinstance(value, GaussianRational):
            value = GaussianRational.of(value)
        terms[make_pair(tuple(alpha), tuple(beta))] = value
    return PolySeries(n, order, GAUSSIAN_RING, terms)


def series_terms(series: PolySeries) -> dict:
    return {(pair.alpha, pair.beta): value for pair, value in series}


# ---------------------------------------------------------------------------
# dense multiplication oracle


def mul_oracle(f: PolySeries, g: PolySeries) -> PolySeries:
    """Multiply via plain dict convolution, then truncate."""
    if f.n != g.n or f.order != g.order:
        raise AssertionError("oracle misuse: operand shape mismatch")
    acc: dict = {}
    for p1, v1 in f:
        for p2, v2 in g:
            alpha = tuple(a + b for a, b in zip(p1.alpha, p2.alpha))
            beta = tuple(a + b for a, b in zip(p1.beta, p2.beta))
            if sum(alpha) + sum(beta) > f.order:
                continue
            key = (alpha, beta)
            acc[key] = acc.get(key, GaussianRational.of(0)) + v1 * v2
    return build_series(f.n, f.order, acc)


# ---------------------------------------------------------------------------
# derivative-based Poisson bracket oracle


def _partial(series: PolySeries, var: int, side: str) -> dict:
    """Exact partial derivative of the term dict, as a plain dict."""
    out: dict = {}
    for pair, value in series:
        exps = pair.alpha if side == "x" else pair.beta
        k = exps[var]
        if k == 0:
            continue
        alpha = list(pair.alpha)
        beta = list(pair.beta)
        if side == "x":
            alpha[var] -= 1
        else:
            beta[var] -= 1
        key = (tuple(alpha), tuple(beta))
        out[key] = out.get(key, GaussianRational.of(0)) + value.scaled(Fraction(k))
    return out


def _dict_mul(d1: dict, d2: dict, n: int) -> dict:
    out: dict = {}
    for (a1, b1), v1 in d1.items():
        for (a2, b2), v2 in d2.items():
            key = (
                tuple(x + y for x, y in zip(a1, a2)),
                tuple(x + y for x, y in zip(b1, b2)),
            )
            out[key] = out.get(key, GaussianRational.of(0)) + v1 * v2
    return out


def poisson_oracle(f: PolySeries, g: PolySeries) -> PolySeries:
    """{f, g} assembled from eight explicit partial derivatives."""
    acc: dict = {}
    for j in range(f.n):
        df_dy = _partial(f, j, "y")
        dg_dx = _partial(g, j, "x")
        df_dx = _partial(f, j, "x")
        dg_dy = _partial(g, j, "y")
        for key, value in _dict_mul(df_dy, dg_dx, f.n).items():
            acc[key] = acc.get(key, GaussianRational.of(0)) + value
        for key, value in _dict_mul(df_dx, dg_dy, f.n).items():
            acc[key] = acc.get(key, GaussianRational.of(0)) - value
    trimmed = {
        key: value
        for key, value in acc.items()
        if sum(key[0]) + sum(key[1]) <= f.order
    }
    return build_series(f.n, f.order, trimmed)


# ---------------------------------------------------------------------------
# flow-driven normalization oracle


def direct_normalize(hamiltonian: PolySeries, freq: FreqVector):
    """Normalize using only exp_lie and the projection operators.

    Degree by degree: conjugate by the generator found so far, look at the
    lowest non-resonant residue, and extend the generator with its
    preimage.  No recursion formulas are involved, so this is an
    independent check of any normalization pipeline.
    """
    order = hamiltonian.order
    n = hamiltonian.n
    generator = PolySeries.zero(n, order, hamiltonian.ring)
    for degree in range(3, order + 1):
        current = exp_lie(generator, hamiltonian) if not generator.is_zero else hamiltonian
        residue = current.grade(degree).filter_terms(
            lambda pair: not freq.is_resonant(pair)
        )
        if residue.is_zero:
            continue
        generator = generator + partial_inverse(residue, freq)
    normal_form = exp_lie(generator, hamiltonian) if not generator.is_zero else hamiltonian
    return normal_form, generator


# ---------------------------------------------------------------------------
# w-series composition oracle


def compose_wseries(outer: WSeries, inner: WSeries) -> WSeries:
    """outer(inner(w)), truncated at outer.order; inner must lack a constant."""
    ring = outer.ring
    if not ring.is_zero(inner.coefficient(0)):
        raise AssertionError("oracle misuse: inner series has a constant term")
    order = outer.order
    result = WSeries.zero(order, ring)
    power = WSeries(order, ring, {0: ring.one})
    for k in range(order + 1):
        if k > 0:
            power = power * inner.with_order(order)
        c = outer.coefficient(k)
        if not ring.is_zero(c):
            result = result + power * WSeries(order, ring, {0: c})
    return result


# ---------------------------------------------------------------------------
# Bernoulli oracle (Akiyama-Tanigawa, B1 = +1/2 convention)


def bernoulli_plus(nmax: int) -> list:
    """B_0 .. B_nmax for x/(1 - e^{-x}), i.e. B_1 = +1/2."""
    out = []
    row: list = []
    for m in range(nmax + 1):
        row.append(Fraction(1, m + 1))
        for j in range(m, 0, -1):
            row[j - 1] = j * (row[j - 1] - row[j])
        out.append(row[0])
    return out


# ---------------------------------------------------------------------------
# random builders


def random_coeff(rng: random.Random, imaginary: bool = False) -> GaussianRational:
    re = Fraction(rng.randint(-6, 6), rng.randint(1, 4))
    im = Fraction(rng.randint(-3, 3), rng.randint(1, 3)) if imaginary else Fraction(0)
    return GaussianRational(re, im)


def random_series(
    n: int,
    order: int,
    seed: int,
    min_degree: int = 3,
    max_degree: int | None = None,
    max_terms: int = 6,
    imaginary: bool = False,
) -> PolySeries:
    """A small random series with exact rational coefficients."""
    rng = random.Random(seed)
    top = order if max_degree is None else max_degree
    pairs = []
    for degree in range(min_degree, top + 1):
        for alpha in _exponents(n, degree):
            for beta in _exponents(n, degree - sum(alpha)):
                if sum(alpha) + sum(beta) == degree:
                    pairs.append((alpha, beta))
    rng.shuffle(pairs)
    terms = {}
    for alpha, beta in pairs[: rng.randint(1, max_terms)]:
        value = random_coeff(rng, imaginary)
        if not value.is_zero:
            terms[(alpha, beta)] = value
    return build_series(n, order, terms)


def _exponents(n: int, cap: int):
    if n == 0:
        yield ()
        return
    for head in range(cap + 1):
        for rest in _exponents(n - 1, cap - head):
            yield (head,) + rest


def random_hamiltonian(
    freq: FreqVector,
    order: int,
    seed: int,
    max_degree: int | None = None,
    max_terms: int = 6,
) -> PolySeries:
    """Quadratic part for freq plus a random perturbation of degree >= 3."""
    tail = random_series(freq.n, order, seed, 3, max_degree, max_terms)
    return freq.quadratic_part(order, GAUSSIAN_RING) + tail


def onedof_freq(value) -> FreqVector:
    if not isinstance(value, GaussianRational):
        value = GaussianRational.of(value)
    return FreqVector.of(value)
