"""Splitting-operator tests: D, A, B and their algebraic identities."""

from fractions import Fraction

import pytest

from birkhoff import (
    FreqVector,
    GaussianRational,
    ParseError,
    UsageError,
    homological_operator,
    make_pair,
    partial_inverse,
    resonant_pairs,
    resonant_projection,
)

from helpers import build_series, gr, poisson_oracle, random_series


def freq(*values) -> FreqVector:
    return FreqVector.of(*[v if isinstance(v, GaussianRational) else gr(v) for v in values])


class TestFreqVector:
    def test_validation(self):
        with pytest.raises(UsageError):
            FreqVector.of()
        with pytest.raises(UsageError):
            freq(1, 0)
        with pytest.raises(UsageError):
            FreqVector.of("1")
        with pytest.raises(UsageError):
            FreqVector.of(0.5)

    def test_eigenvalue(self):
        lam = freq(1, 2)
        pair = make_pair((1, 0), (0, 2))
        assert lam.eigenvalue(pair) == gr(-3)

    def test_resonance_detection(self):
        lam = freq(1, -1)
        assert lam.is_resonant(make_pair((1, 1), (0, 0)))
        assert lam.is_resonant(make_pair((2, 2), (0, 0)))
        assert not lam.is_resonant(make_pair((1, 0), (0, 0)))
        assert freq(1).is_resonant(make_pair((2,), (2,)))

    def test_imaginary_entries(self):
        lam = FreqVector.of(gr(0, 1))
        assert lam.is_resonant(make_pair((2,), (2,)))
        assert not lam.is_resonant(make_pair((3,), (0,)))
        assert not lam.is_real

    def test_quadratic_part(self):
        lam = freq(2, 3)
        quad = lam.quadratic_part(6)
        assert quad == build_series(
            2, 6, {((1, 0), (1, 0)): 2, ((0, 1), (0, 1)): 3}
        )

    def test_json_round_trip(self):
        lam = FreqVector.of(gr(1), gr(0, -2))
        assert FreqVector.from_json(lam.to_json()) == lam

    def test_from_json_rejects_zero(self):
        with pytest.raises((UsageError, ParseError)):
            FreqVector.from_json(["1", "0"])


class TestOperators:
    def test_d_on_monomials(self):
        # D x^3 = 3 x^3 at lam = 1
        x3 = build_series(1, 4, {((3,), (0,)): 1})
        assert homological_operator(x3, freq(1)) == x3.scale(Fraction(3))
        # D (x1 y2^2) = -3 x1 y2^2 at lam = (1, 2)
        m = build_series(2, 4, {((1, 0), (0, 2)): 1})
        assert homological_operator(m, freq(1, 2)) == m.scale(Fraction(-3))

    def test_d_kills_resonant(self):
        m = build_series(2, 4, {((1, 1), (0, 0)): 5})
        assert homological_operator(m, freq(1, -1)).is_zero

    def test_a_keeps_resonant_only(self):
        s = build_series(
            2, 4, {((1, 1), (0, 0)): 1, ((2, 0), (0, 0)): 2, ((1, 0), (0, 1)): 3}
        )
        kept = resonant_projection(s, freq(1, -1))
        assert kept == build_series(2, 4, {((1, 1), (0, 0)): 1})

    def test_b_divides_by_eigenvalue(self):
        # B(x2^2 y1) = x2^2 y1 / 4 at lam = (2, 3)
        m = build_series(2, 4, {((0, 2), (1, 0)): 1})
        assert partial_inverse(m, freq(2, 3)) == m.scale(Fraction(1, 4))

    def test_b_kills_kernel(self):
        m = build_series(1, 4, {((2,), (2,)): 7, ((3,), (0,)): 6})
        out = partial_inverse(m, freq(1))
        assert out == build_series(1, 4, {((3,), (0,)): 2})

    def test_b_worked_example(self):
        # B(x^2 y + x y^2) = x^2 y - x y^2 at lam = 1
        s = build_series(1, 4, {((2,), (1,)): 1, ((1,), (2,)): 1})
        assert partial_inverse(s, freq(1)) == build_series(
            1, 4, {((2,), (1,)): 1, ((1,), (2,)): -1}
        )

    def test_dimension_mismatch(self):
        s = build_series(1, 4, {((3,), (0,)): 1})
        with pytest.raises(UsageError):
            homological_operator(s, freq(1, 2))

    def test_d_is_bracket_with_quadratic(self):
        for seed, lam in [(11, freq(1)), (12, freq(1, 8)), (13, freq(1, -1)), (14, FreqVector.of(gr(0, 1)))]:
            s = random_series(lam.n, 7, seed, min_degree=1, imaginary=True)
            quad = lam.quadratic_part(7)
            assert homological_operator(s, lam) == poisson_oracle(quad, s)


IDENTITY_FREQS = [
    freq(1),
    freq(2, 3),
    freq(1, -1),
    FreqVector.of(gr(0, 1), gr(Fraction(1, 2))),
]


class TestIdentities:
    @pytest.mark.parametrize("case", range(12))
    def test_projection_algebra(self, case):
        lam = IDENTITY_FREQS[case % len(IDENTITY_FREQS)]
        f = random_series(lam.n, 8, 2000 + case, min_degree=1, imaginary=True)
        a_f = resonant_projection(f, lam)
        b_f = partial_inverse(f, lam)
        d_f = homological_operator(f, lam)
        # A + DB = I and A + BD = I
        assert a_f + homological_operator(b_f, lam) == f
        assert a_f + partial_inverse(d_f, lam) == f
        # A is idempotent; B and D annihilate the A-image and vice versa
        assert resonant_projection(a_f, lam) == a_f
        assert partial_inverse(a_f, lam).is_zero
        assert homological_operator(a_f, lam).is_zero
        assert resonant_projection(b_f, lam).is_zero
        assert resonant_projection(d_f, lam).is_zero

    @pytest.mark.parametrize("case", range(6))
    def test_split_reassembles(self, case):
        lam = IDENTITY_FREQS[case % len(IDENTITY_FREQS)]
        f = random_series(lam.n, 8, 3000 + case, min_degree=1, imaginary=True)
        resonant = resonant_projection(f, lam)
        rest = f - resonant
        assert resonant_projection(rest, lam).is_zero
        assert homological_operator(partial_inverse(rest, lam), lam) == rest


class TestResonantPairs:
    def test_nonresonant_has_no_offdiagonal(self):
        rows = resonant_pairs(freq(1, 8), 6)
        assert rows == []

    def test_sign_pair_resonance(self):
        rows = resonant_pairs(freq(1, -1), 2)
        keys = [(pair.alpha, pair.beta) for pair in rows]
        assert ((1, 1), (0, 0)) in keys and ((0, 0), (1, 1)) in keys
        assert len(rows) == 2

    def test_degree_five_resonance(self):
        rows = resonant_pairs(freq(2, 3), 5)
        keys = {(pair.alpha, pair.beta) for pair in rows}
        assert ((0, 2), (3, 0)) in keys and ((3, 0), (0, 2)) in keys

    def test_excludes_diagonal(self):
        rows = resonant_pairs(freq(1), 6)
        assert rows == []
