"""Polynomial series tests: ring axioms, truncation, the Poisson bracket."""

from fractions import Fraction

import pytest

from birkhoff import (
    GAUSSIAN_RING,
    PolySeries,
    UsageError,
    from_json_terms,
    make_pair,
)

from helpers import build_series, gr, mul_oracle, poisson_oracle, random_series


class TestExponentPair:
    def test_degree_and_diagonal(self):
        pair = make_pair((2, 0), (0, 3))
        assert pair.degree == 5
        assert not pair.is_diagonal
        assert make_pair((1, 2), (1, 2)).is_diagonal

    def test_delta_is_beta_minus_alpha(self):
        assert make_pair((2, 0), (0, 3)).delta() == (-2, 3)

    def test_validation(self):
        with pytest.raises(UsageError):
            make_pair((1,), (1, 0))
        with pytest.raises(UsageError):
            make_pair((-1,), (0,))


class TestConstruction:
    def test_zero_terms_dropped(self):
        s = build_series(1, 4, {((1, ), (1, )): 0})
        assert s.is_zero

    def test_overweight_terms_dropped(self):
        s = build_series(1, 4, {((3,), (3,)): 1, ((1,), (1,)): 2})
        assert list(series_pairs(s)) == [((1,), (1,))]

    def test_dimension_checked(self):
        with pytest.raises(UsageError):
            PolySeries(2, 4, GAUSSIAN_RING, {make_pair((1,), (0,)): gr(1)})

    def test_incompatible_operands(self):
        a = build_series(1, 4, {((1,), (0,)): 1})
        b = build_series(1, 5, {((1,), (0,)): 1})
        c = build_series(2, 4, {((1, 0), (0, 0)): 1})
        with pytest.raises(UsageError):
            a + b
        with pytest.raises(UsageError):
            a * c
        assert (a + b.with_order(4)).coefficient(make_pair((1,), (0,))) == gr(2)


def series_pairs(s: PolySeries):
    return ((pair.alpha, pair.beta) for pair, _ in s.sorted_terms())


class TestArithmetic:
    def test_difference_of_squares(self):
        # (x + y)(x - y) = x^2 - y^2 at order 2
        x = build_series(1, 2, {((1,), (0,)): 1})
        y = build_series(1, 2, {((0,), (1,)): 1})
        assert (x + y) * (x - y) == build_series(1, 2, {((2,), (0,)): 1, ((0,), (2,)): -1})

    def test_truncation_kills_product(self):
        x3 = build_series(1, 4, {((3,), (0,)): 1})
        assert (x3 * x3).is_zero

    def test_cross_product(self):
        a = build_series(1, 6, {((2,), (1,)): 1})
        b = build_series(1, 6, {((1,), (2,)): 1})
        assert a * b == build_series(1, 6, {((3,), (3,)): 1})

    @pytest.mark.parametrize("seed", range(8))
    def test_mul_matches_dense_oracle(self, seed):
        n = 1 + seed % 2
        f = random_series(n, 7, seed + 100, min_degree=1, imaginary=True)
        g = random_series(n, 7, seed + 200, min_degree=1, imaginary=True)
        assert f * g == mul_oracle(f, g)

    @pytest.mark.parametrize("seed", range(4))
    def test_ring_axioms(self, seed):
        f = random_series(2, 6, seed + 300, min_degree=1)
        g = random_series(2, 6, seed + 301, min_degree=1)
        h = random_series(2, 6, seed + 302, min_degree=1)
        assert f + g == g + f
        assert (f + g) + h == f + (g + h)
        assert f * g == g * f
        assert (f * g) * h == f * (g * h)
        assert f * (g + h) == f * g + f * h
        assert (f - f).is_zero

    def test_scale(self):
        f = build_series(1, 4, {((2,), (1,)): gr(3, 1)})
        assert f.scale(Fraction(1, 3)) == build_series(1, 4, {((2,), (1,)): gr(1, Fraction(1, 3))})


class TestStructureQueries:
    def _sample(self):
        return build_series(
            1, 6, {((1,), (1,)): 1, ((3,), (0,)): 2, ((2,), (2,)): -1, ((3,), (3,)): 5}
        )

    def test_grade(self):
        s = self._sample()
        assert s.grade(4) == build_series(1, 6, {((2,), (2,)): -1})
        assert s.grade(5).is_zero

    def test_grades_and_min_degree(self):
        s = self._sample()
        assert s.grades() == [2, 3, 4, 6]
        assert s.min_degree() == 2
        assert PolySeries.zero(1, 6).min_degree() is None

    def test_with_order_truncates(self):
        s = self._sample().with_order(4)
        assert s.order == 4
        assert s.grades() == [2, 3, 4]

    def test_coefficient_default(self):
        s = self._sample()
        assert s.coefficient(make_pair((9,), (0,))) == GAUSSIAN_RING.zero

    def test_sorted_terms_graded_lex(self):
        s = build_series(1, 4, {((0,), (3,)): 1, ((3,), (0,)): 1, ((1,), (1,)): 1})
        keys = [(pair.alpha, pair.beta) for pair, _ in s.sorted_terms()]
        assert keys == [((1,), (1,)), ((0,), (3,)), ((3,), (0,))]

    def test_map_and_filter(self):
        s = self._sample()
        doubled = s.map_terms(lambda pair, v: v.scaled(Fraction(2)))
        assert doubled == s + s
        diagonal = s.filter_terms(lambda pair: pair.is_diagonal)
        assert diagonal.grades() == [2, 4, 6]


class TestPoisson:
    def test_canonical_pair(self):
        # {x, y} = -1 with this bracket's sign convention
        x = build_series(1, 2, {((1,), (0,)): 1})
        y = build_series(1, 2, {((0,), (1,)): 1})
        assert x.poisson(y) == build_series(1, 2, {((0,), (0,)): -1})

    def test_quadratic_acts_diagonally(self):
        # {lam*x*y, x^a y^b} = lam*(a-b) x^a y^b
        quad = build_series(1, 8, {((1,), (1,)): gr(2)})
        mono = build_series(1, 8, {((3,), (1,)): 1})
        assert quad.poisson(mono) == mono.scale(Fraction(4))

    def test_antisymmetry_and_self_bracket(self):
        f = random_series(2, 6, 42, min_degree=1)
        g = random_series(2, 6, 43, min_degree=1)
        assert f.poisson(g) == -(g.poisson(f))
        assert f.poisson(f).is_zero

    @pytest.mark.parametrize("seed", range(8))
    def test_matches_derivative_oracle(self, seed):
        n = 1 + seed % 3
        f = random_series(n, 7, seed + 500, min_degree=1, imaginary=True)
        g = random_series(n, 7, seed + 600, min_degree=1, imaginary=True)
        assert f.poisson(g) == poisson_oracle(f, g)

    @pytest.mark.parametrize("seed", range(5))
    def test_jacobi_identity(self, seed):
        # order head-room so no truncation interferes with the identity
        n = 1 + seed % 2
        f = random_series(n, 12, seed + 700, min_degree=1, max_degree=5, max_terms=3)
        g = random_series(n, 12, seed + 800, min_degree=1, max_degree=5, max_terms=3)
        h = random_series(n, 12, seed + 900, min_degree=1, max_degree=5, max_terms=3)
        total = (
            f.poisson(g.poisson(h))
            + g.poisson(h.poisson(f))
            + h.poisson(f.poisson(g))
        )
        assert total.is_zero

    @pytest.mark.parametrize("seed", range(5))
    def test_leibniz_rule(self, seed):
        n = 1 + seed % 2
        f = random_series(n, 12, seed + 1000, min_degree=1, max_degree=4, max_terms=3)
        g = random_series(n, 12, seed + 1100, min_degree=1, max_degree=4, max_terms=3)
        h = random_series(n, 12, seed + 1200, min_degree=1, max_degree=4, max_terms=3)
        assert f.poisson(g * h) == f.poisson(g) * h + g * f.poisson(h)

    def test_bracket_grading(self):
        # homogeneous inputs of degree s1, s2 bracket to degree s1 + s2 - 2
        f = random_series(2, 10, 77, min_degree=4, max_degree=4, max_terms=4)
        g = random_series(2, 10, 78, min_degree=3, max_degree=3, max_terms=4)
        bracket = f.poisson(g)
        assert bracket.grades() in ([], [5])


class TestRendering:
    def test_render_monomials(self):
        s = build_series(2, 4, {((2, 0), (2, 0)): -3})
        assert s.render() == "-3 x1^2 y1^2"

    def test_render_join_signs(self):
        s = build_series(1, 4, {((1,), (1,)): 1, ((2,), (2,)): -3})
        assert s.render() == "1 x1 y1 - 3 x1^2 y1^2"

    def test_render_zero(self):
        assert PolySeries.zero(1, 4).render() == "0"

    def test_render_complex_coeff(self):
        s = build_series(1, 4, {((1,), (0,)): gr(1, 1)})
        assert s.render() == "(1+1i) x1"


class TestJson:
    def test_round_trip(self):
        s = build_series(2, 6, {((1, 0), (0, 1)): gr(2, -1), ((3, 0), (0, 0)): gr(Fraction(1, 3))})
        again = from_json_terms(2, 6, s.to_json_terms())
        assert again == s

    def test_duplicate_rows_summed(self):
        rows = [
            {"alpha": [1], "beta": [1], "coeff": "2"},
            {"alpha": [1], "beta": [1], "coeff": "-2"},
        ]
        assert from_json_terms(1, 4, rows).is_zero
