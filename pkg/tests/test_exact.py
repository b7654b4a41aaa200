from fractions import Fraction

import numpy as np
import pytest
import sympy as sp
from hypothesis import given, settings
from hypothesis import strategies as st

from signed_opinion.exact import EXACT_MAX_N, fraction_matrix, identity_minus, solve_rational, to_fraction

TOL = 1e-12


class TestToFraction:
    @pytest.mark.parametrize(
        "x, expected",
        [
            (0.2, Fraction(1, 5)),
            (-0.2, Fraction(-1, 5)),
            (7 / 30, Fraction(7, 30)),
            (1 / 3, Fraction(1, 3)),
            (0.0, Fraction(0)),
            (-0.0, Fraction(0)),
            (1.0, Fraction(1)),
            (0.8 / 3, Fraction(4, 15)),
        ],
    )
    def test_simple_values(self, x, expected):
        assert to_fraction(x) == expected

    def test_rational_passthrough(self):
        assert to_fraction(Fraction(3, 7)) == Fraction(3, 7)
        assert to_fraction(5) == Fraction(5)

    def test_numpy_scalar(self):
        assert to_fraction(np.float64(0.25)) == Fraction(1, 4)

    @pytest.mark.parametrize("x", [float("nan"), float("inf"), -float("inf")])
    def test_non_finite(self, x):
        with pytest.raises(ValueError):
            to_fraction(x)

    @settings(max_examples=300, deadline=None)
    @given(st.floats(-1e6, 1e6, allow_nan=False))
    def test_round_trips(self, x):
        assert float(to_fraction(x)) == x

    @settings(max_examples=200, deadline=None)
    @given(st.integers(-1000, 1000), st.integers(1, 1000))
    def test_recovers_small_ratios(self, p, q):
        assert to_fraction(p / q) == Fraction(p, q)


class TestSolveRational:
    def test_two_by_two(self):
        assert solve_rational([[2, 1], [1, 3]], [1, 2]) == [Fraction(1, 5), Fraction(3, 5)]

    def test_needs_pivoting(self):
        assert solve_rational([[0, 1], [1, 0]], [3, 4]) == [Fraction(4), Fraction(3)]

    def test_singular(self):
        with pytest.raises(ZeroDivisionError):
            solve_rational([[1, 2], [2, 4]], [1, 1])

    def test_size_limit(self):
        n = EXACT_MAX_N + 1
        with pytest.raises(ValueError):
            solve_rational(np.eye(n), np.ones(n))

    def test_largest_allowed(self):
        n = EXACT_MAX_N
        assert solve_rational(2 * np.eye(n), np.ones(n)) == [Fraction(1, 2)] * n

    def test_shape_mismatch(self):
        with pytest.raises(ValueError):
            solve_rational([[1, 0], [0, 1]], [1, 2, 3])

    @pytest.mark.parametrize("seed", range(8))
    def test_matches_sympy(self, seed):
        rng = np.random.default_rng(seed)
        n = int(rng.integers(2, 7))
        A = rng.integers(-9, 10, size=(n, n))
        b = rng.integers(-9, 10, size=n)
        M = sp.Matrix(A.tolist())
        if M.det() == 0:
            pytest.skip("singular draw")
        oracle = M.LUsolve(sp.Matrix(b.tolist()))
        got = solve_rational(A.tolist(), b.tolist())
        assert [sp.Rational(v.numerator, v.denominator) for v in got] == list(oracle)


class TestMatrixHelpers:
    def test_fraction_matrix(self):
        assert fraction_matrix([[0.5, 0.25], [0.2, 1.0]]) == [
            [Fraction(1, 2), Fraction(1, 4)],
            [Fraction(1, 5), Fraction(1)],
        ]

    def test_identity_minus(self):
        got = identity_minus(np.array([[0.2, -0.2], [0.0, 0.5]]))
        assert got == [[Fraction(4, 5), Fraction(1, 5)], [Fraction(0), Fraction(1, 2)]]

    def test_float_agreement(self):
        rng = np.random.default_rng(3)
        M = rng.random((5, 5)) / 6
        got = solve_rational(identity_minus(M), np.ones(5))
        assert np.allclose([float(v) for v in got], np.linalg.solve(np.eye(5) - M, np.ones(5)), atol=TOL)
