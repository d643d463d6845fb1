import importlib

import numpy as np
import pytest
import scipy.linalg as sla

from mtlcap.exceptions import DimensionMismatchError, SingularSystemError, SolveAccuracyError
from mtlcap.system import solve

solve_module = importlib.import_module("mtlcap.system.solve")


@pytest.fixture
def inexact_factors(monkeypatch):
	"""LU factors of a slightly perturbed matrix, so the first solve is off by about 1e-7."""
	real = sla.lu_factor
	monkeypatch.setattr(solve_module.sla, "lu_factor", lambda a, **kw: real(a * (1 + 1e-7), **kw))


class TestSolve:
	def test_identity(self):
		V = np.arange(12, dtype=float).reshape(4, 3)
		sol = solve(np.eye(4), V)
		assert np.array_equal(sol.sigma, V)
		assert sol.residual == 0.0
		assert sol.reference_potential is None

	def test_row_permutation_invariant(self):
		rng = np.random.default_rng(11)
		S = rng.normal(size=(30, 30)) + 30 * np.eye(30)
		V = rng.normal(size=(30, 2))
		perm = rng.permutation(30)
		a = solve(S, V).sigma
		b = solve(S[perm], V[perm]).sigma
		np.testing.assert_allclose(a, b, rtol=1e-12, atol=1e-14)

	def test_badly_scaled_rows(self):
		rng = np.random.default_rng(5)
		S = rng.normal(size=(20, 20)) + 20 * np.eye(20)
		scale = 10.0 ** rng.integers(-12, 12, 20)
		x = rng.normal(size=(20, 1))
		sol = solve(S * scale[:, None], (S @ x) * scale[:, None])
		np.testing.assert_allclose(sol.sigma, x, rtol=1e-9)

	def test_vector_excitation(self):
		assert solve(2 * np.eye(3), np.ones(3)).sigma.shape == (3, 1)

	def test_neutral_reference(self):
		sol = solve(np.eye(3), np.array([[1.0], [0.0], [0.0]]), neutral_weights=np.ones(3))
		np.testing.assert_allclose(sol.sigma[:, 0], [2 / 3, -1 / 3, -1 / 3], atol=1e-15)
		np.testing.assert_allclose(sol.reference_potential, [1 / 3], atol=1e-15)
		assert sol.sigma.sum() == pytest.approx(0.0, abs=1e-15)

	def test_neutral_potential_rows(self):
		rows = np.array([True, True, False])
		sol = solve(
			np.eye(3),
			np.array([[1.0], [0.0], [0.5]]),
			neutral_weights=np.ones(3),
			potential_rows=rows,
		)
		# the unbiased row keeps its own value
		assert sol.sigma[2, 0] == pytest.approx(0.5)
		assert sol.sigma.sum() == pytest.approx(0.0, abs=1e-15)

	def test_zero_row(self):
		S = np.eye(4)
		S[2] = 0.0
		with pytest.raises(SingularSystemError) as exc:
			solve(S, np.ones((4, 1)))
		assert exc.value.rcond == 0.0

	def test_rank_deficient(self):
		with pytest.raises(SingularSystemError) as exc:
			solve(np.ones((5, 5)), np.ones((5, 1)))
		assert exc.value.rcond < 1e-14

	def test_residual_guard(self):
		rng = np.random.default_rng(2)
		S = rng.normal(size=(10, 10)) + 10 * np.eye(10)
		with pytest.raises(SolveAccuracyError):
			solve(S, rng.normal(size=(10, 1)), residual_tol=-1.0)

	def test_shape_mismatch(self):
		with pytest.raises(DimensionMismatchError):
			solve(np.eye(3), np.ones((4, 1)))
		with pytest.raises(DimensionMismatchError):
			solve(np.ones((3, 4)), np.ones((3, 1)))

	def test_residual_on_scaled_system(self):
		rng = np.random.default_rng(5)
		S = rng.normal(size=(20, 20)) + 20 * np.eye(20)
		scale = 10.0 ** rng.integers(-12, 12, 20)
		sol = solve(S * scale[:, None], rng.normal(size=(20, 2)) * scale[:, None])
		assert 0.0 <= sol.residual <= 1e-10


class TestIterativeRefinement:
	def test_recovers_from_inexact_factors(self, inexact_factors):
		rng = np.random.default_rng(8)
		S = rng.normal(size=(25, 25)) + 25 * np.eye(25)
		x = rng.normal(size=(25, 3))
		sol = solve(S, S @ x)
		assert sol.residual <= 1e-10
		np.testing.assert_allclose(sol.sigma, x, rtol=1e-9, atol=1e-12)

	def test_neutral_system_refined(self, inexact_factors):
		sol = solve(np.eye(3), np.array([[1.0], [0.0], [0.0]]), neutral_weights=np.ones(3))
		np.testing.assert_allclose(sol.sigma[:, 0], [2 / 3, -1 / 3, -1 / 3], atol=1e-12)
		np.testing.assert_allclose(sol.reference_potential, [1 / 3], atol=1e-12)

	def test_guard_fires_without_refinement(self, inexact_factors, monkeypatch):
		monkeypatch.setattr(solve_module, "REFINE_STEPS", 0)
		rng = np.random.default_rng(8)
		S = rng.normal(size=(25, 25)) + 25 * np.eye(25)
		with pytest.raises(SolveAccuracyError) as exc:
			solve(S, S @ rng.normal(size=(25, 3)))
		assert exc.value.ctx["residual"] > 1e-10
