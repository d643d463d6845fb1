import numpy as np
import pytest

from mtlcap.exceptions import DimensionMismatchError
from mtlcap.geometry import build_structure, discretize, initial_plan
from mtlcap.refine import select_method1, select_top25, select_top_fraction


@pytest.fixture
def mesh(small_mplp1, coarse):
	edges = build_structure(small_mplp1)
	return discretize(edges, initial_plan(edges, **coarse), spec=small_mplp1)


class TestTopFraction:
	def test_picks_largest(self):
		assert select_top_fraction(np.array([1.0, 5.0, 3.0, 4.0]), 0.5) == [1, 3]

	def test_count_rounds_up(self):
		assert len(select_top_fraction(np.arange(10.0), 0.25)) == 3
		assert len(select_top_fraction(np.arange(8.0), 0.25)) == 2

	def test_exact_product_not_bumped(self):
		# 0.07 * 100 is 7.000000000000001 in binary
		assert len(select_top_fraction(np.arange(100.0), 0.07)) == 7

	def test_ties_prefer_lower_index(self):
		assert select_top_fraction(np.array([2.0, 1.0, 2.0, 2.0]), 0.5) == [0, 2]

	def test_whole_set(self):
		assert select_top_fraction(np.ones(3), 1.0) == [0, 1, 2]


class TestStrategies:
	def test_top25_uses_first_excitation(self, mesh):
		sigma = np.zeros((mesh.size, 2))
		sigma[:, 0] = -np.arange(mesh.size, dtype=float)
		sigma[:, 1] = np.arange(mesh.size, dtype=float)
		picked = select_top25(mesh, sigma)
		count = int(np.ceil(mesh.size / 4))
		assert picked == set(range(mesh.size - count, mesh.size))

	def test_method1_unions_columns(self, mesh):
		n = mesh.size
		sigma = np.zeros((n, 2))
		sigma[:, 0] = np.arange(n, dtype=float)
		sigma[:, 1] = -np.arange(n, 0, -1, dtype=float)
		picked = select_method1(mesh, sigma, k=50.0)
		count = int(np.ceil(0.25 * n))
		assert picked == set(range(n - count, n)) | set(range(count))

	def test_method1_overlap(self, mesh):
		n = mesh.size
		sigma = np.tile(np.arange(n, dtype=float)[:, None], (1, 2))
		assert len(select_method1(mesh, sigma, k=50.0)) == int(np.ceil(0.25 * n))

	def test_shape_checked(self, mesh):
		with pytest.raises(DimensionMismatchError):
			select_top25(mesh, np.ones((mesh.size + 1, 2)))
		with pytest.raises(DimensionMismatchError):
			select_method1(mesh, np.ones(mesh.size))
