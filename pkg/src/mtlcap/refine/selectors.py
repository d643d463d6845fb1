import math

import numpy as np
from numpy.typing import NDArray

from ..exceptions import DimensionMismatchError
from ..geometry import Mesh


def _count(fraction: float, n: int) -> int:
	# rounding keeps exact products such as 0.25*8 from ceiling up
	return min(n, math.ceil(round(fraction * n, 9)))


def select_top_fraction(values: NDArray[np.float64], fraction: float) -> list[int]:
	"""Indices of the ``ceil(fraction*N)`` largest values; ties go to the lower index."""
	values = np.asarray(values, dtype=np.float64)
	order = np.argsort(-values, kind="stable")
	return sorted(order[: _count(fraction, values.size)].tolist())


def _check(mesh: Mesh, sigma: NDArray[np.float64]) -> None:
	if sigma.ndim != 2 or sigma.shape[0] != mesh.size:
		raise DimensionMismatchError(
			"charge matrix does not match the mesh",
			ctx={"sigma": list(sigma.shape), "n": mesh.size},
		)


def select_top25(mesh: Mesh, sigma: NDArray[np.float64]) -> set[int]:
	"""Quarter of the segments with the largest density for the first excitation."""
	_check(mesh, sigma)
	return set(select_top_fraction(np.abs(sigma[:, 0]), 0.25))


def select_method1(mesh: Mesh, sigma: NDArray[np.float64], k: float = 75.0) -> set[int]:
	"""
	Union over excitations of the ``k/N_C`` percent largest densities of each
	column, so every conductor gets its own share of the ``k`` percent budget.
	"""
	_check(mesh, sigma)
	fraction = k / sigma.shape[1] / 100.0
	picked: set[int] = set()
	for col in range(sigma.shape[1]):
		picked.update(select_top_fraction(np.abs(sigma[:, col]), fraction))
	return picked
