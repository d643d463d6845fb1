import numpy as np
from numpy.typing import ArrayLike

from ..exceptions import DimensionMismatchError, MetricError


def delta_c(prev: float, curr: float) -> float:
	"""Relative change of one capacitance value, percent of the newer one."""
	if curr == 0:
		raise MetricError("current capacitance is zero", ctx={"prev": prev})
	return abs(prev - curr) / abs(curr) * 100.0


def delta_f(prev: ArrayLike, curr: ArrayLike) -> float:
	"""Relative Frobenius-norm change of a matrix or row, percent of the newer one."""
	a = np.asarray(prev, dtype=np.float64)
	b = np.asarray(curr, dtype=np.float64)
	if a.shape != b.shape:
		raise DimensionMismatchError(
			"matrices differ in shape", ctx={"prev": list(a.shape), "curr": list(b.shape)}
		)
	denom = np.linalg.norm(b)
	if denom == 0:
		raise MetricError("current matrix has zero norm")
	return float(np.linalg.norm(a - b) / denom * 100.0)
