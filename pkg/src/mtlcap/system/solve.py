from __future__ import annotations

import warnings

import numpy as np
import scipy.linalg as sla
from numpy.typing import NDArray
from scipy.linalg.lapack import dgecon

from ..exceptions import DimensionMismatchError, SingularSystemError, SolveAccuracyError
from ..log import get_logger
from .types import ChargeSolution

logger = get_logger("mtlcap.system")

RCOND_MIN = 1e-14
RESIDUAL_TOL = 1e-10
REFINE_STEPS = 3


def _row_scales(A: NDArray[np.float64]) -> NDArray[np.float64]:
	"""Power-of-two factors bringing every row maximum into [0.5, 1)."""
	rowmax = np.max(np.abs(A), axis=1)
	if not np.all(rowmax > 0):
		raise SingularSystemError(
			"system has an all-zero row", rcond=0.0, ctx={"row": int(np.argmin(rowmax))}
		)
	_, exp = np.frexp(rowmax)
	return np.ldexp(1.0, -exp)


def _relative_residual(
	A: NDArray[np.float64], x: NDArray[np.float64], b: NDArray[np.float64], denom: float
) -> float:
	if denom == 0:
		return 0.0
	return float(np.linalg.norm(A @ x - b, "fro") / denom)


def _bordered(
	S: NDArray[np.float64],
	V: NDArray[np.float64],
	weights: NDArray[np.float64],
	potential_rows: NDArray[np.bool_],
) -> tuple[NDArray[np.float64], NDArray[np.float64]]:
	n, k = V.shape
	A = np.zeros((n + 1, n + 1), dtype=np.float64)
	A[:n, :n] = S
	A[:n, n] = potential_rows.astype(np.float64)
	A[n, :n] = weights
	b = np.zeros((n + 1, k), dtype=np.float64)
	b[:n] = V
	return A, b


def solve(
	S: NDArray[np.float64],
	V: NDArray[np.float64],
	*,
	neutral_weights: NDArray[np.float64] | None = None,
	potential_rows: NDArray[np.bool_] | None = None,
	residual_tol: float = RESIDUAL_TOL,
	rcond_min: float = RCOND_MIN,
) -> ChargeSolution:
	"""
	Solve ``S @ sigma = V`` for every excitation column at once.

	With ``neutral_weights`` the system gains one floating reference potential
	per column, added on ``potential_rows`` (all rows by default), and the
	constraint ``neutral_weights @ sigma = 0``.

	The residual is measured on the row-scaled system that is factored, after
	up to ``REFINE_STEPS`` rounds of iterative refinement.
	"""
	S = np.asarray(S, dtype=np.float64)
	V = np.asarray(V, dtype=np.float64)
	if V.ndim == 1:
		V = V[:, None]
	n = S.shape[0]
	if S.shape != (n, n) or V.shape[0] != n:
		raise DimensionMismatchError(
			"system and excitation shapes disagree",
			ctx={"S": list(S.shape), "V": list(V.shape)},
		)

	if neutral_weights is not None:
		rows = np.ones(n, dtype=bool) if potential_rows is None else potential_rows
		A, b = _bordered(S, V, np.asarray(neutral_weights, dtype=np.float64), rows)
	else:
		A, b = S, V

	scale = _row_scales(A)
	As = A * scale[:, None]
	bs = b * scale[:, None]

	with warnings.catch_warnings():
		warnings.simplefilter("ignore", sla.LinAlgWarning)
		lu, piv = sla.lu_factor(As, check_finite=True)
	rcond, info = dgecon(lu, np.linalg.norm(As, 1), norm="1")
	rcond = float(rcond)
	if info != 0 or not np.isfinite(rcond) or rcond < rcond_min:
		raise SingularSystemError(
			f"system is singular to working precision (rcond={rcond:.3e})",
			rcond=rcond,
			ctx={"n": n},
		)

	x = sla.lu_solve((lu, piv), bs, check_finite=False)
	denom = np.linalg.norm(bs, "fro")
	residual = _relative_residual(As, x, bs, denom)
	for _ in range(REFINE_STEPS):
		if residual <= residual_tol:
			break
		# one step of iterative refinement reusing the factors
		candidate = x + sla.lu_solve((lu, piv), bs - As @ x, check_finite=False)
		improved = _relative_residual(As, candidate, bs, denom)
		if not improved < residual:
			break
		x, residual = candidate, improved
	if not residual <= residual_tol:
		raise SolveAccuracyError(
			f"relative residual {residual:.3e} exceeds {residual_tol:.1e}",
			ctx={"residual": residual, "n": n},
		)

	sigma = x[:n]
	phi = x[n] if neutral_weights is not None else None
	logger.debug("system solved", n=n, columns=V.shape[1], rcond=rcond, residual=residual)
	return ChargeSolution(sigma=sigma, residual=residual, rcond=rcond, reference_potential=phi)
