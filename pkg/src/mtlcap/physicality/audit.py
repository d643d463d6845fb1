from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path

import numpy as np
from numpy.typing import ArrayLike, NDArray

from ..exceptions import ConfigError, DimensionMismatchError
from ..log import get_logger
from ..system import CapacitanceMatrix

logger = get_logger("mtlcap.physicality")

SYM_TOL = 1e-3


@dataclass(frozen=True)
class PhysicalityReport:
	"""Outcome of the structural checks on C; indices are 1-based."""

	symmetric: bool
	max_asymmetry: float
	off_diagonal_sign_ok: bool
	diagonally_dominant: bool
	monotone_decay_ok: bool
	symmetry_checked: bool = True
	positive_off_diagonal: list[tuple[int, int, float]] = field(default_factory=list)
	dominance_violations: list[int] = field(default_factory=list)
	decay_violations: list[tuple[int, int]] = field(default_factory=list)

	@property
	def verdict(self) -> bool:
		checks = [self.off_diagonal_sign_ok, self.diagonally_dominant, self.monotone_decay_ok]
		if self.symmetry_checked:
			checks.append(self.symmetric)
		return all(checks)

	def as_dict(self) -> dict[str, object]:
		return {
			"verdict": self.verdict,
			"symmetry_checked": self.symmetry_checked,
			"symmetric": self.symmetric,
			"max_asymmetry": self.max_asymmetry,
			"off_diagonal_sign_ok": self.off_diagonal_sign_ok,
			"positive_off_diagonal": [list(v) for v in self.positive_off_diagonal],
			"diagonally_dominant": self.diagonally_dominant,
			"dominance_violations": self.dominance_violations,
			"monotone_decay_ok": self.monotone_decay_ok,
			"decay_violations": [list(v) for v in self.decay_violations],
		}


def _matrix(C: CapacitanceMatrix | ArrayLike) -> NDArray[np.float64]:
	arr = C.C if isinstance(C, CapacitanceMatrix) else np.asarray(C, dtype=np.float64)
	if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
		raise DimensionMismatchError(
			"capacitance matrix must be square", ctx={"shape": list(arr.shape)}
		)
	return arr


def _row_checks(
	C: NDArray[np.float64],
	rows: range,
	sign_slack: float,
) -> tuple[list[tuple[int, int, float]], list[int], list[tuple[int, int]]]:
	n = C.shape[1]
	limit = sign_slack * float(np.max(np.abs(C)))
	positive: list[tuple[int, int, float]] = []
	dominance: list[int] = []
	decay: list[tuple[int, int]] = []
	for i in rows:
		row = C[i]
		mag = np.abs(row)
		for j in range(n):
			if j != i and row[j] > limit:
				positive.append((i + 1, j + 1, float(row[j])))
		if mag.sum() - mag[i] > row[i]:
			dominance.append(i + 1)
		# beyond the first neighbour the coupling must not grow with distance
		for j in range(i + 2, n):
			if mag[j] > mag[j - 1]:
				decay.append((i + 1, j + 1))
		for j in range(i - 2, -1, -1):
			if mag[j] > mag[j + 1]:
				decay.append((i + 1, j + 1))
	return positive, dominance, decay


def audit(
	C: CapacitanceMatrix | ArrayLike,
	*,
	sym_tol: float = SYM_TOL,
	sign_slack: float = 0.0,
) -> PhysicalityReport:
	"""Symmetry, sign, diagonal dominance and monotone decay for linearly ordered strips."""
	arr = _matrix(C)
	scale = float(np.max(np.abs(arr)))
	asym = float(np.max(np.abs(arr - arr.T)) / scale) if scale > 0 else 0.0
	positive, dominance, decay = _row_checks(arr, range(arr.shape[0]), sign_slack)
	report = PhysicalityReport(
		symmetric=asym <= sym_tol,
		max_asymmetry=asym,
		off_diagonal_sign_ok=not positive,
		diagonally_dominant=not dominance,
		monotone_decay_ok=not decay,
		positive_off_diagonal=positive,
		dominance_violations=dominance,
		decay_violations=decay,
	)
	logger.info("matrix audited", n=arr.shape[0], verdict=report.verdict)
	return report


def audit_first_row(row: ArrayLike, *, sign_slack: float = 0.0) -> PhysicalityReport:
	"""The row-wise checks on the first row of C alone."""
	arr = np.asarray(row, dtype=np.float64).reshape(1, -1)
	positive, dominance, decay = _row_checks(arr, range(1), sign_slack)
	return PhysicalityReport(
		symmetric=True,
		max_asymmetry=0.0,
		symmetry_checked=False,
		off_diagonal_sign_ok=not positive,
		diagonally_dominant=not dominance,
		monotone_decay_ok=not decay,
		positive_off_diagonal=positive,
		dominance_violations=dominance,
		decay_violations=decay,
	)


def load_matrix_csv(path: str | Path) -> NDArray[np.float64]:
	"""Comma-separated values, ``#`` comments allowed; always returned 2-D."""
	try:
		arr = np.loadtxt(path, delimiter=",", comments="#", dtype=np.float64, ndmin=2)
	except (OSError, ValueError) as exc:
		raise ConfigError(f"cannot read matrix {path}: {exc}", loc=str(path)) from exc
	if arr.size == 0:
		raise ConfigError(f"matrix file {path} is empty", loc=str(path))
	return arr


def audit_file(
	path: str | Path, *, sym_tol: float = SYM_TOL, sign_slack: float = 0.0
) -> PhysicalityReport:
	arr = load_matrix_csv(path)
	if arr.shape[0] == 1:
		return audit_first_row(arr[0], sign_slack=sign_slack)
	return audit(arr, sym_tol=sym_tol, sign_slack=sign_slack)


def write_matrix_csv(path: str | Path, matrix: ArrayLike, *, header: str = "") -> Path:
	"""Write a matrix with six significant digits, the format ``load_matrix_csv`` reads."""
	path = Path(path)
	path.parent.mkdir(parents=True, exist_ok=True)
	arr = np.atleast_2d(np.asarray(matrix, dtype=np.float64))
	np.savetxt(path, arr, fmt="%.6g", delimiter=",", header=header, comments="# ")
	return path
