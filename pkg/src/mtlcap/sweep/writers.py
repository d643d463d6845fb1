from __future__ import annotations

import csv
from pathlib import Path

import numpy as np

from ..physicality import write_matrix_csv
from ..system import ChangeMask
from .compare import SweepComparison
from .engine import SweepResult


def write_mask_pbm(path: str | Path, mask: ChangeMask) -> Path:
	"""Plain PBM portrait of the mask: 1 (black) marks a recomputed entry."""
	path = Path(path)
	path.parent.mkdir(parents=True, exist_ok=True)
	rows, cols = mask.mask.shape
	bits = np.where(mask.mask, "1", "0")
	with path.open("w", encoding="ascii", newline="\n") as fh:
		fh.write(f"P1\n{cols} {rows}\n")
		for line in bits:
			# plain PBM lines must stay under 70 characters
			for lo in range(0, cols, 64):
				fh.write("".join(line[lo : lo + 64]) + "\n")
	return path


def write_point_matrices(directory: str | Path, result: SweepResult) -> list[Path]:
	directory = Path(directory)
	out = []
	for point in result.points:
		values = ", ".join(f"{k}={v:.6g}" for k, v in point.values.items())
		out.append(
			write_matrix_csv(
				directory / f"method{result.method}_point{point.index:02d}.csv",
				point.capacitance.pf_per_m,
				header=f"pF/m; {values}",
			)
		)
	return out


TIMING_COLUMNS = (
	"parameter",
	"m",
	"t_mid_method1",
	"t_tot_method1",
	"t_mid_method2",
	"t_tot_method2",
	"savings_percent",
)


def write_timing_table(
	path: str | Path, rows: list[tuple[str, int, SweepComparison]]
) -> Path:
	"""One line per (parameter set, conductor count) in the layout of the timing tables."""
	path = Path(path)
	path.parent.mkdir(parents=True, exist_ok=True)
	with path.open("w", encoding="utf-8", newline="") as fh:
		writer = csv.writer(fh, lineterminator="\n")
		writer.writerow(TIMING_COLUMNS)
		for label, m, cmp in rows:
			writer.writerow(
				[
					label,
					m,
					f"{cmp.t_mid_method1:.3f}",
					f"{cmp.t_tot_method1:.3f}",
					f"{cmp.t_mid_method2:.3f}",
					f"{cmp.t_tot_method2:.3f}",
					f"{cmp.savings_percent:.1f}",
				]
			)
	return path
