from __future__ import annotations

from pathlib import Path
from typing import Any

from rich.console import Console
from rich.table import Table

from ..json import write_json
from ..physicality import PhysicalityReport, write_matrix_csv
from ..system import CapacitanceMatrix


class Artifacts:
	"""Writes run artifacts below one directory, honouring the enabled formats."""

	def __init__(self, directory: Path, formats: list[str]) -> None:
		self.directory = directory
		self.formats = set(formats)
		self.written: list[Path] = []

	def _path(self, name: str) -> Path:
		path = self.directory / name
		path.parent.mkdir(parents=True, exist_ok=True)
		return path

	def enabled(self, fmt: str) -> bool:
		return fmt in self.formats

	def json(self, name: str, payload: Any) -> None:
		if self.enabled("json"):
			self.written.append(write_json(self.directory / name, payload))

	def matrix(self, name: str, C: CapacitanceMatrix) -> None:
		if self.enabled("csv"):
			header = f"pF/m; N={C.n_segments}; method={C.method}; plan={C.plan}"
			self.written.append(write_matrix_csv(self._path(name), C.pf_per_m, header=header))

	def record(self, path: Path) -> None:
		self.written.append(path)


def _fmt(value: float) -> str:
	return f"{value:.4g}"


def _pairs(pairs: list[tuple[int, int]]) -> str:
	return ", ".join(f"C{i},{j}" for i, j in pairs)


def print_summary(
	console: Console,
	title: str,
	rows: list[tuple[str, str]],
	report: PhysicalityReport | None = None,
) -> None:
	table = Table(title=title, show_header=False, title_justify="left")
	table.add_column("key", style="bold")
	table.add_column("value")
	for key, value in rows:
		table.add_row(key, value)
	if report is not None:
		verdict = "[green]physical[/green]" if report.verdict else "[red]non-physical[/red]"
		table.add_row("verdict", verdict)
		if report.decay_violations:
			table.add_row("decay violations", _pairs(report.decay_violations))
		if report.positive_off_diagonal:
			pairs = [(i, j) for i, j, _ in report.positive_off_diagonal]
			table.add_row("positive couplings", _pairs(pairs))
		if report.dominance_violations:
			table.add_row("not dominant rows", ", ".join(map(str, report.dominance_violations)))
	console.print(table)


def capacitance_rows(C: CapacitanceMatrix) -> list[tuple[str, str]]:
	pf = C.pf_per_m
	return [
		("N", str(C.n_segments)),
		("N_C", str(C.conductor_count)),
		("C11, pF/m", _fmt(pf[0, 0])),
		("first row, pF/m", " ".join(_fmt(v) for v in pf[0])),
	]
