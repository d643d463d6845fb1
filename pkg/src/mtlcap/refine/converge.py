from __future__ import annotations

import time
from collections.abc import Sequence
from dataclasses import dataclass, field

import numpy as np

from ..geometry import Mesh, StructureSpec, build_structure, discretize, initial_plan, refine
from ..log import bound_context, get_logger
from ..system import CapacitanceMatrix, Evaluation, evaluate
from .config import RefinementConfig, Strategy
from .metrics import delta_c, delta_f
from .plans import describe_uniform, uniform_plan
from .selectors import select_method1, select_top25

logger = get_logger("mtlcap.refine")


@dataclass(frozen=True)
class IterationRecord:
	iteration: int
	n_segments: int
	k_value: float
	rel_change: float | None
	selected: int
	seconds: float


@dataclass(frozen=True, eq=False)
class ConvergenceReport:
	records: tuple[IterationRecord, ...]
	capacitance: CapacitanceMatrix
	converged: bool
	mesh: Mesh
	strategy: Strategy
	evaluation: Evaluation | None = field(default=None, repr=False)

	@property
	def iterations(self) -> int:
		return len(self.records) - 1

	def as_dict(self) -> dict[str, object]:
		return {
			"strategy": self.strategy,
			"converged": self.converged,
			"iterations": self.iterations,
			"n_segments": self.mesh.size,
			"records": [
				{k: v for k, v in r.__dict__.items() if k != "seconds"} for r in self.records
			],
			"first_row_pf_per_m": self.capacitance.pf_per_m[0],
		}


def select(mesh: Mesh, ev: Evaluation, config: RefinementConfig) -> set[int]:
	sigma = ev.solution.sigma
	if config.strategy == Strategy.top25:
		return select_top25(mesh, sigma)
	return select_method1(mesh, sigma, config.k)


def converge(
	spec: StructureSpec,
	config: RefinementConfig | None = None,
	*,
	threads: int | None = None,
	block_pairs: int | None = None,
) -> ConvergenceReport:
	"""
	Refine where the charge density is largest until the Frobenius norm of C
	settles. Running out of iterations is reported, not raised.
	"""
	config = config or RefinementConfig()
	edges = build_structure(spec)
	opts = {"threads": threads, "block_pairs": block_pairs}

	if config.strategy == Strategy.uniform:
		start = time.perf_counter()
		mesh = discretize(edges, uniform_plan(edges, spec.t, config.n), spec=spec)
		plan = describe_uniform(config.n)
		ev = evaluate(mesh, method="uniform", plan=plan, **opts)
		record = IterationRecord(
			0, mesh.size, ev.capacitance.frobenius, None, 0, time.perf_counter() - start
		)
		return ConvergenceReport((record,), ev.capacitance, True, mesh, config.strategy, ev)

	method = config.strategy.value
	start = time.perf_counter()
	mesh = discretize(edges, initial_plan(edges, config.across, config.along), spec=spec)
	ev = evaluate(mesh, method=method, plan="initial", **opts)
	k_prev = ev.capacitance.frobenius
	records = [IterationRecord(0, mesh.size, k_prev, None, 0, time.perf_counter() - start)]
	converged = False

	for it in range(1, config.max_iters + 1):
		with bound_context(iteration=it):
			start = time.perf_counter()
			ids = select(mesh, ev, config)
			mesh = refine(mesh, ids)
			ev = evaluate(mesh, method=method, plan=f"refined x{it}", **opts)
			k = ev.capacitance.frobenius
			rel = abs(k - k_prev) / abs(k_prev)
			records.append(
				IterationRecord(it, mesh.size, k, rel, len(ids), time.perf_counter() - start)
			)
			logger.info("refinement step", n=mesh.size, k=k, rel_change=rel, selected=len(ids))
			if rel <= config.tol:
				converged = True
				break
			k_prev = k

	if not converged:
		logger.warning("refinement did not converge", iterations=config.max_iters, tol=config.tol)
	return ConvergenceReport(tuple(records), ev.capacitance, converged, mesh, config.strategy, ev)


@dataclass(frozen=True)
class UniformLevel:
	n: int
	n_segments: int
	first_row_pf: np.ndarray
	delta_c: float | None
	delta_f: float | None


@dataclass(frozen=True)
class UniformStudy:
	levels: tuple[UniformLevel, ...]

	def as_dict(self) -> dict[str, object]:
		return {"levels": [lvl.__dict__ for lvl in self.levels]}


def uniform_study(
	spec: StructureSpec,
	ns: Sequence[int] = (1, 3, 5, 7, 9),
	*,
	threads: int | None = None,
	block_pairs: int | None = None,
) -> UniformStudy:
	"""First rows of C for segment lengths t/n and the changes between successive n."""
	edges = build_structure(spec)
	levels: list[UniformLevel] = []
	prev: np.ndarray | None = None
	for n in ns:
		with bound_context(plan=describe_uniform(n)):
			mesh = discretize(edges, uniform_plan(edges, spec.t, n), spec=spec)
			row = evaluate(
				mesh, threads=threads, block_pairs=block_pairs, method="uniform"
			).capacitance.pf_per_m[0]
		levels.append(
			UniformLevel(
				n=n,
				n_segments=mesh.size,
				first_row_pf=row,
				delta_c=None if prev is None else delta_c(prev[0], row[0]),
				delta_f=None if prev is None else delta_f(prev, row),
			)
		)
		prev = row
	return UniformStudy(tuple(levels))
