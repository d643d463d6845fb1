from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Literal

import numpy as np

from ..geometry import (
	Mesh,
	RefinementSet,
	StructureSpec,
	build_structure,
	discretize,
	initial_plan,
	refine,
)
from ..log import bound_context, get_logger
from ..refine import RefinementConfig, select_method1
from ..system import (
	CapacitanceMatrix,
	ChangeMask,
	SystemMatrix,
	assemble,
	diff_mask,
	evaluate,
	partial_reassemble,
	solve_system,
)
from .plan import SweepPlan, presolve_point

logger = get_logger("mtlcap.sweep")


@dataclass(frozen=True, eq=False)
class SweepPoint:
	index: int
	values: dict[str, float]
	capacitance: CapacitanceMatrix
	seconds: float
	assembly: Literal["full", "partial"]

	def as_dict(self) -> dict[str, object]:
		return {
			"index": self.index,
			"values": self.values,
			"assembly": self.assembly,
			"n_segments": self.capacitance.n_segments,
		}


@dataclass(frozen=True, eq=False)
class SweepResult:
	method: str
	plan: SweepPlan
	points: tuple[SweepPoint, ...]
	presolve_seconds: float
	t_tot: float
	refinement: RefinementSet
	mask: ChangeMask | None = None
	systems: tuple[SystemMatrix, ...] = field(default=(), repr=False)

	@property
	def t_mid(self) -> float:
		return float(np.mean([p.seconds for p in self.points]))

	@property
	def unchanged_fraction(self) -> float | None:
		return None if self.mask is None else self.mask.unchanged_fraction

	def timing_dict(self) -> dict[str, object]:
		return {
			"method": self.method,
			"points": len(self.points),
			"presolve_seconds": self.presolve_seconds,
			"t_tot": self.t_tot,
			"t_mid": self.t_mid,
			"per_point": [p.seconds for p in self.points],
		}

	def as_dict(self) -> dict[str, object]:
		return {
			"method": self.method,
			"parameters": self.plan.label,
			"points": [p.as_dict() for p in self.points],
			"unchanged_fraction": self.unchanged_fraction,
			"refined_segments": len(self.refinement),
		}


@dataclass(frozen=True)
class _Presolve:
	refinement: RefinementSet
	seconds: float
	index: int


def _initial_mesh(spec: StructureSpec, config: RefinementConfig) -> Mesh:
	edges = build_structure(spec)
	return discretize(edges, initial_plan(edges, config.across, config.along), spec=spec)


def derive_refinement(
	plan: SweepPlan,
	config: RefinementConfig | None = None,
	*,
	threads: int | None = None,
	block_pairs: int | None = None,
) -> RefinementSet:
	return _presolve(plan, config or RefinementConfig(), threads, block_pairs).refinement


def _presolve(
	plan: SweepPlan, config: RefinementConfig, threads: int | None, block_pairs: int | None
) -> _Presolve:
	start = time.perf_counter()
	index = presolve_point(plan)
	with bound_context(step="presolve", point=index):
		mesh = _initial_mesh(plan.spec_at(index), config)
		ev = evaluate(mesh, threads=threads, block_pairs=block_pairs, method="presolve")
		ids = select_method1(mesh, ev.solution.sigma, config.k)
		refinement = RefinementSet.from_ids(mesh, ids)
	seconds = time.perf_counter() - start
	logger.info("presolve done", point=index, n=mesh.size, refined=len(refinement), seconds=seconds)
	return _Presolve(refinement, seconds, index)


def _point_mesh(
	plan: SweepPlan, i: int, config: RefinementConfig, refinement: RefinementSet
) -> Mesh:
	mesh = _initial_mesh(plan.spec_at(i), config)
	return refine(mesh, refinement.to_ids(mesh))


def run_method1(
	plan: SweepPlan,
	config: RefinementConfig | None = None,
	*,
	threads: int | None = None,
	block_pairs: int | None = None,
	keep_systems: bool = False,
) -> SweepResult:
	"""
	Sweep with one pre-solve and a frozen refinement. The first two points are
	assembled in full; their difference marks the entries that move, and every
	later point recomputes only those on top of the first point's matrix.
	"""
	config = config or RefinementConfig()
	opts = {"threads": threads, "block_pairs": block_pairs}
	pre = _presolve(plan, config, threads, block_pairs)

	points: list[SweepPoint] = []
	systems: list[SystemMatrix] = []
	base: SystemMatrix | None = None
	mask: ChangeMask | None = None
	for i in range(plan.n_points):
		with bound_context(method="I", point=i):
			start = time.perf_counter()
			mesh = _point_mesh(plan, i, config, pre.refinement)
			if base is None:
				system = base = assemble(mesh, **opts)
			elif mask is None:
				system = assemble(mesh, **opts)
				mask = diff_mask(base, system)
				logger.info("change mask built", unchanged_fraction=mask.unchanged_fraction)
			else:
				system = partial_reassemble(base, mesh, mask, **opts)
			ev = solve_system(mesh, system, method="I", plan="method1")
			seconds = time.perf_counter() - start
		points.append(
			SweepPoint(
				i, plan.values_at(i), ev.capacitance, seconds, "full" if i < 2 else "partial"
			)
		)
		if keep_systems:
			systems.append(system)

	t_tot = pre.seconds + sum(p.seconds for p in points)
	logger.info("method I sweep done", points=len(points), t_tot=t_tot)
	return SweepResult(
		method="I",
		plan=plan,
		points=tuple(points),
		presolve_seconds=pre.seconds,
		t_tot=t_tot,
		refinement=pre.refinement,
		mask=mask,
		systems=tuple(systems),
	)


def run_method2(
	plan: SweepPlan,
	config: RefinementConfig | None = None,
	*,
	refinement: RefinementSet | None = None,
	threads: int | None = None,
	block_pairs: int | None = None,
	keep_systems: bool = False,
) -> SweepResult:
	"""Full reassembly at every point with the same refinement as Method I."""
	config = config or RefinementConfig()
	opts = {"threads": threads, "block_pairs": block_pairs}
	presolve_seconds = 0.0
	if refinement is None:
		pre = _presolve(plan, config, threads, block_pairs)
		refinement, presolve_seconds = pre.refinement, pre.seconds

	points: list[SweepPoint] = []
	systems: list[SystemMatrix] = []
	for i in range(plan.n_points):
		with bound_context(method="II", point=i):
			start = time.perf_counter()
			mesh = _point_mesh(plan, i, config, refinement)
			system = assemble(mesh, **opts)
			ev = solve_system(mesh, system, method="II", plan="method1")
			seconds = time.perf_counter() - start
		points.append(SweepPoint(i, plan.values_at(i), ev.capacitance, seconds, "full"))
		if keep_systems:
			systems.append(system)

	t_tot = sum(p.seconds for p in points)
	logger.info("method II sweep done", points=len(points), t_tot=t_tot)
	return SweepResult(
		method="II",
		plan=plan,
		points=tuple(points),
		presolve_seconds=presolve_seconds,
		t_tot=t_tot,
		refinement=refinement,
		systems=tuple(systems),
	)
