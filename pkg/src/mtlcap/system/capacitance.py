import time

import numpy as np

from ..geometry import Mesh
from ..log import get_logger
from .assembly import assemble
from .solve import solve
from .types import CapacitanceMatrix, ChargeSolution, Evaluation, ExcitationMatrix, SystemMatrix

logger = get_logger("mtlcap.system")


def build_excitation(mesh: Mesh) -> ExcitationMatrix:
	"""Unit potential on one signal conductor per column, zero elsewhere."""
	V = np.zeros((mesh.size, mesh.conductor_count), dtype=np.float64)
	on = np.flatnonzero(mesh.conductor > 0)
	V[on, mesh.conductor[on] - 1] = 1.0
	return ExcitationMatrix(V=V)


def extract_capacitance(
	mesh: Mesh,
	solution: ChargeSolution,
	*,
	method: str = "",
	plan: str = "",
) -> CapacitanceMatrix:
	"""Free charge per conductor: total density times the adjacent permittivity."""
	weight = mesh.eps_pos * mesh.length
	nc = mesh.conductor_count
	C = np.zeros((nc, nc), dtype=np.float64)
	for i in range(1, nc + 1):
		sel = mesh.conductor == i
		C[i - 1] = np.sum(weight[sel, None] * solution.sigma[sel], axis=0)
	return CapacitanceMatrix(
		C=C, n_segments=mesh.size, conductor_count=nc, method=method, plan=plan
	)


def solve_system(
	mesh: Mesh,
	system: SystemMatrix,
	*,
	method: str = "",
	plan: str = "",
	timings: dict[str, float] | None = None,
) -> Evaluation:
	"""Neutral-reference solve and extraction on an already assembled matrix."""
	timings = dict(timings or {})
	excitation = build_excitation(mesh)
	start = time.perf_counter()
	solution = solve(
		system.S,
		excitation.V,
		neutral_weights=mesh.length,
		potential_rows=mesh.is_conductor,
	)
	timings["solve"] = time.perf_counter() - start
	capacitance = extract_capacitance(mesh, solution, method=method, plan=plan)
	return Evaluation(
		system=system,
		excitation=excitation,
		solution=solution,
		capacitance=capacitance,
		timings=timings,
	)


def evaluate(
	mesh: Mesh,
	*,
	threads: int | None = None,
	block_pairs: int | None = None,
	method: str = "",
	plan: str = "",
) -> Evaluation:
	start = time.perf_counter()
	system = assemble(mesh, threads=threads, block_pairs=block_pairs)
	ev = solve_system(
		mesh, system, method=method, plan=plan, timings={"assemble": time.perf_counter() - start}
	)
	logger.info(
		"mesh evaluated",
		n=mesh.size,
		conductors=mesh.conductor_count,
		assemble_s=round(ev.timings["assemble"], 4),
		solve_s=round(ev.timings["solve"], 4),
	)
	return ev
