import numpy as np
import pytest

from mtlcap.geometry import (
	MM,
	build_structure,
	discretize,
	initial_plan,
	mplp1_spec,
	with_parameter,
)
from mtlcap.geometry.types import StructureSpec
from mtlcap.refine import uniform_plan
from mtlcap.system import (
	RESIDUAL_TOL,
	assemble,
	build_excitation,
	evaluate,
	extract_capacitance,
	solve_system,
)


def _mesh(spec, coarse=None):
	edges = build_structure(spec)
	plan = initial_plan(edges) if coarse is None else initial_plan(edges, **coarse)
	return discretize(edges, plan, spec=spec)


def _scaled(spec: StructureSpec, k: float) -> StructureSpec:
	data = spec.model_dump()
	for key in ("t", "d", "l", "ground_thickness"):
		if data[key] is not None:
			data[key] *= k
	data["widths"] = tuple(w * k for w in data["widths"])
	if data["gaps"] is not None:
		data["gaps"] = tuple(g * k for g in data["gaps"])
	for layer in data["layers"]:
		layer["height"] *= k
	return StructureSpec.model_validate(data)


class TestExcitation:
	def test_columns_follow_conductors(self, small_mplp1, coarse):
		mesh = _mesh(small_mplp1, coarse)
		V = build_excitation(mesh).V
		assert V.shape == (mesh.size, 2)
		for c in (1, 2):
			assert np.array_equal(V[:, c - 1] == 1.0, mesh.conductor == c)
		assert not V[mesh.conductor == 0].any()
		assert not V[~mesh.is_conductor].any()


class TestCapacitance:
	def test_signs(self, small_mplp1):
		C = evaluate(_mesh(small_mplp1), threads=2).capacitance.C
		assert (np.diag(C) > 0).all()
		assert C[0, 1] < 0 and C[1, 0] < 0
		# diagonally dominant for lines over a ground plane
		assert (np.diag(C) > np.abs(C).sum(axis=1) - np.diag(C)).all()

	def test_neutrality(self, small_mplp1, coarse):
		mesh = _mesh(small_mplp1, coarse)
		ev = evaluate(mesh, threads=1)
		total = mesh.length @ ev.solution.sigma
		scale = np.abs(mesh.length[:, None] * ev.solution.sigma).sum(axis=0)
		assert np.all(np.abs(total) <= 1e-10 * scale)

	def test_scale_invariant(self, single_strip, coarse):
		a = evaluate(_mesh(single_strip, coarse), threads=1).capacitance.C
		b = evaluate(_mesh(_scaled(single_strip, 7.5), coarse), threads=1).capacitance.C
		np.testing.assert_allclose(a, b, rtol=1e-9)

	def test_permittivity_raises_capacitance(self, single_strip, coarse):
		thin = with_parameter(single_strip, "eps_1", 2.0)
		lo = evaluate(_mesh(thin, coarse), threads=1).capacitance.C[0, 0]
		hi = evaluate(_mesh(single_strip, coarse), threads=1).capacitance.C[0, 0]
		assert hi > lo

	def test_solve_system_reuses_matrix(self, small_mplp1, coarse):
		mesh = _mesh(small_mplp1, coarse)
		system = assemble(mesh, threads=1)
		ev = solve_system(mesh, system, method="top25", plan="3/40", timings={"assemble": 0.5})
		assert ev.system is system
		assert ev.timings["assemble"] == 0.5
		assert ev.timings["solve"] >= 0.0
		assert ev.capacitance.method == "top25"
		assert np.array_equal(ev.capacitance.C, evaluate(mesh, threads=1).capacitance.C)

	def test_extraction_weights_free_charge(self, single_strip, coarse):
		mesh = _mesh(single_strip, coarse)
		ev = evaluate(mesh, threads=1)
		sel = mesh.conductor == 1
		expected = np.sum(mesh.eps_pos[sel] * mesh.length[sel] * ev.solution.sigma[sel, 0])
		got = extract_capacitance(mesh, ev.solution).C[0, 0]
		assert got == pytest.approx(expected, rel=1e-14)

	def test_report_units(self, single_strip, coarse):
		cap = evaluate(_mesh(single_strip, coarse), threads=1).capacitance
		assert cap.pf_per_m[0, 0] == pytest.approx(cap.C[0, 0] * 1e12)
		assert cap.frobenius == pytest.approx(abs(cap.C[0, 0]))
		assert cap.as_dict()["n_segments"] == cap.n_segments

	def test_uniform_mesh_within_residual_tolerance(self):
		# thin strips at t/3 give rcond near 1e-10; a bare LU misses the residual bound
		spec = mplp1_spec(m=4, t=0.005 * MM)
		edges = build_structure(spec)
		mesh = discretize(edges, uniform_plan(edges, spec.t, 3), spec=spec)
		ev = evaluate(mesh)
		assert ev.solution.residual <= RESIDUAL_TOL
		C = ev.capacitance.C
		assert (np.diag(C) > 0).all()
		assert C[0, 1] < 0 and C[1, 2] < 0
