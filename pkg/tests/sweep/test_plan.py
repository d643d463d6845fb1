import pytest
from pydantic import ValidationError

from mtlcap.exceptions import GeometryError, SweepError
from mtlcap.geometry import MM, get_parameter
from mtlcap.sweep import SweepParameter, SweepPlan, plan_from_range, presolve_point


class TestRange:
	def test_fifteen_points(self):
		values = plan_from_range(2.0, 7, 1)
		assert len(values) == 15
		assert values[0] == pytest.approx(1.86)
		assert values[7] == pytest.approx(2.0)
		assert values[-1] == pytest.approx(2.14)

	def test_step_must_divide(self):
		with pytest.raises(SweepError):
			plan_from_range(1.0, 7, 3)

	def test_bad_step(self):
		with pytest.raises(SweepError):
			plan_from_range(1.0, 7, 0)

	def test_zero_span(self):
		assert plan_from_range(3.0, 0, 1) == (3.0,)


class TestPresolvePoint:
	def _plan(self, base, values):
		return SweepPlan(base=base, parameters=(SweepParameter(name="eps_1", values=values),))

	def test_median_of_odd(self, small_mplp1):
		assert presolve_point(self._plan(small_mplp1, tuple(plan_from_range(3.8, 7, 1)))) == 7

	def test_lower_middle_of_even(self, small_mplp1):
		assert presolve_point(self._plan(small_mplp1, (1.0, 2.0, 3.0, 4.0))) == 1

	def test_closest_to_mean(self, small_mplp1):
		# mean 3.25
		assert presolve_point(self._plan(small_mplp1, (1.0, 1.5, 3.5, 7.0))) == 2

	def test_short(self, small_mplp1):
		assert presolve_point(self._plan(small_mplp1, (2.0, 3.0))) == 0


class TestSweepPlan:
	def test_points_move_together(self, small_mplp1):
		plan = SweepPlan(
			base=small_mplp1,
			parameters=(
				SweepParameter(name="t", values=(0.01 * MM, 0.02 * MM)),
				SweepParameter(name="eps_2", values=(2.0, 2.5)),
			),
		)
		assert plan.n_points == 2
		assert plan.label == "t+eps_2"
		spec = plan.spec_at(1)
		assert get_parameter(spec, "t") == 0.02 * MM
		assert get_parameter(spec, "eps_2") == 2.5

	def test_hold_envelope(self, small_mplp1):
		plan = SweepPlan(
			base=small_mplp1,
			parameters=(SweepParameter(name="w", values=(0.04 * MM,)),),
		)
		assert plan.spec_at(0).total_width == small_mplp1.total_width
		grown = plan.model_copy(update={"hold_envelope": False}).spec_at(0)
		assert grown.margin == pytest.approx(small_mplp1.margin)

	def test_unaligned(self, small_mplp1):
		with pytest.raises(ValidationError):
			SweepPlan(
				base=small_mplp1,
				parameters=(
					SweepParameter(name="t", values=(1e-5, 2e-5)),
					SweepParameter(name="eps_1", values=(3.0,)),
				),
			)

	def test_unknown_parameter(self):
		with pytest.raises(ValidationError):
			SweepParameter(name="h_1", values=(1.0,))

	def test_out_of_range_point(self, t_plan):
		with pytest.raises(SweepError):
			t_plan.spec_at(t_plan.n_points)

	def test_invalid_geometry_point(self, small_mplp1):
		plan = SweepPlan(
			base=small_mplp1,
			parameters=(SweepParameter(name="t", values=(0.2 * MM,)),),
		)
		with pytest.raises(GeometryError):
			plan.spec_at(0)
