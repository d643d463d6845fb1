import pytest

from mtlcap.geometry import MM
from mtlcap.refine import RefinementConfig
from mtlcap.sweep import SweepParameter, SweepPlan


@pytest.fixture
def quick_config(coarse) -> RefinementConfig:
	return RefinementConfig(**coarse)


@pytest.fixture
def t_plan(small_mplp1) -> SweepPlan:
	values = tuple(t * MM for t in (0.018, 0.019, 0.02, 0.021, 0.022))
	return SweepPlan(base=small_mplp1, parameters=(SweepParameter(name="t", values=values),))


@pytest.fixture
def eps_plan(small_mplp1) -> SweepPlan:
	return SweepPlan(
		base=small_mplp1,
		parameters=(SweepParameter(name="eps_2", values=(1.8, 1.9, 2.0, 2.1, 2.2)),),
	)
