from dataclasses import dataclass

import numpy as np

from ..exceptions import SweepError
from .engine import SweepResult


@dataclass(frozen=True)
class SweepComparison:
	savings_percent: float
	equivalence: float
	identical: bool
	t_tot_method1: float
	t_tot_method2: float
	t_mid_method1: float
	t_mid_method2: float

	def as_dict(self) -> dict[str, object]:
		return dict(self.__dict__)


def compare(r1: SweepResult, r2: SweepResult) -> SweepComparison:
	"""Time saved by the incremental sweep ``r1`` over the full one ``r2``."""
	if r1.plan != r2.plan or len(r1.points) != len(r2.points):
		raise SweepError("sweeps were run on different plans")
	if r2.t_tot <= 0:
		raise SweepError("reference sweep has no recorded time")

	equivalence = 0.0
	identical = True
	for p1, p2 in zip(r1.points, r2.points, strict=True):
		a, b = p1.capacitance.C, p2.capacitance.C
		identical = identical and a.shape == b.shape and bool(np.array_equal(a, b))
		denom = np.linalg.norm(b)
		equivalence = max(equivalence, float(np.linalg.norm(a - b) / denom) if denom else 0.0)

	return SweepComparison(
		savings_percent=(r2.t_tot - r1.t_tot) / r2.t_tot * 100.0,
		equivalence=equivalence,
		identical=identical,
		t_tot_method1=r1.t_tot,
		t_tot_method2=r2.t_tot,
		t_mid_method1=r1.t_mid,
		t_mid_method2=r2.t_mid,
	)
