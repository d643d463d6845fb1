from dataclasses import dataclass, field

import numpy as np
from numpy.typing import NDArray

EPS0 = 8.8541878128e-12


@dataclass(frozen=True, eq=False)
class SystemMatrix:
	S: NDArray[np.float64]
	row_map: NDArray[np.int64]

	@property
	def size(self) -> int:
		return int(self.S.shape[0])


@dataclass(frozen=True, eq=False)
class ExcitationMatrix:
	V: NDArray[np.float64]


@dataclass(frozen=True, eq=False)
class ChargeSolution:
	sigma: NDArray[np.float64]
	residual: float
	rcond: float
	reference_potential: NDArray[np.float64] | None = None


@dataclass(frozen=True, eq=False)
class CapacitanceMatrix:
	"""Per-unit-length capacitance in F/m; ``pf_per_m`` scales to pF/m."""

	C: NDArray[np.float64]
	n_segments: int
	conductor_count: int
	method: str = ""
	plan: str = ""

	@property
	def pf_per_m(self) -> NDArray[np.float64]:
		return self.C * 1e12

	@property
	def frobenius(self) -> float:
		return float(np.linalg.norm(self.C, "fro"))

	def as_dict(self) -> dict[str, object]:
		return {
			"n_segments": self.n_segments,
			"conductor_count": self.conductor_count,
			"method": self.method,
			"plan": self.plan,
			"pf_per_m": self.pf_per_m,
		}


@dataclass(frozen=True, eq=False)
class ChangeMask:
	mask: NDArray[np.bool_]

	@property
	def changed(self) -> int:
		return int(np.count_nonzero(self.mask))

	@property
	def unchanged_fraction(self) -> float:
		return 1.0 - self.changed / self.mask.size

	def as_dict(self) -> dict[str, object]:
		return {
			"shape": list(self.mask.shape),
			"changed": self.changed,
			"unchanged_fraction": self.unchanged_fraction,
		}


@dataclass(frozen=True, eq=False)
class Evaluation:
	system: SystemMatrix
	excitation: ExcitationMatrix
	solution: ChargeSolution
	capacitance: CapacitanceMatrix
	timings: dict[str, float] = field(default_factory=dict)
