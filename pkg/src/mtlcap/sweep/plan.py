from __future__ import annotations

import math
from typing import Annotated

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from ..exceptions import GeometryError, SweepError
from ..geometry import StructureSpec, check_layout, parse_parameter, with_parameter


class SweepParameter(BaseModel):
	"""One varied quantity; lengths in metres, permittivities relative."""

	model_config = ConfigDict(frozen=True, extra="forbid")

	name: str
	values: tuple[Annotated[float, Field(gt=0)], ...] = Field(min_length=1)

	@field_validator("name")
	@classmethod
	def _known(cls, v: str) -> str:
		try:
			parse_parameter(v)
		except GeometryError as e:
			raise ValueError(e.desc) from e
		return v


class SweepPlan(BaseModel):
	"""
	Parameters varied together: point ``i`` takes the ``i``-th value of every
	parameter. Under ``hold_envelope`` width and gap changes move the margin.
	"""

	model_config = ConfigDict(frozen=True, extra="forbid")

	base: StructureSpec
	parameters: tuple[SweepParameter, ...] = Field(min_length=1)
	hold_envelope: bool = True

	@model_validator(mode="after")
	def _aligned(self) -> SweepPlan:
		counts = {len(p.values) for p in self.parameters}
		if len(counts) != 1:
			raise ValueError("all sweep parameters need the same number of values")
		return self

	@property
	def n_points(self) -> int:
		return len(self.parameters[0].values)

	@property
	def label(self) -> str:
		return "+".join(p.name for p in self.parameters)

	def values_at(self, i: int) -> dict[str, float]:
		return {p.name: p.values[i] for p in self.parameters}

	def spec_at(self, i: int) -> StructureSpec:
		if not 0 <= i < self.n_points:
			raise SweepError(f"point {i} outside a sweep of {self.n_points}", ctx={"point": i})
		spec = self.base
		for name, value in self.values_at(i).items():
			spec = with_parameter(spec, name, value, hold_envelope=self.hold_envelope)
		check_layout(spec)
		return spec


def plan_from_range(nominal: float, span: float, step: float) -> tuple[float, ...]:
	"""``nominal*(1 + p/100)`` for ``p`` from ``-span`` to ``+span`` percent, ``step`` apart."""
	if step <= 0 or span < 0:
		raise SweepError(
			"span must be non-negative and step positive", ctx={"span": span, "step": step}
		)
	count = 2 * span / step
	if not math.isclose(count, round(count), abs_tol=1e-9):
		raise SweepError(
			f"step {step}% does not divide the range of +/-{span}%",
			ctx={"span": span, "step": step},
		)
	return tuple(nominal * (1 + (-span + i * step) / 100) for i in range(round(count) + 1))


def presolve_point(plan: SweepPlan) -> int:
	"""
	Index of the pre-solve point along the first parameter: the median for
	equidistant values (lower middle when even), otherwise the value closest
	to the arithmetic mean.
	"""
	values = np.asarray(plan.parameters[0].values, dtype=np.float64)
	n = values.size
	if n <= 2:
		return 0
	steps = np.diff(values)
	if np.allclose(steps, steps[0], rtol=1e-9, atol=0.0):
		return (n - 1) // 2
	return int(np.argmin(np.abs(values - values.mean())))
