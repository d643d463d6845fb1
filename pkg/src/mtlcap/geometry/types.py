from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Annotated

from pydantic import BaseModel, ConfigDict, Field

from ..enum import ChoiceMixin
from ..exceptions import GeometryError

MM = 1e-3


class BoundaryKind(ChoiceMixin):
	conductor = "conductor_dielectric"
	dielectric = "dielectric_dielectric"


class Family(ChoiceMixin):
	mplp1 = "MPLP1"
	mplp2 = "MPLP2"
	generic = "Generic"


@dataclass(frozen=True, slots=True)
class Point:
	x: float
	y: float

	def __post_init__(self) -> None:
		if not (math.isfinite(self.x) and math.isfinite(self.y)):
			raise GeometryError("non-finite coordinate", ctx={"x": self.x, "y": self.y})

	def __sub__(self, other: Point) -> tuple[float, float]:
		return self.x - other.x, self.y - other.y


def _unit(start: Point, end: Point) -> tuple[float, float]:
	dx, dy = end - start
	length = math.hypot(dx, dy)
	return dx / length, dy / length


@dataclass(frozen=True, slots=True)
class BoundaryEdge:
	"""
	Straight piece of a conductor surface or of a dielectric interface.

	The unit normal is the tangent rotated 90 degrees counter-clockwise.
	``eps_pos`` is the relative permittivity on the side the normal points to.
	For conductor edges the normal points out of the metal and ``eps_neg``
	mirrors ``eps_pos``.
	"""

	start: Point
	end: Point
	kind: BoundaryKind
	conductor_id: int | None
	eps_pos: float
	eps_neg: float
	seg_count: int = 1

	def __post_init__(self) -> None:
		if self.start == self.end:
			raise GeometryError("degenerate edge", ctx={"at": (self.start.x, self.start.y)})
		if self.kind == BoundaryKind.conductor:
			if self.conductor_id is None or self.conductor_id < 0:
				raise GeometryError("conductor edge without conductor id")
		else:
			if self.conductor_id is not None:
				raise GeometryError("dielectric edge carries a conductor id")
			if self.eps_pos == self.eps_neg:
				raise GeometryError(
					"equal permittivities across an interface",
					ctx={"eps": self.eps_pos, "start": (self.start.x, self.start.y)},
				)
		if self.eps_pos < 1 or self.eps_neg < 1:
			raise GeometryError("relative permittivity below 1")

	@property
	def length(self) -> float:
		return math.hypot(*(self.end - self.start))

	@property
	def is_vertical(self) -> bool:
		dx, dy = self.end - self.start
		return abs(dx) <= abs(dy)

	@property
	def normal(self) -> tuple[float, float]:
		tx, ty = _unit(self.start, self.end)
		return -ty, tx


@dataclass(frozen=True, slots=True)
class Segment:
	start: Point
	end: Point
	kind: BoundaryKind
	conductor_id: int | None
	eps_pos: float
	eps_neg: float
	edge_id: int
	parent_id: int | None = None

	@property
	def midpoint(self) -> Point:
		return Point(0.5 * (self.start.x + self.end.x), 0.5 * (self.start.y + self.end.y))

	@property
	def length(self) -> float:
		return math.hypot(*(self.end - self.start))

	@property
	def tangent(self) -> tuple[float, float]:
		return _unit(self.start, self.end)

	@property
	def normal(self) -> tuple[float, float]:
		tx, ty = self.tangent
		return -ty, tx


Positive = Annotated[float, Field(gt=0)]


class Layer(BaseModel):
	model_config = ConfigDict(frozen=True, extra="forbid")

	height: Positive
	eps: Annotated[float, Field(ge=1)]


class StructureSpec(BaseModel):
	"""
	Parametric cross section, all lengths in metres.

	``widths`` and ``gaps`` hold either one value per strip (per gap) or a single
	value applied to all of them. The margin ``d`` is derived from the total
	width ``l`` when only ``l`` is given.
	"""

	model_config = ConfigDict(frozen=True, extra="forbid")

	family: Family
	m: Annotated[int, Field(ge=1)]
	t: Positive
	widths: tuple[Positive, ...]
	gaps: tuple[float, ...] = ()
	d: float | None = None
	l: float | None = None
	layers: tuple[Layer, ...] = Field(min_length=1)
	conductor_layer: Annotated[int, Field(ge=1)] = 1
	ground_thickness: Positive = 0.01 * MM

	@property
	def w(self) -> tuple[float, ...]:
		if len(self.widths) == 1:
			return self.widths * self.m
		if len(self.widths) != self.m:
			raise GeometryError(
				f"expected 1 or {self.m} widths, got {len(self.widths)}", ctx={"m": self.m}
			)
		return self.widths

	@property
	def s(self) -> tuple[float, ...]:
		if self.m == 1:
			return ()
		if len(self.gaps) == 1:
			return self.gaps * (self.m - 1)
		if len(self.gaps) != self.m - 1:
			raise GeometryError(
				f"expected 1 or {self.m - 1} gaps, got {len(self.gaps)}", ctx={"m": self.m}
			)
		return self.gaps

	@property
	def margin(self) -> float:
		span = math.fsum(self.w) + math.fsum(self.s)
		match self.d, self.l:
			case None, None:
				raise GeometryError("either margin d or total width l is required")
			case d, None:
				return d
			case None, l:
				return (l - span) / 2
			case d, l:
				if not math.isclose(2 * d + span, l, rel_tol=1e-12):
					raise GeometryError(
						"margin and total width disagree (geometry over-constrained)",
						ctx={"d": d, "l": l},
					)
				return d

	@property
	def total_width(self) -> float:
		if self.l is not None:
			return self.l
		return 2 * self.margin + math.fsum(self.w) + math.fsum(self.s)

	@property
	def height(self) -> float:
		return math.fsum(layer.height for layer in self.layers)

	def spans(self) -> list[tuple[float, float]]:
		"""Left and right abscissae of every strip, left to right."""
		out: list[tuple[float, float]] = []
		x = self.margin
		gaps = (*self.s, 0.0)
		for width, gap in zip(self.w, gaps, strict=True):
			out.append((x, x + width))
			x = x + width + gap
		return out
