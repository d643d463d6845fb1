from __future__ import annotations

from itertools import accumulate, pairwise

from ..exceptions import GeometryError
from ..log import get_logger
from .types import MM, BoundaryEdge, BoundaryKind, Family, Layer, Point, StructureSpec

AIR = 1.0

logger = get_logger("mtlcap.geometry")


def check_layout(spec: StructureSpec) -> None:
	"""Raise ``GeometryError`` when the structure cannot be laid out."""
	d = spec.margin
	if d <= 0:
		raise GeometryError(
			f"computed margin d={d:.6g} m is not positive (geometry over-constrained)",
			ctx={"d": d},
		)
	for i, gap in enumerate(spec.s, start=1):
		if gap <= 0:
			raise GeometryError(f"gap {i} is not positive", ctx={"gap": i, "value": gap})
	n = len(spec.layers)
	if spec.conductor_layer > n:
		raise GeometryError(
			f"conductor layer {spec.conductor_layer} outside a stack of {n}",
			ctx={"conductor_layer": spec.conductor_layer},
		)
	if spec.conductor_layer < n:
		cover = spec.layers[spec.conductor_layer]
		if spec.t >= cover.height:
			raise GeometryError(
				"strip thickness does not fit inside the covering layer",
				ctx={"t": spec.t, "cover": cover.height},
			)
	eps = [AIR, *(layer.eps for layer in spec.layers), AIR]
	for below, above in pairwise(eps[1:]):
		if below == above:
			raise GeometryError("equal permittivities across an interface", ctx={"eps": below})


def _conductor(a: Point, b: Point, cid: int, eps: float) -> BoundaryEdge:
	return BoundaryEdge(a, b, BoundaryKind.conductor, cid, eps, eps)


def _interface(a: Point, b: Point, eps_pos: float, eps_neg: float) -> BoundaryEdge:
	return BoundaryEdge(a, b, BoundaryKind.dielectric, None, eps_pos, eps_neg)


def _uncovered(width: float, spans: list[tuple[float, float]]) -> list[tuple[float, float]]:
	breaks = [0.0, *(x for span in spans for x in span), width]
	return [(a, b) for a, b in pairwise(breaks)][::2]


def build_layered(spec: StructureSpec) -> list[BoundaryEdge]:
	"""
	Ground, strips, interfaces, stack top and side faces, always in that order.

	Every closed contour runs clockwise so the rotated tangent points out of
	the metal.
	"""
	check_layout(spec)

	g = spec.ground_thickness
	width = spec.total_width
	spans = spec.spans()
	eps = [layer.eps for layer in spec.layers]
	tops = list(accumulate(layer.height for layer in spec.layers))
	bottoms = [0.0, *tops[:-1]]
	n = len(eps)
	k = spec.conductor_layer
	on_top = k == n

	y_c = tops[k - 1]
	y_t = y_c + spec.t
	eps_below = eps[k - 1]
	eps_around = AIR if on_top else eps[k]

	edges: list[BoundaryEdge] = []

	breaks = [0.0, *(x for span in spans for x in span), width]
	for a, b in pairwise(breaks):
		edges.append(_conductor(Point(a, 0.0), Point(b, 0.0), 0, eps[0]))
	edges.append(_conductor(Point(width, 0.0), Point(width, -g), 0, AIR))
	edges.append(_conductor(Point(width, -g), Point(0.0, -g), 0, AIR))
	edges.append(_conductor(Point(0.0, -g), Point(0.0, 0.0), 0, AIR))

	for cid, (xl, xr) in enumerate(spans, start=1):
		edges.append(_conductor(Point(xl, y_t), Point(xr, y_t), cid, eps_around))
		edges.append(_conductor(Point(xr, y_t), Point(xr, y_c), cid, eps_around))
		edges.append(_conductor(Point(xr, y_c), Point(xl, y_c), cid, eps_below))
		edges.append(_conductor(Point(xl, y_c), Point(xl, y_t), cid, eps_around))

	for i in range(1, n):
		y = tops[i - 1]
		pieces = _uncovered(width, spans) if i == k else [(0.0, width)]
		for a, b in pieces:
			edges.append(_interface(Point(a, y), Point(b, y), eps[i], eps[i - 1]))

	pieces = _uncovered(width, spans) if on_top else [(0.0, width)]
	for a, b in pieces:
		edges.append(_interface(Point(a, tops[-1]), Point(b, tops[-1]), AIR, eps[-1]))

	for lo, hi, e in zip(bottoms, tops, eps, strict=True):
		edges.append(_interface(Point(0.0, lo), Point(0.0, hi), AIR, e))
		edges.append(_interface(Point(width, hi), Point(width, lo), AIR, e))

	logger.debug("structure built", family=spec.family.value, m=spec.m, edges=len(edges))
	return edges


def build_mplp1(spec: StructureSpec) -> list[BoundaryEdge]:
	if spec.family != Family.mplp1:
		raise GeometryError(f"expected an MPLP1 spec, got {spec.family.value}")
	if spec.conductor_layer >= len(spec.layers):
		raise GeometryError("MPLP1 strips must be covered by at least one layer")
	return build_layered(spec)


def build_mplp2(spec: StructureSpec) -> list[BoundaryEdge]:
	if spec.family != Family.mplp2:
		raise GeometryError(f"expected an MPLP2 spec, got {spec.family.value}")
	if spec.conductor_layer != len(spec.layers):
		raise GeometryError("MPLP2 strips sit on top of the stack")
	return build_layered(spec)


def build_structure(spec: StructureSpec) -> list[BoundaryEdge]:
	match spec.family:
		case Family.mplp1:
			return build_mplp1(spec)
		case Family.mplp2:
			return build_mplp2(spec)
		case _:
			return build_layered(spec)


def mplp1_spec(
	m: int = 8,
	*,
	t: float = 0.005 * MM,
	w: float = 0.05 * MM,
	s: float = 0.05 * MM,
	d: float | None = 0.15 * MM,
	l: float | None = None,
	heights: tuple[float, float, float] = (0.05 * MM, 0.15 * MM, 0.05 * MM),
	eps: tuple[float, float, float] = (3.8, 2.0, 3.8),
) -> StructureSpec:
	"""Three-layer stack with the strips on the first interface."""
	return StructureSpec(
		family=Family.mplp1,
		m=m,
		t=t,
		widths=(w,),
		gaps=(s,) if m > 1 else (),
		d=d if l is None else None,
		l=l,
		layers=tuple(Layer(height=h, eps=e) for h, e in zip(heights, eps, strict=True)),
		conductor_layer=1,
	)


MPLP2_WIDTHS = (0.2, 0.3, 0.4, 0.5, 0.6, 0.5, 0.4, 0.3, 0.2, 0.3)
MPLP2_GAPS = (0.25, 0.3, 0.35, 0.25, 0.2, 0.25, 0.3, 0.35, 0.25)


def mplp2_spec(*, t: float = 0.02 * MM, d: float = 2.48 * MM) -> StructureSpec:
	"""Ten strips of mixed width on a single substrate, in air."""
	return StructureSpec(
		family=Family.mplp2,
		m=len(MPLP2_WIDTHS),
		t=t,
		widths=tuple(w * MM for w in MPLP2_WIDTHS),
		gaps=tuple(s * MM for s in MPLP2_GAPS),
		d=d,
		layers=(Layer(height=1.0 * MM, eps=4.0),),
		conductor_layer=1,
	)
