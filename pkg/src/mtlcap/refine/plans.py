import math
from collections.abc import Sequence

from ..exceptions import MeshError
from ..geometry import BoundaryEdge, SegmentationPlan

_GUARD = 1e-9


def uniform_plan(edges: Sequence[BoundaryEdge], t: float, n: int) -> SegmentationPlan:
	"""
	Segment length at most ``t/n`` on every edge. Edges that are an exact
	multiple of the target length, up to rounding, are not bumped up by one.
	"""
	if t <= 0 or n < 1:
		raise MeshError("uniform plan needs t > 0 and n >= 1", ctx={"t": t, "n": n})
	target = t / n
	return tuple(max(1, math.ceil(e.length / target - _GUARD)) for e in edges)


def describe_uniform(n: int) -> str:
	return f"t/{n}"
