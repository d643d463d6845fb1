from __future__ import annotations

from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np
from numpy.typing import NDArray

from ..exceptions import MeshError
from ..log import get_logger
from .types import BoundaryEdge, BoundaryKind, Point, Segment, StructureSpec

type SegmentationPlan = tuple[int, ...]

CONDUCTOR = 0
DIELECTRIC = 1

logger = get_logger("mtlcap.geometry")

_ARRAYS = (
	"x0",
	"y0",
	"x1",
	"y1",
	"kind",
	"conductor",
	"eps_pos",
	"eps_neg",
	"edge_id",
	"parent_id",
)


def _frozen[T: np.generic](arr: NDArray[T]) -> NDArray[T]:
	arr = np.ascontiguousarray(arr)
	arr.setflags(write=False)
	return arr


@dataclass(frozen=True, eq=False)
class Mesh:
	"""
	Ordered boundary segments stored column-wise.

	Row ``i`` of every array describes segment ``i``; segments of one edge are
	contiguous and run from the edge start to its end. ``conductor`` is -1 on
	dielectric interfaces, 0 on the ground and 1..N_C on signal strips.
	"""

	x0: NDArray[np.float64]
	y0: NDArray[np.float64]
	x1: NDArray[np.float64]
	y1: NDArray[np.float64]
	kind: NDArray[np.int8]
	conductor: NDArray[np.int64]
	eps_pos: NDArray[np.float64]
	eps_neg: NDArray[np.float64]
	edge_id: NDArray[np.int64]
	parent_id: NDArray[np.int64]
	edges: tuple[BoundaryEdge, ...]
	conductor_count: int
	spec: StructureSpec | None = field(default=None)

	def __post_init__(self) -> None:
		for name in _ARRAYS:
			object.__setattr__(self, name, _frozen(getattr(self, name)))
		if self.size < self.conductor_count:
			raise MeshError("fewer segments than conductors", ctx={"n": self.size})
		counts = np.bincount(self.conductor[self.conductor > 0], minlength=self.conductor_count + 1)
		if self.conductor_count and counts[1:].min() < 4:
			raise MeshError("a signal conductor owns fewer than 4 segments")

	@property
	def size(self) -> int:
		return int(self.x0.shape[0])

	def __len__(self) -> int:
		return self.size

	@cached_property
	def length(self) -> NDArray[np.float64]:
		return _frozen(np.hypot(self.x1 - self.x0, self.y1 - self.y0))

	@cached_property
	def half(self) -> NDArray[np.float64]:
		return _frozen(0.5 * self.length)

	@cached_property
	def mx(self) -> NDArray[np.float64]:
		return _frozen(0.5 * (self.x0 + self.x1))

	@cached_property
	def my(self) -> NDArray[np.float64]:
		return _frozen(0.5 * (self.y0 + self.y1))

	@cached_property
	def tx(self) -> NDArray[np.float64]:
		return _frozen((self.x1 - self.x0) / self.length)

	@cached_property
	def ty(self) -> NDArray[np.float64]:
		return _frozen((self.y1 - self.y0) / self.length)

	@property
	def nx(self) -> NDArray[np.float64]:
		return -self.ty

	@property
	def ny(self) -> NDArray[np.float64]:
		return self.tx

	@cached_property
	def per_edge_counts(self) -> SegmentationPlan:
		return tuple(int(c) for c in np.bincount(self.edge_id, minlength=len(self.edges)))

	@cached_property
	def edge_offsets(self) -> NDArray[np.int64]:
		counts = np.asarray(self.per_edge_counts, dtype=np.int64)
		return _frozen(np.concatenate(([0], np.cumsum(counts)[:-1])))

	@cached_property
	def is_conductor(self) -> NDArray[np.bool_]:
		return _frozen(self.kind == CONDUCTOR)

	def segment(self, i: int) -> Segment:
		cid = int(self.conductor[i])
		parent = int(self.parent_id[i])
		return Segment(
			start=Point(float(self.x0[i]), float(self.y0[i])),
			end=Point(float(self.x1[i]), float(self.y1[i])),
			kind=BoundaryKind.conductor if self.kind[i] == CONDUCTOR else BoundaryKind.dielectric,
			conductor_id=cid if cid >= 0 else None,
			eps_pos=float(self.eps_pos[i]),
			eps_neg=float(self.eps_neg[i]),
			edge_id=int(self.edge_id[i]),
			parent_id=parent if parent >= 0 else None,
		)

	@cached_property
	def segments(self) -> tuple[Segment, ...]:
		return tuple(self.segment(i) for i in range(self.size))

	def total_length(self) -> float:
		return float(np.sum(self.length))


def initial_plan(
	edges: Sequence[BoundaryEdge], across: int = 3, along: int = 40
) -> SegmentationPlan:
	"""Coarse start: few segments on vertical faces, many on horizontal ones."""
	if across < 1 or along < 1:
		raise MeshError("segment counts must be positive", ctx={"across": across, "along": along})
	return tuple(across if e.is_vertical else along for e in edges)


def discretize(
	edges: Sequence[BoundaryEdge],
	plan: Sequence[int] | None = None,
	*,
	spec: StructureSpec | None = None,
	conductor_count: int | None = None,
) -> Mesh:
	"""
	Split every edge into ``plan[e]`` equal pieces. Segment k of n spans
	``A + (B-A)*k/n`` to ``A + (B-A)*(k+1)/n``; the last end is exactly B.
	"""
	if plan is None:
		plan = tuple(e.seg_count for e in edges)
	if len(plan) != len(edges):
		raise MeshError(
			f"plan has {len(plan)} entries for {len(edges)} edges",
			ctx={"plan": len(plan), "edges": len(edges)},
		)

	xs0, ys0, xs1, ys1 = [], [], [], []
	kind, cond, ep, en, eid = [], [], [], [], []
	for i, (edge, n) in enumerate(zip(edges, plan, strict=True)):
		if n < 1:
			raise MeshError(f"edge {i} has seg_count {n}", ctx={"edge": i})
		frac = np.arange(n + 1, dtype=np.float64) / n
		px = edge.start.x + (edge.end.x - edge.start.x) * frac
		py = edge.start.y + (edge.end.y - edge.start.y) * frac
		px[-1], py[-1] = edge.end.x, edge.end.y
		xs0.append(px[:-1])
		ys0.append(py[:-1])
		xs1.append(px[1:])
		ys1.append(py[1:])
		is_cond = edge.kind == BoundaryKind.conductor
		kind.append(np.full(n, CONDUCTOR if is_cond else DIELECTRIC, dtype=np.int8))
		cond.append(np.full(n, edge.conductor_id if is_cond else -1, dtype=np.int64))
		ep.append(np.full(n, edge.eps_pos))
		en.append(np.full(n, edge.eps_neg))
		eid.append(np.full(n, i, dtype=np.int64))

	if conductor_count is None:
		conductor_count = spec.m if spec is not None else max(
			(e.conductor_id or 0 for e in edges), default=0
		)

	mesh = Mesh(
		x0=np.concatenate(xs0),
		y0=np.concatenate(ys0),
		x1=np.concatenate(xs1),
		y1=np.concatenate(ys1),
		kind=np.concatenate(kind),
		conductor=np.concatenate(cond),
		eps_pos=np.concatenate(ep),
		eps_neg=np.concatenate(en),
		edge_id=np.concatenate(eid),
		parent_id=np.full(sum(plan), -1, dtype=np.int64),
		edges=tuple(edges),
		conductor_count=conductor_count,
		spec=spec,
	)
	logger.debug("mesh discretized", segments=mesh.size, edges=len(edges))
	return mesh


def refine(mesh: Mesh, ids: Iterable[int]) -> Mesh:
	"""Bisect the listed segments in place; both halves record the parent index."""
	picked = np.fromiter(ids, dtype=np.int64)
	if picked.size == 0:
		return mesh
	if picked.min() < 0 or picked.max() >= mesh.size:
		raise MeshError(
			"refinement index outside the mesh",
			ctx={"min": int(picked.min()), "max": int(picked.max()), "n": mesh.size},
		)

	sel = np.zeros(mesh.size, dtype=bool)
	sel[picked] = True
	reps = np.where(sel, 2, 1)
	src = np.repeat(np.arange(mesh.size), reps)
	offsets = np.cumsum(reps) - reps
	first = offsets[sel]
	second = first + 1

	def split(a: NDArray[np.float64], b: NDArray[np.float64]) -> tuple[NDArray, NDArray]:
		mid = 0.5 * (a + b)
		lo, hi = a[src].copy(), b[src].copy()
		hi[first] = mid[sel]
		lo[second] = mid[sel]
		return lo, hi

	x0, x1 = split(mesh.x0, mesh.x1)
	y0, y1 = split(mesh.y0, mesh.y1)
	parent = mesh.parent_id[src].copy()
	parent[first] = np.flatnonzero(sel)
	parent[second] = np.flatnonzero(sel)

	return Mesh(
		x0=x0,
		y0=y0,
		x1=x1,
		y1=y1,
		kind=mesh.kind[src],
		conductor=mesh.conductor[src],
		eps_pos=mesh.eps_pos[src],
		eps_neg=mesh.eps_neg[src],
		edge_id=mesh.edge_id[src],
		parent_id=parent,
		edges=mesh.edges,
		conductor_count=mesh.conductor_count,
		spec=mesh.spec,
	)


@dataclass(frozen=True)
class RefinementSet:
	"""
	Segments to bisect, addressed as ``(edge index, position within edge)``.

	Edge-relative addressing survives parameter changes that move coordinates
	but keep the per-edge segment counts.
	"""

	entries: frozenset[tuple[int, int]]

	@classmethod
	def from_ids(cls, mesh: Mesh, ids: Iterable[int]) -> RefinementSet:
		idx = np.fromiter(ids, dtype=np.int64)
		if idx.size and (idx.min() < 0 or idx.max() >= mesh.size):
			raise MeshError("refinement index outside the mesh", ctx={"n": mesh.size})
		edge = mesh.edge_id[idx]
		local = idx - mesh.edge_offsets[edge]
		return cls(frozenset(zip(edge.tolist(), local.tolist(), strict=True)))

	def to_ids(self, mesh: Mesh) -> list[int]:
		counts = mesh.per_edge_counts
		out: list[int] = []
		for edge, local in sorted(self.entries):
			if edge >= len(counts) or local >= counts[edge]:
				raise MeshError(
					"refinement set does not fit the mesh",
					ctx={"edge": edge, "local": local},
				)
			out.append(int(mesh.edge_offsets[edge]) + local)
		return out

	def __len__(self) -> int:
		return len(self.entries)

	def as_dict(self) -> dict[str, object]:
		return {"size": len(self.entries), "entries": sorted(self.entries)}
