from .builders import (
	AIR,
	MPLP2_GAPS,
	MPLP2_WIDTHS,
	build_layered,
	build_mplp1,
	build_mplp2,
	build_structure,
	check_layout,
	mplp1_spec,
	mplp2_spec,
)
from .mesh import (
	CONDUCTOR,
	DIELECTRIC,
	Mesh,
	RefinementSet,
	SegmentationPlan,
	discretize,
	initial_plan,
	refine,
)
from .params import get_parameter, parse_parameter, with_parameter
from .types import MM, BoundaryEdge, BoundaryKind, Family, Layer, Point, Segment, StructureSpec

__all__ = [
	"AIR",
	"CONDUCTOR",
	"DIELECTRIC",
	"MM",
	"MPLP2_GAPS",
	"MPLP2_WIDTHS",
	"BoundaryEdge",
	"BoundaryKind",
	"Family",
	"Layer",
	"Mesh",
	"Point",
	"RefinementSet",
	"Segment",
	"SegmentationPlan",
	"StructureSpec",
	"build_layered",
	"build_mplp1",
	"build_mplp2",
	"build_structure",
	"check_layout",
	"discretize",
	"get_parameter",
	"initial_plan",
	"mplp1_spec",
	"mplp2_spec",
	"parse_parameter",
	"refine",
	"with_parameter",
]
