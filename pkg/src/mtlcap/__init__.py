"""Method-of-moments capacitance matrices for multiconductor microstrip lines."""

from .geometry import StructureSpec, build_structure, discretize, mplp1_spec, mplp2_spec
from .physicality import audit
from .refine import RefinementConfig, converge
from .sweep import SweepPlan, compare, run_method1, run_method2
from .system import evaluate

__all__ = [
	"RefinementConfig",
	"StructureSpec",
	"SweepPlan",
	"audit",
	"build_structure",
	"compare",
	"converge",
	"discretize",
	"evaluate",
	"mplp1_spec",
	"mplp2_spec",
	"run_method1",
	"run_method2",
]
