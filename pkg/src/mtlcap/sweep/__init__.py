from .compare import SweepComparison, compare
from .engine import SweepPoint, SweepResult, derive_refinement, run_method1, run_method2
from .plan import SweepParameter, SweepPlan, plan_from_range, presolve_point
from .writers import TIMING_COLUMNS, write_mask_pbm, write_point_matrices, write_timing_table

__all__ = [
	"TIMING_COLUMNS",
	"SweepComparison",
	"SweepParameter",
	"SweepPlan",
	"SweepPoint",
	"SweepResult",
	"compare",
	"derive_refinement",
	"plan_from_range",
	"presolve_point",
	"run_method1",
	"run_method2",
	"write_mask_pbm",
	"write_point_matrices",
	"write_timing_table",
]
