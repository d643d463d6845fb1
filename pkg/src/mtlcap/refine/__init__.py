from .config import RefinementConfig, Strategy
from .converge import (
	ConvergenceReport,
	IterationRecord,
	UniformLevel,
	UniformStudy,
	converge,
	select,
	uniform_study,
)
from .metrics import delta_c, delta_f
from .plans import describe_uniform, uniform_plan
from .selectors import select_method1, select_top25, select_top_fraction

__all__ = [
	"ConvergenceReport",
	"IterationRecord",
	"RefinementConfig",
	"Strategy",
	"UniformLevel",
	"UniformStudy",
	"converge",
	"delta_c",
	"delta_f",
	"describe_uniform",
	"select",
	"select_method1",
	"select_top25",
	"select_top_fraction",
	"uniform_study",
	"uniform_plan",
]
