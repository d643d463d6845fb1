from .errors import (
	ConfigError,
	DimensionMismatchError,
	ErrorSchema,
	GeometryError,
	MeshError,
	MetricError,
	MtlcapError,
	NonPhysicalError,
	SingularSystemError,
	SolveAccuracyError,
	SweepError,
)
from .handlers import exception_handler

__all__ = [
	"ConfigError",
	"DimensionMismatchError",
	"ErrorSchema",
	"GeometryError",
	"MeshError",
	"MetricError",
	"MtlcapError",
	"NonPhysicalError",
	"SingularSystemError",
	"SolveAccuracyError",
	"SweepError",
	"exception_handler",
]
