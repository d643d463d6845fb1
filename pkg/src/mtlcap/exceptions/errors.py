from collections.abc import Mapping
from typing import Any, ClassVar

from pydantic import BaseModel


class ErrorSchema(BaseModel):
	code: str | None = None
	desc: str | None = None
	ctx: Mapping[str, Any] | str | list[Any] | None = None


class MtlcapError(Exception):
	"""
	Base error of the solver. Carries a stable machine code, a human
	description and a context mapping that ends up in CLI error payloads.
	"""

	default_code: ClassVar[str] = "MTLCAP_ERROR"
	exit_code: ClassVar[int] = 3

	def __init__(
		self,
		desc: str | None = None,
		*,
		code: str | None = None,
		ctx: Mapping[str, Any] | list[Any] | str | None = None,
	) -> None:
		self.code = code or self.default_code
		self.desc = desc or self.__class__.__name__
		self.ctx = ctx
		self.schema = ErrorSchema(code=self.code, desc=self.desc, ctx=self.ctx)
		super().__init__(self.desc)

	def __str__(self) -> str:
		return f"{self.code}: {self.desc}"

	def __repr__(self) -> str:
		class_name = self.__class__.__name__
		return f"{class_name}(code={self.code!r}, desc={self.desc!r})"


class GeometryError(MtlcapError):
	default_code = "GEOMETRY"


class MeshError(MtlcapError):
	default_code = "MESH"


class SingularSystemError(MtlcapError):
	default_code = "SINGULAR_SYSTEM"

	def __init__(self, desc: str | None = None, *, rcond: float, **kws: Any) -> None:
		self.rcond = rcond
		ctx = dict(kws.pop("ctx", None) or {})
		ctx["rcond"] = rcond
		super().__init__(desc, ctx=ctx, **kws)


class SolveAccuracyError(MtlcapError):
	default_code = "SOLVE_ACCURACY"


class DimensionMismatchError(MtlcapError):
	default_code = "DIMENSION_MISMATCH"


class MetricError(MtlcapError, ZeroDivisionError):
	default_code = "METRIC"


class SweepError(MtlcapError):
	default_code = "SWEEP"


class ConfigError(MtlcapError):
	default_code = "CONFIG"
	exit_code = 2

	def __init__(self, desc: str | None = None, *, loc: str | None = None, **kws: Any) -> None:
		self.loc = loc
		if loc is not None:
			ctx = dict(kws.pop("ctx", None) or {})
			ctx["loc"] = loc
			kws["ctx"] = ctx
		super().__init__(desc, **kws)

	def __str__(self) -> str:
		where = f" at {self.loc}" if self.loc else ""
		return f"{self.code}{where}: {self.desc}"


class NonPhysicalError(MtlcapError):
	default_code = "NON_PHYSICAL"
	exit_code = 1
