from __future__ import annotations

import tomllib
from pathlib import Path
from typing import Annotated, Literal

from pydantic import BaseModel, ConfigDict, Field, ValidationError, model_validator
from pydantic_core import ErrorDetails

from ..enum import ChoiceMixin
from ..exceptions import ConfigError, GeometryError, SweepError
from ..geometry import (
	MM,
	MPLP2_GAPS,
	MPLP2_WIDTHS,
	Family,
	Layer,
	StructureSpec,
	check_layout,
	get_parameter,
	parse_parameter,
)
from ..refine import RefinementConfig
from ..sweep import SweepParameter, SweepPlan, plan_from_range

_LENGTHS = {"t", "w", "s"}


class Mode(ChoiceMixin):
	solve = "solve"
	converge = "converge"
	sweep = "sweep"
	audit = "audit"
	diffmask = "diffmask"


class _Section(BaseModel):
	model_config = ConfigDict(frozen=True, extra="forbid")


class LayerConfig(_Section):
	h: Annotated[float, Field(gt=0)]
	eps: Annotated[float, Field(ge=1)]


_DEFAULT_LAYERS = {
	Family.mplp1: (
		LayerConfig(h=0.05, eps=3.8),
		LayerConfig(h=0.15, eps=2.0),
		LayerConfig(h=0.05, eps=3.8),
	),
	Family.mplp2: (LayerConfig(h=1.0, eps=4.0),),
}


class StructureConfig(_Section):
	"""Cross section in millimetres."""

	family: Family
	m: Annotated[int, Field(ge=1)] | None = None
	t: Annotated[float, Field(gt=0)]
	w: float | list[float] | None = None
	s: float | list[float] | None = None
	d: float | None = None
	l: float | None = None
	layers: list[LayerConfig] | None = None
	conductor_layer: Annotated[int, Field(ge=1)] | None = None
	ground_thickness: Annotated[float, Field(gt=0)] = 0.01

	def to_spec(self) -> StructureSpec:
		w, s = self.w, self.s
		if self.family == Family.mplp2:
			w = list(MPLP2_WIDTHS) if w is None else w
			s = list(MPLP2_GAPS) if s is None else s
		if w is None:
			raise ConfigError("strip width w is required", loc="structure.w")
		widths = [w] if isinstance(w, float | int) else list(w)
		gaps = [] if s is None else [s] if isinstance(s, float | int) else list(s)
		m = self.m if self.m is not None else len(widths)
		if m > 1 and not gaps:
			raise ConfigError("gap s is required for more than one strip", loc="structure.s")

		layers = self.layers or _DEFAULT_LAYERS.get(self.family)
		if not layers:
			raise ConfigError("layers are required for a generic structure", loc="structure.layers")
		if self.conductor_layer is not None:
			k = self.conductor_layer
		else:
			k = len(layers) if self.family == Family.mplp2 else 1
		d = 2.48 if self.family == Family.mplp2 and self.d is None and self.l is None else self.d

		return StructureSpec(
			family=self.family,
			m=m,
			t=self.t * MM,
			widths=tuple(x * MM for x in widths),
			gaps=tuple(x * MM for x in gaps) if m > 1 else (),
			d=None if d is None else d * MM,
			l=None if self.l is None else self.l * MM,
			layers=tuple(Layer(height=lyr.h * MM, eps=lyr.eps) for lyr in layers),
			conductor_layer=k,
			ground_thickness=self.ground_thickness * MM,
		)


class UniformConfig(_Section):
	n: Annotated[int, Field(ge=1)] = 3
	study: list[Annotated[int, Field(ge=1)]] | None = None


class SweepParameterConfig(_Section):
	"""Explicit ``values`` (mm for lengths) or a percent ``span``/``step`` around nominal."""

	name: str
	values: list[Annotated[float, Field(gt=0)]] | None = None
	span: Annotated[float, Field(ge=0)] | None = None
	step: Annotated[float, Field(gt=0)] | None = None

	@model_validator(mode="after")
	def _one_form(self) -> SweepParameterConfig:
		ranged = self.span is not None or self.step is not None
		if (self.values is None) == (not ranged):
			raise ValueError("give either values or span and step")
		if ranged and (self.span is None or self.step is None):
			raise ValueError("span and step go together")
		return self

	def resolve(self, base: StructureSpec) -> SweepParameter:
		base_name, _ = parse_parameter(self.name)
		if self.values is not None:
			scale = MM if base_name in _LENGTHS else 1.0
			values = tuple(v * scale for v in self.values)
		else:
			nominal = get_parameter(base, self.name)
			values = plan_from_range(nominal, self.span or 0.0, self.step or 1.0)
		return SweepParameter(name=self.name, values=values)


class SweepConfig(_Section):
	parameters: list[SweepParameterConfig] = Field(min_length=1)
	hold_envelope: bool = True


class AuditConfig(_Section):
	matrix: Path
	sym_tol: Annotated[float, Field(gt=0)] = 1e-3
	sign_slack: Annotated[float, Field(ge=0)] = 0.0


class DiffmaskConfig(_Section):
	parameter: str = "t"
	values: list[Annotated[float, Field(gt=0)]] = Field(min_length=2, max_length=2)
	refine: bool = True


class OutputConfig(_Section):
	directory: Path = Path("out")
	formats: list[Literal["csv", "json", "pbm"]] = Field(
		default_factory=lambda: ["csv", "json", "pbm"]
	)


_REQUIRED: dict[Mode, tuple[str, ...]] = {
	Mode.solve: ("structure",),
	Mode.converge: ("structure",),
	Mode.sweep: ("structure", "sweep"),
	Mode.audit: ("audit",),
	Mode.diffmask: ("structure", "diffmask"),
}


class RunConfig(_Section):
	mode: Mode
	structure: StructureConfig | None = None
	refinement: RefinementConfig = Field(default_factory=RefinementConfig)
	uniform: UniformConfig | None = None
	sweep: SweepConfig | None = None
	audit: AuditConfig | None = None
	diffmask: DiffmaskConfig | None = None
	output: OutputConfig = Field(default_factory=OutputConfig)
	fail_on_nonphysical: bool = False

	@model_validator(mode="after")
	def _sections(self) -> RunConfig:
		for name in _REQUIRED[self.mode]:
			if getattr(self, name) is None:
				raise ValueError(f"mode {self.mode.value} needs a [{name}] section")
		return self

	def spec(self) -> StructureSpec:
		if self.structure is None:
			raise ConfigError("no [structure] section", loc="structure")
		return self.structure.to_spec()

	def sweep_plan(self) -> SweepPlan:
		if self.sweep is None:
			raise ConfigError("no [sweep] section", loc="sweep")
		base = self.spec()
		return SweepPlan(
			base=base,
			parameters=tuple(p.resolve(base) for p in self.sweep.parameters),
			hold_envelope=self.sweep.hold_envelope,
		)


def _loc(err: ErrorDetails) -> str:
	return ".".join(str(p) for p in err["loc"]) or "<root>"


def _check_structure(config: RunConfig) -> None:
	check_layout(config.spec())


def _check_sweep(config: RunConfig) -> None:
	plan = config.sweep_plan()
	for i in range(plan.n_points):
		plan.spec_at(i)


def validate_config(data: dict[str, object]) -> RunConfig:
	"""Schema and geometry checks on already parsed TOML data."""
	try:
		config = RunConfig.model_validate(data)
	except ValidationError as exc:
		first = exc.errors()[0]
		raise ConfigError(first["msg"], loc=_loc(first), ctx={"errors": exc.error_count()}) from exc

	for section, check in (("structure", _check_structure), ("sweep", _check_sweep)):
		if getattr(config, section) is None:
			continue
		try:
			check(config)
		except (GeometryError, SweepError) as exc:
			raise ConfigError(exc.desc, loc=section, ctx=exc.ctx) from exc
		except ValidationError as exc:
			first = exc.errors()[0]
			raise ConfigError(first["msg"], loc=f"{section}.{_loc(first)}") from exc
	return config


def parse_config(path: str | Path) -> RunConfig:
	path = Path(path)
	try:
		data = tomllib.loads(path.read_text(encoding="utf-8"))
	except FileNotFoundError as exc:
		raise ConfigError(f"config file {path} not found", loc=str(path)) from exc
	except tomllib.TOMLDecodeError as exc:
		raise ConfigError(f"invalid TOML: {exc}", loc=str(path)) from exc
	return validate_config(data)
