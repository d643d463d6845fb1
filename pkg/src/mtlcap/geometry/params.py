import re

from ..exceptions import GeometryError
from .types import StructureSpec

_NAME = re.compile(r"^(?P<base>t|w|s|eps)(?:_(?P<index>\d+))?$")


def parse_parameter(name: str) -> tuple[str, int | None]:
	"""Split ``w_3`` into ``("w", 3)``; bare ``w``/``s`` address every strip or gap."""
	match = _NAME.match(name)
	if match is None or (match["base"] == "eps" and match["index"] is None):
		raise GeometryError(f"unknown structure parameter {name!r}", ctx={"name": name})
	if match["base"] == "t" and match["index"] is not None:
		raise GeometryError("thickness is not indexed", ctx={"name": name})
	index = int(match["index"]) if match["index"] is not None else None
	if index is not None and index < 1:
		raise GeometryError("parameter indices start at 1", ctx={"name": name})
	return match["base"], index


def get_parameter(spec: StructureSpec, name: str) -> float:
	base, index = parse_parameter(name)
	match base:
		case "t":
			return spec.t
		case "eps":
			return spec.layers[_checked(index, len(spec.layers), name) - 1].eps
		case "w":
			return spec.w[_checked(index or 1, spec.m, name) - 1]
		case _:
			return spec.s[_checked(index or 1, spec.m - 1, name) - 1]


def _checked(index: int | None, count: int, name: str) -> int:
	if index is None or index > count:
		raise GeometryError(f"{name} is out of range (count {count})", ctx={"name": name})
	return index


def with_parameter(
	spec: StructureSpec,
	name: str,
	value: float,
	*,
	hold_envelope: bool = True,
) -> StructureSpec:
	"""
	Copy of ``spec`` with one parameter replaced. Under ``hold_envelope`` a width
	or gap change keeps the total width and moves the margin; otherwise the
	margin is kept and the envelope grows.
	"""
	base, index = parse_parameter(name)
	update: dict[str, object] = {}
	match base:
		case "t":
			update["t"] = value
		case "eps":
			i = _checked(index, len(spec.layers), name) - 1
			layers = list(spec.layers)
			layers[i] = layers[i].model_copy(update={"eps": value})
			update["layers"] = tuple(layers)
		case "w" | "s":
			current = list(spec.w if base == "w" else spec.s)
			if index is None:
				current = [value] * len(current)
			else:
				current[_checked(index, len(current), name) - 1] = value
			update["widths" if base == "w" else "gaps"] = tuple(current)
			if hold_envelope:
				update |= {"l": spec.total_width, "d": None}
			else:
				update |= {"d": spec.margin, "l": None}

	# model_validate re-runs field constraints that model_copy would skip
	return StructureSpec.model_validate(spec.model_dump() | update)
