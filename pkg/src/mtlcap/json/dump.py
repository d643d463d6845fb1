from dataclasses import fields, is_dataclass
from enum import Enum
from os import PathLike
from pathlib import Path, PurePath
from typing import Any

import numpy as np
import orjson

from ..log import get_logger

_OPTIONS = orjson.OPT_INDENT_2 | orjson.OPT_SORT_KEYS | orjson.OPT_SERIALIZE_NUMPY


def safe_serialize_value(obj: Any, _depth: int = 0, _depth_limit: int = 12) -> Any:
	if _depth > _depth_limit:
		return str(obj)

	if obj is None or isinstance(obj, (str, int, float, bool)):
		return obj

	if isinstance(obj, Enum):
		return obj.value
	if isinstance(obj, PurePath):
		return str(obj)
	if isinstance(obj, np.ndarray):
		return obj.tolist()
	if isinstance(obj, np.generic):
		return obj.item()
	if isinstance(obj, bytes):
		return obj.decode("utf-8", errors="replace")

	if isinstance(obj, dict):
		return {str(k): safe_serialize_value(v, _depth + 1, _depth_limit) for k, v in obj.items()}
	if isinstance(obj, (list, tuple)):
		return [safe_serialize_value(item, _depth + 1, _depth_limit) for item in obj]
	if isinstance(obj, (set, frozenset)):
		return [safe_serialize_value(item, _depth + 1, _depth_limit) for item in sorted(obj)]

	if hasattr(obj, "as_dict"):
		return safe_serialize_value(obj.as_dict(), _depth + 1, _depth_limit)
	if hasattr(obj, "model_dump"):
		return safe_serialize_value(obj.model_dump(mode="json"), _depth + 1, _depth_limit)
	if is_dataclass(obj) and not isinstance(obj, type):
		return {
			f.name: safe_serialize_value(getattr(obj, f.name), _depth + 1, _depth_limit)
			for f in fields(obj)
		}

	return str(obj)


def safe_serialize(data: Any) -> bytes:
	"""Deterministic, indented JSON with sorted keys and a trailing newline."""
	try:
		return orjson.dumps(safe_serialize_value(data), option=_OPTIONS) + b"\n"
	except BaseException:
		get_logger(__name__).exception("cannot serialize", kind=type(data).__name__)
		raise


def write_json(path: str | PathLike[str], data: Any) -> Path:
	"""Serialize ``data`` to ``path``, creating parent directories."""
	path = Path(path)
	path.parent.mkdir(parents=True, exist_ok=True)
	path.write_bytes(safe_serialize(data))
	return path
