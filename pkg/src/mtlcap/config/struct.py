from __future__ import annotations

import re
from collections.abc import Callable
from dataclasses import dataclass
from os import PathLike, getenv
from types import NoneType, UnionType
from typing import Any, ClassVar, get_args

from dotenv import load_dotenv
from structlog.stdlib import BoundLogger

from ..log import get_logger

type SettingValue = int | float | str | bool | None


@dataclass(slots=True, frozen=True)
class SettingsField[T: SettingValue]:
	"""One environment-backed setting: its fallbacks and its lower bound."""

	default: T | None = None
	factory: Callable[[], T] | None = None
	nullable: bool = False
	minimum: float | None = None

	def fallback(self, name: str) -> tuple[Any, str]:
		"""Value used when neither an override nor the environment supplies one."""
		if self.default is not None:
			return self.default, "default"
		if self.factory is not None:
			return self.factory(), "factory"
		if self.nullable:
			return None, "nullable"
		raise ValueError(f"required setting {name} is not set")

	def check(self, attr: str, value: Any) -> SettingValue:
		if type(value) not in get_args(SettingValue.__value__):
			raise TypeError(f"{attr}: {type(value).__name__} is not an allowed immutable type")
		if self.minimum is not None and value is not None and value < self.minimum:
			raise ValueError(f"{attr} must be >= {self.minimum}, got {value}")
		return value


class EnvSettings:
	"""
	Typed process settings resolved from environment variables.

	Declare UPPER_SNAKE_CASE attributes with annotations and a SettingsField.
	Each one is read from ``{prefix}{NAME}``; a ``.env`` file is loaded first
	when present. Missing values fall back to the field default, then the
	factory, then None when nullable.

	>>> class Settings(EnvSettings):
	...	 prefix = "APP_"
	...	 THREADS: int = SettingsField(factory=lambda: 4, minimum=1)
	>>> Settings().THREADS
	4
	"""

	prefix: ClassVar[str] = ""

	def __init__(
		self,
		dotenv_path: str | PathLike[str] | None = None,
		logger: BoundLogger | None = None,
		**overrides: Any,
	) -> None:
		load_dotenv(dotenv_path=dotenv_path)
		self._log = get_logger("mtlcap.config") if logger is None else logger

		annotations = self._annotations()
		for attr, settings_field in self._fields().items():
			if not re.fullmatch(r"[A-Z][A-Z0-9_]*", attr):
				raise AttributeError(f"settings attribute {attr} must be UPPER_SNAKE_CASE")
			annotated = annotations.get(attr, NoneType)

			if overrides.get(attr) is not None:
				value = overrides[attr]
				source = "override"
			elif (raw := getenv(f"{self.prefix}{attr}")) not in (None, ""):
				value = self._coerce(annotated, raw)
				source = "environment"
			else:
				value, source = settings_field.fallback(f"{self.prefix}{attr}")

			setattr(self, attr, settings_field.check(attr, value))
			self._log.debug("setting resolved", attr=attr, source=source)

	@classmethod
	def _fields(cls) -> dict[str, SettingsField]:
		found: dict[str, SettingsField] = {}
		for klass in reversed(cls.__mro__):
			for attr, val in vars(klass).items():
				if isinstance(val, SettingsField):
					found[attr] = val
		return found

	@classmethod
	def _annotations(cls) -> dict[str, Any]:
		merged: dict[str, Any] = {}
		for klass in reversed(cls.__mro__):
			merged.update(getattr(klass, "__annotations__", {}))
		return merged

	@staticmethod
	def _coerce(tp: Any, raw: str) -> Any:
		if isinstance(tp, UnionType):
			args = [a for a in get_args(tp) if a is not NoneType]
			tp = args[0] if args else NoneType
		if tp is NoneType:
			return None
		if tp is bool:
			return raw.strip().lower() in ("yes", "true", "1", "y", "on")
		return tp(raw.strip())
