from collections.abc import Sequence
from enum import StrEnum
from typing import Any, Literal, Self, overload


class ChoiceMixin(StrEnum):
	"""
	StrEnum with lenient construction from user input (config files, CLI
	flags, environment). Matching is case-insensitive on values.
	"""

	@classmethod
	def _normalize_value(cls, val: Any) -> str:
		if isinstance(val, cls):
			return val.value
		if isinstance(val, (bytes, bytearray)):
			val = val.decode("utf-8")
		if isinstance(val, (str, int)):
			return str(val).strip()
		raise TypeError(f"{cls.__name__} value must be str-like, got {type(val).__name__}")

	@classmethod
	def _missing_(cls, value: object) -> Self | None:
		if isinstance(value, str):
			folded = value.casefold()
			for member in cls:
				if member.value.casefold() == folded:
					return member
		return None

	@overload
	@classmethod
	def validate(cls, *, val: Any, req: Literal[False] = False) -> Self | None: ...

	@overload
	@classmethod
	def validate(cls, *, val: Any, req: Literal[True]) -> Self: ...

	@classmethod
	def validate(cls, *, val: Any, req: bool = False) -> Self | None:
		if val is None:
			if req:
				raise ValueError(f"{cls.__name__} is required")
			return None
		normalized = cls._normalize_value(val)
		try:
			return cls(normalized)
		except ValueError as e:
			raise ValueError(
				f"{normalized!r} is not a valid {cls.__name__}, expected one of {cls.values()}"
			) from e

	@overload
	@classmethod
	def get(cls, val: Any, default: Literal[None] = None) -> Self | None: ...

	@overload
	@classmethod
	def get(cls, val: Any, default: Self) -> Self: ...

	@classmethod
	def get(cls, val: Any, default: Self | None = None) -> Self | None:
		try:
			return cls.validate(val=val, req=False) or default
		except (ValueError, TypeError):
			return default

	def in_(self, *enum_values: Self) -> bool:
		return self in enum_values

	@classmethod
	def values(cls) -> Sequence[str]:
		return [member.value for member in cls]
