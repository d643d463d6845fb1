"""Deterministic JSON for reports: numpy arrays, enums and result objects included."""

from .dump import safe_serialize, safe_serialize_value, write_json

__all__ = [
	"safe_serialize",
	"safe_serialize_value",
	"write_json",
]
