from .runtime import RuntimeSettings
from .struct import EnvSettings, SettingsField

__all__ = [
	"EnvSettings",
	"RuntimeSettings",
	"SettingsField",
]
