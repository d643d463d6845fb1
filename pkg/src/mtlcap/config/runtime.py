import os

from .struct import EnvSettings, SettingsField


def _cpu_count() -> int:
	return os.process_cpu_count() or 1


class RuntimeSettings(EnvSettings):
	"""Process-level knobs. CLI flags take precedence through overrides."""

	prefix = "MTLCAP_"

	THREADS: int = SettingsField(factory=_cpu_count, minimum=1)
	LOG_ENV: str = SettingsField(default="batch")
	BLOCK_PAIRS: int = SettingsField(default=262_144, minimum=1)
