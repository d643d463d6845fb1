from logging import CRITICAL, DEBUG, INFO, WARNING

import pytest

from mtlcap.log import Environment, LoggerSettingsOverride, bound_context, get_logger
from mtlcap.log import _named_loggers, _settings_for


class TestSettings:
	def test_batch_defaults(self):
		s = _settings_for(Environment.batch)
		assert s["level"] == INFO
		assert s["log_callsite"] is False
		assert len(s["sinks"]) == 2

	def test_dev_has_callsite(self):
		s = _settings_for(Environment.dev)
		assert s["level"] == DEBUG
		assert s["log_callsite"] is True

	def test_quiet(self):
		assert _settings_for(Environment.quiet)["level"] == WARNING

	def test_override_level(self):
		s = _settings_for(Environment.batch, LoggerSettingsOverride(base_level="debug"))
		assert s["level"] == "DEBUG"

	def test_override_callsite(self):
		s = _settings_for(Environment.batch, LoggerSettingsOverride(include_callsite=True))
		assert s["log_callsite"] is True

	def test_environment_from_string(self):
		assert Environment.validate(val="DEV", req=True) is Environment.dev
		with pytest.raises(ValueError, match="expected one of"):
			Environment.validate(val="verbose", req=True)


class TestNamedLoggers:
	def test_silenced_defaults(self):
		resolved = _named_loggers(INFO)
		assert resolved["matplotlib"] is None
		assert resolved["numexpr"] == WARNING

	def test_longest_prefix_wins(self):
		resolved = _named_loggers(INFO, {"mtlcap": INFO, "mtlcap.system": CRITICAL})
		assert resolved["mtlcap.system"] == CRITICAL
		assert resolved["mtlcap"] == INFO


class TestContext:
	def test_get_logger_binds(self):
		log = get_logger("mtlcap.test")
		assert log is not None

	def test_bound_context_is_scoped(self):
		from structlog.contextvars import get_contextvars

		with bound_context(point=3):
			assert get_contextvars()["point"] == 3
		assert "point" not in get_contextvars()
