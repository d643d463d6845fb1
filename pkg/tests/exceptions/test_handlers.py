import pytest

from mtlcap.exceptions import GeometryError, exception_handler


class TestExceptionHandler:
	def test_reraises_domain_error(self):
		@exception_handler
		def failing():
			raise GeometryError("negative margin")

		with pytest.raises(GeometryError, match="negative margin"):
			failing()

	def test_reraises_unexpected(self):
		@exception_handler
		def failing():
			raise ValueError("boom")

		with pytest.raises(ValueError, match="boom"):
			failing()

	def test_passes_through_on_success(self):
		@exception_handler
		def ok(x: int) -> int:
			return x * 2

		assert ok(21) == 42

	def test_preserves_name(self):
		@exception_handler
		def named():
			return None

		assert named.__name__ == "named"
