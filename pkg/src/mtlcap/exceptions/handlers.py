from collections.abc import Callable
from functools import wraps

from ..log import get_logger
from .errors import MtlcapError


def exception_handler[**P, R](func: Callable[P, R]) -> Callable[P, R]:
	"""
	Log any exception escaping ``func`` with its structured context, then
	re-raise it unchanged. Solver errors are logged without a traceback,
	anything else is unexpected and logged with one.
	"""

	@wraps(func)
	def wrapper(*args: P.args, **kwargs: P.kwargs) -> R:
		try:
			return func(*args, **kwargs)
		except MtlcapError as e:
			get_logger(func.__module__).error(
				"failed", func=func.__qualname__, code=e.code, desc=e.desc, ctx=e.ctx
			)
			raise
		except Exception:
			get_logger(func.__module__).exception("unexpected failure", func=func.__qualname__)
			raise

	return wrapper
