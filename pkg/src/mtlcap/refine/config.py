from typing import Annotated

from pydantic import BaseModel, ConfigDict, Field

from ..enum import ChoiceMixin


class Strategy(ChoiceMixin):
	uniform = "uniform"
	top25 = "top25"
	method1 = "method1"


class RefinementConfig(BaseModel):
	"""
	Adaptive refinement settings. ``tol`` is the relative change of the
	Frobenius norm of C that stops the loop; ``tol=1`` amounts to a single
	refinement pass.
	"""

	model_config = ConfigDict(frozen=True, extra="forbid")

	tol: Annotated[float, Field(gt=0, le=1)] = 0.01
	max_iters: Annotated[int, Field(ge=1)] = 10
	strategy: Strategy = Strategy.method1
	n: Annotated[int, Field(ge=1)] = 3
	k: Annotated[float, Field(gt=0, le=100)] = 75.0
	across: Annotated[int, Field(ge=1)] = 3
	along: Annotated[int, Field(ge=1)] = 40
