from .assembly import INV_2PI_EPS0, assemble, diff_mask, entries, jump_terms, partial_reassemble
from .capacitance import build_excitation, evaluate, extract_capacitance, solve_system
from .solve import RCOND_MIN, RESIDUAL_TOL, solve
from .types import (
	EPS0,
	CapacitanceMatrix,
	ChangeMask,
	ChargeSolution,
	Evaluation,
	ExcitationMatrix,
	SystemMatrix,
)

__all__ = [
	"EPS0",
	"INV_2PI_EPS0",
	"RCOND_MIN",
	"RESIDUAL_TOL",
	"CapacitanceMatrix",
	"ChangeMask",
	"ChargeSolution",
	"Evaluation",
	"ExcitationMatrix",
	"SystemMatrix",
	"assemble",
	"build_excitation",
	"diff_mask",
	"entries",
	"evaluate",
	"extract_capacitance",
	"jump_terms",
	"partial_reassemble",
	"solve",
	"solve_system",
]
