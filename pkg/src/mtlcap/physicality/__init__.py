from .audit import (
	SYM_TOL,
	PhysicalityReport,
	audit,
	audit_file,
	audit_first_row,
	load_matrix_csv,
	write_matrix_csv,
)

__all__ = [
	"SYM_TOL",
	"PhysicalityReport",
	"audit",
	"audit_file",
	"audit_first_row",
	"load_matrix_csv",
	"write_matrix_csv",
]
