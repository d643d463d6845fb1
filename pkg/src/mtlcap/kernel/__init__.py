from .integrals import log_potential, log_potential_integral, normal_field, normal_field_integral

__all__ = [
	"log_potential",
	"log_potential_integral",
	"normal_field",
	"normal_field_integral",
]
