from .main import Runner, build_parser, main, run
from .schema import Mode, RunConfig, parse_config, validate_config

__all__ = [
	"Mode",
	"RunConfig",
	"Runner",
	"build_parser",
	"main",
	"parse_config",
	"run",
	"validate_config",
]
