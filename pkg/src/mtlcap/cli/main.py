from __future__ import annotations

import argparse
import sys
from collections.abc import Sequence
from pathlib import Path

from rich.console import Console

from ..config import RuntimeSettings
from ..exceptions import ConfigError, MtlcapError, NonPhysicalError, exception_handler
from ..geometry import MM, build_structure, discretize, initial_plan, parse_parameter, refine
from ..json import safe_serialize
from ..log import Environment, bind_context, configure_logging, get_logger
from ..physicality import PhysicalityReport, audit, audit_file
from ..refine import Strategy, converge, describe_uniform, uniform_plan, uniform_study
from ..sweep import (
	SweepParameter,
	SweepPlan,
	compare,
	derive_refinement,
	run_method1,
	run_method2,
	write_mask_pbm,
	write_point_matrices,
	write_timing_table,
)
from ..system import assemble, diff_mask, evaluate
from .output import Artifacts, capacitance_rows, print_summary
from .schema import Mode, RunConfig, parse_config, validate_config

logger = get_logger("mtlcap.cli")


class Runner:
	"""Executes one configured run and writes its artifacts."""

	def __init__(
		self,
		config: RunConfig,
		*,
		threads: int,
		block_pairs: int,
		method: str = "both",
		out: Path | None = None,
		console: Console | None = None,
	) -> None:
		self.config = config
		self.threads = threads
		self.block_pairs = block_pairs
		self.method = method
		self.console = console or Console(stderr=True)
		self.artifacts = Artifacts(out or config.output.directory, config.output.formats)

	@property
	def _opts(self) -> dict[str, int]:
		return {"threads": self.threads, "block_pairs": self.block_pairs}

	def run(self) -> bool:
		"""Return the physicality verdict of the run."""
		match self.config.mode:
			case Mode.solve:
				return self.solve()
			case Mode.converge:
				return self.converge()
			case Mode.sweep:
				return self.sweep()
			case Mode.audit:
				return self.audit()
			case Mode.diffmask:
				return self.diffmask()
		raise ConfigError(f"unsupported mode {self.config.mode}", loc="mode")

	def solve(self) -> bool:
		spec = self.config.spec()
		edges = build_structure(spec)
		if self.config.uniform is not None:
			n = self.config.uniform.n
			plan, label = uniform_plan(edges, spec.t, n), describe_uniform(n)
		else:
			refcfg = self.config.refinement
			plan, label = initial_plan(edges, refcfg.across, refcfg.along), "initial"
		mesh = discretize(edges, plan, spec=spec)
		ev = evaluate(mesh, method="direct", plan=label, **self._opts)
		report = audit(ev.capacitance)
		self.artifacts.matrix("capacitance.csv", ev.capacitance)
		self.artifacts.json(
			"report.json",
			{
				"mode": self.config.mode,
				"capacitance": ev.capacitance,
				"residual": ev.solution.residual,
				"rcond": ev.solution.rcond,
				"audit": report,
			},
		)
		self.artifacts.json("timings.json", ev.timings)
		rows = capacitance_rows(ev.capacitance)
		t = ev.timings
		rows.append(("assemble / solve, s", f"{t['assemble']:.3f} / {t['solve']:.3f}"))
		print_summary(self.console, f"solve ({label})", rows, report)
		return report.verdict

	def converge(self) -> bool:
		spec = self.config.spec()
		refcfg = self.config.refinement
		uniform = self.config.uniform
		if refcfg.strategy == Strategy.uniform and uniform is not None and uniform.study:
			study = uniform_study(spec, uniform.study, **self._opts)
			self.artifacts.json("convergence.json", study)
			rows = [
				(
					describe_uniform(lvl.n),
					f"N={lvl.n_segments} C11={lvl.first_row_pf[0]:.4g} "
					f"dC={_pct(lvl.delta_c)} dF={_pct(lvl.delta_f)}",
				)
				for lvl in study.levels
			]
			print_summary(self.console, "uniform segmentation study", rows)
			return True

		if uniform is not None and refcfg.strategy == Strategy.uniform:
			refcfg = refcfg.model_copy(update={"n": uniform.n})
		result = converge(spec, refcfg, **self._opts)
		report = audit(result.capacitance)
		self.artifacts.matrix("capacitance.csv", result.capacitance)
		self.artifacts.json("convergence.json", result)
		self.artifacts.json(
			"report.json",
			{"mode": self.config.mode, "capacitance": result.capacitance, "audit": report},
		)
		self.artifacts.json("timings.json", {"iterations": [r.seconds for r in result.records]})
		rows = capacitance_rows(result.capacitance)
		rows += [("iterations", str(result.iterations)), ("converged", str(result.converged))]
		print_summary(self.console, f"converge ({refcfg.strategy.value})", rows, report)
		return report.verdict

	def sweep(self) -> bool:
		plan = self.config.sweep_plan()
		refcfg = self.config.refinement
		results = []
		r1 = r2 = None
		if self.method in ("1", "both"):
			r1 = run_method1(plan, refcfg, **self._opts)
			results.append(r1)
		if self.method in ("2", "both"):
			refinement = r1.refinement if r1 is not None else None
			r2 = run_method2(plan, refcfg, refinement=refinement, **self._opts)
			results.append(r2)

		reports: dict[str, list[PhysicalityReport]] = {}
		for res in results:
			reports[res.method] = [audit(p.capacitance) for p in res.points]
			if self.artifacts.enabled("csv"):
				for path in write_point_matrices(self.artifacts.directory / "sweep", res):
					self.artifacts.record(path)

		summary: dict[str, object] = {
			"mode": self.config.mode,
			"results": results,
			"audit": {k: [r.verdict for r in v] for k, v in reports.items()},
		}
		rows = [("parameters", plan.label), ("points", str(plan.n_points))]
		if r1 is not None and r1.mask is not None:
			rows.append(("unchanged fraction", f"{r1.mask.unchanged_fraction:.3f}"))
			if self.artifacts.enabled("pbm"):
				path = write_mask_pbm(self.artifacts.directory / "mask.pbm", r1.mask)
				self.artifacts.record(path)
		timings: dict[str, object] = {res.method: res.timing_dict() for res in results}
		if r1 is not None and r2 is not None:
			cmp = compare(r1, r2)
			summary["comparison"] = {"equivalence": cmp.equivalence, "identical": cmp.identical}
			timings["comparison"] = cmp
			if self.artifacts.enabled("csv"):
				path = self.artifacts.directory / "timings.csv"
				self.artifacts.record(write_timing_table(path, [(plan.label, plan.base.m, cmp)]))
			rows.append(("savings, %", f"{cmp.savings_percent:.1f}"))
			rows.append(("identical C", str(cmp.identical)))
		for res in results:
			times = f"{res.t_tot:.3f} / {res.t_mid:.3f}"
			rows.append((f"method {res.method} t_tot / t_mid, s", times))
		self.artifacts.json("report.json", summary)
		self.artifacts.json("timings.json", timings)

		verdict = all(r.verdict for v in reports.values() for r in v)
		print_summary(self.console, "sweep", rows)
		self.console.print("verdict:", "physical" if verdict else "non-physical")
		return verdict

	def audit(self) -> bool:
		cfg = self.config.audit
		if cfg is None:
			raise ConfigError("no [audit] section", loc="audit")
		report = audit_file(cfg.matrix, sym_tol=cfg.sym_tol, sign_slack=cfg.sign_slack)
		payload = {"mode": self.config.mode, "matrix": cfg.matrix, "audit": report}
		self.artifacts.json("report.json", payload)
		print_summary(self.console, f"audit {cfg.matrix}", [], report)
		return report.verdict

	def diffmask(self) -> bool:
		cfg = self.config.diffmask
		if cfg is None:
			raise ConfigError("no [diffmask] section", loc="diffmask")
		plan = SweepPlan(
			base=self.config.spec(),
			parameters=(
				SweepParameter(name=cfg.parameter, values=_scaled(cfg.parameter, cfg.values)),
			),
			hold_envelope=self.config.sweep.hold_envelope if self.config.sweep else True,
		)
		refcfg = self.config.refinement
		refinement = derive_refinement(plan, refcfg, **self._opts) if cfg.refine else None
		systems = []
		for i in range(2):
			spec = plan.spec_at(i)
			edges = build_structure(spec)
			mesh = discretize(edges, initial_plan(edges, refcfg.across, refcfg.along), spec=spec)
			if refinement is not None:
				mesh = refine(mesh, refinement.to_ids(mesh))
			systems.append(assemble(mesh, **self._opts))
		mask = diff_mask(*systems)
		if self.artifacts.enabled("pbm"):
			self.artifacts.record(write_mask_pbm(self.artifacts.directory / "mask.pbm", mask))
		payload = {"mode": self.config.mode, "parameter": cfg.parameter, "mask": mask}
		self.artifacts.json("report.json", payload)
		rows = [
			("N", str(mask.mask.shape[0])),
			("unchanged fraction", f"{mask.unchanged_fraction:.3f}"),
		]
		print_summary(self.console, f"diffmask ({cfg.parameter})", rows)
		return True


def _pct(value: float | None) -> str:
	return "-" if value is None else f"{value:.3g}%"


def _scaled(name: str, values: list[float]) -> tuple[float, ...]:
	base, _ = parse_parameter(name)
	return tuple(v * MM if base in {"t", "w", "s"} else v for v in values)


@exception_handler
def run(
	config: RunConfig,
	*,
	threads: int | None = None,
	method: str = "both",
	fail_on_nonphysical: bool | None = None,
	out: Path | None = None,
	console: Console | None = None,
) -> int:
	"""Execute ``config``; return 1 when the result is non-physical and that is fatal."""
	settings = RuntimeSettings(THREADS=threads)
	bind_context(mode=config.mode.value)
	runner = Runner(
		config,
		threads=settings.THREADS,
		block_pairs=settings.BLOCK_PAIRS,
		method=method,
		out=out,
		console=console,
	)
	verdict = runner.run()
	strict = config.fail_on_nonphysical if fail_on_nonphysical is None else fail_on_nonphysical
	written = [str(p) for p in runner.artifacts.written]
	logger.info("run finished", verdict=verdict, artifacts=written)
	if not verdict and strict:
		logger.warning("capacitance matrix failed the physicality audit")
		return NonPhysicalError.exit_code
	return 0


def build_parser() -> argparse.ArgumentParser:
	parser = argparse.ArgumentParser(
		prog="mtlcap",
		description="Capacitance matrices of multiconductor microstrip lines.",
	)
	parser.add_argument(
		"command",
		choices=["run", *Mode.values()],
		help="what to run; 'run' takes the mode from the config file",
	)
	parser.add_argument(
		"matrix", nargs="?", type=Path, help="matrix CSV for 'audit' without a config"
	)
	parser.add_argument("--config", type=Path, help="TOML run configuration")
	parser.add_argument("--out", type=Path, help="artifact directory (overrides [output])")
	parser.add_argument("--threads", type=int, help="assembly worker threads")
	parser.add_argument("--method", choices=["1", "2", "both"], default="both", help="sweep method")
	parser.add_argument(
		"--fail-on-nonphysical",
		action="store_true",
		default=None,
		help="exit with status 1 when the audit fails",
	)
	parser.add_argument("--log-env", choices=Environment.values(), help="logging preset")
	return parser


def _load(args: argparse.Namespace) -> RunConfig:
	if args.config is None:
		if args.command == Mode.audit.value and args.matrix is not None:
			return validate_config({"mode": "audit", "audit": {"matrix": args.matrix}})
		raise ConfigError("--config is required", loc="--config")
	config = parse_config(args.config)
	if args.command == "run":
		return config
	data = config.model_dump() | {"mode": args.command}
	if args.matrix is not None:
		data["audit"] = (data.get("audit") or {}) | {"matrix": args.matrix}
	return validate_config(data)


def main(argv: Sequence[str] | None = None) -> int:
	args = build_parser().parse_args(argv)
	env = args.log_env or RuntimeSettings().LOG_ENV
	configure_logging(env)
	console = Console(stderr=True)
	try:
		config = _load(args)
		return run(
			config,
			threads=args.threads,
			method=args.method,
			fail_on_nonphysical=args.fail_on_nonphysical,
			out=args.out,
			console=console,
		)
	except MtlcapError as exc:
		console.print(f"[red]error[/red] {exc}")
		payload = {"code": exc.code, "desc": exc.desc, "ctx": exc.ctx}
		console.print_json(safe_serialize(payload).decode())
		return exc.exit_code


if __name__ == "__main__":
	sys.exit(main())
