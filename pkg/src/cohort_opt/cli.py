"""Command-line front end: ``cohort-opt {list,run,bench,plot}``.

Exit status of ``run``: 0 feasible best, 2 did not converge, 3 converged but
the best point is infeasible. Usage errors exit with 64 and other failures
with 1.
"""
from __future__ import annotations

import argparse
import json
import sys
from importlib import resources
from pathlib import Path

from . import __version__
from .engine import EngineConfig, run
from .errors import CohortOptError
from .harness import ExperimentConfig, default_out_dir, export, run_experiment, trace_filename, write_trace_csv
from .penalty import DEFAULT_DELTA, PenaltyScheme
from .plotting import plot_trace_file
from .problems import catalog, catalog_lookup

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_DNC = 2
EXIT_INFEASIBLE = 3
EXIT_USAGE = 64

_DEFAULT_ENGINE = EngineConfig()
_ENGINE_FLAGS = {
    "candidates": "candidates",
    "reduction": "reduction",
    "samples_t": "samples",
    "epsilon": "epsilon",
    "max_attempts": "max_attempts",
    "max_saturations": "max_saturations",
}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _add_scheme_flags(p, with_defaults=True):
    g = p.add_argument_group("penalty scheme")

    def note(text):
        return f"(default: {text})" if with_defaults else "(default: from config)"

    g.add_argument("--scheme", choices=("static", "dynamic"), default="static" if with_defaults else None,
                   help=f"constraint-handling scheme {note('static')}")
    g.add_argument("--S", type=float, help="penalty parameter " + (note("1e3 static, 0.5 dynamic") if with_defaults
                   else "for every problem, replacing the config's per-problem values (default: from config)"))
    g.add_argument("--alpha", type=float, help=f"dynamic scheme exponent on the attempt counter {note(2)}")
    g.add_argument("--beta", type=float, help=f"dynamic scheme exponent on violations {note(2)}")
    g.add_argument("--delta", type=float, help=f"equality tolerance {note(format(DEFAULT_DELTA, 'g'))}")


def _add_engine_flags(p, with_defaults=True):
    d = _DEFAULT_ENGINE
    g = p.add_argument_group("engine")

    def flag(name, kind, value, text):
        g.add_argument(name, type=kind, default=value if with_defaults else None,
                       help=f"{text} (default: {format(value, 'g') if with_defaults else 'from config'})")

    flag("--candidates", int, d.candidates, "cohort size C")
    flag("--reduction", float, d.reduction, "interval reduction factor r")
    flag("--samples-t", int, d.samples, "samples per candidate per attempt")
    flag("--epsilon", float, d.epsilon, "saturation tolerance")
    flag("--max-attempts", int, d.max_attempts, "attempt cap")
    flag("--max-saturations", int, d.max_saturations, "saturations before stopping")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="cohort-opt", description="Cohort Intelligence optimizer with static and dynamic penalties.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("list", help="list catalog problems")
    p.add_argument("--filter", choices=("inequality-only",), help="only problems without equality constraints")
    p.add_argument("--json", action="store_true", help="machine-readable output")

    p = sub.add_parser("run", help="optimize one problem")
    p.add_argument("problem")
    _add_scheme_flags(p)
    _add_engine_flags(p)
    p.add_argument("--seed", type=int, default=0, help="RNG seed (default: %(default)s)")
    p.add_argument("--out", help="directory for the trace CSV (default: $COHORT_OPT_OUT, else no file)")
    p.add_argument("--json", action="store_true", help="machine-readable output")

    p = sub.add_parser("bench", help="run a multi-replicate experiment from a JSON config")
    p.add_argument("config", help="config path, or the name of a shipped config such as paper_sci.json")
    p.add_argument("--problems", nargs="+", help="restrict to these problems")
    _add_scheme_flags(p, with_defaults=False)
    _add_engine_flags(p, with_defaults=False)
    p.add_argument("--runs", type=int, help="replicates per problem (default: from config, 20)")
    p.add_argument("--seed", type=int, help="base seed; replicate i uses seed + i (default: from config, 0)")
    p.add_argument("--jobs", type=int, help="worker processes (default: from config, 1)")
    p.add_argument("--out", help="output directory (default: config, then $COHORT_OPT_OUT, else ./results)")
    p.add_argument("--no-traces", action="store_true", help="skip per-run trace files")
    p.add_argument("--json", action="store_true", help="print the report as JSON")

    p = sub.add_parser("plot", help="render a trace CSV as an SVG convergence plot")
    p.add_argument("trace")
    p.add_argument("--out", help="SVG path (default: trace path with .svg)")
    p.add_argument("--title", default="")
    return parser


def _scheme_from_args(args, parser, base=None) -> PenaltyScheme:
    kind = args.scheme or (base.kind if base else "static")
    if kind == "static" and (args.alpha is not None or args.beta is not None):
        parser.error("--alpha/--beta require --scheme dynamic")
    if base is not None and base.kind == kind:
        params = {"S": base.S, "delta": base.delta}
        if kind == "dynamic":
            params.update(alpha=base.alpha, beta=base.beta)
    else:
        params = {}
    for key in ("S", "alpha", "beta", "delta"):
        value = getattr(args, key)
        if value is not None:
            params[key] = value
    try:
        return PenaltyScheme.static(**params) if kind == "static" else PenaltyScheme.dynamic(**params)
    except CohortOptError as exc:
        parser.error(str(exc))


def _engine_from_args(args, base: EngineConfig) -> EngineConfig:
    changes = {field: getattr(args, flag) for flag, field in _ENGINE_FLAGS.items() if getattr(args, flag) is not None}
    return base.replace(**changes)


def _fmt_num(v) -> str:
    return "-" if v is None else f"{v:.10g}"


def cmd_list(args) -> int:
    specs = catalog()
    if args.filter == "inequality-only":
        specs = [s for s in specs if s.features.n_eq == 0]
    if args.json:
        print(json.dumps([s.describe() for s in specs], indent=2))
        return EXIT_OK
    print(f"{'name':<12}{'N':>3}  {'type':<12}{'LI':>3}{'NI':>3}{'LE':>3}{'NE':>3}  known best")
    for s in specs:
        f = s.features
        print(f"{s.name:<12}{s.dimension:>3}  {f.type:<12}{f.li:>3}{f.ni:>3}{f.le:>3}{f.ne:>3}  {_fmt_num(s.known_best)}")
    return EXIT_OK


def cmd_run(args, parser) -> int:
    spec = catalog_lookup(args.problem)
    scheme = _scheme_from_args(args, parser)
    try:
        cfg = _engine_from_args(args, _DEFAULT_ENGINE.replace(seed=args.seed))
    except CohortOptError as exc:
        parser.error(str(exc))
    rec = run(spec, scheme, cfg)

    out_dir = default_out_dir(args.out)
    trace_path = None
    if out_dir:
        Path(out_dir).mkdir(parents=True, exist_ok=True)
        trace_path = Path(out_dir) / trace_filename(spec.name, 0)
        write_trace_csv(rec, trace_path)

    if args.json:
        doc = rec.summary()
        doc["trace"] = str(trace_path) if trace_path else None
        print(json.dumps(doc, indent=2))
    else:
        print(f"problem      {spec.name} ({scheme.label})")
        print(f"best x       {', '.join(f'{v:.10g}' for v in rec.best_x)}")
        print(f"objective    {rec.best_f:.12g}")
        print(f"violation    {rec.violation:.3g}")
        print(f"feasible     {'yes' if rec.feasible else 'no'}")
        print(f"FE           {rec.fe}")
        print(f"attempts     {rec.attempts} ({rec.saturations} saturations{', did not converge' if rec.dnc else ''})")
        if trace_path:
            print(f"trace        {trace_path}")
    if rec.dnc:
        return EXIT_DNC
    return EXIT_OK if rec.feasible else EXIT_INFEASIBLE


def resolve_config(name) -> Path:
    """A filesystem path, or the name of a config shipped with the package."""
    path = Path(name)
    if path.exists():
        return path
    shipped = resources.files("cohort_opt") / "configs" / path.name
    if shipped.is_file():
        return Path(str(shipped))
    raise CohortOptError(f"{name}: no such config file (shipped configs: {', '.join(shipped_configs())})")


def shipped_configs() -> list[str]:
    return sorted(p.name for p in (resources.files("cohort_opt") / "configs").iterdir() if p.name.endswith(".json"))


def cmd_bench(args, parser) -> int:
    cfg = ExperimentConfig.load(resolve_config(args.config))
    data = cfg.to_dict()
    if args.problems:
        data["problems"] = args.problems
    if any(getattr(args, k) is not None for k in ("scheme", "S", "alpha", "beta", "delta")):
        scheme = _scheme_from_args(args, parser, base=cfg.scheme)
        data["scheme"] = scheme.to_dict()
        # per-problem weights belong to the config's scheme; an explicit S or another kind replaces them
        if args.S is not None or scheme.kind != cfg.scheme.kind:
            data["scheme_overrides"] = {}
    data["engine"].update({f: getattr(args, flag) for flag, f in _ENGINE_FLAGS.items() if getattr(args, flag) is not None})
    for key, flag in (("runs", "runs"), ("base_seed", "seed"), ("jobs", "jobs")):
        if getattr(args, flag) is not None:
            data[key] = getattr(args, flag)
    cfg = ExperimentConfig.from_dict(data)
    out_dir = args.out or cfg.out or default_out_dir() or "results"

    report = run_experiment(cfg)
    export(report, out_dir, cfg, traces=not args.no_traces)
    if args.json:
        print(json.dumps(report.rows, indent=2))
        return EXIT_OK
    print(f"{'problem':<12}{'scheme':<7}{'best':>16}{'mean':>16}{'sd':>11}{'worst':>16}{'feas':>6}{'mean FE':>10}{'DNC':>5}")
    for r in report.rows:
        print(f"{r['problem']:<12}{r['scheme']:<7}{_fmt_num(r['best']):>16}{_fmt_num(r['mean']):>16}"
              f"{('-' if r['sd'] is None else format(r['sd'], '.2e')):>11}{_fmt_num(r['worst']):>16}"
              f"{r['feas_rate']:>6.2f}{r['mean_fe']:>10.0f}{r['dnc']:>5}")
    print(f"results written to {out_dir}")
    return EXIT_OK


def cmd_plot(args) -> int:
    path = plot_trace_file(args.trace, args.out, title=args.title)
    print(path)
    return EXIT_OK


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "list":
            return cmd_list(args)
        if args.command == "run":
            return cmd_run(args, parser)
        if args.command == "bench":
            return cmd_bench(args, parser)
        return cmd_plot(args)
    except CohortOptError as exc:
        print(f"cohort-opt: error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
