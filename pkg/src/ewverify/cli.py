"""Command-line verification harness.

Subcommands run the named check suites and emit reports as JSON (default),
plain text, or CSV (scaling sweep only).  Exit status: 0 when every check
passes, 1 when any check fails, 2 on usage or configuration errors.
Identical (config, seed) inputs produce byte-identical JSON output.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path

from .contraction import J_NILPOTENT, J_ONE, JMode
from .limits import decoupling_check, mass_invariance_check, scaling_sweep
from .matrices import verify_group
from .model import (
    ModelConfig,
    ParameterError,
    check_su2_invariance,
    check_u1_invariance,
    extract_masses,
    verify_grading,
    verify_matter_radial,
    verify_trace_identity,
)

CONFIG_KEYS = ("g", "gp", "R", "jmode", "seed", "samples", "exact")

SWEEP_JS = (1e-1, 10**-1.5, 1e-2, 10**-2.5, 1e-3)


class ConfigError(ValueError):
    pass


def _as_fraction(value, key: str) -> Fraction:
    try:
        if isinstance(value, str):
            return Fraction(value)
        return Fraction(value)
    except (ValueError, TypeError, ZeroDivisionError):
        raise ConfigError(f"invalid value for {key!r}: {value!r}") from None


def load_config(path: str | Path) -> ModelConfig:
    """Read a JSON config; an empty file means all defaults."""
    text = Path(path).read_text(encoding="utf-8").strip()
    data = json.loads(text) if text else {}
    if not isinstance(data, dict):
        raise ConfigError("config must be a JSON object")
    unknown = sorted(set(data) - set(CONFIG_KEYS))
    if unknown:
        raise ConfigError(f"unknown config key {unknown[0]!r}")
    kwargs = {}
    for key in ("g", "gp", "R"):
        if key in data:
            kwargs[key] = _as_fraction(data[key], key)
    if "jmode" in data:
        try:
            kwargs["jmode"] = JMode.from_text(str(data["jmode"]))
        except ValueError as exc:
            raise ConfigError(f"invalid value for 'jmode': {exc}") from None
    for key in ("seed", "samples"):
        if key in data:
            if not isinstance(data[key], int) or isinstance(data[key], bool):
                raise ConfigError(f"invalid value for {key!r}: {data[key]!r}")
            kwargs[key] = data[key]
    if "exact" in data:
        if not isinstance(data["exact"], bool):
            raise ConfigError(f"invalid value for 'exact': {data['exact']!r}")
        kwargs["exact"] = data["exact"]
    try:
        return ModelConfig(**kwargs)
    except (ValueError, ParameterError) as exc:
        raise ConfigError(str(exc)) from None


def _config_from_args(args) -> ModelConfig:
    base = load_config(args.config) if args.config else ModelConfig()
    kwargs = dict(g=base.g, gp=base.gp, R=base.R, jmode=base.jmode,
                  seed=base.seed, samples=base.samples, exact=base.exact)
    try:
        if args.g is not None:
            kwargs["g"] = _as_fraction(args.g, "g")
        if args.gp is not None:
            kwargs["gp"] = _as_fraction(args.gp, "gp")
        if args.R is not None:
            kwargs["R"] = _as_fraction(args.R, "R")
        if args.j is not None:
            kwargs["jmode"] = JMode.from_text(args.j)
        if args.seed is not None:
            kwargs["seed"] = args.seed
        if args.samples is not None:
            kwargs["samples"] = args.samples
        if args.exact is not None:
            kwargs["exact"] = args.exact
        return ModelConfig(**kwargs)
    except (ValueError, ParameterError) as exc:
        raise ConfigError(str(exc)) from None


def _modes_for(arg: str | None) -> list[JMode]:
    if arg is None:
        return [J_ONE, J_NILPOTENT, JMode.numeric(Fraction(1, 1000))]
    return [JMode.from_text(arg)]


def _group_suite(cfg: ModelConfig, jarg: str | None):
    return [verify_group(mode, cfg.samples, cfg.seed) for mode in _modes_for(jarg)]


def _lagrangian_suite(cfg: ModelConfig, jarg: str | None):
    return [verify_grading(cfg), verify_matter_radial(cfg)]


def _gauge_suite(cfg: ModelConfig, jarg: str | None):
    modes = [JMode.from_text(jarg)] if jarg else [J_ONE, J_NILPOTENT]
    out = [check_u1_invariance(cfg)]
    out.extend(check_su2_invariance(mode) for mode in modes)
    return out


def _trace_suite(cfg: ModelConfig, jarg: str | None):
    samples = min(cfg.samples, 100)
    return [verify_trace_identity(samples, cfg.seed)]


def _all_suite(cfg: ModelConfig, jarg: str | None):
    reports = []
    reports.extend(_group_suite(cfg, jarg))
    reports.extend(_lagrangian_suite(cfg, jarg))
    reports.extend(_gauge_suite(cfg, jarg))
    reports.extend(_trace_suite(cfg, jarg))
    reports.append(decoupling_check(cfg))
    reports.append(mass_invariance_check(cfg))
    return reports


SUITES = {
    "group": _group_suite,
    "lagrangian": _lagrangian_suite,
    "gauge": _gauge_suite,
    "trace": _trace_suite,
    "all": _all_suite,
}


def _emit(text: str, out_path: str | None) -> None:
    if out_path:
        Path(out_path).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _report_payload(reports) -> str:
    payload = {
        "reports": [r.as_dict() for r in reports],
        "summary": {
            "total": len(reports),
            "passed": sum(1 for r in reports if r.passed),
            "failed": sum(1 for r in reports if not r.passed),
        },
    }
    return json.dumps(payload, indent=2) + "\n"


def _reports_text(reports) -> str:
    lines = [r.line() for r in reports]
    passed = sum(1 for r in reports if r.passed)
    lines.append(f"{passed}/{len(reports)} checks passed")
    return "\n".join(lines) + "\n"


def _add_common(sub) -> None:
    sub.add_argument("--j", help="contraction mode: 1, iota, or a float")
    sub.add_argument("--g", help="SU(2) coupling (rational like 3 or 3/2)")
    sub.add_argument("--gp", help="U(1) coupling")
    sub.add_argument("--R", help="sphere radius")
    sub.add_argument("--seed", type=int)
    sub.add_argument("--samples", type=int)
    sub.add_argument("--exact", action=argparse.BooleanOptionalAction, default=None)
    sub.add_argument("--config", help="JSON config file path")
    sub.add_argument("--out", help="write output to this path")
    sub.add_argument("--format", choices=("json", "text", "csv"), default="json")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ewverify",
        description="verification suites for the contracted electroweak model",
    )
    commands = parser.add_subparsers(dest="command", required=True)

    verify = commands.add_parser("verify", help="run a named check suite")
    verify.add_argument("suite", choices=sorted(SUITES))
    _add_common(verify)

    masses = commands.add_parser("masses", help="extract the mass spectrum")
    _add_common(masses)

    sweep = commands.add_parser("sweep", help="contraction scaling sweep")
    _add_common(sweep)

    eom = commands.add_parser("eom", help="base/fiber decoupling of field equations")
    _add_common(eom)
    return parser


def run(argv) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = _config_from_args(args)
        return _dispatch(parser, args, cfg)
    except (ConfigError, ValueError, OSError) as exc:
        print(f"ewverify: {exc}", file=sys.stderr)
        return 2


def _dispatch(parser, args, cfg: ModelConfig) -> int:
    if args.format == "csv" and args.command != "sweep":
        raise ConfigError("csv output is only available for the sweep command")

    if args.command == "verify":
        reports = SUITES[args.suite](cfg, args.j)
        if args.format == "text":
            _emit(_reports_text(reports), args.out)
        else:
            _emit(_report_payload(reports), args.out)
        return 0 if all(r.passed for r in reports) else 1

    if args.command == "masses":
        spectrum = extract_masses(cfg)
        if args.format == "text":
            lines = [f"{k} = {v}" for k, v in spectrum.as_dict().items() if k != "exact"]
            _emit("\n".join(lines) + "\n", args.out)
        else:
            _emit(json.dumps(spectrum.as_dict(), indent=2) + "\n", args.out)
        return 0

    if args.command == "sweep":
        samples = cfg.samples if args.samples is not None else 100
        report = scaling_sweep(SWEEP_JS, samples, cfg, cfg.seed)
        if args.format == "csv":
            rows = ["j,ratio_f,ratio_h"]
            rows += [f"{j!r},{rf!r},{rh!r}" for j, rf, rh in report.rows()]
            _emit("\n".join(rows) + "\n", args.out)
        elif args.format == "text":
            _emit(
                f"slope_f={report.slope_f:.4f} slope_h={report.slope_h:.4f} "
                f"r2={report.fit_r2:.6f}\n",
                args.out,
            )
        else:
            payload = {
                "j_values": list(report.j_values),
                "ratios_f": list(report.ratios_f),
                "ratios_h": list(report.ratios_h),
                "slope_f": report.slope_f,
                "slope_h": report.slope_h,
                "fit_r2": report.fit_r2,
                "samples": report.samples,
                "degenerate_redraws": report.degenerate_redraws,
            }
            _emit(json.dumps(payload, indent=2) + "\n", args.out)
        ok = abs(report.slope_f - 2) <= 0.01 and abs(report.slope_h - 4) <= 0.02
        return 0 if ok else 1

    if args.command == "eom":
        report = decoupling_check(cfg)
        if args.format == "text":
            _emit(_reports_text([report]), args.out)
        else:
            _emit(_report_payload([report]), args.out)
        return 0 if report.passed else 1

    parser.error(f"unknown command {args.command!r}")
    return 2


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
