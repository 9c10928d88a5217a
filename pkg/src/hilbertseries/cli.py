"""Experiment runner.

Subcommands: moments, carleson, apply, norm, sharpness, divergence,
identities, plus validate. Configuration comes from a JSON document
(--config, a file or a directory of files) or from flags; unknown keys are
rejected rather than ignored. Every run writes a JSON report, a flat CSV of
the trace, and a PNG figure of the trace next to them (--no-figures
suppresses the PNG).

Exit codes: 0 success, 2 configuration error, 3 domain/precondition error,
4 precision cap reached, 5 iteration failed to converge.
"""

from __future__ import annotations

import argparse
import concurrent.futures
import json
import os
import sys
import time

from .errors import (
    ConfigError,
    DomainError,
    HilbertSeriesError,
    NonConvergenceError,
    PrecisionCapError,
)
from .identities import identity_suite
from .measures import (
    Measure,
    carleson_sup,
    load_moment_table,
    moment_table,
    save_moment_table,
)
from .normest import (
    NormConfig,
    SharpnessConfig,
    TracePoint,
    divergence_experiment,
    norm_experiment,
    sharpness_experiment,
)
from .operator import apply as operator_apply
from .operator import make_context, ratio_detail
from .report import ExperimentReport, report_to_dict, write_report
from .seqspace import (
    Seq,
    WeightParams,
    make_b_family,
    make_epsilon_family,
    make_tau_family,
)

COMMANDS = (
    "moments",
    "carleson",
    "apply",
    "norm",
    "sharpness",
    "divergence",
    "identities",
)

_TOP_KEYS = {"command", "measure", "weights", "params", "output", "seed"}
_WEIGHT_KEYS = {"p", "alpha", "beta"}
_OUTPUT_KEYS = {"path", "format"}
_WORKERS_ENV = "HILBERTSERIES_WORKERS"

_PARAM_KEYS = {
    "moments": {"n_max", "table_out"},
    "carleson": {"s", "grid_size", "u_min"},
    "apply": {"family", "m_out", "tail_policy", "table_in"},
    "norm": {
        "M",
        "m_out",
        "family",
        "schedule",
        "power_iteration_size",
        "use_floor",
        "floor_eps_list",
        "floor_tau_list",
    },
    "sharpness": {"eps_list", "tau_list", "M", "m_out", "N", "j_eps"},
    "divergence": {"eps_list", "m_start", "empirical_cap"},
    "identities": {"trials", "seed"},
}

_NEEDS_MEASURE = {"moments", "carleson", "apply", "norm", "sharpness"}
_NEEDS_WEIGHTS = {"apply", "norm", "sharpness", "divergence"}

_DEFAULT_DIVERGENCE_EPS = (0.48, 0.24, 0.12, 0.06, 0.03)
_DEFAULT_DIVERGENCE_M = 1e12


def parse_measure_shorthand(text: str) -> dict:
    """lebesgue | dirac:T[:MASS] | constant:C | monomial:K[:C] | one_minus_t:S[:C]"""
    parts = text.split(":")
    name, args = parts[0], parts[1:]
    try:
        if name == "lebesgue" and not args:
            return {"density": {"kind": "constant", "params": {"c": 1.0}}, "label": "lebesgue"}
        if name == "dirac" and len(args) in (1, 2):
            t = float(args[0])
            mass = float(args[1]) if len(args) == 2 else 1.0
            return {"atoms": [{"t": t, "mass": mass}], "label": text}
        if name == "constant" and len(args) == 1:
            return {"density": {"kind": "constant", "params": {"c": float(args[0])}}, "label": text}
        if name == "monomial" and len(args) in (1, 2):
            k = float(args[0])
            c = float(args[1]) if len(args) == 2 else 1.0
            return {
                "density": {"kind": "monomial", "params": {"k": k, "c": c}},
                "label": text,
            }
        if name == "one_minus_t" and len(args) in (1, 2):
            s = float(args[0])
            c = float(args[1]) if len(args) == 2 else 1.0
            return {
                "density": {"kind": "one_minus_t_power", "params": {"s": s, "c": c}},
                "label": text,
            }
    except ValueError as exc:
        raise ConfigError(f"bad measure shorthand {text!r}: {exc}") from exc
    raise ConfigError(f"unknown measure shorthand {text!r}")


def _require_keys(doc: dict, allowed: set, where: str) -> None:
    if not isinstance(doc, dict):
        raise ConfigError(f"{where} must be a JSON object")
    unknown = set(doc) - allowed
    if unknown:
        raise ConfigError(f"{where}: unknown keys {sorted(unknown)}")


def _parse_weights(doc: dict) -> WeightParams:
    _require_keys(doc, _WEIGHT_KEYS, "weights")
    if "p" not in doc or "alpha" not in doc:
        raise ConfigError("weights need at least p and alpha")
    try:
        return WeightParams(
            p=float(doc["p"]),
            alpha=float(doc["alpha"]),
            beta=float(doc["beta"]) if "beta" in doc and doc["beta"] is not None else None,
        )
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"weights: {exc}") from exc


def _parse_family(doc: dict, w: WeightParams) -> Seq:
    if not isinstance(doc, dict) or "family" not in doc:
        raise ConfigError('apply needs params.family = {"family": ..., ...}')
    tag = doc["family"]
    extra = dict(doc)
    extra.pop("family")
    try:
        if tag == "epsilon":
            _require_keys(extra, {"eps", "M"}, "epsilon family")
            return make_epsilon_family(w, float(extra["eps"]), int(extra["M"]))
        if tag == "b":
            _require_keys(extra, {"b", "M"}, "b family")
            m_val = int(extra["M"]) if "M" in extra else None
            return make_b_family(w, float(extra["b"]), m_val)
        if tag == "tau":
            _require_keys(extra, {"tau", "N", "M"}, "tau family")
            return make_tau_family(w, float(extra["tau"]), int(extra["N"]), int(extra["M"]))
        if tag == "custom":
            _require_keys(extra, {"values"}, "custom family")
            return Seq(extra["values"])
    except KeyError as exc:
        raise ConfigError(f"family {tag!r} missing key {exc}") from exc
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"family {tag!r}: {exc}") from exc
    raise ConfigError(f"unknown family tag {tag!r}")


def _as_tuple(value, where: str) -> tuple:
    if not isinstance(value, (list, tuple)) or not value:
        raise ConfigError(f"{where} must be a nonempty list")
    try:
        return tuple(float(v) for v in value)
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"{where}: {exc}") from exc


def check_config(doc: dict) -> tuple:
    """Validate a config document; returns (command, measure, weights, params).

    Raises ConfigError for schema problems and DomainError for precondition
    problems. run_config() goes through this same path, so an empty validate
    implies the run cannot fail on either class.
    """
    _require_keys(doc, _TOP_KEYS, "config")
    command = doc.get("command")
    if command not in COMMANDS:
        raise ConfigError(f"command must be one of {COMMANDS}, got {command!r}")
    params = doc.get("params", {})
    _require_keys(params, _PARAM_KEYS[command], f"{command} params")
    if "seed" in doc:
        if not isinstance(doc["seed"], int):
            raise ConfigError("seed must be an integer")
        if command == "identities" and "seed" not in params:
            params = {**params, "seed": doc["seed"]}
    if "output" in doc:
        _require_keys(doc["output"], _OUTPUT_KEYS, "output")
        fmt = doc["output"].get("format", "json")
        if fmt not in ("json", "csv"):
            raise ConfigError(f"output.format must be json or csv, got {fmt!r}")

    measure = None
    if command in _NEEDS_MEASURE:
        if "measure" not in doc:
            raise ConfigError(f"{command} needs a measure")
        raw = doc["measure"]
        # config docs may use the flag shorthand instead of a descriptor
        if isinstance(raw, str):
            raw = parse_measure_shorthand(raw)
        measure = Measure.from_descriptor(raw)
    weights = None
    if command in _NEEDS_WEIGHTS:
        if "weights" not in doc:
            raise ConfigError(f"{command} needs weights")
        weights = _parse_weights(doc["weights"])

    # command-specific preconditions, checked without heavy computation
    if command == "moments":
        n_max = int(params.get("n_max", 64))
        if n_max < 1:
            raise DomainError("moments needs n_max >= 1")
    elif command == "carleson":
        if "s" not in params:
            raise ConfigError("carleson needs params.s")
        if not float(params["s"]) > 0:
            raise DomainError("carleson needs s > 0")
        if int(params.get("grid_size", 64)) < 8:
            raise DomainError("carleson grid needs at least 8 points")
        u_min = float(params.get("u_min", 1e-9))
        if not 0.0 < u_min < 1.0:
            raise DomainError("carleson needs 0 < u_min < 1")
    elif command == "apply":
        weights.require_theorem_range()
        _parse_family(params.get("family", {}), weights)
        policy = params.get("tail_policy", "bound")
        if policy not in ("bound", "ignore"):
            raise ConfigError(f"tail_policy must be bound or ignore, got {policy!r}")
    elif command == "norm":
        weights.require_theorem_range()
        _norm_config(params)
    elif command == "sharpness":
        cfg = _sharpness_config(params)
        # replicate the experiment's preconditions cheaply
        weights.require_theorem_range()
        if weights.beta != weights.alpha:
            raise DomainError("sharpness needs beta == alpha")
        dens = measure.density
        if dens is None or measure.atoms:
            raise DomainError("sharpness needs an atom-free density measure")
        sup = dens.sup()
        if not (sup > 0 and sup != float("inf")):
            raise DomainError("sharpness needs a bounded nonzero density")
        if not dens.nondecreasing():
            raise DomainError("sharpness needs a nondecreasing density")
        for tau in cfg.tau_list:
            if not 0.0 < tau < weights.p - 1.0 - weights.alpha:
                raise DomainError(f"tau = {tau} outside (0, p-1-alpha)")
        for eps in cfg.eps_list:
            if not 0.0 < eps < sup:
                raise DomainError(f"eps = {eps} outside (0, sup)")
    elif command == "divergence":
        if weights.beta <= weights.alpha:
            raise DomainError("divergence needs beta > alpha")
        eps_list = _as_tuple(params.get("eps_list", _DEFAULT_DIVERGENCE_EPS), "eps_list")
        if any(e <= 0 for e in eps_list):
            raise DomainError("divergence eps values must be positive")
        if float(params.get("m_start", _DEFAULT_DIVERGENCE_M)) < 1:
            raise DomainError("divergence needs m_start >= 1")
    elif command == "identities":
        if int(params.get("trials", 200)) < 1:
            raise DomainError("identities needs trials >= 1")
    return command, measure, weights, params


def _norm_config(params: dict) -> NormConfig:
    kwargs = {}
    if "M" in params:
        kwargs["M"] = int(params["M"])
    if "m_out" in params and params["m_out"] is not None:
        kwargs["m_out"] = int(params["m_out"])
    if "family" in params:
        kwargs["family"] = str(params["family"])
    if "schedule" in params:
        kwargs["schedule"] = _as_tuple(params["schedule"], "schedule")
    if "power_iteration_size" in params and params["power_iteration_size"] is not None:
        kwargs["power_iteration_size"] = int(params["power_iteration_size"])
    if "use_floor" in params:
        kwargs["use_floor"] = bool(params["use_floor"])
    if "floor_eps_list" in params:
        kwargs["floor_eps_list"] = _as_tuple(params["floor_eps_list"], "floor_eps_list")
    if "floor_tau_list" in params:
        kwargs["floor_tau_list"] = _as_tuple(params["floor_tau_list"], "floor_tau_list")
    return NormConfig(**kwargs)


def _sharpness_config(params: dict) -> SharpnessConfig:
    if "eps_list" not in params or "tau_list" not in params:
        raise ConfigError("sharpness needs eps_list and tau_list")
    kwargs = {
        "eps_list": _as_tuple(params["eps_list"], "eps_list"),
        "tau_list": _as_tuple(params["tau_list"], "tau_list"),
    }
    if "M" in params:
        kwargs["M"] = int(params["M"])
    if "m_out" in params and params["m_out"] is not None:
        kwargs["m_out"] = int(params["m_out"])
    if "N" in params and params["N"] is not None:
        kwargs["cutoff_override"] = int(params["N"])
    if "j_eps" in params and params["j_eps"] is not None:
        kwargs["left_edge_override"] = float(params["j_eps"])
    return SharpnessConfig(**kwargs)


def run_config(doc: dict) -> ExperimentReport:
    command, measure, weights, params = check_config(doc)
    start = time.monotonic()
    if command == "moments":
        report = _run_moments(measure, params)
    elif command == "carleson":
        report = _run_carleson(measure, params)
    elif command == "apply":
        report = _run_apply(measure, weights, params)
    elif command == "norm":
        report = _run_norm(measure, weights, params)
    elif command == "sharpness":
        report = _run_sharpness(measure, weights, params)
    elif command == "divergence":
        report = _run_divergence(weights, params)
    else:
        report = _run_identities(params)
    runtime = time.monotonic() - start
    return ExperimentReport(
        experiment=report.experiment,
        params=report.params,
        trace=report.trace,
        lower=report.lower,
        upper=report.upper,
        slack=report.slack,
        extrapolated=report.extrapolated,
        runtime_seconds=runtime,
    )


def _run_moments(measure: Measure, params: dict) -> ExperimentReport:
    n_max = int(params.get("n_max", 64))
    table = moment_table(measure, n_max)
    table_out = params.get("table_out")
    if table_out:
        save_moment_table(table, str(table_out))
    trace = [
        TracePoint(parameter=float(n), estimate=float(table.values[n]))
        for n in range(1, n_max + 1)
    ]
    outcome = {
        "total_mass": measure.total_mass(),
        "decay_fit": list(table.decay_fit) if table.decay_fit else None,
        "table_out": table_out,
    }
    return ExperimentReport(
        experiment="moments",
        params={"measure": measure.descriptor(), "n_max": n_max, "outcome": outcome},
        trace=trace,
    )


def _run_carleson(measure: Measure, params: dict) -> ExperimentReport:
    s = float(params["s"])
    grid_size = int(params.get("grid_size", 64))
    u_min = float(params.get("u_min", 1e-9))
    result = carleson_sup(measure, s, grid_size=grid_size, u_min=u_min)
    trace = [
        TracePoint(parameter=float(u), estimate=float(r))
        for u, r in zip(result.u_grid, result.ratios)
    ]
    outcome = {
        "sup_ratio": result.sup_ratio,
        "argmax_t": result.argmax_t,
        "is_finite": result.is_finite,
    }
    return ExperimentReport(
        experiment="carleson",
        params={
            "measure": measure.descriptor(),
            "s": s,
            "grid_size": grid_size,
            "u_min": u_min,
            "outcome": outcome,
        },
        trace=trace,
        lower=result.sup_ratio,
    )


def _run_apply(measure: Measure, w: WeightParams, params: dict) -> ExperimentReport:
    seq = _parse_family(params["family"], w)
    m_out = int(params.get("m_out", seq.M))
    policy = params.get("tail_policy", "bound")
    table = None
    if params.get("table_in"):
        table = load_moment_table(str(params["table_in"]))
    ctx = make_context(measure, w, seq.M, m_out, tail_policy=policy, table=table)
    res = ratio_detail(ctx, seq)
    out = operator_apply(ctx, seq)
    tails = out.tail_upper
    trace = [
        TracePoint(
            parameter=float(m + 1),
            estimate=float(out.values[m]),
            slack=float(tails[m]) if tails is not None else 0.0,
        )
        for m in range(out.M)
    ]
    outcome = {
        "ratio": res.ratio,
        "ratio_slack": res.slack,
        "input_norm": res.denominator,
        "output_norm": res.numerator,
    }
    return ExperimentReport(
        experiment="apply",
        params={
            "measure": measure.descriptor(),
            "weights": {"p": w.p, "alpha": w.alpha, "beta": w.beta},
            "family": params["family"],
            "m_out": m_out,
            "tail_policy": policy,
            "outcome": outcome,
        },
        trace=trace,
        lower=res.ratio,
        slack=res.slack,
    )


def _run_norm(measure: Measure, w: WeightParams, params: dict) -> ExperimentReport:
    cfg = _norm_config(params)
    est = norm_experiment(measure, w, cfg)
    outcome = {"method_lower": est.method_lower, "method_upper": est.method_upper}
    return ExperimentReport(
        experiment="norm",
        params={
            "measure": measure.descriptor(),
            "weights": {"p": w.p, "alpha": w.alpha, "beta": w.beta},
            "M": cfg.M,
            "family": cfg.family,
            "schedule": list(cfg.schedule),
            "outcome": outcome,
        },
        trace=est.trace,
        lower=est.lower,
        upper=est.upper,
        slack=est.slack,
        extrapolated=est.extrapolated,
    )


def _run_sharpness(measure: Measure, w: WeightParams, params: dict) -> ExperimentReport:
    cfg = _sharpness_config(params)
    result = sharpness_experiment(measure, w, cfg)
    est = result.estimate
    outcome = {
        "rows": result.rows,
        "method_lower": est.method_lower,
        "method_upper": est.method_upper,
    }
    return ExperimentReport(
        experiment="sharpness",
        params={
            "measure": measure.descriptor(),
            "weights": {"p": w.p, "alpha": w.alpha, "beta": w.beta},
            "M": cfg.M,
            "eps_list": list(cfg.eps_list),
            "tau_list": list(cfg.tau_list),
            "outcome": outcome,
        },
        trace=est.trace,
        lower=est.lower,
        upper=est.upper,
        slack=est.slack,
        extrapolated=est.extrapolated,
    )


def _run_divergence(w: WeightParams, params: dict) -> ExperimentReport:
    eps_list = _as_tuple(params.get("eps_list", _DEFAULT_DIVERGENCE_EPS), "eps_list")
    m_start = float(params.get("m_start", _DEFAULT_DIVERGENCE_M))
    kwargs = {}
    if "empirical_cap" in params:
        kwargs["empirical_cap"] = int(params["empirical_cap"])
    result = divergence_experiment(w, eps_list, m_start, **kwargs)
    in_window = [
        pt.estimate for pt in result.trace if not pt.detail.get("no_divergence")
    ]
    outcome = {
        "consecutive_growth": result.consecutive_growth,
        "growth_threshold": result.growth_threshold,
    }
    return ExperimentReport(
        experiment="divergence",
        params={
            "weights": {"p": w.p, "alpha": w.alpha, "beta": w.beta},
            "eps_list": list(eps_list),
            "m_start": m_start,
            "outcome": outcome,
        },
        trace=result.trace,
        lower=max(in_window) if in_window else None,
    )


def _run_identities(params: dict) -> ExperimentReport:
    trials = int(params.get("trials", 200))
    seed = int(params.get("seed", 0))
    rows, summary = identity_suite(trials=trials, seed=seed)
    return ExperimentReport(
        experiment="identities",
        params={"trials": trials, "seed": seed, "outcome": summary},
        trace=rows,
    )


# ---------------------------------------------------------------------------
# entry point plumbing


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hilbertseries",
        description="Experiments for moment-kernel operators on weighted sequence spaces.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="JSON config file, or a directory of them")
    common.add_argument("--measure", help="measure shorthand, e.g. lebesgue or dirac:0.5")
    common.add_argument("--p", type=float, help="exponent p")
    common.add_argument("--alpha", type=float, help="input weight exponent")
    common.add_argument("--beta", type=float, help="output weight exponent (default alpha)")
    common.add_argument(
        "--param",
        action="append",
        default=[],
        metavar="KEY=VALUE",
        help="experiment parameter; VALUE parsed as JSON when possible",
    )
    common.add_argument("--output", help="report path (default report_<command>.json)")
    common.add_argument("--format", choices=("json", "csv"), help="primary output format")
    common.add_argument(
        "--workers",
        type=int,
        default=int(os.environ.get(_WORKERS_ENV, "1")),
        help=f"worker processes in directory mode (default ${_WORKERS_ENV} or 1)",
    )
    common.add_argument("--seed", type=int, help="seed for randomized batteries")
    common.add_argument("--validate-only", action="store_true", help="check the config and stop")
    common.add_argument("--no-figures", action="store_true", help="skip the PNG figure")
    for name in COMMANDS:
        cmd_parser = sub.add_parser(name, parents=[common], help=f"run the {name} experiment")
        # every config field mirrors as a flag; values parse as JSON
        for key in sorted(_PARAM_KEYS[name]):
            if key == "seed":
                continue  # the common --seed flag already covers it
            cmd_parser.add_argument(
                "--" + key.replace("_", "-"),
                dest="param_" + key,
                metavar="VALUE",
                help=f"{name} parameter {key}",
            )
    sub.add_parser("validate", parents=[common], help="validate configs without running")
    return parser


def _parse_flag_value(raw: str):
    try:
        return json.loads(raw)
    except json.JSONDecodeError:
        return raw


def _doc_from_args(args) -> dict:
    params = {}
    for item in args.param:
        if "=" not in item:
            raise ConfigError(f"--param needs KEY=VALUE, got {item!r}")
        key, raw = item.split("=", 1)
        params[key] = _parse_flag_value(raw)
    for key, value in vars(args).items():
        if key.startswith("param_") and value is not None:
            params[key[len("param_") :]] = _parse_flag_value(value)
    doc: dict = {"command": args.command, "params": params}
    if args.measure:
        doc["measure"] = parse_measure_shorthand(args.measure)
    if args.seed is not None:
        doc["seed"] = args.seed
    if args.p is not None or args.alpha is not None:
        if args.p is None or args.alpha is None:
            raise ConfigError("weights need both --p and --alpha")
        weights = {"p": args.p, "alpha": args.alpha}
        if args.beta is not None:
            weights["beta"] = args.beta
        doc["weights"] = weights
    return doc


def _load_config_file(path: str) -> dict:
    try:
        with open(path) as fh:
            doc = json.load(fh)
    except OSError as exc:
        raise ConfigError(f"cannot read config {path!r}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config {path!r} is not valid JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise ConfigError(f"config {path!r} must contain a JSON object")
    return doc


def _output_plan(doc: dict, args, config_path: str | None) -> tuple[str, str]:
    out = doc.get("output", {})
    path = out.get("path")
    fmt = out.get("format", "json")
    if args.output:
        path = args.output
    if args.format:
        fmt = args.format
    if path is None:
        if config_path is not None:
            stem = os.path.splitext(config_path)[0]
            path = stem + (".report.csv" if fmt == "csv" else ".report.json")
        else:
            path = f"report_{doc['command']}." + ("csv" if fmt == "csv" else "json")
    elif config_path is not None and not os.path.isabs(path):
        path = os.path.join(os.path.dirname(os.path.abspath(config_path)), path)
    return path, fmt


def _execute(doc: dict, args, config_path: str | None) -> str:
    path, fmt = _output_plan(doc, args, config_path)
    report = run_config(doc)
    written = write_report(report, path, fmt)
    if not args.no_figures:
        from .figures import render_report_figure

        figure_path = os.path.splitext(written["json"])[0] + ".png"
        rendered = render_report_figure(report_to_dict(report), figure_path)
        if rendered:
            written["figure"] = rendered
    return ", ".join(f"{k}: {v}" for k, v in written.items())


def _pool_worker(task: tuple) -> tuple:
    doc_path, output, fmt, no_figures = task
    ns = argparse.Namespace(output=output, format=fmt, no_figures=no_figures)
    try:
        doc = _load_config_file(doc_path)
        message = _execute(doc, ns, doc_path)
        return doc_path, 0, message
    except HilbertSeriesError as exc:
        return doc_path, _exit_code_for(exc), f"{type(exc).__name__}: {exc}"


def _exit_code_for(exc: Exception) -> int:
    if isinstance(exc, ConfigError):
        return 2
    if isinstance(exc, PrecisionCapError):
        return 4
    if isinstance(exc, NonConvergenceError):
        return 5
    if isinstance(exc, DomainError):
        return 3
    return 1


def _validate_doc(doc: dict, origin: str) -> list[str]:
    try:
        check_config(doc)
        return []
    except (ConfigError, HilbertSeriesError) as exc:
        return [f"{origin}: {type(exc).__name__}: {exc}"]


def _run_directory(args) -> int:
    # reports default to <config>.report.json next to their config, so a
    # second sweep must not read its own output back as a config
    files = sorted(
        os.path.join(args.config, name)
        for name in os.listdir(args.config)
        if name.endswith(".json") and not name.endswith(".report.json")
    )
    if not files:
        raise ConfigError(f"no .json configs in {args.config!r}")
    if args.output:
        raise ConfigError("--output applies to single-config runs only")
    if args.validate_only:
        problems = []
        for path in files:
            problems.extend(_validate_doc(_load_config_file(path), path))
        for line in problems:
            print(line, file=sys.stderr)
        print(f"validated {len(files)} configs, {len(problems)} problem(s)")
        return 0 if not problems else 2
    tasks = [(path, None, args.format, args.no_figures) for path in files]
    workers = max(1, min(args.workers, len(tasks)))
    results = []
    if workers == 1:
        results = [_pool_worker(task) for task in tasks]
    else:
        with concurrent.futures.ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_pool_worker, tasks))
    worst = 0
    for path, code, message in results:
        status = "ok" if code == 0 else f"exit {code}"
        print(f"{path}: {status} ({message})")
        worst = max(worst, code)
    return worst


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        if args.command == "validate":
            args.validate_only = True
            if not args.config:
                raise ConfigError("validate needs --config")
            if os.path.isdir(args.config):
                return _run_directory(args)
            problems = _validate_doc(_load_config_file(args.config), args.config)
            for line in problems:
                print(line, file=sys.stderr)
            print("config ok" if not problems else f"{len(problems)} problem(s)")
            return 0 if not problems else 2

        if args.config and os.path.isdir(args.config):
            return _run_directory(args)

        if args.config:
            doc = _load_config_file(args.config)
            if doc.get("command") != args.command:
                raise ConfigError(
                    f"config command {doc.get('command')!r} does not match "
                    f"subcommand {args.command!r}"
                )
            flag_doc = _doc_from_args(args)
            if flag_doc.get("measure"):
                doc["measure"] = flag_doc["measure"]
            if flag_doc.get("weights"):
                doc["weights"] = flag_doc["weights"]
            if "seed" in flag_doc:
                doc["seed"] = flag_doc["seed"]
            if flag_doc["params"]:
                doc.setdefault("params", {}).update(flag_doc["params"])
        else:
            doc = _doc_from_args(args)

        if args.validate_only:
            problems = _validate_doc(doc, args.config or "<flags>")
            for line in problems:
                print(line, file=sys.stderr)
            print("config ok" if not problems else f"{len(problems)} problem(s)")
            return 0 if not problems else 2

        message = _execute(doc, args, args.config)
        print(message)
        return 0
    except HilbertSeriesError as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return _exit_code_for(exc)


if __name__ == "__main__":
    sys.exit(main())
