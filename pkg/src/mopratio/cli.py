"""Command-line front end.

Subcommands: limits | branch | eval | converge | zeros | density | selftest.
Direction flags (--k, --l) are 1-based on the command line; the library is
0-based.  Complex numbers are written 'a+bi' ('1+1i', '2i', '-0.5-2e-3i').
Exit codes: 0 success, 1 domain errors, 2 usage errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import plots, reporting
from .acceptance import run_acceptance
from .algebraic import branch_points, partial_fraction_numerator, principal_branch
from .errors import MopratioError
from .evaluator import (
    DEFAULT_DELTA_MIN,
    eval_dp,
    propagate,
    real_zeros,
)
from .families import (
    ConstantCustom,
    JacobiPineiro,
    LimitData,
    MultipleCharlier,
    MultipleHermite,
    MultipleLaguerreI,
    MultipleLaguerreII,
    limit_coefficients,
    load_custom,
)
from .lattice import MultiIndex, RaySpec, build_path
from .verify import density_compare, scaled_ratio_convergence

FAMILIES = (
    "jacobipineiro",
    "hermite",
    "laguerre1",
    "laguerre2",
    "charlier",
    "constant",
    "table",
)


def _floats(value) -> tuple[float, ...]:
    if isinstance(value, (list, tuple)):
        return tuple(float(v) for v in value)
    return tuple(float(v) for v in str(value).split(","))


def _ints(value) -> tuple[int, ...]:
    if isinstance(value, (list, tuple)):
        return tuple(int(v) for v in value)
    return tuple(int(v) for v in str(value).split(","))


def _complexes(value) -> tuple[complex, ...]:
    if isinstance(value, (list, tuple)):
        return tuple(reporting.parse_complex(str(v)) for v in value)
    return tuple(reporting.parse_complex(v) for v in str(value).split(","))


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mopratio",
        description=(
            "Multiple orthogonal polynomials from nearest-neighbor recurrences: "
            "coefficient limits, the limiting algebraic function, stable ratio "
            "evaluation, and convergence reports."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p: argparse.ArgumentParser, *, family: bool = True) -> None:
        if family:
            p.add_argument(
                "--family",
                "--limits-from",
                dest="family",
                choices=FAMILIES,
                help="coefficient family (limits computed from it where needed)",
            )
            p.add_argument("--r", type=int, default=None, help="number of directions")
            p.add_argument("--alpha", default=None, help="alpha parameter(s), comma separated")
            p.add_argument("--beta", type=float, default=None, help="beta parameter")
            p.add_argument("--c", default=None, help="c parameters, comma separated")
            p.add_argument("--a", default=None, help="a parameters, comma separated")
            p.add_argument("--b", default=None, help="b values (constant family)")
            p.add_argument("--table", default=None, help="coefficient table JSON file")
            p.add_argument(
                "--scale-params",
                action="store_const",
                const=True,
                default=None,
                help="let parameters grow with the reference size (hermite, charlier)",
            )
            p.add_argument(
                "--param-ref",
                type=int,
                default=None,
                help="reference size pinning scaled parameters for direct evaluation",
            )
        p.add_argument("--config", default=None, help="JSON file with defaults for the flags")
        p.add_argument("--out", default=None, help="output file (stdout when omitted)")
        p.add_argument(
            "--extended-precision",
            dest="extended_precision",
            nargs="?",
            const=50,
            type=int,
            default=None,
            metavar="DPS",
            help="run ratio propagation in mpmath arithmetic at DPS digits",
        )
        p.add_argument(
            "--delta-min",
            dest="delta_min",
            type=float,
            default=None,
            help=f"smallest |Im x| accepted by ratio propagation (default {DEFAULT_DELTA_MIN:g})",
        )

    p_limits = sub.add_parser("limits", help="coefficient limits along a ray (JSON)")
    add_common(p_limits)
    p_limits.add_argument("--q", default=None, help="ray weights, comma separated, sum 1")
    p_limits.add_argument("--gamma", type=float, default=None, help="scaling exponent")
    p_limits.add_argument("--nref", type=int, default=None, help="extrapolation base size")
    p_limits.add_argument("--tol", type=float, default=None, help="merge tolerance for b-limits")

    p_branch = sub.add_parser(
        "branch", help="principal branch, all roots and branch points (JSON)"
    )
    add_common(p_branch)
    p_branch.add_argument("--q", default=None)
    p_branch.add_argument("--gamma", type=float, default=None)
    p_branch.add_argument("--nref", type=int, default=None)
    p_branch.add_argument("--tol", type=float, default=None)
    p_branch.add_argument("--x", default=None, help="evaluation point(s), a+bi, comma separated")

    p_eval = sub.add_parser("eval", help="polynomial state at a multi-index (JSON)")
    add_common(p_eval)
    p_eval.add_argument("--n", default=None, help="multi-index, comma separated")
    p_eval.add_argument("--x", default=None, help="evaluation point(s)")
    p_eval.add_argument(
        "--dp",
        action="store_const",
        const=True,
        default=None,
        help="use the direct lower-set engine (works on the real axis)",
    )

    p_conv = sub.add_parser("converge", help="ratio convergence report (CSV)")
    add_common(p_conv)
    p_conv.add_argument("--q", default=None)
    p_conv.add_argument("--gamma", type=float, default=None)
    p_conv.add_argument("--nref", type=int, default=None)
    p_conv.add_argument("--k", type=int, default=None, help="direction, 1-based")
    p_conv.add_argument("--n", default=None, help="n grid, comma separated")
    p_conv.add_argument("--x", default=None, help="sample points (default: 8-point rectangle)")
    p_conv.add_argument("--svg", default=None, help="also render the error plot to this file")

    p_zeros = sub.add_parser("zeros", help="real zeros of one polynomial (CSV)")
    add_common(p_zeros)
    p_zeros.add_argument("--n", default=None, help="multi-index, comma separated")

    p_density = sub.add_parser("density", help="zero histogram against model density (CSV)")
    add_common(p_density)
    p_density.add_argument("--q", default=None)
    p_density.add_argument("--gamma", type=float, default=None)
    p_density.add_argument("--n", default=None, help="ray position (integer)")
    p_density.add_argument("--bins", type=int, default=None)
    p_density.add_argument("--svg", default=None, help="also render the histogram overlay")

    p_self = sub.add_parser("selftest", help="run the acceptance suite")
    p_self.add_argument("--config", default=None, help=argparse.SUPPRESS)
    p_self.add_argument("--out", default=None, help=argparse.SUPPRESS)

    return parser


def _merge_config(args: argparse.Namespace, parser: argparse.ArgumentParser) -> dict:
    merged = vars(args).copy()
    if merged.get("config"):
        path = Path(merged["config"])
        if not path.exists():
            parser.error(f"config file not found: {path}")
        try:
            cfg = json.loads(path.read_text(encoding="utf-8"))
        except json.JSONDecodeError as exc:
            parser.error(f"config file {path}: invalid JSON: {exc}")
        if not isinstance(cfg, dict):
            parser.error(f"config file {path}: expected an object")
        for key, value in cfg.items():
            dest = str(key).replace("-", "_")
            if dest not in merged:
                parser.error(f"config key {key!r} is not a flag of this subcommand")
            if merged[dest] is None:
                merged[dest] = value
    return merged


def _need(cfg: dict, key: str, what: str):
    if cfg.get(key) is None:
        raise ValueError(f"missing --{key.replace('_', '-')}: {what}")
    return cfg[key]


def _provider(cfg: dict):
    provider = _provider_unchecked(cfg)
    if cfg.get("r") is not None and provider.r != int(cfg["r"]):
        raise ValueError(f"--r {cfg['r']} does not match the {provider.r} supplied parameters")
    return provider


def _provider_unchecked(cfg: dict):
    family = _need(cfg, "family", "coefficient family")
    scale = bool(cfg.get("scale_params"))
    param_ref = int(cfg["param_ref"]) if cfg.get("param_ref") is not None else 1
    if family == "jacobipineiro":
        alpha = _floats(_need(cfg, "alpha", "alpha parameters"))
        beta = float(_need(cfg, "beta", "beta parameter"))
        return JacobiPineiro(alpha, beta=beta)
    if family == "hermite":
        c = _floats(_need(cfg, "c", "c parameters"))
        return MultipleHermite(c, param_scaling=scale, n_ref=param_ref)
    if family == "laguerre1":
        alpha = _floats(_need(cfg, "alpha", "alpha parameters"))
        return MultipleLaguerreI(alpha)
    if family == "laguerre2":
        c = _floats(_need(cfg, "c", "c parameters"))
        alpha_raw = cfg.get("alpha")
        alpha = float(_floats(alpha_raw)[0]) if alpha_raw is not None else 0.0
        return MultipleLaguerreII(c, alpha=alpha)
    if family == "charlier":
        a = _floats(_need(cfg, "a", "a parameters"))
        return MultipleCharlier(a, param_scaling=scale, n_ref=param_ref)
    if family == "constant":
        a = _floats(_need(cfg, "a", "constant a values"))
        b = _floats(_need(cfg, "b", "constant b values"))
        return ConstantCustom(a, b)
    if family == "table":
        return load_custom(_need(cfg, "table", "coefficient table path"))
    raise ValueError(f"unknown family {family!r}")


def _ray(cfg: dict) -> RaySpec:
    q = _floats(_need(cfg, "q", "ray weights"))
    gamma = float(cfg["gamma"]) if cfg.get("gamma") is not None else 0.0
    return RaySpec(q, gamma)


def _limits(cfg: dict) -> LimitData:
    """Limit data from a family along a ray, or directly from --a/--b."""
    n_ref = int(cfg["nref"]) if cfg.get("nref") is not None else 2000
    tol = float(cfg["tol"]) if cfg.get("tol") is not None else 1e-9
    if cfg.get("family") in (None, "constant") and cfg.get("q") is None:
        a = _floats(_need(cfg, "a", "limit a values"))
        b = _floats(_need(cfg, "b", "limit b values"))
        gamma = float(cfg["gamma"]) if cfg.get("gamma") is not None else 0.0
        return LimitData.from_values(a, b, gamma, tol=tol)
    provider = _provider(cfg)
    return limit_coefficients(provider, _ray(cfg), n_ref=n_ref, merge_tol=tol)


def _k_index(cfg: dict, r: int) -> int:
    k = int(_need(cfg, "k", "direction (1-based)"))
    if not 1 <= k <= r:
        raise ValueError(f"--k must be in 1..{r}, got {k}")
    return k - 1


def _cmd_limits(cfg: dict) -> int:
    limits = _limits(cfg)
    reporting.write_text(cfg.get("out"), reporting.render_json(reporting.limits_payload(limits)))
    return 0


def _cmd_branch(cfg: dict) -> int:
    limits = _limits(cfg)
    eq = partial_fraction_numerator(limits)
    xs = _complexes(_need(cfg, "x", "evaluation point(s)"))
    results = [principal_branch(eq, x) for x in xs]
    pts = branch_points(eq) if not eq.degenerate else []
    payload = reporting.branch_payload(eq, results, pts)
    reporting.write_text(cfg.get("out"), reporting.render_json(payload))
    return 0


def _cmd_eval(cfg: dict) -> int:
    provider = _provider(cfg)
    idx = MultiIndex(_ints(_need(cfg, "n", "multi-index")))
    xs = _complexes(_need(cfg, "x", "evaluation point(s)"))
    dps = cfg.get("extended_precision")
    delta_min = float(cfg["delta_min"]) if cfg.get("delta_min") is not None else DEFAULT_DELTA_MIN
    points = []
    for x in xs:
        if cfg.get("dp"):
            val, der = eval_dp(provider, idx, x)
            points.append(
                {
                    "engine": "lower-set",
                    "exponent": val.exponent,
                    "mantissa": reporting.complex_fields(val.mantissa),
                    "mantissa_derivative": reporting.complex_fields(der.mantissa),
                    "x": reporting.complex_fields(x),
                }
            )
        else:
            state = propagate(provider, x, build_path(idx), delta_min=delta_min, dps=dps)
            points.append(
                {
                    "engine": "ratio",
                    "h": [reporting.complex_fields(v) for v in state.h],
                    "log_p": reporting.complex_fields(state.log_p),
                    "u": reporting.complex_fields(state.u),
                    "x": reporting.complex_fields(x),
                }
            )
    payload = {"index": list(idx.entries), "points": points}
    reporting.write_text(cfg.get("out"), reporting.render_json(payload))
    return 0


def _cmd_converge(cfg: dict) -> int:
    provider = _provider(cfg)
    ray = _ray(cfg)
    k = _k_index(cfg, provider.r)
    n_grid = _ints(_need(cfg, "n", "n grid"))
    xs = _complexes(cfg["x"]) if cfg.get("x") is not None else None
    n_ref = int(cfg["nref"]) if cfg.get("nref") is not None else 2000
    dps = cfg.get("extended_precision")
    delta_min = float(cfg["delta_min"]) if cfg.get("delta_min") is not None else DEFAULT_DELTA_MIN
    report = scaled_ratio_convergence(
        provider, ray, k, xs, n_grid, n_ref=n_ref, dps=dps, delta_min=delta_min
    )
    reporting.write_text(cfg.get("out"), reporting.convergence_csv(report))
    if cfg.get("svg"):
        plots.save_convergence_plot(report, cfg["svg"])
    return 0


def _cmd_zeros(cfg: dict) -> int:
    provider = _provider(cfg)
    idx = MultiIndex(_ints(_need(cfg, "n", "multi-index")))
    zeros = real_zeros(provider, idx)
    reporting.write_text(cfg.get("out"), reporting.zeros_csv(zeros))
    return 0


def _cmd_density(cfg: dict) -> int:
    provider = _provider(cfg)
    ray = _ray(cfg)
    n = int(_need(cfg, "n", "ray position"))
    bins = int(cfg["bins"]) if cfg.get("bins") is not None else 12
    delta_min = float(cfg["delta_min"]) if cfg.get("delta_min") is not None else DEFAULT_DELTA_MIN
    report = density_compare(provider, ray, n, bins, delta_min=delta_min)
    reporting.write_text(cfg.get("out"), reporting.density_csv(report))
    if cfg.get("svg"):
        plots.save_density_plot(report, cfg["svg"])
    return 0


def _cmd_selftest(cfg: dict) -> int:
    if cfg.get("out"):
        with open(cfg["out"], "w", encoding="utf-8") as fh:
            ok = run_acceptance(fh)
    else:
        ok = run_acceptance(sys.stdout)
    return 0 if ok else 1


_HANDLERS = {
    "limits": _cmd_limits,
    "branch": _cmd_branch,
    "eval": _cmd_eval,
    "converge": _cmd_converge,
    "zeros": _cmd_zeros,
    "density": _cmd_density,
    "selftest": _cmd_selftest,
}


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    cfg = _merge_config(args, parser)
    try:
        return _HANDLERS[args.command](cfg)
    except MopratioError as exc:
        print(f"mopratio: error: {exc}", file=sys.stderr)
        return 1
    except (ValueError, OSError) as exc:
        print(f"mopratio: usage error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
