"""Command-line front end.

Subcommands: state, wigner, marginals, verify, figure. States come either
from inline flags (--state KIND plus parameters) or from a JSON spec file
(--spec-file); exactly one source must be given. Exit codes: 0 success,
1 validation failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from . import __version__
from .emit import (
    write_grid_csv,
    write_grid_json,
    write_phase_csv,
    write_photon_csv,
    write_report_json,
)
from .fock import DEFAULT_TAIL_TOL, InvalidStateError
from .marginals import (
    exactness_bound,
    phase_distribution,
    photon_marginal_analytic,
)
from .oracle import full_verification
from .statespec import KINDS, BuiltState, build_state
from .wigner import wigner_grid

# Published parameters behind the `figure` subcommand. Figure 3's grid is
# anchored at phi0 so the peak value 1/(2*pi) is sampled exactly.
FIGURE_PARAMS = {
    1: {"kind": "coherent", "alpha": 4.0, "n_max": 40, "phi_samples": 256,
        "phi_offset": 0.0, "slice_phi": 0.5},
    2: {"kind": "cat", "alpha": 4.0, "n_max": 40, "phi_samples": 256,
        "phi_offset": 0.0},
    3: {"kind": "phase", "M": 20, "phi0": 0.7, "cutoff": 24, "n_max": 24,
        "phi_samples": 512, "phi_offset": 0.7},
}


class UsageError(Exception):
    pass


def _add_state_options(parser: argparse.ArgumentParser) -> None:
    group = parser.add_argument_group("state selection")
    group.add_argument("--state", choices=KINDS, help="state kind (inline form)")
    group.add_argument("--spec-file", type=Path, help="JSON state-spec document")
    group.add_argument("--M", type=int, help="number/phase state index")
    group.add_argument("--alpha", type=str, help="coherent/cat amplitude (e.g. 4 or 1+2j)")
    group.add_argument("--phi0", type=float, help="phase-state reference phase (radians)")
    group.add_argument("--cutoff", default="auto",
                       help='Fock cutoff, integer or "auto" (default auto)')
    group.add_argument("--tail-tol", type=float, default=DEFAULT_TAIL_TOL,
                       help="maximum probability mass allowed above the cutoff")


def _state_spec_from_args(args: argparse.Namespace) -> dict:
    if (args.state is None) == (args.spec_file is None):
        raise UsageError("exactly one of --state or --spec-file is required")
    if args.spec_file is not None:
        try:
            spec = json.loads(args.spec_file.read_text(encoding="utf-8"))
        except OSError as exc:
            raise UsageError(f"cannot read spec file: {exc}") from exc
        except json.JSONDecodeError as exc:
            raise UsageError(f"spec file is not valid JSON: {exc}") from exc
        if not isinstance(spec, dict):
            raise UsageError("spec file must contain a JSON object")
        return spec

    spec: dict = {"kind": args.state, "tail_tol": args.tail_tol}
    if args.cutoff != "auto":
        try:
            spec["cutoff"] = int(args.cutoff)
        except ValueError:
            raise UsageError(f'--cutoff must be an integer or "auto", got {args.cutoff!r}')
    if args.state in ("number", "phase"):
        if args.M is None:
            raise UsageError(f"--state {args.state} requires --M")
        spec["M"] = args.M
    if args.state == "phase":
        if args.phi0 is None:
            raise UsageError("--state phase requires --phi0")
        spec["phi0"] = args.phi0
    if args.state in ("coherent", "cat"):
        if args.alpha is None:
            raise UsageError(f"--state {args.state} requires --alpha")
        try:
            alpha = complex(args.alpha)
        except ValueError:
            raise UsageError(f"--alpha must parse as a complex number, got {args.alpha!r}")
        spec["alpha"] = alpha.real if alpha.imag == 0.0 else [alpha.real, alpha.imag]
    if args.state in ("pure", "mixed"):
        raise UsageError(f'--state {args.state} needs a spec file (see --spec-file)')
    return spec


def _build(args: argparse.Namespace) -> BuiltState:
    return build_state(_state_spec_from_args(args))


def _out_or_stdout(path: Path | None):
    return "-" if path is None else path


def _cmd_state(args: argparse.Namespace) -> int:
    built = _build(args)
    p = photon_marginal_analytic(built.rho).probabilities
    print(f"kind: {built.spec['kind']}")
    print(f"cutoff: {built.cutoff}")
    print(f"trace: {built.rho.trace():.17g}")
    print(f"tail_mass: {built.tail_mass:.17g}")
    print("P(n) for entries above 1e-16:")
    for n, prob in enumerate(p):
        if prob > 1e-16:
            print(f"  {n} {prob:.17g}")
    return 0


def _cmd_wigner(args: argparse.Namespace) -> int:
    built = _build(args)
    n_max = built.cutoff if args.n_max is None else args.n_max
    grid = wigner_grid(built.rho, n_max, args.phi_samples, args.phi_offset)
    if args.format == "csv":
        write_grid_csv(grid, _out_or_stdout(args.out))
    else:
        write_grid_json(grid, _out_or_stdout(args.out), state_spec=built.spec,
                        tail_tol=built.spec.get("tail_tol"),
                        timestamp=not args.no_timestamps)
    return 0


def _cmd_marginals(args: argparse.Namespace) -> int:
    built = _build(args)
    photon = photon_marginal_analytic(built.rho)
    phase = phase_distribution(built.rho, args.phi_samples)
    if args.out is None:
        write_photon_csv(photon, "-")
        write_phase_csv(phase, "-")
        return 0
    out = Path(args.out)
    photon_path = out.with_name(out.stem + ".photon" + (out.suffix or ".csv"))
    phase_path = out.with_name(out.stem + ".phase" + (out.suffix or ".csv"))
    write_photon_csv(photon, photon_path)
    write_phase_csv(phase, phase_path)
    print(f"wrote {photon_path} and {phase_path}")
    return 0


def _cmd_verify(args: argparse.Namespace) -> int:
    built = _build(args)
    bound = exactness_bound(built.cutoff)
    phi_samples = args.phi_samples if args.phi_samples > bound else bound + 1
    theta_samples = (
        args.theta_samples if args.theta_samples is not None else 2 * built.cutoff + 3
    )
    report = full_verification(
        built.rho,
        phi_samples=phi_samples,
        theta_samples=theta_samples,
        points=args.points,
        rng=np.random.default_rng(args.seed),
    )
    for check in report.checks:
        status = "pass" if check.passed else ("info" if check.informational else "FAIL")
        print(f"{check.name}: {status} (value {check.deviation:.3e}, "
              f"threshold {check.threshold:.1e})")
    if args.out is not None:
        write_report_json(report, args.out)
    return 0 if report.passed else 1


def _cmd_figure(args: argparse.Namespace) -> int:
    params = FIGURE_PARAMS[args.number]
    spec = {k: params[k] for k in ("kind", "alpha", "M", "phi0", "cutoff") if k in params}
    built = build_state(spec)
    grid = wigner_grid(built.rho, params["n_max"], params["phi_samples"],
                       params["phi_offset"])
    if args.format == "csv":
        write_grid_csv(grid, args.out)
    else:
        write_grid_json(grid, args.out, state_spec=built.spec,
                        tail_tol=built.spec.get("tail_tol"),
                        timestamp=not args.no_timestamps)
    written = [str(args.out)]
    if "slice_phi" in params:
        slice_grid = wigner_grid(built.rho, params["n_max"], 1, params["slice_phi"])
        slice_out = args.slice_out
        if slice_out is None:
            out = Path(args.out)
            slice_out = out.with_name(out.stem + ".slice" + (out.suffix or ".csv"))
        write_grid_csv(slice_grid, slice_out)
        written.append(str(slice_out))
    print("wrote " + " and ".join(written))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="npwigner",
        description="Number-phase Wigner functions of single-mode bosonic states.",
    )
    parser.add_argument("--version", action="version", version=f"npwigner {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p_state = sub.add_parser("state", help="print P(n), trace, and tail mass")
    _add_state_options(p_state)
    p_state.set_defaults(func=_cmd_state)

    p_wigner = sub.add_parser("wigner", help="emit a Wigner grid")
    _add_state_options(p_wigner)
    p_wigner.add_argument("--n-max", type=int, default=None,
                          help="largest photon number (default: cutoff)")
    p_wigner.add_argument("--phi-samples", type=int, default=512)
    p_wigner.add_argument("--phi-offset", type=float, default=0.0,
                          help="anchor of the uniform phase grid (radians)")
    p_wigner.add_argument("--out", type=Path, default=None,
                          help="output path (default: stdout)")
    p_wigner.add_argument("--format", choices=("csv", "json"), default="csv")
    p_wigner.add_argument("--no-timestamps", action="store_true",
                          help="omit the created field from JSON metadata")
    p_wigner.set_defaults(func=_cmd_wigner)

    p_marg = sub.add_parser("marginals", help="emit photon and phase marginals")
    _add_state_options(p_marg)
    p_marg.add_argument("--phi-samples", type=int, default=512)
    p_marg.add_argument("--out", type=Path, default=None,
                        help="base path; writes <base>.photon.csv and <base>.phase.csv")
    p_marg.set_defaults(func=_cmd_marginals)

    p_verify = sub.add_parser(
        "verify", help="run marginal and characteristic-route identity checks"
    )
    _add_state_options(p_verify)
    p_verify.add_argument("--phi-samples", type=int, default=512)
    p_verify.add_argument("--theta-samples", type=int, default=None,
                          help="default 2*cutoff+3")
    p_verify.add_argument("--points", type=int, default=16,
                          help="sampled (n, phi) pairs for the route comparison")
    p_verify.add_argument("--seed", type=int, default=0)
    p_verify.add_argument("--out", type=Path, default=None,
                          help="also write the report as JSON")
    p_verify.set_defaults(func=_cmd_verify)

    p_fig = sub.add_parser("figure", help="emit grids with the published parameters")
    p_fig.add_argument("number", type=int, choices=(1, 2, 3))
    p_fig.add_argument("--out", type=Path, required=True)
    p_fig.add_argument("--slice-out", type=Path, default=None,
                       help="figure 1 slice path (default: <out>.slice.csv)")
    p_fig.add_argument("--format", choices=("csv", "json"), default="csv")
    p_fig.add_argument("--no-timestamps", action="store_true")
    p_fig.set_defaults(func=_cmd_figure)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2
    except InvalidStateError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    raise SystemExit(main())
