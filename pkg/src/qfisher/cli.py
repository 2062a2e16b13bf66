"""Command-line front end.

Exit codes: 0 when every check passes, 1 when a check fails or a search
finds nothing, 2 for usage and input errors.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from pathlib import Path
from typing import Optional, Sequence

import numpy as np

from . import bloch, campaigns, evolution, inequalities, qfi
from .matrixcore import (
    IDENTITY2,
    SIGMA1,
    SIGMA2,
    SIGMA3,
    DensityMatrix,
    hermitian,
    matrix_from_json,
)
from .monotone import MonotoneFunction, by_name, f_zero, tilde

BUILTIN_MATRICES = {
    "sigma1": SIGMA1,
    "sigma2": SIGMA2,
    "sigma3": SIGMA3,
    "identity": IDENTITY2,
}
DENSITY_TRACE_ATOL = 1e-9
NEEDS_REGULAR = {"sandwich", "var-bound", "constancy", "two-path"}


class UsageError(Exception):
    pass


def _fmt(x: float) -> str:
    return repr(float(x))


def load_matrix(spec: str) -> np.ndarray:
    """Built-in name (``sigma1``..``sigma3``, ``identity``) or path to a JSON matrix literal."""
    if spec.lower() in BUILTIN_MATRICES:
        return BUILTIN_MATRICES[spec.lower()].copy()
    path = Path(spec)
    try:
        obj = json.loads(path.read_text())
    except FileNotFoundError:
        raise UsageError(f"matrix file not found: {spec}") from None
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read matrix {spec}: {exc}") from None
    try:
        return matrix_from_json(obj)
    except ValueError as exc:
        raise UsageError(f"{spec}: {exc}") from None


def load_state(spec: str) -> DensityMatrix:
    """JSON matrix file, or ``bloch:x,y,z`` for a qubit state."""
    if spec.lower().startswith("bloch:"):
        try:
            x, y, z = (float(t) for t in spec.split(":", 1)[1].split(","))
            return bloch.state_from_bloch(bloch.BlochVector(x, y, z))
        except ValueError as exc:
            raise UsageError(f"invalid Bloch state {spec!r}: {exc}") from None
    M = load_matrix(spec)
    try:
        return DensityMatrix(M, trace_atol=DENSITY_TRACE_ATOL)
    except ValueError as exc:
        raise UsageError(f"invalid density matrix {spec}: {exc}") from None


def load_observable(spec: str, dim: int) -> np.ndarray:
    M = load_matrix(spec)
    try:
        M = hermitian(M)
    except ValueError as exc:
        raise UsageError(f"{spec}: {exc}") from None
    if M.shape[0] != dim:
        raise UsageError(f"{spec} is {M.shape[0]}x{M.shape[0]} but the state is {dim}x{dim}")
    return M


def _function(name: str) -> MonotoneFunction:
    try:
        return by_name(name)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _require_regular(f: MonotoneFunction, what: str) -> None:
    if f_zero(f) <= 0:
        raise UsageError(f"{what} needs a regular function; {f.name!r} has f(0) = 0")


def _write_rows(out, fmt: str, header: Sequence[str], rows: Sequence[Sequence]) -> None:
    if fmt == "json":
        for row in rows:
            out.write(json.dumps(dict(zip(header, row))) + "\n")
        return
    w = csv.writer(out, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([_fmt(v) if isinstance(v, float) else v for v in row])


def cmd_verify(args, out) -> int:
    f = _function(args.f)
    if args.suite in NEEDS_REGULAR:
        _require_regular(f, f"suite {args.suite}")
    if args.n < 2:
        raise UsageError("--n must be at least 2")
    if args.trials < 0:
        raise UsageError("--trials must be non-negative")
    if args.seed < 0:
        raise UsageError("--seed must be non-negative")
    ok = True
    reports = campaigns.iter_suite(args.suite, f, args.n, args.trials, args.seed, args.tol)
    rows = []
    for rep in reports:
        ok &= rep.passed
        if args.format == "json":
            out.write(rep.to_json() + "\n")
        else:
            rows.append([rep.check, rep.f_name, rep.dim, rep.seed, rep.lhs, rep.rhs,
                         rep.margin, rep.tolerance, str(rep.passed).lower()])
    if args.format == "csv":
        _write_rows(out, "csv", ["check", "f_name", "dim", "seed", "lhs", "rhs", "margin",
                                 "tolerance", "pass"], rows)
    return 0 if ok else 1


def cmd_info(args, out) -> int:
    f = _function(args.f)
    _require_regular(f, "info")
    rho = load_state(args.rho)
    A = load_observable(args.obs, rho.dim)
    result = {
        "f_name": f.name,
        "dim": rho.dim,
        "faithful": rho.faithful,
        "i_f_variance_minus_C": qfi.f_information(f, rho, A).value,
        "i_f_metric": qfi.f_information(f, rho, A, "metric").value if rho.faithful else None,
        "i_sld": qfi.sld_information(rho, A),
        "i_wy": qfi.wy_information_direct(rho, A),
        "variance": qfi.variance(rho, A),
        "c_tilde": qfi.correlation_C(tilde(f), rho, A),
    }
    # normalise signed zeros so identical inputs print identically
    result = {k: v + 0.0 if isinstance(v, float) else v for k, v in result.items()}
    if args.format == "csv":
        w = csv.writer(out, lineterminator="\n")
        w.writerow(["quantity", "value"])
        for k, v in result.items():
            w.writerow([k, "" if v is None else (_fmt(v) if isinstance(v, float) else v)])
    else:
        out.write(json.dumps(result) + "\n")
    return 0


def cmd_bloch(args, out) -> int:
    f = _function(args.f)
    _require_regular(f, "bloch")
    if not 0 < args.r_min < args.r_max < 1:
        raise UsageError("need 0 < r-min < r-max < 1")
    if args.steps < 2:
        raise UsageError("--steps must be at least 2")
    lim0 = bloch.ratio_limit_zero(f)
    lim1 = bloch.ratio_limit_one(f)
    rows = [[float(r), bloch.sld_ratio(f, float(r)), lim0, lim1]
            for r in np.linspace(args.r_min, args.r_max, args.steps)]
    fmt = args.format or "csv"
    _write_rows(out, fmt, ["r", "ratio", "limit_zero", "limit_one"], rows)
    if fmt == "csv":
        out.write(f"# ratio_limit_zero={_fmt(lim0)}\n# ratio_limit_one={_fmt(lim1)}\n")
    else:
        out.write(json.dumps({"ratio_limit_zero": lim0, "ratio_limit_one": lim1}) + "\n")
    return 0


def cmd_search_k(args, out, err) -> int:
    f = _function(args.f)
    _require_regular(f, "search-k")
    if args.k < 1:
        raise UsageError("--k must be at least 1")
    try:
        rec = inequalities.search_counterexample(f, args.k)
    except (inequalities.NoCounterexampleError, inequalities.SearchExhaustedError) as exc:
        err.write(f"{exc}\n")
        return 1
    out.write(json.dumps(rec.to_dict()) + "\n")
    return 0


def cmd_evolve(args, out) -> int:
    f = _function(args.f)
    _require_regular(f, "evolve")
    rho = load_state(args.rho)
    A = load_observable(args.obs, rho.dim)
    H = load_observable(args.H, rho.dim)
    if args.steps < 1:
        raise UsageError("--steps must be at least 1")
    if args.t_max < 0:
        raise UsageError("--t-max must be non-negative")
    times = np.linspace(0.0, args.t_max, args.steps)
    spec = evolution.EvolutionSpec(rho, H, times)
    kw = {"rel_tol": args.tol} if args.tol is not None else {}
    rep = evolution.constancy_check(f, spec, A, **kw)
    i0 = rep.details["i0"]
    values = rep.details["values"]
    rows = [[float(t), v, abs(v - i0)] for t, v in zip(times, values)]
    fmt = args.format or "csv"
    _write_rows(out, fmt, ["t", "value", "drift"], rows)
    commuting = rep.details["hypothesis"] == "holds"
    if fmt == "csv":
        out.write(f"# max_drift={_fmt(rep.lhs)} commuting={str(commuting).lower()} "
                  f"pass={str(rep.passed).lower()}\n")
    else:
        out.write(json.dumps({"summary": {"max_drift": rep.lhs, "commuting": commuting,
                                          "pass": rep.passed}}) + "\n")
    return 0 if rep.passed else 1


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--f", default="wy", help="wy, sld, rld or mix:<s> (default: wy)")
    common.add_argument("--seed", type=int, default=0, help="base seed (default: 0)")
    common.add_argument("--tol", type=float, default=None, help="override the relative tolerance")
    common.add_argument("--format", choices=["json", "csv"], default=None)

    parser = argparse.ArgumentParser(
        prog="qfisher",
        description="Quantum Fisher information, matrix means and skew-information checks.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify", parents=[common], help="run a randomized verification suite")
    p.add_argument("suite", choices=campaigns.SUITES)
    p.add_argument("--n", type=int, default=3, help="matrix dimension")
    p.add_argument("--trials", type=int, default=100)

    p = sub.add_parser("info", parents=[common], help="evaluate all informations for one case")
    p.add_argument("--rho", required=True, help="JSON matrix file or bloch:x,y,z")
    p.add_argument("--obs", required=True, help="JSON matrix file or sigma1/sigma2/sigma3/identity")

    p = sub.add_parser("bloch", parents=[common], help="tabulate the SLD/f ratio over the Bloch radius")
    p.add_argument("--r-min", type=float, default=0.01)
    p.add_argument("--r-max", type=float, default=0.99)
    p.add_argument("--steps", type=int, default=99)

    p = sub.add_parser("search-k", parents=[common], help="look for a qubit counterexample at constant k")
    p.add_argument("--k", type=float, required=True)

    p = sub.add_parser("evolve", parents=[common], help="trace the f-information along a unitary flow")
    p.add_argument("--rho", required=True)
    p.add_argument("--obs", required=True)
    p.add_argument("--H", required=True, help="generator")
    p.add_argument("--t-max", type=float, default=2 * np.pi)
    p.add_argument("--steps", type=int, default=11)
    return parser


def main(argv: Optional[Sequence[str]] = None, out=None, err=None) -> int:
    out = sys.stdout if out is None else out
    err = sys.stderr if err is None else err
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        if args.command == "verify":
            if args.format is None:
                args.format = "json"
            return cmd_verify(args, out)
        if args.command == "info":
            return cmd_info(args, out)
        if args.command == "bloch":
            return cmd_bloch(args, out)
        if args.command == "search-k":
            return cmd_search_k(args, out, err)
        return cmd_evolve(args, out)
    except UsageError as exc:
        err.write(f"qfisher: error: {exc}\n")
        return 2


def main_entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    main_entry()
