"""Command-line interface.

Subcommands: ``density`` (log-density of one distribution at a point),
``sample`` (CSV of flattened draws), ``constants`` (special-function
values in log space), ``spectral`` (singular-value or eigenvalue density
curves), ``figures`` (reference m = 1 curve families) and ``check`` (the
verification suite as JSON lines, exit 0 only if everything passes).

Output is deterministic for a fixed argv and seed: CSV uses CRLF
line endings, '.' decimals and 17 significant digits; JSON is emitted
with sorted keys.  The default seed can be overridden by the
``P2RIESZ_SEED`` environment variable; an explicit ``--seed`` wins.

Parameter files are flat JSON.  Matrices are arrays of real components,
row-major with the algebra components interleaved last (an n x m matrix
over the algebra with beta components per entry is a flat list of
n*m*beta floats).  See the README for one example per distribution.

Exit codes: 0 success, 1 failed checks, 2 bad usage or parameters,
3 evaluation point outside the support.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

import numpy as np

from .algebra import Algebra, DivMatrix, HermitianPD
from .densities import (
    BetaRieszParams,
    KotzRieszParams,
    PearsonIIRieszParams,
    RieszParams,
    beta_riesz_logpdf,
    eigenvalues_logpdf,
    kotz_riesz_logpdf,
    pearson2riesz_logpdf,
    riesz_logpdf,
    singular_values_logpdf,
)
from .errors import DomainError, NotPositiveDefiniteError, SupportError, UnsupportedAlgebraError
from .figures import figure_curves
from .sampling import (
    DEFAULT_SEED,
    default_rng,
    sample_beta_riesz,
    sample_kotz_riesz,
    sample_pearson2riesz,
    sample_riesz_matrix,
)
from .specfun import gen_pochhammer, ln_beta_star, ln_mv_gamma, ln_stiefel_volume
from .verify import run_suite

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_USAGE = 2
EXIT_SUPPORT = 3

SEED_ENV_VAR = "P2RIESZ_SEED"


def _fmt(x: float) -> str:
    return format(float(x), ".17g")


def _print_csv(rows, out) -> None:
    for row in rows:
        out.write(",".join(row) + "\r\n")


def _env_seed() -> int:
    raw = os.environ.get(SEED_ENV_VAR)
    if raw is None:
        return DEFAULT_SEED
    try:
        return int(raw)
    except ValueError:
        raise DomainError(f"{SEED_ENV_VAR} must be an integer, got {raw!r}") from None


def _parse_weights(raw: str | None):
    if raw is None:
        return None
    return tuple(float(tok) for tok in raw.split(",") if tok.strip() != "")


def _load_json(path: str):
    with open(path, "r", encoding="utf-8") as fh:
        return json.load(fh)


def _component_array(flat, n: int, m: int, algebra: Algebra, what: str) -> np.ndarray:
    arr = np.asarray(flat, dtype=float)
    want = n * m * algebra.beta
    if arr.size != want:
        raise DomainError(
            f"{what} needs {want} components ({n}x{m}, beta={algebra.beta}), got {arr.size}"
        )
    return arr.reshape(n, m, algebra.beta)


def _algebra_from(spec: dict, beta_flag: int | None) -> Algebra:
    if "algebra" in spec:
        algebra = Algebra.from_name(spec["algebra"])
        if beta_flag is not None and algebra.beta != beta_flag:
            raise DomainError(
                f"--beta {beta_flag} conflicts with algebra {spec['algebra']!r}"
            )
        return algebra
    if beta_flag is not None:
        return Algebra.from_beta(beta_flag)
    raise DomainError("parameter file needs an 'algebra' key (or pass --beta)")


def _pd_or_none(spec: dict, key: str, dim: int, algebra: Algebra):
    if spec.get(key) is None:
        return None
    data = _component_array(spec[key], dim, dim, algebra, key)
    return HermitianPD(data, algebra)


def _params_from_spec(dist: str, spec: dict, beta_flag: int | None):
    algebra = _algebra_from(spec, beta_flag)
    if dist == "riesz":
        m = int(spec["m"])
        return RieszParams(
            algebra, m, float(spec["a"]), spec.get("kappa"),
            xi=_pd_or_none(spec, "xi", m, algebra),
        )
    n, m = int(spec["n"]), int(spec["m"])
    mu = None
    if spec.get("mu") is not None:
        mu = DivMatrix(algebra, _component_array(spec["mu"], n, m, algebra, "mu"), copy=False)
    if dist == "kotz-riesz":
        return KotzRieszParams(
            algebra, n, m, spec.get("kappa"), mu=mu,
            theta=_pd_or_none(spec, "theta", n, algebra),
            sigma=_pd_or_none(spec, "sigma", m, algebra),
        )
    if dist == "pearson2":
        return PearsonIIRieszParams(
            algebra, n, m, float(spec["nu"]), k=float(spec.get("k", 0.0)),
            tau=spec.get("tau"), rho=float(spec.get("rho", 1.0)), mu=mu,
            theta=_pd_or_none(spec, "theta", n, algebra),
            sigma=_pd_or_none(spec, "sigma", m, algebra),
        )
    if dist == "beta-riesz":
        return BetaRieszParams(
            algebra, n, m, float(spec["nu"]), k=float(spec.get("k", 0.0)),
            tau=spec.get("tau"), rho=float(spec.get("rho", 1.0)),
            sigma=_pd_or_none(spec, "sigma", m, algebra),
        )
    raise DomainError(f"unknown distribution {dist!r}")


def _point_shape(dist: str, params) -> tuple:
    if dist in ("riesz", "beta-riesz"):
        return (params.m, params.m)
    return (params.n, params.m)


def _cmd_density(args, out) -> int:
    spec = _load_json(args.params)
    params = _params_from_spec(args.dist, spec, args.beta)
    at = _load_json(args.at)
    flat = at["data"] if isinstance(at, dict) else at
    n, m = _point_shape(args.dist, params)
    data = _component_array(flat, n, m, params.algebra, "evaluation point")
    evaluator = {
        "riesz": riesz_logpdf,
        "kotz-riesz": kotz_riesz_logpdf,
        "pearson2": pearson2riesz_logpdf,
        "beta-riesz": beta_riesz_logpdf,
    }[args.dist]
    value = evaluator(data, params)
    out.write(
        json.dumps({"dist": args.dist, "log_density": float(value)}, sort_keys=True)
        + "\n"
    )
    return EXIT_OK


def _cmd_sample(args, out) -> int:
    spec = _load_json(args.params)
    params = _params_from_spec(args.dist, spec, args.beta)
    rng = default_rng(args.seed)
    sampler = {
        "riesz": sample_riesz_matrix,
        "kotz-riesz": sample_kotz_riesz,
        "pearson2": sample_pearson2riesz,
        "beta-riesz": sample_beta_riesz,
    }[args.dist]
    draws = sampler(rng, params, size=args.n)
    count = draws.shape[0]
    flat = draws.reshape(count, -1)
    n, m = _point_shape(args.dist, params)
    beta = params.algebra.beta
    header = [
        f"x_{i}_{j}_{c}" for i in range(n) for j in range(m) for c in range(beta)
    ]
    rows = [header] + [[_fmt(v) for v in row] for row in flat]
    _print_csv(rows, out)
    return EXIT_OK


def _cmd_constants(args, out) -> int:
    if args.what == "gamma":
        result = {
            "what": "gamma",
            "ln_value": float(ln_mv_gamma(args.beta, args.m, args.a, _parse_weights(args.kappa))),
        }
    elif args.what == "pochhammer":
        value = gen_pochhammer(args.beta, args.m, args.a, _parse_weights(args.kappa))
        result = {"what": "pochhammer", "value": float(value)}
    elif args.what == "stiefel":
        result = {
            "what": "stiefel",
            "ln_value": float(ln_stiefel_volume(args.beta, args.m, args.n)),
        }
    else:
        result = {
            "what": "beta-star",
            "ln_value": float(ln_beta_star(
                args.beta, args.m, args.a, args.k, args.b, _parse_weights(args.tau)
            )),
        }
    out.write(json.dumps(result, sort_keys=True) + "\n")
    return EXIT_OK


def _parse_grid(raw: str) -> np.ndarray:
    try:
        lo, hi, num = raw.split(":")
        return np.linspace(float(lo), float(hi), int(num))
    except ValueError:
        raise DomainError(f"--grid must be lo:hi:num, got {raw!r}") from None


def _cmd_spectral(args, out) -> int:
    tau = _parse_weights(args.tau) or (0,)
    tau = tuple(int(t) for t in tau)
    evaluator = singular_values_logpdf if args.kind == "singular" else eigenvalues_logpdf
    if args.points is not None:
        pts = [np.asarray(p, dtype=float) for p in _load_json(args.points)]
    elif args.grid is not None:
        pts = [np.array([x]) for x in _parse_grid(args.grid)]
    else:
        raise DomainError("spectral needs --grid (m = 1) or --points <file>")
    m = pts[0].size
    header = [f"point_{i}" for i in range(m)] + ["density"]
    rows = [header]
    for p in pts:
        try:
            dens = float(np.exp(evaluator(p, args.nu, args.k, tau, args.n, args.beta)))
        except SupportError:
            dens = 0.0
        rows.append([_fmt(v) for v in p] + [_fmt(dens)])
    _print_csv(rows, out)
    return EXIT_OK


def _cmd_figures(args, out, err) -> int:
    r, columns, meta = figure_curves(args.which)
    header = ["r"] + [label for label, _ in columns]
    rows = [header]
    for idx in range(r.size):
        rows.append([_fmt(r[idx])] + [_fmt(vals[idx]) for _, vals in columns])
    _print_csv(rows, out)
    err.write(json.dumps(meta, sort_keys=True) + "\n")
    return EXIT_OK


def _cmd_check(args, out) -> int:
    reports = run_suite(profile=args.profile, seed=args.seed)
    for report in reports:
        out.write(report.to_json() + "\n")
    return EXIT_OK if all(r.passed for r in reports) else EXIT_CHECK_FAILED


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="p2riesz",
        description="Matrix Pearson type II-Riesz distributions: densities, samplers, constants and checks.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    dists = ["riesz", "kotz-riesz", "pearson2", "beta-riesz"]

    p = sub.add_parser("density", help="log-density at a point")
    p.add_argument("--dist", choices=dists, required=True)
    p.add_argument("--beta", type=int, choices=[1, 2, 4, 8])
    p.add_argument("--params", required=True, help="JSON parameter file")
    p.add_argument("--at", required=True, help="JSON evaluation point")

    p = sub.add_parser("sample", help="draw samples as CSV")
    p.add_argument("--dist", choices=dists, required=True)
    p.add_argument("--beta", type=int, choices=[1, 2, 4])
    p.add_argument("--params", required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--seed", type=int, default=None)

    p = sub.add_parser("constants", help="special-function values (log space)")
    p.add_argument("--what", choices=["gamma", "pochhammer", "stiefel", "beta-star"], required=True)
    p.add_argument("--beta", type=int, choices=[1, 2, 4, 8], required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--n", type=int)
    p.add_argument("--a", type=float)
    p.add_argument("--b", type=float)
    p.add_argument("--k", type=float, default=0.0)
    p.add_argument("--kappa", help="comma-separated weight components")
    p.add_argument("--tau", help="comma-separated weight components")

    p = sub.add_parser("spectral", help="singular-value / eigenvalue density curve")
    p.add_argument("--kind", choices=["singular", "eigen"], required=True)
    p.add_argument("--beta", type=int, choices=[1, 2, 4], required=True)
    p.add_argument("--nu", type=float, required=True)
    p.add_argument("--k", type=float, default=0.0)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--tau", help="comma-separated integer partition")
    p.add_argument("--grid", help="lo:hi:num grid for m = 1")
    p.add_argument("--points", help="JSON file with a list of m-vectors")

    p = sub.add_parser("figures", help="reference m = 1 curve families")
    p.add_argument("--which", type=int, choices=[1, 2], required=True)

    p = sub.add_parser("check", help="run the verification suite")
    p.add_argument("--profile", choices=["ci", "full"], default="ci")
    p.add_argument("--seed", type=int, default=None)

    return parser


def main(argv=None, out=None, err=None) -> int:
    out = out if out is not None else sys.stdout
    err = err if err is not None else sys.stderr
    parser = build_parser()
    args = parser.parse_args(argv)
    if hasattr(args, "seed") and args.seed is None:
        args.seed = _env_seed()
    try:
        if args.command == "density":
            return _cmd_density(args, out)
        if args.command == "sample":
            return _cmd_sample(args, out)
        if args.command == "constants":
            return _cmd_constants(args, out)
        if args.command == "spectral":
            return _cmd_spectral(args, out)
        if args.command == "figures":
            return _cmd_figures(args, out, err)
        return _cmd_check(args, out)
    except SupportError as exc:
        err.write(f"error: {exc}\n")
        return EXIT_SUPPORT
    except (DomainError, NotPositiveDefiniteError, UnsupportedAlgebraError) as exc:
        err.write(f"error: {exc}\n")
        return EXIT_USAGE
    except (OSError, KeyError, json.JSONDecodeError, ValueError, TypeError) as exc:
        err.write(f"error: {exc}\n")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
