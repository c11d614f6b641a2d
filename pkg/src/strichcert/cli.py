"""Command-line front end for the certificate suite.

Subcommands run the sphere gap sweep, reproduce the reference tables,
verify the paraboloid coefficients and lens model, audit the cone-side
constants, check the compactification geometry, and demo the abstract
deficit machinery. Reports are written as versioned JSON (or CSV for the
tables) into --output, which defaults to $STRICHCERT_OUTDIR or the
current directory.

Exit codes: 0 all requested certificates PASS, 1 any FAIL (dominates),
2 any INCONCLUSIVE, 3 I/O failure (diagnostic on stderr). Sweeps fan out
over a thread pool but results are reduced in dimension order, so output
bytes do not depend on --parallelism.
"""

import argparse
import json
import math
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from . import deficit, penrose, schrod, sphere, wave

_SCHEMA = 1


@dataclass(frozen=True)
class RunConfig:
    command: str
    d_min: int
    d_max: int
    tol: float
    r_max: float
    m_max: int
    k_max: int
    ell_max: int
    format: str
    output: str
    parallelism: int

    def __post_init__(self):
        if self.d_min > self.d_max:
            raise ValueError("require d_min <= d_max")
        if self.tol <= 0.0:
            raise ValueError("require tol > 0")
        if self.parallelism < 1:
            raise ValueError("require parallelism >= 1")


def _dump(obj):
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def _write(path, text):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(text)


def _sweep(fn, ds, parallelism):
    # submission order == reduction order, independent of completion order
    if parallelism == 1:
        return [fn(d) for d in ds]
    with ThreadPoolExecutor(max_workers=parallelism) as pool:
        return [fut.result() for fut in [pool.submit(fn, d) for d in ds]]


def _verdict_exit(verdicts):
    if any(v == "FAIL" for v in verdicts):
        return 1
    if any(v == "INCONCLUSIVE" for v in verdicts):
        return 2
    return 0


def _cmd_sphere_tables(cfg, outdir):
    ds = range(max(cfg.d_min, 2), cfg.d_max + 1)
    thresholds, gap = sphere.emit_tables(
        ds, fmt=cfg.format, R=cfg.r_max, tol=cfg.tol
    )
    ext = cfg.format
    render = (lambda t: t.to_csv()) if ext == "csv" else (lambda t: t.to_json())
    f1 = os.path.join(outdir, f"sphere_tail_thresholds.{ext}")
    f2 = os.path.join(outdir, f"sphere_coercivity_gap.{ext}")
    _write(f1, render(thresholds))
    _write(f2, render(gap))
    print(f"wrote {f1}")
    print(f"wrote {f2}")
    return 0


def _cmd_sphere_verify(cfg, outdir):
    ds = list(range(max(cfg.d_min, 2), cfg.d_max + 1))

    def one(d):
        rep = sphere.gap_certificate(
            sphere.SphereParams(d),
            R=cfg.r_max,
            tol=cfg.tol,
            monotone_horizon=cfg.k_max,
        )
        kn, kt = sphere.k_split(d)
        return {
            "d": d,
            "k_numeric": kn,
            "k_tail": kt,
            "verdict": rep.verdict,
            "margins": rep.margins,
            "flags": rep.flags,
            "notes": list(rep.notes),
        }

    results = _sweep(one, ds, cfg.parallelism)
    report = {"schema": _SCHEMA, "command": "sphere-verify", "results": results}
    path = os.path.join(outdir, "sphere_verify.json")
    _write(path, _dump(report))
    for row in results:
        print(f"d={row['d']:>2}  k<={row['k_numeric']}  {row['verdict']}")
    print(f"wrote {path}")
    return _verdict_exit([row["verdict"] for row in results])


def _cmd_schrod_verify(cfg, outdir):
    ds = list(range(max(cfg.d_min, 1), cfg.d_max + 1))

    def one(d):
        rep = schrod.verify_report(d, cfg.m_max, tol=cfg.tol)
        cert = schrod.cm_certificate(d, cfg.m_max)
        lens = schrod.lens_model_check(d, min(8, cfg.m_max))
        rep["certificate"] = cert.to_dict()
        rep["lens_model"] = lens.to_dict()
        return rep

    results = _sweep(one, ds, cfg.parallelism)
    report = {"schema": _SCHEMA, "command": "schrod-verify", "results": results}
    path = os.path.join(outdir, "schrod_verify.json")
    _write(path, _dump(report))
    verdicts = []
    for row in results:
        verdicts += [row["verdict"], row["certificate"]["verdict"],
                     row["lens_model"]["verdict"]]
        print(
            f"d={row['d']:>2}  min_gap={row['min_gap']:.6f}  {row['verdict']}"
            f"  lens {row['lens_model']['verdict']}"
        )
    print(f"wrote {path}")
    return _verdict_exit(verdicts)


def _cmd_wave_audit(cfg, outdir):
    ds = list(range(max(cfg.d_min, 2), cfg.d_max + 1))
    results = _sweep(
        lambda d: wave.audit_report(d, ell_max=cfg.ell_max), ds, cfg.parallelism
    )
    report = {"schema": _SCHEMA, "command": "wave-audit", "results": results}
    path = os.path.join(outdir, "wave_audit.json")
    _write(path, _dump(report))
    for row in results:
        mt = row["mode_table"]
        claimed = mt["rho_claimed"]
        claimed_txt = "n/a" if claimed is None else f"{claimed:.6f}"
        print(
            f"d={row['d']:>2}  sup_ratio={mt['sup_ratio']:.6f}"
            f"  rho_implied={mt['rho_implied']:.6f}"
            f"  rho_claimed={claimed_txt}"
        )
    print(f"wrote {path}")
    return 0


def _cmd_penrose_check(cfg, outdir):
    rng = np.random.default_rng(0)
    worst_round = 0.0
    for _ in range(1000):
        t = float(rng.uniform(-50, 50))
        r = float(rng.uniform(0, 50))
        q = penrose.penrose_inverse(
            penrose.penrose_forward(penrose.MinkowskiRadialPoint(t, r))
        )
        worst_round = max(
            worst_round,
            abs(q.t - t) / max(1.0, abs(t)),
            abs(q.r - r) / max(1.0, r),
        )
    grid = np.linspace(0.0, 1000.0, 10001)
    worst_omega0 = max(penrose.omega0_identity_residual(float(r)) for r in grid)
    worst_conf = 0.0
    for _ in range(100):
        t = float(rng.uniform(-2, 2))
        r = float(rng.uniform(0.05, 3))
        worst_conf = max(
            worst_conf,
            penrose.conformal_fd_residual(
                penrose.MinkowskiRadialPoint(t, r), 1e-5
            ),
        )
    worst_prof = max(
        penrose.profile_residual(d, float(r))
        for d in (3, 5, 7)
        for r in np.linspace(0.0, 100.0, 1001)
    )
    margins = {
        "roundtrip_rel": worst_round,
        "omega0_identity": worst_omega0,
        "conformal_fd": worst_conf,
        "profile_identity": worst_prof,
    }
    ok = (
        worst_round <= 1e-12
        and worst_omega0 <= 1e-12
        and worst_conf <= 1e-6
        and worst_prof <= 1e-12
    )
    report = {
        "schema": _SCHEMA,
        "command": "penrose-check",
        "verdict": "PASS" if ok else "FAIL",
        "margins": margins,
    }
    path = os.path.join(outdir, "penrose_check.json")
    _write(path, _dump(report))
    for k, v in margins.items():
        print(f"{k:>18}: {v:.3e}")
    print(f"verdict: {report['verdict']}")
    print(f"wrote {path}")
    return 0 if ok else 1


def _cmd_deficit_demo(cfg, outdir):
    rng = np.random.default_rng(1)
    n, m = 4, 6
    model = deficit.DiscreteDeficitModel(
        metric=rng.uniform(0.5, 2.0, n),
        S=rng.normal(size=(m, n)) + 1j * rng.normal(size=(m, n)),
        w=rng.uniform(0.1, 1.0, m),
        p=3.4,
        f_star=rng.normal(size=n) + 1j * rng.normal(size=n),
    )
    f = rng.normal(size=n) + 1j * rng.normal(size=n)
    g = rng.normal(size=n) + 1j * rng.normal(size=n)
    eps = 1e-4
    fd1 = (deficit.psi(model, f + eps * g) - deficit.psi(model, f - eps * g)) / (
        2 * eps
    )
    an1 = deficit.psi_prime(model, f, g)
    fd2 = (
        deficit.psi(model, f + eps * g)
        - 2 * deficit.psi(model, f)
        + deficit.psi(model, f - eps * g)
    ) / eps**2
    an2 = deficit.psi_second(model, f, g)
    H = deficit.hessian_matrix(model, f)
    x = model.embed(g)
    quad = float(x @ H @ x)
    margins = {
        "psi_at_f_star": deficit.psi(model, model.f_star),
        "first_variation_fd_rel": abs(fd1 - an1) / max(1.0, abs(an1)),
        "second_variation_fd_rel": abs(fd2 - an2) / max(1.0, abs(an2)),
        "hessian_vs_quadratic_rel": abs(quad - an2) / max(1.0, abs(an2)),
        "hessian_asymmetry": float(np.max(np.abs(H - H.T))),
    }
    ok = (
        abs(margins["psi_at_f_star"]) <= 1e-10
        and margins["first_variation_fd_rel"] <= 1e-6
        and margins["second_variation_fd_rel"] <= 1e-5
        and margins["hessian_vs_quadratic_rel"] <= 1e-10
        and margins["hessian_asymmetry"] == 0.0
    )
    report = {
        "schema": _SCHEMA,
        "command": "deficit-demo",
        "verdict": "PASS" if ok else "FAIL",
        "margins": margins,
    }
    path = os.path.join(outdir, "deficit_demo.json")
    _write(path, _dump(report))
    for k, v in margins.items():
        print(f"{k:>26}: {v:.3e}")
    print(f"verdict: {report['verdict']}")
    print(f"wrote {path}")
    return 0 if ok else 1


def _cmd_all(cfg, outdir):
    codes = [
        _cmd_sphere_tables(cfg, outdir),
        _cmd_sphere_verify(cfg, outdir),
        _cmd_schrod_verify(
            RunConfig(**{**cfg.__dict__, "d_min": 1, "d_max": min(cfg.d_max, 5)}),
            outdir,
        ),
        _cmd_wave_audit(
            RunConfig(**{**cfg.__dict__, "d_min": 2, "d_max": min(cfg.d_max, 11)}),
            outdir,
        ),
        _cmd_penrose_check(cfg, outdir),
        _cmd_deficit_demo(cfg, outdir),
    ]
    if 1 in codes:
        return 1
    if 2 in codes:
        return 2
    return 0


_COMMANDS = {
    "sphere-tables": _cmd_sphere_tables,
    "sphere-verify": _cmd_sphere_verify,
    "schrod-verify": _cmd_schrod_verify,
    "wave-audit": _cmd_wave_audit,
    "penrose-check": _cmd_penrose_check,
    "deficit-demo": _cmd_deficit_demo,
    "all": _cmd_all,
}

_RANGE_DEFAULTS = {
    "sphere-tables": (2, 60),
    "sphere-verify": (2, 60),
    "schrod-verify": (1, 5),
    "wave-audit": (3, 3),
    "penrose-check": (3, 7),
    "deficit-demo": (1, 1),
    "all": (2, 60),
}


def build_parser():
    parser = argparse.ArgumentParser(
        prog="strichcert",
        description="certificate sweeps and reference-table reproduction",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name in _COMMANDS:
        sp = sub.add_parser(name)
        sp.add_argument("--d", type=int, default=None, help="single dimension")
        sp.add_argument("--d-min", type=int, default=None)
        sp.add_argument("--d-max", type=int, default=None)
        sp.add_argument("--tol", type=float, default=1e-9)
        sp.add_argument("--r-max", type=float, default=2000.0)
        sp.add_argument("--m-max", type=int, default=40)
        sp.add_argument("--k-max", type=int, default=200)
        sp.add_argument("--ell-max", type=int, default=60)
        sp.add_argument("--format", choices=("csv", "json"), default="csv")
        sp.add_argument("--output", default=None, help="output directory")
        sp.add_argument("--parallelism", type=int, default=1)
    return parser


def config_from_args(args):
    lo, hi = _RANGE_DEFAULTS[args.command]
    if args.d is not None:
        lo = hi = args.d
    if args.d_min is not None:
        lo = args.d_min
    if args.d_max is not None:
        hi = args.d_max
    output = args.output
    if output is None:
        output = os.environ.get("STRICHCERT_OUTDIR", ".")
    return RunConfig(
        command=args.command,
        d_min=lo,
        d_max=hi,
        tol=args.tol,
        r_max=args.r_max,
        m_max=args.m_max,
        k_max=args.k_max,
        ell_max=args.ell_max,
        format=args.format,
        output=output,
        parallelism=args.parallelism,
    )


def run(config):
    try:
        os.makedirs(config.output, exist_ok=True)
        outdir = config.output
    except OSError as exc:
        print(f"error: cannot create output directory: {exc}", file=sys.stderr)
        return 3
    try:
        return _COMMANDS[config.command](config, outdir)
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        config = config_from_args(args)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    return run(config)


if __name__ == "__main__":
    sys.exit(main())
