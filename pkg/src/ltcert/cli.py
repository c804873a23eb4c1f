"""Command-line front end: verification reports, figure data, empirical tables.

Commands
--------
verify {sphere|torus|profile|all}   certify every computable claim; exit 0
                                    iff all records pass, 1 on failure, 2 on
                                    configuration errors
figures {fig1|fig2|all}             CSV figure data plus rendered PNGs
empirical {sphere|torus|elongated}  Lieb-Thirring ratio tables
report                              everything above into one output tree

Every config key can come from a flat key=value file (--config) and is
overridable by the flag of the same name.  All outputs are deterministic;
the thread hint never changes results.
"""

import argparse
import json
import math
import os
import sys
from dataclasses import replace

import numpy as np

from ltcert import empirical, figures
from ltcert import profile as profile_mod
from ltcert import sphere_series, torus_series
from ltcert.harmonics import DEFAULT_TORUS_MODES, build_family
from ltcert.records import (
    ConfigError,
    RunConfig,
    emit_report,
    fmt17,
    make_record,
    write_csv,
)

_CHI_ENERGIES = (1.0, 5.0, 10.0, 20.0, 100.0)
_TAIL_CHAIN_LS = (1.0, 2.0, 5.0, 10.0)
_ELONGATED_ALPHAS = (1.0, 0.5, 0.1, 0.01)


# ---------------------------------------------------------------------------
# Verification drivers.
# ---------------------------------------------------------------------------


def verify_profile(cfg: RunConfig):
    p = profile_mod.BudgetProfile()
    records = []

    residual = abs(profile_mod.normalization_residual(p, quadrature=True))
    records.append(
        make_record(
            name="profile_normalization",
            claim="int_0^inf f(t)^2 dt = 1 at mu = pi^2/16",
            computed=residual,
            bound=1e-12,
            margin=1e-12 - residual,
        )
    )

    dev = abs(profile_mod.objective_value(p, quadrature=True) - math.pi**3 / 16.0)
    records.append(
        make_record(
            name="profile_objective",
            claim="pi int (1-f)^2 t^-2 dt = pi^3/16 at mu = pi^2/16",
            computed=dev,
            bound=1e-10,
            margin=1e-10 - dev,
        )
    )

    six_a_dev = abs(6.0 * profile_mod.induced_A(p) - 3.0 * math.pi / 32.0)
    records.append(
        make_record(
            name="profile_constant_link",
            claim="6 A = 3 pi/32 with A = sqrt(mu)/16 = pi/64",
            computed=six_a_dev,
            bound=1e-15,
            margin=1e-15 - six_a_dev,
        )
    )

    # The normalization residual is strictly decreasing in mu; bisection
    # should recover mu = pi^2/16 as its unique root.
    lo, hi = 0.1, 10.0
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if profile_mod.normalization_residual(profile_mod.BudgetProfile(mid)) > 0:
            lo = mid
        else:
            hi = mid
    root_dev = abs(0.5 * (lo + hi) - profile_mod.MU_STAR)
    records.append(
        make_record(
            name="profile_unique_mu",
            claim="the unique normalized mu is pi^2/16",
            computed=root_dev,
            bound=1e-10,
            margin=1e-10 - root_dev,
        )
    )

    identity_dev = max(
        profile_mod.integral_identity_check(1.0, profile_mod.induced_A(p)),
        profile_mod.integral_identity_check(2.0, 1.0),
    )
    records.append(
        make_record(
            name="profile_budget_integral",
            claim="int (sqrt(rho) - sqrt(AE))_+^2 dE = rho^2/(6A)",
            computed=identity_dev,
            bound=1e-10,
            margin=1e-10 - identity_dev,
        )
    )
    return records


def verify_sphere(cfg: RunConfig):
    records = [
        sphere_series.certify_below_one_sphere(
            cfg.a_max_sphere, cfg.grid_step, tol=cfg.tolerance
        )
    ]

    a_pts = np.geomspace(0.1, 100.0, 20)
    dev = max(
        abs(
            sphere_series.h_s2_direct(float(a), tol=1e-12).value
            - sphere_series.h_s2_closed_form(float(a)).value
        )
        for a in a_pts
    )
    records.append(
        make_record(
            name="sphere_method_agreement",
            claim="direct sum and digamma closed form agree on 20 log-spaced a in [0.1, 100]",
            computed=dev,
            bound=1e-10,
            margin=1e-10 - dev,
        )
    )

    remainder_100 = float(sphere_series.remainder_curve([100.0])[0, 1])
    rem_dev = abs(remainder_100 - sphere_series.REMAINDER_LIMIT)
    records.append(
        make_record(
            name="sphere_remainder_limit",
            claim="scaled remainder at a = 100 within 5e-3 of -64/(315 pi)",
            computed=remainder_100,
            bound=sphere_series.REMAINDER_LIMIT,
            margin=5e-3 - rem_dev,
            notes=f"deviation {rem_dev:.3g}",
        )
    )

    records.append(empirical.chi_bound_check(_CHI_ENERGIES))
    return records


def verify_torus(cfg: RunConfig):
    records = [
        torus_series.certify_below_one_torus(
            cfg.a_max_torus, cfg.grid_step, tol=cfg.tolerance
        ),
        torus_series.strip_inequality_check(),
    ]

    worst = min((torus_series.tail_chain_check(L) for L in _TAIL_CHAIN_LS),
                key=lambda r: r.margin)
    records.append(worst)

    opt = torus_series.optimistic_threshold()
    records.append(
        make_record(
            name="torus_optimistic_threshold",
            claim="the radial-transform envelope crosses 1 at a = 14.73 +- 0.1",
            computed=opt,
            bound=14.73,
            margin=0.1 - abs(opt - 14.73),
        )
    )
    cons = torus_series.conservative_threshold()
    records.append(
        make_record(
            name="torus_conservative_threshold",
            claim="the strip-estimate envelope crosses 1 at a = 273.8 +- 0.5",
            computed=cons,
            bound=273.8,
            margin=0.5 - abs(cons - 273.8),
        )
    )

    r20 = torus_series.poisson_remainder(20.0).R
    records.append(
        make_record(
            name="torus_remainder_small",
            claim="|R(20)| < 5e-3",
            computed=abs(r20),
            bound=5e-3,
            margin=5e-3 - abs(r20),
        )
    )

    dual_dev = max(
        abs(torus_series.poisson_remainder(a).R - torus_series.poisson_remainder_from_hhat(a))
        for a in (5.0, 10.0)
    )
    records.append(
        make_record(
            name="torus_poisson_duality",
            claim="R(a) from the lattice sum matches 2 pi a sum hhat(2 pi sqrt(a)|k|)",
            computed=dual_dev,
            bound=1e-8,
            margin=1e-8 - dual_dev,
        )
    )

    xi_grid = np.arange(0.5, 60.0001, 0.5)
    # the quadrature tolerance tracks the bound so the e^(-xi/2) margin
    # stays resolvable down to the noise floor at xi = 60
    margin = min(
        math.exp(-0.5 * xi)
        - abs(torus_series.hankel_hhat(float(xi), tol=max(1e-13, 1e-3 * math.exp(-0.5 * xi))))
        for xi in xi_grid
    )
    records.append(
        make_record(
            name="torus_hhat_bound",
            claim="|hhat(xi)| < exp(-xi/2) for xi in {0.5, 1, ..., 60}",
            computed=margin,
            bound=0.0,
            margin=margin,
        )
    )
    return records


_VERIFY_TARGETS = {
    "profile": (verify_profile,),
    "sphere": (verify_sphere,),
    "torus": (verify_torus,),
    "all": (verify_profile, verify_sphere, verify_torus),
}


# ---------------------------------------------------------------------------
# Empirical drivers.
# ---------------------------------------------------------------------------


def _report_rows(reports):
    cols = ("family", "count", "rho_sq_integral", "dirichlet_sum", "ratio", "bound", "margin")
    rows = [
        (
            r.family,
            r.count,
            r.rho_sq_integral,
            r.dirichlet_sum,
            r.ratio,
            r.bound,
            r.margin,
        )
        for r in reports
    ]
    return cols, rows


def empirical_sphere(cfg: RunConfig):
    reports = [
        empirical.lt_ratio(build_family("sphere-scalar", n_cut))
        for n_cut in range(2, cfg.n_max + 1)
    ]
    for kind in ("sphere-w", "sphere-v", "sphere-mixed"):
        reports.append(empirical.lt_ratio(build_family(kind, 4)))
    return reports


def empirical_torus(cfg: RunConfig):
    bigger = DEFAULT_TORUS_MODES + ((1, 1), (-1, -1), (1, -1), (-1, 1))
    return [
        empirical.lt_ratio(build_family("torus", modes=DEFAULT_TORUS_MODES)),
        empirical.lt_ratio(build_family("torus", modes=bigger)),
    ]


def empirical_elongated(cfg: RunConfig):
    return [empirical.elongated_ratio(alpha) for alpha in _ELONGATED_ALPHAS]


# ---------------------------------------------------------------------------
# Command plumbing.
# ---------------------------------------------------------------------------


def _print_records(records):
    for r in records:
        tag = "PASS" if r.passed else "FAIL"
        print(
            f"{tag}  {r.name:<32} computed={fmt17(r.computed)} "
            f"bound={fmt17(r.bound)} margin={fmt17(r.margin)}"
        )


def cmd_verify(target: str, cfg: RunConfig, emit_json: bool = False) -> int:
    records = []
    for driver in _VERIFY_TARGETS[target]:
        records.extend(driver(cfg))
    _print_records(records)
    os.makedirs(cfg.out_dir, exist_ok=True)
    report = emit_report(records)
    path = os.path.join(cfg.out_dir, f"verify_{target}.json")
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(report + "\n")
    if emit_json:
        print(report)
    n_fail = sum(not r.passed for r in records)
    print(f"{len(records) - n_fail}/{len(records)} records pass -> {path}")
    return 0 if n_fail == 0 else 1


def cmd_figures(which: str, cfg: RunConfig, render: bool = True) -> int:
    targets = ("fig1", "fig2") if which == "all" else (which,)
    for name in targets:
        for path in figures.write_figure(name, cfg.out_dir, render=render):
            print(f"wrote {path}")
    return 0


def cmd_empirical(domain: str, cfg: RunConfig, emit_json: bool = False) -> int:
    driver = {
        "sphere": empirical_sphere,
        "torus": empirical_torus,
        "elongated": empirical_elongated,
    }[domain]
    reports = driver(cfg)
    cols, rows = _report_rows(reports)
    os.makedirs(cfg.out_dir, exist_ok=True)
    csv_path = os.path.join(cfg.out_dir, f"empirical_{domain}.csv")
    write_csv(csv_path, cols, rows)
    for r in reports:
        print(
            f"{r.family:<28} ratio={fmt17(r.ratio)} bound={fmt17(r.bound)} "
            f"margin={fmt17(r.margin)}"
        )
    if emit_json:
        payload = [dict(zip(cols, row)) for row in rows]
        json_path = os.path.join(cfg.out_dir, f"empirical_{domain}.json")
        with open(json_path, "w", encoding="utf-8") as fh:
            json.dump(payload, fh, indent=2)
        print(json.dumps(payload, indent=2))
    print(f"wrote {csv_path}")
    return 0


def cmd_report(cfg: RunConfig, emit_json: bool = False) -> int:
    status = cmd_verify("all", cfg, emit_json=emit_json)
    cmd_figures("all", cfg)
    for domain in ("sphere", "torus", "elongated"):
        cmd_empirical(domain, cfg, emit_json=False)
    return status


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ltcert",
        description="certify the spectral-series and Lieb-Thirring inequality claims",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(sp):
        sp.add_argument("--config", help="flat key=value config file")
        sp.add_argument("--out", help="output directory (default: out)")
        sp.add_argument("--json", action="store_true", help="also print JSON")
        sp.add_argument("--threads", type=int, help="thread count hint (results never depend on it)")

    sp = sub.add_parser("verify", help="run verification records")
    sp.add_argument("target", choices=sorted(_VERIFY_TARGETS))
    sp.add_argument("--a-max", type=float, dest="a_max", help="grid upper end for the chosen target")
    sp.add_argument("--step", type=float, help="certification grid step (<= 0.01)")
    sp.add_argument("--tol", type=float, help="series truncation tolerance")
    sp.add_argument("--n-max", type=int, dest="n_max", help="degree cutoff for empirical checks")
    add_common(sp)

    sp = sub.add_parser("figures", help="emit figure CSV data and rendered PNGs")
    sp.add_argument("which", choices=("fig1", "fig2", "all"))
    sp.add_argument("--no-plot", action="store_true", help="CSV only, skip PNG rendering")
    add_common(sp)

    sp = sub.add_parser("empirical", help="Lieb-Thirring ratio tables")
    sp.add_argument("domain", choices=("sphere", "torus", "elongated"))
    sp.add_argument("--n-max", type=int, dest="n_max")
    sp.add_argument("--alpha", type=float, help="aspect ratio for elongated checks")
    sp.add_argument("--a-max", type=float, dest="a_max")
    sp.add_argument("--step", type=float)
    sp.add_argument("--tol", type=float)
    add_common(sp)

    sp = sub.add_parser("report", help="verify everything and emit all tables/figures")
    sp.add_argument("--a-max", type=float, dest="a_max")
    sp.add_argument("--step", type=float)
    sp.add_argument("--tol", type=float)
    sp.add_argument("--n-max", type=int, dest="n_max")
    add_common(sp)
    return parser


def _config_from_args(args) -> RunConfig:
    cfg = RunConfig.from_file(args.config) if args.config else RunConfig()
    updates = {}
    if getattr(args, "a_max", None) is not None:
        target = getattr(args, "target", "all")
        if target in ("sphere", "all"):
            updates["a_max_sphere"] = args.a_max
        if target in ("torus", "all"):
            updates["a_max_torus"] = args.a_max
        if getattr(args, "command", "") in ("empirical", "report"):
            updates.setdefault("a_max_sphere", args.a_max)
            updates.setdefault("a_max_torus", args.a_max)
    if getattr(args, "step", None) is not None:
        updates["grid_step"] = args.step
    if getattr(args, "tol", None) is not None:
        updates["tolerance"] = args.tol
    if getattr(args, "n_max", None) is not None:
        updates["n_max"] = args.n_max
    if getattr(args, "alpha", None) is not None:
        updates["alpha"] = args.alpha
    if args.out is not None:
        updates["out_dir"] = args.out
    if args.threads is not None:
        updates["threads"] = args.threads
    return replace(cfg, **updates).validate()


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = _config_from_args(args)
        if args.command == "verify":
            if args.target in ("sphere", "all") and cfg.a_max_sphere < 20:
                raise ConfigError("sphere certification needs a_max >= 20")
            return cmd_verify(args.target, cfg, emit_json=args.json)
        if args.command == "figures":
            return cmd_figures(args.which, cfg, render=not args.no_plot)
        if args.command == "empirical":
            domain = args.domain
            if domain == "elongated" and getattr(args, "alpha", None) is not None:
                reports = [empirical.elongated_ratio(cfg.alpha)]
                cols, rows = _report_rows(reports)
                os.makedirs(cfg.out_dir, exist_ok=True)
                write_csv(os.path.join(cfg.out_dir, "empirical_elongated.csv"), cols, rows)
                _ = [print(f"{r.family:<28} ratio={fmt17(r.ratio)} bound={fmt17(r.bound)}") for r in reports]
                return 0
            return cmd_empirical(domain, cfg, emit_json=args.json)
        if args.command == "report":
            return cmd_report(cfg, emit_json=args.json)
        raise ConfigError(f"unknown command {args.command!r}")
    except ConfigError as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
