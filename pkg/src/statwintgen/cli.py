"""Batch command-line harness.

Commands
--------
axioms        dualistic-axiom residual suite on a built-in chart
curvature     curvature cross-checks (analytic vs finite-difference, closed forms)
classify      almost-contact classification of a warped product
reproduce     full reproduction battery for the built-in examples
wintgen       verify / sweep / chain / sharpness on Legendrian instances

Exit codes: 0 all checks passed, 1 at least one property or inequality
violation, 2 usage or configuration error.  Every JSON report embeds the
schema string; floats are printed with 17 significant digits so reports
round-trip exactly.  An optional JSON config file provides defaults for any
long flag (flags win); the environment variable STATWINTGEN_OUTDIR sets the
default output directory.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from pathlib import Path

import numpy as np

from . import legendrian as lg
from . import statistical_geometry as sg
from . import warped_contact as wc
from . import wintgen as wg

SCHEMA = "statwintgen-report/1"

EXIT_OK = 0
EXIT_VIOLATION = 1
EXIT_USAGE = 2


def report_schema_version() -> str:
    return SCHEMA


def format_float(x: float) -> str:
    """17 significant digits: enough for exact double round-trips."""
    return format(float(x), ".17g")


def dump_json(obj, indent: int = 0) -> str:
    """JSON text with floats rendered at 17 significant digits."""
    pad = "  " * indent
    inner = "  " * (indent + 1)
    if obj is None:
        return "null"
    if isinstance(obj, (bool, np.bool_)):
        return "true" if obj else "false"
    if isinstance(obj, (np.floating, float)):
        if not math.isfinite(obj):
            raise ValueError("non-finite float in report")
        return format_float(float(obj))
    if isinstance(obj, (np.integer, int)):
        return str(int(obj))
    if isinstance(obj, str):
        return json.dumps(obj)
    if isinstance(obj, np.ndarray):
        return dump_json(obj.tolist(), indent)
    if isinstance(obj, (list, tuple)):
        if not obj:
            return "[]"
        items = ",\n".join(inner + dump_json(v, indent + 1) for v in obj)
        return "[\n" + items + "\n" + pad + "]"
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = ",\n".join(
            f"{inner}{json.dumps(str(k))}: {dump_json(v, indent + 1)}" for k, v in obj.items()
        )
        return "{\n" + items + "\n" + pad + "}"
    raise TypeError(f"cannot serialize {type(obj)!r}")


def _output_dir() -> Path:
    return Path(os.environ.get("STATWINTGEN_OUTDIR", "."))


def _write_report(args, report: dict, default_name: str) -> Path | None:
    """Write to --out when given, else to $STATWINTGEN_OUTDIR when set."""
    out = getattr(args, "out", None)
    if out is None:
        if "STATWINTGEN_OUTDIR" not in os.environ:
            return None
        path = _output_dir() / default_name
    else:
        path = Path(out)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(dump_json(report) + "\n")
    return path


def _base_report(command: str, passed: bool, body: dict) -> dict:
    rep = {"schema": SCHEMA, "command": command, "passed": passed}
    rep.update(body)
    return rep


# ---------------------------------------------------------------------------
# chart / spec selection helpers
# ---------------------------------------------------------------------------


def _chart_by_name(name: str):
    if name == "r2":
        return sg.builtin_r2_example()
    if name == "h3":
        return wc.build_warped_chart(wc.builtin_h3_example())
    raise ValueError(f"unknown chart {name!r} (expected r2 or h3)")


def _warping_by_name(name: str, const_value: float) -> wc.Warping:
    if name == "exp":
        return wc.exp_warping()
    if name == "const":
        return wc.const_warping(const_value)
    if name == "cosh":
        return wc.cosh_warping()
    raise ValueError(f"unknown warp {name!r} (expected exp, const or cosh)")


def _spec_by_name(fiber: str, warping: wc.Warping, epsilon: float) -> wc.WarpedProductSpec:
    if fiber == "flat":
        return wc.flat_kaehler_spec(1, warping)
    if fiber == "r2":
        return wc.WarpedProductSpec(
            fiber=sg.builtin_r2_example(),
            complex_structure=lambda x: wc.standard_complex_structure(1),
            warping=warping,
            label="r2-fiber warp",
        )
    if fiber == "twisted":
        return wc.twisted_j_spec(epsilon, warping)
    raise ValueError(f"unknown fiber {fiber!r} (expected flat, r2 or twisted)")


def _perturbed_chart(chart: sg.DualisticChart, eps: float) -> sg.DualisticChart:
    """Corrupt one primal connection coefficient; negative-path testing aid."""
    base_gamma = chart.gamma

    def gamma(x):
        g = np.array(base_gamma(x), dtype=float, copy=True)
        g[0, 0, 0] += eps
        return g

    def gamma_partial(x):
        return chart.gamma_partial(x)

    from dataclasses import replace

    return replace(
        chart,
        gamma=gamma,
        gamma_partial=gamma_partial if chart.gamma_partial is not None else None,
        label=chart.label + f"+perturbed({eps})",
    )


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------


def cmd_axioms(args) -> int:
    chart = _chart_by_name(args.chart)
    if args.perturb_gamma:
        chart = _perturbed_chart(chart, args.perturb_gamma)
    rng = np.random.default_rng(args.seed)
    box = [(-0.5, 0.5)] + [(-1.0, 1.0)] * (chart.dim - 1) if args.chart == "h3" else None
    worst: dict[str, float] = {}
    breaches = []
    for _ in range(args.samples):
        if box is None:
            point = rng.uniform(-1.0, 1.0, chart.dim)
        else:
            point = np.array([rng.uniform(lo, hi) for lo, hi in box])
        probes = [rng.uniform(-1.0, 1.0, chart.dim) for _ in range(4)]
        rec = sg.axiom_residuals(chart, point, *probes)
        for name, value in rec.as_dict().items():
            worst[name] = max(worst.get(name, 0.0), value)
            if value > args.residual_tol:
                breaches.append({"residual": name, "value": value, "point": point.tolist()})
    passed = not breaches
    report = _base_report(
        "axioms",
        passed,
        {
            "chart": args.chart,
            "seed": args.seed,
            "samples": args.samples,
            "residual_tol": args.residual_tol,
            "worst": worst,
            "breaches": breaches[:20],
            "breach_count": len(breaches),
        },
    )
    path = _write_report(args, report, f"axioms-{args.chart}-{args.seed}.json")
    for name, value in worst.items():
        print(f"axioms[{args.chart}] {name:<16} max {format_float(value)}")
    print(f"axioms[{args.chart}] {'PASS' if passed else 'FAIL'} ({len(breaches)} breaches)"
          + (f" -> {path}" if path else ""))
    return EXIT_OK if passed else EXIT_VIOLATION


def cmd_curvature(args) -> int:
    rng = np.random.default_rng(args.seed)
    checks = []
    if args.chart == "r2":
        chart = sg.builtin_r2_example()
        fd = chart.without_analytic()
        ex, ey = np.eye(2)
        for _ in range(args.samples):
            p = rng.uniform(-1.0, 1.0, 2)
            g = chart.metric(p)
            for label, ch, tol in (("analytic", chart, 1e-10), ("finite-difference", fd, 1e-6)):
                for which in ("nabla", "nabla_star"):
                    val = sg.curvature(ch, which, p).scalar(g, ex, ey, ey, ex)
                    checks.append(
                        {"check": f"{label}:{which}", "value": val, "target": -1.0,
                         "ok": abs(val + 1.0) <= tol}
                    )
    else:
        spec = wc.builtin_h3_example()
        chart = wc.build_warped_chart(spec)
        for _ in range(args.samples):
            p = wc.sample_warped_points(spec, 1, rng)[0]
            u, v = rng.uniform(-1.0, 1.0, 3), rng.uniform(-1.0, 1.0, 3)
            val = sg.sectional_curvature(chart, "levi_civita", p, u, v)
            checks.append({"check": "levi-civita sectional", "value": val, "target": -1.0,
                           "ok": abs(val + 1.0) <= 1e-6})
            vf, uf, wf = (rng.uniform(-1.0, 1.0, 2) for _ in range(3))
            for case in wc.CLOSED_FORM_CASES:
                closed = wc.warped_curvature_closed_form(spec, p, case, U=uf, V=vf, W=wf)
                which = "nabla_star" if case.endswith("*") else "nabla"
                R = sg.curvature(chart.without_analytic(), which, p)
                if case[0] in ("a",):
                    num = R.vector(wc.embed_fiber_vector(vf), np.eye(3)[0], np.eye(3)[0])
                elif case[0] == "b":
                    num = R.vector(wc.embed_fiber_vector(vf), wc.embed_fiber_vector(uf), np.eye(3)[0])
                elif case[0] == "c":
                    num = R.vector(np.eye(3)[0], wc.embed_fiber_vector(vf), wc.embed_fiber_vector(wf))
                else:
                    num = R.vector(wc.embed_fiber_vector(vf), wc.embed_fiber_vector(wf), wc.embed_fiber_vector(uf))
                dev = float(np.max(np.abs(closed - num)))
                checks.append({"check": f"closed-form {case}", "value": dev, "target": 0.0,
                               "ok": dev <= 1e-6})
    passed = all(c["ok"] for c in checks)
    worst = max((abs(c["value"] - c["target"]) for c in checks), default=0.0)
    report = _base_report(
        "curvature",
        passed,
        {"chart": args.chart, "seed": args.seed, "samples": args.samples,
         "worst_deviation": worst, "checks": checks[:50], "check_count": len(checks)},
    )
    path = _write_report(args, report, f"curvature-{args.chart}-{args.seed}.json")
    print(f"curvature[{args.chart}] {len(checks)} checks, worst deviation {format_float(worst)} "
          f"{'PASS' if passed else 'FAIL'}" + (f" -> {path}" if path else ""))
    return EXIT_OK if passed else EXIT_VIOLATION


def cmd_classify(args) -> int:
    warping = _warping_by_name(args.warp, args.const_value)
    spec = _spec_by_name(args.fiber, warping, args.epsilon)
    rng = np.random.default_rng(args.seed)
    pts = wc.sample_warped_points(spec, args.samples, rng)
    rows = []
    for p in pts:
        cls = wc.contact_classification(spec, p, tol=args.residual_tol)
        rows.append(
            {"point": p.tolist(), "alpha": cls.alpha, "d_eta_residual": cls.d_eta_residual,
             "d_phi_residual": cls.d_phi_residual,
             "contact_identity_residual": cls.contact_identity_residual,
             "d_omega_residual": cls.d_omega_residual, "tag": cls.structure_tag}
        )
    check = wc.kenmotsu_theorem_check(spec, samples=args.samples, seed=args.seed)
    passed = check.consistent
    report = _base_report(
        "classify",
        passed,
        {"warp": args.warp, "fiber": args.fiber, "seed": args.seed, "samples": args.samples,
         "fiber_almost_kaehler": check.fiber_almost_kaehler,
         "total_almost_kenmotsu": check.total_almost_kenmotsu,
         "consistent": check.consistent,
         "k_tilde_xi_residual": check.k_tilde_xi_residual,
         "classifications": rows},
    )
    path = _write_report(args, report, f"classify-{args.warp}-{args.fiber}.json")
    tags = sorted({r["tag"] for r in rows})
    print(f"classify[{args.warp}/{args.fiber}] tags={tags} alpha={format_float(rows[0]['alpha'])} "
          f"consistent={check.consistent}" + (f" -> {path}" if path else ""))
    return EXIT_OK if passed else EXIT_VIOLATION


def cmd_reproduce(args) -> int:
    rng = np.random.default_rng(args.seed)
    checks: list[dict] = []

    def add(name: str, value: float, target: float, tol: float):
        checks.append({"check": name, "value": value, "target": target, "tol": tol,
                       "ok": abs(value - target) <= tol})

    if args.example == "example-r2":
        chart = sg.builtin_r2_example()
        ex, ey = np.eye(2)
        for _ in range(20):
            p = rng.uniform(-1.0, 1.0, 2)
            g = chart.metric(p)
            add("curvature(nabla)", sg.curvature(chart, "nabla", p).scalar(g, ex, ey, ey, ex), -1.0, 1e-10)
            add("curvature(nabla_star)", sg.curvature(chart, "nabla_star", p).scalar(g, ex, ey, ey, ex), -1.0, 1e-10)
            fd = chart.without_analytic()
            add("fd curvature(nabla)", sg.curvature(fd, "nabla", p).scalar(g, ex, ey, ey, ex), -1.0, 1e-6)
            rec = sg.axiom_residuals(chart, p, *[rng.uniform(-1, 1, 2) for _ in range(4)])
            add("axiom residual", rec.worst(), 0.0, 1e-8)
            k = sg.difference_tensor(chart, p)
            add("K^y_xx", k[1, 0, 0], 1.0, 1e-12)
            add("K^x_xy", k[0, 0, 1], 1.0, 1e-12)
    else:
        spec = wc.builtin_h3_example()
        chart = wc.build_warped_chart(spec)
        table = _h3_table_residual(chart)
        add("connection table", table, 0.0, 1e-12)
        for _ in range(50):
            p = wc.sample_warped_points(spec, 1, rng)[0]
            u, v = rng.uniform(-1, 1, 3), rng.uniform(-1, 1, 3)
            add("hyperbolic sectional", sg.sectional_curvature(chart, "levi_civita", p, u, v), -1.0, 1e-6)
            rec = sg.axiom_residuals(chart, p, *[rng.uniform(-1, 1, 3) for _ in range(4)])
            add("axiom residual", rec.worst(), 0.0, 1e-6)
        cls = wc.contact_classification(spec, wc.sample_warped_points(spec, 1, rng)[0])
        add("alpha", cls.alpha, -1.0, 1e-12)
        add("d_phi residual", cls.d_phi_residual, 0.0, 1e-8)
    passed = all(c["ok"] for c in checks)
    worst = max((abs(c["value"] - c["target"]) / max(c["tol"], 1e-300) for c in checks), default=0.0)
    report = _base_report(
        "reproduce", passed,
        {"example": args.example, "seed": args.seed, "checks": checks, "check_count": len(checks)},
    )
    path = _write_report(args, report, f"reproduce-{args.example}.json")
    print(f"reproduce[{args.example}] {len(checks)} checks "
          f"{'PASS' if passed else 'FAIL'} (worst {worst:.3g}x tol)" + (f" -> {path}" if path else ""))
    return EXIT_OK if passed else EXIT_VIOLATION


def _h3_table_residual(chart: sg.DualisticChart) -> float:
    """Componentwise residual of the nine-identity connection table at a point."""
    t = 0.37
    p = np.array([t, 0.41, -0.58])
    gam = chart.gamma(p)
    e2t = math.exp(2.0 * t)
    expected = np.zeros((3, 3, 3))
    expected[1, 0, 1] = expected[1, 1, 0] = 1.0  # nabla_dt dx = dx
    expected[2, 0, 2] = expected[2, 2, 0] = 1.0  # nabla_dt dy = dy
    expected[2, 1, 1] = 1.0                      # nabla_dx dx = dy - e^{2t} dt
    expected[0, 1, 1] = -e2t
    expected[1, 1, 2] = expected[1, 2, 1] = 1.0  # nabla_dx dy = dx
    expected[0, 2, 2] = -e2t                     # nabla_dy dy = -e^{2t} dt
    return float(np.max(np.abs(gam - expected)))


def _load_instance(path: str) -> lg.LegendrianPointInstance:
    return lg.LegendrianPointInstance.from_json(Path(path).read_text())


def cmd_wintgen_verify(args) -> int:
    inst = _load_instance(args.instance)
    violations = lg.validate(inst)
    if violations:
        print(f"instance invalid: {violations[:5]}")
        return EXIT_USAGE
    rep = wg.main_inequality(inst, seed=args.instance)
    report = _base_report("wintgen-verify", rep.holds, rep.as_dict())
    path = _write_report(args, report, "wintgen-verify.json")
    print(f"wintgen verify lhs={format_float(rep.lhs)} rhs={format_float(rep.rhs)} "
          f"slack={format_float(rep.slack)} holds={rep.holds}" + (f" -> {path}" if path else ""))
    return EXIT_OK if rep.holds else EXIT_VIOLATION


CSV_COLUMNS = ("seed", "n", "c", "f", "f_prime", "lhs", "rhs", "slack", "holds")


def sweep_csv_lines(reports: list[wg.WintgenReport]) -> list[str]:
    lines = [",".join(CSV_COLUMNS)]
    for r in reports:
        lines.append(
            ",".join(
                [
                    str(r.seed),
                    str(r.n),
                    format_float(r.c),
                    format_float(r.f),
                    format_float(r.f_prime),
                    format_float(r.lhs),
                    format_float(r.rhs),
                    format_float(r.slack),
                    "true" if r.holds else "false",
                ]
            )
        )
    return lines


def cmd_wintgen_sweep(args) -> int:
    reports = wg.sweep(
        n=args.n,
        count=args.count,
        seed=args.seed,
        c_range=(args.c_min, args.c_max),
        f_range=(args.f_min, args.f_max),
        fprime_range=(args.fprime_min, args.fprime_max),
        magnitude=args.magnitude,
        include_chain=False,
    )
    failures = [r for r in reports if not r.holds]
    out = Path(args.out) if args.out else _output_dir() / f"sweep-{args.seed}.{args.format}"
    out.parent.mkdir(parents=True, exist_ok=True)
    if args.format == "csv":
        out.write_text("\n".join(sweep_csv_lines(reports)) + "\n")
    else:
        body = _base_report(
            "wintgen-sweep",
            not failures,
            {"seed": args.seed, "n": args.n, "count": args.count,
             "rows": [r.as_dict() for r in reports]},
        )
        out.write_text(dump_json(body) + "\n")
    min_slack = min((r.slack for r in reports), default=0.0)
    print(f"wintgen sweep n={args.n} count={args.count} seed={args.seed}: "
          f"{len(failures)} violations, min slack {format_float(min_slack)} -> {out}")
    if failures:
        worst = min(failures, key=lambda r: r.slack)
        print(f"  worst: seed={worst.seed} c={format_float(worst.c)} f={format_float(worst.f)} "
              f"f'={format_float(worst.f_prime)} slack={format_float(worst.slack)}")
    return EXIT_OK if not failures else EXIT_VIOLATION


def cmd_wintgen_chain(args) -> int:
    inst = _load_instance(args.instance)
    rep = wg.main_inequality(inst, seed=args.instance, include_chain=True)
    required = [s for s in rep.chain if s.step != "final_bound_rederived"]
    passed = all(s.holds for s in required)
    report = _base_report("wintgen-chain", passed, rep.as_dict())
    path = _write_report(args, report, "wintgen-chain.json")
    for s in rep.chain:
        print(f"  {s.step:<24} lhs={format_float(s.lhs)} rhs={format_float(s.rhs)} "
              f"{'ok' if s.holds else 'VIOLATED'}")
    print(f"wintgen chain {'PASS' if passed else 'FAIL'}" + (f" -> {path}" if path else ""))
    return EXIT_OK if passed else EXIT_VIOLATION


def cmd_wintgen_sharpness(args) -> int:
    result = wg.sharpness_search(
        n=args.n, c=args.c, f=args.f, fprime=args.fprime,
        iterations=args.iterations, seed=args.seed,
    )
    report = _base_report(
        "wintgen-sharpness",
        not result.hard_violation,
        {
            "n": args.n, "c": args.c, "f": args.f, "f_prime": args.fprime,
            "seed": args.seed, "iterations": args.iterations,
            "min_slack": result.min_slack,
            "evaluations": result.evaluations,
            "restarts": result.restarts,
            "trace": result.trace,
            "hard_violation": result.hard_violation,
            "best_instance": result.best_instance.to_dict(),
        },
    )
    path = _write_report(args, report, f"sharpness-{args.seed}.json")
    print(f"wintgen sharpness min slack {format_float(result.min_slack)} "
          f"({result.evaluations} evals, {result.restarts} restarts, "
          f"hard_violation={result.hard_violation})" + (f" -> {path}" if path else ""))
    return EXIT_OK if not result.hard_violation else EXIT_VIOLATION


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", type=str, default=None, help="report output path")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="statwintgen",
        description="Numerical checks for dualistic warped-product geometry and the Wintgen bound.",
    )
    parser.add_argument("--config", type=str, default=None,
                        help="JSON file with default values for any long flag")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("axioms", help="dualistic axiom residual suite")
    p.add_argument("--chart", choices=("r2", "h3"), default="r2")
    p.add_argument("--samples", type=int, default=100)
    p.add_argument("--residual-tol", type=float, default=1e-6)
    p.add_argument("--perturb-gamma", type=float, default=0.0,
                   help="corrupt one connection coefficient by EPS (negative-path testing)")
    _add_common(p)
    p.set_defaults(func=cmd_axioms)

    p = sub.add_parser("curvature", help="curvature cross-checks")
    p.add_argument("--chart", choices=("r2", "h3"), default="r2")
    p.add_argument("--samples", type=int, default=20)
    _add_common(p)
    p.set_defaults(func=cmd_curvature)

    p = sub.add_parser("classify", help="almost-contact classification")
    p.add_argument("--warp", choices=("exp", "const", "cosh"), default="exp")
    p.add_argument("--const-value", type=float, default=1.0)
    p.add_argument("--fiber", choices=("flat", "r2", "twisted"), default="flat")
    p.add_argument("--epsilon", type=float, default=0.4, help="twist size for the twisted fiber")
    p.add_argument("--samples", type=int, default=5)
    p.add_argument("--residual-tol", type=float, default=1e-8)
    _add_common(p)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("reproduce", help="reproduce a built-in example end to end")
    p.add_argument("example", choices=("example-r2", "example-h3"))
    _add_common(p)
    p.set_defaults(func=cmd_reproduce)

    pw = sub.add_parser("wintgen", help="Legendrian instance checks")
    wsub = pw.add_subparsers(dest="subcommand", required=True)

    p = wsub.add_parser("verify", help="verify the bound on an instance file")
    p.add_argument("instance", type=str)
    _add_common(p)
    p.set_defaults(func=cmd_wintgen_verify)

    p = wsub.add_parser("sweep", help="seeded random-instance sweep")
    p.add_argument("--n", type=int, default=3)
    p.add_argument("--count", type=int, default=1000)
    p.add_argument("--c-min", type=float, default=-4.0)
    p.add_argument("--c-max", type=float, default=4.0)
    p.add_argument("--f-min", type=float, default=0.5)
    p.add_argument("--f-max", type=float, default=3.0)
    p.add_argument("--fprime-min", type=float, default=-2.0)
    p.add_argument("--fprime-max", type=float, default=2.0)
    p.add_argument("--magnitude", type=float, default=1.0)
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    _add_common(p)
    p.set_defaults(func=cmd_wintgen_sweep)

    p = wsub.add_parser("chain", help="per-step inequality chain on an instance file")
    p.add_argument("instance", type=str)
    _add_common(p)
    p.set_defaults(func=cmd_wintgen_chain)

    p = wsub.add_parser("sharpness", help="hill-climb slack minimization")
    p.add_argument("--n", type=int, default=2)
    p.add_argument("--c", type=float, default=0.0)
    p.add_argument("--f", type=float, default=1.0)
    p.add_argument("--fprime", type=float, default=0.0)
    p.add_argument("--iterations", type=int, default=2000)
    _add_common(p)
    p.set_defaults(func=cmd_wintgen_sharpness)

    return parser


def _apply_config(parser: argparse.ArgumentParser, argv: list[str]) -> list[str]:
    """Load --config JSON and fold its keys in as leading defaults (flags win)."""
    if "--config" not in argv:
        return argv
    idx = argv.index("--config")
    try:
        cfg_path = argv[idx + 1]
    except IndexError:
        raise SystemExit(EXIT_USAGE)
    data = json.loads(Path(cfg_path).read_text())
    if not isinstance(data, dict):
        raise ValueError("config file must hold a JSON object")
    extra: list[str] = []
    for key, value in data.items():
        flag = "--" + str(key).replace("_", "-")
        if flag in argv:
            continue  # explicit flag wins
        extra.extend([flag, str(value)])
    # insert config-derived flags right after the subcommand words
    rest = [a for i, a in enumerate(argv) if i not in (idx, idx + 1)]
    return rest + extra


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        argv = _apply_config(parser, argv)
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits with 2 on usage errors already; normalize other codes
        return EXIT_OK if exc.code in (0, None) else EXIT_USAGE
    except (ValueError, OSError, json.JSONDecodeError) as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    try:
        return args.func(args)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
