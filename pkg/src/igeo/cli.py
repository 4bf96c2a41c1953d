"""Command-line front end: evaluate quantities at points or grids, run the audit.

Points are given in the coordinates of the chart named by ``--chart``; no
command converts charts silently — ``transform`` is the only converting
command.  Output is TEXT for humans or JSON/CSV for machines; identical
configurations (including the Monte Carlo seed) produce byte-identical JSON.

Exit codes: 0 success, 2 domain error, 3 audit mismatch under ``--strict``,
64 malformed usage.
"""

from __future__ import annotations

import argparse
import math
import os
import sys

import numpy as np

from . import __version__
from .autodiff import sin
from .core import (
    Chart,
    DEFAULT_TOLERANCES,
    DomainError,
    EngineError,
    ParamPoint,
    Tolerances,
)
from .geometry import (
    evaluate_metric,
    levi_civita,
    riemann_levi_civita,
    sectional_curvature,
    torsion,
    transform_connection,
    transform_metric,
)
from .models import (
    DEFAULT_MC_SEED,
    ClosedForm,
    GaussHermite,
    MonteCarlo,
    chart_backward,
    chart_forward,
    chart_second_derivatives,
    conn_expectation_theta,
    fisher_metric_field,
    fisher_metric_theta,
    jacobian,
    score_xi_pullback,
)
from .papertable import audit as run_audit

EXIT_OK = 0
EXIT_DOMAIN = 2
EXIT_AUDIT = 3
EXIT_USAGE = 64


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse default exits 2; the contract is 64
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


# ---------------------------------------------------------------------------
# deterministic serialisation (floats with 17 significant digits)
# ---------------------------------------------------------------------------

def _num(x: float) -> str:
    x = float(x)
    if x == 0.0:
        x = 0.0  # normalise -0.0
    return format(x, ".17g")


def _json_value(v) -> str:
    if isinstance(v, str):
        escaped = v.replace("\\", "\\\\").replace('"', '\\"')
        return f'"{escaped}"'
    if isinstance(v, bool):
        return "true" if v else "false"
    if v is None:
        return "null"
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    if isinstance(v, (float, np.floating)):
        return _num(v)
    if isinstance(v, (list, tuple)):
        return "[" + ", ".join(_json_value(x) for x in v) + "]"
    if isinstance(v, dict):
        return "{" + ", ".join(f"{_json_value(k)}: {_json_value(x)}" for k, x in v.items()) + "}"
    raise TypeError(f"cannot serialise {type(v)}")


def _to_json(meta: dict, records: list[dict], notes: tuple[str, ...] = ()) -> str:
    lines = ["{"]
    lines.append(f'  "meta": {_json_value(meta)},')
    if notes:
        lines.append(f'  "notes": {_json_value(list(notes))},')
    lines.append('  "records": [')
    for i, rec in enumerate(records):
        comma = "," if i + 1 < len(records) else ""
        lines.append(f"    {_json_value(rec)}{comma}")
    lines.append("  ]")
    lines.append("}")
    return "\n".join(lines) + "\n"


def _csv_cell(v) -> str:
    if isinstance(v, str):
        return '"' + v.replace('"', '""') + '"' if ("," in v or '"' in v) else v
    if v is None:
        return ""
    if isinstance(v, (list, tuple)):
        return '"' + _json_value(v).replace('"', '""') + '"'
    if isinstance(v, (float, np.floating)):
        return _num(v)
    return str(v)


def _to_csv(records: list[dict]) -> str:
    if not records:
        return "\n"
    header = list(records[0].keys())
    lines = [",".join(header)]
    for rec in records:
        lines.append(",".join(_csv_cell(rec.get(k)) for k in header))
    return "\n".join(lines) + "\n"


def _render_value(v, indent="  ") -> list[str]:
    if isinstance(v, (float, int, np.floating, np.integer)):
        return [format(float(v), ".12g")]
    arr = np.asarray(v, dtype=float)
    if arr.ndim == 1:
        return ["[" + "  ".join(format(x, ".12g") for x in arr) + "]"]
    if arr.ndim == 2:
        return ["[" + "  ".join(f"{x:>15.12g}" for x in row) + "]" for row in arr]
    out = []
    for i, sub in enumerate(arr):
        block = _render_value(sub, indent)
        out.append(f"[{i + 1}] " + block[0])
        out.extend(indent + b for b in block[1:])
    return out


def _to_text(meta: dict, records: list[dict], notes: tuple[str, ...] = ()) -> str:
    lines = ["# " + "  ".join(f"{k}={v}" for k, v in meta.items())]
    last_point = None
    for rec in records:
        pt = tuple(rec["point"])
        if pt != last_point:
            lines.append(f"point ({format(pt[0], '.12g')}, {format(pt[1], '.12g')})")
            last_point = pt
        if "paper" in rec:  # audit row
            note = f"   # {rec['note']}" if rec.get("note") else ""
            label = f"oracle[{rec['oracle_label']}]"
            lines.append(
                f"  {rec['quantity']:<22} paper={rec['paper']:<+24.16g} "
                f"{label:<34}={rec['oracle']:<+24.16g} "
                f"gap={rec['abs_gap']:<12.4g} {rec['verdict']}{note}"
            )
        elif "bound" in rec:  # selftest row
            lines.append(
                f"  {rec['quantity']:<46} residual={rec['value']:<12.4g} "
                f"bound={rec['bound']:<10.4g} {rec['verdict']}"
            )
        else:
            val = _render_value(rec["value"])
            if len(val) == 1:
                lines.append(f"  {rec['quantity']}: {val[0]}")
            else:
                lines.append(f"  {rec['quantity']}:")
                lines.extend("    " + v for v in val)
    for n in notes:
        lines.append(f"note: {n}")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# argument handling
# ---------------------------------------------------------------------------

def _parse_point(text: str) -> tuple[float, float]:
    parts = text.split(",")
    if len(parts) != 2:
        raise UsageError(f"--point wants 'c1,c2', got {text!r}")
    try:
        return float(parts[0]), float(parts[1])
    except ValueError as exc:
        raise UsageError(f"--point wants two reals, got {text!r}") from exc


def _parse_grid(text: str) -> list[tuple[float, float]]:
    axes = []
    parts = text.split(",")
    if len(parts) != 2:
        raise UsageError(f"--grid wants 'start:stop:steps,start:stop:steps', got {text!r}")
    for part in parts:
        bits = part.split(":")
        if len(bits) != 3:
            raise UsageError(f"--grid axis wants 'start:stop:steps', got {part!r}")
        try:
            start, stop, steps = float(bits[0]), float(bits[1]), int(bits[2])
        except ValueError as exc:
            raise UsageError(f"bad --grid axis {part!r}") from exc
        if steps < 1:
            raise UsageError(f"--grid steps must be >= 1, got {steps}")
        axes.append(np.linspace(start, stop, steps))
    return [(float(a), float(b)) for a in axes[0] for b in axes[1]]


def _points(args, chart: Chart) -> list[ParamPoint]:
    if args.point is None and args.grid is None:
        raise UsageError("one of --point or --grid is required")
    if args.point is not None and args.grid is not None:
        raise UsageError("--point and --grid are mutually exclusive")
    coords = [_parse_point(args.point)] if args.point is not None else _parse_grid(args.grid)
    # every grid point must satisfy the chart invariant before any computation
    return [ParamPoint(chart, c1, c2) for c1, c2 in coords]


def _parse_engine(spec: str):
    default_seed = int(os.environ.get("IGEO_SEED", DEFAULT_MC_SEED))
    parts = spec.split(":")
    name = parts[0]
    try:
        if name == "closed_form" and len(parts) == 1:
            return ClosedForm(), "closed_form"
        if name == "gauss_hermite" and len(parts) <= 2:
            nodes = int(parts[1]) if len(parts) == 2 else 64
            return GaussHermite(nodes), f"gauss_hermite:{nodes}"
        if name == "monte_carlo" and len(parts) <= 3:
            samples = int(parts[1]) if len(parts) >= 2 else 1_000_000
            seed = int(parts[2]) if len(parts) == 3 else default_seed
            return MonteCarlo(samples, seed), f"monte_carlo:{samples}:{seed}"
    except ValueError as exc:
        raise UsageError(f"bad --engine spec {spec!r}") from exc
    raise UsageError(
        f"unknown --engine {spec!r}; want closed_form, gauss_hermite[:nodes] "
        "or monte_carlo[:samples[:seed]]"
    )


def _require_closed_form(engine, what: str):
    if not isinstance(engine, ClosedForm):
        raise UsageError(f"{what} derives from the closed-form metric field; use --engine closed_form")


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------

def _rec(point: ParamPoint, quantity: str, value, provenance: str = "oracle") -> dict:
    if isinstance(value, np.ndarray):
        value = value.tolist()
    return {
        "point": [point.c1, point.c2],
        "quantity": quantity,
        "value": value,
        "provenance": provenance,
    }


def _metric_at_point(p: ParamPoint, engine):
    if p.chart is Chart.THETA:
        return fisher_metric_theta(p, engine)
    if isinstance(engine, ClosedForm):
        return evaluate_metric(fisher_metric_field(Chart.XI), p)
    # dual chart via the outer product E[s_a s_b] of chain-rule scores
    from .geometry import MetricAt

    th = chart_backward(p)
    g = np.empty((2, 2))
    for a in range(2):
        for b in range(a, 2):
            g[a, b] = g[b, a] = engine.expect(
                lambda x, a=a, b=b: score_xi_pullback(x, th)[a]
                * score_xi_pullback(x, th)[b],
                th,
            )
    return MetricAt.from_matrix(p, g)


def _connection_at_point(p: ParamPoint, kind: str, engine):
    if kind == "levi_civita":
        _require_closed_form(engine, "the levi_civita connection")
        return levi_civita(fisher_metric_field(p.chart), p)
    if p.chart is Chart.THETA:
        return conn_expectation_theta(p, engine)
    th = chart_backward(p)
    jac, jac_inv = jacobian(th)
    return transform_connection(
        conn_expectation_theta(th, engine), jac, jac_inv,
        chart_second_derivatives(th), fisher_metric_theta(th), p,
    )


def _cmd_metric(args, points, engine) -> list[dict]:
    out = []
    for p in points:
        m = _metric_at_point(p, engine)
        out.append(_rec(p, "g", np.asarray(m.g)))
        out.append(_rec(p, "g_inv", np.asarray(m.g_inv)))
        out.append(_rec(p, "g_det", m.det))
    return out


def _cmd_christoffel(args, points, engine) -> list[dict]:
    out = []
    for p in points:
        conn = _connection_at_point(p, args.connection, engine)
        out.append(_rec(p, "Gamma_lower", np.asarray(conn.lower)))
        out.append(_rec(p, "Gamma_mixed", np.asarray(conn.mixed)))
    return out


def _cmd_torsion(args, points, engine) -> list[dict]:
    out = []
    for p in points:
        conn = _connection_at_point(p, args.connection, engine)
        t = torsion(conn)
        out.append(_rec(p, "T", np.asarray(t.t)))
        out.append(_rec(p, "T_max_abs", float(np.max(np.abs(t.t)))))
    return out


def _cmd_curvature(args, points, engine) -> list[dict]:
    _require_closed_form(engine, "curvature")
    out = []
    for p in points:
        field = fisher_metric_field(p.chart)
        riem = riemann_levi_civita(field, p)
        metric = evaluate_metric(field, p)
        out.append(_rec(p, "R", np.asarray(riem.r)))
        out.append(_rec(p, "scalar", riem.scalar))
        out.append(_rec(p, "sectional", sectional_curvature(riem, metric)))
    return out


def _cmd_scalar(args, points, engine) -> list[dict]:
    _require_closed_form(engine, "scalar curvature")
    out = []
    for p in points:
        riem = riemann_levi_civita(fisher_metric_field(p.chart), p)
        out.append(_rec(p, "scalar", riem.scalar))
    return out


def _cmd_transform(args, points, engine) -> list[dict]:
    out = []
    for p in points:
        if p.chart is Chart.THETA:
            q = chart_forward(p)
            jac, jac_inv = jacobian(p)
            m = transform_metric(fisher_metric_theta(p), jac_inv, q)
            out.append(_rec(p, "point_xi", [q.c1, q.c2]))
            out.append(_rec(p, "jacobian", jac))
            out.append(_rec(p, "jacobian_inv", jac_inv))
            out.append(_rec(p, "g_xi", np.asarray(m.g)))
            out.append(_rec(p, "g_xi_det", m.det))
        else:
            th = chart_backward(p)
            jac, jac_inv = jacobian(th)
            out.append(_rec(p, "point_theta", [th.c1, th.c2]))
            out.append(_rec(p, "jacobian", jac))
            out.append(_rec(p, "jacobian_inv", jac_inv))
            out.append(_rec(p, "g_theta", np.asarray(fisher_metric_theta(th).g)))
    return out


def _cmd_audit(args, points, tol: Tolerances):
    records: list[dict] = []
    notes: tuple[str, ...] = ()
    mismatch = False
    for p in points:
        report = run_audit(p, tol)
        notes = report.notes
        for row in report.rows:
            rec = {
                "point": [p.c1, p.c2],
                "quantity": row.quantity,
                "paper": row.paper,
                "oracle": row.oracle,
                "abs_gap": row.abs_gap,
                "rel_gap": row.rel_gap,
                "verdict": row.verdict,
                "oracle_label": row.oracle_label,
                "note": row.note,
            }
            records.append(rec)
            mismatch = mismatch or row.verdict == "MISMATCH"
    return records, notes, mismatch


def _selftest_sphere_field(c1, c2):
    s = sin(c1)
    return [[1.0, 0.0], [0.0, s * s]]


def _cmd_selftest(args) -> tuple[list[dict], bool]:
    tol = DEFAULT_TOLERANCES
    checks: list[tuple[str, float, float]] = []

    worst = 0.0
    for mu in (-2.0, 0.0, 1.5):
        for s in (0.3, 1.0, 4.0):
            p = ParamPoint.theta(mu, s)
            back = chart_backward(chart_forward(p))
            worst = max(worst, abs(back.c1 - mu), abs(back.c2 - s))
            jac, jac_inv = jacobian(p)
            worst_j = float(np.max(np.abs(jac @ jac_inv - np.eye(2))))
            checks.append((f"jacobian_inverse(mu={mu},sigma={s})", worst_j, 1e-14))
    checks.append(("chart_round_trip", worst, 1e-12))

    p = ParamPoint.theta(0.7, 1.3)
    gh = GaussHermite(64)
    checks.append(("gauss_hermite_normalisation",
                   abs(gh.expect(lambda x: np.ones_like(x), p) - 1.0), 1e-12))

    for chart in (Chart.THETA, Chart.XI):
        q = p if chart is Chart.THETA else chart_forward(p)
        conn = levi_civita(fisher_metric_field(chart), q)
        checks.append((f"levi_civita_torsion_{chart}",
                       float(np.max(np.abs(torsion(conn).t))), 0.0))
        riem = riemann_levi_civita(fisher_metric_field(chart), q)
        checks.append((f"scalar_curvature_{chart}", abs(riem.scalar + 0.5), tol.derived_abs))

    sph = ParamPoint.theta(math.pi / 3, 1.0)
    riem = riemann_levi_civita(_selftest_sphere_field, sph)
    checks.append(("sphere_scalar_curvature", abs(riem.scalar - 1.0), tol.derived_abs))

    jac, jac_inv = jacobian(p)
    m_th = fisher_metric_theta(p)
    m_xi = transform_metric(m_th, jac_inv, chart_forward(p))
    det_j = float(np.linalg.det(jac))
    checks.append(("metric_det_transform",
                   abs(m_xi.det - m_th.det / det_j**2), tol.closed_form_abs))

    records = []
    ok = True
    anchor = ParamPoint.theta(0.0, 1.0)
    for name, residual, bound in checks:
        passed = residual <= bound
        ok = ok and passed
        records.append({
            "point": [anchor.c1, anchor.c2],
            "quantity": f"selftest.{name}",
            "value": residual,
            "bound": bound,
            "verdict": "PASS" if passed else "FAIL",
            "provenance": "oracle",
        })
    return records, ok


# ---------------------------------------------------------------------------
# entry point
# ---------------------------------------------------------------------------

def build_parser() -> _Parser:
    parser = _Parser(prog="igeo", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(sp, chart=True, engine=True, connection=False):
        sp.add_argument("--point", help="c1,c2 in the chart's own coordinates")
        sp.add_argument("--grid", help="c1start:c1stop:c1steps,c2start:c2stop:c2steps")
        if chart:
            sp.add_argument("--chart", choices=["theta", "xi"], default="theta")
        if engine:
            sp.add_argument("--engine", default="closed_form",
                            help="closed_form | gauss_hermite[:nodes] | monte_carlo[:samples[:seed]]")
        if connection:
            sp.add_argument("--connection", choices=["levi_civita", "expectation"],
                            default="levi_civita")
        sp.add_argument("--format", choices=["json", "csv", "text"], default="text")
        sp.add_argument("--output", help="write the report here instead of stdout")

    common(sub.add_parser("metric", help="Fisher metric at points"))
    common(sub.add_parser("christoffel", help="connection coefficients"), connection=True)
    common(sub.add_parser("torsion", help="torsion of a connection"), connection=True)
    common(sub.add_parser("curvature", help="curvature array, scalar, sectional"))
    common(sub.add_parser("scalar", help="scalar curvature"))
    common(sub.add_parser("transform", help="convert a point and push the metric"), engine=False)

    sp = sub.add_parser("audit", help="published table vs oracles")
    common(sp, chart=False, engine=False)
    sp.add_argument("--strict", action="store_true",
                    help="exit 3 when any row mismatches")
    sp.add_argument("--tol-closed", type=float, default=DEFAULT_TOLERANCES.closed_form_abs)
    sp.add_argument("--tol-derived", type=float, default=DEFAULT_TOLERANCES.derived_abs)
    sp.add_argument("--tol-rel", type=float, default=DEFAULT_TOLERANCES.rel)

    sp = sub.add_parser("selftest", help="quick internal consistency checks")
    sp.add_argument("--format", choices=["json", "csv", "text"], default="text")
    sp.add_argument("--output")
    return parser


_HANDLERS = {
    "metric": _cmd_metric,
    "christoffel": _cmd_christoffel,
    "torsion": _cmd_torsion,
    "curvature": _cmd_curvature,
    "scalar": _cmd_scalar,
    "transform": _cmd_transform,
}


def _emit(args, meta: dict, records: list[dict], notes: tuple[str, ...] = ()) -> None:
    fmt = args.format
    if fmt == "json":
        text = _to_json(meta, records, notes)
    elif fmt == "csv":
        text = _to_csv(records)
    else:
        text = _to_text(meta, records, notes)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        if args.command == "selftest":
            records, ok = _cmd_selftest(args)
            meta = {"command": "selftest", "chart": "theta", "engine": "closed_form",
                    "tool_version": __version__}
            _emit(args, meta, records)
            return EXIT_OK if ok else 1

        if args.command == "audit":
            points = _points(args, Chart.THETA)
            tol = Tolerances(args.tol_closed, args.tol_derived, args.tol_rel)
            records, notes, mismatch = _cmd_audit(args, points, tol)
            meta = {"command": "audit", "chart": "theta", "engine": "closed_form",
                    "tool_version": __version__}
            _emit(args, meta, records, notes)
            return EXIT_AUDIT if (mismatch and args.strict) else EXIT_OK

        chart = Chart(args.chart) if hasattr(args, "chart") else Chart.THETA
        points = _points(args, chart)
        if hasattr(args, "engine"):
            engine, engine_desc = _parse_engine(args.engine)
        else:
            engine, engine_desc = ClosedForm(), "closed_form"
        records = _HANDLERS[args.command](args, points, engine)
        meta = {"command": args.command, "chart": chart.value, "engine": engine_desc,
                "tool_version": __version__}
        _emit(args, meta, records)
        return EXIT_OK
    except UsageError as exc:
        print(f"igeo: usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except EngineError as exc:
        print(f"igeo: engine error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except DomainError as exc:
        print(f"igeo: domain error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN


if __name__ == "__main__":
    sys.exit(main())
