"""Audit the published dual-chart table against the oracles.

Every transcribed entry is paired with an independently computed value: the
tensor law for the metric, both candidate transport laws for the lower
connection coefficients, and the native dual-chart Levi-Civita machinery for
the mixed coefficients, the curvature components and the scalar.
"""

from igeo import ParamPoint, audit

for mu, sigma in [(0.0, 1.0), (1.0, 1.0), (0.5, 2.0)]:
    report = audit(ParamPoint.theta(mu, sigma))
    n_match = sum(r.verdict == "MATCH" for r in report.rows)
    print(f"\n== audit at (mu, sigma) = ({mu}, {sigma}): "
          f"{n_match}/{len(report.rows)} rows match")
    print(f"  {'quantity':<16} {'paper':>14} {'oracle':>14} {'gap':>10}  verdict  oracle")
    for row in report.rows:
        if row.verdict == "MISMATCH":
            print(f"  {row.quantity:<16} {row.paper:>14.6g} {row.oracle:>14.6g} "
                  f"{row.abs_gap:>10.3g}  MISMATCH [{row.oracle_label}]")
    for note in report.notes:
        print(f"  note: {note}")
