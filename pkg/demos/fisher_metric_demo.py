"""Fisher metric of the Gaussian family, three ways.

The closed form in the natural chart (mu, sigma) is diag(1/sigma^2,
2/sigma^2).  Gauss-Hermite quadrature and Monte Carlo evaluate the defining
expectation -E[dd log-likelihood] instead and should land on the same matrix.
"""

import numpy as np

from igeo import (
    Chart,
    GaussHermite,
    MonteCarlo,
    ParamPoint,
    evaluate_metric,
    fisher_metric_field,
    fisher_metric_theta,
)

points = [ParamPoint.theta(0.0, 1.0), ParamPoint.theta(3.0, 2.0), ParamPoint.theta(-1.0, 0.7)]
engines = [
    ("closed form", None),
    ("gauss-hermite 64", GaussHermite(64)),
    ("monte carlo 10^6", MonteCarlo(1_000_000, 20260808)),
]

for p in points:
    print(f"\n== natural chart point (mu, sigma) = ({p.c1}, {p.c2})")
    exact = np.asarray(fisher_metric_theta(p).g)
    for name, engine in engines:
        m = fisher_metric_theta(p) if engine is None else fisher_metric_theta(p, engine)
        g = np.asarray(m.g)
        gap = float(np.max(np.abs(g - exact)))
        print(f"  {name:<18} g = {np.round(g, 6).tolist()}   max gap {gap:.2e}")

print("\n== dual chart (mu, mu^2 + sigma^2): metric from the pullback field")
for p in points:
    q_coords = (p.c1, p.c1**2 + p.c2**2)
    q = ParamPoint.xi(*q_coords)
    m = evaluate_metric(fisher_metric_field(Chart.XI), q)
    print(f"  xi = {q_coords}: g = {np.round(np.asarray(m.g), 6).tolist()}  det = {m.det:.6g}")
