"""Connection, torsion and curvature in both charts, plus a sphere fixture.

The Gaussian Fisher-Rao plane has constant scalar curvature -1/2; being a
genuine scalar, the value must survive the change to the dual chart.  The
unit sphere (+1) shows the machinery is not hard-wired to negative curvature.
"""

import math

import numpy as np

from igeo import (
    Chart,
    ParamPoint,
    chart_forward,
    evaluate_metric,
    fisher_metric_field,
    levi_civita,
    riemann_levi_civita,
    sectional_curvature,
    torsion,
)
from igeo.autodiff import sin

theta_field = fisher_metric_field(Chart.THETA)
xi_field = fisher_metric_field(Chart.XI)

print("== Levi-Civita connection, natural chart")
for mu, sigma in [(0.0, 1.0), (0.0, 2.0), (1.5, 0.9)]:
    p = ParamPoint.theta(mu, sigma)
    conn = levi_civita(theta_field, p)
    t = torsion(conn)
    print(f"  ({mu}, {sigma}): Gamma^1_12 = {conn.mixed[0, 0, 1]:+.6g}, "
          f"Gamma^2_11 = {conn.mixed[1, 0, 0]:+.6g}, "
          f"Gamma^2_22 = {conn.mixed[1, 1, 1]:+.6g}, torsion max {np.max(np.abs(t.t)):.1g}")

print("\n== scalar curvature across a parameter sweep, both charts")
for mu in (-2.0, 0.0, 1.0):
    for sigma in (0.5, 1.0, 3.0):
        p = ParamPoint.theta(mu, sigma)
        s_th = riemann_levi_civita(theta_field, p).scalar
        s_xi = riemann_levi_civita(xi_field, chart_forward(p)).scalar
        print(f"  (mu={mu:+.1f}, sigma={sigma:.1f}):  theta {s_th:+.12f}   xi {s_xi:+.12f}")

print("\n== curvature array at (0, 1), natural chart")
riem = riemann_levi_civita(theta_field, ParamPoint.theta(0, 1))
metric = evaluate_metric(theta_field, ParamPoint.theta(0, 1))
print(f"  R_1212 = {riem.r[0, 1, 0, 1]:+.6g}, R_1221 = {riem.r[0, 1, 1, 0]:+.6g}")
print(f"  sectional = {sectional_curvature(riem, metric):+.6g}, scalar = {riem.scalar:+.6g}")

print("\n== unit sphere sanity fixture")
sphere = lambda a, b: [[1.0, 0.0], [0.0, sin(a) * sin(a)]]
for polar in (math.pi / 6, math.pi / 3, math.pi / 2):
    riem = riemann_levi_civita(sphere, ParamPoint.theta(polar, 1.0))
    print(f"  polar = {polar:.4f}: scalar = {riem.scalar:+.10f}")
