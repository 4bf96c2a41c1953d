"""Moving between the natural and dual charts.

Walks through the chart maps, their Jacobians, the bilinear metric push, and
the determinant bookkeeping det g(xi) = det g(theta) / (det J)^2.
"""

import numpy as np

from igeo import (
    ParamPoint,
    chart_backward,
    chart_forward,
    fisher_metric_theta,
    jacobian,
    transform_metric,
)

for mu, sigma in [(0.0, 1.0), (1.0, 2.0), (-0.5, 0.8)]:
    p = ParamPoint.theta(mu, sigma)
    q = chart_forward(p)
    back = chart_backward(q)
    jac, jac_inv = jacobian(p)

    print(f"\n== (mu, sigma) = ({mu}, {sigma})")
    print(f"  forward:   xi = ({q.c1}, {q.c2})")
    print(f"  backward:  (mu, sigma) = ({back.c1}, {back.c2})")
    print(f"  jacobian = {jac.tolist()}, det = {np.linalg.det(jac):.6g}")
    print(f"  inverse  = {np.round(jac_inv, 12).tolist()}")
    print(f"  J . J^-1 residual = {np.max(np.abs(jac @ jac_inv - np.eye(2))):.2e}")

    m_th = fisher_metric_theta(p)
    m_xi = transform_metric(m_th, jac_inv, q)
    print(f"  g(theta) = {np.asarray(m_th.g).tolist()}  det {m_th.det:.6g}")
    print(f"  g(xi)    = {np.round(np.asarray(m_xi.g), 12).tolist()}  det {m_xi.det:.6g}")
    print(f"  det identity residual = {abs(m_xi.det - m_th.det / np.linalg.det(jac) ** 2):.2e}")
