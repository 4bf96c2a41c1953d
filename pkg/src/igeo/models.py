"""The Gaussian family: log-likelihood, scores, expectation engines, charts.

Everything here is expressed in the natural chart (mu, sigma).  The dual
chart stores (mu, mu^2 + sigma^2); `chart_forward`/`chart_backward` convert
explicitly, and nothing in this module converts silently.
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass
from typing import Callable, Union

import numpy as np

from . import autodiff as ad
from .core import Chart, DomainError, EngineError, ParamPoint
from .geometry import ConnAt, MetricAt, MetricField

LOG_SQRT_2PI = 0.5 * math.log(2.0 * math.pi)
DEFAULT_MC_SEED = 20260808


def _require_theta(p: ParamPoint) -> tuple[float, float]:
    if p.chart is not Chart.THETA:
        raise DomainError(f"operation expects a theta-chart point, got {p.chart}")
    return p.c1, p.c2


def _require_xi(p: ParamPoint) -> tuple[float, float]:
    if p.chart is not Chart.XI:
        raise DomainError(f"operation expects a xi-chart point, got {p.chart}")
    return p.c1, p.c2


# ---------------------------------------------------------------------------
# the family and its derivatives
# ---------------------------------------------------------------------------

def log_likelihood(x, p: ParamPoint):
    """l(x) = -log(sqrt(2 pi) sigma) - (x - mu)^2 / (2 sigma^2)."""
    mu, s = _require_theta(p)
    x = np.asarray(x, dtype=float)
    out = -(LOG_SQRT_2PI + math.log(s)) - (x - mu) ** 2 / (2.0 * s * s)
    return out if out.shape else float(out)


def density(x, p: ParamPoint):
    return np.exp(log_likelihood(x, p))


def mean(p: ParamPoint) -> float:
    """E[x] = mu."""
    return _require_theta(p)[0]


def second_moment(p: ParamPoint) -> float:
    """E[x^2] = sigma^2 + mu^2 (variance decomposition)."""
    mu, s = _require_theta(p)
    return s * s + mu * mu


def score_theta(x, p: ParamPoint) -> np.ndarray:
    """Natural-chart scores (d l/d mu, d l/d sigma); expectation is zero."""
    mu, s = _require_theta(p)
    z = np.asarray(x, dtype=float) - mu
    return np.stack([z / (s * s), -1.0 / s + z * z / s**3])


def score_xi(x, p: ParamPoint) -> np.ndarray:
    """Dual-chart score basis as published, written in (mu, sigma).

    Components (x-mu)/sigma^2 and (x-mu)^2/(2 sigma^4) - mu (x-mu)/sigma^3
    - 1/(2 sigma^2); they realise the published combination
    d_xi2 = (-mu/sigma) d_1 + (1/(2 sigma)) d_2 of the natural scores.
    Both components still have zero expectation.  Note this is NOT the
    chain-rule pullback of the score covector (see score_xi_pullback); the
    two agree only at mu = 0.
    """
    mu, s = _require_theta(p)
    z = np.asarray(x, dtype=float) - mu
    first = z / (s * s)
    second = z * z / (2.0 * s**4) - mu * z / s**3 - 1.0 / (2.0 * s * s)
    return np.stack([first, second])


def score_xi_pullback(x, p: ParamPoint) -> np.ndarray:
    """Proper dual-chart scores d l / d xi_a, by the chain rule.

    (d l/d xi_a) = (d theta_i / d xi_a) (d l/d theta_i); their outer-product
    expectation reproduces the transformed Fisher metric exactly.
    """
    mu, s = _require_theta(p)
    s_th = score_theta(x, p)
    return np.stack([s_th[0] - (mu / s) * s_th[1], s_th[1] / (2.0 * s)])


def loglik_hessian_theta(x, p: ParamPoint) -> np.ndarray:
    """Second partials of l with respect to (mu, sigma); shape (2, 2) + x.shape."""
    mu, s = _require_theta(p)
    z = np.asarray(x, dtype=float) - mu
    h11 = np.broadcast_to(-1.0 / (s * s), z.shape).copy()
    h12 = -2.0 * z / s**3
    h22 = 1.0 / (s * s) - 3.0 * z * z / s**4
    return np.stack([np.stack([h11, h12]), np.stack([h12, h22])])


# ---------------------------------------------------------------------------
# expectation engines
# ---------------------------------------------------------------------------

@functools.lru_cache(maxsize=8)
def _hermgauss(n: int) -> tuple[np.ndarray, np.ndarray]:
    nodes, weights = np.polynomial.hermite.hermgauss(n)
    return nodes, weights


@dataclass(frozen=True)
class ClosedForm:
    """Marker engine: use the analytic moments, no numerical expectation."""


@dataclass(frozen=True)
class GaussHermite:
    """Quadrature engine with substitution x = mu + sqrt(2) sigma t."""

    nodes: int = 64

    def expect(self, f: Callable, p: ParamPoint) -> float:
        mu, s = _require_theta(p)
        t, w = _hermgauss(self.nodes)
        x = mu + math.sqrt(2.0) * s * t
        return float(np.asarray(f(x), dtype=float) @ w / math.sqrt(math.pi))


@dataclass(frozen=True)
class MonteCarlo:
    """Sample-mean engine; PCG64 + ziggurat normals, deterministic per (samples, seed)."""

    samples: int = 1_000_000
    seed: int = DEFAULT_MC_SEED

    def __post_init__(self):
        if self.samples < 100:
            raise EngineError(f"monte carlo needs at least 100 samples, got {self.samples}")

    def expect(self, f: Callable, p: ParamPoint) -> float:
        mu, s = _require_theta(p)
        rng = np.random.default_rng(self.seed)
        x = mu + s * rng.standard_normal(self.samples)
        return float(np.mean(np.asarray(f(x), dtype=float)))


Engine = Union[ClosedForm, GaussHermite, MonteCarlo]


def expect(engine: Engine, f: Callable, p: ParamPoint) -> float:
    if isinstance(engine, ClosedForm):
        raise EngineError("the closed-form engine has no generic expectation")
    return engine.expect(f, p)


# ---------------------------------------------------------------------------
# Fisher metric and expectation connection
# ---------------------------------------------------------------------------

def fisher_metric_theta(p: ParamPoint, engine: Engine = ClosedForm()) -> MetricAt:
    """Fisher metric in the natural chart.

    Closed form diag(1/sigma^2, 2/sigma^2); quadrature and Monte Carlo
    engines evaluate -E[d_i d_j l] instead, as independent routes.
    """
    mu, s = _require_theta(p)
    if isinstance(engine, ClosedForm):
        g = [[1.0 / (s * s), 0.0], [0.0, 2.0 / (s * s)]]
        return MetricAt.from_matrix(p, g)
    g = np.empty((2, 2))
    for i in range(2):
        for j in range(i, 2):
            g[i, j] = g[j, i] = -engine.expect(
                lambda x, i=i, j=j: loglik_hessian_theta(x, p)[i, j], p
            )
    return MetricAt.from_matrix(p, g)


def conn_expectation_theta(p: ParamPoint, engine: Engine = ClosedForm()) -> ConnAt:
    """Expectation-form connection Gamma_ijk = E[d_i d_j l . d_k l].

    Closed form: Gamma_121 = Gamma_211 = -2/sigma^3, Gamma_222 = -6/sigma^3,
    all other components zero.
    """
    mu, s = _require_theta(p)
    if isinstance(engine, ClosedForm):
        lower = np.zeros((2, 2, 2))
        lower[0, 1, 0] = lower[1, 0, 0] = -2.0 / s**3
        lower[1, 1, 1] = -6.0 / s**3
        g_inv = fisher_metric_theta(p).g_inv
    else:
        lower = np.empty((2, 2, 2))
        for i in range(2):
            for j in range(2):
                for k in range(2):
                    lower[i, j, k] = engine.expect(
                        lambda x, i=i, j=j, k=k: (
                            loglik_hessian_theta(x, p)[i, j] * score_theta(x, p)[k]
                        ),
                        p,
                    )
        g_inv = fisher_metric_theta(p, engine).g_inv
    mixed = np.einsum("km,ijm->kij", np.asarray(g_inv), lower)
    return ConnAt(point=p, lower=lower, mixed=mixed)


# ---------------------------------------------------------------------------
# charts
# ---------------------------------------------------------------------------

def chart_forward(p: ParamPoint) -> ParamPoint:
    """(mu, sigma) -> (mu, mu^2 + sigma^2)."""
    mu, s = _require_theta(p)
    return ParamPoint.xi(mu, mu * mu + s * s)


def chart_backward(q: ParamPoint) -> ParamPoint:
    """(x1, x2) -> (x1, sqrt(x2 - x1^2)); the positive root, sigma > 0."""
    x1, x2 = _require_xi(q)
    return ParamPoint.theta(x1, math.sqrt(x2 - x1 * x1))


def jacobian(p: ParamPoint) -> tuple[np.ndarray, np.ndarray]:
    """Forward Jacobian [[1, 0], [2 mu, 2 sigma]] and its inverse.

    Rows of the Jacobian are dual-chart components, columns natural ones;
    the inverse holds d theta_i / d xi_a with natural components as rows.
    """
    mu, s = _require_theta(p)
    jac = np.array([[1.0, 0.0], [2.0 * mu, 2.0 * s]])
    jac_inv = np.array([[1.0, 0.0], [-mu / s, 1.0 / (2.0 * s)]])
    return jac, jac_inv


def chart_second_derivatives(p: ParamPoint) -> np.ndarray:
    """sd[m, a, b] = d^2 theta_m / d xi_a d xi_b at the point, via Dual2.

    theta_1 is linear in xi, so only the sigma row is nonzero.
    """
    q = chart_forward(p)
    x1, x2 = ad.lift(q)
    sigma = ad.sqrt(x2 - x1 * x1)
    sd = np.zeros((2, 2, 2))
    sd[1] = sigma.hess
    return sd


def fisher_metric_field(chart: Chart) -> MetricField:
    """Differentiable Fisher metric field for either chart.

    The natural-chart field is the closed form.  The dual-chart field pulls
    the natural one back through the chart map (square root and all), so it
    shares no algebra with any hand-written dual-chart formula.
    """
    if chart is Chart.THETA:
        def theta_field(m, s):
            return [[1.0 / (s * s), 0.0], [0.0, 2.0 / (s * s)]]

        return theta_field

    def xi_field(x1, x2):
        s2 = x2 - x1 * x1
        sigma = ad.sqrt(s2)
        bbar = (
            (1.0, -x1 / sigma),              # d theta_i / d xi_1
            (0.0, 1.0 / (2.0 * sigma)),      # d theta_i / d xi_2
        )
        gth = ((1.0 / s2, 0.0), (0.0, 2.0 / s2))
        return [
            [
                sum(bbar[a][i] * bbar[b][j] * gth[i][j] for i in (0, 1) for j in (0, 1))
                for b in (0, 1)
            ]
            for a in (0, 1)
        ]

    return xi_field
