"""Estimation primitives: OLS, IRLS logistic regression, a 2D binary-response
kernel smoother, type-7 quantiles, and the seeded RNG contract."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

__all__ = [
    "DesignMatrix",
    "LinearFit",
    "LogisticFit",
    "SmoothedSurface",
    "ols_fit",
    "logistic_fit",
    "smooth_out_probability",
    "scott_bandwidth",
    "empirical_quantiles",
    "master_rng",
    "replicate_rng",
]

#: relative pivot threshold for declaring a design column collinear
RANK_TOL = 1e-10
#: coefficient norm (standardized design) beyond which we flag separation
SEPARATION_NORM = 30.0


@dataclass
class DesignMatrix:
    columns: list  # covariate names
    values: np.ndarray  # dense (n, p)
    has_intercept: bool = True

    def __post_init__(self):
        self.values = np.asarray(self.values, dtype=float)
        if self.values.ndim != 2:
            raise ValueError("design values must be 2-dimensional")
        if len(self.columns) != self.values.shape[1]:
            raise ValueError("column names do not match design width")
        if len(set(self.columns)) != len(self.columns):
            raise ValueError("duplicate column names")

    @property
    def n(self):
        return self.values.shape[0]


@dataclass
class LinearFit:
    coefficients: dict  # name -> estimate (dropped columns pinned to 0)
    residuals: np.ndarray
    fitted: np.ndarray
    dropped: list = field(default_factory=list)

    def coef_vector(self, columns):
        return np.array([self.coefficients[c] for c in columns])


@dataclass
class LogisticFit:
    coefficients: dict
    converged: bool
    iterations: int
    separated: bool = False
    constant_rate: float = None  # set when the response is single-class

    def predict(self, X):
        """Predicted probabilities for a design matching the fit columns."""
        X = np.asarray(X, dtype=float)
        if self.constant_rate is not None:
            return np.full(X.shape[0], self.constant_rate)
        beta = np.array(list(self.coefficients.values()))
        return _sigmoid(X @ beta)


def _independent_columns(values, tol=RANK_TOL):
    """Greedy rank detection in column-index order.

    Returns indices of a maximal independent set, preferring earlier
    columns so that later collinear indicators are the ones dropped.
    """
    n, p = values.shape
    scale = max(np.linalg.norm(values[:, j]) for j in range(p)) if p else 0.0
    keep = []
    basis = np.empty((n, 0))
    for j in range(p):
        col = values[:, j]
        resid = col - basis @ (basis.T @ col)
        # one re-orthogonalization pass for numerical safety
        resid -= basis @ (basis.T @ resid)
        norm = np.linalg.norm(resid)
        if norm > tol * scale:
            keep.append(j)
            basis = np.hstack([basis, (resid / norm)[:, None]])
    return keep


def ols_fit(X, y):
    """Least squares with rank-deficiency handling.

    Collinear columns are dropped in reverse index preference (later
    columns go) and their coefficients are pinned at 0, so X @ beta is
    always well defined over the full named design.
    """
    y = np.asarray(y, dtype=float)
    if X.n == 0:
        raise ValueError("empty design")
    if X.n != y.shape[0]:
        raise ValueError("design and response lengths differ")
    if np.any(np.all(X.values == 0.0, axis=0)):
        raise ValueError("design contains an all-zero column")

    keep = _independent_columns(X.values)
    if not keep:
        raise ValueError("all design columns dropped as collinear")
    sub = X.values[:, keep]
    beta_sub, *_ = np.linalg.lstsq(sub, y, rcond=None)
    beta = np.zeros(X.values.shape[1])
    beta[keep] = beta_sub
    fitted = X.values @ beta
    dropped = [X.columns[j] for j in range(X.values.shape[1]) if j not in keep]
    return LinearFit(
        coefficients=dict(zip(X.columns, beta)),
        residuals=y - fitted,
        fitted=fitted,
        dropped=dropped,
    )


def _sigmoid(z):
    out = np.empty_like(z)
    pos = z >= 0
    out[pos] = 1.0 / (1.0 + np.exp(-z[pos]))
    ez = np.exp(z[~pos])
    out[~pos] = ez / (1.0 + ez)
    return np.clip(out, 1e-12, 1.0 - 1e-12)


def logistic_fit(X, y, max_iter=50, tol=1e-9):
    """Newton/IRLS maximization of the Bernoulli log-likelihood.

    Complete separation (coefficient norm on the standardized design
    exceeding SEPARATION_NORM) stops iteration with converged=False and
    the separated flag set; the capped coefficients are returned as-is.
    """
    y = np.asarray(y, dtype=float)
    if not set(np.unique(y)) <= {0.0, 1.0}:
        raise ValueError("response must be binary")
    if len(np.unique(y)) < 2:
        raise ValueError("single-class response")

    V = X.values
    n, p = V.shape
    # per-column scale for the separation check; intercept-like columns
    # (constant) keep scale 1
    scales = V.std(axis=0)
    scales[scales == 0.0] = 1.0

    keep = _independent_columns(V)
    beta = np.zeros(p)
    converged = False
    separated = False
    it = 0
    for it in range(1, max_iter + 1):
        mu = _sigmoid(V @ beta)
        w = mu * (1.0 - mu)
        score = V.T @ (y - mu)
        if np.linalg.norm(score[keep]) < tol * n:
            converged = True
            break
        Vk = V[:, keep]
        H = Vk.T @ (Vk * w[:, None])
        try:
            step = np.linalg.solve(H, (Vk.T @ (y - mu)))
        except np.linalg.LinAlgError:
            step, *_ = np.linalg.lstsq(H, Vk.T @ (y - mu), rcond=None)
        beta[keep] += step
        if np.linalg.norm(beta * scales) > SEPARATION_NORM:
            separated = True
            break
    return LogisticFit(
        coefficients=dict(zip(X.columns, beta)),
        converged=converged,
        iterations=it,
        separated=separated,
    )


def scott_bandwidth(coords):
    """Scott's rule per axis for a 2D sample: sigma * n^(-1/6)."""
    coords = np.asarray(coords, dtype=float)
    n = coords.shape[0]
    sd = coords.std(axis=0, ddof=1) if n > 1 else np.ones(2)
    sd[sd == 0.0] = 1.0
    h = sd * n ** (-1.0 / 6.0)
    return float(h[0]), float(h[1])


@dataclass
class SmoothedSurface:
    """Nadaraya-Watson smoother of a binary response with a product
    Gaussian kernel.  Queries with negligible total kernel weight fall
    back to the global response rate."""

    points: np.ndarray  # (n, 2)
    response: np.ndarray  # (n,) in {0, 1}
    bandwidth: tuple  # (h_x, h_y) in feet

    def __post_init__(self):
        self.points = np.asarray(self.points, dtype=float)
        self.response = np.asarray(self.response, dtype=float)
        self.global_rate = float(self.response.mean())

    def evaluate(self, x, y):
        x = np.atleast_1d(np.asarray(x, dtype=float))
        y = np.atleast_1d(np.asarray(y, dtype=float))
        hx, hy = self.bandwidth
        dx = (x[:, None] - self.points[None, :, 0]) / hx
        dy = (y[:, None] - self.points[None, :, 1]) / hy
        w = np.exp(-0.5 * (dx * dx + dy * dy))
        total = w.sum(axis=1)
        out = np.full(x.shape[0], self.global_rate)
        ok = total >= 1e-12
        out[ok] = (w[ok] @ self.response) / total[ok]
        return out

    def __call__(self, x, y):
        scalar = np.isscalar(x) and np.isscalar(y)
        vals = self.evaluate(x, y)
        return float(vals[0]) if scalar else vals


def smooth_out_probability(points, response, bandwidth):
    points = np.asarray(points, dtype=float)
    if points.shape[0] < 1:
        raise ValueError("need at least one training point")
    hx, hy = bandwidth
    if hx <= 0 or hy <= 0:
        raise ValueError("bandwidths must be positive")
    return SmoothedSurface(points=points, response=response, bandwidth=(hx, hy))


def empirical_quantiles(values, probs):
    """Type-7 (linear interpolation) order-statistic quantiles."""
    values = np.asarray(values, dtype=float)
    probs = np.asarray(probs, dtype=float)
    if values.size == 0:
        raise ValueError("empty values")
    if np.any(probs < 0) or np.any(probs > 1):
        raise ValueError("probabilities must lie in [0, 1]")
    return np.quantile(values, probs)  # numpy default is type-7


def master_rng(seed):
    """Deterministic generator for a master seed."""
    return np.random.default_rng(np.random.SeedSequence(seed))


def replicate_rng(seed, index):
    """Independent, reproducible stream for bootstrap replicate `index`."""
    return np.random.default_rng(np.random.SeedSequence(seed, spawn_key=(index,)))
