"""Econometric validation kit.

Three estimators used to check that stance scores carry economic signal:

* proportional-odds ordered logistic regression (policy reaction function),
  fit by Newton's method with step-halving on the exact log-likelihood;
* OLS with HC1 heteroskedasticity-robust standard errors (market
  expectation regressions);
* a Granger-causality F-test (do score lags help predict the policy rate?).

The ordered logit models P(y <= k | x) = logistic(c_k - x'b) with strictly
increasing cutpoints c_1 < ... < c_{K-1}. During optimization the
cutpoints are parameterized as c_1 plus log-transformed positive
increments so the ordering constraint can never be violated. Standard
errors come from the observed information matrix at the optimum.
"""

from __future__ import annotations

import csv
import datetime as dt
import io
import json
import math
from dataclasses import dataclass, field
from typing import Mapping, Sequence

import numpy as np
from scipy.special import expit
from scipy.stats import f as f_dist
from scipy.stats import norm

from .scoring import ScoreSeries


class EconError(Exception):
    pass


class RankDeficiencyError(EconError):
    pass


class ConvergenceError(EconError):
    pass


class SeparationError(EconError):
    """The likelihood appears unbounded (perfectly separating regressor)."""


class InsufficientDataError(EconError):
    pass


@dataclass(frozen=True)
class DesignMatrix:
    """Named regressor columns; no missing values by construction."""

    column_names: tuple[str, ...]
    X: np.ndarray
    outcome: np.ndarray | None = None
    dates: tuple[dt.date, ...] = ()
    n_dropped: int = 0

    def __post_init__(self) -> None:
        if self.X.ndim != 2:
            raise ValueError("X must be 2-dimensional")
        if self.X.shape[1] != len(self.column_names):
            raise ValueError("column_names length must match X columns")
        if len(set(self.column_names)) != len(self.column_names):
            raise ValueError("column names must be unique")
        if not np.all(np.isfinite(self.X)):
            raise ValueError("X contains non-finite values")

    @property
    def n(self) -> int:
        return self.X.shape[0]


# ---------------------------------------------------------------------------
# Ordered logistic regression


def _encode_levels(y: Sequence) -> tuple[np.ndarray, list]:
    levels = sorted({v.item() if isinstance(v, np.generic) else v for v in y})
    if len(levels) < 2:
        raise ValueError("outcomes need at least 2 levels")
    mapping = {lev: i for i, lev in enumerate(levels)}
    return np.array([mapping[v.item() if isinstance(v, np.generic) else v] for v in y], dtype=int), levels


def _cut_bounds(codes: np.ndarray, cuts: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Upper and lower cutpoints per observation (+-inf at the ends)."""
    ext = np.concatenate(([-np.inf], cuts, [np.inf]))
    return ext[codes + 1], ext[codes]


def ordered_logit_loglik(X: np.ndarray, codes: np.ndarray, beta: np.ndarray, cuts: np.ndarray) -> float:
    """Proportional-odds log-likelihood; codes are 0-based category indices."""
    eta = X @ beta if X.size else np.zeros(len(codes))
    hi, lo = _cut_bounds(codes, cuts)
    p = expit(hi - eta) - expit(lo - eta)
    if np.any(p <= 0):
        return -np.inf
    return float(np.sum(np.log(p)))


def ordered_logit_gradient(
    X: np.ndarray, codes: np.ndarray, beta: np.ndarray, cuts: np.ndarray
) -> tuple[np.ndarray, np.ndarray]:
    """Analytic gradient of the log-likelihood w.r.t. (beta, cutpoints)."""
    n, p = X.shape if X.size else (len(codes), 0)
    eta = X @ beta if p else np.zeros(n)
    hi, lo = _cut_bounds(codes, cuts)
    a, b = hi - eta, lo - eta
    sa, sb = expit(a), expit(b)
    prob = sa - sb
    fa = np.where(np.isfinite(a), sa * (1 - sa), 0.0)
    fb = np.where(np.isfinite(b), sb * (1 - sb), 0.0)
    u, v = fa / prob, fb / prob
    grad_beta = -X.T @ (u - v) if p else np.zeros(0)
    k_cuts = len(cuts)
    grad_cuts = np.zeros(k_cuts)
    for k in range(k_cuts):
        grad_cuts[k] = np.sum(u[codes == k]) - np.sum(v[codes == k + 1])
    return grad_beta, grad_cuts


def _ordered_logit_hessian(
    X: np.ndarray, codes: np.ndarray, beta: np.ndarray, cuts: np.ndarray
) -> np.ndarray:
    """Observed Hessian of the log-likelihood w.r.t. (beta, cutpoints)."""
    n = len(codes)
    p = X.shape[1] if X.size else 0
    kc = len(cuts)
    m = p + kc
    eta = X @ beta if p else np.zeros(n)
    hi, lo = _cut_bounds(codes, cuts)
    a, b = hi - eta, lo - eta
    sa, sb = expit(a), expit(b)
    prob = sa - sb
    fa = np.where(np.isfinite(a), sa * (1 - sa), 0.0)
    fb = np.where(np.isfinite(b), sb * (1 - sb), 0.0)
    dfa = np.where(np.isfinite(a), fa * (1 - 2 * sa), 0.0)
    dfb = np.where(np.isfinite(b), fb * (1 - 2 * sb), 0.0)
    u, v = fa / prob, fb / prob
    # Per-observation 2x2 Hessian in (a, b):
    A = dfa / prob - u * u
    B = -dfb / prob - v * v
    C = u * v

    H = np.zeros((m, m))
    if p:
        w_bb = A + B + 2 * C  # both a and b move by -x under beta
        H[:p, :p] = X.T @ (w_bb[:, None] * X)
    hi_idx = np.where(codes <= kc - 1, codes, -1)  # c-index entering a, -1 if +inf
    lo_idx = codes - 1  # c-index entering b, -1 if -inf
    for k in range(kc):
        mask_hi = hi_idx == k
        mask_lo = lo_idx == k
        if p:
            col = np.zeros(p)
            if np.any(mask_hi):
                col -= X[mask_hi].T @ (A[mask_hi] + C[mask_hi])
            if np.any(mask_lo):
                col -= X[mask_lo].T @ (B[mask_lo] + C[mask_lo])
            H[:p, p + k] = col
            H[p + k, :p] = col
        H[p + k, p + k] = np.sum(A[mask_hi]) + np.sum(B[mask_lo])
        if k + 1 < kc:
            cross = np.sum(C[(hi_idx == k + 1) & (lo_idx == k)])
            # same obs has a at c_{k+1} and b at c_k
            H[p + k, p + k + 1] += cross
            H[p + k + 1, p + k] += cross
    return H


def _cuts_from_increments(t: np.ndarray) -> np.ndarray:
    """c_1 = t_0; c_j = c_{j-1} + exp(t_j): always strictly increasing."""
    cuts = np.empty(len(t))
    cuts[0] = t[0]
    cuts[1:] = np.exp(t[1:])
    return np.cumsum(cuts)


def _increments_from_cuts(cuts: np.ndarray) -> np.ndarray:
    t = np.empty(len(cuts))
    t[0] = cuts[0]
    t[1:] = np.log(np.diff(cuts))
    return t


@dataclass(frozen=True)
class OrdinalFit:
    coefficients: dict[str, float]
    cutpoints: tuple[float, ...]
    std_errors: dict[str, float]
    cutpoint_std_errors: tuple[float, ...]
    odds_ratios: dict[str, float]
    p_values: dict[str, float]
    log_likelihood: float
    aic: float
    n: int
    levels: tuple
    accuracy: float
    baseline_accuracy: float
    n_iter: int
    loglik_trace: tuple[float, ...] = field(repr=False, default=())

    def to_dict(self) -> dict:
        return {
            "model": "ordered_logit",
            "n": self.n,
            "levels": list(self.levels),
            "coefficients": self.coefficients,
            "std_errors": self.std_errors,
            "odds_ratios": self.odds_ratios,
            "p_values": self.p_values,
            "cutpoints": list(self.cutpoints),
            "cutpoint_std_errors": list(self.cutpoint_std_errors),
            "log_likelihood": self.log_likelihood,
            "aic": self.aic,
            "accuracy": self.accuracy,
            "baseline_accuracy": self.baseline_accuracy,
        }


def ordered_logit_probs(X: np.ndarray, beta: np.ndarray, cuts: np.ndarray) -> np.ndarray:
    """n x K matrix of category probabilities."""
    n = X.shape[0]
    eta = X @ beta if X.size else np.zeros(n)
    ext = np.concatenate(([-np.inf], cuts, [np.inf]))
    cum = expit(ext[None, :] - eta[:, None])
    return np.diff(cum, axis=1)


def fit_ordered_logit(
    X: DesignMatrix | np.ndarray,
    y: Sequence,
    *,
    max_iter: int = 200,
    tol: float = 1e-8,
    column_names: Sequence[str] | None = None,
) -> OrdinalFit:
    """Maximum-likelihood proportional-odds fit.

    Newton iterations with step-halving; converged when the gradient
    max-norm drops below ``tol``. Raises ConvergenceError after
    ``max_iter`` iterations and SeparationError when coefficients run away
    (unbounded likelihood).
    """
    if isinstance(X, DesignMatrix):
        names = list(X.column_names)
        Xa = np.asarray(X.X, dtype=float)
    else:
        Xa = np.asarray(X, dtype=float)
        if Xa.size and Xa.ndim != 2:
            raise ValueError("X must be 2-dimensional")
        if Xa.ndim != 2:
            Xa = Xa.reshape(len(y), 0)
        names = list(column_names) if column_names else [f"x{i}" for i in range(Xa.shape[1])]
    codes, levels = _encode_levels(y)
    n, p = Xa.shape
    K = len(levels)
    counts = np.bincount(codes, minlength=K)
    if np.any(counts == 0):
        raise ValueError("every outcome level must occur at least once")
    if n <= p + K - 1:
        raise InsufficientDataError(f"n={n} too small for {p + K - 1} parameters")

    # Start at beta = 0, cutpoints at the logits of cumulative frequencies.
    cumfreq = np.cumsum(counts)[:-1] / n
    cuts = np.log(cumfreq / (1 - cumfreq))
    beta = np.zeros(p)
    t = np.concatenate((beta, _increments_from_cuts(cuts)))

    def unpack(tv: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        return tv[:p], _cuts_from_increments(tv[p:])

    def loglik_t(tv: np.ndarray) -> float:
        b, c = unpack(tv)
        return ordered_logit_loglik(Xa, codes, b, c)

    def grad_hess_t(tv: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        b, c = unpack(tv)
        gb, gc = ordered_logit_gradient(Xa, codes, b, c)
        H = _ordered_logit_hessian(Xa, codes, b, c)
        kc = len(c)
        # Jacobian of c w.r.t. the transformed cut parameters.
        J = np.zeros((kc, kc))
        J[:, 0] = 1.0
        for m_ in range(1, kc):
            J[m_:, m_] = np.exp(tv[p + m_])
        g_t = np.concatenate((gb, J.T @ gc))
        Jfull = np.zeros((p + kc, p + kc))
        Jfull[:p, :p] = np.eye(p)
        Jfull[p:, p:] = J
        H_t = Jfull.T @ H @ Jfull
        # Curvature of the reparameterization itself.
        for m_ in range(1, kc):
            H_t[p + m_, p + m_] += np.sum(gc[m_:]) * np.exp(tv[p + m_])
        return g_t, H_t

    ll = loglik_t(t)
    trace = [ll]
    n_iter = 0
    converged = False
    for n_iter in range(1, max_iter + 1):
        g, H = grad_hess_t(t)
        if np.max(np.abs(g)) < tol:
            converged = True
            n_iter -= 1
            break
        try:
            step = np.linalg.solve(-H, g)
        except np.linalg.LinAlgError:
            step = np.linalg.lstsq(-H + 1e-8 * np.eye(len(t)), g, rcond=None)[0]
        if not np.all(np.isfinite(step)):
            raise ConvergenceError("Newton step is not finite")
        alpha = 1.0
        improved = False
        for _ in range(40):
            cand = t + alpha * step
            ll_new = loglik_t(cand)
            if np.isfinite(ll_new) and ll_new >= ll:
                t, ll = cand, ll_new
                improved = True
                break
            alpha /= 2
        trace.append(ll)
        if not improved:
            # Gradient numerically flat in the step direction: accept as
            # converged if it is small, otherwise report failure.
            if np.max(np.abs(g)) < 1e-5:
                converged = True
                break
            raise ConvergenceError("step-halving failed to improve the likelihood")
        if p and np.max(np.abs(t[:p])) > 50:
            raise SeparationError(
                "coefficients diverging; data appear separated (unbounded likelihood)"
            )
    if not converged:
        g, _ = grad_hess_t(t)
        if np.max(np.abs(g)) >= tol:
            raise ConvergenceError(f"no convergence after {max_iter} iterations")

    beta, cuts = unpack(t)
    H_nat = _ordered_logit_hessian(Xa, codes, beta, cuts)
    try:
        cov = np.linalg.inv(-H_nat)
    except np.linalg.LinAlgError as exc:
        raise ConvergenceError(f"observed information not invertible: {exc}") from exc
    ses = np.sqrt(np.clip(np.diag(cov), 0, None))

    probs = ordered_logit_probs(Xa, beta, cuts)
    predicted = np.argmax(probs, axis=1)
    accuracy = float(np.mean(predicted == codes))
    baseline = float(np.max(counts) / n)
    n_params = p + K - 1
    zs = beta / np.where(ses[:p] > 0, ses[:p], np.nan) if p else np.zeros(0)
    pvals = 2 * norm.sf(np.abs(zs)) if p else np.zeros(0)
    return OrdinalFit(
        coefficients={name: float(b) for name, b in zip(names, beta)},
        cutpoints=tuple(float(c) for c in cuts),
        std_errors={name: float(s) for name, s in zip(names, ses[:p])},
        cutpoint_std_errors=tuple(float(s) for s in ses[p:]),
        odds_ratios={name: math.exp(float(b)) for name, b in zip(names, beta)},
        p_values={name: float(pv) for name, pv in zip(names, pvals)},
        log_likelihood=float(ll),
        aic=2 * n_params - 2 * float(ll),
        n=n,
        levels=tuple(levels),
        accuracy=accuracy,
        baseline_accuracy=baseline,
        n_iter=n_iter,
        loglik_trace=tuple(trace),
    )


# ---------------------------------------------------------------------------
# OLS with HC1 robust standard errors


@dataclass(frozen=True)
class OlsFit:
    coefficients: dict[str, float]
    std_errors: dict[str, float]  # HC1
    p_values: dict[str, float]
    residuals: np.ndarray
    log_likelihood: float
    aic: float
    n: int
    k: int
    r_squared: float

    def to_dict(self) -> dict:
        return {
            "model": "ols_hc1",
            "n": self.n,
            "coefficients": self.coefficients,
            "std_errors": self.std_errors,
            "p_values": self.p_values,
            "log_likelihood": self.log_likelihood,
            "aic": self.aic,
            "r_squared": self.r_squared,
        }


def fit_ols_hc1(X: DesignMatrix | np.ndarray, y: Sequence[float], *, column_names: Sequence[str] | None = None) -> OlsFit:
    """Least squares with an automatic intercept and HC1 robust covariance.

    HC1: (n / (n - k)) (X'X)^-1 X' diag(e^2) X (X'X)^-1. AIC comes from the
    Gaussian likelihood with the ML variance estimate (k + 1 parameters).
    """
    if isinstance(X, DesignMatrix):
        names = list(X.column_names)
        Xa = np.asarray(X.X, dtype=float)
    else:
        Xa = np.asarray(X, dtype=float)
        if Xa.ndim == 1:
            Xa = Xa[:, None]
        names = list(column_names) if column_names else [f"x{i}" for i in range(Xa.shape[1])]
    yv = np.asarray(y, dtype=float)
    n = len(yv)
    if Xa.shape[0] != n:
        raise ValueError("X and y disagree on n")
    Z = np.column_stack((np.ones(n), Xa))
    names = ["intercept"] + names
    k = Z.shape[1]
    if n <= k:
        raise InsufficientDataError(f"n={n} too small for {k} coefficients")
    if np.linalg.matrix_rank(Z) < k:
        raise RankDeficiencyError("design matrix is rank deficient")
    beta, *_ = np.linalg.lstsq(Z, yv, rcond=None)
    resid = yv - Z @ beta
    ssr = float(resid @ resid)
    xtx_inv = np.linalg.inv(Z.T @ Z)
    meat = Z.T @ (resid[:, None] ** 2 * Z)
    cov = n / (n - k) * xtx_inv @ meat @ xtx_inv
    ses = np.sqrt(np.clip(np.diag(cov), 0, None))
    sigma2 = ssr / n
    if sigma2 <= 0:
        ll = math.inf
        aic = -math.inf
    else:
        ll = -0.5 * n * (math.log(2 * math.pi * sigma2) + 1)
        aic = 2 * (k + 1) - 2 * ll
    tss = float(np.sum((yv - yv.mean()) ** 2))
    zs = np.divide(beta, ses, out=np.full(k, np.nan), where=ses > 0)
    pvals = 2 * norm.sf(np.abs(zs))
    return OlsFit(
        coefficients={name: float(b) for name, b in zip(names, beta)},
        std_errors={name: float(s) for name, s in zip(names, ses)},
        p_values={name: float(pv) for name, pv in zip(names, pvals)},
        residuals=resid,
        log_likelihood=float(ll),
        aic=float(aic),
        n=n,
        k=k,
        r_squared=(1 - ssr / tss) if tss > 0 else float("nan"),
    )


# ---------------------------------------------------------------------------
# Granger causality


@dataclass(frozen=True)
class GrangerResult:
    lags: int
    f_stat: float
    p_value: float
    n_effective: int

    def to_dict(self) -> dict:
        return {
            "lags": self.lags,
            "f_stat": self.f_stat,
            "p_value": self.p_value,
            "n_effective": self.n_effective,
        }


def _lag_matrix(series: np.ndarray, lags: int) -> np.ndarray:
    rows = len(series) - lags
    return np.column_stack([series[lags - j - 1 : lags - j - 1 + rows] for j in range(lags)])


def granger_test(x: Sequence[float], y: Sequence[float], lags: int) -> GrangerResult:
    """Does the history of x improve one-step forecasts of y?

    Compares y on its own lags 1..L (restricted) against the same plus x
    lags 1..L (unrestricted) with the standard F statistic on
    (L, n_eff - 2L - 1) degrees of freedom, n_eff = n - L.
    """
    xv = np.asarray(x, dtype=float)
    yv = np.asarray(y, dtype=float)
    if len(xv) != len(yv):
        raise ValueError("series must have equal length")
    if lags < 1:
        raise ValueError("lags must be >= 1")
    n = len(yv)
    n_eff = n - lags
    df2 = n_eff - 2 * lags - 1
    if df2 < 1:
        raise InsufficientDataError(f"need n_eff - 2*lags - 1 >= 1, got {df2}")
    target = yv[lags:]
    ylags = _lag_matrix(yv, lags)
    xlags = _lag_matrix(xv, lags)
    ones = np.ones((n_eff, 1))
    Zr = np.hstack((ones, ylags))
    Zu = np.hstack((ones, ylags, xlags))

    def ssr(Z: np.ndarray) -> float:
        coef, *_ = np.linalg.lstsq(Z, target, rcond=None)
        r = target - Z @ coef
        return float(r @ r)

    ssr_r, ssr_u = ssr(Zr), ssr(Zu)
    num = max(ssr_r - ssr_u, 0.0)
    if ssr_u <= 0:
        f_stat = math.inf if num > 0 else 0.0
    else:
        f_stat = (num / lags) / (ssr_u / df2)
    p_value = float(f_dist.sf(f_stat, lags, df2)) if math.isfinite(f_stat) else 0.0
    return GrangerResult(lags=lags, f_stat=float(f_stat), p_value=p_value, n_effective=n_eff)


# ---------------------------------------------------------------------------
# Design matrix construction from score series


def build_design(
    series: Mapping[str, ScoreSeries],
    outcomes: Sequence[Mapping],
    *,
    max_lag: int = 2,
) -> DesignMatrix:
    """Attach lagged document scores to each decision event.

    For every outcome row (a ``date`` plus an ``outcome`` and optional
    numeric forecast columns), lag j of series ``name`` (column
    ``hds_<name>_lag<j>``) is the score of the j-th most recent document
    strictly before the decision date. Rows missing any lag are dropped and
    counted in ``n_dropped``.
    """
    if not outcomes:
        raise ValueError("outcomes table is empty")
    extra_cols = [k for k in outcomes[0].keys() if k not in ("date", "outcome")]
    lag_cols = [f"hds_{name}_lag{j}" for name in series for j in range(1, max_lag + 1)]
    columns = lag_cols + extra_cols

    rows = []
    kept_outcomes = []
    kept_dates = []
    dropped = 0
    for row in sorted(outcomes, key=lambda r: r["date"]):
        date = row["date"]
        if not isinstance(date, dt.date):
            date = dt.date.fromisoformat(str(date))
        values: list[float] = []
        ok = True
        for name, s in series.items():
            prior = [p for p in s.points if p.date < date]
            if len(prior) < max_lag:
                ok = False
                break
            for j in range(1, max_lag + 1):
                values.append(prior[-j].score)
        if ok:
            for col in extra_cols:
                v = row.get(col)
                if v is None or (isinstance(v, float) and math.isnan(v)):
                    ok = False
                    break
                values.append(float(v))
        if not ok:
            dropped += 1
            continue
        rows.append(values)
        kept_outcomes.append(row["outcome"])
        kept_dates.append(date)
    if not rows:
        raise InsufficientDataError("every outcome row was dropped for missing lags")
    return DesignMatrix(
        column_names=tuple(columns),
        X=np.array(rows, dtype=float),
        outcome=np.array(kept_outcomes),
        dates=tuple(kept_dates),
        n_dropped=dropped,
    )


def load_outcomes_csv(text: str) -> list[dict]:
    """Parse ``date,outcome[,extra numeric columns...]`` rows."""
    reader = csv.DictReader(io.StringIO(text))
    if reader.fieldnames is None or "date" not in reader.fieldnames or "outcome" not in reader.fieldnames:
        raise EconError("outcomes CSV needs 'date' and 'outcome' columns")
    rows = []
    for raw in reader:
        row: dict = {"date": dt.date.fromisoformat(raw["date"])}
        try:
            row["outcome"] = int(raw["outcome"])
        except ValueError:
            try:
                row["outcome"] = float(raw["outcome"])
            except ValueError:
                row["outcome"] = raw["outcome"]
        for key, value in raw.items():
            if key in ("date", "outcome"):
                continue
            row[key] = float(value)
        rows.append(row)
    return rows


def format_fit_table(fit: OrdinalFit | OlsFit) -> str:
    """Aligned plain-text summary table."""
    lines = []
    if isinstance(fit, OrdinalFit):
        header = f"{'regressor':<24}{'estimate':>12}{'std err':>12}{'odds ratio':>12}{'p':>10}"
        lines.append(header)
        lines.append("-" * len(header))
        for name in fit.coefficients:
            lines.append(
                f"{name:<24}{fit.coefficients[name]:>12.4f}{fit.std_errors[name]:>12.4f}"
                f"{fit.odds_ratios[name]:>12.4f}{fit.p_values[name]:>10.3g}"
            )
        for i, (c, s) in enumerate(zip(fit.cutpoints, fit.cutpoint_std_errors), start=1):
            lines.append(f"{f'cutpoint {i}':<24}{c:>12.4f}{s:>12.4f}{'':>12}{'':>10}")
        lines.append(
            f"n={fit.n}  loglik={fit.log_likelihood:.2f}  AIC={fit.aic:.2f}  "
            f"accuracy={fit.accuracy:.1%} (baseline {fit.baseline_accuracy:.1%})"
        )
    else:
        header = f"{'regressor':<24}{'estimate':>12}{'HC1 SE':>12}{'p':>10}"
        lines.append(header)
        lines.append("-" * len(header))
        for name in fit.coefficients:
            lines.append(
                f"{name:<24}{fit.coefficients[name]:>12.4f}{fit.std_errors[name]:>12.4f}"
                f"{fit.p_values[name]:>10.3g}"
            )
        lines.append(f"n={fit.n}  R2={fit.r_squared:.4f}  AIC={fit.aic:.2f}")
    return "\n".join(lines)


def fit_to_json(fit: OrdinalFit | OlsFit | GrangerResult) -> str:
    return json.dumps(fit.to_dict(), indent=2) + "\n"
