"""Econometric validation on synthetic data.

Three checks mirror how stance scores would be validated against real
policy outcomes: an ordered-logit policy reaction function (do lagged
scores predict tighten/hold/loosen decisions?), a Granger-causality test
(do scores lead the policy rate?), and OLS with HC1 robust errors (do
scores track market expectations?). Real corpora and outcome data slot in
through the same ScoreSeries and outcomes-table interfaces.
"""

import datetime as dt

import numpy as np

from hawkdove.econ import (
    build_design,
    fit_ols_hc1,
    fit_ordered_logit,
    format_fit_table,
    granger_test,
)
from hawkdove.scoring import ScorePoint, ScoreSeries

rng = np.random.default_rng(20240514)

# Synthetic world: a latent policy tilt drives both document scores and
# decisions, so lagged scores should predict the outcome.
n_meetings = 160
tilt = np.cumsum(rng.normal(scale=0.3, size=n_meetings))
dates = [dt.date(2010, 1, 15) + dt.timedelta(days=35 * i) for i in range(n_meetings)]

minutes = ScoreSeries.build(
    [
        ScorePoint(d - dt.timedelta(days=14), f"mins-{i}", "minutes", tilt[i] + rng.normal(scale=0.4))
        for i, d in enumerate(dates)
    ]
)
statements = ScoreSeries.build(
    [
        ScorePoint(d - dt.timedelta(days=7), f"stmt-{i}", "statement", tilt[i] + rng.normal(scale=0.4))
        for i, d in enumerate(dates)
    ]
)
outcomes = []
for i, d in enumerate(dates):
    z = tilt[i] + rng.logistic(scale=0.8)
    outcomes.append({"date": d, "outcome": -1 if z < -0.7 else (1 if z > 0.7 else 0),
                     "cpi_forecast": 2.5 + 0.5 * tilt[i] + rng.normal(scale=0.3)})

design = build_design({"mins": minutes, "stmt": statements}, outcomes)
print(f"design matrix: {design.n} rows, {design.n_dropped} dropped, columns {design.column_names}\n")

fit = fit_ordered_logit(design, list(design.outcome))
print("ordered logit reaction function (loosening < hold < tightening):")
print(format_fit_table(fit))

# Granger: does the minutes score lead a policy-rate-like series?
rate = np.cumsum(np.clip(tilt, -1, 1) * 0.25)
granger = granger_test(minutes.scores(), list(rate), lags=2)
print(f"\nGranger test (minutes score -> rate): F = {granger.f_stat:.2f}, p = {granger.p_value:.2g}")

# OLS with HC1 errors: market-expectation style regression.
expectations = 0.8 * np.asarray(minutes.scores()) + rng.normal(scale=0.5, size=n_meetings)
ols = fit_ols_hc1(np.asarray(minutes.scores())[:, None], expectations, column_names=["hds_mins"])
print("\nOLS of expectations on the minutes score (HC1 errors):")
print(format_fit_table(ols))
