"""Augmented Dickey-Fuller unit-root testing.

The test regresses the first difference of a series on its lagged level,
caller-chosen deterministic terms, and ``lags`` lagged differences; the
statistic is the t-ratio on the lagged level. Lag order is always
caller-specified: the workflows built on top treat the lag count as part
of the reported specification, never as a fitted quantity.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from cointkit.critvals import (
    LEVELS,
    MIN_N,
    SOURCE_ID,
    DeterministicSpec,
    critical_value,
)
from cointkit.errors import DegenerateInput, SeriesTooShort, UsageError
from cointkit.regression import DesignMatrix, OlsFit, ols_fit
from cointkit.series import TimeSeries

MIN_EFFECTIVE_SAMPLE = 10

LEVEL_COLUMN = "level_lag1"


@dataclass(frozen=True)
class UnitRootReport:
    """Outcome of one ADF run: statistic, configuration, and decisions."""

    statistic: float
    lags: int
    det: DeterministicSpec
    n_effective: int
    critical_values: dict[int, float]
    reject_at: dict[int, bool]
    cv_source: str = SOURCE_ID

    def to_json_dict(self) -> dict:
        return {
            "type": "unit_root_report",
            "statistic": self.statistic,
            "lags": self.lags,
            "deterministic": self.det.label(),
            "n_effective": self.n_effective,
            "critical_values": {str(l): self.critical_values[l] for l in LEVELS},
            "reject_at": {str(l): self.reject_at[l] for l in LEVELS},
            "cv_source": self.cv_source,
        }


def _degenerate(values: np.ndarray, dx_resid: np.ndarray) -> bool:
    scale = max(1.0, float(np.abs(values).max()))
    return float(np.abs(dx_resid).max(initial=0.0)) <= 1e-12 * scale


def adf_regression(values: np.ndarray, lags: int, det: DeterministicSpec) -> tuple[float, int, OlsFit]:
    """ADF statistic, effective sample size, and the underlying fit.

    Operates on a bare value array so the cointegration stage-two test can
    reuse it on regression residuals.
    """
    x = np.asarray(values, dtype=float).ravel()
    lags = int(lags)
    if lags < 0:
        raise UsageError(f"lags must be >= 0, got {lags}")
    n_eff = x.size - 1 - lags
    if n_eff < MIN_EFFECTIVE_SAMPLE:
        raise SeriesTooShort(
            f"effective sample {n_eff} after differencing and {lags} lags; need >= {MIN_EFFECTIVE_SAMPLE}"
        )

    dx = np.diff(x)
    y = dx[lags:]

    # Zero innovation variance (e.g. an exact deterministic path) must fail
    # typed, not produce an unbounded t-ratio or a spurious rank error.
    probe = y
    if det.constant:
        probe = probe - probe.mean()
    if det.trend:
        t_probe = np.arange(probe.size, dtype=float)
        t_probe = t_probe - t_probe.mean()
        denom = float(t_probe @ t_probe)
        if denom > 0.0:
            probe = probe - (probe @ t_probe) / denom * t_probe
    if _degenerate(x, probe):
        raise DegenerateInput()

    columns = [(LEVEL_COLUMN, x[lags:-1])]
    for i in range(1, lags + 1):
        columns.append((f"diff_lag{i}", dx[lags - i : dx.size - i]))
    if det.constant:
        columns.append(("intercept", np.ones(n_eff)))
    if det.trend:
        # Indexed by position in the input series; the intercept absorbs the offset.
        columns.append(("trend", np.arange(lags + 1, x.size, dtype=float)))

    fit = ols_fit(y, DesignMatrix.from_columns(columns))
    if _degenerate(x, fit.residuals):
        raise DegenerateInput()
    return fit.t_stats[LEVEL_COLUMN], n_eff, fit


def adf_test(x: TimeSeries, lags: int, det: DeterministicSpec) -> UnitRootReport:
    """Augmented Dickey-Fuller test on a series.

    Parameters
    ----------
    x : TimeSeries
        Input series; needs at least ``lags`` + 11 observations so the
        effective sample is >= 10.
    lags : int
        Number of lagged differences included; never chosen automatically.
    det : DeterministicSpec
        Deterministic terms of the test regression.

    Returns
    -------
    UnitRootReport
        With one-variable critical values; for samples below the table's
        minimum the surface is evaluated at its smallest supported size.
    """
    stat, n_eff, _ = adf_regression(x.values, lags, det)
    cvs = {level: critical_value(1, max(n_eff, MIN_N), level, det) for level in LEVELS}
    return UnitRootReport(
        statistic=stat,
        lags=int(lags),
        det=det,
        n_effective=n_eff,
        critical_values=cvs,
        reject_at={level: stat < cvs[level] for level in LEVELS},
    )
