"""Levels regression and error-correction (ARDL) estimation.

Two linked equations: a long-run levels regression of y on x, and a
short-run ARDL in span-``gap`` differences whose regressors are the
contemporaneous difference of x, lagged differences of both variables,
and the lagged levels residual (the error-correction term). The exact
regressor list of the second stage is recorded in ``control_manifest``
so that what-was-estimated can always be audited against
what-was-declared.

The error-correction term is only well defined when the levels pair is
actually cointegrated; estimation does not refuse to run without that
evidence (the failure mode is worth demonstrating), but the CLI prints a
caveat when a companion cointegration test cannot reject.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

import numpy as np

from cointkit.errors import SeriesTooShort, UnsupportedCombination, UsageError
from cointkit.regression import DesignMatrix, OlsFit, ols_fit
from cointkit.series import TimeSeries, align


@dataclass(frozen=True)
class EcmSpec:
    """Configuration of the error-correction / ARDL stage.

    ``seasonal_gap`` is the differencing span of the short-run equation:
    the series frequency (12 monthly, 4 quarterly) for a year-over-year
    ARDL, or 1 for a conventional one-period ECM. The error-correction
    term enters lagged by ``ect_lag`` periods; lagged differences of both
    variables enter up to ``ardl_control_lags``.
    """

    seasonal_gap: int
    ect_lag: int = 1
    ardl_control_lags: int = 1
    include_trend: bool = False

    def __post_init__(self):
        for name in ("seasonal_gap", "ect_lag", "ardl_control_lags"):
            value = int(getattr(self, name))
            if value < 1:
                raise UsageError(f"{name} must be >= 1, got {value}")
            object.__setattr__(self, name, value)
        object.__setattr__(self, "include_trend", bool(self.include_trend))

    def to_json_dict(self) -> dict:
        return {
            "seasonal_gap": self.seasonal_gap,
            "ect_lag": self.ect_lag,
            "ardl_control_lags": self.ardl_control_lags,
            "include_trend": self.include_trend,
        }


@dataclass(frozen=True)
class EcmFit:
    """Both stages of the error-correction estimation, fully itemized."""

    spec: EcmSpec
    levels_fit: OlsFit
    ect_series: TimeSeries
    ardl_fit: OlsFit
    ect_coefficient: float
    ect_t_stat: float
    control_manifest: tuple[str, ...]

    def to_json_dict(self) -> dict:
        return {
            "type": "ecm_fit",
            "spec": self.spec.to_json_dict(),
            "levels_fit": self.levels_fit.to_json_dict(),
            "ardl_fit": self.ardl_fit.to_json_dict(),
            "ect_coefficient": self.ect_coefficient,
            "ect_t_stat": self.ect_t_stat,
            "control_manifest": list(self.control_manifest),
            "ect_series": {
                "start": self.ect_series.start_label,
                "length": len(self.ect_series),
            },
        }


@dataclass(frozen=True)
class AuditReport:
    """Mismatch between a fit's actual regressors and a declared list."""

    present_but_undeclared: tuple[str, ...]
    declared_but_absent: tuple[str, ...]

    @property
    def is_clean(self) -> bool:
        return not self.present_but_undeclared and not self.declared_but_absent

    def to_json_dict(self) -> dict:
        return {
            "present_but_undeclared": list(self.present_but_undeclared),
            "declared_but_absent": list(self.declared_but_absent),
            "is_clean": self.is_clean,
        }


def estimate_levels(y: TimeSeries, x: TimeSeries, include_trend: bool = False) -> OlsFit:
    """Long-run levels regression of y on x (plus intercept, optional trend).

    With log inputs the slope is the long-run elasticity estimate. The
    control set contains nothing else by construction.
    """
    y_al, x_al = align(y, x)
    n = len(y_al)
    if n < 10:
        raise SeriesTooShort(f"levels regression needs >= 10 overlapping observations, have {n}")
    columns = [("x", x_al.values)]
    if include_trend:
        columns.append(("trend", np.arange(1, n + 1, dtype=float)))
    columns.append(("intercept", np.ones(n)))
    return ols_fit(y_al.values, DesignMatrix.from_columns(columns))


def _sdiff(values: np.ndarray, gap: int) -> np.ndarray:
    return values[gap:] - values[:-gap]


def manifest_for(spec: EcmSpec, extra_names: tuple[str, ...] = ()) -> tuple[str, ...]:
    """Regressor names of the ARDL stage, in design order."""
    gap = spec.seasonal_gap
    names = [f"s{gap}_x"]
    for j in range(1, spec.ardl_control_lags + 1):
        names.append(f"s{gap}_y_l{j}")
        names.append(f"s{gap}_x_l{j}")
    names.append(f"ect_l{spec.ect_lag}")
    names.extend(extra_names)
    if spec.include_trend:
        names.append("trend")
    names.append("intercept")
    return tuple(names)


def estimate_ecm(
    y: TimeSeries,
    x: TimeSeries,
    spec: EcmSpec,
    extra_controls: Mapping[str, TimeSeries] | None = None,
) -> EcmFit:
    """Two-stage error-correction estimation.

    Stage one is :func:`estimate_levels` on the aligned pair; its residuals,
    lagged by ``spec.ect_lag``, form the error-correction term. Stage two
    regresses the span-``gap`` difference of y on the span-``gap`` difference
    of x, lagged differences of both up to ``spec.ardl_control_lags``, the
    error-correction term, any caller-supplied extra controls, and the
    deterministic terms. Every regressor actually included is listed in the
    returned ``control_manifest``.

    ``extra_controls`` maps column names to series of the same frequency
    covering the regression sample.
    """
    y_al, x_al = align(y, x)
    gap = spec.seasonal_gap
    if gap != 1 and gap != y_al.frequency:
        raise UnsupportedCombination(
            f"seasonal_gap {gap} matches neither the series frequency ({y_al.frequency}) "
            "nor the conventional one-period form (1)"
        )

    levels_fit = estimate_levels(y_al, x_al, include_trend=spec.include_trend)
    resid = levels_fit.residuals
    n = len(y_al)

    ect_series = TimeSeries(
        start=y_al.shifted_start(spec.ect_lag),
        frequency=y_al.frequency,
        values=resid[: n - spec.ect_lag],
        lineage=(),
        name="ect",
    )

    t0 = max(gap + spec.ardl_control_lags, spec.ect_lag)
    rows = np.arange(t0, n)
    if rows.size < 10:
        raise SeriesTooShort(
            f"ARDL stage has {rows.size} effective observations after trimming; need >= 10"
        )

    sy = _sdiff(y_al.values, gap)
    sx = _sdiff(x_al.values, gap)

    def sdiff_at(diffed: np.ndarray, lag: int) -> np.ndarray:
        # diffed[i] holds the span-gap change ending at period i + gap.
        return diffed[rows - lag - gap]

    extras = dict(extra_controls or {})
    builtin = set(manifest_for(spec))
    for name in extras:
        if name in builtin:
            raise UsageError(f"extra control name {name!r} collides with a built-in regressor")

    columns: list[tuple[str, np.ndarray]] = [(f"s{gap}_x", sdiff_at(sx, 0))]
    for j in range(1, spec.ardl_control_lags + 1):
        columns.append((f"s{gap}_y_l{j}", sdiff_at(sy, j)))
        columns.append((f"s{gap}_x_l{j}", sdiff_at(sx, j)))
    columns.append((f"ect_l{spec.ect_lag}", resid[rows - spec.ect_lag]))

    base_index = y_al.start_index
    for name, series in extras.items():
        if series.frequency != y_al.frequency:
            raise UnsupportedCombination(
                f"extra control {name!r} has frequency {series.frequency}, need {y_al.frequency}"
            )
        offsets = base_index + rows - series.start_index
        if offsets.min() < 0 or offsets.max() >= len(series):
            raise SeriesTooShort(
                f"extra control {name!r} does not cover the regression sample"
            )
        columns.append((name, series.values[offsets]))

    if spec.include_trend:
        columns.append(("trend", (rows + 1).astype(float)))
    columns.append(("intercept", np.ones(rows.size)))

    ardl_fit = ols_fit(sdiff_at(sy, 0), DesignMatrix.from_columns(columns))
    ect_name = f"ect_l{spec.ect_lag}"
    return EcmFit(
        spec=spec,
        levels_fit=levels_fit,
        ect_series=ect_series,
        ardl_fit=ardl_fit,
        ect_coefficient=ardl_fit.coefficients[ect_name],
        ect_t_stat=ardl_fit.t_stats[ect_name],
        control_manifest=ardl_fit.column_names,
    )


def audit_controls(fit, declared: list[str]) -> AuditReport:
    """Compare a fit's actual regressors against a declared control list.

    Accepts an :class:`EcmFit`, an :class:`OlsFit`, or any iterable of
    column names. The report is empty exactly when the two sets match;
    ordering never matters.
    """
    if isinstance(fit, EcmFit):
        actual = list(fit.control_manifest)
    elif isinstance(fit, OlsFit):
        actual = list(fit.column_names)
    else:
        actual = [str(name) for name in fit]
    declared_list = [str(name) for name in declared]
    declared_set = set(declared_list)
    actual_set = set(actual)
    return AuditReport(
        present_but_undeclared=tuple(n for n in actual if n not in declared_set),
        declared_but_absent=tuple(n for n in declared_list if n not in actual_set),
    )
