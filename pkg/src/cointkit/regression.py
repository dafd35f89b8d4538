"""Ordinary least squares via QR decomposition, with classical standard errors.

This is the numerical core under the unit-root, cointegration, and
error-correction estimators. Robust/HAC covariance is deliberately out of
scope; the tests built on top compare t-ratios against tabulations that
assume classical errors.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from cointkit.errors import DataError, DimensionMismatch, RankDeficient


@dataclass(frozen=True)
class DesignMatrix:
    """Named regressor columns stacked into an (n, k) array with n > k."""

    names: tuple[str, ...]
    data: np.ndarray

    def __post_init__(self):
        data = np.array(self.data, dtype=float)
        if data.ndim != 2:
            raise DataError("design matrix must be two-dimensional")
        n, k = data.shape
        names = tuple(self.names)
        if len(names) != k:
            raise DimensionMismatch(f"{len(names)} names for {k} columns")
        if len(set(names)) != k:
            raise DataError("column names must be unique")
        if n <= k:
            raise DataError(f"need more observations ({n}) than columns ({k})")
        if not np.all(np.isfinite(data)):
            raise DataError("design matrix contains non-finite entries")
        data.setflags(write=False)
        object.__setattr__(self, "names", names)
        object.__setattr__(self, "data", data)

    @classmethod
    def from_columns(cls, columns: Iterable[tuple[str, Sequence[float]]]) -> "DesignMatrix":
        pairs = list(columns)
        if not pairs:
            raise DataError("design matrix needs at least one column")
        arrays = [np.asarray(vals, dtype=float).ravel() for _, vals in pairs]
        lengths = {a.size for a in arrays}
        if len(lengths) != 1:
            raise DimensionMismatch(f"column lengths differ: {sorted(lengths)}")
        return cls(names=tuple(name for name, _ in pairs), data=np.column_stack(arrays))

    @property
    def nobs(self) -> int:
        return int(self.data.shape[0])

    @property
    def ncols(self) -> int:
        return int(self.data.shape[1])


@dataclass(frozen=True)
class OlsFit:
    """Coefficients, residuals, and classical inference from one OLS fit.

    ``coefficients``, ``stderrs``, and ``t_stats`` are dicts keyed by column
    name in design order. A perfect fit yields zero standard errors and
    infinite t-statistics rather than an error; callers that cannot accept
    that (the unit-root tests) screen for degeneracy themselves.
    """

    coefficients: dict[str, float]
    residuals: np.ndarray
    stderrs: dict[str, float]
    t_stats: dict[str, float]
    r_squared: float
    dof: int
    nobs: int

    def __post_init__(self):
        resid = np.asarray(self.residuals, dtype=float)
        resid.setflags(write=False)
        object.__setattr__(self, "residuals", resid)

    @property
    def column_names(self) -> tuple[str, ...]:
        return tuple(self.coefficients)

    @property
    def rss(self) -> float:
        return float(self.residuals @ self.residuals)

    def to_json_dict(self, include_residuals: bool = False) -> dict:
        out = {
            "coefficients": dict(self.coefficients),
            "stderrs": dict(self.stderrs),
            "t_stats": dict(self.t_stats),
            "r_squared": self.r_squared,
            "dof": self.dof,
            "nobs": self.nobs,
        }
        if include_residuals:
            out["residuals"] = [float(v) for v in self.residuals]
        return out


def ols_fit(y: Sequence[float], X: DesignMatrix) -> OlsFit:
    """Least squares of ``y`` on the columns of ``X``.

    Solved through a QR decomposition rather than the normal equations;
    rank is screened against tolerance n * eps * (largest column norm),
    and a dependent column is reported by name.

    Raises
    ------
    DimensionMismatch
        If ``y`` and ``X`` disagree on the number of observations.
    RankDeficient
        Naming the first column that is numerically dependent on its
        predecessors.
    """
    yv = np.asarray(y, dtype=float).ravel()
    if yv.size != X.nobs:
        raise DimensionMismatch(f"y has {yv.size} observations, design has {X.nobs}")
    if not np.all(np.isfinite(yv)):
        raise DataError("dependent variable contains non-finite entries")

    A = X.data
    n, k = A.shape
    col_norms = np.sqrt((A * A).sum(axis=0))
    tol = n * np.finfo(float).eps * float(col_norms.max())

    Q, R = np.linalg.qr(A)
    rdiag = np.abs(np.diag(R))
    weak = np.flatnonzero(rdiag <= tol)
    if weak.size:
        raise RankDeficient(X.names[int(weak[0])])

    beta = np.linalg.solve(R, Q.T @ yv)
    resid = yv - A @ beta
    rss = float(resid @ resid)
    dof = n - k
    sigma2 = rss / dof

    r_inv = np.linalg.inv(R)
    xtx_inv_diag = (r_inv * r_inv).sum(axis=1)
    se = np.sqrt(sigma2 * xtx_inv_diag)

    with np.errstate(divide="ignore", invalid="ignore"):
        tstats = np.where(se > 0.0, beta / se, np.sign(beta) * np.inf)
    tstats = np.where((se == 0.0) & (beta == 0.0), np.nan, tstats)

    has_intercept = any(np.ptp(A[:, j]) == 0.0 and A[0, j] != 0.0 for j in range(k))
    if has_intercept:
        tss = float(((yv - yv.mean()) ** 2).sum())
    else:
        tss = float((yv**2).sum())
    if tss <= tol * tol:
        r2 = 1.0 if rss <= tol * tol else 0.0
    else:
        r2 = 1.0 - rss / tss
    r2 = float(min(1.0, max(0.0, r2)))

    names = X.names
    return OlsFit(
        coefficients={nm: float(b) for nm, b in zip(names, beta)},
        residuals=resid,
        stderrs={nm: float(s) for nm, s in zip(names, se)},
        t_stats={nm: float(t) for nm, t in zip(names, tstats)},
        r_squared=r2,
        dof=dof,
        nobs=n,
    )
