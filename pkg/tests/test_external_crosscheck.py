"""Optional agreement checks against statsmodels, when it is installed.

The package never imports statsmodels; these tests only pin down that an
independent implementation computes the same regressions and tables.
"""

import numpy as np
import pytest

import cointkit as ck

st = pytest.importorskip("statsmodels.tsa.stattools")


def test_adf_statistic_matches_statsmodels():
    rng = np.random.default_rng(123)
    x = np.cumsum(rng.standard_normal(250))
    series = ck.TimeSeries((2000, 1), 12, x)
    cases = (
        ("c", ck.DeterministicSpec.constant_only()),
        ("ct", ck.DeterministicSpec.constant_trend()),
        ("n", ck.DeterministicSpec.none()),
    )
    for lags in (0, 3, 12):
        for reg, det in cases:
            theirs = st.adfuller(x, maxlag=lags, regression=reg, autolag=None)[0]
            mine = ck.adf_test(series, lags, det).statistic
            assert mine == pytest.approx(theirs, abs=1e-10)


def test_engle_granger_matches_statsmodels_coint():
    rng = np.random.default_rng(124)
    x = np.cumsum(rng.standard_normal(250))
    y = np.cumsum(rng.standard_normal(250))
    theirs_t, _, theirs_cv = st.coint(x, y, trend="c", maxlag=0, autolag=None)
    mine = ck.engle_granger_test(
        ck.TimeSeries((2000, 1), 12, x),
        ck.TimeSeries((2000, 1), 12, y),
        ck.EgSpec("untransformed", "first", 0, False),
    )
    assert mine.statistic == pytest.approx(theirs_t, abs=1e-10)
    for level, theirs in zip((1, 5, 10), theirs_cv):
        assert mine.critical_values[level] == pytest.approx(theirs, abs=1e-10)
