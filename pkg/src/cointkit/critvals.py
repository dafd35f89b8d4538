"""Finite-sample critical values from the MacKinnon (2010) response surfaces.

Each tabulated cell gives coefficients (b0, b1, b2, b3) of

    cv(n) = b0 + b1/n + b2/n^2 + b3/n^3

where ``b0`` is the asymptotic critical value and ``n`` the effective
sample size of the test regression. Surfaces are keyed by the number of
I(1) variables ``k`` (1 for a plain unit-root test, 2 for a two-variable
cointegration residual test), the deterministic terms of the regression
whose distribution is being tabulated, and the test level in percent.

Reference: MacKinnon, J.G. (2010), "Critical Values for Cointegration
Tests", Queen's Economics Department Working Paper 1227. The
no-deterministics column retains his 1996 numbers, which were not
re-estimated in 2010 and exist only for k = 1.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

from cointkit.errors import UnsupportedCombination, UsageError

SOURCE_ID = "mackinnon-2010"
LEVELS = (1, 5, 10)

MIN_K = 1
MAX_K = 6
MIN_N = 20


@dataclass(frozen=True)
class DeterministicSpec:
    """Deterministic terms of a test regression: intercept and/or linear trend."""

    constant: bool
    trend: bool

    def __post_init__(self):
        if self.trend and not self.constant:
            raise UsageError("a trend term requires a constant term")

    @classmethod
    def none(cls) -> "DeterministicSpec":
        return cls(constant=False, trend=False)

    @classmethod
    def constant_only(cls) -> "DeterministicSpec":
        return cls(constant=True, trend=False)

    @classmethod
    def constant_trend(cls) -> "DeterministicSpec":
        return cls(constant=True, trend=True)

    @property
    def key(self) -> str:
        if self.trend:
            return "ct"
        return "c" if self.constant else "n"

    def label(self) -> str:
        return {"n": "none", "c": "constant", "ct": "constant+trend"}[self.key]

    @classmethod
    def from_label(cls, label: str) -> "DeterministicSpec":
        table = {
            "none": cls.none(),
            "constant": cls.constant_only(),
            "constant-trend": cls.constant_trend(),
            "constant+trend": cls.constant_trend(),
        }
        if label not in table:
            raise UsageError(f"unknown deterministic spec {label!r}")
        return table[label]


# (det key, k, level) -> (b0, b1, b2, b3)
_SURFACE: dict[tuple[str, int, int], tuple[float, float, float, float]] = {}


def _load(det: str, rows: list[tuple[tuple[float, float, float, float], ...]]) -> None:
    for k, row in enumerate(rows, start=1):
        for level, coeffs in zip(LEVELS, row):
            _SURFACE[(det, k, level)] = coeffs


_load(
    "c",
    [
        ((-3.43035, -6.5393, -16.786, -79.433),
         (-2.86154, -2.8903, -4.234, -40.040),
         (-2.56677, -1.5384, -2.809, 0.0)),
        ((-3.89644, -10.9519, -33.527, 0.0),
         (-3.33613, -6.1101, -6.823, 0.0),
         (-3.04445, -4.2412, -2.720, 0.0)),
        ((-4.29374, -14.4354, -33.195, 47.433),
         (-3.74066, -8.5632, -10.852, 27.982),
         (-3.45218, -6.2143, -3.718, 0.0)),
        ((-4.64332, -18.1031, -37.972, 0.0),
         (-4.09600, -11.2349, -11.175, 0.0),
         (-3.81020, -8.3931, -4.137, 0.0)),
        ((-4.95756, -21.8883, -45.142, 0.0),
         (-4.41519, -14.0405, -12.575, 0.0),
         (-4.13157, -10.7417, -3.784, 0.0)),
        ((-5.24568, -25.6688, -57.737, 88.639),
         (-4.70693, -16.9178, -17.492, 60.007),
         (-4.42501, -13.1875, -5.104, 27.877)),
    ],
)

_load(
    "ct",
    [
        ((-3.95877, -9.0531, -28.428, -134.155),
         (-3.41049, -4.3904, -9.036, -45.374),
         (-3.12705, -2.5856, -3.925, -22.380)),
        ((-4.32762, -15.4387, -35.679, 0.0),
         (-3.78057, -9.5106, -12.074, 0.0),
         (-3.49631, -7.0815, -7.538, 21.892)),
        ((-4.66305, -18.7688, -49.793, 104.244),
         (-4.11890, -11.8922, -19.031, 77.332),
         (-3.83511, -9.0723, -8.504, 35.403)),
        ((-4.96940, -22.4694, -52.599, 51.314),
         (-4.42871, -14.5876, -18.228, 39.647),
         (-4.14633, -11.2500, -9.873, 54.109)),
        ((-5.25276, -26.2183, -59.631, 50.646),
         (-4.71537, -17.3569, -22.660, 91.359),
         (-4.43422, -13.6078, -10.238, 76.781)),
        ((-5.51727, -29.9760, -75.222, 202.253),
         (-4.98228, -20.3050, -25.224, 132.03),
         (-4.70233, -16.1253, -9.836, 94.272)),
    ],
)

_load(
    "n",
    [
        ((-2.56574, -2.2358, -3.627, 0.0),
         (-1.94100, -0.2686, -3.365, 31.223),
         (-1.61682, 0.2656, -2.714, 25.364)),
    ],
)


@dataclass(frozen=True)
class CriticalValueTable:
    """A response-surface parameterization of test critical values."""

    source: str
    coefficients: Mapping[tuple[str, int, int], tuple[float, float, float, float]]

    def _lookup(self, k: int, level: int, det: DeterministicSpec) -> tuple[float, ...]:
        key = (det.key, int(k), int(level))
        if key not in self.coefficients:
            raise UnsupportedCombination(
                f"no tabulated surface for k={k}, level={level}%, deterministic={det.label()}"
            )
        return self.coefficients[key]

    def supports(self, k: int, level: int, det: DeterministicSpec) -> bool:
        return (det.key, int(k), int(level)) in self.coefficients

    def asymptotic(self, k: int, level: int, det: DeterministicSpec) -> float:
        """The encoded asymptotic critical value, exactly as published."""
        return self._lookup(k, level, det)[0]

    def value(self, k: int, n: int, level: int, det: DeterministicSpec) -> float:
        b0, b1, b2, b3 = self._lookup(k, level, det)
        n = float(n)
        return b0 + b1 / n + b2 / n**2 + b3 / n**3


TABLE = CriticalValueTable(source=SOURCE_ID, coefficients=_SURFACE)


def critical_value(k: int, n: int, level: int, det: DeterministicSpec) -> float:
    """Finite-sample critical value for ``k`` I(1) variables at sample size ``n``.

    Parameters
    ----------
    k : int
        Number of I(1) variables under the no-cointegration null; 1 for a
        plain unit-root test, 2 for a two-variable residual-based test.
        Supported range 1..6 (1 only when ``det`` has no terms).
    n : int
        Effective sample size of the test regression, at least 20.
    level : int
        Test level in percent: 1, 5, or 10.
    det : DeterministicSpec
        Deterministic terms of the regression the distribution refers to.

    Raises
    ------
    UnsupportedCombination
        For out-of-range ``k``/``n``/``level`` or an untabulated pairing.
    """
    if not MIN_K <= int(k) <= MAX_K:
        raise UnsupportedCombination(f"k must be in {MIN_K}..{MAX_K}, got {k}")
    if int(n) < MIN_N:
        raise UnsupportedCombination(f"sample size must be >= {MIN_N}, got {n}")
    if int(level) not in LEVELS:
        raise UnsupportedCombination(f"level must be one of {LEVELS}, got {level}")
    return TABLE.value(int(k), int(n), int(level), det)


def critical_values_map(k: int, n: int, det: DeterministicSpec) -> dict[int, float]:
    """All three tabulated levels at once, keyed by percent level."""
    return {level: critical_value(k, n, level, det) for level in LEVELS}
