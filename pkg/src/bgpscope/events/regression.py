"""Events-versus-AS-count regression with prediction-interval outlier
flagging.

Event counts scale roughly linearly with a country's AS count on log-log
axes (most incidents are configuration errors at a roughly constant rate
per AS), so a country far above the fitted band has more events than its
size explains.
"""

import json
from dataclasses import dataclass
from math import log10

import numpy as np
from scipy import stats as scipy_stats


@dataclass(frozen=True)
class RegressionPoint:
    label: str
    x: float  # transformed regressor
    y: float  # transformed response
    predicted: float
    upper: float
    lower: float
    flagged: bool


@dataclass(frozen=True)
class RegressionResult:
    slope: float
    intercept: float
    r_squared: float
    sigma: float
    level: float
    log_scale: bool
    points: tuple[RegressionPoint, ...]
    n: int = 0
    x_mean: float = 0.0
    sxx: float = 0.0

    @property
    def flagged(self) -> tuple[str, ...]:
        return tuple(p.label for p in self.points if p.flagged)

    def interval(self, x: float) -> tuple[float, float]:
        """Prediction interval at a (transformed) regressor value, e.g. for
        a held-out country."""
        df = self.n - 2
        t_crit = float(scipy_stats.t.ppf(1.0 - (1.0 - self.level) / 2.0, df)) if df > 0 else 0.0
        half = t_crit * self.sigma * (1.0 + 1.0 / self.n + (x - self.x_mean) ** 2 / self.sxx) ** 0.5
        center = self.intercept + self.slope * x
        return (center - half, center + half)

    def to_json(self) -> str:
        payload = {
            "fit": {
                "slope": self.slope,
                "intercept": self.intercept,
                "r_squared": self.r_squared,
                "residual_sigma": self.sigma,
                "level": self.level,
                "log_scale": self.log_scale,
            },
            "flagged": list(self.flagged),
            "points": [
                {
                    "country": p.label,
                    "x": p.x,
                    "y": p.y,
                    "predicted": p.predicted,
                    "upper": p.upper,
                    "lower": p.lower,
                    "residual": p.y - p.predicted,
                    "flagged": p.flagged,
                }
                for p in self.points
            ],
        }
        return json.dumps(payload, indent=2, sort_keys=True) + "\n"


def event_regression(
    points: list[tuple[str, float, float]],
    level: float = 0.95,
    log_scale: bool = True,
) -> RegressionResult:
    """OLS of event counts on AS counts with per-point prediction intervals.

    `points` are (country, as_count, event_count) triples.  By default both
    axes are log10-transformed, event counts as log10(1 + y) so zero-event
    countries stay finite.  A country is flagged when its observed value
    exceeds the upper prediction bound at `level`.
    """
    if len(points) < 3:
        raise ValueError("need at least 3 points to fit")
    labels = [str(lab) for lab, _x, _y in points]
    if log_scale:
        for _lab, x_raw, _y in points:
            if x_raw <= 0:
                raise ValueError("as_count must be positive for the log transform")
        x = np.array([log10(px) for _lab, px, _py in points])
        y = np.array([log10(1.0 + py) for _lab, _px, py in points])
    else:
        x = np.array([float(px) for _lab, px, _py in points])
        y = np.array([float(py) for _lab, _px, py in points])

    n = len(x)
    x_mean, y_mean = x.mean(), y.mean()
    sxx = float(((x - x_mean) ** 2).sum())
    if sxx == 0.0:
        raise ValueError("zero variance in as_count; cannot fit")
    slope = float(((x - x_mean) * (y - y_mean)).sum()) / sxx
    intercept = y_mean - slope * x_mean
    predicted = intercept + slope * x
    residuals = y - predicted
    sse = float((residuals**2).sum())
    sst = float(((y - y_mean) ** 2).sum())
    r_squared = 1.0 if sst == 0.0 else 1.0 - sse / sst

    df = n - 2
    sigma = (sse / df) ** 0.5 if df > 0 else 0.0
    t_crit = float(scipy_stats.t.ppf(1.0 - (1.0 - level) / 2.0, df)) if df > 0 else 0.0
    half = t_crit * sigma * np.sqrt(1.0 + 1.0 / n + (x - x_mean) ** 2 / sxx)

    result_points = tuple(
        RegressionPoint(
            label=labels[i],
            x=float(x[i]),
            y=float(y[i]),
            predicted=float(predicted[i]),
            upper=float(predicted[i] + half[i]),
            lower=float(predicted[i] - half[i]),
            flagged=bool(y[i] > predicted[i] + half[i]),
        )
        for i in range(n)
    )
    return RegressionResult(
        slope=slope,
        intercept=intercept,
        r_squared=r_squared,
        sigma=sigma,
        level=level,
        log_scale=log_scale,
        points=result_points,
        n=n,
        x_mean=float(x_mean),
        sxx=sxx,
    )
