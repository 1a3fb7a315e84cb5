"""Descriptive moments, Tukey box summaries, and two-group comparisons.

Estimator conventions (the ones mainstream statistical packages print):

* skewness: adjusted Fisher-Pearson G1 = sqrt(n(n-1))/(n-2) * m3/m2^(3/2)
* kurtosis: sample-adjusted *excess* kurtosis
  G2 = ((n+1)(m4/m2^2 - 3) + 6) * (n-1)/((n-2)(n-3))
* quantiles: sort, h = (n-1)q, linear interpolation (type 7)
* two-sample test: equal-variance pooled t with df = n_a + n_b - 2,
  two-sided p, and R^2 = t^2/(t^2 + df), the explained variance of the
  one-dummy regression.

Central moments m_k use the 1/n denominator; sd uses n-1.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import (
    EmptyDataError,
    SingleGroupError,
    TooFewObservationsError,
    ZeroPooledVarianceError,
    ZeroVarianceError,
)
from .tdist import student_t_two_sided_p


@dataclass(frozen=True)
class DescriptiveStats:
    n: int
    mean: float
    sd: float
    skewness: float
    excess_kurtosis: float


@dataclass(frozen=True)
class BoxSummary:
    q1: float
    median: float
    q3: float
    iqr: float
    inner_fences: tuple[float, float]
    outer_fences: tuple[float, float]
    whiskers: tuple[float, float]
    outliers: tuple[float, ...]
    extreme_outliers: tuple[float, ...]

    @property
    def n_outliers(self) -> int:
        return len(self.outliers)

    @property
    def n_extreme_outliers(self) -> int:
        return len(self.extreme_outliers)


@dataclass(frozen=True)
class GroupComparison:
    t_value: float
    df: int
    p_value: float
    r_squared: float
    group_means: tuple[float, float]


def _as_array(data) -> np.ndarray:
    a = np.asarray(list(data) if not isinstance(data, np.ndarray) else data, dtype=float)
    return a.ravel()


def quantile_type7(data, q: float) -> float:
    """Linear-interpolation (type 7) quantile.

    Written in the symmetric two-product form (1-g)*lo + g*hi so that
    quantile(-data, q) == -quantile(data, 1-q) holds bit-exactly for the
    dyadic q used by box summaries; that exactness is what keeps outlier
    counts identical under sign flips.
    """
    a = _as_array(data)
    if a.size == 0:
        raise EmptyDataError()
    if not 0.0 <= q <= 1.0:
        raise ValueError(f"q must lie in [0, 1], got {q}")
    xs = np.sort(a)
    h = (a.size - 1) * q
    lo = math.floor(h)
    hi = math.ceil(h)
    if lo == hi:
        return float(xs[lo])
    g = h - lo
    return float((1.0 - g) * xs[lo] + g * xs[hi])


def _is_constant(a: np.ndarray) -> bool:
    # a constant sample has zero variance by definition; testing the
    # computed m2 instead misses cases like six copies of 0.7, where the
    # unrepresentable mean leaves a spurious variance of ~1e-32
    return bool(np.all(a == a[0]))


def _central_moments(a: np.ndarray, orders) -> list[float]:
    # explicit products, not dev**k: numpy's vectorized pow is not
    # sign-symmetric at the last ulp, and skewness must flip its sign
    # bit-exactly when the data are negated
    mean = a.mean()
    dev = a - mean
    dev2 = dev * dev
    by_order = {2: dev2, 3: dev2 * dev, 4: dev2 * dev2}
    return [float(by_order[k].mean()) for k in orders]


def skewness(data) -> float:
    """Adjusted Fisher-Pearson sample skewness G1."""
    a = _as_array(data)
    n = a.size
    if n < 3:
        raise TooFewObservationsError(3, n, "skewness")
    if _is_constant(a):
        raise ZeroVarianceError("skewness input")
    m2, m3 = _central_moments(a, (2, 3))
    if m2 == 0.0:
        raise ZeroVarianceError("skewness input")
    return math.sqrt(n * (n - 1)) / (n - 2) * m3 / m2**1.5


def excess_kurtosis(data) -> float:
    """Sample-adjusted excess kurtosis G2 (normal data -> 0)."""
    a = _as_array(data)
    n = a.size
    if n < 4:
        raise TooFewObservationsError(4, n, "kurtosis")
    if _is_constant(a):
        raise ZeroVarianceError("kurtosis input")
    m2, m4 = _central_moments(a, (2, 4))
    if m2 == 0.0:
        raise ZeroVarianceError("kurtosis input")
    return ((n + 1) * (m4 / m2**2 - 3.0) + 6.0) * (n - 1) / ((n - 2) * (n - 3))


def describe(data) -> DescriptiveStats:
    """n, mean, sample sd, G1 skewness and G2 excess kurtosis in one shot."""
    a = _as_array(data)
    n = a.size
    if n < 4:
        raise TooFewObservationsError(4, n, "describe")
    sd = float(a.std(ddof=1))
    if sd == 0.0 or _is_constant(a):
        raise ZeroVarianceError()
    return DescriptiveStats(
        n=n,
        mean=float(a.mean()),
        sd=sd,
        skewness=skewness(a),
        excess_kurtosis=excess_kurtosis(a),
    )


def box_summary(data) -> BoxSummary:
    """Tukey box summary with inner (1.5 IQR) and outer (3 IQR) fences.

    Outliers lie strictly beyond the inner fences, extreme outliers strictly
    beyond the outer fences; whiskers sit at the most extreme data points
    within the inner fences.
    """
    a = _as_array(data)
    if a.size == 0:
        raise EmptyDataError()
    q1 = quantile_type7(a, 0.25)
    median = quantile_type7(a, 0.5)
    q3 = quantile_type7(a, 0.75)
    iqr = q3 - q1
    inner = (q1 - 1.5 * iqr, q3 + 1.5 * iqr)
    outer = (q1 - 3.0 * iqr, q3 + 3.0 * iqr)
    inside = a[(a >= inner[0]) & (a <= inner[1])]
    # a point inside the fences always exists: the order statistic right
    # above q1 is within [q1, q3] for n >= 3, and n <= 2 has no outliers
    whiskers = (float(inside.min()), float(inside.max()))
    out = a[(a < inner[0]) | (a > inner[1])]
    extreme = a[(a < outer[0]) | (a > outer[1])]
    return BoxSummary(
        q1=q1,
        median=median,
        q3=q3,
        iqr=iqr,
        inner_fences=inner,
        outer_fences=outer,
        whiskers=whiskers,
        outliers=tuple(float(v) for v in np.sort(out)),
        extreme_outliers=tuple(float(v) for v in np.sort(extreme)),
    )


def two_sample_t_equal_var(a, b) -> GroupComparison:
    """Equal-variance two-sample t-test, two-sided.

    t > 0 means group ``a`` has the larger mean.  R^2 = t^2/(t^2 + df) is
    the share of variance a one-dummy regression on group membership
    explains.
    """
    xa = _as_array(a)
    xb = _as_array(b)
    na, nb = xa.size, xb.size
    if na < 2 or nb < 2:
        raise TooFewObservationsError(2, min(na, nb), "each group of the t-test")
    df = na + nb - 2
    pooled = ((na - 1) * xa.var(ddof=1) + (nb - 1) * xb.var(ddof=1)) / df
    if pooled == 0.0 or (_is_constant(xa) and _is_constant(xb)):
        raise ZeroPooledVarianceError()
    mean_a = float(xa.mean())
    mean_b = float(xb.mean())
    t = (mean_a - mean_b) / math.sqrt(pooled * (1.0 / na + 1.0 / nb))
    p = student_t_two_sided_p(t, df)
    r2 = t * t / (t * t + df)
    return GroupComparison(
        t_value=t, df=df, p_value=p, r_squared=r2, group_means=(mean_a, mean_b)
    )


def dummy_regression_r2(values, group) -> float:
    """Explained variance of a least-squares fit on one binary dummy.

    Computed from the sum-of-squares decomposition (fitted values are the
    group means), not from the t statistic; the identity with
    t^2/(t^2 + df) is a checked property, not the implementation.
    """
    v = _as_array(values)
    labels = list(group)
    if len(labels) != v.size:
        raise ValueError(f"got {v.size} values but {len(labels)} group labels")
    distinct = list(dict.fromkeys(labels))
    if len(distinct) != 2:
        raise SingleGroupError(len(distinct))
    mask = np.asarray([label == distinct[0] for label in labels])
    ss_total = float(((v - v.mean()) ** 2).sum())
    if ss_total == 0.0 or _is_constant(v):
        raise ZeroVarianceError("regression response")
    ss_res = float(((v[mask] - v[mask].mean()) ** 2).sum()) + float(
        ((v[~mask] - v[~mask].mean()) ** 2).sum()
    )
    return 1.0 - ss_res / ss_total
