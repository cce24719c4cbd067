"""One-way ANOVA over classifier ROC groups, plus the F-tail kernel.

The regularized incomplete beta function is evaluated with the modified
Lentz continued fraction and the usual symmetry switch; that is the only
numerical kernel the p-values need.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .errors import InvalidDegreesOfFreedomError, TooFewGroupsError

_BETA_TOL = 1e-12
_MAX_ITER = 500


def regularized_incomplete_beta(a: float, b: float, x: float) -> float:
    """I_x(a, b) for a, b > 0 and x in [0, 1]."""
    if a <= 0 or b <= 0:
        raise ValueError("a and b must be positive")
    if x <= 0.0:
        return 0.0
    if x >= 1.0:
        return 1.0
    ln_front = (
        math.lgamma(a + b)
        - math.lgamma(a)
        - math.lgamma(b)
        + a * math.log(x)
        + b * math.log1p(-x)
    )
    front = math.exp(ln_front)
    if x < (a + 1.0) / (a + b + 2.0):
        return front * _betacf(a, b, x) / a
    return 1.0 - front * _betacf(b, a, 1.0 - x) / b


def _betacf(a: float, b: float, x: float) -> float:
    """Continued fraction for the incomplete beta (modified Lentz)."""
    tiny = 1e-300
    qab, qap, qam = a + b, a + 1.0, a - 1.0
    c = 1.0
    d = 1.0 - qab * x / qap
    if abs(d) < tiny:
        d = tiny
    d = 1.0 / d
    h = d
    for m in range(1, _MAX_ITER + 1):
        m2 = 2 * m
        aa = m * (b - m) * x / ((qam + m2) * (a + m2))
        d = 1.0 + aa * d
        if abs(d) < tiny:
            d = tiny
        c = 1.0 + aa / c
        if abs(c) < tiny:
            c = tiny
        d = 1.0 / d
        h *= d * c
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2))
        d = 1.0 + aa * d
        if abs(d) < tiny:
            d = tiny
        c = 1.0 + aa / c
        if abs(c) < tiny:
            c = tiny
        d = 1.0 / d
        delta = d * c
        h *= delta
        if abs(delta - 1.0) < _BETA_TOL:
            return h
    raise ArithmeticError("incomplete beta continued fraction did not converge")


def f_survival(f: float, df1: int, df2: int) -> float:
    """P(F_{df1,df2} > f), the upper-tail probability of the F distribution."""
    if int(df1) != df1 or int(df2) != df2 or df1 < 1 or df2 < 1:
        raise InvalidDegreesOfFreedomError(f"df=({df1},{df2})")
    if f < 0:
        raise ValueError("f must be non-negative")
    if f == 0:
        return 1.0
    if math.isinf(f):
        return 0.0
    x = df2 / (df2 + df1 * f)
    return regularized_incomplete_beta(df2 / 2.0, df1 / 2.0, x)


@dataclass
class AnovaResult:
    f_statistic: float
    df_between: int
    df_within: int
    p_value: float
    group_means: dict[str, float] = field(default_factory=dict)
    grand_mean: float = 0.0
    degenerate: bool = False


def one_way_anova(groups: dict[str, list[float]]) -> AnovaResult:
    """Classic one-way fixed-effects ANOVA over named groups of reals."""
    if len(groups) < 2 or any(len(v) < 2 for v in groups.values()):
        raise TooFewGroupsError(
            "need at least 2 groups with at least 2 values each"
        )
    k = len(groups)
    n = sum(len(v) for v in groups.values())
    grand = sum(sum(v) for v in groups.values()) / n
    means = {name: sum(v) / len(v) for name, v in groups.items()}
    ssb = sum(len(v) * (means[name] - grand) ** 2 for name, v in groups.items())
    ssw = sum(
        (x - means[name]) ** 2 for name, v in groups.items() for x in v
    )
    df_b, df_w = k - 1, n - k
    if ssw == 0.0:
        # All-identical groups give F=0/p=1; differing means with zero
        # within-variance are an infinite F. Both are flagged degenerate.
        if ssb == 0.0:
            return AnovaResult(0.0, df_b, df_w, 1.0, means, grand, degenerate=True)
        return AnovaResult(math.inf, df_b, df_w, 0.0, means, grand, degenerate=True)
    f = (ssb / df_b) / (ssw / df_w)
    return AnovaResult(f, df_b, df_w, f_survival(f, df_b, df_w), means, grand)
