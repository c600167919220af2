"""Small statistics helpers for reported (never decided-on) quantities."""

from __future__ import annotations

import math
from statistics import linear_regression
from typing import Sequence


def fit_exponent(xs: Sequence[float], ys: Sequence[float]) -> float:
    """Slope of the least-squares line through ``(log x, log y)``."""
    pairs = [(math.log(x), math.log(y)) for x, y in zip(xs, ys) if x > 0 and y > 0]
    if len(pairs) < 2:
        return 0.0
    slope, _ = linear_regression([p[0] for p in pairs], [p[1] for p in pairs])
    return slope


def fit_constant(xs: Sequence[float], ys: Sequence[float]) -> float:
    """Geometric-mean ratio ``y / x``: the constant ``c`` in ``y ~ c x``."""
    logs = [math.log(y) - math.log(x) for x, y in zip(xs, ys) if x > 0 and y > 0]
    if not logs:
        return 0.0
    return math.exp(sum(logs) / len(logs))
