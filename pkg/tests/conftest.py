import numpy as np
import pytest

from tsarf import GrowthCurve


@pytest.fixture
def line_curve():
    """Factory for curves lying exactly on y = 1 + 2t (counts 1..n)."""

    def make(n: int) -> GrowthCurve:
        counts = np.arange(1, n + 1, dtype=float)
        return GrowthCurve((counts - 1.0) / 2.0, counts)

    return make


def make_changepoint_curve(rng: np.random.Generator, n: int = 60):
    """Piecewise-linear growth curve with a slope break mid-training.

    Inter-failure gaps are 1/slope with multiplicative jitter, so the
    cumulative curve rises at the first slope and then kinks to the second.
    """
    slope1 = rng.uniform(0.5, 1.5)
    slope2 = rng.uniform(2.5, 4.0)
    break_at = int(n * rng.uniform(0.35, 0.55))
    gaps = np.concatenate(
        [
            (1.0 / slope1) * rng.uniform(0.9, 1.1, size=break_at),
            (1.0 / slope2) * rng.uniform(0.9, 1.1, size=n - break_at),
        ]
    )
    times = np.cumsum(gaps)
    return GrowthCurve(times, np.arange(1, n + 1, dtype=float))
