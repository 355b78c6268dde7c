import math

import pytest


def bernoulli_poly(n: int, x: float) -> float:
    """Independent Bernoulli-polynomial oracle (recurrence-based)."""
    # B_m numbers by the defining recurrence, kept in float (small m only)
    bnum = [1.0]
    for m in range(1, n + 1):
        s = 0.0
        for k in range(m):
            s += math.comb(m + 1, k) * bnum[k]
        bnum.append(-s / (m + 1))
    return sum(math.comb(n, k) * bnum[k] * x ** (n - k) for k in range(n + 1))


@pytest.fixture(scope="session")
def euler_gamma():
    return 0.5772156649015328606
