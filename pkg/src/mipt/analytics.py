"""Closed-form entropy results: Page averages and the measurement-only circuit.

When the interaction core is the identity, measurements are the only thing
that changes entanglement. A qubit survives ``t`` measurement layers
unmeasured with probability (1-p)^t independently of all others, and the
state restricted to the survivors stays Haar distributed, so the expected
half-chain entropy is a binomial mixture of Page averages.
"""

import math
from dataclasses import dataclass

import numpy as np
from scipy.special import digamma
from scipy.stats import binom


@dataclass(frozen=True)
class MeasurementOnlyParams:
    """Half-chain size N = L/2, per-layer measurement probability, layer count."""

    N: int
    p: float
    t: int

    def __post_init__(self):
        if self.N < 1:
            raise ValueError(f"need N >= 1, got {self.N}")
        if self.t < 0:
            raise ValueError(f"need t >= 0, got {self.t}")
        if not 0.0 <= self.p <= 1.0:
            raise ValueError(f"need 0 <= p <= 1, got {self.p}")


def page_entropy(n_a: int, n_b: int) -> float:
    """Haar-average entanglement entropy (nats) between n_a and n_b qubits.

    sum_{k=2^max+1}^{2^(n_a+n_b)} 1/k  -  (2^min - 1) / 2^(max+1)

    evaluated through digamma (harmonic-number) differences, which keeps the
    large-register case cheap and accurate. Zero when either side is empty.
    """
    if n_a < 0 or n_b < 0:
        raise ValueError(f"qubit counts must be nonnegative, got ({n_a}, {n_b})")
    lo, hi = min(n_a, n_b), max(n_a, n_b)
    if lo == 0:
        return 0.0
    m, n = float(2**lo), float(2**hi)
    harmonic_tail = digamma(m * n + 1.0) - digamma(n + 1.0)
    return float(harmonic_tail - (m - 1.0) / (2.0 * n))


def unmeasured_probability(N: int, n_kept: int, p: float, t: int) -> float:
    """Probability that exactly n_kept of N qubits escape measurement for t layers."""
    if not 0 <= n_kept <= N:
        raise ValueError(f"need 0 <= n_kept <= N, got n_kept={n_kept}, N={N}")
    q = (1.0 - p) ** t
    return float(binom.pmf(n_kept, N, q))


def measurement_only_entropy(params: MeasurementOnlyParams) -> float:
    """Expected half-chain entropy of the identity-core hybrid circuit.

    Double binomial mixture of Page entropies over the unmeasured counts on
    the two sides of the cut.
    """
    N, p, t = params.N, params.p, params.t
    q = (1.0 - p) ** t
    weights = binom.pmf(np.arange(N + 1), N, q)
    page = np.array(
        [[page_entropy(na, nb) for nb in range(N + 1)] for na in range(N + 1)]
    )
    return float(weights @ page @ weights)


def unmeasured_mean_asymptote(N: int, p: float) -> float:
    """Large-N estimate N e^{-4 N p} of the mean unmeasured count at t = 4N."""
    if p < 0:
        raise ValueError(f"need p >= 0, got {p}")
    return float(N * math.exp(-4.0 * N * p))
