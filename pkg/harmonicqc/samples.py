"""
Sample maps for harmonicqc: the worked examples and seeded random class members.
"""

import logging
from typing import Optional, Tuple

import numpy as np

from .harmonic_core import InteriorMap, ExteriorMap
from .coefficients import WeightProfile, psi_alpha, weighted_sum, sigma_functional

logger = logging.getLogger('harmonicqc')

def sigma_example() -> ExteriorMap:
    """f(z) = z - (i/6) conj(z) + (i/4) log|z| - (i/8) z^-4, minimal k 11/12."""
    return ExteriorMap(alpha=1.0, beta=-1j / 6, a=((4, -1j / 8),), A=1j / 4)

def strongly_starlike_example(n: int, order: float, b: Optional[complex] = None) -> InteriorMap:
    """
    f(z) = z + b conj(z)^n, with b = 1/psi_n(order) unless given.

    Raises:
        ValueError: If |b| exceeds 1/psi_n(order)
    """
    limit = 1.0 / psi_alpha(n, order)
    if b is None:
        b = limit
    if abs(b) > limit * (1 + 1e-12):
        raise ValueError(f"|b| must not exceed 1/psi_{n}({order}) = {limit}")
    return InteriorMap(b=((n, b),))

def _random_support(rng: np.random.Generator, low: int, high: int) -> Tuple[int, ...]:
    indices = np.arange(low, high + 1)
    count = int(rng.integers(0, indices.size + 1))
    return tuple(sorted(int(n) for n in rng.choice(indices, size=count, replace=False)))

def _random_complex(rng: np.random.Generator, size: int) -> np.ndarray:
    return rng.uniform(0.1, 1.0, size) * np.exp(2j * np.pi * rng.uniform(0.0, 1.0, size))

def random_interior_member(
    rng: np.random.Generator,
    profile: WeightProfile,
    max_index: int = 8,
    total_range: Tuple[float, float] = (0.5, 1.0)
) -> InteriorMap:
    """
    Random sparse interior map whose weighted sum for the profile lies in total_range.

    At least one coefficient is always present.
    """
    a_indices = _random_support(rng, 2, max_index)
    b_indices = _random_support(rng, 1, max_index)
    if not a_indices and not b_indices:
        b_indices = (int(rng.integers(1, max_index + 1)),)

    a_values = _random_complex(rng, len(a_indices))
    b_values = _random_complex(rng, len(b_indices))
    draft = InteriorMap(a=tuple(zip(a_indices, a_values)), b=tuple(zip(b_indices, b_values)))

    target = rng.uniform(*total_range)
    scale = target / weighted_sum(draft, profile)
    return InteriorMap(
        a=tuple((n, complex(c) * scale) for n, c in draft.a),
        b=tuple((n, complex(c) * scale) for n, c in draft.b),
    )

def random_sigma_member(rng: np.random.Generator, k: float, max_index: int = 8) -> ExteriorMap:
    """
    Random sparse exterior map with |beta| + |A| + sum n(|a_n| + |b_n|) = k|alpha|.

    Raises:
        ValueError: If k is outside (0, 1)
    """
    if not 0.0 < k < 1.0:
        raise ValueError(f"k must lie in (0, 1), got {k}")

    alpha = complex(rng.uniform(0.5, 2.0) * np.exp(2j * np.pi * rng.uniform()))
    beta, A = _random_complex(rng, 2)
    a_indices = _random_support(rng, 1, max_index)
    b_indices = _random_support(rng, 1, max_index)
    a_values = _random_complex(rng, len(a_indices))
    b_values = _random_complex(rng, len(b_indices))
    draft = ExteriorMap(
        alpha=1.0,
        beta=complex(beta) * 0.5,
        a=tuple(zip(a_indices, a_values)),
        b=tuple(zip(b_indices, b_values)),
        A=complex(A),
    )

    scale = k * abs(alpha) / sigma_functional(draft)
    return ExteriorMap(
        alpha=alpha,
        beta=draft.beta * scale,
        a=tuple((n, c * scale) for n, c in draft.a),
        b=tuple((n, c * scale) for n, c in draft.b),
        A=draft.A * scale,
    )
