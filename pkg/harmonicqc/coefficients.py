"""
Coefficient conditions module for harmonicqc.

This module implements the weighted coefficient functionals that define the
classes H({phi_n},{psi_n}) and H0({phi_n},{psi_n}) of interior maps, the
strongly-starlike weights phi_n(order), psi_n(order), the ratio condition
n/phi_n <= k1, n/psi_n <= k2 and the coefficient condition of the exterior
class Sigma_H(k).
"""

import math
import logging
from dataclasses import dataclass, asdict
from typing import Callable, Dict, Any, Iterable, List, Optional, Tuple

import numpy as np

from .harmonic_core import InteriorMap, ExteriorMap

logger = logging.getLogger('harmonicqc')

# Closed inequalities tolerate rounding on the "<=" side
MEMBERSHIP_TOL = 1e-12

B1_ZERO = "b1_zero"
B1_NONZERO = "b1_nonzero"

ROUTE_PAIRWISE = "pairwise-constants"
ROUTE_WEIGHTED_SUM = "weighted-sum"
ROUTE_PSI1_RATIO = "psi1-ratio"
ROUTE_PSI2_RATIO = "psi2-ratio"

@dataclass(frozen=True)
class WeightProfile:
    """
    Weight sequences {phi_n} (n >= 2) and {psi_n} (n >= 1) of a coefficient class.
    """
    name: str
    phi: Callable[[int], float]
    psi: Callable[[int], float]
    same_weights: bool = False

    def phi_at(self, n: int) -> float:
        value = float(self.phi(n))
        if not value > 0:
            raise ValueError(f"profile {self.name}: phi_{n} = {value} is not positive")
        return value

    def psi_at(self, n: int) -> float:
        value = float(self.psi(n))
        if not value > 0:
            raise ValueError(f"profile {self.name}: psi_{n} = {value} is not positive")
        return value

@dataclass(frozen=True)
class ClassReport:
    """Membership verdict of one map for one weight profile."""
    profile: str
    weighted_sum: float
    member: bool
    b1_branch: str
    minimal_k: Optional[float]
    dilatation_bound: Optional[float] = None
    bound_route: Optional[str] = None

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)

def _check_order(order: float) -> float:
    order = float(order)
    if not 0.0 < order < 1.0:
        raise ValueError(f"order must lie in (0, 1), got {order}")
    return order

def phi_alpha(n: int, order: float) -> float:
    """
    phi_n(alpha) = (n - 1 + sqrt(n^2 - 2n cos(pi alpha) + 1)) / (2 sin(pi alpha / 2)).

    Raises:
        ValueError: If n < 2 or order is outside (0, 1)
    """
    order = _check_order(order)
    if n < 2:
        raise ValueError(f"phi_n(alpha) is defined for n >= 2, got n={n}")
    root = math.sqrt(n * n - 2 * n * math.cos(math.pi * order) + 1)
    return (n - 1 + root) / (2 * math.sin(math.pi * order / 2))

def psi_alpha(n: int, order: float) -> float:
    """
    psi_n(alpha) = (n + 1 + sqrt(n^2 + 2n cos(pi alpha) + 1)) / (2 sin(pi alpha / 2)).

    Raises:
        ValueError: If n < 1 or order is outside (0, 1)
    """
    order = _check_order(order)
    if n < 1:
        raise ValueError(f"psi_n(alpha) is defined for n >= 1, got n={n}")
    root = math.sqrt(n * n + 2 * n * math.cos(math.pi * order) + 1)
    return (n + 1 + root) / (2 * math.sin(math.pi * order / 2))

def starlike_profile() -> WeightProfile:
    """Weights {n},{n}: the fully starlike class."""
    return WeightProfile("starlike", phi=lambda n: n, psi=lambda n: n, same_weights=True)

def convex_profile() -> WeightProfile:
    """Weights {n^2},{n^2}: the fully convex class."""
    return WeightProfile("convex", phi=lambda n: n * n, psi=lambda n: n * n, same_weights=True)

def strongly_starlike_profile(order: float) -> WeightProfile:
    """Weights {phi_n(alpha)},{psi_n(alpha)}: strongly starlike of the given order."""
    order = _check_order(order)
    return WeightProfile(
        f"strongly-starlike({order:g})",
        phi=lambda n: phi_alpha(n, order),
        psi=lambda n: psi_alpha(n, order),
    )

def scaled_profile(profile: WeightProfile, k0: float) -> WeightProfile:
    """Divide every weight by k0, turning a sum <= k0 into a sum <= 1."""
    if not 0.0 < k0 < 1.0:
        raise ValueError(f"k0 must lie in (0, 1), got {k0}")
    return WeightProfile(
        f"{profile.name}/{k0:g}",
        phi=lambda n: profile.phi(n) / k0,
        psi=lambda n: profile.psi(n) / k0,
        same_weights=profile.same_weights,
    )

def get_profile(name: str, order: Optional[float] = None) -> WeightProfile:
    """
    Look up a named interior profile.

    Args:
        name: "starlike", "convex" or "strongly-starlike"
        order: Required for "strongly-starlike"

    Raises:
        ValueError: For unknown names or a missing order
    """
    if name == "starlike":
        return starlike_profile()
    if name == "convex":
        return convex_profile()
    if name == "strongly-starlike":
        if order is None:
            raise ValueError("profile 'strongly-starlike' needs an order")
        return strongly_starlike_profile(order)
    raise ValueError(f"unknown profile '{name}'")

def weighted_sum(f: InteriorMap, profile: WeightProfile) -> float:
    """
    psi_1|b_1| + sum_{n>=2} (phi_n|a_n| + psi_n|b_n|) over the stored coefficients.
    """
    total = sum(profile.phi_at(n) * abs(c) for n, c in f.a)
    total += sum(profile.psi_at(n) * abs(c) for n, c in f.b)
    return float(total)

def b1_branch(f: InteriorMap) -> str:
    return B1_ZERO if f.coefficient("b", 1) == 0 else B1_NONZERO

def cond1_constants(
    profile: WeightProfile,
    a_indices: Iterable[int],
    b_indices: Iterable[int]
) -> Tuple[float, float]:
    """
    Smallest (k1, k2) with phi_n / n >= 1/k1 and psi_n / n >= 1/k2 on the given indices.

    Empty index sets contribute 0.
    """
    k1 = max((n / profile.phi_at(n) for n in a_indices), default=0.0)
    k2 = max((n / profile.psi_at(n) for n in b_indices), default=0.0)
    return float(k1), float(k2)

def check_cond1(profile: WeightProfile, k1: float, k2: float, max_index: int) -> bool:
    """
    Check phi_n / n >= 1/k1 (2 <= n <= max_index) and psi_n / n >= 1/k2 (1 <= n <= max_index).

    Raises:
        ValueError: If k1 or k2 is outside (0, 1)
    """
    for label, k in (("k1", k1), ("k2", k2)):
        if not 0.0 < k < 1.0:
            raise ValueError(f"{label} must lie in (0, 1), got {k}")

    # n / phi_n <= k1 is phi_n / n >= 1/k1; the best constants attain equality
    phi_ok = all(n / profile.phi_at(n) <= k1 + MEMBERSHIP_TOL for n in range(2, max_index + 1))
    psi_ok = all(n / profile.psi_at(n) <= k2 + MEMBERSHIP_TOL for n in range(1, max_index + 1))
    logger.debug(f"Ratio condition for {profile.name} up to n={max_index}: phi {phi_ok}, psi {psi_ok}")
    return phi_ok and psi_ok

def _single_sequence_bound(profile: WeightProfile, branch: str, max_index: int) -> Tuple[Optional[float], Optional[str]]:
    # Only stated for a single sequence used on both parts
    if not profile.same_weights:
        return None, None
    psi1 = profile.psi_at(1)
    ratios = [profile.psi_at(n) / n for n in range(1, max(max_index, 2) + 1)]
    if branch == B1_NONZERO:
        if psi1 > 1 and all(r >= psi1 for r in ratios):
            return 1.0 / psi1, ROUTE_PSI1_RATIO
        return None, None
    half_psi2 = profile.psi_at(2) / 2
    if half_psi2 > psi1 == 1 and all(r >= half_psi2 for r in ratios[1:]):
        return 2.0 / profile.psi_at(2), ROUTE_PSI2_RATIO
    if psi1 > 1 and all(r >= psi1 for r in ratios):
        return 1.0 / psi1, ROUTE_PSI1_RATIO
    return None, None

def dilatation_bound(f: InteriorMap, profile: WeightProfile) -> Tuple[Optional[float], Optional[str]]:
    """
    Smallest dilatation bound available for a member map, with the route producing it.

    Candidates: the ratio constants over the indices present, the weighted
    sum itself when phi_n >= n, psi_n >= n, psi_1 >= 1 and the sum is below 1,
    and the single-sequence bounds 1/psi_1 or 2/psi_2.

    Returns:
        (bound, route), or (None, None) if the map is not a member or no route applies
    """
    total = weighted_sum(f, profile)
    if total > 1.0 + MEMBERSHIP_TOL:
        return None, None

    candidates: List[Tuple[float, str]] = []

    k1, k2 = cond1_constants(profile, [n for n, _ in f.a], [n for n, _ in f.b])
    if k1 < 1.0 and k2 < 1.0:
        candidates.append((max(k1, k2), ROUTE_PAIRWISE))

    top = max(f.max_index, 2)
    dominates = (
        all(profile.phi_at(n) >= n for n in range(2, top + 1))
        and all(profile.psi_at(n) >= n for n in range(2, top + 1))
        and profile.psi_at(1) >= 1
    )
    if dominates and 0.0 < total < 1.0:
        # f lies in the class whose weights are divided by its own weighted sum
        scaled = scaled_profile(profile, total)
        if weighted_sum(f, scaled) <= 1.0 + MEMBERSHIP_TOL:
            candidates.append((total, ROUTE_WEIGHTED_SUM))

    bound, route = _single_sequence_bound(profile, b1_branch(f), top)
    if bound is not None:
        candidates.append((bound, route))

    if not candidates:
        return None, None

    best = candidates[0]
    for candidate in candidates[1:]:
        if candidate[0] < best[0]:
            best = candidate
    logger.debug(f"Dilatation bound for {profile.name}: {best[0]} via {best[1]}")
    return best

def check_membership(f: InteriorMap, profile: WeightProfile) -> ClassReport:
    """
    Decide membership of f in H({phi_n},{psi_n}) (or H0 when b_1 = 0).

    The minimal k of the report is the weighted sum itself when it does not
    exceed 1.
    """
    total = weighted_sum(f, profile)
    member = total <= 1.0 + MEMBERSHIP_TOL
    bound, route = dilatation_bound(f, profile) if member else (None, None)
    report = ClassReport(
        profile=profile.name,
        weighted_sum=total,
        member=member,
        b1_branch=b1_branch(f),
        minimal_k=total if member else None,
        dilatation_bound=bound,
        bound_route=route,
    )
    logger.debug(f"Membership in {profile.name}: sum={total}, member={member}")
    return report

def sigma_functional(f: ExteriorMap) -> float:
    """|beta| + |A| + sum n(|a_n| + |b_n|)."""
    return float(abs(f.beta) + abs(f.A) + f.analytic_derivative_sum() + f.coanalytic_derivative_sum())

def check_sigma_condition(f: ExteriorMap) -> Tuple[float, Optional[float]]:
    """
    Minimal k with |beta| + |A| + sum n(|a_n| + |b_n|) <= k|alpha|.

    Returns:
        (minimal_k, member_of) where member_of equals minimal_k when it is below 1

    Raises:
        ValueError: If |beta| >= |alpha|
    """
    if not abs(f.beta) < abs(f.alpha):
        raise ValueError("Sigma_H condition requires |beta| < |alpha|")
    minimal_k = sigma_functional(f) / abs(f.alpha)
    member_of = minimal_k if minimal_k < 1.0 else None
    return minimal_k, member_of

def refined_sigma_k(f: ExteriorMap) -> Optional[float]:
    """
    Smallest k with |beta| + (k+1)/2 |A| + k sum n|a_n| + sum n|b_n| <= k|alpha|.

    Returns:
        The value (|beta| + |A|/2 + sum n|b_n|) / (|alpha| - |A|/2 - sum n|a_n|),
        or None when the denominator is not positive
    """
    denominator = abs(f.alpha) - abs(f.A) / 2 - f.analytic_derivative_sum()
    if denominator <= 0:
        return None
    return float((abs(f.beta) + abs(f.A) / 2 + f.coanalytic_derivative_sum()) / denominator)

def _weights_over_range(order: float, start: int, stop: int) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    n = np.arange(start, stop + 1, dtype=np.float64)
    half_sine = 2 * math.sin(math.pi * order / 2)
    cos_term = math.cos(math.pi * order)
    phi = (n - 1 + np.sqrt(n * n - 2 * n * cos_term + 1)) / half_sine
    psi = (n + 1 + np.sqrt(n * n + 2 * n * cos_term + 1)) / half_sine
    return n, phi, psi

def monotonicity_scan(order: float, N: int) -> Tuple[bool, bool]:
    """
    Check that phi_n/n strictly increases for 2 <= n <= N and psi_n/n strictly decreases for 1 <= n <= N.
    """
    order = _check_order(order)
    if N < 3:
        raise ValueError(f"N must be at least 3, got {N}")
    n, phi, psi = _weights_over_range(order, 1, N)
    phi_ratio = (phi / n)[1:]
    psi_ratio = psi / n
    phi_increasing = bool(np.all(np.diff(phi_ratio) > 0))
    psi_decreasing = bool(np.all(np.diff(psi_ratio) < 0))
    return phi_increasing, psi_decreasing

def sandwich_scan(order: float, N: int) -> bool:
    """Check n < phi_n(alpha) < n / sin(pi alpha / 2) < psi_n(alpha) for 2 <= n <= N."""
    order = _check_order(order)
    n, phi, psi = _weights_over_range(order, 2, N)
    middle = n / math.sin(math.pi * order / 2)
    return bool(np.all(n < phi) and np.all(phi < middle) and np.all(middle < psi))

def strongly_starlike_constants(order: float) -> Tuple[float, float]:
    """
    Best ratio constants for the strongly-starlike profile.

    phi_n/n increases, so its minimum sits at n = 2: k1 = 2/phi_2(alpha).
    psi_n/n decreases to 1/sin(pi alpha/2): k2 = sin(pi alpha/2).
    """
    order = _check_order(order)
    return 2.0 / phi_alpha(2, order), math.sin(math.pi * order / 2)
