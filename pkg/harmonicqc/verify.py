"""
Verification module for harmonicqc.

This module samples extensions and maps on polar grids and random point pairs
to check numerically what the coefficient conditions guarantee: dilatation
suprema below the analytic bounds, bi-Lipschitz distortion, positive
Jacobians, the strongly-starlike angle condition and continuity across the
unit circle.

Grid reductions are deterministic: maxima and minima are taken over points
flattened in (radius, angle) order, so ties resolve to the smallest radius and
then the smallest angle.
"""

import math
import logging
from dataclasses import dataclass, field
from typing import Callable, Dict, Any, Optional, Tuple, Union

import numpy as np

from .harmonic_core import (
    InteriorMap,
    ExteriorMap,
    HarmonicMap,
    evaluate,
    evaluate_interior,
    wirtinger_derivatives,
    jacobian_from_partials,
)
from .coefficients import check_sigma_condition
from .extension import (
    PlaneExtension,
    evaluate_extension,
    extension_derivatives,
    source_value_on_seam,
)

logger = logging.getLogger('harmonicqc')

REGION_INNER = "inner"
REGION_OUTER = "outer"
REGION_BOTH = "both"
REGIONS = (REGION_INNER, REGION_OUTER, REGION_BOTH)

DEFAULT_R_MIN = 1e-3
DEFAULT_R_MAX = 10.0

# Allowed excess of a sampled quantity over its analytic bound
BOUND_TOL = 1e-9

class VerificationError(Exception):
    """Raised when a verification cannot be carried out on the given input."""
    pass

@dataclass(frozen=True)
class GridSpec:
    """
    Polar sampling grid: every radius is paired with equally spaced angles.

    Radii are sorted, positive and never exactly 1; inner radii are below 1,
    outer radii above 1 and at most r_max.
    """
    radii: Tuple[float, ...]
    angles_per_circle: int
    region: str
    r_max: float = DEFAULT_R_MAX

    def __post_init__(self) -> None:
        radii = tuple(float(r) for r in self.radii)
        object.__setattr__(self, "radii", radii)
        if self.region not in REGIONS:
            raise VerificationError(f"unknown grid region '{self.region}'")
        if not radii or self.angles_per_circle < 1:
            raise VerificationError("grid must contain at least one radius and one angle")
        if any(r <= 0 or r == 1.0 for r in radii):
            raise VerificationError("grid radii must be positive and exclude the unit circle")
        if list(radii) != sorted(radii):
            raise VerificationError("grid radii must be sorted")
        if self.region == REGION_INNER and radii[-1] >= 1.0:
            raise VerificationError("inner grid radii must be below 1")
        if self.region == REGION_OUTER and radii[0] <= 1.0:
            raise VerificationError("outer grid radii must exceed 1")
        if radii[-1] > self.r_max:
            raise VerificationError(f"grid radii must not exceed r_max={self.r_max}")

    @property
    def size(self) -> int:
        return len(self.radii) * self.angles_per_circle

    def angles(self) -> np.ndarray:
        return 2.0 * np.pi * np.arange(self.angles_per_circle) / self.angles_per_circle

    def points(self) -> np.ndarray:
        """Grid points as a (radii, angles) complex array."""
        return np.asarray(self.radii)[:, None] * np.exp(1j * self.angles())[None, :]

    def covers(self, region: str) -> bool:
        if region == REGION_INNER:
            return self.radii[0] < 1.0
        if region == REGION_OUTER:
            return self.radii[-1] > 1.0
        return True

    def restrict(self, region: str) -> "GridSpec":
        """Keep only the radii belonging to one side of the unit circle."""
        if region == REGION_INNER:
            radii = tuple(r for r in self.radii if r < 1.0)
        elif region == REGION_OUTER:
            radii = tuple(r for r in self.radii if r > 1.0)
        else:
            radii = self.radii
        return GridSpec(radii, self.angles_per_circle, region, self.r_max)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "region": self.region,
            "radii_count": len(self.radii),
            "r_min": self.radii[0],
            "r_max_sampled": self.radii[-1],
            "angles_per_circle": self.angles_per_circle,
        }

def default_grid(
    region: str,
    n_radii: int = 200,
    n_angles: int = 720,
    r_min: float = DEFAULT_R_MIN,
    r_max: float = DEFAULT_R_MAX
) -> GridSpec:
    """
    Logarithmically spaced radii in [r_min, 1 - r_min] (inner) and [1 + r_min, r_max] (outer).
    """
    inner = np.geomspace(r_min, 1.0 - r_min, n_radii)
    outer = np.geomspace(1.0 + r_min, r_max, n_radii)
    if region == REGION_INNER:
        radii = inner
    elif region == REGION_OUTER:
        radii = outer
    else:
        radii = np.concatenate([inner, outer])
    return GridSpec(tuple(radii.tolist()), n_angles, region, r_max)

@dataclass(frozen=True)
class BiLipschitzResult:
    min_ratio: float
    max_ratio: float
    pair_count: int

    def to_dict(self) -> Dict[str, Any]:
        return {"min_ratio": self.min_ratio, "max_ratio": self.max_ratio, "pair_count": self.pair_count}

@dataclass
class VerificationReport:
    """Aggregated grid and sampling results for one extension."""
    sup_mu: float
    argmax_point: complex
    bilipschitz: BiLipschitzResult
    min_jacobian: float
    max_starlike_angle: Optional[float]
    grid: GridSpec
    seed: int
    region_sup: Dict[str, float] = field(default_factory=dict)
    skipped_points: int = 0
    asymptotic_mu: Optional[float] = None
    seam_gap: Optional[float] = None
    violations: Tuple[str, ...] = ()

    @property
    def ok(self) -> bool:
        return not self.violations

    def to_dict(self) -> Dict[str, Any]:
        return {
            "sup_mu": self.sup_mu,
            "argmax_point": [self.argmax_point.real, self.argmax_point.imag],
            "region_sup": dict(self.region_sup),
            "bilipschitz": self.bilipschitz.to_dict(),
            "min_jacobian": self.min_jacobian,
            "max_starlike_angle": self.max_starlike_angle,
            "asymptotic_mu": self.asymptotic_mu,
            "seam_gap": self.seam_gap,
            "skipped_points": self.skipped_points,
            "grid": self.grid.to_dict(),
            "seed": self.seed,
            "prng": "numpy.random.PCG64",
            "violations": list(self.violations),
        }

Target = Union[PlaneExtension, InteriorMap, ExteriorMap]

def _partials(target: Target, z: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    if isinstance(target, PlaneExtension):
        f_z, f_zbar = extension_derivatives(target, z)
    else:
        f_z, f_zbar = wirtinger_derivatives(target, z)
    return np.asarray(f_z), np.asarray(f_zbar)

def _values(target: Target, z: np.ndarray) -> np.ndarray:
    if isinstance(target, PlaneExtension):
        return np.asarray(evaluate_extension(target, z))
    return np.asarray(evaluate(target, z))

def _dilatation_moduli(F: Target, z: np.ndarray) -> Tuple[np.ndarray, int]:
    f_z, f_zbar = _partials(F, z)
    degenerate = (f_z == 0) | ~np.isfinite(f_z) | ~np.isfinite(f_zbar)
    skipped = int(np.count_nonzero(degenerate))
    with np.errstate(divide="ignore", invalid="ignore"):
        moduli = np.abs(f_zbar) / np.abs(f_z)
    moduli = np.where(degenerate, -np.inf, moduli)
    if skipped:
        logger.warning(f"Skipped {skipped} grid point(s) where the dilatation is undefined.")
    return moduli, skipped

def sup_dilatation(F: Target, grid: GridSpec) -> Tuple[float, complex]:
    """
    Largest |mu_F| over the grid and where it occurs.

    This is a lower bound for the true essential supremum.

    Raises:
        VerificationError: If every grid point was skipped
    """
    points = grid.points().ravel()
    moduli, skipped = _dilatation_moduli(F, points)
    if skipped == points.size:
        raise VerificationError("dilatation undefined at every grid point")
    index = int(np.argmax(moduli))
    return float(moduli[index]), complex(points[index])

def _sample_region(rng: np.random.Generator, region: str, count: int, r_min: float, r_max: float) -> np.ndarray:
    if region == REGION_INNER:
        low, high = math.log(r_min), 0.0
    elif region == REGION_OUTER:
        low, high = 0.0, math.log(r_max)
    else:
        low, high = math.log(r_min), math.log(r_max)
    log_r = rng.uniform(low, high, count)
    theta = rng.uniform(0.0, 2.0 * np.pi, count)
    return np.exp(log_r) * np.exp(1j * theta)

def bilipschitz_sample(
    target: Target,
    region: str,
    pair_count: int,
    seed: int,
    r_min: float = DEFAULT_R_MIN,
    r_max: float = DEFAULT_R_MAX
) -> BiLipschitzResult:
    """
    Min and max of |F(z1) - F(z2)| / |z1 - z2| over seeded random pairs.

    Points are drawn uniformly in (log radius, angle) within the region.
    Coincident pairs are discarded.
    """
    if pair_count < 1:
        raise VerificationError("pair_count must be at least 1")
    if region not in REGIONS:
        raise VerificationError(f"unknown region '{region}'")

    rng = np.random.default_rng(seed)
    z1 = _sample_region(rng, region, pair_count, r_min, r_max)
    z2 = _sample_region(rng, region, pair_count, r_min, r_max)
    distance = np.abs(z1 - z2)
    keep = distance > 0
    z1, z2, distance = z1[keep], z2[keep], distance[keep]
    if distance.size == 0:
        raise VerificationError("no distinct point pairs were drawn")

    ratios = np.abs(_values(target, z1) - _values(target, z2)) / distance
    result = BiLipschitzResult(float(ratios.min()), float(ratios.max()), int(distance.size))
    logger.debug(f"Bi-Lipschitz sample ({region}, seed={seed}): {result.to_dict()}")
    return result

def lipschitz_envelope(f: HarmonicMap) -> Tuple[float, float]:
    """
    The distortion sandwich ((1-k)|alpha|, (1+k)|alpha|).

    k is sum n|a_n| + sum n|b_n| for interior maps (|alpha| = 1) and the minimal
    k of the Sigma_H condition for exterior maps.
    """
    if isinstance(f, InteriorMap):
        k = f.analytic_derivative_sum() + f.coanalytic_derivative_sum()
        scale = 1.0
    else:
        k, _ = check_sigma_condition(f)
        scale = abs(f.alpha)
    return (1.0 - k) * scale, (1.0 + k) * scale

def starlike_angle(f: InteriorMap, grid: GridSpec) -> float:
    """
    Largest |arg((z f_z - conj(z) f_zbar) / f)| over an inner grid (origin excluded).

    Raises:
        VerificationError: If the grid leaves the unit disk or f vanishes on it
    """
    if grid.radii[-1] >= 1.0:
        raise VerificationError("starlikeness is checked on radii below 1 only")
    z = grid.points().ravel()
    values = np.asarray(evaluate_interior(f, z))
    if np.any(values == 0):
        raise VerificationError("f vanishes at a grid point; the angle is undefined")
    f_z, f_zbar = _partials(f, z)
    quotient = (z * f_z - np.conj(z) * f_zbar) / values
    return float(np.max(np.abs(np.angle(quotient))))

def sense_preserving_scan(target: Target, grid: GridSpec) -> float:
    """Smallest Jacobian |f_z|^2 - |f_zbar|^2 over the grid."""
    f_z, f_zbar = _partials(target, grid.points().ravel())
    return float(np.min(jacobian_from_partials(f_z, f_zbar)))

def seam_continuity(F: PlaneExtension, n_angles: int = 1000, eps: float = 1e-6) -> Tuple[float, float]:
    """
    Largest gap |F((1-eps)e^it) - F((1+eps)e^it)| and the allowance C*eps.

    C is 10 times the total coefficient magnitude (|alpha|, |beta|, |A| included).
    """
    theta = 2.0 * np.pi * np.arange(n_angles) / n_angles
    unit = np.exp(1j * theta)
    inside = np.asarray(evaluate_extension(F, (1.0 - eps) * unit))
    outside = np.asarray(evaluate_extension(F, (1.0 + eps) * unit))
    gap = float(np.max(np.abs(inside - outside)))

    f = F.source
    total = sum(abs(c) for _, c in f.a) + sum(abs(c) for _, c in f.b)
    if isinstance(f, InteriorMap):
        total += 1.0
    else:
        total += abs(f.alpha) + abs(f.beta) + abs(f.A)
    return gap, 10.0 * total * eps

def seam_agreement(F: PlaneExtension, n_angles: int = 1000) -> float:
    """Largest difference between the extension and the source on |z| = 1."""
    theta = 2.0 * np.pi * np.arange(n_angles) / n_angles
    on_circle = np.asarray(evaluate_extension(F, np.exp(1j * theta)))
    return float(np.max(np.abs(on_circle - np.asarray(source_value_on_seam(F, theta)))))

def _asymptotic_mu(F: PlaneExtension) -> Optional[float]:
    if isinstance(F.source, ExteriorMap):
        return abs(F.source.beta) / abs(F.source.alpha)
    return None

def verify_extension(
    F: PlaneExtension,
    grid: GridSpec,
    pair_count: int,
    seed: int,
    order: Optional[float] = None,
    progress_callback: Optional[Callable[[float, str], None]] = None
) -> VerificationReport:
    """
    Run every numerical check on an extension and compare against its analytic bounds.

    Args:
        F: Plane extension to verify
        grid: Sampling grid (region "both" checks both sides of the seam)
        pair_count: Number of random pairs per bi-Lipschitz region
        seed: PRNG seed
        order: Strongly-starlike order; enables the angle scan for interior sources
        progress_callback: Optional function accepting (float_progress, string_status)

    Returns:
        VerificationReport: Results plus a list of bound violations
    """
    def report_progress(value: float, status: str) -> None:
        if progress_callback is not None:
            progress_callback(value, status)
        logger.info(status)

    violations = []
    bounds = F.analytic_bounds
    region_sup: Dict[str, float] = {}
    skipped = 0
    sup_mu, argmax_point = -1.0, 0j

    regions = [REGION_INNER, REGION_OUTER] if grid.region == REGION_BOTH else [grid.region]
    for step, region in enumerate(regions):
        report_progress(0.1 + 0.4 * step / len(regions), f"Sampling |mu| on the {region} grid...")
        if not grid.covers(region):
            continue
        sub_grid = grid.restrict(region)
        points = sub_grid.points().ravel()
        moduli, region_skipped = _dilatation_moduli(F, points)
        skipped += region_skipped
        if region_skipped == points.size:
            violations.append(f"dilatation undefined on the whole {region} grid")
            continue
        index = int(np.argmax(moduli))
        region_sup[region] = float(moduli[index])
        if region_sup[region] > sup_mu:
            sup_mu, argmax_point = region_sup[region], complex(points[index])
        bound = bounds.inner if region == REGION_INNER else bounds.outer
        if bound is not None and region_sup[region] > bound + BOUND_TOL:
            violations.append(f"{region} sup |mu| {region_sup[region]:.12g} exceeds bound {bound:.12g}")

    report_progress(0.55, "Scanning the Jacobian...")
    min_jacobian = sense_preserving_scan(F, grid)

    report_progress(0.65, "Sampling bi-Lipschitz ratios...")
    lower, upper = lipschitz_envelope(F.source)
    envelope_region = REGION_INNER if isinstance(F.source, InteriorMap) else REGION_OUTER
    bilipschitz = bilipschitz_sample(F.source, envelope_region, pair_count, seed, grid.radii[0], grid.r_max)
    if lower > 0:
        if bilipschitz.min_ratio < lower - BOUND_TOL or bilipschitz.max_ratio > upper + BOUND_TOL:
            violations.append(
                f"bi-Lipschitz ratios [{bilipschitz.min_ratio:.12g}, {bilipschitz.max_ratio:.12g}] "
                f"leave [{lower:.12g}, {upper:.12g}]"
            )

    max_angle = None
    if order is not None and isinstance(F.source, InteriorMap):
        report_progress(0.8, "Scanning the strongly-starlike angle...")
        if grid.covers(REGION_INNER):
            max_angle = starlike_angle(F.source, grid.restrict(REGION_INNER))

    report_progress(0.9, "Checking continuity across the unit circle...")
    gap, allowance = seam_continuity(F)
    if gap > allowance:
        violations.append(f"seam gap {gap:.3g} exceeds {allowance:.3g}")

    report = VerificationReport(
        sup_mu=sup_mu,
        argmax_point=argmax_point,
        bilipschitz=bilipschitz,
        min_jacobian=min_jacobian,
        max_starlike_angle=max_angle,
        grid=grid,
        seed=seed,
        region_sup=region_sup,
        skipped_points=skipped,
        asymptotic_mu=_asymptotic_mu(F),
        seam_gap=gap,
        violations=tuple(violations),
    )
    report_progress(1.0, "Verification finished.")
    return report

