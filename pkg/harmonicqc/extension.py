"""
Extension module for harmonicqc.

This module builds the explicit piecewise extensions of interior and exterior
harmonic maps to the whole plane and computes their series-level dilatation
bounds for each side of the unit circle.

Interior source f (|z| <= 1 keeps f):
    F(z) = z + sum a_n conj(z)^-n + sum conj(b_n) z^-n      for |z| > 1
Exterior source f (|z| >= 1 keeps f):
    F(z) = alpha z + beta conj(z) + sum a_n conj(z)^n + sum conj(b_n) z^n   for |z| < 1
"""

import logging
from dataclasses import dataclass
from typing import Dict, Any, Optional, Tuple

import numpy as np

from .harmonic_core import (
    InteriorMap,
    ExteriorMap,
    HarmonicMap,
    ComplexLike,
    evaluate_interior,
    evaluate_exterior,
    wirtinger_derivatives,
    dilatation_from_partials,
    sparse_power_sum,
    derivative_pairs,
)
from .coefficients import refined_sigma_k

logger = logging.getLogger('harmonicqc')

RULE_INTERIOR_SOURCE = "f on |z|<=1, reflected series on |z|>1"
RULE_EXTERIOR_SOURCE = "reflected series on |z|<1, f on |z|>=1"

@dataclass(frozen=True)
class AnalyticBounds:
    """
    Series-level bounds of |mu_F| on each side of the unit circle.

    None marks a bound that is unavailable because its denominator is not positive.
    """
    inner: Optional[float]
    outer: Optional[float]

    @property
    def overall(self) -> Optional[float]:
        if self.inner is None or self.outer is None:
            return None
        return max(self.inner, self.outer)

    def to_dict(self) -> Dict[str, Any]:
        return {"inner": self.inner, "outer": self.outer, "overall": self.overall}

@dataclass(frozen=True)
class PlaneExtension:
    """A piecewise map of the plane built from an interior or exterior source."""
    source: HarmonicMap
    region_rule: str
    analytic_bounds: AnalyticBounds

    @property
    def kind(self) -> str:
        return self.source.kind

def _ratio_or_none(numerator: float, denominator: float, label: str) -> Optional[float]:
    if denominator <= 0:
        logger.warning(f"{label} dilatation bound unavailable: denominator {denominator:.6g} is not positive")
        return None
    return float(numerator / denominator)

def extend_interior(f: InteriorMap) -> PlaneExtension:
    """
    Reflect an interior map across the unit circle.

    Bounds: inner sum n|b_n| / (1 - sum n|a_n|), outer sum n|a_n| / (1 - sum n|b_n|).
    """
    sa = f.analytic_derivative_sum()
    sb = f.coanalytic_derivative_sum()
    bounds = AnalyticBounds(
        inner=_ratio_or_none(sb, 1.0 - sa, "Inner"),
        outer=_ratio_or_none(sa, 1.0 - sb, "Outer"),
    )
    logger.debug(f"Interior extension bounds: {bounds.to_dict()}")
    return PlaneExtension(source=f, region_rule=RULE_INTERIOR_SOURCE, analytic_bounds=bounds)

def extend_exterior(f: ExteriorMap) -> PlaneExtension:
    """
    Reflect an exterior map into the unit disk.

    Bounds: inner (|beta| + sum n|a_n|) / (|alpha| - sum n|b_n|),
    outer (|beta| + |A|/2 + sum n|b_n|) / (|alpha| - |A|/2 - sum n|a_n|).
    """
    sa = f.analytic_derivative_sum()
    sb = f.coanalytic_derivative_sum()
    inner = _ratio_or_none(abs(f.beta) + sa, abs(f.alpha) - sb, "Inner")
    outer = refined_sigma_k(f)
    if outer is None:
        logger.warning("Outer dilatation bound unavailable: |alpha| - |A|/2 - sum n|a_n| is not positive")
    bounds = AnalyticBounds(inner=inner, outer=outer)
    logger.debug(f"Exterior extension bounds: {bounds.to_dict()}")
    return PlaneExtension(source=f, region_rule=RULE_EXTERIOR_SOURCE, analytic_bounds=bounds)

def extend(f: HarmonicMap) -> PlaneExtension:
    """Build the plane extension of either normal form."""
    if isinstance(f, InteriorMap):
        return extend_interior(f)
    return extend_exterior(f)

def _inner_mask(F: PlaneExtension, z: np.ndarray) -> np.ndarray:
    # the seam belongs to the source's own formula
    if isinstance(F.source, InteriorMap):
        return np.abs(z) <= 1.0
    return np.abs(z) < 1.0

def _reflected_interior_value(f: InteriorMap, z: np.ndarray) -> np.ndarray:
    w = 1.0 / z
    conj_b = tuple((n, c.conjugate()) for n, c in f.b)
    return z + sparse_power_sum(np.conj(w), f.a) + sparse_power_sum(w, conj_b)

def _reflected_exterior_value(f: ExteriorMap, z: np.ndarray) -> np.ndarray:
    conj_b = tuple((n, c.conjugate()) for n, c in f.b)
    return f.alpha * z + f.beta * np.conj(z) + sparse_power_sum(np.conj(z), f.a) + sparse_power_sum(z, conj_b)

def evaluate_extension(F: PlaneExtension, z: ComplexLike) -> ComplexLike:
    """
    Evaluate F by the formula of the region containing each point.

    The origin always lies in the polynomial (inner) region, so every point of
    the plane is admissible.
    """
    z = np.asarray(z, dtype=np.complex128)
    inner = _inner_mask(F, z)
    outer = ~inner
    values = np.empty_like(z)
    f = F.source
    if isinstance(f, InteriorMap):
        if np.any(inner):
            values[inner] = evaluate_interior(f, z[inner])
        if np.any(outer):
            values[outer] = _reflected_interior_value(f, z[outer])
    else:
        if np.any(inner):
            values[inner] = _reflected_exterior_value(f, z[inner])
        if np.any(outer):
            values[outer] = evaluate_exterior(f, z[outer])
    return values[()]

def extension_derivatives(F: PlaneExtension, z: ComplexLike) -> Tuple[ComplexLike, ComplexLike]:
    """
    Exact Wirtinger partials (F_z, F_zbar) of the extension, region by region.

    Reflected interior map (|z| > 1):
        F_z = 1 - sum n conj(b_n) z^(-n-1),  F_zbar = -sum n a_n conj(z)^(-n-1)
    Reflected exterior map (|z| < 1):
        F_z = alpha + sum n conj(b_n) z^(n-1),  F_zbar = beta + sum n a_n conj(z)^(n-1)
    """
    z = np.asarray(z, dtype=np.complex128)
    inner = _inner_mask(F, z)
    outer = ~inner
    f_z = np.empty_like(z)
    f_zbar = np.empty_like(z)
    f = F.source
    conj_b = tuple((n, c.conjugate()) for n, c in f.b)

    if isinstance(f, InteriorMap):
        if np.any(inner):
            f_z[inner], f_zbar[inner] = wirtinger_derivatives(f, z[inner])
        if np.any(outer):
            w = 1.0 / z[outer]
            f_z[outer] = 1.0 - sparse_power_sum(w, derivative_pairs(conj_b, 1))
            f_zbar[outer] = -sparse_power_sum(np.conj(w), derivative_pairs(f.a, 1))
    else:
        if np.any(inner):
            zi = z[inner]
            f_z[inner] = f.alpha + sparse_power_sum(zi, derivative_pairs(conj_b, -1))
            f_zbar[inner] = f.beta + sparse_power_sum(np.conj(zi), derivative_pairs(f.a, -1))
        if np.any(outer):
            f_z[outer], f_zbar[outer] = wirtinger_derivatives(f, z[outer])
    return f_z[()], f_zbar[()]

def dilatation_extension(F: PlaneExtension, z: ComplexLike) -> ComplexLike:
    """
    Complex dilatation of the extension at z.

    Raises:
        DegenerateDilatationError: If F_z vanishes at any point
    """
    f_z, f_zbar = extension_derivatives(F, z)
    return dilatation_from_partials(f_z, f_zbar)

def source_value_on_seam(F: PlaneExtension, theta: ComplexLike) -> ComplexLike:
    """Boundary values of the source map on the unit circle at angles theta."""
    z = np.exp(1j * np.asarray(theta, dtype=np.float64))
    if isinstance(F.source, InteriorMap):
        return evaluate_interior(F.source, z)
    return evaluate_exterior(F.source, z)
