"""
Harmonic core module for harmonicqc.

This module defines the two normal forms of harmonic mappings handled by the
package and the pointwise quantities computed from them:

* InteriorMap: f = h + conj(g) on the unit disk, with
  h(z) = z + sum a_n z^n (n >= 2) and g(z) = sum b_n z^n (n >= 1).
* ExteriorMap: f(z) = alpha z + beta conj(z) + sum a_n z^-n
  + conj(sum b_n z^-n) + A log|z| on |z| > 1.

All evaluation routines accept a Python/NumPy complex scalar or a NumPy array
of points and return a value of the same shape.
"""

import math
import logging
from dataclasses import dataclass, field
from typing import Iterable, Tuple, Union

import numpy as np

logger = logging.getLogger('harmonicqc')

Coefficients = Tuple[Tuple[int, complex], ...]
ComplexLike = Union[complex, float, np.ndarray]

# Slack used when flagging evaluation outside the declared domain
DOMAIN_SLACK = 1e-12

class HarmonicMapError(ValueError):
    """Raised when a map cannot be constructed from the given coefficients."""
    pass

class DomainError(HarmonicMapError):
    """Raised when a map is evaluated at a point where its formula is singular."""
    pass

class DegenerateDilatationError(ArithmeticError):
    """Raised when f_z vanishes, so the complex dilatation is undefined."""
    pass

def _check_complex(value: complex, name: str) -> complex:
    try:
        value = complex(value)
    except (TypeError, ValueError):
        raise HarmonicMapError(f"{name} must be a complex number, got {value!r}")
    if not (math.isfinite(value.real) and math.isfinite(value.imag)):
        raise HarmonicMapError(f"{name} must be finite, got {value!r}")
    return value

def normalize_coefficients(pairs: Iterable[Tuple[int, complex]], min_index: int, name: str) -> Coefficients:
    """
    Validate sparse (index, coefficient) pairs and return them sorted by index.

    Args:
        pairs: Iterable of (n, c_n)
        min_index: Smallest admissible index
        name: Label used in error messages ("a" or "b")

    Returns:
        Coefficients: Tuple of (int, complex) with strictly increasing indices

    Raises:
        HarmonicMapError: On duplicate or out-of-range indices, or non-finite values
    """
    normalized = []
    seen = set()
    for pair in pairs:
        try:
            n, c = pair
        except (TypeError, ValueError):
            raise HarmonicMapError(f"{name}: expected (index, coefficient) pairs, got {pair!r}")
        try:
            integral = not isinstance(n, bool) and int(n) == n
        except (TypeError, ValueError):
            integral = False
        if not integral:
            raise HarmonicMapError(f"{name}: index {n!r} is not an integer")
        n = int(n)
        if n < min_index:
            raise HarmonicMapError(f"{name}: index {n} below minimum {min_index}")
        if n in seen:
            raise HarmonicMapError(f"{name}: duplicate index {n}")
        seen.add(n)
        normalized.append((n, _check_complex(c, f"{name}[{n}]")))
    normalized.sort(key=lambda item: item[0])
    return tuple(normalized)

def _as_points(z: ComplexLike) -> np.ndarray:
    return np.asarray(z, dtype=np.complex128)

def _unwrap(values: np.ndarray) -> ComplexLike:
    # 0-d arrays come back as NumPy scalars
    return values[()]

def sparse_power_sum(w: np.ndarray, coefficients: Iterable[Tuple[int, complex]]) -> np.ndarray:
    """
    Evaluate sum c_n * w**n for sparse pairs with non-decreasing indices n >= 0.

    Powers are built by repeated multiplication so arrays of points cost one
    complex multiply per power up to the largest index.

    Args:
        w: Array of points
        coefficients: (n, c_n) pairs sorted by n

    Returns:
        np.ndarray: The sum, same shape as w
    """
    total = np.zeros_like(w)
    power = np.ones_like(w)
    current = 0
    for n, c in coefficients:
        while current < n:
            power = power * w
            current += 1
        total = total + c * power
    return total

def derivative_pairs(coefficients: Coefficients, shift: int) -> Tuple[Tuple[int, complex], ...]:
    # (n, c) -> (n + shift, n * c) for the termwise derivative
    return tuple((n + shift, n * c) for n, c in coefficients)

@dataclass(frozen=True)
class InteriorMap:
    """
    Finitely supported harmonic map f = h + conj(g) of the unit disk.

    The analytic part has unit linear coefficient and the co-analytic part
    has no constant term, so f(0) = 0 and f_z(0) = 1 by construction.
    """
    a: Coefficients = field(default=())
    b: Coefficients = field(default=())

    def __post_init__(self) -> None:
        object.__setattr__(self, "a", normalize_coefficients(self.a, 2, "a"))
        object.__setattr__(self, "b", normalize_coefficients(self.b, 1, "b"))

    @property
    def kind(self) -> str:
        return "interior"

    @property
    def max_index(self) -> int:
        indices = [n for n, _ in self.a] + [n for n, _ in self.b]
        return max(indices) if indices else 1

    def coefficient(self, part: str, n: int) -> complex:
        """Return a_n or b_n (0 when absent; a_1 is the implicit 1)."""
        if part == "a" and n == 1:
            return 1.0 + 0j
        return dict(getattr(self, part)).get(n, 0j)

    def conjugate(self) -> "InteriorMap":
        return InteriorMap(
            a=tuple((n, c.conjugate()) for n, c in self.a),
            b=tuple((n, c.conjugate()) for n, c in self.b),
        )

    def analytic_derivative_sum(self) -> float:
        """Sum of n|a_n| over the stored analytic coefficients."""
        return float(sum(n * abs(c) for n, c in self.a))

    def coanalytic_derivative_sum(self) -> float:
        """Sum of n|b_n| over the stored co-analytic coefficients."""
        return float(sum(n * abs(c) for n, c in self.b))

@dataclass(frozen=True)
class ExteriorMap:
    """
    Harmonic map of the exterior disk fixing infinity.

    f(z) = alpha z + beta conj(z) + sum a_n z^-n + conj(sum b_n z^-n) + A log|z|
    with a_0 = 0 and 0 <= |beta| < |alpha|.
    """
    alpha: complex = 1.0 + 0j
    beta: complex = 0j
    a: Coefficients = field(default=())
    b: Coefficients = field(default=())
    A: complex = 0j

    def __post_init__(self) -> None:
        object.__setattr__(self, "alpha", _check_complex(self.alpha, "alpha"))
        object.__setattr__(self, "beta", _check_complex(self.beta, "beta"))
        object.__setattr__(self, "A", _check_complex(self.A, "A"))
        object.__setattr__(self, "a", normalize_coefficients(self.a, 1, "a"))
        object.__setattr__(self, "b", normalize_coefficients(self.b, 1, "b"))
        if not abs(self.beta) < abs(self.alpha):
            raise HarmonicMapError(
                f"exterior map requires |beta| < |alpha|, got |beta|={abs(self.beta)}, |alpha|={abs(self.alpha)}"
            )

    @property
    def kind(self) -> str:
        return "exterior"

    @property
    def max_index(self) -> int:
        indices = [n for n, _ in self.a] + [n for n, _ in self.b]
        return max(indices) if indices else 0

    def coefficient(self, part: str, n: int) -> complex:
        """Return a_n or b_n (0 when absent)."""
        return dict(getattr(self, part)).get(n, 0j)

    def conjugate(self) -> "ExteriorMap":
        return ExteriorMap(
            alpha=self.alpha.conjugate(),
            beta=self.beta.conjugate(),
            a=tuple((n, c.conjugate()) for n, c in self.a),
            b=tuple((n, c.conjugate()) for n, c in self.b),
            A=self.A.conjugate(),
        )

    def analytic_derivative_sum(self) -> float:
        return float(sum(n * abs(c) for n, c in self.a))

    def coanalytic_derivative_sum(self) -> float:
        return float(sum(n * abs(c) for n, c in self.b))

HarmonicMap = Union[InteriorMap, ExteriorMap]

def in_domain(f: HarmonicMap, z: ComplexLike) -> np.ndarray:
    """
    Return a boolean mask telling which points lie in the map's domain.

    Interior maps live on |z| <= 1, exterior maps on |z| >= 1.
    """
    modulus = np.abs(_as_points(z))
    if isinstance(f, InteriorMap):
        return modulus <= 1.0 + DOMAIN_SLACK
    return modulus >= 1.0 - DOMAIN_SLACK

def _flag_outside(f: HarmonicMap, z: np.ndarray) -> None:
    outside = ~in_domain(f, z)
    if np.any(outside):
        logger.warning(f"Evaluating {f.kind} map at {int(np.count_nonzero(outside))} point(s) outside its domain.")

def _reject_origin(z: np.ndarray) -> None:
    if np.any(z == 0):
        raise DomainError("exterior map is singular at z = 0")

def log_modulus(z: np.ndarray) -> np.ndarray:
    """Real log|z| computed as 0.5 * ln(z * conj(z))."""
    return 0.5 * np.log((z * np.conj(z)).real)

def evaluate_interior(f: InteriorMap, z: ComplexLike) -> ComplexLike:
    """
    Evaluate f(z) = z + sum a_n z^n + conj(sum b_n z^n).

    Args:
        f: Interior map
        z: Point or array of points (meaningful for |z| <= 1)

    Returns:
        Value(s) of f, same shape as z
    """
    z = _as_points(z)
    _flag_outside(f, z)
    h = z + sparse_power_sum(z, f.a)
    g = sparse_power_sum(z, f.b)
    return _unwrap(h + np.conj(g))

def evaluate_exterior(f: ExteriorMap, z: ComplexLike) -> ComplexLike:
    """
    Evaluate f(z) = alpha z + beta conj(z) + sum a_n z^-n + conj(sum b_n z^-n) + A log|z|.

    Args:
        f: Exterior map
        z: Point or array of points, none equal to 0 (meaningful for |z| >= 1)

    Returns:
        Value(s) of f, same shape as z

    Raises:
        DomainError: If any point is the origin
    """
    z = _as_points(z)
    _reject_origin(z)
    _flag_outside(f, z)
    w = 1.0 / z
    value = (
        f.alpha * z
        + f.beta * np.conj(z)
        + sparse_power_sum(w, f.a)
        + np.conj(sparse_power_sum(w, f.b))
        + f.A * log_modulus(z)
    )
    return _unwrap(value)

def evaluate(f: HarmonicMap, z: ComplexLike) -> ComplexLike:
    """Evaluate either normal form at z."""
    if isinstance(f, InteriorMap):
        return evaluate_interior(f, z)
    return evaluate_exterior(f, z)

def wirtinger_derivatives(f: HarmonicMap, z: ComplexLike) -> Tuple[ComplexLike, ComplexLike]:
    """
    Compute the Wirtinger partials (f_z, f_zbar) from the exact series.

    Interior: f_z = h'(z), f_zbar = conj(g'(z)).
    Exterior: f_z = alpha + A/(2z) - sum n a_n z^(-n-1),
              f_zbar = beta + A/(2 conj z) - conj(sum n b_n z^(-n-1)).

    Raises:
        DomainError: If f is an exterior map and any point is the origin
    """
    z = _as_points(z)
    if isinstance(f, InteriorMap):
        f_z = 1.0 + sparse_power_sum(z, derivative_pairs(f.a, -1))
        f_zbar = np.conj(sparse_power_sum(z, derivative_pairs(f.b, -1)))
        return _unwrap(f_z), _unwrap(f_zbar)

    _reject_origin(z)
    w = 1.0 / z
    f_z = f.alpha + f.A * w / 2.0 - sparse_power_sum(w, derivative_pairs(f.a, 1))
    f_zbar = f.beta + f.A * np.conj(w) / 2.0 - np.conj(sparse_power_sum(w, derivative_pairs(f.b, 1)))
    return _unwrap(f_z), _unwrap(f_zbar)

def jacobian_from_partials(f_z: ComplexLike, f_zbar: ComplexLike) -> ComplexLike:
    """Return |f_z|^2 - |f_zbar|^2."""
    return np.abs(f_z) ** 2 - np.abs(f_zbar) ** 2

def jacobian(f: HarmonicMap, z: ComplexLike) -> ComplexLike:
    """
    Jacobian |f_z|^2 - |f_zbar|^2; positive values mean sense-preserving at z.
    """
    f_z, f_zbar = wirtinger_derivatives(f, z)
    return jacobian_from_partials(f_z, f_zbar)

def dilatation_from_partials(f_z: ComplexLike, f_zbar: ComplexLike) -> ComplexLike:
    """
    Return f_zbar / f_z.

    Raises:
        DegenerateDilatationError: If f_z vanishes at any point
    """
    f_z = np.asarray(f_z, dtype=np.complex128)
    if np.any(f_z == 0):
        raise DegenerateDilatationError("f_z vanishes; the map is not locally univalent there")
    return _unwrap(np.asarray(f_zbar, dtype=np.complex128) / f_z)

def dilatation(f: HarmonicMap, z: ComplexLike) -> ComplexLike:
    """
    Complex dilatation mu_f(z) = f_zbar(z) / f_z(z).

    Raises:
        DegenerateDilatationError: If f_z(z) = 0
        DomainError: If f is exterior and z = 0
    """
    f_z, f_zbar = wirtinger_derivatives(f, z)
    return dilatation_from_partials(f_z, f_zbar)
