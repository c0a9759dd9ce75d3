"""
Convolution module for harmonicqc.

This module implements the harmonic (coefficient-wise) convolution of two
exterior maps and the check that the product of members of Sigma_H(k1) and
Sigma_H(k2) lies in Sigma_H(sqrt(k1 k2)).
"""

import math
import logging
from dataclasses import dataclass
from typing import Dict, Any, List, Tuple

import numpy as np

from .harmonic_core import ExteriorMap, Coefficients, HarmonicMapError
from .coefficients import check_sigma_condition, MEMBERSHIP_TOL

logger = logging.getLogger('harmonicqc')

class ConvolutionError(ValueError):
    """Raised when the convolution or its closure check cannot be carried out."""
    pass

@dataclass(frozen=True)
class ConvolutionReport:
    """Result of a closure check: the product map, its functional M and the bound sqrt(k1 k2)."""
    product: ExteriorMap
    M: float
    bound: float
    within_bound: bool
    k1: float
    k2: float

    def to_dict(self) -> Dict[str, Any]:
        return {
            "M": self.M,
            "bound": self.bound,
            "within_bound": self.within_bound,
            "k1": self.k1,
            "k2": self.k2,
        }

def _multiply(first: Coefficients, second: Coefficients) -> Coefficients:
    # indices missing on either side give a zero product and are dropped
    other = dict(second)
    return tuple((n, c * other[n]) for n, c in first if n in other and c * other[n] != 0)

def convolve(f1: ExteriorMap, f2: ExteriorMap) -> ExteriorMap:
    """
    Coefficient-wise product of two exterior maps.

    Raises:
        ConvolutionError: If the product violates |beta| < |alpha|
    """
    try:
        product = ExteriorMap(
            alpha=f1.alpha * f2.alpha,
            beta=f1.beta * f2.beta,
            a=_multiply(f1.a, f2.a),
            b=_multiply(f1.b, f2.b),
            A=f1.A * f2.A,
        )
    except HarmonicMapError as e:
        raise ConvolutionError(f"convolution is not an exterior map: {e}") from e
    logger.debug(f"Convolution has {len(product.a)} analytic and {len(product.b)} co-analytic terms")
    return product

def _minimal_k(f: ExteriorMap, label: str) -> float:
    k, member_of = check_sigma_condition(f)
    if member_of is None:
        raise ConvolutionError(f"{label} is not in Sigma_H(k) for any k < 1 (minimal k = {k:.12g})")
    return k

def closure_check(f1: ExteriorMap, f2: ExteriorMap) -> ConvolutionReport:
    """
    Convolve two Sigma_H members and compare the product's minimal k with sqrt(k1 k2).

    Raises:
        ConvolutionError: If either operand has minimal k >= 1
    """
    k1 = _minimal_k(f1, "first map")
    k2 = _minimal_k(f2, "second map")
    product = convolve(f1, f2)
    M, _ = check_sigma_condition(product)
    bound = math.sqrt(k1 * k2)
    report = ConvolutionReport(
        product=product,
        M=M,
        bound=bound,
        within_bound=M <= bound + MEMBERSHIP_TOL,
        k1=k1,
        k2=k2,
    )
    logger.debug(f"Closure check: {report.to_dict()}")
    return report

def _normalized_terms(f: ExteriorMap) -> Dict[Tuple[str, int], float]:
    scale = abs(f.alpha)
    terms = {("beta", 0): abs(f.beta) / scale, ("A", 0): abs(f.A) / scale}
    terms.update({("a", n): n * abs(c) / scale for n, c in f.a})
    terms.update({("b", n): n * abs(c) / scale for n, c in f.b})
    return terms

def cauchy_schwarz_diagnostic(f1: ExteriorMap, f2: ExteriorMap) -> Dict[str, float]:
    """
    Intermediate values of the Cauchy-Schwarz estimate behind the closure bound.

    With x and X the normalized coefficient terms of f1 and f2 (each summing to
    k1 and k2), the chain M <= sum x X <= |x| |X| <= sqrt(sum x) sqrt(sum X)
    = sqrt(k1 k2) holds whenever both maps are members.
    """
    first = _normalized_terms(f1)
    second = _normalized_terms(f2)
    keys: List[Tuple[str, int]] = sorted(set(first) | set(second))
    x = np.array([first.get(key, 0.0) for key in keys])
    X = np.array([second.get(key, 0.0) for key in keys])
    return {
        "sum_xX": float(np.dot(x, X)),
        "cs_product": float(np.linalg.norm(x) * np.linalg.norm(X)),
        "relaxed_product": float(math.sqrt(x.sum() * X.sum())),
        "bound": math.sqrt(_minimal_k(f1, "first map") * _minimal_k(f2, "second map")),
    }
