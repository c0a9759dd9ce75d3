"""
Core module for harmonicqc.

This module contains the orchestration logic behind the command-line
subcommands: class checks, extension and verification, figure rendering and
convolution. Every pipeline returns a report dictionary together with the
exit code the CLI should use.
"""

import json
import math
import time
import pathlib
import logging
from typing import Dict, Any, Callable, List, Optional, Tuple, Union

from . import __version__
from .harmonic_core import ExteriorMap
from .coefficients import (
    check_membership,
    check_sigma_condition,
    get_profile,
    refined_sigma_k,
    sigma_functional,
    strongly_starlike_constants,
)
from .extension import extend
from .verify import GridSpec, VerificationError, verify_extension, BOUND_TOL, REGION_INNER, REGION_OUTER
from .convolution import ConvolutionError, convolve, closure_check, cauchy_schwarz_diagnostic
from .documents import MapDocument, to_dict
from .render import FigureSpec, render_extension

logger = logging.getLogger('harmonicqc')

EXIT_OK = 0
EXIT_NOT_MET = 1
EXIT_INPUT_ERROR = 2
EXIT_BOUND_VIOLATION = 3

SCHEMA_VERSION = 1

SIGMA_PROFILE = "sigma"
INTERIOR_PROFILES = ("starlike", "convex", "strongly-starlike")

ProgressCallback = Callable[[float, str], None]

class PipelineError(Exception):
    """Error raised by a pipeline, carrying the exit code for the CLI."""
    def __init__(self, message: str, exit_code: int = EXIT_INPUT_ERROR):
        self.exit_code = exit_code
        super().__init__(message)

def _no_progress(progress_value: float, status: str) -> None:
    pass

def _report(command: str, **sections: Any) -> Dict[str, Any]:
    report: Dict[str, Any] = {
        "schema_version": SCHEMA_VERSION,
        "tool": "harmonicqc",
        "version": __version__,
        "command": command,
    }
    report.update(sections)
    return report

def _effective_order(document: MapDocument, order: Optional[float]) -> Optional[float]:
    return order if order is not None else document.order

def _sigma_class_report(f: ExteriorMap) -> Dict[str, Any]:
    minimal_k, member_of = check_sigma_condition(f)
    return {
        "profile": SIGMA_PROFILE,
        "weighted_sum": sigma_functional(f),
        "member": member_of is not None,
        "minimal_k": minimal_k,
        "refined_k": refined_sigma_k(f),
    }

def _skip(message: str, strict: bool) -> None:
    if strict:
        raise PipelineError(message, EXIT_INPUT_ERROR)
    logger.warning(f"{message}; skipped.")

def class_reports(
    document: MapDocument,
    profile_names: List[str],
    order: Optional[float] = None,
    strict: bool = True
) -> List[Dict[str, Any]]:
    """
    One class report per applicable profile.

    Exterior maps are always checked against Sigma_H. For interior maps a
    profile that cannot be evaluated (sigma, or strongly-starlike without an
    order) is an input error when strict, and is skipped with a warning
    otherwise (the configured default list).

    Raises:
        PipelineError: For unknown or unusable profiles, or when no profile
            could be evaluated (exit code 2)
    """
    for name in profile_names:
        if name not in INTERIOR_PROFILES and name != SIGMA_PROFILE:
            raise PipelineError(f"unknown profile '{name}'", EXIT_INPUT_ERROR)

    f = document.map
    if isinstance(f, ExteriorMap):
        ignored = [name for name in profile_names if name != SIGMA_PROFILE]
        if ignored:
            logger.warning(f"Profiles {', '.join(ignored)} apply to interior maps only; checking sigma.")
        return [_sigma_class_report(f)]

    reports = []
    for name in profile_names:
        if name == SIGMA_PROFILE:
            _skip("Profile 'sigma' applies to exterior maps only", strict)
            continue
        if name == "strongly-starlike" and order is None:
            _skip("Profile 'strongly-starlike' needs an order (--order or document 'order')", strict)
            continue
        report = check_membership(f, get_profile(name, order)).to_dict()
        if name == "strongly-starlike":
            k1, k2 = strongly_starlike_constants(order)
            report["class_bounds"] = {"inner": k2, "outer": k1}
        reports.append(report)

    if not reports:
        raise PipelineError("no requested profile applies to this interior map", EXIT_INPUT_ERROR)
    return reports

def run_check(
    document: MapDocument,
    profile_names: List[str],
    order: Optional[float] = None,
    strict: bool = True
) -> Tuple[Dict[str, Any], int]:
    """
    Check class membership for each requested profile.

    Returns:
        tuple: (report, exit code 0 if every membership holds, else 1)
    """
    order = _effective_order(document, order)
    logger.info(f"Checking {document.kind} map against: {', '.join(profile_names) or 'no profiles'}")
    reports = class_reports(document, profile_names, order, strict)
    exit_code = EXIT_OK if all(r["member"] for r in reports) else EXIT_NOT_MET
    return _report("check", input=to_dict(document), classes=reports), exit_code

def _class_bound_violations(reports: List[Dict[str, Any]], region_sup: Dict[str, float]) -> List[str]:
    violations = []
    for report in reports:
        bounds = report.get("class_bounds")
        if not bounds or not report["member"]:
            continue
        for region in (REGION_INNER, REGION_OUTER):
            sup = region_sup.get(region)
            if sup is not None and sup > bounds[region] + BOUND_TOL:
                violations.append(
                    f"{region} sup |mu| {sup:.12g} exceeds the {report['profile']} bound {bounds[region]:.12g}"
                )
    return violations

def run_extend_verify(
    document: MapDocument,
    grid: GridSpec,
    pair_count: int,
    seed: int,
    profile_names: List[str],
    order: Optional[float] = None,
    progress_callback: Optional[ProgressCallback] = None,
    strict: bool = True
) -> Tuple[Dict[str, Any], int]:
    """
    Build the plane extension, verify it numerically and compare with every analytic bound.

    Args:
        document: Validated map document
        grid: Sampling grid
        pair_count: Random pairs for the bi-Lipschitz sample
        seed: PRNG seed
        profile_names: Profiles for the class section of the report
        order: Strongly-starlike order (falls back to the document's)
        progress_callback: Function accepting (float_progress, string_status)
        strict: Whether a requested profile that cannot be evaluated is an error

    Returns:
        tuple: (report, exit code 0, or 3 if a sampled value breaks a bound)

    Raises:
        PipelineError: If the verification cannot run on this input (exit code 2)
    """
    progress_callback = progress_callback or _no_progress
    start_time = time.time()
    order = _effective_order(document, order)

    progress_callback(0.0, "Building the extension...")
    extension = extend(document.map)
    reports = class_reports(document, profile_names, order, strict)

    try:
        verification = verify_extension(extension, grid, pair_count, seed, order, progress_callback)
    except VerificationError as e:
        raise PipelineError(f"verification failed: {e}", EXIT_INPUT_ERROR) from e

    violations = list(verification.violations)
    violations.extend(_class_bound_violations(reports, verification.region_sup))

    angle_bound = None
    if order is not None and verification.max_starlike_angle is not None:
        angle_bound = math.pi * order / 2
        member = any(r["member"] and "class_bounds" in r for r in reports)
        if member and verification.max_starlike_angle > angle_bound + BOUND_TOL:
            violations.append(
                f"starlike angle {verification.max_starlike_angle:.12g} exceeds {angle_bound:.12g}"
            )

    for message in violations:
        logger.error(f"Bound violation: {message}")

    verification_section = verification.to_dict()
    verification_section["starlike_angle_bound"] = angle_bound
    verification_section["violations"] = violations

    report = _report(
        "extend-verify",
        input=to_dict(document),
        classes=reports,
        extension={"region_rule": extension.region_rule, "analytic_bounds": extension.analytic_bounds.to_dict()},
        verification=verification_section,
    )
    logger.info(f"Verification completed in {time.time() - start_time:.2f} seconds.")
    return report, EXIT_BOUND_VIOLATION if violations else EXIT_OK

def run_render(
    document: MapDocument,
    path: Union[str, pathlib.Path],
    spec: FigureSpec
) -> Tuple[Dict[str, Any], int]:
    """
    Draw the circle and ray images of the map's extension to an SVG file.

    Raises:
        RenderError: If the figure cannot be written
    """
    extension = extend(document.map)
    written = render_extension(extension, path, spec)
    report = _report(
        "render",
        input=to_dict(document),
        figure={
            "path": str(written),
            "circles": len(spec.radii),
            "rays": spec.rays,
            "points": spec.points,
            "radii": list(spec.radii),
        },
    )
    return report, EXIT_OK

def run_convolve(first: MapDocument, second: MapDocument) -> Tuple[Dict[str, Any], int]:
    """
    Convolve two exterior maps and check the product against sqrt(k1 k2).

    Returns:
        tuple: (report, exit code 0; 1 if an operand is outside Sigma_H(k<1);
        3 if the product breaks the closure bound)

    Raises:
        PipelineError: If either document is an interior map (exit code 2)
    """
    for position, document in (("first", first), ("second", second)):
        if not isinstance(document.map, ExteriorMap):
            raise PipelineError(f"convolution needs exterior maps; the {position} document is interior")

    try:
        product = convolve(first.map, second.map)
    except ConvolutionError as e:
        raise PipelineError(str(e), EXIT_INPUT_ERROR) from e
    product_document = MapDocument(map=product, label="convolution")

    try:
        closure = closure_check(first.map, second.map)
    except ConvolutionError as e:
        logger.warning(f"Closure check not applicable: {e}")
        report = _report(
            "convolve",
            inputs=[to_dict(first), to_dict(second)],
            product=to_dict(product_document),
            convolution=None,
        )
        return report, EXIT_NOT_MET

    convolution = closure.to_dict()
    convolution["cauchy_schwarz"] = cauchy_schwarz_diagnostic(first.map, second.map)
    if not closure.within_bound:
        logger.error(f"Bound violation: M = {closure.M:.12g} exceeds sqrt(k1 k2) = {closure.bound:.12g}")

    report = _report(
        "convolve",
        inputs=[to_dict(first), to_dict(second)],
        product=to_dict(product_document),
        convolution=convolution,
    )
    return report, EXIT_OK if closure.within_bound else EXIT_BOUND_VIOLATION

def dumps_report(report: Dict[str, Any]) -> str:
    return json.dumps(report, indent=2) + "\n"

def write_report(report: Dict[str, Any], path: Union[str, pathlib.Path]) -> None:
    """
    Write a report as JSON.

    Raises:
        PipelineError: If the file cannot be written (exit code 2)
    """
    path = pathlib.Path(path)
    try:
        path.write_text(dumps_report(report), encoding='utf-8')
    except OSError as e:
        raise PipelineError(f"cannot write report {path}: {e.strerror}", EXIT_INPUT_ERROR) from e
    logger.info(f"Report saved to: {path}")
