"""
Figure module for harmonicqc.

This module draws the images of concentric circles and radial rays under a
plane extension and writes them as an SVG file. Each curve is a separate
SVG group with id "circle-<i>" or "ray-<j>"; the image of the unit circle is
drawn with emphasis.
"""

import logging
import pathlib
from dataclasses import dataclass
from typing import Optional, Tuple, Union

import numpy as np
import matplotlib
matplotlib.use("Agg")
import matplotlib.pyplot as plt

from .extension import PlaneExtension, evaluate_extension

logger = logging.getLogger('harmonicqc')

DEFAULT_RADII = (0.2, 0.4, 0.6, 0.8, 1.0, 1.25, 1.6, 2.0)
DEFAULT_RAYS = 12
DEFAULT_POINTS = 512

SEAM_STYLE = {"color": "tab:red", "linewidth": 2.0, "zorder": 3}
CIRCLE_STYLE = {"color": "tab:blue", "linewidth": 0.8, "zorder": 2}
RAY_STYLE = {"color": "0.35", "linewidth": 0.6, "zorder": 1}

class RenderError(Exception):
    """Raised when a figure cannot be produced or written."""
    def __init__(self, message: str, path: Optional[pathlib.Path] = None):
        self.path = path
        super().__init__(f"{message}: {path}" if path is not None else message)

@dataclass(frozen=True)
class FigureSpec:
    radii: Tuple[float, ...] = DEFAULT_RADII
    rays: int = DEFAULT_RAYS
    points: int = DEFAULT_POINTS
    title: Optional[str] = None
    timestamp: bool = True

    def __post_init__(self) -> None:
        object.__setattr__(self, "radii", tuple(float(r) for r in self.radii))
        if not self.radii or any(r <= 0 for r in self.radii):
            raise RenderError("figure radii must be positive")
        if self.rays < 0 or self.points < 2:
            raise RenderError("figure needs rays >= 0 and at least 2 points per curve")

def circle_image(F: PlaneExtension, radius: float, points: int) -> np.ndarray:
    theta = np.linspace(0.0, 2.0 * np.pi, points)
    return np.asarray(evaluate_extension(F, radius * np.exp(1j * theta)))

def ray_image(F: PlaneExtension, angle: float, length: float, points: int) -> np.ndarray:
    return np.asarray(evaluate_extension(F, np.linspace(0.0, length, points) * np.exp(1j * angle)))

def render_extension(
    F: PlaneExtension,
    path: Union[str, pathlib.Path],
    spec: FigureSpec = FigureSpec()
) -> pathlib.Path:
    """
    Write the circle and ray images of F to an SVG file.

    Args:
        F: Plane extension to draw
        path: Output file; the format is always SVG
        spec: Radii, ray count, samples per curve and timestamp handling

    Returns:
        pathlib.Path: The written file

    Raises:
        RenderError: If the file cannot be written
    """
    path = pathlib.Path(path)
    length = max(spec.radii)
    logger.debug(f"Rendering {len(spec.radii)} circles and {spec.rays} rays, {spec.points} points each")

    with matplotlib.rc_context({"svg.hashsalt": "harmonicqc", "svg.fonttype": "none"}):
        fig, ax = plt.subplots(figsize=(7, 7))
        try:
            for j in range(spec.rays):
                w = ray_image(F, 2.0 * np.pi * j / spec.rays, length, spec.points)
                (line,) = ax.plot(w.real, w.imag, **RAY_STYLE)
                line.set_gid(f"ray-{j}")

            for i, radius in enumerate(spec.radii):
                w = circle_image(F, radius, spec.points)
                style = SEAM_STYLE if radius == 1.0 else CIRCLE_STYLE
                (line,) = ax.plot(w.real, w.imag, **style)
                line.set_gid(f"circle-{i}")

            if 1.0 not in spec.radii:
                w = circle_image(F, 1.0, spec.points)
                (line,) = ax.plot(w.real, w.imag, **SEAM_STYLE)
                line.set_gid("seam")

            ax.set_aspect("equal")
            ax.axhline(0.0, color="0.85", linewidth=0.5, zorder=0)
            ax.axvline(0.0, color="0.85", linewidth=0.5, zorder=0)
            if spec.title:
                ax.set_title(spec.title)

            metadata = {"Creator": "harmonicqc"}
            if not spec.timestamp:
                metadata["Date"] = None
            fig.savefig(path, format="svg", metadata=metadata)
        except OSError as e:
            raise RenderError(f"cannot write figure ({e.strerror})", path) from e
        finally:
            plt.close(fig)

    logger.info(f"Figure saved: {path}")
    return path
