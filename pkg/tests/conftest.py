"""
Shared pytest fixtures for harmonicqc tests.

This module provides common fixtures used across multiple test modules.
"""

import json
import pytest
import numpy as np

from harmonicqc.harmonic_core import InteriorMap
from harmonicqc.samples import sigma_example, strongly_starlike_example
from harmonicqc.verify import default_grid, REGION_BOTH

@pytest.fixture
def identity_map():
    """Return the identity as an interior map."""
    return InteriorMap()

@pytest.fixture
def sigma_map():
    """Return z - (i/6) conj(z) + (i/4) log|z| - (i/8) z^-4."""
    return sigma_example()

@pytest.fixture
def f2_map():
    """Return z + conj(z)^2 / psi_2(1/2)."""
    return strongly_starlike_example(2, 0.5)

@pytest.fixture
def rng():
    """Return a seeded NumPy generator so property tests are reproducible."""
    return np.random.default_rng(20240607)

@pytest.fixture
def small_grid():
    """Return a coarse grid on both sides of the unit circle."""
    return default_grid(REGION_BOTH, n_radii=30, n_angles=120)

@pytest.fixture
def sigma_document_dict():
    """Return the worked exterior example as a document dictionary."""
    return {
        "kind": "exterior",
        "label": "worked example",
        "alpha": [1.0, 0.0],
        "beta": [0.0, -1.0 / 6.0],
        "A": [0.0, 0.25],
        "coefficients": {"a": [[4, 0.0, -0.125]], "b": []}
    }

@pytest.fixture
def write_document(tmp_path):
    """Return a helper that writes a document dictionary (or raw text) to a file."""
    def _write(content, name="map.json"):
        path = tmp_path / name
        text = content if isinstance(content, str) else json.dumps(content)
        path.write_text(text, encoding="utf-8")
        return str(path)
    return _write

@pytest.fixture
def env_config_dict():
    """Return a configuration with a small grid so CLI runs stay fast."""
    return {
        "grid_radii": 20,
        "grid_angles": 90,
        "r_min": 1e-3,
        "r_max": 10.0,
        "pairs": 500,
        "seed": 7,
        "figure_points": 64,
        "figure_radii": [0.2, 0.4, 0.6, 0.8, 1.0, 1.25, 1.6, 2.0],
        "figure_rays": 12,
        "profiles": "starlike,convex,strongly-starlike"
    }

@pytest.fixture
def mock_config(monkeypatch, env_config_dict):
    """Mock the config module to return predetermined values."""
    def mock_get_config():
        return env_config_dict.copy()

    monkeypatch.setattr("harmonicqc.config.get_config", mock_get_config)
