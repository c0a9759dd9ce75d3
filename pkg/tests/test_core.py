"""
Tests for the core module of harmonicqc.

This module tests the pipelines behind the subcommands and the exit codes
they hand back to the CLI.
"""

import json
import math
import pytest
from unittest.mock import patch, MagicMock

from harmonicqc import core
from harmonicqc.core import PipelineError
from harmonicqc.documents import MapDocument, load_preset
from harmonicqc.harmonic_core import InteriorMap, ExteriorMap
from harmonicqc.render import FigureSpec

@pytest.fixture
def sigma_document():
    return load_preset("sigma-example")

@pytest.fixture
def f2_document():
    return load_preset("strongly-starlike-f2")

class TestCheck:
    """Test suite for the class check pipeline."""

    def test_identity(self):
        """Test the report header and the member classes of the identity."""
        # Execute test
        report, exit_code = core.run_check(load_preset("identity"), ["starlike", "convex"])

        # Assert results
        assert exit_code == core.EXIT_OK
        assert report["schema_version"] == core.SCHEMA_VERSION
        assert report["tool"] == "harmonicqc"
        assert report["command"] == "check"
        assert [c["member"] for c in report["classes"]] == [True, True]

    def test_non_member(self):
        """Test exit code 1 when one class does not hold."""
        document = MapDocument(map=InteriorMap(a=[(2, 0.3)]))
        report, exit_code = core.run_check(document, ["starlike", "convex"])
        assert exit_code == core.EXIT_NOT_MET
        assert [c["member"] for c in report["classes"]] == [True, False]

    def test_document_order_is_used(self, f2_document):
        """Test that the document's order selects the strongly-starlike weights."""
        # Execute test
        report, exit_code = core.run_check(f2_document, ["strongly-starlike"])

        # Assert results
        assert exit_code == core.EXIT_OK
        bounds = report["classes"][0]["class_bounds"]
        assert bounds["inner"] == pytest.approx(math.sin(math.pi / 4))
        assert bounds["outer"] == pytest.approx(0.87403204889764219)

    def test_strongly_starlike_without_order_is_an_input_error(self):
        """Test that a requested profile with no known order raises with exit code 2."""
        with pytest.raises(PipelineError, match="needs an order") as exc_info:
            core.run_check(MapDocument(map=InteriorMap(a=[(2, 0.6)])), ["strongly-starlike"])
        assert exc_info.value.exit_code == core.EXIT_INPUT_ERROR

    def test_sigma_on_interior_map_is_an_input_error(self):
        """Test that sigma alone cannot be evaluated for an interior map."""
        with pytest.raises(PipelineError) as exc_info:
            core.run_check(MapDocument(map=InteriorMap()), ["sigma"])
        assert exc_info.value.exit_code == core.EXIT_INPUT_ERROR

    def test_default_profiles_skip_with_warning(self, caplog):
        """Test that a non-strict list skips unusable profiles and checks the rest."""
        # Execute test
        report, exit_code = core.run_check(
            MapDocument(map=InteriorMap()), ["starlike", "strongly-starlike"], strict=False
        )

        # Assert results
        assert [c["profile"] for c in report["classes"]] == ["starlike"]
        assert exit_code == core.EXIT_OK
        assert "needs an order" in caplog.text

    def test_nothing_evaluated_is_an_input_error(self):
        """Test that skipping every profile is an error even when not strict."""
        with pytest.raises(PipelineError, match="no requested profile"):
            core.run_check(MapDocument(map=InteriorMap()), ["strongly-starlike"], strict=False)

    def test_exterior_map_gets_sigma(self, sigma_document):
        """Test that exterior maps are checked against Sigma_H only."""
        # Execute test
        report, exit_code = core.run_check(sigma_document, ["starlike", "convex"])

        # Assert results
        assert exit_code == core.EXIT_OK
        (sigma,) = report["classes"]
        assert sigma["profile"] == core.SIGMA_PROFILE
        assert sigma["minimal_k"] == pytest.approx(11 / 12)
        assert sigma["refined_k"] == pytest.approx(7 / 9)

    def test_unknown_profile(self, sigma_document):
        """Test that an unknown profile raises with exit code 2."""
        with pytest.raises(PipelineError) as exc_info:
            core.run_check(sigma_document, ["spirallike"])
        assert exc_info.value.exit_code == core.EXIT_INPUT_ERROR

class TestExtendVerify:
    """Test suite for the extension and verification pipeline."""

    def test_worked_example(self, sigma_document, small_grid):
        """Test the sections of the report and the progress calls."""
        # Setup test
        progress_callback = MagicMock()

        # Execute test
        report, exit_code = core.run_extend_verify(
            sigma_document, small_grid, 500, 1, ["sigma"], progress_callback=progress_callback
        )

        # Assert results
        assert exit_code == core.EXIT_OK
        assert report["command"] == "extend-verify"
        assert report["extension"]["analytic_bounds"]["overall"] == pytest.approx(7 / 9)
        assert report["verification"]["starlike_angle_bound"] is None
        assert report["verification"]["violations"] == []
        progress_callback.assert_any_call(0.0, "Building the extension...")
        json.dumps(report)

    def test_strongly_starlike_angle_bound(self, f2_document, small_grid):
        """Test that an order adds the starlike angle bound pi*order/2."""
        report, exit_code = core.run_extend_verify(f2_document, small_grid, 200, 0, ["strongly-starlike"])
        assert exit_code == core.EXIT_OK
        assert report["verification"]["starlike_angle_bound"] == pytest.approx(math.pi / 4)
        assert report["verification"]["max_starlike_angle"] <= math.pi / 4

    def test_class_bound_violation(self, f2_document, small_grid):
        """Test exit code 3 when a sampled sup exceeds a class bound."""
        # Setup test: shrink the class bounds below the sampled inner sup
        with patch('harmonicqc.core.strongly_starlike_constants', return_value=(0.1, 0.1)):
            # Execute test
            report, exit_code = core.run_extend_verify(f2_document, small_grid, 200, 0, ["strongly-starlike"])

        # Assert results
        assert exit_code == core.EXIT_BOUND_VIOLATION
        assert any("strongly-starlike" in v for v in report["verification"]["violations"])

class TestConvolve:
    """Test suite for the convolution pipeline."""

    def test_worked_example(self, sigma_document):
        """Test the closure section and the Cauchy-Schwarz diagnostic."""
        # Execute test
        report, exit_code = core.run_convolve(sigma_document, sigma_document)

        # Assert results
        assert exit_code == core.EXIT_OK
        assert report["product"]["label"] == "convolution"
        assert report["convolution"]["within_bound"] is True
        assert report["convolution"]["cauchy_schwarz"]["relaxed_product"] == pytest.approx(11 / 12)

    def test_interior_operand(self, sigma_document):
        """Test that interior documents are rejected with exit code 2."""
        with pytest.raises(PipelineError) as exc_info:
            core.run_convolve(sigma_document, load_preset("identity"))
        assert exc_info.value.exit_code == core.EXIT_INPUT_ERROR

    def test_operand_outside_sigma(self, sigma_document):
        """Test exit code 1 and no closure section when an operand has k >= 1."""
        outside = MapDocument(map=ExteriorMap(a=[(1, 1.0)]))
        report, exit_code = core.run_convolve(outside, sigma_document)
        assert exit_code == core.EXIT_NOT_MET
        assert report["convolution"] is None

    def test_closure_violation(self, sigma_document):
        """Test exit code 3 when the product breaks the bound."""
        # Setup test
        closure = MagicMock(within_bound=False, M=1.0, bound=0.5)
        closure.to_dict.return_value = {"M": 1.0, "bound": 0.5, "within_bound": False}

        # Execute test
        with patch('harmonicqc.core.closure_check', return_value=closure):
            report, exit_code = core.run_convolve(sigma_document, sigma_document)

        # Assert results
        assert exit_code == core.EXIT_BOUND_VIOLATION
        assert report["convolution"]["within_bound"] is False

class TestOutputs:
    """Test suite for figures and report files."""

    def test_run_render(self, sigma_document, tmp_path):
        """Test the figure summary of the render pipeline."""
        path = tmp_path / "figure.svg"
        report, exit_code = core.run_render(sigma_document, path, FigureSpec(points=32))
        assert exit_code == core.EXIT_OK
        assert report["figure"]["circles"] == 8
        assert path.exists()

    def test_write_report(self, tmp_path):
        """Test that reports are written as indented JSON with a final newline."""
        path = tmp_path / "report.json"
        core.write_report({"command": "check"}, path)
        assert path.read_text() == '{\n  "command": "check"\n}\n'

    def test_write_report_unwritable(self, tmp_path):
        """Test that an unwritable report path raises with exit code 2."""
        with pytest.raises(PipelineError) as exc_info:
            core.write_report({}, tmp_path / "missing" / "report.json")
        assert exc_info.value.exit_code == core.EXIT_INPUT_ERROR
