"""
Tests for the command-line interface module of harmonicqc.

This module tests argument parsing, the progress callback and the exit codes
of every subcommand.
"""

import json
import logging
import pytest
from unittest.mock import patch, MagicMock, call

from harmonicqc import cli

@pytest.fixture
def reset_logger_level():
    """Restore the package logger level changed by --verbose."""
    logger = logging.getLogger('harmonicqc')
    level = logger.level
    yield
    logger.setLevel(level)

@pytest.fixture
def quiet_progress():
    """Replace the tqdm progress bar with a mock callback."""
    with patch('harmonicqc.cli.create_progress_callback', return_value=MagicMock()) as mock_create:
        yield mock_create

class TestParser:
    """Test suite for the argument parser."""

    def test_setup_cli_parser(self):
        """Test the subcommands and shared options."""
        # Execute test
        parser = cli.setup_cli_parser()
        args = parser.parse_args(["extend-verify", "--preset", "sigma-example", "--grid-radii", "10", "--seed", "3"])

        # Assert results
        assert parser.description is not None
        assert parser.epilog is not None
        assert args.command == "extend-verify"
        assert args.preset == "sigma-example"
        assert args.grid_radii == 10
        assert args.seed == 3
        assert args.order is None
        assert args.no_timestamp is False

    @pytest.mark.parametrize("argv", [
        [],
        ["explain"],
        ["check", "--seed", "-1"],
        ["check", "--pairs", "0"],
        ["check", "--input", "a.json", "--preset", "identity"],
        ["render", "--figure-radii", "0.5,x"],
    ])
    def test_usage_errors(self, argv):
        """Test that malformed command lines exit with code 2."""
        assert cli.run_cli(argv) == 2

    def test_figure_radii_list(self):
        """Test the comma separated radii option."""
        args = cli.setup_cli_parser().parse_args(["render", "--figure-radii", "0.5, 1,2.5"])
        assert args.figure_radii == [0.5, 1.0, 2.5]

    def test_build_run_config(self, mock_config):
        """Test that arguments override the configuration only when given."""
        # Setup test
        args = cli.setup_cli_parser().parse_args(["check", "--profiles", "Convex,starlike", "--pairs", "9"])

        # Execute test
        run_config = cli.build_run_config(args)

        # Assert results
        assert run_config["profiles"] == ["convex", "starlike"]
        assert run_config["pairs"] == 9
        assert run_config["seed"] == 7
        assert run_config["grid_radii"] == 20

class TestProgress:
    """Test suite for the tqdm progress callback."""

    def test_create_progress_callback(self):
        """Test the creation and behavior of the progress callback function."""
        # Setup test
        mock_tqdm = MagicMock()
        mock_tqdm.n = 0

        with patch('harmonicqc.cli.tqdm', return_value=mock_tqdm):
            # Execute test
            callback = cli.create_progress_callback()
            callback(0.5, "Inner region...")
            callback(0.7, "Outer region...")
            callback(1.0, "Verification finished.")

            # Assert results
            cli.tqdm.assert_called_once_with(total=100, desc="Processing", unit="%")
            assert mock_tqdm.update.call_count == 3
            mock_tqdm.set_description.assert_has_calls([
                call("Inner region..."),
                call("Outer region..."),
                call("Verification finished.")
            ])
            mock_tqdm.close.assert_called_once()

class TestRunCli:
    """Test suite for the exit codes of each subcommand."""

    def test_check_identity(self, mock_config, capsys):
        """Test that the identity is a member of every interior class."""
        # Execute test
        exit_code = cli.run_cli(["check", "--preset", "identity", "--profiles", "starlike,convex"])

        # Assert results
        assert exit_code == 0
        report = json.loads(capsys.readouterr().out)
        assert report["command"] == "check"
        assert [c["profile"] for c in report["classes"]] == ["starlike", "convex"]

    def test_check_non_member(self, mock_config, write_document):
        """Test exit code 1 for a_2 = 0.6 in the starlike class."""
        path = write_document({"kind": "interior", "coefficients": {"a": [[2, 0.6, 0.0]]}})
        assert cli.run_cli(["check", "-i", path, "--profiles", "starlike"]) == 1

    def test_check_strongly_starlike_with_order(self, mock_config, tmp_path):
        """Test the order option and the report file."""
        # Setup test
        out = tmp_path / "report.json"

        # Execute test
        exit_code = cli.run_cli(["check", "--preset", "strongly-starlike-f2",
                                 "--profiles", "strongly-starlike", "--order", "0.5", "-o", str(out)])

        # Assert results
        assert exit_code == 0
        report = json.loads(out.read_text())
        assert report["classes"][0]["class_bounds"]["outer"] == pytest.approx(0.87403204889764219)

    @pytest.mark.parametrize("argv_tail", [
        ["--order", "1.5"],
        ["--order", "0"],
        ["--profiles", "spirallike"],
    ])
    def test_check_invalid_options(self, mock_config, argv_tail):
        """Test exit code 2 for orders outside (0, 1) and unknown profiles."""
        assert cli.run_cli(["check", "--preset", "identity"] + argv_tail) == 2

    @pytest.mark.parametrize("profiles", ["strongly-starlike", "sigma", "starlike,sigma"])
    def test_check_unusable_profile(self, mock_config, write_document, profiles, capsys):
        """Test exit code 2 when a requested profile cannot be evaluated for the map."""
        # Setup test: an interior map without an order
        path = write_document({"kind": "interior", "coefficients": {"a": [[2, 0.6, 0.0]]}})

        # Execute test
        exit_code = cli.run_cli(["check", "-i", path, "--profiles", profiles])

        # Assert results
        assert exit_code == 2
        assert capsys.readouterr().out == ""

    def test_check_default_profiles_without_order(self, mock_config, capsys):
        """Test that the configured list skips strongly-starlike when no order is known."""
        # Execute test
        exit_code = cli.run_cli(["check", "--preset", "identity"])

        # Assert results
        assert exit_code == 0
        report = json.loads(capsys.readouterr().out)
        assert [c["profile"] for c in report["classes"]] == ["starlike", "convex"]

    def test_invalid_json(self, mock_config, write_document, caplog):
        """Test exit code 2 and the position of a JSON syntax error."""
        path = write_document('{"kind": "interior",\n "coefficients": {')
        assert cli.run_cli(["check", "-i", path]) == 2
        assert "line 2" in caplog.text

    def test_missing_document(self, mock_config):
        """Test exit code 2 when no document is given."""
        assert cli.run_cli(["check"]) == 2

    def test_extend_verify_worked_example(self, mock_config, quiet_progress, capsys):
        """Test the worked example report on the configured grid."""
        # Execute test
        exit_code = cli.run_cli(["extend-verify", "--preset", "sigma-example"])

        # Assert results
        assert exit_code == 0
        report = json.loads(capsys.readouterr().out)
        bounds = report["extension"]["analytic_bounds"]
        assert bounds["inner"] == pytest.approx(2 / 3)
        assert bounds["outer"] == pytest.approx(7 / 9)
        assert report["verification"]["sup_mu"] <= 7 / 9 + 1e-9
        assert report["verification"]["violations"] == []
        quiet_progress.assert_called_once()

    def test_extend_verify_invalid_grid(self, mock_config, quiet_progress):
        """Test exit code 2 for r_max inside the closed disk."""
        assert cli.run_cli(["extend-verify", "--preset", "sigma-example", "--r-max", "0.5"]) == 2

    def test_reports_are_reproducible(self, mock_config, quiet_progress, tmp_path):
        """Test byte-identical reports for the same input and seed."""
        # Setup test
        first = tmp_path / "first.json"
        second = tmp_path / "second.json"

        # Execute test
        cli.run_cli(["extend-verify", "--preset", "strongly-starlike-f2", "--seed", "5", "-o", str(first)])
        cli.run_cli(["extend-verify", "--preset", "strongly-starlike-f2", "--seed", "5", "-o", str(second)])

        # Assert results
        assert first.read_bytes() == second.read_bytes()

    def test_render(self, mock_config, tmp_path, capsys):
        """Test that render writes only the SVG figure."""
        # Setup test
        out = tmp_path / "figure.svg"

        # Execute test
        exit_code = cli.run_cli(["render", "--preset", "sigma-example", "-o", str(out), "--no-timestamp"])

        # Assert results
        assert exit_code == 0
        assert out.read_text().lstrip().startswith("<?xml")
        assert capsys.readouterr().out == ""

    def test_render_unwritable(self, mock_config, tmp_path):
        """Test exit code 2 when the figure cannot be written."""
        out = tmp_path / "missing" / "figure.svg"
        assert cli.run_cli(["render", "--preset", "identity", "-o", str(out)]) == 2

    def test_convolve(self, mock_config, write_document, sigma_document_dict, capsys):
        """Test the self-convolution of the worked example."""
        # Setup test
        path = write_document(sigma_document_dict)

        # Execute test
        exit_code = cli.run_cli(["convolve", "--preset", "sigma-example", "--input2", path])

        # Assert results
        assert exit_code == 0
        report = json.loads(capsys.readouterr().out)
        assert report["convolution"]["M"] == pytest.approx(1 / 36 + 1 / 16 + 1 / 16)
        assert report["convolution"]["bound"] == pytest.approx(11 / 12)

    def test_convolve_interior_input(self, mock_config, write_document):
        """Test exit code 2 when an operand is an interior map."""
        path = write_document({"kind": "interior"})
        assert cli.run_cli(["convolve", "--preset", "sigma-example", "--input2", path]) == 2

    def test_convolve_needs_second_document(self, mock_config):
        """Test exit code 2 without --input2."""
        assert cli.run_cli(["convolve", "--preset", "sigma-example"]) == 2

    def test_verbose_sets_debug(self, mock_config, reset_logger_level, capsys):
        """Test that --verbose switches the package logger to DEBUG."""
        cli.run_cli(["check", "--preset", "identity", "-v"])
        assert logging.getLogger('harmonicqc').level == logging.DEBUG
