"""Tests for the command-line parser."""

import pytest

from src.convexhard.main import COMMANDS, build_parser


class TestParser:
    """Test suite for argument parsing."""

    def test_every_command_registered(self):
        """Test that each subcommand parses with its required options."""
        parser = build_parser()
        required = {
            "gen": ["--n", "3"],
            "solve": ["--problem", "mis"],
            "net": ["--eps", "1/2"],
        }
        for name in COMMANDS:
            args = parser.parse_args([name] + required.get(name, []))
            assert args.command == name

    def test_io_defaults(self):
        """Test that input and output default to the standard streams."""
        args = build_parser().parse_args(["reduce"])
        assert args.input == "-"
        assert args.output == "-"
        assert not args.no_timings

    def test_batch_defaults(self):
        """Test the batch sweep defaults."""
        args = build_parser().parse_args(["batch"])
        assert (args.count, args.seed, args.n, args.mode) == (200, 0, 8, "all")

    def test_bad_choice_exits(self):
        """Test that argparse rejects unknown problems."""
        with pytest.raises(SystemExit):
            build_parser().parse_args(["solve", "--problem", "tsp"])

    def test_missing_command_exits(self):
        """Test that a subcommand is required."""
        with pytest.raises(SystemExit):
            build_parser().parse_args([])
