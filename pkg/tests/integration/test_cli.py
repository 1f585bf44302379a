"""End-to-end tests of the convexhard command line."""

import io
import json
import logging

import pandas as pd
import pytest

from src.convexhard.data.formats import parse_instance, parse_points, serialize_instance
from src.convexhard.main import EXIT_FALSE, EXIT_OK, EXIT_USAGE, main


def _run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def _json(capsys, *argv):
    code, out, _ = _run(capsys, *argv)
    return code, json.loads(out)


class TestGenerateAndReduce:
    """Test suite for gen and reduce."""

    def test_gen_writes_valid_instance(self, tmp_path, capsys):
        """Test that gen output parses back into a valid instance."""
        path = tmp_path / "inst.json"
        code, _, _ = _run(capsys, "gen", "--seed", "5", "--n", "6", "--output", str(path))
        assert code == EXIT_OK
        assert len(parse_instance(path.read_text())) == 6

    def test_gen_rejects_decimal_density(self, capsys):
        """Test that --density must be written as a fraction."""
        code, out, err = _run(capsys, "gen", "--n", "4", "--density", "0.5")
        assert code == EXIT_USAGE
        assert out == ""
        assert "density" in err

    def test_gen_is_deterministic(self, capsys):
        """Test that the same seed prints the same file."""
        _, first, _ = _run(capsys, "gen", "--seed", "2", "--n", "5")
        _, second, _ = _run(capsys, "gen", "--seed", "2", "--n", "5")
        assert first == second

    def test_reduce(self, chain_file, chain_reduction, capsys):
        """Test reducing the chain instance."""
        code, out, _ = _run(capsys, "reduce", "--input", str(chain_file))
        assert code == EXIT_OK
        assert parse_points(out) == chain_reduction

    def test_reduce_from_stdin(self, chain_file, chain_reduction, capsys, monkeypatch):
        """Test streaming an instance through stdin."""
        monkeypatch.setattr("sys.stdin", io.StringIO(chain_file.read_text()))
        code, out, _ = _run(capsys, "reduce")
        assert code == EXIT_OK
        assert parse_points(out) == chain_reduction

    def test_reduce_rejects_bad_rational(self, tmp_path, capsys):
        """Test that a zero denominator is a usage error with its line."""
        path = tmp_path / "bad.json"
        path.write_text('{\n  "radius": "1",\n  "centers": [\n    ["1/0", "0"]\n  ]\n}\n')
        code, out, err = _run(capsys, "reduce", "--input", str(path))
        assert code == EXIT_USAGE
        assert out == ""
        assert "line 4" in err

    def test_reduce_rejects_overlap(self, tmp_path, capsys):
        """Test that overlapping disks are a usage error."""
        path = tmp_path / "overlap.json"
        path.write_text('{"radius": "1", "centers": [["0", "0"], ["1", "0"]]}')
        code, _, err = _run(capsys, "reduce", "--input", str(path))
        assert code == EXIT_USAGE
        assert "overlap" in err


class TestSolve:
    """Test suite for solve."""

    def test_mis(self, chain_file, capsys):
        """Test the chain MIS with a 1-based witness."""
        code, doc = _json(capsys, "solve", "--problem", "mis", "--input", str(chain_file))
        assert code == EXIT_OK
        assert doc["size"] == 2
        assert doc["witness"] == [1, 3]

    def test_lecs_from_points(self, chain_points_file, capsys):
        """Test LECS on a points file."""
        code, doc = _json(
            capsys, "solve", "--problem", "lecs", "--input", str(chain_points_file)
        )
        assert code == EXIT_OK
        assert doc["size"] == 4
        assert ["2", "0", "4"] not in doc["witness"]

    def test_decision_true_and_false(self, chain_file, capsys):
        """Test decision exit codes."""
        code, doc = _json(capsys, "solve", "--problem", "es", "--k", "4", "--input", str(chain_file))
        assert code == EXIT_OK
        assert doc["decision"] is True
        assert len(doc["witness"]) >= 4
        code, doc = _json(capsys, "solve", "--problem", "es", "--k", "5", "--input", str(chain_file))
        assert code == EXIT_FALSE
        assert doc["decision"] is False
        assert doc["witness"] is None

    def test_mis_needs_instance(self, chain_points_file, capsys):
        """Test that MIS refuses a points file."""
        code, _, err = _run(
            capsys, "solve", "--problem", "mis", "--input", str(chain_points_file)
        )
        assert code == EXIT_USAGE
        assert "instance file" in err


class TestCheck:
    """Test suite for check."""

    def test_chain_passes(self, chain_file, capsys):
        """Test the full battery on the chain."""
        code, report = _json(capsys, "check", "--input", str(chain_file))
        assert code == EXIT_OK
        assert report["passed"] is True
        assert report["es_size"] == report["lecs_size"] == report["mis_size"] + report["B_size"]

    def test_corrupted_points_fail(self, chain_points_file, capsys):
        """Test that an edited points file fails the lemma checks."""
        text = chain_points_file.read_text().replace('["4", "0", "16"]', '["4", "0", "17"]')
        chain_points_file.write_text(text)
        code, report = _json(
            capsys, "check", "--mode", "lemmas", "--input", str(chain_points_file)
        )
        assert code == EXIT_FALSE
        assert report["passed"] is False
        assert report["lemma_checks"]["encoding_lemma"] is False

    def test_cap_exceeded(self, chain_file, capsys):
        """Test that the cap refuses oversized instances."""
        code, _, err = _run(capsys, "check", "--cap", "4", "--input", str(chain_file))
        assert code == EXIT_USAGE
        assert "--sample" in err

    def test_no_timings_reproducible(self, chain_file, capsys):
        """Test byte-identical reports without timings."""
        argv = ("check", "--no-timings", "--input", str(chain_file))
        _, first, _ = _run(capsys, *argv)
        _, second, _ = _run(capsys, *argv)
        assert first == second
        assert "wall_times" not in json.loads(first)

    def test_report_written_to_file(self, chain_file, tmp_path, capsys):
        """Test --output for reports."""
        target = tmp_path / "report.json"
        code, out, _ = _run(capsys, "check", "--input", str(chain_file), "--output", str(target))
        assert code == EXIT_OK
        assert out == ""
        assert json.loads(target.read_text())["passed"] is True


class TestNetsAndDiscrepancy:
    """Test suite for net, discrepancy and approx."""

    def test_net_violation(self, chain_file, capsys):
        """Test that B is not a 2/3-net for L on the chain."""
        code, doc = _json(capsys, "net", "--eps", "2/3", "--input", str(chain_file))
        assert code == EXIT_FALSE
        assert doc["is_net"] is False
        assert doc["threshold"] == 2
        assert sorted(doc["violation"]) == [["0", "0", "0"], ["4", "0", "16"]]
        assert doc["max_avoiding_size"] == 2

    def test_net_holds(self, tmp_path, pair_instance, capsys):
        """Test a net with eps = 1 on a single tangent pair."""
        path = tmp_path / "pair.json"
        path.write_text(serialize_instance(pair_instance))
        code, doc = _json(capsys, "net", "--eps", "1", "--input", str(path))
        assert code == EXIT_OK
        assert doc["is_net"] is True
        assert doc["violation"] is None

    def test_net_rejects_decimal_eps(self, chain_file, capsys):
        """Test that epsilon must be an exact rational."""
        code, _, _ = _run(capsys, "net", "--eps", "0.5", "--input", str(chain_file))
        assert code == EXIT_USAGE

    def test_discrepancy(self, chain_file, capsys):
        """Test the chain discrepancy."""
        code, doc = _json(capsys, "discrepancy", "--input", str(chain_file))
        assert code == EXIT_OK
        assert doc["discrepancy"] == 2

    def test_approx_with_direction(self, chain_file, capsys):
        """Test the approximation along the y axis."""
        code, doc = _json(capsys, "approx", "--direction", "0,1,0", "--input", str(chain_file))
        assert code == EXIT_OK
        assert doc["size"] == 4
        assert doc["convex_position"] is True
        assert doc["direction"] == ["0", "1", "0"]

    def test_approx_bad_direction(self, chain_file, capsys):
        """Test that a malformed direction is a usage error."""
        code, _, _ = _run(capsys, "approx", "--direction", "0,1", "--input", str(chain_file))
        assert code == EXIT_USAGE


class TestPlotAndBatch:
    """Test suite for plot and batch."""

    def test_plot_svg(self, chain_file, tmp_path, capsys):
        """Test an SVG of the chain instance."""
        target = tmp_path / "chain.svg"
        code, _, _ = _run(capsys, "plot", "--input", str(chain_file), "--output", str(target))
        assert code == EXIT_OK
        svg = target.read_text()
        assert svg.count('class="disk"') == 3
        assert svg.count('class="tangency"') == 2

    def test_plot_html(self, chain_points_file, tmp_path, capsys):
        """Test an HTML figure of the chain points."""
        target = tmp_path / "chain.html"
        code, _, _ = _run(
            capsys, "plot", "--input", str(chain_points_file), "--output", str(target)
        )
        assert code == EXIT_OK
        assert "plotly" in target.read_text().lower()

    def test_plot_empty_instance(self, tmp_path, capsys):
        """Test that an empty instance cannot be plotted."""
        path = tmp_path / "empty.json"
        path.write_text('{"radius": "1", "centers": []}')
        code, _, err = _run(capsys, "plot", "--input", str(path))
        assert code == EXIT_USAGE
        assert "empty" in err

    def test_batch_csv(self, tmp_path, capsys):
        """Test a small batch sweep."""
        target = tmp_path / "batch.csv"
        code, _, _ = _run(
            capsys, "batch", "--count", "3", "--n", "4", "--output", str(target)
        )
        assert code == EXIT_OK
        frame = pd.read_csv(target)
        assert list(frame["seed"]) == [0, 1, 2]
        assert (frame["status"] == "passed").all()
        assert (frame["es_size"] == frame["mis_size"] + frame["B_size"]).all()

    @pytest.mark.parametrize("count", ["0", "-1"])
    def test_batch_bad_count(self, count, capsys):
        """Test that the batch needs at least one instance."""
        code, _, _ = _run(capsys, "batch", "--count", count)
        assert code == EXIT_USAGE


class TestConfigFile:
    """Test suite for --config overrides."""

    def test_log_format_from_config(self, chain_file, tmp_path, capsys):
        """Test that logging.format from the config file is used."""
        config = tmp_path / "config.json"
        config.write_text(json.dumps({"logging": {"format": "@@ %(message)s"}}))
        log_file = tmp_path / "run.log"
        code, _, _ = _run(
            capsys,
            "reduce",
            "--input",
            str(chain_file),
            "--config",
            str(config),
            "--log-file",
            str(log_file),
        )
        assert code == EXIT_OK
        lines = [line for line in log_file.read_text().splitlines() if line]
        assert lines
        assert all(line.startswith("@@ ") for line in lines)
        for handler in logging.getLogger().handlers:
            handler.close()
        logging.getLogger().handlers.clear()
