"""CLI tests: flags, exit codes, serialization formats, byte stability."""

import json

from tracebound.cli import FIGURE1_CSV_HEADER, main


def run_cli(argv, capsys):
    code = main(argv)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestFigure1Command:
    def test_csv_to_stdout(self, capsys):
        code, out, err = run_cli(["figure1", "--dim", "4", "--samples", "5", "--seed", "1"], capsys)
        assert code == 0
        lines = out.splitlines()
        assert lines[0] == FIGURE1_CSV_HEADER
        assert len(lines) == 6
        assert "violations=0" in err

    def test_csv_file_byte_stable(self, tmp_path, capsys):
        out_a = tmp_path / "a.csv"
        out_b = tmp_path / "b.csv"
        args = ["figure1", "--dim", "8", "--samples", "50", "--seed", "7"]
        assert main(args + ["--out", str(out_a)]) == 0
        assert main(args + ["--out", str(out_b), "--workers", "3"]) == 0
        capsys.readouterr()
        assert out_a.read_bytes() == out_b.read_bytes()

    def test_csv_floats_round_trip(self, capsys):
        code, out, _ = run_cli(["figure1", "--dim", "8", "--samples", "3", "--seed", "2"], capsys)
        assert code == 0
        header = out.splitlines()[0].split(",")
        row = dict(zip(header, out.splitlines()[1].split(",")))
        q = float(row["Q"])
        r = float(row["R"])
        assert f"{q:.17g}" == row["Q"]
        assert 0.5 - 1e-9 <= q <= min(r, 2.0) + 1e-9
        assert row["lemma1_ok"] == "true" and row["weyl_ok"] == "true"

    def test_json_format(self, capsys):
        code, out, _ = run_cli(
            ["figure1", "--dim", "4", "--samples", "4", "--seed", "3", "--format", "json"], capsys)
        assert code == 0
        doc = json.loads(out)
        assert len(doc["records"]) == 4
        rec = doc["records"][0]
        assert set(rec) == set(FIGURE1_CSV_HEADER.split(","))
        assert doc["summary"]["violations"] == 0
        assert doc["summary"]["n_samples"] == 4

    def test_plot_renders_file(self, tmp_path, capsys):
        plot = tmp_path / "fig.png"
        out = tmp_path / "fig.csv"
        code = main(["figure1", "--dim", "4", "--samples", "10", "--seed", "4",
                     "--out", str(out), "--plot", str(plot)])
        capsys.readouterr()
        assert code == 0
        assert plot.stat().st_size > 1000
        assert out.read_text().splitlines()[0] == FIGURE1_CSV_HEADER

    def test_bad_dimension_is_usage_error(self, capsys):
        code, _, err = run_cli(["figure1", "--dim", "3", "--samples", "5"], capsys)
        assert code == 2
        assert "error" in err and "usage" in err


class TestExamplesCommand:
    def test_table_to_stdout(self, capsys):
        code, out, err = run_cli(["examples", "--dim", "8"], capsys)
        assert code == 0
        assert "projector_vs_mixed" in out
        assert "orthogonal_projectors" in out
        assert "states equal" in out
        assert "violations=0" in err

    def test_csv_output(self, tmp_path, capsys):
        path = tmp_path / "ex.csv"
        code = main(["examples", "--dim", "8", "--out", str(path)])
        capsys.readouterr()
        assert code == 0
        lines = path.read_text().splitlines()
        assert lines[0].startswith("family,d,r,s,")
        data = [line.split(",") for line in lines[1:]]
        residual_col = lines[0].split(",").index("residual")
        residuals = [float(row[residual_col]) for row in data if row[residual_col]]
        assert max(residuals) <= 1e-10

    def test_json_output(self, tmp_path, capsys):
        path = tmp_path / "ex.json"
        code = main(["examples", "--dim", "8", "--format", "json", "--out", str(path)])
        capsys.readouterr()
        assert code == 0
        doc = json.loads(path.read_text())
        assert doc["summary"]["violations"] == 0
        skipped = [r for r in doc["rows"] if r["note"] == "states equal"]
        assert len(skipped) == 1 and skipped[0]["trace_dist"] is None

    def test_bad_dimension(self, capsys):
        code, _, _ = run_cli(["examples", "--dim", "2"], capsys)
        assert code == 2


class TestVerifyCommand:
    def test_summary_line(self, capsys):
        code, out, _ = run_cli(["verify", "--dim", "4", "--samples", "100", "--seed", "9"], capsys)
        assert code == 0
        assert "violations=0" in out

    def test_json_summary(self, tmp_path, capsys):
        path = tmp_path / "verify.json"
        code = main(["verify", "--dim", "4", "--samples", "30", "--seed", "9",
                     "--format", "json", "--out", str(path)])
        capsys.readouterr()
        assert code == 0
        doc = json.loads(path.read_text())
        assert doc["summary"]["violations"] == 0
        assert doc["failures"] == []

    def test_csv_summary(self, tmp_path, capsys):
        path = tmp_path / "verify.csv"
        code = main(["verify", "--dim", "4", "--samples", "30", "--out", str(path)])
        capsys.readouterr()
        assert code == 0
        lines = path.read_text().splitlines()
        assert lines[0].startswith("n_samples,violations,")
        assert lines[1].split(",")[1] == "0"


class TestCounterexampleCommand:
    def test_finds_and_reports(self, capsys):
        code, out, _ = run_cli(["counterexample", "--dim", "8", "--budget", "500", "--seed", "0"],
                               capsys)
        assert code == 0
        assert "found" in out
        assert "recomputed_margin" in out

    def test_exhausted_is_inconclusive_not_failure(self, capsys):
        code, out, _ = run_cli(["counterexample", "--dim", "8", "--budget", "1", "--seed", "0"],
                               capsys)
        assert code == 0
        assert "exhausted" in out and "inconclusive" in out

    def test_json_result(self, tmp_path, capsys):
        path = tmp_path / "cex.json"
        code = main(["counterexample", "--dim", "8", "--budget", "500", "--seed", "0",
                     "--format", "json", "--out", str(path)])
        capsys.readouterr()
        assert code == 0
        doc = json.loads(path.read_text())
        assert doc["found"] is True
        assert doc["margin"] > 0
        assert doc["kind"] in ("structured", "ensemble")


class TestUsageErrors:
    def test_unknown_flag(self, capsys):
        assert main(["figure1", "--frobnicate"]) == 2
        capsys.readouterr()

    def test_unknown_command(self, capsys):
        assert main(["transmogrify"]) == 2
        capsys.readouterr()

    def test_no_command(self, capsys):
        assert main([]) == 2
        capsys.readouterr()

    def test_help_exits_zero(self, capsys):
        assert main(["--help"]) == 0
        out = capsys.readouterr().out
        assert "figure1" in out and "counterexample" in out
