"""Tests for the entdist command-line interface."""

import json
import sys

import pytest
from click.testing import CliRunner

from src.cli.main import VERSION, cli, main
from src.verification import acceptance


@pytest.fixture
def runner():
    return CliRunner()


@pytest.fixture
def golden_only(monkeypatch):
    """Restrict the acceptance suite to the two golden-value criteria."""
    monkeypatch.setattr(acceptance, "CRITERIA", acceptance.CRITERIA[:2])


def csv_lines(result):
    return [line for line in result.stdout.split("\n") if line]


class TestFigure:
    """Test cases for the figure command."""

    def test_fig3_to_stdout(self, runner):
        """Test fig3 at the default step writes a header and 101 rows."""
        result = runner.invoke(cli, ["figure", "fig3", "-o", "-"])

        assert result.exit_code == 0, result.output
        lines = csv_lines(result)
        assert len(lines) == 102
        assert lines[0] == "scenario,axis1,axis2,e_in,e_com,e_fin,delta_e,classification"
        assert lines[1].startswith("ame,0,,")

    def test_fig4_step(self, runner):
        """Test --step 0.005 gives 201 rows."""
        result = runner.invoke(cli, ["figure", "fig4", "--step", "0.005", "-o", "-"])

        assert result.exit_code == 0, result.output
        assert len(csv_lines(result)) == 202

    def test_fig5_appends_catalysis(self, runner):
        """Test fig5 writes the plain rows then the catalysed ones."""
        result = runner.invoke(cli, ["figure", "fig5", "--step", "0.5", "-o", "-"])
        scenarios = [line.split(",")[0] for line in csv_lines(result)[1:]]

        assert scenarios == ["ame"] * 3 + ["catalysis"] * 3

    def test_fig7_parameterless_channel(self, runner):
        """Test an identity channel sweeps s only."""
        result = runner.invoke(cli, ["figure", "fig7", "--channel", "identity", "--step", "0.5", "-o", "-"])

        assert result.exit_code == 0, result.output
        rows = [line.split(",") for line in csv_lines(result)[1:]]
        assert [row[1] for row in rows] == ["0", "0.5", "1"]
        assert all(row[2] == "" for row in rows)

    def test_fig9_lower_panel_fixed_strength(self, runner):
        """Test a strength in the channel argument pins delta on the lower panel."""
        result = runner.invoke(cli, ["figure", "fig9", "--panel", "lower", "--channel", "pol:0.1",
                                     "--step", "0.5", "-o", "-"])

        assert result.exit_code == 0, result.output
        rows = [line.split(",") for line in csv_lines(result)[1:]]
        assert len(rows) == 3
        assert {row[2] for row in rows} == {"0.1"}

    def test_fig11_surface(self, runner):
        """Test fig11 sweeps local damping against transit damping."""
        result = runner.invoke(cli, ["figure", "fig11", "--step", "0.5", "-o", "-"])

        assert result.exit_code == 0, result.output
        assert len(csv_lines(result)) == 1 + 9
        assert csv_lines(result)[1].startswith("noisy_labs,")

    def test_file_and_gnuplot(self, runner, tmp_path):
        """Test writing a CSV file plus its gnuplot script."""
        target = tmp_path / "figs" / "fig3.csv"
        result = runner.invoke(cli, ["figure", "fig3", "--step", "0.25", "-o", str(target), "--gnuplot"])

        assert result.exit_code == 0, result.output
        assert target.read_text().count("\n") == 6
        assert "plot 'fig3.csv'" in (tmp_path / "figs" / "fig3.gp").read_text()

    def test_gnuplot_needs_a_file(self, runner):
        """Test --gnuplot with stdout output is a usage error."""
        result = runner.invoke(cli, ["figure", "fig3", "--step", "0.5", "-o", "-", "--gnuplot"])

        assert result.exit_code == 2

    def test_unknown_channel(self, runner):
        """Test an unknown channel is a usage error."""
        result = runner.invoke(cli, ["figure", "fig7", "--channel", "bitflip", "-o", "-"])

        assert result.exit_code == 2
        assert "Unknown channel" in result.output

    def test_unknown_figure(self, runner):
        """Test an unknown figure name is rejected by click."""
        assert runner.invoke(cli, ["figure", "fig99"]).exit_code == 2


class TestProtocol:
    """Test cases for the protocol command."""

    def test_ame_excessive(self, runner):
        """Test q = 0.45 with grouping 1,4,5:2:3 is excessive."""
        result = runner.invoke(cli, ["protocol", "ame", "--q", "0.45", "--grouping", "1,4,5:2:3"])

        assert result.exit_code == 0, result.output
        record = json.loads(result.stdout)
        assert record["classification"] == "Excessive"
        assert record["e_in"] == 0.0
        assert record["measure"] == "LogNegativity"

    def test_ame_needs_q(self, runner):
        """Test the AME scenarios require --q."""
        result = runner.invoke(cli, ["protocol", "ame"])

        assert result.exit_code == 2
        assert "--q" in result.output

    @pytest.mark.parametrize("grouping", ["1:2", "1,2:3:4", "1::2,3,4,5", "a:2:3,4,5"])
    def test_bad_grouping(self, runner, grouping):
        """Test malformed groupings exit with status 2."""
        result = runner.invoke(cli, ["protocol", "ame", "--q", "0.3", "--grouping", grouping])

        assert result.exit_code == 2

    def test_bad_measure(self, runner):
        """Test an unknown measure exits with status 2."""
        result = runner.invoke(cli, ["protocol", "ame", "--q", "0.3", "--measure", "concurrence"])

        assert result.exit_code == 2
        assert "Unknown measure" in result.output

    def test_q_out_of_range(self, runner):
        """Test q outside [0, 1] exits with status 2."""
        assert runner.invoke(cli, ["protocol", "ame", "--q", "1.5"]).exit_code == 2

    def test_channel_needs_strength(self, runner):
        """Test a bare family without --delta exits with status 2."""
        result = runner.invoke(cli, ["protocol", "indirect", "--channel", "dephasing"])

        assert result.exit_code == 2
        assert "needs a strength" in result.output

    def test_staged_details(self, runner):
        """Test --details reports the direct stage and the channel."""
        result = runner.invoke(cli, ["protocol", "direct_then_indirect", "--channel", "pol",
                                     "--delta", "0.1", "--details"])

        assert result.exit_code == 0, result.output
        payload = json.loads(result.stdout)
        assert payload["metadata"]["channel"] == "depolarizing:0.1"
        assert payload["metadata"]["e_after_direct"] == payload["records"][0]["e_in"]
        assert "direct_gain" in payload["metadata"]

    def test_catalysis_details(self, runner):
        """Test catalysis reports the record without catalysis."""
        result = runner.invoke(cli, ["protocol", "catalysis", "--q", "0.3", "--details"])

        assert result.exit_code == 0, result.output
        assert "without_catalysis" in json.loads(result.stdout)["metadata"]


class TestTable1:
    """Test cases for the table1 command."""

    def test_csv(self, runner):
        """Test CSV output matches the tabulated pattern away from q = 1/2."""
        result = runner.invoke(cli, ["table1", "--q", "0.3", "--q", "0.7", "--format", "csv"])

        assert result.exit_code == 0, result.output
        lines = csv_lines(result)
        assert lines[0] == "q,12:345,2:1345,1:2345,3:1245,13:245,123:45,matches"
        assert lines[1] == "0.3,PPT,PPT,PPT,NPT,NPT,NPT,yes"
        assert lines[2] == "0.7,NPT,NPT,PPT,NPT,NPT,NPT,yes"

    def test_table_with_negativities(self, runner):
        """Test the text table can show negativities."""
        result = runner.invoke(cli, ["table1", "--q", "0.3", "--negativities"])

        assert result.exit_code == 0, result.output
        assert "PPT (0)" in result.stdout


class TestSearch:
    """Test cases for the search command."""

    def test_qubit_a_finds_nothing(self, runner, tmp_path):
        """Test d_A = 2 reports zero witnesses and writes no files."""
        result = runner.invoke(cli, ["search", "--da", "2", "--trials", "50", "-o", str(tmp_path / "w")])

        assert result.exit_code == 0, result.output
        assert "0 witness(es) among 50 trials" in result.stdout
        assert not (tmp_path / "w").exists()

    def test_invalid_dimension(self, runner, tmp_path):
        """Test d_A < 2 exits with status 2."""
        result = runner.invoke(cli, ["search", "--da", "1", "-o", str(tmp_path)])

        assert result.exit_code == 2

    @pytest.mark.slow
    def test_qutrit_a_writes_witness(self, runner, tmp_path):
        """Test a witness on [3, 2, 2] is written to disk."""
        target = tmp_path / "w"
        result = runner.invoke(cli, ["search", "--da", "3", "--trials", "5000", "--seed", "7",
                                     "--max-witnesses", "1", "-o", str(target)])

        assert result.exit_code == 0, result.output
        assert "1 witness(es)" in result.stdout
        assert len(list(target.glob("theorem1_da3_seed7_*.json"))) == 1


class TestVerify:
    """Test cases for the verify command."""

    def test_golden_values_pass(self, runner, golden_only):
        """Test the counterexample criteria pass at their default tolerances."""
        result = runner.invoke(cli, ["verify", "paper"])

        assert result.exit_code == 0, result.output
        assert "RESULT: PASS" in result.stdout

    def test_tight_tolerance_fails(self, runner, golden_only):
        """Test --tol 1e-15 fails the three-decimal golden values with exit 1."""
        result = runner.invoke(cli, ["verify", "paper", "--tol", "1e-15"])

        assert result.exit_code == 1
        assert "[FAIL] 2" in result.stdout

    def test_json_report(self, runner, golden_only):
        """Test the JSON report lists options and criteria."""
        result = runner.invoke(cli, ["verify", "paper", "--format", "json", "--trials", "10"])
        report = json.loads(result.stdout)

        assert report["passed"] is True
        assert report["options"] == {"trials": 10, "seed": 7, "tol": None}
        assert [c["id"] for c in report["suites"][0]["criteria"]] == ["1", "2"]

    @pytest.mark.parametrize("args", [["--trials", "0"], ["--tol", "-1"]])
    def test_bad_options(self, runner, args):
        """Test non-positive trials or tolerance are usage errors."""
        assert runner.invoke(cli, ["verify", "paper", *args]).exit_code == 2


class TestGroup:
    """Test cases for group options and the entry point."""

    def test_version_command(self, runner):
        """Test the version command."""
        result = runner.invoke(cli, ["version"])

        assert result.exit_code == 0
        assert f"Version: {VERSION}" in result.stdout

    def test_version_option(self, runner):
        """Test --version."""
        result = runner.invoke(cli, ["--version"])

        assert result.exit_code == 0
        assert VERSION in result.output

    def test_config_file(self, runner, tmp_path):
        """Test settings from --config reach the commands."""
        config = tmp_path / "entdist.yaml"
        config.write_text("sweep:\n  step: 0.5\n")
        result = runner.invoke(cli, ["--config", str(config), "figure", "fig3", "-o", "-"])

        assert result.exit_code == 0, result.output
        assert len(csv_lines(result)) == 4

    def test_invalid_config(self, runner, tmp_path):
        """Test an invalid config file is a usage error."""
        config = tmp_path / "entdist.json"
        config.write_text('{"sweep": {"threads": 0}}')
        result = runner.invoke(cli, ["--config", str(config), "version"])

        assert result.exit_code == 2
        assert "Error loading configuration" in result.output

    @pytest.mark.parametrize("argv,code", [
        (["protocol", "ame"], 2),
        (["--version"], 0),
    ])
    def test_main_exit_codes(self, monkeypatch, argv, code):
        """Test main() maps outcomes to exit codes."""
        monkeypatch.setattr(sys, "argv", ["entdist", *argv])

        with pytest.raises(SystemExit) as excinfo:
            main()

        assert excinfo.value.code == code

    def test_main_verification_failure(self, monkeypatch, golden_only):
        """Test a failing verification exits 1 through main()."""
        monkeypatch.setattr(sys, "argv", ["entdist", "verify", "paper", "--tol", "1e-15"])

        with pytest.raises(SystemExit) as excinfo:
            main()

        assert excinfo.value.code == 1
