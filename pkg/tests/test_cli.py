import json

import pytest

from cattab.cli import main
from cattab.fixtures import fixture_path
from cattab.io import (
    InputFormatError,
    counts_csv_text,
    parse_counts_csv,
    parse_records_csv,
)

SHOOTINGS = str(fixture_path("police_shootings"))
VACCINE = str(fixture_path("vaccine_trial"))
SURVEY = str(fixture_path("life_quality_survey"))


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def run_json(capsys, *argv):
    code, out, err = run_cli(capsys, *argv, "--format", "json")
    assert code == 0, err
    return json.loads(out)


class TestCountsCsv:
    def test_fixture_counts(self):
        table = parse_counts_csv(SHOOTINGS)
        assert table.counts.tolist() == [[98, 2892], [155, 2552]]
        assert table.row_labels == ("Non-White", "White")
        assert table.col_labels == ("Woman", "Man")

    def test_single_data_row_rejected(self, tmp_path):
        path = tmp_path / "one_row.csv"
        path.write_text("table,x,y\na,1,2\n")
        with pytest.raises(InputFormatError, match="at least 2 rows"):
            parse_counts_csv(path)

    def test_quoted_thousands_separator(self, tmp_path):
        path = tmp_path / "quoted.csv"
        path.write_text('table,Woman,Man\nNon-White,98,"2,892"\nWhite,155,"2,552"\n')
        table = parse_counts_csv(path)
        assert table.counts.tolist() == [[98, 2892], [155, 2552]]

    def test_unquoted_embedded_comma_is_ragged(self, tmp_path):
        path = tmp_path / "ragged.csv"
        path.write_text("table,Woman,Man\nNon-White,98,2,892\nWhite,155,2552\n")
        with pytest.raises(InputFormatError, match="line 2"):
            parse_counts_csv(path)

    def test_non_integer_cell_located(self, tmp_path):
        path = tmp_path / "bad_cell.csv"
        path.write_text("table,x,y\na,1,2\nb,3,four\n")
        with pytest.raises(InputFormatError, match="line 3, column 3"):
            parse_counts_csv(path)

    def test_negative_cell_located(self, tmp_path):
        path = tmp_path / "negative.csv"
        path.write_text("table,x,y\na,1,2\nb,3,-4\n")
        with pytest.raises(InputFormatError, match="negative"):
            parse_counts_csv(path)

    def test_round_trip_through_text(self):
        table = parse_counts_csv(VACCINE)
        text = counts_csv_text(table)
        assert "Placebo,15025,185" in text

    def test_missing_file(self):
        with pytest.raises(InputFormatError, match="cannot read"):
            parse_counts_csv("/nonexistent/nowhere.csv")


class TestRecordsCsv:
    def test_basic(self, tmp_path):
        path = tmp_path / "records.csv"
        path.write_text("race,gender\nwhite,man\nwhite,woman\nnon-white,man\n")
        table, names = parse_records_csv(path)
        assert names == ("race", "gender")
        assert table.row_labels == ("non-white", "white")
        assert table.counts.sum() == 3

    def test_wrong_column_count(self, tmp_path):
        path = tmp_path / "three_cols.csv"
        path.write_text("a,b,c\n1,2,3\n")
        with pytest.raises(InputFormatError, match="exactly 2 columns"):
            parse_records_csv(path)

    def test_no_records(self, tmp_path):
        path = tmp_path / "header_only.csv"
        path.write_text("a,b\n")
        with pytest.raises(InputFormatError, match="no records"):
            parse_records_csv(path)


class TestCliCommands:
    def test_independence_json(self, capsys):
        env = run_json(capsys, "test", "independence", "--input", SHOOTINGS)
        assert set(env) == {"version", "input_digest", "command", "results",
                            "warnings"}
        assert env["command"] == "test independence"
        results = env["results"]
        assert results["pearson"]["statistic"] == pytest.approx(20.068, abs=5e-3)
        assert results["deviance"]["statistic"] == pytest.approx(20.137, abs=5e-3)
        assert results["pearson"]["df"] == 1

    def test_byte_identical_reruns(self, capsys):
        argv = ("test", "independence", "--input", SHOOTINGS, "--format", "json")
        code1, out1, _ = run_cli(capsys, *argv)
        code2, out2, _ = run_cli(capsys, *argv)
        assert code1 == code2 == 0
        assert out1 == out2

    def test_describe_json(self, capsys):
        env = run_json(capsys, "describe", "--input", SHOOTINGS,
                       "--given", "rows")
        results = env["results"]
        assert results["n"] == 5697
        assert results["joint"][0][0] == pytest.approx(0.0172, abs=5e-4)
        assert results["row_marginal"] == pytest.approx([0.5248, 0.4752],
                                                        abs=5e-4)
        assert results["conditional"]["given"] == "rows"

    def test_describe_vaccine_conditionals(self, capsys):
        env = run_json(capsys, "describe", "--input", VACCINE,
                       "--given", "rows")
        cond = env["results"]["conditional"]["matrix"]
        assert cond[0] == pytest.approx([0.9878, 0.0122], abs=5e-5)
        assert cond[1] == pytest.approx([0.9993, 0.0007], abs=5e-5)

    def test_describe_records_input(self, capsys, tmp_path):
        path = tmp_path / "records.csv"
        rows = ["race,gender"]
        rows += ["non-white,man"] * 3 + ["non-white,woman"] * 1
        rows += ["white,man"] * 2 + ["white,woman"] * 2
        path.write_text("\n".join(rows) + "\n")
        env = run_json(capsys, "describe", "--input", str(path),
                       "--input-format", "records")
        assert env["results"]["n"] == 8
        assert env["results"]["row_labels"] == ["non-white", "white"]
        assert env["results"]["joint"][0][0] == pytest.approx(3 / 8)

    def test_describe_emit_counts_round_trip(self, capsys, tmp_path):
        code, out, _ = run_cli(capsys, "describe", "--input", SHOOTINGS,
                               "--emit-counts")
        assert code == 0
        echo = tmp_path / "echo.csv"
        echo.write_text(out)
        reparsed = parse_counts_csv(echo)
        original = parse_counts_csv(SHOOTINGS)
        assert reparsed.counts.tolist() == original.counts.tolist()
        assert reparsed.row_labels == original.row_labels
        assert reparsed.col_labels == original.col_labels

    def test_linear_with_scores(self, capsys):
        env = run_json(capsys, "test", "linear", "--input", SURVEY,
                       "--scores", "1:5,1:5")
        results = env["results"]
        assert results["correlation"] == pytest.approx(0.599, abs=1e-3)
        assert results["mantel_haenszel"]["statistic"] == pytest.approx(
            834.937, abs=1.0)
        assert results["row_scores"] == [1, 2, 3, 4, 5]

    def test_linear_without_scores_demands_them(self, capsys):
        code, _, err = run_cli(capsys, "test", "linear", "--input", SURVEY)
        assert code == 3
        assert "scores" in err

    def test_proportion(self, capsys):
        env = run_json(capsys, "test", "proportion", "--successes", "3",
                       "--trials", "10", "--null", "0.5")
        results = env["results"]
        assert results["score"]["statistic"] == pytest.approx(-1.265, abs=5e-4)
        assert results["score"]["p_value"] == pytest.approx(0.2059, abs=1e-4)
        assert results["wald"]["statistic"] == pytest.approx(1.9048, abs=1e-4)
        ci = results["confidence_interval"]
        assert ci["lower"] == pytest.approx(0.0160, abs=5e-4)
        assert ci["upper"] == pytest.approx(0.5840, abs=5e-4)
        assert ci["contains_null"] is True

    def test_proportion_upper_tail(self, capsys):
        env = run_json(capsys, "test", "proportion", "--successes", "3",
                       "--trials", "10", "--null", "0.5", "--sided", "upper")
        assert env["results"]["score"]["p_value"] == pytest.approx(0.897,
                                                                   abs=1e-3)

    def test_odds_ratio(self, capsys):
        env = run_json(capsys, "assoc", "odds-ratio", "--input", SHOOTINGS,
                       "--rows", "1,2", "--cols", "2,1")
        results = env["results"]
        assert results["odds"]["Man"] == pytest.approx(1.133, abs=1e-3)
        assert results["odds"]["Woman"] == pytest.approx(0.632, abs=1e-3)
        assert results["odds_ratio"] == pytest.approx(1.792, abs=1e-3)
        assert results["odds_ratio_swapped"] == pytest.approx(0.558, abs=1e-3)

    def test_vaccine_odds_ratio(self, capsys):
        env = run_json(capsys, "assoc", "odds-ratio", "--input", VACCINE,
                       "--rows", "2,1", "--cols", "1,2")
        assert env["results"]["odds_ratio"] == pytest.approx(17.01, abs=1e-2)

    def test_correlation_defaults(self, capsys):
        env = run_json(capsys, "assoc", "correlation", "--input", SHOOTINGS)
        assert env["results"]["correlation"] == pytest.approx(-0.059, abs=1e-3)

    def test_dist_binomial(self, capsys):
        env = run_json(capsys, "dist", "binomial", "--trials", "10",
                       "--prob", "0.2", "--count", "7")
        results = env["results"]
        assert results["pmf"] == pytest.approx(0.000786432, rel=1e-9)
        assert results["mean"] == pytest.approx(2.0)

    def test_dist_multinomial(self, capsys):
        env = run_json(capsys, "dist", "multinomial", "--trials", "10",
                       "--probs", "0.2,0.8", "--counts", "7,3")
        assert env["results"]["pmf"] == pytest.approx(0.000786432, rel=1e-9)

    def test_dist_poisson(self, capsys):
        env = run_json(capsys, "dist", "poisson", "--rate", "4", "--count", "4")
        assert env["results"]["pmf"] == pytest.approx(0.1953668148, rel=1e-9)

    def test_simulate_coverage_deterministic(self, capsys):
        argv = ("simulate", "coverage", "--pi", "0.5", "--trials", "50",
                "--level", "0.95", "--replicates", "1000", "--seed", "9",
                "--format", "json")
        _, out1, _ = run_cli(capsys, *argv)
        _, out2, _ = run_cli(capsys, *argv)
        assert out1 == out2
        payload = json.loads(out1)
        assert payload["results"]["rng_algorithm"] == "numpy-pcg64"
        assert 0.8 < payload["results"]["coverage"] <= 1.0

    def test_simulate_calibrate_deterministic(self, capsys):
        argv = ("simulate", "calibrate", "--scheme", "multinomial",
                "--n", "200", "--row-marginals", "0.5,0.5",
                "--col-marginals", "0.5,0.5", "--test", "pearson",
                "--replicates", "1000", "--seed", "13", "--format", "json")
        _, out1, _ = run_cli(capsys, *argv)
        _, out2, _ = run_cli(capsys, *argv)
        assert out1 == out2
        payload = json.loads(out1)
        assert payload["results"]["reference_df"] == 1
        assert 0.5 < payload["results"]["empirical_mean"] < 1.5

    def test_simulate_requires_seed(self, capsys):
        code, _, err = run_cli(capsys, "simulate", "coverage", "--pi", "0.5",
                               "--trials", "50", "--replicates", "1000")
        assert code == 2
        assert "--seed" in err

    def test_text_output_shows_statistics(self, capsys, monkeypatch):
        monkeypatch.setenv("CATTAB_NO_COLOR", "1")
        code, out, _ = run_cli(capsys, "test", "homogeneity", "--input", VACCINE)
        assert code == 0
        assert "155.471" in out
        assert "187.98" in out


class TestExitCodes:
    def test_missing_input_file(self, capsys):
        code, _, err = run_cli(capsys, "test", "independence",
                               "--input", "/nope/missing.csv")
        assert code == 2
        assert "cannot read" in err

    def test_domain_error_zero_margin(self, capsys, tmp_path):
        path = tmp_path / "zero_col.csv"
        path.write_text("table,x,y\na,1,0\nb,3,0\n")
        code, _, err = run_cli(capsys, "test", "independence",
                               "--input", str(path))
        assert code == 3
        assert "zero total" in err

    def test_domain_error_bad_indices(self, capsys):
        code, _, err = run_cli(capsys, "assoc", "odds-ratio", "--input",
                               SHOOTINGS, "--rows", "1,1")
        assert code == 3

    def test_input_error_bad_scores(self, capsys):
        code, _, err = run_cli(capsys, "test", "linear", "--input", SURVEY,
                               "--scores", "1:5")
        assert code == 2

    def test_json_number_formatting(self, capsys):
        _, out, _ = run_cli(capsys, "test", "independence", "--input",
                            SHOOTINGS, "--format", "json")
        assert '"statistic": 20.06770267' in out
