import csv
import io
import json
import math

import pytest
from scipy.special import jn_zeros

from spectral_green.cli import EXIT_NOT_CONVERGED, EXIT_OK, EXIT_USAGE, run
from tests.conftest import write_sinh_table


def invoke(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), stdout=out, stderr=err)
    return code, out.getvalue(), err.getvalue()


def invoke_json(*argv):
    code, out, err = invoke(*argv)
    assert code == EXIT_OK, err
    return json.loads(out)


# =============================================================================
# Documents
# =============================================================================

def test_spectrum_json_document():
    doc = invoke_json("spectrum", "--dim", "2", "--radius", "1", "--count", "3")
    assert list(doc) == ["command", "config", "results", "warnings"]
    assert doc["command"] == "spectrum"
    assert doc["config"]["grid"] == 4096
    assert doc["warnings"] == []

    expected = jn_zeros(0, 3) ** 2
    for item, lam in zip(doc["results"]["items"], expected):
        assert item["lambda"] == pytest.approx(lam, rel=1e-5)
        assert item["converged"] is True
        assert item["lower_bound"] <= item["lambda"]
    assert [i["index"] for i in doc["results"]["items"]] == [1, 2, 3]


def test_spectrum_csv_output():
    code, out, _ = invoke("spectrum", "--grid", "256", "--count", "2", "--output", "csv")
    assert code == EXIT_OK
    rows = list(csv.reader(io.StringIO(out)))
    assert rows[0] == ["index", "lambda", "residual", "iterations", "converged", "lower_bound"]
    assert len(rows) == 3
    assert float(rows[1][1]) == pytest.approx(jn_zeros(0, 1)[0] ** 2, rel=1e-2)


def test_spectrum_with_ratio_table():
    doc = invoke_json("spectrum", "--grid", "1024", "--count", "2", "--table")
    table = doc["results"]["table"]
    assert table["orders"] == [1, 2, 3, 9]
    assert len(table["columns"]) == 2


def test_l_spectrum():
    doc = invoke_json("spectrum", "--l", "1", "--count", "1")
    assert doc["results"]["l"] == 1
    assert doc["results"]["eigenvalues"][0] == pytest.approx(14.682, rel=1e-4)


def test_output_is_deterministic():
    argv = ("spectrum", "--family", "hyperbolic", "--grid", "512", "--count", "2")
    assert invoke(*argv)[1] == invoke(*argv)[1]


def test_harmonic_series():
    doc = invoke_json("series", "--mode", "harmonic", "--count", "5", "--grid", "1024")
    assert doc["results"]["closed_form"] == pytest.approx(0.25, rel=1e-10)
    assert doc["results"]["partial_sum"] < 0.25


def test_whole_spectrum_series():
    doc = invoke_json("series", "--mode", "whole", "--multiplicity", "sphere", "--lmax", "50")
    assert doc["results"]["closed_form"] == pytest.approx(math.pi ** 2 / 48 - 5 / 32, rel=1e-10)
    assert doc["results"]["multiplicity"] == "sphere"


def test_divergent_whole_spectrum_serializes_infinity_as_null():
    doc = invoke_json("series", "--mode", "whole", "--dim", "4", "--lmax", "40")
    assert doc["results"]["tail_bound"] is None
    assert doc["warnings"]


def test_bounds_from_volume_and_ends():
    doc = invoke_json("bounds", "--dim", "2", "--volume", repr(math.pi))
    assert doc["results"]["lower"] == pytest.approx(1 / 48, rel=1e-10)
    assert doc["results"]["upper"] == pytest.approx(math.e ** 2 * math.pi ** 2 / 96, rel=1e-10)
    assert doc["results"]["cly_lambda1"] == pytest.approx(4 / math.e, rel=1e-10)

    ends = invoke_json("bounds", "--dim", "3", "--ends", "1")
    assert ends["results"]["lower"] == pytest.approx(8 / 1260, rel=1e-10)


def test_bounds_csv_is_a_single_scalar_row():
    code, out, _ = invoke("bounds", "--dim", "3", "--ends", "2", "--output", "csv")
    assert code == EXIT_OK
    rows = list(csv.DictReader(io.StringIO(out)))
    assert len(rows) == 1
    assert float(rows[0]["lower"]) == pytest.approx(4 / 1260, rel=1e-10)
    assert "notes" not in rows[0]


def test_momentum_on_the_disk():
    doc = invoke_json("momentum", "--k-max", "20", "--grid", "2048")
    results = doc["results"]
    assert results["torsional_rigidity"] == pytest.approx(math.pi / 8, rel=1e-10)
    assert results["max_exit_time"] == pytest.approx(0.25, rel=1e-10)
    assert results["lambda1_moments"] == pytest.approx(results["eigenvalues"][0], rel=1e-6)


@pytest.mark.parametrize("family, verdict", [("cubicexp", "converges_incomplete"), ("euclidean", "diverges_complete")])
def test_completeness(family, verdict):
    doc = invoke_json("complete", "--family", family, "--dim", "2")
    assert doc["results"]["verdict"] == verdict


# =============================================================================
# Configuration sources
# =============================================================================

def test_config_file_with_flag_override(tmp_path):
    config = tmp_path / "run.conf"
    config.write_text("grid=256\ncount=2\nfamily=hyperbolic\n")
    doc = invoke_json("spectrum", "--config", str(config), "--count", "1")
    assert doc["config"]["grid"] == 256
    assert doc["config"]["family"] == "hyperbolic"
    assert len(doc["results"]["items"]) == 1


def test_config_file_rejects_unknown_keys(tmp_path):
    config = tmp_path / "run.conf"
    config.write_text("gird=256\n")
    code, out, err = invoke("spectrum", "--config", str(config))
    assert code == EXIT_USAGE
    assert out == ""
    assert "gird" in err


def test_grid_from_environment(monkeypatch):
    monkeypatch.setenv("SPECTRAL_GREEN_GRID", "512")
    doc = invoke_json("spectrum", "--count", "1")
    assert doc["config"]["grid"] == 512


def test_tabulated_sinh_matches_hyperbolic(tmp_path):
    table = tmp_path / "sinh.csv"
    write_sinh_table(table)
    custom = invoke_json("spectrum", "--family", "custom", "--h-table", str(table), "--grid", "1024", "--count", "1")
    exact = invoke_json("spectrum", "--family", "hyperbolic", "--grid", "1024", "--count", "1")
    assert custom["config"]["h_table"] == str(table)
    assert custom["results"]["eigenvalues"][0] == pytest.approx(exact["results"]["eigenvalues"][0], rel=1e-5)


# =============================================================================
# Exit codes
# =============================================================================

@pytest.mark.parametrize(
    "argv",
    [
        ("spectrum", "--bogus"),
        ("spectrum", "--family", "spherical", "--radius", "4"),
        ("spectrum", "--family", "custom"),
        ("spectrum", "--family", "hyperbolic", "--l", "2"),
        ("spectrum", "--grid", "63"),
        ("bounds", "--dim", "2"),
        ("bounds", "--dim", "4", "--volume", "10"),
        ("series", "--mode", "hs", "--family", "hyperbolic"),
        ("complete", "--family", "spherical"),
    ],
)
def test_usage_and_domain_errors(argv):
    code, out, err = invoke(*argv)
    assert code == EXIT_USAGE
    assert out == ""
    assert err.startswith("error: ")
    assert len(err.strip().splitlines()) == 1


def test_malformed_table_is_a_usage_error(tmp_path):
    table = tmp_path / "bad.csv"
    table.write_text("t,h\n0,0\nfoo,bar\n")
    code, _, err = invoke("spectrum", "--family", "custom", "--h-table", str(table))
    assert code == EXIT_USAGE
    assert err.startswith("error: ")


def test_iteration_cap_exits_non_converged():
    code, out, _ = invoke("spectrum", "--grid", "256", "--count", "1", "--max-iter", "3")
    assert code == EXIT_NOT_CONVERGED
    doc = json.loads(out)
    assert doc["results"]["items"][0]["converged"] is False
    assert any("not converged" in w for w in doc["warnings"])
