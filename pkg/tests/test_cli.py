import json

import pytest
from click.testing import CliRunner

from disjunct.cli import main
from disjunct.codes import write_design, write_code, rs_code
from disjunct.galois import Field
from disjunct.instances import fano


@pytest.fixture()
def runner():
    return CliRunner()


@pytest.fixture()
def fano_blocks_file(tmp_path):
    path = tmp_path / "fano.blocks"
    write_design(path, fano())
    return str(path)


def invoke(runner, args):
    result = runner.invoke(main, args, catch_exceptions=False)
    return result


def test_construct_ks_rs(runner, tmp_path):
    out = tmp_path / "ks.txt"
    result = invoke(runner, ["construct", "--family", "ks-rs", "--q", "8", "--k", "3", "--out", str(out)])
    assert result.exit_code == 0
    payload = json.loads(result.output)
    assert (payload["M"], payload["N"], payload["w"]) == (56, 512, 7)
    assert payload["min_distance"] == 10
    assert len(payload["digest"]) == 64
    assert out.exists()


def test_construct_bch_cw_empty_table(runner, tmp_path):
    out = tmp_path / "bch.txt"
    result = invoke(
        runner,
        ["construct", "--family", "bch-cw", "--m", "6", "--delta", "5", "--w", "3", "--out", str(out)],
    )
    assert result.exit_code == 0
    payload = json.loads(result.output)
    # the [63,51] code has minimum distance 5, so its weight-3 layer is empty
    assert payload["M"] == 63 and payload["N"] == 0
    assert "warning" in payload


def test_construct_bch_cw_nonempty(runner, tmp_path):
    out = tmp_path / "bch633.txt"
    result = invoke(
        runner,
        ["construct", "--family", "bch-cw", "--m", "6", "--delta", "3", "--w", "3", "--out", str(out)],
    )
    payload = json.loads(result.output)
    assert payload["N"] == 651 and payload["w"] == 3


def test_construct_design_passthrough(runner, tmp_path, fano_blocks_file):
    out = tmp_path / "fano.txt"
    result = invoke(runner, ["construct", "--family", "design", "--in", fano_blocks_file, "--out", str(out)])
    payload = json.loads(result.output)
    assert payload["M"] == 7 and payload["N"] == 7


def test_spectra_matrix_and_code(runner, tmp_path, fano_blocks_file):
    matrix_path = tmp_path / "fano.txt"
    invoke(runner, ["construct", "--family", "design", "--in", fano_blocks_file, "--out", str(matrix_path)])
    result = invoke(runner, ["spectra", "--in", str(matrix_path)])
    payload = json.loads(result.output)
    assert payload["dual_distance"] == 3
    assert all(not v.startswith("-") for v in payload["dual"])  # Delsarte nonnegativity

    code_path = tmp_path / "rs52.txt"
    write_code(code_path, rs_code(Field(5, 1), 2))
    result = invoke(runner, ["spectra", "--in", str(code_path), "--kind", "code"])
    payload = json.loads(result.output)
    assert payload["dual_distance"] == 3


def test_bound_families(runner):
    result = invoke(runner, ["bound", "--family", "cw-l2", "--M", "63", "--w", "3", "--t", "5"])
    payload = json.loads(result.output)
    assert abs(payload["epsilon"] - 125 / 992) < 1e-12
    result = invoke(runner, ["bound", "--family", "rs-asymptotic", "--q", "64", "--t", "2", "--ell", "4"])
    payload = json.loads(result.output)
    assert abs(payload["epsilon"] - 0.016792181078649392) < 1e-12
    result = invoke(
        runner,
        ["bound", "--family", "cw-minkowski", "--M", "1024", "--w", "32", "--t", "8", "--ell", "auto", "--dprime", "5"],
    )
    payload = json.loads(result.output)
    assert payload["ell_selected"] in (2, 4)


def test_params_calculators(runner):
    result = invoke(runner, ["params", "--family", "hermitian", "--q0", "3", "--r", "9"])
    payload = json.loads(result.output)
    assert payload["M"] == 243 and payload["dprime_lower_bound"] == 5
    result = invoke(runner, ["params", "--family", "suzuki", "--m", "1", "--r", "32"])
    payload = json.loads(result.output)
    assert payload["M"] == 512 and payload["dprime_lower_bound"] == 6


def test_simulate_exact_and_bounds_table(runner, tmp_path, fano_blocks_file):
    matrix_path = tmp_path / "fano.txt"
    invoke(runner, ["construct", "--family", "design", "--in", fano_blocks_file, "--out", str(matrix_path)])
    result = invoke(runner, ["simulate", "--matrix", str(matrix_path), "--t", "2", "--exact"])
    payload = json.loads(result.output)
    assert payload["report"]["p_a"] == "0/1"
    formulas = {entry["formula"] for entry in payload["bounds"]}
    assert "cw-l2" in formulas  # applicable: measured dual distance 3 > 2


def test_simulate_monte_carlo_byte_identical(runner, tmp_path, fano_blocks_file):
    matrix_path = tmp_path / "fano.txt"
    invoke(runner, ["construct", "--family", "design", "--in", fano_blocks_file, "--out", str(matrix_path)])
    args = ["simulate", "--matrix", str(matrix_path), "--t", "2", "--trials", "5000", "--seed", "99"]
    first = invoke(runner, args).output
    second = invoke(runner, args).output
    assert first == second


def test_simulate_decode_mode_and_trial_dump(runner, tmp_path, fano_blocks_file):
    matrix_path = tmp_path / "fano.txt"
    invoke(runner, ["construct", "--family", "design", "--in", fano_blocks_file, "--out", str(matrix_path)])
    dump = tmp_path / "trials.csv"
    result = invoke(
        runner,
        ["simulate", "--matrix", str(matrix_path), "--t", "2", "--trials", "50",
         "--decode", "--dump-trials", str(dump)],
    )
    payload = json.loads(result.output)
    assert payload["report"]["false_negatives"] == 0
    assert payload["report"]["violations"] == 0
    lines = dump.read_text().strip().splitlines()
    assert lines[0] == "trial,defectives,false_positives"
    assert len(lines) == 51
    assert all(line.endswith(",0") for line in lines[1:])


def test_corrupt_matrix_file_exits_2(runner, tmp_path):
    bad = tmp_path / "bad.txt"
    bad.write_text("5 3 2\n0 1\n")
    result = runner.invoke(main, ["simulate", "--matrix", str(bad), "--t", "1"])
    assert result.exit_code == 2


def test_empty_matrix_file_roundtrip_and_spectra_rejection(runner, tmp_path):
    out = tmp_path / "empty.txt"
    invoke(
        runner,
        ["construct", "--family", "bch-cw", "--m", "6", "--delta", "5", "--w", "3", "--out", str(out)],
    )
    from disjunct.codes import read_matrix

    again = read_matrix(out)
    assert again.num_columns == 0 and again.length == 63
    result = runner.invoke(main, ["spectra", "--in", str(out)])
    assert result.exit_code == 2  # no spectrum of an empty code


def test_missing_required_params_exit_2(runner, tmp_path):
    result = runner.invoke(main, ["construct", "--family", "ks-rs", "--out", str(tmp_path / "x.txt")])
    assert result.exit_code == 2


def test_verify_subsets(runner):
    result = runner.invoke(main, ["verify", "--only", "moments"])
    assert result.exit_code == 0
    assert "all checks passed" in result.output
    result = runner.invoke(main, ["verify", "--only", "fields", "--only", "orthogonality"])
    assert result.exit_code == 0
