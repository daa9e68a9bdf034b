"""
test_mixcdf.py
==============
"""
import json

import numpy as np
import pytest

import mixcdf
from common.constants import Exit_Code


def _write_sample(fs, values, path="/data/sample.txt"):
    fs.create_file(path, contents="".join(f"{float(value)!r}\n" for value in values))
    return path


def _read_csv(path):
    with open(path) as input_file:
        lines = input_file.read().splitlines()
    return lines[0], np.array([[float(cell) for cell in line.split(",")] for line in lines[1:]])


def _read_json(path):
    with open(path) as input_file:
        return json.load(input_file)


def _symmetric_values(seed=3, half=15):
    values = np.random.default_rng(seed).normal(size=half)
    return np.concatenate([values, -values])


def test_mixcdf_no_syntax_errors():
    """ Checks if mixcdf.py can be started. """
    assert mixcdf


def test_csv_output(fs):
    sample = _write_sample(fs, [0.0, 1.0])
    fs.create_dir("/out")
    result = mixcdf.main(["--input", sample, "--coeffs", "0.5,0.5", "--N", "64", "--output", "/out/cdf.csv"])
    assert result == Exit_Code.OK
    header, table = _read_csv("/out/cdf.csv")
    assert header == "x,cdf"
    assert table.shape == (64, 2)
    assert np.all(np.diff(table[:, 0]) > 0)


def test_csv_to_stdout(fs, capsys):
    sample = _write_sample(fs, [0.0, 1.0, 3.0])
    assert mixcdf.main(["--input", sample, "--coeffs", "1,-1", "--N", "32", "--density"]) == Exit_Code.OK
    lines = capsys.readouterr().out.splitlines()
    assert lines[0] == "x,cdf,density"
    assert len(lines) == 33


def test_missing_input(fs, capsys):
    assert mixcdf.main(["--input", "/data/none.txt", "--coeffs", "1"]) == Exit_Code.INVALID_INPUT
    assert "error: input:" in capsys.readouterr().err


def test_invalid_kappa(fs, capsys):
    sample = _write_sample(fs, [0.0, 1.0])
    assert mixcdf.main(["--input", sample, "--coeffs", "1", "--kappa", "0.5"]) == Exit_Code.INVALID_INPUT
    assert "error: kappa:" in capsys.readouterr().err


def test_invalid_coefficients(fs, capsys):
    sample = _write_sample(fs, [0.0, 1.0])
    assert mixcdf.main(["--input", sample, "--coeffs", "1,x"]) == Exit_Code.INVALID_INPUT
    assert "error: coeffs:" in capsys.readouterr().err


def test_oracle_too_large(fs, capsys):
    sample = _write_sample(fs, np.linspace(0, 1, 1000))
    result = mixcdf.main(["--input", sample, "--coeffs", "1,2,3", "--oracle", "--N", "256"])
    assert result == Exit_Code.ORACLE_TOO_LARGE
    assert "error: oracle:" in capsys.readouterr().err


def test_json_document_with_heuristic_bound(fs):
    sample = _write_sample(fs, _symmetric_values())
    fs.create_dir("/out")
    result = mixcdf.main(["--input", sample, "--mode", "mean-boot", "--N", "512", "--bound", "--format", "json",
                          "--quantiles", "0.5", "--output", "/out/cdf.json"])
    assert result == Exit_Code.OK
    document = _read_json("/out/cdf.json")
    assert {'algorithm', 'x', 'cdf', 'density', 'bound', 'metadata', 'error_bound', 'warnings',
            'quantiles'} <= set(document)
    assert len(document['x']) == 512
    assert document['density'] is None
    assert document['error_bound']['heuristic'] is True
    assert document['bound'] == pytest.approx(document['error_bound']['bound'])
    assert any("heuristic" in warning for warning in document['warnings'])
    assert document['quantiles'][0]['p'] == 0.5


def test_quantiles_of_symmetric_bootstrap(fs):
    N = 1000
    sample = _write_sample(fs, _symmetric_values())
    fs.create_dir("/out")
    mixcdf.main(["--input", sample, "--mode", "mean-boot", "--N", str(N), "--format", "json",
                 "--quantiles", "0.1,0.5,0.9", "--output", "/out/cdf.json"])
    document = _read_json("/out/cdf.json")
    low, median, high = [entry['x'] for entry in document['quantiles']]
    cell = document['metadata']['T'] / N
    assert low == pytest.approx(-high, abs=2 * cell)
    assert median == pytest.approx(0.0, abs=2 * cell)


def test_quantile_table_next_to_csv(fs):
    sample = _write_sample(fs, [0.0, 1.0, 2.0])
    fs.create_dir("/out")
    mixcdf.main(["--input", sample, "--coeffs", "1,1", "--N", "128", "--quantiles", "0.25,0.75",
                 "--output", "/out/cdf.csv"])
    header, table = _read_csv("/out/cdf.csv.quantiles.csv")
    assert header == "p,x"
    np.testing.assert_array_equal(table[:, 0], [0.25, 0.75])
    assert table[0, 1] < table[1, 1]


def test_algorithms_agree_on_smooth_distribution(fs):
    sample = _write_sample(fs, _symmetric_values())
    fs.create_dir("/out")
    documents = []
    for algorithm in ("1", "2"):
        output = f"/out/alg{algorithm}.json"
        mixcdf.main(["--input", sample, "--mode", "mean-boot", "--N", "4096", "--algorithm", algorithm,
                     "--bound", "--format", "json", "--output", output])
        documents.append(_read_json(output))
    alg1, alg2 = documents
    assert alg1['algorithm'] == "alg1"
    assert alg2['algorithm'] == "alg2"
    np.testing.assert_array_equal(alg1['x'], alg2['x'])
    assert np.max(np.abs(np.array(alg1['cdf']) - np.array(alg2['cdf']))) <= alg2['bound']


def test_reference_run(fs):
    sample = _write_sample(fs, _symmetric_values())
    fs.create_dir("/out")
    mixcdf.main(["--input", sample, "--mode", "mean-boot", "--N", "256", "--reference", "--quantiles", "0.5",
                 "--format", "json", "--output", "/out/cdf.json"])
    reference = _read_json("/out/cdf.json")['reference']
    assert reference['N'] == 16 * 256
    assert reference['max_cdf_difference'] < 0.05
    assert reference['quantiles'][0] == pytest.approx(0.0, abs=0.01)


def test_oracle_section(fs):
    sample = _write_sample(fs, [0.0, 1.0, 3.0])
    fs.create_dir("/out")
    result = mixcdf.main(["--input", sample, "--coeffs", "1,2", "--oracle", "--format", "json",
                          "--output", "/out/cdf.json"])
    assert result == Exit_Code.OK
    document = _read_json("/out/cdf.json")
    oracle = document['oracle']
    assert oracle['atoms'] == 8
    assert oracle['tuples'] == 9
    assert oracle['bound_holds'] is True
    assert oracle['max_deviation'] <= oracle['bound']
    assert oracle['levy_max_deviation'] < 0.1
    assert document['error_bound']['m2_source'] == "exact-oracle"
    assert document['error_bound']['heuristic'] is False
    assert document['warnings'] == []


def test_residual_bootstrap(fs):
    fs.create_file("/data/reg.csv", contents="y,one,x\n1,1,0\n2.5,1,1\n2,1,3\n5.5,1,4\n6,1,6.5\n4,1,5\n")
    fs.create_dir("/out")
    result = mixcdf.main(["--input", "/data/reg.csv", "--mode", "residual-boot", "--coef-index", "1",
                          "--N", "128", "--output", "/out/slope.csv"])
    assert result == Exit_Code.OK
    _, table = _read_csv("/out/slope.csv")
    assert table.shape == (128, 2)
    assert table[0, 0] < 0 < table[-1, 0]


def test_degenerate_mixture(fs):
    sample = _write_sample(fs, [2.0, 2.0])
    fs.create_dir("/out")
    assert mixcdf.main(["--input", sample, "--coeffs", "1,1", "--N", "16", "--output", "/out/cdf.csv"]) == 0
    _, table = _read_csv("/out/cdf.csv")
    np.testing.assert_array_equal(table[:, 1], (table[:, 0] >= 4.0).astype(float))


def test_configuration_file(fs):
    sample = _write_sample(fs, [0.0, 1.0])
    fs.create_file("/etc/mixcdf.json", contents=json.dumps({"N": 128, "output_format": "json"}))
    fs.create_dir("/out")
    mixcdf.main(["--input", sample, "--coeffs", "1", "--config", "/etc/mixcdf.json", "--output", "/out/cdf.json"])
    assert len(_read_json("/out/cdf.json")['x']) == 128


def test_output_independent_of_thread_count(fs, monkeypatch):
    sample = _write_sample(fs, np.random.default_rng(11).normal(size=50))
    fs.create_dir("/out")
    contents = []
    for threads in ("1", "4"):
        monkeypatch.setenv("MIXCDF_THREADS", threads)
        output = f"/out/cdf{threads}.csv"
        mixcdf.main(["--input", sample, "--coeffs", "1,-0.5,2", "--N", "4096", "--density", "--output", output])
        with open(output, "rb") as result:
            contents.append(result.read())
    assert contents[0] == contents[1]


def test_invalid_thread_count(fs, monkeypatch, capsys):
    sample = _write_sample(fs, [0.0, 1.0, 3.0])
    monkeypatch.setenv("MIXCDF_THREADS", "four")
    assert mixcdf.main(["--input", sample, "--coeffs", "1,2", "--N", "16"]) == Exit_Code.INVALID_INPUT
    assert "error: MIXCDF_THREADS:" in capsys.readouterr().err


def test_wrongly_typed_configuration_value(fs, capsys):
    sample = _write_sample(fs, [0.0, 1.0])
    fs.create_file("/etc/mixcdf.json", contents=json.dumps({"kappa": "1.2"}))
    result = mixcdf.main(["--input", sample, "--coeffs", "1", "--config", "/etc/mixcdf.json"])
    assert result == Exit_Code.INVALID_INPUT
    assert "error: kappa:" in capsys.readouterr().err


def test_density_skipped_for_single_point(fs, mocker):
    warning = mocker.patch.object(mixcdf.logger, "warning")
    sample = _write_sample(fs, [2.0, 2.0])
    fs.create_dir("/out")
    assert mixcdf.main(["--input", sample, "--coeffs", "1,1", "--N", "16", "--density", "--format", "json",
                        "--output", "/out/cdf.json"]) == Exit_Code.OK
    document = _read_json("/out/cdf.json")
    assert document['density'] is None
    assert any("density" in message for message in document['warnings'])
    warning.assert_called_once()
