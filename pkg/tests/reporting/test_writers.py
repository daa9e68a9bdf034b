"""
test_writers.py
===============
"""
import csv
import json
import math

import numpy as np
import pytest

from common.constants import Algorithm, M2_Source
from mixture.model import DistributionEstimate
from reporting.writers import estimate_document, write_csv, write_json, write_quantile_table
from spectral.error_bound import bound_report


def _estimate(density=None, bound=None):
    x = np.array([-0.1, 1 / 3, 2.0])
    cdf = np.array([0.0, math.pi / 10, 1.0])
    return DistributionEstimate(x, cdf, Algorithm.ALG2, density=density, bound=bound,
                                metadata={'N': np.int64(3), 'T': np.float64(2.1)})


def test_csv_round_trip(fs):
    fs.create_dir("/out")
    estimate = _estimate()
    write_csv(estimate, "/out/cdf.csv")
    with open("/out/cdf.csv", newline="") as input_file:
        rows = list(csv.reader(input_file))
    assert rows[0] == ["x", "cdf"]
    assert len(rows) == 4
    np.testing.assert_array_equal([float(row[0]) for row in rows[1:]], estimate.x)
    np.testing.assert_array_equal([float(row[1]) for row in rows[1:]], estimate.cdf)


def test_csv_density_column(fs):
    fs.create_dir("/out")
    write_csv(_estimate(density=[0.0, 0.5, 0.25]), "/out/cdf.csv")
    with open("/out/cdf.csv") as input_file:
        lines = input_file.read().splitlines()
    assert lines[0] == "x,cdf,density"
    assert lines[2].split(",")[2] == "0.5"


def test_csv_to_stdout(capsys):
    write_csv(_estimate())
    lines = capsys.readouterr().out.splitlines()
    assert lines[0] == "x,cdf"
    assert len(lines) == 4


def test_document_fields():
    report = bound_report(2 * math.pi, 4, M2_Source.EXACT_ORACLE)
    document = estimate_document(_estimate().with_bound(report.bound), report, warnings=["something"])
    assert set(document) == {'algorithm', 'x', 'cdf', 'density', 'bound', 'metadata', 'error_bound', 'warnings'}
    assert document['algorithm'] == Algorithm.ALG2
    assert document['bound'] == pytest.approx(1.0)
    assert document['density'] is None
    assert document['error_bound']['heuristic'] is False
    assert document['error_bound']['m2_source'] == M2_Source.EXACT_ORACLE
    assert document['warnings'] == ["something"]
    assert type(document['metadata']['N']) is int
    assert type(document['x'][0]) is float


def test_document_optional_sections():
    document = estimate_document(_estimate(), quantiles=[{'p': 0.5, 'x': 0.2}], oracle={'atoms': 3},
                                 reference={'N': 48})
    assert document['quantiles'] == [{'p': 0.5, 'x': 0.2}]
    assert document['oracle'] == {'atoms': 3}
    assert document['reference'] == {'N': 48}
    assert document['error_bound'] is None


def test_document_non_finite_values():
    document = estimate_document(_estimate(), oracle={'m2': np.inf, 'bound_holds': np.bool_(True)})
    assert document['oracle']['m2'] is None
    assert document['oracle']['bound_holds'] is True


def test_json_file(fs):
    fs.create_dir("/out")
    document = estimate_document(_estimate())
    write_json(document, "/out/cdf.json")
    with open("/out/cdf.json") as input_file:
        text = input_file.read()
    assert text.endswith("}\n")
    assert json.loads(text) == document


def test_quantile_table(fs):
    fs.create_dir("/out")
    write_quantile_table([0.025, 0.975], [-1 / 3, np.float64(2.5)], "/out/cdf.csv.quantiles.csv")
    with open("/out/cdf.csv.quantiles.csv", newline="") as input_file:
        rows = list(csv.reader(input_file))
    assert rows[0] == ["p", "x"]
    assert [float(cell) for cell in rows[1]] == [0.025, -1 / 3]
    assert rows[2] == ["0.97499999999999998", "2.5"]
