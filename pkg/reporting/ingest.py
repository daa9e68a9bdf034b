"""
ingest.py
=========
Readers for the input files: plain samples (one value per line) and regression data
(CSV with header y,x1,x2,...).
"""
import csv
import math
from pathlib import Path

import daiquiri
import numpy as np

from common.errors import ValidationError
from mixture.model import Sample

logger = daiquiri.getLogger("ingest")


def _parse_value(text, line_number):
    try:
        value = float(text)
    except ValueError:
        raise ValidationError("input", f"line {line_number}: cannot parse '{text}' as a number")
    if not math.isfinite(value):
        raise ValidationError("input", f"line {line_number}: value '{text}' is not finite")
    return value


def _check_exists(path):
    if not Path(path).exists():
        raise FileNotFoundError(f"Input file not found: {path}")


def read_sample(path) -> Sample:
    """One observation per line. Blank lines and lines starting with # are skipped."""
    _check_exists(path)
    values = []
    with open(path, "r") as input_file:
        for line_number, line in enumerate(input_file, start=1):
            text = line.strip()
            if not text or text.startswith("#"):
                continue
            values.append(_parse_value(text, line_number))
    if not values:
        raise ValidationError("input", f"no observations in {path}")
    logger.info(f"Read {len(values)} observations from {path}")
    return Sample(np.array(values))


def read_regression(path):
    """Returns (design, response). The header must be y followed by at least one predictor
       column; an intercept has to be supplied as a column of ones."""
    _check_exists(path)
    with open(path, "r", newline="") as input_file:
        reader = csv.reader(input_file)
        header = [column.strip() for column in next(reader, [])]
        if len(header) < 2 or header[0] != "y":
            raise ValidationError("input", "regression header must read y,x1,x2,...")
        rows = []
        for line_number, row in enumerate(reader, start=2):
            if not row or all(not cell.strip() for cell in row):
                continue
            if len(row) != len(header):
                raise ValidationError("input", f"line {line_number}: expected {len(header)} columns, got {len(row)}")
            rows.append([_parse_value(cell.strip(), line_number) for cell in row])
    if not rows:
        raise ValidationError("input", f"no observations in {path}")
    data = np.array(rows)
    logger.info(f"Read {data.shape[0]} observations of {data.shape[1] - 1} predictors from {path}")
    return data[:, 1:], data[:, 0]
