"""
writers.py
==========
Output of the distribution estimate as plot-ready CSV or as JSON document. Numbers are
written with 17 significant digits, so the files parse back to the computed values.
"""
import csv
import json
import math
import sys

import daiquiri
import numpy as np

from mixture.model import DistributionEstimate

logger = daiquiri.getLogger("writers")

NUMBER_FORMAT = "%.17g"


def _open_output(path):
    if path is None:
        return sys.stdout, False
    return open(path, "w", newline=""), True


def write_csv(estimate: DistributionEstimate, path=None):
    """Writes the columns x,cdf[,density]. Without a path the table goes to stdout."""
    columns = [estimate.x, estimate.cdf]
    header = ["x", "cdf"]
    if estimate.density is not None:
        columns.append(estimate.density)
        header.append("density")

    output, owned = _open_output(path)
    try:
        writer = csv.writer(output, lineterminator="\n")
        writer.writerow(header)
        for row in zip(*columns):
            writer.writerow([NUMBER_FORMAT % value for value in row])
    finally:
        if owned:
            output.close()
    if path is not None:
        logger.info(f"Wrote {len(estimate)} rows to {path}")


def _plain(value):
    """Converts numpy scalars and arrays into JSON types; non-finite floats become null."""
    if isinstance(value, dict):
        return {str(key): _plain(item) for key, item in value.items()}
    if isinstance(value, (list, tuple, np.ndarray)):
        return [_plain(item) for item in value]
    if isinstance(value, (bool, np.bool_)):
        return bool(value)
    if isinstance(value, (int, np.integer)):
        return int(value)
    if isinstance(value, (float, np.floating)):
        value = float(value)
        return value if math.isfinite(value) else None
    return value


def estimate_document(estimate: DistributionEstimate, report=None, quantiles=None, oracle=None,
                      reference=None, warnings=()):
    """Assembles the JSON document: the estimate's fields, the error bound report and the
       optional quantile, oracle and reference sections."""
    document = {
        'algorithm': estimate.algorithm_tag,
        'x': estimate.x,
        'cdf': estimate.cdf,
        'density': estimate.density,
        'bound': estimate.bound,
        'metadata': estimate.metadata,
        'error_bound': None if report is None else report.to_dict(),
        'warnings': list(warnings),
    }
    if quantiles is not None:
        document['quantiles'] = quantiles
    if oracle is not None:
        document['oracle'] = oracle
    if reference is not None:
        document['reference'] = reference
    return _plain(document)


def write_json(document, path=None):
    output, owned = _open_output(path)
    try:
        json.dump(document, output, indent=4, sort_keys=True)
        output.write("\n")
    finally:
        if owned:
            output.close()
    if path is not None:
        logger.info(f"Wrote JSON result to {path}")


def write_quantile_table(probs, values, path):
    """Writes the columns p,x for the requested quantiles."""
    with open(path, "w", newline="") as output:
        writer = csv.writer(output, lineterminator="\n")
        writer.writerow(["p", "x"])
        for p, value in zip(probs, values):
            writer.writerow([NUMBER_FORMAT % p, NUMBER_FORMAT % value])
    logger.info(f"Wrote {len(values)} quantiles to {path}")
