"""
mixcdf.py
=========
Command line front end that computes the distribution function of a linear mixture
Z = sum_j a_j X^[j] of empirical samples, either for explicitly given coefficients or for the
mean and residual bootstrap, and writes it as plot-ready table.
"""
# Standard python includes
import argparse
import dataclasses
import logging
import sys

import daiquiri
import numpy as np

# App-specific includes
import common.config as config
import common.helper as helper
import common.version as version
from common.constants import Algorithm, Exit_Code, M2_Source, Output_Format, Run_Mode
from common.errors import EnumerationLimitError, ValidationError
from mixture.model import MixtureSpec
from mixture.support import build_grid
from oracle.atoms import continuity_points, enumerate_atoms, exact_cdf, self_consistent_m2
from oracle.levy import levy_inversion_quadrature
from reporting import ingest
from reporting.quantiles import quantiles
from reporting.writers import estimate_document, write_csv, write_json, write_quantile_table
from resampling.adapters import RegressionProblem, mean_bootstrap_spec, residual_bootstrap_spec
from spectral.charfn import spectral_coefficients
from spectral.error_bound import bound_report, estimate_m2_from_density
from spectral.inversion import cdf_closed_form, cdf_estimate, degenerate_estimate

daiquiri.setup(
    level=logging.INFO,
    outputs=(
        daiquiri.output.Stream(
            formatter=daiquiri.formatter.ColorFormatter(
                fmt="%(color)s%(levelname)-8.8s "
                "%(name)s: %(message)s%(color_stop)s"
            )
        ),
    ),
)
logger = daiquiri.getLogger("mixcdf")

# Number of continuity points checked against the Levy quadrature by --oracle
LEVY_CHECK_POINTS = 10
# Gaps narrower than T_Z / LEVY_MIN_GAP_DIVISOR need too fine a quadrature and are skipped
LEVY_MIN_GAP_DIVISOR = 100

algorithm_names = {'1': Algorithm.ALG1, '2': Algorithm.ALG2, Algorithm.ALG1: Algorithm.ALG1, Algorithm.ALG2: Algorithm.ALG2}


def create_arg_parser():
    """Creates and returns the ArgumentParser object."""
    parser = argparse.ArgumentParser(
        description="Computes the CDF of a linear mixture of empirical samples by characteristic function inversion."
    )
    parser.add_argument("--input", required=True, help="Sample file (one value per line) or regression CSV (y,x1,...).")
    parser.add_argument("--mode", choices=[Run_Mode.MIXTURE, Run_Mode.MEAN_BOOT, Run_Mode.RESIDUAL_BOOT],
                        default=Run_Mode.MIXTURE, help="How the mixture is formed from the input.")
    parser.add_argument("--coeffs", help="Comma-separated coefficients a1,a2,... (mixture mode).")
    parser.add_argument("--coef-index", type=int, default=None, help="Regression coefficient index (residual-boot mode).")
    parser.add_argument("--N", type=int, default=None, help="Grid resolution.")
    parser.add_argument("--kappa", type=float, default=None, help="Padding factor T/T_Z, must be > 1.")
    parser.add_argument("--algorithm", choices=sorted(algorithm_names), default=None, help="CDF algorithm.")
    parser.add_argument("--quantiles", help="Comma-separated probabilities p1,p2,...")
    parser.add_argument("--density", action="store_true", help="Add the smooth density column.")
    parser.add_argument("--bound", action="store_true", help="Report the (heuristic) error bound.")
    parser.add_argument("--oracle", action="store_true", help="Validate against exhaustive enumeration.")
    parser.add_argument("--reference", action="store_true", help="Rerun at reference_factor x N for self-validation.")
    parser.add_argument("--format", choices=[Output_Format.CSV, Output_Format.JSON], default=None, help="Output format.")
    parser.add_argument("--output", default=None, help="Output file (default: stdout).")
    parser.add_argument("--config", default=None, help="JSON file with settings overriding the defaults.")
    parser.add_argument("--verbose", action="store_true", help="Enable debug output.")
    return parser


def _parse_list(text, field):
    if text is None:
        return None
    try:
        return tuple(float(item) for item in text.split(",") if item.strip())
    except ValueError:
        raise ValidationError(field, f"cannot parse '{text}' as comma-separated numbers")


def run_config_from_args(settings, args):
    """Merges the command line arguments over the settings read from the configuration."""
    return config.build_run_config(
        settings,
        input_path=args.input,
        output_path=args.output,
        mode=args.mode,
        coefficients=_parse_list(args.coeffs, "coeffs"),
        coefficient_index=args.coef_index,
        N=args.N,
        kappa=args.kappa,
        algorithm=None if args.algorithm is None else algorithm_names[args.algorithm],
        quantile_probs=_parse_list(args.quantiles, "quantiles"),
        emit_density=args.density,
        emit_bound=args.bound,
        oracle=args.oracle,
        reference=args.reference,
        output_format=args.format,
    )


def load_spec(run_config) -> MixtureSpec:
    """Reads the input file and forms the mixture for the selected mode."""
    if run_config.mode == Run_Mode.RESIDUAL_BOOT:
        design, response = ingest.read_regression(run_config.input_path)
        return residual_bootstrap_spec(RegressionProblem(design, response, run_config.coefficient_index))

    sample = ingest.read_sample(run_config.input_path)
    if run_config.mode == Run_Mode.MEAN_BOOT:
        return mean_bootstrap_spec(sample)
    return MixtureSpec.shared(run_config.coefficients, sample)


def compute(spec, run_config, N, with_density):
    """Returns (grid, coefficients, estimate). Coefficients are None for a degenerate mixture."""
    grid = build_grid(spec, N, run_config.kappa)
    helper.g_log('grid.N', N)
    if grid.degenerate:
        logger.info(f"All mass of Z sits at {grid.shift}, returning the exact step function")
        return grid, None, degenerate_estimate(grid)

    with helper.timed('charfn.duration'):
        coeffs = spectral_coefficients(spec, grid, interval=run_config.renormalize_interval)
    return grid, coeffs, cdf_estimate(coeffs, run_config.algorithm, with_density=with_density)


def oracle_section(spec, run_config, grid, coeffs):
    """Exact M2, rigorous bound and the deviation from the exact CDF at continuity points."""
    atoms = enumerate_atoms(spec, limit=run_config.oracle_limit)
    section = {'atoms': len(atoms), 'tuples': atoms.total_count}
    if coeffs is None:
        return section, None

    N = grid.N
    m2 = self_consistent_m2(atoms, grid.T, N)
    report = bound_report(m2, N, M2_Source.EXACT_ORACLE)
    points = continuity_points(atoms)
    section['m2'] = m2
    section['bound'] = report.bound
    if points.size > 0:
        deviation = np.abs(np.asarray(cdf_closed_form(coeffs, points)) - exact_cdf(atoms, points))
        section['max_deviation'] = float(deviation.max())
        section['bound_holds'] = bool(deviation.max() <= report.bound)

        gaps = np.diff(atoms.z)
        widest = np.argsort(gaps, kind="stable")[::-1][:LEVY_CHECK_POINTS]
        widest = np.sort(widest[gaps[widest] >= grid.T_Z / LEVY_MIN_GAP_DIVISOR])
        if widest.size > 0:
            levy = levy_inversion_quadrature(spec, grid, points[widest], run_config.extra.get('levy_nu_max'),
                                             run_config.extra.get('levy_steps', 100000))
            section['levy_max_deviation'] = float(np.max(np.abs(levy - exact_cdf(atoms, points[widest]))))
    return section, report


def reference_section(spec, run_config, estimate):
    """Rerun at reference_factor x N; the coarse grid points are points of the reference grid."""
    reference_N = run_config.N * run_config.reference_factor
    _, _, reference = compute(spec, run_config, reference_N, with_density=False)
    on_coarse = np.interp(estimate.x, reference.x, reference.cdf)
    section = {
        'N': reference_N,
        'max_cdf_difference': float(np.max(np.abs(on_coarse - estimate.cdf))),
    }
    if run_config.quantile_probs:
        section['quantiles'] = quantiles(reference, run_config.quantile_probs)
    return section


def run(run_config) -> int:
    """Computes the estimate and writes the output. Raises on invalid input; the caller maps
       exceptions to exit codes."""
    warnings = []
    spec = load_spec(run_config)
    needs_density = run_config.emit_density or run_config.emit_bound
    grid, coeffs, estimate = compute(spec, run_config, run_config.N, needs_density)

    report = None
    oracle = None
    if run_config.oracle:
        oracle, report = oracle_section(spec, run_config, grid, coeffs)
    if report is None and run_config.emit_bound and coeffs is not None:
        report = bound_report(estimate_m2_from_density(estimate, grid), grid.N, M2_Source.DENSITY_RULE)
        warnings.append("error bound uses the density rule of thumb for M2 and is heuristic")
    if report is not None:
        estimate = estimate.with_bound(report.bound)
        dip = float(np.min(np.diff(estimate.cdf))) if len(estimate) > 1 else 0.0
        if dip < -report.bound:
            logger.warning(f"CDF decreases by {-dip:.3g}, more than the error bound {report.bound:.3g}")
            warnings.append("cdf dip exceeds the error bound")
    if run_config.emit_density and coeffs is None:
        logger.warning("Mixture is concentrated in a single point and has no density, skipping the density column")
        warnings.append("density column skipped for a single-point mixture")
    if not run_config.emit_density and estimate.density is not None:
        estimate = dataclasses.replace(estimate, density=None)

    quantile_values = None
    if run_config.quantile_probs:
        quantile_values = quantiles(estimate, run_config.quantile_probs)
        for p, value in zip(run_config.quantile_probs, quantile_values):
            logger.info(f"Quantile {p}: {value:.10g}")

    reference = reference_section(spec, run_config, estimate) if run_config.reference else None

    if run_config.output_format == Output_Format.JSON:
        quantile_list = None
        if quantile_values is not None:
            quantile_list = [{'p': p, 'x': value} for p, value in zip(run_config.quantile_probs, quantile_values)]
        write_json(estimate_document(estimate, report, quantile_list, oracle, reference, warnings),
                   run_config.output_path)
    else:
        write_csv(estimate, run_config.output_path)
        if quantile_values is not None and run_config.output_path is not None:
            write_quantile_table(run_config.quantile_probs, quantile_values, run_config.output_path + ".quantiles.csv")
        for message in warnings:
            logger.warning(message)
    return Exit_Code.OK


def main(argv=None) -> int:
    args = create_arg_parser().parse_args(argv)
    if args.verbose:
        logging.getLogger().setLevel(logging.DEBUG)

    logger.info(f"mixcdf ver {version.mixcdf_version}")
    logger.debug(sys.version)

    try:
        settings = config.read_config(args.config)
        run_config = run_config_from_args(settings, args)
        helper.configure_graphite(settings)
        logger.info(f"Mode {run_config.mode}, N={run_config.N}, kappa={run_config.kappa}, {run_config.algorithm}")
        with helper.timed('run.duration'):
            return run(run_config)
    except ValidationError as e:
        print(f"error: {e.field}: {e.message}", file=sys.stderr)
        return Exit_Code.INVALID_INPUT
    except FileNotFoundError as e:
        print(f"error: input: {e}", file=sys.stderr)
        return Exit_Code.INVALID_INPUT
    except EnumerationLimitError as e:
        print(f"error: oracle: {e}", file=sys.stderr)
        return Exit_Code.ORACLE_TOO_LARGE
    except Exception:
        logger.exception("Unable to compute the distribution")
        return Exit_Code.FAILURE


if __name__ == '__main__':
    sys.exit(main(sys.argv[1:]))
