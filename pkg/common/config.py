import json
import os
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional, Tuple

import daiquiri
from starlette.config import Config

from common.constants import Algorithm, Output_Format, Run_Mode
from common.errors import ValidationError

logger = daiquiri.getLogger("config")

configuration_folder = os.path.realpath(os.path.dirname(os.path.realpath(__file__)) + '/../configuration')
configuration_filename = configuration_folder + '/mixcdf.json'
environment_filename = configuration_folder + '/mixcdf.env'

mixcdf_defaults = {
    'N'                        :            1000,
    'kappa'                    :             1.1,
    'algorithm'                :  Algorithm.ALG2,
    'quantiles'                :              [],
    'output_format'            : Output_Format.CSV,
    'reference_factor'         :              16,
    'oracle_limit'             :         1000000,
    'renormalize_interval'     :             512,
    'levy_nu_max'              :            None, # None = 50/T_Z
    'levy_steps'               :          100000,
    'graphite_ip'              :              '',
    'graphite_port'            :            2003,
    'graphite_prefix'          :        'mixcdf',
}


def read_config(filename=None):
    """Reads the settings from the given JSON file and merges them over the defaults. Without an
       explicit filename, configuration/mixcdf.json is used if present, otherwise the defaults
       are returned unchanged. If the configuration file is locked by another process, an
       exception will be raised."""
    settings = dict(mixcdf_defaults)

    if filename is None:
        if not Path(configuration_filename).exists():
            return settings
        filename = configuration_filename

    configuration_file = Path(filename)

    lock_file = Path(configuration_file.parent / configuration_file.stem).with_suffix(".lock")
    if lock_file.exists():
        raise ResourceWarning(f"Configuration file locked: {lock_file}")

    if not configuration_file.exists():
        raise FileNotFoundError(f"Configuration file not found: {configuration_file}")

    logger.info(f"Reading configuration from: {configuration_file}")

    with open(configuration_file, "r") as json_file:
        try:
            loaded_config = json.load(json_file)
        except json.JSONDecodeError as e:
            raise ValidationError("config", f"invalid JSON in {configuration_file}: {e}")

    unknown = set(loaded_config) - set(mixcdf_defaults)
    if unknown:
        logger.warning(f"Ignoring unknown configuration keys: {sorted(unknown)}")
        for key in unknown:
            loaded_config.pop(key)

    settings.update(loaded_config)
    return settings


def environment():
    """Returns the starlette Config reading the process environment and, if present,
       configuration/mixcdf.env."""
    if Path(environment_filename).exists():
        return Config(environment_filename)
    return Config()


def worker_count():
    """Number of worker threads for the data-parallel numerical kernels. MIXCDF_THREADS
       caps the count; it only affects speed, never results."""
    available = os.cpu_count() or 1
    try:
        requested = environment()('MIXCDF_THREADS', cast=int, default=available)
    except ValueError:
        raise ValidationError("MIXCDF_THREADS", "must be a positive integer")
    if requested < 1:
        raise ValidationError("MIXCDF_THREADS", f"must be a positive integer, got {requested}")
    return requested


def _is_integer(value):
    return isinstance(value, int) and not isinstance(value, bool)


def _is_number(value):
    return isinstance(value, (int, float)) and not isinstance(value, bool)


@dataclass(frozen=True)
class RunConfig:
    """Resolved parameters of one command line run."""
    input_path: str
    output_path: Optional[str] = None
    mode: str = Run_Mode.MIXTURE
    coefficients: Tuple[float, ...] = ()
    coefficient_index: int = 0
    N: int = mixcdf_defaults['N']
    kappa: float = mixcdf_defaults['kappa']
    algorithm: str = mixcdf_defaults['algorithm']
    quantile_probs: Tuple[float, ...] = ()
    emit_density: bool = False
    emit_bound: bool = False
    oracle: bool = False
    reference: bool = False
    output_format: str = mixcdf_defaults['output_format']
    reference_factor: int = mixcdf_defaults['reference_factor']
    oracle_limit: int = mixcdf_defaults['oracle_limit']
    renormalize_interval: int = mixcdf_defaults['renormalize_interval']
    extra: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        for name in ('N', 'reference_factor', 'oracle_limit', 'renormalize_interval'):
            if not _is_integer(getattr(self, name)):
                raise ValidationError(name, f"must be an integer, got {getattr(self, name)!r}")
        if not _is_number(self.kappa):
            raise ValidationError("kappa", f"must be a number, got {self.kappa!r}")
        if not all(_is_number(p) for p in self.quantile_probs):
            raise ValidationError("quantiles", f"must be numbers, got {list(self.quantile_probs)!r}")
        if self.extra.get('levy_steps') is not None and not _is_integer(self.extra['levy_steps']):
            raise ValidationError("levy_steps", f"must be an integer, got {self.extra['levy_steps']!r}")
        if self.extra.get('levy_nu_max') is not None and not _is_number(self.extra['levy_nu_max']):
            raise ValidationError("levy_nu_max", f"must be a number, got {self.extra['levy_nu_max']!r}")
        if self.N < 2:
            raise ValidationError("N", f"must be an integer >= 2, got {self.N}")
        if not self.kappa > 1:
            raise ValidationError("kappa", f"must be > 1, got {self.kappa}")
        if self.algorithm not in (Algorithm.ALG1, Algorithm.ALG2):
            raise ValidationError("algorithm", f"unknown algorithm {self.algorithm}")
        if self.mode not in (Run_Mode.MIXTURE, Run_Mode.MEAN_BOOT, Run_Mode.RESIDUAL_BOOT):
            raise ValidationError("mode", f"unknown mode {self.mode}")
        if self.mode == Run_Mode.MIXTURE and len(self.coefficients) == 0:
            raise ValidationError("coeffs", "mixture mode needs at least one coefficient")
        if self.output_format not in (Output_Format.CSV, Output_Format.JSON):
            raise ValidationError("format", f"unknown output format {self.output_format}")
        for p in self.quantile_probs:
            if not 0 < p < 1:
                raise ValidationError("quantiles", f"probabilities must lie strictly inside (0,1), got {p}")
        if self.reference_factor < 2:
            raise ValidationError("reference_factor", f"must be >= 2, got {self.reference_factor}")
        if self.renormalize_interval < 1:
            raise ValidationError("renormalize_interval", f"must be >= 1, got {self.renormalize_interval}")


def _as_tuple(values):
    if not isinstance(values, (list, tuple)):
        raise ValidationError("quantiles", f"must be a list of probabilities, got {values!r}")
    return tuple(values)


def build_run_config(settings, **overrides):
    """Creates a RunConfig from merged settings (defaults + JSON file), with command line
       values taking precedence. Overrides equal to None are ignored."""
    values = {
        'N'                    : settings['N'],
        'kappa'                : settings['kappa'],
        'algorithm'            : settings['algorithm'],
        'quantile_probs'       : _as_tuple(settings['quantiles']),
        'output_format'        : settings['output_format'],
        'reference_factor'     : settings['reference_factor'],
        'oracle_limit'         : settings['oracle_limit'],
        'renormalize_interval' : settings['renormalize_interval'],
    }
    values.update({key: value for key, value in overrides.items() if value is not None})
    values['extra'] = {key: settings[key] for key in ('levy_nu_max', 'levy_steps', 'graphite_ip',
                                                      'graphite_port', 'graphite_prefix')}
    return RunConfig(**values)
