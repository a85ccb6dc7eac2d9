from __future__ import absolute_import

import os

import click
import yaml

from bethe import CONFIG_DOCS_LINK
from bethe.exceptions import (BadConfigException, BadParameterException,
                              BetheException, ConfigParseException)
from bethe.root_systems import (Multiplicity, build_root_system,
                                validate_cartan_type)
from bethe.utils import DEFAULT_SEED


GLOBAL_BETHE_YML_PATH = os.path.expanduser(
    os.environ.get('BETHE_GLOBAL_CONFIG', '~/.bethe.yml')
)

DEFAULT_VERIFY_SYSTEMS = (
    {'type': 'A', 'rank': 2, 'multiplicity': {'long': 1.0}},
    {'type': 'B', 'rank': 2, 'multiplicity': {'long': 0.5, 'short': 3.0}},
)


class JobConfig(object):
    """Settings of one bethe job.

    Values are layered: the global defaults file first, then the job file,
    then command-line overrides passed to update().
    """

    SECTIONS = ('system', 'multiplicity', 'weight', 'solver', 'grid',
                'sweep', 'verify', 'seed')

    def __init__(self):
        self.cartan_type = None
        self.rank = None
        self.k_long = None
        self.k_short = None
        self.weight = None
        self.tol = 1e-12
        self.max_iter = 100
        self.grid = None
        self.sweep_k = []
        self.sweep_weights = None
        self.verify_systems = [dict(s) for s in DEFAULT_VERIFY_SYSTEMS]
        self.verify_samples = 10
        self.seed = DEFAULT_SEED

    def load(self, stream):
        """Load job settings from a YAML (or JSON) stream."""
        try:
            cfg = yaml.safe_load(stream)
            if not cfg:
                return
            if not isinstance(cfg, dict):
                raise ConfigParseException
            unknown = set(cfg) - set(self.SECTIONS)
            if unknown:
                raise BadConfigException(
                    "Unknown configuration section(s): %s. See %s"
                    % (', '.join(sorted(unknown)), CONFIG_DOCS_LINK))
            system = cfg.get('system', {})
            self.cartan_type = system.get('type', self.cartan_type)
            self.rank = system.get('rank', self.rank)
            multiplicity = cfg.get('multiplicity', {})
            self.k_long = multiplicity.get('long', self.k_long)
            self.k_short = multiplicity.get('short', self.k_short)
            self.weight = cfg.get('weight', self.weight)
            solver = cfg.get('solver', {})
            self.tol = solver.get('tol', self.tol)
            self.max_iter = solver.get('max_iter', self.max_iter)
            self.grid = cfg.get('grid', self.grid)
            sweep = cfg.get('sweep', {})
            self.sweep_k = sweep.get('k', self.sweep_k)
            self.sweep_weights = sweep.get('weights', self.sweep_weights)
            verify = cfg.get('verify', {})
            self.verify_systems = verify.get('systems', self.verify_systems)
            self.verify_samples = verify.get('samples', self.verify_samples)
            self.seed = verify.get('seed', cfg.get('seed', self.seed))
        except (yaml.YAMLError, AttributeError, TypeError):
            # AttributeError: a section is valid YAML but not a mapping
            raise ConfigParseException

    def load_file(self, filename):
        try:
            with open(filename, 'r') as f:
                self.load(f)
        except ConfigParseException:
            raise ConfigParseException(
                "Unable to parse job configuration %s. Maybe a missing "
                "colon or bracket?" % filename)

    def update(self, **overrides):
        """Apply command-line overrides; None means "not given"."""
        for name, value in overrides.items():
            if value is None:
                continue
            if not hasattr(self, name):
                raise AttributeError(name)
            setattr(self, name, value)

    def _validate_system(self):
        if self.cartan_type is None or self.rank is None:
            raise BadConfigException(
                "A root system is required: set system.type and system.rank "
                "or pass --type and --rank")
        try:
            self.cartan_type, self.rank = validate_cartan_type(
                self.cartan_type, self.rank)
        except BetheException as e:
            raise BadConfigException(e.message)

    def _validate_multiplicity(self, allow_zero=False):
        if self.k_long is None:
            raise BadConfigException(
                "multiplicity.long (or --k-long) is required")
        try:
            k = Multiplicity(self.k_long, self.k_short)
        except BetheException as e:
            raise BadConfigException(e.message)
        if not allow_zero and not all(value > 0
                                      for value in k.values.values()):
            raise BadConfigException(
                "Multiplicities must be strictly positive, got %r"
                % (k.values,))

    def _validate_weight(self):
        if not isinstance(self.weight, (list, tuple)):
            raise BadConfigException(
                "weight must be a list of integer coefficients")
        if len(self.weight) != self.rank:
            raise BadConfigException(
                "weight needs %d coefficients for %s%d, got %d"
                % (self.rank, self.cartan_type, self.rank, len(self.weight)))
        for c in self.weight:
            if isinstance(c, bool) or not isinstance(c, int):
                raise BadConfigException(
                    "weight coefficient %r is not an integer" % (c,))

    def validate(self, require_weight=True, allow_zero_multiplicity=False):
        self._validate_system()
        self._validate_multiplicity(allow_zero_multiplicity)
        if require_weight:
            self._validate_weight()
        try:
            # YAML reads exponent literals such as 1e-12 as strings
            self.tol = float(self.tol)
            self.max_iter = int(self.max_iter)
        except (TypeError, ValueError):
            raise BadConfigException(
                "solver.tol and solver.max_iter must be numbers")
        if not self.tol > 0 or self.max_iter < 1:
            raise BadConfigException(
                "solver.tol must be positive and solver.max_iter at least 1")
        return self

    def root_system(self):
        return build_root_system(self.cartan_type, self.rank)

    def multiplicity(self):
        return Multiplicity(self.k_long, self.k_short)

    def to_dict(self):
        return {
            'system': {'type': self.cartan_type, 'rank': self.rank},
            'multiplicity': {'long': self.k_long, 'short': self.k_short},
            'weight': self.weight,
            'solver': {'tol': self.tol, 'max_iter': self.max_iter},
            'grid': self.grid,
            'sweep': {'k': list(self.sweep_k),
                      'weights': self.sweep_weights},
            'verify': {'systems': self.verify_systems,
                       'samples': self.verify_samples},
            'seed': self.seed,
        }


def load_job_config(path=None, overrides=None, load_global=True):
    """Return a JobConfig with ~/.bethe.yml, the job file and the
    command-line overrides applied in that order."""
    conf = JobConfig()
    if load_global and os.path.exists(GLOBAL_BETHE_YML_PATH):
        conf.load_file(GLOBAL_BETHE_YML_PATH)
    if path:
        conf.load_file(path)
    conf.update(**(overrides or {}))
    return conf


def job_options(f):
    """Options shared by the commands that run a job."""
    options = [
        click.option('-c', '--config', 'config_path',
                     type=click.Path(exists=True, dir_okay=False),
                     help='Job configuration file (YAML or JSON)'),
        click.option('-o', '--out', 'out', default=None,
                     help='Output file (default: stdout)'),
        click.option('--type', 'cartan_type', help='Cartan type, A to G'),
        click.option('--rank', type=int, help='Rank of the root system'),
        click.option('--k-long', type=float,
                     help='Multiplicity of the long roots'),
        click.option('--k-short', type=float,
                     help='Multiplicity of the short roots'),
        click.option('--weight', help='Weight as comma-separated integer '
                     'coefficients in the fundamental-weight basis'),
        click.option('--tol', type=float, help='Newton gradient tolerance'),
        click.option('--max-iter', type=int,
                     help='Maximum number of Newton iterations'),
        click.option('--seed', type=int,
                     help='Seed for the sampled checks'),
        click.option('-v', '--verbose', is_flag=True,
                     help='Log solver progress to stderr'),
    ]
    for option in reversed(options):
        f = option(f)
    return f


def parse_weight(value):
    if value is None:
        return None
    try:
        return [int(c) for c in value.split(',')]
    except ValueError:
        raise BadParameterException(
            "Weight %r must be comma-separated integers" % value,
            param_hint='weight')


def config_from_options(config_path=None, cartan_type=None, rank=None,
                        k_long=None, k_short=None, weight=None, tol=None,
                        max_iter=None, seed=None, **extra):
    """JobConfig for the values of job_options()."""
    overrides = dict(cartan_type=cartan_type, rank=rank, k_long=k_long,
                     k_short=k_short, weight=parse_weight(weight), tol=tol,
                     max_iter=max_iter, seed=seed)
    overrides.update(extra)
    return load_job_config(config_path, overrides)
