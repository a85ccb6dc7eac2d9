from __future__ import absolute_import

import csv
import contextlib
import json
import sys

import click
import numpy as np
from tqdm import tqdm

from bethe.exceptions import BadParameterException


DEFAULT_SEED = 42
CSV_FORMAT = '%.17g'


def is_verbose():
    ctx = click.get_current_context(True)
    return bool(ctx and ctx.params.get('verbose'))


def debug_log(msg):
    if is_verbose():
        click.echo(msg, err=True)


def create_progress_bar(total, desc, **kwargs):
    """Progress bar on stderr, so that stdout stays machine-readable.

    The bar should be closed by calling close() method.
    """
    return tqdm(
        total=total,
        desc=desc,
        file=sys.stderr,
        # helps to update bars on resizing terminal
        dynamic_ncols=True,
        miniters=1,
        **kwargs
    )


def make_rng(seed=DEFAULT_SEED):
    return np.random.default_rng(seed)


def parse_grid(spec, rank=None):
    """Parse "lo:hi:n,lo:hi:n,..." into the list of grid points.

    One triple per axis; a count of 1 places the single point at lo.
    """
    axes = []
    for part in spec.split(','):
        try:
            lo, hi, count = part.split(':')
            lo, hi, count = float(lo), float(hi), int(count)
        except ValueError:
            raise BadParameterException(
                "Grid axis %r is not of the form lo:hi:n" % part.strip(),
                param_hint='grid')
        if count < 1:
            raise BadParameterException(
                "Grid axis %r needs at least one point" % part.strip(),
                param_hint='grid')
        axes.append(np.linspace(lo, hi, count) if count > 1
                    else np.array([lo]))
    if rank is not None and len(axes) != rank:
        raise BadParameterException(
            "Grid has %d axes but the root system has rank %d"
            % (len(axes), rank), param_hint='grid')
    mesh = np.meshgrid(*axes, indexing='ij')
    return np.stack([m.ravel() for m in mesh], axis=-1)


def to_jsonable(value):
    """Convert numpy scalars/arrays and complex numbers for json.dump."""
    if isinstance(value, dict):
        return dict((str(k), to_jsonable(v)) for k, v in value.items())
    if isinstance(value, (list, tuple)):
        return [to_jsonable(v) for v in value]
    if isinstance(value, np.ndarray):
        return to_jsonable(value.tolist())
    if isinstance(value, (np.bool_, bool)):
        return bool(value)
    if isinstance(value, np.integer):
        return int(value)
    if isinstance(value, (complex, np.complexfloating)):
        return {'re': float(np.real(value)), 'im': float(np.imag(value))}
    if isinstance(value, np.floating):
        return float(value)
    return value


@contextlib.contextmanager
def open_output(path):
    if path in (None, '-'):
        yield click.get_text_stream('stdout')
    else:
        with click.open_file(path, 'w', encoding='utf-8') as f:
            yield f


def write_json(document, path=None):
    with open_output(path) as f:
        json.dump(to_jsonable(document), f, indent=2, sort_keys=True)
        f.write('\n')


def format_number(value):
    return CSV_FORMAT % value


def write_csv(header, rows, path=None, comments=()):
    """CSV with '#'-prefixed comment lines, a header row and numbers
    printed with 17 significant digits."""
    with open_output(path) as f:
        for line in comments:
            f.write('# %s\n' % line)
        writer = csv.writer(f, lineterminator='\n')
        writer.writerow(header)
        for row in rows:
            writer.writerow([format_number(v) if isinstance(v, float) else v
                             for v in row])
