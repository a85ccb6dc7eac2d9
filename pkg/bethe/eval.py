from __future__ import absolute_import

import click
import numpy as np

from bethe.config import config_from_options, job_options
from bethe.eigenfunctions import MODES, eigenfunction
from bethe.exceptions import BadParameterException, PauliExcludedException
from bethe.root_systems import enumerate_weyl
from bethe.solve import solve_job
from bethe.utils import create_progress_bar, parse_grid, write_csv


HELP = """
Solve for a weight and evaluate the W-invariant eigenfunction φ on an
axis-aligned grid, printed as CSV with one row per point:

    bethe eval --type A --rank 1 --k-long 2 --weight 1 --grid "-1:1:11"

The grid gives one "lo:hi:n" triple per coordinate axis. Comment lines at
the top record λ, the energy and the multiplicities.
"""

SHORT_HELP = "Evaluate a Bethe eigenfunction on a grid"


@click.command(help=HELP, short_help=SHORT_HELP)
@job_options
@click.option('--grid', help='Grid as "lo:hi:n" per axis, comma-separated')
@click.option('--mode', type=click.Choice(MODES), default='bethe_k',
              show_default=True, help='Which eigenfunction to evaluate')
def cli(out, verbose, grid, mode, **options):
    conf = config_from_options(grid=grid, **options).validate()
    eval_cmd(conf, out, mode)


def eval_cmd(conf, out=None, mode='bethe_k'):
    if not conf.grid:
        raise BadParameterException("A grid is required, pass --grid or "
                                     "set grid in the job configuration",
                                     param_hint='grid')
    solution = solve_job(conf)
    if mode == 'bethe_k' and solution.pauli['excluded']:
        raise PauliExcludedException()
    rs = solution.rs
    points = parse_grid(conf.grid, rs.rank)
    ev = eigenfunction(rs, enumerate_weyl(rs), solution.k, solution, mode)
    values = []
    bar = create_progress_bar(len(points), 'eval', disable=len(points) < 100)
    for v in points:
        values.append(ev(v))
        bar.update(1)
    bar.close()
    header = (['x%d' % (i + 1) for i in range(rs.rank)] +
              ['re_phi', 'im_phi'])
    rows = [list(map(float, v)) + [float(np.real(z)), float(np.imag(z))]
            for v, z in zip(points, values)]
    comments = [
        'lambda = %s' % ' '.join('%.17gj' % x for x in ev.lam.imag),
        'energy = %.17g' % ev.energy,
        'k_long = %r, k_short = %r' % (solution.k.values['long'],
                                      solution.k.values['short']),
        'mode = %s' % mode,
    ]
    write_csv(header, rows, out, comments=comments)
    return values
