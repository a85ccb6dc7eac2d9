from __future__ import absolute_import

import itertools

import click

from bethe.bethe_solver import solve
from bethe.config import config_from_options, job_options
from bethe.exceptions import BadConfigException
from bethe.root_systems import Multiplicity, enumerate_weyl
from bethe.utils import create_progress_bar, debug_log, write_csv


HELP = """
Solve the Bethe ansatz equations over a list of couplings or a box of
dominant weights and print one CSV row per solve.

A coupling sweep (both root lengths take the same value):

    bethe sweep --type A --rank 1 --weight 1 -k 1 -k 10 -k 100

A weight sweep over all dominant weights with coefficients in [lo, hi]:

    bethe sweep --type A --rank 2 --k-long 1 --weights 0:2

Rows hold the coroot pairings of μ̂ for the positive roots, the energy and
the smallest slack of the moment gap bounds.
"""

SHORT_HELP = "Solve over a range of couplings or weights"


@click.command(help=HELP, short_help=SHORT_HELP)
@job_options
@click.option('-k', 'k_values', type=float, multiple=True,
              help='Coupling to sweep (repeatable)')
@click.option('--weights', 'box',
              help='Dominant weight box "lo:hi" for every coefficient')
def cli(out, verbose, k_values, box, **options):
    conf = config_from_options(**options)
    if k_values:
        conf.sweep_k = list(k_values)
    if box:
        conf.sweep_weights = box
    sweep_cmd(conf, out)


def weight_box(value):
    """(lo, hi) from "lo:hi" or a mapping with lo and hi keys."""
    if isinstance(value, str):
        lo, _, hi = value.partition(':')
        value = {'lo': lo, 'hi': hi}
    try:
        lo, hi = int(value['lo']), int(value['hi'])
    except (KeyError, TypeError, ValueError):
        raise BadConfigException(
            "sweep.weights needs integer bounds, as \"lo:hi\" or a mapping "
            "with 'lo' and 'hi'")
    if lo < 0 or hi < lo:
        raise BadConfigException(
            "sweep.weights box %d:%d does not hold dominant weights"
            % (lo, hi))
    return lo, hi


def sweep_jobs(conf):
    """(multiplicity, weight) pairs of the sweep, in output order."""
    if conf.sweep_weights:
        lo, hi = weight_box(conf.sweep_weights)
        if conf.k_long is None and conf.sweep_k:
            conf.k_long = conf.sweep_k[0]
        conf.validate(require_weight=False)
        if conf.sweep_k:
            couplings = [Multiplicity(value) for value in conf.sweep_k]
        else:
            couplings = [conf.multiplicity()]
        return [(k, list(weight)) for k in couplings for weight in
                itertools.product(range(lo, hi + 1), repeat=conf.rank)]
    if not conf.sweep_k:
        return []
    if conf.k_long is None:
        conf.k_long = conf.sweep_k[0]
    conf.validate()
    return [(Multiplicity(value), list(conf.weight))
            for value in conf.sweep_k]


def sweep_cmd(conf, out=None):
    jobs = sweep_jobs(conf)
    rows = []
    header = None
    if jobs:
        rs = conf.root_system()
        wg = enumerate_weyl(rs)
        header = (['k_long', 'k_short'] +
                  ['m%d' % (i + 1) for i in range(rs.rank)] +
                  ['pairing%d' % (i + 1) for i in range(rs.n_positive)] +
                  ['energy', 'lower_slack', 'upper_slack', 'regular'])
        bar = create_progress_bar(len(jobs), 'sweep')
        for k, weight in jobs:
            solution = solve(rs, k, weight, tol=conf.tol,
                             max_iter=conf.max_iter, wg=wg)
            debug_log("k=%r weight=%r energy=%.6g" % (k, weight,
                                                       solution.energy))
            bounds = solution.gap['bounds'] if solution.gap else []
            rows.append(
                [k.values['long'], k.values['short']] + weight +
                [float(p) for p in solution.pairings] +
                [solution.energy,
                 min([b['lower_slack'] for b in bounds] or [0.0]),
                 min([b['upper_slack'] for b in bounds] or [0.0]),
                 int(solution.regular)])
            bar.update(1)
        bar.close()
    write_csv(header or ['k_long', 'k_short', 'energy'], rows, out)
    return rows
