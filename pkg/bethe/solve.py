from __future__ import absolute_import

import click

from bethe.bethe_solver import solve
from bethe.config import config_from_options, job_options
from bethe.exceptions import PauliExcludedException
from bethe.utils import debug_log, write_json


HELP = """
Solve the Bethe ansatz equations for one weight by minimizing the master
function, and print the certified spectral parameter as JSON.

The job is read from a configuration file:

    bethe solve --config job.yml

or given inline:

    bethe solve --type A --rank 1 --k-long 2 --weight 1

The document holds the weight, the deformed weight μ̂ (coordinates and
positive coroot pairings), the energy, residuals, moment gap bounds and the
regularity verdict. A singular solution carries no W-invariant eigenstate;
the document is still written and the command exits with status 2.
"""

SHORT_HELP = "Solve the Bethe ansatz equations for a weight"


@click.command(help=HELP, short_help=SHORT_HELP)
@job_options
def cli(out, verbose, **options):
    conf = config_from_options(**options).validate()
    solve_cmd(conf, out)


def solve_job(conf):
    rs = conf.root_system()
    debug_log("Solving %s, k=%r, weight=%r" % (rs.name, conf.multiplicity(),
                                                conf.weight))
    return solve(rs, conf.multiplicity(), conf.weight, tol=conf.tol,
                 max_iter=conf.max_iter)


def solve_cmd(conf, out=None):
    solution = solve_job(conf)
    write_json(solution.to_dict(), out)
    if solution.pauli['excluded']:
        raise PauliExcludedException()
    return solution
