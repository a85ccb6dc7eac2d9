from __future__ import absolute_import

import click

from bethe.exceptions import WeylGroupTooLargeException, print_warning
from bethe.root_systems import build_root_system, enumerate_weyl
from bethe.utils import write_json


HELP = """
Print the realization of a root system as JSON: roots, coroots, simple and
highest root, Cartan matrix, fundamental weights and the order of the Weyl
group, e.g.:

    bethe roots --type B --rank 2

The longest Weyl group element is included when the group is small enough
to enumerate.
"""

SHORT_HELP = "Describe a root system"


@click.command(help=HELP, short_help=SHORT_HELP)
@click.option('--type', 'cartan_type', required=True,
              help='Cartan type, A to G')
@click.option('--rank', type=int, required=True,
              help='Rank of the root system')
@click.option('-o', '--out', default=None,
              help='Output file (default: stdout)')
@click.option('-v', '--verbose', is_flag=True, help='Log progress to stderr')
def cli(cartan_type, rank, out, verbose):
    roots_cmd(cartan_type, rank, out)


def roots_cmd(cartan_type, rank, out=None):
    rs = build_root_system(cartan_type, rank)
    try:
        wg = enumerate_weyl(rs)
    except WeylGroupTooLargeException as e:
        print_warning(e.message)
        wg = None
    write_json(rs.to_dict(wg), out)
