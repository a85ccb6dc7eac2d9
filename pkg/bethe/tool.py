from __future__ import absolute_import
import importlib

import click

import bethe


HELP = """
bethe solves the Bethe ansatz equations of the delta-interaction Bose gas on
a root system, evaluates the resulting eigenfunctions and verifies the
operator identities behind them numerically.
"""

SHORT_HELP = "Root system Bethe ansatz toolkit"

EPILOG = """
For usage and help on a specific command, run it with a --help flag, e.g.:

    bethe solve --help
"""

CONTEXT_SETTINGS = {'help_option_names': ['-h', '--help']}


@click.group(help=HELP, short_help=SHORT_HELP, epilog=EPILOG,
             context_settings=CONTEXT_SETTINGS)
@click.version_option(bethe.__version__)
def cli():
    pass


commands = [
    "solve",
    "eval",
    "verify",
    "sweep",
    "roots",
    "version",
]

for command in commands:
    module_path = "bethe." + command
    command_module = importlib.import_module(module_path)
    command_name = command.replace('_', '-')  # easier to type
    cli.add_command(command_module.cli, command_name)
