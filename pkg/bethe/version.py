from __future__ import absolute_import
import click
import bethe


@click.command(help="Show bethe version")
def cli():
    click.echo(bethe.__version__)
