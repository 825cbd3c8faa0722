#!/usr/bin/env python3
import logging

import click
import mpmath
import sympy

import okhnf

from . import hnf, ops, selftest
from .cli_util import add_help_subcommand, call_and_exit_flag
from .context import Context
from .exceptions import InvalidInput


def print_version(ctx):
    click.echo(f"okhnf v{okhnf.version()}")
    click.echo(f"» SymPy v{sympy.__version__}; mpmath v{mpmath.__version__}")
    ctx.exit()


class OkHnfGroup(click.Group):
    def get_command(self, ctx, cmd_name):
        command = super().get_command(ctx, cmd_name)
        if command is None:
            import difflib

            message = f"'{cmd_name}' is not an okhnf command. See 'okhnf --help'."
            close = difflib.get_close_matches(cmd_name, self.list_commands(ctx), n=3)
            if close:
                message += "\n\nDid you mean:\n" + "".join(f"\t{c}\n" for c in close)
            ctx.fail(message)
        return command

    def invoke(self, ctx):
        try:
            if not ctx.params.get("post_mortem"):
                return super().invoke(ctx)
            try:
                return super().invoke(ctx)
            except Exception:
                _post_mortem()
                raise
        except click.UsageError as e:
            # bad arguments to a subcommand are input errors like any other
            raise InvalidInput(e.format_message())


def _post_mortem():
    try:
        import ipdb as pdb
    except ImportError:
        # ipdb comes with requirements/dev.txt only
        import pdb
    pdb.post_mortem()


@add_help_subcommand
@click.group(cls=OkHnfGroup)
@call_and_exit_flag(
    "--version",
    callback=print_version,
    help="Show version information and exit.",
)
@click.option("-v", "--verbose", count=True, help="Repeat for more verbosity")
# read by OkHnfGroup.invoke
@click.option(
    "--post-mortem",
    is_flag=True,
    hidden=True,
    help="Interactively debug uncaught exceptions",
)
@click.option(
    "--debug",
    is_flag=True,
    hidden=True,
    help="Run the expensive postcondition checks (as OKHNF_DEBUG=1 does)",
)
@click.pass_context
def cli(ctx, verbose, post_mortem, debug):
    ctx.ensure_object(Context)
    ctx.obj.verbosity = verbose
    if debug:
        okhnf.set_debug(True)

    # default == WARNING; -v == INFO; -vv == DEBUG
    log_level = logging.WARNING - min(10 * verbose, 20)
    logging.basicConfig(level=log_level)


# Commands from modules:
cli.add_command(hnf.hnf)
cli.add_command(hnf.detideal)
cli.add_command(ops.field_info)
cli.add_command(ops.normalize)
cli.add_command(ops.reduce)
cli.add_command(ops.idops)
cli.add_command(selftest.selftest)


if __name__ == "__main__":
    cli()
