from fractions import Fraction
from pathlib import Path

import click

from .output_util import JSON_STYLES


def add_help_subcommand(group):
    """Adds a hidden `help [COMMAND]` subcommand, the same as `[COMMAND] --help`."""

    @group.command(add_help_option=False, hidden=True)
    @click.argument("command_name", metavar="COMMAND", required=False)
    @click.pass_context
    def help(ctx, command_name):
        if command_name is None:
            click.echo(ctx.parent.get_help())
            return
        command = group.get_command(ctx, command_name)
        with click.Context(command, info_name=command_name, parent=ctx.parent) as sub:
            click.echo(command.get_help(sub))

    return group


class FractionType(click.ParamType):
    """
    A rational number, written as an integer or as P/Q.

    Usage:
        --lll-delta=3/4
            --> Fraction(3, 4)
    """

    name = "rational"

    def convert(self, value, param, ctx):
        if isinstance(value, Fraction):
            return value
        try:
            return Fraction(value)
        except (ValueError, ZeroDivisionError):
            self.fail(f"{value!r} is not a rational number of the form P/Q", param, ctx)


def call_and_exit_flag(*args, callback, is_eager=True, **kwargs):
    """
    A flag option that runs callback(ctx) and exits as soon as it is parsed,
    e.g. @call_and_exit_flag("--version", callback=print_version).
    """

    def on_flag(ctx, param, value):
        if not value or ctx.resilient_parsing:
            return
        callback(ctx)
        ctx.exit()

    return click.option(
        *args,
        is_flag=True,
        callback=on_flag,
        expose_value=False,
        is_eager=is_eager,
        **kwargs,
    )


def file_path_type(**kwargs):
    return click.Path(dir_okay=False, path_type=Path, **kwargs)


field_option = click.option(
    "--field",
    "field_path",
    type=file_path_type(),
    required=True,
    metavar="FIELD.json",
    help="Field description: defining polynomial and integral basis.",
)

input_option = click.option(
    "--input",
    "input_path",
    type=file_path_type(),
    required=True,
    metavar="INPUT.json",
    help="Input document for this command.",
)


def field_config_options(func):
    """--precision-bits and --lll-delta, which control how a field is built."""
    func = click.option(
        "--lll-delta",
        type=FractionType(),
        default=None,
        help="LLL parameter delta as P/Q, with 1/4 < delta < 1 (default 3/4).",
    )(func)
    func = click.option(
        "--precision-bits",
        type=int,
        default=None,
        help="Precision of the embedding enclosure (default: from the field file, else 128).",
    )(func)
    return func


def output_options(func):
    """--json-style and --out, for every command that writes JSON."""
    func = click.option(
        "--out",
        "output_path",
        type=file_path_type(writable=True, allow_dash=True),
        default="-",
        metavar="PATH",
        help="Where to write the JSON output (default: stdout).",
    )(func)
    func = click.option(
        "--json-style",
        type=click.Choice(JSON_STYLES),
        default="pretty",
        help="How to format the JSON output.",
    )(func)
    return func
