import functools
import json
import sys
import types
from fractions import Fraction
from pathlib import Path

import click
import pygments
from pygments.lexers import JsonLexer


JSON_PARAMS = {
    "compact": {},
    "pretty": {"indent": 2},
    "extracompact": {"separators": (",", ":")},
}

JSON_STYLES = tuple(JSON_PARAMS)


class ExtendedJsonEncoder(json.JSONEncoder):
    """
    JSON encoder for okhnf values: Fractions become "p/q" strings, and any
    object with a __json__() method is encoded as whatever that returns.
    """

    def default(self, obj):
        if isinstance(obj, Fraction):
            return str(obj)
        if isinstance(obj, types.GeneratorType):
            return list(obj)
        to_json = getattr(obj, "__json__", None)
        if to_json is None:
            return super().default(obj)
        return to_json()


def to_json_data(output):
    """Plain JSON data (dicts, lists, strings...) for anything the encoder accepts."""
    return json.loads(json.dumps(output, cls=ExtendedJsonEncoder))


@functools.lru_cache(maxsize=None)
def get_terminal_formatter():
    import pygments.token as token
    from pygments.formatters import TerminalFormatter

    # (light background, dark background)
    return TerminalFormatter(
        colorscheme={
            token.Token: ("", ""),
            token.Name.Tag: ("yellow", "yellow"),
            token.String: ("cyan", "brightcyan"),
            token.Number: ("cyan", "brightcyan"),
            token.Punctuation: ("gray", "brightblack"),
            token.Error: ("_brightred_", "_brightred_"),
        }
    )


def dump_json_output(output, output_path, json_style="pretty"):
    """
    Writes output as one JSON document followed by a newline. Pretty output to
    an interactive terminal is syntax highlighted.
    """
    text = json.dumps(output, cls=ExtendedJsonEncoder, **JSON_PARAMS[json_style])
    fp = resolve_output_path(output_path)
    try:
        if json_style == "pretty" and fp is sys.stdout and fp.isatty():
            # the formatter appends the trailing newline itself
            fp.write(pygments.highlight(text, JsonLexer(), get_terminal_formatter()))
        else:
            fp.write(text + "\n")
    finally:
        if fp is not sys.stdout and fp is not output_path:
            fp.close()


def resolve_output_path(output_path):
    """
    Writable file object for an --out value: file objects are used as they
    are, None and "-" mean stdout, anything else is a path to (over)write.
    """
    if hasattr(output_path, "write"):
        return output_path
    if not output_path or str(output_path) == "-":
        return sys.stdout
    return Path(output_path).open("w", encoding="utf8")


def echo_check(ok, label, detail=None):
    """One ✔/✘ line of a check summary."""
    mark = click.style("✔", fg="green") if ok else click.style("✘", fg="red")
    line = f"{mark} {label}"
    if detail:
        line += f": {detail}"
    click.echo(line)
