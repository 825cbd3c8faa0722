"""
Commands wrapping single operations: field inspection, normalization,
reduction and ideal arithmetic. Each reads one JSON document and writes one.
"""

import click

from .cli_util import (
    add_help_subcommand,
    field_config_options,
    field_option,
    input_option,
    output_options,
)
from .ideal import crt_combine, normalize as normalize_pseudo_element, reduce_mod_ideal
from .output_util import dump_json_output
from .serialise_util import (
    decode_idops_input,
    decode_normalize_input,
    decode_reduce_input,
    encode_field,
)


def _setup(ctx, command, **kwargs):
    job = ctx.obj.job(command, **kwargs)
    return job, ctx.obj.field_for(job)


@click.command(name="field")
@click.pass_context
@field_option
@field_config_options
@output_options
def field_info(ctx, field_path, precision_bits, lll_delta, json_style, output_path):
    """
    Show a field as it will be used: the LLL-reduced integral basis (over the
    power basis), discriminant, signature and multiplication table.

    Element coordinates in every other input refer to this basis.
    """
    job, field = _setup(
        ctx,
        "field",
        field_path=field_path,
        precision_bits=precision_bits,
        lll_delta=lll_delta,
        output_path=output_path,
        json_style=json_style,
    )
    dump_json_output(encode_field(field, full=True), job.output_path, job.json_style)


@click.command()
@click.pass_context
@field_option
@input_option
@field_config_options
@output_options
def normalize(
    ctx, field_path, input_path, precision_bits, lll_delta, json_style, output_path
):
    """
    Rewrite a pseudo-element 𝔞·A with an integral ideal of bounded norm.

    Input: {"ideal": IDEAL, "row": [ELEMENT, ...]}
    """
    job, field = _setup(
        ctx,
        "normalize",
        field_path=field_path,
        input_path=input_path,
        precision_bits=precision_bits,
        lll_delta=lll_delta,
        output_path=output_path,
        json_style=json_style,
    )
    ideal, row = decode_normalize_input(field, ctx.obj.read_input(job))
    dump_json_output(normalize_pseudo_element(ideal, row), job.output_path, job.json_style)


@click.command()
@click.pass_context
@field_option
@input_option
@field_config_options
@output_options
def reduce(ctx, field_path, input_path, precision_bits, lll_delta, json_style, output_path):
    """
    Reduce an element modulo an ideal.

    Input: {"element": ELEMENT, "ideal": IDEAL}
    """
    job, field = _setup(
        ctx,
        "reduce",
        field_path=field_path,
        input_path=input_path,
        precision_bits=precision_bits,
        lll_delta=lll_delta,
        output_path=output_path,
        json_style=json_style,
    )
    x, ideal = decode_reduce_input(field, ctx.obj.read_input(job))
    dump_json_output(reduce_mod_ideal(x, ideal), job.output_path, job.json_style)


@add_help_subcommand
@click.group()
@click.pass_context
def idops(ctx, **kwargs):
    """
    Arithmetic on fractional ideals.

    Input documents name their operands "a" and "b" (ideals), "element",
    and for crt the residues "y" and "w".
    """


IDOPS = {
    # name: (operands, operation, help)
    "add": (("a", "b"), lambda a, b: a + b, "The sum a + b."),
    "mul": (("a", "b"), lambda a, b: a * b, "The product a·b."),
    "inv": (("a",), lambda a: a.inverse(), "The inverse of a."),
    "contains": (
        ("a", "element"),
        lambda a, element: {"contains": a.contains(element)},
        "Whether a contains the element.",
    ),
    "crt": (
        ("a", "b", "y", "w"),
        crt_combine,
        "z with z ≡ y mod a and z ≡ w mod b, for coprime integral a and b.",
    ),
}


def _make_idop(name, operands, operation, help_text):
    @idops.command(name=name, help=help_text)
    @click.pass_context
    @field_option
    @input_option
    @field_config_options
    @output_options
    def idop(
        ctx, field_path, input_path, precision_bits, lll_delta, json_style, output_path
    ):
        job, field = _setup(
            ctx,
            f"idops {name}",
            field_path=field_path,
            input_path=input_path,
            precision_bits=precision_bits,
            lll_delta=lll_delta,
            output_path=output_path,
            json_style=json_style,
        )
        args = decode_idops_input(field, ctx.obj.read_input(job), required=operands)
        result = operation(*(args[key] for key in operands))
        dump_json_output(result, job.output_path, job.json_style)

    return idop


for _name, (_operands, _operation, _help) in IDOPS.items():
    _make_idop(_name, _operands, _operation, _help)
