import logging

import click

from .cli_util import (
    field_config_options,
    field_option,
    file_path_type,
    input_option,
    output_options,
)
from .context import read_json_file
from .determinant import P_STRATEGIES, determinantal_ideal
from .exceptions import VerificationFailed
from .modular import hnf_pipeline
from .output_util import dump_json_output
from .pseudo_matrix import hnf_naive, modules_equal
from .serialise_util import decode_ideal, decode_pseudo_matrix

L = logging.getLogger("okhnf.hnf")


def _p_strategy_option(func):
    return click.option(
        "--p-strategy",
        type=click.Choice(P_STRATEGIES),
        default="single",
        help="Compute the determinant modulo one large prime or several word-size ones.",
    )(func)


@click.command()
@click.pass_context
@field_option
@input_option
@click.option(
    "--modulus",
    "modulus_path",
    type=file_path_type(),
    default=None,
    metavar="IDEAL.json",
    help="Use this integral multiple of the determinantal ideal as modulus instead of computing it.",
)
@click.option(
    "--oracle",
    is_flag=True,
    default=False,
    help="Also run the naive elimination and check that both span the same module.",
)
@_p_strategy_option
@field_config_options
@output_options
def hnf(
    ctx,
    field_path,
    input_path,
    modulus_path,
    oracle,
    p_strategy,
    precision_bits,
    lll_delta,
    json_style,
    output_path,
):
    """
    Compute the pseudo-Hermite normal form of a module over O_K.

    The input pseudo-matrix must describe a full-rank module contained in O_K^n.
    """
    modulus = read_json_file(modulus_path, "--modulus") if modulus_path else None
    job = ctx.obj.job(
        "hnf",
        field_path=field_path,
        input_path=input_path,
        precision_bits=precision_bits,
        lll_delta=lll_delta,
        modulus=modulus,
        p_strategy=p_strategy,
        oracle=oracle,
        output_path=output_path,
        json_style=json_style,
    )
    field = ctx.obj.field_for(job)
    pm = decode_pseudo_matrix(field, ctx.obj.read_input(job))
    g = decode_ideal(field, job.modulus) if job.modulus is not None else None

    result = hnf_pipeline(pm, modulus=g, p_strategy=job.p_strategy)
    output = result.__json__()

    equal = None
    if job.oracle:
        naive = hnf_naive(pm)
        equal = modules_equal(pm, result.as_pseudo_matrix()) and modules_equal(
            naive.as_pseudo_matrix(), result.as_pseudo_matrix()
        )
        equal = equal and naive.det_ideal == result.det_ideal
        output["modules_equal"] = equal

    dump_json_output(output, job.output_path, job.json_style)
    if equal is False:
        raise VerificationFailed("The modular and the naive pseudo-HNF disagree")


@click.command()
@click.pass_context
@field_option
@input_option
@_p_strategy_option
@field_config_options
@output_options
def detideal(
    ctx, field_path, input_path, p_strategy, precision_bits, lll_delta, json_style, output_path
):
    """
    Compute the determinantal ideal det(A)·𝔞₁⋯𝔞ₙ of a pseudo-matrix.
    """
    job = ctx.obj.job(
        "detideal",
        field_path=field_path,
        input_path=input_path,
        precision_bits=precision_bits,
        lll_delta=lll_delta,
        p_strategy=p_strategy,
        output_path=output_path,
        json_style=json_style,
    )
    field = ctx.obj.field_for(job)
    pm = decode_pseudo_matrix(field, ctx.obj.read_input(job))
    dump_json_output(
        {"det_ideal": determinantal_ideal(pm, job.p_strategy)},
        job.output_path,
        job.json_style,
    )
