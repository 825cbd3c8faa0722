"""
The selftest command: randomized property checks over the builtin fields
(and any extra fields given), grouped so that a failure points at the layer
that broke.
"""

import logging
import random
from collections import defaultdict

import click

from .corpus import (
    builtin_fields,
    random_coprime_pair,
    random_element,
    random_ideal,
    random_nonzero_element,
    random_pseudo_matrix,
)
from .exceptions import VerificationFailed
from .ideal import (
    FracIdeal,
    crt_combine,
    normalize,
    pivot_uv,
    reduce_mod_ideal,
    split_one,
    within_normalization_bound,
    within_reduction_bound,
)
from .linalg import det_int, hnf_lower, identity, is_lll_reduced
from .modular import hnf_pipeline
from .output_util import echo_check
from .pseudo_matrix import (
    PseudoMatrix,
    det_cofactor,
    hnf_naive,
    ideal_product,
    module_contains,
    modules_equal,
)

L = logging.getLogger("okhnf.selftest")

# generous ceiling for the measured size constant of the modular sweep
MAX_SIZE_CONSTANT = 64
MAX_CHECKED_N = 4


def check_field(field, rng, count):
    d = field.degree
    if not field.one.is_one() or field.basis[0] != tuple([1] + [0] * (d - 1)):
        yield "ω₁ is not 1"
    if not is_lll_reduced(identity(d), field.gram, field.lll_delta):
        yield "integral basis is not LLL-reduced"
    for _ in range(count):
        x = random_element(rng, field)
        y = random_element(rng, field)
        product = field._power_mul(x.to_power(), y.to_power())
        if (x * y).to_power() != product:
            yield f"table disagrees with polynomial multiplication for {x!r}·{y!r}"


def check_ring(field, rng, count):
    for _ in range(count):
        x, y, z = (random_element(rng, field) for _ in range(3))
        if (x * y) * z != x * (y * z) or x * y != y * x:
            yield f"multiplication is not associative/commutative at {x!r}, {y!r}, {z!r}"
        if x * (y + z) != x * y + x * z:
            yield f"distributivity fails at {x!r}, {y!r}, {z!r}"
        w = random_nonzero_element(rng, field)
        if not (w * w.inverse()).is_one():
            yield f"inverse of {w!r} is wrong"
        if (w * x).norm() != w.norm() * x.norm():
            yield f"norm is not multiplicative at {w!r}, {x!r}"


def check_ideals(field, rng, count):
    for _ in range(count):
        a = random_ideal(rng, field)
        b = random_ideal(rng, field)
        total = a + b
        if not (a.issubset(total) and b.issubset(total)):
            yield f"{a!r} + {b!r} does not contain both"
        if a * b != b * a or (a * b).norm != a.norm * b.norm:
            yield f"product of {a!r} and {b!r} is inconsistent"
        if not (a * a.inverse()).is_unit():
            yield f"{a!r} times its inverse is not O_K"


def check_normalize(field, rng, count):
    for _ in range(count):
        a = random_ideal(rng, field)
        row = [random_nonzero_element(rng, field) for _ in range(2)]
        ideal, new_row = normalize(a, row)
        if not ideal.is_integral() or not within_normalization_bound(ideal):
            yield f"normalization of {a!r} is not integral or exceeds the norm bound"
        # same module: the row changed by a scalar the ideal absorbed
        ratio = new_row[0] / row[0]
        if any(n != ratio * r for n, r in zip(new_row, row)) or a != ideal.mul_elt(ratio):
            yield f"normalization of {a!r} changed the module"


def check_reduce(field, rng, count):
    for _ in range(count):
        a = random_ideal(rng, field, integral=True)
        x = random_element(rng, field, bound=1000, integral=True)
        r = reduce_mod_ideal(x, a)
        if not a.contains(x - r) or not within_reduction_bound(r, a):
            yield f"reduction of {x!r} modulo {a!r} is wrong"


def check_crt(field, rng, count):
    for _ in range(count):
        a, b = random_coprime_pair(rng, field)
        u, v = split_one(a, b)
        if not (a.contains(u) and b.contains(v) and (u + v).is_one()):
            yield f"split_one failed on {a!r}, {b!r}"
        y = random_element(rng, field, integral=True)
        w = random_element(rng, field, integral=True)
        z = crt_combine(a, b, y, w)
        if not (a.contains(z - y) and b.contains(z - w)):
            yield f"crt_combine failed on {a!r}, {b!r}"


def check_pivot_uv(field, rng, count):
    for _ in range(count):
        bi = random_ideal(rng, field)
        bj = random_ideal(rng, field)
        b_ij = random_nonzero_element(rng, field)
        b_jj = random_nonzero_element(rng, field)
        dd = bi.mul_elt(b_ij) + bj.mul_elt(b_jj)
        u, v = pivot_uv(b_ij, bi, b_jj, bj, dd)
        dd_inv = dd.inverse()
        if not ((bi * dd_inv).contains(u) and (bj * dd_inv).contains(v)):
            yield f"pivot_uv coefficients lie outside 𝔟𝔡⁻¹ for {bi!r}, {bj!r}"
        if not (b_ij * u + b_jj * v).is_one():
            yield f"pivot_uv does not combine {b_ij!r}, {b_jj!r} to 1"


def check_degree_one(field, rng, count):
    """Over Q the pseudo-HNF is the integer HNF with its pivots moved into the ideals."""
    if field.degree != 1:
        return
    for case in range(count):
        n = 3 + case % 2
        rows = [[rng.randint(-50, 50) for _ in range(n)] for _ in range(n)]
        if det_int(rows) == 0:
            continue
        h = hnf_lower(rows)
        result = hnf_pipeline(PseudoMatrix(field, rows, [FracIdeal.unit(field)] * n))

        pivots = [h[i][i] for i in range(n)]
        expected = [FracIdeal.principal(field.coerce(p)) for p in pivots]
        if list(result.ideals) != expected:
            yield f"case {case}: ideals differ from the integer HNF diagonal"
            continue
        scaled = [[(x * p).coords[0] for x in row] for row, p in zip(result.w, pivots)]
        if hnf_lower(scaled) != h:
            yield f"case {case}: rows span a different lattice than the integer HNF"


def check_hnf(field, rng, count, stats_sink):
    for case in range(count):
        n = 1 + case % 5
        pm = random_pseudo_matrix(rng, field, n)
        result = hnf_pipeline(pm)
        stats_sink.append(result.stats)
        if not result.is_hnf_shaped():
            yield f"case {case}: result is not in pseudo-HNF shape"
        if not modules_equal(pm, result.as_pseudo_matrix()):
            yield f"case {case}: pipeline result spans a different module"
        if result.stats.max_constant > MAX_SIZE_CONSTANT:
            yield f"case {case}: size constant {result.stats.max_constant:.2f} too large"

        naive = hnf_naive(pm)
        if naive.det_ideal != result.det_ideal or not modules_equal(
            naive.as_pseudo_matrix(), result.as_pseudo_matrix()
        ):
            yield f"case {case}: naive and modular pseudo-HNF disagree"

        if n <= MAX_CHECKED_N:
            det = det_cofactor(pm.entries)
            if ideal_product(field, pm.ideals).mul_elt(det) != result.det_ideal:
                yield f"case {case}: determinantal ideal differs from the cofactor expansion"

        for i in range(n):
            e_i = [field.one if k == i else field.zero for k in range(n)]
            if not module_contains(pm, result.det_ideal, e_i):
                yield f"case {case}: 𝔤(M)·e_{i} is not in M"
                break


CHECK_GROUPS = (
    ("field construction", check_field),
    ("element arithmetic", check_ring),
    ("ideal arithmetic", check_ideals),
    ("normalization", check_normalize),
    ("reduction modulo ideals", check_reduce),
    ("coprime splitting and CRT", check_crt),
    ("pivot coefficients", check_pivot_uv),
    ("degree one against integer HNF", check_degree_one),
)

HNF_GROUP = "pseudo-HNF"

# cases per field when no --count is given
DEFAULT_COUNTS = {
    "field construction": 100,
    "element arithmetic": 100,
    "ideal arithmetic": 500,
    "normalization": 100,
    "reduction modulo ideals": 100,
    "coprime splitting and CRT": 100,
    "pivot coefficients": 500,
    "degree one against integer HNF": 100,
    HNF_GROUP: 50,
}


def run_selftest(fields, seed=0, count=None):
    """
    Runs every property group on every field, count cases each (or the
    DEFAULT_COUNTS when count is None). Returns (failures, stats) where
    failures maps a group label to its failure messages.
    """
    failures = defaultdict(list)
    stats = []
    for field in fields:
        rng = random.Random(f"{seed}:{field.label}")
        for label, check in CHECK_GROUPS:
            cases = count or DEFAULT_COUNTS[label]
            failures[label].extend(
                f"{field.label}: {m}" for m in check(field, rng, cases)
            )
        cases = count or DEFAULT_COUNTS[HNF_GROUP]
        failures[HNF_GROUP].extend(
            f"{field.label}: {m}" for m in check_hnf(field, rng, cases, stats)
        )
        L.info("selftest: field %s done", field.label)
    return failures, stats


@click.command()
@click.pass_context
@click.option("--seed", type=int, default=0, help="Seed for the random generators.")
@click.option(
    "--count",
    type=click.IntRange(min=1),
    default=None,
    help="Random cases per property group and field [default: the full run].",
)
@click.option(
    "--field",
    "field_paths",
    type=click.Path(dir_okay=False),
    multiple=True,
    metavar="FIELD.json",
    help="Extra field to test, in addition to the builtin ones. Repeatable.",
)
def selftest(ctx, seed, count, field_paths):
    """
    Check the algebraic properties of every layer on random inputs.

    Runs over Q, Q(i), Q(√5) and Q[x]/(x³-x-1), plus any extra fields given.
    Exits with status 2 if any property fails.
    """
    job = ctx.obj.job("selftest", seed=seed)
    fields = builtin_fields() + [ctx.obj.get_field(p) for p in field_paths]
    failures, stats = run_selftest(fields, seed=job.seed, count=count)

    labels = [label for label, _ in CHECK_GROUPS] + [HNF_GROUP]
    for label in labels:
        messages = failures[label]
        echo_check(not messages, label, f"{len(messages)} failures" if messages else None)
        for message in messages:
            click.echo(f"    {message}")

    worst = max((s.max_constant for s in stats), default=0.0)
    click.echo(f"Worst size constant C: {worst:.3f}")

    failed = sum(len(m) for m in failures.values())
    if failed:
        raise VerificationFailed(f"{failed} property checks failed")
