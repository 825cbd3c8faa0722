import dataclasses
import json
import logging
from fractions import Fraction
from pathlib import Path
from typing import Optional

from .determinant import P_STRATEGIES
from .exceptions import InvalidConfig, InvalidInput
from .linalg import DEFAULT_LLL_DELTA
from .number_field import DEFAULT_PRECISION_BITS
from .output_util import JSON_STYLES

L = logging.getLogger("okhnf.context")

MIN_PRECISION_BITS = 32


@dataclasses.dataclass(frozen=True)
class JobConfig:
    """
    Everything one command run needs to know. Validated on construction, so a
    JobConfig that exists is a usable one.
    """

    command: str
    field_path: Optional[Path] = None
    input_path: Optional[Path] = None
    precision_bits: Optional[int] = None
    lll_delta: Optional[Fraction] = None
    modulus: Optional[dict] = None
    p_strategy: str = "single"
    seed: int = 0
    oracle: bool = False
    output_path: Optional[Path] = None
    json_style: str = "pretty"

    def __post_init__(self):
        if self.precision_bits is not None and self.precision_bits < MIN_PRECISION_BITS:
            raise InvalidConfig(
                f"precision_bits must be at least {MIN_PRECISION_BITS}",
                param_hint="--precision-bits",
            )
        if self.lll_delta is not None and not (
            Fraction(1, 4) < self.lll_delta < 1
        ):
            raise InvalidConfig(
                "lll_delta must satisfy 1/4 < delta < 1", param_hint="--lll-delta"
            )
        if self.p_strategy not in P_STRATEGIES:
            raise InvalidConfig(
                f"Unknown prime strategy {self.p_strategy!r}",
                param_hint="--p-strategy",
            )
        if self.json_style not in JSON_STYLES:
            raise InvalidConfig(
                f"Unknown JSON style {self.json_style!r}", param_hint="--json-style"
            )

    @property
    def effective_precision_bits(self):
        return self.precision_bits or DEFAULT_PRECISION_BITS

    @property
    def effective_lll_delta(self):
        return self.lll_delta or DEFAULT_LLL_DELTA


def read_json_file(path, param_hint=None):
    try:
        with open(path, encoding="utf8") as f:
            return json.load(f)
    except OSError as e:
        raise InvalidInput(f"Cannot read {path}: {e.strerror}", param_hint=param_hint)
    except json.JSONDecodeError as e:
        raise InvalidInput(f"Invalid JSON in {path}: {e}", param_hint=param_hint)


class Context(object):
    """
    The context object accessible to all commands.

    Fields are built lazily (their construction LLL-reduces the basis and
    certifies the embeddings) and cached per (path, precision, delta), so a
    command that touches the same field twice pays for it once.
    """

    def __init__(self):
        self.verbosity = 0
        self._fields = {}

    def job(self, command, **kwargs):
        return JobConfig(command=command, **kwargs)

    def get_field(self, path, precision_bits=None, lll_delta=None):
        from .serialise_util import decode_field

        key = (str(path), precision_bits, lll_delta)
        if key not in self._fields:
            doc = read_json_file(path, param_hint="--field")
            self._fields[key] = decode_field(
                doc, precision_bits=precision_bits, lll_delta=lll_delta
            )
        return self._fields[key]

    def field_for(self, job):
        if job.field_path is None:
            raise InvalidInput("A field description is required", param_hint="--field")
        return self.get_field(job.field_path, job.precision_bits, job.lll_delta)

    def read_input(self, job):
        if job.input_path is None:
            raise InvalidInput("An input file is required", param_hint="--input")
        return read_json_file(job.input_path, param_hint="--input")
