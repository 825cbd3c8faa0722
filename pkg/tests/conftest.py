import hashlib
import json
import logging
import random
from pathlib import Path

import pytest
from click.testing import CliRunner

import okhnf
from okhnf.corpus import BUILTIN_FIELDS, builtin_field
from okhnf.ideal import FracIdeal
from okhnf.pseudo_matrix import PseudoMatrix


pytest_plugins = ["helpers_namespace"]


L = logging.getLogger("okhnf.tests")


def pytest_addoption(parser):
    parser.addoption(
        "--rng-salt",
        action="store",
        default="",
        help="Mixed into the per-test random seeds, to explore other random cases",
    )


def pytest_report_header(config):
    salt = config.getoption("--rng-salt")
    if salt:
        return f"okhnf random seeds salted with {salt!r}"


@pytest.fixture(scope="session", autouse=True)
def debug_checks():
    """ Every test runs with the expensive postcondition checks switched on """
    okhnf.set_debug(True)
    yield
    okhnf.set_debug(False)


@pytest.fixture
def rng(request):
    """ Deterministic random generator seeded from the test ID """
    key = request.node.nodeid + request.config.getoption("--rng-salt")
    seed = int(hashlib.sha1(key.encode("utf8")).hexdigest(), 16)
    return random.Random(seed)


@pytest.fixture(params=list(BUILTIN_FIELDS))
def any_field(request):
    """ Each of the builtin fields in turn """
    return builtin_field(request.param)


class OkHnfCliRunner(CliRunner):
    """
    Invokes the okhnf CLI with stderr kept apart from stdout, since commands
    write their result JSON to one and error JSON to the other.
    """

    def __init__(self, *args, **kwargs):
        kwargs.setdefault("mix_stderr", False)
        super().__init__(*args, **kwargs)

    def invoke(self, args=None, **kwargs):
        from okhnf.cli import cli

        # paths and numbers are passed straight through from the tests
        args = [str(a) for a in args or ()]
        L.debug("okhnf %s", " ".join(args))

        r = super().invoke(cli, args=args, **kwargs)
        L.debug("exit=%s stdout=%r stderr=%r", r.exit_code, r.stdout, r.stderr)

        # only ClickExceptions and exits are part of the CLI contract
        if r.exception and not isinstance(r.exception, SystemExit):
            raise r.exception
        return r


@pytest.fixture
def cli_runner():
    return OkHnfCliRunner()


@pytest.helpers.register
def helpers():
    return TestHelpers


class TestHelpers:
    DATA_DIR = Path(__file__).parent / "data"

    @classmethod
    def data_path(cls, name):
        return cls.DATA_DIR / name

    @classmethod
    def load_data(cls, name):
        with open(cls.data_path(name), encoding="utf8") as f:
            return json.load(f)

    @staticmethod
    def field(name):
        return builtin_field(name)

    @staticmethod
    def elt(field, *coords, den=1):
        return field.element(coords, den)

    @staticmethod
    def ideal(field, *gens):
        """ The ideal generated by the given elements (or integers) """
        return FracIdeal.from_generators(field, gens)

    @staticmethod
    def pseudo_matrix(field, rows, ideals=None):
        """
        Pseudo-matrix from integer/rational entries (for degree 1) or element
        coordinate tuples, with unit coefficient ideals unless given.
        """

        def entry(x):
            if isinstance(x, (tuple, list)):
                return field.from_rationals(x)
            return field.coerce(x)

        entries = [[entry(x) for x in row] for row in rows]
        if ideals is None:
            ideals = [FracIdeal.unit(field)] * len(rows)
        return PseudoMatrix(field, entries, ideals)

    @staticmethod
    def json_output(result):
        return json.loads(result.stdout)
