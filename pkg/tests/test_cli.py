import json
import re

import pytest

from okhnf import cli


H = pytest.helpers.helpers()


def data(name):
    return H.data_path(f"okhnf/{name}")


def error_of(r):
    return json.loads(r.stderr.strip().splitlines()[-1])


def test_version(cli_runner):
    r = cli_runner.invoke(["--version"])
    assert r.exit_code == 0, r
    assert re.match(r"^okhnf v(\d+\.\d+.*?)\n» SymPy v", r.stdout)


def test_cli_help():
    click_app = cli.cli
    for name, cmd in click_app.commands.items():
        if name == "help":
            continue
        assert cmd.help, f"`{name}` command has no help text"
    for name, cmd in click_app.commands["idops"].commands.items():
        if name == "help":
            continue
        assert cmd.help, f"`idops {name}` command has no help text"


def test_help_subcommand(cli_runner):
    r = cli_runner.invoke(["help"])
    assert r.exit_code == 0, r
    assert "hnf" in r.stdout
    r = cli_runner.invoke(["help", "detideal"])
    assert r.exit_code == 0, r
    assert "determinantal ideal" in r.stdout


def test_unknown_command(cli_runner):
    r = cli_runner.invoke(["hfn"])
    assert r.exit_code == 1, r
    assert error_of(r)["error"] == "InvalidInput"
    assert "hnf" in error_of(r)["detail"]


def test_hnf(cli_runner):
    r = cli_runner.invoke(
        ["hnf", "--field", data("field_q.json"), "--input", data("pm_q.json")]
    )
    assert r.exit_code == 0, r.stderr
    output = H.json_output(r)
    assert output["n"] == 2
    assert output["ideals"] == [
        {"den": "1", "hnf": [["6"]]},
        {"den": "1", "hnf": [["1"]]},
    ]
    assert output["entries"] == [
        [{"coords": ["1"], "den": "1"}, {"coords": ["0"], "den": "1"}],
        [{"coords": ["2"], "den": "1"}, {"coords": ["1"], "den": "1"}],
    ]
    assert output["det_ideal"] == {"den": "1", "hnf": [["6"]]}
    assert output["stats"]["eliminations"] == 1
    assert "modules_equal" not in output


def test_hnf_with_modulus(cli_runner):
    r = cli_runner.invoke(
        [
            "hnf",
            "--field",
            data("field_q.json"),
            "--input",
            data("pm_q.json"),
            "--modulus",
            data("modulus_q12.json"),
        ]
    )
    assert r.exit_code == 0, r.stderr
    output = H.json_output(r)
    assert output["det_ideal"] == {"den": "1", "hnf": [["6"]]}
    assert output["ideals"][0] == {"den": "1", "hnf": [["6"]]}


def test_hnf_modulus_must_be_a_file(cli_runner, tmp_path):
    r = cli_runner.invoke(
        [
            "hnf",
            "--field",
            data("field_q.json"),
            "--input",
            data("pm_q.json"),
            "--modulus",
            str(tmp_path),
        ]
    )
    assert r.exit_code == 2, r.stderr
    assert "is a directory" in r.stderr


@pytest.mark.parametrize("p_strategy", ["single", "multi"])
def test_hnf_oracle(cli_runner, p_strategy):
    r = cli_runner.invoke(
        [
            "hnf",
            "--field",
            data("field_gauss.json"),
            "--input",
            data("pm_gauss_diag.json"),
            "--oracle",
            "--p-strategy",
            p_strategy,
        ]
    )
    assert r.exit_code == 0, r.stderr
    output = H.json_output(r)
    assert output["modules_equal"] is True
    assert output["det_ideal"] == {"den": "1", "hnf": [["2", "0"], ["1", "1"]]}


def test_hnf_identity(cli_runner):
    r = cli_runner.invoke(
        [
            "hnf",
            "--field",
            data("field_gauss.json"),
            "--input",
            data("pm_gauss_identity.json"),
        ]
    )
    assert r.exit_code == 0, r.stderr
    output = H.json_output(r)
    unit = {"den": "1", "hnf": [["1", "0"], ["0", "1"]]}
    assert output["ideals"] == [unit, unit]
    assert output["det_ideal"] == unit


def test_hnf_singular(cli_runner):
    r = cli_runner.invoke(
        ["hnf", "--field", data("field_q.json"), "--input", data("pm_q_singular.json")]
    )
    assert r.exit_code == 1, r
    assert error_of(r)["error"] == "ZeroDeterminant"
    assert r.stdout == ""


def test_hnf_bad_ideal(cli_runner):
    r = cli_runner.invoke(
        [
            "hnf",
            "--field",
            data("field_gauss.json"),
            "--input",
            data("pm_gauss_bad_ideal.json"),
        ]
    )
    assert r.exit_code == 1, r
    error = error_of(r)
    assert error["error"] == "InvalidInput"
    assert "canonical" in error["detail"]


@pytest.mark.parametrize(
    "field_file,error",
    [
        ("field_not_monic.json", "NotMonic"),
        ("field_half_basis.json", "NotARing"),
    ],
)
def test_bad_field(cli_runner, field_file, error):
    r = cli_runner.invoke(
        ["hnf", "--field", data(field_file), "--input", data("pm_gauss_identity.json")]
    )
    assert r.exit_code == 1, r
    assert error_of(r)["error"] == error


def test_missing_files(cli_runner, tmp_path):
    r = cli_runner.invoke(
        ["hnf", "--field", tmp_path / "nope.json", "--input", data("pm_q.json")]
    )
    assert r.exit_code == 1, r
    assert error_of(r)["error"] == "InvalidInput"
    assert "--field" in error_of(r)["detail"]

    r = cli_runner.invoke(["hnf", "--input", data("pm_q.json")])
    assert r.exit_code == 1, r
    assert error_of(r)["error"] == "InvalidInput"


def test_malformed_input(cli_runner, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text('{"ideals": [], "entries": "nope"}')
    r = cli_runner.invoke(["hnf", "--field", data("field_q.json"), "--input", bad])
    assert r.exit_code == 1, r
    assert error_of(r)["error"] == "InvalidInput"

    bad.write_text("{not json")
    r = cli_runner.invoke(["hnf", "--field", data("field_q.json"), "--input", bad])
    assert r.exit_code == 1, r
    assert "Invalid JSON" in error_of(r)["detail"]


def test_bad_config(cli_runner):
    args = ["hnf", "--field", data("field_q.json"), "--input", data("pm_q.json")]
    r = cli_runner.invoke(args + ["--lll-delta", "1/5"])
    assert r.exit_code == 1, r
    assert error_of(r)["error"] == "InvalidConfig"

    r = cli_runner.invoke(args + ["--precision-bits", "8"])
    assert r.exit_code == 1, r
    assert error_of(r)["error"] == "InvalidConfig"

    r = cli_runner.invoke(args + ["--lll-delta", "three quarters"])
    assert r.exit_code == 1, r
    assert error_of(r)["error"] == "InvalidInput"


def test_detideal(cli_runner):
    r = cli_runner.invoke(
        [
            "detideal",
            "--field",
            data("field_gauss.json"),
            "--input",
            data("pm_gauss_diag.json"),
        ]
    )
    assert r.exit_code == 0, r.stderr
    assert H.json_output(r) == {
        "det_ideal": {"den": "1", "hnf": [["2", "0"], ["1", "1"]]}
    }


def test_field(cli_runner):
    r = cli_runner.invoke(["field", "--field", data("field_gauss.json")])
    assert r.exit_code == 0, r.stderr
    output = H.json_output(r)
    assert output["degree"] == 2
    assert output["discriminant"] == "-4"
    assert output["signature"] == [0, 1]
    assert output["basis"] == [["1", "0"], ["0", "1"]]
    assert output["mult_table"][1][1] == ["-1", "0"]
    assert output["name"] == "gauss"


def test_normalize(cli_runner):
    r = cli_runner.invoke(
        [
            "normalize",
            "--field",
            data("field_q.json"),
            "--input",
            data("normalize_q.json"),
        ]
    )
    assert r.exit_code == 0, r.stderr
    assert H.json_output(r) == {
        "ideal": {"den": "1", "hnf": [["1"]]},
        "row": [{"coords": ["6"], "den": "1"}, {"coords": ["9"], "den": "1"}],
    }


def test_reduce(cli_runner):
    r = cli_runner.invoke(
        ["reduce", "--field", data("field_q.json"), "--input", data("reduce_q.json")]
    )
    assert r.exit_code == 0, r.stderr
    assert H.json_output(r) == {"coords": ["1"], "den": "1"}


@pytest.mark.parametrize(
    "op,expected",
    [
        ("add", {"den": "1", "hnf": [["2", "0"], ["1", "1"]]}),
        ("mul", {"den": "1", "hnf": [["2", "0"], ["0", "2"]]}),
        ("inv", {"den": "2", "hnf": [["2", "0"], ["1", "1"]]}),
        ("contains", {"contains": True}),
    ],
)
def test_idops(cli_runner, op, expected):
    r = cli_runner.invoke(
        [
            "idops",
            op,
            "--field",
            data("field_gauss.json"),
            "--input",
            data("idops_gauss.json"),
        ]
    )
    assert r.exit_code == 0, r.stderr
    assert H.json_output(r) == expected


def test_idops_crt(cli_runner):
    r = cli_runner.invoke(
        ["idops", "crt", "--field", data("field_q.json"), "--input", data("crt_q.json")]
    )
    assert r.exit_code == 0, r.stderr
    z = H.json_output(r)
    assert z["den"] == "1"
    assert int(z["coords"][0]) % 15 == 14


def test_idops_missing_operand(cli_runner):
    r = cli_runner.invoke(
        [
            "idops",
            "crt",
            "--field",
            data("field_gauss.json"),
            "--input",
            data("idops_gauss.json"),
        ]
    )
    assert r.exit_code == 1, r
    assert error_of(r)["error"] == "InvalidInput"
    assert "missing" in error_of(r)["detail"]


def test_idops_not_coprime(cli_runner, tmp_path):
    doc = H.load_data("okhnf/idops_gauss.json")
    doc["y"] = doc["w"] = {"coords": ["1", "0"], "den": "1"}
    path = tmp_path / "crt.json"
    path.write_text(json.dumps(doc))
    r = cli_runner.invoke(
        ["idops", "crt", "--field", data("field_gauss.json"), "--input", path]
    )
    assert r.exit_code == 1, r
    assert error_of(r)["error"] == "NotCoprime"


@pytest.mark.parametrize("json_style", ["compact", "extracompact", "pretty"])
def test_json_style(cli_runner, json_style):
    r = cli_runner.invoke(
        [
            "reduce",
            "--field",
            data("field_q.json"),
            "--input",
            data("reduce_q.json"),
            "--json-style",
            json_style,
        ]
    )
    assert r.exit_code == 0, r.stderr
    assert H.json_output(r) == {"coords": ["1"], "den": "1"}
    lines = r.stdout.strip().splitlines()
    if json_style == "pretty":
        assert len(lines) > 1
    else:
        assert len(lines) == 1
    if json_style == "extracompact":
        assert " " not in r.stdout.strip()


def test_out_file(cli_runner, tmp_path):
    out = tmp_path / "result.json"
    r = cli_runner.invoke(
        [
            "detideal",
            "--field",
            data("field_q.json"),
            "--input",
            data("pm_q.json"),
            "--out",
            out,
        ]
    )
    assert r.exit_code == 0, r.stderr
    assert r.stdout == ""
    assert json.loads(out.read_text()) == {"det_ideal": {"den": "1", "hnf": [["6"]]}}


@pytest.mark.slow
def test_selftest(cli_runner):
    r = cli_runner.invoke(["selftest", "--count", "1", "--seed", "7"])
    assert r.exit_code == 0, r.stdout + r.stderr
    assert "✔ pseudo-HNF" in r.stdout
    assert "✘" not in r.stdout
    assert "Worst size constant C:" in r.stdout


@pytest.mark.slow
def test_selftest_extra_field(cli_runner, tmp_path):
    field = tmp_path / "field.json"
    field.write_text(json.dumps({"poly": [-2, 0, 1], "name": "sqrt2"}))
    r = cli_runner.invoke(
        ["selftest", "--count", "1", "--field", field], catch_exceptions=False
    )
    assert r.exit_code == 0, r.stdout + r.stderr
    assert "sqrt2" not in r.stdout
