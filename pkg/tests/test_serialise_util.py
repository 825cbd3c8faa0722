from fractions import Fraction

import pytest

from okhnf.exceptions import InvalidInput, NotMonic, ZeroIdeal
from okhnf.ideal import FracIdeal
from okhnf.output_util import to_json_data
from okhnf.serialise_util import (
    decode_element,
    decode_field,
    decode_idops_input,
    decode_ideal,
    decode_normalize_input,
    decode_pseudo_matrix,
    decode_reduce_input,
    encode_field,
    parse_rational,
)


H = pytest.helpers.helpers()


def test_decode_field():
    field = decode_field(H.load_data("okhnf/field_gauss.json"))
    assert field.degree == 2
    assert field.discriminant == -4
    assert field.name == "gauss"
    assert field.precision_bits == 128


def test_decode_field_overrides():
    doc = {"poly": [1, 0, 1], "precision_bits": 64, "lll_delta": "99/100"}
    field = decode_field(doc)
    assert field.precision_bits == 64
    assert field.lll_delta == Fraction(99, 100)
    field = decode_field(doc, precision_bits=256, lll_delta=Fraction(1, 2))
    assert field.precision_bits == 256
    assert field.lll_delta == Fraction(1, 2)


@pytest.mark.parametrize(
    "doc",
    [
        pytest.param({}, id="no-poly"),
        pytest.param({"poly": [1]}, id="short-poly"),
        pytest.param({"poly": ["x", 1]}, id="not-integer"),
        pytest.param({"poly": [1, 0, 1], "basis": [["1/0", 0], [0, 1]]}, id="zero-den"),
        pytest.param({"poly": [1, 0, 1], "precision_bits": 8}, id="low-precision"),
    ],
)
def test_decode_field_schema_errors(doc):
    with pytest.raises(InvalidInput):
        decode_field(doc)


def test_decode_field_not_monic():
    with pytest.raises(NotMonic):
        decode_field(H.load_data("okhnf/field_not_monic.json"))


def test_encode_field():
    field = H.field("gauss")
    doc = encode_field(field)
    assert doc == {
        "poly": ["1", "0", "1"],
        "basis": [["1", "0"], ["0", "1"]],
        "precision_bits": 128,
        "name": "gauss",
    }
    assert decode_field(doc).discriminant == field.discriminant
    full = encode_field(field, full=True)
    assert full["signature"] == [0, 1]
    assert full["discriminant"] == "-4"


def test_parse_rational():
    assert parse_rational("-3/6") == Fraction(-1, 2)
    assert parse_rational(7) == 7
    assert parse_rational("12") == 12


def test_decode_element():
    field = H.field("gauss")
    assert decode_element(field, {"coords": ["1", 1], "den": "2"}) == H.elt(
        field, 1, 1, den=2
    )
    assert decode_element(field, {"coords": [3, 4]}) == H.elt(field, 3, 4)


@pytest.mark.parametrize(
    "doc,message",
    [
        ({"coords": ["2", "4"], "den": "2"}, "lowest terms"),
        ({"coords": ["1"]}, "coordinates"),
        ({"coords": ["1", "0"], "den": "-1"}, "positive"),
        ({"coords": ["1", "0"], "den": "0"}, "positive"),
        ({"coords": ["1", "0"], "extra": 1}, "Invalid element"),
        ({"coords": ["1.5", "0"]}, "Invalid element"),
    ],
)
def test_decode_element_errors(doc, message):
    field = H.field("gauss")
    with pytest.raises(InvalidInput) as e:
        decode_element(field, doc)
    assert message in e.value.format_message()


def test_decode_ideal():
    field = H.field("gauss")
    ideal = decode_ideal(field, {"den": "1", "hnf": [["2", "0"], ["1", "1"]]})
    assert ideal == H.ideal(field, H.elt(field, 1, 1))
    assert to_json_data(ideal) == {"den": "1", "hnf": [["2", "0"], ["1", "1"]]}
    with pytest.raises(ZeroIdeal):
        decode_ideal(field, {"den": "1", "hnf": [["0", "0"], ["0", "0"]]})
    with pytest.raises(InvalidInput):
        decode_ideal(field, {"den": "1"})


def test_decode_pseudo_matrix():
    field = H.field("Q")
    pm = decode_pseudo_matrix(field, H.load_data("okhnf/pm_q.json"))
    assert pm.n == 2
    assert pm.entries == ((2, 1), (0, 3))
    assert pm.ideals == (FracIdeal.unit(field),) * 2
    assert to_json_data(pm)["entries"][0][0] == {"coords": ["2"], "den": "1"}


def test_decode_pseudo_matrix_errors():
    field = H.field("Q")
    doc = H.load_data("okhnf/pm_q.json")
    doc["n"] = 3
    with pytest.raises(InvalidInput):
        decode_pseudo_matrix(field, doc)
    doc = H.load_data("okhnf/pm_q.json")
    doc["entries"][1] = doc["entries"][1][:1]
    with pytest.raises(InvalidInput):
        decode_pseudo_matrix(field, doc)


def test_decode_operation_inputs():
    field = H.field("Q")
    ideal, row = decode_normalize_input(field, H.load_data("okhnf/normalize_q.json"))
    assert ideal == H.ideal(field, Fraction(3, 2))
    assert row == [4, 6]

    x, ideal = decode_reduce_input(field, H.load_data("okhnf/reduce_q.json"))
    assert x == 5
    assert ideal == H.ideal(field, 2)

    args = decode_idops_input(
        field, H.load_data("okhnf/crt_q.json"), required=("a", "b", "y", "w")
    )
    assert set(args) == {"a", "b", "y", "w"}
    assert args["b"] == H.ideal(field, 5)


def test_decode_idops_missing():
    field = H.field("Q")
    with pytest.raises(InvalidInput):
        decode_idops_input(field, {"a": {"den": "1", "hnf": [["3"]]}}, required=("a", "b"))
    with pytest.raises(InvalidInput):
        decode_idops_input(field, {"b": {"den": "1", "hnf": [["3"]]}})
