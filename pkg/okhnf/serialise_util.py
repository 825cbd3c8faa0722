"""
JSON documents for fields, elements, ideals and pseudo-matrices.

Integers are read from JSON integers or decimal strings and always written
back as decimal strings. Rationals are integers or "num/den" strings.
Decoders validate the document shape with jsonschema and then the
mathematical invariants (canonical forms), raising InvalidInput either way.
"""

import logging
from fractions import Fraction

import jsonschema

from .exceptions import InvalidInput
from .ideal import FracIdeal
from .number_field import DEFAULT_PRECISION_BITS, Field, FieldElement
from .pseudo_matrix import PseudoMatrix

L = logging.getLogger("okhnf.serialise_util")


INTEGER_SCHEMA = {
    "oneOf": [
        {"type": "integer"},
        {"type": "string", "pattern": r"^-?[0-9]+$"},
    ]
}

RATIONAL_SCHEMA = {
    "oneOf": [
        {"type": "integer"},
        {"type": "string", "pattern": r"^-?[0-9]+(/[0-9]*[1-9][0-9]*)?$"},
    ]
}

FIELD_SCHEMA = {
    "type": "object",
    "required": ["poly"],
    "properties": {
        "poly": {"type": "array", "items": INTEGER_SCHEMA, "minItems": 2},
        "basis": {
            "type": "array",
            "items": {"type": "array", "items": RATIONAL_SCHEMA},
        },
        "precision_bits": {"type": "integer", "minimum": 32},
        "lll_delta": RATIONAL_SCHEMA,
        "name": {"type": "string"},
    },
}

ELEMENT_SCHEMA = {
    "type": "object",
    "required": ["coords"],
    "properties": {
        "coords": {"type": "array", "items": INTEGER_SCHEMA, "minItems": 1},
        "den": INTEGER_SCHEMA,
    },
    "additionalProperties": False,
}

IDEAL_SCHEMA = {
    "type": "object",
    "required": ["den", "hnf"],
    "properties": {
        "den": INTEGER_SCHEMA,
        "hnf": {
            "type": "array",
            "items": {"type": "array", "items": INTEGER_SCHEMA},
            "minItems": 1,
        },
    },
    "additionalProperties": False,
}

PSEUDO_MATRIX_SCHEMA = {
    "type": "object",
    "required": ["ideals", "entries"],
    "properties": {
        "n": {"type": "integer", "minimum": 1},
        "ideals": {"type": "array", "items": IDEAL_SCHEMA, "minItems": 1},
        "entries": {
            "type": "array",
            "items": {"type": "array", "items": ELEMENT_SCHEMA},
        },
    },
}

# inputs of the single-operation commands

NORMALIZE_SCHEMA = {
    "type": "object",
    "required": ["ideal", "row"],
    "properties": {
        "ideal": IDEAL_SCHEMA,
        "row": {"type": "array", "items": ELEMENT_SCHEMA, "minItems": 1},
    },
}

REDUCE_SCHEMA = {
    "type": "object",
    "required": ["element", "ideal"],
    "properties": {"element": ELEMENT_SCHEMA, "ideal": IDEAL_SCHEMA},
}

IDOPS_SCHEMA = {
    "type": "object",
    "required": ["a"],
    "properties": {
        "a": IDEAL_SCHEMA,
        "b": IDEAL_SCHEMA,
        "element": ELEMENT_SCHEMA,
        "y": ELEMENT_SCHEMA,
        "w": ELEMENT_SCHEMA,
    },
}


def validate(doc, schema, what):
    try:
        jsonschema.validate(instance=doc, schema=schema)
    except jsonschema.ValidationError as e:
        location = "/".join(str(p) for p in e.absolute_path)
        where = f" at {location}" if location else ""
        raise InvalidInput(f"Invalid {what}{where}: {e.message}")


def parse_int(value):
    return int(value)


def parse_rational(value):
    return Fraction(value) if isinstance(value, str) else Fraction(int(value))


def decode_field(doc, precision_bits=None, lll_delta=None):
    validate(doc, FIELD_SCHEMA, "field")
    poly = [parse_int(c) for c in doc["poly"]]
    basis = doc.get("basis")
    if basis is not None:
        basis = [[parse_rational(v) for v in row] for row in basis]
    if precision_bits is None:
        precision_bits = doc.get("precision_bits", DEFAULT_PRECISION_BITS)
    kwargs = {}
    if lll_delta is not None:
        kwargs["lll_delta"] = lll_delta
    elif "lll_delta" in doc:
        kwargs["lll_delta"] = parse_rational(doc["lll_delta"])
    return Field(
        poly,
        basis,
        precision_bits=precision_bits,
        name=doc.get("name"),
        **kwargs,
    )


def encode_field(field, full=False):
    result = {
        "poly": [str(c) for c in field.poly],
        "basis": [[str(v) for v in row] for row in field.basis],
        "precision_bits": field.precision_bits,
    }
    if field.name:
        result["name"] = field.name
    if full:
        result.update(
            {
                "degree": field.degree,
                "discriminant": str(field.discriminant),
                "signature": list(field.signature),
                "mult_table": [
                    [[str(c) for c in coords] for coords in row]
                    for row in field.mult_table
                ],
            }
        )
    return result


def decode_element(field, doc):
    validate(doc, ELEMENT_SCHEMA, "element")
    coords = [parse_int(c) for c in doc["coords"]]
    den = parse_int(doc.get("den", 1))
    if len(coords) != field.degree:
        raise InvalidInput(
            f"Element has {len(coords)} coordinates, field has degree {field.degree}"
        )
    if den <= 0:
        raise InvalidInput("Element denominator must be positive")
    result = FieldElement(field, coords, den)
    if result.den != den:
        raise InvalidInput("Element is not in lowest terms")
    return result


def decode_ideal(field, doc):
    validate(doc, IDEAL_SCHEMA, "ideal")
    return FracIdeal.from_hnf(
        field,
        parse_int(doc["den"]),
        [[parse_int(v) for v in row] for row in doc["hnf"]],
    )


def decode_pseudo_matrix(field, doc):
    validate(doc, PSEUDO_MATRIX_SCHEMA, "pseudo-matrix")
    ideals = [decode_ideal(field, d) for d in doc["ideals"]]
    n = len(ideals)
    if doc.get("n", n) != n:
        raise InvalidInput(f"Pseudo-matrix declares n={doc['n']} but has {n} ideals")
    entries = [[decode_element(field, e) for e in row] for row in doc["entries"]]
    return PseudoMatrix(field, entries, ideals)


def decode_normalize_input(field, doc):
    validate(doc, NORMALIZE_SCHEMA, "normalize input")
    return (
        decode_ideal(field, doc["ideal"]),
        [decode_element(field, e) for e in doc["row"]],
    )


def decode_reduce_input(field, doc):
    validate(doc, REDUCE_SCHEMA, "reduce input")
    return decode_element(field, doc["element"]), decode_ideal(field, doc["ideal"])


def decode_idops_input(field, doc, required=("a",)):
    validate(doc, IDOPS_SCHEMA, "ideal operation input")
    missing = [key for key in required if key not in doc]
    if missing:
        raise InvalidInput(f"Ideal operation input is missing {', '.join(missing)}")
    result = {}
    for key in ("a", "b"):
        if key in doc:
            result[key] = decode_ideal(field, doc[key])
    for key in ("element", "y", "w"):
        if key in doc:
            result[key] = decode_element(field, doc[key])
    return result
