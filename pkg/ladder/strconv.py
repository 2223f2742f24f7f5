from fractions import Fraction
import re
from typing import Tuple, Union

from ladder.error import raisef, ValidationError
from ladder.exactla import Field, Scalar

_MOD = re.compile(r"^\s*(-?\d+)\s+mod\s+(\d+)\s*$")
_RATIONAL = re.compile(r"^\s*-?\d+(\s*/\s*\d+)?\s*$")

CONVENTIONS = ("subgeq", "subleq")
LOCI = ("rel", "fil")


def parse_field(string: str) -> Field:
    """
    Parse "q" for the rationals or "fp:<p>" for a prime field.
    """
    s = string.strip().lower()
    if s in {"q", "qq"}:
        return Field.rationals()
    if s.startswith("fp:") and s[3:].isdigit():
        return Field.prime(int(s[3:]))
    raisef(ValidationError, "invalid field {!r}, expected q or fp:<p>", string)


def format_field(field: Field) -> str:
    if field.is_finite:
        return f"fp:{field.p}"
    return "q"


def parse_scalar(field: Field, value: Union[str, int]) -> Scalar:
    """
    Parse an exact scalar: an integer, a fraction such as "3/7", or a residue
    such as "2 mod 5" whose modulus must match the field.
    """
    if isinstance(value, bool) or not isinstance(value, (str, int)):
        raisef(ValidationError, "{!r} is not an exact scalar", value)
    if isinstance(value, int):
        return field(value)
    match = _MOD.match(value)
    if match:
        residue, modulus = int(match.group(1)), int(match.group(2))
        if modulus != field.p:
            raisef(ValidationError, "{!r} does not belong to {}", value, field)
        return field(residue)
    if _RATIONAL.match(value):
        try:
            return field(Fraction(value.replace(" ", "")))
        except ZeroDivisionError:
            raisef(ValidationError, "{!r} has a zero denominator", value)
    raisef(ValidationError, "{!r} is not an exact scalar", value)


def format_scalar(field: Field, x: Scalar) -> str:
    if field.is_finite:
        return f"{int(x) % field.p} mod {field.p}"
    return str(Fraction(x))


def parse_convention(string: str) -> str:
    if string not in CONVENTIONS:
        raisef(
            ValidationError,
            "invalid convention {!r}, expected subgeq or subleq",
            string,
        )
    return string


def parse_locus(string: str) -> str:
    if string not in LOCI:
        raisef(ValidationError, "invalid locus {!r}, expected rel or fil", string)
    return string


def parse_vertex(string: str) -> Tuple[int, str]:
    """
    Parse a ladder vertex written "j,v": a level and a base vertex name.
    """
    level, sep, base = string.partition(",")
    if not sep or not level.strip().isdigit() or not base.strip():
        raisef(ValidationError, "invalid vertex {!r}, expected 'j,v'", string)
    return int(level), base.strip()
