"""
JSON documents: the envelope {"kind", "version", "payload"} and the payload
codec of every domain value the command line exchanges.

Scalars are exact strings ("3/7" over Q, "2 mod 5" over F_5), dimension and
degree vectors follow the canonical vertex order, and every ladder payload
echoes that order. The shape of every document and payload, unknown fields
included, is checked against the bundled JSON Schema; the decoders then check
what a schema cannot express, such as matrix shapes against the dimensions.
"""

from fractions import Fraction
from functools import lru_cache
from importlib import resources
import json
from typing import Any, Dict, IO, List, Mapping, Optional, Sequence, Union

import jsonschema

from ladder.error import errorf, raisef, ValidationError
from ladder.exactla import Field, Matrix
from ladder.quiver import (
    Arrow,
    LadderQuiver,
    NormalPath,
    path_basis,
    PathElement,
    Quiver,
    Vertex,
)
from ladder.rep import Representation
from ladder.semiinv import Presentation
from ladder.stability import Convention, DegreeVector, RankWeights, StabilityParams
from ladder.strconv import (
    format_field,
    format_scalar,
    parse_convention,
    parse_field,
    parse_scalar,
)

VERSION = "1.0.0"
KINDS = ("quiver", "ladder", "representation", "stability", "presentation", "report")
SCHEMA = f"document-{VERSION}.json"

Json = Any
Document = Dict[str, Json]


@lru_cache(maxsize=None)
def schema() -> Json:
    """
    The JSON Schema of a document.
    """
    return json.loads(
        resources.files("ladder").joinpath("schemas", SCHEMA).read_text("utf-8")
    )


@lru_cache(maxsize=None)
def _validator(definition: Optional[str]) -> jsonschema.Draft202012Validator:
    root = schema()
    if definition is not None:
        root = {
            "$schema": root["$schema"],
            "$defs": root["$defs"],
            "$ref": f"#/$defs/{definition}",
        }
    return jsonschema.Draft202012Validator(root)


def validate(instance: Json, definition: Optional[str] = None) -> None:
    """
    Check a whole document, or a payload against one of the schema
    definitions, raising a ValidationError that names the offending location.
    """
    what = definition or "document"
    try:
        _validator(definition).validate(instance)
    except jsonschema.ValidationError as exc:
        where = "".join(f"[{p!r}]" for p in exc.absolute_path)
        raise errorf(ValidationError, "{}{}: {}", what, where, exc.message) from exc


def envelope(kind: str, payload: Json) -> Document:
    if kind not in KINDS:
        raisef(ValidationError, "unknown document kind {!r}", kind)
    return {"kind": kind, "version": VERSION, "payload": payload}


def open_envelope(doc: Json, kind: Optional[str] = None) -> Json:
    """
    The payload of a document, checking it against the schema and its kind
    against the expected one.
    """
    validate(doc)
    if kind is not None and doc["kind"] != kind:
        raisef(ValidationError, "expected a {} document, got {}", kind, doc["kind"])
    return doc["payload"]


def encode_quiver(q: Quiver) -> Json:
    return {
        "vertices": list(q.vertices),
        "arrows": [
            {"name": a.name, "source": a.source, "target": a.target} for a in q.arrows
        ],
    }


def decode_quiver(payload: Json) -> Quiver:
    validate(payload, "quiver")
    arrows = [Arrow(a["name"], a["source"], a["target"]) for a in payload["arrows"]]
    return Quiver(tuple(payload["vertices"]), tuple(arrows))


def encode_ladder(ladder: LadderQuiver) -> Json:
    return {
        "base": encode_quiver(ladder.base),
        "levels": ladder.levels,
        "vertex_order": [str(v) for v in ladder.vertices],
    }


def decode_ladder(payload: Json) -> LadderQuiver:
    validate(payload, "ladder")
    ladder = LadderQuiver(decode_quiver(payload["base"]), payload["levels"])
    order = payload.get("vertex_order")
    if order is not None and order != [str(v) for v in ladder.vertices]:
        raisef(
            ValidationError,
            "vertex_order does not match the canonical order of the ladder",
        )
    return ladder


def encode_matrix(m: Matrix) -> Json:
    return [[format_scalar(m.field, x) for x in row] for row in m.entries]


def decode_matrix(field: Field, value: Json, rows: int, cols: int, what: str) -> Matrix:
    validate(value, "matrix")
    if len(value) != rows:
        raisef(ValidationError, "{} needs {} rows", what, rows)
    if any(len(row) != cols for row in value):
        raisef(ValidationError, "{} needs {} columns", what, cols)
    data = tuple(tuple(parse_scalar(field, x) for x in row) for row in value)
    return Matrix(field, rows, cols, data)


def encode_representation(m: Representation) -> Json:
    return {
        "ladder": encode_ladder(m.ladder),
        "field": format_field(m.field),
        "dims": list(m.dims),
        "maps": {a.name: encode_matrix(mat) for a, mat in zip(m.ladder.arrows, m.mats)},
    }


def decode_representation(payload: Json) -> Representation:
    """
    Missing arrow matrices are zero.
    """
    validate(payload, "representation")
    ladder = decode_ladder(payload["ladder"])
    field = parse_field(payload["field"])
    dims = list(payload["dims"])
    if len(dims) != len(ladder.vertices):
        raisef(ValidationError, "dims needs {} entries", len(ladder.vertices))
    decoded: Dict[str, Matrix] = {}
    for name, value in payload.get("maps", {}).items():
        a = ladder.arrow(name)
        rows, cols = dims[ladder.index(a.target)], dims[ladder.index(a.source)]
        decoded[name] = decode_matrix(field, value, rows, cols, name)
    return Representation.build(ladder, field, dims, decoded)


def encode_stability(p: StabilityParams) -> Json:
    return {
        "ladder": encode_ladder(p.ladder),
        "degree": list(p.degree.values),
        "rank": list(p.rank.values),
        "d": list(p.d),
        "convention": p.convention.value,
    }


def decode_stability(
    payload: Json, d: Optional[Sequence[int]] = None
) -> StabilityParams:
    """
    Stability parameters; rank defaults to r = 1 and d to the given dimension
    vector, convention to subgeq.
    """
    validate(payload, "stability")
    ladder = decode_ladder(payload["ladder"])
    degree = DegreeVector.of(ladder, payload["degree"])
    rank = (
        RankWeights.of(ladder, payload["rank"])
        if "rank" in payload
        else RankWeights.dim(ladder)
    )
    if "d" in payload:
        d = list(payload["d"])
    elif d is None:
        d = [0] * len(ladder.vertices)
    convention = Convention(parse_convention(payload.get("convention", "subgeq")))
    return StabilityParams(degree, rank, tuple(d), convention)


def _encode_element(e: PathElement) -> Json:
    return [{"path": list(path.qpath), "coefficient": str(c)} for path, c in e.terms]


def _decode_element(
    ladder: LadderQuiver, value: Json, source: Vertex, target: Vertex
) -> PathElement:
    allowed = {p.qpath for p in path_basis(ladder, source, target)}
    e = PathElement.zero(source, target)
    for term in value:
        qpath = tuple(term["path"])
        if qpath not in allowed:
            raisef(ValidationError, "no path {} from {} to {}", qpath, source, target)
        try:
            c = Fraction(term["coefficient"])
        except ZeroDivisionError:
            raisef(ValidationError, "invalid coefficient {!r}", term["coefficient"])
        e = e + PathElement.of_path(NormalPath(source, target, qpath), c)
    return e


def encode_presentation(pres: Presentation) -> Json:
    return {
        "ladder": encode_ladder(pres.ladder),
        "u0": list(pres.u0),
        "u1": list(pres.u1),
        "gamma": [[_encode_element(e) for e in row] for row in pres.gamma],
    }


def decode_presentation(payload: Json) -> Presentation:
    """
    Entry (r, c) of gamma lists the terms of a path element from the c-th
    generator of P0 to the r-th generator of P1, each term naming the base
    arrows its path walks at the top level.
    """
    validate(payload, "presentation")
    ladder = decode_ladder(payload["ladder"])
    skeleton = Presentation.of(ladder, payload["u0"], payload["u1"])
    rows, cols = skeleton.row_vertices, skeleton.col_vertices
    gamma = payload["gamma"]
    if len(gamma) != len(rows):
        raisef(ValidationError, "gamma needs {} rows", len(rows))
    decoded = []
    for r, row in enumerate(gamma):
        if len(row) != len(cols):
            raisef(ValidationError, "gamma needs {} columns", len(cols))
        decoded.append(
            tuple(
                _decode_element(ladder, x, cols[c], rows[r]) for c, x in enumerate(row)
            )
        )
    return Presentation(ladder, skeleton.u0, skeleton.u1, tuple(decoded))


_ENCODERS = (
    (Quiver, "quiver", encode_quiver),
    (LadderQuiver, "ladder", encode_ladder),
    (Representation, "representation", encode_representation),
    (StabilityParams, "stability", encode_stability),
    (Presentation, "presentation", encode_presentation),
)

_DECODERS = {
    "quiver": decode_quiver,
    "ladder": decode_ladder,
    "representation": decode_representation,
    "stability": decode_stability,
    "presentation": decode_presentation,
    "report": lambda payload: payload,
}


def encode(value: Any) -> Document:
    for cls, kind, encoder in _ENCODERS:
        if isinstance(value, cls):
            return envelope(kind, encoder(value))
    raisef(ValidationError, "{} has no document form", type(value).__name__)


def decode(doc: Json, kind: Optional[str] = None) -> Any:
    payload = open_envelope(doc, kind)
    return _DECODERS[doc["kind"]](payload)


def report(command: str, settings: Mapping[str, Json], result: Json) -> Document:
    """
    A report document: the command, every setting that shaped the result
    (field, convention, caps, seed) and the result itself.
    """
    return envelope(
        "report",
        {"command": command, "settings": dict(settings), "result": result},
    )


def dumps(doc: Union[Document, List[Document]]) -> str:
    return json.dumps(doc, sort_keys=True, indent=2, ensure_ascii=False)


def dump(doc: Union[Document, List[Document]], fp: IO[str]) -> None:
    fp.write(dumps(doc))
    fp.write("\n")


def loads(text: str) -> List[Document]:
    """
    Parse a single document or an array of documents.
    """
    try:
        value = json.loads(text)
    except json.JSONDecodeError as exc:
        raisef(ValidationError, "invalid JSON: {}", exc)
    if isinstance(value, list):
        return value
    return [value]


def load(fp: IO[str]) -> List[Document]:
    return loads(fp.read())
