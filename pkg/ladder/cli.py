"""
The ladder command line.

    ladder [-v] <command> [flags] < documents.json

Every command reads zero or more JSON documents from stdin (a single document
or an array) and writes one JSON document to stdout. Failures write a one-line
JSON diagnostic {"error": <id>, "message": <text>} to stderr and exit with
2 (validation), 3 (resource cap) or 4 (inconclusive).
"""

import json
import logging
import sys
from typing import Any, Callable, Dict, IO, List, Optional, Sequence, Tuple

from flag import ErrorHandling, FlagSet, HelpError, Pointer, Ptr, Value
import flag

from ladder.error import Error, InconclusiveError, raisef, ValidationError
from ladder.exactla import Field, QQ
from ladder.filtr import (
    classify_point_type,
    gr,
    gr_max,
    hn_filtration,
    is_polystable,
    jh_filtration,
    s_equivalent,
    sjh_equivalent,
)
from ladder.git import hilbert_mumford_witness, ops_limit, OnePS
from ladder.quiver import build_ladder, LadderQuiver, Quiver
from ladder.rep import (
    betas_injective,
    check_relations,
    indecomposable_projective,
    is_torsion,
    kappa,
    Representation,
    tf_resolution,
    torsion_part,
)
import ladder.document as document
from ladder.semiinv import (
    certificate_search,
    DEFAULT_ENTRY_DEGREE,
    DEFAULT_N_MAX,
    DEFAULT_TRIALS,
    Presentation,
    projectively_equal,
    theta_coordinates,
    weight_check,
)
from ladder.stability import (
    Convention,
    decide,
    DEFAULT_SUBREP_CAP,
    is_rank_zero_on_torsion,
    slope,
    StabilityParams,
)
from ladder.strconv import format_field, format_scalar, parse_field, parse_locus
from ladder.sweep import all_points, s_equivalence_classes, verdict_table

logger = logging.getLogger(__name__)

Documents = List[Dict[str, Any]]


class FieldValue(Value[Field]):
    """
    A field flag: q or fp:<p>.
    """

    def set_(self, string: str) -> None:
        try:
            self.value.set_(parse_field(string))
        except ValidationError as exc:
            raise ValueError(str(exc)) from exc

    def zero_str(self) -> str:
        return "q"

    def string(self, value: Field) -> str:
        return format_field(value)


class ConventionValue(Value[str]):
    """
    subgeq, subleq or both; empty means the stability document's own.
    """

    def set_(self, string: str) -> None:
        if string not in {"subgeq", "subleq", "both"}:
            raise ValueError(f"expected subgeq, subleq or both, got {string!r}")
        self.value.set_(string)

    def zero_str(self) -> str:
        return ""


class LocusValue(Value[str]):
    def set_(self, string: str) -> None:
        try:
            self.value.set_(parse_locus(string))
        except ValidationError as exc:
            raise ValueError(str(exc)) from exc

    def zero_str(self) -> str:
        return "fil"


class Options:
    """
    The flags every command shares.
    """

    def __init__(self, fs: FlagSet) -> None:
        self.field: Pointer[Field] = Ptr()
        self.convention: Pointer[str] = Ptr()
        fs.var(FieldValue(QQ, self.field), "field", "the field: q or fp:<p>")
        fs.var(
            ConventionValue("", self.convention),
            "convention",
            "subgeq, subleq or both (default: the stability document's)",
        )
        self.cap = fs.int_("cap", DEFAULT_SUBREP_CAP, "enumeration cap")
        self.seed = fs.int_("seed", 0, "random seed")
        self.jobs = fs.int_("jobs", 1, "worker processes for sweeps")
        # the field of the input representations, when there are any
        self.input_field: Optional[Field] = None

    def conventions(self, p: StabilityParams) -> List[Convention]:
        chosen = self.convention.deref()
        if chosen == "both":
            return list(Convention)
        if chosen:
            return [Convention(chosen)]
        return [p.convention]

    def settings(self) -> Dict[str, Any]:
        return {
            "field": format_field(self.input_field or self.field.deref()),
            "convention": self.convention.deref() or "document",
            "cap": self.cap.deref(),
            "seed": self.seed.deref(),
            "jobs": self.jobs.deref(),
        }


class Inputs:
    """
    The decoded stdin documents, grouped by kind in order of appearance.
    """

    def __init__(self, docs: Documents, opts: Options) -> None:
        self.by_kind: Dict[str, List[Any]] = {}
        for doc in docs:
            value = document.decode(doc)
            self.by_kind.setdefault(doc["kind"], []).append(value)
            if isinstance(value, Representation) and opts.input_field is None:
                opts.input_field = value.field

    def all(self, kind: str) -> List[Any]:
        return self.by_kind.get(kind, [])

    def one(self, kind: str) -> Any:
        values = self.all(kind)
        if len(values) != 1:
            raisef(
                ValidationError,
                "expected one {} document on stdin, got {}",
                kind,
                len(values),
            )
        return values[0]

    def optional(self, kind: str) -> Any:
        values = self.all(kind)
        if len(values) > 1:
            raisef(ValidationError, "expected at most one {} document on stdin", kind)
        return values[0] if values else None

    def stability(self, m: Optional[Representation] = None) -> StabilityParams:
        p = self.one("stability")
        return p if m is None else p.for_dims(m.dims)


def _dims_report(m: Representation) -> Dict[str, Any]:
    return {"dims": list(m.dims), "vertex_order": [str(v) for v in m.ladder.vertices]}


def _rep(m: Representation) -> Any:
    return document.encode_representation(m)


def cmd_ladder(fs: FlagSet, opts: Options, args: List[str], stdin: IO[str]) -> Any:
    levels = fs.int_("levels", 2, "number of levels l")
    base = fs.string(
        "base", "trivial", "base quiver: trivial, linear:<n>, square or stdin"
    )
    fs.parse(args)
    name = base.deref()
    if name == "trivial":
        q = Quiver.trivial()
    elif name == "square":
        q = Quiver.square()
    elif name.startswith("linear:") and name[7:].isdigit():
        q = Quiver.linear(int(name[7:]))
    elif name == "stdin":
        q = Inputs(document.load(stdin), opts).one("quiver")
    else:
        raisef(ValidationError, "unknown base quiver {!r}", name)
    return document.encode(build_ladder(q, levels.deref()))


def cmd_check(fs: FlagSet, opts: Options, args: List[str], stdin: IO[str]) -> Any:
    fs.parse(args)
    m = Inputs(document.load(stdin), opts).one("representation")
    relations = check_relations(m)
    return {
        **_dims_report(m),
        "relations": relations,
        "betas_injective": betas_injective(m),
        "filtered": relations and betas_injective(m),
        "torsion": is_torsion(m),
    }


def cmd_projective(fs: FlagSet, opts: Options, args: List[str], stdin: IO[str]) -> Any:
    vertex = fs.string("vertex", "", "the vertex w as j,v")
    fs.parse(args)
    ladder: LadderQuiver = Inputs(document.load(stdin), opts).one("ladder")
    p = indecomposable_projective(ladder, vertex.deref(), opts.field.deref())
    return document.encode(p)


def cmd_torsion(fs: FlagSet, opts: Options, args: List[str], stdin: IO[str]) -> Any:
    fs.parse(args)
    b = Inputs(document.load(stdin), opts).one("representation")
    t = torsion_part(b)
    return {
        **_dims_report(b),
        "is_torsion": is_torsion(b),
        "torsion": _rep(t.representation()),
        "quotient": _rep(t.quotient()),
    }


def cmd_kappa(fs: FlagSet, opts: Options, args: List[str], stdin: IO[str]) -> Any:
    fs.parse(args)
    b = Inputs(document.load(stdin), opts).one("representation")
    return document.encode(kappa(b))


def cmd_resolve(fs: FlagSet, opts: Options, args: List[str], stdin: IO[str]) -> Any:
    fs.parse(args)
    b = Inputs(document.load(stdin), opts).one("representation")
    r = tf_resolution(b)
    return {
        "n": _rep(r.n),
        "nprime": _rep(r.nprime),
        "f": [document.encode_matrix(c) for c in r.f.comps],
    }


def _verdict(
    m: Representation, p: StabilityParams, strict: bool, cap: int
) -> Dict[str, Any]:
    v = decide(m, p, strict_only=strict, cap=cap)
    return {
        "convention": p.convention.value,
        "semistable": v.semistable,
        "stable": v.stable,
        "witness": None if v.witness is None else list(v.witness.dims),
        "oracle_backed": v.oracle_backed,
        "primes": list(v.primes),
    }


def cmd_stability(fs: FlagSet, opts: Options, args: List[str], stdin: IO[str]) -> Any:
    strict = fs.bool_("strict", False, "compare against strict subobjects only")
    locus: Pointer[str] = Ptr()
    fs.var(
        LocusValue("rel", locus),
        "locus",
        "locus swept without a representation: rel or fil",
    )
    fs.parse(args)
    inputs = Inputs(document.load(stdin), opts)
    m = inputs.optional("representation")
    if m is not None:
        p = inputs.stability(m)
        return {
            **_dims_report(m),
            "verdicts": [
                _verdict(m, p.with_convention(c), strict.deref(), opts.cap.deref())
                for c in opts.conventions(p)
            ],
        }
    p = inputs.stability()
    points = list(
        all_points(
            p.ladder, opts.field.deref(), p.d, locus.deref(), cap=opts.cap.deref()
        )
    )
    rows = verdict_table(
        points,
        p,
        conventions=opts.conventions(p),
        strict_only=strict.deref(),
        cap=opts.cap.deref(),
    )
    return {
        "dims": list(p.d),
        "vertex_order": [str(v) for v in p.ladder.vertices],
        "locus": locus.deref(),
        "rows": [
            {
                "convention": r.convention.value,
                "semistable": r.semistable,
                "stable": r.stable,
                "total": r.total,
                "injective": r.injective,
                "matches_injectivity": r.matches_injectivity,
            }
            for r in rows
        ],
    }


def _rep_and_params(
    stdin: IO[str], opts: Options
) -> Tuple[Representation, StabilityParams]:
    inputs = Inputs(document.load(stdin), opts)
    m = inputs.one("representation")
    return m, inputs.stability(m)


def cmd_hn(fs: FlagSet, opts: Options, args: List[str], stdin: IO[str]) -> Any:
    fs.parse(args)
    m, p = _rep_and_params(stdin, opts)
    f = hn_filtration(m, p, cap=opts.cap.deref())
    return {
        **_dims_report(m),
        "steps": [list(s.dims) for s in f.steps],
        "quotient_dims": [list(d) for d in f.quotient_dims()],
        "slopes": [str(slope(d, p)) for d in f.quotient_dims()],
    }


def cmd_jh(fs: FlagSet, opts: Options, args: List[str], stdin: IO[str]) -> Any:
    category = fs.string("category", "fil", "fil (strict) or rel")
    fs.parse(args)
    m, p = _rep_and_params(stdin, opts)
    f = jh_filtration(m, p, category=category.deref(), cap=opts.cap.deref())
    if f is None:
        return {**_dims_report(m), "exists": False}
    return {
        **_dims_report(m),
        "exists": True,
        "quotient_dims": [list(d) for d in f.quotient_dims()],
        "graded": _rep(gr(f, category.deref())),
    }


def cmd_grmax(fs: FlagSet, opts: Options, args: List[str], stdin: IO[str]) -> Any:
    fs.parse(args)
    inputs = Inputs(document.load(stdin), opts)
    m = inputs.one("representation")
    p = inputs.stability(m) if inputs.all("stability") else None
    return document.encode(gr_max(m, p, cap=opts.cap.deref()))


def cmd_sequiv(fs: FlagSet, opts: Options, args: List[str], stdin: IO[str]) -> Any:
    fs.parse(args)
    inputs = Inputs(document.load(stdin), opts)
    reps = inputs.all("representation")
    if len(reps) != 2:
        raisef(
            ValidationError,
            "expected two representation documents, got {}",
            len(reps),
        )
    m, n = reps
    p = inputs.stability(m) if inputs.all("stability") else None
    result: Dict[str, Any] = {
        "s_equivalent": s_equivalent(m, n, p, cap=opts.cap.deref())
    }
    if p is not None:
        result["sjh_equivalent"] = sjh_equivalent(m, n, p, cap=opts.cap.deref())
    return result


def cmd_pointtype(fs: FlagSet, opts: Options, args: List[str], stdin: IO[str]) -> Any:
    fs.parse(args)
    m, p = _rep_and_params(stdin, opts)
    return {
        **_dims_report(m),
        "type": classify_point_type(m, p, cap=opts.cap.deref()).value,
        "polystable": is_polystable(m, p, cap=opts.cap.deref()),
        "rank_zero_on_torsion": is_rank_zero_on_torsion(p.rank),
    }


def _weights(string: str) -> List[List[int]]:
    try:
        value = json.loads(string)
    except json.JSONDecodeError as exc:
        raisef(ValidationError, "-weights is not JSON: {}", exc)
    if not isinstance(value, list) or not all(
        isinstance(w, list)
        and all(isinstance(x, int) and not isinstance(x, bool) for x in w)
        for w in value
    ):
        raisef(
            ValidationError, "-weights must be a list of integer lists, one per vertex"
        )
    return value


def cmd_limit(fs: FlagSet, opts: Options, args: List[str], stdin: IO[str]) -> Any:
    weights = fs.string("weights", "", "JSON list of weight lists, one per vertex")
    locus: Pointer[str] = Ptr()
    fs.var(LocusValue("fil", locus), "locus", "rel or fil")
    fs.parse(args)
    m = Inputs(document.load(stdin), opts).one("representation")
    ops = OnePS.standard(m.field, _weights(weights.deref()))
    limit = ops_limit(m, ops, locus.deref())
    return {
        "exists": limit.exists,
        "limit": None if limit.limit is None else _rep(limit.limit),
    }


def cmd_hm(fs: FlagSet, opts: Options, args: List[str], stdin: IO[str]) -> Any:
    locus: Pointer[str] = Ptr()
    fs.var(LocusValue("fil", locus), "locus", "rel or fil")
    fs.parse(args)
    m, p = _rep_and_params(stdin, opts)
    results = []
    for c in opts.conventions(p):
        witness = hilbert_mumford_witness(
            m, p.with_convention(c), locus.deref(), cap=opts.cap.deref()
        )
        results.append(
            {
                "convention": c.value,
                "semistable": witness is None,
                "witness": None
                if witness is None
                else {
                    "weights": [list(w) for w in witness.weights],
                    "basis": [document.encode_matrix(b) for b in witness.basis],
                },
            }
        )
    return {**_dims_report(m), "locus": locus.deref(), "verdicts": results}


def cmd_theta(fs: FlagSet, opts: Options, args: List[str], stdin: IO[str]) -> Any:
    fs.parse(args)
    inputs = Inputs(document.load(stdin), opts)
    reps = inputs.all("representation")
    gammas: List[Presentation] = inputs.all("presentation")
    if not reps:
        raisef(ValidationError, "expected at least one representation document")
    values = [theta_coordinates(m, gammas) for m in reps]
    return {
        "values": [
            [format_scalar(m.field, x) for x in row] for m, row in zip(reps, values)
        ],
        "projectively_equal": [projectively_equal(values[0], row) for row in values],
    }


def cmd_certify(fs: FlagSet, opts: Options, args: List[str], stdin: IO[str]) -> Any:
    n_max = fs.int_("n-max", DEFAULT_N_MAX, "largest weight multiple tried")
    degree = fs.int_("degree", DEFAULT_ENTRY_DEGREE, "largest path length in an entry")
    trials = fs.int_("trials", DEFAULT_TRIALS, "random candidates per multiple")
    fs.parse(args)
    m, p = _rep_and_params(stdin, opts)
    results = []
    for c in opts.conventions(p):
        q = p.with_convention(c)
        cert = certificate_search(
            m,
            q,
            n_max=n_max.deref(),
            entry_degree=degree.deref(),
            trials=trials.deref(),
            seed=opts.seed.deref(),
        )
        if cert is None:
            raisef(
                InconclusiveError,
                "no certificate found under {} up to n = {}",
                c.value,
                n_max.deref(),
            )
        results.append(
            {
                "convention": c.value,
                "n": cert.n,
                "value": format_scalar(m.field, cert.value),
                "weight_ok": weight_check(cert.presentation, q, cert.n),
                "presentation": document.encode(cert.presentation),
            }
        )
    return {**_dims_report(m), "certificates": results}


def cmd_enumerate(fs: FlagSet, opts: Options, args: List[str], stdin: IO[str]) -> Any:
    fs.parse(args)
    p = Inputs(document.load(stdin), opts).stability()
    field = opts.field.deref()
    points = list(all_points(p.ladder, field, p.d, "fil", cap=opts.cap.deref()))
    conventions = opts.conventions(p)
    results = []
    for c in conventions:
        classes = s_equivalence_classes(
            points, p.with_convention(c), jobs=opts.jobs.deref(), cap=opts.cap.deref()
        )
        results.append(
            {
                "convention": c.value,
                "classes": [
                    {"size": k.size, "graded": _rep(k.representative)}
                    for k in classes
                ],
                "count": len(classes),
            }
        )
    return {
        "dims": list(p.d),
        "vertex_order": [str(v) for v in p.ladder.vertices],
        "locus": "fil",
        "points": len(points),
        "s_classes": results,
    }


Command = Callable[[FlagSet, Options, List[str], IO[str]], Any]

COMMANDS: Dict[str, Tuple[Command, str]] = {
    "ladder": (cmd_ladder, "build a ladder quiver"),
    "check": (cmd_check, "check relations and filteredness"),
    "projective": (cmd_projective, "the indecomposable projective at a vertex"),
    "torsion": (cmd_torsion, "the torsion part and its quotient"),
    "kappa": (cmd_kappa, "the filtered quotient B / B_tor"),
    "resolve": (cmd_resolve, "the resolution by filtered representations"),
    "stability": (cmd_stability, "semistability verdicts or a sweep table"),
    "hn": (cmd_hn, "the Harder-Narasimhan filtration"),
    "jh": (cmd_jh, "a Jordan-Holder filtration"),
    "grmax": (cmd_grmax, "the graded object of the maximal flag"),
    "sequiv": (cmd_sequiv, "S-equivalence of two representations"),
    "pointtype": (cmd_pointtype, "Type-1 or Type-2 moduli point"),
    "limit": (cmd_limit, "the limit of a one-parameter subgroup"),
    "hm": (cmd_hm, "the Hilbert-Mumford criterion"),
    "theta": (cmd_theta, "evaluate determinantal semi-invariants"),
    "certify": (cmd_certify, "search for a semistability certificate"),
    "enumerate": (cmd_enumerate, "S-equivalence classes over a finite field"),
}

# commands whose results are wrapped in a report document
_RAW = {"ladder", "projective", "kappa", "grmax"}


def _usage(fs: FlagSet) -> Callable[[], None]:
    def usage() -> None:
        print(
            f"Usage: {fs.name} [-v] <command> [flags] < documents.json",
            file=fs.output,
        )
        print("Commands:", file=fs.output)
        for name, (_, summary) in COMMANDS.items():
            print(f"  {name:<11} {summary}", file=fs.output)
        fs.print_defaults()

    return usage


def _fail(stderr: IO[str], error_id: str, message: str) -> None:
    line = json.dumps({"error": error_id, "message": message}, sort_keys=True)
    print(line, file=stderr)


def run(
    argv: Sequence[str],
    stdin: IO[str] = sys.stdin,
    stdout: IO[str] = sys.stdout,
    stderr: IO[str] = sys.stderr,
) -> int:
    top = FlagSet("ladder", ErrorHandling.RAISE)
    top.output = stderr
    top.usage = _usage(top)
    verbose = top.bool_("v", False, "log progress to stderr")
    handler: Optional[logging.Handler] = None
    package_logger = logging.getLogger("ladder")
    try:
        top.parse(list(argv))
        if not top.args:
            top.usage()
            _fail(stderr, "usage", "no command given")
            return 2
        name = top.args[0]
        if name not in COMMANDS:
            top.usage()
            _fail(stderr, "usage", f"unknown command {name!r}")
            return 2
        if verbose.deref():
            handler = logging.StreamHandler(stderr)
            package_logger.addHandler(handler)
            package_logger.setLevel(logging.DEBUG)
        command, _ = COMMANDS[name]
        fs = FlagSet(f"ladder {name}", ErrorHandling.RAISE)
        fs.output = stderr
        opts = Options(fs)
        result = command(fs, opts, top.args[1:], stdin)
        if name not in _RAW:
            result = document.report(name, opts.settings(), result)
        document.dump(result, stdout)
        return 0
    except HelpError:
        return 0
    except flag.Error as exc:
        _fail(stderr, "usage", str(exc))
        return 2
    except Error as exc:
        _fail(stderr, exc.error_id, str(exc))
        return exc.exit_code
    finally:
        if handler is not None:
            package_logger.removeHandler(handler)
            package_logger.setLevel(logging.NOTSET)


def main() -> None:
    sys.exit(run(sys.argv[1:]))
