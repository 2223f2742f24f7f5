"""
Determinantal semi-invariants. A presentation gamma: P1 -> P0 between sums of
indecomposable projectives is stored as a matrix of path elements; applying
Hom(-, M) turns it into a square matrix whose determinant is theta_gamma(M).
"""

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from itertools import product
import logging
import random
from typing import Dict, List, Mapping, NamedTuple, Optional, Sequence, Tuple

from ladder.error import raisef, ShapeError, ValidationError
from ladder.exactla import (
    column_echelon,
    det,
    extend_basis,
    Field,
    Matrix,
    QQ,
    Scalar,
    sum_spaces,
)
from ladder.quiver import LadderQuiver, path_basis, PathElement, Vertex
from ladder.rep import (
    betas_injective,
    check_relations,
    cokernel_ambient,
    is_torsion,
    kernel,
    Morphism,
    projective_sum,
    ProjectiveLabel,
    Representation,
)
from ladder.stability import Convention, StabilityParams

logger = logging.getLogger(__name__)

DEFAULT_N_MAX = 2
DEFAULT_ENTRY_DEGREE = 1
DEFAULT_TRIALS = 2000
DEFAULT_EXHAUSTIVE_CAP = 20000


def _expand(ladder: LadderQuiver, mult: Sequence[int]) -> Tuple[Vertex, ...]:
    return tuple(v for v, k in zip(ladder.vertices, mult) for _ in range(k))


@dataclass(frozen=True)
class Presentation:
    """
    gamma: P1 -> P0 with P0 = sum U0[w] P'_w and P1 = sum U1[w] P'_w. Row r is
    a generator of P1 at vertex row_vertices[r], column c a generator of P0 at
    col_vertices[c]; entry (r, c) is a path element col_vertices[c] ->
    row_vertices[r].
    """

    ladder: LadderQuiver
    u0: Tuple[int, ...]
    u1: Tuple[int, ...]
    gamma: Tuple[Tuple[PathElement, ...], ...]

    def __post_init__(self) -> None:
        n = len(self.ladder.vertices)
        object.__setattr__(self, "u0", tuple(self.u0))
        object.__setattr__(self, "u1", tuple(self.u1))
        object.__setattr__(self, "gamma", tuple(tuple(row) for row in self.gamma))
        if len(self.u0) != n or len(self.u1) != n:
            raisef(ShapeError, "multiplicity vectors need {} entries", n)
        if any(k < 0 for k in self.u0 + self.u1):
            raisef(ValidationError, "negative multiplicity")
        rows, cols = self.row_vertices, self.col_vertices
        if len(self.gamma) != len(rows) or any(len(r) != len(cols) for r in self.gamma):
            raisef(
                ShapeError,
                "gamma must be a {}x{} matrix of path elements",
                len(rows),
                len(cols),
            )
        for r, row in enumerate(self.gamma):
            for c, e in enumerate(row):
                if (e.source, e.target) != (cols[c], rows[r]):
                    raisef(
                        ShapeError,
                        "entry ({}, {}) must run from {} to {}, got {} -> {}",
                        r,
                        c,
                        cols[c],
                        rows[r],
                        e.source,
                        e.target,
                    )

    @classmethod
    def empty(cls, ladder: LadderQuiver) -> "Presentation":
        zeros = (0,) * len(ladder.vertices)
        return cls(ladder, zeros, zeros, ())

    @classmethod
    def of(
        cls,
        ladder: LadderQuiver,
        u0: Sequence[int],
        u1: Sequence[int],
        entries: Optional[Mapping[Tuple[int, int], PathElement]] = None,
    ) -> "Presentation":
        """
        A presentation whose missing entries are zero.
        """
        rows, cols = _expand(ladder, u1), _expand(ladder, u0)
        entries = entries or {}
        return cls(
            ladder,
            tuple(u0),
            tuple(u1),
            tuple(
                tuple(
                    entries.get((r, c), PathElement.zero(cv, rv))
                    for c, cv in enumerate(cols)
                )
                for r, rv in enumerate(rows)
            ),
        )

    @property
    def row_vertices(self) -> Tuple[Vertex, ...]:
        return _expand(self.ladder, self.u1)

    @property
    def col_vertices(self) -> Tuple[Vertex, ...]:
        return _expand(self.ladder, self.u0)

    @property
    def is_empty(self) -> bool:
        return not self.row_vertices and not self.col_vertices


def _generators(
    ladder: LadderQuiver, mult: Sequence[int]
) -> Dict[Tuple[Vertex, int], int]:
    gens = [(v, i) for v, k in zip(ladder.vertices, mult) for i in range(k)]
    return {g: n for n, g in enumerate(gens)}


def realize(pres: Presentation, field: Field = QQ) -> Morphism:
    """
    The morphism of sums of projectives that pres describes: the generator of
    row r goes to sum over c of gamma[r][c] applied to generator c.
    """
    ladder = pres.ladder
    p1, labels1 = projective_sum(ladder, field, pres.u1)
    p0, labels0 = projective_sum(ladder, field, pres.u0)
    rows = _generators(ladder, pres.u1)
    cols = list(_generators(ladder, pres.u0))
    comps = []
    for u, (ls1, ls0) in enumerate(zip(labels1, labels0)):
        index0 = {lab: k for k, lab in enumerate(ls0)}
        data = [[field.zero] * len(ls1) for _ in ls0]
        for k, lab in enumerate(ls1):
            r = rows[(lab.vertex, lab.copy)]
            for c, (w, i) in enumerate(cols):
                for path, coefficient in pres.gamma[r][c].terms:
                    target = index0[ProjectiveLabel(w, i, path.then(lab.path))]
                    data[target][k] = field.add(data[target][k], field(coefficient))
        comps.append(Matrix(field, len(ls0), len(ls1), tuple(tuple(x) for x in data)))
    return Morphism(p1, p0, tuple(comps))


class Cover(NamedTuple):
    multiplicities: Tuple[int, ...]
    projective: Representation
    labels: Tuple[Tuple[ProjectiveLabel, ...], ...]
    map: Morphism


def _tops(m: Representation, spaces: Sequence[Matrix]) -> List[Matrix]:
    """
    At every vertex, vectors of spaces[w] completing the image of the incoming
    arrows to a basis.
    """
    ladder = m.ladder
    tops = []
    for w, v in enumerate(ladder.vertices):
        radical = Matrix.zeros(m.field, m.dims[w], 0)
        for a in ladder.incoming(v):
            radical = sum_spaces(radical, m.mat(a) @ spaces[ladder.index(a.source)])
        tops.append(extend_basis(column_echelon(radical), spaces[w]))
    return tops


def projective_cover(n: Representation) -> Cover:
    """
    The projective cover P0 -> n among relation-satisfying representations.
    """
    if not check_relations(n):
        raisef(ValidationError, "representation does not satisfy the ladder relations")
    ladder = n.ladder
    tops = _tops(n, [Matrix.identity(n.field, d) for d in n.dims])
    p0, labels = projective_sum(ladder, n.field, [t.cols for t in tops])
    comps = []
    for u, ls in enumerate(labels):
        columns = []
        for lab in ls:
            top = tops[ladder.index(lab.vertex)].select_columns([lab.copy])
            columns.append((n.path_matrix(lab.path) @ top).column(0))
        comps.append(Matrix.from_columns(n.field, n.dims[u], columns))
    return Cover(
        tuple(t.cols for t in tops), p0, labels, Morphism(p0, n, tuple(comps))
    )


def minimal_presentation(n: Representation) -> Presentation:
    """
    The minimal projective presentation P1 -> P0 -> n -> 0: P0 is the
    projective cover of n and P1 the projective cover of its kernel.
    """
    cover = projective_cover(n)
    ladder = n.ladder
    k = kernel(cover.map)
    tops = _tops(cover.projective, k.basis)
    u0 = cover.multiplicities
    u1 = tuple(t.cols for t in tops)
    cols = list(_generators(ladder, u0))
    gamma = []
    for w, top in zip(ladder.vertices, tops):
        labels = cover.labels[ladder.index(w)]
        for x in top.columns():
            row = []
            for src, i in cols:
                e = PathElement.zero(src, w)
                for lab, value in zip(labels, x):
                    if value != 0 and (lab.vertex, lab.copy) == (src, i):
                        e = e + PathElement.of_path(lab.path, Fraction(value))
                row.append(e)
            gamma.append(tuple(row))
    return Presentation(ladder, u0, u1, tuple(gamma))


def has_projective_dimension_one(pres: Presentation, field: Field = QQ) -> bool:
    return realize(pres, field).is_injective


def hom_matrix(pres: Presentation, m: Representation) -> Matrix:
    """
    Hom(gamma, M): Hom(P0, M) -> Hom(P1, M), with the block of row r and
    column c being M(gamma[r][c]).
    """
    if m.ladder != pres.ladder:
        raisef(ShapeError, "presentation and representation live on different ladders")
    rows = []
    for row_vertex, row in zip(pres.row_vertices, pres.gamma):
        blocks = [m.evaluate(e) for e in row]
        rows.append(Matrix.hstack(m.field, m.dim(row_vertex), blocks))
    cols = sum(m.dim(v) for v in pres.col_vertices)
    return Matrix.vstack(m.field, cols, rows)


def theta_value(pres: Presentation, m: Representation) -> Scalar:
    h = hom_matrix(pres, m)
    if not h.is_square:
        raisef(
            ShapeError,
            "Hom(gamma, M) is not square: dim Hom(P1, M) = {}, dim Hom(P0, M) = {}",
            h.rows,
            h.cols,
        )
    return det(h)


def u_weight(pres: Presentation, d: Sequence[int]) -> int:
    if len(d) != len(pres.u0):
        raisef(ShapeError, "dimension vector needs {} entries", len(pres.u0))
    return sum((a - b) * x for a, b, x in zip(pres.u0, pres.u1, d))


def _weight_sign(convention: Convention) -> int:
    # theta_gamma has weight U0 - U1 = -n theta under the sub-nonnegative
    # convention
    return -1 if convention is Convention.SUB_NONNEG else 1


def weight_check(pres: Presentation, p: StabilityParams, n: int) -> bool:
    if n < 1:
        raisef(ValidationError, "weight multiple must be positive, got {}", n)
    s = _weight_sign(p.convention)
    return all(a - b == s * n * t for a, b, t in zip(pres.u0, pres.u1, p.theta))


def chi_u(pres: Presentation, g: Sequence[Matrix]) -> Scalar:
    """
    The character prod over w of det(g_w)^(U0[w] - U1[w]).
    """
    if len(g) != len(pres.u0):
        raisef(ShapeError, "group element needs {} components", len(pres.u0))
    value: Optional[Scalar] = None
    for x, a, b in zip(g, pres.u0, pres.u1):
        term = x.field.power(det(x), a - b)
        value = term if value is None else x.field.mul(value, term)
    return 1 if value is None else value


class PresentationKind(Enum):
    EPI_MONIC = "epi-monic"
    PROJ_DIM_ONE = "proj-dim-one"
    OTHER = "other"


class KappaPresentation(NamedTuple):
    presentation: Presentation
    kind: PresentationKind


def kappa_presentation(pres: Presentation) -> KappaPresentation:
    """
    Classify the filtered morphism that gamma gives: a monomorphism with torsion
    ambient cokernel is epi and mono among filtered representations; one with
    filtered cokernel presents an object of projective dimension one.
    """
    f = realize(pres)
    kind = PresentationKind.OTHER
    if f.is_injective:
        coker = cokernel_ambient(f)
        if is_torsion(coker):
            kind = PresentationKind.EPI_MONIC
        elif betas_injective(coker):
            kind = PresentationKind.PROJ_DIM_ONE
    return KappaPresentation(pres, kind)


def theta_coordinates(
    m: Representation, gammas: Sequence[Presentation]
) -> List[Scalar]:
    """
    The projective coordinates [theta_gamma(M)] over a list of presentations.
    """
    values = []
    for i, pres in enumerate(gammas):
        try:
            values.append(theta_value(pres, m))
        except ShapeError as exc:
            raisef(ShapeError, "presentation {}: {}", i, exc)
    return values


def projectively_equal(a: Sequence[Scalar], b: Sequence[Scalar]) -> bool:
    """
    Whether two coordinate vectors are nonzero multiples of each other.
    """
    if len(a) != len(b) or not any(x != 0 for x in a) or not any(y != 0 for y in b):
        return False
    return all(x * b[j] == a[j] * y for x, y in zip(a, b) for j in range(len(a)))


class Certificate(NamedTuple):
    presentation: Presentation
    n: int
    value: Scalar


def _cell_options(
    ladder: LadderQuiver, source: Vertex, target: Vertex, degree: int
) -> List[PathElement]:
    options = [PathElement.zero(source, target)]
    for path in path_basis(ladder, source, target):
        if path.length <= degree:
            options.append(PathElement.of_path(path))
            options.append(PathElement.of_path(path, -1))
    return options


def _diagonal_guess(
    rows: Sequence[Vertex],
    cols: Sequence[Vertex],
    options: Sequence[Sequence[List[PathElement]]],
) -> Optional[List[List[int]]]:
    if len(rows) != len(cols):
        return None
    return [
        [1 if r == c and len(options[r][c]) > 1 else 0 for c in range(len(cols))]
        for r in range(len(rows))
    ]


def certificate_search(
    m: Representation,
    p: StabilityParams,
    *,
    n_max: int = DEFAULT_N_MAX,
    entry_degree: int = DEFAULT_ENTRY_DEGREE,
    trials: int = DEFAULT_TRIALS,
    seed: int = 0,
    exhaustive_cap: int = DEFAULT_EXHAUSTIVE_CAP,
) -> Optional[Certificate]:
    """
    Look for a presentation of weight -n theta (n <= n_max) with
    theta_gamma(M) != 0, which proves M semistable. Entries are zero or plus
    or minus a single path of length <= entry_degree; small searches are
    exhaustive and large ones random. None proves nothing.
    """
    if tuple(m.dims) != tuple(p.d):
        raisef(
            ValidationError,
            "stability parameters are for dims {}, got {}",
            list(p.d),
            list(m.dims),
        )
    ladder = m.ladder
    s = _weight_sign(p.convention)
    rng = random.Random(seed)
    for n in range(1, n_max + 1):
        target = [s * n * t for t in p.theta]
        u0 = [max(x, 0) for x in target]
        u1 = [max(-x, 0) for x in target]
        rows, cols = _expand(ladder, u1), _expand(ladder, u0)
        if sum(m.dim(v) for v in rows) != sum(m.dim(v) for v in cols):
            continue
        if not rows and not cols:
            return Certificate(Presentation.empty(ladder), n, m.field.one)
        options = [
            [_cell_options(ladder, c, r, entry_degree) for c in cols] for r in rows
        ]
        blocks = [[[m.evaluate(e) for e in cell] for cell in row] for row in options]

        def value(choice: Sequence[Sequence[int]]) -> Scalar:
            h = Matrix.vstack(
                m.field,
                sum(m.dim(v) for v in cols),
                [
                    Matrix.hstack(
                        m.field,
                        m.dim(rows[r]),
                        [blocks[r][c][k] for c, k in enumerate(ch)],
                    )
                    for r, ch in enumerate(choice)
                ],
            )
            return det(h)

        def certificate(choice: Sequence[Sequence[int]], x: Scalar) -> Certificate:
            gamma = tuple(
                tuple(options[r][c][k] for c, k in enumerate(ch))
                for r, ch in enumerate(choice)
            )
            return Certificate(Presentation(ladder, tuple(u0), tuple(u1), gamma), n, x)

        guess = _diagonal_guess(rows, cols, options)
        if guess is not None:
            x = value(guess)
            if x != 0:
                return certificate(guess, x)
        sizes = [len(cell) for row in options for cell in row]
        total = 1
        for k in sizes:
            total *= k
        width = len(cols)
        if total <= exhaustive_cap:
            logger.debug(
                "exhaustive certificate search over %d presentations at n=%d", total, n
            )
            candidates = product(*[range(k) for k in sizes])
        else:
            logger.debug("random certificate search, %d trials at n=%d", trials, n)
            candidates = (tuple(rng.randrange(k) for k in sizes) for _ in range(trials))
        for flat in candidates:
            choice = [list(flat[r * width : (r + 1) * width]) for r in range(len(rows))]
            x = value(choice)
            if x != 0:
                return certificate(choice, x)
    return None
