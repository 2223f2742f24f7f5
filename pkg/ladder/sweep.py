"""
Sweeps over representation spaces: every point of a small space over F_p,
random filtered and relation-satisfying representations, and the
S-equivalence classes and stability verdicts of a batch of points.
"""

from concurrent.futures import ProcessPoolExecutor
from itertools import product
import logging
import random
from typing import Iterator, List, NamedTuple, Optional, Sequence, Tuple

from ladder.error import raisef, ResourceError, ShapeError, ValidationError
from ladder.exactla import coordinates, Field, Matrix, random_matrix
from ladder.filtr import gr_max
from ladder.quiver import LadderQuiver
from ladder.rep import (
    betas_injective,
    check_relations,
    is_isomorphic,
    Representation,
    Subrep,
)
from ladder.stability import Convention, decide, DEFAULT_SUBREP_CAP, StabilityParams

logger = logging.getLogger(__name__)

DEFAULT_POINT_CAP = 10**6


def count_points(ladder: LadderQuiver, field: Field, dims: Sequence[int]) -> int:
    """
    The number of points of the full representation space, before relations.
    """
    if not field.is_finite:
        raisef(ValidationError, "points can only be counted over a finite field")
    entries = sum(
        dims[ladder.index(a.target)] * dims[ladder.index(a.source)]
        for a in ladder.arrows
    )
    return field.p**entries


def all_points(
    ladder: LadderQuiver,
    field: Field,
    dims: Sequence[int],
    locus: str = "rel",
    *,
    cap: int = DEFAULT_POINT_CAP,
) -> Iterator[Representation]:
    """
    Every point of R_rel (locus "rel") or R_fil (locus "fil") of dimension
    vector dims, in lexicographic order of the arrow matrices.
    """
    if locus not in {"rel", "fil"}:
        raisef(ValidationError, "unknown locus {!r}", locus)
    dims = tuple(dims)
    if len(dims) != len(ladder.vertices):
        raisef(
            ShapeError,
            "expected {} dimensions, got {}",
            len(ladder.vertices),
            len(dims),
        )
    total = count_points(ladder, field, dims)
    if total > cap:
        raisef(
            ResourceError, "representation space has {} points, cap is {}", total, cap
        )
    shapes = [
        (dims[ladder.index(a.target)], dims[ladder.index(a.source)])
        for a in ladder.arrows
    ]
    elems = field.elements()
    kept = 0
    for values in product(elems, repeat=sum(r * c for r, c in shapes)):
        mats = []
        k = 0
        for r, c in shapes:
            data = tuple(
                tuple(values[k + i * c : k + (i + 1) * c]) for i in range(r)
            )
            mats.append(Matrix(field, r, c, data))
            k += r * c
        m = Representation(ladder, field, dims, tuple(mats))
        if not check_relations(m):
            continue
        if locus == "fil" and not betas_injective(m):
            continue
        kept += 1
        yield m
    logger.debug("kept %d of %d points in the %s locus", kept, total, locus)


def _random_span(field: Field, basis: Matrix, rng: random.Random) -> Matrix:
    k = rng.randint(0, basis.cols)
    return basis @ random_matrix(field, basis.cols, k, rng, 3)


def random_filtered(
    ladder: LadderQuiver,
    field: Field,
    top_dims: Sequence[int],
    rng: random.Random,
) -> Representation:
    """
    A random filtered representation: a random representation V of the base
    quiver at the sink level, and below it a descending chain of random
    subrepresentations of V with the inclusions as horizontal maps.
    """
    base = LadderQuiver(ladder.base, 1)
    if len(top_dims) != len(base.vertices):
        raisef(
            ShapeError,
            "expected {} top dimensions, got {}",
            len(base.vertices),
            len(top_dims),
        )
    mats = [
        random_matrix(
            field,
            top_dims[base.index(a.target)],
            top_dims[base.index(a.source)],
            rng,
            3,
        )
        for a in base.arrows
    ]
    v = Representation(base, field, tuple(top_dims), tuple(mats))
    levels = [Subrep.full(v)]
    for _ in range(ladder.levels - 1):
        upper = levels[0]
        levels.insert(
            0,
            Subrep.generated(
                v,
                {
                    w: _random_span(field, b, rng)
                    for w, b in zip(base.vertices, upper.basis)
                },
            ),
        )
    bases = {
        (j, w.base): levels[j - 1].basis[base.index(w)]
        for j in range(1, ladder.levels + 1)
        for w in base.vertices
    }
    dims = tuple(bases[(w.level, w.base)].cols for w in ladder.vertices)
    mats = []
    for a in ladder.arrows:
        source = bases[(a.source.level, a.source.base)]
        target = bases[(a.target.level, a.target.base)]
        if a.kind == "beta":
            mats.append(coordinates(target, source))
        else:
            mats.append(coordinates(target, v.mat(f"alpha_1^{a.label}") @ source))
    return Representation(ladder, field, dims, tuple(mats))


def random_relation_rep(
    ladder: LadderQuiver,
    field: Field,
    rng: random.Random,
    max_dim: int = 2,
) -> Representation:
    """
    A random relation-satisfying representation: a random filtered one
    modulo a random subrepresentation, so torsion can appear.
    """
    top = [rng.randint(0, max_dim) for _ in ladder.base.vertices]
    n = random_filtered(ladder, field, top, rng)
    vectors = {
        v: random_matrix(field, d, rng.randint(0, min(d, 1)), rng, 3)
        for v, d in zip(ladder.vertices, n.dims)
        if d and rng.random() < 0.3
    }
    return Subrep.generated(n, vectors).quotient()


class SClass(NamedTuple):
    representative: Representation
    size: int


def _graded_point(
    args: Tuple[Representation, StabilityParams, int]
) -> Optional[Representation]:
    m, p, cap = args
    if not decide(m, p, cap=cap).semistable:
        return None
    return gr_max(m, p, cap=cap)


def s_equivalence_classes(
    points: Sequence[Representation],
    p: StabilityParams,
    *,
    jobs: int = 1,
    cap: int = DEFAULT_SUBREP_CAP,
) -> List[SClass]:
    """
    Group the semistable points by the isomorphism class of gr_max. Classes
    come in order of first appearance whatever the number of jobs.
    """
    work = [(m, p, cap) for m in points]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            graded = list(pool.map(_graded_point, work))
    else:
        graded = [_graded_point(w) for w in work]
    reps: List[Representation] = []
    sizes: List[int] = []
    for g in graded:
        if g is None:
            continue
        for k, r in enumerate(reps):
            if is_isomorphic(g, r):
                sizes[k] += 1
                break
        else:
            reps.append(g)
            sizes.append(1)
    logger.debug("%d semistable points fall into %d S-classes", sum(sizes), len(reps))
    return [SClass(r, n) for r, n in zip(reps, sizes)]


class VerdictRow(NamedTuple):
    convention: Convention
    semistable: int
    stable: int
    total: int
    injective: int
    matches_injectivity: bool


def verdict_table(
    points: Sequence[Representation],
    p: StabilityParams,
    *,
    conventions: Sequence[Convention] = tuple(Convention),
    strict_only: bool = False,
    cap: int = DEFAULT_SUBREP_CAP,
) -> List[VerdictRow]:
    """
    Semistable and stable counts over the points, per convention, and whether
    the semistable points are exactly those with injective horizontal maps.
    """
    injective = [betas_injective(m) for m in points]
    rows = []
    for convention in conventions:
        q = p.with_convention(convention)
        semistable = stable = 0
        matches = True
        for m, inj in zip(points, injective):
            v = decide(m, q, strict_only=strict_only, cap=cap)
            semistable += v.semistable
            stable += v.stable
            matches = matches and v.semistable == inj
        rows.append(
            VerdictRow(
                convention, semistable, stable, len(points), sum(injective), matches
            )
        )
    return rows
