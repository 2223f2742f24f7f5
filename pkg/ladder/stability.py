"""
Rank, degree and slope functions, the derived weight theta, and
semistability decisions by subrepresentation enumeration.

All comparisons are cross-multiplied, never divided: a subobject S of M
destabilizes under the "subgeq" convention when

    Theta(d(S)) * rk(d(M)) - Theta(d(M)) * rk(d(S)) > 0

which is the slope inequality mu(S) > mu(M) when both ranks are positive and
the weight inequality theta(d(S)) < 0 at the fixed dimension vector d(M). The
"subleq" convention flips the sign.
"""

from dataclasses import dataclass, replace
from enum import Enum
from fractions import Fraction
from functools import cached_property
import logging
import random
from typing import (
    Iterator,
    List,
    Mapping,
    NamedTuple,
    Optional,
    Sequence,
    Set,
    Tuple,
    Union,
)

from sympy import isprime

from ladder.error import (
    DomainError,
    InconclusiveError,
    raisef,
    ResourceError,
    ShapeError,
    ValidationError,
)
from ladder.exactla import (
    count_subspaces,
    Field,
    kernel as null_space,
    Matrix,
    rank,
    subspaces_containing,
    sum_spaces,
)
from ladder.quiver import LadderQuiver, path_basis
from ladder.rep import is_filtered, Representation, Subrep

logger = logging.getLogger(__name__)

DEFAULT_SUBREP_CAP = 10**7
DEFAULT_GENERATED_CAP = 4096
ORACLE_PRIMES = 3

Dims = Tuple[int, ...]


class Convention(Enum):
    """
    The sign of the subobject inequality: SUB_NONNEG asks theta(d(S)) >= 0 for
    every subobject S, SUB_NONPOS asks theta(d(S)) <= 0.
    """

    SUB_NONNEG = "subgeq"
    SUB_NONPOS = "subleq"

    @property
    def sign(self) -> int:
        return 1 if self is Convention.SUB_NONNEG else -1


def _vector(
    ladder: LadderQuiver, values: Union[Sequence[int], Mapping]
) -> Tuple[int, ...]:
    if isinstance(values, Mapping):
        given = {ladder.vertex(v): x for v, x in values.items()}
        return tuple(int(given.get(v, 0)) for v in ladder.vertices)
    values = tuple(values)
    if len(values) != len(ladder.vertices):
        raisef(
            ShapeError,
            "expected {} entries, got {}",
            len(ladder.vertices),
            len(values),
        )
    if any(isinstance(x, bool) or not isinstance(x, int) for x in values):
        raisef(ValidationError, "vector entries must be integers: {}", list(values))
    return values


@dataclass(frozen=True)
class RankWeights:
    """
    Nonnegative rank weights r_w. In each base column v the weights from any
    level k up to the sink must not all vanish, so that the rank is positive
    on every nonzero filtered representation.
    """

    ladder: LadderQuiver
    values: Tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "values", _vector(self.ladder, self.values))
        if any(r < 0 for r in self.values):
            raisef(
                ValidationError,
                "rank weights must be nonnegative: {}",
                list(self.values),
            )
        ladder = self.ladder
        for v in ladder.base.vertices:
            for k in range(1, ladder.levels + 1):
                tail = sum(self.weight((j, v)) for j in range(k, ladder.levels + 1))
                if tail <= 0:
                    raisef(
                        ValidationError,
                        "rank weights of column {} vanish from level {} upwards",
                        v,
                        k,
                    )

    @classmethod
    def of(
        cls, ladder: LadderQuiver, values: Union[Sequence[int], Mapping]
    ) -> "RankWeights":
        return cls(ladder, _vector(ladder, values))

    @classmethod
    def dim(cls, ladder: LadderQuiver) -> "RankWeights":
        """
        r = 1 everywhere: the rank is the total dimension.
        """
        return cls(ladder, tuple(1 for _ in ladder.vertices))

    @classmethod
    def sink(
        cls, ladder: LadderQuiver, weights: Optional[Mapping[str, int]] = None
    ) -> "RankWeights":
        """
        Weights supported on the sink level, by default all 1.
        """
        weights = weights or {}
        return cls(
            ladder,
            tuple(
                weights.get(v.base, 1) if v.level == ladder.levels else 0
                for v in ladder.vertices
            ),
        )

    def weight(self, v) -> int:
        return self.values[self.ladder.index(v)]

    @property
    def is_zero_on_torsion(self) -> bool:
        return all(
            r == 0
            for v, r in zip(self.ladder.vertices, self.values)
            if v.level < self.ladder.levels
        )


@dataclass(frozen=True)
class DegreeVector:
    """
    The integer degree function Theta.
    """

    ladder: LadderQuiver
    values: Tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "values", _vector(self.ladder, self.values))

    @classmethod
    def of(
        cls, ladder: LadderQuiver, values: Union[Sequence[int], Mapping]
    ) -> "DegreeVector":
        return cls(ladder, _vector(ladder, values))

    @classmethod
    def zero(cls, ladder: LadderQuiver) -> "DegreeVector":
        return cls(ladder, tuple(0 for _ in ladder.vertices))


def _check_length(d: Sequence[int], values: Sequence[int]) -> None:
    if len(d) != len(values):
        raisef(
            ShapeError,
            "dimension vector of length {} against weights of length {}",
            len(d),
            len(values),
        )


def rank_of(d: Sequence[int], rk: RankWeights) -> int:
    _check_length(d, rk.values)
    return sum(r * x for r, x in zip(rk.values, d))


def degree_of(d: Sequence[int], theta: DegreeVector) -> int:
    _check_length(d, theta.values)
    return sum(t * x for t, x in zip(theta.values, d))


def derive_theta(
    theta: DegreeVector, rk: RankWeights, d: Sequence[int]
) -> Tuple[int, ...]:
    """
    theta_w = Theta(d) r_w - rk(d) Theta_w, so that theta(d) = 0.
    """
    big, r = degree_of(d, theta), rank_of(d, rk)
    return tuple(big * rw - r * tw for rw, tw in zip(rk.values, theta.values))


def slope(d: Sequence[int], p: "StabilityParams") -> Fraction:
    r = rank_of(d, p.rank)
    if r == 0:
        raisef(DomainError, "slope of {} is undefined: its rank is zero", list(d))
    return Fraction(degree_of(d, p.degree), r)


@dataclass(frozen=True)
class StabilityParams:
    degree: DegreeVector
    rank: RankWeights
    d: Dims
    convention: Convention = Convention.SUB_NONNEG

    def __post_init__(self) -> None:
        object.__setattr__(self, "d", tuple(self.d))
        if self.degree.ladder != self.rank.ladder:
            raisef(ShapeError, "degree and rank weights live on different ladders")
        _check_length(self.d, self.degree.values)
        if any(x < 0 for x in self.d):
            raisef(ValidationError, "negative dimension in {}", list(self.d))

    @classmethod
    def create(
        cls,
        ladder: LadderQuiver,
        degree: Union[Sequence[int], Mapping],
        rank: Optional[Union[RankWeights, Sequence[int], Mapping]] = None,
        d: Sequence[int] = (),
        convention: Convention = Convention.SUB_NONNEG,
    ) -> "StabilityParams":
        if rank is None:
            rank = RankWeights.dim(ladder)
        elif not isinstance(rank, RankWeights):
            rank = RankWeights.of(ladder, rank)
        return cls(DegreeVector.of(ladder, degree), rank, tuple(d), convention)

    @property
    def ladder(self) -> LadderQuiver:
        return self.degree.ladder

    @cached_property
    def theta(self) -> Tuple[int, ...]:
        return derive_theta(self.degree, self.rank, self.d)

    @property
    def mu(self) -> Fraction:
        return slope(self.d, self)

    def with_convention(self, convention: Convention) -> "StabilityParams":
        return replace(self, convention=convention)

    def for_dims(self, d: Sequence[int]) -> "StabilityParams":
        return replace(self, d=tuple(d))


def rk_dim_filtered(m: Representation) -> int:
    """
    rk_dim(M) = sum of the sink dimensions plus the ranks of all horizontal
    maps.
    """
    if not is_filtered(m):
        raisef(ValidationError, "rk_dim is defined on filtered representations only")
    sink = sum(m.dim(v) for v in m.ladder.sink_vertices)
    return sink + sum(rank(m.mat(a)) for a in m.ladder.arrows if a.kind == "beta")


def is_slope_admissible(
    theta: DegreeVector, ladder: Optional[LadderQuiver] = None
) -> bool:
    """
    Whether Theta is nonnegative on torsion: on every vertex below the sink
    level.
    """
    ladder = ladder or theta.ladder
    return all(
        t >= 0 for v, t in zip(ladder.vertices, theta.values) if v.level < ladder.levels
    )


def is_rank_zero_on_torsion(rk: RankWeights) -> bool:
    """
    When rk vanishes on torsion, filtered semistable points map openly into the
    relation-satisfying moduli and every point is of Type-1.
    """
    return rk.is_zero_on_torsion


def excess(p: StabilityParams, sub: Sequence[int], whole: Sequence[int]) -> int:
    """
    The convention-signed amount by which sub exceeds whole; positive means
    sub destabilizes whole.
    """
    raw = degree_of(sub, p.degree) * rank_of(whole, p.rank) - degree_of(
        whole, p.degree
    ) * rank_of(sub, p.rank)
    return p.convention.sign * raw


def _estimate(m: Representation) -> int:
    total = 1
    for d in m.dims:
        total *= count_subspaces(m.field.p, d)
    return total


def enumerate_subreps(
    m: Representation,
    mode: str = "all",
    *,
    cap: int = DEFAULT_SUBREP_CAP,
) -> Iterator[Subrep]:
    """
    Every subrepresentation of m (mode "all") or every strict one (mode
    "strict").

    Over F_p the enumeration is exhaustive: vertices are visited in
    topological order and each vertex ranges over the subspaces containing
    the images of the subspaces already chosen upstream. Over Q only the
    lattice generated by single basis vectors, kernels and horizontal kernels
    under sums and intersections is produced.
    """
    if mode not in {"all", "strict"}:
        raisef(ValidationError, "unknown enumeration mode {!r}", mode)
    source = _finite_subreps(m, cap) if m.field.is_finite else _generated_subreps(m)
    for s in source:
        if mode == "all" or s.is_strict:
            yield s


def _finite_subreps(m: Representation, cap: int) -> Iterator[Subrep]:
    estimate = _estimate(m)
    if estimate > cap:
        raisef(
            ResourceError,
            "subrepresentation enumeration needs up to {} subspace tuples, cap is {}",
            estimate,
            cap,
        )
    ladder = m.ladder
    order = [ladder.index(v) for v in ladder.topological_order]
    incoming = {
        i: [
            (ladder.index(a.source), m.mat(a))
            for a in ladder.incoming(ladder.vertices[i])
        ]
        for i in order
    }
    chosen: List[Optional[Matrix]] = [None] * len(m.dims)
    count = 0

    def walk(step: int) -> Iterator[Subrep]:
        nonlocal count
        if step == len(order):
            count += 1
            yield Subrep(m, tuple(chosen))
            return
        i = order[step]
        lower = Matrix.zeros(m.field, m.dims[i], 0)
        for s, mat in incoming[i]:
            lower = sum_spaces(lower, mat @ chosen[s])
        for space in subspaces_containing(m.field, lower):
            chosen[i] = space
            yield from walk(step + 1)
        chosen[i] = None

    yield from walk(0)
    logger.debug("enumerated %d subrepresentations of dims %s", count, m.dims)


def _sort_key(s: Subrep) -> Tuple:
    return (s.total_dimension, s.dims, tuple(b.entries for b in s.basis))


def _generated_subreps(
    m: Representation, cap: int = DEFAULT_GENERATED_CAP
) -> List[Subrep]:
    ladder = m.ladder
    seeds: Set[Subrep] = {Subrep.zero(m), Subrep.full(m)}
    for v, d in zip(ladder.vertices, m.dims):
        for k in range(d):
            seeds.add(Subrep.generated(m, {v: Matrix.unit_columns(m.field, d, [k])}))
    for a in ladder.arrows:
        k = null_space(m.mat(a))
        if k.cols:
            seeds.add(Subrep.generated(m, {a.source: k}))
    pool = set(seeds)
    frontier = list(seeds)
    while frontier and len(pool) < cap:
        fresh: Set[Subrep] = set()
        for a in list(pool):
            for b in frontier:
                for c in (a + b, a & b):
                    if c not in pool:
                        fresh.add(c)
        pool |= fresh
        frontier = list(fresh)
    if len(pool) >= cap:
        logger.debug("generated subrepresentation lattice truncated at %d", len(pool))
    return sorted(pool, key=_sort_key)


class Verdict(NamedTuple):
    semistable: bool
    stable: bool
    witness: Optional[Subrep]
    oracle_backed: bool
    primes: Tuple[int, ...]


def _scan(
    m: Representation, p: StabilityParams, subs: Sequence[Subrep]
) -> Tuple[bool, bool, Optional[Subrep]]:
    semistable = True
    stable = not m.is_zero
    witness = None
    for s in subs:
        if s.is_zero:
            continue
        e = excess(p, s.dims, m.dims)
        if e > 0:
            semistable = stable = False
            if witness is None:
                witness = s
            break
        if e == 0 and not s.is_full:
            stable = False
    return semistable, stable, witness


def good_primes(
    m: Representation, count: int = ORACLE_PRIMES, start: int = 5
) -> Tuple[int, ...]:
    """
    Small primes modulo which the representation keeps every denominator and
    the rank of every path matrix.
    """
    ladder = m.ladder
    paths = [
        path
        for s in ladder.vertices
        for t in ladder.vertices
        for path in path_basis(ladder, s, t)
        if path.length > 0
    ]
    ranks = [rank(m.path_matrix(path)) for path in paths]
    found: List[int] = []
    p = start
    while len(found) < count:
        if isprime(p):
            try:
                reduced = m.reduce(Field.prime(p))
            except ValidationError:
                reduced = None
            if reduced is not None and all(
                rank(reduced.path_matrix(path)) == r for path, r in zip(paths, ranks)
            ):
                found.append(p)
        p += 1
    return tuple(found)


def decide(
    m: Representation,
    p: StabilityParams,
    *,
    strict_only: bool = False,
    cap: int = DEFAULT_SUBREP_CAP,
) -> Verdict:
    """
    Semistability and stability of m with a destabilizing witness.

    Over Q an unstable verdict backed by a generated witness is exact;
    otherwise reductions modulo three good primes must agree, and the verdict
    is marked oracle-backed.
    """
    mode = "strict" if strict_only else "all"
    subs = list(enumerate_subreps(m, mode, cap=cap))
    semistable, stable, witness = _scan(m, p, subs)
    if m.field.is_finite:
        return Verdict(semistable, stable, witness, False, ())
    if witness is not None:
        return Verdict(False, False, witness, False, ())
    primes = good_primes(m)
    verdicts = set()
    for q in primes:
        reduced = m.reduce(Field.prime(q))
        ss, st, _ = _scan(reduced, p, list(enumerate_subreps(reduced, mode, cap=cap)))
        verdicts.add((ss, st and stable))
    if len(verdicts) != 1:
        raisef(
            InconclusiveError,
            "modular stability oracles disagree for primes {}",
            list(primes),
        )
    ss, st = verdicts.pop()
    logger.debug("oracle-backed verdict %s/%s from primes %s", ss, st, primes)
    return Verdict(ss, st, None, True, primes)


def is_semistable(
    m: Representation,
    p: StabilityParams,
    *,
    strict_only: bool = False,
    cap: int = DEFAULT_SUBREP_CAP,
) -> bool:
    return decide(m, p, strict_only=strict_only, cap=cap).semistable


def is_stable(
    m: Representation,
    p: StabilityParams,
    *,
    strict_only: bool = False,
    cap: int = DEFAULT_SUBREP_CAP,
) -> bool:
    return decide(m, p, strict_only=strict_only, cap=cap).stable


def is_theta_semistable(
    m: Representation,
    theta: Sequence[int],
    convention: Convention = Convention.SUB_NONNEG,
    *,
    cap: int = DEFAULT_SUBREP_CAP,
) -> bool:
    """
    King's criterion: theta(d(M)) = 0 and every subobject has theta of the
    convention's sign.
    """
    _check_length(m.dims, theta)
    if sum(t * d for t, d in zip(theta, m.dims)) != 0:
        return False
    return all(
        convention.sign * sum(t * d for t, d in zip(theta, s.dims)) >= 0
        for s in enumerate_subreps(m, cap=cap)
    )


def destabilizing_subrep(
    m: Representation,
    p: StabilityParams,
    *,
    order_seed: Optional[int] = None,
    cap: int = DEFAULT_SUBREP_CAP,
) -> Optional[Subrep]:
    """
    The strict subobject with the largest slope, ties going to the largest
    rank and then to the first one enumerated; None when m is semistable
    against strict subobjects. order_seed shuffles the enumeration order.
    """
    candidates = [s for s in enumerate_subreps(m, "strict", cap=cap) if not s.is_zero]
    if order_seed is not None:
        random.Random(order_seed).shuffle(candidates)
    best: Optional[Subrep] = None
    best_key: Optional[Tuple[Fraction, int]] = None
    for s in candidates:
        r = rank_of(s.dims, p.rank)
        if r == 0:
            continue
        key = (p.convention.sign * Fraction(degree_of(s.dims, p.degree), r), r)
        if best_key is None or key > best_key:
            best, best_key = s, key
    if best is None or best.is_full:
        return None
    return best
