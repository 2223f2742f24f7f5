"""
Filtrations of filtered representations: Harder-Narasimhan, strict
Jordan-Hölder, maximal flags, associated graded objects and the equivalence
relations they define.
"""

from dataclasses import dataclass
from enum import Enum
import random
from typing import List, Optional, Sequence, Tuple

from ladder.error import raisef, ValidationError
from ladder.rep import (
    betas_injective,
    is_isomorphic,
    Representation,
    require_filtered,
    Subrep,
)
from ladder.stability import (
    decide,
    DEFAULT_SUBREP_CAP,
    destabilizing_subrep,
    enumerate_subreps,
    excess,
    is_semistable,
    is_slope_admissible,
    rank_of,
    StabilityParams,
)

CATEGORIES = ("fil", "rel")


class PointType(Enum):
    TYPE1 = "Type1"
    TYPE2 = "Type2"


@dataclass(frozen=True)
class Filtration:
    """
    An ascending chain 0 = M_0 < M_1 < ... < M_k = M of subrepresentations.
    The chain is strict when every subquotient is filtered.
    """

    object: Representation
    steps: Tuple[Subrep, ...]
    strict: bool

    def __post_init__(self) -> None:
        steps = tuple(self.steps)
        object.__setattr__(self, "steps", steps)
        if not steps or not steps[0].is_zero or not steps[-1].is_full:
            raisef(ValidationError, "a filtration runs from 0 to the whole object")
        for s in steps:
            if s.ambient != self.object:
                raisef(
                    ValidationError, "filtration step lives in another representation"
                )
        for lower, upper in zip(steps, steps[1:]):
            if not lower < upper:
                raisef(ValidationError, "filtration steps must increase strictly")
        if self.strict and not all(betas_injective(q) for q in self.quotients()):
            raisef(ValidationError, "filtration is not strict")

    @classmethod
    def of(cls, m: Representation, steps: Sequence[Subrep]) -> "Filtration":
        """
        A filtration whose strictness is read off its subquotients.
        """
        steps = tuple(steps)
        strict = all(
            betas_injective(upper.relative_quotient(lower))
            for lower, upper in zip(steps, steps[1:])
        )
        return cls(m, steps, strict)

    @property
    def length(self) -> int:
        return len(self.steps) - 1

    def quotients(self) -> List[Representation]:
        return [
            upper.relative_quotient(lower)
            for lower, upper in zip(self.steps, self.steps[1:])
        ]

    def quotient_dims(self) -> List[Tuple[int, ...]]:
        return [
            tuple(a - b for a, b in zip(upper.dims, lower.dims))
            for lower, upper in zip(self.steps, self.steps[1:])
        ]


def _canonical_key(r: Representation) -> Tuple:
    return (r.dims, tuple(m.entries for m in r.mats))


def graded(pieces: Sequence[Representation], zero: Representation) -> Representation:
    """
    The direct sum of pieces in canonical order.
    """
    pieces = sorted(pieces, key=_canonical_key)
    if not pieces:
        return zero
    return pieces[0].direct_sum(*pieces[1:])


def gr(f: Filtration, category: str = "fil") -> Representation:
    if category == "fil" and not f.strict:
        raisef(ValidationError, "gr needs a strict filtration")
    return graded(f.quotients(), Representation.zero(f.object.ladder, f.object.field))


def hn_filtration(
    m: Representation,
    p: StabilityParams,
    *,
    order_seed: Optional[int] = None,
    cap: int = DEFAULT_SUBREP_CAP,
) -> Filtration:
    """
    The Harder-Narasimhan filtration, built greedily: each step is the
    preimage of the maximal destabilizing strict subobject of the running
    quotient.
    """
    require_filtered(m)
    if not is_slope_admissible(p.degree):
        raisef(ValidationError, "degree function is negative on torsion")
    current = Subrep.zero(m)
    steps = [current]
    while not current.is_full:
        d = destabilizing_subrep(current.quotient(), p, order_seed=order_seed, cap=cap)
        current = Subrep.full(m) if d is None else current.preimage(d)
        steps.append(current)
    return Filtration(m, tuple(steps), True)


def _stable(r: Representation, p: StabilityParams, cap: int) -> bool:
    return decide(r, p, cap=cap).stable


def jh_filtration(
    m: Representation,
    p: StabilityParams,
    *,
    category: str = "fil",
    cap: int = DEFAULT_SUBREP_CAP,
) -> Optional[Filtration]:
    """
    A Jordan-Hölder filtration: stable subquotients of equal slope. In the
    "fil" category every step must be strict and None means no strict one
    exists; the "rel" category is the ordinary one of relation-satisfying
    representations.

    Candidates are tried in increasing rank order with backtracking.
    """
    if category not in CATEGORIES:
        raisef(ValidationError, "unknown category {!r}", category)
    mode = "strict" if category == "fil" else "all"

    def search(r: Representation) -> Optional[List[Subrep]]:
        if _stable(r, p, cap):
            return [Subrep.zero(r), Subrep.full(r)]
        candidates = [
            s
            for s in enumerate_subreps(r, mode, cap=cap)
            if not s.is_zero and not s.is_full and excess(p, s.dims, r.dims) == 0
        ]
        candidates.sort(key=lambda s: (rank_of(s.dims, p.rank), s.total_dimension))
        for s in candidates:
            if not _stable(s.representation(), p, cap):
                continue
            rest = search(s.quotient())
            if rest is not None:
                return [Subrep.zero(r)] + [s.preimage(t) for t in rest[1:]]
        return None

    if m.is_zero:
        return Filtration(m, (Subrep.zero(m),), category == "fil")
    steps = search(m)
    if steps is None:
        return None
    return Filtration(m, tuple(steps), category == "fil")


def maximal_flag(
    m: Representation,
    p: Optional[StabilityParams] = None,
    *,
    order_seed: Optional[int] = None,
    cap: int = DEFAULT_SUBREP_CAP,
) -> Filtration:
    """
    The maximal flag, built bottom-up from minimal nonzero strict subobjects of
    the running quotient.

    With stability parameters the flag is taken among semistable objects of
    the slope of m: only strict subobjects of that slope are used.
    """
    require_filtered(m)
    current = Subrep.zero(m)
    steps = [current]
    while not current.is_full:
        q = current.quotient()
        candidates = [
            s for s in enumerate_subreps(q, "strict", cap=cap) if not s.is_zero
        ]
        if p is not None:
            candidates = [s for s in candidates if excess(p, s.dims, q.dims) == 0]
        if order_seed is not None:
            random.Random(order_seed).shuffle(candidates)
        best = min(candidates, key=lambda s: s.total_dimension)
        current = current.preimage(best)
        steps.append(current)
    return Filtration(m, tuple(steps), True)


def gr_max(
    m: Representation,
    p: Optional[StabilityParams] = None,
    *,
    cap: int = DEFAULT_SUBREP_CAP,
) -> Representation:
    return gr(maximal_flag(m, p, cap=cap))


def s_equivalent(
    m: Representation,
    n: Representation,
    p: Optional[StabilityParams] = None,
    *,
    cap: int = DEFAULT_SUBREP_CAP,
) -> bool:
    if m.dims != n.dims:
        return False
    return is_isomorphic(gr_max(m, p, cap=cap), gr_max(n, p, cap=cap))


def sjh_equivalent(
    m: Representation,
    n: Representation,
    p: StabilityParams,
    *,
    cap: int = DEFAULT_SUBREP_CAP,
) -> bool:
    """
    Whether both objects have strict Jordan-Hölder filtrations with
    isomorphic graded objects; False when either has none.
    """
    fm = jh_filtration(m, p, cap=cap)
    fn = jh_filtration(n, p, cap=cap)
    if fm is None or fn is None:
        return False
    return is_isomorphic(gr(fm), gr(fn))


def is_polystable(
    m: Representation, p: StabilityParams, *, cap: int = DEFAULT_SUBREP_CAP
) -> bool:
    f = jh_filtration(m, p, cap=cap)
    if f is None:
        return False
    return is_isomorphic(m, gr(f))


def classify_point_type(
    m: Representation, p: StabilityParams, *, cap: int = DEFAULT_SUBREP_CAP
) -> PointType:
    """
    Type-1 when the S-equivalence class of m contains an object with a strict
    Jordan-Hölder filtration, decided on gr_max(m).
    """
    if not is_semistable(m, p, cap=cap):
        raisef(ValidationError, "point type is defined for semistable objects only")
    if jh_filtration(gr_max(m, p, cap=cap), p, cap=cap) is None:
        return PointType.TYPE2
    return PointType.TYPE1
