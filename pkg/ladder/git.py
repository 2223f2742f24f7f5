"""
One-parameter subgroups of the product of general linear groups acting on a
representation space, their limits, the pairing with the character of theta,
the Hilbert-Mumford criterion and closed-orbit tests.

A one-parameter subgroup is stored as an integer weight for every vector of a
chosen basis of each vertex space; it acts by t^weight on that vector.
"""

from dataclasses import dataclass
from itertools import product
import logging
from typing import FrozenSet, Iterator, List, NamedTuple, Optional, Sequence, Set, Tuple

from ladder.error import raisef, ResourceError, ShapeError, ValidationError
from ladder.exactla import (
    count_general_linear,
    extend_basis,
    Field,
    general_linear,
    inverse,
    is_invertible,
    Matrix,
)
from ladder.filtr import gr_max, s_equivalent
from ladder.rep import betas_injective, is_isomorphic, Representation, Subrep
from ladder.stability import (
    DEFAULT_SUBREP_CAP,
    derive_theta,
    enumerate_subreps,
    StabilityParams,
)

logger = logging.getLogger(__name__)

DEFAULT_ORBIT_CAP = 10**6


@dataclass(frozen=True)
class OnePS:
    weights: Tuple[Tuple[int, ...], ...]
    basis: Tuple[Matrix, ...]

    def __post_init__(self) -> None:
        weights = tuple(tuple(w) for w in self.weights)
        object.__setattr__(self, "weights", weights)
        object.__setattr__(self, "basis", tuple(self.basis))
        if len(weights) != len(self.basis):
            raisef(
                ShapeError,
                "{} weight lists against {} bases",
                len(weights),
                len(self.basis),
            )
        for w, b in zip(weights, self.basis):
            if b.shape != (len(w), len(w)):
                raisef(
                    ShapeError, "basis of shape {} against {} weights", b.shape, len(w)
                )
            if not is_invertible(b):
                raisef(ValidationError, "one-parameter subgroup basis is singular")

    @classmethod
    def standard(cls, field: Field, weights: Sequence[Sequence[int]]) -> "OnePS":
        """
        Diagonal weights in the standard bases.
        """
        return cls(
            tuple(tuple(w) for w in weights),
            tuple(Matrix.identity(field, len(w)) for w in weights),
        )

    @property
    def dims(self) -> Tuple[int, ...]:
        return tuple(len(w) for w in self.weights)

    def distinct_weights(self) -> List[int]:
        return sorted({x for w in self.weights for x in w})


class Limit(NamedTuple):
    exists: bool
    limit: Optional[Representation]


def _check_dims(m: Representation, ops: OnePS) -> None:
    if ops.dims != m.dims:
        raisef(
            ShapeError,
            "one-parameter subgroup of dims {} against {}",
            list(ops.dims),
            list(m.dims),
        )


def ops_limit(m: Representation, ops: OnePS, locus: str = "fil") -> Limit:
    """
    The limit of lambda(t) . m as t -> 0. In the graded basis the block of an
    arrow from weight n to weight k scales by t^(k - n); the limit exists when
    every block with k < n vanishes and keeps the blocks with k = n. The
    filtered locus also needs the limit's horizontal maps injective.
    """
    if locus not in {"fil", "rel"}:
        raisef(ValidationError, "unknown locus {!r}", locus)
    _check_dims(m, ops)
    ladder = m.ladder
    inverses = [inverse(b) for b in ops.basis]
    mats = []
    for a, mat in zip(ladder.arrows, m.mats):
        s, t = ladder.index(a.source), ladder.index(a.target)
        graded = inverses[t] @ mat @ ops.basis[s]
        ws, wt = ops.weights[s], ops.weights[t]
        data = []
        for i in range(graded.rows):
            row = []
            for j in range(graded.cols):
                x = graded[i, j]
                if wt[i] < ws[j] and x != 0:
                    return Limit(False, None)
                row.append(x if wt[i] == ws[j] else m.field.zero)
            data.append(tuple(row))
        mats.append(Matrix(m.field, graded.rows, graded.cols, tuple(data)))
    limit = Representation(ladder, m.field, m.dims, tuple(mats))
    if locus == "fil" and not betas_injective(limit):
        return Limit(False, None)
    return Limit(True, limit)


def filtration_from_ops(m: Representation, ops: OnePS) -> List[Subrep]:
    """
    The descending chain M_n = span of the basis vectors of weight >= n, over
    the distinct weights, ending in 0.
    """
    if not ops_limit(m, ops, "rel").exists:
        raisef(ValidationError, "the one-parameter subgroup has no limit")
    chain = []
    for n in ops.distinct_weights():
        chain.append(
            Subrep(
                m,
                tuple(
                    b.select_columns([k for k, x in enumerate(w) if x >= n])
                    for w, b in zip(ops.weights, ops.basis)
                ),
            )
        )
    if not chain or not chain[-1].is_zero:
        chain.append(Subrep.zero(m))
    return chain


def ops_from_filtration(chain: Sequence[Subrep]) -> OnePS:
    """
    The one-parameter subgroup giving weight i to the vectors of chain[i]
    outside chain[i + 1]. The chain is completed by M at the top and 0 at the
    bottom.
    """
    if not chain:
        raisef(ValidationError, "an empty chain has no ambient representation")
    m = chain[0].ambient
    steps: List[Subrep] = []
    for s in [Subrep.full(m)] + list(chain) + [Subrep.zero(m)]:
        if s.ambient != m:
            raisef(ValidationError, "chain steps live in different representations")
        if steps and not s <= steps[-1]:
            raisef(ValidationError, "chain is not descending")
        if not steps or s != steps[-1]:
            steps.append(s)
    weights = []
    bases = []
    for w, d in enumerate(m.dims):
        cols: List[Tuple] = []
        ws: List[int] = []
        current = Matrix.zeros(m.field, d, 0)
        for i in range(len(steps) - 2, -1, -1):
            extra = extend_basis(current, steps[i].basis[w])
            cols.extend(extra.columns())
            ws.extend([i] * extra.cols)
            current = Matrix.hstack(m.field, d, [current, extra])
        weights.append(tuple(ws))
        bases.append(Matrix.from_columns(m.field, d, cols))
    return OnePS(tuple(weights), tuple(bases))


def pairing_chi_lambda(theta: Sequence[int], ops: OnePS, d: Sequence[int]) -> int:
    """
    <chi_theta, lambda> = sum over w of theta_w times the sum of the weights
    at w.
    """
    if len(theta) != len(ops.weights) or len(d) != len(ops.weights):
        raisef(ShapeError, "theta, weights and dimension vector differ in length")
    if tuple(d) != ops.dims:
        raisef(
            ShapeError,
            "weights of dims {} against dimension vector {}",
            list(ops.dims),
            list(d),
        )
    return sum(t * sum(w) for t, w in zip(theta, ops.weights))


def _two_step(m: Representation, s: Subrep) -> OnePS:
    return ops_from_filtration([Subrep.full(m), s, Subrep.zero(m)])


def hilbert_mumford_witness(
    m: Representation,
    p: StabilityParams,
    locus: str = "fil",
    *,
    cap: int = DEFAULT_SUBREP_CAP,
) -> Optional[OnePS]:
    """
    A two-step one-parameter subgroup whose limit exists in the locus and
    whose pairing with chi_theta has the destabilizing sign, if any.
    """
    theta = derive_theta(p.degree, p.rank, m.dims)
    for s in enumerate_subreps(m, cap=cap):
        if s.is_zero or s.is_full:
            continue
        ops = _two_step(m, s)
        if not ops_limit(m, ops, locus).exists:
            continue
        if p.convention.sign * pairing_chi_lambda(theta, ops, m.dims) < 0:
            return ops
    return None


def hilbert_mumford_semistable(
    m: Representation,
    p: StabilityParams,
    locus: str = "fil",
    *,
    cap: int = DEFAULT_SUBREP_CAP,
) -> bool:
    return hilbert_mumford_witness(m, p, locus, cap=cap) is None


def is_closed_orbit_point(
    m: Representation, p: StabilityParams, *, cap: int = DEFAULT_SUBREP_CAP
) -> bool:
    return is_isomorphic(m, gr_max(m, p, cap=cap))


def git_equivalent(
    m: Representation,
    n: Representation,
    p: StabilityParams,
    *,
    cap: int = DEFAULT_SUBREP_CAP,
) -> bool:
    return s_equivalent(m, n, p, cap=cap)


def _group(m: Representation, cap: int) -> Iterator[Tuple[Matrix, ...]]:
    if not m.field.is_finite:
        raisef(ValidationError, "orbits can only be enumerated over a finite field")
    size = 1
    for d in m.dims:
        size *= count_general_linear(m.field.p, d)
    if size > cap:
        raisef(ResourceError, "group has {} elements, cap is {}", size, cap)
    factors = [list(general_linear(m.field, d)) for d in m.dims]
    return product(*factors)


def orbit(
    m: Representation, *, cap: int = DEFAULT_ORBIT_CAP
) -> FrozenSet[Representation]:
    """
    Every point g . m of the representation space.
    """
    points = frozenset(m.act(g) for g in _group(m, cap))
    logger.debug("orbit of dims %s has %d points", m.dims, len(points))
    return points


def degenerations(
    m: Representation, p: StabilityParams, *, cap: int = DEFAULT_SUBREP_CAP
) -> List[Representation]:
    """
    Limits of the two-step one-parameter subgroups of strict subobjects with
    zero pairing: the degenerations of m that stay in the filtered semistable
    locus.
    """
    theta = derive_theta(p.degree, p.rank, m.dims)
    found = []
    for s in enumerate_subreps(m, "strict", cap=cap):
        if s.is_zero or s.is_full:
            continue
        ops = _two_step(m, s)
        if pairing_chi_lambda(theta, ops, m.dims) != 0:
            continue
        limit = ops_limit(m, ops, "fil")
        if limit.exists and limit.limit is not None:
            found.append(limit.limit)
    return found


def orbit_closure(
    m: Representation, p: StabilityParams, *, cap: int = DEFAULT_ORBIT_CAP
) -> FrozenSet[Representation]:
    """
    The points reachable from m by the group action and iterated
    degenerations.
    """
    points: Set[Representation] = set()
    queue = [m]
    while queue:
        x = queue.pop(0)
        if x in points:
            continue
        points |= orbit(x, cap=cap)
        queue.extend(y for y in degenerations(x, p) if y not in points)
    return frozenset(points)


def is_closed_orbit_bruteforce(
    m: Representation, p: StabilityParams, *, cap: int = DEFAULT_ORBIT_CAP
) -> bool:
    points = orbit(m, cap=cap)
    return all(y in points for y in degenerations(m, p))


def git_equivalent_bruteforce(
    m: Representation,
    n: Representation,
    p: StabilityParams,
    *,
    cap: int = DEFAULT_ORBIT_CAP,
) -> bool:
    if m.dims != n.dims:
        return False
    return bool(orbit_closure(m, p, cap=cap) & orbit_closure(n, p, cap=cap))
