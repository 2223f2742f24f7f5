"""
Representations of ladder quivers A_l x Q and their stability.

# Ladders

A ladder stacks l copies of a finite acyclic base quiver Q, joined by
horizontal arrows beta_j^v : (j, v) -> (j + 1, v), with every square
commuting. Vertices are listed level by level:

    from ladder import build_ladder, Quiver
    lad = build_ladder(Quiver.square(), 2)

# Representations

A representation assigns a vector space over a field (Q or F_p) to every
vertex and a matrix to every arrow. It lives in R_rel when it satisfies the
commutativity relations, and in R_fil when its horizontal maps are also
injective: such a representation is a filtered representation of Q.

    from ladder import QQ, Representation
    m = Representation.build(lad, QQ, dims, {"beta_1^1": [[1]]})

# Stability

Degrees Theta and rank weights r give the slope mu = Theta(d) / rk(d) and
the character theta_w = Theta(d) r_w - rk(d) Theta_w. Semistability is
decided by enumerating subrepresentations over a finite field, and over Q
by reduction modulo several good primes.

Harder-Narasimhan and Jordan-Holder filtrations, S-equivalence, one-parameter
subgroups and the Hilbert-Mumford criterion, and determinantal semi-invariant
certificates build on top of that.

All expected failures raise instances of ladder.Error, carrying an error id
and an exit code. ladder.Panic is raised for internal invariant violations
and does not inherit from ladder.Error.
"""

from ladder.error import (  # noqa F401
    DomainError,
    Error,
    InconclusiveError,
    ResourceError,
    ShapeError,
    ValidationError,
)
from ladder.exactla import Field, Matrix, QQ  # noqa F401
from ladder.filtr import (  # noqa F401
    classify_point_type,
    Filtration,
    gr_max,
    hn_filtration,
    jh_filtration,
    PointType,
    s_equivalent,
)
from ladder.git import (  # noqa F401
    hilbert_mumford_semistable,
    is_closed_orbit_point,
    OnePS,
    ops_limit,
)
from ladder.panic import Panic  # noqa F401
from ladder.quiver import build_ladder, LadderQuiver, Quiver  # noqa F401
from ladder.rep import (  # noqa F401
    betas_injective,
    check_relations,
    Morphism,
    Representation,
    Subrep,
)
from ladder.semiinv import (  # noqa F401
    certificate_search,
    minimal_presentation,
    Presentation,
    theta_value,
)
from ladder.stability import (  # noqa F401
    Convention,
    decide,
    DegreeVector,
    RankWeights,
    StabilityParams,
)
