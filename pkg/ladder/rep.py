"""
Representations of a ladder quiver over an exact field, their morphisms and
subrepresentations, the filtered subcategory, torsion parts, kappa and the
two-term resolution by filtered representations.
"""

from dataclasses import dataclass
from functools import cached_property
import random
from typing import (
    Dict,
    List,
    Mapping,
    NamedTuple,
    Optional,
    Sequence,
    Tuple,
    Union,
)

from sympy.polys.matrices import DomainMatrix
from sympy.polys.rings import PolyRing

from ladder.error import raisef, ShapeError, ValidationError
from ladder.exactla import (
    column_echelon,
    complement,
    coordinates,
    det,
    Field,
    image as column_space,
    inverse,
    kernel as null_space,
    Matrix,
    rank,
    rank_kernel_image,
    Scalar,
    span_contains,
    sum_spaces,
    intersect_spaces,
)
from ladder.quiver import (
    LadderArrow,
    LadderQuiver,
    NormalPath,
    path_basis,
    PathElement,
    Vertex,
    word_normal_path,
)

DEFAULT_SEED = 0
DEFAULT_ISO_RETRIES = 12

VertexLike = Union[Vertex, str, Tuple[int, str]]
ArrowLike = Union[LadderArrow, str]


@dataclass(frozen=True)
class Representation:
    """
    A vector space per ladder vertex and a matrix per ladder arrow, both in the
    ladder's canonical order. The matrix of an arrow a has shape
    dims[t(a)] x dims[s(a)].
    """

    ladder: LadderQuiver
    field: Field
    dims: Tuple[int, ...]
    mats: Tuple[Matrix, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "dims", tuple(self.dims))
        object.__setattr__(self, "mats", tuple(self.mats))
        if len(self.dims) != len(self.ladder.vertices):
            raisef(
                ShapeError,
                "expected {} dimensions, got {}",
                len(self.ladder.vertices),
                len(self.dims),
            )
        if any(d < 0 for d in self.dims):
            raisef(ValidationError, "negative dimension in {}", list(self.dims))
        if len(self.mats) != len(self.ladder.arrows):
            raisef(
                ShapeError,
                "expected {} matrices, got {}",
                len(self.ladder.arrows),
                len(self.mats),
            )
        for a, m in zip(self.ladder.arrows, self.mats):
            shape = (self.dim(a.target), self.dim(a.source))
            if m.shape != shape or m.field != self.field:
                raisef(
                    ShapeError,
                    "{} needs a {}x{} matrix over {}, got {}x{} over {}",
                    a.name,
                    shape[0],
                    shape[1],
                    self.field,
                    m.rows,
                    m.cols,
                    m.field,
                )

    @classmethod
    def build(
        cls,
        ladder: LadderQuiver,
        field: Field,
        dims: Union[Sequence[int], Mapping[VertexLike, int]],
        maps: Optional[Mapping[ArrowLike, Union[Matrix, Sequence[Sequence]]]] = None,
    ) -> "Representation":
        """
        Build a representation from dimensions (a canonical-order sequence or a
        vertex mapping, missing vertices being zero) and arrow matrices (missing
        arrows being zero).
        """
        if isinstance(dims, Mapping):
            given = {ladder.vertex(v): d for v, d in dims.items()}
            dims = tuple(given.get(v, 0) for v in ladder.vertices)
        dims = tuple(dims)
        if len(dims) != len(ladder.vertices):
            raisef(
                ShapeError,
                "expected {} dimensions, got {}",
                len(ladder.vertices),
                len(dims),
            )
        mats = [
            Matrix.zeros(
                field, dims[ladder.index(a.target)], dims[ladder.index(a.source)]
            )
            for a in ladder.arrows
        ]
        for key, value in (maps or {}).items():
            a = ladder.arrow(key)
            cols = dims[ladder.index(a.source)]
            if not isinstance(value, Matrix):
                value = Matrix.of(field, value, cols=cols)
            mats[ladder.arrow_index(a)] = value
        return cls(ladder, field, dims, tuple(mats))

    @classmethod
    def zero(cls, ladder: LadderQuiver, field: Field) -> "Representation":
        return cls.build(ladder, field, [0] * len(ladder.vertices))

    @classmethod
    def simple(
        cls, ladder: LadderQuiver, field: Field, v: VertexLike
    ) -> "Representation":
        return cls.build(ladder, field, {ladder.vertex(v): 1})

    def dim(self, v: VertexLike) -> int:
        return self.dims[self.ladder.index(v)]

    def mat(self, a: ArrowLike) -> Matrix:
        return self.mats[self.ladder.arrow_index(a)]

    @property
    def total_dimension(self) -> int:
        return sum(self.dims)

    @property
    def is_zero(self) -> bool:
        return self.total_dimension == 0

    def path_matrix(self, path: NormalPath) -> Matrix:
        m = Matrix.identity(self.field, self.dim(path.source))
        for a in path.word(self.ladder):
            m = self.mat(a) @ m
        return m

    def evaluate(self, e: PathElement) -> Matrix:
        """
        The matrix by which the path element acts, from M(source) to
        M(target).
        """
        result = Matrix.zeros(self.field, self.dim(e.target), self.dim(e.source))
        for path, c in e.terms:
            result = result + self.path_matrix(path).scale(self.field(c))
        return result

    def horizontal(self, j: int, k: int, v: str) -> Matrix:
        """
        The composite of the horizontal maps from (j, v) to (k, v).
        """
        return self.path_matrix(NormalPath(Vertex(j, v), Vertex(k, v), ()))

    def direct_sum(self, *others: "Representation") -> "Representation":
        reps = (self,) + others
        for r in others:
            if r.ladder != self.ladder or r.field != self.field:
                raisef(ShapeError, "direct sum needs a common ladder and field")
        return Representation(
            self.ladder,
            self.field,
            tuple(sum(r.dims[i] for r in reps) for i in range(len(self.dims))),
            tuple(
                Matrix.block_diagonal(self.field, [r.mats[k] for r in reps])
                for k in range(len(self.mats))
            ),
        )

    def act(self, g: Sequence[Matrix]) -> "Representation":
        """
        The natural action of the product of general linear groups:
        M(a) -> g_t(a) M(a) g_s(a)^-1.
        """
        g = tuple(g)
        if len(g) != len(self.dims) or any(
            x.shape != (d, d) for x, d in zip(g, self.dims)
        ):
            raisef(
                ShapeError,
                "group element does not match dimensions {}",
                list(self.dims),
            )
        inverses = [inverse(x) for x in g]
        ladder = self.ladder
        return Representation(
            ladder,
            self.field,
            self.dims,
            tuple(
                g[ladder.index(a.target)] @ m @ inverses[ladder.index(a.source)]
                for a, m in zip(ladder.arrows, self.mats)
            ),
        )

    def reduce(self, field: Field) -> "Representation":
        """
        Reduce a rational representation into another field.
        """
        return Representation(
            self.ladder, field, self.dims, tuple(m.reduce(field) for m in self.mats)
        )


@dataclass(frozen=True)
class Morphism:
    """
    A vertexwise family of matrices commuting with every arrow.
    """

    source: Representation
    target: Representation
    comps: Tuple[Matrix, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "comps", tuple(self.comps))
        s, t = self.source, self.target
        if s.ladder != t.ladder or s.field != t.field:
            raisef(ShapeError, "morphism endpoints need a common ladder and field")
        if len(self.comps) != len(s.dims) or any(
            c.shape != (dt, ds) for c, ds, dt in zip(self.comps, s.dims, t.dims)
        ):
            raisef(
                ShapeError, "morphism components do not match the endpoint dimensions"
            )
        ladder = s.ladder
        for a, ms, mt in zip(ladder.arrows, s.mats, t.mats):
            fs = self.comps[ladder.index(a.source)]
            ft = self.comps[ladder.index(a.target)]
            if mt @ fs != ft @ ms:
                raisef(ValidationError, "morphism does not commute with {}", a.name)

    @classmethod
    def identity(cls, m: Representation) -> "Morphism":
        return cls(m, m, tuple(Matrix.identity(m.field, d) for d in m.dims))

    @classmethod
    def zero(cls, m: Representation, n: Representation) -> "Morphism":
        return cls(
            m,
            n,
            tuple(Matrix.zeros(m.field, dn, dm) for dm, dn in zip(m.dims, n.dims)),
        )

    def comp(self, v: VertexLike) -> Matrix:
        return self.comps[self.source.ladder.index(v)]

    def then(self, g: "Morphism") -> "Morphism":
        """
        The composite g after self.
        """
        if self.target != g.source:
            raisef(ShapeError, "morphisms are not composable")
        return Morphism(
            self.source, g.target, tuple(b @ a for a, b in zip(self.comps, g.comps))
        )

    def __add__(self, other: "Morphism") -> "Morphism":
        return Morphism(
            self.source,
            self.target,
            tuple(a + b for a, b in zip(self.comps, other.comps)),
        )

    def scale(self, c: Scalar) -> "Morphism":
        return Morphism(self.source, self.target, tuple(a.scale(c) for a in self.comps))

    @property
    def is_injective(self) -> bool:
        return all(rank(c) == c.cols for c in self.comps)

    @property
    def is_surjective(self) -> bool:
        return all(rank(c) == c.rows for c in self.comps)

    @property
    def is_isomorphism(self) -> bool:
        return self.is_injective and self.is_surjective


@dataclass(frozen=True)
class Subrep:
    """
    An arrow-closed tuple of subspaces, given by canonical column-echelon
    bases, so equal subrepresentations compare equal.
    """

    ambient: Representation
    basis: Tuple[Matrix, ...]

    def __post_init__(self) -> None:
        m = self.ambient
        basis = tuple(self.basis)
        if len(basis) != len(m.dims) or any(b.rows != d for b, d in zip(basis, m.dims)):
            raisef(
                ShapeError,
                "subspace bases do not match the dimensions {}",
                list(m.dims),
            )
        object.__setattr__(self, "basis", tuple(column_echelon(b) for b in basis))
        ladder = m.ladder
        for a, mat in zip(ladder.arrows, m.mats):
            image = mat @ self.basis[ladder.index(a.source)]
            if not span_contains(self.basis[ladder.index(a.target)], image):
                raisef(ValidationError, "subspaces are not closed under {}", a.name)

    @classmethod
    def zero(cls, m: Representation) -> "Subrep":
        return cls(m, tuple(Matrix.zeros(m.field, d, 0) for d in m.dims))

    @classmethod
    def full(cls, m: Representation) -> "Subrep":
        return cls(m, tuple(Matrix.identity(m.field, d) for d in m.dims))

    @classmethod
    def generated(
        cls, m: Representation, vectors: Mapping[VertexLike, Matrix]
    ) -> "Subrep":
        """
        The smallest subrepresentation containing the given column vectors.
        """
        ladder = m.ladder
        spans = [Matrix.zeros(m.field, d, 0) for d in m.dims]
        for v, vecs in vectors.items():
            i = ladder.index(v)
            spans[i] = sum_spaces(spans[i], vecs)
        for v in ladder.topological_order:
            i = ladder.index(v)
            for a in ladder.outgoing(v):
                t = ladder.index(a.target)
                spans[t] = sum_spaces(spans[t], m.mat(a) @ spans[i])
        return cls(m, tuple(spans))

    @property
    def dims(self) -> Tuple[int, ...]:
        return tuple(b.cols for b in self.basis)

    @property
    def total_dimension(self) -> int:
        return sum(self.dims)

    @property
    def is_zero(self) -> bool:
        return self.total_dimension == 0

    @property
    def is_full(self) -> bool:
        return self.dims == self.ambient.dims

    def __le__(self, other: "Subrep") -> bool:
        return all(span_contains(b, a) for a, b in zip(self.basis, other.basis))

    def __lt__(self, other: "Subrep") -> bool:
        return self <= other and self != other

    def __add__(self, other: "Subrep") -> "Subrep":
        return Subrep(
            self.ambient,
            tuple(sum_spaces(a, b) for a, b in zip(self.basis, other.basis)),
        )

    def __and__(self, other: "Subrep") -> "Subrep":
        return Subrep(
            self.ambient,
            tuple(intersect_spaces(a, b) for a, b in zip(self.basis, other.basis)),
        )

    def representation(self) -> Representation:
        """
        The subrepresentation itself, in the coordinates of its basis.
        """
        m = self.ambient
        ladder = m.ladder
        mats = tuple(
            coordinates(
                self.basis[ladder.index(a.target)],
                mat @ self.basis[ladder.index(a.source)],
            )
            for a, mat in zip(ladder.arrows, m.mats)
        )
        return Representation(ladder, m.field, self.dims, mats)

    def inclusion(self) -> Morphism:
        return Morphism(self.representation(), self.ambient, self.basis)

    @cached_property
    def _sections(self) -> Tuple[Tuple[Matrix, Matrix], ...]:
        # per vertex: (projection onto the quotient, section of the projection)
        result = []
        for b in self.basis:
            c = complement(b)
            full = Matrix.hstack(b.field, b.rows, [b, c])
            projection = inverse(full).select_rows(list(range(b.cols, b.rows)))
            result.append((projection, c))
        return tuple(result)

    def quotient(self) -> Representation:
        m = self.ambient
        ladder = m.ladder
        mats = []
        for a, mat in zip(ladder.arrows, m.mats):
            projection, _ = self._sections[ladder.index(a.target)]
            _, section = self._sections[ladder.index(a.source)]
            mats.append(projection @ mat @ section)
        dims = tuple(d - k for d, k in zip(m.dims, self.dims))
        return Representation(ladder, m.field, dims, tuple(mats))

    def quotient_map(self) -> Morphism:
        return Morphism(
            self.ambient, self.quotient(), tuple(p for p, _ in self._sections)
        )

    def preimage(self, sub: "Subrep") -> "Subrep":
        """
        The preimage of a subrepresentation of quotient() under the quotient
        map.
        """
        if sub.ambient != self.quotient():
            raisef(ValidationError, "subrepresentation does not live in this quotient")
        return Subrep(
            self.ambient,
            tuple(
                sum_spaces(b, section @ t)
                for b, (_, section), t in zip(self.basis, self._sections, sub.basis)
            ),
        )

    def image_in_quotient(self, larger: "Subrep") -> "Subrep":
        """
        The image of a larger subrepresentation in quotient().
        """
        return Subrep(
            self.quotient(),
            tuple(p @ b for (p, _), b in zip(self._sections, larger.basis)),
        )

    def restrict(self, smaller: "Subrep") -> "Subrep":
        """
        A smaller subrepresentation seen inside representation().
        """
        if not smaller <= self:
            raisef(ValidationError, "subrepresentation is not contained in this one")
        return Subrep(
            self.representation(),
            tuple(coordinates(b, s) for b, s in zip(self.basis, smaller.basis)),
        )

    def relative_quotient(self, smaller: "Subrep") -> Representation:
        """
        The subquotient self / smaller.
        """
        return self.restrict(smaller).quotient()

    @property
    def is_strict(self) -> bool:
        """
        Whether the inclusion is a strict monomorphism: the vertexwise quotient
        is again filtered.
        """
        return betas_injective(self.quotient())


def check_relations(m: Representation) -> bool:
    for r in m.ladder.relations:
        (a1, b1), (b2, a2) = r.lhs, r.rhs
        if m.mat(b1) @ m.mat(a1) != m.mat(a2) @ m.mat(b2):
            return False
    return True


def betas_injective(m: Representation) -> bool:
    return all(
        rank(mat) == mat.cols
        for a, mat in zip(m.ladder.arrows, m.mats)
        if a.kind == "beta"
    )


def is_filtered(m: Representation) -> bool:
    if not check_relations(m):
        raisef(ValidationError, "representation does not satisfy the ladder relations")
    return betas_injective(m)


def iota(m: Representation) -> Representation:
    """
    The inclusion of filtered representations among relation-satisfying ones.
    """
    if not is_filtered(m):
        raisef(ValidationError, "representation is not filtered")
    return m


def require_filtered(m: Representation, what: str = "representation") -> None:
    if not is_filtered(m):
        raisef(ValidationError, "{} is not filtered", what)


def _same_category(m: Representation, n: Representation) -> None:
    if m.ladder != n.ladder or m.field != n.field:
        raisef(ShapeError, "representations need a common ladder and field")


def _hom_basis(m: Representation, n: Representation) -> List[Tuple[Matrix, ...]]:
    _same_category(m, n)
    f = m.field
    ladder = m.ladder
    offsets = []
    total = 0
    for dm, dn in zip(m.dims, n.dims):
        offsets.append(total)
        total += dm * dn

    def var(w: int, i: int, j: int) -> int:
        return offsets[w] + i * m.dims[w] + j

    equations: List[List[Scalar]] = []
    for a, ma, na in zip(ladder.arrows, m.mats, n.mats):
        s, t = ladder.index(a.source), ladder.index(a.target)
        for r in range(n.dims[t]):
            for c in range(m.dims[s]):
                row = [f.zero] * total
                for k in range(n.dims[s]):
                    x = na[r, k]
                    if x != 0:
                        idx = var(s, k, c)
                        row[idx] = f.add(row[idx], x)
                for k in range(m.dims[t]):
                    x = ma[k, c]
                    if x != 0:
                        idx = var(t, r, k)
                        row[idx] = f.sub(row[idx], x)
                equations.append(row)
    system = Matrix(f, len(equations), total, tuple(tuple(r) for r in equations))
    result = []
    for vec in rank_kernel_image(system).kernel.columns():
        comps = []
        for w, (dm, dn) in enumerate(zip(m.dims, n.dims)):
            o = offsets[w]
            data = tuple(
                tuple(vec[o + i * dm + j] for j in range(dm)) for i in range(dn)
            )
            comps.append(Matrix(f, dn, dm, data))
        result.append(tuple(comps))
    return result


def hom_space(m: Representation, n: Representation) -> List[Morphism]:
    """
    A basis of Hom(m, n).
    """
    return [Morphism(m, n, comps) for comps in _hom_basis(m, n)]


def _combine(
    field: Field, basis: Sequence[Tuple[Matrix, ...]], coeffs: Sequence[Scalar]
) -> List[Matrix]:
    result = []
    for w in range(len(basis[0])):
        acc = Matrix.zeros(field, basis[0][w].rows, basis[0][w].cols)
        for c, b in zip(coeffs, basis):
            if c != 0:
                acc = acc + b[w].scale(c)
        result.append(acc)
    return result


def _generic_invertible(field: Field, basis: Sequence[Tuple[Matrix, ...]]) -> bool:
    # The generic element sum t_i b_i over K[t_0, ..., t_{k-1}]; some
    # specialization over the algebraic closure is invertible iff no vertex
    # block has a vanishing determinant.
    ring = PolyRing(f"t0:{len(basis)}", field.domain)
    units = [tuple(int(i == k) for i in range(len(basis))) for k in range(len(basis))]
    for w in range(len(basis[0])):
        size = basis[0][w].rows
        if not size:
            continue
        rows = []
        for i in range(size):
            row = []
            for j in range(size):
                terms = {
                    unit: field.to_domain(b[w][i, j])
                    for unit, b in zip(units, basis)
                    if b[w][i, j] != 0
                }
                row.append(ring.from_dict(terms))
            rows.append(row)
        if not DomainMatrix(rows, (size, size), ring.to_domain()).det():
            return False
    return True


def is_isomorphic(
    m: Representation,
    n: Representation,
    *,
    seed: int = DEFAULT_SEED,
    retries: int = DEFAULT_ISO_RETRIES,
) -> bool:
    """
    Whether m and n are isomorphic.

    A random element of Hom(m, n) is invertible with high probability when
    the two are isomorphic, so random elements (from a growing integer box
    over Q) are tried first. Otherwise the answer comes from the generic
    element of Hom(m, n): m and n are isomorphic over the algebraic closure
    exactly when its vertex determinants are nonzero polynomials, and
    representations isomorphic over an extension are isomorphic over the
    base field.
    """
    _same_category(m, n)
    if m.dims != n.dims:
        return False
    if m.is_zero:
        return True
    basis = _hom_basis(m, n)
    if not basis or len(basis) != len(_hom_basis(n, m)):
        return False
    f = m.field

    def invertible(coeffs: Sequence[Scalar]) -> bool:
        return all(det(c) != 0 for c in _combine(f, basis, coeffs) if c.rows)

    rng = random.Random(seed)
    attempts = retries * 8 if f.is_finite else retries
    for attempt in range(attempts):
        box = 2 ** (attempt + 1)
        if invertible([f.random(rng, box) for _ in basis]):
            return True
    return _generic_invertible(f, basis)


def kernel(f: Morphism) -> Subrep:
    return Subrep(f.source, tuple(null_space(c) for c in f.comps))


def image(f: Morphism) -> Subrep:
    return Subrep(f.target, tuple(column_space(c) for c in f.comps))


def cokernel_ambient(f: Morphism) -> Representation:
    return image(f).quotient()


def cokernel_filtered(f: Morphism) -> Representation:
    """
    The cokernel in the filtered category: at (j, v), the image of the
    target's (j, v) space in the level-l ambient cokernel.
    """
    require_filtered(f.source, "source")
    require_filtered(f.target, "target")
    return kappa(cokernel_ambient(f))


def is_strict_mono(f: Morphism) -> bool:
    if not f.is_injective:
        raisef(ValidationError, "morphism is not injective")
    require_filtered(f.source, "source")
    require_filtered(f.target, "target")
    return betas_injective(cokernel_ambient(f))


def is_torsion(b: Representation) -> bool:
    return all(b.dim(v) == 0 for v in b.ladder.sink_vertices)


def torsion_part(b: Representation) -> Subrep:
    """
    B_tor: at (j, v) the kernel of the horizontal composite (j, v) -> (l, v).
    """
    ladder = b.ladder
    top = ladder.levels
    return Subrep(
        b,
        tuple(null_space(b.horizontal(v.level, top, v.base)) for v in ladder.vertices),
    )


def kappa(b: Representation) -> Representation:
    """
    The filtered representation B / B_tor, left adjoint to iota.
    """
    return torsion_part(b).quotient()


class Resolution(NamedTuple):
    n: Representation
    nprime: Representation
    f: Morphism


def tf_resolution(b: Representation) -> Resolution:
    """
    The resolution 0 -> N' -> N -> B -> 0 by filtered representations, with
    N(k, v) the direct sum of B(j, v) for j <= k.
    """
    ladder = b.ladder
    fld = b.field

    def blocks(v: Vertex) -> List[int]:
        return [b.dim(Vertex(j, v.base)) for j in range(1, v.level + 1)]

    dims = tuple(sum(blocks(v)) for v in ladder.vertices)
    mats = []
    for a in ladder.arrows:
        if a.kind == "beta":
            src = sum(blocks(a.source))
            new = b.dim(a.target)
            mats.append(
                Matrix.vstack(
                    fld, src, [Matrix.identity(fld, src), Matrix.zeros(fld, new, src)]
                )
            )
        else:
            mats.append(
                Matrix.block_diagonal(
                    fld,
                    [b.mat(ladder.alpha(j, a.label)) for j in range(1, a.level + 1)],
                )
            )
    n = Representation(ladder, fld, dims, tuple(mats))
    comps = tuple(
        Matrix.hstack(
            fld,
            b.dim(v),
            [b.horizontal(j, v.level, v.base) for j in range(1, v.level + 1)],
        )
        for v in ladder.vertices
    )
    f = Morphism(n, b, comps)
    return Resolution(n, kernel(f).representation(), f)


class ProjectiveLabel(NamedTuple):
    """
    A basis vector of a sum of projectives: the path from generator `vertex`
    in its `copy`-th summand.
    """

    vertex: Vertex
    copy: int
    path: NormalPath


def projective_sum(
    ladder: LadderQuiver, field: Field, multiplicities: Sequence[int]
) -> Tuple[Representation, Tuple[Tuple[ProjectiveLabel, ...], ...]]:
    """
    The direct sum of multiplicities[w] copies of the indecomposable projective
    at each vertex w, with the label of every basis vector at every vertex.
    Arrows act on the path basis by post-composition.
    """
    if len(multiplicities) != len(ladder.vertices):
        raisef(ShapeError, "expected {} multiplicities", len(ladder.vertices))
    labels = tuple(
        tuple(
            ProjectiveLabel(w, i, p)
            for w, mult in zip(ladder.vertices, multiplicities)
            for i in range(mult)
            for p in path_basis(ladder, w, u)
        )
        for u in ladder.vertices
    )
    index: List[Dict[ProjectiveLabel, int]] = [
        {lab: k for k, lab in enumerate(ls)} for ls in labels
    ]
    mats = []
    for a in ladder.arrows:
        s, t = ladder.index(a.source), ladder.index(a.target)
        step = word_normal_path(ladder, a.source, [a])
        data = [[field.zero] * len(labels[s]) for _ in labels[t]]
        for k, lab in enumerate(labels[s]):
            moved = ProjectiveLabel(lab.vertex, lab.copy, lab.path.then(step))
            data[index[t][moved]][k] = field.one
        mats.append(
            Matrix(field, len(labels[t]), len(labels[s]), tuple(tuple(r) for r in data))
        )
    dims = tuple(len(ls) for ls in labels)
    return Representation(ladder, field, dims, tuple(mats)), labels


def indecomposable_projective(
    ladder: LadderQuiver, w: VertexLike, field: Optional[Field] = None
) -> Representation:
    """
    P'_w, the projective cover of the simple at w among relation-satisfying
    representations; its space at u has the normal-form paths w -> u as basis.
    """
    w = ladder.vertex(w)
    mult = [1 if v == w else 0 for v in ladder.vertices]
    return projective_sum(ladder, field or Field.rationals(), mult)[0]
