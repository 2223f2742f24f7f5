"""
Quivers, ladder quivers A_l x Q with their commutation relations, and path
normal forms.

A path of the ladder modulo the commutation relations is determined by its
source, its number of horizontal steps and the sequence of vertical arrow
labels it passes. Its normal form takes every horizontal step first and then
walks the base path at the top level.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
import random
from typing import Dict, Iterable, List, NamedTuple, Sequence, Tuple, Union

from ladder.error import raisef, ShapeError, ValidationError
from ladder.strconv import parse_vertex

CyclicQuiverError = ValidationError.from_string("quiver has an oriented cycle")


class Arrow(NamedTuple):
    name: str
    source: str
    target: str


@dataclass(frozen=True)
class Quiver:
    """
    A finite quiver without oriented cycles.
    """

    vertices: Tuple[str, ...]
    arrows: Tuple[Arrow, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "vertices", tuple(self.vertices))
        object.__setattr__(self, "arrows", tuple(Arrow(*a) for a in self.arrows))
        if len(set(self.vertices)) != len(self.vertices):
            raisef(ValidationError, "duplicate vertex in {}", list(self.vertices))
        names = [a.name for a in self.arrows]
        if len(set(names)) != len(names):
            raisef(ValidationError, "duplicate arrow name in {}", names)
        declared = set(self.vertices)
        for a in self.arrows:
            if a.source not in declared or a.target not in declared:
                raisef(
                    ValidationError, "arrow {} references an undeclared vertex", a.name
                )
        # raises on a cycle
        self.topological_order

    @classmethod
    def trivial(cls, name: str = "v") -> "Quiver":
        return cls((name,))

    @classmethod
    def linear(cls, n: int) -> "Quiver":
        """
        The equioriented A_n quiver q1 -> q2 -> ... -> qn.
        """
        if n < 1:
            raisef(ValidationError, "A_n needs n >= 1, got {}", n)
        return cls(
            tuple(f"q{i}" for i in range(1, n + 1)),
            tuple(Arrow(f"a{i}", f"q{i}", f"q{i + 1}") for i in range(1, n)),
        )

    @classmethod
    def square(cls) -> "Quiver":
        """
        The commutative-square shape v1 -> v2, v3 -> v4 (no relations).
        """
        return cls(
            ("v1", "v2", "v3", "v4"),
            (
                Arrow("a", "v1", "v2"),
                Arrow("b", "v1", "v3"),
                Arrow("c", "v2", "v4"),
                Arrow("d", "v3", "v4"),
            ),
        )

    @classmethod
    def random_acyclic(
        cls, rng: random.Random, max_vertices: int = 6, density: float = 0.4
    ) -> "Quiver":
        """
        A random acyclic quiver: arrows only go from earlier to later vertices
        of a shuffled order.
        """
        n = rng.randint(1, max_vertices)
        names = [f"x{i}" for i in range(n)]
        order = names[:]
        rng.shuffle(order)
        arrows = []
        for i in range(n):
            for j in range(i + 1, n):
                while rng.random() < density and len(arrows) < 2 * n:
                    arrows.append(Arrow(f"e{len(arrows)}", order[i], order[j]))
                    if rng.random() < 0.7:
                        break
        return cls(tuple(names), tuple(arrows))

    @cached_property
    def topological_order(self) -> Tuple[str, ...]:
        indegree = {v: 0 for v in self.vertices}
        for a in self.arrows:
            indegree[a.target] += 1
        order: List[str] = []
        ready = [v for v in self.vertices if indegree[v] == 0]
        while ready:
            v = ready.pop(0)
            order.append(v)
            for a in self.outgoing(v):
                indegree[a.target] -= 1
                if indegree[a.target] == 0:
                    ready.append(a.target)
        if len(order) != len(self.vertices):
            raise CyclicQuiverError()
        return tuple(order)

    def arrow(self, name: str) -> Arrow:
        for a in self.arrows:
            if a.name == name:
                return a
        raisef(ValidationError, "unknown arrow {}", name)

    def outgoing(self, v: str) -> List[Arrow]:
        return [a for a in self.arrows if a.source == v]

    def incoming(self, v: str) -> List[Arrow]:
        return [a for a in self.arrows if a.target == v]

    def paths(self, source: str, target: str) -> List[Tuple[str, ...]]:
        """
        Every path from source to target as a tuple of arrow names; the trivial
        path is the empty tuple.
        """
        found: List[Tuple[str, ...]] = []

        def walk(v: str, prefix: Tuple[str, ...]) -> None:
            if v == target:
                found.append(prefix)
            for a in self.outgoing(v):
                walk(a.target, prefix + (a.name,))

        walk(source, ())
        return found


class Vertex(NamedTuple):
    level: int
    base: str

    def __str__(self) -> str:
        return f"{self.level},{self.base}"


class LadderArrow(NamedTuple):
    kind: str
    level: int
    label: str
    source: Vertex
    target: Vertex

    @property
    def name(self) -> str:
        return f"{self.kind}_{self.level}^{self.label}"


class Relation(NamedTuple):
    """
    The commutation alpha_k^a then beta_k^t(a) == beta_k^s(a) then
    alpha_{k+1}^a, with both sides in traversal order.
    """

    lhs: Tuple[LadderArrow, LadderArrow]
    rhs: Tuple[LadderArrow, LadderArrow]


@dataclass(frozen=True)
class LadderQuiver:
    """
    The ladder A_l x Q. Level l is the sink copy of Q. Vertices are ordered
    level-major, then by the base quiver's vertex order; every dimension and
    degree vector uses that order.
    """

    base: Quiver
    levels: int

    def __post_init__(self) -> None:
        if self.levels < 1:
            raisef(
                ValidationError,
                "a ladder needs at least one level, got {}",
                self.levels,
            )

    @cached_property
    def vertices(self) -> Tuple[Vertex, ...]:
        return tuple(
            Vertex(j, v) for j in range(1, self.levels + 1) for v in self.base.vertices
        )

    @cached_property
    def _vertex_index(self) -> Dict[Vertex, int]:
        return {v: i for i, v in enumerate(self.vertices)}

    @cached_property
    def arrows(self) -> Tuple[LadderArrow, ...]:
        alphas = [
            LadderArrow("alpha", j, a.name, Vertex(j, a.source), Vertex(j, a.target))
            for j in range(1, self.levels + 1)
            for a in self.base.arrows
        ]
        betas = [
            LadderArrow("beta", j, v, Vertex(j, v), Vertex(j + 1, v))
            for j in range(1, self.levels)
            for v in self.base.vertices
        ]
        return tuple(alphas + betas)

    @cached_property
    def _arrow_index(self) -> Dict[str, int]:
        return {a.name: i for i, a in enumerate(self.arrows)}

    @cached_property
    def relations(self) -> Tuple[Relation, ...]:
        return tuple(
            Relation(
                (self.alpha(k, a.name), self.beta(k, a.target)),
                (self.beta(k, a.source), self.alpha(k + 1, a.name)),
            )
            for k in range(1, self.levels)
            for a in self.base.arrows
        )

    @cached_property
    def topological_order(self) -> Tuple[Vertex, ...]:
        return tuple(
            Vertex(j, v)
            for j in range(1, self.levels + 1)
            for v in self.base.topological_order
        )

    def vertex(self, v: Union[Vertex, str, Tuple[int, str]]) -> Vertex:
        """
        Resolve a vertex given as a Vertex, a (level, base) pair or a "j,v"
        string.
        """
        if isinstance(v, str):
            v = parse_vertex(v)
        vertex = Vertex(*v)
        if vertex not in self._vertex_index:
            raisef(ValidationError, "unknown vertex {}", vertex)
        return vertex

    def index(self, v: Union[Vertex, str, Tuple[int, str]]) -> int:
        return self._vertex_index[self.vertex(v)]

    def arrow(self, a: Union[LadderArrow, str]) -> LadderArrow:
        name = a.name if isinstance(a, LadderArrow) else a
        if name not in self._arrow_index:
            raisef(ValidationError, "unknown arrow {}", name)
        return self.arrows[self._arrow_index[name]]

    def arrow_index(self, a: Union[LadderArrow, str]) -> int:
        return self._arrow_index[self.arrow(a).name]

    def alpha(self, j: int, a: str) -> LadderArrow:
        return self.arrow(f"alpha_{j}^{a}")

    def beta(self, j: int, v: str) -> LadderArrow:
        return self.arrow(f"beta_{j}^{v}")

    def incoming(self, v: Vertex) -> List[LadderArrow]:
        return [a for a in self.arrows if a.target == v]

    def outgoing(self, v: Vertex) -> List[LadderArrow]:
        return [a for a in self.arrows if a.source == v]

    @property
    def sink_vertices(self) -> Tuple[Vertex, ...]:
        return tuple(Vertex(self.levels, v) for v in self.base.vertices)

    def as_quiver(self) -> Quiver:
        return Quiver(
            tuple(str(v) for v in self.vertices),
            tuple(Arrow(a.name, str(a.source), str(a.target)) for a in self.arrows),
        )


def build_ladder(q: Quiver, levels: int) -> LadderQuiver:
    return LadderQuiver(q, levels)


class NormalPath(NamedTuple):
    """
    A ladder path in normal form: the horizontal steps from source.level to
    target.level along source.base, then the base path qpath at the top level.
    """

    source: Vertex
    target: Vertex
    qpath: Tuple[str, ...]

    @property
    def length(self) -> int:
        return self.target.level - self.source.level + len(self.qpath)

    def word(self, ladder: LadderQuiver) -> Tuple[LadderArrow, ...]:
        v = self.source.base
        steps = [ladder.beta(j, v) for j in range(self.source.level, self.target.level)]
        for name in self.qpath:
            steps.append(ladder.alpha(self.target.level, name))
        return tuple(steps)

    def then(self, other: "NormalPath") -> "NormalPath":
        if self.target != other.source:
            raisef(
                ShapeError,
                "cannot compose a path ending at {} with one starting at {}",
                self.target,
                other.source,
            )
        return NormalPath(self.source, other.target, self.qpath + other.qpath)


def path_basis(
    ladder: LadderQuiver, source: Vertex, target: Vertex
) -> List[NormalPath]:
    """
    The normal-form paths from source to target, a basis of e_t K(A_l x Q)/I e_s.
    """
    source, target = ladder.vertex(source), ladder.vertex(target)
    if target.level < source.level:
        return []
    return [
        NormalPath(source, target, qp)
        for qp in ladder.base.paths(source.base, target.base)
    ]


def _check_word(ladder: LadderQuiver, word: Sequence[LadderArrow]) -> None:
    for a, b in zip(word, word[1:]):
        if a.target != b.source:
            raisef(
                ShapeError,
                "{} ends at {} but {} starts at {}",
                a.name,
                a.target,
                b.name,
                b.source,
            )


def word_normal_path(
    ladder: LadderQuiver, source: Vertex, word: Sequence[LadderArrow]
) -> NormalPath:
    """
    The normal form of a composable word of ladder arrows, in traversal order.
    """
    word = [ladder.arrow(a) for a in word]
    _check_word(ladder, word)
    if word and word[0].source != source:
        raisef(ShapeError, "word starts at {}, not {}", word[0].source, source)
    target = word[-1].target if word else source
    return NormalPath(source, target, tuple(a.label for a in word if a.kind == "alpha"))


def rewrite_word(
    ladder: LadderQuiver, word: Sequence[LadderArrow]
) -> Tuple[LadderArrow, ...]:
    """
    Rewrite a word with the literal relation rule
    [alpha_k^a, beta_k^t(a)] -> [beta_k^s(a), alpha_{k+1}^a] until no rule
    applies.
    """
    rules = {r.lhs: r.rhs for r in ladder.relations}
    current = [ladder.arrow(a) for a in word]
    _check_word(ladder, current)
    changed = True
    while changed:
        changed = False
        for i in range(len(current) - 1):
            pair = (current[i], current[i + 1])
            if pair in rules:
                current[i : i + 2] = list(rules[pair])
                changed = True
                break
    return tuple(current)


def enumerate_words(
    ladder: LadderQuiver, source: Vertex, target: Vertex
) -> List[Tuple[LadderArrow, ...]]:
    """
    Every word of ladder arrows from source to target, before any rewriting.
    """
    found: List[Tuple[LadderArrow, ...]] = []

    def walk(v: Vertex, prefix: Tuple[LadderArrow, ...]) -> None:
        if v == target:
            found.append(prefix)
        for a in ladder.outgoing(v):
            walk(a.target, prefix + (a,))

    walk(ladder.vertex(source), ())
    return found


@dataclass(frozen=True)
class PathElement:
    """
    A finite linear combination of normal-form paths sharing their endpoints.
    """

    source: Vertex
    target: Vertex
    terms: Tuple[Tuple[NormalPath, Fraction], ...] = field(default=())

    def __post_init__(self) -> None:
        for path, _ in self.terms:
            if path.source != self.source or path.target != self.target:
                raisef(
                    ShapeError,
                    "term {} -> {} does not match element {} -> {}",
                    path.source,
                    path.target,
                    self.source,
                    self.target,
                )

    @classmethod
    def zero(cls, source: Vertex, target: Vertex) -> "PathElement":
        return cls(source, target, ())

    @classmethod
    def trivial(cls, v: Vertex) -> "PathElement":
        return cls(v, v, ((NormalPath(v, v, ()), Fraction(1)),))

    @classmethod
    def of_path(
        cls, path: NormalPath, coefficient: Union[int, Fraction] = 1
    ) -> "PathElement":
        return _canonical(path.source, path.target, [(path, Fraction(coefficient))])

    @classmethod
    def of_word(
        cls,
        ladder: LadderQuiver,
        source: Vertex,
        word: Sequence[Union[LadderArrow, str]],
        coefficient: Union[int, Fraction] = 1,
    ) -> "PathElement":
        path = word_normal_path(ladder, source, [ladder.arrow(a) for a in word])
        return cls.of_path(path, coefficient)

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def coefficient(self, path: NormalPath) -> Fraction:
        return dict(self.terms).get(path, Fraction(0))

    def __add__(self, other: "PathElement") -> "PathElement":
        if (self.source, self.target) != (other.source, other.target):
            raisef(ShapeError, "cannot add elements with different endpoints")
        return _canonical(
            self.source, self.target, list(self.terms) + list(other.terms)
        )

    def scale(self, c: Union[int, Fraction]) -> "PathElement":
        return _canonical(self.source, self.target, [(p, x * c) for p, x in self.terms])

    def then(self, other: "PathElement") -> "PathElement":
        """
        The product "first self, then other".
        """
        if self.target != other.source:
            raisef(
                ShapeError,
                "cannot compose an element ending at {} with one starting at {}",
                self.target,
                other.source,
            )
        return _canonical(
            self.source,
            other.target,
            [(p.then(q), x * y) for p, x in self.terms for q, y in other.terms],
        )


def _canonical(
    source: Vertex, target: Vertex, terms: Iterable[Tuple[NormalPath, Fraction]]
) -> PathElement:
    merged: Dict[NormalPath, Fraction] = {}
    for path, c in terms:
        merged[path] = merged.get(path, Fraction(0)) + Fraction(c)
    kept = [(p, c) for p, c in merged.items() if c != 0]
    return PathElement(source, target, tuple(sorted(kept, key=lambda t: t[0].qpath)))


def normal_form(
    ladder: LadderQuiver, e: Union[PathElement, Sequence[Union[LadderArrow, str]]]
) -> PathElement:
    """
    The normal form of a path element, or of a raw composable word of ladder
    arrows. Normal forms are idempotent and identical exactly when the inputs
    agree modulo the commutation relations.
    """
    if isinstance(e, PathElement):
        return _canonical(e.source, e.target, e.terms)
    word = [ladder.arrow(a) for a in e]
    if not word:
        raisef(ShapeError, "an empty word has no endpoints; use PathElement.trivial")
    return PathElement.of_word(ladder, word[0].source, word)
