import pytest

from ladder.error import ShapeError, ValidationError
from ladder.quiver import (
    Arrow,
    build_ladder,
    CyclicQuiverError,
    enumerate_words,
    NormalPath,
    normal_form,
    path_basis,
    PathElement,
    Quiver,
    rewrite_word,
    Vertex,
    word_normal_path,
)


def test_base_quivers() -> None:
    assert Quiver.trivial().vertices == ("v",)
    assert Quiver.linear(3).arrows == (
        Arrow("a1", "q1", "q2"),
        Arrow("a2", "q2", "q3"),
    )
    square = Quiver.square()
    assert square.paths("v1", "v4") == [("a", "c"), ("b", "d")]
    assert square.paths("v2", "v2") == [()]
    assert square.paths("v4", "v1") == []
    assert square.topological_order[0] == "v1"
    assert square.topological_order[-1] == "v4"


@pytest.mark.parametrize(
    "vertices,arrows",
    [
        (("x", "x"), ()),
        (("x", "y"), (Arrow("e", "x", "y"), Arrow("e", "y", "x"))),
        (("x",), (Arrow("e", "x", "z"),)),
    ],
)
def test_invalid_quivers(vertices, arrows) -> None:
    with pytest.raises(ValidationError):
        Quiver(vertices, arrows)


def test_cyclic_quiver() -> None:
    with pytest.raises(CyclicQuiverError):
        Quiver(("x", "y"), (Arrow("e", "x", "y"), Arrow("f", "y", "x")))
    with pytest.raises(ValidationError):
        Quiver(("x",), (Arrow("loop", "x", "x"),))


def test_invalid_sizes() -> None:
    with pytest.raises(ValidationError):
        Quiver.linear(0)
    with pytest.raises(ValidationError):
        build_ladder(Quiver.trivial(), 0)


def test_ladder_layout(a2xa2) -> None:
    assert [str(v) for v in a2xa2.vertices] == ["1,q1", "1,q2", "2,q1", "2,q2"]
    assert [a.name for a in a2xa2.arrows] == [
        "alpha_1^a1",
        "alpha_2^a1",
        "beta_1^q1",
        "beta_1^q2",
    ]
    (relation,) = a2xa2.relations
    assert [a.name for a in relation.lhs] == ["alpha_1^a1", "beta_1^q2"]
    assert [a.name for a in relation.rhs] == ["beta_1^q1", "alpha_2^a1"]
    assert a2xa2.sink_vertices == (Vertex(2, "q1"), Vertex(2, "q2"))
    assert a2xa2.as_quiver().vertices == ("1,q1", "1,q2", "2,q1", "2,q2")


def test_vertex_lookup(a2xa2) -> None:
    assert a2xa2.vertex("2,q1") == Vertex(2, "q1")
    assert a2xa2.vertex((1, "q2")) == Vertex(1, "q2")
    assert a2xa2.index("2,q1") == 2
    assert a2xa2.arrow_index("beta_1^q2") == 3
    with pytest.raises(ValidationError):
        a2xa2.vertex("3,q1")
    with pytest.raises(ValidationError):
        a2xa2.vertex("q1")
    with pytest.raises(ValidationError):
        a2xa2.arrow("gamma_1^q1")


def test_random_ladder_counts(rng) -> None:
    for _ in range(50):
        q = Quiver.random_acyclic(rng)
        levels = rng.randint(1, 4)
        ladder = build_ladder(q, levels)
        n, m = len(q.vertices), len(q.arrows)
        assert len(ladder.vertices) == levels * n
        assert len(ladder.arrows) == levels * m + (levels - 1) * n
        assert len(ladder.relations) == (levels - 1) * m
        assert len(ladder.topological_order) == len(ladder.vertices)


def test_path_basis_matches_rewritten_words(rng) -> None:
    for _ in range(20):
        q = Quiver.random_acyclic(rng, max_vertices=4)
        ladder = build_ladder(q, rng.randint(1, 3))
        for s in ladder.vertices:
            for t in ladder.vertices:
                words = enumerate_words(ladder, s, t)
                rewritten = {rewrite_word(ladder, w) for w in words}
                basis = path_basis(ladder, s, t)
                assert len(rewritten) == len(basis)
                assert {word_normal_path(ladder, s, w) for w in words} == set(basis)
                assert {tuple(p.word(ladder)) for p in basis} == rewritten


def test_normal_path(a2xa2) -> None:
    (p,) = path_basis(a2xa2, "1,q1", "2,q2")
    assert p == NormalPath(Vertex(1, "q1"), Vertex(2, "q2"), ("a1",))
    assert p.length == 2
    assert [a.name for a in p.word(a2xa2)] == ["beta_1^q1", "alpha_2^a1"]
    assert path_basis(a2xa2, "2,q1", "1,q1") == []
    with pytest.raises(ShapeError):
        p.then(p)


def test_word_errors(a2xa2) -> None:
    with pytest.raises(ShapeError):
        rewrite_word(a2xa2, ["alpha_1^a1", "beta_1^q1"])
    with pytest.raises(ShapeError):
        word_normal_path(a2xa2, Vertex(1, "q2"), ["alpha_1^a1"])
    with pytest.raises(ShapeError):
        normal_form(a2xa2, [])


def test_commutation(a2xa2) -> None:
    lhs = normal_form(a2xa2, ["alpha_1^a1", "beta_1^q2"])
    rhs = normal_form(a2xa2, ["beta_1^q1", "alpha_2^a1"])
    assert lhs == rhs
    assert normal_form(a2xa2, lhs) == lhs
    assert normal_form(a2xa2, ["alpha_1^a1"]) != normal_form(a2xa2, ["alpha_2^a1"])


def test_path_element_arithmetic(a2xa2) -> None:
    source = Vertex(1, "q1")
    e = PathElement.of_word(a2xa2, source, ["alpha_1^a1", "beta_1^q2"])
    (path,) = path_basis(a2xa2, "1,q1", "2,q2")
    assert e.coefficient(path) == 1
    assert e.scale(3).coefficient(path) == 3
    assert (e + e.scale(-1)).is_zero
    assert PathElement.trivial(source).then(e) == e
    assert e.then(PathElement.trivial(Vertex(2, "q2"))) == e
    beta = PathElement.of_word(a2xa2, source, ["beta_1^q1"])
    alpha = PathElement.of_word(a2xa2, Vertex(2, "q1"), ["alpha_2^a1"])
    assert beta.then(alpha) == e
    with pytest.raises(ShapeError):
        e + beta
    with pytest.raises(ShapeError):
        e.then(beta)
    with pytest.raises(ShapeError):
        PathElement(source, Vertex(2, "q2"), ((NormalPath(source, source, ()), 1),))
