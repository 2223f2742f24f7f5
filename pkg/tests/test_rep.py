from fractions import Fraction
from typing import List

import pytest

from ladder.error import ShapeError, ValidationError
from ladder.exactla import Matrix, QQ, random_invertible
from ladder.quiver import build_ladder, Quiver, Vertex
from ladder.rep import (
    betas_injective,
    check_relations,
    cokernel_ambient,
    cokernel_filtered,
    hom_space,
    image,
    indecomposable_projective,
    iota,
    is_filtered,
    is_isomorphic,
    is_strict_mono,
    is_torsion,
    kappa,
    kernel,
    Morphism,
    Representation,
    Subrep,
    tf_resolution,
    torsion_part,
)
from ladder.stability import enumerate_subreps
from ladder.sweep import all_points, random_filtered, random_relation_rep


def test_build(trivial2, f3) -> None:
    m = Representation.build(trivial2, f3, {"2,v": 1})
    assert m.dims == (0, 1)
    assert m.mat("beta_1^v").shape == (1, 0)
    assert Representation.simple(trivial2, f3, "1,v").dims == (1, 0)
    assert Representation.zero(trivial2, f3).is_zero


def test_build_errors(trivial2, f3) -> None:
    with pytest.raises(ShapeError):
        Representation.build(trivial2, f3, (1, 1, 1))
    with pytest.raises(ShapeError):
        Representation.build(trivial2, f3, (1, 2), {"beta_1^v": [[1, 0]]})
    with pytest.raises(ValidationError):
        Representation.build(trivial2, f3, (-1, 1))
    with pytest.raises(ValidationError):
        Representation.build(trivial2, f3, (1, 1), {"beta_2^v": [[1]]})
    with pytest.raises(ShapeError):
        Representation.build(trivial2, f3, (1, 1), {"beta_1^v": Matrix.of(QQ, [[1]])})


def test_relations(a2xa2, a2xa2_point, f3) -> None:
    assert check_relations(a2xa2_point(f3, 1))
    assert is_filtered(a2xa2_point(f3, 2))
    broken = Representation.build(
        a2xa2,
        f3,
        (1, 1, 1, 1),
        {"alpha_1^a1": [[1]], "beta_1^q1": [[1]], "beta_1^q2": [[1]]},
    )
    assert not check_relations(broken)
    with pytest.raises(ValidationError):
        is_filtered(broken)
    not_filtered = Representation.build(a2xa2, f3, (1, 1, 1, 1), {"beta_1^q1": [[1]]})
    assert check_relations(not_filtered)
    assert not betas_injective(not_filtered)
    with pytest.raises(ValidationError):
        iota(not_filtered)


def test_subreps(hn_example, f3) -> None:
    low = Subrep.generated(hn_example, {"2,v": Matrix.of(f3, [[1], [0]])})
    high = Subrep.generated(hn_example, {"1,v": Matrix.of(f3, [[1]])})
    assert low.dims == (0, 1)
    assert high.dims == (1, 1)
    assert Subrep.zero(hn_example) <= low < high < Subrep.full(hn_example)
    assert low & high == low
    assert low + high == high
    assert high.is_strict
    assert not low.is_strict
    assert high.quotient().dims == (0, 1)
    assert high.relative_quotient(low).dims == (1, 0)
    moved = low.image_in_quotient(high)
    assert moved.dims == (1, 0)
    assert low.preimage(moved) == high
    assert high.inclusion().is_injective
    assert high.quotient_map().is_surjective
    with pytest.raises(ValidationError):
        Subrep(hn_example, (Matrix.of(f3, [[1]]), Matrix.zeros(f3, 2, 0)))
    with pytest.raises(ValidationError):
        low.restrict(high)


def test_morphisms(trivial2, f3) -> None:
    m = Representation.build(trivial2, f3, (1, 1), {"beta_1^v": [[1]]})
    with pytest.raises(ValidationError):
        Morphism(m, m, (Matrix.of(f3, [[1]]), Matrix.of(f3, [[0]])))
    ident = Morphism.identity(m)
    assert ident.is_isomorphism
    assert ident.then(ident) == ident
    assert (ident + ident).comps == ident.scale(2).comps
    assert kernel(ident).is_zero
    assert image(ident).is_full
    assert not Morphism.zero(m, m).is_injective
    assert len(hom_space(m, m)) == 1


def test_act_gives_isomorphic_representation(a2xa2, a2xa2_point, f5, rng) -> None:
    m = a2xa2_point(f5, 3).direct_sum(a2xa2_point(f5, 1))
    for _ in range(5):
        g = [random_invertible(f5, d, rng) for d in m.dims]
        moved = m.act(g)
        assert Morphism(m, moved, g).is_isomorphism
        assert is_isomorphic(m, moved)
    with pytest.raises(ShapeError):
        m.act([Matrix.identity(f5, 1)] * 4)


def test_non_isomorphic(trivial2, f3) -> None:
    m = Representation.build(trivial2, f3, (1, 1), {"beta_1^v": [[1]]})
    n = Representation.build(trivial2, f3, (1, 1))
    assert not is_isomorphic(m, n)
    assert not is_isomorphic(m, Representation.build(trivial2, f3, (1, 2)))
    zero = Representation.zero(trivial2, f3)
    assert is_isomorphic(zero, Representation.zero(trivial2, f3))


def test_is_isomorphic_over_rationals(trivial2) -> None:
    m = Representation.build(trivial2, QQ, (1, 1), {"beta_1^v": [[Fraction(1, 3)]]})
    n = Representation.build(trivial2, QQ, (1, 1), {"beta_1^v": [[5]]})
    assert is_isomorphic(m, n)
    assert not is_isomorphic(m, Representation.build(trivial2, QQ, (1, 1)))


@pytest.fixture
def isolated() -> Quiver:
    return Quiver(("a", "b", "c", "d", "e", "f"), ())


def test_is_isomorphic_with_a_large_endomorphism_space(isolated, f2, rng) -> None:
    ladder = build_ladder(isolated, 1)
    m = Representation.build(ladder, f2, [2] * 6)
    assert is_filtered(m)
    assert len(hom_space(m, m)) == 24
    assert is_isomorphic(m, m)
    assert is_isomorphic(m, m, retries=0)
    g = [random_invertible(f2, 2, rng) for _ in m.dims]
    assert is_isomorphic(m, m.act(g), retries=0)


def test_generic_element_decides_isomorphism(isolated, f2, rng) -> None:
    ladder = build_ladder(isolated, 2)
    ident = {f"beta_1^{v}": [[1, 0], [0, 1]] for v in isolated.vertices}
    m = Representation.build(ladder, f2, [2] * 12, ident)
    rank_one = {**ident, "beta_1^a": [[1, 0], [0, 0]]}
    n = Representation.build(ladder, f2, [2] * 12, rank_one)
    assert len(hom_space(m, n)) == len(hom_space(n, m)) == 24
    assert not is_isomorphic(m, n)
    assert not is_isomorphic(m, n, retries=0)
    g = [random_invertible(f2, 2, rng) for _ in m.dims]
    assert is_isomorphic(m, m.act(g), retries=0)
    assert is_isomorphic(n, n.act(g))


def test_generic_element_over_rationals(trivial2) -> None:
    m = Representation.build(trivial2, QQ, (2, 2), {"beta_1^v": [[1, 0], [0, 3]]})
    n = Representation.build(trivial2, QQ, (2, 2), {"beta_1^v": [[0, 5], [7, 0]]})
    flat = Representation.build(trivial2, QQ, (2, 2), {"beta_1^v": [[1, 1], [1, 1]]})
    assert is_isomorphic(m, n, retries=0)
    assert not is_isomorphic(m, flat, retries=0)


def test_projective_dimensions(a2xa2) -> None:
    assert indecomposable_projective(a2xa2, "1,q1").dims == (1, 1, 1, 1)
    assert indecomposable_projective(a2xa2, "1,q2").dims == (0, 1, 0, 1)
    assert indecomposable_projective(a2xa2, "2,q1").dims == (0, 0, 1, 1)
    assert indecomposable_projective(a2xa2, "2,q2").dims == (0, 0, 0, 1)
    assert is_filtered(indecomposable_projective(a2xa2, "1,q1"))


def test_hom_from_projective_is_evaluation(a2xa2, trivial3, f3, rng) -> None:
    for ladder in (a2xa2, trivial3, build_ladder(Quiver.square(), 2)):
        projectives = {
            w: indecomposable_projective(ladder, w, f3) for w in ladder.vertices
        }
        for _ in range(200):
            n = random_relation_rep(ladder, f3, rng)
            assert check_relations(n)
            for w, p in projectives.items():
                assert len(hom_space(p, n)) == n.dim(w)


def test_torsion_and_kappa(a2xa2, trivial3, f5, rng) -> None:
    for k in range(500):
        ladder = (a2xa2, trivial3)[k % 2]
        b = random_relation_rep(ladder, f5, rng, max_dim=3)
        tor = torsion_part(b)
        assert is_torsion(tor.representation())
        quotient = kappa(b)
        assert betas_injective(quotient)
        assert tuple(x + y for x, y in zip(quotient.dims, tor.dims)) == b.dims
        assert tor.quotient_map().is_surjective


def test_kappa_of_filtered_is_itself(a2xa2, trivial3, f3, rng) -> None:
    for k in range(500):
        ladder = (a2xa2, trivial3)[k % 2]
        top = [rng.randint(0, 2) for _ in ladder.base.vertices]
        n = random_filtered(ladder, f3, top, rng)
        assert is_filtered(n)
        assert torsion_part(iota(n)).is_zero
        assert is_isomorphic(kappa(iota(n)), n)


def _level_dims(b: Representation) -> List[int]:
    ladder = b.ladder
    return [
        sum(b.dim(Vertex(j, v)) for v in ladder.base.vertices)
        for j in range(1, ladder.levels + 1)
    ]


def test_tf_resolution(a2xa2, trivial3, f3, rng) -> None:
    ladders = (a2xa2, trivial3, build_ladder(Quiver.linear(2), 3))
    for k in range(150):
        ladder = ladders[k % len(ladders)]
        top = ladder.levels
        b = random_relation_rep(ladder, f3, rng)
        res = tf_resolution(b)
        assert is_filtered(res.n)
        assert is_filtered(res.nprime)
        assert res.f.is_surjective
        assert res.f.target == b
        assert tuple(x - y for x, y in zip(res.n.dims, b.dims)) == res.nprime.dims
        assert all(res.nprime.dim(Vertex(1, v)) == 0 for v in ladder.base.vertices)
        levels = enumerate(_level_dims(b), start=1)
        weighted = [(top - j, dim) for j, dim in levels]
        assert sum(res.n.dims) == sum((w + 1) * dim for w, dim in weighted)
        assert sum(res.nprime.dims) == sum(w * dim for w, dim in weighted)


def test_tf_resolution_of_a_torsion_line(trivial2, f3) -> None:
    b = Representation.build(trivial2, f3, (1, 1))
    res = tf_resolution(b)
    assert res.n.dims == (1, 2)
    assert res.nprime.dims == (0, 1)
    assert is_filtered(res.nprime)


@pytest.mark.parametrize(
    "levels,base,dims",
    [
        (2, Quiver.trivial(), (1, 2)),
        (2, Quiver.trivial(), (2, 2)),
        (3, Quiver.trivial(), (1, 1, 2)),
        (2, Quiver.linear(2), (1, 1, 1, 1)),
        (2, Quiver.linear(2), (1, 1, 1, 2)),
        (2, Quiver.linear(2), (0, 1, 1, 2)),
    ],
)
def test_subobjects_of_filtered_are_filtered(levels, base, dims, f2) -> None:
    ladder = build_ladder(base, levels)
    for m in all_points(ladder, f2, dims, "fil"):
        for s in enumerate_subreps(m):
            assert is_filtered(s.representation())


def test_cokernel_in_filtered_category(trivial2, f3) -> None:
    top = indecomposable_projective(trivial2, "2,v", f3)
    bottom = indecomposable_projective(trivial2, "1,v", f3)
    (f,) = hom_space(top, bottom)
    assert f.is_injective
    assert cokernel_ambient(f).dims == (1, 0)
    assert cokernel_filtered(f).is_zero
    assert not is_strict_mono(f)
    with pytest.raises(ValidationError):
        is_strict_mono(Morphism.zero(bottom, bottom))


def test_strict_mono(trivial2, f3) -> None:
    m = Representation.build(trivial2, f3, (1, 2), {"beta_1^v": [[1], [0]]})
    high = Subrep.generated(m, {"1,v": Matrix.of(f3, [[1]])})
    assert is_strict_mono(high.inclusion())
    assert cokernel_filtered(high.inclusion()).dims == (0, 1)


def test_reduce(trivial2, f5) -> None:
    m = Representation.build(trivial2, QQ, (1, 1), {"beta_1^v": [[Fraction(1, 2)]]})
    assert m.reduce(f5).mat("beta_1^v") == Matrix.of(f5, [[3]])
