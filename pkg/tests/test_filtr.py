from fractions import Fraction

import pytest

from ladder.error import ValidationError
from ladder.exactla import Matrix
from ladder.filtr import (
    classify_point_type,
    Filtration,
    gr,
    gr_max,
    hn_filtration,
    is_polystable,
    jh_filtration,
    maximal_flag,
    PointType,
    s_equivalent,
    sjh_equivalent,
)
from ladder.rep import betas_injective, is_isomorphic, Representation, Subrep
from ladder.stability import decide, slope, StabilityParams
from ladder.sweep import random_filtered


@pytest.fixture
def flat(trivial2) -> StabilityParams:
    return StabilityParams.create(trivial2, (0, 0), d=(1, 2))


def test_hn_example(hn_example, hn_params) -> None:
    f = hn_filtration(hn_example, hn_params)
    assert [s.dims for s in f.steps] == [(0, 0), (1, 1), (1, 2)]
    assert f.quotient_dims() == [(1, 1), (0, 1)]
    slopes = [slope(d, hn_params) for d in f.quotient_dims()]
    assert slopes == [Fraction(0), Fraction(-1)]
    assert f.strict
    assert f.length == 2


def test_hn_ignores_enumeration_order(hn_example, hn_params) -> None:
    expected = hn_filtration(hn_example, hn_params).steps
    for seed in range(5):
        assert hn_filtration(hn_example, hn_params, order_seed=seed).steps == expected


def test_hn_preconditions(trivial2, f3, hn_example) -> None:
    with pytest.raises(ValidationError):
        hn_filtration(hn_example, StabilityParams.create(trivial2, (-1, 1), d=(1, 2)))
    torsion = Representation.build(trivial2, f3, (1, 1))
    with pytest.raises(ValidationError):
        hn_filtration(torsion, StabilityParams.create(trivial2, (0, 0), d=(1, 1)))


def test_random_hn_filtrations(trivial2, trivial3, a2xa2, f2, rng) -> None:
    ladders = [trivial2, trivial3, a2xa2]
    for k in range(200):
        ladder = ladders[k % len(ladders)]
        top = [rng.randint(0, 2) for _ in ladder.base.vertices]
        m = random_filtered(ladder, f2, top, rng)
        degree = [
            rng.randint(0, 2) if v.level < ladder.levels else rng.randint(-2, 2)
            for v in ladder.vertices
        ]
        p = StabilityParams.create(ladder, degree, d=m.dims)
        f = hn_filtration(m, p)
        slopes = [slope(d, p) for d in f.quotient_dims()]
        assert all(a > b for a, b in zip(slopes, slopes[1:]))
        for q in f.quotients():
            assert betas_injective(q)
            assert decide(q, p.for_dims(q.dims), strict_only=True).semistable


def test_gr_max_on_trivial_ladders(trivial2, trivial3, f3, rng) -> None:
    for k in range(40):
        ladder = (trivial2, trivial3)[k % 2]
        m = random_filtered(ladder, f3, [rng.randint(0, 2)], rng)
        g = gr_max(m)
        assert is_isomorphic(g, m)
        assert is_isomorphic(gr_max(g), g)


def test_maximal_flag(hn_example, flat) -> None:
    f = maximal_flag(hn_example)
    assert f.strict
    assert [s.total_dimension for s in f.steps] == [0, 1, 3]
    for seed in range(3):
        g = maximal_flag(hn_example, flat, order_seed=seed)
        assert is_isomorphic(gr(g), gr(f))


def test_jordan_holder(hn_example, flat) -> None:
    assert jh_filtration(hn_example, flat) is None
    f = jh_filtration(hn_example, flat, category="rel")
    assert f.length == 3
    assert all(q.total_dimension == 1 for q in f.quotients())
    with pytest.raises(ValidationError):
        jh_filtration(hn_example, flat, category="abelian")


def test_point_types(trivial2, f3, hn_example, hn_params, flat) -> None:
    assert classify_point_type(hn_example, flat) == PointType.TYPE2
    simple = Representation.simple(trivial2, f3, "2,v")
    assert classify_point_type(simple, flat.for_dims((0, 1))) == PointType.TYPE1
    with pytest.raises(ValidationError):
        classify_point_type(hn_example, hn_params)


def test_equivalences(trivial2, f3, hn_example, flat) -> None:
    assert s_equivalent(hn_example, gr_max(hn_example, flat), flat)
    simple = Representation.simple(trivial2, f3, "2,v")
    assert not s_equivalent(hn_example, simple, flat)
    simple = Representation.simple(trivial2, f3, "2,v")
    assert sjh_equivalent(simple, simple, flat.for_dims((0, 1)))
    assert not sjh_equivalent(hn_example, hn_example, flat)
    assert is_polystable(simple, flat.for_dims((0, 1)))
    assert not is_polystable(hn_example, flat)


def test_filtration_validation(hn_example, f3) -> None:
    zero, full = Subrep.zero(hn_example), Subrep.full(hn_example)
    low = Subrep.generated(hn_example, {"2,v": Matrix.of(f3, [[1], [0]])})
    with pytest.raises(ValidationError):
        Filtration(hn_example, (zero, low), False)
    with pytest.raises(ValidationError):
        Filtration(hn_example, (zero, low, low, full), False)
    with pytest.raises(ValidationError):
        Filtration(hn_example, (zero, low, full), True)
    f = Filtration.of(hn_example, [zero, low, full])
    assert not f.strict
    with pytest.raises(ValidationError):
        gr(f)
    assert gr(f, "rel").dims == (1, 2)
