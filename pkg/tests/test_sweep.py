import os.path

import pytest

from ladder import document
from ladder.error import ResourceError, ShapeError, ValidationError
from ladder.exactla import QQ
from ladder.rep import check_relations, is_filtered
from ladder.stability import Convention, RankWeights, StabilityParams
from ladder.sweep import (
    all_points,
    count_points,
    random_filtered,
    random_relation_rep,
    s_equivalence_classes,
    verdict_table,
    VerdictRow,
)

FIXTURES = os.path.join(os.path.dirname(__file__), "fixtures")


@pytest.fixture
def adjudication() -> StabilityParams:
    with open(os.path.join(FIXTURES, "a2xa2_adjudication.json")) as f:
        (doc,) = document.load(f)
    return document.decode(doc, "stability")


def test_points(trivial2, f3) -> None:
    assert count_points(trivial2, f3, (1, 2)) == 9
    assert len(list(all_points(trivial2, f3, (1, 2)))) == 9
    assert len(list(all_points(trivial2, f3, (1, 2), "fil"))) == 8
    assert len(set(all_points(trivial2, f3, (1, 2)))) == 9


def test_point_errors(trivial2, f3) -> None:
    with pytest.raises(ValidationError):
        count_points(trivial2, QQ, (1, 1))
    with pytest.raises(ValidationError):
        list(all_points(trivial2, f3, (1, 1), "abelian"))
    with pytest.raises(ShapeError):
        list(all_points(trivial2, f3, (1, 1, 1)))
    with pytest.raises(ResourceError):
        list(all_points(trivial2, f3, (1, 2), cap=8))


def test_relation_points(a2xa2, f3) -> None:
    points = list(all_points(a2xa2, f3, (1, 1, 1, 2)))
    assert len(points) == 153
    assert all(check_relations(m) for m in points)


def test_random_generators(a2xa2, trivial3, f3, rng) -> None:
    for k in range(50):
        ladder = (a2xa2, trivial3)[k % 2]
        top = [rng.randint(0, 2) for _ in ladder.base.vertices]
        n = random_filtered(ladder, f3, top, rng)
        assert is_filtered(n)
        assert [n.dim(v) for v in ladder.sink_vertices] == top
        assert check_relations(random_relation_rep(ladder, f3, rng))
    with pytest.raises(ShapeError):
        random_filtered(a2xa2, f3, [1], rng)


def test_single_s_class(trivial3, f3) -> None:
    p = StabilityParams.create(trivial3, (0, 0, 0), d=(1, 2, 2))
    points = list(all_points(trivial3, f3, (1, 2, 2), "fil"))
    assert len(points) == 384
    classes = s_equivalence_classes(points, p)
    assert len(classes) == 1
    assert classes[0].size == 384


def test_no_filtered_points(trivial3, f3) -> None:
    p = StabilityParams.create(trivial3, (0, 0, 0), d=(2, 1, 2))
    points = list(all_points(trivial3, f3, (2, 1, 2), "fil"))
    assert points == []
    assert s_equivalence_classes(points, p) == []


def test_s_classes_with_workers(trivial2, f3, hn_params) -> None:
    points = list(all_points(trivial2, f3, (1, 2), "fil"))
    flat = StabilityParams.create(trivial2, (0, 0), d=(1, 2))
    serial = s_equivalence_classes(points[:4], flat)
    parallel = s_equivalence_classes(points[:4], flat, jobs=2)
    assert [c.size for c in serial] == [c.size for c in parallel]
    assert s_equivalence_classes(points, hn_params) == []


def test_verdict_table(trivial2, f3) -> None:
    p = StabilityParams.create(trivial2, (1, -1), d=(1, 1))
    points = list(all_points(trivial2, f3, (1, 1)))
    assert verdict_table(points, p) == [
        VerdictRow(Convention.SUB_NONNEG, 2, 2, 3, 2, True),
        VerdictRow(Convention.SUB_NONPOS, 0, 0, 3, 2, False),
    ]


def test_adjudication(a2xa2, f3, adjudication) -> None:
    points = list(all_points(a2xa2, f3, adjudication.d))
    for rank in (adjudication.rank, RankWeights.sink(a2xa2)):
        p = StabilityParams(adjudication.degree, rank, adjudication.d)
        for row in verdict_table(points, p):
            assert row.total == 153
            assert row.injective == 48
            assert row.semistable == 0
            assert row.stable == 0
            assert not row.matches_injectivity
