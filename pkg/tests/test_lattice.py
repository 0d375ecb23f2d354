import pytest
from hypothesis import given, settings, strategies as st

from mopratio.lattice import (
    LatticePath,
    MultiIndex,
    RaySpec,
    blockwise_path,
    build_path,
    indices_up_to_weight,
    lower_set,
    ray_index,
)


def test_multiindex_validation():
    n = MultiIndex((2, 0, 3))
    assert n.weight == 5
    assert n.r == 3
    with pytest.raises(ValueError):
        MultiIndex((-1, 2))
    with pytest.raises(ValueError):
        MultiIndex(())


def test_multiindex_steps():
    n = MultiIndex((1, 1))
    assert n.up(0).entries == (2, 1)
    assert n.down(1).entries == (1, 0)
    assert MultiIndex.of((3,)).entries == (3,)
    assert MultiIndex.of(n) is n


def test_rayspec_validation():
    RaySpec((0.5, 0.5), 1.0)
    with pytest.raises(ValueError):
        RaySpec((0.5, 0.4))
    with pytest.raises(ValueError):
        RaySpec((1.5, -0.5))
    with pytest.raises(ValueError):
        RaySpec((1.0,), gamma=-1.0)


def test_ray_index_examples():
    assert ray_index(RaySpec((0.5, 0.5)), 7).entries == (3, 3)
    assert ray_index(RaySpec((1 / 3, 2 / 3)), 10).entries == (3, 6)
    assert ray_index(RaySpec((1.0,)), 0).entries == (0,)


def test_ray_index_monotone():
    ray = RaySpec((0.3, 0.2, 0.5))
    prev = ray_index(ray, 0)
    for n in range(1, 200):
        cur = ray_index(ray, n)
        assert cur.dominates(prev)
        prev = cur


def test_build_path_examples():
    p = build_path(MultiIndex((2, 1)), RaySpec((2 / 3, 1 / 3)))
    assert sorted(p.steps) == [0, 0, 1]
    assert p.endpoint().entries == (2, 1)
    assert p.steps == (0, 1, 0)

    assert build_path(MultiIndex((3,))).steps == (0, 0, 0)

    p3 = build_path(MultiIndex((1, 1, 1)), RaySpec((1 / 3, 1 / 3, 1 / 3)))
    assert sorted(p3.steps) == [0, 1, 2]


def test_build_path_prefix_balance_on_ray_targets():
    ray = RaySpec((2 / 3, 1 / 3))
    target = MultiIndex((12, 6))
    path = build_path(target, ray)
    m = [0, 0]
    for step in path:
        m[step] += 1
        s = sum(m)
        for j in range(2):
            assert abs(m[j] - ray.q[j] * s) <= 1.0


@settings(max_examples=200, deadline=None)
@given(
    st.integers(min_value=1, max_value=4).flatmap(
        lambda r: st.lists(st.integers(min_value=0, max_value=30), min_size=r, max_size=r)
    )
)
def test_build_path_endpoint_and_prefix_property(entries):
    if sum(entries) == 0:
        entries[0] = 1
    target = MultiIndex(tuple(entries))
    path = build_path(target)
    assert path.endpoint().entries == target.entries
    assert len(path) == target.weight
    w = [e / target.weight for e in target.entries]
    m = [0] * target.r
    for step in path:
        m[step] += 1
        s = sum(m)
        for j in range(target.r):
            # stays within sup distance 1 <= r of the ray through the target
            assert abs(m[j] - w[j] * s) <= 1.0 + 1e-9


def test_build_path_endpoint_thousand_random_targets():
    import numpy as np

    rng = np.random.default_rng(1234)
    for _ in range(1000):
        r = int(rng.integers(1, 5))
        entries = tuple(int(v) for v in rng.integers(0, 40, size=r))
        if sum(entries) == 0:
            entries = entries[:-1] + (1,)
        target = MultiIndex(entries)
        assert build_path(target).endpoint().entries == target.entries


def test_blockwise_path():
    p = blockwise_path(MultiIndex((2, 3)))
    assert p.steps == (0, 0, 1, 1, 1)
    q = blockwise_path(MultiIndex((2, 3)), order=(1, 0))
    assert q.steps == (1, 1, 1, 0, 0)
    assert q.endpoint().entries == (2, 3)
    with pytest.raises(ValueError):
        blockwise_path(MultiIndex((1, 1)), order=(0, 0))


def test_path_validation():
    with pytest.raises(ValueError):
        LatticePath((0, 2), r=2)
    assert LatticePath((), r=3).endpoint().entries == (0, 0, 0)


def test_lower_set_and_weight_enumeration():
    ls = lower_set(MultiIndex((2, 1)))
    assert len(ls) == 6
    assert ls[0].entries == (0, 0)
    assert ls[-1].entries == (2, 1)
    upto = indices_up_to_weight(2, 2)
    assert {m.entries for m in upto} == {(0, 0), (1, 0), (0, 1), (2, 0), (1, 1), (0, 2)}
