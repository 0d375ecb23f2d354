import numpy as np
import pytest

from mopratio.errors import NoLimitError, ZeroIsolationError
from mopratio.families import (
    ConstantCustom,
    MultipleCharlier,
    MultipleLaguerreII,
    TableCustom,
)
from mopratio.lattice import RaySpec, build_path, ray_index
from mopratio.verify import (
    DEFAULT_COMPACT_SAMPLE,
    density_compare,
    interlace_check,
    ratio_gap,
    merge_consistency_check,
    ratio_bound_violations,
    ratio_recurrence_residuals,
    ratio_convergence,
    scaled_ratio_convergence,
)

CONST1 = ConstantCustom((0.25,), (0.0,))
CONST2 = ConstantCustom((0.25, 0.25), (0.0, 1.0))
LAG2 = MultipleLaguerreII((1.0, 2.0), alpha=0.0)
RAY2 = RaySpec((0.5, 0.5), gamma=1.0)


def test_default_sample_is_off_axis():
    assert len(DEFAULT_COMPACT_SAMPLE) == 8
    assert {x.imag for x in DEFAULT_COMPACT_SAMPLE} == {0.5, 2.0}


def test_unscaled_constant_strictly_decreasing():
    # geometric convergence saturates doubles by n ~ 25, so the strictness
    # of the decay is only measurable at extended precision
    rep = ratio_convergence(
        CONST1, RaySpec((1.0,)), 0, xs=[1 + 1j], n_grid=(50, 100, 200), dps=220
    )
    errs = rep.max_errors
    assert errs[0] > errs[1] > errs[2]
    assert errs[2] < 1e-6
    assert rep.mode == "unscaled"


def test_unscaled_decoupled_is_exact():
    table = TableCustom(
        r_value=1,
        entries={(n,): ((0.0,), (0.25,)) for n in range(500)},
    )
    rep = ratio_convergence(table, RaySpec((1.0,)), 0, xs=[1 + 1j, -2 + 0.5j], n_grid=(10, 50), n_ref=100)
    assert all(err == 0.0 for row in rep.rows for err in row.errors)


def test_unscaled_rejects_scaled_ray_and_real_points():
    with pytest.raises(ValueError):
        ratio_convergence(CONST1, RaySpec((1.0,), gamma=1.0), 0)
    with pytest.raises(ValueError):
        ratio_convergence(CONST1, RaySpec((1.0,)), 0, xs=[1.0 + 0j])


def test_charlier_unscaled_has_no_limit():
    with pytest.raises(NoLimitError):
        ratio_convergence(MultipleCharlier((1.0, 2.0)), RaySpec((0.5, 0.5)), 0, xs=[1j])


def test_scaled_laguerre2_monotone():
    rep = scaled_ratio_convergence(LAG2, RAY2, 0, xs=[1 + 1j], n_grid=(50, 100, 200, 400))
    errs = rep.max_errors
    assert errs[-1] < errs[0]
    for lo, hi in zip(errs[1:], errs[:-1]):
        assert lo <= 1.1 * hi
    assert errs[-1] < 5e-2
    assert rep.mode == "scaled"


def test_scaled_charlier_monotone():
    provider = MultipleCharlier((1.0, 2.0), param_scaling=True)
    rep = scaled_ratio_convergence(provider, RAY2, 1, xs=[1 + 1j], n_grid=(50, 100, 200, 400))
    errs = rep.max_errors
    assert errs[-1] < errs[0]
    for lo, hi in zip(errs[1:], errs[:-1]):
        assert lo <= 1.1 * hi


def test_scaled_delegates_at_gamma_zero():
    rep = scaled_ratio_convergence(CONST1, RaySpec((1.0,)), 0, xs=[1 + 1j], n_grid=(20, 40))
    assert rep.mode == "unscaled"


def test_ratio_gap_r1_decays():
    rep = ratio_gap(CONST1, RaySpec((1.0,)), 0, 0, 1 + 1j, (4, 8, 12))
    vals = rep.values
    assert vals[0] > vals[1] > vals[2]


def test_ratio_gap_constant_r2():
    ray = RaySpec((0.5, 0.5))
    rep = ratio_gap(CONST2, ray, 0, 1, 1 + 1j, (50, 400), dps=150)
    assert rep.values[1] < 1e-3
    assert rep.values[1] < rep.values[0]


def test_ratio_gap_decoupled_is_zero():
    table = TableCustom(
        r_value=2,
        entries={
            (i, j): ((0.0, 0.0), (0.0, 1.0))
            for i in range(30)
            for j in range(30)
        },
    )
    rep = ratio_gap(table, RaySpec((0.5, 0.5)), 0, 1, 1 + 1j, (10, 20))
    assert rep.values == (0.0, 0.0)


def test_ratio_gap_precondition():
    # direction 1 has floor(0.05 * 10) = 0 entries at n = 10
    with pytest.raises(ValueError):
        ratio_gap(CONST2, RaySpec((0.95, 0.05)), 0, 1, 1 + 1j, (10,))
    with pytest.raises(ValueError):
        ratio_gap(CONST2, RaySpec((0.5, 0.5)), 0, 1, 1.0 + 0j, (10,))


def test_interlace_charlier_passes():
    rep = interlace_check(MultipleCharlier((1.0, 2.0)), 6)
    assert rep.all_ok
    hand = next(r for r in rep.rows if r.index == (1,) * 0 or r.index == (1, 0))
    assert hand.ok


def test_interlace_hand_example():
    rep = interlace_check(MultipleCharlier((1.0,)), 1)
    row = next(r for r in rep.rows if r.index == (1,))
    assert row.zeros_lower == pytest.approx([1.0], abs=1e-10)
    assert row.zeros_upper == pytest.approx([0.3819660112501051, 2.618033988749895], abs=1e-9)
    assert row.ok


def test_interlace_degenerate_table_fails():
    table = TableCustom(
        r_value=1,
        entries={(0,): ((0.0,), (0.0,)), (1,): ((0.0,), (1.0,)), (2,): ((0.0,), (0.5,))},
    )
    rep = interlace_check(table, 1)
    assert not rep.all_ok
    failing = rep.failures()
    assert [(r.index, r.k) for r in failing] == [((1,), 0)]


def test_density_compare_arcsine():
    ray = RaySpec((1.0,))
    rep48 = density_compare(CONST1, ray, 48, 12)
    assert sum(rep48.masses) == pytest.approx(1.0, abs=1e-12)
    assert rep48.sup_discrepancy < 0.15
    rep16 = density_compare(CONST1, ray, 16, 12)
    assert rep16.sup_discrepancy < 0.15
    assert rep48.sup_discrepancy <= rep16.sup_discrepancy


def test_density_compare_degenerate_table_errors():
    table = TableCustom(
        r_value=1,
        entries={(n,): ((0.0,), (0.0,)) for n in range(200)},
    )
    with pytest.raises(ZeroIsolationError):
        density_compare(table, RaySpec((1.0,)), 8, 4)


def test_merge_consistency_check():
    rng = np.random.default_rng(5)
    xs = [complex(rng.uniform(-3, 3), rng.uniform(0.1, 3.0)) for _ in range(100)]
    assert merge_consistency_check((0.2, 0.3), 1.0, xs) <= 1e-10
    assert merge_consistency_check((0.5, 0.0), 0.0, xs) <= 1e-10
    # hand case: z from z^2 - 2i z + (i*beta... single group (0, 0.5) at x=2i
    dev = merge_consistency_check((0.25, 0.25), 0.0, [2j])
    assert dev <= 1e-10


def test_per_step_ratio_recurrence_identity():
    path = build_path(ray_index(RaySpec((0.5, 0.5)), 80))
    residuals = ratio_recurrence_residuals(LAG2, 1 + 1j, path)
    assert max(residuals) <= 1e-10


def test_ratio_bound_violations_zero_for_positive_families():
    path = build_path(ray_index(RaySpec((0.5, 0.5)), 120))
    for provider in (LAG2, MultipleCharlier((1.0, 2.0))):
        for x in (0.3 + 0.5j, -1 + 1j, 2j):
            assert ratio_bound_violations(provider, x, path) == 0
