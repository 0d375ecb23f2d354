import json
import math

import pytest
from hypothesis import given, settings, strategies as st

from mopratio.errors import (
    MissingEntryError,
    NoLimitError,
    TableFormatError,
    UnsupportedCoefficientError,
)
from mopratio.families import (
    CLOSED_FORM,
    EXTRAPOLATED,
    ConstantCustom,
    JacobiPineiro,
    LimitData,
    MultipleCharlier,
    MultipleHermite,
    MultipleLaguerreI,
    MultipleLaguerreII,
    TableCustom,
    limit_coefficients,
    load_custom,
    merge_coincident,
    richardson_limit,
)
from mopratio.lattice import MultiIndex, RaySpec, ray_index


def test_charlier_coefficients():
    p = MultipleCharlier((1.0,))
    a, b = p.coefficients(MultiIndex((1,)))
    assert a == (1.0,)
    assert b == (2.0,)


def test_laguerre1_coefficients():
    p = MultipleLaguerreI((0.0, 0.5))
    _, b = p.coefficients(MultiIndex((2, 1)))
    assert b[0] == pytest.approx(3 + 2 + 0 + 1)
    assert b[1] == pytest.approx(3 + 1 + 0.5 + 1)


def test_hermite_coefficients():
    p = MultipleHermite((1.0, -1.0))
    a, b = p.coefficients(MultiIndex((4, 7)))
    assert b == (0.5, -0.5)
    assert a == (2.0, 3.5)


def test_axis_rule_zeroes_a():
    p = MultipleLaguerreII((1.0, 2.0), alpha=0.0)
    a, _ = p.coefficients(MultiIndex((0, 3)))
    assert a[0] == 0.0
    assert a[1] > 0.0
    c = ConstantCustom((0.25,), (0.0,))
    assert c.coefficients(MultiIndex((0,)))[0] == (0.0,)
    assert c.coefficients(MultiIndex((5,)))[0] == (0.25,)


def test_parameter_validation():
    with pytest.raises(ValueError):
        MultipleCharlier((1.0, 1.0))
    with pytest.raises(ValueError):
        MultipleCharlier((-1.0,))
    with pytest.raises(ValueError):
        MultipleHermite((2.0, 2.0))
    with pytest.raises(ValueError):
        MultipleLaguerreII((1.0, 2.0), alpha=-2.0)
    with pytest.raises(ValueError):
        JacobiPineiro((0.0, 1.0), beta=0.0)  # integer alpha gap
    with pytest.raises(ValueError):
        MultipleLaguerreI((0.5, 1.5))  # integer alpha gap


def test_jacobi_pineiro_b_requires_table():
    p = JacobiPineiro((0.0, 0.5), beta=0.0)
    with pytest.raises(UnsupportedCoefficientError):
        p.b_coefficients(MultiIndex((1, 1)))
    a = p.a_coefficients(MultiIndex((1, 1)))
    assert all(math.isfinite(v) for v in a)
    with_table = JacobiPineiro((0.0, 0.5), beta=0.0, b_table={(1, 1): (0.3, 0.4)})
    assert with_table.b_coefficients(MultiIndex((1, 1))) == (0.3, 0.4)
    with pytest.raises(MissingEntryError):
        with_table.b_coefficients(MultiIndex((2, 1)))


def test_limit_laguerre2_closed_form():
    ray = RaySpec((0.5, 0.5), gamma=1.0)
    limits = limit_coefficients(MultipleLaguerreII((1.0, 2.0), alpha=0.0), ray)
    assert limits.a == pytest.approx((0.5, 0.125))
    assert limits.b == pytest.approx((1.75, 1.25))
    assert limits.provenance_a == (CLOSED_FORM, CLOSED_FORM)
    assert limits.warnings == ()


def test_limit_charlier_scaled():
    ray = RaySpec((0.5, 0.5), gamma=1.0)
    provider = MultipleCharlier((1.0, 2.0), param_scaling=True)
    limits = limit_coefficients(provider, ray)
    assert limits.a == pytest.approx((0.5, 1.0))
    assert limits.b == pytest.approx((2.0, 3.0))


def test_limit_constant_trivial():
    ray = RaySpec((1.0,), gamma=0.0)
    limits = limit_coefficients(ConstantCustom((0.25,), (0.0,)), ray)
    assert limits.a == (0.25,)
    assert limits.b == (0.0,)
    assert limits.provenance_a == (CLOSED_FORM,)


def test_extrapolation_matches_closed_forms():
    ray = RaySpec((0.5, 0.5), gamma=1.0)
    for provider in (
        MultipleLaguerreII((1.0, 2.0), alpha=0.0),
        MultipleCharlier((1.0, 2.0), param_scaling=True),
    ):
        cf_a, cf_b = provider.closed_form_limits(ray)
        limits = limit_coefficients(provider, ray, n_ref=2000)
        # closed forms win, but any disagreement beyond 1e-6 relative would
        # have attached a warning
        assert limits.warnings == ()
        assert limits.a == pytest.approx(cf_a, rel=1e-6)
        assert limits.b == pytest.approx(cf_b, rel=1e-6)


def test_jacobi_pineiro_a_limits_match_product_formula():
    ray = RaySpec((0.25, 0.75), gamma=0.0)
    p = JacobiPineiro((0.0, 0.5), beta=0.25)
    closed = p.closed_form_limits(ray)[0]
    from mopratio.families import _extrapolate_scalar

    for j in range(2):
        extrapolated = _extrapolate_scalar(
            lambda n, j=j: p.a_coefficients(ray_index(ray, n))[j], 4000, "a"
        )
        assert extrapolated == pytest.approx(closed[j], rel=1e-6)


def test_jacobi_pineiro_coincident_q_rejected():
    p = JacobiPineiro((0.0, 0.5), beta=0.0)
    with pytest.raises(NoLimitError):
        limit_coefficients(p, RaySpec((0.5, 0.5), gamma=0.0))
    with pytest.raises(NoLimitError):
        limit_coefficients(MultipleLaguerreI((0.0, 0.5)), RaySpec((0.5, 0.5), gamma=1.0))


def test_charlier_unscaled_has_no_gamma0_limit():
    provider = MultipleCharlier((1.0, 2.0))
    with pytest.raises(NoLimitError):
        limit_coefficients(provider, RaySpec((0.5, 0.5), gamma=0.0))


def test_hermite_discrepancy_flagged_and_extrapolation_trusted():
    ray = RaySpec((0.5, 0.5), gamma=0.5)
    limits = limit_coefficients(MultipleHermite((1.0, -1.0)), ray)
    # recurrence gives n_j / 2, so a-limits are q_j / 2, not the stated q_j
    assert limits.a == pytest.approx((0.25, 0.25), rel=1e-9)
    assert limits.provenance_a == (EXTRAPOLATED, EXTRAPOLATED)
    assert any("documented" in w for w in limits.warnings)
    assert limits.branch_supported is False

    scaled = limit_coefficients(MultipleHermite((1.0, -1.0), param_scaling=True), ray)
    assert scaled.b == pytest.approx((0.5, -0.5))
    assert scaled.branch_supported is True


def test_positive_a_along_ray():
    ray = RaySpec((0.5, 0.5))
    for provider in (MultipleLaguerreII((1.0, 2.0)), MultipleCharlier((1.0, 2.0))):
        for n in range(1, 201):
            idx = ray_index(ray, n)
            a = provider.a_coefficients(idx)
            for j in range(2):
                if idx[j] > 0:
                    assert a[j] > 0.0


def test_merge_examples():
    merged = LimitData.from_values((0.2, 0.3), (1.0, 1.0)).merged
    assert len(merged) == 1
    assert merged[0].b_star == pytest.approx(1.0)
    assert merged[0].a_star == pytest.approx(0.5)

    unchanged = LimitData.from_values((1.0, 2.0), (0.0, 1.0)).merged
    assert [(g.b_star, g.a_star) for g in unchanged] == [(0.0, 1.0), (1.0, 2.0)]

    three = LimitData.from_values((1.0, 1.0, 1.0), (0.0, 1e-12, 5.0)).merged
    assert len(three) == 2
    assert three[0].a_star == pytest.approx(2.0)
    assert three[0].b_star == pytest.approx(0.0, abs=1e-9)
    assert three[1].b_star == pytest.approx(5.0)


@settings(max_examples=100, deadline=None)
@given(
    st.lists(
        st.tuples(
            st.floats(min_value=0.0, max_value=5.0),
            st.floats(min_value=-3.0, max_value=3.0),
        ),
        min_size=1,
        max_size=6,
    ),
    st.floats(min_value=1e-10, max_value=0.5),
)
def test_merge_idempotent_and_conserving(pairs, tol):
    a = [p[0] for p in pairs]
    b = [p[1] for p in pairs]
    limits = LimitData.from_values(a, b, tol=tol)
    merged = merge_coincident(limits, tol)
    assert sum(g.a_star for g in merged.merged) == pytest.approx(sum(a), abs=1e-12)
    again = merge_coincident(
        LimitData.from_values(
            [g.a_star for g in merged.merged],
            [g.b_star for g in merged.merged],
            tol=tol,
        ),
        tol,
    )
    assert len(again.merged) == len(merged.merged)
    for g1, g2 in zip(again.merged, merged.merged):
        assert g1.b_star == pytest.approx(g2.b_star, abs=1e-12)
        assert g1.a_star == pytest.approx(g2.a_star, abs=1e-12)


def test_richardson_limit_exact_on_model_sequence():
    # f(N) = L + c1/N + c2/N^2 is annihilated exactly by two levels
    L, c1, c2 = 0.7, 3.0, -2.0
    vals = [L + c1 / n + c2 / n**2 for n in (100, 200, 400)]
    limit, err = richardson_limit(vals)
    assert limit == pytest.approx(L, abs=1e-12)
    assert err < 1e-4


def test_load_custom_roundtrip(tmp_path):
    doc = {
        "r": 1,
        "entries": [
            {"n": [0], "a": [0.0], "b": [0.0]},
            {"n": [1], "a": [0.25], "b": [0.0]},
        ],
    }
    path = tmp_path / "table.json"
    path.write_text(json.dumps(doc))
    provider = load_custom(path)
    assert provider.r == 1
    assert provider.coefficients(MultiIndex((1,))) == ((0.25,), (0.0,))
    with pytest.raises(MissingEntryError):
        provider.coefficients(MultiIndex((2,)))


def test_load_custom_matches_constant_provider(tmp_path):
    entries = [
        {"n": [n], "a": [0.25 if n > 0 else 0.0], "b": [0.0]} for n in range(21)
    ]
    path = tmp_path / "cheb.json"
    path.write_text(json.dumps({"r": 1, "entries": entries}))
    table = load_custom(path)
    const = ConstantCustom((0.25,), (0.0,))
    for n in range(21):
        assert table.coefficients(MultiIndex((n,))) == const.coefficients(MultiIndex((n,)))


def test_load_custom_errors(tmp_path):
    bad_json = tmp_path / "bad.json"
    bad_json.write_text("{not json")
    with pytest.raises(TableFormatError):
        load_custom(bad_json)

    wrong_r = tmp_path / "wrong_r.json"
    wrong_r.write_text(json.dumps({"r": 2, "entries": [{"n": [1], "a": [0.1], "b": [0.0]}]}))
    with pytest.raises(TableFormatError):
        load_custom(wrong_r)

    negative = tmp_path / "neg.json"
    negative.write_text(json.dumps({"r": 1, "entries": [{"n": [-1], "a": [0.0], "b": [0.0]}]}))
    with pytest.raises(TableFormatError):
        load_custom(negative)

    axis = tmp_path / "axis.json"
    axis.write_text(json.dumps({"r": 1, "entries": [{"n": [0], "a": [0.5], "b": [0.0]}]}))
    with pytest.raises(TableFormatError):
        load_custom(axis)


def test_table_custom_r_mismatch():
    t = TableCustom(r_value=2, entries={(0, 0): ((0.0, 0.0), (1.0, 2.0))})
    with pytest.raises(ValueError):
        t.coefficients(MultiIndex((0,)))
