"""Numerical verification harness.

Convergence experiments compare empirical neighbor ratios against the
principal branch of the limit equation over a fixed sample of points off the
real axis; gap experiments track the decay that makes backward and forward
ratios share one limit; interlacing and zero-density checks exercise the real
-axis side.  Reported thresholds for decay are empirical regression anchors:
the underlying statements are limits without rates.

Constant-coefficient configurations converge geometrically and saturate
double precision within a few dozen steps, so the experiments accept an
optional mpmath working precision (``dps``); the reference branch value is
then polished to matching accuracy before errors are formed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import mpmath as mp
import numpy as np

from .algebraic import (
    LimitEquation,
    partial_fraction_numerator,
    principal_branch,
    refine_principal,
)
from .evaluator import (
    DEFAULT_DELTA_MIN,
    advance,
    init_state,
    neighbor_ratio,
    propagate,
    real_zeros,
    stieltjes_estimate,
)
from .families import CoefficientProvider, LimitData, limit_coefficients
from .lattice import MultiIndex, RaySpec, build_path, indices_up_to_weight, ray_index

#: Eight points on a rectangle straddling typical supports, Im in {0.5, 2}.
DEFAULT_COMPACT_SAMPLE: tuple[complex, ...] = tuple(
    complex(re, im) for im in (0.5, 2.0) for re in (-1.5, -0.5, 0.5, 1.5)
)


@dataclass(frozen=True)
class ConvergenceRow:
    n: int
    errors: tuple[float, ...]
    max_error: float


@dataclass(frozen=True)
class ConvergenceReport:
    family: str
    mode: str
    k: int
    ray: RaySpec
    xs: tuple[complex, ...]
    rows: tuple[ConvergenceRow, ...]
    limits: LimitData

    @property
    def ns(self) -> tuple[int, ...]:
        return tuple(row.n for row in self.rows)

    @property
    def max_errors(self) -> tuple[float, ...]:
        return tuple(row.max_error for row in self.rows)


def _reference_limits(eq: LimitEquation, xs, k: int, dps: int | None):
    """Branch value z(x) - b_k per sample point, polished when dps is set."""
    out = []
    for x in xs:
        z = principal_branch(eq, x).z
        if dps is not None:
            z = refine_principal(eq, x, z, dps)
            with mp.workdps(dps):
                out.append(z - mp.mpf(eq.b_original[k]))
        else:
            out.append(z - eq.b_original[k])
    return out


def ratio_convergence(
    provider: CoefficientProvider,
    ray: RaySpec,
    k: int,
    xs: Sequence[complex] | None = None,
    n_grid: Sequence[int] = (50, 100, 200, 400),
    *,
    limits: LimitData | None = None,
    n_ref: int = 2000,
    dps: int | None = None,
    delta_min: float = DEFAULT_DELTA_MIN,
) -> ConvergenceReport:
    """Errors |P[n+e_k]/P[n] - (z - b_k)| over an n-grid, unscaled limits."""
    if ray.gamma != 0.0:
        raise ValueError("unscaled convergence needs gamma = 0; use scaled_ratio_convergence")
    xs = tuple(xs) if xs is not None else DEFAULT_COMPACT_SAMPLE
    if not xs or not n_grid:
        raise ValueError("xs and n_grid must be non-empty")
    if any(abs(x.imag) == 0 for x in xs):
        raise ValueError("sample points must lie off the real axis")
    if limits is None:
        limits = limit_coefficients(provider, ray, n_ref=n_ref)
    eq = partial_fraction_numerator(limits)
    refs = _reference_limits(eq, xs, k, dps)
    rows = []
    for n in sorted(n_grid):
        idx = ray_index(ray, n)
        errs = []
        for x, ref in zip(xs, refs):
            ratio = neighbor_ratio(provider, idx, k, x, dps=dps, delta_min=delta_min)
            errs.append(float(abs(ratio - ref)))
        rows.append(ConvergenceRow(n=n, errors=tuple(errs), max_error=max(errs)))
    return ConvergenceReport(
        family=provider.label(),
        mode="unscaled",
        k=k,
        ray=ray,
        xs=xs,
        rows=tuple(rows),
        limits=limits,
    )


def scaled_ratio_convergence(
    provider: CoefficientProvider,
    ray: RaySpec,
    k: int,
    xs: Sequence[complex] | None = None,
    n_grid: Sequence[int] = (50, 100, 200, 400),
    *,
    limits: LimitData | None = None,
    n_ref: int = 2000,
    dps: int | None = None,
    delta_min: float = DEFAULT_DELTA_MIN,
) -> ConvergenceReport:
    """Scaled variant: the ratio at n^gamma x, divided by n^gamma.

    Providers with parameter scaling are re-pinned at reference size n for
    each row, so each row is a genuine fixed-coefficient recurrence.
    """
    if ray.gamma == 0.0:
        return ratio_convergence(
            provider, ray, k, xs, n_grid,
            limits=limits, n_ref=n_ref, dps=dps, delta_min=delta_min,
        )
    xs = tuple(xs) if xs is not None else DEFAULT_COMPACT_SAMPLE
    if not xs or not n_grid:
        raise ValueError("xs and n_grid must be non-empty")
    if any(abs(x.imag) == 0 for x in xs):
        raise ValueError("sample points must lie off the real axis")
    if limits is None:
        limits = limit_coefficients(provider, ray, n_ref=n_ref)
    eq = partial_fraction_numerator(limits)
    refs = _reference_limits(eq, xs, k, dps)
    rows = []
    for n in sorted(n_grid):
        p_n = provider.with_reference(n)
        idx = ray_index(ray, n)
        errs = []
        for x, ref in zip(xs, refs):
            ratio = neighbor_ratio(
                p_n, idx, k, x, scaled=(ray.gamma, n), dps=dps, delta_min=delta_min
            )
            errs.append(float(abs(ratio - ref)))
        rows.append(ConvergenceRow(n=n, errors=tuple(errs), max_error=max(errs)))
    return ConvergenceReport(
        family=provider.label(),
        mode="scaled",
        k=k,
        ray=ray,
        xs=xs,
        rows=tuple(rows),
        limits=limits,
    )


@dataclass(frozen=True)
class GapRow:
    n: int
    value: float


@dataclass(frozen=True)
class GapReport:
    family: str
    k: int
    ell: int
    x: complex
    rows: tuple[GapRow, ...]

    @property
    def values(self) -> tuple[float, ...]:
        return tuple(row.value for row in self.rows)


def ratio_gap(
    provider: CoefficientProvider,
    ray: RaySpec,
    k: int,
    ell: int,
    x: complex,
    n_grid: Sequence[int],
    *,
    dps: int | None = None,
    delta_min: float = DEFAULT_DELTA_MIN,
) -> GapReport:
    """D = |P[n]/P[n+e_k] - P[n-e_l]/P[n+e_k-e_l]| along a ray.

    The decay of D is what lets backward and forward neighbor ratios share a
    single limit; rows are raw values, consumers check the decay.
    """
    if x.imag == 0:
        raise ValueError("the gap is only evaluated off the real axis")
    rows = []
    for n in sorted(n_grid):
        idx = ray_index(ray, n)
        if idx[ell] < 1:
            raise ValueError(
                f"index {idx.entries} at n={n} has no entry to step back in direction {ell}"
            )
        state_a = propagate(provider, x, build_path(idx), dps=dps, delta_min=delta_min)
        state_a = advance(state_a, k, provider)
        idx_b = idx.down(ell)
        state_b = propagate(provider, x, build_path(idx_b), dps=dps, delta_min=delta_min)
        state_b = advance(state_b, k, provider)
        rows.append(GapRow(n=n, value=float(abs(state_a.h[k] - state_b.h[k]))))
    return GapReport(family=provider.label(), k=k, ell=ell, x=complex(x), rows=tuple(rows))


@dataclass(frozen=True)
class InterlaceRow:
    index: tuple[int, ...]
    k: int
    ok: bool
    zeros_lower: tuple[float, ...]
    zeros_upper: tuple[float, ...]


@dataclass(frozen=True)
class InterlaceReport:
    family: str
    max_weight: int
    rows: tuple[InterlaceRow, ...]

    @property
    def all_ok(self) -> bool:
        return all(row.ok for row in self.rows)

    def failures(self) -> list[InterlaceRow]:
        return [row for row in self.rows if not row.ok]


def _strictly_interlaced(inner: Sequence[float], outer: Sequence[float], min_gap: float) -> bool:
    if len(outer) != len(inner) + 1:
        return False
    for i, v in enumerate(inner):
        if not (outer[i] + min_gap < v < outer[i + 1] - min_gap):
            return False
    return True


def interlace_check(
    provider: CoefficientProvider,
    max_weight: int,
    *,
    min_gap: float = 1e-9,
) -> InterlaceReport:
    """Strict zero interlacing of P[n] and P[n+e_k] for all |n| <= max_weight.

    ``min_gap`` guards the strictness against bisection noise: a shared zero
    shows up as a gap at rounding size and is reported as a failure.
    """
    if max_weight > 64:
        raise ValueError("interlacing checks are limited to |n| <= 64")
    cache: dict[tuple[int, ...], list[float]] = {}

    def zeros_of(idx: MultiIndex) -> list[float]:
        key = idx.entries
        if key not in cache:
            cache[key] = real_zeros(provider, idx)
        return cache[key]

    rows = []
    for idx in indices_up_to_weight(provider.r, max_weight):
        for k in range(provider.r):
            lower = zeros_of(idx)
            upper = zeros_of(idx.up(k))
            ok = _strictly_interlaced(lower, upper, min_gap)
            rows.append(
                InterlaceRow(
                    index=idx.entries,
                    k=k,
                    ok=ok,
                    zeros_lower=tuple(lower),
                    zeros_upper=tuple(upper),
                )
            )
    return InterlaceReport(family=provider.label(), max_weight=max_weight, rows=tuple(rows))


@dataclass(frozen=True)
class DensityReport:
    family: str
    index: tuple[int, ...]
    model_index: tuple[int, ...]
    edges: tuple[float, ...]
    masses: tuple[float, ...]
    centers: tuple[float, ...]
    model_density: tuple[float, ...]
    model_masses: tuple[float, ...]
    sup_discrepancy: float
    epsilon: float


def density_compare(
    provider: CoefficientProvider,
    ray: RaySpec,
    n: int,
    bins: int,
    *,
    delta_min: float = DEFAULT_DELTA_MIN,
) -> DensityReport:
    """Zero-count histogram against the smoothed model density.

    The model is -(1/pi) Im S(t + i*eps) sampled at bin centers, where S is
    the zero-distribution transform estimated at the fourfold index and
    eps = 2 * bin width; both sides are compared as per-bin masses (the
    histogram masses sum to 1).
    """
    if bins < 1:
        raise ValueError("bins must be >= 1")
    idx = ray_index(ray, n)
    if idx.weight > 64:
        raise ValueError("zero extraction is limited to |n| <= 64")
    if idx.weight < 2:
        raise ValueError("need degree >= 2 for a histogram")
    zeros = np.asarray(real_zeros(provider, idx))
    lo, hi = float(zeros.min()), float(zeros.max())
    if hi - lo <= 0:
        raise ValueError("zeros are too clustered for a histogram")
    edges = np.linspace(lo, hi, bins + 1)
    counts, _ = np.histogram(zeros, bins=edges)
    masses = counts / float(len(zeros))
    width = float(edges[1] - edges[0])
    eps = 2.0 * width
    centers = 0.5 * (edges[:-1] + edges[1:])
    idx4 = ray_index(ray, 4 * n)
    density = np.array(
        [
            -complex(
                stieltjes_estimate(provider, idx4, complex(t, eps), delta_min=delta_min)
            ).imag
            / math.pi
            for t in centers
        ]
    )
    model_masses = density * width
    sup = float(np.max(np.abs(masses - model_masses)))
    return DensityReport(
        family=provider.label(),
        index=idx.entries,
        model_index=idx4.entries,
        edges=tuple(float(v) for v in edges),
        masses=tuple(float(v) for v in masses),
        centers=tuple(float(v) for v in centers),
        model_density=tuple(float(v) for v in density),
        model_masses=tuple(float(v) for v in model_masses),
        sup_discrepancy=sup,
        epsilon=eps,
    )


def merge_consistency_check(
    a_values: Sequence[float],
    beta: float,
    xs: Sequence[complex],
) -> float:
    """Max |z_merged - z_grouped| over xs.

    ``z_grouped`` merges coinciding b-limits (beta, beta, ...) internally;
    ``z_merged`` starts from the single summed group.  Both must give the
    same branch.
    """
    grouped = LimitData.from_values(list(a_values), [beta] * len(a_values))
    single = LimitData.from_values([float(sum(a_values))], [beta])
    eq_grouped = partial_fraction_numerator(grouped)
    eq_single = partial_fraction_numerator(single)
    worst = 0.0
    for x in xs:
        z1 = principal_branch(eq_grouped, x).z
        z2 = principal_branch(eq_single, x).z
        worst = max(worst, abs(z1 - z2))
    return worst


def ratio_recurrence_residuals(
    provider: CoefficientProvider,
    x: complex,
    path: Sequence[int],
    *,
    delta_min: float = DEFAULT_DELTA_MIN,
) -> list[float]:
    """Per-step residual of x = ratio + b[n,k] + sum_j a[n,j] h_j, relative.

    A state-threading consistency check: the h used are the ones carried at
    the index the step departs from.
    """
    state = init_state(provider, x, delta_min=delta_min)
    out = []
    for k in path:
        a, b = provider.coefficients(state.index)
        acc = 0j
        for j in range(provider.r):
            if state.index[j] > 0:
                acc += a[j] * state.h[j]
        state = advance(state, k, provider)
        residual = abs(complex(x) - state.forward_ratio - b[k] - acc)
        scale = max(abs(complex(x)), abs(state.forward_ratio), 1.0)
        out.append(float(residual / scale))
    return out


def ratio_bound_violations(
    provider: CoefficientProvider,
    x: complex,
    path: Sequence[int],
    *,
    slack: float = 1e-12,
    delta_min: float = DEFAULT_DELTA_MIN,
) -> int:
    """Count of ratio-bound violations |h_j| > (1 + slack)/|Im x| on a walk."""
    bound = (1.0 + slack) / abs(complex(x).imag)
    state = init_state(provider, x, delta_min=delta_min)
    violations = 0
    for k in path:
        state = advance(state, k, provider)
        for j in range(provider.r):
            if state.index[j] > 0 and abs(state.h[j]) > bound:
                violations += 1
    return violations
