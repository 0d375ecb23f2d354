"""Overflow-safe evaluation of the polynomials, their ratios and derivatives.

Two engines:

* Ratio propagation walks a lattice path keeping only the neighbor ratios
  h[j] = P[n - e_j](x) / P[n](x), the accumulated log of P[n](x), and the
  logarithmic derivative u = P'[n](x)/P[n](x).  Off the real axis the ratios
  are bounded by 1/|Im x| whenever neighboring zeros interlace, so the walk
  never overflows however large the degree gets.

* Renormalized dynamic programming fills the whole lower set of an index
  with per-weight-slice rescaling.  It works on and near the real axis and
  is the engine behind real-zero extraction, at the cost of visiting every
  index below the target.

The recurrence in both engines is

    x P[n] = P[n + e_k] + b[n, k] P[n] + sum_j a[n, j] P[n - e_j],

with P at the origin equal to 1 and P[n - e_j] treated as 0 when n_j = 0.
Advancing in direction k updates the ratios for the other directions through
the cross-direction identity P[m + e_k] - P[m + e_j] = (b[m, j] - b[m, k]) P[m]
applied at m = n - e_j.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from itertools import groupby
from typing import Sequence

import mpmath as mp
import numpy as np

from .errors import (
    DegeneratePointError,
    OffAxisError,
    ResourceLimitError,
    ZeroIsolationError,
)
from .families import CoefficientProvider
from .lattice import LatticePath, MultiIndex, build_path, lower_set

DEFAULT_DELTA_MIN = 1e-8
DEFAULT_DP_CAP = 10_000_000


def _log_any(v):
    if isinstance(v, (mp.mpc, mp.mpf)):
        return mp.log(v)
    return cmath.log(v)


@dataclass(frozen=True)
class RatioState:
    """Evaluation state at a lattice point.

    h[j] = P[n - e_j](x)/P[n](x) with h[j] = 0 when n_j = 0; log_p
    accumulates the principal log of each forward step ratio, so
    exp(log_p) = P[n](x); u = P'[n](x)/P[n](x); g[j] = P'[n - e_j](x)/P[n](x)
    is carried so the derivative updates need no second pass.
    forward_ratio is P[n](x)/P[previous](x) from the step that produced this
    state (None at the origin).
    """

    x: complex
    index: MultiIndex
    h: tuple
    g: tuple
    log_p: complex
    u: complex
    forward_ratio: complex | None
    delta_min: float
    dps: int | None


def init_state(
    provider: CoefficientProvider,
    x: complex,
    *,
    delta_min: float = DEFAULT_DELTA_MIN,
    dps: int | None = None,
) -> RatioState:
    """State at the origin: P = 1, all ratios and derivatives zero."""
    r = provider.r
    if dps is not None:
        with mp.workdps(dps):
            xv = mp.mpc(x)
            zero = mp.mpc(0)
    else:
        xv = complex(x)
        zero = 0j
    return RatioState(
        x=xv,
        index=MultiIndex.zero(r),
        h=(zero,) * r,
        g=(zero,) * r,
        log_p=zero,
        u=zero,
        forward_ratio=None,
        delta_min=float(delta_min),
        dps=dps,
    )


def _advance_impl(state: RatioState, k: int, provider: CoefficientProvider) -> RatioState:
    n = state.index
    r = n.r
    if k < 0 or k >= r:
        raise ValueError(f"direction {k} out of range for r={r}")
    x = state.x
    if abs(x.imag) < state.delta_min:
        raise OffAxisError(
            f"ratio propagation needs |Im x| >= {state.delta_min:g}; "
            f"got Im x = {float(x.imag):g} (use the DP engine near the axis)"
        )
    a, b = provider.coefficients(n)
    s_h = 0
    s_g = 0
    for j in range(r):
        if n[j] > 0 and a[j] != 0.0:
            s_h = s_h + a[j] * state.h[j]
            s_g = s_g + a[j] * state.g[j]
    ratio = x - b[k] - s_h
    if abs(ratio) < 1e-300:
        raise DegeneratePointError(
            f"forward ratio vanished at index {n.entries}, direction {k}: "
            f"x = {complex(x)} sits at a polynomial zero"
        )
    hk = 1 / ratio
    new_h = [None] * r
    new_g = [None] * r
    zero = x * 0
    for j in range(r):
        if j == k:
            new_h[j] = hk
            new_g[j] = state.u * hk
        elif n[j] > 0:
            bm = provider.b_coefficients(n.down(j))
            delta_b = bm[j] - bm[k]
            new_h[j] = hk * (1 + delta_b * state.h[j])
            new_g[j] = hk * (state.u + delta_b * state.g[j])
        else:
            new_h[j] = zero
            new_g[j] = zero
    u_new = hk * (1 + (x - b[k]) * state.u - s_g)
    return RatioState(
        x=x,
        index=n.up(k),
        h=tuple(new_h),
        g=tuple(new_g),
        log_p=state.log_p + _log_any(ratio),
        u=u_new,
        forward_ratio=ratio,
        delta_min=state.delta_min,
        dps=state.dps,
    )


def advance(state: RatioState, k: int, provider: CoefficientProvider) -> RatioState:
    """One recurrence step in direction k; returns the state at n + e_k."""
    if state.dps is not None:
        with mp.workdps(state.dps):
            return _advance_impl(state, k, provider)
    return _advance_impl(state, k, provider)


def propagate(
    provider: CoefficientProvider,
    x: complex,
    path: LatticePath | Sequence[int],
    *,
    delta_min: float = DEFAULT_DELTA_MIN,
    dps: int | None = None,
) -> RatioState:
    """Walk a path from the origin and return the final state."""
    state = init_state(provider, x, delta_min=delta_min, dps=dps)
    if dps is not None:
        with mp.workdps(dps):
            for step in path:
                state = _advance_impl(state, step, provider)
        return state
    for step in path:
        state = _advance_impl(state, step, provider)
    return state


def neighbor_ratio(
    provider: CoefficientProvider,
    n: MultiIndex | Sequence[int],
    k: int,
    x: complex,
    *,
    scaled: tuple[float, int] | None = None,
    path: LatticePath | Sequence[int] | None = None,
    delta_min: float = DEFAULT_DELTA_MIN,
    dps: int | None = None,
):
    """The ratio P[n + e_k](x) / P[n](x), propagated along a lattice path.

    With ``scaled = (gamma, n_scale)`` the evaluation point becomes
    n_scale^gamma * x and the result is divided by n_scale^gamma, matching
    the scaled ratio whose limit is z(x) - b_k.  When ``dps`` is set the walk
    runs in mpmath arithmetic at that precision and returns an mpmath value.
    """
    n = MultiIndex.of(n)
    if path is None:
        path = build_path(n)
    else:
        path = path if isinstance(path, LatticePath) else LatticePath(tuple(path), n.r)
        if path.endpoint().entries != n.entries:
            raise ValueError(f"path ends at {path.endpoint().entries}, expected {n.entries}")

    if scaled is not None:
        gamma, n_scale = scaled
        if n_scale < 1:
            raise ValueError("scaled reference size must be >= 1")
        if dps is not None:
            with mp.workdps(dps):
                pref = mp.power(n_scale, gamma)
                xv = mp.mpc(x) * pref
        else:
            pref = float(n_scale) ** float(gamma)
            xv = complex(x) * pref
    else:
        pref = 1
        xv = x

    state = propagate(provider, xv, path, delta_min=delta_min, dps=dps)
    if dps is not None:
        with mp.workdps(dps):
            state = _advance_impl(state, k, provider)
            return state.forward_ratio / pref
    state = _advance_impl(state, k, provider)
    ratio = state.forward_ratio
    return ratio / pref if pref != 1 else ratio


def stieltjes_estimate(
    provider: CoefficientProvider,
    n: MultiIndex | Sequence[int],
    x: complex,
    *,
    delta_min: float = DEFAULT_DELTA_MIN,
    dps: int | None = None,
):
    """(1/|n|) P'[n](x)/P[n](x), the finite-degree transform of the zero
    counting measure; converges to the transform of the limiting zero
    distribution along a ray."""
    n = MultiIndex.of(n)
    if n.weight == 0:
        raise ValueError("the zero-distribution transform is undefined at the origin")
    state = propagate(provider, x, build_path(n), delta_min=delta_min, dps=dps)
    return state.u / n.weight


def telescoped_logderiv(
    provider: CoefficientProvider,
    n: MultiIndex | Sequence[int],
    x: complex,
    *,
    delta_min: float = DEFAULT_DELTA_MIN,
    dps: int | None = None,
):
    """P'[n](x)/P[n](x) assembled by telescoping over the last direction.

    Writes the log-derivative as the one at n - n_{r-1} e_{r-1} plus the sum
    of logarithmic derivatives of the consecutive neighbor ratios along
    direction r-1.  Equal to the directly propagated u as a finite-degree
    identity; computing it through the (h, g) pairs cross-checks both
    propagations.
    """
    n = MultiIndex.of(n)
    last = n.r - 1
    base = MultiIndex(tuple(v if j != last else 0 for j, v in enumerate(n.entries)))

    def body():
        state = propagate(provider, x, build_path(base), delta_min=delta_min, dps=dps)
        total = state.u
        for _ in range(n[last]):
            state = _advance_impl(state, last, provider)
            total = total + (state.u - state.g[last] / state.h[last])
        return total

    if dps is not None:
        with mp.workdps(dps):
            return body()
    return body()


@dataclass(frozen=True)
class ScaledValue:
    """A value stored as mantissa * exp(exponent) to dodge overflow."""

    mantissa: complex
    exponent: float

    @property
    def value(self) -> complex:
        return self.mantissa * math.exp(self.exponent)

    def log(self) -> complex:
        if self.mantissa == 0:
            raise ValueError("log of zero value")
        return cmath.log(complex(self.mantissa)) + self.exponent

    def __abs__(self) -> float:
        return abs(self.mantissa) * math.exp(self.exponent)


class EvalGrid:
    """Lower-set table of scaled values and derivatives at one point x."""

    def __init__(self, x, values, derivs, slice_exponents):
        self.x = x
        self._values = values
        self._derivs = derivs
        self._slice_exponents = slice_exponents

    def value(self, m: MultiIndex | Sequence[int]) -> ScaledValue:
        m = MultiIndex.of(m)
        return ScaledValue(self._values[m.entries], self._slice_exponents[m.weight])

    def derivative(self, m: MultiIndex | Sequence[int]) -> ScaledValue:
        m = MultiIndex.of(m)
        return ScaledValue(self._derivs[m.entries], self._slice_exponents[m.weight])

    def indices(self):
        return list(self._values.keys())


def _dp_engine(provider, n, xs, cap, keep_all):
    n = MultiIndex.of(n)
    size = 1
    for e in n.entries:
        size *= e + 1
        if size > cap:
            raise ResourceLimitError(
                f"lower set of {n.entries} exceeds the DP cap of {cap} entries"
            )
    arr = np.asarray(xs)
    scalar = arr.ndim == 0
    arr = np.atleast_1d(arr)
    dtype = np.complex128 if np.iscomplexobj(arr) else np.float64
    arr = arr.astype(dtype)

    members = lower_set(n)
    values: dict[tuple[int, ...], np.ndarray] = {}
    derivs: dict[tuple[int, ...], np.ndarray] = {}
    slice_exp: dict[int, float] = {0: 0.0}
    origin = (0,) * n.r
    values[origin] = np.ones_like(arr)
    derivs[origin] = np.zeros_like(arr)

    by_weight = groupby(members[1:], key=lambda m: m.weight)
    prev_keys: set[tuple[int, ...]] = {origin}
    for weight, group in by_weight:
        slice_raw_v: dict[tuple[int, ...], np.ndarray] = {}
        slice_raw_d: dict[tuple[int, ...], np.ndarray] = {}
        fac2 = math.exp(slice_exp[weight - 2] - slice_exp[weight - 1]) if weight >= 2 else 0.0
        for m in group:
            k = next(j for j in range(n.r) if m[j] > 0)
            parent = m.down(k)
            pk = parent.entries
            a, b = provider.coefficients(parent)
            shifted = arr - b[k]
            val = shifted * values[pk]
            der = values[pk] + shifted * derivs[pk]
            for j in range(n.r):
                if parent[j] > 0 and a[j] != 0.0:
                    gk = parent.down(j).entries
                    val = val - (a[j] * fac2) * values[gk]
                    der = der - (a[j] * fac2) * derivs[gk]
            slice_raw_v[m.entries] = val
            slice_raw_d[m.entries] = der
        peak = max(float(np.max(np.abs(v))) for v in slice_raw_v.values())
        shift = math.log(peak) if peak > 0.0 and math.isfinite(peak) else 0.0
        scale = math.exp(-shift)
        for key in slice_raw_v:
            values[key] = slice_raw_v[key] * scale
            derivs[key] = slice_raw_d[key] * scale
        slice_exp[weight] = slice_exp[weight - 1] + shift
        if not keep_all:
            drop = {key for key in prev_keys if sum(key) <= weight - 2}
            for key in drop:
                del values[key], derivs[key]
            prev_keys = (prev_keys - drop) | set(slice_raw_v.keys())
    return n, values, derivs, slice_exp, scalar


def eval_grid(
    provider: CoefficientProvider,
    n: MultiIndex | Sequence[int],
    x: complex,
    *,
    cap: int = DEFAULT_DP_CAP,
) -> EvalGrid:
    """Full lower-set evaluation at a single point (any x, real included)."""
    n, values, derivs, slice_exp, _ = _dp_engine(provider, n, complex(x), cap, keep_all=True)
    values = {k: v[0] for k, v in values.items()}
    derivs = {k: v[0] for k, v in derivs.items()}
    return EvalGrid(complex(x), values, derivs, slice_exp)


def eval_dp(
    provider: CoefficientProvider,
    n: MultiIndex | Sequence[int],
    x,
    *,
    cap: int = DEFAULT_DP_CAP,
) -> tuple[ScaledValue, ScaledValue]:
    """P[n](x) and P'[n](x) as scaled pairs, by direct dynamic programming.

    ``x`` may be a scalar or an ndarray of points; for arrays the mantissas
    are arrays sharing one exponent per call.
    """
    n, values, derivs, slice_exp, scalar = _dp_engine(provider, n, x, cap, keep_all=False)
    top = n.entries
    exp = slice_exp[n.weight]
    if scalar:
        val = complex(values[top][0])
        der = complex(derivs[top][0])
        if val != 0:
            # rebalance so the returned mantissa sits at magnitude 1
            shift = math.log(abs(val))
            rescale = math.exp(-shift)
            return ScaledValue(val * rescale, exp + shift), ScaledValue(der * rescale, exp + shift)
        return ScaledValue(val, exp), ScaledValue(der, exp)
    return ScaledValue(values[top], exp), ScaledValue(derivs[top], exp)


def _zero_bracket(provider, n):
    b_lo = math.inf
    b_hi = -math.inf
    a_peak = [0.0] * n.r
    for m in lower_set(n):
        a, b = provider.coefficients(m)
        b_lo = min(b_lo, min(b))
        b_hi = max(b_hi, max(b))
        for j in range(n.r):
            a_peak[j] = max(a_peak[j], abs(a[j]))
    spread = 2.0 * sum(math.sqrt(v) for v in a_peak)
    return b_lo - spread - 1.0, b_hi + spread + 1.0


def real_zeros(
    provider: CoefficientProvider,
    n: MultiIndex | Sequence[int],
    *,
    tol: float = 1e-12,
    cap: int = DEFAULT_DP_CAP,
) -> list[float]:
    """All real zeros of P[n], sorted, for degrees up to 64.

    Sign-change scanning of the DP values over a bracket sized from the
    coefficient magnitudes, then bisection.  Requires the zeros to be real
    and simple; anything else surfaces as ZeroIsolationError.
    """
    n = MultiIndex.of(n)
    deg = n.weight
    if deg > 64:
        raise ValueError("real zero extraction is limited to |n| <= 64")
    if deg == 0:
        return []
    lo, hi = _zero_bracket(provider, n)

    def top_values(points: np.ndarray) -> np.ndarray:
        val, _ = eval_dp(provider, n, points, cap=cap)
        return np.asarray(val.mantissa)

    found = -1
    for widen in range(4):
        for refine in range(3):
            npts = max(256, 24 * deg) * 4**refine
            # tiny offset keeps grid nodes off exact zeros
            grid = np.linspace(lo + (hi - lo) * 1.7e-9, hi, npts)
            vals = top_values(grid)
            signs = np.sign(vals)
            flips = np.nonzero(signs[:-1] * signs[1:] < 0)[0]
            found = len(flips)
            if found == deg:
                los = grid[flips]
                his = grid[flips + 1]
                s_lo = signs[flips]
                for _ in range(200):
                    mids = 0.5 * (los + his)
                    s_mid = np.sign(top_values(mids))
                    go_right = s_mid == s_lo
                    los = np.where(go_right, mids, los)
                    his = np.where(go_right, his, mids)
                    if float(np.max(his - los)) <= tol:
                        break
                return [float(v) for v in 0.5 * (los + his)]
        center = 0.5 * (lo + hi)
        half = hi - center
        lo, hi = center - 2 * half, center + 2 * half
    raise ZeroIsolationError(
        f"found {found} sign changes for degree {deg} at index {n.entries}; "
        "zeros are complex or multiple"
    )
