"""The limiting algebraic function of the neighbor ratios.

Coefficient limits (a, b) define the equation

    (z - x) B(z) + A(z) = 0,      B(z) = prod_j (z - b*_j),
    A(z)/B(z) = sum_j a*_j / (z - b*_j),

over the merged groups (b*, a*) of coinciding b-limits.  Of its s + 1 roots,
exactly one satisfies z(x) - x -> 0 at infinity; that principal branch gives
the ratio limits z(x) - b_k.  The other roots approach the b*_j.

Branch selection is done by continuation along a vertical line: far above
the real axis the principal root is isolated near x - (sum a*)/x, and the
tracker descends geometrically toward the requested point, halving its step
whenever two candidate roots come too close to distinguish.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import mpmath as mp
import numpy as np

from .errors import (
    BranchTrackingError,
    DegenerateLimitError,
    OffAxisError,
    RootSolverError,
)
from .families import LimitData

TRACK_DESCENT = 0.7
TRACK_AMBIGUITY_GAP = 1e-8
TRACK_MIN_STEP = 1e-12


@dataclass(frozen=True)
class LimitEquation:
    """B and A for the limit equation, plus the pre-merge b list.

    ``b_star``/``a_star`` are the merged groups actually entering the
    equation; groups whose summed a vanishes contribute nothing to the
    partial fractions and are omitted (unless every group vanishes, which
    degenerates the equation to (z - x) B(z) = 0).  ``b_original`` keeps the
    direction-indexed b-limits so ratio limits subtract the right b_k.
    """

    b_star: tuple[float, ...]
    a_star: tuple[float, ...]
    b_original: tuple[float, ...]
    b_coeffs: tuple[float, ...]
    a_coeffs: tuple[float, ...]

    @property
    def s(self) -> int:
        return len(self.b_star)

    @property
    def degenerate(self) -> bool:
        """True when all residues vanish and the principal branch is z = x."""
        return all(v == 0.0 for v in self.a_star)


def partial_fraction_numerator(limits: LimitData) -> LimitEquation:
    """Build A and B from merged limit data.

    A(z) = sum_j a*_j prod_{i != j} (z - b*_i) is the unique numerator whose
    partial fractions over B recover the residues a*_j.
    """
    if not limits.branch_supported:
        raise DegenerateLimitError(
            "all b-limits of this configuration coincide without a parameter "
            "scaling; the decomposition into simple poles is unavailable"
        )
    groups = limits.merged
    if not groups:
        raise ValueError("limit data has no merged groups")
    for i in range(len(groups) - 1):
        if groups[i].b_star == groups[i + 1].b_star:
            raise DegenerateLimitError("coinciding group values survived merging")
    kept = [g for g in groups if g.a_star != 0.0]
    if not kept:
        kept = list(groups)
    b_star = tuple(g.b_star for g in kept)
    a_star = tuple(g.a_star for g in kept)
    b_poly = np.atleast_1d(np.poly(np.asarray(b_star, dtype=float)))
    a_poly = np.zeros(max(len(b_star), 1), dtype=float)
    for j, g in enumerate(kept):
        if g.a_star == 0.0:
            continue
        others = [v for i, v in enumerate(b_star) if i != j]
        term = g.a_star * np.atleast_1d(np.poly(np.asarray(others, dtype=float)))
        a_poly[len(a_poly) - len(term):] += term
    return LimitEquation(
        b_star=b_star,
        a_star=a_star,
        b_original=tuple(limits.b),
        b_coeffs=tuple(float(c) for c in b_poly),
        a_coeffs=tuple(float(c) for c in a_poly),
    )


def build_equation(eq: LimitEquation, x: complex) -> np.ndarray:
    """Monic coefficient vector (descending) of (z - x) B(z) + A(z)."""
    shift = np.array([1.0, -complex(x)], dtype=complex)
    f = np.polymul(shift, np.asarray(eq.b_coeffs, dtype=complex))
    return np.polyadd(f, np.asarray(eq.a_coeffs, dtype=complex))


def _aberth(coeffs: np.ndarray, start: np.ndarray | None = None, *,
            max_iter: int = 200, rel_tol: float = 1e-14) -> np.ndarray:
    c = np.asarray(coeffs, dtype=complex)
    if len(c) < 2 or c[0] == 0:
        raise ValueError("polynomial must have degree >= 1 with nonzero leading coefficient")
    deg = len(c) - 1
    c = c / c[0]
    if deg == 1:
        return np.array([-c[1]])
    if start is None:
        radius = 1.0 + float(np.max(np.abs(c)))
        angles = 2.0 * np.pi * (np.arange(deg) + 0.25) / deg + 0.42
        z = radius * np.exp(1j * angles)
    else:
        z = np.array(start, dtype=complex)
    dc = np.polyder(c)
    for _ in range(max_iter):
        p = np.polyval(c, z)
        dp = np.polyval(dc, z)
        dp = np.where(dp == 0, 1e-300, dp)
        w = p / dp
        diff = z[:, None] - z[None, :]
        np.fill_diagonal(diff, 1.0)
        s = (1.0 / diff).sum(axis=1) - 1.0
        denom = 1.0 - w * s
        denom = np.where(denom == 0, 1e-300, denom)
        corr = w / denom
        z = z - corr
        if np.all(np.abs(corr) <= rel_tol * (1.0 + np.abs(z))):
            return z
    raise RootSolverError(f"simultaneous iteration did not converge in {max_iter} steps")


def all_roots(coeffs: Sequence[complex] | np.ndarray, *, max_iter: int = 200) -> np.ndarray:
    """All roots of a polynomial given by descending coefficients.

    Simultaneous (Aberth-style) iteration started on a circle of radius
    1 + max |coef|; converged roots must pass the residual bound
    |F(root)| <= 1e-12 * sum|coef| * max(1, |root|)^deg.
    """
    c = np.asarray(coeffs, dtype=complex)
    roots = _aberth(c, max_iter=max_iter)
    deg = len(c) - 1
    budget = 1e-12 * float(np.sum(np.abs(c)))
    residuals = np.abs(np.polyval(c, roots))
    bounds = budget * np.maximum(1.0, np.abs(roots)) ** deg
    if np.any(residuals > bounds):
        worst = float(np.max(residuals / np.maximum(bounds, 1e-300)))
        raise RootSolverError(f"root residuals exceed the acceptance bound by x{worst:.2e}")
    return roots


@dataclass(frozen=True)
class PathLog:
    """Continuation diagnostics: accepted steps and smallest root gap seen."""

    steps: int
    min_gap: float


@dataclass(frozen=True)
class BranchResult:
    x: complex
    z: complex
    all_roots: tuple[complex, ...]
    path_log: PathLog


def _residual_ok(eq: LimitEquation, x: complex, z: complex) -> bool:
    f = np.polyval(build_equation(eq, x), z)
    return abs(f) <= 1e-10 * (1.0 + abs(x)) ** (eq.s + 1)


def principal_branch(
    eq: LimitEquation,
    x: complex,
    *,
    descent: float = TRACK_DESCENT,
    ambiguity_gap: float = TRACK_AMBIGUITY_GAP,
    min_step: float = TRACK_MIN_STEP,
) -> BranchResult:
    """The solution z(x) with z(x) - x -> 0 at infinity.

    Supported off the real axis, and on it only outside the hull of the real
    branch points where the branch continues analytically.
    """
    x = complex(x)
    if eq.degenerate:
        roots = (x,) + tuple(complex(b) for b in eq.b_star)
        return BranchResult(x=x, z=x, all_roots=roots, path_log=PathLog(0, math.inf))

    if x.imag == 0.0:
        real_xs = [bp.x.real for bp in branch_points(eq) if abs(bp.x.imag) <= 1e-9]
        if real_xs and min(real_xs) - 1e-12 <= x.real <= max(real_xs) + 1e-12:
            raise OffAxisError(
                f"real x = {x.real:g} lies inside the hull of the real branch points "
                f"[{min(real_xs):g}, {max(real_xs):g}]; the principal branch is only "
                "continued outside it"
            )

    total_a = float(sum(eq.a_star))
    scale = max(
        max(abs(v) for v in eq.b_star),
        math.sqrt(max(abs(v) for v in eq.a_star)),
        abs(x),
    )
    big = 1e3 * (1.0 + scale)
    sign = 1.0 if x.imag >= 0 else -1.0
    x0 = x + 1j * big * sign

    roots = _aberth(build_equation(eq, x0))
    far_field = x0 - total_a / x0
    z = complex(roots[int(np.argmin(np.abs(roots - far_field)))])

    steps = 0
    min_gap = math.inf
    t = 1.0
    t_end = min_step * (1.0 + abs(x)) / big

    def solve_at(t_val: float, warm: np.ndarray) -> tuple[np.ndarray, complex, float]:
        xt = x + (x0 - x) * t_val
        rr = _aberth(build_equation(eq, xt), start=warm)
        order = np.argsort(np.abs(rr - z))
        nearest = complex(rr[int(order[0])])
        gap = abs(rr[int(order[0])] - rr[int(order[1])]) if len(rr) > 1 else math.inf
        return rr, nearest, gap

    while t > t_end:
        t_next = t * descent
        while True:
            roots_next, nearest, gap = solve_at(t_next, roots)
            if gap >= ambiguity_gap:
                break
            t_next = 0.5 * (t + t_next)
            if t - t_next < min_step:
                xt = x + (x0 - x) * t_next
                bps = branch_points(eq)
                nearest_bp = min((bp.x for bp in bps), key=lambda b: abs(b - xt))
                raise BranchTrackingError(
                    f"branch tracking stalled near x = {xt}: two roots within "
                    f"{gap:.2e}; nearest branch point at x* = {nearest_bp}",
                    nearest_branch_point=nearest_bp,
                )
        roots = roots_next
        z = nearest
        min_gap = min(min_gap, gap)
        steps += 1
        t = t_next

    final = _aberth(build_equation(eq, x), start=roots)
    z = complex(final[int(np.argmin(np.abs(final - z)))])
    if not _residual_ok(eq, x, z):
        raise RootSolverError(f"tracked branch fails the equation residual at x = {x}")
    return BranchResult(
        x=x, z=z, all_roots=tuple(complex(v) for v in final), path_log=PathLog(steps, min_gap)
    )


def ratio_limit(eq: LimitEquation, x: complex, k: int) -> complex:
    """Predicted neighbor-ratio limit z(x) - b_k (pre-merge b for direction k)."""
    if k < 0 or k >= len(eq.b_original):
        raise ValueError(f"direction {k} out of range")
    return principal_branch(eq, x).z - eq.b_original[k]


@dataclass(frozen=True)
class BranchPoint:
    """A double root z* of the limit equation and its base point x*."""

    z: complex
    x: complex


def branch_points(eq: LimitEquation) -> list[BranchPoint]:
    """All 2s branch points (with multiplicity) of the limit equation.

    Double roots in z occur exactly where B^2 - A B' + A' B vanishes; the
    matching x* follows from the equation itself as z* + A(z*)/B(z*).
    """
    if eq.degenerate:
        raise DegenerateLimitError("all residues vanish; the equation has no branch points")
    b = np.asarray(eq.b_coeffs, dtype=float)
    a = np.asarray(eq.a_coeffs, dtype=float)
    db = np.polyder(b)
    da = np.polyder(a) if len(a) > 1 else np.zeros(1)
    g = np.polyadd(np.polysub(np.polymul(b, b), np.polymul(a, db)), np.polymul(da, b))
    zs = all_roots(g)
    xs = zs + np.polyval(a, zs) / np.polyval(b, zs)
    pairs = sorted(
        (BranchPoint(z=complex(z), x=complex(xv)) for z, xv in zip(zs, xs)),
        key=lambda bp: (bp.x.real, bp.x.imag, bp.z.real, bp.z.imag),
    )
    return pairs


def refine_principal(eq: LimitEquation, x: complex, z0: complex, dps: int):
    """Polish a principal-branch value by Newton steps in mpmath arithmetic.

    Used by the convergence experiments when the empirical side runs at
    extended precision, so the reference limit does not cap the measurable
    error at double-precision size.
    """
    with mp.workdps(dps):
        xm = mp.mpc(x)
        if eq.degenerate:
            return xm
        coeffs = [mp.mpf(1)]
        for bv in eq.b_star:
            coeffs = _mp_mul_linear(coeffs, mp.mpf(bv))
        f = _mp_shift_mul(coeffs, xm)
        a_coeffs = [mp.mpf(0)] * max(len(coeffs), 1)
        for j, av in enumerate(eq.a_star):
            if av == 0.0:
                continue
            term = [mp.mpf(1)]
            for i, bv in enumerate(eq.b_star):
                if i != j:
                    term = _mp_mul_linear(term, mp.mpf(bv))
            term = [mp.mpf(av) * t for t in term]
            for i, t in enumerate(reversed(term)):
                a_coeffs[len(a_coeffs) - 1 - i] += t
        f = _mp_add(f, a_coeffs)
        df = [c * (len(f) - 1 - i) for i, c in enumerate(f[:-1])]
        z = mp.mpc(z0)
        tol = mp.mpf(10) ** (5 - dps)
        for _ in range(100):
            fz = _mp_polyval(f, z)
            dfz = _mp_polyval(df, z)
            if dfz == 0:
                break
            step = fz / dfz
            z = z - step
            if abs(step) <= tol * (1 + abs(z)):
                break
        return z


def _mp_mul_linear(coeffs, root):
    """Multiply a descending mp coefficient list by (z - root)."""
    out = [mp.mpf(0)] * (len(coeffs) + 1)
    for i, c in enumerate(coeffs):
        out[i] += c
        out[i + 1] -= c * root
    return out


def _mp_shift_mul(coeffs, x):
    """Multiply a descending mp coefficient list by (z - x) with complex x."""
    out = [mp.mpc(0)] * (len(coeffs) + 1)
    for i, c in enumerate(coeffs):
        out[i] += c
        out[i + 1] -= c * x
    return out


def _mp_add(f, g):
    n = max(len(f), len(g))
    f = [mp.mpc(0)] * (n - len(f)) + list(f)
    g = [mp.mpc(0)] * (n - len(g)) + list(g)
    return [a + b for a, b in zip(f, g)]


def _mp_polyval(coeffs, z):
    acc = mp.mpc(0)
    for c in coeffs:
        acc = acc * z + c
    return acc
