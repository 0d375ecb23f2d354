"""Recurrence-coefficient providers and their scaled limits.

Every provider answers ``coefficients(n) -> (a, b)`` for the relation

    x P[n] = P[n + e_k] + b[n, k] P[n] + sum_j a[n, j] P[n - e_j]

with the convention a[n, j] = 0 whenever n_j = 0 (the corresponding
neighbor polynomial is absent).  Limits along a ray are computed by
Richardson extrapolation by default, with closed forms overriding where a
family states them; disagreements beyond 1e-6 relative attach a warning
instead of failing.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, replace
from pathlib import Path
from typing import Callable, Mapping, Sequence

from .errors import (
    MissingEntryError,
    NoLimitError,
    NonConvergenceError,
    TableFormatError,
    UnsupportedCoefficientError,
)
from .lattice import MultiIndex, RaySpec, ray_index

CLOSED_FORM = "closed-form"
EXTRAPOLATED = "extrapolated"
GIVEN = "given"

_NONINTEGER_GAP = 1e-9


def _check_distinct(values: Sequence[float], what: str) -> None:
    for i in range(len(values)):
        for j in range(i + 1, len(values)):
            if values[i] == values[j]:
                raise ValueError(f"{what} must be pairwise distinct, got {values}")


def _check_noninteger_gaps(values: Sequence[float], what: str) -> None:
    for i in range(len(values)):
        for j in range(i + 1, len(values)):
            d = values[i] - values[j]
            if abs(d - round(d)) < _NONINTEGER_GAP:
                raise ValueError(
                    f"pairwise differences of {what} must not be integers, got {values}"
                )


@dataclass(frozen=True)
class MergedGroup:
    """One group of coinciding b-limits: representative value, summed a."""

    b_star: float
    a_star: float
    members: tuple[int, ...]


@dataclass(frozen=True)
class LimitData:
    """Limits of the recurrence coefficients along a ray.

    ``a[j]`` is the limit of a[n, j] / n^(2*gamma) and ``b[j]`` of
    b[n, j] / n^gamma.  ``merged`` groups coinciding b-limits with their
    summed a-values.  ``branch_supported`` is False for configurations whose
    limit equation is refused (all b-limits of a family collapse without a
    compensating parameter scaling).
    """

    a: tuple[float, ...]
    b: tuple[float, ...]
    gamma: float
    provenance_a: tuple[str, ...]
    provenance_b: tuple[str, ...]
    merged: tuple[MergedGroup, ...]
    warnings: tuple[str, ...] = ()
    branch_supported: bool = True

    @property
    def r(self) -> int:
        return len(self.a)

    @classmethod
    def from_values(
        cls,
        a: Sequence[float],
        b: Sequence[float],
        gamma: float = 0.0,
        *,
        tol: float = 1e-9,
    ) -> "LimitData":
        a = tuple(float(v) for v in a)
        b = tuple(float(v) for v in b)
        if len(a) != len(b):
            raise ValueError("a and b must have equal length")
        return cls(
            a=a,
            b=b,
            gamma=float(gamma),
            provenance_a=(GIVEN,) * len(a),
            provenance_b=(GIVEN,) * len(b),
            merged=_merge_groups(a, b, tol),
        )


def _merge_groups(a: Sequence[float], b: Sequence[float], tol: float) -> tuple[MergedGroup, ...]:
    """Chain-cluster b values whose sorted gaps are <= tol; sums the a's."""
    if tol <= 0:
        raise ValueError("tol must be > 0")
    order = sorted(range(len(b)), key=lambda j: b[j])
    groups: list[list[int]] = []
    for j in order:
        if groups and b[j] - b[groups[-1][-1]] <= tol:
            groups[-1].append(j)
        else:
            groups.append([j])
    out = []
    for g in groups:
        b_star = sum(b[j] for j in g) / len(g)
        a_star = sum(a[j] for j in g)
        out.append(MergedGroup(b_star=b_star, a_star=a_star, members=tuple(g)))
    return tuple(out)


def merge_coincident(limits: LimitData, tol: float = 1e-9) -> LimitData:
    """Re-group coinciding b-limits at tolerance ``tol``.

    Idempotent, and conserves the total of the a-limits.
    """
    return replace(limits, merged=_merge_groups(limits.a, limits.b, tol))


class CoefficientProvider:
    """Base class: a family (or table) of recurrence coefficients."""

    r: int
    param_scaling: bool = False

    def a_coefficients(self, n: MultiIndex) -> tuple[float, ...]:
        raise NotImplementedError

    def b_coefficients(self, n: MultiIndex) -> tuple[float, ...]:
        raise NotImplementedError

    def coefficients(self, n: MultiIndex) -> tuple[tuple[float, ...], tuple[float, ...]]:
        n = MultiIndex.of(n)
        if n.r != self.r:
            raise ValueError(f"index has {n.r} entries, provider expects {self.r}")
        return self.a_coefficients(n), self.b_coefficients(n)

    def with_reference(self, n_ref: int) -> "CoefficientProvider":
        """Provider with n-dependent parameters pinned at reference size n_ref.

        Identity for families without parameter scaling.
        """
        return self

    def closed_form_limits(
        self, ray: RaySpec
    ) -> tuple[tuple[float, ...] | None, tuple[float, ...] | None]:
        """Trusted closed-form limits (a, b); None where no formula applies."""
        return None, None

    def cross_check_limits(
        self, ray: RaySpec
    ) -> tuple[tuple[float, ...] | None, tuple[float, ...] | None]:
        """Stated limits used only for cross-checking, never as the value."""
        return None, None

    def validate_ray(self, ray: RaySpec) -> None:
        """Raise NoLimitError when limits along this ray cannot exist."""
        if ray.r != self.r:
            raise ValueError(f"ray has {ray.r} weights, provider expects {self.r}")

    def supports_branch_equation(self) -> bool:
        return True

    def label(self) -> str:
        return type(self).__name__


def _zero_where_axis(n: MultiIndex, values: Sequence[float]) -> tuple[float, ...]:
    return tuple(0.0 if n[j] == 0 else float(values[j]) for j in range(len(values)))


@dataclass(frozen=True)
class JacobiPineiro(CoefficientProvider):
    """Jacobi-type family on [0, 1] with weights x^alpha_j (1-x)^beta.

    Only the a-coefficients have a published closed form here; b-values must
    be supplied through ``b_table`` (mapping index tuple -> sequence of b),
    otherwise requesting them raises UnsupportedCoefficientError.
    """

    alpha: tuple[float, ...]
    beta: float
    b_table: Mapping[tuple[int, ...], Sequence[float]] | None = None

    def __post_init__(self) -> None:
        alpha = tuple(float(v) for v in self.alpha)
        object.__setattr__(self, "alpha", alpha)
        object.__setattr__(self, "beta", float(self.beta))
        if any(v <= -1.0 for v in alpha) or self.beta <= -1.0:
            raise ValueError("alpha_j and beta must be > -1")
        _check_noninteger_gaps(alpha, "alpha")

    @property
    def r(self) -> int:  # type: ignore[override]
        return len(self.alpha)

    def a_coefficients(self, n: MultiIndex) -> tuple[float, ...]:
        w = n.weight
        out = []
        for j in range(self.r):
            if n[j] == 0:
                out.append(0.0)
                continue
            aj = self.alpha[j]
            s = w + n[j] + aj + self.beta
            val = n[j] * (n[j] + aj) * (w + self.beta) / ((s + 1) * s * (s - 1))
            for i in range(self.r):
                val *= (w + self.alpha[i] + self.beta) / (w + n[i] + self.alpha[i] + self.beta)
            for i in range(self.r):
                if i != j:
                    val *= (n[j] + aj - self.alpha[i]) / (n[j] - n[i] + aj - self.alpha[i])
            out.append(val)
        return tuple(out)

    def b_coefficients(self, n: MultiIndex) -> tuple[float, ...]:
        if self.b_table is None:
            raise UnsupportedCoefficientError(
                "Jacobi-Pineiro b-coefficients are not built in; supply b_table "
                "or use a custom coefficient table"
            )
        key = tuple(n.entries)
        if key not in self.b_table:
            raise MissingEntryError(f"b_table has no entry for index {key}")
        b = self.b_table[key]
        if len(b) != self.r:
            raise TableFormatError(f"b_table entry for {key} has length {len(b)}, expected {self.r}")
        return tuple(float(v) for v in b)

    def validate_ray(self, ray: RaySpec) -> None:
        super().validate_ray(ray)
        for i in range(self.r):
            for j in range(i + 1, self.r):
                if abs(ray.q[i] - ray.q[j]) < 1e-12:
                    raise NoLimitError(
                        "Jacobi-Pineiro a-limits do not exist for coinciding ray weights"
                    )

    def closed_form_limits(self, ray: RaySpec):
        if ray.gamma != 0.0:
            return None, None
        a = []
        for j in range(self.r):
            qj = ray.q[j]
            val = qj ** (self.r + 1) / (1 + qj) ** 3
            for qi in ray.q:
                val /= 1 + qi
            for i, qi in enumerate(ray.q):
                if i != j:
                    val /= qj - qi
            a.append(val)
        return tuple(a), None

    def label(self) -> str:
        return "jacobipineiro"


@dataclass(frozen=True)
class MultipleHermite(CoefficientProvider):
    """Hermite-type family with shifted Gaussian weights exp(-x^2 + c_j x).

    a[n, j] = n_j / 2 and b[n, j] = c_j / 2.  With ``param_scaling`` the
    parameters grow with the reference size, c_j -> c_j * sqrt(n_ref), which
    keeps the scaled b-limits distinct.  Without it all b-limits coincide at
    gamma = 1/2 and the branch equation is refused.
    """

    c: tuple[float, ...]
    param_scaling: bool = False
    n_ref: int = 1

    def __post_init__(self) -> None:
        c = tuple(float(v) for v in self.c)
        object.__setattr__(self, "c", c)
        _check_distinct(c, "c")
        if self.n_ref < 1:
            raise ValueError("n_ref must be >= 1")

    @property
    def r(self) -> int:  # type: ignore[override]
        return len(self.c)

    def _c_effective(self) -> tuple[float, ...]:
        if self.param_scaling:
            s = math.sqrt(self.n_ref)
            return tuple(v * s for v in self.c)
        return self.c

    def a_coefficients(self, n: MultiIndex) -> tuple[float, ...]:
        return tuple(n[j] / 2.0 for j in range(self.r))

    def b_coefficients(self, n: MultiIndex) -> tuple[float, ...]:
        return tuple(v / 2.0 for v in self._c_effective())

    def with_reference(self, n_ref: int) -> "MultipleHermite":
        if not self.param_scaling:
            return self
        return replace(self, n_ref=int(n_ref))

    def closed_form_limits(self, ray: RaySpec):
        if abs(ray.gamma - 0.5) > 1e-12:
            return None, None
        if self.param_scaling:
            b = tuple(v / 2.0 for v in self.c)
        else:
            b = (0.0,) * self.r
        return None, b

    def cross_check_limits(self, ray: RaySpec):
        # The family is documented with lim a[n,j]/n = q_j, while the
        # displayed recurrence gives n_j/2 and hence q_j/2.  The recurrence
        # is what this provider implements; the stated value is kept only to
        # flag the mismatch.
        if abs(ray.gamma - 0.5) > 1e-12:
            return None, None
        return tuple(ray.q), None

    def supports_branch_equation(self) -> bool:
        return self.param_scaling

    def label(self) -> str:
        return "hermite"


@dataclass(frozen=True)
class MultipleLaguerreI(CoefficientProvider):
    """Laguerre family of the first kind: weights x^alpha_j exp(-x) on [0, inf)."""

    alpha: tuple[float, ...]

    def __post_init__(self) -> None:
        alpha = tuple(float(v) for v in self.alpha)
        object.__setattr__(self, "alpha", alpha)
        if any(v <= -1.0 for v in alpha):
            raise ValueError("alpha_j must be > -1")
        _check_noninteger_gaps(alpha, "alpha")

    @property
    def r(self) -> int:  # type: ignore[override]
        return len(self.alpha)

    def a_coefficients(self, n: MultiIndex) -> tuple[float, ...]:
        out = []
        for j in range(self.r):
            if n[j] == 0:
                out.append(0.0)
                continue
            aj = self.alpha[j]
            val = n[j] * (n[j] + aj)
            for i in range(self.r):
                if i != j:
                    val *= (n[j] + aj - self.alpha[i]) / (n[j] - n[i] + aj - self.alpha[i])
            out.append(val)
        return tuple(out)

    def b_coefficients(self, n: MultiIndex) -> tuple[float, ...]:
        w = n.weight
        return tuple(w + n[j] + self.alpha[j] + 1.0 for j in range(self.r))

    def validate_ray(self, ray: RaySpec) -> None:
        super().validate_ray(ray)
        for i in range(self.r):
            for j in range(i + 1, self.r):
                if abs(ray.q[i] - ray.q[j]) < 1e-12:
                    raise NoLimitError(
                        "Laguerre-I a-limits do not exist for coinciding ray weights"
                    )

    def closed_form_limits(self, ray: RaySpec):
        if abs(ray.gamma - 1.0) > 1e-12:
            return None, None
        a = []
        for j in range(self.r):
            qj = ray.q[j]
            val = qj ** (self.r + 1)
            for i, qi in enumerate(ray.q):
                if i != j:
                    val /= qj - qi
            a.append(val)
        b = tuple(1.0 + qj for qj in ray.q)
        return tuple(a), b

    def label(self) -> str:
        return "laguerre1"


@dataclass(frozen=True)
class MultipleLaguerreII(CoefficientProvider):
    """Laguerre family of the second kind: weights x^alpha exp(-c_j x).

    All a-coefficients are strictly positive off the axes, so neighboring
    polynomials have interlacing real zeros.
    """

    c: tuple[float, ...]
    alpha: float = 0.0

    def __post_init__(self) -> None:
        c = tuple(float(v) for v in self.c)
        object.__setattr__(self, "c", c)
        object.__setattr__(self, "alpha", float(self.alpha))
        if any(v <= 0.0 for v in c):
            raise ValueError("c_j must be > 0")
        _check_distinct(c, "c")
        if self.alpha <= -1.0:
            raise ValueError("alpha must be > -1")

    @property
    def r(self) -> int:  # type: ignore[override]
        return len(self.c)

    def a_coefficients(self, n: MultiIndex) -> tuple[float, ...]:
        w = n.weight
        return tuple(n[j] / self.c[j] ** 2 * (w + self.alpha) for j in range(self.r))

    def b_coefficients(self, n: MultiIndex) -> tuple[float, ...]:
        w = n.weight
        mix = sum(n[i] / self.c[i] for i in range(self.r))
        return tuple((w + self.alpha + 1.0) / self.c[j] + mix for j in range(self.r))

    def closed_form_limits(self, ray: RaySpec):
        if abs(ray.gamma - 1.0) > 1e-12:
            return None, None
        a = tuple(ray.q[j] / self.c[j] ** 2 for j in range(self.r))
        mix = sum(ray.q[i] / self.c[i] for i in range(self.r))
        b = tuple(1.0 / self.c[j] + mix for j in range(self.r))
        return a, b

    def label(self) -> str:
        return "laguerre2"


@dataclass(frozen=True)
class MultipleCharlier(CoefficientProvider):
    """Discrete family with Poisson-type weights a_j^k / k!.

    a[n, j] = a_j n_j and b[n, k] = a_k + |n|.  With ``param_scaling`` the
    parameters grow with the reference size, a_j -> a_j * n_ref, which keeps
    the scaled b-limits distinct at gamma = 1.
    """

    a_params: tuple[float, ...]
    param_scaling: bool = False
    n_ref: int = 1

    def __post_init__(self) -> None:
        a = tuple(float(v) for v in self.a_params)
        object.__setattr__(self, "a_params", a)
        if any(v <= 0.0 for v in a):
            raise ValueError("a_j must be > 0")
        _check_distinct(a, "a")
        if self.n_ref < 1:
            raise ValueError("n_ref must be >= 1")

    @property
    def r(self) -> int:  # type: ignore[override]
        return len(self.a_params)

    def _a_effective(self) -> tuple[float, ...]:
        if self.param_scaling:
            return tuple(v * self.n_ref for v in self.a_params)
        return self.a_params

    def a_coefficients(self, n: MultiIndex) -> tuple[float, ...]:
        eff = self._a_effective()
        return tuple(eff[j] * n[j] for j in range(self.r))

    def b_coefficients(self, n: MultiIndex) -> tuple[float, ...]:
        eff = self._a_effective()
        w = n.weight
        return tuple(eff[k] + w for k in range(self.r))

    def with_reference(self, n_ref: int) -> "MultipleCharlier":
        if not self.param_scaling:
            return self
        return replace(self, n_ref=int(n_ref))

    def closed_form_limits(self, ray: RaySpec):
        if not self.param_scaling or abs(ray.gamma - 1.0) > 1e-12:
            return None, None
        a = tuple(self.a_params[j] * ray.q[j] for j in range(self.r))
        b = tuple(v + 1.0 for v in self.a_params)
        return a, b

    def label(self) -> str:
        return "charlier"


@dataclass(frozen=True)
class ConstantCustom(CoefficientProvider):
    """Index-independent coefficients (apart from the a = 0 axis rule)."""

    a_const: tuple[float, ...]
    b_const: tuple[float, ...]

    def __post_init__(self) -> None:
        a = tuple(float(v) for v in self.a_const)
        b = tuple(float(v) for v in self.b_const)
        if len(a) != len(b):
            raise ValueError("a and b must have equal length")
        object.__setattr__(self, "a_const", a)
        object.__setattr__(self, "b_const", b)

    @property
    def r(self) -> int:  # type: ignore[override]
        return len(self.a_const)

    def a_coefficients(self, n: MultiIndex) -> tuple[float, ...]:
        return _zero_where_axis(n, self.a_const)

    def b_coefficients(self, n: MultiIndex) -> tuple[float, ...]:
        return self.b_const

    def closed_form_limits(self, ray: RaySpec):
        if ray.gamma != 0.0:
            return None, None
        return self.a_const, self.b_const

    def label(self) -> str:
        return "constant"


@dataclass(frozen=True)
class TableCustom(CoefficientProvider):
    """Coefficients read off a user table keyed by index tuples."""

    r_value: int
    entries: Mapping[tuple[int, ...], tuple[tuple[float, ...], tuple[float, ...]]]
    source: str = "<memory>"

    @property
    def r(self) -> int:  # type: ignore[override]
        return self.r_value

    def _lookup(self, n: MultiIndex) -> tuple[tuple[float, ...], tuple[float, ...]]:
        key = tuple(n.entries)
        try:
            return self.entries[key]
        except KeyError:
            raise MissingEntryError(
                f"coefficient table {self.source} has no entry for index {key}"
            ) from None

    def a_coefficients(self, n: MultiIndex) -> tuple[float, ...]:
        return self._lookup(n)[0]

    def b_coefficients(self, n: MultiIndex) -> tuple[float, ...]:
        return self._lookup(n)[1]

    def label(self) -> str:
        return "table"


def load_custom(path: str | Path) -> TableCustom:
    """Load a coefficient table from its JSON file format.

    The document is {"r": int, "entries": [{"n": [...], "a": [...],
    "b": [...]}, ...]}; entries with n_j = 0 must carry a_j = 0.
    """
    path = Path(path)
    try:
        doc = json.loads(path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise TableFormatError(f"{path}: invalid JSON: {exc}") from exc
    if not isinstance(doc, dict) or "r" not in doc or "entries" not in doc:
        raise TableFormatError(f"{path}: expected an object with 'r' and 'entries'")
    r = doc["r"]
    if not isinstance(r, int) or r < 1:
        raise TableFormatError(f"{path}: 'r' must be a positive integer")
    entries: dict[tuple[int, ...], tuple[tuple[float, ...], tuple[float, ...]]] = {}
    for item in doc["entries"]:
        try:
            n = tuple(int(v) for v in item["n"])
            a = tuple(float(v) for v in item.get("a", [0.0] * r))
            b = tuple(float(v) for v in item["b"])
        except (KeyError, TypeError, ValueError) as exc:
            raise TableFormatError(f"{path}: malformed entry {item!r}") from exc
        if len(n) != r or len(a) != r or len(b) != r:
            raise TableFormatError(f"{path}: entry for n={n} has inconsistent length (r={r})")
        if any(v < 0 for v in n):
            raise TableFormatError(f"{path}: negative index entry {n}")
        for j in range(r):
            if n[j] == 0 and a[j] != 0.0:
                raise TableFormatError(
                    f"{path}: entry for n={n} must have a[{j}] = 0 where n[{j}] = 0"
                )
        entries[n] = (a, b)
    return TableCustom(r_value=r, entries=entries, source=str(path))


def richardson_limit(values: Sequence[float], step_ratio: float = 2.0) -> tuple[float, float]:
    """Extrapolate f(N), f(sN), f(s^2 N), ... assuming an error series in 1/N.

    Returns (limit, error_estimate) where the estimate is the size of the
    last correction applied.
    """
    level = [float(v) for v in values]
    if len(level) == 1:
        return level[0], 0.0
    correction = 0.0
    for m in range(1, len(values)):
        factor = step_ratio**m
        nxt = [(factor * level[i + 1] - level[i]) / (factor - 1.0) for i in range(len(level) - 1)]
        correction = abs(nxt[-1] - level[-1])
        level = nxt
    return level[0], correction


def _extrapolate_scalar(fetch: Callable[[int], float], n_ref: int, what: str) -> float:
    ns = [n_ref, 2 * n_ref, 4 * n_ref]
    vals = [fetch(n) for n in ns]
    scale = 1.0 + max(abs(v) for v in vals)
    d1 = vals[1] - vals[0]
    d2 = vals[2] - vals[1]
    if abs(d1) <= 1e-13 * scale and abs(d2) <= 1e-13 * scale:
        return vals[2]
    if abs(d2) > 0.85 * abs(d1) and abs(d2) > 1e-9 * scale:
        raise NonConvergenceError(
            f"{what} does not settle along the ray: consecutive differences "
            f"{d1:.3e}, {d2:.3e} at N={n_ref}"
        )
    limit, err = richardson_limit(vals)
    if err > 1e-2 * scale:
        raise NonConvergenceError(f"{what}: extrapolation residual {err:.3e} too large")
    return limit


def limit_coefficients(
    provider: CoefficientProvider,
    ray: RaySpec,
    *,
    n_ref: int = 2000,
    merge_tol: float = 1e-9,
    rel_warn: float = 1e-6,
) -> LimitData:
    """Limits of a[n, j]/n^(2*gamma) and b[n, j]/n^gamma along a ray.

    Extrapolates the provider's own coefficient sequences over
    N in {n_ref, 2 n_ref, 4 n_ref} and overrides with closed forms where the
    family trusts one; provenance records which source produced each entry.
    """
    provider_r = provider.r
    provider.validate_ray(ray)
    gamma = ray.gamma

    def a_seq(j: int) -> Callable[[int], float]:
        def fetch(n: int) -> float:
            p = provider.with_reference(n)
            return p.a_coefficients(ray_index(ray, n))[j] / float(n) ** (2 * gamma)

        return fetch

    def b_seq(j: int) -> Callable[[int], float]:
        def fetch(n: int) -> float:
            p = provider.with_reference(n)
            return p.b_coefficients(ray_index(ray, n))[j] / float(n) ** gamma

        return fetch

    cf_a, cf_b = provider.closed_form_limits(ray)
    warnings: list[str] = []

    def resolve(
        closed: Sequence[float] | None,
        seq: Callable[[int], Callable[[int], float]],
        name: str,
    ) -> tuple[tuple[float, ...], tuple[str, ...]]:
        values = []
        provenance = []
        for j in range(provider_r):
            extrapolated = _extrapolate_scalar(seq(j), n_ref, f"{name}[{j}]")
            if closed is not None:
                chosen = closed[j]
                provenance.append(CLOSED_FORM)
                scale = max(abs(chosen), abs(extrapolated), 1e-30)
                if abs(chosen - extrapolated) > rel_warn * scale:
                    warnings.append(
                        f"{name}[{j}]: closed form {chosen!r} and extrapolation "
                        f"{extrapolated!r} disagree beyond {rel_warn:g} relative"
                    )
            else:
                chosen = extrapolated
                provenance.append(EXTRAPOLATED)
            values.append(chosen)
        return tuple(values), tuple(provenance)

    a, prov_a = resolve(cf_a, a_seq, "a-limit")
    b, prov_b = resolve(cf_b, b_seq, "b-limit")

    stated_a, stated_b = provider.cross_check_limits(ray)
    for stated, used, name in ((stated_a, a, "a-limit"), (stated_b, b, "b-limit")):
        if stated is None:
            continue
        for j in range(provider_r):
            scale = max(abs(stated[j]), abs(used[j]), 1e-30)
            if abs(stated[j] - used[j]) > rel_warn * scale:
                warnings.append(
                    f"{name}[{j}]: documented value {stated[j]!r} disagrees with the "
                    f"recurrence-derived value {used[j]!r}; the recurrence value is used"
                )

    return LimitData(
        a=a,
        b=b,
        gamma=gamma,
        provenance_a=prov_a,
        provenance_b=prov_b,
        merged=_merge_groups(a, b, merge_tol),
        warnings=tuple(warnings),
        branch_supported=provider.supports_branch_equation(),
    )
