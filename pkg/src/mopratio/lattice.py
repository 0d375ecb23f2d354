"""Multi-index arithmetic, rays through the lattice, and monotone paths.

Directions are 0-based throughout the library: a step ``k`` increments
coordinate ``k`` of the multi-index.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence


@dataclass(frozen=True)
class MultiIndex:
    """A lattice point n = (n_0, ..., n_{r-1}) with non-negative entries."""

    entries: tuple[int, ...]

    def __post_init__(self) -> None:
        entries = tuple(int(e) for e in self.entries)
        if len(entries) < 1:
            raise ValueError("multi-index needs at least one entry")
        if any(e < 0 for e in entries):
            raise ValueError(f"multi-index entries must be >= 0, got {entries}")
        object.__setattr__(self, "entries", entries)

    @classmethod
    def of(cls, value: "MultiIndex" | Iterable[int]) -> "MultiIndex":
        if isinstance(value, MultiIndex):
            return value
        return cls(tuple(value))

    @classmethod
    def zero(cls, r: int) -> "MultiIndex":
        return cls((0,) * r)

    @property
    def r(self) -> int:
        return len(self.entries)

    @property
    def weight(self) -> int:
        return sum(self.entries)

    def up(self, k: int) -> "MultiIndex":
        e = list(self.entries)
        e[k] += 1
        return MultiIndex(tuple(e))

    def down(self, k: int) -> "MultiIndex":
        e = list(self.entries)
        e[k] -= 1
        return MultiIndex(tuple(e))

    def dominates(self, other: "MultiIndex") -> bool:
        """Componentwise >=."""
        return all(a >= b for a, b in zip(self.entries, other.entries))

    def __getitem__(self, k: int) -> int:
        return self.entries[k]

    def __iter__(self) -> Iterator[int]:
        return iter(self.entries)

    def __len__(self) -> int:
        return len(self.entries)


@dataclass(frozen=True)
class RaySpec:
    """Direction weights q (q_j > 0, sum 1) and a scaling exponent gamma.

    gamma = 0 covers bounded recurrence coefficients; gamma > 0 rescales the
    coefficients by n^gamma (b) and n^(2*gamma) (a) before taking limits.
    """

    q: tuple[float, ...]
    gamma: float = 0.0

    def __post_init__(self) -> None:
        q = tuple(float(v) for v in self.q)
        if len(q) < 1:
            raise ValueError("ray needs at least one direction weight")
        if any(v <= 0.0 for v in q):
            raise ValueError(f"all direction weights must be > 0, got {q}")
        if abs(sum(q) - 1.0) > 1e-12:
            raise ValueError(f"direction weights must sum to 1 within 1e-12, got sum={sum(q)!r}")
        if self.gamma < 0.0:
            raise ValueError("gamma must be >= 0")
        object.__setattr__(self, "q", q)
        object.__setattr__(self, "gamma", float(self.gamma))

    @property
    def r(self) -> int:
        return len(self.q)


@dataclass(frozen=True)
class LatticePath:
    """A monotone path from the origin: a sequence of direction indices."""

    steps: tuple[int, ...]
    r: int

    def __post_init__(self) -> None:
        steps = tuple(int(s) for s in self.steps)
        if any(s < 0 or s >= self.r for s in steps):
            raise ValueError(f"path steps must lie in [0, {self.r}), got {steps}")
        object.__setattr__(self, "steps", steps)

    def endpoint(self) -> MultiIndex:
        e = [0] * self.r
        for s in self.steps:
            e[s] += 1
        return MultiIndex(tuple(e))

    def prefixes(self) -> Iterator[MultiIndex]:
        """Yield the index after each step (origin excluded)."""
        e = [0] * self.r
        for s in self.steps:
            e[s] += 1
            yield MultiIndex(tuple(e))

    def __len__(self) -> int:
        return len(self.steps)

    def __iter__(self) -> Iterator[int]:
        return iter(self.steps)


def ray_index(ray: RaySpec, n: int) -> MultiIndex:
    """The lattice point (floor(q_0 n), ..., floor(q_{r-1} n))."""
    if n < 0:
        raise ValueError("n must be >= 0")
    return MultiIndex(tuple(int(q * n) for q in ray.q))


def build_path(target: MultiIndex | Sequence[int], ray: RaySpec | None = None) -> LatticePath:
    """Proportionally interleaved path from the origin to ``target``.

    Steps are chosen greedily so every prefix endpoint m satisfies
    |m_j - w_j * |m|| <= 1 where w = target / |target|.  Intermediate indices
    therefore hug the ray through the target, which keeps per-step coefficient
    arguments in their asymptotic regime.  Ties are broken toward the larger
    ray weight when a ray is given, then toward the smaller direction index.
    """
    t = MultiIndex.of(target)
    total = t.weight
    if total == 0:
        return LatticePath((), t.r)
    w = [e / total for e in t.entries]
    pref = ray.q if ray is not None and ray.r == t.r else w
    m = [0] * t.r
    steps: list[int] = []
    for s in range(1, total + 1):
        best_j = -1
        best_key: tuple[float, float, int] | None = None
        for j in range(t.r):
            if m[j] >= t[j]:
                continue
            deficit = w[j] * s - m[j]
            key = (-deficit, -pref[j], j)
            if best_key is None or key < best_key:
                best_key = key
                best_j = j
        m[best_j] += 1
        steps.append(best_j)
    return LatticePath(tuple(steps), t.r)


def blockwise_path(target: MultiIndex | Sequence[int], order: Sequence[int] | None = None) -> LatticePath:
    """Path that exhausts whole directions one at a time.

    Useful as an alternative route for path-independence checks; ``order``
    permutes the directions (default: 0, 1, ..., r-1).
    """
    t = MultiIndex.of(target)
    dirs = list(order) if order is not None else list(range(t.r))
    if sorted(dirs) != list(range(t.r)):
        raise ValueError("order must be a permutation of the directions")
    steps: list[int] = []
    for j in dirs:
        steps.extend([j] * t[j])
    return LatticePath(tuple(steps), t.r)


def lower_set(target: MultiIndex | Sequence[int]) -> list[MultiIndex]:
    """All indices m <= target componentwise, sorted by weight then entries."""
    t = MultiIndex.of(target)
    out: list[MultiIndex] = []
    cur = [0] * t.r

    def rec(j: int) -> None:
        if j == t.r:
            out.append(MultiIndex(tuple(cur)))
            return
        for v in range(t[j] + 1):
            cur[j] = v
            rec(j + 1)
        cur[j] = 0

    rec(0)
    out.sort(key=lambda m: (m.weight, m.entries))
    return out


def indices_up_to_weight(r: int, max_weight: int) -> list[MultiIndex]:
    """All indices in dimension r with weight <= max_weight, weight-sorted."""
    out: list[MultiIndex] = []
    cur = [0] * r

    def rec(j: int, left: int) -> None:
        if j == r - 1:
            for v in range(left + 1):
                cur[j] = v
                out.append(MultiIndex(tuple(cur)))
            cur[j] = 0
            return
        for v in range(left + 1):
            cur[j] = v
            rec(j + 1, left - v)
        cur[j] = 0

    rec(0, max_weight)
    out.sort(key=lambda m: (m.weight, m.entries))
    return out
