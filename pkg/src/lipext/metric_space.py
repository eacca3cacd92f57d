"""Finite metric spaces, the discrete-apex family, and set distances."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from . import kernels
from .errors import (
    ApexTooClose,
    BadExponent,
    DuplicateLabel,
    EmptySet,
    NegativeDistance,
    NonFiniteDistance,
    NonzeroDiagonal,
    NotSquare,
    NotSymmetric,
    SpaceMismatch,
    TriangleViolation,
    UnknownLabel,
    ZeroOffDiagonal,
)

TRIANGLE_RTOL = 1e-12
SYMMETRY_RTOL = 1e-12


class FiniteMetricSpace:
    """Labeled points with a validated distance matrix.

    The constructor validates and never repairs; the matrix is stored
    read-only.
    """

    __slots__ = ("labels", "dist", "_index")

    def __init__(self, labels: Sequence[str], dist, *, _check_triangle: bool = True) -> None:
        d = np.array(dist, dtype=np.float64, copy=True)
        if d.ndim != 2 or d.shape[0] != d.shape[1]:
            raise NotSquare(f"distance matrix must be square, got shape {d.shape}")
        n = d.shape[0]
        labels = tuple(str(x) for x in labels)
        if len(labels) != n:
            raise NotSquare(f"{len(labels)} labels for a {n}x{n} matrix")
        if len(set(labels)) != n:
            seen: set[str] = set()
            dup = next(x for x in labels if x in seen or seen.add(x))
            raise DuplicateLabel(f"duplicate label {dup!r}", label=dup)
        _check_matrix(d, check_triangle=_check_triangle)
        d.setflags(write=False)
        self.labels = labels
        self.dist = d
        self._index = {lab: i for i, lab in enumerate(labels)}

    @classmethod
    def from_points(cls, labels: Sequence[str], coords) -> "FiniteMetricSpace":
        """Euclidean distances between coordinate rows.

        The triangle inequality holds by construction, so the O(n^3) scan is
        skipped; everything else is still checked.
        """
        c = np.asarray(coords, dtype=np.float64)
        if c.ndim == 1:
            c = c[:, None]
        diff = c[:, None, :] - c[None, :, :]
        d = np.sqrt((diff * diff).sum(axis=-1))
        return cls(labels, d, _check_triangle=False)

    def __len__(self) -> int:
        return len(self.labels)

    def __repr__(self) -> str:
        return f"FiniteMetricSpace(n={len(self)}, labels={list(self.labels)!r})"

    def index(self, label: str) -> int:
        try:
            return self._index[label]
        except KeyError:
            raise UnknownLabel(f"unknown label {label!r}", label=label) from None

    def indices(self, labels: Iterable[str]) -> list[int]:
        return [self.index(x) for x in labels]

    def __contains__(self, label: object) -> bool:
        return label in self._index

    def d(self, a: str, b: str) -> float:
        return float(self.dist[self.index(a), self.index(b)])

    def subset(self, labels: Iterable[str]) -> "PointSubset":
        return PointSubset(self, frozenset(self.indices(labels)))


@dataclass(frozen=True)
class PointSubset:
    space: FiniteMetricSpace
    members: frozenset[int]

    def __post_init__(self) -> None:
        n = len(self.space)
        if any(not 0 <= m < n for m in self.members):
            raise UnknownLabel("subset index out of range")

    @property
    def labels(self) -> list[str]:
        return [self.space.labels[i] for i in sorted(self.members)]

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self):
        return iter(sorted(self.members))


def _check_matrix(d: np.ndarray, *, check_triangle: bool) -> None:
    if not np.all(np.isfinite(d)):
        i, j = np.argwhere(~np.isfinite(d))[0]
        raise NonFiniteDistance(f"non-finite distance at ({i}, {j})", indices=[int(i), int(j)])
    neg = np.argwhere(d < 0)
    if len(neg):
        i, j = neg[0]
        raise NegativeDistance(f"d[{i}][{j}] = {d[i, j]} < 0", indices=[int(i), int(j)])
    diag = np.flatnonzero(np.diag(d) != 0)
    if len(diag):
        i = int(diag[0])
        raise NonzeroDiagonal(f"d[{i}][{i}] = {d[i, i]} must be 0", indices=[i, i])
    asym = np.argwhere(np.abs(d - d.T) > SYMMETRY_RTOL * np.maximum(d, d.T))
    if len(asym):
        i, j = sorted(asym[0])
        raise NotSymmetric(f"d[{i}][{j}] = {d[i, j]} but d[{j}][{i}] = {d[j, i]}",
                           indices=[int(i), int(j)])
    off = d + np.eye(len(d))
    zero = np.argwhere(off == 0)
    if len(zero):
        i, j = zero[0]
        raise ZeroOffDiagonal(f"distinct points {i} and {j} at distance 0", indices=[int(i), int(j)])
    if check_triangle and len(d) >= 3:
        hit = kernels.triangle_violation(d, TRIANGLE_RTOL)
        if hit is not None:
            i, k, j = hit
            raise TriangleViolation(
                f"d[{i}][{j}] = {d[i, j]} > d[{i}][{k}] + d[{k}][{j}] = {d[i, k] + d[k, j]}",
                indices=[i, k, j],
            )


def validate(matrix, labels: Sequence[str] | None = None) -> FiniteMetricSpace:
    """Validate ``matrix`` as a metric; labels default to "0", "1", ..."""
    m = np.asarray(matrix, dtype=np.float64)
    if labels is None:
        labels = [str(i) for i in range(m.shape[0] if m.ndim else 0)]
    return FiniteMetricSpace(labels, m)


def discrete_apex_matrix(n: int, l: float) -> np.ndarray:
    """Base points mutually at distance 1, apex (last row) at distance ``l``.

    No validation; ``discrete_apex`` is the checked constructor.
    """
    d = np.ones((n + 1, n + 1)) - np.eye(n + 1)
    d[n, :n] = l
    d[:n, n] = l
    return d


def discrete_apex(n: int, l: float, labels: Sequence[str] | None = None) -> FiniteMetricSpace:
    if n < 2:
        raise ValueError("discrete_apex needs at least two base points")
    if not l >= 0.5:
        raise ApexTooClose(f"apex distance {l} < 1/2 breaks the triangle inequality", l=l)
    if labels is None:
        labels = [f"x{i}" for i in range(n)]
    labels = list(labels)
    if len(labels) == n:
        labels.append("e")
    return FiniteMetricSpace(labels, discrete_apex_matrix(n, l))


def power_metric(space: FiniteMetricSpace, alpha: float) -> FiniteMetricSpace:
    if not 0 < alpha <= 1:
        raise BadExponent(f"alpha must lie in (0, 1], got {alpha}", alpha=alpha)
    return FiniteMetricSpace(space.labels, space.dist ** alpha)


def _same_space(a: PointSubset, b: PointSubset) -> None:
    if a.space is not b.space:
        raise SpaceMismatch("subsets belong to different spaces")


def set_distance(a: PointSubset, b: PointSubset) -> float:
    """min over pairs; 0 exactly when the sets share a point."""
    _same_space(a, b)
    if not a.members or not b.members:
        raise EmptySet("set_distance of an empty set")
    ia, ib = sorted(a.members), sorted(b.members)
    return float(a.space.dist[np.ix_(ia, ib)].min())


def point_set_distance(space: FiniteMetricSpace, members: Iterable[int]) -> np.ndarray:
    """Distance from every point of ``space`` to the index set ``members``."""
    idx = sorted(members)
    if not idx:
        raise EmptySet("distance to an empty set")
    return space.dist[:, idx].min(axis=1)


def diameter(m: PointSubset) -> float:
    if not m.members:
        raise EmptySet("diameter of an empty set")
    idx = sorted(m.members)
    return float(m.space.dist[np.ix_(idx, idx)].max())


def four_point_space() -> tuple[FiniteMetricSpace, PointSubset, PointSubset]:
    """Four-point space where d(M, e) = 4 < 5 = diam(M).

    d(x,e) = d(z,e) = d(x,z) = 5, d(y,e) = 4, d(x,y) = d(y,z) = 3.
    Returns the space, M = {x, y, z} and {e}.
    """
    labels = ["x", "y", "z", "e"]
    d = [
        [0, 3, 5, 5],
        [3, 0, 3, 4],
        [5, 3, 0, 5],
        [5, 4, 5, 0],
    ]
    space = FiniteMetricSpace(labels, d)
    return space, space.subset(["x", "y", "z"]), space.subset(["e"])
