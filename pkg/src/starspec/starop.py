"""The star operation: rebuild a graph from the sign pattern of dot products
between per-vertex vectors taken from its last eigenvectors."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from . import eigen
from .errors import InvalidArgument
from .graphcore import Graph, canonical_labelling

ORTHO_TOL = 1e-8


def dot_threshold(vectors: np.ndarray) -> float:
    top = float(np.abs(vectors).max()) if vectors.size else 0.0
    return 1e-9 * top * top


@dataclass(frozen=True)
class PlanePair:
    """Per-vertex vectors ``v_i = (x_i, y_i)`` plus their angular order."""

    vectors: np.ndarray
    order: tuple[int, ...] = field(default=())

    def __post_init__(self):
        v = np.asarray(self.vectors, dtype=float)
        if v.ndim != 2 or v.shape[1] != 2:
            raise InvalidArgument("plane vectors must have shape (n, 2)")
        object.__setattr__(self, "vectors", v)
        if not self.order:
            object.__setattr__(self, "order", tuple(angular_order(v)))
        elif sorted(self.order) != list(range(len(v))):
            raise InvalidArgument("order must be a permutation")

    @classmethod
    def from_xy(cls, x, y) -> "PlanePair":
        return cls(np.column_stack([x, y]))

    @property
    def n(self) -> int:
        return len(self.vectors)

    @property
    def x(self) -> np.ndarray:
        return self.vectors[:, 0]

    @property
    def y(self) -> np.ndarray:
        return self.vectors[:, 1]

    def angles(self) -> np.ndarray:
        return angles(self.vectors)

    def is_orthonormal(self, tol: float = ORTHO_TOL) -> bool:
        g = self.vectors.T @ self.vectors
        return bool(np.abs(g - np.eye(2)).max() <= tol)

    def rotated(self, theta: float) -> "PlanePair":
        c, s = math.cos(theta), math.sin(theta)
        return PlanePair(self.vectors @ np.array([[c, s], [-s, c]]))


def angles(vectors: np.ndarray) -> np.ndarray:
    """Angles in ``[0, 2*pi)``; zero vectors get angle 0."""
    t = np.arctan2(vectors[:, 1], vectors[:, 0])
    t = np.where(t < 0, t + 2 * np.pi, t)
    t = np.where(t >= 2 * np.pi, 0.0, t)
    return t


def angular_order(vectors: np.ndarray, tol: float = 1e-9) -> list[int]:
    """Vertices by angle anticlockwise from the positive first axis.

    Angles closer than ``tol`` to the previous one in sorted order are
    treated as equal and keep index order; angles within ``tol`` of a full
    turn count as 0 so round-off just below the axis does not move a vertex
    to the end.
    """
    t = angles(vectors)
    t = np.where(t > 2 * np.pi - tol, 0.0, t)
    raw = sorted(range(len(t)), key=lambda i: (t[i], i))
    out, run = [], []
    for i in raw:
        if run and t[i] - t[run[-1]] > tol:
            out.extend(sorted(run))
            run = []
        run.append(i)
    out.extend(sorted(run))
    return out


def pair_of(g: Graph, tol: float | None = None) -> PlanePair:
    d = eigen.graph_decomposition(g, tol)
    x, y = eigen.last_two_pair(d)
    return PlanePair.from_xy(x, y)


def graph_from_vectors(vectors) -> Graph:
    """Graph with ``i ~ j`` iff ``v_i . v_j < -eps`` where
    ``eps = 1e-9 * (max |component|)^2``; near-zero dots are non-edges."""
    v = np.asarray(vectors, dtype=float)
    if v.ndim == 1:
        v = v[:, None]
    n = len(v)
    eps = dot_threshold(v)
    adj = (v @ v.T) < -eps
    np.fill_diagonal(adj, False)
    rows = []
    for i in range(n):
        m = 0
        for j in np.flatnonzero(adj[i]):
            m |= 1 << int(j)
        rows.append(m)
    return Graph(n, tuple(rows))


def apply_star(g: Graph, pair: PlanePair | None = None) -> Graph:
    """The star image of ``g``; the plane pair defaults to the canonical
    last-two eigenpair from :mod:`starspec.eigen`."""
    if pair is None:
        pair = pair_of(g)
    if pair.n != g.n:
        raise InvalidArgument("pair size does not match the graph")
    return graph_from_vectors(pair.vectors)


def apply_star_k(g: Graph, k: int, basis=None) -> Graph:
    """Generalised star image using the last ``k`` eigenvectors."""
    if not 1 <= k <= g.n:
        raise InvalidArgument(f"k={k} must lie in 1..{g.n}")
    if basis is None:
        basis = eigen.last_k_basis(eigen.graph_decomposition(g), k)
    basis = np.asarray(basis, dtype=float)
    if basis.shape != (g.n, k):
        raise InvalidArgument(f"basis must have shape ({g.n}, {k})")
    return graph_from_vectors(basis)


@dataclass(frozen=True)
class MonovarianceGap:
    before: float
    after: float

    @property
    def holds(self) -> bool:
        return self.after <= self.before + 1e-9


def monovariance_gap(g: Graph) -> MonovarianceGap:
    if g.n < 3:
        raise InvalidArgument("need at least 3 vertices")
    before = eigen.last_two_sum(g)
    after = eigen.last_two_sum(apply_star(g))
    return MonovarianceGap(before, after)


class Terminal(Enum):
    FIXPOINT = "Fixpoint"
    CYCLE = "CycleDetected"
    CAP = "IterationCap"


@dataclass(frozen=True)
class StarTrace:
    iterates: list[tuple[Graph, float]]
    terminal: Terminal
    cycle_length: int = 0

    @property
    def steps(self) -> int:
        return len(self.iterates) - 1

    @property
    def final(self) -> Graph:
        return self.iterates[-1][0]

    def is_monotone(self, slack: float = 1e-9) -> bool:
        s = [v for _, v in self.iterates]
        return all(b <= a + slack for a, b in zip(s, s[1:]))


def fixpoint_iterate(g: Graph, max_iter: int = 50) -> StarTrace:
    """Iterate the star operation until the isomorphism class repeats.

    A repeat of the immediately preceding class is a fixpoint; a repeat of
    an older one is a cycle of the reported length.  The iterates list
    holds every distinct graph visited (the repeated graph is not appended
    again).
    """
    if g.n < 3:
        raise InvalidArgument("need at least 3 vertices")
    if max_iter < 0:
        raise InvalidArgument("max_iter must be non-negative")
    iterates = [(g, eigen.last_two_sum(g))]
    seen = {canonical_labelling(g)[0]: 0}
    cur = g
    for step in range(max_iter):
        nxt = apply_star(cur)
        key = canonical_labelling(nxt)[0]
        if key in seen:
            first = seen[key]
            length = step + 1 - first
            if length == 1:
                return StarTrace(iterates, Terminal.FIXPOINT)
            return StarTrace(iterates, Terminal.CYCLE, length)
        seen[key] = step + 1
        iterates.append((nxt, eigen.last_two_sum(nxt)))
        cur = nxt
    return StarTrace(iterates, Terminal.CAP)


class Uniqueness(Enum):
    UNIQUE = "Unique"
    ROTATION_INVARIANT = "RotationInvariant"
    NON_UNIQUE = "NonUnique"


def uniqueness_class(g: Graph) -> Uniqueness:
    if g.n < 3:
        raise InvalidArgument("need at least 3 vertices")
    d = eigen.graph_decomposition(g)
    n = d.n
    sizes = {i: hi - lo for lo, hi in d.groups() for i in range(lo, hi)}
    if sizes[n - 1] == 1 and sizes[n - 2] == 1:
        return Uniqueness.UNIQUE
    if sizes[n - 1] == 2:
        return Uniqueness.ROTATION_INVARIANT
    return Uniqueness.NON_UNIQUE
