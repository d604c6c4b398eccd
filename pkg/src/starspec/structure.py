"""Structural checks for star-operation outputs.

Covers cyclic-interval (run) labellings, exact clique and colouring
numbers for small graphs, constructive colourings from plane vectors,
perfect elimination orderings, the two-block form of half-regular
fixpoints, the front/middle/back rotation, and the sign/monotonicity
pattern of eigenvectors on the top half.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from enum import Enum
from typing import Sequence

import numpy as np

from . import eigen
from .errors import InvalidArgument, PreconditionFailure, UnsupportedOrder
from .graphcore import Graph, circulant_spectrum, complement
from .starop import PlanePair, angles, angular_order

EXACT_MAX_ORDER = 16
RUN_SEARCH_MAX_ORDER = 9


def _bits(mask):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


# --- run labellings ---------------------------------------------------------

@dataclass(frozen=True)
class RunLabelling:
    """``perm[p]`` is the vertex at position ``p``; ``runs[p]`` is the pair
    of positions ``(a, b)`` whose cyclic interval is its neighbourhood, or
    ``None`` for an isolated vertex.  Positions count the non-isolated
    vertices of ``perm`` only."""

    perm: tuple[int, ...]
    runs: tuple[tuple[int, int] | None, ...]


@dataclass(frozen=True)
class RunFailure:
    vertex: int
    reason: str

    def __bool__(self):
        return False


def _cyclic_interval(positions_mask: int, n: int):
    """``(a, b)`` if the set of positions is a cyclic interval, else None."""
    size = positions_mask.bit_count()
    if size == 0 or size == n:
        return None, size == 0
    starts = [p for p in _bits(positions_mask) if not (positions_mask >> ((p - 1) % n)) & 1]
    if len(starts) != 1:
        return None, False
    a = starts[0]
    return (a, (a + size - 1) % n), True


def _cyclically_monotone(seq: Sequence[int], n: int) -> bool:
    if len(seq) < 2:
        return True
    total = sum((seq[(i + 1) % len(seq)] - seq[i]) % n for i in range(len(seq)))
    return total in (0, n)


def check_run_labelling(g: Graph, perm: Sequence[int]) -> RunLabelling | RunFailure:
    """Check one labelling.  Isolated vertices take no part in the cyclic
    order: positions are counted among the other vertices only, and the
    isolated ones get ``None`` runs wherever they appear in ``perm``."""
    n = g.n
    if sorted(perm) != list(range(n)):
        raise InvalidArgument("perm must be a permutation of the vertices")
    live = [v for v in perm if g.rows[v]]
    m = len(live)
    pos = {v: p for p, v in enumerate(live)}
    runs = []
    for v in perm:
        if not g.rows[v]:
            runs.append(None)
            continue
        mask = 0
        for u in _bits(g.rows[v]):
            mask |= 1 << pos[u]
        run, ok = _cyclic_interval(mask, m)
        if not ok:
            return RunFailure(v, "neighbourhood is not a cyclic interval")
        runs.append(run)
    present = [r for r in runs if r is not None]
    if not _cyclically_monotone([r[0] for r in present], m):
        return RunFailure(perm[0], "run starts are not cyclically monotone")
    if not _cyclically_monotone([r[1] for r in present], m):
        return RunFailure(perm[0], "run ends are not cyclically monotone")
    return RunLabelling(tuple(perm), tuple(runs))


def run_labelling(g: Graph, order: Sequence[int] | None = None) -> RunLabelling | RunFailure:
    """Find a labelling in which every neighbourhood is a cyclic interval
    with cyclically non-decreasing endpoints.

    With ``order`` given (for a star output, the angular order of the plane
    pair that built it) only that labelling is checked.  Otherwise all
    labellings with vertex 0 first are searched, which is limited to
    ``n <= 9``.
    """
    if order is not None:
        return check_run_labelling(g, order)
    n = g.n
    if n > RUN_SEARCH_MAX_ORDER:
        raise UnsupportedOrder(
            f"exhaustive run search stops at order {RUN_SEARCH_MAX_ORDER}; pass an order hint"
        )
    for rest in itertools.permutations(range(1, n)):
        res = check_run_labelling(g, (0,) + rest)
        if res:
            return res
    first = check_run_labelling(g, list(range(n)))
    if isinstance(first, RunFailure):
        return RunFailure(first.vertex, first.reason + " (no labelling works)")
    return first


# --- cliques and colourings -------------------------------------------------

def _require_small(g: Graph):
    if g.n > EXACT_MAX_ORDER:
        raise UnsupportedOrder(f"exact computation limited to n <= {EXACT_MAX_ORDER}")


def clique_number(g: Graph) -> int:
    """Exact clique number via Bron-Kerbosch with pivoting."""
    _require_small(g)
    rows = g.rows
    best = 0

    def expand(size, cand, excl):
        nonlocal best
        if not cand and not excl:
            best = max(best, size)
            return
        if size + cand.bit_count() <= best:
            return
        pivot = max(_bits(cand | excl), key=lambda u: (cand & rows[u]).bit_count())
        for v in list(_bits(cand & ~rows[pivot])):
            expand(size + 1, cand & rows[v], excl & rows[v])
            cand &= ~(1 << v)
            excl |= 1 << v

    expand(0, (1 << g.n) - 1, 0)
    return best


def find_coloring(g: Graph, k: int) -> list[int] | None:
    """A proper colouring with colours ``0..k-1`` or None (exhaustive)."""
    _require_small(g)
    n = g.n
    if k <= 0:
        return None if n else []
    colour = [-1] * n
    order = sorted(range(n), key=lambda v: -g.degree(v))

    def pick():
        # most saturated uncoloured vertex, then highest degree
        best, key = -1, None
        for v in order:
            if colour[v] >= 0:
                continue
            sat = len({colour[u] for u in _bits(g.rows[v]) if colour[u] >= 0})
            kv = (sat, g.degree(v))
            if key is None or kv > key:
                best, key = v, kv
        return best

    def solve(done, used):
        if done == n:
            return True
        v = pick()
        taken = {colour[u] for u in _bits(g.rows[v]) if colour[u] >= 0}
        # new colours are symmetric, try at most one
        for c in range(min(k, used + 1)):
            if c in taken:
                continue
            colour[v] = c
            if solve(done + 1, max(used, c + 1)):
                return True
        colour[v] = -1
        return False

    return list(colour) if solve(0, 0) else None


def is_k_colorable(g: Graph, k: int) -> bool:
    return find_coloring(g, k) is not None


def chromatic_number(g: Graph) -> int:
    _require_small(g)
    k = 1 if g.n else 0
    while not is_k_colorable(g, k):
        k += 1
    return k


def is_proper_coloring(g: Graph, colours: Sequence[int]) -> bool:
    return all(colours[i] != colours[j] for i, j in g.edges())


def quadrant_coloring(vectors) -> list[int]:
    """Colour each vertex by the sign pattern of its vector: bit ``r`` is set
    when component ``r`` is negative, so zero components count as positive.
    Vectors sharing a closed orthant have non-negative dot product, hence
    no edge in the star output."""
    v = np.asarray(vectors, dtype=float)
    if v.ndim == 1:
        v = v[:, None]
    weights = 1 << np.arange(v.shape[1])
    return [int(c) for c in ((v < 0) * weights).sum(axis=1)]


def obtuse_gap_three_coloring(pair: PlanePair, g: Graph, tol: float = 1e-9) -> list[int] | None:
    """A proper 3-colouring when two angularly consecutive vectors are more
    than a right angle apart, else None.

    The quadrant partition is rotated so one open quadrant sits strictly
    inside the gap; the other three quadrants give the colours.
    """
    v = pair.vectors
    n = len(v)
    if n != g.n:
        raise InvalidArgument("pair size does not match the graph")
    th = angles(v)
    live = np.sort(th[np.hypot(v[:, 0], v[:, 1]) > tol])
    if not len(live):
        return [0] * n
    # consecutive gaps from the sorted angles, the last one wrapping round
    gaps = np.diff(np.append(live, live[0] + 2 * np.pi))
    k = int(np.argmax(gaps))
    gap, start = float(gaps[k]), float(live[k])
    if gap <= np.pi / 2 + tol:
        return None
    delta = (gap - np.pi / 2) / 2
    s = start + delta + np.pi / 2
    colours = []
    for i in range(n):
        if np.hypot(*v[i]) <= tol:
            colours.append(0)
            continue
        c = int(((th[i] - s) % (2 * np.pi)) // (np.pi / 2))
        colours.append(min(c, 2))
    return colours


# --- perfect elimination orderings ------------------------------------------

def peo_check(g: Graph, order: Sequence[int]) -> bool:
    """True iff each vertex's neighbours later in ``order`` form a clique."""
    if sorted(order) != list(range(g.n)):
        raise InvalidArgument("order must be a permutation of the vertices")
    later = (1 << g.n) - 1
    for v in order:
        later &= ~(1 << v)
        nb = g.rows[v] & later
        for u in _bits(nb):
            if (nb & ~(1 << u)) & ~g.rows[u]:
                return False
    return True


def find_peo(g: Graph) -> list[int] | None:
    """Maximum cardinality search; the reverse visit order is a PEO iff the
    graph is chordal."""
    n = g.n
    weight = [0] * n
    done = [False] * n
    visit = []
    for _ in range(n):
        v = max((u for u in range(n) if not done[u]), key=lambda u: (weight[u], -u))
        done[v] = True
        visit.append(v)
        for u in _bits(g.rows[v]):
            if not done[u]:
                weight[u] += 1
    order = visit[::-1]
    return order if peo_check(g, order) else None


# --- half-regular block form ------------------------------------------------

@dataclass(frozen=True)
class BlockFailure:
    i: int
    j: int
    expected: int
    found: int

    def __bool__(self):
        return False

    def __str__(self):
        return f"entry ({self.i}, {self.j}) is {self.found}, block form needs {self.expected}"


def half_regular_decompose(g: Graph) -> Graph | BlockFailure:
    """Check ``A = [[Q, J - Q], [J - Q, Q]]`` under the current labelling
    and return ``Q``, or the first violating entry."""
    n = g.n
    if n % 2:
        raise InvalidArgument("block form needs an even order")
    h = n // 2
    if any(d != h for d in g.degrees):
        raise InvalidArgument("block form needs an n/2-regular graph")
    for i in range(h):
        for j in range(h):
            q = int(g.has_edge(i, j))
            checks = [
                (i + h, j + h, q),
                (i, j + h, 1 - q),
                (i + h, j, 1 - q),
            ]
            for r, c, want in checks:
                got = int(g.has_edge(r, c))
                if got != want:
                    return BlockFailure(r, c, want, got)
    return g.induced(list(range(h)))


def spectrum_split_check(g: Graph, q: Graph, tol: float = 1e-8) -> bool:
    """spec(g) equals spec(J) together with spec(2Q - J), entrywise after
    sorting."""
    h = q.n
    if g.n != 2 * h:
        return False
    full = eigen.graph_decomposition(g).values
    j = np.ones((h, h))
    m = 2 * q.matrix() - j
    parts = np.concatenate([eigen.spectrum(j), eigen.spectrum(m)])
    return bool(np.abs(np.sort(full) - np.sort(parts)).max() <= tol)


# --- canonical rotation -----------------------------------------------------

@dataclass(frozen=True)
class FMBPartition:
    """Front/middle/back of the top half, as 0-based positions in the
    rotated labelling.  ``perm[p]`` is the original vertex at position
    ``p``; the top half is ``perm[:n/2]``."""

    front: tuple[int, ...]
    middle: tuple[int, ...]
    back: tuple[int, ...]
    q: Graph
    perm: tuple[int, ...]
    rotated: Graph

    @property
    def size(self) -> int:
        return self.q.n

    def degrees_monotone(self) -> bool:
        """Front degrees in Q non-increasing and back degrees non-decreasing."""
        df = [self.q.degree(p) for p in self.front]
        db = [self.q.degree(p) for p in self.back]
        return all(a >= b for a, b in zip(df, df[1:])) and all(a <= b for a, b in zip(db, db[1:]))

    def is_bipartite_front_back(self) -> bool:
        fm = sum(1 << p for p in self.front)
        bm = sum(1 << p for p in self.back)
        for p in self.front:
            if self.q.rows[p] & ~bm:
                return False
        for p in self.back:
            if self.q.rows[p] & ~fm:
                return False
        return all(self.q.rows[p] == 0 for p in self.middle)


def antipodal_deviation(pair: PlanePair) -> float:
    v = pair.vectors
    n = len(v)
    o = pair.order
    h = n // 2
    return float(max(np.abs(v[o[p]] + v[o[(p + h) % n]]).max() for p in range(n)))


def canonical_rotation(g: Graph, pair: PlanePair, tol: float = 1e-8) -> FMBPartition:
    """Rotate the angular labelling so the top half is exactly the closed
    non-neighbourhood of one of its own vertices, then split it.

    Windows of ``n/2`` angularly consecutive vertices are tried starting
    from angular position 0; the first window that qualifies is used.
    """
    n = g.n
    if n % 2 or any(d != n // 2 for d in g.degrees):
        raise PreconditionFailure("canonical rotation needs an n/2-regular graph of even order", float("nan"))
    if pair.n != n:
        raise InvalidArgument("pair size does not match the graph")
    dev = antipodal_deviation(pair)
    if dev > tol:
        raise PreconditionFailure(f"vectors are not antipodal (max deviation {dev:.3e})", dev)
    h = n // 2
    order = list(pair.order)
    full = (1 << n) - 1
    for s in range(n):
        window = [order[(s + p) % n] for p in range(h)]
        wmask = sum(1 << v for v in window)
        if any((full ^ g.rows[v]) == wmask for v in window):
            break
    else:
        raise PreconditionFailure("no half window is a closed non-neighbourhood", float("nan"))
    perm = window + [order[(s + h + p) % n] for p in range(h)]
    rotated = g.relabel(perm)
    q = rotated.induced(list(range(h)))
    iso = [p for p in range(h) if q.rows[p] == 0]
    if not iso or iso != list(range(iso[0], iso[-1] + 1)):
        raise PreconditionFailure("isolated vertices of Q are not one consecutive block", float("nan"))
    fmb = FMBPartition(
        front=tuple(range(iso[0])),
        middle=tuple(iso),
        back=tuple(range(iso[-1] + 1, h)),
        q=q,
        perm=tuple(perm),
        rotated=rotated,
    )
    if not fmb.is_bipartite_front_back():
        raise PreconditionFailure("Q has edges inside the front or the back", float("nan"))
    return fmb


def top_half_vectors(pair: PlanePair, fmb: FMBPartition) -> tuple[np.ndarray, np.ndarray]:
    """The plane-pair coordinates restricted to the rotated top half."""
    top = list(fmb.perm[: fmb.size])
    return pair.x[top].copy(), pair.y[top].copy()


# --- eigenvector types ------------------------------------------------------

class Type(Enum):
    TYPE1 = "Type1"
    TYPE2 = "Type2"
    NEITHER = "Neither"


@dataclass(frozen=True)
class TypeTag:
    tag: Type
    sign: int = 1
    witness: int | None = None

    @property
    def vector_sign(self) -> int:
        return self.sign


def _first_failure_type1(w, fmb, tol):
    if fmb.middle:
        lo, hi = fmb.middle[0], fmb.middle[-1]
    else:
        # peak between the last front and the first back entry
        hi = len(fmb.front) - 1
        lo = hi + 1
    for p in range(len(w)):
        if w[p] < -tol:
            return p
        if 0 < p <= hi and w[p] < w[p - 1] - tol:
            return p
        if p > lo and w[p] > w[p - 1] + tol:
            return p
    return None


def _first_failure_type2(w, fmb, tol):
    front, back = set(fmb.front), set(fmb.back)
    for p in range(len(w)):
        if p in front and w[p] < -tol:
            return p
        if p in back and w[p] > tol:
            return p
        if p > 0 and w[p] > w[p - 1] + tol:
            return p
    return None


def classify_type(vec, fmb: FMBPartition, tol: float = 1e-8) -> TypeTag:
    """Type 1: non-negative, non-decreasing up to the middle and
    non-increasing from it.  Type 2: non-increasing, non-negative on the
    front and non-positive on the back.  Either sign of ``vec`` may match;
    Type 1 is preferred and then the positive sign."""
    w0 = np.asarray(vec, dtype=float)
    if len(w0) != fmb.size:
        raise InvalidArgument("vector length must equal the top-half size")
    scale = tol * max(float(np.abs(w0).max()), 1e-300)
    furthest = -1
    for check, tag in ((_first_failure_type1, Type.TYPE1), (_first_failure_type2, Type.TYPE2)):
        for sign in (1, -1):
            at = check(sign * w0, fmb, scale)
            if at is None:
                return TypeTag(tag, sign)
            furthest = max(furthest, at)
    return TypeTag(Type.NEITHER, 1, furthest)


# --- circulant blow-ups -----------------------------------------------------

@dataclass(frozen=True)
class BlowupRecognition:
    multiplicity: int
    quotient: Graph
    is_circulant: bool
    groups: tuple[tuple[int, ...], ...]

    def connection_set(self) -> set[int]:
        m = self.quotient.n
        return {min(j, m - j) for j in self.quotient.neighbors(0)}


def equal_vector_groups(pair: PlanePair, tol: float = 1e-8) -> list[list[int]]:
    """Groups of equal vectors, in angular order."""
    v = pair.vectors
    groups: list[list[int]] = []
    for i in pair.order:
        if groups and np.abs(v[i] - v[groups[-1][0]]).max() <= tol:
            groups[-1].append(i)
        else:
            groups.append([i])
    if len(groups) > 1 and np.abs(v[groups[0][0]] - v[groups[-1][0]]).max() <= tol:
        groups[0] = groups.pop() + groups[0]
    return groups


def circulant_blowup_recognition(g: Graph, pair: PlanePair, tol: float = 1e-8) -> BlowupRecognition | None:
    """Group equal vectors; with equal group sizes return the quotient of
    the complement and whether it is circulant in angular order.  Unequal
    sizes or an irregular graph give None."""
    if pair.n != g.n:
        raise InvalidArgument("pair size does not match the graph")
    if not g.is_regular():
        return None
    groups = equal_vector_groups(pair, tol)
    sizes = {len(s) for s in groups}
    if len(sizes) != 1:
        return None
    comp = complement(g)
    m = len(groups)
    rows = []
    for i, gi in enumerate(groups):
        mask = 0
        for j, gj in enumerate(groups):
            if i != j and comp.has_edge(gi[0], gj[0]):
                mask |= 1 << j
        rows.append(mask)
    quotient = Graph(m, tuple(rows))
    circ = all(
        quotient.has_edge(i, j) == quotient.has_edge(0, (j - i) % m)
        for i in range(m) for j in range(m) if i != j
    )
    return BlowupRecognition(sizes.pop(), quotient, circ, tuple(tuple(s) for s in groups))


def recognition_spectrum_matches(rec: BlowupRecognition, tol: float = 1e-8) -> bool:
    m = rec.quotient.n
    want = circulant_spectrum(m, rec.connection_set()) if m > 1 else np.zeros(1)
    got = eigen.graph_decomposition(rec.quotient).values
    return bool(np.abs(want - got).max() <= tol)
