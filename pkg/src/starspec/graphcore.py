"""Simple undirected graphs, standard constructions, graph6 I/O and
isomorph-free enumeration of small orders.

Vertices are ``0..n-1``.  A :class:`Graph` stores one neighbour bitmask per
vertex, which keeps values immutable, hashable and cheap to compare.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

import numpy as np

from . import _kernels
from .errors import Graph6Error, InvalidArgument, UnsupportedOrder


def _bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


@dataclass(frozen=True)
class Graph:
    """A simple graph on ``n`` vertices given by neighbour bitmasks."""

    n: int
    rows: tuple[int, ...]

    def __post_init__(self):
        if self.n < 1:
            raise InvalidArgument("a graph needs at least one vertex")
        if len(self.rows) != self.n:
            raise InvalidArgument("need one neighbour mask per vertex")
        full = (1 << self.n) - 1
        for i, r in enumerate(self.rows):
            if r & ~full or (r >> i) & 1:
                raise InvalidArgument(f"bad neighbour mask at vertex {i}")
            for j in _bits(r):
                if not (self.rows[j] >> i) & 1:
                    raise InvalidArgument(f"asymmetric edge {i}-{j}")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        rows = [0] * n
        for i, j in edges:
            if i == j or not (0 <= i < n and 0 <= j < n):
                raise InvalidArgument(f"bad edge ({i}, {j})")
            rows[i] |= 1 << j
            rows[j] |= 1 << i
        return cls(n, tuple(rows))

    @classmethod
    def from_matrix(cls, matrix) -> "Graph":
        a = np.asarray(matrix) != 0
        n = a.shape[0]
        if a.shape != (n, n):
            raise InvalidArgument("adjacency matrix must be square")
        if not np.array_equal(a, a.T) or a.diagonal().any():
            raise InvalidArgument("adjacency matrix must be symmetric with zero diagonal")
        weights = 1 << np.arange(n, dtype=object) if n > 62 else 1 << np.arange(n, dtype=np.int64)
        rows = tuple(int(sum(int(w) for w in weights[a[i]])) for i in range(n))
        return cls(n, rows)

    def has_edge(self, i: int, j: int) -> bool:
        return bool((self.rows[i] >> j) & 1)

    def neighbors(self, i: int) -> list[int]:
        return list(_bits(self.rows[i]))

    def degree(self, i: int) -> int:
        return self.rows[i].bit_count()

    @property
    def degrees(self) -> list[int]:
        return [r.bit_count() for r in self.rows]

    @property
    def edge_count(self) -> int:
        return sum(self.degrees) // 2

    def edges(self) -> list[tuple[int, int]]:
        return [(i, j) for i in range(self.n) for j in _bits(self.rows[i]) if i < j]

    def is_regular(self) -> bool:
        return len(set(self.degrees)) == 1

    def matrix(self, dtype=float) -> np.ndarray:
        a = np.zeros((self.n, self.n), dtype=dtype)
        for i, j in self.edges():
            a[i, j] = a[j, i] = 1
        return a

    def relabel(self, order: Sequence[int]) -> "Graph":
        """Graph whose vertex ``p`` is the old vertex ``order[p]``."""
        if sorted(order) != list(range(self.n)):
            raise InvalidArgument("order must be a permutation of the vertices")
        pos = [0] * self.n
        for p, v in enumerate(order):
            pos[v] = p
        rows = []
        for v in order:
            m = 0
            for u in _bits(self.rows[v]):
                m |= 1 << pos[u]
            rows.append(m)
        return Graph(self.n, tuple(rows))

    def induced(self, vertices: Sequence[int]) -> "Graph":
        """Induced subgraph, vertex ``p`` of the result being ``vertices[p]``."""
        index = {v: p for p, v in enumerate(vertices)}
        rows = []
        for v in vertices:
            m = 0
            for u in _bits(self.rows[v]):
                if u in index:
                    m |= 1 << index[u]
            rows.append(m)
        return Graph(len(vertices), tuple(rows))

    def __repr__(self):
        return f"Graph(n={self.n}, graph6={write_graph6(self).decode() if self.n < 63 else '...'})"


# --- named graphs ---------------------------------------------------------

def empty(n: int) -> Graph:
    return Graph(n, (0,) * n)


def complete(n: int) -> Graph:
    full = (1 << n) - 1
    return Graph(n, tuple(full ^ (1 << i) for i in range(n)))


def cycle(n: int) -> Graph:
    if n < 3:
        raise InvalidArgument("a cycle needs at least 3 vertices")
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def path(n: int) -> Graph:
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def star(leaves: int) -> Graph:
    """The star K_{1,leaves} with centre 0."""
    return Graph.from_edges(leaves + 1, [(0, i) for i in range(1, leaves + 1)])


def complement(g: Graph) -> Graph:
    full = (1 << g.n) - 1
    return Graph(g.n, tuple(full ^ r ^ (1 << i) for i, r in enumerate(g.rows)))


def disjoint_union(*graphs: Graph) -> Graph:
    rows, offset = [], 0
    for g in graphs:
        rows.extend(r << offset for r in g.rows)
        offset += g.n
    return Graph(offset, tuple(rows))


def closed_multiplication(g: Graph, sizes: Sequence[int]) -> Graph:
    """Replace vertex ``i`` by a clique of ``sizes[i]`` vertices.

    Two classes are completely joined iff the original vertices are
    adjacent.  Class ``i`` occupies a consecutive block of labels.
    """
    if len(sizes) != g.n:
        raise InvalidArgument("need one size per vertex")
    if any(s < 1 for s in sizes):
        raise InvalidArgument("class sizes must be positive")
    start = [0]
    for s in sizes:
        start.append(start[-1] + s)
    blocks = [((1 << s) - 1) << start[i] for i, s in enumerate(sizes)]
    rows = []
    for i, s in enumerate(sizes):
        joined = blocks[i]
        for j in _bits(g.rows[i]):
            joined |= blocks[j]
        for v in range(start[i], start[i + 1]):
            rows.append(joined ^ (1 << v))
    return Graph(start[-1], tuple(rows))


def circulant(n: int, connection: Iterable[int]) -> Graph:
    """Circulant graph: ``i ~ j`` iff ``±(i - j) mod n`` is in ``connection``."""
    conn = set(connection)
    for s in conn:
        if not 1 <= s <= n // 2:
            raise InvalidArgument(f"residue {s} outside 1..{n // 2}")
    return Graph.from_edges(
        n, [(i, (i + s) % n) for i in range(n) for s in conn if (i + s) % n != i]
    )


def circulant_spectrum(n: int, connection: Iterable[int]) -> np.ndarray:
    """Eigenvalues of ``circulant(n, connection)`` from the cosine formula,
    sorted descending.  A residue equal to ``n/2`` contributes once."""
    conn = sorted(set(connection))
    k = np.arange(n)
    vals = np.zeros(n)
    for s in conn:
        term = np.cos(2 * np.pi * k * s / n)
        vals += term if 2 * s == n else 2 * term
    return np.sort(vals)[::-1]


# --- graph6 ----------------------------------------------------------------

def write_graph6(g: Graph) -> bytes:
    """graph6 encoding (no header, no newline) for orders below 63."""
    if g.n >= 63:
        raise UnsupportedOrder("graph6 long form (n >= 63) is not supported")
    bits = [(g.rows[i] >> j) & 1 for j in range(1, g.n) for i in range(j)]
    bits += [0] * (-len(bits) % 6)
    out = bytearray([g.n + 63])
    for k in range(0, len(bits), 6):
        v = 0
        for b in bits[k:k + 6]:
            v = (v << 1) | b
        out.append(v + 63)
    return bytes(out)


def parse_graph6(data: bytes | str) -> Graph:
    if isinstance(data, str):
        data = data.encode("ascii", errors="replace")
    data = data.rstrip(b"\r\n")
    base = 0
    if data.startswith(b">>graph6<<"):
        base = 10
    body = data[base:]
    if not body:
        raise Graph6Error("empty graph6 string", base)
    for k, byte in enumerate(body):
        if not 63 <= byte <= 126:
            raise Graph6Error(f"byte {byte} outside 63..126", base + k)
    n = body[0] - 63
    if n == 63:
        raise Graph6Error("graph6 long form (n >= 63) is not supported", base)
    if n == 0:
        raise Graph6Error("graph6 order 0 has no vertices", base)
    nbits = n * (n - 1) // 2
    need = (nbits + 5) // 6
    if len(body) - 1 < need:
        raise Graph6Error(f"truncated: expected {need} data bytes, got {len(body) - 1}", base + len(body))
    if len(body) - 1 > need:
        raise Graph6Error("trailing bytes after adjacency data", base + 1 + need)
    rows = [0] * n
    k = 0
    for j in range(1, n):
        for i in range(j):
            byte = body[1 + k // 6] - 63
            if (byte >> (5 - k % 6)) & 1:
                rows[i] |= 1 << j
                rows[j] |= 1 << i
            k += 1
    if need and (body[need] - 63) & ((1 << (need * 6 - nbits)) - 1):
        raise Graph6Error("non-zero padding bits", base + need)
    return Graph(n, tuple(rows))


def read_graph6_lines(lines: Iterable[bytes | str]) -> Iterator[tuple[int, Graph]]:
    """Yield ``(line_number, graph)`` for every non-blank line (1-based).

    Parse failures are re-raised with the line number in the message.
    """
    for lineno, line in enumerate(lines, 1):
        if isinstance(line, str):
            line = line.encode("ascii", errors="replace")
        line = line.strip()
        if not line:
            continue
        try:
            yield lineno, parse_graph6(line)
        except Graph6Error as exc:
            raise Graph6Error(f"line {lineno}: {exc}", exc.offset) from exc


# --- canonical form and enumeration ----------------------------------------

def canonical_labelling(g: Graph) -> tuple[tuple[int, ...], list[int]]:
    """``(certificate, order)``: ``g.relabel(order)`` is the canonical copy and
    ``certificate`` its neighbour masks.  Equal certificates iff isomorphic."""
    return _kernels.canonical_labelling(list(g.rows))


def canonical_form(g: Graph) -> Graph:
    cert, _ = canonical_labelling(g)
    return Graph(g.n, tuple(cert))


def is_isomorphic(g: Graph, h: Graph) -> bool:
    if g.n != h.n or sorted(g.degrees) != sorted(h.degrees):
        return False
    return canonical_labelling(g)[0] == canonical_labelling(h)[0]


MAX_ENUM_ORDER = 8


def _accept(rows: list[int], v: int) -> bool:
    """Canonical-augmentation test: is ``v`` in the orbit of the canonical
    deletion vertex of the graph ``rows``?"""
    n = len(rows)
    deg_v = rows[v].bit_count()
    if any(r.bit_count() > deg_v for r in rows):
        return False
    cells = _kernels.refine(rows, [(1 << n) - 1])
    last = cells[-1]
    if not (last >> v) & 1:
        return False
    if last & (last - 1) == 0:
        return True
    _, order = _kernels.canonical_labelling(rows, cells)
    m = order[-1]
    if m == v:
        return True
    head = cells[:-1]
    code_v, _ = _kernels.canonical_labelling(rows, head + [last ^ (1 << v), 1 << v])
    code_m, _ = _kernels.canonical_labelling(rows, head + [last ^ (1 << m), 1 << m])
    return code_v == code_m


def _extend(parents: list[Graph]) -> list[Graph]:
    out = []
    for p in parents:
        n = p.n
        seen = set()
        for s in range(1 << n):
            rows = [r | (((s >> i) & 1) << n) for i, r in enumerate(p.rows)]
            rows.append(s)
            if not _accept(rows, n):
                continue
            cert, _ = _kernels.canonical_labelling(rows)
            if cert in seen:
                continue
            seen.add(cert)
            out.append(Graph(n + 1, tuple(rows)))
    return out


def enumerate_nonisomorphic(n: int) -> Iterator[Graph]:
    """One graph per isomorphism class on ``n`` vertices, deterministic order.

    Built by canonical augmentation: a child (parent plus one new vertex) is
    kept only if the new vertex lies in the orbit of the canonical deletion
    vertex, so every class descends from exactly one parent class.
    """
    if n < 1:
        raise InvalidArgument("order must be at least 1")
    if n > MAX_ENUM_ORDER:
        raise UnsupportedOrder(
            f"built-in enumeration stops at order {MAX_ENUM_ORDER}; "
            "stream graph6 input for larger orders"
        )
    level = [empty(1)]
    for _ in range(1, n):
        level = _extend(level)
    yield from level
