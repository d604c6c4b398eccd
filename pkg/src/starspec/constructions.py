"""Named graph families, the block examples on 8 and 12 vertices, the
C_6 multiplication algebra and the +-1 equality-case matrices."""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from . import graphcore as gc
from .errors import InvalidArgument
from .graphcore import Graph
from .starop import graph_from_vectors


def h_ab(a: int, b: int) -> Graph:
    """C_6 with its vertices blown up to cliques of sizes a, b, a, b, a, b."""
    if a < 1 or b < 1:
        raise InvalidArgument("a and b must be positive")
    return gc.closed_multiplication(gc.cycle(6), [a, b, a, b, a, b])


def pivalous(n: int) -> Graph:
    """Pi_n: ``i ~ j`` iff the i-th and j-th n-th roots of unity have
    non-negative dot product.

    The sign of ``cos(2*pi*d/n)`` for ``d = (i - j) mod n`` is decided in
    integers: negative iff ``n < 4d < 3n``.  A zero dot (``4d = n``) is an
    edge here, so it is a non-edge of the complement.
    """
    if n < 3:
        raise InvalidArgument("pivalous graphs need n >= 3")
    rows = []
    for i in range(n):
        m = 0
        for j in range(n):
            if i == j:
                continue
            d = (i - j) % n
            if not (n < 4 * d < 3 * n):
                m |= 1 << j
        rows.append(m)
    return Graph(n, tuple(rows))


def roots_of_unity(n: int, scale: float = 1.0) -> np.ndarray:
    k = np.arange(n)
    return scale * np.column_stack([np.cos(2 * np.pi * k / n), np.sin(2 * np.pi * k / n)])


def disjoint_cliques(k: int, m: int) -> Graph:
    if k < 1 or m < 1:
        raise InvalidArgument("k and m must be positive")
    return gc.disjoint_union(*[gc.complete(m)] * k)


# --- the two worked block examples -----------------------------------------

G4_VECTORS = np.array([
    (0.43, 0.0), (0.43, 0.0), (0.26, 0.5), (-0.26, 0.5),
    (-0.43, 0.0), (-0.43, 0.0), (-0.26, -0.5), (0.26, -0.5),
])

G6_VECTORS = np.array([
    (0.37, 0.0), (0.37, 0.0), (0.30, 0.26), (0.16, 0.43), (-0.16, 0.43), (-0.30, 0.26),
    (-0.37, 0.0), (-0.37, 0.0), (-0.30, -0.26), (-0.16, -0.43), (0.16, -0.43), (0.30, -0.26),
])


def g4() -> Graph:
    """4-regular graph on 8 vertices built from its printed plane vectors."""
    return graph_from_vectors(G4_VECTORS)


def g6() -> Graph:
    """6-regular graph on 12 vertices built from its printed plane vectors."""
    return graph_from_vectors(G6_VECTORS)


# --- C_6 multiplication by [a, b, c, a, b, c] ------------------------------

@dataclass(frozen=True)
class C6MultParams:
    a: int
    b: int
    c: int

    def __post_init__(self):
        if min(self.a, self.b, self.c) < 1:
            raise InvalidArgument("a, b, c must be positive")

    @property
    def n(self) -> int:
        return 2 * (self.a + self.b + self.c)

    @property
    def sizes(self) -> list[int]:
        return [self.a, self.b, self.c, self.a, self.b, self.c]


def c6_multiplication(p: C6MultParams) -> Graph:
    return gc.closed_multiplication(gc.cycle(6), p.sizes)


def divisor_matrix(p: C6MultParams) -> np.ndarray:
    """Quotient matrix of ``A + I`` for the class partition of
    :func:`c6_multiplication`: entry (i, j) counts the closed neighbours of
    a class-i vertex inside class j."""
    a, b, c = p.a, p.b, p.c
    return np.array([
        [a, b, 0, 0, 0, c],
        [a, b, c, 0, 0, 0],
        [0, b, c, a, 0, 0],
        [0, 0, c, a, b, 0],
        [0, 0, 0, a, b, c],
        [a, 0, 0, 0, b, c],
    ], dtype=float)


def char_poly_coeffs(p: C6MultParams) -> list[float]:
    """Coefficients (highest degree first) of x^2 (x - s)(x^3 - s x^2 + 4abc)
    with s = a + b + c."""
    s = p.a + p.b + p.c
    cubic = np.array([1.0, -s, 0.0, 4.0 * p.a * p.b * p.c])
    poly = np.polymul(np.polymul([1.0, 0.0, 0.0], [1.0, -s]), cubic)
    return [float(v) for v in poly]


def cubic_roots(p: C6MultParams) -> np.ndarray:
    """Real roots of x^3 - s x^2 + 4abc, descending (all three are real)."""
    s = float(p.a + p.b + p.c)
    from .feasible import real_cubic_roots
    return real_cubic_roots(1.0, -s, 0.0, 4.0 * p.a * p.b * p.c)[::-1]


# --- +-1 equality-case matrices --------------------------------------------

class SignRule(Enum):
    TYPE1 = "Type1Equality"
    TYPE2 = "Type2Equality"


def equality_case_M(n: int, which: SignRule | str) -> np.ndarray:
    """Symmetric +-1 matrix with front = first half, back = second half.

    Using 1-based indices ``a <= n/2 < c``, the front/back entry is +1 when
    Type 1: ``a <= (1/2 - sqrt(2)/4) n`` or ``c >= (1/2 + sqrt(2)/4) n``;
    Type 2: ``a <= n / (2 sqrt 2)`` and ``c >= n - n / (2 sqrt 2)``.
    All entries inside the front or inside the back are -1.
    """
    if isinstance(which, str):
        which = SignRule(which)
    if n < 8:
        raise InvalidArgument("equality-case matrices need n >= 8")
    half = n // 2
    idx = np.arange(1, n + 1)
    if which is SignRule.TYPE1:
        lo = math.floor((0.5 - math.sqrt(2) / 4) * n)
        hi = math.ceil((0.5 + math.sqrt(2) / 4) * n)
        plus = (idx[:, None] <= lo) | (idx[None, :] >= hi)
    else:
        lo = math.floor(n / (2 * math.sqrt(2)))
        hi = math.ceil(n - n / (2 * math.sqrt(2)))
        plus = (idx[:, None] <= lo) & (idx[None, :] >= hi)
    m = -np.ones((n, n))
    block = np.where(plus[:half, half:], 1.0, -1.0)
    m[:half, half:] = block
    m[half:, :half] = block.T
    return m


def equality_case_edges(m: np.ndarray) -> int:
    """Number of +1 entries between the two halves (the edge count t)."""
    half = len(m) // 2
    return int((m[:half, half:] > 0).sum())
