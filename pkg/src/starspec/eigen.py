"""Symmetric eigendecompositions with a deterministic basis convention.

The numerical work is done by LAPACK (``numpy.linalg.eigh``).  On top of it
this module fixes every free choice so identical input gives identical
output: eigenvalues descend, bases of degenerate eigenspaces are rebuilt by
Gram-Schmidt from projected unit vectors in index order, and each vector is
oriented so its largest-magnitude entry is positive.
"""

from __future__ import annotations

import os
from dataclasses import dataclass

import numpy as np

from .errors import InvalidArgument, NumericalFailure
from .graphcore import Graph

DEFAULT_TOL = 1e-10
GROUP_GAP = 1e-8
SIGN_TIE = 1e-8


def default_tol() -> float:
    raw = os.environ.get("SPECTRAL_TOL")
    if raw:
        try:
            val = float(raw)
        except ValueError:
            raise InvalidArgument(f"SPECTRAL_TOL={raw!r} is not a number") from None
        if not val > 0:
            raise InvalidArgument("SPECTRAL_TOL must be positive")
        return val
    return DEFAULT_TOL


@dataclass(frozen=True)
class EigenDecomposition:
    """``values`` descend; column ``i`` of ``vectors`` belongs to ``values[i]``."""

    values: np.ndarray
    vectors: np.ndarray
    residual_tol: float
    norm: float

    @property
    def n(self) -> int:
        return len(self.values)

    def groups(self) -> list[tuple[int, int]]:
        """Half-open index ranges of numerically equal eigenvalues."""
        return _groups(self.values, self.norm)


def adjacency_matrix(g: Graph) -> np.ndarray:
    return g.matrix(dtype=float)


def _groups(values, norm):
    gap = GROUP_GAP * max(1.0, norm)
    out, start = [], 0
    for i in range(1, len(values) + 1):
        if i == len(values) or values[i - 1] - values[i] >= gap:
            out.append((start, i))
            start = i
    return out


def _orient(v: np.ndarray) -> np.ndarray:
    mag = np.abs(v)
    top = mag.max()
    if top == 0:
        return v
    i = int(np.argmax(mag >= top - SIGN_TIE))
    return -v if v[i] < 0 else v


def _canonical_basis(block: np.ndarray) -> np.ndarray:
    """Deterministic orthonormal basis of span(block) (columns orthonormal):
    Gram-Schmidt on the projections of e_0, e_1, ... onto the span."""
    n, g = block.shape
    coords = []
    for i in range(n):
        c = block[i].copy()
        for q in coords:
            c -= (q @ c) * q
        # second pass for stability
        for q in coords:
            c -= (q @ c) * q
        r = np.linalg.norm(c)
        if r > 1e-6:
            coords.append(c / r)
            if len(coords) == g:
                break
    if len(coords) < g:
        return block
    return block @ np.array(coords).T


def decompose(m, tol: float | None = None) -> EigenDecomposition:
    """Full eigendecomposition of a real symmetric matrix.

    Raises :class:`InvalidArgument` for non-finite or asymmetric input and
    :class:`NumericalFailure` when the residual or orthogonality check
    exceeds ``tol`` scaled by ``max(1, ||m||_inf)``.
    """
    if tol is None:
        tol = default_tol()
    a = np.array(m, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise InvalidArgument("matrix must be square")
    if not np.isfinite(a).all():
        raise InvalidArgument("matrix has non-finite entries")
    if not np.array_equal(a, a.T):
        raise InvalidArgument("matrix is not symmetric")
    n = a.shape[0]
    if n == 0:
        raise InvalidArgument("matrix is empty")
    norm = float(np.abs(a).sum(axis=1).max())
    try:
        w, v = np.linalg.eigh(a)
    except np.linalg.LinAlgError as exc:
        raise NumericalFailure(f"eigensolver did not converge: {exc}", float("inf")) from exc
    w = w[::-1].copy()
    v = v[:, ::-1].copy()
    for lo, hi in _groups(w, norm):
        if hi - lo > 1:
            v[:, lo:hi] = _canonical_basis(v[:, lo:hi])
            w[lo:hi] = w[lo:hi].mean()
    for i in range(n):
        v[:, i] = _orient(v[:, i])
    scale = max(1.0, norm)
    resid = float(np.abs(a @ v - v * w).max()) / scale
    ortho = float(np.abs(v.T @ v - np.eye(n)).max())
    achieved = max(resid, ortho)
    if achieved > tol:
        raise NumericalFailure(
            f"scaled residual {achieved:.3e} exceeds tolerance {tol:.1e}", achieved
        )
    return EigenDecomposition(w, v, achieved, norm)


def spectrum(m, tol: float | None = None) -> np.ndarray:
    return decompose(m, tol).values


def graph_decomposition(g: Graph, tol: float | None = None) -> EigenDecomposition:
    return decompose(adjacency_matrix(g), tol)


def last_two_pair(d: EigenDecomposition) -> tuple[np.ndarray, np.ndarray]:
    """``(x, y)`` with ``x`` for the smallest eigenvalue and ``y`` for the
    second smallest.

    When those two eigenvalues coincide and form an eigenspace of dimension
    exactly two, the pair is rotated so the first non-zero vertex vector
    ``(x_i, y_i)`` lies on the positive first axis.
    """
    n = d.n
    if n < 2:
        raise InvalidArgument("need at least two eigenvalues")
    x = d.vectors[:, n - 1].copy()
    y = d.vectors[:, n - 2].copy()
    if (n - 2, n) in d.groups():
        r = np.hypot(x, y)
        i = int(np.argmax(r > 1e-8))
        c, s = x[i] / r[i], y[i] / r[i]
        x, y = c * x + s * y, -s * x + c * y
        y[i] = 0.0
        y = _orient(y)
    return x, y


def last_k_basis(d: EigenDecomposition, k: int) -> np.ndarray:
    """Columns are the eigenvectors of the ``k`` smallest eigenvalues,
    smallest first."""
    if not 1 <= k <= d.n:
        raise InvalidArgument(f"k={k} outside 1..{d.n}")
    return d.vectors[:, ::-1][:, :k].copy()


def last_two_sum(g: Graph, tol: float | None = None) -> float:
    w = graph_decomposition(g, tol).values
    return float(w[-1] + w[-2])


@dataclass(frozen=True)
class Ratios:
    lambda3_over_n: float
    abs_last2_over_n: float
    last_two_sum_over_n: float


def ratios(g: Graph, tol: float | None = None) -> Ratios:
    if g.n < 3:
        raise InvalidArgument("ratios need at least 3 vertices")
    w = graph_decomposition(g, tol).values
    n = g.n
    return Ratios(float(w[2] / n), float(abs(w[-2]) / n), float((w[-1] + w[-2]) / n))


def eigenvalues(m) -> np.ndarray:
    """Eigenvalues only, descending (no basis, no residual check)."""
    a = np.asarray(m, dtype=float)
    if not np.isfinite(a).all():
        raise InvalidArgument("matrix has non-finite entries")
    return np.linalg.eigvalsh(a)[::-1]
