"""Feasibility analysis for the last two eigenvalues of a +-1 matrix
``M = 2Q - J`` whose positive pattern is bipartite between a front and a
back block, with an isolated middle block.

For an eigenvector ``x`` with eigenvalue ``mu`` let ``A, B, C`` be its sums
over the front, middle and back, and write ``A = (kB/l) a`` and
``C = (m B / l) c`` (``k, l, m`` the block sizes).  After normalising by the
order ``n`` (``X = k/n``, ``Y = l/n``, ``Z = m/n``, ``T = t/n^2``,
``nu = mu/n``, ``t`` the number of front/back +1 pairs), the point
``(a, c, nu)`` lies on the plane ``-nu = X a + Y + Z c`` and satisfies a
family of inequalities depending on the sign pattern of ``x``.  This
module evaluates those quantities, their boundary curves and phases, and
the two one-parameter scans that rule out the low intersections.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import NamedTuple, Sequence

import numpy as np

from .errors import InvalidArgument, PreconditionFailure
from .structure import Type

BOUNDARY_EPS = 1e-12


class Partition(NamedTuple):
    front: tuple[int, ...]
    middle: tuple[int, ...]
    back: tuple[int, ...]

    @classmethod
    def of(cls, p) -> "Partition":
        return cls(tuple(p.front), tuple(p.middle), tuple(p.back))

    @property
    def size(self) -> int:
        return len(self.front) + len(self.middle) + len(self.back)


def halves(n: int) -> Partition:
    """Front = first half, back = second half, empty middle."""
    h = n // 2
    return Partition(tuple(range(h)), (), tuple(range(h, n)))


# --- Stage quantities -------------------------------------------------------

@dataclass(frozen=True)
class StageQuantities:
    n: int
    k: int
    l: int
    m_back: int
    t: int
    A: float
    B: float
    C: float
    mu: float
    d_front: tuple[int, ...]
    d_back: tuple[int, ...]
    x1: float
    reversed: bool
    a: float | None
    c: float | None
    identity_residual: float | None

    @property
    def b_zero(self) -> bool:
        return self.a is None


def _check_pattern(m: np.ndarray, part: Partition):
    n = len(m)
    if part.size != n or sorted(part.front + part.middle + part.back) != list(range(n)):
        raise InvalidArgument("partition does not cover the matrix indices exactly once")
    if not np.array_equal(m, m.T):
        raise InvalidArgument("matrix is not symmetric")
    if not np.isin(m, (-1.0, 1.0)).all():
        raise InvalidArgument("matrix entries must be +-1")
    pos = m > 0
    back = list(part.back)
    allowed = np.zeros_like(pos)
    allowed[np.ix_(list(part.front), back)] = True
    allowed[np.ix_(back, list(part.front))] = True
    bad = np.argwhere(pos & ~allowed)
    if len(bad):
        i, j = bad[0]
        raise InvalidArgument(f"+1 at ({i}, {j}) is not a front/back entry")


def stage1_extract(m, part, vec, mu: float, tol: float = 1e-7) -> StageQuantities:
    """Block sums and normalised sums of an eigenvector of ``m``.

    If the middle sum is negative the order of the vertices is reversed and
    the vector negated, so the reported ``B`` is never negative.  When
    ``B != 0`` the two coupled identities linking ``a - 1`` and ``c - 1`` to
    the degree-weighted sums are checked to ``tol`` (relative to the scale
    of ``mu``) and a failure raises :class:`PreconditionFailure`.
    """
    m = np.asarray(m, dtype=float)
    part = Partition.of(part)
    _check_pattern(m, part)
    x = np.asarray(vec, dtype=float)
    n = len(m)
    if x.shape != (n,):
        raise InvalidArgument("vector length must match the matrix")
    resid = float(np.abs(m @ x - mu * x).max())
    scale = max(1.0, abs(mu)) * max(float(np.abs(x).max()), 1e-300)
    if resid > tol * scale:
        raise PreconditionFailure(f"vector is not an eigenvector (residual {resid:.3e})", resid)
    front, middle, back = list(part.front), list(part.middle), list(part.back)
    zero = 1e-9 * float(np.abs(x).max())
    flipped = False
    if x[middle].sum() < -zero:
        front, back = back[::-1], front[::-1]
        middle = middle[::-1]
        x = -x
        flipped = True
    k, l, mb = len(front), len(middle), len(back)
    pos = m > 0
    d_front = tuple(int(pos[i, back].sum()) for i in front)
    d_back = tuple(int(pos[j, front].sum()) for j in back)
    t = sum(d_front)
    A, B, C = float(x[front].sum()), float(x[middle].sum()), float(x[back].sum())
    x1 = float(x[front[0]]) if front else float("nan")
    if l == 0 or abs(B) <= zero * max(l, 1) or k == 0 or mb == 0:
        return StageQuantities(n, k, l, mb, t, A, 0.0 if l == 0 else B, C, mu,
                               d_front, d_back, x1, flipped, None, None, None)
    a = A * l / (k * B)
    c = C * l / (mb * B)
    s_c = float(sum(d * x[j] for d, j in zip(d_back, back)))
    s_a = float(sum(d * x[i] for d, i in zip(d_front, front)))
    lhs = [mu * (a - 1), mu * (c - 1), -mu, x1]
    rhs = [
        2 * l / (k * B) * s_c,
        2 * l / (mb * B) * s_a,
        k * a + l + mb * c,
        (B / l) * (-k * a - l + mb * c) / mu,
    ]
    err = max(abs(u - v) / max(1.0, abs(u), abs(v)) for u, v in zip(lhs, rhs))
    if err > tol:
        raise PreconditionFailure(f"stage identities fail (residual {err:.3e})", err)
    return StageQuantities(n, k, l, mb, t, A, B, C, mu, d_front, d_back, x1, flipped, a, c, err)


# --- normalised parameters --------------------------------------------------

@dataclass(frozen=True)
class NormalizedParams:
    X: float
    Y: float
    Z: float
    T: float
    a: float | None
    c: float | None
    nu: float
    type: Type = Type.NEITHER

    def __post_init__(self):
        if abs(self.X + self.Y + self.Z - 1) > 1e-12:
            raise InvalidArgument("X + Y + Z must equal 1")
        if self.T < -1e-12 or self.T > self.X * self.Z + 1e-12:
            raise InvalidArgument("T must lie in [0, XZ]")

    def plane_residual(self) -> float | None:
        if self.a is None:
            return None
        return abs(-self.nu - (self.X * self.a + self.Y + self.Z * self.c))


def normalize(sq: StageQuantities, n: int | None = None, type: Type = Type.NEITHER) -> NormalizedParams:
    if n is None:
        n = sq.n
    return NormalizedParams(sq.k / n, sq.l / n, sq.m_back / n, sq.t / n ** 2,
                            sq.a, sq.c, sq.mu / n, type)


# --- inequality slacks ------------------------------------------------------

SLACK_FIELDS = ("border", "extrema_c", "mean_a", "mean_c", "smoothing_a", "smoothing_c")


@dataclass(frozen=True)
class InequalitySlacks:
    """Signed slacks, ``>= 0`` meaning satisfied; inapplicable ones are None."""

    border: float | None = None
    extrema_c: float | None = None
    mean_a: float | None = None
    mean_c: float | None = None
    smoothing_a: float | None = None
    smoothing_c: float | None = None

    def applicable(self) -> dict[str, float]:
        return {k: getattr(self, k) for k in SLACK_FIELDS if getattr(self, k) is not None}

    def minimum(self) -> float:
        return min(self.applicable().values())


def slack_values(type: Type, X, Y, Z, T, a, c, nu) -> InequalitySlacks:
    """Array-friendly slack evaluation (``a``, ``c``, ``nu`` may be arrays)."""
    if type is Type.TYPE1:
        border = np.minimum(np.minimum(a, 1 - a), np.minimum(c, 1 - c))
        return InequalitySlacks(
            border=border,
            mean_c=2 * (T / Z) * a - nu * (c - 1),
            mean_a=2 * (T / X) * c - nu * (a - 1),
            smoothing_c=nu * (c - 1) - 2 * X * (a - 1) - 2 * T / Z,
            smoothing_a=nu * (a - 1) - 2 * Z * (c - 1) - 2 * T / X,
        )
    if type is Type.TYPE2:
        return InequalitySlacks(
            border=np.minimum(a - 1, -c),
            extrema_c=nu ** 2 * (c - 1) - 2 * (T / Z) * (nu + 2 * Z * c),
            mean_c=nu * (c - 1) - 2 * (T / Z) * a,
            mean_a=2 * (T / X) * c - nu * (a - 1),
        )
    raise InvalidArgument("slacks need a Type 1 or Type 2 eigenvector")


def slacks(p: NormalizedParams) -> InequalitySlacks:
    if p.type not in (Type.TYPE1, Type.TYPE2):
        raise InvalidArgument("slacks need a Type 1 or Type 2 eigenvector")
    if p.a is None:
        raise InvalidArgument("a and c are undefined when the middle sum is zero")
    s = slack_values(p.type, p.X, p.Y, p.Z, p.T, p.a, p.c, p.nu)
    return InequalitySlacks(**{k: float(v) for k, v in s.applicable().items()})


def b_zero_bound(t: float, mu2: float) -> float:
    """Slack of ``mu2 >= -2 sqrt(t)`` for a zero middle sum."""
    if t < 0:
        raise InvalidArgument("t must be non-negative")
    return mu2 + 2 * math.sqrt(t)


def type2_dichotomy(p: NormalizedParams) -> float:
    """Slack of ``nu >= min(-2 sqrt(T), -2T/Z)`` for a Type 2 eigenvalue."""
    if p.type is not Type.TYPE2:
        raise InvalidArgument("the dichotomy applies to Type 2 eigenvectors")
    return p.nu - min(-2 * math.sqrt(p.T), -2 * p.T / p.Z)


def floor_slack(nu1: float, nu2: float) -> float:
    """Slack of ``nu1 + nu2 >= -sqrt(2)``."""
    return nu1 + nu2 + math.sqrt(2)


# --- boundaries -------------------------------------------------------------

@dataclass(frozen=True)
class FlipThresholds:
    mean_c: float
    mean_a: float
    smoothing_c: float
    smoothing_a: float

    def as_dict(self) -> dict[str, float]:
        return {"mean_c": self.mean_c, "mean_a": self.mean_a,
                "smoothing_c": self.smoothing_c, "smoothing_a": self.smoothing_a}


def flip_thresholds(X: float, Z: float) -> FlipThresholds:
    if not (X > 0 and Z > 0 and X + Z <= 1 + 1e-15):
        raise InvalidArgument("need X, Z > 0 and X + Z <= 1")
    return FlipThresholds(X * (1 - X) / 2, Z * (1 - Z) / 2, Z * (1 - 2 * Z), X * (1 - 2 * X))


class Pole(float):
    """Marker value returned when a boundary is evaluated at its pole."""


@dataclass(frozen=True)
class Hyperbola:
    """``nu = constant + numerator / (X c + p - X)`` along the plane, for a
    boundary of the form ``nu (c - 1) = p a + q``."""

    X: float
    p: float
    constant: float
    numerator: float

    @property
    def pole(self) -> float:
        return (self.X - self.p) / self.X

    def __call__(self, c):
        den = self.X * np.asarray(c, dtype=float) + self.p - self.X
        with np.errstate(divide="ignore", invalid="ignore"):
            return self.constant + self.numerator / den

    def evaluate(self, c: float, tol: float = 1e-12) -> float | Pole:
        den = self.X * c + self.p - self.X
        if abs(den) <= tol:
            return Pole(self.pole)
        return self.constant + self.numerator / den

    def a_on_plane(self, c: float, Y: float, Z: float, q: float) -> float:
        """The ``a`` coordinate of the boundary point above ``c``."""
        return -(Z * c * c + (Y - Z) * c + (q - Y)) / (self.X * c + self.p - self.X)


def hyperbola(pq: tuple[float, float], X: float, Y: float, Z: float) -> Hyperbola:
    p, q = pq
    if X == 0:
        raise InvalidArgument("X must be non-zero")
    return Hyperbola(X, p, -Z * p / X, X * q + Z * p * p / X - Z * p - Y * p)


BOUNDARY_KINDS = ("mean_c", "smoothing_c", "mean_a", "smoothing_a")


def boundary(kind: str, X: float, Y: float, Z: float, T: float) -> Hyperbola:
    """Type 1 boundary curve as a function of ``c`` (``*_c`` kinds) or of
    ``a`` (``*_a`` kinds, built with the roles of the front and back
    swapped)."""
    if kind == "mean_c":
        return hyperbola((2 * T / Z, 0.0), X, Y, Z)
    if kind == "smoothing_c":
        return hyperbola((2 * X, 2 * T / Z - 2 * X), X, Y, Z)
    if kind == "mean_a":
        return hyperbola((2 * T / X, 0.0), Z, Y, X)
    if kind == "smoothing_a":
        return hyperbola((2 * Z, 2 * T / X - 2 * Z), Z, Y, X)
    raise InvalidArgument(f"unknown boundary {kind!r}")


# --- intersections ----------------------------------------------------------

def intersection_I(T: float) -> tuple[float, ...]:
    """Roots of ``nu^2 + nu + 2T``, ascending."""
    disc = 1 - 8 * T
    if disc < 0:
        return ()
    if disc == 0:
        return (-0.5,)
    r = math.sqrt(disc)
    return ((-1 - r) / 2, (-1 + r) / 2)


def _polish(coeffs, x, steps=3):
    for _ in range(steps):
        f = np.polyval(coeffs, x)
        df = np.polyval(np.polyder(coeffs), x)
        if df == 0:
            break
        nx = x - f / df
        if not math.isfinite(nx) or abs(np.polyval(coeffs, nx)) > abs(f):
            break
        x = nx
    return x


def real_cubic_roots(c3: float, c2: float, c1: float, c0: float) -> np.ndarray:
    """Real roots (with multiplicity) of ``c3 x^3 + c2 x^2 + c1 x + c0``,
    ascending.  Trigonometric form for three real roots, Cardano otherwise,
    each root refined by Newton steps."""
    if c3 == 0:
        raise InvalidArgument("leading coefficient must be non-zero")
    b, c, d = c2 / c3, c1 / c3, c0 / c3
    p = c - b * b / 3
    q = 2 * b ** 3 / 27 - b * c / 3 + d
    shift = -b / 3
    scale = max(1.0, abs(b), abs(c) ** 0.5, abs(d) ** (1 / 3))
    disc = -(4 * p ** 3 + 27 * q * q)
    eps = 1e-12 * scale ** 6
    if abs(disc) <= eps:
        if abs(p) <= 1e-12 * scale ** 2:
            roots = [shift] * 3
        else:
            roots = [3 * q / p + shift, -3 * q / (2 * p) + shift, -3 * q / (2 * p) + shift]
    elif disc > 0:
        r = 2 * math.sqrt(-p / 3)
        arg = max(-1.0, min(1.0, 3 * q / (p * r)))
        phi = math.acos(arg) / 3
        roots = [r * math.cos(phi - 2 * math.pi * j / 3) + shift for j in range(3)]
    else:
        s = math.sqrt(q * q / 4 + p ** 3 / 27)
        u = np.cbrt(-q / 2 + s)
        v = np.cbrt(-q / 2 - s)
        roots = [float(u + v) + shift]
    coeffs = np.array([1.0, b, c, d])
    return np.sort(np.array([_polish(coeffs, float(x)) for x in roots]))


def cubic_P(X: float, Z: float, T: float) -> np.ndarray:
    """Coefficients of ``nu^3 + nu^2 + 4(T - XZ) nu + 4(TX + TZ - XZ)``."""
    return np.array([1.0, 1.0, 4 * (T - X * Z), 4 * (T * X + T * Z - X * Z)])


@dataclass(frozen=True)
class IntersectionII:
    roots: tuple[float, ...]
    second_root: float | None
    point: tuple[float, float] | None
    degenerate: bool


def intersection_point_II(X: float, Z: float, T: float, nu: float, tol: float = 1e-12):
    """``(a, c)`` where both smoothing boundaries pass through ``nu``.

    When ``nu^2 = 4XZ`` the two conditions define a line; the point with
    ``a = c = 1 - T / (2 X^2)`` on it is returned (this only happens for
    ``X = Z``)."""
    den = nu - 4 * X * Z / nu
    if abs(den) <= tol:
        return (1 - T / (2 * X * X), 1 - T / (2 * X * X)), True
    a = (4 * T / nu + 2 * T / X) / den + 1
    c = (4 * T / nu + 2 * T / Z) / den + 1
    return (a, c), False


def intersection_II(X: float, Z: float, T: float) -> IntersectionII:
    if not (X > 0 and Z > 0):
        raise InvalidArgument("X and Z must be positive")
    if T > X * Z + 1e-15:
        raise InvalidArgument("T must not exceed XZ")
    roots = tuple(float(r) for r in real_cubic_roots(*cubic_P(X, Z, T)))
    second = roots[1] if len(roots) == 3 else None
    point, degenerate = (None, False)
    if second is not None and second != 0:
        point, degenerate = intersection_point_II(X, Z, T, second)
    return IntersectionII(roots, second, point, degenerate)


# --- phases -----------------------------------------------------------------

class Phase(Enum):
    PHASE_1A = "Phase1a"
    PHASE_1C = "Phase1c"
    PHASE_2A = "Phase2a"
    PHASE_3 = "Phase3"
    UNCLASSIFIED = "Unclassified"


@dataclass(frozen=True)
class PhaseResult:
    phase: Phase
    phi: bool
    boundary: bool
    positive: dict = field(default_factory=dict)
    thresholds: FlipThresholds | None = None


def phase_classify(X: float, Z: float, T: float, eps: float = BOUNDARY_EPS) -> PhaseResult:
    """Type 1 phase of the feasible region, plus the Type 2 flag for a
    negative mean(a) boundary.

    A boundary counts as positive once ``T`` reaches its flip threshold; a
    ``T`` within ``eps`` of a threshold is treated as flipped and reported
    through ``boundary``.  Precedence when several descriptions fit:
    Phase 3, Phase 2a, Phase 1c, Phase 1a.
    """
    if not (X > 0 and Z > 0 and X + Z < 1):
        raise InvalidArgument("need X, Z > 0 and X + Z < 1")
    if not (0 <= T <= X * Z + eps):
        raise InvalidArgument("T must lie in [0, XZ]")
    th = flip_thresholds(X, Z)
    positive = {k: T >= v - eps for k, v in th.as_dict().items()}
    on_edge = any(abs(T - v) <= eps for v in th.as_dict().values())
    if positive["smoothing_a"] and positive["smoothing_c"]:
        phase = Phase.PHASE_3
    elif positive["mean_a"] and positive["smoothing_a"]:
        phase = Phase.PHASE_2A
    elif not positive["mean_c"] and not positive["smoothing_c"]:
        phase = Phase.PHASE_1C
    elif not positive["mean_a"] and not positive["smoothing_a"]:
        phase = Phase.PHASE_1A
    else:
        phase = Phase.UNCLASSIFIED
    return PhaseResult(phase, not positive["mean_a"], on_edge, positive, th)


# --- grid scans -------------------------------------------------------------

def _grid(lo: Fraction, hi: Fraction, step: float) -> list[Fraction]:
    if not 0 < step <= 1e-3 + 1e-15:
        raise InvalidArgument("grid step must lie in (0, 1e-3]")
    den = round(1 / step)
    if abs(den * step - 1) > 1e-9:
        raise InvalidArgument("grid step must be 1/N for an integer N")
    k0 = math.ceil(lo * den)
    k1 = math.floor(hi * den)
    return [Fraction(k, den) for k in range(k0, k1 + 1)]


def P_general(nu: float, T: float, S: float, const: float) -> float:
    return nu ** 3 + nu ** 2 + 4 * (T - S) * nu + const


def iia_constant(T: float, S: float) -> float:
    """Constant term of the cubic after choosing the extremal back size."""
    if T >= 1 / 9:
        return 4 * (math.sqrt(T) * (T + S) - S)
    r = 1 - math.sqrt(1 - 8 * T)
    return 4 * (2 * T * S / r + T * r / 2 - S)


def iia_value(T: float, S: float, nu: float = -0.7) -> float:
    return P_general(nu, T, S, iia_constant(T, S))


@dataclass(frozen=True)
class ScanPoint:
    T: float
    S: float
    value: float
    label: str


@dataclass(frozen=True)
class ScanResult:
    minimum: float
    argmin: ScanPoint
    points: int
    extra: dict = field(default_factory=dict)

    def rows(self):
        return self.extra.get("rows", [])


def _reduce(points: Sequence[ScanPoint]) -> tuple[float, ScanPoint]:
    best = min(points, key=lambda p: (p.value, p.T, p.S))
    return best.value, best


def scan_IIa(grid_step: float = 1e-3, keep_rows: bool = False) -> ScanResult:
    """Grid minimum of ``P(-0.7)`` over ``T`` with ``S`` at both ends of its
    admissible interval ``[T + 7/400, sqrt(T) - T]`` clipped to ``[0, 1/4]``."""
    pts = []
    for Tf in _grid(Fraction(0), Fraction(1, 4), grid_step):
        if Tf == 0:
            continue
        T = float(Tf)
        lo = max(T + 7 / 400, 0.0)
        hi = min((1 - (2 * math.sqrt(T) - 1) ** 2) / 4, 0.25)
        if hi < lo:
            continue
        for S, label in ((lo, "lower"), (hi, "upper")):
            pts.append(ScanPoint(T, S, iia_value(T, S), label))
    if not pts:
        raise PreconditionFailure("scan produced no admissible points", float("nan"))
    mn, arg = _reduce(pts)
    extra = {"rows": pts} if keep_rows else {}
    return ScanResult(mn, arg, len(pts), extra)


def iib_value(T: float, S: float) -> float:
    nu = -math.sqrt(2) + 2 * math.sqrt(T)
    return P_general(nu, T, S, 4 * (2 * T * math.sqrt(S) - S))


def iib_lower_S(T: float) -> float:
    return T + ((-3 * math.sqrt(2) + 6 * math.sqrt(T) + 1) ** 2 - 1) / 12


@dataclass(frozen=True)
class ScanIIbResult:
    lower: ScanResult
    upper: ScanResult
    zero_locus: tuple[float, ...]


def scan_IIb(grid_step: float = 1e-3, zero_tol: float = 1e-9, keep_rows: bool = False) -> ScanIIbResult:
    """``P(-sqrt 2 + 2 sqrt T)`` at both ends of the ``S`` range
    ``[lower end, 1/4]`` for grid ``T`` in ``[0.055, 1/4]``; grid points
    where the range is empty (lower end above 1/4) are skipped."""
    low = []
    for Tf in _grid(Fraction(55, 1000), Fraction(1, 4), grid_step):
        T = float(Tf)
        S = iib_lower_S(T)
        if S > 0.25 or S < 0:
            continue
        low.append(ScanPoint(T, S, iib_value(T, S), "lower"))
    # the upper end only matters where the S range [lower end, 1/4] is non-empty
    up = [ScanPoint(p.T, 0.25, iib_value(p.T, 0.25), "upper") for p in low]
    lmin, larg = _reduce(low)
    umin, uarg = _reduce(up)
    zeros = tuple(p.T for p in up if abs(p.value) <= zero_tol)
    return ScanIIbResult(
        ScanResult(lmin, larg, len(low), {"rows": low} if keep_rows else {}),
        ScanResult(umin, uarg, len(up), {"rows": up} if keep_rows else {}),
        zeros,
    )


# --- feasible region sampling ----------------------------------------------

def region_sample(X: float, Z: float, T: float, type: Type, a_grid, c_grid, tol: float = 1e-9) -> np.ndarray:
    """Boolean mask over ``a_grid x c_grid`` (rows follow ``c``) of points
    on the plane meeting every inequality of the given Type."""
    a = np.asarray(a_grid, dtype=float)
    c = np.asarray(c_grid, dtype=float)
    A, Cc = np.meshgrid(a, c)
    if T > X * Z or T < 0:
        return np.zeros(A.shape, dtype=bool)
    Y = 1 - X - Z
    nu = -(X * A + Y + Cc * Z)
    s = slack_values(type, X, Y, Z, T, A, Cc, nu)
    mask = np.ones(A.shape, dtype=bool)
    for v in s.applicable().values():
        mask &= v >= -tol
    return mask


# --- full analysis of an n/2-regular fixpoint ------------------------------

@dataclass(frozen=True)
class EigenAnalysis:
    mu: float
    type: Type
    quantities: StageQuantities
    params: NormalizedParams
    slacks: InequalitySlacks | None
    extra: dict


@dataclass(frozen=True)
class FixpointAnalysis:
    n: int
    fmb: object
    m: np.ndarray
    eigs: tuple[EigenAnalysis, EigenAnalysis]

    @property
    def nu_pair(self) -> tuple[float, float]:
        return assign_roles(self.eigs)

    def min_slack(self) -> float:
        vals = []
        for e in self.eigs:
            if e.slacks is not None:
                vals.append(e.slacks.minimum())
            vals.extend(e.extra.values())
        return min(vals) if vals else float("inf")


def matrix_partition(m) -> Partition:
    """Front/middle/back of a +-1 matrix with front/back block pattern:
    the middle is the run of rows without any +1, the front and back are
    the remaining rows of the first and second half."""
    m = np.asarray(m)
    n = len(m)
    h = n // 2
    iso = [i for i in range(n) if not (m[i] > 0).any()]
    if iso and iso != list(range(iso[0], iso[-1] + 1)):
        raise InvalidArgument("rows without +1 entries are not consecutive")
    mid = set(iso)
    front = tuple(i for i in range(h) if i not in mid)
    back = tuple(i for i in range(h, n) if i not in mid)
    if iso and ((front and front[-1] > iso[0]) or (back and back[0] < iso[-1])):
        raise InvalidArgument("middle rows must sit between the front and the back")
    return Partition(front, tuple(iso), back)


def assign_roles(eigs: Sequence[EigenAnalysis]) -> tuple[float, float]:
    """``(nu_1, nu_2)``: the Type 1 eigenvalue and the Type 2 eigenvalue.

    If only one of the two vectors has a definite Type the other takes the
    remaining role; with no information the smaller eigenvalue is listed
    first.
    """
    e0, e1 = eigs
    t0, t1 = e0.type, e1.type
    if t0 is Type.TYPE1 and t1 is not Type.TYPE1 or t1 is Type.TYPE2 and t0 is not Type.TYPE2:
        return e0.params.nu, e1.params.nu
    if t1 is Type.TYPE1 and t0 is not Type.TYPE1 or t0 is Type.TYPE2 and t1 is not Type.TYPE2:
        return e1.params.nu, e0.params.nu
    return e0.params.nu, e1.params.nu


def analyze_matrix(m: np.ndarray, part=None, tol: float = 1e-8) -> tuple[EigenAnalysis, EigenAnalysis]:
    """Classify and evaluate the last two eigenvectors of ``m`` (smallest
    eigenvalue first)."""
    from . import eigen
    from .structure import classify_type

    part = matrix_partition(m) if part is None else Partition.of(part)
    d = eigen.decompose(m)
    n = len(m)
    out = []
    for idx in (n - 1, n - 2):
        vec = d.vectors[:, idx]
        mu = float(d.values[idx])
        tag = classify_type(vec, part, tol)
        vec = tag.sign * vec
        sq = stage1_extract(m, part, vec, mu)
        params = normalize(sq, n, tag.tag)
        extra = {}
        sl = None
        if tag.tag in (Type.TYPE1, Type.TYPE2) and not sq.b_zero:
            sl = slacks(params)
        if tag.tag is Type.TYPE2:
            extra["dichotomy"] = type2_dichotomy(params) if params.T > 0 else params.nu
            if sq.b_zero:
                extra["b_zero"] = b_zero_bound(sq.t, mu)
        out.append(EigenAnalysis(mu, tag.tag, sq, params, sl, extra))
    return out[0], out[1]


def analyze_fixpoint(g, pair=None) -> FixpointAnalysis:
    """Rotate an n/2-regular fixpoint, form ``M = 2Q - J`` on the top half
    and evaluate both of its last eigenvectors."""
    from .starop import pair_of
    from .structure import canonical_rotation

    if pair is None:
        pair = pair_of(g)
    fmb = canonical_rotation(g, pair)
    m = 2 * fmb.q.matrix() - np.ones((fmb.size, fmb.size))
    return FixpointAnalysis(g.n, fmb, m, analyze_matrix(m, fmb))
