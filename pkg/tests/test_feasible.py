import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from helpers import random_graph
from starspec import constructions as C
from starspec import eigen, feasible, starop, structure
from starspec.errors import InvalidArgument
from starspec.feasible import NormalizedParams, Phase, Partition
from starspec.structure import Type

SQ2 = math.sqrt(2)


def rotated_block(g):
    pair = starop.pair_of(g)
    fmb = structure.canonical_rotation(g, pair)
    m = 2 * fmb.q.matrix() - np.ones((fmb.size, fmb.size))
    return fmb, m


def last_two(m, fmb):
    d = eigen.decompose(m)
    out = []
    for idx in (-1, -2):
        v = d.vectors[:, idx]
        tag = structure.classify_type(v, fmb)
        out.append((tag.sign * v, float(d.values[idx]), tag.tag))
    return out


# --- stage quantities -------------------------------------------------------------

def test_stage1_g6():
    fmb, m = rotated_block(C.g6())
    for vec, mu, tag in last_two(m, fmb):
        sq = feasible.stage1_extract(m, fmb, vec, mu)
        assert (sq.k, sq.l, sq.m_back) == (3, 1, 2)
        assert sq.B >= 0 and not sq.b_zero
        assert sq.identity_residual <= 1e-7
        # recompute the coupled identities from scratch in the reported orientation
        x = -vec if sq.reversed else vec
        front = list(fmb.back[::-1] if sq.reversed else fmb.front)
        back = list(fmb.front[::-1] if sq.reversed else fmb.back)
        pos = m > 0
        d_front = [int(pos[i, back].sum()) for i in front]
        d_back = [int(pos[j, front].sum()) for j in back]
        assert sum(d_front) == sum(d_back) == sq.t
        A, B, Cs = x[front].sum(), x[list(fmb.middle)].sum(), x[back].sum()
        a = A * sq.l / (sq.k * B)
        c = Cs * sq.l / (sq.m_back * B)
        assert abs(mu * (a - 1) - 2 * sq.l / (sq.k * B) * sum(dd * x[j] for dd, j in zip(d_back, back))) <= 1e-7
        assert abs(mu * (c - 1) - 2 * sq.l / (sq.m_back * B) * sum(dd * x[i] for dd, i in zip(d_front, front))) <= 1e-7
        assert abs(-mu - (sq.k * a + sq.l + sq.m_back * c)) <= 1e-8
        x1 = (1 / mu) * (B / sq.l) * (-sq.k * a - sq.l + sq.m_back * c)
        assert abs(x[front[0]] - x1) <= 1e-7


def test_stage1_b_zero_path():
    m = np.array([[-1.0, -1, 1], [-1, -1, -1], [1, -1, -1]])
    v = np.array([1.0, 0.0, -1.0]) / SQ2
    sq = feasible.stage1_extract(m, Partition((0,), (1,), (2,)), v, -2.0)
    assert sq.b_zero and sq.a is None and sq.c is None
    p = feasible.normalize(sq, 3)
    assert p.a is None and abs(p.nu - (-2 / 3)) <= 1e-12


def test_stage1_rejects_bad_input():
    m = np.array([[-1.0, -1, 1], [-1, -1, -1], [1, -1, -1]])
    with pytest.raises(InvalidArgument):
        feasible.stage1_extract(m, Partition((0,), (1,), (1,)), np.ones(3), 1.0)
    bad = m.copy()
    bad[0, 1] = bad[1, 0] = 1
    with pytest.raises(InvalidArgument):
        feasible.stage1_extract(bad, Partition((0,), (1,), (2,)), np.ones(3), 1.0)


def test_normalize_g4_plane_identity():
    fmb, m = rotated_block(C.g4())
    for vec, mu, tag in last_two(m, fmb):
        sq = feasible.stage1_extract(m, fmb, vec, mu)
        p = feasible.normalize(sq, 4, tag)
        assert abs(p.X + p.Y + p.Z - 1) <= 1e-12
        assert 0 <= p.T <= p.X * p.Z + 1e-12
        assert p.plane_residual() <= 1e-8


def test_normalized_params_validation():
    with pytest.raises(InvalidArgument):
        NormalizedParams(0.5, 0.3, 0.3, 0.01, 0.5, 0.5, -0.5)
    with pytest.raises(InvalidArgument):
        NormalizedParams(0.5, 0.25, 0.25, 0.2, 0.5, 0.5, -0.5)


# --- slacks -------------------------------------------------------------------

@pytest.mark.parametrize("g", [C.g4(), C.g6()], ids=["G4", "G6"])
def test_slacks_nonnegative_on_examples(g):
    an = feasible.analyze_fixpoint(g)
    assert {e.type for e in an.eigs} == {Type.TYPE1, Type.TYPE2}
    for e in an.eigs:
        assert e.slacks is not None
        assert all(v >= -1e-8 for v in e.slacks.applicable().values())
        assert all(v >= -1e-8 for v in e.extra.values())
    nu1, nu2 = an.nu_pair
    assert feasible.floor_slack(nu1, nu2) >= -1e-8


def test_slack_applicability_and_violation():
    p1 = NormalizedParams(0.4, 0.2, 0.4, 0.05, 2.0, 0.5, -(0.4 * 2 + 0.2 + 0.4 * 0.5), Type.TYPE1)
    s = feasible.slacks(p1)
    assert s.border < 0
    assert set(s.applicable()) == {"border", "mean_a", "mean_c", "smoothing_a", "smoothing_c"}
    p2 = NormalizedParams(0.4, 0.2, 0.4, 0.05, 1.5, -0.5, -(0.4 * 1.5 + 0.2 - 0.2), Type.TYPE2)
    assert set(feasible.slacks(p2).applicable()) == {"border", "extrema_c", "mean_a", "mean_c"}
    with pytest.raises(InvalidArgument):
        feasible.slacks(NormalizedParams(0.4, 0.2, 0.4, 0.05, 1.0, 0.0, -0.6))


def test_b_zero_bound():
    assert feasible.b_zero_bound(9, -6.0) == 0
    assert feasible.b_zero_bound(0, 0.0) == 0
    assert feasible.b_zero_bound(0, -0.1) < 0
    with pytest.raises(InvalidArgument):
        feasible.b_zero_bound(-1, 0.0)


def test_b_zero_bound_type2_equality_matrix():
    m = C.equality_case_M(400, "Type2Equality")
    t = C.equality_case_edges(m)
    vals = np.linalg.eigvalsh(m)
    assert feasible.b_zero_bound(t, float(vals[1])) >= -1e-6


def test_type2_dichotomy():
    Z = 0.3
    T = Z * Z
    assert abs(-2 * math.sqrt(T) - (-2 * T / Z)) <= 1e-15
    p = NormalizedParams(0.5, 0.0, 0.5, 1 / 8, 1.0, 0.0, -SQ2 / 2, Type.TYPE2)
    assert abs(feasible.type2_dichotomy(p)) <= 1e-12


# --- thresholds and hyperbolas -----------------------------------------------------

def test_flip_thresholds():
    th = feasible.flip_thresholds(0.75, 0.2)
    assert np.allclose([th.mean_c, th.mean_a, th.smoothing_c, th.smoothing_a], [0.09375, 0.08, 0.12, -0.375])
    assert feasible.flip_thresholds(0.6, 0.3).smoothing_a <= 0
    th = feasible.flip_thresholds(0.3, 0.3)
    assert th.mean_a == th.mean_c
    with pytest.raises(InvalidArgument):
        feasible.flip_thresholds(0.0, 0.3)


params = st.tuples(st.floats(0.05, 0.6), st.floats(0.05, 0.6), st.floats(0.0, 1.0)).filter(lambda t: t[0] + t[1] < 0.95)


@given(params, st.floats(-2, 2))
@settings(max_examples=200)
def test_hyperbola_matches_linear_solve(xzt, c):
    X, Z, f = xzt
    Y = 1 - X - Z
    T = f * X * Z
    kinds = {"mean_c": (2 * T / Z, 0.0), "smoothing_c": (2 * X, 2 * T / Z - 2 * X)}
    for kind, (p, q) in kinds.items():
        h = feasible.boundary(kind, X, Y, Z, T)
        # unknowns (a, nu): X a + nu = -Y - Z c ; -p a + (c - 1) nu = q
        mat = np.array([[X, 1.0], [-p, c - 1]])
        if abs(np.linalg.det(mat)) < 1e-6:
            continue
        a, nu = np.linalg.solve(mat, [-Y - Z * c, q])
        assert abs(h.evaluate(c) - nu) <= 1e-10 * max(1, abs(nu))
        assert abs(h.a_on_plane(c, Y, Z, q) - a) <= 1e-10 * max(1, abs(a))


def test_hyperbola_numerators_and_poles():
    X, Y, Z, T = 0.5, 0.2, 0.3, 0.06
    h = feasible.boundary("mean_c", X, Y, Z, T)
    p = 2 * T / Z
    assert abs(h.numerator - p * (2 * T / X + X - 1)) <= 1e-14
    h = feasible.boundary("smoothing_c", X, Y, Z, T)
    assert abs(h.numerator - 2 * X * (T / Z + 2 * Z - 1)) <= 1e-14
    assert isinstance(h.evaluate(h.pole), feasible.Pole)
    # numerators vanish at the flip thresholds
    th = feasible.flip_thresholds(X, Z)
    assert abs(feasible.boundary("mean_c", X, Y, Z, th.mean_c).numerator) <= 1e-15
    assert abs(feasible.boundary("smoothing_c", X, Y, Z, th.smoothing_c).numerator) <= 1e-15
    assert abs(feasible.boundary("mean_a", X, Y, Z, th.mean_a).numerator) <= 1e-15
    assert abs(feasible.boundary("smoothing_a", X, Y, Z, th.smoothing_a).numerator) <= 1e-15
    with pytest.raises(InvalidArgument):
        feasible.boundary("nope", X, Y, Z, T)


# --- intersections ---------------------------------------------------------------

def test_intersection_I_examples():
    assert feasible.intersection_I(0) == (-1.0, 0.0)
    assert feasible.intersection_I(1 / 8) == (-0.5,)
    assert np.allclose(feasible.intersection_I(3 / 32), (-0.75, -0.25), atol=1e-15)
    assert feasible.intersection_I(0.2) == ()


@given(st.floats(0, 1 / 8 - 1e-9), st.floats(0.05, 0.7))
@settings(max_examples=100)
def test_intersection_I_meets_both_c_boundaries_at_a_one(T, Z):
    for nu in feasible.intersection_I(T):
        if nu == 0:
            continue
        X = 0.5 * (1 - Z)
        Y = 1 - X - Z
        if T > X * Z:
            continue
        c = (-nu - X - Y) / Z  # plane with a = 1
        for kind in ("mean_c", "smoothing_c"):
            h = feasible.boundary(kind, X, Y, Z, T)
            val = h.evaluate(c)
            if not isinstance(val, feasible.Pole) and abs(X * c + h.p - X) > 1e-6:
                assert abs(val - nu) <= 1e-10


def test_intersection_II_equality_state():
    r = feasible.intersection_II(0.5, 0.5, 1 / 8)
    assert np.allclose(r.roots, [-1, -SQ2 / 2, SQ2 / 2], atol=1e-12)
    assert abs(r.second_root + SQ2 / 2) <= 1e-10
    want = np.polymul([1, 1], [1, 0, -0.5])
    assert np.allclose(feasible.cubic_P(0.5, 0.5, 1 / 8), want)


@given(st.floats(0.01, 0.99), st.floats(0.01, 0.99), st.floats(0, 1))
@settings(max_examples=200)
def test_intersection_II_against_companion_matrix(X, Z, f):
    if X + Z > 1:
        return
    T = f * X * Z
    coeffs = feasible.cubic_P(X, Z, T)
    assert coeffs[3] <= 1e-15  # P(0) <= 0
    r = feasible.intersection_II(X, Z, T)
    comp = np.roots(coeffs)
    real = np.sort(comp[np.abs(comp.imag) <= 1e-7].real)
    assert max(r.roots) >= -1e-12
    if len(real) == len(r.roots):
        assert np.allclose(r.roots, real, atol=1e-8)


def test_intersection_II_at_T_equal_XZ():
    X, Z = 0.3, 0.4
    r = feasible.intersection_II(X, Z, X * Z)
    assert abs(feasible.cubic_P(X, Z, X * Z)[3] - 4 * X * Z * (X + Z - 1)) <= 1e-15
    comp = np.sort(np.roots(feasible.cubic_P(X, Z, X * Z)).real)
    assert np.allclose(r.roots, comp, atol=1e-10)


def test_real_cubic_roots_cases():
    assert np.allclose(feasible.real_cubic_roots(1, -6, 11, -6), [1, 2, 3])
    assert np.allclose(feasible.real_cubic_roots(1, 0, 0, -8), [2])
    assert np.allclose(feasible.real_cubic_roots(1, -3, 3, -1), [1, 1, 1])
    assert np.allclose(feasible.real_cubic_roots(2, -4, 2, 0), [0, 1, 1], atol=1e-7)
    with pytest.raises(InvalidArgument):
        feasible.real_cubic_roots(0, 1, 1, 1)


# --- phases --------------------------------------------------------------------

@pytest.mark.parametrize("T,phase", [(0.05, Phase.PHASE_1C), (0.10, Phase.PHASE_2A), (0.12, Phase.PHASE_3)])
def test_phase_examples(T, phase):
    assert feasible.phase_classify(0.75, 0.2, T).phase is phase


@pytest.mark.parametrize("X,Z", [(0.75, 0.2), (0.4, 0.35), (0.2, 0.3), (0.3, 0.6)])
def test_phase_transitions_only_at_thresholds(X, Z):
    th = feasible.flip_thresholds(X, Z).as_dict()
    Ts = np.linspace(0, X * Z, 400)
    cuts = sorted(v for v in th.values() if 0 < v < X * Z)
    prev = None
    for T in Ts:
        cur = feasible.phase_classify(X, Z, T).phase
        if prev is not None and cur != prev[1]:
            assert any(prev[0] < v <= T for v in cuts)
        prev = (T, cur)
    for v in cuts:
        below = feasible.phase_classify(X, Z, v - 1e-9)
        above = feasible.phase_classify(X, Z, v + 1e-9)
        at = feasible.phase_classify(X, Z, v)
        assert at.boundary and not below.boundary and not above.boundary
        assert at.phase is above.phase  # the later phase at the boundary
        assert below.positive[[k for k, w in th.items() if w == v][0]] is False


def test_phi_flag():
    r = feasible.phase_classify(0.75, 0.2, 0.05)
    assert r.phi is True
    assert feasible.phase_classify(0.75, 0.2, 0.10).phi is False


# --- scans ------------------------------------------------------------------------

def test_scan_IIa():
    r = feasible.scan_IIa(1e-3)
    assert r.minimum > 0
    p = r.argmin
    assert abs(p.value - feasible.iia_value(p.T, p.S)) == 0
    # direct substitution of the cubic at nu = -0.7
    nu = -0.7
    direct = nu ** 3 + nu ** 2 + 4 * (p.T - p.S) * nu + feasible.iia_constant(p.T, p.S)
    assert abs(direct - p.value) <= 1e-15
    assert abs(math.sqrt(1 / 9) - (1 - math.sqrt(1 - 8 / 9)) / 2) <= 1e-15
    S = 0.15
    assert abs(feasible.iia_constant(1 / 9 - 1e-12, S) - feasible.iia_constant(1 / 9, S)) <= 1e-9


def test_scan_IIb():
    r = feasible.scan_IIb(1e-3)
    assert r.lower.minimum >= 0.001 - 1e-6
    assert r.upper.minimum >= -1e-9
    assert len(r.zero_locus) >= 1 and all(abs(t - 1 / 8) <= 1e-3 for t in r.zero_locus)
    assert abs(feasible.iib_value(1 / 8, 1 / 4)) <= 1e-9
    nu = -SQ2 + 2 * math.sqrt(1 / 8)
    assert abs(nu + SQ2 / 2) <= 1e-15
    assert abs(np.polyval(feasible.cubic_P(0.5, 0.5, 1 / 8), nu)) <= 1e-15


def test_scan_grid_validation():
    with pytest.raises(InvalidArgument):
        feasible.scan_IIa(0.01)
    with pytest.raises(InvalidArgument):
        feasible.scan_IIb(0.0003)


# --- regions ----------------------------------------------------------------------

def test_region_contains_true_point():
    an = feasible.analyze_fixpoint(C.g4())
    for e in an.eigs:
        p = e.params
        a = np.array([p.a - 1e-3, p.a, p.a + 1e-3])
        c = np.array([p.c - 1e-3, p.c, p.c + 1e-3])
        mask = feasible.region_sample(p.X, p.Z, p.T, e.type, a, c, tol=1e-8)
        assert mask[1, 1]


def test_region_examples():
    a = np.linspace(-0.5, 2, 101)
    c = np.linspace(-1.5, 1.5, 121)
    assert feasible.region_sample(0.75, 0.2, 0.05, Type.TYPE1, a, c).any()
    assert not feasible.region_sample(0.3, 0.3, 0.2, Type.TYPE1, a, c).any()


def test_region_boundary_on_hyperbola():
    X, Z, T = 0.75, 0.2, 0.05
    Y = 1 - X - Z
    h = feasible.boundary("mean_c", X, Y, Z, T)
    for c in np.linspace(0.05, 0.95, 10):
        a = h.a_on_plane(c, Y, Z, 0.0)
        nu = h.evaluate(c)
        assert abs(-nu - (X * a + Y + Z * c)) <= 1e-12
        s = feasible.slack_values(Type.TYPE1, X, Y, Z, T, a, c, nu)
        assert abs(s.mean_c) <= 1e-12


# --- fixpoints and equality matrices -------------------------------------------------

def test_fixpoints_found_by_iteration(rng):
    found = 0
    for _ in range(400):
        n = int(rng.choice([4, 6, 8, 10, 12]))
        tr = starop.fixpoint_iterate(random_graph(rng, n), 30)
        g = tr.final
        if tr.terminal is not starop.Terminal.FIXPOINT or any(d != n // 2 for d in g.degrees):
            continue
        try:
            an = feasible.analyze_fixpoint(g)
        except Exception:
            continue
        found += 1
        for e in an.eigs:
            if e.slacks is not None:
                assert all(v >= -1e-8 for v in e.slacks.applicable().values())
        assert feasible.floor_slack(*an.nu_pair) >= -1e-8
    assert found > 0


@pytest.mark.parametrize("rule,nu1,nu2", [
    ("Type1Equality", -SQ2 / 2, -0.6245),
    ("Type2Equality", -0.6245, -SQ2 / 2),
])
def test_equality_matrices(rule, nu1, nu2):
    m = C.equality_case_M(800, rule)
    a = feasible.analyze_matrix(m)
    got1, got2 = feasible.assign_roles(a)
    assert abs(got1 - nu1) <= 5e-3 and abs(got2 - nu2) <= 5e-3
    assert got1 + got2 >= -SQ2 - 1e-8
