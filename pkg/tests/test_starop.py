import numpy as np
import pytest
from hypothesis import given, settings

from helpers import graphs, random_graph
from starspec import constructions as C
from starspec import eigen, starop, structure
from starspec import graphcore as gc
from starspec.errors import InvalidArgument
from starspec.starop import PlanePair, Terminal, Uniqueness


def dot_sign_graph(vectors):
    """Reference: edge iff the plain dot product is negative, computed pair by pair."""
    v = np.asarray(vectors, dtype=float)
    n = len(v)
    edges = [(i, j) for i in range(n) for j in range(i + 1, n) if float(v[i] @ v[j]) < -1e-12]
    return gc.Graph.from_edges(n, edges)


# --- plane pairs --------------------------------------------------------------

@given(graphs(min_n=3, max_n=12))
@settings(max_examples=60)
def test_pair_is_orthonormal_with_valid_order(g):
    p = starop.pair_of(g)
    assert p.is_orthonormal(1e-9)
    assert sorted(p.order) == list(range(g.n))
    th = np.where(p.angles() > 2 * np.pi - 1e-9, 0.0, p.angles())
    assert all(th[a] <= th[b] + 1e-9 for a, b in zip(p.order, p.order[1:]))


def test_plane_pair_validation():
    with pytest.raises(InvalidArgument):
        PlanePair(np.zeros((3, 3)))
    with pytest.raises(InvalidArgument):
        PlanePair(np.zeros((3, 2)), order=(0, 0, 1))


# --- apply_star ---------------------------------------------------------------

@given(graphs(min_n=3, max_n=12))
@settings(max_examples=60)
def test_star_matches_pairwise_dot_signs(g):
    p = starop.pair_of(g)
    h = starop.apply_star(g, p)
    ref = dot_sign_graph(p.vectors)
    # the tolerance band only drops dot products that are numerically zero
    eps = starop.dot_threshold(p.vectors)
    dots = p.vectors @ p.vectors.T
    for i in range(g.n):
        for j in range(i + 1, g.n):
            if abs(dots[i, j]) > eps:
                assert h.has_edge(i, j) == ref.has_edge(i, j)


@pytest.mark.parametrize("n", [8, 12, 21])
def test_pivalous_complement_is_fixed(n):
    g = gc.complement(C.pivalous(n))
    assert starop.apply_star(g) == g


@pytest.mark.parametrize("a,b", [(1, 1), (5, 2)])
def test_hab_complement_is_fixed(a, b):
    g = gc.complement(C.h_ab(a, b))
    assert starop.apply_star(g) == g


def test_c4_star_does_not_increase():
    g = gc.cycle(4)
    p = starop.pair_of(g)
    h = starop.apply_star(g, p)
    assert h == dot_sign_graph(p.vectors)
    assert eigen.last_two_sum(h) <= eigen.last_two_sum(g) + 1e-9


def test_g4_from_listed_vectors():
    g = dot_sign_graph(C.G4_VECTORS)
    assert g == C.g4()
    assert g.n == 8 and all(d == 4 for d in g.degrees)
    assert abs(eigen.last_two_sum(g) - (-5.236)) <= 1e-3


def test_star_k():
    rng = np.random.default_rng(3)
    for _ in range(20):
        g = random_graph(rng, int(rng.integers(3, 11)))
        assert starop.apply_star_k(g, 2) == starop.apply_star(g)
    with pytest.raises(InvalidArgument):
        starop.apply_star_k(gc.cycle(5), 6)


def test_star_k3_bounds(rng):
    for _ in range(100):
        g = random_graph(rng, 10)
        h = starop.apply_star_k(g, 3)
        assert structure.clique_number(h) <= 4
        assert structure.is_k_colorable(h, 8)
        cols = structure.quadrant_coloring(eigen.last_k_basis(eigen.graph_decomposition(g), 3))
        assert len(set(cols)) <= 8 and structure.is_proper_coloring(h, cols)


# --- monovariance -------------------------------------------------------------

def test_monovariance_random(rng):
    for _ in range(300):
        g = random_graph(rng, int(rng.integers(3, 13)))
        gap = starop.monovariance_gap(g)
        assert gap.after <= gap.before + 1e-9 and gap.holds


def test_monovariance_examples():
    gap = starop.monovariance_gap(gc.complement(C.pivalous(12)))
    assert abs(gap.after - gap.before) <= 1e-12
    k3 = starop.monovariance_gap(gc.complete(3))
    assert abs(k3.before - (-2)) <= 1e-12 and k3.after <= -2 + 1e-9
    with pytest.raises(InvalidArgument):
        starop.monovariance_gap(gc.complete(2))


# --- fixpoint iteration ---------------------------------------------------------

def test_fixpoint_examples():
    tr = starop.fixpoint_iterate(gc.complement(C.pivalous(21)))
    assert tr.terminal is Terminal.FIXPOINT and tr.steps == 0
    tr = starop.fixpoint_iterate(gc.cycle(4), 10)
    assert tr.terminal in (Terminal.FIXPOINT, Terminal.CYCLE) and tr.steps <= 10
    assert tr.is_monotone()
    tr = starop.fixpoint_iterate(gc.cycle(5), 0)
    assert tr.terminal is Terminal.CAP and len(tr.iterates) == 1


def test_fixpoint_traces_are_monotone(rng):
    for _ in range(50):
        tr = starop.fixpoint_iterate(random_graph(rng, int(rng.integers(3, 11))), 30)
        assert tr.is_monotone()
        if tr.terminal is Terminal.FIXPOINT:
            assert gc.is_isomorphic(starop.apply_star(tr.final), tr.final)


# --- uniqueness / rotation ------------------------------------------------------

def test_uniqueness_examples():
    assert starop.uniqueness_class(gc.cycle(4)) is Uniqueness.NON_UNIQUE
    assert starop.uniqueness_class(C.g4()) is Uniqueness.UNIQUE
    assert starop.uniqueness_class(gc.complement(C.pivalous(5))) is Uniqueness.ROTATION_INVARIANT


@pytest.mark.parametrize("g", [gc.complement(C.pivalous(5)), gc.complement(C.pivalous(9)), gc.cycle(7)],
                         ids=["coPi5", "coPi9", "C7"])
def test_rotation_invariant_outputs(g):
    assert starop.uniqueness_class(g) is Uniqueness.ROTATION_INVARIANT
    p = starop.pair_of(g)
    base = starop.apply_star(g, p)
    rng = np.random.default_rng(11)
    for theta in rng.uniform(0, 2 * np.pi, 8):
        assert starop.apply_star(g, p.rotated(theta)) == base


def test_star_outputs_admit_run_labelling(rng):
    for _ in range(500):
        g = random_graph(rng, int(rng.integers(3, 13)))
        p = starop.pair_of(g)
        h = starop.apply_star(g, p)
        assert structure.run_labelling(h, p.order)
