import numpy as np
import pytest

from helpers import random_graph
from starspec import graphcore as gc
from starspec import verify
from starspec.errors import Graph6Error, InvalidArgument


def test_order3_witness_is_triangle():
    rep = verify.verify_order(3)
    assert rep.graphs_checked == 4
    assert abs(rep.min_slack) <= 1e-9 and rep.holds
    assert gc.parse_graph6(rep.witness) == gc.canonical_form(gc.complete(3))


def test_order6_witness_is_complement_of_hexagon():
    rep = verify.verify_order(6)
    assert rep.graphs_checked == 156
    assert abs(rep.min_slack) <= 1e-9
    assert gc.is_isomorphic(gc.parse_graph6(rep.witness), gc.complement(gc.cycle(6)))
    # every reported tie is an equality case
    for code in rep.equality_witnesses:
        assert abs(verify.conjecture_slack(gc.parse_graph6(code))) <= 1e-8


def test_slack_against_direct_eigensolve(rng):
    for _ in range(50):
        g = random_graph(rng, int(rng.integers(2, 12)))
        w = np.linalg.eigvalsh(g.matrix().astype(float))
        assert abs(verify.conjecture_slack(g) - (w[0] + w[1] + 2 * g.n / 3)) <= 1e-9


def test_jobs_do_not_change_the_result():
    a = verify.verify_order(6, jobs=1).as_dict()
    b = verify.verify_order(6, jobs=2).as_dict()
    a.pop("elapsed"), b.pop("elapsed")
    assert a == b
    with pytest.raises(InvalidArgument):
        verify.verify_order(4, jobs=0)


def test_stream_input():
    lines = [gc.write_graph6(g) + b"\n" for g in gc.enumerate_nonisomorphic(5)]
    rep = verify.verify_stream(lines)
    assert rep.order == 5 and rep.graphs_checked == 34
    assert rep.as_dict() | {"elapsed": 0} == verify.verify_order(5).as_dict() | {"elapsed": 0}
    with pytest.raises(Graph6Error, match="line 2"):
        verify.verify_stream([b"Bw\n", b"B!\n"])


def test_injected_violation():
    rep = verify.verify_order(4, inject_violation=True)
    assert not rep.holds and rep.min_slack < -1
    assert rep.witness is not None
