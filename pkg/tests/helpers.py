import numpy as np
from hypothesis import strategies as st

from starspec.graphcore import Graph


def random_graph(rng, n, p=0.5):
    upper = np.triu(rng.random((n, n)) < p, 1)
    return Graph.from_matrix(upper | upper.T)


@st.composite
def graphs(draw, min_n=1, max_n=10):
    n = draw(st.integers(min_n, max_n))
    m = n * (n - 1) // 2
    bits = draw(st.lists(st.booleans(), min_size=m, max_size=m))
    it = iter(bits)
    edges = [(i, j) for i in range(n) for j in range(i + 1, n) if next(it)]
    return Graph.from_edges(n, edges)


# criterion number -> (title, "PASS" | "FAIL"), filled by the acceptance suite
ACCEPTANCE_RESULTS: dict[int, tuple[str, str]] = {}
