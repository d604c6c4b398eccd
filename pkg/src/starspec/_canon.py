"""Pure-Python canonical labelling kernel.

Graphs are given as a list of neighbour bitmasks.  An ordered partition is a
list of vertex bitmasks.  The compiled kernel in ``_canon_ext`` implements the
same search in the same order, so both backends return identical results.
"""

from __future__ import annotations


def _bits(mask):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def refine(rows, cells):
    """Refine an ordered partition to the coarsest equitable one below it.

    Cells are split by the number of neighbours in a splitter cell; the
    pieces replace the cell in ascending order of that count.  The result
    depends only on the graph and the ordered partition, never on vertex
    names, which is what makes the final labelling canonical.
    """
    cells = list(cells)
    s = 0
    while s < len(cells):
        w = cells[s]
        split = False
        for ci in range(len(cells)):
            cell = cells[ci]
            if cell & (cell - 1) == 0:
                continue
            groups = {}
            for v in _bits(cell):
                c = (rows[v] & w).bit_count()
                groups[c] = groups.get(c, 0) | (1 << v)
            if len(groups) > 1:
                cells[ci:ci + 1] = [groups[c] for c in sorted(groups)]
                split = True
                break
        s = 0 if split else s + 1
    return cells


def _homogeneous(rows, cells):
    # Every labelling consistent with such a partition yields the same code.
    for ci in cells:
        v = (ci & -ci).bit_length() - 1
        for cj in cells:
            c = (rows[v] & cj).bit_count()
            size = cj.bit_count()
            if ci == cj:
                if c != 0 and c != size - 1:
                    return False
            elif c != 0 and c != size:
                return False
    return True


def _code(rows, order):
    pos = [0] * len(order)
    for p, v in enumerate(order):
        pos[v] = p
    code = []
    for v in order:
        m = 0
        for u in _bits(rows[v]):
            m |= 1 << pos[u]
        code.append(m)
    return tuple(code)


def canonical_labelling(rows, cells=None):
    """Return ``(code, order)`` for the graph with neighbour masks ``rows``.

    ``order[p]`` is the vertex placed at canonical position ``p`` and
    ``code`` is the tuple of relabelled neighbour masks, which is the
    lexicographic minimum over the leaves of an individualisation/refinement
    search.  Isomorphic inputs (with corresponding initial partitions) give
    equal codes.
    """
    n = len(rows)
    if cells is None:
        cells = [(1 << n) - 1] if n else []
    best = [None, None]

    def search(cells):
        cells = refine(rows, cells)
        if len(cells) == n or _homogeneous(rows, cells):
            order = [v for c in cells for v in _bits(c)]
            code = _code(rows, order)
            if best[0] is None or code < best[0]:
                best[0], best[1] = code, order
            return
        t = next(i for i, c in enumerate(cells) if c & (c - 1))
        target = cells[t]
        for v in _bits(target):
            bit = 1 << v
            search(cells[:t] + [bit, target ^ bit] + cells[t + 1:])

    search(cells)
    return best[0], best[1]
