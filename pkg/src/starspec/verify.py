"""Exhaustive check of lambda_{n-1} + lambda_n >= -2n/3 over all graphs of an
order, or over a stream of graph6 lines."""

from __future__ import annotations

import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Iterable, Iterator

import numpy as np

from . import eigen
from .errors import InvalidArgument
from .graphcore import Graph, canonical_form, enumerate_nonisomorphic, read_graph6_lines, write_graph6

TIE_TOL = 1e-9
CHUNK = 2048


def conjecture_slack(g: Graph) -> float:
    w = eigen.eigenvalues(g.matrix())
    return float(w[-1] + w[-2] + 2 * g.n / 3)


@dataclass
class VerifyReport:
    order: int | None
    graphs_checked: int
    min_slack: float
    witness: str | None
    elapsed: float
    equality_witnesses: list[str] = field(default_factory=list)
    orders_seen: list[int] = field(default_factory=list)

    @property
    def holds(self) -> bool:
        return self.min_slack >= -1e-9

    def as_dict(self) -> dict:
        return {
            "order": self.order,
            "graphs_checked": self.graphs_checked,
            "min_slack": self.min_slack,
            "witness": self.witness,
            "equality_witnesses": self.equality_witnesses,
            "elapsed": self.elapsed,
        }


@dataclass
class _Partial:
    count: int = 0
    best: float = float("inf")
    ties: list = field(default_factory=list)  # (slack, graph) within TIE_TOL of best
    orders: set = field(default_factory=set)

    def add(self, g: Graph, s: float):
        self.count += 1
        self.orders.add(g.n)
        if s <= self.best + TIE_TOL:
            self.ties.append((s, g))
            self.best = min(self.best, s)
            self._prune()

    def merge(self, other: "_Partial"):
        self.count += other.count
        self.orders |= other.orders
        self.best = min(self.best, other.best)
        self.ties += other.ties
        self._prune()

    def _prune(self):
        self.ties = [(s, g) for s, g in self.ties if s <= self.best + TIE_TOL]

    def canonical_ties(self) -> list[Graph]:
        forms = {}
        for _, g in self.ties:
            c = canonical_form(g)
            forms[(c.n, c.rows)] = c
        return [forms[k] for k in sorted(forms)]


def _check_chunk(args) -> _Partial:
    graphs, inject = args
    part = _Partial()
    for g in graphs:
        s = conjecture_slack(g)
        if inject:
            s = -abs(s) - 1.0
        part.add(g, s)
    return part


def _chunks(it: Iterable[Graph], size: int) -> Iterator[list[Graph]]:
    buf = []
    for g in it:
        buf.append(g)
        if len(buf) == size:
            yield buf
            buf = []
    if buf:
        yield buf


def verify_graphs(graphs: Iterable[Graph], order: int | None = None, jobs: int = 1,
                  inject_violation: bool = False) -> VerifyReport:
    """Check every graph; chunks are merged in input order so the result is
    independent of ``jobs``."""
    if jobs < 1:
        raise InvalidArgument("jobs must be at least 1")
    start = time.perf_counter()
    total = _Partial()
    chunks = ((c, inject_violation) for c in _chunks(graphs, CHUNK))
    if jobs == 1:
        for c in chunks:
            total.merge(_check_chunk(c))
    else:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            for part in pool.map(_check_chunk, chunks):
                total.merge(part)
    elapsed = time.perf_counter() - start
    if total.count == 0:
        return VerifyReport(order, 0, float("inf"), None, elapsed)
    ties = total.canonical_ties()
    codes = [write_graph6(g).decode() for g in ties]
    return VerifyReport(order, total.count, total.best, codes[0], elapsed, codes, sorted(total.orders))


def verify_order(n: int, jobs: int = 1, inject_violation: bool = False) -> VerifyReport:
    return verify_graphs(enumerate_nonisomorphic(n), n, jobs, inject_violation)


def verify_stream(lines: Iterable[bytes | str], jobs: int = 1, inject_violation: bool = False) -> VerifyReport:
    """Graphs of any order from graph6 lines; parse errors carry the line
    number."""
    gen = (g for _, g in read_graph6_lines(lines))
    rep = verify_graphs(gen, None, jobs, inject_violation)
    if len(rep.orders_seen) == 1:
        rep.order = rep.orders_seen[0]
    return rep
