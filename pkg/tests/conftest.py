"""Shared corpora for the unit and acceptance suites."""

from __future__ import annotations

import itertools

import pytest

from nbcomplex import Graph, gnp_sample


def all_connected_graphs(max_n: int) -> list[Graph]:
    """Every labeled connected graph on 1..max_n vertices."""
    out = []
    for n in range(1, max_n + 1):
        pairs = list(itertools.combinations(range(n), 2))
        for bits in range(1 << len(pairs)):
            edges = [pairs[i] for i in range(len(pairs)) if bits >> i & 1]
            g = Graph.from_edges(n, edges)
            if g.is_connected():
                out.append(g)
    return out


@pytest.fixture(scope="session")
def connected_corpus() -> list[Graph]:
    graphs = all_connected_graphs(5)
    # 1 + 1 + 4 + 38 + 728 labeled connected graphs on <= 5 vertices
    assert len(graphs) == 772
    return graphs


@pytest.fixture(scope="session")
def sampled_corpus() -> list[Graph]:
    """Fixed-seed random block: n in 6..10, three densities, three trials."""
    out = []
    for n in range(6, 11):
        for pi, p in enumerate((0.2, 0.5, 0.8)):
            for t in range(3):
                out.append(gnp_sample(n, p, seed=9_000_000 + 1000 * n + 100 * pi + t))
    return out
