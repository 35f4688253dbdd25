"""Shared fixtures: a session-wide Betti table cache and random graph corpora.

Hochster tables are the expensive part of the suite and several criteria
re-check the same family members, so tables are computed once per
(graph, field) and shared.
"""

from __future__ import annotations

import random

import pytest

from circdepth.graphs import Graph, graph_from_edges
from circdepth.homology import BettiTable, FieldSpec, hochster_betti_table


def graph_key(g: Graph) -> tuple:
    return (g.num_vertices, tuple(g.edges()))


class OracleCache:
    def __init__(self) -> None:
        self._tables: dict[tuple, BettiTable] = {}

    def betti(self, g: Graph, field: FieldSpec) -> BettiTable:
        key = (graph_key(g), field.characteristic)
        if key not in self._tables:
            self._tables[key] = hochster_betti_table(g, field)
        return self._tables[key]

    def depth(self, g: Graph, field: FieldSpec) -> int:
        return g.num_vertices - self.betti(g, field).pdim

    def pdim(self, g: Graph, field: FieldSpec) -> int:
        return self.betti(g, field).pdim


@pytest.fixture(scope="session")
def oracle() -> OracleCache:
    return OracleCache()


def random_graph(rng: random.Random, n: int, p: float = 0.4) -> Graph:
    edges = [(i, j) for i in range(n) for j in range(i + 1, n) if rng.random() < p]
    return graph_from_edges([f"v{i+1}" for i in range(n)], edges)


def random_connected_graph(rng: random.Random, n: int, extra: float = 0.25) -> Graph:
    """Random spanning tree plus extra edges; always connected."""
    edges = []
    for v in range(1, n):
        edges.append((rng.randrange(v), v))
    for i in range(n):
        for j in range(i + 1, n):
            if (i, j) not in edges and rng.random() < extra:
                edges.append((i, j))
    return graph_from_edges([f"v{i+1}" for i in range(n)], edges)
