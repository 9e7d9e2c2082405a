"""Shared instances: the seeded random suite plus small special graphs."""

from __future__ import annotations

import pytest

from topclose import exact_closeness_all, from_edges
from topclose.generators import cycle_graph, gnp, path_graph, star_graph


def _disjoint_union(a, b):
    edges = list(a.edges()) + [(u + a.n, w + a.n) for u, w in b.edges()]
    return from_edges(a.n + b.n, edges, directed=a.directed)


def build_suite():
    """>= 200 seeded gnp instances plus path/star/cycle/disjoint-union specials."""
    instances = []
    for directed in (False, True):
        for n in (20, 50, 100, 200):
            for p in (0.01, 0.05, 0.2):
                for seed in range(9):
                    tag = f"gnp-{'d' if directed else 'u'}-n{n}-p{p}-s{seed}"
                    instances.append((tag, gnp(n, p, seed, directed)))
    for directed in (False, True):
        d = "d" if directed else "u"
        instances.append((f"path-{d}", path_graph(30, directed)))
        instances.append((f"star-{d}", star_graph(30, directed)))
        instances.append((f"cycle-{d}", cycle_graph(30, directed)))
        instances.append(
            (f"union-{d}", _disjoint_union(gnp(40, 0.1, 3, directed), gnp(25, 0.2, 4, directed)))
        )
    return instances


@pytest.fixture(scope="session")
def suite():
    return build_suite()


@pytest.fixture(scope="session")
def suite_oracle(suite):
    """Oracle closeness tables and m_tot for every suite instance."""
    return {tag: exact_closeness_all(g) for tag, g in suite}
