"""Strongly connected components, their condensation DAG, and per-vertex
reachability bounds used to prune directed BFS visits."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .graph import Graph, bfs, connected_components


@dataclass(frozen=True)
class SccDag:
    """Weighted condensation DAG of a directed graph.

    ``topo_index`` orders components so that every DAG arc goes from a lower
    index to a higher one. ``dag_adj[c]`` lists the successor components of
    ``c`` (deduplicated, no self-arcs).
    """

    scc_id: np.ndarray  # per vertex
    scc_count: int
    weight: np.ndarray  # per component, member count
    dag_adj: list[np.ndarray]
    topo_index: np.ndarray  # per component
    min_member: np.ndarray  # smallest vertex id per component (tie-breaking)


@dataclass(frozen=True)
class ReachabilityBounds:
    """Per-vertex bounds alpha(v) <= r(v) <= omega(v), exact where known."""

    alpha: np.ndarray
    omega: np.ndarray
    exact: np.ndarray  # bool
    r: np.ndarray  # valid where exact


def compute_scc_dag(g: Graph) -> SccDag:
    """Tarjan's algorithm with an explicit stack (no recursion), plus the
    deduplicated condensation DAG.

    Components are emitted in reverse topological order, so the topological
    index of component c is scc_count - 1 - emit_order(c).
    """
    if not g.directed:
        raise ValueError("compute_scc_dag requires a directed graph")
    n = g.n
    offsets, targets = g.offsets, g.targets
    index = np.full(n, -1, dtype=np.int64)
    lowlink = np.zeros(n, dtype=np.int64)
    on_stack = np.zeros(n, dtype=bool)
    scc_id = np.full(n, -1, dtype=np.int64)
    stack: list[int] = []
    next_index = 0
    scc_count = 0
    weights: list[int] = []
    min_members: list[int] = []

    for root in range(n):
        if index[root] >= 0:
            continue
        # work stack of (vertex, next adjacency position)
        work = [(root, int(offsets[root]))]
        index[root] = lowlink[root] = next_index
        next_index += 1
        stack.append(root)
        on_stack[root] = True
        while work:
            v, pos = work[-1]
            if pos < offsets[v + 1]:
                work[-1] = (v, pos + 1)
                w = int(targets[pos])
                if index[w] < 0:
                    index[w] = lowlink[w] = next_index
                    next_index += 1
                    stack.append(w)
                    on_stack[w] = True
                    work.append((w, int(offsets[w])))
                elif on_stack[w]:
                    if index[w] < lowlink[v]:
                        lowlink[v] = index[w]
            else:
                work.pop()
                if work:
                    parent = work[-1][0]
                    if lowlink[v] < lowlink[parent]:
                        lowlink[parent] = lowlink[v]
                if lowlink[v] == index[v]:
                    size = 0
                    min_member = v
                    while True:
                        w = stack.pop()
                        on_stack[w] = False
                        scc_id[w] = scc_count
                        size += 1
                        if w < min_member:
                            min_member = w
                        if w == v:
                            break
                    weights.append(size)
                    min_members.append(min_member)
                    scc_count += 1

    weight = np.asarray(weights, dtype=np.int64)
    # emit order is reverse topological: sinks first
    topo_index = (scc_count - 1) - np.arange(scc_count, dtype=np.int64)

    # condensation arcs, deduplicated, self-arcs dropped
    if g.m:
        src_c = scc_id[np.repeat(np.arange(n), np.diff(offsets))]
        tgt_c = scc_id[targets]
        keep = src_c != tgt_c
        arcs = np.unique(np.stack([src_c[keep], tgt_c[keep]], axis=1), axis=0)
    else:
        arcs = np.empty((0, 2), dtype=np.int64)
    dag_adj: list[np.ndarray] = [np.empty(0, dtype=np.int64) for _ in range(scc_count)]
    if len(arcs):
        order = np.argsort(arcs[:, 0], kind="stable")
        arcs = arcs[order]
        splits = np.searchsorted(arcs[:, 0], np.arange(scc_count + 1))
        for c in range(scc_count):
            dag_adj[c] = arcs[splits[c] : splits[c + 1], 1]

    return SccDag(
        scc_id=scc_id,
        scc_count=scc_count,
        weight=weight,
        dag_adj=dag_adj,
        topo_index=topo_index,
        min_member=np.asarray(min_members, dtype=np.int64),
    )


def _alpha_dp(dag: SccDag, pinned: int = -1, pinned_value: int = 0) -> np.ndarray:
    """alpha(C) = w(C) + max over successors, sinks-first; optionally pin one
    component to a fixed exact value."""
    alpha = np.zeros(dag.scc_count, dtype=np.int64)
    for c in _reverse_topo(dag):
        if c == pinned:
            alpha[c] = pinned_value
            continue
        best = 0
        for d in dag.dag_adj[c]:
            if alpha[d] > best:
                best = int(alpha[d])
        alpha[c] = dag.weight[c] + best
    return alpha


def _reverse_topo(dag: SccDag) -> np.ndarray:
    # components sorted by decreasing topological index (sinks first)
    return np.argsort(-dag.topo_index, kind="stable")


def compute_alpha_omega(dag: SccDag, g: Graph) -> ReachabilityBounds:
    """Dynamic program over the condensation DAG in reverse topological order,
    then the largest-component exactification.

    The exactification runs one BFS from the heaviest component C~ to learn
    its exact reachable count, reruns the upper-bound recursion on the DAG
    with everything reachable from C~ removed (adding the exact count back for
    components that reach C~), and reruns the lower-bound recursion with C~
    pinned to its exact value. Bounds only ever tighten.
    """
    n = g.n
    k = dag.scc_count
    w = dag.weight

    alpha_c = _alpha_dp(dag)
    omega_c = np.zeros(k, dtype=np.int64)
    for c in _reverse_topo(dag):
        s = int(w[c])
        for d in dag.dag_adj[c]:
            s += int(omega_c[d])
        omega_c[c] = min(s, n)

    # exactification around the heaviest component (ties: smallest member id)
    order = np.lexsort((dag.min_member, -w))
    big = int(order[0])
    dist, r_big, _ = bfs(g, int(dag.min_member[big]))
    del dist

    # forward reachability from big over the DAG
    downstream = np.zeros(k, dtype=bool)
    downstream[big] = True
    for c in np.argsort(dag.topo_index, kind="stable"):  # topological order
        if downstream[c]:
            for d in dag.dag_adj[c]:
                downstream[d] = True

    # which components reach big (excluding big itself)
    reaches = np.zeros(k, dtype=bool)
    reaches[big] = True
    for c in _reverse_topo(dag):
        if not reaches[c]:
            for d in dag.dag_adj[c]:
                if reaches[d]:
                    reaches[c] = True
                    break
    reaches[big] = False

    # upper bounds: DP on the DAG minus everything downstream of big,
    # then add the exact reachable count for components that reach big
    omega_reduced = np.zeros(k, dtype=np.int64)
    for c in _reverse_topo(dag):
        if downstream[c]:
            continue
        s = int(w[c])
        for d in dag.dag_adj[c]:
            if not downstream[d]:
                s += int(omega_reduced[d])
        omega_reduced[c] = s
    improved_omega = omega_c.copy()
    improved_omega[big] = r_big
    sel = reaches.nonzero()[0]
    improved_omega[sel] = np.minimum(omega_c[sel], np.minimum(omega_reduced[sel] + r_big, n))

    # lower bounds: same max-recursion with big pinned to its exact value
    alpha2 = _alpha_dp(dag, pinned=big, pinned_value=r_big)
    improved_alpha = np.maximum(alpha_c, alpha2)

    exact_c = improved_alpha == improved_omega
    exact_c[big] = True

    sid = dag.scc_id
    alpha = improved_alpha[sid]
    omega = improved_omega[sid]
    exact = exact_c[sid]
    r = np.where(exact, omega, 0)
    r[sid == big] = r_big
    return ReachabilityBounds(alpha=alpha, omega=omega, exact=exact, r=r)


def reachability_for(g: Graph) -> ReachabilityBounds:
    """Exact reachable counts where cheap, alpha/omega bounds otherwise.

    Undirected: exact from connected components. Directed with one strongly
    connected component: exact r(v) = n. Directed in general: the DAG dynamic
    program with the exactification trick.
    """
    n = g.n
    if n == 0:
        z = np.zeros(0, dtype=np.int64)
        return ReachabilityBounds(alpha=z, omega=z, exact=z.astype(bool), r=z)
    if not g.directed:
        comps = connected_components(g)
        r = comps.component_size[comps.component_id]
        return ReachabilityBounds(alpha=r, omega=r, exact=np.ones(n, dtype=bool), r=r)
    dag = compute_scc_dag(g)
    if dag.scc_count == 1:
        r = np.full(n, n, dtype=np.int64)
        return ReachabilityBounds(alpha=r, omega=r, exact=np.ones(n, dtype=bool), r=r)
    return compute_alpha_omega(dag, g)
