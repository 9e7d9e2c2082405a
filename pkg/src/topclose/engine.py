"""Top-k closeness engine: farness/closeness bound functions, the pruned BFS
visit, the degree-ordered main loop with a rising k-th-best threshold, and a
process-based parallel scheduler."""

from __future__ import annotations

import heapq
import multiprocessing as mp
import time
from collections import deque
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .graph import Graph, connected_components
from .scc import ReachabilityBounds, reachability_for

INF = float("inf")

# visit outcomes
CUT = -1.0


def farness_lower_bound(d: int, f_d: int, n_d: int, gamma_next: int, x: int) -> int:
    """Lower bound on the final farness given the state of a visit at the end
    of level d, under the hypothesis that x vertices are reachable.

    Valid (<= true farness) whenever x <= r(v) and gamma_next is at least the
    size of the next frontier.
    """
    return f_d - gamma_next + (d + 2) * (x - n_d)


def closeness_upper_bound(lam: float, r: int, n: int) -> float:
    """Closeness upper bound from a farness lower bound and the exact
    reachable count. Returns +inf when the bound degenerates (lam <= 0)."""
    if lam <= 0:
        return INF
    return (r - 1) ** 2 / ((n - 1) * lam)


def inverse_closeness_lower_bound(
    d: int, f_d: int, n_d: int, gamma_next: int, alpha: int, omega: int, n: int
) -> float:
    """Lower bound on 1/closeness when only alpha <= r(v) <= omega is known.

    The minimum over the reachable-count interval is attained at one of the
    two extremes. A non-positive result is trivially valid and never cuts.
    """
    la = farness_lower_bound(d, f_d, n_d, gamma_next, alpha)
    lo = farness_lower_bound(d, f_d, n_d, gamma_next, omega)
    return (n - 1) * min(la / (alpha - 1) ** 2, lo / (omega - 1) ** 2)


@dataclass
class VisitState:
    """Per-visit bookkeeping of the queue-based pruned BFS."""

    d: int = 0
    f_d: int = 0
    n_d: int = 0
    gamma_next: int = 0
    dist: dict[int, int] = field(default_factory=dict)
    queue: deque = field(default_factory=deque)


@dataclass
class VisitOutcome:
    closeness: float  # CUT if pruned
    farness: int
    reachable: int  # vertices visited (valid when completed)
    cut_level: int  # -1 if completed
    arcs: int  # arcs out of dequeued vertices


BoundaryRecorder = Callable[[int, int, int, int, int], None]
# recorder(vertex, d, f_d, n_d, gamma_next) at every evaluated level boundary


def bfs_cut(
    g: Graph,
    v: int,
    threshold: Callable[[], float],
    bounds: ReachabilityBounds,
    recorder: BoundaryRecorder | None = None,
) -> VisitOutcome:
    """Queue-based pruned BFS from v.

    At every level boundary (first dequeue at distance d+1) the regime bound
    is evaluated against the current threshold x: with an exact reachable
    count the closeness upper bound, otherwise the inverse-closeness lower
    bound from alpha/omega. Returns CUT as soon as closeness <= x is certain.
    """
    n = g.n
    exact_r = bool(bounds.exact[v])
    r_v = int(bounds.r[v]) if exact_r else 0
    alpha = int(bounds.alpha[v])
    omega = int(bounds.omega[v])
    st = VisitState()
    st.dist[v] = 0
    st.queue.append(v)
    arcs = 0
    undirected = not g.directed
    while st.queue:
        u = st.queue.popleft()
        du = st.dist[u]
        if du > st.d:
            # level boundary: all of level d dequeued, bound is evaluable
            if recorder is not None:
                recorder(v, st.d, st.f_d, st.n_d, st.gamma_next)
            x = threshold()
            if exact_r:
                lam = farness_lower_bound(st.d, st.f_d, st.n_d, st.gamma_next, r_v)
                if closeness_upper_bound(lam, r_v, n) <= x:
                    return VisitOutcome(CUT, st.f_d, st.n_d, st.d, arcs)
            else:
                inv = inverse_closeness_lower_bound(
                    st.d, st.f_d, st.n_d, st.gamma_next, alpha, omega, n
                )
                if x > 0 and inv >= 1.0 / x:
                    return VisitOutcome(CUT, st.f_d, st.n_d, st.d, arcs)
            st.d = du
            st.gamma_next = 0
        st.f_d += du
        deg_u = g.degree(u)
        # undirected refinement: beyond level 0 one edge per frontier vertex
        # must point back into the previous level
        st.gamma_next += deg_u - 1 if (undirected and du >= 1) else deg_u
        st.n_d += 1
        arcs += deg_u
        for w in g.neighbors(u):
            w = int(w)
            if w not in st.dist:
                st.dist[w] = du + 1
                st.queue.append(w)
    r = st.n_d
    c = 0.0 if r <= 1 or n <= 1 else (r - 1) ** 2 / ((n - 1) * st.f_d)
    return VisitOutcome(c, st.f_d, r, -1, arcs)


def _bfs_cut_levelwise(
    g: Graph,
    v: int,
    threshold: Callable[[], float],
    bounds: ReachabilityBounds,
    seen_epoch: np.ndarray,
    epoch: int,
) -> VisitOutcome:
    """Level-synchronous pruned BFS; same outcome and arc count as bfs_cut.

    ``seen_epoch`` is reusable scratch of length n: a vertex is visited in
    this call iff seen_epoch[w] == epoch (avoids clearing between visits).
    """
    n = g.n
    offsets, targets = g.offsets, g.targets
    exact_r = bool(bounds.exact[v])
    r_v = int(bounds.r[v]) if exact_r else 0
    alpha = int(bounds.alpha[v])
    omega = int(bounds.omega[v])
    undirected = not g.directed
    seen_epoch[v] = epoch
    frontier = np.array([v], dtype=np.int64)
    d = 0
    f = 0
    nd = 0
    arcs = 0
    while True:
        fsize = len(frontier)
        f += d * fsize
        nd += fsize
        starts = offsets[frontier]
        counts = offsets[frontier + 1] - starts
        deg_sum = int(counts.sum())
        arcs += deg_sum
        gamma_next = deg_sum - fsize if (undirected and d >= 1) else deg_sum
        if deg_sum == 0:
            break
        idx = np.repeat(starts + counts - np.cumsum(counts), counts) + np.arange(deg_sum)
        neigh = targets[idx]
        new = neigh[seen_epoch[neigh] != epoch]
        if new.size == 0:
            break
        new = np.unique(new)
        seen_epoch[new] = epoch
        # boundary d -> d+1: level d fully dequeued, level d+1 discovered
        x = threshold()
        if exact_r:
            lam = farness_lower_bound(d, f, nd, gamma_next, r_v)
            if closeness_upper_bound(lam, r_v, n) <= x:
                return VisitOutcome(CUT, f, nd, d, arcs)
        else:
            inv = inverse_closeness_lower_bound(d, f, nd, gamma_next, alpha, omega, n)
            if x > 0 and inv >= 1.0 / x:
                return VisitOutcome(CUT, f, nd, d, arcs)
        frontier = new.astype(np.int64)
        d += 1
    r = nd
    c = 0.0 if r <= 1 or n <= 1 else (r - 1) ** 2 / ((n - 1) * f)
    return VisitOutcome(c, f, r, -1, arcs)


class ThresholdHeap:
    """Size-k min-heap over the closeness values seen so far.

    The threshold is the k-th biggest value once k values are present, 0
    before; it never decreases.
    """

    def __init__(self, k: int):
        if k < 1:
            raise ValueError("k must be >= 1")
        self.k = k
        self._heap: list[float] = []
        self._xk = 0.0

    def push(self, value: float) -> None:
        if len(self._heap) < self.k:
            heapq.heappush(self._heap, value)
        elif value > self._heap[0]:
            heapq.heapreplace(self._heap, value)
        new_xk = self._heap[0] if len(self._heap) == self.k else 0.0
        assert new_xk >= self._xk, "threshold must be monotone"
        self._xk = new_xk

    @property
    def threshold(self) -> float:
        return self._xk


def kth_threshold(heap: ThresholdHeap) -> float:
    """Current k-th biggest closeness, 0 until k values have been seen."""
    return heap.threshold


@dataclass(frozen=True)
class RankedVertex:
    rank: int
    vertex: int
    label: str
    closeness: float
    farness: int
    reachable: int


@dataclass(frozen=True)
class TopKResult:
    k: int
    entries: tuple[RankedVertex, ...]

    def closeness_values(self) -> list[float]:
        return [e.closeness for e in self.entries]


@dataclass
class RunStats:
    m_vis: int = 0
    m_tot: int | None = None
    cut_level: np.ndarray | None = None  # -1 where the visit completed
    completed: np.ndarray | None = None
    preprocessing_seconds: float = 0.0
    total_seconds: float = 0.0
    final_threshold: float = 0.0

    @property
    def improvement_factor(self) -> float | None:
        if not self.m_tot:
            return None
        return self.m_vis / self.m_tot


def processing_order(g: Graph) -> np.ndarray:
    """Vertices by decreasing degree (out-degree when directed), ties by
    ascending id."""
    return np.lexsort((np.arange(g.n), -g.degrees))


def exact_m_tot(g: Graph, bounds: ReachabilityBounds) -> int | None:
    """Arc budget of the textbook all-BFS algorithm, when cheap to know.

    Undirected: sum over components of size * volume. Directed and strongly
    connected: m * n. Otherwise unknown without running the oracle.
    """
    if g.n == 0:
        return 0
    if not g.directed:
        comps = connected_components(g)
        vol = np.zeros(comps.count, dtype=np.int64)
        np.add.at(vol, comps.component_id, g.degrees)
        return int((comps.component_size * vol).sum())
    if bool(bounds.exact.all()) and g.n and int(bounds.r[0]) == g.n:
        return g.m * g.n
    return None


def _rank(
    g: Graph, k: int, closeness: np.ndarray, farness: np.ndarray, reachable: np.ndarray,
    eligible: np.ndarray,
) -> TopKResult:
    idx = np.nonzero(eligible)[0]
    order = np.lexsort((idx, -closeness[idx]))
    chosen = idx[order][:k]
    entries = tuple(
        RankedVertex(
            rank=i + 1,
            vertex=int(v),
            label=g.labels[int(v)],
            closeness=float(closeness[v]),
            farness=int(farness[v]),
            reachable=int(reachable[v]),
        )
        for i, v in enumerate(chosen)
    )
    return TopKResult(k=k, entries=entries)


def top_k(
    g: Graph,
    k: int,
    workers: int = 1,
    instrument: bool = False,
    recorder: BoundaryRecorder | None = None,
) -> tuple[TopKResult, RunStats]:
    """Exact top-k closeness via pruned BFS with a rising threshold.

    Vertices are processed in decreasing degree order; each visit may be cut
    once its closeness provably cannot exceed the current k-th best value.
    ``instrument=True`` forces the queue-based visit (slower, supports a
    boundary recorder). ``workers`` > 1 forks that many processes.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    t0 = time.perf_counter()
    bounds = reachability_for(g)
    order = processing_order(g)
    prep = time.perf_counter() - t0

    n = g.n
    closeness = np.zeros(n, dtype=np.float64)
    farness = np.zeros(n, dtype=np.int64)
    reachable = np.ones(n, dtype=np.int64)
    cut_level = np.full(n, -1, dtype=np.int64)
    completed = np.zeros(n, dtype=bool)
    heap = ThresholdHeap(k)
    m_vis = 0

    skip = (bounds.exact & (bounds.r <= 1)) | (bounds.alpha <= 1) | (n <= 1)

    if workers > 1 and not instrument and n:
        m_vis = _run_parallel(
            g, bounds, order, skip, heap, workers,
            closeness, farness, reachable, cut_level, completed,
        )
    else:
        seen_epoch = np.zeros(n, dtype=np.int64)
        epoch = 0
        for v in order:
            v = int(v)
            if skip[v]:
                completed[v] = True
                heap.push(0.0)
                continue
            if instrument:
                out = bfs_cut(g, v, lambda: heap.threshold, bounds, recorder)
            else:
                epoch += 1
                out = _bfs_cut_levelwise(g, v, lambda: heap.threshold, bounds, seen_epoch, epoch)
            m_vis += out.arcs
            if out.closeness == CUT and out.cut_level >= 0:
                cut_level[v] = out.cut_level
            else:
                closeness[v] = out.closeness
                farness[v] = out.farness
                reachable[v] = out.reachable
                completed[v] = True
                heap.push(out.closeness)

    result = _rank(g, k, closeness, farness, reachable, completed)
    stats = RunStats(
        m_vis=int(m_vis),
        m_tot=exact_m_tot(g, bounds),
        cut_level=cut_level,
        completed=completed,
        preprocessing_seconds=prep,
        total_seconds=time.perf_counter() - t0,
        final_threshold=heap.threshold,
    )
    return result, stats


class _SharedThresholdHeap:
    """Size-k min-heap living in shared memory, updated by any worker under a
    single lock; the threshold is mirrored into a lock-free double for cheap
    reads at level boundaries."""

    def __init__(self, ctx, k: int):
        self.k = k
        self._values = ctx.Array("d", k, lock=False)
        self._count = ctx.Value("l", 0, lock=False)
        self._lock = ctx.Lock()
        self.xk = ctx.Value("d", 0.0, lock=False)

    def push(self, value: float) -> None:
        with self._lock:
            heap = self._values
            count = self._count.value
            if count < self.k:
                # sift up
                i = count
                heap[i] = value
                while i > 0:
                    parent = (i - 1) // 2
                    if heap[parent] <= heap[i]:
                        break
                    heap[parent], heap[i] = heap[i], heap[parent]
                    i = parent
                count += 1
                self._count.value = count
            elif value > heap[0]:
                # replace root, sift down
                heap[0] = value
                i = 0
                while True:
                    left, right = 2 * i + 1, 2 * i + 2
                    smallest = i
                    if left < count and heap[left] < heap[smallest]:
                        smallest = left
                    if right < count and heap[right] < heap[smallest]:
                        smallest = right
                    if smallest == i:
                        break
                    heap[smallest], heap[i] = heap[i], heap[smallest]
                    i = smallest
            new_xk = heap[0] if count == self.k else 0.0
            assert new_xk >= self.xk.value, "threshold must be monotone"
            self.xk.value = new_xk


def _worker_loop(g, bounds, order, skip, cursor, shared_heap, out_q):
    """Runs in a forked process: grab the next vertex, visit, publish the
    closeness through the shared threshold heap, report to the parent."""
    n = g.n
    seen_epoch = np.zeros(n, dtype=np.int64)
    epoch = 0
    m_vis = 0
    read_x = lambda: shared_heap.xk.value  # re-read at every level boundary
    while True:
        with cursor.get_lock():
            i = cursor.value
            cursor.value = i + 1
        if i >= len(order):
            break
        v = int(order[i])
        if skip[v]:
            shared_heap.push(0.0)
            out_q.put((v, 0.0, 0, 1, -1))
            continue
        epoch += 1
        out = _bfs_cut_levelwise(g, v, read_x, bounds, seen_epoch, epoch)
        m_vis += out.arcs
        if out.closeness == CUT:
            out_q.put((v, CUT, 0, 0, out.cut_level))
        else:
            shared_heap.push(out.closeness)
            out_q.put((v, out.closeness, out.farness, out.reachable, -1))
    out_q.put(("done", m_vis))


def _run_parallel(
    g, bounds, order, skip, heap, workers,
    closeness, farness, reachable, cut_level, completed,
) -> int:
    """Fork worker processes sharing the graph copy-on-write. Workers update
    the shared k-heap synchronously; a worker may still read a stale (smaller)
    threshold mid-visit, which can only delay a cut, never cause a wrong one.
    """
    ctx = mp.get_context("fork")
    cursor = ctx.Value("l", 0)
    shared_heap = _SharedThresholdHeap(ctx, heap.k)
    out_q = ctx.SimpleQueue()
    procs = [
        ctx.Process(target=_worker_loop, args=(g, bounds, order, skip, cursor, shared_heap, out_q))
        for _ in range(workers)
    ]
    for p in procs:
        p.start()
    m_vis = 0
    remaining = workers
    try:
        while remaining:
            msg = out_q.get()
            if msg[0] == "done":
                m_vis += msg[1]
                remaining -= 1
                continue
            v, c, f, r, cl = msg
            if c == CUT:
                cut_level[v] = cl
            else:
                closeness[v] = c
                farness[v] = f
                reachable[v] = r
                completed[v] = True
                heap.push(c)  # parent mirror, used for the final ranking
    finally:
        for p in procs:
            p.join()
    return m_vis
