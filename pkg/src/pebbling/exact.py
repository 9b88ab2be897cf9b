"""Exact pebbling invariants by guided exhaustive search.

The solvability threshold is monotone in distribution size (removing a
pebble never helps), so each invariant reduces to: find the first size at
which no unsolvable witness exists. Witness existence per size is decided by
a pruned composition search in the compiled kernels, with exact per-family
oracles (trees, cycles) and a DFS decider for everything else.
"""
from __future__ import annotations

import os
import time
from dataclasses import dataclass, field
from typing import Iterator, Sequence

import numpy as np

from pebbling import _kernels as K
from pebbling.engine import PebbleDistribution
from pebbling.errors import BudgetExceededError
from pebbling.graphs import Graph, automorphisms, bfs_parents, serialize_graph6, vertex_orbits

__all__ = [
    "Budget",
    "PebblingStat",
    "pebbling_number",
    "rooted_pebbling_number",
    "optimal_pebbling_number",
    "arbitrary_target_number",
    "max_unsolvable_witness",
]


@dataclass(frozen=True)
class Budget:
    """Resource limits; exceeding any of them raises BudgetExceededError."""

    max_n: int = 8
    max_pebbles: int = 32
    max_t: int = 4
    scan_nodes: int = 500_000_000
    dfs_nodes: int = 100_000_000
    memo_bits: int = 21
    wall_secs: float | None = None

    def deadline(self, start: float) -> float | None:
        secs = self.wall_secs
        if secs is None:
            env = os.environ.get("PEBBLE_BUDGET_SECS")
            secs = float(env) if env else None
        return None if secs is None else start + secs


@dataclass(frozen=True)
class PebblingStat:
    """Computed invariant with its certifying witness.

    For pi-style stats the witness is an unsolvable distribution of size
    value - 1; for the optimal variant it is a solvable distribution of size
    value.
    """

    kind: str
    t: int
    value: int
    witness: PebbleDistribution | None
    elapsed_ms: float
    enumerated_count: int
    graph6: str
    root: int | None = None

    def to_json(self) -> dict:
        return {
            "graph": self.graph6,
            "kind": self.kind,
            "t": self.t,
            "value": self.value,
            "witness": None if self.witness is None else self.witness.to_json(),
            "elapsed_ms": round(self.elapsed_ms, 3),
            "enumerated_count": self.enumerated_count,
            **({} if self.root is None else {"root": self.root}),
        }


# one shared memo arena; epochs invalidate stale entries in O(1)
_MEMO: dict[int, tuple[np.ndarray, np.ndarray]] = {}
_EPOCH = [0]


def _memo_buffers(bits: int) -> tuple[np.ndarray, np.ndarray]:
    if bits not in _MEMO:
        cap = 1 << bits
        _MEMO[bits] = (
            np.zeros(cap, dtype=np.int64),
            np.full(cap, -1, dtype=np.int64),
        )
    return _MEMO[bits]


def _next_epoch() -> int:
    _EPOCH[0] += 1
    return _EPOCH[0]


def compositions(total: int, parts: int) -> Iterator[tuple[int, ...]]:
    """Weak compositions in colexicographic order (last coordinate slowest)."""
    if parts == 1:
        yield (total,)
        return
    for last in range(total + 1):
        for rest in compositions(total - last, parts - 1):
            yield rest + (last,)


class _GraphArrays:
    """Per-graph precomputation shared by every scan on that graph."""

    def __init__(self, g: Graph, budget: Budget):
        g.require_connected()
        self.g = g
        self.n = g.n
        self.dist = g.distances.astype(np.int64)
        maxd = int(self.dist.max())
        self.maxd = maxd
        self.wint = (np.int64(1) << (maxd - self.dist)).astype(np.int64)
        if len(g.edges) == g.n - 1:
            self.kind = 1
        elif g.n >= 3 and all(g.degree(v) == 2 for v in range(g.n)):
            self.kind = 2
        else:
            self.kind = 0
        if self.kind == 2:
            ring = [0]
            prev = -1
            while len(ring) < g.n:
                nxt = [u for u in g.neighbors(ring[-1]) if u != prev]
                prev = ring[-1]
                ring.append(nxt[0])
            self.cycpos = np.array(ring, dtype=np.int64)
        else:
            self.cycpos = np.zeros(0, dtype=np.int64)
        # fixed packing base so memo entries stay valid across sizes
        self.base = budget.max_pebbles + 2
        if self.kind == 0 and self.base**self.n >= 1 << 62:
            raise BudgetExceededError(
                f"state packing for n={self.n}, max_pebbles={budget.max_pebbles} "
                "exceeds 62 bits; lower max_pebbles"
            )

    def tree_arrays(self, root: int) -> tuple[np.ndarray, np.ndarray]:
        parent = bfs_parents(self.g, root)
        order = np.array(
            sorted(range(self.n), key=lambda v: -int(self.dist[root, v])),
            dtype=np.int64,
        )
        return order, parent


class _TargetContext:
    """Per-target precomputation: anchors, weight tables, move order, trees."""

    def __init__(self, ga: _GraphArrays, target: np.ndarray, budget: Budget):
        self.ga = ga
        n = ga.n
        self.target = target.astype(np.int64)
        anchors = np.nonzero(self.target)[0].astype(np.int64)
        if anchors.size == 0:
            raise ValueError("target must place at least one pebble")
        self.anchors = anchors
        self.tneed = np.array(
            [
                int((self.target * ga.wint[:, a]).sum())
                for a in anchors
            ],
            dtype=np.int64,
        )
        self.captab = np.array(
            [
                int((self.target << ga.dist[v]).sum())
                for v in range(n)
            ],
            dtype=np.int64,
        )
        mind = ga.dist[:, anchors].min(axis=1)
        self.order = np.array(
            sorted(range(n), key=lambda v: (-int(mind[v]), v)), dtype=np.int64
        )
        # suffix maxima of anchor weights along the assignment order
        self.bestw = np.zeros((anchors.size, n), dtype=np.int64)
        for ai, a in enumerate(anchors):
            suf = 0
            for p in range(n - 2, -1, -1):
                suf = max(suf, int(ga.wint[self.order[p + 1], a]))
                self.bestw[ai, p] = suf
        a0 = int(anchors[0])
        dir_edges = [(v, u) for v, u in ga.g.edges] + [
            (u, v) for v, u in ga.g.edges
        ]
        dir_edges.sort(key=lambda vu: (int(ga.dist[vu[1], a0]), vu))
        self.ef = np.array([v for v, _ in dir_edges], dtype=np.int64)
        self.et = np.array([u for _, u in dir_edges], dtype=np.int64)
        if ga.kind == 1:
            self.torder, self.tparent = ga.tree_arrays(a0)
            self.troot = a0
            self.gorders = np.zeros((0, n), dtype=np.int64)
            self.gparents = np.zeros((0, n), dtype=np.int64)
            self.groots = np.zeros(0, dtype=np.int64)
        else:
            self.torder = np.zeros(n, dtype=np.int64)
            self.tparent = np.zeros(n, dtype=np.int64)
            self.troot = 0
            roots = [int(a) for a in anchors[:3]]
            orders, parents = [], []
            for r in roots:
                o, p = ga.tree_arrays(r)
                orders.append(o)
                parents.append(p)
            self.gorders = np.array(orders, dtype=np.int64)
            self.gparents = np.array(parents, dtype=np.int64)
            self.groots = np.array(roots, dtype=np.int64)
        self.epoch = _next_epoch()
        self.memo_keys, self.memo_stamps = _memo_buffers(budget.memo_bits)
        self.memo_used = np.zeros(1, dtype=np.int64)
        self.dfs_box = np.array([budget.dfs_nodes], dtype=np.int64)

    def scan(self, s: int, budget: Budget) -> tuple[int, np.ndarray | None, int]:
        """Search for an unsolvable distribution of size s."""
        witness = np.zeros(self.ga.n, dtype=np.int64)
        code, nodes, _ = K.witness_scan(
            self.ga.n,
            self.ga.kind,
            self.target,
            self.anchors,
            self.ga.wint,
            self.tneed,
            self.captab,
            self.order,
            self.bestw,
            self.torder,
            self.tparent,
            self.troot,
            self.gorders,
            self.gparents,
            self.groots,
            self.ga.cycpos,
            self.ef,
            self.et,
            s,
            self.ga.base,
            self.memo_keys,
            self.memo_stamps,
            self.epoch,
            budget.scan_nodes,
            int(self.dfs_box[0]),
            witness,
        )
        if code == K.REFUSED:
            return K.REFUSED, None, int(nodes)
        if code == K.FOUND:
            return K.FOUND, witness, int(nodes)
        return K.NONE, None, int(nodes)

    def decide(self, counts: np.ndarray) -> bool:
        """Exact: does counts cover the target? (Kernel-backed.)"""
        code = K._decide_solvable(
            counts.astype(np.int64),
            self.ga.kind,
            self.ga.n,
            self.target,
            self.anchors,
            self.ga.wint,
            self.tneed,
            self.captab,
            self.torder,
            self.tparent,
            self.troot,
            self.gorders,
            self.gparents,
            self.groots,
            self.ga.cycpos,
            self.ef,
            self.et,
            self.ga.base,
            self.memo_keys,
            self.memo_stamps,
            self.epoch,
            self.memo_used,
            self.dfs_box,
        )
        if code == K.REFUSED:
            raise BudgetExceededError("DFS node or memo budget exhausted")
        return code == K.FOUND


def _check_budget(g: Graph, t: int, budget: Budget) -> None:
    if t < 1:
        raise ValueError("t must be >= 1")
    if g.n > budget.max_n:
        raise BudgetExceededError(
            f"n={g.n} exceeds budget max_n={budget.max_n}; pass a larger Budget"
        )
    if t > budget.max_t:
        raise BudgetExceededError(
            f"t={t} exceeds budget max_t={budget.max_t}; pass a larger Budget"
        )


def _tree_rooted_scan(
    g: Graph, r: int, t: int
) -> tuple[int, np.ndarray, int]:
    """Exact rooted value on a tree by dynamic programming.

    For a vertex v at depth d from r, any distribution confined to v's
    subtree can make v's folded pile reach at most 2**d * t - 1 before the
    whole distribution turns solvable, so per-vertex tables stay tiny. The
    table h_v[a] holds the largest subtree pebble total whose fold at v is
    at most a; children merge by a bounded knapsack over their send-up
    amounts (send-up s consumes fold budget s and frees a child fold of
    2s + 1). The answer is one more than the best root-unsolvable total.
    Returns (value, witness of size value - 1, states examined).
    """
    n = g.n
    dist = g.distances
    depth = [int(dist[r, v]) for v in range(n)]
    order = sorted(range(n), key=lambda v: -depth[v])  # deepest first
    children: list[list[int]] = [[] for _ in range(n)]
    for v in range(n):
        if v != r:
            parent = next(u for u in g.neighbors(v) if depth[u] < depth[v])
            children[parent].append(v)
    cap = [(1 << depth[v]) * t - 1 for v in range(n)]
    cap[r] = t - 1
    h: dict[int, list[int]] = {}
    stages: dict[int, list[list[int]]] = {}
    states = 0
    for v in order:
        A = cap[v]
        dp = [0] * (A + 1)
        stage_list = [dp[:]]
        for c in children[v]:
            new = [0] * (A + 1)
            for b in range(A + 1):
                best = -1
                for s in range(b + 1):
                    # child fold budget 2s+1 sends up s
                    val = dp[b - s] + (h[c][2 * s + 1] - s)
                    if val > best:
                        best = val
                new[b] = best
            dp = new
            stage_list.append(dp[:])
        states += (A + 1) * max(1, len(children[v]))
        h[v] = [a + dp[a] for a in range(A + 1)]
        stages[v] = stage_list

    value = 1 + (t - 1) + stages[r][len(children[r])][t - 1]

    witness = np.zeros(n, dtype=np.int64)

    def rebuild(v: int, a: int) -> None:
        stage_list = stages[v]
        b = a
        picked: list[int] = []
        for i in range(len(children[v]) - 1, -1, -1):
            c = children[v][i]
            for s in range(b + 1):
                if stage_list[i][b - s] + (h[c][2 * s + 1] - s) == stage_list[i + 1][b]:
                    picked.append(s)
                    b -= s
                    break
        picked.reverse()
        witness[v] = a - sum(picked)
        for c, s in zip(children[v], picked):
            rebuild(c, 2 * s + 1)

    rebuild(r, t - 1)
    return value, witness, states


def _guaranteed_witness(tc: _TargetContext) -> tuple[int, np.ndarray]:
    """Size s0 and a distribution of size s0 - 1 that provably fails the
    target: piling everything on a farthest vertex stays under the needed
    weight at some anchor."""
    ga = tc.ga
    best_s0, best_v, best_a = 1, int(tc.anchors[0]), 0
    for ai, a in enumerate(tc.anchors):
        minw = int(ga.wint[:, a].min())
        v = int(np.argmin(ga.wint[:, a]))
        need = int(tc.tneed[ai])
        s0 = -(-need // minw)  # ceil
        if s0 > best_s0:
            best_s0, best_v, best_a = s0, v, ai
    witness = np.zeros(ga.n, dtype=np.int64)
    witness[best_v] = best_s0 - 1
    return best_s0, witness


def _min_size_for_target(
    ga: _GraphArrays,
    target: np.ndarray,
    budget: Budget,
    deadline: float | None,
) -> tuple[int, np.ndarray, int]:
    """Smallest k such that every distribution of size k covers the target;
    also returns a maximal witness (size k - 1) and the enumeration count."""
    anchors = np.nonzero(target)[0]
    if ga.kind == 1 and anchors.size == 1:
        r = int(anchors[0])
        value, witness, states = _tree_rooted_scan(ga.g, r, int(target[r]))
        tc = _TargetContext(ga, target, budget)
        if value > 1:
            assert not tc.decide(witness), "tree DP witness must be unsolvable"
        return value, witness, states
    tc = _TargetContext(ga, target, budget)
    s0, witness = _guaranteed_witness(tc)
    if s0 - 1 > 0:
        assert not tc.decide(witness), "weight-bound witness must be unsolvable"
    enumerated = 0
    s = s0
    while True:
        if s > budget.max_pebbles:
            raise BudgetExceededError(
                f"scan reached |D|={s} > max_pebbles={budget.max_pebbles}",
                best_lower=s,
                nodes=enumerated,
            )
        if deadline is not None and time.monotonic() > deadline:
            raise BudgetExceededError(
                "wall-clock budget exhausted",
                best_lower=s,
                nodes=enumerated,
            )
        code, found, nodes = tc.scan(s, budget)
        enumerated += nodes
        if code == K.REFUSED:
            raise BudgetExceededError(
                f"scan node budget exhausted at |D|={s}",
                best_lower=s,
                nodes=enumerated,
            )
        if code == K.NONE:
            return s, witness, enumerated
        witness = found
        s += 1


def _stat(
    g: Graph,
    kind: str,
    t: int,
    value: int,
    witness: np.ndarray | None,
    started: float,
    enumerated: int,
    root: int | None = None,
) -> PebblingStat:
    return PebblingStat(
        kind=kind,
        t=t,
        value=value,
        witness=None
        if witness is None
        else PebbleDistribution(tuple(int(x) for x in witness)),
        elapsed_ms=(time.perf_counter() - started) * 1000.0,
        enumerated_count=enumerated,
        graph6=serialize_graph6(g),
        root=root,
    )


def rooted_pebbling_number(
    g: Graph, r: int, t: int = 1, budget: Budget = Budget()
) -> PebblingStat:
    """Smallest k such that every k-pebble distribution can deliver t pebbles
    to the root r."""
    started = time.perf_counter()
    _check_budget(g, t, budget)
    if not (0 <= r < g.n):
        raise ValueError(f"root {r} out of range")
    deadline = budget.deadline(time.monotonic())
    ga = _GraphArrays(g, budget)
    target = np.zeros(g.n, dtype=np.int64)
    target[r] = t
    value, witness, enumerated = _min_size_for_target(ga, target, budget, deadline)
    return _stat(g, "pi_t_rooted", t, value, witness, started, enumerated, root=r)


def pebbling_number(g: Graph, t: int = 1, budget: Budget = Budget()) -> PebblingStat:
    """The t-fold pebbling number: worst root, worst distribution."""
    started = time.perf_counter()
    _check_budget(g, t, budget)
    deadline = budget.deadline(time.monotonic())
    ga = _GraphArrays(g, budget)
    best_value, best_witness = -1, None
    enumerated = 0
    for orbit in vertex_orbits(g):
        r = orbit[0]
        target = np.zeros(g.n, dtype=np.int64)
        target[r] = t
        value, witness, count = _min_size_for_target(ga, target, budget, deadline)
        enumerated += count
        if value > best_value:
            best_value, best_witness = value, witness
    return _stat(g, "pi_t", t, best_value, best_witness, started, enumerated)


def is_solvable_distribution(
    g: Graph, D: PebbleDistribution, t: int = 1, budget: Budget = Budget()
) -> bool:
    """True iff D can deliver t pebbles to every vertex, decided by the
    fast kernels (exact tree and cycle oracles, pruned search elsewhere)."""
    if t < 1:
        raise ValueError("t must be >= 1")
    if len(D) != g.n:
        raise ValueError("distribution length does not match graph order")
    ga = _GraphArrays(g, budget)
    arr = D.as_array()
    for r in range(g.n):
        target = np.zeros(g.n, dtype=np.int64)
        target[r] = t
        if not _TargetContext(ga, target, budget).decide(arr):
            return False
    return True


def max_unsolvable_witness(
    g: Graph, t: int = 1, budget: Budget = Budget()
) -> PebbleDistribution:
    """A distribution of size pi_t(G) - 1 that is not t-fold solvable,
    re-verified against the decision kernels."""
    stat = pebbling_number(g, t, budget)
    witness = stat.witness
    assert witness is not None and witness.size == stat.value - 1
    if is_solvable_distribution(g, witness, t, budget):
        raise AssertionError("witness unexpectedly t-fold solvable")
    return witness


def optimal_pebbling_number(
    g: Graph, t: int = 1, budget: Budget = Budget()
) -> PebblingStat:
    """Smallest size of any t-fold solvable distribution, with a minimal
    solvable witness. Ascending size, full enumeration per size."""
    started = time.perf_counter()
    _check_budget(g, t, budget)
    deadline = budget.deadline(time.monotonic())
    ga = _GraphArrays(g, budget)
    contexts = []
    for r in range(g.n):
        target = np.zeros(g.n, dtype=np.int64)
        target[r] = t
        contexts.append(_TargetContext(ga, target, budget))
    enumerated = 0
    for k in range(t, budget.max_pebbles + 1):
        if deadline is not None and time.monotonic() > deadline:
            raise BudgetExceededError(
                "wall-clock budget exhausted", best_lower=k, nodes=enumerated
            )
        for comp in compositions(k, g.n):
            enumerated += 1
            arr = np.array(comp, dtype=np.int64)
            if all(tc.decide(arr) for tc in contexts):
                return _stat(
                    g, "pi_star_t", t, k, arr, started, enumerated
                )
    raise BudgetExceededError(
        f"no solvable distribution within max_pebbles={budget.max_pebbles}",
        best_lower=budget.max_pebbles + 1,
        nodes=enumerated,
    )


def _orbit_reps_of_targets(g: Graph, t: int) -> list[tuple[int, ...]]:
    group = automorphisms(g, limit=50_001)
    if len(group) > 50_000:
        group = None
    seen: set[tuple[int, ...]] = set()
    reps: list[tuple[int, ...]] = []
    for comp in compositions(t, g.n):
        if comp in seen:
            continue
        reps.append(comp)
        if group is None:
            seen.add(comp)
            continue
        for sigma in group:
            img = [0] * g.n
            for v in range(g.n):
                img[sigma[v]] = comp[v]
            seen.add(tuple(img))
    return reps


def arbitrary_target_number(
    g: Graph, t: int = 1, budget: Budget = Budget()
) -> PebblingStat:
    """Smallest k such that every k-pebble distribution reaches every target
    of size t (targets range over all weak compositions of t)."""
    started = time.perf_counter()
    _check_budget(g, t, budget)
    deadline = budget.deadline(time.monotonic())
    ga = _GraphArrays(g, budget)
    best_value, best_witness = -1, None
    enumerated = 0
    for rep in _orbit_reps_of_targets(g, t):
        target = np.array(rep, dtype=np.int64)
        value, witness, count = _min_size_for_target(ga, target, budget, deadline)
        enumerated += count
        if value > best_value:
            best_value, best_witness = value, witness
    return _stat(
        g, "pi_arbitrary_target", t, best_value, best_witness, started, enumerated
    )
