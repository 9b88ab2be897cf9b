"""Search kernels over integer pebble-count vectors.

Everything here is written as plain Python over numpy arrays with explicit
loops, then compiled with numba at import time. Setting PEBBLE_PURE_PYTHON=1
in the environment skips compilation and runs the identical source
interpreted; benchmarks/bench_kernels.py compares the two backends.

Weights are kept integral throughout: with maxd the graph diameter,
W[v, a] = 2**(maxd - dist(v, a)), so "weight(c, a) >= need" comparisons are
exact int64 arithmetic. All counts in play are small enough that nothing
approaches overflow.

Return codes shared by the deciders and scans: 1 solvable/found, 0 not,
-1 budget refused.
"""
from __future__ import annotations

import os

import numpy as np

PURE_PYTHON = os.environ.get("PEBBLE_PURE_PYTHON", "") == "1"

if not PURE_PYTHON:
    try:
        from numba import njit as _njit
    except ImportError:  # pragma: no cover - numba is a hard dep, but be safe
        PURE_PYTHON = True


def _maybe_jit(fn):
    if PURE_PYTHON:
        return fn
    return _njit(cache=True)(fn)


FOUND = 1
NONE = 0
REFUSED = -1

# multiplicative hash constant: odd, fits in int64, low 63 bits match between
# wrapped int64 math (numba) and unbounded ints (pure python) after masking
_HASH_C = 0x27BB2EE687B0B0FD
_MASK63 = (1 << 63) - 1


@_maybe_jit
def tree_deliver_max(torder, tparent, troot, c):
    """Max pebbles deliverable to troot on a tree by greedy upward folding.

    torder lists vertices by decreasing depth (root last). Exact on trees:
    flows on bridges never pay to cross both ways, so folding toward the root
    loses nothing.
    """
    n = c.shape[0]
    carry = np.zeros(n, dtype=np.int64)
    for i in range(n):
        v = torder[i]
        if v == troot:
            return c[v] + carry[v]
        p = tparent[v]
        carry[p] += (c[v] + carry[v]) // 2
    return np.int64(0)


@_maybe_jit
def tree_multi_feasible(torder, tparent, troot, c, target):
    """Decide whether c covers the target distribution on a tree.

    Per vertex (deepest first) the signed surplus toward the parent is
    slack // 2 when nonnegative; a negative slack means the parent must push
    that many pebbles down at double cost. Exact: flow cancellation lets each
    tree edge carry flow in one direction only.
    """
    n = c.shape[0]
    gain = np.zeros(n, dtype=np.int64)
    need2 = np.zeros(n, dtype=np.int64)
    for i in range(n):
        v = torder[i]
        slack = c[v] + gain[v] - need2[v] - target[v]
        if v == troot:
            return 1 if slack >= 0 else 0
        p = tparent[v]
        if slack >= 0:
            gain[p] += slack // 2
        else:
            need2[p] += -2 * slack
    return 0


@_maybe_jit
def cycle_feasible(cycpos, c, target):
    """Decide whether c covers target on a cycle (vertices in ring order
    cycpos[0], cycpos[1], ..., wrapping back to cycpos[0]).

    For each candidate signed flow z on the wrap edge, propagate the maximal
    feasible signed flow along the path edges: each balance constraint is
    monotone increasing in the incoming flow and decreasing in the outgoing
    one, so the greedy maximal trajectory dominates every other choice. Edge
    flows never need to exceed the total pebble count.
    """
    n = c.shape[0]
    total = np.int64(0)
    for i in range(n):
        total += c[i]
    # try z = 0, 1, -1, 2, -2, ... so solvable instances exit early
    for step in range(2 * total + 1):
        z = (step + 1) // 2
        if step % 2 == 0:
            z = -z
        # prev holds the signed flow arriving from the previous ring edge;
        # the wrap edge plays that role for position 0 and is the fixed
        # outgoing edge for position n-1
        ok = True
        prev = z
        for i in range(n):
            v = cycpos[i]
            base = c[v] - target[v]
            if prev >= 0:
                base += prev
            else:
                base += 2 * prev  # sending |prev| backward costs double
            if i == n - 1:
                if z >= 0:
                    base -= 2 * z  # pays for the wrap send
                else:
                    base -= z  # receives |z| over the wrap edge
                if base < 0:
                    ok = False
                break
            # choose maximal signed flow s toward position i+1
            if base >= 0:
                prev = base // 2
            else:
                prev = base
        if ok:
            return 1
    return 0


@_maybe_jit
def _pack(c, base, n):
    key = np.int64(0)
    for v in range(n - 1, -1, -1):
        key = key * base + c[v]
    return key


@_maybe_jit
def _memo_has(keys, stamps, epoch, key):
    cap = keys.shape[0]
    # int() lifts numpy scalars to unbounded ints interpreted, so the wrap
    # stays silent; compiled int64 math wraps to the same masked bits
    h = ((int(key) + 1) * _HASH_C) & _MASK63
    i = h & (cap - 1)
    while True:
        if stamps[i] != epoch:
            return 0
        if keys[i] == key + 1:
            return 1
        i = (i + 1) & (cap - 1)


@_maybe_jit
def _memo_add(keys, stamps, epoch, key, used):
    """Returns 0 on success, -1 when the table is too loaded to accept more."""
    cap = keys.shape[0]
    if used[0] * 10 >= cap * 7:
        return -1
    h = ((int(key) + 1) * _HASH_C) & _MASK63
    i = h & (cap - 1)
    while True:
        if stamps[i] != epoch:
            stamps[i] = epoch
            keys[i] = key + 1
            used[0] += 1
            return 0
        if keys[i] == key + 1:
            return 0
        i = (i + 1) & (cap - 1)


@_maybe_jit
def dfs_decide(
    n,
    ef,
    et,
    target,
    anchors,
    wint,
    tneed,
    c0,
    base,
    memo_keys,
    memo_stamps,
    epoch,
    memo_used,
    node_box,
):
    """Exact reachability: can some move sequence from c0 reach a distribution
    containing target? Iterative DFS over the shrinking-count DAG with a
    failed-state memo and per-anchor weight pruning.

    node_box[0] carries the remaining node budget (shared across calls).
    """
    nedges = ef.shape[0]
    total = np.int64(0)
    deficient = False
    for v in range(n):
        total += c0[v]
        if c0[v] < target[v]:
            deficient = True
    if not deficient:
        return FOUND
    for a in range(anchors.shape[0]):
        w = np.int64(0)
        av = anchors[a]
        for v in range(n):
            w += c0[v] * wint[v, av]
        if w < tneed[a]:
            return NONE
    depth_cap = int(total) + 2
    stack = np.zeros((depth_cap, n), dtype=np.int64)
    cursor = np.zeros(depth_cap, dtype=np.int64)
    for v in range(n):
        stack[0, v] = c0[v]
    cursor[0] = 0
    depth = 0
    while depth >= 0:
        m = cursor[depth]
        if m == nedges:
            # fully explored, target unreachable from here: memoize and pop
            key = _pack(stack[depth], base, n)
            if _memo_add(memo_keys, memo_stamps, epoch, key, memo_used) < 0:
                return REFUSED
            depth -= 1
            continue
        cursor[depth] += 1
        v = ef[m]
        if stack[depth, v] < 2:
            continue
        u = et[m]
        node_box[0] -= 1
        if node_box[0] < 0:
            return REFUSED
        # apply the move into the next frame
        nd = depth + 1
        for x in range(n):
            stack[nd, x] = stack[depth, x]
        stack[nd, v] -= 2
        stack[nd, u] += 1
        # containment
        done = True
        for x in range(n):
            if stack[nd, x] < target[x]:
                done = False
                break
        if done:
            return FOUND
        # weight pruning per anchor
        pruned = False
        for a in range(anchors.shape[0]):
            av = anchors[a]
            w = np.int64(0)
            for x in range(n):
                w += stack[nd, x] * wint[x, av]
            if w < tneed[a]:
                pruned = True
                break
        if pruned:
            continue
        key = _pack(stack[nd], base, n)
        if _memo_has(memo_keys, memo_stamps, epoch, key):
            continue
        cursor[nd] = 0
        depth = nd
    return NONE


@_maybe_jit
def _decide_solvable(
    counts,
    kind,
    n,
    target,
    anchors,
    wint,
    tneed,
    captab,
    torder,
    tparent,
    troot,
    gorders,
    gparents,
    groots,
    cycpos,
    ef,
    et,
    base,
    memo_keys,
    memo_stamps,
    epoch,
    memo_used,
    dfs_box,
):
    """1 if counts covers target, 0 if not, -1 refused. Exact for every kind:
    trees and cycles by their closed-form oracles, general graphs by cheap
    accepts (cap / spanning-tree folds) backed by the DFS decider."""
    if kind == 1:
        return tree_multi_feasible(torder, tparent, troot, counts, target)
    if kind == 2:
        return cycle_feasible(cycpos, counts, target)
    # containment
    contained = True
    for v in range(n):
        if counts[v] < target[v]:
            contained = False
            break
    if contained:
        return FOUND
    # necessary weight condition: fail -> definitely unsolvable
    for a in range(anchors.shape[0]):
        av = anchors[a]
        w = np.int64(0)
        for v in range(n):
            w += counts[v] * wint[v, av]
        if w < tneed[a]:
            return NONE
    # single-pile sufficiency
    for v in range(n):
        if counts[v] >= captab[v]:
            return FOUND
    # spanning-tree folds are sound accepts (tree edges are graph edges)
    for j in range(groots.shape[0]):
        if tree_multi_feasible(gorders[j], gparents[j], groots[j], counts, target):
            return FOUND
    return dfs_decide(
        n, ef, et, target, anchors, wint, tneed, counts, base,
        memo_keys, memo_stamps, epoch, memo_used, dfs_box,
    )


@_maybe_jit
def witness_scan(
    n,
    kind,
    target,
    anchors,
    wint,
    tneed,
    captab,
    order,
    bestw,
    torder,
    tparent,
    troot,
    gorders,
    gparents,
    groots,
    cycpos,
    ef,
    et,
    s,
    base,
    memo_keys,
    memo_stamps,
    epoch,
    scan_budget,
    dfs_budget,
    witness_out,
):
    """Search for an unsolvable distribution of size exactly s.

    Enumerates weak compositions of s over the vertices in `order` (far from
    the target first, counts descending), pruning every prefix that is
    already solvable with its unassigned tail at zero (solvability is
    monotone under adding pebbles) and short-circuiting whole subtrees where
    the weight bound proves every completion unsolvable.

    Returns (code, scan_nodes, dfs_nodes_used); the witness, when found, is
    written to witness_out.
    """
    memo_used = np.zeros(1, dtype=np.int64)
    dfs_box = np.zeros(1, dtype=np.int64)
    dfs_box[0] = dfs_budget
    counts = np.zeros(n, dtype=np.int64)
    rem_stack = np.zeros(n + 1, dtype=np.int64)
    choice = np.zeros(n + 1, dtype=np.int64)
    nanch = anchors.shape[0]
    prefw = np.zeros((n + 1, nanch), dtype=np.int64)
    nodes = np.int64(0)

    p = 0
    rem_stack[0] = s
    choice[0] = s + 1
    while p >= 0:
        if p == n - 1:
            v = order[p]
            counts[v] = rem_stack[p]
            nodes += 1
            if nodes > scan_budget:
                return REFUSED, nodes, dfs_budget - dfs_box[0]
            code = _decide_solvable(
                counts, kind, n, target, anchors, wint, tneed, captab,
                torder, tparent, troot, gorders, gparents, groots, cycpos,
                ef, et, base, memo_keys, memo_stamps, epoch, memo_used, dfs_box,
            )
            if code == NONE:
                for x in range(n):
                    witness_out[x] = counts[x]
                return FOUND, nodes, dfs_budget - dfs_box[0]
            if code == REFUSED:
                return REFUSED, nodes, dfs_budget - dfs_box[0]
            counts[v] = 0
            p -= 1
            continue
        choice[p] -= 1
        c = choice[p]
        if c < 0:
            counts[order[p]] = 0
            p -= 1
            continue
        v = order[p]
        counts[v] = c
        rem = rem_stack[p] - c
        nodes += 1
        if nodes > scan_budget:
            return REFUSED, nodes, dfs_budget - dfs_box[0]
        for a in range(nanch):
            prefw[p + 1, a] = prefw[p, a] + c * wint[v, anchors[a]]
        # if even the best-placed completion stays under the needed weight at
        # some anchor, every completion is an unsolvable witness
        emitted = False
        for a in range(nanch):
            if prefw[p + 1, a] + rem * bestw[a, p] < tneed[a]:
                counts[order[n - 1]] += rem
                for x in range(n):
                    witness_out[x] = counts[x]
                emitted = True
                break
        if emitted:
            return FOUND, nodes, dfs_budget - dfs_box[0]
        # a solvable prefix only gets more solvable as the tail is filled in
        code = _decide_solvable(
            counts, kind, n, target, anchors, wint, tneed, captab,
            torder, tparent, troot, gorders, gparents, groots, cycpos,
            ef, et, base, memo_keys, memo_stamps, epoch, memo_used, dfs_box,
        )
        if code == REFUSED:
            return REFUSED, nodes, dfs_budget - dfs_box[0]
        if code == FOUND:
            continue
        p += 1
        rem_stack[p] = rem
        choice[p] = rem + 1
    return NONE, nodes, dfs_budget - dfs_box[0]
