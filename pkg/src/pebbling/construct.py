"""Extremal diameter-d graphs and hand-built hard distributions for them.

For even diameter 2k the graph is a spider: a hub with floor((n-1)/k) legs
of length k plus one shorter remainder leg when the counts do not divide
evenly. For odd diameter 2k+1 it is a clique on floor(n/(k+1)) vertices
with a length-k path hanging off each clique vertex, plus one shorter
remainder path off the lowest-index clique vertex. Where that recipe
cannot realize the requested diameter the builder rejects the pair, naming
the diameter it did achieve.
"""

from __future__ import annotations

from dataclasses import dataclass

from .engine import PebbleDistribution, max_pebbles_to
from .graphs import Graph, diameter


@dataclass(frozen=True)
class ExtremalSpec:
    """Resolved build parameters for one (n, d) request."""

    n: int
    d: int
    leg_length: int  # floor(d / 2)
    clique_size: int | None  # odd diameter only
    legs: int  # number of full-length legs
    remainder_length: int  # 0 when nothing is left over

    @classmethod
    def plan(cls, n: int, d: int) -> "ExtremalSpec":
        if n < 1 or d < 1:
            raise ValueError(f"need n >= 1 and d >= 1, got n={n}, d={d}")
        if d % 2 == 0:
            k = d // 2
            legs = (n - 1) // k
            return cls(n, d, k, None, legs, (n - 1) - k * legs)
        k = (d - 1) // 2
        m = n // (k + 1)
        return cls(n, d, k, m, m, n - m * (k + 1))

    @property
    def odd(self) -> bool:
        return self.d % 2 == 1


def _leg(edges: list[tuple[int, int]], anchor: int, start: int, length: int) -> int:
    """Append a path of `length` new vertices hanging off `anchor`; returns
    the next free vertex index."""
    prev = anchor
    for v in range(start, start + length):
        edges.append((prev, v))
        prev = v
    return start + length


def build_gnd(n: int, d: int) -> Graph:
    """The extremal n-vertex candidate of diameter d.

    Vertices are laid out deterministically: hub (or clique block) first,
    then each full leg in order, then the remainder leg, so leg tips sit at
    predictable indices. The result is measured after construction and the
    pair is rejected unless the diameter comes out exactly d.
    """
    spec = ExtremalSpec.plan(n, d)
    edges: list[tuple[int, int]] = []
    if spec.clique_size is None:
        nxt = 1
        for _ in range(spec.legs):
            nxt = _leg(edges, 0, nxt, spec.leg_length)
        if spec.remainder_length:
            nxt = _leg(edges, 0, nxt, spec.remainder_length)
    else:
        m = spec.clique_size
        if m == 0:
            raise ValueError(
                f"n={n} is too small for diameter {d}: the clique would be empty"
            )
        edges = [(u, v) for u in range(m) for v in range(u + 1, m)]
        nxt = m
        for c in range(m):
            nxt = _leg(edges, c, nxt, spec.leg_length)
        if spec.remainder_length:
            nxt = _leg(edges, 0, nxt, spec.remainder_length)
    g = Graph(n, edges)
    achieved = diameter(g)
    if achieved != d:
        raise ValueError(
            f"recipe for n={n}, d={d} achieves diameter {achieved}; "
            "the pair is not realizable"
        )
    return g


def _full_leg_tips(spec: ExtremalSpec) -> list[int]:
    # Leg length 0 happens only at d=1, where the clique vertices themselves
    # are the tips.
    m = spec.clique_size
    assert m is not None
    if spec.leg_length == 0:
        return list(range(m))
    return [m + c * spec.leg_length + (spec.leg_length - 1) for c in range(m)]


def unsolvable_witness_odd(n: int, d: int) -> tuple[int, PebbleDistribution]:
    """A root and a distribution that cannot deliver a pebble to it, built on
    the odd-diameter extremal graph.

    The far tip of a longest path gets 2^d - 1 pebbles and every full-leg
    tip off that path gets 2^(k+1) - 1. Only the designated full legs
    count as tips: a remainder leg of the same length must stay empty, else
    the two legs sharing a clique vertex combine and the distribution
    becomes solvable. Unsolvability is re-checked by the move engine.
    """
    if d % 2 == 0:
        raise ValueError("witness construction needs an odd diameter")
    g = build_gnd(n, d)
    spec = ExtremalSpec.plan(n, d)
    tips = _full_leg_tips(spec)
    k = spec.leg_length
    root, far = tips[0], tips[1]
    assert int(g.distances[root, far]) == d
    counts = [0] * n
    counts[far] = (1 << d) - 1
    for v in tips[2:]:
        counts[v] = (1 << (k + 1)) - 1
    D = PebbleDistribution(tuple(counts))
    if max_pebbles_to(g, D, root) >= 1:
        raise AssertionError(
            f"witness for n={n}, d={d} unexpectedly reaches root {root}"
        )
    return root, D


def antipodal_witness(g: Graph, t: int) -> tuple[int, PebbleDistribution]:
    """A root and a one-vertex pile of 2^diameter * t - 1 pebbles that falls
    one short of delivering t to it; the pair realizing the diameter is
    chosen lowest-index first. Verified by the move engine."""
    if t < 1:
        raise ValueError(f"t must be >= 1, got {t}")
    g.require_connected()
    dist = g.distances
    d = int(dist.max())
    src, root = next(
        (u, v)
        for u in range(g.n)
        for v in range(g.n)
        if int(dist[u, v]) == d
    )
    D = PebbleDistribution.point(g.n, src, (1 << d) * t - 1)
    delivered = max_pebbles_to(g, D, root)
    if delivered >= t:
        raise AssertionError(
            f"pile of {D.size} on {src} delivers {delivered} >= {t} to {root}"
        )
    return root, D
