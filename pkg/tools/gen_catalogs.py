"""Regenerate the committed graph catalogs under src/pebbling/data/.

Run offline by developers only; the package and CLI always ingest the
committed .g6 files, never generate them. Uses networkx (a dev-only
dependency) as an independent source of the isomorphism classes; the counts
are pinned here and re-pinned in the test suite, so a regeneration that
drifts fails loudly.
"""
from __future__ import annotations

import pathlib
import sys

import networkx as nx

sys.path.insert(0, str(pathlib.Path(__file__).resolve().parents[1] / "src"))

from pebbling.graphs import Graph, serialize_graph6  # noqa: E402

DATA = pathlib.Path(__file__).resolve().parents[1] / "src" / "pebbling" / "data"

TREE_COUNTS = {1: 1, 2: 1, 3: 1, 4: 2, 5: 3, 6: 6, 7: 11, 8: 23}
CONNECTED_COUNTS = {1: 1, 2: 1, 3: 2, 4: 6, 5: 21, 6: 112}


def convert(nxg) -> Graph:
    mapping = {v: i for i, v in enumerate(sorted(nxg.nodes()))}
    return Graph(
        nxg.number_of_nodes(),
        [(mapping[u], mapping[v]) for u, v in nxg.edges()],
    )


def gen_trees() -> list[str]:
    lines = []
    for n, want in TREE_COUNTS.items():
        if n == 1:
            batch = [Graph(1, [])]
        elif n == 2:
            batch = [Graph(2, [(0, 1)])]
        else:
            batch = [convert(t) for t in nx.nonisomorphic_trees(n)]
        assert len(batch) == want, (n, len(batch), want)
        lines.extend(sorted(serialize_graph6(g) for g in batch))
    return lines


def gen_connected() -> list[str]:
    by_n: dict[int, list[Graph]] = {n: [] for n in CONNECTED_COUNTS}
    for nxg in nx.graph_atlas_g()[1:]:
        n = nxg.number_of_nodes()
        if n in by_n and n > 0 and nx.is_connected(nxg):
            by_n[n].append(convert(nxg))
    lines = []
    for n, want in CONNECTED_COUNTS.items():
        batch = by_n[n]
        assert len(batch) == want, (n, len(batch), want)
        lines.extend(sorted(serialize_graph6(g) for g in batch))
    return lines


def main() -> None:
    DATA.mkdir(parents=True, exist_ok=True)
    (DATA / "trees_up_to_8.g6").write_text("\n".join(gen_trees()) + "\n")
    (DATA / "connected_up_to_6.g6").write_text("\n".join(gen_connected()) + "\n")
    print(f"wrote catalogs to {DATA}")


if __name__ == "__main__":
    main()
