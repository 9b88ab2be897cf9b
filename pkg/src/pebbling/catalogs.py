"""Access to the committed graph catalogs.

Catalogs are fixtures generated offline (tools/gen_catalogs.py) and shipped
with the package; nothing here generates graphs at runtime.
"""
from __future__ import annotations

from importlib import resources

from pebbling.graphs import Graph, parse_graph6

__all__ = ["catalog_names", "load_catalog"]

_FILES = {
    "trees_up_to_8": "trees_up_to_8.g6",
    "connected_up_to_6": "connected_up_to_6.g6",
}


def catalog_names() -> list[str]:
    return sorted(_FILES)


def load_catalog(name: str, *, max_n: int | None = None) -> list[Graph]:
    """All graphs in the named catalog, optionally truncated to order <= max_n."""
    if name not in _FILES:
        raise ValueError(f"unknown catalog {name!r}; have {catalog_names()}")
    text = (
        resources.files("pebbling").joinpath("data", _FILES[name]).read_text("ascii")
    )
    graphs = [parse_graph6(line) for line in text.splitlines() if line.strip()]
    if max_n is not None:
        graphs = [g for g in graphs if g.n <= max_n]
    return graphs
