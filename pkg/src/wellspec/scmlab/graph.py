"""DAG utilities on networkx graphs."""

from typing import Iterable, Set

import networkx as nx

from ..errors import InputError


def _node_set(dag: nx.DiGraph, nodes: Iterable[str], label: str) -> Set[str]:
    result = set(nodes)
    unknown = sorted(str(v) for v in result if v not in dag)
    if unknown:
        raise InputError(f"unknown nodes in {label}: {unknown}")
    return result


def d_separated(dag: nx.DiGraph, a: Iterable[str], b: Iterable[str], c: Iterable[str]) -> bool:
    """Whether ``a`` and ``b`` are d-separated given ``c`` in ``dag``."""
    a_set = _node_set(dag, a, "A")
    b_set = _node_set(dag, b, "B")
    c_set = _node_set(dag, c, "C")
    if a_set & b_set or a_set & c_set or b_set & c_set:
        raise InputError("node sets must be disjoint")
    if not a_set or not b_set:
        return True
    if hasattr(nx, "is_d_separator"):
        return bool(nx.is_d_separator(dag, a_set, b_set, c_set))
    return bool(nx.d_separated(dag, a_set, b_set, c_set))


def check_acyclic(dag: nx.DiGraph) -> None:
    if not nx.is_directed_acyclic_graph(dag):
        cycle = nx.find_cycle(dag)
        raise InputError(f"graph is not acyclic: cycle through {[u for u, _ in cycle]}")
