"""Per-kind check-lattice graphs and shortest paths.

For one check kind the lattice graph has a node per check of that kind plus
one virtual node per boundary-exit qubit (a qubit covered by a single check
of the kind).  Every data qubit is exactly one edge: either between the two
checks covering it or between its single check and its virtual node.  Error
chains of the opposite Pauli type are walks in this graph, which is what the
matching, union-find and chain-building routines all operate on.
"""

from __future__ import annotations

import heapq
import weakref
from dataclasses import dataclass

import numpy as np

from .code import RotatedPlanarCode
from .errors import InvalidParameterError


@dataclass(frozen=True, eq=False)
class KindGraph:
    kind: str
    m: int        # number of real checks (nodes 0..m-1)
    n_nodes: int  # real checks + virtual boundary nodes
    adj: tuple    # adj[node] = tuple of (neighbor, qubit)
    edge_of_qubit: tuple        # qubit -> (u, v) with u < v
    exit_qubit_of_virtual: dict  # virtual node -> its boundary qubit

    def is_virtual(self, node: int) -> bool:
        return node >= self.m


_graph_cache: "weakref.WeakKeyDictionary" = weakref.WeakKeyDictionary()
_search_cache: "weakref.WeakKeyDictionary" = weakref.WeakKeyDictionary()


def kind_graph(code: RotatedPlanarCode, kind: str) -> KindGraph:
    """The check-lattice graph for one kind, cached per code."""
    per_code = _graph_cache.setdefault(code, {})
    if kind not in per_code:
        cover = code.qubit_cover[kind]
        m = code.h_x.shape[0] if kind == "X" else code.h_z.shape[0]
        adj: list[list[tuple[int, int]]] = [[] for _ in range(m)]
        edge_of_qubit = []
        exit_qubit_of_virtual = {}
        next_virtual = m
        for q in range(code.n):
            a, b = int(cover[q, 0]), int(cover[q, 1])
            if b < 0:
                b = next_virtual
                exit_qubit_of_virtual[b] = q
                adj.append([])
                next_virtual += 1
            adj[a].append((b, q))
            adj[b].append((a, q))
            edge_of_qubit.append((min(a, b), max(a, b)))
        per_code[kind] = KindGraph(
            kind=kind,
            m=m,
            n_nodes=next_virtual,
            adj=tuple(tuple(nbrs) for nbrs in adj),
            edge_of_qubit=tuple(edge_of_qubit),
            exit_qubit_of_virtual=exit_qubit_of_virtual,
        )
    return per_code[kind]


def dijkstra(graph: KindGraph, source: int, qubit_weights: np.ndarray):
    """Single-source shortest paths; virtual nodes absorb (chains end there).

    Ties resolve toward the lowest-index predecessor.  Returns
    (dist, pred_node, pred_qubit) arrays indexed by graph node.
    """
    n = graph.n_nodes
    dist = np.full(n, np.inf)
    pred_node = np.full(n, -1, dtype=np.int64)
    pred_qubit = np.full(n, -1, dtype=np.int64)
    dist[source] = 0.0
    done = np.zeros(n, dtype=bool)
    heap = [(0.0, source)]
    while heap:
        d_u, u = heapq.heappop(heap)
        if done[u]:
            continue
        done[u] = True
        if graph.is_virtual(u) and u != source:
            continue  # no chains through the boundary
        for v, q in graph.adj[u]:
            nd = d_u + qubit_weights[q]
            if nd < dist[v] or (nd == dist[v] and u < pred_node[v]):
                if nd < dist[v]:
                    heapq.heappush(heap, (nd, v))
                dist[v] = nd
                pred_node[v] = u
                pred_qubit[v] = q
    return dist, pred_node, pred_qubit


def unit_search(code: RotatedPlanarCode, kind: str, source: int):
    """Cached unit-weight search from one check node."""
    per_code = _search_cache.setdefault(code, {})
    key = (kind, source)
    if key not in per_code:
        graph = kind_graph(code, kind)
        per_code[key] = dijkstra(graph, source, np.ones(code.n))
    return per_code[key]


def extract_path(pred_node, pred_qubit, source: int, target: int) -> tuple[int, ...]:
    """Qubits along the shortest-path tree branch from source to target."""
    qubits = []
    node = target
    while node != source:
        prev = int(pred_node[node])
        if prev < 0:
            raise InvalidParameterError(f"node {target} unreachable from {source}")
        qubits.append(int(pred_qubit[node]))
        node = prev
    qubits.reverse()
    return tuple(qubits)


def nearest_virtual(graph: KindGraph, dist: np.ndarray) -> int:
    """Closest virtual node, ties to the lowest node index."""
    best = -1
    best_d = np.inf
    for v in range(graph.m, graph.n_nodes):
        if dist[v] < best_d:
            best, best_d = v, dist[v]
    return best
