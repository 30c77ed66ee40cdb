"""Union-find decoder: syndrome validation by cluster growth, then peeling.

Each check kind is handled on its check-lattice graph.  Triggered checks seed
odd clusters; every round, all clusters that are still odd and away from the
boundary absorb one full layer of incident data-qubit edges, merging through
a union-find structure.  Erased qubits are absorbed before the first round.
A cluster stops growing once its parity is even or it contains a virtual
boundary node.  The absorbed region is then treated as an erasure and peeled
leaf-by-leaf over a spanning forest, emitting the correction.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass

import numpy as np

from . import lattice
from .code import RotatedPlanarCode, Syndrome
from .errors import ContractViolationError, InvalidParameterError
from .noise import NoiseModel
from .pauli import PauliOperator

_KIND_OF_PART = {"Z": "x", "X": "z"}  # Z-checks recover the x correction part


class _KindClusters:
    """Union-find state over one kind graph (checks + virtual nodes)."""

    def __init__(self, graph: lattice.KindGraph, fired: np.ndarray):
        n = graph.n_nodes
        self.graph = graph
        self.parent = list(range(n))
        self.rank = [0] * n
        self.parity = [0] * n
        self.boundary = [False] * n
        self.members = [[v] for v in range(n)]
        self.absorbed = np.zeros(len(graph.edge_of_qubit), dtype=bool)
        self.fired = np.zeros(n, dtype=np.uint8)
        self.fired[: graph.m] = fired
        for v in range(graph.m):
            self.parity[v] = int(fired[v])
        for v in range(graph.m, n):
            self.boundary[v] = True

    def find(self, v: int) -> int:
        root = v
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[v] != root:  # path compression
            self.parent[v], v = root, self.parent[v]
        return root

    def union(self, a: int, b: int) -> int:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return ra
        if self.rank[ra] < self.rank[rb]:
            ra, rb = rb, ra
        elif self.rank[ra] == self.rank[rb]:
            self.rank[ra] += 1
        self.parent[rb] = ra
        self.parity[ra] ^= self.parity[rb]
        self.boundary[ra] = self.boundary[ra] or self.boundary[rb]
        self.members[ra].extend(self.members[rb])
        self.members[rb] = []
        return ra

    def absorb(self, qubit: int) -> None:
        if not self.absorbed[qubit]:
            self.absorbed[qubit] = True
            u, v = self.graph.edge_of_qubit[qubit]
            self.union(u, v)

    def is_active(self, root: int) -> bool:
        return bool(self.parity[root]) and not self.boundary[root]

    def roots(self) -> list[int]:
        return [v for v in range(self.graph.n_nodes) if self.find(v) == v]

    def validate(self) -> None:
        """Grow all active clusters in synchronized full-edge rounds."""
        while True:
            snapshot = [
                (root, list(self.members[root]))
                for root in self.roots()
                if self.is_active(root)
            ]
            if not snapshot:
                return
            boundary_before = [r for r in range(self.graph.n_nodes)
                               if self.boundary[self.find(r)]]
            for _, nodes in snapshot:
                for u in nodes:
                    for _, q in self.graph.adj[u]:
                        self.absorb(q)
            # Boundary contact is sticky: freezing by the boundary never reverts.
            for r in boundary_before:
                assert self.boundary[self.find(r)]


@dataclass(frozen=True)
class ClusterForest:
    """Validation output: one union-find cluster state per check kind."""

    kinds: dict

    def state(self, kind: str) -> _KindClusters:
        return self.kinds[kind]


@dataclass(frozen=True)
class _Tree:
    root: int
    parent: dict  # node -> (parent node, qubit of the connecting edge)
    nodes: tuple


@dataclass(frozen=True)
class SpanningForest:
    """Per-kind spanning trees over the validated clusters."""

    kinds: dict  # kind -> tuple of _Tree


def syndrome_validation(
    code: RotatedPlanarCode,
    syn: Syndrome,
    erased: np.ndarray | None = None,
) -> ClusterForest:
    """Absorb erasures, then grow clusters until all are even or boundary-tied."""
    if len(syn.bits) != code.n_x_checks + code.n_z_checks:
        raise InvalidParameterError("syndrome length does not match code")
    if erased is None:
        erased = np.zeros(code.n, dtype=np.uint8)
    erased = np.asarray(erased)
    if erased.shape != (code.n,):
        raise InvalidParameterError("erasure vector must have one bit per qubit")

    kinds = {}
    for kind, fired in (("X", syn.x_bits), ("Z", syn.z_bits)):
        state = _KindClusters(lattice.kind_graph(code, kind), fired)
        for q in np.flatnonzero(erased):
            state.absorb(int(q))
        state.validate()
        kinds[kind] = state
    return ClusterForest(kinds=kinds)


def spanning_forest(code: RotatedPlanarCode, clusters: ClusterForest) -> SpanningForest:
    """Deterministic BFS spanning trees of every cluster that has edges.

    The root is the smallest virtual node when the cluster touches the
    boundary, otherwise its smallest node.
    """
    kinds = {}
    for kind, state in clusters.kinds.items():
        graph = state.graph
        node_sets: dict[int, list[int]] = {}
        for root in state.roots():
            members = state.members[root]
            if len(members) > 1:
                node_sets[root] = sorted(members)
        trees = []
        for root in sorted(node_sets):
            members = node_sets[root]
            in_cluster = set(members)
            virtuals = [v for v in members if graph.is_virtual(v)]
            start = virtuals[0] if virtuals else members[0]
            parent: dict[int, tuple[int, int]] = {}
            seen = {start}
            order = [start]
            frontier = [start]
            while frontier:
                next_frontier = []
                for u in frontier:
                    for v, q in sorted(graph.adj[u]):
                        if v in in_cluster and state.absorbed[q] and v not in seen:
                            seen.add(v)
                            parent[v] = (u, q)
                            order.append(v)
                            next_frontier.append(v)
                frontier = next_frontier
            trees.append(_Tree(root=start, parent=parent, nodes=tuple(order)))
        kinds[kind] = tuple(trees)
    return SpanningForest(kinds=kinds)


def _peel_tree(tree: _Tree, graph: lattice.KindGraph, fired: np.ndarray, part: np.ndarray) -> None:
    if len(tree.parent) != len(tree.nodes) - 1:
        raise ContractViolationError("spanning tree is malformed (cycle or split)")
    children = {v: 0 for v in tree.nodes}
    for _, (p, _) in tree.parent.items():
        children[p] += 1

    flip = {v: int(fired[v]) for v in tree.nodes}
    leaves = [v for v in tree.nodes if children[v] == 0 and v != tree.root]
    heapq.heapify(leaves)
    while leaves:
        u = heapq.heappop(leaves)
        p, q = tree.parent[u]
        if flip[u] and not graph.is_virtual(u):
            part[q] ^= 1
            flip[p] ^= 1
        children[p] -= 1
        if children[p] == 0 and p != tree.root:
            heapq.heappush(leaves, p)
    if flip[tree.root] and not graph.is_virtual(tree.root):
        raise ContractViolationError("peeling left a defect at a non-virtual root")


def peel(code: RotatedPlanarCode, forest: SpanningForest, syn: Syndrome) -> PauliOperator:
    """Peel every spanning tree leaf-to-root, reading off the correction."""
    validation = {"X": syn.x_bits, "Z": syn.z_bits}
    parts = {"x": np.zeros(code.n, dtype=np.uint8), "z": np.zeros(code.n, dtype=np.uint8)}
    for kind, trees in forest.kinds.items():
        graph = lattice.kind_graph(code, kind)
        fired = np.zeros(graph.n_nodes, dtype=np.uint8)
        fired[: graph.m] = validation[kind]
        part = parts[_KIND_OF_PART[kind]]
        for tree in trees:
            _peel_tree(tree, graph, fired, part)
    return PauliOperator(parts["x"], parts["z"])


def decode_uf(
    code: RotatedPlanarCode,
    syn: Syndrome,
    noise: NoiseModel | None = None,
    erased: np.ndarray | None = None,
) -> PauliOperator:
    """Union-find decode; ``noise`` is accepted for interface symmetry only.

    Growth is unweighted; the channel enters through the sampled erasure
    pattern, which is absorbed before the first growth round.
    """
    clusters = syndrome_validation(code, syn, erased)
    forest = spanning_forest(code, clusters)
    return peel(code, forest, syn)
