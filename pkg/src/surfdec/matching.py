"""Minimum-weight perfect-matching decoder.

Triggered checks of each kind become defect nodes; each defect gets a virtual
partner on the open boundary of its kind (left/right for X-checks, top/bottom
for Z-checks).  Defect-defect edges carry shortest-path weights through the
check lattice, defect-virtual edges the distance to the nearest boundary, and
virtual-virtual edges are free.  An exact blossom matching then selects the
correction chains.  The graph built from Z-checks yields X corrections and
vice versa; a qubit receiving both becomes a Y.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import networkx as nx
import numpy as np

from . import lattice
from .code import RotatedPlanarCode, Syndrome
from .errors import ContractViolationError, InvalidParameterError
from .noise import NoiseModel
from .pauli import PauliOperator

_MIN_WEIGHT = 1e-9  # floor for reweighted edges; keeps shortest paths well-posed


@dataclass(frozen=True)
class DefectGraph:
    """Matching instance for one check kind.

    Nodes 0..k-1 are the defects (triggered checks, ascending within-kind
    index); node k+i is defect i's virtual boundary partner.  ``paths`` maps
    each finite edge to the data-qubit chain realizing its weight.
    """

    kind: str
    defects: tuple[int, ...]
    node_count: int
    edges: dict
    paths: dict

    @property
    def n_defects(self) -> int:
        return len(self.defects)


@dataclass(frozen=True)
class Matching:
    """A perfect matching: unordered node pairs covering every node once."""

    pairs: frozenset
    total_weight: float


def _one_defect_graph(
    code: RotatedPlanarCode,
    kind: str,
    fired_bits: np.ndarray,
    qubit_weights: np.ndarray,
    unit: bool,
) -> DefectGraph:
    graph = lattice.kind_graph(code, kind)
    defects = tuple(int(i) for i in np.flatnonzero(fired_bits))
    k = len(defects)
    edges: dict = {}
    paths: dict = {}
    searches = []
    for check in defects:
        if unit:
            searches.append(lattice.unit_search(code, kind, check))
        else:
            searches.append(lattice.dijkstra(graph, check, qubit_weights))
    for a in range(k):
        dist, pred_node, pred_qubit = searches[a]
        for b in range(a + 1, k):
            edges[(a, b)] = float(dist[defects[b]])
            paths[(a, b)] = lattice.extract_path(pred_node, pred_qubit, defects[a], defects[b])
        virtual = lattice.nearest_virtual(graph, dist)
        edges[(a, k + a)] = float(dist[virtual])
        paths[(a, k + a)] = lattice.extract_path(pred_node, pred_qubit, defects[a], virtual)
    for a, b in itertools.combinations(range(k, 2 * k), 2):
        edges[(a, b)] = 0.0
        paths[(a, b)] = ()
    return DefectGraph(kind=kind, defects=defects, node_count=2 * k, edges=edges, paths=paths)


def build_defect_graphs(
    code: RotatedPlanarCode,
    syn: Syndrome,
    weights: np.ndarray | None = None,
) -> tuple[DefectGraph, DefectGraph]:
    """Build the (X-graph, Z-graph) matching instances for a syndrome.

    ``weights`` are per-qubit edge weights (all positive); None means unit
    weights.  The X-graph pairs triggered X-checks (Z-error detection), the
    Z-graph triggered Z-checks.
    """
    if len(syn.bits) != code.n_x_checks + code.n_z_checks:
        raise InvalidParameterError("syndrome length does not match code")
    unit = weights is None
    if unit:
        weights = np.ones(code.n)
    else:
        weights = np.asarray(weights, dtype=float)
        if weights.shape != (code.n,):
            raise InvalidParameterError("weights must have one entry per data qubit")
        if np.any(weights <= 0.0):
            raise InvalidParameterError("edge weights must be positive")
    x_graph = _one_defect_graph(code, "X", syn.x_bits, weights, unit)
    z_graph = _one_defect_graph(code, "Z", syn.z_bits, weights, unit)
    return x_graph, z_graph


def min_weight_perfect_matching(g: DefectGraph, lexmin: bool = False) -> Matching:
    """Exact minimum-weight perfect matching of a defect graph.

    Solved as a maximum-weight maximum-cardinality matching on negated
    weights (blossom).  The result is deterministic for a fixed graph; with
    ``lexmin=True`` the lexicographically smallest pair set among the optima
    is returned (costs one extra solve per node, meant for small graphs).
    """
    if g.node_count % 2 != 0:
        raise ContractViolationError("perfect matching needs an even node count")
    if g.node_count == 0:
        return Matching(pairs=frozenset(), total_weight=0.0)
    pairs = _blossom(g.edges, range(g.node_count))
    if lexmin:
        pairs = _lexmin_refine(g.edges, g.node_count, _total(g.edges, pairs))
    return Matching(pairs=frozenset(pairs), total_weight=_total(g.edges, pairs))


def _total(edges: dict, pairs) -> float:
    return float(sum(edges[p] for p in pairs))


def _blossom(edges: dict, nodes) -> set:
    nodes = list(nodes)
    graph = nx.Graph()
    graph.add_nodes_from(nodes)
    keep = set(nodes)
    for (a, b), w in edges.items():
        if a in keep and b in keep:
            graph.add_edge(a, b, weight=-w)
    mate = nx.max_weight_matching(graph, maxcardinality=True)
    if len(mate) * 2 != len(nodes):
        raise ContractViolationError("graph admits no perfect matching")
    return {(min(a, b), max(a, b)) for a, b in mate}


def _lexmin_refine(edges: dict, node_count: int, optimum: float) -> set:
    """Fix pairs in lexicographic order, keeping the total weight optimal."""
    tol = 1e-9 * max(1.0, abs(optimum))
    fixed: set = set()
    remaining = list(range(node_count))
    target = optimum
    while remaining:
        a = remaining[0]
        for b in remaining[1:]:
            key = (a, b)
            if key not in edges:
                continue
            rest = [v for v in remaining if v not in key]
            if not rest:
                sub_total = 0.0
            else:
                try:
                    sub_total = _total(edges, _blossom(edges, rest))
                except ContractViolationError:
                    continue
            if edges[key] + sub_total <= target + tol:
                fixed.add(key)
                remaining = rest
                target -= edges[key]
                break
        else:
            raise ContractViolationError("lexicographic refinement failed")
    return fixed


def _apply_paths(part: np.ndarray, g: DefectGraph, matching: Matching) -> None:
    for a, b in sorted(matching.pairs):
        for q in g.paths[(min(a, b), max(a, b))]:
            part[q] ^= 1


def decode_mwpm(
    code: RotatedPlanarCode,
    syn: Syndrome,
    noise: NoiseModel | None = None,
    weights: np.ndarray | tuple | None = None,
) -> PauliOperator:
    """MWPM correction for a syndrome; its syndrome always matches the input.

    By default all qubits are weighted equally (the homogeneous-noise
    setting).  Pass ``weights="probability"`` with a noise model to use
    -log-odds weights per qubit and per kind, or an explicit (for the
    X-graph, for the Z-graph) pair of arrays.
    """
    if isinstance(weights, str):
        if weights != "probability":
            raise InvalidParameterError(f"unknown weight mode {weights!r}")
        if noise is None:
            raise InvalidParameterError("probability weights need a noise model")
        weights = probability_weights(noise)
    if isinstance(weights, tuple):
        w_x_graph, w_z_graph = weights
    else:
        w_x_graph = w_z_graph = weights
    x = np.zeros(code.n, dtype=np.uint8)
    z = np.zeros(code.n, dtype=np.uint8)
    x_graph = _one_defect_graph(code, "X", syn.x_bits, *_norm_weights(code, w_x_graph))
    z_graph = _one_defect_graph(code, "Z", syn.z_bits, *_norm_weights(code, w_z_graph))
    _apply_paths(z, x_graph, min_weight_perfect_matching(x_graph))
    _apply_paths(x, z_graph, min_weight_perfect_matching(z_graph))
    return PauliOperator(x, z)


def _norm_weights(code: RotatedPlanarCode, weights) -> tuple[np.ndarray, bool]:
    if weights is None:
        return np.ones(code.n), True
    weights = np.asarray(weights, dtype=float)
    if weights.shape != (code.n,):
        raise InvalidParameterError("weights must have one entry per data qubit")
    if np.any(weights <= 0.0):
        raise InvalidParameterError("edge weights must be positive")
    return weights, False


def _log_odds(p: np.ndarray) -> np.ndarray:
    p = np.clip(p, 1e-15, 1.0 - 1e-15)
    return np.log((1.0 - p) / p)


def probability_weights(noise: NoiseModel) -> tuple[np.ndarray, np.ndarray]:
    """-log-odds edge weights: (for the X-graph, for the Z-graph).

    The X-graph chains are Z errors (flip probability p_z + p_y); the
    Z-graph chains are X errors (p_x + p_y).
    """
    w_x_graph = np.maximum(_log_odds(noise.p_z + noise.p_y), _MIN_WEIGHT)
    w_z_graph = np.maximum(_log_odds(noise.p_x + noise.p_y), _MIN_WEIGHT)
    return w_x_graph, w_z_graph


def correlated_two_pass(
    code: RotatedPlanarCode,
    syn: Syndrome,
    noise: NoiseModel,
    weights: np.ndarray | None = None,
) -> PauliOperator:
    """Two-pass MWPM using the X/Z correlation carried by Y errors.

    The first pass decodes X corrections from the Z-graph with the base
    weights.  The second pass reweights the X-graph per qubit by the relative
    log-odds of a Z error conditioned on the first pass: flagged qubits use
    P(Z|X=1) = p_y / (p_x + p_y), others P(Z|X=0) = p_z.  Degenerate
    conditionals (zero denominators, probabilities at 0, 1 or >= 1/2) leave
    the base weight untouched, so a channel with p_y = 0 reduces to plain
    decode_mwpm.
    """
    base, unit = _norm_weights(code, weights)
    z_graph = _one_defect_graph(code, "Z", syn.z_bits, base, unit)
    x_corr = np.zeros(code.n, dtype=np.uint8)
    _apply_paths(x_corr, z_graph, min_weight_perfect_matching(z_graph))

    ratio = np.ones(code.n)
    denom = noise.p_x + noise.p_y
    flagged = x_corr.astype(bool)
    for q in np.flatnonzero(flagged):
        if denom[q] <= 0.0:
            continue  # zero denominator: fall back to the base weight
        q_cond = noise.p_y[q] / denom[q]
        p_base = noise.p_z[q]
        if not (0.0 < q_cond < 1.0 and 0.0 < p_base < 0.5):
            continue  # degenerate conditional: reweighting stays inert
        ratio[q] = math.log((1.0 - q_cond) / q_cond) / math.log((1.0 - p_base) / p_base)
    pass2 = np.maximum(base * ratio, _MIN_WEIGHT)

    x_graph = _one_defect_graph(code, "X", syn.x_bits, pass2, bool(np.all(pass2 == 1.0)))
    z_corr = np.zeros(code.n, dtype=np.uint8)
    _apply_paths(z_corr, x_graph, min_weight_perfect_matching(x_graph))
    return PauliOperator(x_corr, z_corr)
