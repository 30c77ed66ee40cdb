"""Log-domain sum-product decoding with ordered-statistics post-processing.

The CSS structure splits decoding into two binary problems: X-type errors
against the Z-check matrix and Z-type errors against the X-check matrix.
Belief propagation runs a flooding schedule over the Tanner graph; whenever
it fails to reach a syndrome-matching hard decision, OSD re-solves the
syndrome equation over the least-reliable full-rank column basis, optionally
sweeping low-weight free-part candidates (order w).
"""

from __future__ import annotations

import math
import weakref
from dataclasses import dataclass

import numpy as np

from .code import RotatedPlanarCode, Syndrome
from .errors import InvalidParameterError, UnsatisfiableSyndromeError
from .noise import NoiseModel
from .pauli import PauliOperator


@dataclass(frozen=True)
class TannerGraph:
    """Bipartite check/variable adjacency derived from a parity-check matrix."""

    h: np.ndarray
    check_edges: tuple   # per check: array of edge ids (row-major order)
    edge_var: np.ndarray  # edge id -> variable
    edge_check: np.ndarray  # edge id -> check
    by_degree: tuple     # (degree, edge-id matrix of shape (n_checks, degree))

    @classmethod
    def from_matrix(cls, h: np.ndarray) -> "TannerGraph":
        h = np.asarray(h, dtype=np.uint8)
        if h.ndim != 2:
            raise InvalidParameterError("parity-check matrix must be 2-D")
        if not h.any(axis=1).all() or not h.any(axis=0).all():
            raise InvalidParameterError("parity-check matrix has a zero row or column")
        checks, variables = np.nonzero(h)
        edge_check = checks.astype(np.int64)
        edge_var = variables.astype(np.int64)
        check_edges = []
        start = 0
        for j in range(h.shape[0]):
            deg = int(h[j].sum())
            check_edges.append(np.arange(start, start + deg))
            start += deg
        groups = {}
        for j, edges in enumerate(check_edges):
            groups.setdefault(len(edges), []).append(edges)
        by_degree = tuple((deg, np.array(rows)) for deg, rows in sorted(groups.items()))
        return cls(
            h=h,
            check_edges=tuple(check_edges),
            edge_var=edge_var,
            edge_check=edge_check,
            by_degree=by_degree,
        )

    @property
    def n_checks(self) -> int:
        return self.h.shape[0]

    @property
    def n_vars(self) -> int:
        return self.h.shape[1]


class BPState:
    """Mutable message state for one BP run (llr domain)."""

    def __init__(self, graph: TannerGraph, priors: np.ndarray, clamp: float):
        self.graph = graph
        self.clamp = clamp
        self.l_ch = np.log((1.0 - priors) / priors)
        self.var_to_check = self.l_ch[graph.edge_var].copy()
        self.check_to_var = np.zeros(len(graph.edge_var))
        self.l_ap = self.l_ch.copy()
        self.iteration = 0

    def check_update(self, sign: np.ndarray) -> None:
        lim = math.tanh(self.clamp / 2.0)
        t = np.tanh(self.var_to_check / 2.0)
        out = np.empty_like(t)
        for degree, edge_ids in self.graph.by_degree:
            factors = t[edge_ids]  # (n_checks_of_degree, degree)
            for i in range(degree):
                loo = np.ones(len(edge_ids))
                for j in range(degree):
                    if j != i:
                        loo = loo * factors[:, j]
                out[edge_ids[:, i]] = loo
        np.clip(out, -lim, lim, out=out)
        self.check_to_var = sign[self.graph.edge_check] * 2.0 * np.arctanh(out)

    def posterior_update(self) -> None:
        sums = np.bincount(
            self.graph.edge_var, weights=self.check_to_var, minlength=self.graph.n_vars
        )
        self.l_ap = self.l_ch + sums

    def var_update(self) -> None:
        self.var_to_check = self.l_ap[self.graph.edge_var] - self.check_to_var
        np.clip(self.var_to_check, -self.clamp, self.clamp, out=self.var_to_check)


def bp_decode(
    h: np.ndarray,
    syndrome_bits: np.ndarray,
    priors: np.ndarray,
    max_iter: int = 30,
    clamp: float = 25.0,
    halt_on_convergence: bool = True,
):
    """Sum-product decoding of H·e = s with flooding schedule.

    Returns (hard_decision, posterior_llrs, converged).  A bit is flipped iff
    its posterior llr is strictly negative; convergence means the hard
    decision reproduced the syndrome at some iteration <= max_iter.
    """
    graph = h if isinstance(h, TannerGraph) else TannerGraph.from_matrix(h)
    priors = np.asarray(priors, dtype=float)
    if priors.shape != (graph.n_vars,):
        raise InvalidParameterError("one prior per variable required")
    if np.any(priors <= 0.0) or np.any(priors >= 1.0):
        raise InvalidParameterError("priors must lie strictly inside (0, 1)")
    syndrome_bits = np.asarray(syndrome_bits, dtype=np.uint8)
    if syndrome_bits.shape != (graph.n_checks,):
        raise InvalidParameterError("syndrome length must equal the check count")

    sign = 1.0 - 2.0 * syndrome_bits.astype(float)
    state = BPState(graph, priors, clamp)
    hard = np.zeros(graph.n_vars, dtype=np.uint8)
    converged = False
    for t in range(1, max_iter + 1):
        state.iteration = t
        state.check_update(sign)
        state.posterior_update()
        hard = (state.l_ap < 0.0).astype(np.uint8)
        if np.array_equal((graph.h @ hard) % 2, syndrome_bits):
            converged = True
            if halt_on_convergence:
                break
        state.var_update()
    return hard, state.l_ap, converged


def _rref(columns: np.ndarray, syndrome_bits: np.ndarray):
    """GF(2) reduced row echelon form of [columns | s].

    Returns (reduced matrix, pivot column list, rank).  Raises when the
    syndrome is outside the column space.
    """
    m, n = columns.shape
    work = np.concatenate([columns, syndrome_bits[:, None]], axis=1).astype(np.uint8)
    pivots = []
    rank = 0
    for col in range(n):
        hits = np.flatnonzero(work[rank:, col])
        if hits.size == 0:
            continue
        pivot_row = rank + int(hits[0])
        if pivot_row != rank:
            work[[rank, pivot_row]] = work[[pivot_row, rank]]
        others = np.flatnonzero(work[:, col])
        others = others[others != rank]
        work[others] ^= work[rank]
        pivots.append(col)
        rank += 1
        if rank == m:
            break
    if np.any(work[rank:, n]):
        raise UnsatisfiableSyndromeError("syndrome outside the column space of H")
    return work, pivots, rank


def _reliability_order(posteriors: np.ndarray) -> np.ndarray:
    # Most likely flipped first (ascending llr); ties by ascending index.
    return np.argsort(posteriors, kind="stable")


def osd0(h: np.ndarray, syndrome_bits: np.ndarray, posteriors: np.ndarray) -> np.ndarray:
    """Order-0 OSD: solve the syndrome equation on the least-reliable basis.

    Columns are ranked most-likely-flipped first; the first rank(H)
    independent columns carry the solution, every other bit is zero.
    """
    h = np.asarray(h, dtype=np.uint8)
    posteriors = np.asarray(posteriors, dtype=float)
    if posteriors.shape != (h.shape[1],):
        raise InvalidParameterError("one posterior per column required")
    order = _reliability_order(posteriors)
    work, pivots, rank = _rref(h[:, order], np.asarray(syndrome_bits, dtype=np.uint8))
    solution = np.zeros(h.shape[1], dtype=np.uint8)
    for row, col in enumerate(pivots):
        solution[order[col]] = work[row, h.shape[1]]
    return solution


def _osd_candidates(work, pivots, rank, n, w):
    """Yield (pivot part, free assignment) candidates in sweep order.

    Order 0 is the bare basis solution; any higher order adds the full
    weight-1 sweep plus all weight-2 patterns inside the first w free bits.
    """
    base = work[:rank, n]
    free_cols = [c for c in range(n) if c not in set(pivots)]
    yield base, ()
    if w == 0:
        return
    for idx, col in enumerate(free_cols):
        yield base ^ work[:rank, col], (idx,)
    for i in range(min(w, len(free_cols))):
        for j in range(i + 1, min(w, len(free_cols))):
            yield base ^ work[:rank, free_cols[i]] ^ work[:rank, free_cols[j]], (i, j)


def osd_w(
    h: np.ndarray,
    syndrome_bits: np.ndarray,
    posteriors: np.ndarray,
    w: int,
) -> np.ndarray:
    """Order-w OSD with the combination-sweep candidate schedule.

    Sweeps the order-0 solution, every weight-1 free-part candidate, and all
    weight-2 candidates inside the first w free bits, returning the lowest
    Hamming weight solution found.
    """
    h = np.asarray(h, dtype=np.uint8)
    posteriors = np.asarray(posteriors, dtype=float)
    order = _reliability_order(posteriors)
    work, pivots, rank = _rref(h[:, order], np.asarray(syndrome_bits, dtype=np.uint8))
    n = h.shape[1]
    if not (0 <= w <= n - rank):
        raise InvalidParameterError(f"OSD order {w} outside [0, {n - rank}]")
    free_cols = [c for c in range(n) if c not in set(pivots)]

    best = None
    best_weight = None
    for pivot_part, free_hits in _osd_candidates(work, pivots, rank, n, w):
        weight = int(pivot_part.sum()) + len(free_hits)
        if best_weight is None or weight < best_weight:
            best_weight = weight
            best = (pivot_part.copy(), free_hits)
    pivot_part, free_hits = best
    solution = np.zeros(n, dtype=np.uint8)
    for row, col in enumerate(pivots):
        solution[order[col]] = pivot_part[row]
    for idx in free_hits:
        solution[order[free_cols[idx]]] = 1
    return solution


@dataclass(frozen=True)
class OSDConfig:
    """BP iteration/clamp settings plus the OSD order; order None = plain BP."""

    osd_order: int | None = 0
    max_iter: int = 30
    clamp: float = 25.0


_PRIOR_FLOOR = 1e-12


_tanner_cache: "weakref.WeakKeyDictionary" = weakref.WeakKeyDictionary()


def _side_tanner(code: RotatedPlanarCode, kind: str) -> TannerGraph:
    per_code = _tanner_cache.setdefault(code, {})
    if kind not in per_code:
        per_code[kind] = TannerGraph.from_matrix(code.kind_matrix(kind))
    return per_code[kind]


def decode_bposd(
    code: RotatedPlanarCode,
    syn: Syndrome,
    noise: NoiseModel,
    config: OSDConfig | None = None,
) -> PauliOperator:
    """CSS BP(+OSD) decoding: two classical runs, one per error type.

    X errors decode against the Z-check matrix with priors p_x + p_y, Z
    errors against the X-check matrix with priors p_z + p_y.  OSD is invoked
    only when BP fails to converge; with ``osd_order=None`` the raw BP hard
    decision is returned even when its syndrome does not match.
    """
    config = config or OSDConfig()
    parts = {}
    for kind, bits, flip_probs in (
        ("Z", syn.z_bits, noise.p_x + noise.p_y),
        ("X", syn.x_bits, noise.p_z + noise.p_y),
    ):
        graph = _side_tanner(code, kind)
        priors = np.clip(flip_probs, _PRIOR_FLOOR, 1.0 - _PRIOR_FLOOR)
        hard, posteriors, converged = bp_decode(
            graph, bits, priors, max_iter=config.max_iter, clamp=config.clamp
        )
        if not converged and config.osd_order is not None:
            if config.osd_order == 0:
                hard = osd0(graph.h, bits, posteriors)
            else:
                hard = osd_w(graph.h, bits, posteriors, config.osd_order)
        parts[kind] = hard
    return PauliOperator(parts["Z"], parts["X"])
