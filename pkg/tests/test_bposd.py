import itertools
import math

import numpy as np
import pytest

from surfdec.bposd import (
    BPState,
    OSDConfig,
    TannerGraph,
    _osd_candidates,
    _rref,
    bp_decode,
    decode_bposd,
    osd0,
    osd_w,
)
from surfdec.code import LogicalClass, Syndrome, build_code, logical_class, syndrome
from surfdec.errors import InvalidParameterError, UnsatisfiableSyndromeError
from surfdec.noise import NoiseModel, sample_error, trial_rng
from surfdec.pauli import PauliOperator, multiply


def solve_set(h, s):
    """All GF(2) solutions of H e = s by enumeration (oracle)."""
    m, n = h.shape
    sols = set()
    for bits in itertools.product((0, 1), repeat=n):
        e = np.array(bits, dtype=np.uint8)
        if np.array_equal((h @ e) % 2, s):
            sols.add(bits)
    return sols


# --- belief propagation ----------------------------------------------------

def test_bp_trivial_syndrome_converges_immediately():
    h = np.array([[1, 1, 0], [0, 1, 1]], dtype=np.uint8)
    hard, posteriors, converged = bp_decode(h, [0, 0], [0.1, 0.1, 0.1])
    assert converged
    assert not hard.any()
    assert (posteriors > 0).all()


def test_bp_two_variable_tie():
    # One check over two variables with prior 0.1: the check reply is -l_ch,
    # posteriors tie at zero, the tie rule picks no flip, so the weight-0
    # estimate never matches s=1.
    h = np.array([[1, 1]], dtype=np.uint8)
    hard, posteriors, converged = bp_decode(h, [1], [0.1, 0.1], max_iter=8)
    assert not converged
    assert np.allclose(posteriors, 0.0, atol=1e-12)
    assert not hard.any()


def test_check_message_sign_flip():
    graph = TannerGraph.from_matrix(np.array([[1, 1, 1]], dtype=np.uint8))
    rng = np.random.default_rng(4)
    priors = rng.uniform(0.05, 0.45, 3)
    a = BPState(graph, priors, clamp=25.0)
    b = BPState(graph, priors, clamp=25.0)
    a.check_update(np.array([1.0]))
    b.check_update(np.array([-1.0]))
    assert np.allclose(a.check_to_var, -b.check_to_var)


def test_bp_rejects_degenerate_priors():
    h = np.array([[1, 1]], dtype=np.uint8)
    with pytest.raises(InvalidParameterError):
        bp_decode(h, [0], [0.0, 0.1])
    with pytest.raises(InvalidParameterError):
        bp_decode(h, [0], [1.0, 0.1])


def test_bp_exact_on_tree():
    # 3-variable chain; sum-product on a tree reproduces the conditional
    # bitwise marginals, computed here by enumeration.
    h = np.array([[1, 1, 0], [0, 1, 1]], dtype=np.uint8)
    priors = np.array([0.1, 0.2, 0.3])
    s = np.array([1, 0], dtype=np.uint8)
    _, posteriors, _ = bp_decode(h, s, priors, max_iter=10, halt_on_convergence=False)

    weights = {}
    for bits in itertools.product((0, 1), repeat=3):
        e = np.array(bits, dtype=np.uint8)
        if np.array_equal((h @ e) % 2, s):
            pr = math.prod(p if b else 1 - p for p, b in zip(priors, bits))
            weights[bits] = pr
    for i in range(3):
        p1 = sum(pr for bits, pr in weights.items() if bits[i] == 1)
        p0 = sum(pr for bits, pr in weights.items() if bits[i] == 0)
        assert math.isclose(posteriors[i], math.log(p0 / p1), abs_tol=1e-10)


def test_bp_message_symmetry_on_code_graph():
    code = build_code(3)
    rng = np.random.default_rng(8)
    priors = rng.uniform(0.05, 0.45, code.n)
    bits = rng.integers(0, 2, code.n_z_checks).astype(np.uint8)
    _, pos, _ = bp_decode(code.h_z, bits, priors, max_iter=5, halt_on_convergence=False)
    _, neg, _ = bp_decode(code.h_z, bits, 1.0 - priors, max_iter=5, halt_on_convergence=False)
    assert np.allclose(pos, -neg, atol=1e-9)


def test_tanner_graph_rejects_zero_rows():
    with pytest.raises(InvalidParameterError):
        TannerGraph.from_matrix(np.array([[1, 1], [0, 0]], dtype=np.uint8))


# --- ordered statistics ----------------------------------------------------

def test_osd0_zero_syndrome():
    code = build_code(3)
    rng = np.random.default_rng(0)
    for _ in range(10):
        posteriors = rng.normal(size=code.n)
        out = osd0(code.h_z, np.zeros(code.n_z_checks, dtype=np.uint8), posteriors)
        assert not out.any()


def test_osd0_identity_matrix_forced():
    h = np.eye(5, dtype=np.uint8)
    s = np.array([1, 0, 1, 1, 0], dtype=np.uint8)
    out = osd0(h, s, np.zeros(5))
    assert np.array_equal(out, s)


def test_osd0_exhaustive_d3_solutions():
    code = build_code(3)
    rng = np.random.default_rng(2)
    for bits in itertools.product((0, 1), repeat=code.n_z_checks):
        s = np.array(bits, dtype=np.uint8)
        oracle = solve_set(code.h_z, s)
        for _ in range(3):
            out = osd0(code.h_z, s, rng.normal(size=code.n))
            assert tuple(out) in oracle


def test_osd_unsatisfiable_raises():
    h = np.array([[1, 1, 0], [1, 1, 0]], dtype=np.uint8)  # rank 1
    with pytest.raises(UnsatisfiableSyndromeError):
        osd0(h, np.array([1, 0], dtype=np.uint8), np.zeros(3))


def test_osd_w_zero_equals_osd0():
    code = build_code(3)
    rng = np.random.default_rng(5)
    for _ in range(20):
        s = rng.integers(0, 2, code.n_z_checks).astype(np.uint8)
        posteriors = rng.normal(size=code.n)
        assert np.array_equal(
            osd_w(code.h_z, s, posteriors, 0), osd0(code.h_z, s, posteriors)
        )


def test_osd_w_candidate_count():
    code = build_code(3)
    h = code.h_z
    s = np.zeros(code.n_z_checks, dtype=np.uint8)
    work, pivots, rank = _rref(h, s)
    n = h.shape[1]
    assert sum(1 for _ in _osd_candidates(work, pivots, rank, n, 0)) == 1
    for w in (2, 4):
        count = sum(1 for _ in _osd_candidates(work, pivots, rank, n, w))
        assert count == 1 + (n - rank) + math.comb(w, 2)


def test_osd_w_rejects_out_of_range():
    code = build_code(3)
    s = np.zeros(code.n_z_checks, dtype=np.uint8)
    with pytest.raises(InvalidParameterError):
        osd_w(code.h_z, s, np.zeros(code.n), code.n)  # n - rank = 5 here


def test_osd_w_never_heavier_than_osd0():
    rng = np.random.default_rng(12)
    tried = 0
    while tried < 200:
        h = rng.integers(0, 2, (6, 10)).astype(np.uint8)
        if not h.any(axis=1).all() or not h.any(axis=0).all():
            continue
        e = rng.integers(0, 2, 10).astype(np.uint8)
        s = (h @ e) % 2
        posteriors = rng.normal(size=10)
        base = osd0(h, s, posteriors)
        _, _, rank = _rref(h, s)
        w = min(4, 10 - rank)
        better = osd_w(h, s, posteriors, w)
        assert np.array_equal((h @ better) % 2, s)
        assert better.sum() <= base.sum()
        tried += 1


def test_osd_outputs_match_syndrome_random():
    code = build_code(5)
    rng = np.random.default_rng(77)
    for _ in range(300):
        e = rng.integers(0, 2, code.n).astype(np.uint8)
        s = (code.h_z @ e) % 2
        posteriors = rng.normal(size=code.n)
        out = osd0(code.h_z, s, posteriors)
        assert np.array_equal((code.h_z @ out) % 2, s)


# --- full decoder ----------------------------------------------------------

def test_decode_trivial_syndrome():
    code = build_code(3)
    model = NoiseModel.depolarizing(0.1, code.n)
    syn = syndrome(code, PauliOperator.identity(code.n))
    assert decode_bposd(code, syn, model).is_identity()


def test_decode_weight_one_exhaustive_d3():
    code = build_code(3)
    model = NoiseModel.depolarizing(0.1, code.n)
    for qubit in range(code.n):
        for kind in "XYZ":
            err = PauliOperator.single(code.n, qubit, kind)
            syn = syndrome(code, err)
            est = decode_bposd(code, syn, model)
            assert syndrome(code, est) == syn
            assert logical_class(code, multiply(err, est)) is LogicalClass.I


@pytest.mark.parametrize("order", [0, 4])
def test_decode_syndrome_match_random(order):
    code = build_code(5)
    model = NoiseModel.depolarizing(0.12, code.n)
    config = OSDConfig(osd_order=order)
    for trial in range(200):
        err = sample_error(model, trial_rng(123 + order, trial)).pauli
        syn = syndrome(code, err)
        est = decode_bposd(code, syn, model, config)
        assert syndrome(code, est) == syn


def test_plain_bp_may_miss_syndrome_but_runs():
    code = build_code(5)
    model = NoiseModel.depolarizing(0.15, code.n)
    config = OSDConfig(osd_order=None)
    mismatches = 0
    for trial in range(300):
        err = sample_error(model, trial_rng(55, trial)).pauli
        syn = syndrome(code, err)
        est = decode_bposd(code, syn, model, config)
        if syndrome(code, est) != syn:
            mismatches += 1
    assert mismatches > 0  # split beliefs leave unmatched syndromes behind
