import numpy as np
import pytest

from surfdec.code import LogicalClass, build_code, logical_class, syndrome
from surfdec.errors import ContractViolationError, DimensionError, InvalidParameterError
from surfdec.pauli import PauliOperator, commutes, multiply


def stabilizer_paulis(code):
    return [c.as_pauli(code.n) for c in code.checks]


def test_counts_d3():
    code = build_code(3)
    assert code.n == 9
    assert len(code.checks) == 8
    assert code.n_x_checks == 4
    assert code.n_z_checks == 4


def test_counts_d5():
    code = build_code(5)
    assert code.n == 25
    assert len(code.checks) == 24


@pytest.mark.parametrize("d", [2, 4, 1, -3, 0])
def test_invalid_distance_rejected(d):
    with pytest.raises(InvalidParameterError):
        build_code(d)


@pytest.mark.parametrize("d", [3, 5, 7])
def test_all_check_pairs_commute(d):
    code = build_code(d)
    paulis = stabilizer_paulis(code)
    for i in range(len(paulis)):
        for j in range(i + 1, len(paulis)):
            assert commutes(paulis[i], paulis[j])


@pytest.mark.parametrize("d", [3, 5])
def test_check_supports_well_formed(d):
    code = build_code(d)
    for check in code.checks:
        assert len(set(check.support)) == len(check.support)
        assert all(0 <= q < code.n for q in check.support)
        assert len(check.support) in (2, 4)
    n_boundary = sum(1 for c in code.checks if len(c.support) == 2)
    assert n_boundary == 2 * (d - 1)


@pytest.mark.parametrize("d", [3, 5, 7])
def test_logical_operators(d):
    code = build_code(d)
    assert code.logical_x.weight == d
    assert code.logical_z.weight == d
    assert not commutes(code.logical_x, code.logical_z)
    for p in stabilizer_paulis(code):
        assert commutes(code.logical_x, p)
        assert commutes(code.logical_z, p)


def test_boundary_map_convention():
    code = build_code(5)
    assert code.boundary_map["X"] == ("left", "right")
    assert code.boundary_map["Z"] == ("top", "bottom")


def test_syndrome_identity_is_trivial():
    code = build_code(5)
    assert syndrome(code, PauliOperator.identity(code.n)).is_trivial()


def test_syndrome_of_logicals_is_trivial():
    code = build_code(5)
    assert syndrome(code, code.logical_z).is_trivial()
    assert syndrome(code, code.logical_x).is_trivial()


def test_syndrome_single_bulk_x_error():
    # Brute-force oracle: the fired Z-checks are exactly those whose support
    # contains the flipped qubit.
    code = build_code(3)
    bulk_qubit = code.qubit_index(1, 1)
    z_checks = code.kind_checks("Z")
    expected = [i for i, c in enumerate(z_checks) if bulk_qubit in c.support]
    assert len(expected) == 2

    syn = syndrome(code, PauliOperator.single(code.n, bulk_qubit, "X"))
    assert not syn.x_bits.any()
    assert sorted(np.flatnonzero(syn.z_bits)) == expected


def test_syndrome_dimension_error():
    code = build_code(3)
    with pytest.raises(DimensionError):
        syndrome(code, PauliOperator.identity(4))


def test_syndrome_is_linear():
    code = build_code(5)
    rng = np.random.default_rng(7)
    for _ in range(100):
        e1 = PauliOperator(rng.integers(0, 2, code.n), rng.integers(0, 2, code.n))
        e2 = PauliOperator(rng.integers(0, 2, code.n), rng.integers(0, 2, code.n))
        lhs = syndrome(code, multiply(e1, e2)).bits
        rhs = syndrome(code, e1).bits ^ syndrome(code, e2).bits
        assert np.array_equal(lhs, rhs)


def test_random_stabilizer_elements_are_invisible():
    code = build_code(3)
    generators = stabilizer_paulis(code)
    rng = np.random.default_rng(3)
    for _ in range(1000):
        element = PauliOperator.identity(code.n)
        for g, pick in zip(generators, rng.integers(0, 2, len(generators))):
            if pick:
                element = multiply(element, g)
        assert syndrome(code, element).is_trivial()
        assert logical_class(code, element) is LogicalClass.I


def test_logical_class_examples():
    code = build_code(3)
    assert logical_class(code, PauliOperator.identity(code.n)) is LogicalClass.I
    assert logical_class(code, code.logical_x) is LogicalClass.X
    assert logical_class(code, code.logical_z) is LogicalClass.Z
    assert logical_class(code, multiply(code.logical_x, code.logical_z)) is LogicalClass.Y
    for generator in stabilizer_paulis(code):
        assert logical_class(code, generator) is LogicalClass.I


def test_logical_class_rejects_nonzero_syndrome():
    code = build_code(3)
    bad = PauliOperator.single(code.n, 0, "X")
    with pytest.raises(ContractViolationError):
        logical_class(code, bad)


def test_syndrome_segments():
    code = build_code(3)
    syn = syndrome(code, PauliOperator.single(code.n, 4, "Y"))
    assert len(syn.x_bits) == code.n_x_checks
    assert len(syn.z_bits) == code.n_z_checks
    assert syn.x_bits.any() and syn.z_bits.any()
