"""Rotated planar code geometry, syndrome extraction and logical classification.

The code is a [[d^2, 1, d]] CSS code on a d x d grid of data qubits.  Data
qubit (row, col) gets index ``row * d + col``.  Plaquette (check) positions
live on the (d+1) x (d+1) corner grid; the plaquette at (i, j) touches the
up-to-four data qubits {(i-1, j-1), (i-1, j), (i, j-1), (i, j)}.

Conventions (fixed so decoders can rely on them):

* plaquette (i, j) is Z-type when i + j is even, X-type when odd;
* two-qubit half-plaquettes exist on the top/bottom rows only for Z-checks
  and on the left/right columns only for X-checks, so Z-defect chains
  terminate on the top/bottom boundary and X-defect chains on left/right;
* checks are indexed X-checks first, then Z-checks, each block sorted
  row-major by plaquette position;
* the logical X representative runs along the bottom data row, the logical
  Z representative along the left data column.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

import numpy as np

from .errors import ContractViolationError, DimensionError, InvalidParameterError
from .pauli import PauliOperator, commutes, multiply


@dataclass(frozen=True)
class Check:
    """A stabilizer generator: all-X or all-Z on its support."""

    kind: str                  # "X" or "Z"
    support: tuple[int, ...]   # data-qubit indices, ascending
    position: tuple[int, int]  # (i, j) on the corner grid

    def as_pauli(self, n: int) -> PauliOperator:
        x = np.zeros(n, dtype=np.uint8)
        z = np.zeros(n, dtype=np.uint8)
        part = x if self.kind == "X" else z
        part[list(self.support)] = 1
        return PauliOperator(x, z)


class LogicalClass(enum.Enum):
    """Coset label of a normalizer element relative to the stabilizer group."""

    I = "I"
    X = "X"
    Y = "Y"
    Z = "Z"


@dataclass(frozen=True)
class Syndrome:
    """Check outcomes: X-check bits first, then Z-check bits."""

    bits: np.ndarray
    n_x: int  # number of X-checks (start of the Z segment)

    @property
    def x_bits(self) -> np.ndarray:
        return self.bits[: self.n_x]

    @property
    def z_bits(self) -> np.ndarray:
        return self.bits[self.n_x:]

    def is_trivial(self) -> bool:
        return not self.bits.any()

    def __eq__(self, other) -> bool:
        if not isinstance(other, Syndrome):
            return NotImplemented
        return self.n_x == other.n_x and np.array_equal(self.bits, other.bits)

    def __hash__(self) -> int:
        return hash((self.bits.tobytes(), self.n_x))


@dataclass(frozen=True, eq=False)  # identity semantics: codes are shared, not compared
class RotatedPlanarCode:
    """Immutable geometry bundle for one distance-d rotated planar code."""

    d: int
    n: int
    checks: tuple[Check, ...]
    h_x: np.ndarray  # rows = X-check supports
    h_z: np.ndarray  # rows = Z-check supports
    logical_x: PauliOperator
    logical_z: PauliOperator
    # For each check kind, the lattice sides hosting virtual boundary checks.
    boundary_map: dict = field(repr=False)
    # Per kind, (n, 2) array of within-kind check indices covering each data
    # qubit; -1 marks a missing cover (boundary exit for that kind's graph).
    qubit_cover: dict = field(repr=False)

    @property
    def n_x_checks(self) -> int:
        return self.h_x.shape[0]

    @property
    def n_z_checks(self) -> int:
        return self.h_z.shape[0]

    def kind_checks(self, kind: str) -> list[Check]:
        return [c for c in self.checks if c.kind == kind]

    def kind_matrix(self, kind: str) -> np.ndarray:
        return self.h_x if kind == "X" else self.h_z

    def qubit_index(self, row: int, col: int) -> int:
        return row * self.d + col

    def qubit_position(self, index: int) -> tuple[int, int]:
        return divmod(index, self.d)


def _plaquette_support(d: int, i: int, j: int) -> tuple[int, ...]:
    qubits = []
    for r, c in ((i - 1, j - 1), (i - 1, j), (i, j - 1), (i, j)):
        if 0 <= r < d and 0 <= c < d:
            qubits.append(r * d + c)
    return tuple(sorted(qubits))


def _plaquette_kind(i: int, j: int) -> str:
    return "Z" if (i + j) % 2 == 0 else "X"


def _is_check(d: int, i: int, j: int) -> bool:
    support = _plaquette_support(d, i, j)
    if len(support) == 4:
        return True
    if len(support) != 2:
        return False
    kind = _plaquette_kind(i, j)
    if i in (0, d):   # top/bottom rows host Z half-plaquettes
        return kind == "Z"
    return kind == "X"  # left/right columns host X half-plaquettes


def build_code(d: int) -> RotatedPlanarCode:
    """Construct the distance-d rotated planar code.

    Raises InvalidParameterError unless d is an odd integer >= 3.
    """
    if not isinstance(d, (int, np.integer)) or d < 3 or d % 2 == 0:
        raise InvalidParameterError(f"distance must be an odd integer >= 3, got {d!r}")
    d = int(d)
    n = d * d

    by_kind: dict[str, list[Check]] = {"X": [], "Z": []}
    for i in range(d + 1):
        for j in range(d + 1):
            if _is_check(d, i, j):
                kind = _plaquette_kind(i, j)
                by_kind[kind].append(Check(kind, _plaquette_support(d, i, j), (i, j)))
    checks = tuple(by_kind["X"] + by_kind["Z"])

    def matrix(kind: str) -> np.ndarray:
        h = np.zeros((len(by_kind[kind]), n), dtype=np.uint8)
        for row, check in enumerate(by_kind[kind]):
            h[row, list(check.support)] = 1
        return h

    h_x, h_z = matrix("X"), matrix("Z")
    for h in (h_x, h_z):
        h.setflags(write=False)

    bottom = [(d - 1) * d + c for c in range(d)]
    left = [r * d for r in range(d)]
    lx, lz = np.zeros(n, dtype=np.uint8), np.zeros(n, dtype=np.uint8)
    lx[bottom] = 1
    lz[left] = 1
    logical_x = PauliOperator(lx, np.zeros(n, dtype=np.uint8))
    logical_z = PauliOperator(np.zeros(n, dtype=np.uint8), lz)

    qubit_cover = {}
    for kind in ("X", "Z"):
        cover = np.full((n, 2), -1, dtype=np.int64)
        for idx, check in enumerate(by_kind[kind]):
            for q in check.support:
                slot = 0 if cover[q, 0] < 0 else 1
                cover[q, slot] = idx
        cover.setflags(write=False)
        qubit_cover[kind] = cover

    return RotatedPlanarCode(
        d=d,
        n=n,
        checks=checks,
        h_x=h_x,
        h_z=h_z,
        logical_x=logical_x,
        logical_z=logical_z,
        boundary_map={"X": ("left", "right"), "Z": ("top", "bottom")},
        qubit_cover=qubit_cover,
    )


def syndrome(code: RotatedPlanarCode, error: PauliOperator) -> Syndrome:
    """Measure all checks against ``error``; bit i is 1 iff check i anticommutes."""
    if error.n != code.n:
        raise DimensionError(f"error acts on {error.n} qubits, code has {code.n}")
    x_fired = (code.h_x @ error.z_part.astype(np.int64)) % 2
    z_fired = (code.h_z @ error.x_part.astype(np.int64)) % 2
    bits = np.concatenate([x_fired, z_fired]).astype(np.uint8)
    bits.setflags(write=False)
    return Syndrome(bits=bits, n_x=code.n_x_checks)


def logical_class(code: RotatedPlanarCode, residual: PauliOperator) -> LogicalClass:
    """Coset label of a zero-syndrome residual.

    The caller must ensure the residual is in the normalizer; a nonzero
    syndrome raises ContractViolationError.
    """
    if not syndrome(code, residual).is_trivial():
        raise ContractViolationError("residual has a nonzero syndrome")
    anti_z = not commutes(residual, code.logical_z)  # logical X content
    anti_x = not commutes(residual, code.logical_x)  # logical Z content
    if anti_z and anti_x:
        return LogicalClass.Y
    if anti_z:
        return LogicalClass.X
    if anti_x:
        return LogicalClass.Z
    return LogicalClass.I


def logical_representative(code: RotatedPlanarCode, cls: LogicalClass) -> PauliOperator:
    """A fixed coset representative for each logical class."""
    if cls is LogicalClass.I:
        return PauliOperator.identity(code.n)
    if cls is LogicalClass.X:
        return code.logical_x
    if cls is LogicalClass.Z:
        return code.logical_z
    return multiply(code.logical_x, code.logical_z)
