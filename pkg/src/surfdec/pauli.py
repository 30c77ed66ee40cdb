"""Phaseless n-qubit Pauli operators in the symplectic (binary) representation.

An operator is stored as two length-n bit vectors: ``x_part`` has a 1 wherever
an X or Y acts, ``z_part`` wherever a Z or Y acts.  Global phases carry no
information for error correction and are dropped throughout.
"""

from __future__ import annotations

import numpy as np

from .errors import DimensionError

_CHAR_TO_BITS = {"I": (0, 0), "X": (1, 0), "Y": (1, 1), "Z": (0, 1)}
_BITS_TO_CHAR = {v: k for k, v in _CHAR_TO_BITS.items()}


class PauliOperator:
    """An n-qubit Pauli, phase ignored.

    Immutable: the backing arrays are frozen at construction and shared
    freely across threads/processes.
    """

    __slots__ = ("x_part", "z_part", "n")

    def __init__(self, x_part, z_part):
        x = np.asarray(x_part, dtype=np.uint8) & 1
        z = np.asarray(z_part, dtype=np.uint8) & 1
        if x.ndim != 1 or z.ndim != 1 or x.shape != z.shape:
            raise DimensionError(
                f"x_part and z_part must be equal-length vectors, got {x.shape} and {z.shape}"
            )
        x.setflags(write=False)
        z.setflags(write=False)
        object.__setattr__(self, "x_part", x)
        object.__setattr__(self, "z_part", z)
        object.__setattr__(self, "n", x.shape[0])

    def __setattr__(self, name, value):
        raise AttributeError("PauliOperator is immutable")

    @classmethod
    def identity(cls, n: int) -> "PauliOperator":
        return cls(np.zeros(n, dtype=np.uint8), np.zeros(n, dtype=np.uint8))

    @classmethod
    def from_string(cls, s: str) -> "PauliOperator":
        """Build from a string like ``"XIZY"`` (qubit 0 first)."""
        try:
            bits = [_CHAR_TO_BITS[c] for c in s]
        except KeyError as exc:
            raise ValueError(f"invalid Pauli character {exc.args[0]!r}") from None
        x = np.array([b[0] for b in bits], dtype=np.uint8)
        z = np.array([b[1] for b in bits], dtype=np.uint8)
        return cls(x, z)

    @classmethod
    def single(cls, n: int, qubit: int, kind: str) -> "PauliOperator":
        """A weight-1 operator acting with ``kind`` in {X,Y,Z} on one qubit."""
        x = np.zeros(n, dtype=np.uint8)
        z = np.zeros(n, dtype=np.uint8)
        x[qubit], z[qubit] = _CHAR_TO_BITS[kind]
        return cls(x, z)

    @property
    def weight(self) -> int:
        """Number of qubits acted on non-trivially."""
        return int(np.count_nonzero(self.x_part | self.z_part))

    def is_identity(self) -> bool:
        return not (self.x_part.any() or self.z_part.any())

    def to_string(self) -> str:
        return "".join(
            _BITS_TO_CHAR[(int(x), int(z))] for x, z in zip(self.x_part, self.z_part)
        )

    def __eq__(self, other) -> bool:
        if not isinstance(other, PauliOperator):
            return NotImplemented
        return (
            self.n == other.n
            and np.array_equal(self.x_part, other.x_part)
            and np.array_equal(self.z_part, other.z_part)
        )

    def __hash__(self) -> int:
        return hash((self.x_part.tobytes(), self.z_part.tobytes()))

    def __repr__(self) -> str:
        if self.n <= 24:
            return f"PauliOperator({self.to_string()!r})"
        return f"PauliOperator(n={self.n}, weight={self.weight})"


def _check_same_length(a: PauliOperator, b: PauliOperator) -> None:
    if a.n != b.n:
        raise DimensionError(f"operator lengths differ: {a.n} != {b.n}")


def multiply(a: PauliOperator, b: PauliOperator) -> PauliOperator:
    """Phaseless product: componentwise XOR of the symplectic parts."""
    _check_same_length(a, b)
    return PauliOperator(a.x_part ^ b.x_part, a.z_part ^ b.z_part)


def commutes(a: PauliOperator, b: PauliOperator) -> bool:
    """True iff the symplectic product a.x·b.z + a.z·b.x vanishes mod 2."""
    _check_same_length(a, b)
    s = int(np.dot(a.x_part.astype(np.int64), b.z_part.astype(np.int64)))
    s += int(np.dot(a.z_part.astype(np.int64), b.x_part.astype(np.int64)))
    return s % 2 == 0
