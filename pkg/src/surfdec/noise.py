"""Pauli/erasure channel parameters and reproducible n-qubit error sampling.

Channels are specified per qubit by (p_x, p_y, p_z, p_e).  The twirl helpers
turn physical damping/scattering parameters into Pauli channel probabilities;
``bias_split`` turns a total error rate and a Z-bias into the (p_x, p_y, p_z)
triple under the p_x == p_y convention.  Sampling takes an explicit numpy
Generator so concurrent trials with distinct streams stay reproducible.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import InvalidParameterError
from .pauli import PauliOperator

_SUM_TOL = 1e-12


@dataclass(frozen=True)
class PauliChannelParams:
    """Single-qubit channel: Pauli error probabilities plus an erasure rate.

    The optional physical fields record where the probabilities came from
    (twirl parameters or decay times); they do not enter sampling.
    """

    p_x: float
    p_y: float
    p_z: float
    p_e: float = 0.0
    gamma: float | None = None
    lam: float | None = None
    t1: float | None = None
    t2: float | None = None
    t: float | None = None

    def __post_init__(self):
        for name in ("p_x", "p_y", "p_z", "p_e"):
            v = getattr(self, name)
            if not (0.0 <= v <= 1.0):
                raise InvalidParameterError(f"{name}={v} outside [0, 1]")
        if self.p_x + self.p_y + self.p_z + self.p_e > 1.0 + _SUM_TOL:
            raise InvalidParameterError(
                f"probabilities sum to {self.p_x + self.p_y + self.p_z + self.p_e} > 1"
            )

    @property
    def p_total(self) -> float:
        return self.p_x + self.p_y + self.p_z

    @property
    def bias(self) -> float:
        """Z bias eta = p_z / (p_x + p_y); inf for a pure dephasing channel."""
        denom = self.p_x + self.p_y
        if denom == 0.0:
            return math.inf if self.p_z > 0 else 0.0
        return self.p_z / denom


class NoiseModel:
    """Per-qubit channel list; identical entries for i.i.d., distinct for i.ni.d."""

    def __init__(self, per_qubit):
        per_qubit = tuple(per_qubit)
        if not per_qubit:
            raise InvalidParameterError("noise model needs at least one qubit")
        self.per_qubit = per_qubit
        self.n = len(per_qubit)
        self.p_x = np.array([c.p_x for c in per_qubit])
        self.p_y = np.array([c.p_y for c in per_qubit])
        self.p_z = np.array([c.p_z for c in per_qubit])
        self.p_e = np.array([c.p_e for c in per_qubit])
        for arr in (self.p_x, self.p_y, self.p_z, self.p_e):
            arr.setflags(write=False)

    @classmethod
    def iid(cls, params: PauliChannelParams, n: int) -> "NoiseModel":
        return cls([params] * n)

    @classmethod
    def depolarizing(cls, p: float, n: int, p_e: float = 0.0) -> "NoiseModel":
        px, py, pz = bias_split(p, 0.5)
        return cls.iid(PauliChannelParams(px, py, pz, p_e), n)

    @classmethod
    def biased(cls, p: float, eta: float, n: int, p_e: float = 0.0) -> "NoiseModel":
        px, py, pz = bias_split(p, eta)
        return cls.iid(PauliChannelParams(px, py, pz, p_e), n)

    def __len__(self) -> int:
        return self.n


@dataclass(frozen=True)
class SampledError:
    """One drawn error: the Pauli plus the erasure flags."""

    pauli: PauliOperator
    erased: np.ndarray


def _check_unit(name: str, value: float) -> None:
    if not (0.0 <= value <= 1.0):
        raise InvalidParameterError(f"{name}={value} outside [0, 1]")


def twirl_pta(gamma: float, lam: float) -> tuple[float, float, float]:
    """Pauli-twirl an amplitude+phase damping channel into (p_x, p_y, p_z).

    p_x = p_y = gamma/4 and p_z = (2 - gamma - 2*sqrt((1-gamma)(1-lam)))/4.
    """
    _check_unit("gamma", gamma)
    _check_unit("lam", lam)
    radicand = 1.0 - gamma - (1.0 - gamma) * lam
    if radicand < 0.0:
        raise InvalidParameterError(f"negative radicand {radicand}")
    p_x = gamma / 4.0
    p_z = (2.0 - gamma - 2.0 * math.sqrt(radicand)) / 4.0
    return p_x, p_x, p_z


def twirl_cta(gamma: float, lam: float) -> tuple[float, float, float]:
    """Clifford-twirl an amplitude+phase damping channel: depolarizing triple."""
    _check_unit("gamma", gamma)
    _check_unit("lam", lam)
    radicand = 1.0 - gamma - (1.0 - gamma) * lam
    if radicand < 0.0:
        raise InvalidParameterError(f"negative radicand {radicand}")
    p = (2.0 + gamma - 2.0 * math.sqrt(radicand)) / 12.0
    return p, p, p


def bias_split(p: float, eta: float) -> tuple[float, float, float]:
    """Split a total error rate by Z-bias eta = p_z/(p_x+p_y), with p_x == p_y.

    eta = 1/2 recovers the depolarizing split p/3 each; eta = inf gives pure
    dephasing (0, 0, p).
    """
    if not (0.0 <= p < 1.0):
        raise InvalidParameterError(f"p={p} outside [0, 1)")
    if eta < 0.0:
        raise InvalidParameterError(f"eta={eta} must be nonnegative")
    if math.isinf(eta):
        return 0.0, 0.0, p
    p_z = p * eta / (1.0 + eta)
    p_x = p / (2.0 * (1.0 + eta))
    return p_x, p_x, p_z


def sample_error(model: NoiseModel, rng: np.random.Generator) -> SampledError:
    """Draw one n-qubit error from the model using the given stream.

    Each qubit independently erases with probability p_e (an erased qubit
    carries a uniformly random Pauli), otherwise suffers I/X/Y/Z with
    probabilities (1 - p_x - p_y - p_z, p_x, p_y, p_z).  The stream is
    consumed in a fixed call pattern, so a fixed seed gives a fixed draw.
    """
    n = model.n
    u_erase = rng.random(n)
    uniform_pauli = rng.integers(0, 4, size=n)  # 0=I 1=X 2=Y 3=Z
    u_pauli = rng.random(n)

    erased = u_erase < model.p_e

    x = np.zeros(n, dtype=np.uint8)
    z = np.zeros(n, dtype=np.uint8)

    is_x = u_pauli < model.p_x
    is_y = (~is_x) & (u_pauli < model.p_x + model.p_y)
    is_z = (~is_x) & (~is_y) & (u_pauli < model.p_x + model.p_y + model.p_z)
    x[is_x | is_y] = 1
    z[is_y | is_z] = 1

    # Erased qubits are reset and re-randomized: overwrite with the uniform draw.
    x[erased] = (uniform_pauli[erased] == 1) | (uniform_pauli[erased] == 2)
    z[erased] = (uniform_pauli[erased] == 2) | (uniform_pauli[erased] == 3)

    erased_bits = erased.astype(np.uint8)
    erased_bits.setflags(write=False)
    return SampledError(pauli=PauliOperator(x, z), erased=erased_bits)


def trial_rng(master_seed: int, trial_index: int) -> np.random.Generator:
    """Counter-based stream: (master seed, trial index) fixes the draw."""
    return np.random.default_rng(np.random.SeedSequence([master_seed, trial_index]))
