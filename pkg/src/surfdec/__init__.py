"""Surface-code decoding library with a Monte Carlo benchmark harness.

Implements the rotated planar code together with four decoders (exact
minimum-weight perfect matching, union-find with peeling, belief propagation
with ordered-statistics post-processing, and a tensor-network coset decoder)
plus the machinery to measure logical error rates and thresholds.
"""

from .code import (
    Check,
    LogicalClass,
    RotatedPlanarCode,
    Syndrome,
    build_code,
    logical_class,
    logical_representative,
    syndrome,
)
from .noise import (
    NoiseModel,
    PauliChannelParams,
    SampledError,
    bias_split,
    sample_error,
    trial_rng,
    twirl_cta,
    twirl_pta,
)
from .pauli import PauliOperator, commutes, multiply

__all__ = [
    "Check",
    "LogicalClass",
    "NoiseModel",
    "PauliChannelParams",
    "PauliOperator",
    "RotatedPlanarCode",
    "SampledError",
    "Syndrome",
    "bias_split",
    "build_code",
    "commutes",
    "logical_class",
    "logical_representative",
    "multiply",
    "sample_error",
    "syndrome",
    "trial_rng",
    "twirl_cta",
    "twirl_pta",
]

__version__ = "0.1.0"
