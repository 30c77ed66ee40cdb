"""Decoder registry: one id per decode function, shared by the CLI and the
Monte Carlo workers (worker processes rebuild decoders from their id)."""

from __future__ import annotations

from .bposd import OSDConfig, decode_bposd
from .errors import InvalidParameterError
from .matching import correlated_two_pass, decode_mwpm
from .noise import NoiseModel
from .tensornet import TNConfig, decode_exact, decode_tn
from .unionfind import decode_uf

DECODER_IDS = ("mwpm", "mwpm-corr", "uf", "bp", "bposd0", "bposdw", "tn", "exact")

DECODER_HELP = {
    "mwpm": "exact minimum-weight perfect matching, unit weights",
    "mwpm-corr": "two-pass MWPM with X/Z correlation reweighting",
    "uf": "union-find cluster growth and peeling (erasure-aware)",
    "bp": "plain belief propagation (no post-processing)",
    "bposd0": "belief propagation with order-0 OSD fallback",
    "bposdw": "belief propagation with order-w OSD fallback",
    "tn": "tensor-network coset decoder (bond dimension chi)",
    "exact": "brute-force coset decoder (distance 3 only)",
}


def make_decoder(
    name: str,
    noise: NoiseModel,
    chi: int = 16,
    osd_order: int = 4,
    bp_iters: int = 30,
):
    """Bind a decoder id to a ``(code, syndrome, erased) -> PauliOperator``."""
    if name == "mwpm":
        return lambda code, syn, erased: decode_mwpm(code, syn)
    if name == "mwpm-corr":
        return lambda code, syn, erased: correlated_two_pass(code, syn, noise)
    if name == "uf":
        return lambda code, syn, erased: decode_uf(code, syn, erased=erased)
    if name == "bp":
        config = OSDConfig(osd_order=None, max_iter=bp_iters)
        return lambda code, syn, erased: decode_bposd(code, syn, noise, config)
    if name == "bposd0":
        config = OSDConfig(osd_order=0, max_iter=bp_iters)
        return lambda code, syn, erased: decode_bposd(code, syn, noise, config)
    if name == "bposdw":
        config = OSDConfig(osd_order=osd_order, max_iter=bp_iters)
        return lambda code, syn, erased: decode_bposd(code, syn, noise, config)
    if name == "tn":
        config = TNConfig(chi=chi)
        return lambda code, syn, erased: decode_tn(code, syn, noise, config)
    if name == "exact":
        return lambda code, syn, erased: decode_exact(code, syn, noise)
    raise InvalidParameterError(f"unknown decoder id {name!r}; known: {DECODER_IDS}")
