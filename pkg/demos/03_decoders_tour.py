"""All four decoders on the same error, plus where they differ.

Run with:  python3 demos/03_decoders_tour.py
"""

import numpy as np

from surfdec import NoiseModel, build_code, logical_class, multiply, sample_error, syndrome, trial_rng
from surfdec.bposd import OSDConfig, decode_bposd
from surfdec.matching import correlated_two_pass, decode_mwpm
from surfdec.tensornet import TNConfig, decode_tn
from surfdec.unionfind import decode_uf

code = build_code(5)
model = NoiseModel.depolarizing(0.13, code.n)

draw = sample_error(model, trial_rng(2024, 5))
syn = syndrome(code, draw.pauli)
print(f"error:    {draw.pauli.to_string()}")
print(f"syndrome: X-checks {np.flatnonzero(syn.x_bits)}, "
      f"Z-checks {np.flatnonzero(syn.z_bits)}\n")

decoders = {
    "mwpm": lambda: decode_mwpm(code, syn),
    "mwpm-corr": lambda: correlated_two_pass(code, syn, model),
    "uf": lambda: decode_uf(code, syn, erased=draw.erased),
    "bposd0": lambda: decode_bposd(code, syn, model, OSDConfig(osd_order=0)),
    "bp (plain)": lambda: decode_bposd(code, syn, model, OSDConfig(osd_order=None)),
    "tn chi=16": lambda: decode_tn(code, syn, model, TNConfig(chi=16)),
}

for name, decode in decoders.items():
    estimate = decode()
    residual = multiply(draw.pauli, estimate)
    matched = syndrome(code, residual).is_trivial()
    verdict = "syndrome mismatch (counts as failure)"
    if matched:
        cls = logical_class(code, residual)
        verdict = "success" if cls.value == "I" else f"logical {cls.value} error"
    print(f"{name:12s} -> {estimate.to_string()}  [{verdict}]")

print("\nNote: a correction never needs to equal the error; landing in the")
print("identity coset (error times correction is a stabilizer) is enough.")
