"""Tour of the rotated planar code: geometry, syndromes, logical classes.

Run with:  python3 demos/01_code_and_syndromes.py
"""

import numpy as np

from surfdec import PauliOperator, build_code, logical_class, multiply, syndrome

# A distance-5 code: 25 data qubits on a 5x5 grid, 24 stabilizer checks.
code = build_code(5)
print(f"[[{code.n}, 1, {code.d}]] code with {len(code.checks)} checks "
      f"({code.n_x_checks} X, {code.n_z_checks} Z)")

# Checks sit on the corner grid between data qubits.  Bulk checks touch four
# qubits, boundary half-checks two.
for check in code.checks[:3]:
    print(f"  {check.kind}-check at corner {check.position} touches qubits {check.support}")

# A single X error in the bulk fires the two Z-checks next to it.
err = PauliOperator.single(code.n, code.qubit_index(2, 2), "X")
syn = syndrome(code, err)
print(f"\nX error at (2,2): fired Z-checks -> {np.flatnonzero(syn.z_bits)}")

# Logical operators run across the lattice and commute with every check, so
# they are invisible to the syndrome: that is exactly what makes them fatal.
print(f"logical X string weight: {code.logical_x.weight}")
print(f"syndrome of logical X is trivial: {syndrome(code, code.logical_x).is_trivial()}")

# The coset label of a zero-syndrome residual tells us whether a correction
# actually succeeded.  Multiplying both logicals gives the Y class.
both = multiply(code.logical_x, code.logical_z)
print(f"class of X_L * Z_L: {logical_class(code, both).value}")

# Stabilizer elements (products of checks) are harmless: class I.
element = multiply(code.checks[0].as_pauli(code.n), code.checks[7].as_pauli(code.n))
print(f"class of a stabilizer product: {logical_class(code, element).value}")
