"""Tour of the map family on a small register.

Builds the quantized baker's map for every position-bit count on four
qubits, confirms unitarity and the matrix-free/dense agreement, then looks
at the special full-shift member: its strict periodicity and its exact
eigenvalue spectrum.

Run:  python3 demos/map_basics.py
"""

import numpy as np

from qbaker import (
    BakerKernel,
    BakerMapConfig,
    baker_matrix,
    baker_step,
    periodic_spectrum,
)
from qbaker.tensor import StateVector

NUM_QUBITS = 4
DIM = 2**NUM_QUBITS

rng = np.random.default_rng(7)


def random_state(dim):
    z = rng.normal(size=dim) + 1j * rng.normal(size=dim)
    return StateVector(z / np.linalg.norm(z))


print(f"maps on {NUM_QUBITS} qubits (dimension {DIM})")
print()
print("n  unitarity_defect  matrix_free_vs_dense")
psi = random_state(DIM)
for n in range(1, NUM_QUBITS + 1):
    cfg = BakerMapConfig(NUM_QUBITS, n)
    u = baker_matrix(cfg)
    defect = np.abs(u.conj().T @ u - np.eye(DIM)).max()
    free = baker_step(cfg, psi).amplitudes
    dense = u @ psi.amplitudes
    print(f"{n}  {defect:.2e}          {np.abs(free - dense).max():.2e}")

# the full-shift member (n = N) acts qubit by qubit and repeats after 4N
# applications; watch a state come back to itself
print()
print(f"full-shift periodicity: applying the n={NUM_QUBITS} map 4N = "
      f"{4 * NUM_QUBITS} times")
kernel = BakerKernel(NUM_QUBITS, NUM_QUBITS)
amps = psi.amplitudes
for step in range(4 * NUM_QUBITS):
    amps = kernel.apply(amps)
print(f"distance back to the start: {np.abs(amps - psi.amplitudes).max():.2e}")

# its complete spectrum comes in closed form: one eigenstate per rotation
# class of single-qubit labels, every eigenvalue a 4N-th root of unity
print()
print("closed-form spectrum of the full-shift map:")
print("eigenvalue (angle/pi)   period   multiplicity")
pairs = periodic_spectrum(NUM_QUBITS)
angles = {}
for p in pairs:
    key = round(np.angle(p.eigenvalue) / np.pi, 9)
    angles.setdefault(key, []).append(p.period)
for key in sorted(angles):
    periods = angles[key]
    print(f"{key:+.4f}                 {max(periods)}        {len(periods)}")
print(f"total eigenpairs: {len(pairs)} (= 2^{NUM_QUBITS})")
