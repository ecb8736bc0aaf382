"""Subsystem statistics of random pure states against the closed forms.

Samples Haar-random states of an 8-qubit register, reduces to half the
register, and compares the observed mean/variance/skew of the purity and
the normalized linear entropy with their exact expressions.  Then shows
how well the three-cumulant Airy density tracks the histogram, and the
exact law at the smallest split.

Run:  python3 demos/random_state_statistics.py
"""

import numpy as np

from qbaker import (
    airy_pdf,
    exact_pdf_mu2,
    linear_entropy_cumulants,
    lubkin_mean_purity,
    page_mean_entropy,
    purity_variance,
    sample_haar_ensemble,
)
from qbaker.measures import evaluate_measure_batch
from qbaker.tensor import Partition

NUM_QUBITS = 8
SAMPLES = 20000
SEED = 2718

amps = sample_haar_ensemble(2**NUM_QUBITS, SAMPLES, SEED)
half = Partition(NUM_QUBITS, tuple(range(1, NUM_QUBITS // 2 + 1)))
mu = nu = half.mu

purity = evaluate_measure_batch("purity", amps, NUM_QUBITS, partition=half)
entropy = evaluate_measure_batch("von_neumann", amps, NUM_QUBITS, partition=half)
slin = evaluate_measure_batch("linear_entropy", amps, NUM_QUBITS, partition=half)

tri = linear_entropy_cumulants(mu, nu)
print(f"{SAMPLES} Haar states on {NUM_QUBITS} qubits, {mu} x {nu} split")
print()
print("quantity                 sampled      exact")
print(f"mean entropy (nats)      {entropy.mean():.6f}    {page_mean_entropy(mu, nu):.6f}")
print(f"mean purity              {purity.mean():.6f}    {lubkin_mean_purity(mu, nu):.6f}")
print(f"purity variance          {purity.var(ddof=1):.3e}  {purity_variance(mu, nu):.3e}")
print(f"mean linear entropy      {slin.mean():.6f}    {tri.mean:.6f}")
print(f"linear entropy variance  {slin.var(ddof=1):.3e}  {tri.variance:.3e}")

# the distribution is extremely narrow: essentially all states look almost
# maximally entangled, concentrated within a few std of the mean
print()
print("histogram of the normalized linear entropy vs the Airy density")
print("(16 x 16 split; counts per bin, density-scaled)")
lo, hi = tri.mean - 5 * np.sqrt(tri.variance), tri.mean + 4 * np.sqrt(tri.variance)
counts, edges = np.histogram(slin, bins=12, range=(lo, hi))
width = edges[1] - edges[0]
for b in range(12):
    center = 0.5 * (edges[b] + edges[b + 1])
    observed = counts[b] / (SAMPLES * width)
    model = airy_pdf(center, mu, nu)
    bar = "#" * int(round(observed / 4))
    print(f"s={center:.4f}  observed {observed:7.2f}  airy {model:7.2f}  {bar}")

# at the smallest split (one qubit against the rest) the density is known
# exactly; the Airy form is not needed there
print()
small = Partition(NUM_QUBITS, (1,))
s1 = evaluate_measure_batch("linear_entropy", amps, NUM_QUBITS, partition=small)
grid = np.array([0.5, 0.8, 0.95, 0.99])
counts, edges = np.histogram(s1, bins=50, range=(0.0, 1.0))
print("one qubit against the rest: exact density at a few points")
for s in grid:
    b = min(int(s * 50), 49)
    observed = counts[b] / (SAMPLES * 0.02)
    print(f"s={s:.2f}  observed {observed:6.2f}  exact {exact_pdf_mu2(s, 2**(NUM_QUBITS-1)):6.2f}")
