"""Entanglement functionals for qubit registers.

Scalar operations take StateVector / DensityMatrix; the _batch_* twins act
on (batch, 2^N) amplitude arrays and back the experiment harness.  Unit
conventions: von Neumann entropy in nats (natural log), entanglement of
formation in bits (base-2 binary entropy), linear entropy normalized to
[0, 1] by mu/(mu-1).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .tensor import (
    DensityMatrix,
    Partition,
    StateVector,
    hermitian_eigenvalues,
    hermitian_psd_sqrt,
    partial_trace,
)

MEASURE_IDS = (
    "purity",
    "linear_entropy",
    "von_neumann",
    "concurrence_c",
    "concurrence",
    "eof",
    "mw_q",
    "tangle",
)

# short command-line spellings
MEASURE_ALIASES = {
    "slin": "linear_entropy",
    "vn": "von_neumann",
    "q": "mw_q",
    "tau": "tangle",
    "c": "concurrence_c",
}

# spin-flip sign pattern of sigma_y (x) sigma_y in the computational basis
_FLIP_SIGNS = np.array([-1.0, 1.0, 1.0, -1.0])


def purity(rho: DensityMatrix) -> float:
    """tr(rho^2) for a valid density matrix; lies in [1/d, 1]."""
    m = rho.matrix
    return float(np.vdot(m, m).real)


def linear_entropy(rho: DensityMatrix, mu=None) -> float:
    """Normalized linear entropy (mu/(mu-1)) (1 - tr rho^2), in [0, 1].

    mu defaults to the matrix dimension; pass the smaller Schmidt dimension
    explicitly when rho is the larger half of an uneven split.
    """
    if mu is None:
        mu = rho.dim
    mu = int(mu)
    if mu < 2:
        raise ValueError("mu must be at least 2 (normalization undefined at 1)")
    return mu / (mu - 1) * (1.0 - purity(rho))


def von_neumann_entropy(rho: DensityMatrix) -> float:
    """-sum p ln p over the spectrum, with 0 ln 0 = 0; in [0, ln d]."""
    w = hermitian_eigenvalues(rho.matrix)
    w = np.clip(w, 0.0, None)
    nz = w[w > 0]
    return float(-(nz * np.log(nz)).sum())


def _spin_flipped(matrix) -> np.ndarray:
    # (sigma_y x sigma_y) conj(rho) (sigma_y x sigma_y), elementwise form
    return np.outer(_FLIP_SIGNS, _FLIP_SIGNS) * np.conj(matrix)[::-1, ::-1]


def concurrence_c(rho: DensityMatrix) -> float:
    """Unclipped pairwise quantity c = l1 - l2 - l3 - l4, in [-1/2, 1].

    The l_i are the descending square roots of the eigenvalues of
    rho (sy x sy) conj(rho) (sy x sy), computed through the Hermitian
    similar form sqrt(rho) rho~ sqrt(rho).
    """
    if rho.dim != 4:
        raise ValueError(f"pairwise measure needs a 4-dim matrix, got {rho.dim}")
    root = hermitian_psd_sqrt(rho.matrix)
    w = hermitian_eigenvalues(root @ _spin_flipped(rho.matrix) @ root)
    lam = np.sqrt(np.clip(w, 0.0, None))  # ascending
    return float(2.0 * lam[-1] - lam.sum())


def concurrence(rho: DensityMatrix) -> float:
    """C = max(0, c); 0 for separable pairs, 1 for Bell pairs."""
    return max(0.0, concurrence_c(rho))


def _binary_entropy_bits(x) -> float:
    if x <= 0.0 or x >= 1.0:
        return 0.0
    return float(-(x * np.log2(x) + (1 - x) * np.log2(1 - x)))


def entanglement_of_formation(rho: DensityMatrix) -> float:
    """E_f = h((1 + sqrt(1 - C^2))/2) in bits; 1 for a Bell pair."""
    big = concurrence(rho)
    return _binary_entropy_bits((1.0 + np.sqrt(max(0.0, 1.0 - big * big))) / 2.0)


def meyer_wallach_q(psi: StateVector, algorithm="wedge") -> float:
    """Global multipartite measure Q in [0, 1]; 0 iff psi is a product state.

    algorithm "wedge" sums, per qubit, the Gram determinant of the two
    amplitude slices selected by that qubit; "purity" evaluates
    2 (1 - mean single-qubit reduction purity).  The two agree to 1e-10.
    """
    num = psi.num_qubits
    if algorithm == "wedge":
        return float(_batch_mw_q(psi.amplitudes[None, :], num)[0])
    if algorithm == "purity":
        total = 0.0
        for k in range(1, num + 1):
            total += purity(partial_trace(psi, Partition(num, (k,))))
        return 2.0 * (1.0 - total / num)
    raise ValueError(f"unknown algorithm {algorithm!r}")


def n_tangle(psi: StateVector) -> float:
    """|<psi| sy^N |conj(psi)>|^2 for even N, in [0, 1]; 1 on cat states."""
    num = psi.num_qubits
    if num % 2 != 0:
        raise ValueError("the register tangle is defined for even qubit counts only")
    return float(_batch_tangle(psi.amplitudes[None, :], num)[0])


@dataclass(frozen=True)
class MeasureResult:
    """One evaluated measure, clamped to its declared interval."""

    measure_id: str
    value: float
    partition: Partition | None = None
    pair: tuple[int, int] | None = None


def _pair_partition(num_qubits, pair) -> Partition | None:
    """Partition keeping the pair, or None when the pair is the register.

    On a two-qubit register there is nothing to trace out, so callers get
    None and use the full pure-state projector instead.
    """
    i, j = (int(pair[0]), int(pair[1]))
    if i == j:
        raise ValueError("pair qubits must be distinct")
    if not (1 <= i <= num_qubits and 1 <= j <= num_qubits):
        raise ValueError("pair qubits must lie in 1..num_qubits")
    if num_qubits == 2:
        return None
    return Partition(num_qubits, tuple(sorted((i, j))))


def evaluate_measure(measure_id, psi: StateVector, partition=None, pair=None):
    """Evaluate one measure on psi, reducing by partition or pair as needed.

    purity / linear_entropy / von_neumann require partition; the pairwise
    family requires pair; mw_q and tangle act on the full register.
    Values are clamped to the measure's declared interval.
    """
    if measure_id not in MEASURE_IDS:
        raise ValueError(f"unknown measure {measure_id!r}")
    if measure_id in ("purity", "linear_entropy", "von_neumann"):
        if partition is None:
            raise ValueError(f"{measure_id} requires a partition")
        rho = partial_trace(psi, partition)
        # rank of either reduction is at most mu, so the mu bounds apply
        if measure_id == "purity":
            value = min(1.0, max(1.0 / partition.mu, purity(rho)))
        elif measure_id == "linear_entropy":
            value = float(np.clip(linear_entropy(rho, mu=partition.mu), 0.0, 1.0))
        else:
            value = float(np.clip(von_neumann_entropy(rho), 0.0,
                                  np.log(partition.mu)))
    elif measure_id in ("concurrence_c", "concurrence", "eof"):
        if pair is None:
            raise ValueError(f"{measure_id} requires a qubit pair")
        part = _pair_partition(psi.num_qubits, pair)
        if part is None:
            amp = psi.amplitudes
            rho = DensityMatrix(np.outer(amp, amp.conj()), validate=False)
        else:
            rho = partial_trace(psi, part)
        if measure_id == "concurrence_c":
            value = float(np.clip(concurrence_c(rho), -0.5, 1.0))
        elif measure_id == "concurrence":
            value = float(np.clip(concurrence(rho), 0.0, 1.0))
        else:
            value = float(np.clip(entanglement_of_formation(rho), 0.0, 1.0))
    elif measure_id == "mw_q":
        value = float(np.clip(meyer_wallach_q(psi), 0.0, 1.0))
    else:
        value = float(np.clip(n_tangle(psi), 0.0, 1.0))
    return MeasureResult(measure_id, value, partition=partition,
                         pair=tuple(pair) if pair is not None else None)


# ---------------------------------------------------------------------------
# batch twins on (batch, 2^N) amplitude arrays


def _smaller_side_gram(amps, num_qubits, partition: Partition) -> np.ndarray:
    """(batch, m, m) Gram matrix on the smaller half of the split.

    Shares the nonzero spectrum (hence purity and entropies) with the
    reduced density matrix of either half.
    """
    batch = amps.shape[0]
    axes = tuple(k - 1 for k in partition.keep)
    rest = tuple(k for k in range(num_qubits) if k not in axes)
    arr = amps.reshape((batch,) + (2,) * num_qubits)
    arr = np.transpose(arr, (0,) + tuple(a + 1 for a in axes + rest))
    arr = arr.reshape(batch, partition.kept_dim, partition.traced_dim)
    if partition.kept_dim <= partition.traced_dim:
        return np.einsum("bkt,blt->bkl", arr, arr.conj())
    return np.einsum("bkt,bks->bts", arr.conj(), arr)


def _batch_purity(amps, num_qubits, partition) -> np.ndarray:
    gram = _smaller_side_gram(amps, num_qubits, partition)
    return np.einsum("bij,bij->b", gram, gram.conj()).real


def _batch_linear_entropy(amps, num_qubits, partition) -> np.ndarray:
    mu = partition.mu
    return mu / (mu - 1) * (1.0 - _batch_purity(amps, num_qubits, partition))


def _batch_von_neumann(amps, num_qubits, partition) -> np.ndarray:
    w = np.linalg.eigvalsh(_smaller_side_gram(amps, num_qubits, partition))
    w = np.clip(w, 0.0, None)
    terms = np.where(w > 0, -w * np.log(np.where(w > 0, w, 1.0)), 0.0)
    return terms.sum(axis=-1)


def _batch_pair_density(amps, num_qubits, pair) -> np.ndarray:
    """(batch, 4, 4) two-qubit reductions, first pair qubit more significant."""
    part = _pair_partition(num_qubits, pair)
    if part is None:
        return np.einsum("bi,bj->bij", amps, amps.conj())
    batch = amps.shape[0]
    axes = tuple(k - 1 for k in part.keep)
    rest = tuple(k for k in range(num_qubits) if k not in axes)
    arr = amps.reshape((batch,) + (2,) * num_qubits)
    arr = np.transpose(arr, (0,) + tuple(a + 1 for a in axes + rest))
    arr = arr.reshape(batch, 4, part.traced_dim)
    return np.einsum("bit,bjt->bij", arr, arr.conj())


def _batch_concurrence_c(amps, num_qubits, pair) -> np.ndarray:
    rho = _batch_pair_density(amps, num_qubits, pair)
    flipped = (np.outer(_FLIP_SIGNS, _FLIP_SIGNS)[None, :, :]
               * rho.conj()[:, ::-1, ::-1])
    w, v = np.linalg.eigh(rho)
    root = (v * np.sqrt(np.clip(w, 0.0, None))[:, None, :]) @ np.conj(
        np.transpose(v, (0, 2, 1))
    )
    lam2 = np.linalg.eigvalsh(root @ flipped @ root)
    lam = np.sqrt(np.clip(lam2, 0.0, None))
    return 2.0 * lam[:, -1] - lam.sum(axis=-1)


def _batch_mw_q(amps, num_qubits) -> np.ndarray:
    """Wedge-form Q on a batch: per qubit, the Gram determinant of the two
    slices selected by that qubit, via |a|^2|b|^2 - |<a|b>|^2."""
    batch, dim = amps.shape
    total = np.zeros(batch)
    for k in range(1, num_qubits + 1):
        arr = amps.reshape(batch, 2 ** (k - 1), 2, dim >> k)
        a0 = arr[:, :, 0, :].reshape(batch, -1)
        a1 = arr[:, :, 1, :].reshape(batch, -1)
        n0 = np.einsum("bi,bi->b", a0, a0.conj()).real
        n1 = np.einsum("bi,bi->b", a1, a1.conj()).real
        ip = np.einsum("bi,bi->b", a0.conj(), a1)
        total += n0 * n1 - np.abs(ip) ** 2
    return 4.0 / num_qubits * total


def _parity_signs(num_qubits) -> np.ndarray:
    codes = np.arange(2**num_qubits, dtype=np.uint64)
    return np.where(np.bitwise_count(codes) % 2 == 0, 1.0, -1.0)


def _batch_tangle(amps, num_qubits) -> np.ndarray:
    if num_qubits % 2 != 0:
        raise ValueError("the register tangle is defined for even qubit counts only")
    signs = _parity_signs(num_qubits)
    overlap = np.einsum("d,bd,bd->b", signs, amps, amps[:, ::-1])
    return np.abs(overlap) ** 2


def evaluate_measure_batch(measure_id, amps, num_qubits,
                           partition=None, pair=None) -> np.ndarray:
    """Batch twin of evaluate_measure: (batch,) clamped values."""
    if measure_id not in MEASURE_IDS:
        raise ValueError(f"unknown measure {measure_id!r}")
    arr = np.asarray(amps, dtype=np.complex128)
    if arr.ndim != 2 or arr.shape[1] != 2**num_qubits:
        raise ValueError("amplitudes must have shape (batch, 2**num_qubits)")
    if measure_id in ("purity", "linear_entropy", "von_neumann"):
        if partition is None:
            raise ValueError(f"{measure_id} requires a partition")
        if measure_id == "purity":
            lo = 1.0 / partition.mu
            return np.clip(_batch_purity(arr, num_qubits, partition), lo, 1.0)
        if measure_id == "linear_entropy":
            return np.clip(_batch_linear_entropy(arr, num_qubits, partition),
                           0.0, 1.0)
        return np.clip(_batch_von_neumann(arr, num_qubits, partition),
                       0.0, np.log(partition.mu))
    if measure_id in ("concurrence_c", "concurrence", "eof"):
        if pair is None:
            raise ValueError(f"{measure_id} requires a qubit pair")
        c = _batch_concurrence_c(arr, num_qubits, pair)
        if measure_id == "concurrence_c":
            return np.clip(c, -0.5, 1.0)
        big = np.clip(c, 0.0, 1.0)
        if measure_id == "concurrence":
            return big
        x = (1.0 + np.sqrt(np.clip(1.0 - big * big, 0.0, None))) / 2.0
        inner = np.where((x > 0) & (x < 1), x, 0.5)
        h = -(inner * np.log2(inner) + (1 - inner) * np.log2(1 - inner))
        return np.where((x > 0) & (x < 1), h, 0.0)
    if measure_id == "mw_q":
        return np.clip(_batch_mw_q(arr, num_qubits), 0.0, 1.0)
    return np.clip(_batch_tangle(arr, num_qubits), 0.0, 1.0)
