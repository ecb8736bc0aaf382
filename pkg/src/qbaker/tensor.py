"""Linear-algebra kernels for qubit registers.

Amplitude indexing is big-endian throughout the package: qubit 1 is the
most significant bit, so the basis index of the outcome string x_1..x_N is
j = sum_l x_l 2^(N-l).  Global phases are always kept; nothing here is
defined only up to a ray.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

NORM_ATOL = 1e-12          # unit-norm tolerance for StateVector
DENSITY_ATOL = 1e-12       # Hermiticity/trace tolerance for DensityMatrix
PSD_FLOOR = -1e-10         # eigenvalues above this are treated as zero
EIG_HERMITIAN_ATOL = 1e-10
EIG_DIM_MAX = 1024
SQRT_PSD_REJECT = -1e-8    # below this the matrix is not PSD, reject
DENSE_QUBIT_MAX = 12


class CapacityError(Exception):
    """A request exceeds a hard size or memory bound."""


class StateVector:
    """Normalized pure state of a qubit register.

    The amplitude array is frozen (read-only) at construction; operations
    return new instances.  A register of zero qubits (a single amplitude
    of unit modulus) is allowed as a degenerate case.
    """

    __slots__ = ("num_qubits", "amplitudes")

    def __init__(self, amplitudes):
        amps = np.array(amplitudes, dtype=np.complex128)
        if amps.ndim != 1 or amps.size < 1:
            raise ValueError("amplitudes must be a nonempty 1-d sequence")
        n = int(amps.size).bit_length() - 1
        if amps.size != 2**n:
            raise ValueError(f"amplitude count {amps.size} is not a power of two")
        norm = np.linalg.norm(amps)
        if abs(norm - 1.0) > NORM_ATOL:
            raise ValueError(f"state norm {norm!r} deviates from 1 beyond {NORM_ATOL}")
        amps.flags.writeable = False
        self.num_qubits = n
        self.amplitudes = amps

    @property
    def dim(self) -> int:
        return self.amplitudes.size

    @classmethod
    def from_bits(cls, bits) -> "StateVector":
        """Computational basis state for a bit string like "0110" or (0,1,1,0)."""
        seq = _as_bits(bits)
        if not seq:
            raise ValueError("at least one bit is required")
        amps = np.zeros(2 ** len(seq), dtype=np.complex128)
        index = 0
        for b in seq:
            index = (index << 1) | b
        amps[index] = 1.0
        return cls(amps)

    def __repr__(self):
        return f"StateVector(num_qubits={self.num_qubits})"


def _as_bits(bits) -> tuple[int, ...]:
    if isinstance(bits, str):
        if not all(ch in "01" for ch in bits):
            raise ValueError(f"bit string may contain only 0 and 1, got {bits!r}")
        return tuple(int(ch) for ch in bits)
    seq = tuple(int(b) for b in bits)
    if any(b not in (0, 1) for b in seq):
        raise ValueError(f"bits must be 0 or 1, got {seq}")
    return seq


def product_state(factors) -> StateVector:
    """Tensor product of normalized factor states (each a power-of-two vector)."""
    out = np.array([1.0 + 0.0j])
    for f in factors:
        out = np.kron(out, np.asarray(f, dtype=np.complex128))
    return StateVector(out)


class DensityMatrix:
    """Hermitian, unit-trace, positive-semidefinite operator.

    validate=False skips the Hermiticity/trace/spectrum checks; it is meant
    for internal construction from Gram factors, which satisfy all three by
    construction.
    """

    __slots__ = ("dim", "matrix")

    def __init__(self, matrix, *, validate=True):
        m = np.array(matrix, dtype=np.complex128)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise ValueError(f"density matrix must be square, got shape {m.shape}")
        if validate:
            if np.abs(m - m.conj().T).max() > DENSITY_ATOL:
                raise ValueError("matrix is not Hermitian within tolerance")
            tr = m.trace()
            if abs(tr - 1.0) > DENSITY_ATOL:
                raise ValueError(f"trace {tr!r} deviates from 1 beyond {DENSITY_ATOL}")
            if np.linalg.eigvalsh(m).min() < PSD_FLOOR:
                raise ValueError("matrix has a negative eigenvalue beyond tolerance")
        m.flags.writeable = False
        self.dim = m.shape[0]
        self.matrix = m

    def __repr__(self):
        return f"DensityMatrix(dim={self.dim})"


@dataclass(frozen=True)
class Partition:
    """Bipartition of an N-qubit register.

    `keep` lists the qubits of the kept subsystem, strictly increasing,
    a nonempty proper subset of 1..N.  The convention dimension mu is the
    smaller of the two subsystem dimensions regardless of which side is
    kept.
    """

    num_qubits: int
    keep: tuple[int, ...]

    def __post_init__(self):
        if self.num_qubits < 2:
            raise ValueError("a partition needs at least two qubits")
        keep = tuple(int(q) for q in self.keep)
        object.__setattr__(self, "keep", keep)
        if not keep or len(keep) >= self.num_qubits:
            raise ValueError("keep must be a nonempty proper subset of the register")
        if any(not 1 <= q <= self.num_qubits for q in keep):
            raise ValueError(f"qubit labels must lie in 1..{self.num_qubits}")
        if any(a >= b for a, b in zip(keep, keep[1:])):
            raise ValueError("keep must be strictly increasing")

    @property
    def traced(self) -> tuple[int, ...]:
        kept = set(self.keep)
        return tuple(q for q in range(1, self.num_qubits + 1) if q not in kept)

    @property
    def kept_dim(self) -> int:
        return 2 ** len(self.keep)

    @property
    def traced_dim(self) -> int:
        return 2 ** (self.num_qubits - len(self.keep))

    @property
    def mu(self) -> int:
        return min(self.kept_dim, self.traced_dim)

    @property
    def nu(self) -> int:
        return max(self.kept_dim, self.traced_dim)


def centered_dft(dim, vec, inverse=False) -> np.ndarray:
    """Centered discrete Fourier transform with half-integer index offsets.

    The kernel is F[j,k] = exp(2 pi i (j+1/2)(k+1/2)/M)/sqrt(M), i.e. the
    anti-periodic variant of the DFT; the periodic (integer-offset) kernel
    is out of scope here.  Factorized as pre-phase x FFT x post-phase so a
    transform costs O(M log M).  `vec` may carry leading batch axes; the
    transform acts along the last axis.  inverse=True applies the adjoint
    kernel.
    """
    m = int(dim)
    if m < 1 or m & (m - 1):
        raise ValueError(f"dimension must be a power of two, got {dim}")
    v = np.asarray(vec, dtype=np.complex128)
    if v.shape[-1] != m:
        raise ValueError(f"vector length {v.shape[-1]} does not match dimension {m}")
    # e^{i pi (j+1/2)/M} carries the output phase and the global e^{i pi/(2M)}
    post = np.exp(1j * np.pi * (np.arange(m) + 0.5) / m)
    pre = np.exp(1j * np.pi * np.arange(m) / m)
    if inverse:
        return post.conj() * np.fft.fft(v * pre.conj(), axis=-1) / np.sqrt(m)
    return post * np.fft.ifft(v * pre, axis=-1) * np.sqrt(m)


def centered_dft_matrix(dim, inverse=False) -> np.ndarray:
    """Dense kernel of centered_dft; the O(M^2) cross-validation path."""
    m = int(dim)
    if m < 1 or m & (m - 1):
        raise ValueError(f"dimension must be a power of two, got {dim}")
    half = np.arange(m) + 0.5
    kernel = np.exp(2j * np.pi * np.outer(half, half) / m) / np.sqrt(m)
    return kernel.conj().T if inverse else kernel


_NAMED_KERNELS = ("centered_dft", "inverse_centered_dft", "identity")


def apply_on_suffix(op_dim, kernel, psi: StateVector, start_qubit) -> StateVector:
    """Apply a transform to qubits start_qubit..N of psi.

    Those qubits span contiguous blocks of op_dim amplitudes sharing a
    basis prefix; the transform acts on every block independently.
    `kernel` is one of the named transforms "centered_dft",
    "inverse_centered_dft", "identity", or a callable mapping an
    (..., op_dim) array to a like-shaped array.
    """
    n = psi.num_qubits
    if not 1 <= start_qubit <= n:
        raise ValueError(f"start_qubit {start_qubit} outside 1..{n}")
    if op_dim != 2 ** (n - start_qubit + 1):
        raise ValueError(
            f"op_dim {op_dim} does not span qubits {start_qubit}..{n}"
        )
    if isinstance(kernel, str):
        if kernel == "centered_dft":
            fn = lambda blocks: centered_dft(op_dim, blocks)
        elif kernel == "inverse_centered_dft":
            fn = lambda blocks: centered_dft(op_dim, blocks, inverse=True)
        elif kernel == "identity":
            fn = lambda blocks: blocks
        else:
            raise ValueError(f"unknown kernel name {kernel!r}; use one of {_NAMED_KERNELS}")
    elif callable(kernel):
        fn = kernel
    else:
        raise ValueError("kernel must be a name or a callable")
    blocks = psi.amplitudes.reshape(-1, op_dim)
    out = np.asarray(fn(blocks), dtype=np.complex128)
    if out.shape != blocks.shape:
        raise ValueError("kernel changed the block shape")
    return StateVector(out.reshape(-1))


def partial_trace(psi: StateVector, part: Partition) -> DensityMatrix:
    """Reduced density matrix of psi on the kept qubits of the partition.

    Computed as the Gram matrix of the amplitude tensor reshaped to
    (kept, traced), which is Hermitian and PSD by construction.
    """
    if part.num_qubits != psi.num_qubits:
        raise ValueError(
            f"partition is for {part.num_qubits} qubits, state has {psi.num_qubits}"
        )
    n = psi.num_qubits
    tensor = psi.amplitudes.reshape((2,) * n)
    kept_axes = [q - 1 for q in part.keep]
    traced_axes = [q - 1 for q in part.traced]
    a = tensor.transpose(kept_axes + traced_axes).reshape(part.kept_dim, -1)
    return DensityMatrix(a @ a.conj().T, validate=False)


def _require_hermitian(matrix, atol) -> np.ndarray:
    m = np.asarray(matrix, dtype=np.complex128)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError(f"matrix must be square, got shape {m.shape}")
    if np.abs(m - m.conj().T).max() > atol:
        raise ValueError(f"matrix is not Hermitian within {atol}")
    return m


def hermitian_eigenvalues(matrix) -> np.ndarray:
    """Ascending real eigenvalues of a Hermitian matrix (dim <= 1024)."""
    m = _require_hermitian(matrix, EIG_HERMITIAN_ATOL)
    if m.shape[0] > EIG_DIM_MAX:
        raise ValueError(f"dimension {m.shape[0]} exceeds the {EIG_DIM_MAX} cap")
    return np.linalg.eigvalsh(m)


def hermitian_psd_sqrt(matrix) -> np.ndarray:
    """Hermitian square root of a PSD matrix via eigendecomposition.

    Eigenvalues in [-1e-8, 0) are clamped to zero; anything lower means
    the input is not PSD and is rejected.
    """
    m = _require_hermitian(matrix, EIG_HERMITIAN_ATOL)
    if m.shape[0] > EIG_DIM_MAX:
        raise ValueError(f"dimension {m.shape[0]} exceeds the {EIG_DIM_MAX} cap")
    w, v = np.linalg.eigh(m)
    if w.min() < SQRT_PSD_REJECT:
        raise ValueError(f"matrix is not PSD: eigenvalue {w.min()!r}")
    w = np.clip(w, 0.0, None)
    return (v * np.sqrt(w)) @ v.conj().T
