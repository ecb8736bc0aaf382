"""Quantized baker's maps on qubit registers.

The map with n position bits factors as

    (partial Fourier on qubits n..N) o (cyclic shift of qubits 1..n)
      o (inverse partial Fourier on qubits n+1..N),

with every Fourier kernel the centered (anti-periodic) variant from
qbaker.tensor.  The full-shift member (n = N) is strictly periodic and
acts on product states qubit by qubit; its complete spectrum is available
in closed form.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .tensor import (
    CapacityError,
    DENSE_QUBIT_MAX,
    StateVector,
    apply_on_suffix,
    centered_dft,
    centered_dft_matrix,
    product_state,
)

_STRATEGIES = ("matrix_free", "dense")


@dataclass(frozen=True)
class BakerMapConfig:
    """Selects the map on num_qubits qubits with position_bits position bits."""

    num_qubits: int
    position_bits: int
    strategy: str = "matrix_free"

    def __post_init__(self):
        if self.num_qubits < 1:
            raise ValueError("num_qubits must be at least 1")
        if not 1 <= self.position_bits <= self.num_qubits:
            raise ValueError(
                f"position_bits must lie in 1..{self.num_qubits}, got {self.position_bits}"
            )
        if self.strategy not in _STRATEGIES:
            raise ValueError(f"strategy must be one of {_STRATEGIES}")
        if self.strategy == "dense" and self.num_qubits > DENSE_QUBIT_MAX:
            raise ValueError(
                f"dense strategy is limited to {DENSE_QUBIT_MAX} qubits"
            )


def _shift_gather(num_qubits, n) -> np.ndarray:
    """Index map realizing the cyclic left shift of the first n qubits.

    out[y] = in[gather[y]]: the source index restores the rotated prefix,
    i.e. gather applies the inverse (right) rotation to the first n bits.
    """
    suffix = num_qubits - n
    y = np.arange(2**num_qubits)
    low = y & ((1 << suffix) - 1)
    top = y >> suffix
    last = top & 1
    right_rotated = (last << (n - 1)) | (top >> 1)
    return (right_rotated << suffix) | low


def partial_fourier(n, psi: StateVector, inverse=False) -> StateVector:
    """Apply the partial Fourier transform fixing the first n qubits.

    Identity on qubits 1..n, centered DFT on qubits n+1..N.  n = 0 is the
    full centered DFT; n = N degenerates to the scalar i (or -i inverted).
    """
    num = psi.num_qubits
    if not 0 <= n <= num:
        raise ValueError(f"n must lie in 0..{num}, got {n}")
    if n == num:
        return StateVector(psi.amplitudes * (-1j if inverse else 1j))
    op_dim = 2 ** (num - n)
    name = "inverse_centered_dft" if inverse else "centered_dft"
    return apply_on_suffix(op_dim, name, psi, n + 1)


def shift(n, psi: StateVector) -> StateVector:
    """Cyclic left shift of the first n qubits: |x1 x2 .. xn> -> |x2 .. xn x1>.

    A pure amplitude permutation, exact to the bit.
    """
    num = psi.num_qubits
    if not 1 <= n <= num:
        raise ValueError(f"n must lie in 1..{num}, got {n}")
    if n == 1:
        return psi
    return StateVector(np.take(psi.amplitudes, _shift_gather(num, n)))


class BakerKernel:
    """Matrix-free applier for one baker map, reusable across many states.

    Precomputes the FFT pre/post phases and the shift permutation once;
    apply() then costs two FFTs, three elementwise products and one gather
    per state.  Input arrays may carry leading batch axes with the
    register on the last axis, so whole ensembles evolve in one call.
    """

    def __init__(self, num_qubits, position_bits):
        if not 1 <= position_bits <= num_qubits:
            raise ValueError(
                f"position_bits must lie in 1..{num_qubits}, got {position_bits}"
            )
        self.num_qubits = int(num_qubits)
        self.position_bits = int(position_bits)
        self.dim = 2**num_qubits
        n = self.position_bits
        # inverse transform block (qubits n+1..N) and forward block (qubits n..N)
        self.block_in = 2 ** (num_qubits - n)
        self.block_out = 2 ** (num_qubits - n + 1)
        m1, m2 = self.block_in, self.block_out
        gather = _shift_gather(num_qubits, n)
        # inverse kernel: conj(post1) * fft(conj(pre1) x) / sqrt(m1), with
        # post1 including the global phase; forward likewise via ifft.
        pre1 = np.exp(-1j * np.pi * np.arange(m1) / m1) / np.sqrt(m1)
        post1 = np.exp(-1j * np.pi * (np.arange(m1) + 0.5) / m1)
        pre2 = np.exp(1j * np.pi * np.arange(m2) / m2)
        post2 = np.exp(1j * np.pi * (np.arange(m2) + 0.5) / m2) * np.sqrt(m2)
        # fold (post1 tiled, then permuted) and (pre2 tiled) into one factor
        mid = np.tile(post1, self.dim // m1)[gather] * np.tile(pre2, self.dim // m2)
        self._pre = pre1
        self._mid = mid
        self._post = np.tile(post2, self.dim // m2)
        self._gather = gather

    def apply(self, amplitudes) -> np.ndarray:
        """One map application on (..., 2^N) amplitudes; returns a new array."""
        arr = np.asarray(amplitudes, dtype=np.complex128)
        if arr.shape[-1] != self.dim:
            raise ValueError(
                f"last axis {arr.shape[-1]} does not match register dim {self.dim}"
            )
        shape = arr.shape
        if self.block_in > 1:
            work = np.fft.fft(arr.reshape(-1, self.block_in) * self._pre, axis=-1)
            work = work.reshape(-1, self.dim)
        else:
            # one-point inverse transform is the scalar -i, carried by _mid
            work = arr.reshape(-1, self.dim) * self._pre[0]
        work = np.take(work, self._gather, axis=-1) * self._mid
        work = np.fft.ifft(work.reshape(-1, self.block_out), axis=-1)
        return (work.reshape(-1, self.dim) * self._post).reshape(shape)


def baker_step(cfg: BakerMapConfig, psi: StateVector) -> StateVector:
    """Apply the configured baker map to psi once."""
    if psi.num_qubits != cfg.num_qubits:
        raise ValueError(
            f"state has {psi.num_qubits} qubits, map expects {cfg.num_qubits}"
        )
    if cfg.strategy == "dense":
        return StateVector(baker_matrix(cfg) @ psi.amplitudes)
    kernel = BakerKernel(cfg.num_qubits, cfg.position_bits)
    return StateVector(kernel.apply(psi.amplitudes))


def baker_matrix(cfg: BakerMapConfig) -> np.ndarray:
    """Dense unitary of the configured map, built by composing the factors."""
    if cfg.num_qubits > DENSE_QUBIT_MAX:
        raise CapacityError(
            f"dense matrix for {cfg.num_qubits} qubits exceeds the "
            f"{DENSE_QUBIT_MAX}-qubit cap"
        )
    num, n = cfg.num_qubits, cfg.position_bits
    dim = 2**num
    forward = np.kron(
        np.eye(2 ** (n - 1)), centered_dft_matrix(2 ** (num - n + 1))
    )
    backward = np.kron(
        np.eye(2**n), centered_dft_matrix(2 ** (num - n), inverse=True)
    )
    shift_matrix = np.eye(dim)[_shift_gather(num, n)]
    return forward @ shift_matrix @ backward


@dataclass(frozen=True)
class PartialBasisLabel:
    """Label of a partially Fourier-transformed basis state.

    position_bits (x_1..x_n) stay in the computational basis; momentum_bits
    (a_1..a_m) label the transformed suffix, a_1 being the bit adjacent to
    the position/momentum boundary.  The state is localized at position
    0.x_1..x_n1 and momentum 0.a_1..a_m1 on the unit torus.
    """

    momentum_bits: tuple[int, ...]
    position_bits: tuple[int, ...]

    def __post_init__(self):
        mom = tuple(int(b) for b in self.momentum_bits)
        pos = tuple(int(b) for b in self.position_bits)
        if any(b not in (0, 1) for b in mom + pos):
            raise ValueError("bits must be 0 or 1")
        if len(mom) + len(pos) < 1:
            raise ValueError("label must address at least one qubit")
        object.__setattr__(self, "momentum_bits", mom)
        object.__setattr__(self, "position_bits", pos)

    @property
    def num_qubits(self) -> int:
        return len(self.momentum_bits) + len(self.position_bits)


def make_partial_basis_state(label: PartialBasisLabel) -> StateVector:
    """Basis state of the partially transformed basis for the given label.

    Defined as the partial Fourier transform (fixing the position bits) of
    the computational basis state holding position bits first, then
    momentum bits.  For n = N this is i times the computational basis
    state; for n = 0 it is a momentum eigenstate.
    """
    n = len(label.position_bits)
    basis = StateVector.from_bits(label.position_bits + label.momentum_bits)
    return partial_fourier(n, basis)


def _product_form_state(label: PartialBasisLabel) -> StateVector:
    """Independent product-form construction of the same state.

    Each transformed qubit k > n is (|0> + e^{2 pi i f_k} |1>)/sqrt(2)
    with f_k the binary fraction 0.a_{N-k+1}..a_m 1, and a global phase
    e^{i pi (0.a_1..a_m 1)} in front.  Used as a cross-check oracle for
    make_partial_basis_state, not as the execution path.
    """
    mom = label.momentum_bits
    n = len(label.position_bits)
    num = label.num_qubits
    factors = [np.array([1 - b, b], dtype=complex) for b in label.position_bits]
    for k in range(n + 1, num + 1):
        digits = [mom[num - k + i] for i in range(k - n)]  # a_{N-k+1} .. a_m
        frac = sum(d / 2 ** (i + 1) for i, d in enumerate(digits))
        frac += 1.0 / 2 ** (k - n + 1)
        factors.append(np.array([1.0, np.exp(2j * np.pi * frac)]) / np.sqrt(2))
    lead = sum(d / 2 ** (i + 1) for i, d in enumerate(mom)) + 1.0 / 2 ** (len(mom) + 1)
    state = product_state(factors)
    return StateVector(np.exp(1j * np.pi * lead) * state.amplitudes)


def verify_basis_mapping(cfg: BakerMapConfig) -> bool:
    """Check that the map permutes the partially transformed basis.

    The input label with momentum bits (a_1..a_m) and position bits
    (x_1..x_n) must map, phases included, to the label with momentum bits
    (x_1, a_1..a_m) and position bits (x_2..x_n).  Exhaustive over all
    2^N labels, so capped at N <= 8.
    """
    if cfg.num_qubits > 8:
        raise ValueError("exhaustive label check is capped at 8 qubits")
    num, n = cfg.num_qubits, cfg.position_bits
    kernel = BakerKernel(num, n)
    seen = set()
    for code in range(2**num):
        bits = tuple((code >> (num - 1 - i)) & 1 for i in range(num))
        pos, mom = bits[:n], bits[n:]
        image = PartialBasisLabel(momentum_bits=(pos[0],) + mom,
                                  position_bits=pos[1:])
        seen.add(image)
        state = make_partial_basis_state(PartialBasisLabel(mom, pos))
        stepped = kernel.apply(state.amplitudes)
        expected = make_partial_basis_state(image)
        if np.abs(stepped - expected.amplitudes).max() > 1e-11:
            return False
    return len(seen) == 2**num


@dataclass(frozen=True)
class PeriodicEigenpair:
    """Eigenpair of the full-shift map, with the cycling period of its label."""

    eigenvalue: complex
    eigenstate: StateVector
    period: int


# single-qubit eigenstates of the full-shift map's local action, with
# eigenvalues +1 and -i
_LOCAL_PLUS = np.array([1.0, 1.0]) / np.sqrt(2)
_LOCAL_MINUS = np.array([1.0, -1.0]) / np.sqrt(2)


def periodic_spectrum(num_qubits) -> list[PeriodicEigenpair]:
    """All 2^N eigenpairs of the full-shift map (position_bits = N).

    Each binary necklace of single-qubit eigenlabels (local eigenvalues 1
    and -i) with cycling period P contributes P eigenstates, one per P-th
    root of the product of its first P labels.  Every eigenvalue is a
    4N-th root of unity.  Brute-force enumeration with cycle-canonical
    deduplication; capped at N <= 10.
    """
    num = int(num_qubits)
    if num < 1:
        raise ValueError("num_qubits must be at least 1")
    if num > 10:
        raise ValueError("spectrum enumeration is capped at 10 qubits")

    def rotate(bits, k):
        return bits[k:] + bits[:k]

    seen = set()
    pairs = []
    for code in range(2**num):
        bits = tuple((code >> (num - 1 - i)) & 1 for i in range(num))
        cycle = [rotate(bits, k) for k in range(num)]
        canonical = min(cycle)
        if canonical in seen:
            continue
        seen.add(canonical)
        period = next(k for k in range(1, num + 1) if rotate(bits, k) == bits)
        labels = np.where(np.array(bits) == 0, 1.0 + 0j, -1j)
        vectors = [
            product_state(
                [_LOCAL_PLUS if b == 0 else _LOCAL_MINUS for b in rotate(bits, k)]
            ).amplitudes
            for k in range(period)
        ]
        # prefix[k] = product of the first k labels; the eigenstate attached
        # to root lambda is sum_k lambda^{-k} prefix[k] |rotate(bits, k)>.
        prefix = np.cumprod(np.concatenate(([1.0 + 0j], labels[: period - 1])))
        root_phase = np.angle(np.prod(labels[:period]))
        for r in range(period):
            eigenvalue = np.exp(1j * (root_phase + 2 * np.pi * r) / period)
            amps = sum(
                eigenvalue ** (-k) * prefix[k] * vectors[k]
                for k in range(period)
            ) / np.sqrt(period)
            pairs.append(
                PeriodicEigenpair(complex(eigenvalue), StateVector(amps), period)
            )
    return pairs


def dump_matrix_csv(matrix, stream) -> None:
    """Write a complex matrix as CSV, row-major, one re,im pair per cell."""
    m = np.asarray(matrix)
    for row in m:
        cells = []
        for z in row:
            cells.append(repr(float(z.real)))
            cells.append(repr(float(z.imag)))
        stream.write(",".join(cells) + "\n")
