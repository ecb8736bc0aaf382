import numpy as np
import pytest

from qbaker.tensor import (
    DensityMatrix,
    Partition,
    StateVector,
    apply_on_suffix,
    centered_dft,
    centered_dft_matrix,
    hermitian_eigenvalues,
    hermitian_psd_sqrt,
    partial_trace,
    product_state,
)

rng = np.random.default_rng(2024)


def rand_state(num_qubits):
    a = rng.normal(size=2**num_qubits) + 1j * rng.normal(size=2**num_qubits)
    return StateVector(a / np.linalg.norm(a))


def test_state_vector_basics():
    psi = StateVector.from_bits("01")
    assert psi.num_qubits == 2
    assert psi.dim == 4
    assert psi.amplitudes[1] == 1.0  # qubit 1 is the most significant bit
    psi2 = StateVector.from_bits((1, 0, 1))
    assert psi2.amplitudes[0b101] == 1.0
    with pytest.raises(ValueError):
        StateVector(np.array([1.0, 0.0, 0.0]))  # not a power of two
    with pytest.raises(ValueError):
        StateVector(np.array([1.0, 1.0]))  # not normalized
    with pytest.raises(ValueError):
        StateVector(np.zeros((2, 2), dtype=complex))
    # amplitudes are frozen
    with pytest.raises(ValueError):
        psi.amplitudes[0] = 1.0


def test_state_vector_zero_qubits():
    one = StateVector(np.array([1.0 + 0j]))
    assert one.num_qubits == 0
    assert one.dim == 1


def test_product_state_ordering():
    zero = np.array([1.0, 0.0])
    one = np.array([0.0, 1.0])
    psi = product_state([zero, one, one])
    assert psi.amplitudes[0b011] == 1.0
    plus = np.array([1.0, 1.0]) / np.sqrt(2)
    np.testing.assert_allclose(
        product_state([plus, zero]).amplitudes,
        np.array([1, 0, 1, 0]) / np.sqrt(2),
        atol=1e-15,
    )
    # no factors degenerates to the zero-qubit scalar state
    assert product_state([]).num_qubits == 0


def test_density_matrix_validation():
    DensityMatrix(np.eye(2) / 2)
    with pytest.raises(ValueError):
        DensityMatrix(np.array([[0.5, 0.1], [0.3, 0.5]]))  # not Hermitian
    with pytest.raises(ValueError):
        DensityMatrix(np.eye(2))  # trace 2
    bad = np.diag([1.5, -0.5])
    with pytest.raises(ValueError):
        DensityMatrix(bad)  # negative eigenvalue
    trusted = DensityMatrix(np.diag([1.5, -0.5]), validate=False)
    assert trusted.dim == 2


def test_partition_validation_and_properties():
    part = Partition(5, (1, 3))
    assert part.kept_dim == 4
    assert part.traced_dim == 8
    assert part.traced == (2, 4, 5)
    assert part.mu == 4 and part.nu == 8
    with pytest.raises(ValueError):
        Partition(3, ())
    with pytest.raises(ValueError):
        Partition(3, (1, 2, 3))  # not a proper subset
    with pytest.raises(ValueError):
        Partition(3, (0,))
    with pytest.raises(ValueError):
        Partition(3, (2, 1))
    with pytest.raises(ValueError):
        Partition(3, (1, 1))


def test_centered_dft_frozen_values():
    np.testing.assert_allclose(centered_dft(1, [1.0]), [1j], atol=1e-15)
    expected = np.array([np.exp(1j * np.pi / 4), np.exp(3j * np.pi / 4)]) / np.sqrt(2)
    np.testing.assert_allclose(centered_dft(2, [1.0, 0.0]), expected, atol=1e-15)


def test_centered_dft_matches_dense_and_roundtrips():
    for m in (1, 2, 4, 8, 16, 64):
        x = rng.normal(size=m) + 1j * rng.normal(size=m)
        dense = centered_dft_matrix(m)
        np.testing.assert_allclose(centered_dft(m, x), dense @ x, atol=1e-12)
        np.testing.assert_allclose(
            centered_dft(m, centered_dft(m, x, inverse=True)), x, atol=1e-12
        )
        np.testing.assert_allclose(dense.conj().T @ dense, np.eye(m), atol=1e-12)
        # the kernel is symmetric, so the inverse is the conjugate
        np.testing.assert_allclose(
            centered_dft_matrix(m, inverse=True), dense.conj(), atol=1e-15
        )
    with pytest.raises(ValueError):
        centered_dft(3, [1.0, 0.0, 0.0])


def test_centered_dft_batched():
    x = rng.normal(size=(5, 8)) + 1j * rng.normal(size=(5, 8))
    dense = centered_dft_matrix(8)
    np.testing.assert_allclose(centered_dft(8, x), x @ dense.T, atol=1e-12)


def test_apply_on_suffix_against_dense_kron():
    psi = rand_state(4)
    for start in (1, 2, 3, 4):
        op_dim = 2 ** (4 - start + 1)
        full = np.kron(np.eye(2 ** (start - 1)), centered_dft_matrix(op_dim))
        got = apply_on_suffix(op_dim, "centered_dft", psi, start)
        np.testing.assert_allclose(got.amplitudes, full @ psi.amplitudes, atol=1e-12)
        back = apply_on_suffix(op_dim, "inverse_centered_dft", got, start)
        np.testing.assert_allclose(back.amplitudes, psi.amplitudes, atol=1e-12)
    same = apply_on_suffix(4, "identity", psi, 3)
    np.testing.assert_allclose(same.amplitudes, psi.amplitudes, atol=1e-15)


def test_apply_on_suffix_callable_and_errors():
    psi = rand_state(3)
    flip = lambda block: block[..., ::-1]
    got = apply_on_suffix(4, flip, psi, 2)
    ref = psi.amplitudes.reshape(2, 4)[:, ::-1].ravel()
    np.testing.assert_allclose(got.amplitudes, ref, atol=1e-15)
    with pytest.raises(ValueError):
        apply_on_suffix(4, "centered_dft", psi, 1)  # wrong op_dim for start
    with pytest.raises(ValueError):
        apply_on_suffix(2, "centered_dft", psi, 0)
    with pytest.raises(ValueError):
        apply_on_suffix(2, "no_such_kernel", psi, 3)


def test_partial_trace_bell_and_schmidt():
    bell = StateVector(np.array([1, 0, 0, 1]) / np.sqrt(2))
    rho = partial_trace(bell, Partition(2, (1,)))
    np.testing.assert_allclose(rho.matrix, np.eye(2) / 2, atol=1e-15)
    for _ in range(5):
        psi = rand_state(5)
        part = Partition(5, (2, 4))
        comp = Partition(5, (1, 3, 5))
        ra = partial_trace(psi, part).matrix
        rb = partial_trace(psi, comp).matrix
        assert abs(np.trace(ra) - 1) < 1e-12
        np.testing.assert_allclose(ra, ra.conj().T, atol=1e-12)
        # both reductions share their nonzero spectrum
        wa = np.sort(np.linalg.eigvalsh(ra))[::-1]
        wb = np.sort(np.linalg.eigvalsh(rb))[::-1]
        np.testing.assert_allclose(wa, wb[: len(wa)], atol=1e-10)


def test_partial_trace_product_state_is_pure():
    single = []
    for _ in range(3):
        v = rng.normal(size=2) + 1j * rng.normal(size=2)
        single.append(v / np.linalg.norm(v))
    psi = product_state(single)
    rho = partial_trace(psi, Partition(3, (2,))).matrix
    np.testing.assert_allclose(rho @ rho, rho, atol=1e-12)


def test_hermitian_eigenvalues():
    w = hermitian_eigenvalues(np.diag([3.0, 1.0, 2.0]))
    np.testing.assert_allclose(w, [1.0, 2.0, 3.0], atol=1e-14)
    with pytest.raises(ValueError):
        hermitian_eigenvalues(np.array([[0.0, 1.0], [0.0, 0.0]]))
    with pytest.raises(ValueError):
        hermitian_eigenvalues(np.eye(2048))  # above the dense cap


def test_hermitian_psd_sqrt():
    np.testing.assert_allclose(
        hermitian_psd_sqrt(np.diag([4.0, 9.0])), np.diag([2.0, 3.0]), atol=1e-14
    )
    a = rng.normal(size=(6, 6)) + 1j * rng.normal(size=(6, 6))
    psd = a @ a.conj().T
    root = hermitian_psd_sqrt(psd)
    np.testing.assert_allclose(root @ root, psd, atol=1e-10)
    with pytest.raises(ValueError):
        hermitian_psd_sqrt(np.diag([1.0, -0.5]))
