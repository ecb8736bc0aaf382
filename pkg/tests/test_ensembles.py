import numpy as np
import pytest
from scipy.integrate import quad

from qbaker.ensembles import (
    CumulantTriple,
    SeededSampler,
    airy_pdf,
    exact_cdf_mu2,
    exact_pdf_mu2,
    linear_entropy_cumulants,
    lubkin_mean_purity,
    make_special_state,
    page_mean_entropy,
    purity_second_moment,
    purity_third_cumulant,
    purity_variance,
    q_moments,
    sample_haar_ensemble,
    sample_haar_state,
    sample_product_ensemble,
    sample_product_state,
    schmidt_joint_density_unnormalized,
    tau_moments,
)
from qbaker.measures import evaluate_measure_batch, meyer_wallach_q
from qbaker.tensor import Partition


def test_sampler_validation():
    SeededSampler(0)
    SeededSampler(2**64 - 1, 7)
    with pytest.raises(ValueError):
        SeededSampler(-1)
    with pytest.raises(ValueError):
        SeededSampler(2**64)
    with pytest.raises(ValueError):
        SeededSampler(3, -1)


def test_sampler_determinism_and_stream_independence():
    a = sample_haar_state(16, SeededSampler(42, 3))
    b = sample_haar_state(16, SeededSampler(42, 3))
    np.testing.assert_array_equal(a.amplitudes, b.amplitudes)
    c = sample_haar_state(16, SeededSampler(42, 4))
    assert np.abs(a.amplitudes - c.amplitudes).max() > 1e-3
    d = sample_haar_state(16, SeededSampler(43, 3))
    assert np.abs(a.amplitudes - d.amplitudes).max() > 1e-3


def test_ensemble_rows_match_standalone_streams():
    ens = sample_haar_ensemble(8, 5, seed=99)
    for i in range(5):
        one = sample_haar_state(8, SeededSampler(99, i))
        np.testing.assert_array_equal(ens[i], one.amplitudes)
    prod = sample_product_ensemble(3, 4, seed=99)
    for i in range(4):
        one = sample_product_state(3, SeededSampler(99, i))
        np.testing.assert_array_equal(prod[i], one.amplitudes)
    with pytest.raises(ValueError):
        sample_haar_ensemble(8, 0, seed=1)
    with pytest.raises(ValueError):
        sample_haar_state(0, SeededSampler(1))


def test_haar_states_normalized_and_dim_one():
    ens = sample_haar_ensemble(32, 50, seed=7)
    np.testing.assert_allclose(np.linalg.norm(ens, axis=1), 1.0, atol=1e-12)
    scalar = sample_haar_state(1, SeededSampler(7))
    assert abs(abs(scalar.amplitudes[0]) - 1.0) < 1e-12


def test_haar_linear_entropy_matches_mean_within_noise():
    n = 20000
    ens = sample_haar_ensemble(4, n, seed=1234)
    s = evaluate_measure_batch("linear_entropy", ens, 2, partition=Partition(2, (1,)))
    tri = linear_entropy_cumulants(2, 2)
    se = np.sqrt(tri.variance / n)
    assert abs(s.mean() - tri.mean) < 5 * se


def test_product_states_have_no_multipartite_entanglement():
    ens = sample_product_ensemble(5, 30, seed=5)
    np.testing.assert_allclose(np.linalg.norm(ens, axis=1), 1.0, atol=1e-12)
    q = evaluate_measure_batch("mw_q", ens, 5)
    assert q.max() < 1e-12


def test_make_special_state():
    basis = make_special_state("basis", bits="0110")
    assert basis.amplitudes[0b0110] == 1.0
    shorthand = make_special_state("basis:0110")
    np.testing.assert_array_equal(basis.amplitudes, shorthand.amplitudes)
    ghz = make_special_state("cat", num_qubits=3)
    np.testing.assert_allclose(
        ghz.amplitudes[[0, 7]], [1 / np.sqrt(2)] * 2, atol=1e-15
    )
    me = make_special_state("max_entangled_half", num_qubits=4)
    np.testing.assert_allclose(
        me.amplitudes[[0b0000, 0b0101, 0b1010, 0b1111]], [0.5] * 4, atol=1e-15
    )
    s = evaluate_measure_batch(
        "linear_entropy", me.amplitudes[None, :], 4, partition=Partition(4, (1, 2))
    )
    assert abs(s[0] - 1.0) < 1e-12
    assert abs(meyer_wallach_q(me) - 1.0) < 1e-12
    with pytest.raises(ValueError):
        make_special_state("basis")
    with pytest.raises(ValueError):
        make_special_state("basis", num_qubits=3, bits="01")
    with pytest.raises(ValueError):
        make_special_state("max_entangled_half", num_qubits=3)
    with pytest.raises(ValueError):
        make_special_state("cat")
    with pytest.raises(ValueError):
        make_special_state("bell", num_qubits=2)


def test_schmidt_joint_density_shape():
    assert abs(schmidt_joint_density_unnormalized((0.6, 0.4), 2, 2) - 0.04) < 1e-15
    val = schmidt_joint_density_unnormalized((0.6, 0.4), 2, 4)
    assert abs(val - 0.04 * (0.6 * 0.4) ** 2) < 1e-15
    with pytest.raises(ValueError):
        schmidt_joint_density_unnormalized((0.5, 0.5, 0.0001), 2, 2)
    with pytest.raises(ValueError):
        schmidt_joint_density_unnormalized((0.7, 0.4), 2, 2)
    with pytest.raises(ValueError):
        schmidt_joint_density_unnormalized((1.0, -0.0001), 2, 2)  # not positive
    with pytest.raises(ValueError):
        schmidt_joint_density_unnormalized((0.5, 0.5), 4, 2)


def test_page_mean_entropy():
    assert abs(page_mean_entropy(2, 2) - 1.0 / 3.0) < 1e-14
    assert page_mean_entropy(2, 8) == page_mean_entropy(8, 2)
    assert page_mean_entropy(1, 16) == 0.0
    # Monte Carlo cross-check on a 2 x 4 split
    n = 20000
    ens = sample_haar_ensemble(8, n, seed=777)
    vn = evaluate_measure_batch("von_neumann", ens, 3, partition=Partition(3, (1,)))
    se = vn.std(ddof=1) / np.sqrt(n)
    assert abs(vn.mean() - page_mean_entropy(2, 4)) < 5 * se


def test_purity_moment_forms_are_consistent():
    assert abs(lubkin_mean_purity(2, 2) - 0.8) < 1e-14
    assert abs(purity_second_moment(2, 2) - 23.0 / 35.0) < 1e-14
    for mu in (2, 3, 4, 8, 16):
        for nu in (mu, 2 * mu, 17):
            if nu < mu:
                continue
            mean = lubkin_mean_purity(mu, nu)
            direct = purity_second_moment(mu, nu) - mean * mean
            assert abs(purity_variance(mu, nu) - direct) < 1e-15
    assert abs(purity_third_cumulant(2, 2) + 8 * 9 * 4 / (9 * 8 * 7 * 6 * 125)) < 1e-16


def test_linear_entropy_cumulants_frozen():
    tri = linear_entropy_cumulants(2, 2)
    assert isinstance(tri, CumulantTriple)
    assert abs(tri.mean - 0.4) < 1e-15
    assert abs(tri.variance - 72.0 / 1050.0) < 1e-15
    assert abs(tri.third_cumulant - 16.0 / 2625.0) < 1e-15
    # the mean also equals 1 - (mu+1)/(mu nu + 1)
    for mu, nu in ((2, 2), (2, 16), (4, 8), (16, 16)):
        tri = linear_entropy_cumulants(mu, nu)
        assert abs(tri.mean - (1 - (mu + 1) / (mu * nu + 1))) < 1e-14
    with pytest.raises(ValueError):
        linear_entropy_cumulants(1, 4)


def test_cumulants_match_exact_density_quadrature():
    # for mu = 2 the closed cumulants must equal moments of the exact law
    for nu in (2, 8):
        tri = linear_entropy_cumulants(2, nu)
        pdf = lambda s: exact_pdf_mu2(s, nu)
        m0 = quad(pdf, 0, 1, limit=200)[0]
        m1 = quad(lambda s: s * pdf(s), 0, 1, limit=200)[0]
        m2 = quad(lambda s: (s - m1) ** 2 * pdf(s), 0, 1, limit=200)[0]
        m3 = quad(lambda s: (s - m1) ** 3 * pdf(s), 0, 1, limit=200)[0]
        assert abs(m0 - 1.0) < 1e-10
        assert abs(m1 - tri.mean) < 1e-10
        assert abs(m2 - tri.variance) < 1e-10
        assert abs(m3 - tri.third_cumulant) < 1e-10


def test_exact_pdf_mu2_frozen_and_cdf():
    s = np.linspace(0, 1, 11)
    np.testing.assert_allclose(
        exact_pdf_mu2(s, 2), 1.5 * np.sqrt(1 - s), atol=1e-13
    )
    assert exact_pdf_mu2(1.0, 8) == 0.0
    assert exact_cdf_mu2(0.0, 8) == 0.0
    assert abs(exact_cdf_mu2(1.0, 8) - 1.0) < 1e-13
    for point in (0.3, 0.62, 0.95):
        direct = quad(lambda x: exact_pdf_mu2(x, 8), 0, point, limit=200)[0]
        assert abs(exact_cdf_mu2(point, 8) - direct) < 1e-10
    with pytest.raises(ValueError):
        exact_pdf_mu2(0.5, 1)
    with pytest.raises(ValueError):
        exact_pdf_mu2(1.5, 4)
    with pytest.raises(ValueError):
        exact_cdf_mu2(-0.1, 4)


def test_airy_pdf_against_characteristic_function():
    # independent route: invert the truncated-cumulant characteristic
    # function exp(i a t - b t^2/2 - i c t^3/6) numerically
    tri = linear_entropy_cumulants(8, 8)
    a, b, c = tri.mean, tri.variance, tri.third_cumulant

    def inverted(s):
        def integrand(t):
            return (np.exp(1j * a * t - b * t * t / 2 - 1j * c * t**3 / 6)
                    * np.exp(-1j * t * s)).real
        return quad(integrand, 0, 3000, limit=2000)[0] / np.pi

    for s in (0.7, 0.85, 0.9, 0.95):
        assert abs(airy_pdf(s, 8, 8) - inverted(s)) < 1e-9


def test_airy_pdf_mass():
    # the truncated inversion integrates to 1 once the split is deep enough
    for mu, nu in ((8, 8), (8, 32), (16, 16)):
        mass = quad(lambda s: airy_pdf(s, mu, nu), 0, 1, limit=200)[0]
        assert abs(mass - 1.0) < 1e-3
    # shallow splits lose or gain visible mass; pinned to catch regressions
    pinned = {(2, 8): 0.932167, (2, 32): 0.879215,
              (4, 4): 0.999539, (4, 16): 1.007059}
    for (mu, nu), expected in pinned.items():
        mass = quad(lambda s: airy_pdf(s, mu, nu), 0, 1, limit=200)[0]
        assert abs(mass - expected) < 1e-4
    with pytest.raises(ValueError):
        airy_pdf(-0.2, 8, 8)
    with pytest.raises(ValueError):
        airy_pdf(np.array([0.5, 1.2]), 8, 8)


def test_airy_pdf_scalar_and_array():
    arr = airy_pdf(np.array([0.8, 0.9]), 8, 8)
    assert arr.shape == (2,)
    assert isinstance(airy_pdf(0.8, 8, 8), float)


def test_q_and_tau_moments():
    mean, var = q_moments(4, 2)
    tau_mean, tau_var = tau_moments(4)
    tri = linear_entropy_cumulants(2, 2)
    # at two qubits Q, the tangle, and S_L coincide state by state, so
    # their Haar moments must agree as well
    for got in (mean, tau_mean):
        assert abs(got - tri.mean) < 1e-14
    for got in (var, tau_var):
        assert abs(got - tri.variance) < 1e-14
    mean8, _ = q_moments(8, 3)
    assert abs(mean8 - 6.0 / 9.0) < 1e-14
    tau8_mean, tau8_var = tau_moments(8)
    assert abs(tau8_mean - 2.0 / 9.0) < 1e-14
    assert abs(tau8_var - 28.0 / (11 * 81)) < 1e-14
    with pytest.raises(ValueError):
        q_moments(5, 2)
    with pytest.raises(ValueError):
        q_moments(8, 2)
    with pytest.raises(ValueError):
        tau_moments(3)


def test_linear_entropy_spread_is_narrow():
    # the saturation value sits within one std of full mixing for deep
    # splits: sqrt(var) < 1 - mean = (mu+1)/(mu nu + 1)
    for mu in (2, 4, 8, 16):
        tri = linear_entropy_cumulants(mu, mu)
        assert np.sqrt(tri.variance) < (mu + 1) / (mu * mu + 1)
