"""Quantized baker's maps on qubit registers and the entanglement they generate.

Layers: tensor (states, partitions, the centered transform), baker (the map
family, its basis action, the full-shift spectrum), measures (entanglement
functionals), ensembles (random-state sampling and closed-form statistics),
harness (deterministic batch experiments), cli (CSV command-line front end).
"""

__version__ = "0.1.0"

from .baker import (
    BakerKernel,
    BakerMapConfig,
    PartialBasisLabel,
    PeriodicEigenpair,
    baker_matrix,
    baker_step,
    make_partial_basis_state,
    partial_fourier,
    periodic_spectrum,
    shift,
    verify_basis_mapping,
)
from .ensembles import (
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
from .harness import (
    EnsembleRun,
    Histogram,
    MeasureStats,
    PairwiseResult,
    RankEntry,
    SaturationResult,
    TimeSeriesRow,
    evolve_measures,
    pairwise_probability,
    ranking_report,
    saturation_average,
)
from .measures import (
    MEASURE_ALIASES,
    MEASURE_IDS,
    MeasureResult,
    concurrence,
    concurrence_c,
    entanglement_of_formation,
    evaluate_measure,
    evaluate_measure_batch,
    linear_entropy,
    meyer_wallach_q,
    n_tangle,
    purity,
    von_neumann_entropy,
)
from .tensor import (
    CapacityError,
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

__all__ = [
    "__version__",
    "BakerKernel",
    "BakerMapConfig",
    "CapacityError",
    "CumulantTriple",
    "DensityMatrix",
    "EnsembleRun",
    "Histogram",
    "MEASURE_ALIASES",
    "MEASURE_IDS",
    "MeasureResult",
    "MeasureStats",
    "PairwiseResult",
    "PartialBasisLabel",
    "Partition",
    "PeriodicEigenpair",
    "RankEntry",
    "SaturationResult",
    "SeededSampler",
    "StateVector",
    "TimeSeriesRow",
    "airy_pdf",
    "apply_on_suffix",
    "baker_matrix",
    "baker_step",
    "centered_dft",
    "centered_dft_matrix",
    "concurrence",
    "concurrence_c",
    "entanglement_of_formation",
    "evaluate_measure",
    "evaluate_measure_batch",
    "evolve_measures",
    "exact_cdf_mu2",
    "exact_pdf_mu2",
    "hermitian_eigenvalues",
    "hermitian_psd_sqrt",
    "linear_entropy",
    "linear_entropy_cumulants",
    "lubkin_mean_purity",
    "make_partial_basis_state",
    "make_special_state",
    "meyer_wallach_q",
    "n_tangle",
    "page_mean_entropy",
    "pairwise_probability",
    "partial_fourier",
    "partial_trace",
    "periodic_spectrum",
    "product_state",
    "purity",
    "purity_second_moment",
    "purity_third_cumulant",
    "purity_variance",
    "q_moments",
    "ranking_report",
    "sample_haar_ensemble",
    "sample_haar_state",
    "sample_product_ensemble",
    "sample_product_state",
    "saturation_average",
    "schmidt_joint_density_unnormalized",
    "shift",
    "tau_moments",
    "verify_basis_mapping",
    "von_neumann_entropy",
]
