"""Deterministic batch experiments over baked ensembles.

Every experiment draws its initial ensemble from per-trial Philox streams
keyed (seed, trial), evolves all trials in lock-step through a reusable
matrix-free map kernel, and reduces measures in trial order.  Ensemble
memory is bounded by QBAKER_MAX_BYTES (default 2 GiB).
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .baker import BakerKernel
from .ensembles import (
    make_special_state,
    sample_haar_ensemble,
    sample_product_ensemble,
)
from .measures import MEASURE_IDS, evaluate_measure_batch
from .tensor import CapacityError, Partition

DEFAULT_MAX_BYTES = 2 * 1024**3

# smallest c counted as entangled; separable pairs report noise-floor
# values up to ~2e-8 through the eigensolver route, while genuinely
# entangled samples sit above 1e-6, so 1e-7 splits the two populations
C_POSITIVE_TOL = 1e-7

_INITIAL_KINDS = ("product_random", "product", "max_entangled_half")


def _max_bytes() -> int:
    raw = os.environ.get("QBAKER_MAX_BYTES", "")
    if not raw:
        return DEFAULT_MAX_BYTES
    try:
        return int(raw)
    except ValueError:
        raise ValueError(f"QBAKER_MAX_BYTES must be an integer, got {raw!r}")


def _check_capacity(num_qubits, samples):
    need = int(samples) * (2**num_qubits) * 16
    limit = _max_bytes()
    if need > limit:
        raise CapacityError(
            f"ensemble of {samples} states on {num_qubits} qubits needs "
            f"{need} bytes, above the {limit}-byte budget (QBAKER_MAX_BYTES)"
        )


class MeasureStats(NamedTuple):
    mean: float
    std: float
    stderr: float


def _stats(values) -> MeasureStats:
    values = np.asarray(values, dtype=float)
    n = len(values)
    std = float(values.std(ddof=1)) if n > 1 else 0.0
    return MeasureStats(float(values.mean()), std, std / np.sqrt(n))


@dataclass(frozen=True)
class EnsembleRun:
    """One evolution experiment: ensemble, map selection, measures, seed.

    map_n is a position-bit count in 1..num_qubits or "all" for a sweep;
    initial is "product_random" (alias "product"), "basis:<bits>", or
    "max_entangled_half"; measures holds canonical measure ids, with
    partition / pair supplied for those that reduce.
    """

    num_qubits: int
    map_n: int | str
    steps: int
    samples: int
    initial: str
    measures: tuple[str, ...]
    partition: Partition | None = None
    pair: tuple[int, int] | None = None
    seed: int = 0

    def __post_init__(self):
        if self.num_qubits < 1:
            raise ValueError("num_qubits must be at least 1")
        if self.map_n != "all":
            if not isinstance(self.map_n, int) or not (
                1 <= self.map_n <= self.num_qubits
            ):
                raise ValueError(
                    f"map_n must be 'all' or an integer in 1..{self.num_qubits}"
                )
        if self.steps < 0:
            raise ValueError("steps must be nonnegative")
        if self.samples < 1:
            raise ValueError("samples must be at least 1")
        object.__setattr__(self, "measures", tuple(self.measures))
        if not self.measures:
            raise ValueError("measures must be nonempty")
        for m in self.measures:
            if m not in MEASURE_IDS:
                raise ValueError(f"unknown measure {m!r}")
            if m in ("purity", "linear_entropy", "von_neumann") and (
                self.partition is None
            ):
                raise ValueError(f"measure {m} requires a partition")
            if m in ("concurrence_c", "concurrence", "eof") and self.pair is None:
                raise ValueError(f"measure {m} requires a pair")
        if self.partition is not None and self.partition.num_qubits != self.num_qubits:
            raise ValueError("partition register size does not match num_qubits")
        if self.pair is not None:
            i, j = self.pair
            if i == j or not (1 <= i <= self.num_qubits) or not (
                1 <= j <= self.num_qubits
            ):
                raise ValueError("pair must be two distinct qubits in range")
        if not (
            self.initial in _INITIAL_KINDS or self.initial.startswith("basis:")
        ):
            raise ValueError(f"unknown initial ensemble {self.initial!r}")
        if self.initial.startswith("basis:"):
            bits = self.initial.split(":", 1)[1]
            if len(bits) != self.num_qubits or any(b not in "01" for b in bits):
                raise ValueError(
                    f"basis bits must be {self.num_qubits} characters of 0/1"
                )

    @property
    def map_list(self) -> tuple[int, ...]:
        if self.map_n == "all":
            return tuple(range(1, self.num_qubits + 1))
        return (self.map_n,)


@dataclass(frozen=True)
class TimeSeriesRow:
    """Ensemble statistics of every requested measure at one (map, step)."""

    map_n: int
    step: int
    stats: dict[str, MeasureStats]


def _initial_ensemble(run: EnsembleRun) -> np.ndarray:
    if run.initial in ("product_random", "product"):
        return sample_product_ensemble(run.num_qubits, run.samples, run.seed)
    if run.initial == "max_entangled_half":
        state = make_special_state("max_entangled_half", num_qubits=run.num_qubits)
    else:
        state = make_special_state(run.initial)
    return np.tile(state.amplitudes, (run.samples, 1))


def _measure_row(run, map_n, step, amps) -> TimeSeriesRow:
    stats = {}
    for m in run.measures:
        values = evaluate_measure_batch(
            m, amps, run.num_qubits, partition=run.partition, pair=run.pair
        )
        stats[m] = _stats(values)
    return TimeSeriesRow(map_n, step, stats)


def evolve_measures(run: EnsembleRun) -> list[TimeSeriesRow]:
    """Evolve the ensemble through each selected map, recording statistics.

    Rows cover step 0 (the initial ensemble) through run.steps for every
    map in run.map_list; all maps start from the identical ensemble.
    """
    _check_capacity(run.num_qubits, run.samples)
    initial = _initial_ensemble(run)
    rows = []
    for n in run.map_list:
        kernel = BakerKernel(run.num_qubits, n)
        amps = initial
        rows.append(_measure_row(run, n, 0, amps))
        for step in range(1, run.steps + 1):
            amps = kernel.apply(amps)
            rows.append(_measure_row(run, n, step, amps))
    return rows


@dataclass(frozen=True)
class Histogram:
    """Uniform-bin histogram with per-bin density (count/(total*width))."""

    edges: tuple[float, ...]
    counts: tuple[int, ...]
    density: tuple[float, ...]


def _make_histogram(values, lo, hi, bins) -> Histogram:
    counts, edges = np.histogram(values, bins=bins, range=(lo, hi))
    width = (hi - lo) / bins
    density = counts / (len(values) * width)
    return Histogram(tuple(edges), tuple(int(c) for c in counts), tuple(density))


@dataclass(frozen=True)
class PairwiseResult:
    """Pairwise-entanglement probability and the distribution behind it."""

    probability: float
    c_mean: float
    c_std: float
    histogram: Histogram


def pairwise_probability(num_qubits, samples, pair, seed, source="haar",
                         map_n=None, step=None, bins=100) -> PairwiseResult:
    """Fraction of sampled states whose reduced pair has c > 0.

    source "haar" draws full-register Haar states; "baked" evolves a
    random product ensemble through the map with map_n position bits for
    the given number of steps.  The histogram spans the full c range
    [-1/2, 1] with uniform bins.  Positivity is counted above
    C_POSITIVE_TOL so that separable pairs, whose computed c carries
    eigensolver noise of a few 1e-9, contribute zero.
    """
    if samples < 1:
        raise ValueError("samples must be at least 1")
    i, j = pair
    if i == j or not (1 <= i <= num_qubits) or not (1 <= j <= num_qubits):
        raise ValueError("pair must be two distinct qubits in range")
    _check_capacity(num_qubits, samples)
    if source == "haar":
        amps = sample_haar_ensemble(2**num_qubits, samples, seed)
    elif source == "baked":
        if map_n is None or step is None:
            raise ValueError("baked source requires map_n and step")
        if not 1 <= map_n <= num_qubits:
            raise ValueError(f"map_n must lie in 1..{num_qubits}")
        if step < 0:
            raise ValueError("step must be nonnegative")
        amps = sample_product_ensemble(num_qubits, samples, seed)
        kernel = BakerKernel(num_qubits, map_n)
        for _ in range(step):
            amps = kernel.apply(amps)
    else:
        raise ValueError(f"unknown source {source!r}")
    c = evaluate_measure_batch("concurrence_c", amps, num_qubits, pair=pair)
    return PairwiseResult(
        probability=float((c > C_POSITIVE_TOL).mean()),
        c_mean=float(c.mean()),
        c_std=float(c.std(ddof=1)) if samples > 1 else 0.0,
        histogram=_make_histogram(c, -0.5, 1.0, bins),
    )


@dataclass(frozen=True)
class SaturationResult:
    """Long-time average of an ensemble-mean measure over strided iterates."""

    value: float
    stderr: float
    iterate_means: tuple[float, ...]


def saturation_average(num_qubits, map_n, stride, count, samples, seed,
                       measure="mw_q", partition=None, pair=None):
    """Average the ensemble-mean measure over iterates stride*k, k=1..count.

    Starts from a random product ensemble.  The standard error comes from
    the trial-to-trial spread of per-trial time averages, so correlation
    across iterates of one trajectory inflates it honestly.
    """
    if stride < 1 or count < 1:
        raise ValueError("stride and count must be at least 1")
    if not 1 <= map_n <= num_qubits:
        raise ValueError(f"map_n must lie in 1..{num_qubits}")
    if measure not in MEASURE_IDS:
        raise ValueError(f"unknown measure {measure!r}")
    _check_capacity(num_qubits, samples)
    amps = sample_product_ensemble(num_qubits, samples, seed)
    kernel = BakerKernel(num_qubits, map_n)
    per_trial = np.zeros(samples)
    iterate_means = []
    for k in range(1, count + 1):
        for _ in range(stride):
            amps = kernel.apply(amps)
        values = evaluate_measure_batch(
            measure, amps, num_qubits, partition=partition, pair=pair
        )
        per_trial += values
        iterate_means.append(float(values.mean()))
    per_trial /= count
    stats = _stats(per_trial)
    return SaturationResult(stats.mean, stats.stderr, tuple(iterate_means))


@dataclass(frozen=True)
class RankEntry:
    """Window-averaged ensemble-mean linear entropy for one map."""

    map_n: int
    mean: float
    stderr: float


def ranking_report(num_qubits, samples, window, seed, partition=None):
    """Rank maps n = 1..N-1 by entangling power over a saturation window.

    Evolves one shared random product ensemble through each map, averages
    the per-trial linear entropy over steps start..end inclusive, and
    returns entries sorted by descending ensemble mean.  The window must
    start at or past step 100 for 8-qubit registers, well after
    saturation.
    """
    start, end = int(window[0]), int(window[1])
    if start < 0 or end < start:
        raise ValueError("window must satisfy 0 <= start <= end")
    if num_qubits == 8 and start < 100:
        raise ValueError("8-qubit ranking needs a window starting at >= 100")
    if num_qubits < 2:
        raise ValueError("ranking needs at least 2 qubits")
    if partition is None:
        partition = Partition(num_qubits, tuple(range(1, num_qubits // 2 + 1)))
    _check_capacity(num_qubits, samples)
    initial = sample_product_ensemble(num_qubits, samples, seed)
    entries = []
    for n in range(1, num_qubits):
        kernel = BakerKernel(num_qubits, n)
        amps = initial
        per_trial = np.zeros(samples)
        if start == 0:
            per_trial += evaluate_measure_batch(
                "linear_entropy", amps, num_qubits, partition=partition
            )
        for step in range(1, end + 1):
            amps = kernel.apply(amps)
            if step >= start:
                per_trial += evaluate_measure_batch(
                    "linear_entropy", amps, num_qubits, partition=partition
                )
        per_trial /= end - start + 1
        stats = _stats(per_trial)
        entries.append(RankEntry(n, stats.mean, stats.stderr))
    return sorted(entries, key=lambda e: e.mean, reverse=True)
