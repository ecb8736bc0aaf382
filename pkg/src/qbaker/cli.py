"""Command-line interface: deterministic CSV experiments.

Every subcommand writes CSV (stdout or --out) with self-describing '#'
header lines: tool version, the semantic command line, the seed, and the
unit conventions.  Identical command lines produce byte-identical output.
Exit codes: 0 success, 2 argument error, 3 capacity error.
"""

from __future__ import annotations

import argparse
import sys

import numpy as np

from . import __version__
from .baker import BakerMapConfig, baker_matrix, periodic_spectrum
from .ensembles import (
    linear_entropy_cumulants,
    lubkin_mean_purity,
    page_mean_entropy,
    purity_third_cumulant,
    purity_variance,
    q_moments,
    sample_haar_ensemble,
    sample_product_ensemble,
    tau_moments,
)
from .harness import (
    EnsembleRun,
    evolve_measures,
    pairwise_probability,
    ranking_report,
    saturation_average,
)
from .measures import MEASURE_ALIASES, MEASURE_IDS, evaluate_measure_batch
from .tensor import CapacityError, Partition

_CONVENTIONS = "qubit1=MSB,entropy=natural-log,eof=log2"


def _fmt(x) -> str:
    return repr(float(x))


def _parse_partition(text, num_qubits) -> Partition:
    text = text.strip()
    if "-" in text:
        lo, hi = text.split("-", 1)
        keep = tuple(range(int(lo), int(hi) + 1))
    else:
        keep = tuple(sorted(int(t) for t in text.split(",") if t))
    return Partition(num_qubits, keep)


def _parse_pair(text) -> tuple[int, int]:
    parts = [int(t) for t in text.split(",")]
    if len(parts) != 2:
        raise ValueError(f"pair must be two comma-separated qubits, got {text!r}")
    return parts[0], parts[1]


def _parse_measures(text) -> tuple[str, ...]:
    out = []
    for token in text.split(","):
        token = token.strip()
        if not token:
            continue
        name = MEASURE_ALIASES.get(token, token)
        if name not in MEASURE_IDS:
            raise ValueError(f"unknown measure {token!r}")
        out.append(name)
    if not out:
        raise ValueError("at least one measure is required")
    return tuple(out)


def _parse_map_n(text, num_qubits):
    if text == "all":
        return "all"
    n = int(text)
    if not 1 <= n <= num_qubits:
        raise ValueError(f"n must lie in 1..{num_qubits} or be 'all'")
    return n


def _command_echo(argv) -> str:
    """The semantic command line: argv with any --out argument removed."""
    kept, skip = [], False
    for token in argv:
        if skip:
            skip = False
            continue
        if token == "--out":
            skip = True
            continue
        if token.startswith("--out="):
            continue
        kept.append(token)
    return " ".join(kept)


def _header(argv, seed=None) -> list[str]:
    lines = [
        f"# version: qbaker {__version__}",
        f"# command: {_command_echo(argv)}",
    ]
    if seed is not None:
        lines.append(f"# seed: {seed}")
    lines.append(f"# conventions: {_CONVENTIONS}")
    return lines


def _emit(lines, out_path) -> None:
    text = "\n".join(lines) + "\n"
    if out_path:
        with open(out_path, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# measure id -> natural histogram range; von_neumann is filled per partition
_MEASURE_RANGE = {
    "purity": (0.0, 1.0),
    "linear_entropy": (0.0, 1.0),
    "concurrence_c": (-0.5, 1.0),
    "concurrence": (0.0, 1.0),
    "eof": (0.0, 1.0),
    "mw_q": (0.0, 1.0),
    "tangle": (0.0, 1.0),
}


def _cmd_analytic(args, argv) -> int:
    mu, nu = args.mu, args.nu
    lines = _header(argv)
    lines.append("quantity,value")
    lines.append(f"page_mean_entropy,{_fmt(page_mean_entropy(mu, nu))}")
    lines.append(f"lubkin_mean_purity,{_fmt(lubkin_mean_purity(mu, nu))}")
    lines.append(f"purity_variance,{_fmt(purity_variance(mu, nu))}")
    lines.append(f"purity_third_cumulant,{_fmt(purity_third_cumulant(mu, nu))}")
    if mu >= 2:
        tri = linear_entropy_cumulants(mu, nu)
        lines.append(f"linear_entropy_mean,{_fmt(tri.mean)}")
        lines.append(f"linear_entropy_variance,{_fmt(tri.variance)}")
        lines.append(f"linear_entropy_third_cumulant,{_fmt(tri.third_cumulant)}")
    if args.qubits is not None:
        dim = 2**args.qubits
        qm, qv = q_moments(dim, args.qubits)
        tm, tv = tau_moments(dim)
        lines.append(f"q_mean,{_fmt(qm)}")
        lines.append(f"q_variance,{_fmt(qv)}")
        lines.append(f"tau_mean,{_fmt(tm)}")
        lines.append(f"tau_variance,{_fmt(tv)}")
    _emit(lines, args.out)
    return 0


def _cmd_sample(args, argv) -> int:
    num = args.qubits
    measures = _parse_measures(args.measure)
    if len(measures) != 1:
        raise ValueError("sample histograms one measure at a time")
    measure = measures[0]
    partition = _parse_partition(args.partition, num) if args.partition else None
    pair = _parse_pair(args.pair) if args.pair else None
    if args.kind == "haar":
        amps = sample_haar_ensemble(2**num, args.samples, args.seed)
    elif args.kind == "product":
        amps = sample_product_ensemble(num, args.samples, args.seed)
    else:
        raise ValueError(f"unknown ensemble kind {args.kind!r}")
    values = evaluate_measure_batch(measure, amps, num,
                                    partition=partition, pair=pair)
    if measure == "von_neumann":
        lo, hi = 0.0, float(np.log(partition.mu))
    else:
        lo, hi = _MEASURE_RANGE[measure]
    counts, edges = np.histogram(values, bins=args.bins, range=(lo, hi))
    width = (hi - lo) / args.bins
    lines = _header(argv, seed=args.seed)
    lines.append(f"# samples: {args.samples}")
    lines.append(f"# measure: {measure}")
    if partition is not None:
        lines.append(f"# partition: {','.join(map(str, partition.keep))}")
    if pair is not None:
        lines.append(f"# pair: {pair[0]},{pair[1]}")
    lines.append(f"# mean: {_fmt(values.mean())}")
    std = values.std(ddof=1) if args.samples > 1 else 0.0
    lines.append(f"# std: {_fmt(std)}")
    lines.append("bin_left,bin_right,count,density")
    total = len(values)
    for b in range(args.bins):
        dens = counts[b] / (total * width)
        lines.append(
            f"{_fmt(edges[b])},{_fmt(edges[b + 1])},{counts[b]},{_fmt(dens)}"
        )
    _emit(lines, args.out)
    return 0


def _cmd_evolve(args, argv) -> int:
    num = args.qubits
    measures = _parse_measures(args.measure)
    partition = _parse_partition(args.partition, num) if args.partition else None
    pair = _parse_pair(args.pair) if args.pair else None
    run = EnsembleRun(
        num_qubits=num,
        map_n=_parse_map_n(args.n, num),
        steps=args.steps,
        samples=args.samples,
        initial=args.initial,
        measures=measures,
        partition=partition,
        pair=pair,
        seed=args.seed,
    )
    rows = evolve_measures(run)
    lines = _header(argv, seed=args.seed)
    cols = ["map_n", "step"]
    for m in measures:
        cols += [f"{m}_mean", f"{m}_std", f"{m}_stderr"]
    lines.append(",".join(cols))
    for row in rows:
        cells = [str(row.map_n), str(row.step)]
        for m in measures:
            st = row.stats[m]
            cells += [_fmt(st.mean), _fmt(st.std), _fmt(st.stderr)]
        lines.append(",".join(cells))
    _emit(lines, args.out)
    return 0


def _cmd_pairwise(args, argv) -> int:
    pair = _parse_pair(args.pair)
    kwargs = {}
    if args.source == "baked":
        if args.n is None or args.step is None:
            raise ValueError("baked source requires --n and --step")
        kwargs = {"map_n": int(args.n), "step": args.step}
    result = pairwise_probability(
        args.qubits, args.samples, pair, args.seed,
        source=args.source, bins=args.bins, **kwargs,
    )
    lines = _header(argv, seed=args.seed)
    lines.append(f"# samples: {args.samples}")
    lines.append(f"# pair: {pair[0]},{pair[1]}")
    lines.append(f"# probability: {_fmt(result.probability)}")
    lines.append(f"# c_mean: {_fmt(result.c_mean)}")
    lines.append(f"# c_std: {_fmt(result.c_std)}")
    lines.append("bin_left,bin_right,count,density")
    h = result.histogram
    for b in range(len(h.counts)):
        lines.append(
            f"{_fmt(h.edges[b])},{_fmt(h.edges[b + 1])},{h.counts[b]},"
            f"{_fmt(h.density[b])}"
        )
    _emit(lines, args.out)
    return 0


def _cmd_saturation(args, argv) -> int:
    num = args.qubits
    measures = _parse_measures(args.measure)
    if len(measures) != 1:
        raise ValueError("saturation averages one measure at a time")
    measure = measures[0]
    partition = _parse_partition(args.partition, num) if args.partition else None
    pair = _parse_pair(args.pair) if args.pair else None
    map_sel = _parse_map_n(args.n, num)
    map_list = range(1, num + 1) if map_sel == "all" else (map_sel,)
    lines = _header(argv, seed=args.seed)
    lines.append(f"# samples: {args.samples}")
    lines.append(f"# stride: {args.stride}")
    lines.append(f"# count: {args.count}")
    lines.append("map_n,value,stderr")
    for n in map_list:
        res = saturation_average(
            num, n, args.stride, args.count, args.samples, args.seed,
            measure=measure, partition=partition, pair=pair,
        )
        lines.append(f"{n},{_fmt(res.value)},{_fmt(res.stderr)}")
    _emit(lines, args.out)
    return 0


def _cmd_ranking(args, argv) -> int:
    num = args.qubits
    window = _parse_pair(args.window)
    partition = _parse_partition(args.partition, num) if args.partition else None
    entries = ranking_report(num, args.samples, window, args.seed,
                             partition=partition)
    lines = _header(argv, seed=args.seed)
    lines.append(f"# samples: {args.samples}")
    lines.append(f"# window: {window[0]},{window[1]}")
    lines.append("rank,map_n,mean,stderr")
    for rank, entry in enumerate(entries, start=1):
        lines.append(f"{rank},{entry.map_n},{_fmt(entry.mean)},{_fmt(entry.stderr)}")
    _emit(lines, args.out)
    return 0


def _cmd_spectrum(args, argv) -> int:
    pairs = periodic_spectrum(args.qubits)
    lines = _header(argv)
    lines.append("index,eigenvalue_re,eigenvalue_im,period")
    for idx, p in enumerate(pairs):
        lines.append(
            f"{idx},{_fmt(p.eigenvalue.real)},{_fmt(p.eigenvalue.imag)},{p.period}"
        )
    _emit(lines, args.out)
    return 0


def _cmd_map_matrix(args, argv) -> int:
    cfg = BakerMapConfig(args.qubits, args.n, strategy="matrix_free")
    matrix = baker_matrix(cfg)
    header = _header(argv)
    out = open(args.out, "w") if args.out else sys.stdout
    try:
        for line in header:
            out.write(line + "\n")
        for row in matrix:
            cells = []
            for z in row:
                cells.append(_fmt(z.real))
                cells.append(_fmt(z.imag))
            out.write(",".join(cells) + "\n")
    finally:
        if args.out:
            out.close()
    return 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qbaker",
        description="Quantized baker's maps and the entanglement they generate",
    )
    sub = parser.add_subparsers(dest="subcommand", required=True)

    p = sub.add_parser("analytic", help="closed-form random-state statistics")
    p.add_argument("--mu", type=int, required=True)
    p.add_argument("--nu", type=int, required=True)
    p.add_argument("--qubits", type=int, default=None,
                   help="also report Q and tangle moments for this register")
    p.add_argument("--out", default=None)
    p.set_defaults(func=_cmd_analytic)

    p = sub.add_parser("sample", help="histogram a measure over random states")
    p.add_argument("--qubits", type=int, required=True)
    p.add_argument("--kind", choices=("haar", "product"), default="haar")
    p.add_argument("--samples", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--measure", required=True)
    p.add_argument("--partition", default=None)
    p.add_argument("--pair", default=None)
    p.add_argument("--bins", type=int, default=100)
    p.add_argument("--out", default=None)
    p.set_defaults(func=_cmd_sample)

    p = sub.add_parser("evolve", help="measure statistics along baked evolution")
    p.add_argument("--qubits", type=int, required=True)
    p.add_argument("--n", required=True, help="position bits, or 'all'")
    p.add_argument("--initial", default="product",
                   help="product | basis:BITS | max_entangled_half")
    p.add_argument("--steps", type=int, required=True)
    p.add_argument("--samples", type=int, required=True)
    p.add_argument("--measure", required=True, help="comma-separated ids")
    p.add_argument("--partition", default=None)
    p.add_argument("--pair", default=None)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--out", default=None)
    p.set_defaults(func=_cmd_evolve)

    p = sub.add_parser("pairwise", help="pairwise-entanglement probability")
    p.add_argument("--qubits", type=int, required=True)
    p.add_argument("--samples", type=int, required=True)
    p.add_argument("--pair", required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--source", choices=("haar", "baked"), default="haar")
    p.add_argument("--n", default=None, help="position bits for baked source")
    p.add_argument("--step", type=int, default=None)
    p.add_argument("--bins", type=int, default=100)
    p.add_argument("--out", default=None)
    p.set_defaults(func=_cmd_pairwise)

    p = sub.add_parser("saturation", help="long-time average of a measure")
    p.add_argument("--qubits", type=int, required=True)
    p.add_argument("--n", required=True, help="position bits, or 'all'")
    p.add_argument("--stride", type=int, default=512)
    p.add_argument("--count", type=int, default=20)
    p.add_argument("--samples", type=int, default=500)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--measure", default="q")
    p.add_argument("--partition", default=None)
    p.add_argument("--pair", default=None)
    p.add_argument("--out", default=None)
    p.set_defaults(func=_cmd_saturation)

    p = sub.add_parser("ranking", help="rank maps by entangling power")
    p.add_argument("--qubits", type=int, required=True)
    p.add_argument("--samples", type=int, default=2000)
    p.add_argument("--window", default="200,500", help="start,end steps")
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--partition", default=None)
    p.add_argument("--out", default=None)
    p.set_defaults(func=_cmd_ranking)

    p = sub.add_parser("spectrum", help="full-shift map eigenvalues")
    p.add_argument("--qubits", type=int, required=True)
    p.add_argument("--out", default=None)
    p.set_defaults(func=_cmd_spectrum)

    p = sub.add_parser("map-matrix", help="dense unitary of one map as CSV")
    p.add_argument("--qubits", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--out", default=None)
    p.set_defaults(func=_cmd_map_matrix)

    return parser


def cli_dispatch(argv) -> int:
    """Parse argv and run one subcommand; returns the process exit code."""
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        code = exc.code
        return int(code) if code else 0
    try:
        return args.func(args, list(argv))
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except CapacityError as exc:
        print(f"capacity error: {exc}", file=sys.stderr)
        return 3


def main() -> None:
    sys.exit(cli_dispatch(sys.argv[1:]))


if __name__ == "__main__":
    main()
