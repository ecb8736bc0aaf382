import subprocess
import sys

import numpy as np
import pytest

from qbaker.baker import BakerMapConfig, baker_matrix
from qbaker.cli import cli_dispatch


def run_cli(capsys, *argv):
    code = cli_dispatch(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def body_rows(text):
    return [line for line in text.strip().splitlines() if not line.startswith("#")]


def test_analytic_frozen_values(capsys):
    code, out, _ = run_cli(capsys, "analytic", "--mu", "2", "--nu", "2",
                           "--qubits", "2")
    assert code == 0
    rows = dict(line.split(",") for line in body_rows(out)[1:])
    assert float(rows["linear_entropy_mean"]) == 0.4
    assert abs(float(rows["linear_entropy_variance"]) - 72 / 1050) < 1e-15
    assert abs(float(rows["linear_entropy_third_cumulant"]) - 16 / 2625) < 1e-15
    assert abs(float(rows["page_mean_entropy"]) - 1 / 3) < 1e-15
    assert float(rows["lubkin_mean_purity"]) == 0.8
    assert float(rows["q_mean"]) == 0.4
    assert float(rows["tau_mean"]) == 0.4
    # mu = 1 keeps the purity rows but drops the undefined normalized ones
    code, out, _ = run_cli(capsys, "analytic", "--mu", "1", "--nu", "8")
    assert code == 0
    names = [line.split(",")[0] for line in body_rows(out)[1:]]
    assert "lubkin_mean_purity" in names
    assert "linear_entropy_mean" not in names


def test_header_conventions_and_out_stripping(capsys, tmp_path):
    path = tmp_path / "stats.csv"
    code, out, _ = run_cli(capsys, "analytic", "--mu", "2", "--nu", "4",
                           "--out", str(path))
    assert code == 0 and out == ""
    text = path.read_text()
    assert "# version: qbaker" in text
    assert "# command: analytic --mu 2 --nu 4\n" in text
    assert "--out" not in text
    assert "# conventions: qubit1=MSB,entropy=natural-log,eof=log2" in text
    # byte-identical to the stdout variant of the same semantic command
    code, out, _ = run_cli(capsys, "analytic", "--mu", "2", "--nu", "4")
    assert out == text


def test_output_is_deterministic(capsys):
    argv = ("sample", "--qubits", "3", "--samples", "200", "--seed", "5",
            "--measure", "q", "--bins", "20")
    _, first, _ = run_cli(capsys, *argv)
    _, second, _ = run_cli(capsys, *argv)
    assert first == second
    assert "# seed: 5" in first


def test_exit_codes(capsys, monkeypatch):
    code, _, _ = run_cli(capsys, "no-such-subcommand")
    assert code == 2
    code, _, _ = run_cli(capsys, "analytic", "--mu", "0", "--nu", "2")
    assert code == 2
    code, _, _ = run_cli(capsys, "evolve", "--qubits", "3", "--steps", "1",
                         "--samples", "2", "--measure", "q", "--seed", "1")
    assert code == 2  # --n is required
    monkeypatch.setenv("QBAKER_MAX_BYTES", "1024")
    code, _, err = run_cli(capsys, "evolve", "--qubits", "8", "--n", "1",
                           "--steps", "1", "--samples", "10000",
                           "--measure", "q", "--seed", "1")
    assert code == 3
    assert "capacity" in err


def test_help_exits_zero(capsys):
    assert cli_dispatch(["--help"]) == 0
    capsys.readouterr()


def test_spectrum_two_qubits(capsys):
    code, out, _ = run_cli(capsys, "spectrum", "--qubits", "2")
    assert code == 0
    rows = body_rows(out)
    assert rows[0] == "index,eigenvalue_re,eigenvalue_im,period"
    values = []
    periods = []
    for line in rows[1:]:
        _, re_s, im_s, period = line.split(",")
        values.append(complex(float(re_s), float(im_s)))
        periods.append(int(period))
    assert sorted(periods) == [1, 1, 2, 2]
    expected = sorted(
        (1.0, -1j, np.exp(-1j * np.pi / 4), np.exp(3j * np.pi / 4)),
        key=lambda z: np.angle(z),
    )
    got = sorted(values, key=lambda z: np.angle(z))
    np.testing.assert_allclose(got, expected, atol=1e-12)


def test_map_matrix_one_qubit(capsys):
    code, out, _ = run_cli(capsys, "map-matrix", "--qubits", "1", "--n", "1")
    assert code == 0
    rows = body_rows(out)
    assert len(rows) == 2
    parsed = np.array([[float(c) for c in row.split(",")] for row in rows])
    got = parsed[:, 0::2] + 1j * parsed[:, 1::2]
    np.testing.assert_allclose(
        got, [[0.5 - 0.5j, 0.5 + 0.5j], [0.5 + 0.5j, 0.5 - 0.5j]], atol=1e-12
    )
    np.testing.assert_allclose(got, baker_matrix(BakerMapConfig(1, 1)), atol=1e-15)


def test_evolve_full_shift_stays_product(capsys):
    code, out, _ = run_cli(capsys, "evolve", "--qubits", "4", "--n", "4",
                           "--steps", "5", "--samples", "20",
                           "--measure", "slin,q,tau", "--partition", "1-2",
                           "--seed", "3")
    assert code == 0
    rows = body_rows(out)
    header = rows[0].split(",")
    assert header[:2] == ["map_n", "step"]
    assert "linear_entropy_mean" in header and "tangle_mean" in header
    assert len(rows) == 1 + 6  # steps 0..5
    for line in rows[1:]:
        cells = line.split(",")
        means = [float(cells[header.index(c)])
                 for c in ("linear_entropy_mean", "mw_q_mean", "tangle_mean")]
        assert max(means) < 1e-12


def test_evolve_partition_comma_list(capsys):
    code, out, _ = run_cli(capsys, "evolve", "--qubits", "3", "--n", "1",
                           "--steps", "2", "--samples", "10",
                           "--measure", "vn", "--partition", "1,3",
                           "--seed", "2")
    assert code == 0
    assert "von_neumann_mean" in body_rows(out)[0]


def test_sample_histogram_totals(capsys):
    code, out, _ = run_cli(capsys, "sample", "--qubits", "2", "--samples",
                           "500", "--seed", "7", "--measure", "slin",
                           "--partition", "1", "--bins", "25")
    assert code == 0
    rows = body_rows(out)
    assert rows[0] == "bin_left,bin_right,count,density"
    counts = [int(line.split(",")[2]) for line in rows[1:]]
    assert len(counts) == 25
    assert sum(counts) == 500
    mean_line = next(l for l in out.splitlines() if l.startswith("# mean: "))
    assert 0.0 <= float(mean_line.split(": ")[1]) <= 1.0


def test_pairwise_csv(capsys):
    code, out, _ = run_cli(capsys, "pairwise", "--qubits", "3", "--samples",
                           "400", "--pair", "1,3", "--seed", "11",
                           "--bins", "30")
    assert code == 0
    prob_line = next(l for l in out.splitlines() if l.startswith("# probability: "))
    prob = float(prob_line.split(": ")[1])
    assert 0.9 <= prob <= 1.0
    assert len(body_rows(out)) == 1 + 30
    code, _, _ = run_cli(capsys, "pairwise", "--qubits", "3", "--samples",
                         "10", "--pair", "1,3", "--seed", "1",
                         "--source", "baked")
    assert code == 2  # baked needs --n and --step


def test_saturation_all_maps(capsys):
    code, out, _ = run_cli(capsys, "saturation", "--qubits", "3", "--n", "all",
                           "--stride", "3", "--count", "2", "--samples", "15",
                           "--seed", "9")
    assert code == 0
    rows = body_rows(out)
    assert rows[0] == "map_n,value,stderr"
    table = {int(r.split(",")[0]): float(r.split(",")[1]) for r in rows[1:]}
    assert sorted(table) == [1, 2, 3]
    assert table[3] < 1e-12
    assert table[1] > 0.4


def test_ranking_csv(capsys):
    code, out, _ = run_cli(capsys, "ranking", "--qubits", "4", "--samples",
                           "80", "--window", "15,40", "--seed", "21")
    assert code == 0
    rows = body_rows(out)
    assert rows[0] == "rank,map_n,mean,stderr"
    ranks = [int(r.split(",")[0]) for r in rows[1:]]
    means = [float(r.split(",")[2]) for r in rows[1:]]
    assert ranks == [1, 2, 3]
    assert means == sorted(means, reverse=True)


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "qbaker", "analytic", "--mu", "2", "--nu", "2"],
        capture_output=True, text=True,
    )
    assert proc.returncode == 0
    assert "lubkin_mean_purity,0.8" in proc.stdout
