"""CLI behavior: golden demo transcripts, bench CSV, image pipeline, exit codes."""

import numpy as np
import pytest

from matkit import Prng, decode_pnm, encode_pnm, Image, parse_csv
from matkit.cli import main

GOLDEN_INDEX = """\
M = magic(4)
   16    2    3   13
    5   11   10    8
    9    7    6   12
    4   14   15    1

M(3:7)
    9    4    2   11    7

M(12:end)
   15   13    8   12    1

M([1,3,5])
   16    9    2

M(1:2,2:3)
    2    3
   11   10

M(end,end-1:end)
   15    1

M(3,:)
    9    7    6   12

M < 8
  0  1  1  0
  1  0  0  0
  0  1  1  0
  1  0  0  1

M(M < 8)'
   5   4   2   7   3   6   1

M(1,1) = 0/0; isnan(M)
  1  0  0  0
  0  0  0  0
  0  0  0  0
  0  0  0  0

M(isnan(M)) = 0
    0    2    3   13
    5   11   10    8
    9    7    6   12
    4   14   15    1

X + Y (row broadcast across rows)
   11   22   33
   14   25   36
   17   28   39
"""

GOLDEN_REPLACE = """\
replace_negative([-1 1 -2 2 -3 3])
   0   1   0   2   0   3

replace_neg_nan([0 1 2 -1 NaN 3 -2 4])
   0   1   2   0   0   3   0   4
"""

BOUSTRO_LINE = "   16    5    9    4   14    7   11    2    3   10    6   15    1   12    8   13\n"
LINEAR_LINE = "   16    5    9    4    2   11    7   14    3   10    6   15   13    8   12    1\n"
ZIGZAG_LINE = "    4   14    9    5    7   15    1    6   11   16    2   10   12    8    3   13\n"


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_demo_index_golden(capsys):
    code, out, _ = run_cli(capsys, "demo", "index")
    assert code == 0
    assert out == GOLDEN_INDEX


def test_demo_replace_golden(capsys):
    code, out, _ = run_cli(capsys, "demo", "replace")
    assert code == 0
    assert out == GOLDEN_REPLACE


def test_demo_scan_golden_lines(capsys):
    code, out, _ = run_cli(capsys, "demo", "scan", "--kind", "boustrophedon", "--size", "4")
    assert code == 0 and out == BOUSTRO_LINE
    code, out, _ = run_cli(capsys, "demo", "scan", "--kind", "linear", "--size", "4")
    assert code == 0 and out == LINEAR_LINE
    code, out, _ = run_cli(capsys, "demo", "scan", "--kind", "zigzag", "--size", "4")
    assert code == 0 and out == ZIGZAG_LINE


def test_demo_scan_variants_agree(capsys):
    _, loop_out, _ = run_cli(capsys, "demo", "scan", "--kind", "zigzag", "--size", "6",
                             "--variant", "loop")
    _, vec_out, _ = run_cli(capsys, "demo", "scan", "--kind", "zigzag", "--size", "6",
                            "--variant", "vec")
    assert loop_out == vec_out


def test_demo_pca_deterministic(capsys):
    _, first, _ = run_cli(capsys, "demo", "pca", "--n", "100", "--seed", "42")
    _, again, _ = run_cli(capsys, "demo", "pca", "--n", "100", "--seed", "42")
    _, other, _ = run_cli(capsys, "demo", "pca", "--n", "100", "--seed", "43")
    assert first == again
    assert first != other
    assert "variance ratio" in first


def test_bench_zigzag_seed_stable_checksums(capsys):
    code, out1, _ = run_cli(capsys, "bench", "run", "--scenario", "zigzag", "--seed", "7")
    assert code == 0
    code, out2, _ = run_cli(capsys, "bench", "run", "--scenario", "zigzag", "--seed", "7")
    assert code == 0
    cs1 = [r.checksum for r in parse_csv(out1)]
    cs2 = [r.checksum for r in parse_csv(out2)]
    assert cs1 == cs2
    assert len(cs1) == 2 and cs1[0] == cs1[1]


def test_bench_writes_csv_file(tmp_path, capsys):
    out_file = tmp_path / "timings.csv"
    code, out, _ = run_cli(capsys, "bench", "run", "--scenario", "grayscale",
                           "--seed", "5", "--out", str(out_file))
    assert code == 0
    assert out_file.read_text() == out
    records = parse_csv(out)
    assert {r.variant for r in records} == {"loop", "vectorized"}
    assert all(r.total_seconds > 0 for r in records)


def test_bench_unknown_scenario_is_usage_error(capsys):
    code, _, err = run_cli(capsys, "bench", "run", "--scenario", "warpdrive")
    assert code == 2
    assert "unknown scenario" in err


def test_unknown_subcommand_exits_2(capsys):
    assert run_cli(capsys, "frobnicate")[0] == 2
    assert run_cli(capsys, "demo", "scan", "--kind", "sideways")[0] == 2


def test_img_gray_uniform_pixel_values(tmp_path, capsys):
    src = tmp_path / "u.ppm"
    img = Image(pixels=Prng(1).randint(100, 100, (3, 5, 3)))
    src.write_bytes(encode_pnm(img))
    dst = tmp_path / "u.pgm"
    code, _, _ = run_cli(capsys, "img", "gray", "--in", str(src), "--out", str(dst))
    assert code == 0
    gray = decode_pnm(dst.read_bytes())
    assert gray.channels == 1
    assert np.all(gray.pixels.buf == 100.0)


def test_img_gray_rejects_gray_input(tmp_path, capsys):
    src = tmp_path / "g.pgm"
    src.write_bytes(b"P5\n1 1\n255\n\x42")
    code, _, err = run_cli(capsys, "img", "gray", "--in", str(src), "--out", str(tmp_path / "o.pgm"))
    assert code == 1
    assert "3-channel" in err


def test_img_gray_missing_file(tmp_path, capsys):
    code, _, err = run_cli(capsys, "img", "gray", "--in", str(tmp_path / "nope.ppm"),
                           "--out", str(tmp_path / "o.pgm"))
    assert code == 1
    assert "error" in err


def test_img_dct_uniform_blocks(tmp_path, capsys):
    src = tmp_path / "c.pgm"
    src.write_bytes(b"P5\n16 16\n255\n" + bytes([128] * 256))
    out = tmp_path / "coeffs.csv"
    code, _, _ = run_cli(capsys, "img", "dct", "--in", str(src), "--block", "8", "--out", str(out))
    assert code == 0
    rows = [line.split(",") for line in out.read_text().strip().splitlines()]
    vals = np.array([[float(c) for c in row] for row in rows])
    assert vals.shape == (16, 16)
    dc = vals[0::8, 0::8]
    assert np.allclose(dc, 1024.0, atol=1e-6)  # 128 * 8 per block
    ac = vals.copy()
    ac[0::8, 0::8] = 0.0
    assert ac.max() <= 1e-9


def test_img_dct_pads_partial_blocks(tmp_path, capsys):
    src = tmp_path / "p.pgm"
    src.write_bytes(b"P5\n5 3\n255\n" + bytes([10] * 15))
    out = tmp_path / "c.csv"
    code, _, _ = run_cli(capsys, "img", "dct", "--in", str(src), "--block", "4", "--out", str(out))
    assert code == 0
    rows = out.read_text().strip().splitlines()
    assert len(rows) == 4  # 3 rows padded to 4
    assert len(rows[0].split(",")) == 8  # 5 cols padded to 8


def test_corrupt_image_reports_offset(tmp_path, capsys):
    src = tmp_path / "bad.ppm"
    src.write_bytes(b"P6\n2 2\n255\n\x00")
    code, _, err = run_cli(capsys, "img", "gray", "--in", str(src), "--out", str(tmp_path / "o.pgm"))
    assert code == 1
    assert "byte offset" in err
