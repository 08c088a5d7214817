"""Case studies: scans, PCA, distances, nearest neighbor, grayscale, block DCT."""

import math

import numpy as np
import pytest

from matkit import (
    ArgumentError,
    ContractError,
    Prng,
    ShapeError,
    blockproc,
    boustrophedon_scan,
    dct2d,
    distance_matrix,
    from_rows,
    full,
    idct2d,
    linear_scan,
    magic,
    matmul,
    metric_euclidean,
    metric_manhattan,
    nearest_neighbor,
    pca,
    replace_neg_nan,
    replace_negative,
    rgb2gray,
    rgb2gray_loop,
    zeros,
    zigzag_scan,
)
from matkit.core import wrap_ndarray
from matkit.linalg import dctmtx

from helpers import assert_close, assert_exact, max_abs_diff

LINEAR4 = [16, 5, 9, 4, 2, 11, 7, 14, 3, 10, 6, 15, 13, 8, 12, 1]
BOUSTRO4 = [16, 5, 9, 4, 14, 7, 11, 2, 3, 10, 6, 15, 1, 12, 8, 13]
# hand-executed trace of the zigzag automaton on the 4x4 magic square
ZIGZAG4 = [4, 14, 9, 5, 7, 15, 1, 6, 11, 16, 2, 10, 12, 8, 3, 13]


# --- scans ---

def test_linear_scan_reference():
    m = magic(4)
    for variant in ("loop", "vectorized"):
        got = linear_scan(m, variant)
        assert got.dims == (1, 16)
        assert got.buf.tolist() == LINEAR4


def test_boustrophedon_reference():
    m = magic(4)
    for variant in ("loop", "vectorized"):
        assert boustrophedon_scan(m, variant).buf.tolist() == BOUSTRO4


def test_zigzag_reference_trace():
    m = magic(4)
    assert zigzag_scan(m, "loop").buf.tolist() == ZIGZAG4
    assert zigzag_scan(m, "vectorized").buf.tolist() == ZIGZAG4


def test_scan_degenerate_shapes():
    row = from_rows([[10, 20, 30, 40]])
    assert linear_scan(row).buf.tolist() == [10, 20, 30, 40]
    assert zigzag_scan(row, "loop").buf.tolist() == [10, 20, 30, 40]
    assert zigzag_scan(row, "vectorized").buf.tolist() == [10, 20, 30, 40]
    col = from_rows([[1], [2], [3]])
    assert boustrophedon_scan(col, "loop").buf.tolist() == [1, 2, 3]
    assert boustrophedon_scan(col, "vectorized").buf.tolist() == [1, 2, 3]


def test_scan_loop_equals_vectorized_200_shapes():
    rng = np.random.default_rng(60)
    scans = (linear_scan, boustrophedon_scan, zigzag_scan)
    for _ in range(200):
        m, n = int(rng.integers(1, 13)), int(rng.integers(1, 13))
        a = wrap_ndarray(rng.integers(0, 100, size=(m, n)).astype(float))
        for scan in scans:
            loop = scan(a, "loop")
            vec = scan(a, "vectorized")
            assert loop.dims == vec.dims == (1, m * n)
            assert np.array_equal(loop.buf, vec.buf), scan.__name__


def test_scan_output_is_permutation_of_input():
    rng = np.random.default_rng(61)
    scans = (linear_scan, boustrophedon_scan, zigzag_scan)
    for _ in range(40):
        m, n = int(rng.integers(1, 10)), int(rng.integers(1, 10))
        a = wrap_ndarray(rng.standard_normal((m, n)))
        for scan in scans:
            for variant in ("loop", "vectorized"):
                seq = scan(a, variant)
                assert np.array_equal(np.sort(seq.buf), np.sort(a.buf))


def test_scan_argument_checks():
    with pytest.raises(ArgumentError):
        linear_scan(magic(4), "fast")


# --- pca ---

def test_pca_diagonal_covariance_recovers_axes():
    # centered data with uncorrelated rows: projection only reorders rows
    x = from_rows([[1.0, -1.0, 1.0, -1.0], [4.0, -4.0, -4.0, 4.0]])
    y, p, s = pca(x)
    assert_close(s, [[4.0 / 3, 0], [0, 64.0 / 3]], tol=1e-12)
    assert_exact(p, np.eye(2))
    assert max_abs_diff(y, x) == 0.0


def test_pca_rotated_cloud():
    rng = Prng(42)
    theta = math.pi / 4
    rot = from_rows([[math.cos(theta), -math.sin(theta)],
                     [math.sin(theta), math.cos(theta)]])
    x = matmul(rot, rng.normal((2, 100)) * from_rows([[1.0], [0.1]]))
    y, p, s = pca(x)
    n = 100
    cov_y = matmul(y, y.T) * (1.0 / (n - 1))
    gram = matmul(p.T, p).view()
    assert np.abs(gram - np.eye(2)).max() <= 1e-9
    trace = float(np.trace(cov_y.view()))
    assert abs(cov_y.view()[0, 1]) <= 1e-9 * trace
    assert abs(trace - float(np.trace(s.view()))) <= 1e-9
    variances = np.sort(np.diag(cov_y.view()))
    assert variances[1] >= 50 * variances[0]


def test_pca_preserves_total_variance_randomized():
    rng = Prng(7)
    for _ in range(10):
        x = rng.normal((3, 40))
        y, p, s = pca(x)
        cov_y = matmul(y, y.T) * (1.0 / 39)
        assert abs(float(np.trace(cov_y.view())) - float(np.trace(s.view()))) <= 1e-9


def test_pca_needs_two_samples():
    with pytest.raises(ArgumentError):
        pca(from_rows([[1.0], [2.0]]))


# --- pairwise distances ---

def test_distance_3_4_5():
    p = from_rows([[0, 0], [3, 4]])
    for strategy in ("loop3", "rowBroadcast", "fullBroadcast"):
        assert_exact(distance_matrix(p, strategy), [[0, 5], [5, 0]])


def test_distance_single_point():
    assert_exact(distance_matrix(from_rows([[2.5, 1.5]]), "fullBroadcast"), [[0]])


def test_distance_strategies_agree_300_points():
    p = Prng(42).uniform((300, 5))
    d1 = distance_matrix(p, "loop3")
    d2 = distance_matrix(p, "rowBroadcast")
    d3 = distance_matrix(p, "fullBroadcast")
    assert max_abs_diff(d1, d2) <= 1e-9
    assert max_abs_diff(d1, d3) <= 1e-9
    for d in (d1, d2, d3):
        v = d.view()
        assert np.abs(v - v.T).max() <= 1e-12
        assert np.abs(np.diag(v)).max() <= 1e-12
    assert np.all(np.diag(d1.view()) == 0)
    assert np.all(np.diag(d2.view()) == 0)


def test_distance_triangle_inequality_sampled():
    p = Prng(8).uniform((40, 3))
    d = distance_matrix(p, "fullBroadcast").view()
    rng = np.random.default_rng(9)
    for _ in range(200):
        i, j, k = rng.integers(0, 40, size=3)
        assert d[i, j] <= d[i, k] + d[k, j] + 1e-9


def test_distance_unknown_strategy():
    with pytest.raises(ArgumentError):
        distance_matrix(from_rows([[0, 0]]), "turbo")


# --- metric handles ---

def test_metric_reference_values():
    a = from_rows([[0, 0]])
    b = from_rows([[3, 4]])
    assert metric_euclidean(a, b).item() == 5.0
    assert metric_manhattan(a, b).item() == 7.0


def test_manhattan_dominates_euclidean():
    rng = Prng(10)
    x, y = rng.uniform((6, 4)), rng.uniform((5, 4))
    de = metric_euclidean(x, y).view()
    dm = metric_manhattan(x, y).view()
    assert de.shape == dm.shape == (6, 5)
    assert np.all(dm >= de - 1e-12)


def test_metric_symmetry_up_to_transpose():
    rng = Prng(11)
    x, y = rng.uniform((6, 3)), rng.uniform((4, 3))
    for metric in (metric_euclidean, metric_manhattan):
        assert max_abs_diff(metric(x, y), metric(y, x).T) <= 1e-12


def test_metric_dimension_mismatch():
    with pytest.raises(ShapeError):
        metric_euclidean(from_rows([[1, 2]]), from_rows([[1, 2, 3]]))


# --- nearest neighbor ---

def test_nearest_neighbor_reference():
    x = from_rows([[0, 0], [1, 1], [2, 2]])
    y = from_rows([[0, 1], [2, 1]])
    for metric in (metric_euclidean, metric_manhattan):
        idx, d = nearest_neighbor(x, y, metric)
        assert idx.buf.tolist() == [1, 1, 2]
        assert d.buf.tolist() == [1, 1, 1]


def test_nearest_neighbor_self_match():
    x = Prng(12).uniform((7, 3))
    idx, d = nearest_neighbor(x, x, metric_euclidean)
    assert idx.buf.tolist() == list(range(1, 8))
    assert np.all(d.buf == 0)


def test_nearest_neighbor_matches_brute_force():
    rng = Prng(13)
    x, y = rng.uniform((20, 4)), rng.uniform((9, 4))
    idx, d = nearest_neighbor(x, y, metric_euclidean)
    xv, yv = x.view(), y.view()
    for i in range(20):
        dists = np.sqrt(((xv[i] - yv) ** 2).sum(axis=1))
        want = int(np.flatnonzero(dists == dists.min())[0]) + 1
        assert idx.buf[i] == want


def test_nearest_neighbor_empty_reference():
    with pytest.raises(ArgumentError):
        nearest_neighbor(from_rows([[0, 0]]), zeros((0, 2)), metric_euclidean)


# --- conditional replacement ---

def test_replace_reference_outputs():
    assert_exact(replace_negative(from_rows([[-1, 1, -2, 2, -3, 3]])), [[0, 1, 0, 2, 0, 3]])
    got = replace_neg_nan(from_rows([[0, 1, 2, -1, float("nan"), 3, -2, 4]]))
    assert_exact(got, [[0, 1, 2, 0, 0, 3, 0, 4]])


def test_replace_identity_on_clean_input():
    x = from_rows([[0, 1.5, 2], [3, 4, 5]])
    assert max_abs_diff(replace_neg_nan(x), x) == 0.0
    assert max_abs_diff(replace_negative(x), x) == 0.0


# --- grayscale ---

def test_rgb2gray_reference_pixels():
    assert rgb2gray(full((1, 1, 3), 100.0)).item() == 100.0
    red = wrap_ndarray(np.array([[[255.0, 0.0, 0.0]]]))
    assert abs(rgb2gray(red).item() - 76.245) <= 1e-12


def test_rgb2gray_loop_matches_broadcast_bit_for_bit():
    img = Prng(14).randint(0, 255, (64, 64, 3))
    a = rgb2gray(img)
    b = rgb2gray_loop(img)
    assert a.dims == b.dims == (64, 64)
    assert np.array_equal(a.buf, b.buf)


def test_rgb2gray_channel_check():
    with pytest.raises(ShapeError):
        rgb2gray(zeros((4, 4)))


# --- block processing and 2-D DCT ---

def test_blockproc_identity():
    a = magic(4)
    out = blockproc(a, (2, 2), lambda blk: blk)
    assert max_abs_diff(out, a) == 0.0


def test_blockproc_dc_of_ones():
    t = dctmtx(8)
    out = blockproc(full((8, 8), 1.0), (8, 8), lambda blk: dct2d(blk, t))
    v = out.view()
    assert abs(v[0, 0] - 8.0) <= 1e-12
    rest = v.copy()
    rest[0, 0] = 0.0
    assert np.abs(rest).max() <= 1e-12


def test_blockproc_pads_and_round_trips():
    rng = Prng(15)
    a = rng.uniform((60, 60))
    t = dctmtx(8)
    coeffs = blockproc(a, (8, 8), lambda blk: dct2d(blk, t))
    assert coeffs.dims == (64, 64)
    back = blockproc(coeffs, (8, 8), lambda blk: idct2d(blk, t))
    padded = np.zeros((64, 64))
    padded[:60, :60] = a.view()
    assert max_abs_diff(back, padded) <= 1e-9


def test_blockproc_contract_violation():
    with pytest.raises(ContractError):
        blockproc(magic(4), (2, 2), lambda blk: zeros((3, 3)))


def test_dct2d_zeros_energy_and_round_trip():
    assert np.all(dct2d(zeros((8, 8))).buf == 0)
    rng = Prng(16)
    x = rng.uniform((8, 8))
    y = dct2d(x)
    assert abs(np.linalg.norm(y.view()) - np.linalg.norm(x.view())) <= 1e-9
    assert max_abs_diff(idct2d(y), x) <= 1e-9


def test_dct2d_mismatched_basis():
    with pytest.raises(ShapeError):
        dct2d(zeros((4, 4)), dctmtx(8))
