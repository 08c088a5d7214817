"""The case-study algorithms, each in loop form and vectorized form.

Both forms of every algorithm share one result contract and are checked
against each other; the loop forms are deliberately scalar (plain Python
floats, explicit index arithmetic) while the vectorized forms use the
kernel's broadcasting and indexing idioms.

Scan results are 1 x numel row vectors listing the matrix elements in scan
order; every scan is a permutation of its input. The scan loops flatten with
the row count (j-1)*rows + i; writing the column count there would only be
correct for square matrices.
"""

from __future__ import annotations

import math
from typing import Callable, Tuple

from .core import NumArray, from_rows, colon_range, flipud, permute, reshape, wrap_ndarray, zeros
from .errors import ArgumentError, ContractError, ShapeError
from .indexing import ALL, END, IndexExpr, assign_indexed, delete_elements, extract, isnan_mask, span
from .linalg import EigResult, dctmtx, eig_sym, matmul, spdiags_extract
from .ops import compare, ew_unary, extremum, mask_or, merge, reduce_along_dim

import numpy as np

MetricFn = Callable[[NumArray, NumArray], NumArray]

_VARIANTS = ("loop", "vectorized")


def _check_variant(variant: str):
    if variant not in _VARIANTS:
        raise ArgumentError(f"variant must be one of {_VARIANTS}, got {variant!r}")


def _check_rank2(m: NumArray, who: str):
    if m.rank != 2:
        raise ShapeError(f"{who} needs a rank-2 array, got {m.dims}")


# -- matrix scans -----------------------------------------------------------

def linear_scan(m: NumArray, variant: str = "vectorized") -> NumArray:
    """Read the elements column by column, top to bottom."""
    _check_variant(variant)
    _check_rank2(m, "linear_scan")
    if variant == "loop":
        rows, cols = m.dims
        buf = m.to_list()
        out = [0.0] * (rows * cols)
        for j in range(1, cols + 1):
            for i in range(1, rows + 1):
                out[(j - 1) * rows + i - 1] = buf[(j - 1) * rows + i - 1]
        return NumArray((1, rows * cols), out)
    return extract(m, IndexExpr.linear(ALL)).T


def boustrophedon_scan(m: NumArray, variant: str = "vectorized") -> NumArray:
    """Read columns alternately top-down and bottom-up, like the ox plows."""
    _check_variant(variant)
    _check_rank2(m, "boustrophedon_scan")
    rows, cols = m.dims
    if variant == "loop":
        buf = m.to_list()
        out = [0.0] * (rows * cols)
        for j in range(1, cols + 1):
            for i in range(1, rows + 1):
                if j % 2 == 1:
                    v = buf[(j - 1) * rows + i - 1]
                else:
                    v = buf[(j - 1) * rows + (rows - i + 1) - 1]
                out[(j - 1) * rows + i - 1] = v
        return NumArray((1, rows * cols), out)
    even = IndexExpr.of(ALL, span(2, END, 2))
    flipped = assign_indexed(m, even, flipud(extract(m, even)))
    return extract(flipped, IndexExpr.linear(ALL)).T


def zigzag_scan(m: NumArray, variant: str = "vectorized") -> NumArray:
    """Walk the constant j-i diagonals with alternating direction.

    Starts at the bottom-left element moving up-right; this is the
    coefficient ordering used on transform blocks in JPEG-style pipelines
    (up to the chosen starting corner).
    """
    _check_variant(variant)
    _check_rank2(m, "zigzag_scan")
    rows, cols = m.dims
    if variant == "loop":
        buf = m.to_list()
        out = []
        i, j, c = rows, 1, 1
        while 1 <= i <= rows and 1 <= j <= cols:
            out.append(buf[(j - 1) * rows + i - 1])
            i += c
            j += c
            if i < 1 and j < 1:
                i += 1
                j += 2
                c = -c
            elif i > rows and j > cols:
                i -= 2
                j -= 1
                c = -c
            elif i < 1:
                i += 1
                j += 2
                c = -c
            elif i > rows:
                i -= 1
                c = -c
            elif j < 1:
                j += 1
                c = -c
            elif j > cols:
                j -= 1
                i -= 2
                c = -c
        return NumArray((1, len(out)), out)
    ind = reshape(colon_range(1, 1, rows * cols), (rows, cols))
    bands = spdiags_extract(ind).bands
    even = IndexExpr.of(ALL, span(2, END, 2))
    bands = assign_indexed(bands, even, flipud(extract(bands, even)))
    kept = delete_elements(bands, compare("==", bands, 0))
    return extract(m, IndexExpr.linear(kept))


# -- principal component analysis -------------------------------------------

def pca(x: NumArray) -> Tuple[NumArray, NumArray, NumArray]:
    """Project data onto the eigenbasis of its covariance.

    Samples are the COLUMNS of x (one d-dimensional sample per column).
    Returns (y, p, s): the projected data, the orthonormal basis (eigenvector
    columns, ascending variance), and the covariance matrix of the centered
    data. The leading component is therefore the last row of y.
    """
    _check_rank2(x, "pca")
    n = x.cols
    if n < 2:
        raise ArgumentError(f"pca needs at least 2 samples, got {n}")
    centered = x - reduce_along_dim("mean", x, 2)
    s = matmul(centered, centered.T) * (1.0 / (n - 1))
    basis: EigResult = eig_sym(s)
    y = matmul(basis.vectors.T, centered)
    return y, basis.vectors, s


# -- pairwise distances ------------------------------------------------------

def distance_matrix(p: NumArray, strategy: str = "fullBroadcast") -> NumArray:
    """All pairwise Euclidean distances between the rows of p.

    Three equivalent strategies: 'loop3' (three nested scalar loops filling
    both triangles by symmetry), 'rowBroadcast' (one loop over reference
    points, broadcasting each against the remaining rows), and
    'fullBroadcast' (no loop at all, no symmetry shortcut).
    """
    _check_rank2(p, "distance_matrix")
    n, d = p.dims
    if strategy == "loop3":
        buf = p.to_list()
        out = np.zeros((n, n))
        for i in range(1, n + 1):
            for j in range(i, n + 1):
                dist = 0.0
                for k in range(1, d + 1):
                    dk = buf[(k - 1) * n + i - 1] - buf[(k - 1) * n + j - 1]
                    dist += dk * dk
                out[i - 1, j - 1] = out[j - 1, i - 1] = math.sqrt(dist)
        return wrap_ndarray(out)
    if strategy == "rowBroadcast":
        out = zeros((n, n))
        for i in range(1, n + 1):
            tail = extract(p, IndexExpr.of(span(i, n), ALL))
            ref = extract(p, IndexExpr.of(i, ALL))
            col = ew_unary("sqrt", reduce_along_dim("sum", (tail - ref) ** 2, 2))
            out = assign_indexed(out, IndexExpr.of(span(i, n), i), col)
            out = assign_indexed(out, IndexExpr.of(i, span(i, n)), col.T)
        return out
    if strategy == "fullBroadcast":
        diff = p - permute(p, (3, 2, 1))
        return permute(ew_unary("sqrt", reduce_along_dim("sum", diff ** 2, 2)), (1, 3, 2))
    raise ArgumentError(f"unknown distance strategy {strategy!r}")


def _check_point_sets(x: NumArray, y: NumArray):
    _check_rank2(x, "metric")
    _check_rank2(y, "metric")
    if x.cols != y.cols:
        raise ShapeError(f"point sets disagree on dimension: {x.dims} vs {y.dims}")


def metric_euclidean(x: NumArray, y: NumArray) -> NumArray:
    """Root of summed squared differences; entry (i,j) pairs row i of x with row j of y."""
    _check_point_sets(x, y)
    diff = x - permute(y, (3, 2, 1))
    return permute(ew_unary("sqrt", reduce_along_dim("sum", diff ** 2, 2)), (1, 3, 2))


def metric_manhattan(x: NumArray, y: NumArray) -> NumArray:
    """Summed absolute differences; entry (i,j) pairs row i of x with row j of y."""
    _check_point_sets(x, y)
    diff = x - permute(y, (3, 2, 1))
    return permute(reduce_along_dim("sum", ew_unary("abs", diff), 2), (1, 3, 2))


def nearest_neighbor(x: NumArray, y: NumArray, metric: MetricFn) -> Tuple[NumArray, NumArray]:
    """For each row of x, the index of the nearest row of y and that distance.

    Ties go to the lowest index. Returns (idx, d) as nx1 columns.
    """
    if y.rank != 2 or y.rows < 1:
        raise ArgumentError("nearest_neighbor needs a non-empty reference set")
    dist = metric(x, y)
    values, indices = extremum("min", dist, 2)
    return indices, values


# -- conditional replacement --------------------------------------------------

def replace_negative(x: NumArray) -> NumArray:
    """Zero out negatives via the arithmetic encoding (x<0).*0 + (x>=0).*x."""
    below = merge(compare("<", x, 0), 1.0, 0.0)
    at_least = merge(compare(">=", x, 0), 1.0, 0.0)
    return below * 0.0 + at_least * x


def replace_neg_nan(x: NumArray) -> NumArray:
    """Replace negative values and NaN with zero via a conditional merge."""
    return merge(mask_or(isnan_mask(x), compare("<", x, 0)), 0.0, x)


# -- grayscale conversion ------------------------------------------------------

_LUMA_WEIGHTS = (0.299, 0.587, 0.114)


def rgb2gray(img: NumArray) -> NumArray:
    """Collapse an h x w x 3 volume to luminance by weighted channel sum.

    The channel weights ride along the third dimension (a 1x1x3 permuted row)
    so one broadcast multiply and one reduction do the whole image; gamma is
    not handled.
    """
    if img.rank != 3 or img.dims[2] != 3:
        raise ShapeError(f"rgb2gray needs an h x w x 3 array, got {img.dims}")
    weights = permute(from_rows([list(_LUMA_WEIGHTS)]), (1, 3, 2))
    return reduce_along_dim("sum", img * weights, 3)


def rgb2gray_loop(img: NumArray) -> NumArray:
    """Per-pixel scalar form of rgb2gray; the oracle for the broadcast idiom."""
    if img.rank != 3 or img.dims[2] != 3:
        raise ShapeError(f"rgb2gray needs an h x w x 3 array, got {img.dims}")
    h, w, _ = img.dims
    wr, wg, wb = _LUMA_WEIGHTS
    buf = img.to_list()
    plane = h * w
    out = [0.0] * plane
    for j in range(w):
        for i in range(h):
            base = j * h + i
            s = buf[base] * wr
            s += buf[plane + base] * wg
            s += buf[2 * plane + base] * wb
            out[base] = s
    return NumArray((h, w), out)


# -- block transforms ------------------------------------------------------------

def blockproc(a: NumArray, block_shape, f: Callable[[NumArray], NumArray]) -> NumArray:
    """Apply f to each non-overlapping r x c tile and reassemble.

    The input is zero-padded on the bottom/right to whole tiles, so the
    output size is the padded size. f must map r x c to r x c.
    """
    _check_rank2(a, "blockproc")
    r, c = int(block_shape[0]), int(block_shape[1])
    if r < 1 or c < 1:
        raise ArgumentError(f"block shape must be positive, got {(r, c)}")
    m, n = a.dims
    mm = ((m + r - 1) // r) * r
    nn = ((n + c - 1) // c) * c
    padded = np.zeros((mm, nn))
    padded[:m, :n] = a.view()
    out = np.zeros((mm, nn))
    for bi in range(mm // r):
        for bj in range(nn // c):
            tile = wrap_ndarray(padded[bi * r:(bi + 1) * r, bj * c:(bj + 1) * c])
            res = f(tile)
            if not isinstance(res, NumArray) or res.dims != tile.dims:
                got = res.dims if isinstance(res, NumArray) else type(res).__name__
                raise ContractError(f"block function returned {got}, expected {tile.dims}")
            out[bi * r:(bi + 1) * r, bj * c:(bj + 1) * c] = res.view()
    return wrap_ndarray(out)


def dct2d(x: NumArray, t: NumArray = None) -> NumArray:
    """2-D DCT of a square block: T X T'. Pass t to pin the basis order."""
    _check_rank2(x, "dct2d")
    if x.rows != x.cols:
        raise ShapeError(f"dct2d needs a square block, got {x.dims}")
    if t is None:
        t = dctmtx(x.rows)
    elif t.dims != x.dims:
        raise ShapeError(f"block {x.dims} does not match transform order {t.dims}")
    return matmul(matmul(t, x), t.T)


def idct2d(y: NumArray, t: NumArray = None) -> NumArray:
    """Inverse 2-D DCT: T' Y T; exact round trip with dct2d up to rounding."""
    _check_rank2(y, "idct2d")
    if y.rows != y.cols:
        raise ShapeError(f"idct2d needs a square block, got {y.dims}")
    if t is None:
        t = dctmtx(y.rows)
    elif t.dims != y.dims:
        raise ShapeError(f"block {y.dims} does not match transform order {t.dims}")
    return matmul(matmul(t.T, y), t)
