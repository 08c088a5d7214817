"""Broadcasting, elementwise arithmetic/comparison, reductions, and merge.

Shapes of different rank are aligned by padding the shorter one with
singleton dimensions on the right (so a 1x3 row against an hxwx3 volume
needs an explicit permute first, exactly like the source notation). A
singleton dimension is repeated without materializing copies.

Reductions accumulate in ascending index order, deliberately: no pairwise or
compensated summation, so a vectorized sum is bit-for-bit equal to the naive
sequential loop over the same data. Elementwise maps may be parallelized
freely by the backend; reductions stay sequential per slice.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .core import BoolMask, NumArray, normalize_dims, wrap_ndarray
from .errors import ArgumentError, BroadcastError, ShapeError


@dataclass(frozen=True)
class BroadcastPlan:
    """Result shape plus, per operand and dimension, whether it advances.

    An operand advances along a dimension when its extent is larger than 1
    there; extent-1 dimensions repeat their single slice instead.
    """

    result_dims: tuple
    advances: tuple  # one tuple of bools per operand


def broadcast_shapes(a_dims, b_dims) -> BroadcastPlan:
    """Combine two shapes under the singleton-expansion rule."""
    a_dims, b_dims = tuple(a_dims), tuple(b_dims)
    rank = max(len(a_dims), len(b_dims))
    a_ext = a_dims + (1,) * (rank - len(a_dims))
    b_ext = b_dims + (1,) * (rank - len(b_dims))
    out = []
    for t, (da, db) in enumerate(zip(a_ext, b_ext)):
        if da == db:
            out.append(da)
        elif da == 1:
            out.append(db)
        elif db == 1:
            out.append(da)
        else:
            raise BroadcastError(
                f"dimension {t + 1}: extents {da} and {db} are incompatible"
            )
    return BroadcastPlan(
        result_dims=normalize_dims(out),
        advances=(
            tuple(d > 1 for d in a_ext),
            tuple(d > 1 for d in b_ext),
        ),
    )


def _coerce(x) -> NumArray:
    if isinstance(x, NumArray):
        return x
    if isinstance(x, (int, float, np.floating, np.integer)):
        return NumArray((1, 1), [float(x)])
    raise ArgumentError(f"expected a NumArray or scalar, got {type(x).__name__}")


def _aligned_views(*arrays):
    """Right-pad every operand's view with singleton axes to a common rank."""
    rank = max(a.rank for a in arrays)
    return [a.buf.reshape(a.dims + (1,) * (rank - a.rank), order="F") for a in arrays]


_BINARY = {
    "+": np.add,
    "-": np.subtract,
    "*": np.multiply,
    "/": np.divide,
    "^": np.power,
}

_COMPARE = {
    "<": np.less,
    "<=": np.less_equal,
    ">": np.greater,
    ">=": np.greater_equal,
    "==": np.equal,
    "!=": np.not_equal,
}

_UNARY = {
    "abs": np.abs,
    "sqrt": np.sqrt,
    "neg": np.negative,
    "cos": np.cos,
    "sin": np.sin,
}


def ew_binary(op: str, a, b) -> NumArray:
    """Elementwise +, -, *, /, ^ with broadcasting and IEEE-754 semantics."""
    if op not in _BINARY:
        raise ArgumentError(f"unknown elementwise operator {op!r}")
    a, b = _coerce(a), _coerce(b)
    plan = broadcast_shapes(a.dims, b.dims)
    va, vb = _aligned_views(a, b)
    with np.errstate(all="ignore"):
        out = _BINARY[op](va, vb)
    return NumArray(plan.result_dims, np.ravel(out, order="F"))


def compare(op: str, a, b) -> BoolMask:
    """Elementwise comparison; any comparison with NaN is false except !=."""
    if op not in _COMPARE:
        raise ArgumentError(f"unknown comparison {op!r}")
    a, b = _coerce(a), _coerce(b)
    plan = broadcast_shapes(a.dims, b.dims)
    va, vb = _aligned_views(a, b)
    with np.errstate(invalid="ignore"):
        out = _COMPARE[op](va, vb)
    return BoolMask(plan.result_dims, np.ravel(out, order="F"))


def ew_unary(op: str, a: NumArray) -> NumArray:
    """Elementwise abs/sqrt/neg/cos/sin; sqrt of a negative is NaN."""
    if op not in _UNARY:
        raise ArgumentError(f"unknown unary operator {op!r}")
    with np.errstate(all="ignore"):
        out = _UNARY[op](a.buf)
    return NumArray(a.dims, out)


def reduce_along_dim(kind: str, a: NumArray, dim: int) -> NumArray:
    """Sum/prod/mean along dim, collapsing its extent to 1.

    Accumulation is strictly ascending-index (a cumulative scan's last
    element), never pairwise. Reducing past the rank is the identity, since
    the implicit trailing dimension is a singleton.
    """
    if kind not in ("sum", "prod", "mean"):
        raise ArgumentError(f"unknown reduction {kind!r}")
    if dim not in (1, 2, 3):
        raise ArgumentError(f"reduction dim must be 1, 2, or 3, got {dim}")
    if dim > a.rank:
        return NumArray(a.dims, a.buf.copy())
    ax = dim - 1
    v = a.view()
    n = v.shape[ax]
    out_shape = tuple(1 if t == ax else d for t, d in enumerate(v.shape))
    if n == 0:
        fill = 0.0 if kind == "sum" else (1.0 if kind == "prod" else np.nan)
        return NumArray(normalize_dims(out_shape), np.full(int(np.prod(out_shape)), fill))
    scan = np.cumsum(v, axis=ax) if kind in ("sum", "mean") else np.cumprod(v, axis=ax)
    out = np.take(scan, -1, axis=ax)
    if kind == "mean":
        out = out / n
    out = np.expand_dims(out, ax)
    return NumArray(normalize_dims(out_shape), np.ravel(out, order="F"))


def cumsum_along_dim(a: NumArray, dim: int) -> NumArray:
    """Running prefix sums along dim; same shape as the input."""
    if dim not in (1, 2):
        raise ArgumentError(f"cumsum dim must be 1 or 2, got {dim}")
    if a.rank != 2:
        raise ShapeError("cumsum here is rank-2 only")
    out = np.cumsum(a.view(), axis=dim - 1)
    return NumArray(a.dims, np.ravel(out, order="F"))


def extremum(kind: str, a: NumArray, dim: int):
    """Per-slice min or max with the 1-based index of its first occurrence.

    NaN entries are skipped; a slice of only NaN reports value NaN and
    index 1. Ties resolve to the lowest index.
    """
    if kind not in ("min", "max"):
        raise ArgumentError(f"extremum kind must be 'min' or 'max', got {kind!r}")
    if dim not in (1, 2):
        raise ArgumentError(f"extremum dim must be 1 or 2, got {dim}")
    if a.rank != 2:
        raise ShapeError("extremum here is rank-2 only")
    ax = dim - 1
    v = a.view()
    if v.shape[ax] < 1:
        raise ArgumentError("extremum needs extent >= 1 along dim")
    nan = np.isnan(v)
    if kind == "min":
        w = np.where(nan, np.inf, v)
        best = w.min(axis=ax, keepdims=True)
    else:
        w = np.where(nan, -np.inf, v)
        best = w.max(axis=ax, keepdims=True)
    hit = (w == best) & ~nan
    idx0 = np.argmax(hit, axis=ax)  # first True; 0 when the slice is all NaN
    vals = np.take_along_axis(v, np.expand_dims(idx0, ax), ax)
    idx = np.expand_dims(idx0, ax).astype(np.float64) + 1.0
    dims = normalize_dims(vals.shape)
    return (
        NumArray(dims, np.ravel(vals, order="F")),
        NumArray(dims, np.ravel(idx, order="F")),
    )


def merge(mask: BoolMask, a, b) -> NumArray:
    """Elementwise mask ? a : b with broadcasting (the conditional merge)."""
    a, b = _coerce(a), _coerce(b)
    plan = broadcast_shapes(mask.dims, broadcast_shapes(a.dims, b.dims).result_dims)
    rank = len(plan.result_dims)
    vm = mask.bits.reshape(mask.dims + (1,) * (rank - len(mask.dims)), order="F")
    va, vb = (
        x.buf.reshape(x.dims + (1,) * (rank - x.rank), order="F") for x in (a, b)
    )
    out = np.where(vm, va, vb)
    return NumArray(plan.result_dims, np.ravel(out, order="F"))


def mask_or(a: BoolMask, b: BoolMask) -> BoolMask:
    plan = broadcast_shapes(a.dims, b.dims)
    rank = len(plan.result_dims)
    va = a.bits.reshape(a.dims + (1,) * (rank - len(a.dims)), order="F")
    vb = b.bits.reshape(b.dims + (1,) * (rank - len(b.dims)), order="F")
    return BoolMask(plan.result_dims, np.ravel(va | vb, order="F"))


def mask_and(a: BoolMask, b: BoolMask) -> BoolMask:
    plan = broadcast_shapes(a.dims, b.dims)
    rank = len(plan.result_dims)
    va = a.bits.reshape(a.dims + (1,) * (rank - len(a.dims)), order="F")
    vb = b.bits.reshape(b.dims + (1,) * (rank - len(b.dims)), order="F")
    return BoolMask(plan.result_dims, np.ravel(va & vb, order="F"))


def mask_not(a: BoolMask) -> BoolMask:
    return BoolMask(a.dims, ~a.bits)


def apply_broadcast(f: Callable[[float, float], float], a, b) -> NumArray:
    """Lift a pure scalar binary function to arrays under broadcasting."""
    a, b = _coerce(a), _coerce(b)
    plan = broadcast_shapes(a.dims, b.dims)
    va, vb = _aligned_views(a, b)
    lifted = np.frompyfunc(lambda x, y: float(f(float(x), float(y))), 2, 1)
    out = lifted(va, vb).astype(np.float64)
    return NumArray(plan.result_dims, np.ravel(out, order="F"))
