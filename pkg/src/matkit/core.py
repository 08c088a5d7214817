"""Column-major dense arrays and their shape/rearrangement primitives.

Every numeric value in this package is a NumArray: an explicit shape of rank
at least 2 plus a flat float64 buffer laid out down the columns first
(Fortran order). A scalar is 1x1, a row vector 1xn, a column vector nx1.
Indices in the public API are 1-based throughout; the linear position of
element (i1, ..., ik) is

    i1 + sum_{t >= 2} (i_t - 1) * prod_{s < t} dims[s]

Arrays are immutable values: every operation returns a new array, so sharing
across threads is safe and nothing here locks.
"""

from __future__ import annotations

import math

import numpy as np

from .errors import ArgumentError, IndexBoundsError, ShapeError

# Machine epsilon for IEEE-754 double: the gap between 1 and the next double.
EPS = 2.0 ** -52


def eps_short() -> str:
    """Five-significant-digit rendering of machine epsilon, '2.2204e-16'."""
    return "%.4e" % EPS


def normalize_dims(dims) -> tuple:
    """Validate and canonicalize a dims tuple.

    Rank must be >= 2; trailing singleton dimensions beyond rank 2 are
    trimmed, so (3, 4, 1) and (3, 4) are the same shape while (1, 1, 3)
    keeps its rank.
    """
    out = []
    for d in dims:
        if not isinstance(d, (int, np.integer)) or isinstance(d, bool) or d < 0:
            raise ShapeError(f"dimension extents must be non-negative integers, got {d!r}")
        out.append(int(d))
    if len(out) < 2:
        raise ShapeError(f"rank must be at least 2, got dims {tuple(dims)!r}")
    while len(out) > 2 and out[-1] == 1:
        out.pop()
    return tuple(out)


def numel_of(dims) -> int:
    n = 1
    for d in dims:
        n *= d
    return n


class NumArray:
    """Immutable column-major array of float64."""

    __slots__ = ("dims", "buf")

    def __init__(self, dims, buf):
        dims = normalize_dims(dims)
        buf = np.asarray(buf, dtype=np.float64).ravel()
        if buf.size != numel_of(dims):
            raise ShapeError(
                f"buffer has {buf.size} elements but shape {dims} needs {numel_of(dims)}"
            )
        object.__setattr__(self, "dims", dims)
        object.__setattr__(self, "buf", buf)

    def __setattr__(self, name, value):
        raise AttributeError("NumArray is immutable")

    # -- basic queries ----------------------------------------------------

    @property
    def shape(self) -> tuple:
        return self.dims

    @property
    def rank(self) -> int:
        return len(self.dims)

    @property
    def numel(self) -> int:
        return self.buf.size

    @property
    def rows(self) -> int:
        return self.dims[0]

    @property
    def cols(self) -> int:
        return self.dims[1]

    def view(self) -> np.ndarray:
        """The buffer reinterpreted as an nd view in column-major order."""
        return self.buf.reshape(self.dims, order="F")

    def to_list(self) -> list:
        """Buffer as a plain Python list, column-major element order."""
        return self.buf.tolist()

    def at(self, *subs) -> float:
        """Scalar element access, 1-based: at(k) linear or at(i, j, ...)."""
        if len(subs) == 1:
            k = subs[0]
            if not 1 <= k <= self.numel:
                raise IndexBoundsError(f"linear index {k} out of range 1..{self.numel}")
            return float(self.buf[k - 1])
        return float(self.buf[sub2ind(self.dims, subs) - 1])

    def item(self) -> float:
        if self.numel != 1:
            raise ShapeError(f"item() needs a 1x1 array, got {self.dims}")
        return float(self.buf[0])

    @property
    def T(self) -> "NumArray":
        return permute(self, (2, 1))

    def __repr__(self):
        dims = "x".join(str(d) for d in self.dims)
        preview = np.array2string(self.view(), threshold=20, precision=5)
        return f"NumArray({dims})\n{preview}"

    def __bool__(self):
        raise TypeError("NumArray has no truth value; compare explicitly to get a mask")

    def __iter__(self):
        # without this, the 1-based __getitem__ would make iteration silently empty
        raise TypeError("NumArray is not iterable; use to_list() or view()")

    # -- operator sugar (elementwise, Octave-style broadcasting) ----------

    def __add__(self, other):
        from . import ops
        return ops.ew_binary("+", self, other)

    __radd__ = __add__

    def __sub__(self, other):
        from . import ops
        return ops.ew_binary("-", self, other)

    def __rsub__(self, other):
        from . import ops
        return ops.ew_binary("-", other, self)

    def __mul__(self, other):
        from . import ops
        return ops.ew_binary("*", self, other)

    __rmul__ = __mul__

    def __truediv__(self, other):
        from . import ops
        return ops.ew_binary("/", self, other)

    def __rtruediv__(self, other):
        from . import ops
        return ops.ew_binary("/", other, self)

    def __pow__(self, other):
        from . import ops
        return ops.ew_binary("^", self, other)

    def __neg__(self):
        from . import ops
        return ops.ew_unary("neg", self)

    def __matmul__(self, other):
        from . import linalg
        return linalg.matmul(self, other)

    def __lt__(self, other):
        from . import ops
        return ops.compare("<", self, other)

    def __le__(self, other):
        from . import ops
        return ops.compare("<=", self, other)

    def __gt__(self, other):
        from . import ops
        return ops.compare(">", self, other)

    def __ge__(self, other):
        from . import ops
        return ops.compare(">=", self, other)

    def __eq__(self, other):
        from . import ops
        if not isinstance(other, (NumArray, int, float, np.floating, np.integer)):
            return NotImplemented
        return ops.compare("==", self, other)

    def __ne__(self, other):
        from . import ops
        if not isinstance(other, (NumArray, int, float, np.floating, np.integer)):
            return NotImplemented
        return ops.compare("!=", self, other)

    __hash__ = None

    def __getitem__(self, key):
        """1-based extraction sugar: A[sel] is linear, A[s1, s2, ...] per-dim."""
        from . import indexing
        if isinstance(key, tuple):
            return indexing.extract(self, indexing.IndexExpr.of(*key))
        return indexing.extract(self, indexing.IndexExpr.linear(key))


class BoolMask:
    """Shape-matched boolean array produced by comparisons; column-major bits."""

    __slots__ = ("dims", "bits")

    def __init__(self, dims, bits):
        dims = normalize_dims(dims)
        bits = np.asarray(bits, dtype=bool).ravel()
        if bits.size != numel_of(dims):
            raise ShapeError(
                f"mask buffer has {bits.size} bits but shape {dims} needs {numel_of(dims)}"
            )
        object.__setattr__(self, "dims", dims)
        object.__setattr__(self, "bits", bits)

    def __setattr__(self, name, value):
        raise AttributeError("BoolMask is immutable")

    @property
    def shape(self) -> tuple:
        return self.dims

    @property
    def numel(self) -> int:
        return self.bits.size

    def view(self) -> np.ndarray:
        return self.bits.reshape(self.dims, order="F")

    def count(self) -> int:
        return int(self.bits.sum())

    def __or__(self, other):
        from . import ops
        return ops.mask_or(self, other)

    def __and__(self, other):
        from . import ops
        return ops.mask_and(self, other)

    def __invert__(self):
        from . import ops
        return ops.mask_not(self)

    def __bool__(self):
        raise TypeError("BoolMask has no single truth value; use any_true/all_true")

    def __repr__(self):
        dims = "x".join(str(d) for d in self.dims)
        return f"BoolMask({dims})\n{np.array2string(self.view(), threshold=20)}"


def wrap_ndarray(arr: np.ndarray) -> NumArray:
    """Adopt an nd numpy result (rank >= 2) as a NumArray, copying to F order."""
    if arr.ndim < 2:
        raise ShapeError("internal: wrap_ndarray needs rank >= 2")
    return NumArray(arr.shape, np.ravel(arr, order="F"))


# -- construction ---------------------------------------------------------

def zeros(dims) -> NumArray:
    dims = normalize_dims(dims)
    return NumArray(dims, np.zeros(numel_of(dims)))


def ones(dims) -> NumArray:
    dims = normalize_dims(dims)
    return NumArray(dims, np.ones(numel_of(dims)))


def full(dims, value) -> NumArray:
    dims = normalize_dims(dims)
    return NumArray(dims, np.full(numel_of(dims), float(value)))


def from_rows(rows) -> NumArray:
    """Build a matrix from a row-major literal, like [1 2 3; 4 5 6].

    Accepts a list of equal-length rows, or a flat list of numbers as a
    single row. Element (i, j) of the literal lands at (i, j) of the array.
    """
    if not isinstance(rows, (list, tuple)) or len(rows) == 0:
        raise ShapeError("literal must be a non-empty list")
    if not isinstance(rows[0], (list, tuple)):
        rows = [rows]
    ncols = len(rows[0])
    for r in rows:
        if len(r) != ncols:
            raise ShapeError(f"ragged literal: row lengths {[len(r) for r in rows]}")
    arr = np.array(rows, dtype=np.float64).reshape(len(rows), ncols)
    return wrap_ndarray(arr)


def colon_range(start, step, stop) -> NumArray:
    """Range row vector start:step:stop; empty 1x0 when direction is inconsistent."""
    if step == 0:
        raise ArgumentError("range step must be nonzero")
    q = (float(stop) - float(start)) / float(step)
    if q < 0:
        n = 0
    else:
        n = int(math.floor(q + 4 * EPS * max(1.0, abs(q)))) + 1
    return NumArray((1, n), float(start) + float(step) * np.arange(n, dtype=np.float64))


def magic(n: int) -> NumArray:
    """Magic square of doubly-even order n (n divisible by 4).

    Fill 1..n^2 row-major, then replace v by n^2+1-v on the main- and
    anti-diagonal cells of each aligned 4x4 sub-block. Every row, column,
    and main diagonal then sums to n(n^2+1)/2.
    """
    if not isinstance(n, (int, np.integer)) or n <= 0:
        raise ArgumentError(f"magic order must be a positive integer, got {n!r}")
    if n % 4 != 0:
        raise ArgumentError(f"unsupported magic order {n}: only doubly-even (n % 4 == 0)")
    i, j = np.mgrid[0:n, 0:n]
    m = (i * n + j + 1).astype(np.float64)
    flip = (i % 4 == j % 4) | ((i % 4) + (j % 4) == 3)
    m[flip] = n * n + 1 - m[flip]
    return wrap_ndarray(m)


# -- shape rearrangement ---------------------------------------------------

def reshape(a: NumArray, dims) -> NumArray:
    """Same buffer, new shape: a column-major reinterpretation, never a copy."""
    dims = normalize_dims(dims)
    if numel_of(dims) != a.numel:
        raise ShapeError(f"cannot reshape {a.dims} ({a.numel} elements) to {dims}")
    return NumArray(dims, a.buf)


def permute(a: NumArray, order) -> NumArray:
    """Reorder dimensions: result dim t is a's dim order[t] (1-based).

    The rank is extended with trailing singletons when order references
    dimensions beyond a's rank, so permute of a 1x3 row by (1, 3, 2) is the
    1x1x3 depth vector.
    """
    order = tuple(int(o) for o in order)
    k = len(order)
    if k < a.rank or sorted(order) != list(range(1, k + 1)):
        raise ArgumentError(f"order {order} is not a permutation of 1..rank for {a.dims}")
    dims_ext = a.dims + (1,) * (k - a.rank)
    v = a.buf.reshape(dims_ext, order="F")
    out = np.transpose(v, axes=[o - 1 for o in order])
    return NumArray(out.shape, np.ravel(out, order="F"))


def ipermute(a: NumArray, order) -> NumArray:
    """Inverse of permute with the same order: ipermute(permute(A, p), p) == A."""
    order = tuple(int(o) for o in order)
    inverse = [0] * len(order)
    for pos, o in enumerate(order):
        if not 1 <= o <= len(order):
            raise ArgumentError(f"order {order} is not a permutation")
        inverse[o - 1] = pos + 1
    return permute(a, inverse)


def flipud(a: NumArray) -> NumArray:
    """Reverse the row order; same as indexing rows with m:-1:1."""
    if a.rank != 2:
        raise ShapeError(f"flipud needs a rank-2 array, got {a.dims}")
    return wrap_ndarray(a.view()[::-1, :])


def sub2ind(dims, subs) -> int:
    """Column-major 1-based subscripts -> linear index."""
    dims = tuple(dims)
    if len(subs) != len(dims):
        raise ArgumentError(f"expected {len(dims)} subscripts for shape {dims}, got {len(subs)}")
    k = 0
    stride = 1
    for sub, extent in zip(subs, dims):
        if not 1 <= sub <= extent:
            raise IndexBoundsError(f"subscript {sub} out of range 1..{extent}")
        k += (sub - 1) * stride
        stride *= extent
    return k + 1


def ind2sub(dims, k: int) -> tuple:
    """Column-major 1-based linear index -> subscripts."""
    dims = tuple(dims)
    if not 1 <= k <= numel_of(dims):
        raise IndexBoundsError(f"linear index {k} out of range 1..{numel_of(dims)}")
    rem = k - 1
    subs = []
    for extent in dims:
        subs.append(rem % extent + 1)
        rem //= extent
    return tuple(subs)


def cat(dim: int, arrays) -> NumArray:
    """Concatenate along dim (1 = stack rows, 2 = glue columns)."""
    if dim not in (1, 2):
        raise ArgumentError(f"cat dim must be 1 or 2, got {dim}")
    arrays = list(arrays)
    if not arrays:
        raise ArgumentError("cat needs at least one array")
    axis = dim - 1
    views = [a.view() for a in arrays]
    base = views[0].shape
    for v in views[1:]:
        if len(v.shape) != len(base):
            raise ShapeError(f"cat rank mismatch: {base} vs {v.shape}")
        for ax, (d0, d1) in enumerate(zip(base, v.shape)):
            if ax != axis and d0 != d1:
                raise ShapeError(f"cat along dim {dim}: extents differ on dim {ax + 1}")
    return wrap_ndarray(np.concatenate(views, axis=axis))


def repmat(a: NumArray, reps_rows: int, reps_cols: int) -> NumArray:
    """Tile the whole array reps_rows x reps_cols times."""
    if reps_rows <= 0 or reps_cols <= 0:
        raise ArgumentError("repmat counts must be positive")
    if a.rank != 2:
        raise ShapeError("repmat here is rank-2 only")
    return wrap_ndarray(np.tile(a.view(), (reps_rows, reps_cols)))


def repelems(a: NumArray, counts) -> NumArray:
    """Repeat each element of a vector in sequence: ([5 7], [2 3]) -> [5 5 7 7 7]."""
    if not (a.rank == 2 and (a.rows == 1 or a.cols == 1)):
        raise ShapeError(f"repelems needs a vector, got {a.dims}")
    counts = [int(c) for c in counts]
    if len(counts) != a.numel:
        raise ArgumentError(f"need one count per element: {a.numel} elements, {len(counts)} counts")
    if any(c <= 0 for c in counts):
        raise ArgumentError("repelems counts must be positive")
    out = np.repeat(a.buf, counts)
    return NumArray((1, out.size), out)


def circshift(a: NumArray, k: int, dim: int) -> NumArray:
    """Circularly shift elements by k along dim; shifting by the extent is identity."""
    if dim not in (1, 2):
        raise ArgumentError(f"circshift dim must be 1 or 2, got {dim}")
    if a.rank != 2:
        raise ShapeError("circshift here is rank-2 only")
    return wrap_ndarray(np.roll(a.view(), int(k), axis=dim - 1))


def _slice_sort_perm(x: np.ndarray, descending: bool) -> np.ndarray:
    # Stable order with NaN always last; lexsort's last key is primary.
    nan = np.isnan(x)
    key = -x if descending else x
    return np.lexsort((key, nan))


def sort_along_dim(a: NumArray, dim: int, direction: str = "asc"):
    """Sort each slice along dim; NaN goes last either direction.

    Returns (sorted, perm) where perm holds the 1-based source positions, so
    taking a's elements at perm reconstructs sorted. Stable, hence ties and
    already-sorted input give the identity permutation.
    """
    if dim not in (1, 2):
        raise ArgumentError(f"sort dim must be 1 or 2, got {dim}")
    if direction not in ("asc", "desc"):
        raise ArgumentError(f"direction must be 'asc' or 'desc', got {direction!r}")
    if a.rank != 2:
        raise ShapeError("sort here is rank-2 only")
    v = a.view()
    out = np.empty_like(v)
    perm = np.empty(v.shape, dtype=np.float64)
    if dim == 1:
        for j in range(v.shape[1]):
            p = _slice_sort_perm(v[:, j], direction == "desc")
            out[:, j] = v[p, j]
            perm[:, j] = p + 1
    else:
        for i in range(v.shape[0]):
            p = _slice_sort_perm(v[i, :], direction == "desc")
            out[i, :] = v[i, p]
            perm[i, :] = p + 1
    return wrap_ndarray(out), wrap_ndarray(perm)


def unique_sorted(a: NumArray) -> NumArray:
    """Distinct values as an ascending row vector."""
    u = np.unique(a.buf)
    return NumArray((1, u.size), u)


def diff_adjacent(a: NumArray, dim: int) -> NumArray:
    """Moving difference along dim: each element becomes successor - element."""
    if dim not in (1, 2):
        raise ArgumentError(f"diff dim must be 1 or 2, got {dim}")
    if a.rank != 2:
        raise ShapeError("diff here is rank-2 only")
    if a.dims[dim - 1] < 1:
        raise ArgumentError("diff needs extent >= 1 along dim")
    return wrap_ndarray(np.diff(a.view(), axis=dim - 1))
