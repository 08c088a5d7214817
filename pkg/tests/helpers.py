"""Shared assertion helpers for the suite."""

import numpy as np

from matkit import NumArray


def arr(a):
    """The nd view of a NumArray (or pass numpy arrays through)."""
    return a.view() if isinstance(a, NumArray) else np.asarray(a)


def assert_exact(a, expected, msg=""):
    """Bitwise equality of values and shape (NaN == NaN counts as equal)."""
    got = arr(a)
    want = np.asarray(expected, dtype=np.float64)
    assert got.shape == want.shape, f"shape {got.shape} != {want.shape} {msg}"
    assert np.array_equal(got, want, equal_nan=True), f"{got} != {want} {msg}"


def assert_close(a, expected, tol=1e-12, msg=""):
    got = arr(a)
    want = np.asarray(expected, dtype=np.float64)
    assert got.shape == want.shape, f"shape {got.shape} != {want.shape} {msg}"
    delta = np.max(np.abs(got - want)) if got.size else 0.0
    assert delta <= tol, f"max |delta| = {delta} > {tol} {msg}"


def max_abs_diff(a, b):
    va, vb = arr(a), arr(b)
    assert va.shape == vb.shape
    return float(np.max(np.abs(va - vb))) if va.size else 0.0
