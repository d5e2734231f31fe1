"""Coordinate pairs for one-dimensional projections, the Reorder crossbar and projection rules."""

from __future__ import annotations

from functools import lru_cache

import numpy as np

from .rm_core import ParameterError, _check_pow2

# tanh product clamp for the exact rule
ATANH_EPS = 1e-12


def _check_index(i: int, n: int, allow_zero: bool = True) -> None:
    _check_pow2(n)
    if n < 2:
        raise ParameterError(f"projection needs n >= 2, got {n}")
    lo = 0 if allow_zero else 1
    if not (lo <= i < n):
        raise ParameterError(f"projection index must satisfy {lo} <= i < {n}, got {i}")


def _reorder_pairs(i: int, n: int) -> list[tuple[int, int]]:
    if i < n // 2:
        half = _reorder_pairs(i, n // 2)
        return half + [(a + n // 2, b + n // 2) for a, b in half]
    pairs = [(0, i)]
    pairs += [(j, j ^ i) for j in range(1, n // 2)]
    return pairs


@lru_cache(maxsize=None)
def _pairs_array(i: int, n: int) -> np.ndarray:
    if i == 0:
        arr = np.repeat(np.arange(n // 2)[:, None], 2, axis=1)
    else:
        arr = np.array(_reorder_pairs(i, n), dtype=np.intp)
    arr.setflags(write=False)
    return arr


def projection_pairs(i: int, n: int) -> np.ndarray:
    """Ordered (j_a, j_b) pairs of projection ``i``, shape (n/2, 2).

    Pair j holds the coordinates the Reorder crossbar places at positions
    (2j, 2j+1). For i >= 1 every pair satisfies j_a = j_b ^ i and the pairs
    partition range(n). i = 0 is the dummy projection with pairs (j, j).
    """
    _check_index(i, n)
    return _pairs_array(i, n)


@lru_cache(maxsize=None)
def all_pairs(n: int) -> np.ndarray:
    """Stacked pair tables for i = 1..n-1, shape (n-1, n/2, 2)."""
    _check_pow2(n)
    arr = np.stack([_pairs_array(i, n) for i in range(1, n)])
    arr.setflags(write=False)
    return arr


def reorder(L, i: int) -> np.ndarray:
    """Permute L so that consecutive positions (2j, 2j+1) hold (L[j_a], L[j_b])."""
    L = np.asarray(L)
    n = L.shape[-1]
    _check_index(i, n, allow_zero=False)
    return L[..., _pairs_array(i, n).reshape(-1)]


def minsum_rule(a, b):
    """min(|a|, |b|) * sgn(a) * sgn(b) with sgn(0) = +1."""
    mag = np.minimum(np.abs(a), np.abs(b))
    return np.where((a < 0) != (b < 0), -mag, mag)


def exact_rule(a, b):
    """2 atanh(tanh(a/2) tanh(b/2)), product clamped away from +-1."""
    t = np.tanh(np.asarray(a, dtype=float) / 2) * np.tanh(np.asarray(b, dtype=float) / 2)
    t = np.clip(t, -1 + ATANH_EPS, 1 - ATANH_EPS)
    return 2 * np.arctanh(t)


def _split(L, i: int):
    L = np.asarray(L)
    n = L.shape[-1]
    _check_index(i, n, allow_zero=False)
    pairs = _pairs_array(i, n)
    return L[..., pairs[:, 0]], L[..., pairs[:, 1]]


def project_minsum(L, i: int) -> np.ndarray:
    """Min-sum projection of L onto the length-n/2 vector of projection ``i``."""
    return minsum_rule(*_split(L, i))


def project_exact(L, i: int) -> np.ndarray:
    """Exact (box-plus) projection of L onto projection ``i``."""
    return exact_rule(*_split(L, i))
