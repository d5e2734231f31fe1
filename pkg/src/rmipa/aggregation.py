"""RevReorder index generation, pre-aggregation, voting and hard decision."""

from __future__ import annotations

import numpy as np

from .projection import _check_index
from .rm_core import ParameterError


def rev_reorder(i: int, n: int) -> np.ndarray:
    """Origin pairs U[j] = (j_a, j_b) of each coordinate of a decoded projection.

    Built independently of the projection crossbar: for i >= n/2 the pairs are
    (0, i) then (j, j ^ i); otherwise the half-length table is repeated with an
    offset of n/2.
    """
    _check_index(i, n, allow_zero=False)
    if i >= n // 2:
        U = np.empty((n // 2, 2), dtype=np.intp)
        j = np.arange(n // 2)
        U[:, 0] = j
        U[:, 1] = j ^ i
        U[0] = (0, i)
        return U
    half = rev_reorder(i, n // 2)
    return np.concatenate([half, half + n // 2])


def expansion_tables(pairs) -> tuple[np.ndarray, np.ndarray]:
    """Invert stacked pair tables of shape (P, n/2, 2).

    Returns ``partner[p, z]``, the other coordinate of the pair holding z, and
    ``slot[p, z]``, the flat index p * n/2 + j of that pair, both (P, n).
    """
    pairs = np.asarray(pairs)
    P, half, _ = pairs.shape
    partner = np.empty((P, 2 * half), dtype=np.intp)
    slot = np.empty((P, 2 * half), dtype=np.intp)
    rows = np.arange(P)[:, None]
    j = rows * half + np.arange(half)[None, :]
    partner[rows, pairs[..., 0]] = pairs[..., 1]
    partner[rows, pairs[..., 1]] = pairs[..., 0]
    slot[rows, pairs[..., 0]] = j
    slot[rows, pairs[..., 1]] = j
    return partner, slot


def expand(L, y_hat, partner, slot, negate=None):
    """Pre-aggregate many projections at once; leading batch axes allowed.

    ``L`` is (..., n), ``y_hat`` is (..., P, n/2) and the tables come from
    :func:`expansion_tables`; returns (..., P, n). Without ``negate`` the sign
    flip is a multiplication by 1 - 2y.
    """
    L = np.asarray(L)
    y_hat = np.asarray(y_hat)
    swapped = L[..., partner]
    y = y_hat.reshape(y_hat.shape[:-2] + (-1,))[..., slot]
    if negate is None:
        return swapped * (1 - 2 * y.astype(np.int8))
    return np.where(y.astype(bool), negate(swapped), swapped)


def pre_aggregate(L, y_hat, i: int) -> np.ndarray:
    """Length-n contribution of projection ``i`` before averaging.

    L_agg[j_a] = (1 - 2 y[j]) L[j_b] and L_agg[j_b] = (1 - 2 y[j]) L[j_a]. i = 0
    yields the dummy all-zeros vector.
    """
    L = np.asarray(L)
    n = L.shape[-1]
    y_hat = np.asarray(y_hat)
    if y_hat.shape[-1] != n // 2:
        raise ParameterError(f"decoded projection must have length {n // 2}, got {y_hat.shape[-1]}")
    _check_index(i, n)
    if i == 0:
        return np.zeros_like(L)
    partner, slot = expansion_tables(rev_reorder(i, n)[None])
    return expand(L, y_hat[..., None, :], partner, slot)[..., 0, :]


def _stack(vectors) -> np.ndarray:
    arr = np.asarray(vectors)
    if arr.ndim < 2 or arr.shape[-2] == 0:
        raise ParameterError("voting needs at least one vector")
    return arr


def vote_exact(vectors) -> np.ndarray:
    """Mean over the n-1 pre-aggregated vectors (axis -2)."""
    arr = _stack(vectors)
    return arr.sum(axis=-2) / arr.shape[-2]


def tree_reduce(arr: np.ndarray, halve) -> np.ndarray:
    """Balanced pairwise reduction over axis -2; ``halve(a, b)`` merges siblings."""
    while arr.shape[-2] > 1:
        arr = halve(arr[..., 0::2, :], arr[..., 1::2, :])
    return arr[..., 0, :]


def vote_tree(vectors) -> np.ndarray:
    """Tree-divider average: pad with one zero vector, then halve pairwise.

    With n-1 inputs this returns sum / n rather than sum / (n-1).
    """
    arr = _stack(vectors)
    count = arr.shape[-2] + 1
    if count & (count - 1):
        raise ParameterError(f"tree voting needs 2**m - 1 inputs, got {arr.shape[-2]}")
    zero = np.zeros(arr.shape[:-2] + (1, arr.shape[-1]), dtype=arr.dtype)
    return tree_reduce(np.concatenate([arr, zero], axis=-2), lambda a, b: (a + b) / 2)


def hard_decision(L) -> np.ndarray:
    """Bit 0 where L >= 0, bit 1 otherwise."""
    return (np.asarray(L) < 0).astype(np.uint8)
