"""Reed-Muller code parameters, Plotkin generator, encoding and the FHT first-order decoder.

Bit vectors and LLR vectors are plain numpy arrays. LLR sign convention:
positive means bit 0 is more likely.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from math import comb

import numpy as np


class ParameterError(ValueError):
    """Invalid code or vector parameters."""


@dataclass(frozen=True)
class RmCode:
    m: int
    r: int
    n: int = field(init=False)
    k: int = field(init=False)
    d: int = field(init=False)
    G: np.ndarray = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if not (1 <= self.r <= self.m):
            raise ParameterError(f"RM(m, r) needs 1 <= r <= m, got m={self.m}, r={self.r}")
        object.__setattr__(self, "n", 2**self.m)
        object.__setattr__(self, "k", sum(comb(self.m, i) for i in range(self.r + 1)))
        object.__setattr__(self, "d", 2 ** (self.m - self.r))
        object.__setattr__(self, "G", generator_matrix(self.m, self.r))

    @property
    def rate(self) -> float:
        return self.k / self.n


def code_params(m: int, r: int) -> RmCode:
    return RmCode(m, r)


@lru_cache(maxsize=None)
def _generator(m: int, r: int) -> np.ndarray:
    if r == 0:
        return np.ones((1, 2**m), dtype=np.uint8)
    if m == 1:
        return np.array([[1, 1], [0, 1]], dtype=np.uint8)
    top = _generator(m - 1, min(r, m - 1))
    bottom = _generator(m - 1, r - 1)
    upper = np.hstack([top, top])
    lower = np.hstack([np.zeros_like(bottom), bottom])
    return np.vstack([upper, lower])


def generator_matrix(m: int, r: int) -> np.ndarray:
    """Plotkin (u, u+v) generator of RM(m, r), shape (k, 2**m).

    G(m, r) = [[G(m-1, r), G(m-1, r)], [0, G(m-1, r-1)]] with G(1, 1) = [[1, 1], [0, 1]],
    G(m, 0) the all-ones row, and G(m-1, r) read as G(m-1, m-1) when r > m-1.
    """
    if m < 1 or not (0 <= r <= m):
        raise ParameterError(f"generator needs m >= 1 and 0 <= r <= m, got m={m}, r={r}")
    G = _generator(m, r).copy()
    G.setflags(write=False)
    return G


def encode(info, code: RmCode) -> np.ndarray:
    """Codeword info . G mod 2. Accepts a single word or a (..., k) batch."""
    info = np.asarray(info, dtype=np.int64)
    if info.shape[-1:] != (code.k,):
        raise ParameterError(f"info word must have length k={code.k}, got shape {info.shape}")
    if np.any((info != 0) & (info != 1)):
        raise ParameterError("info word must be binary")
    return ((info @ code.G.astype(np.int64)) & 1).astype(np.uint8)


def de2bi(a: int, width: int) -> np.ndarray:
    """LSB-first binary representation of ``a`` (MSB at the right)."""
    if width < 0 or not (0 <= a < 2**width):
        raise ParameterError(f"{a} does not fit in {width} bits")
    return np.array([(a >> t) & 1 for t in range(width)], dtype=np.uint8)


def _check_pow2(n: int) -> int:
    if n < 1 or n & (n - 1):
        raise ParameterError(f"length must be a power of two, got {n}")
    return n.bit_length() - 1


def fht(L) -> np.ndarray:
    """Fast Hadamard transform along the last axis.

    out[i] = sum_j (-1)^popcount(i & j) * L[j], computed with log2(n) butterfly
    stages. Integer input stays integer (exact).
    """
    x = np.array(L)
    n = x.shape[-1]
    _check_pow2(n)
    lead = x.shape[:-1]
    out = np.empty_like(x)
    h = 1
    while h < n:
        src = x.reshape(*lead, n // (2 * h), 2, h)
        dst = out.reshape(src.shape)
        np.add(src[..., 0, :], src[..., 1, :], out=dst[..., 0, :])
        np.subtract(src[..., 0, :], src[..., 1, :], out=dst[..., 1, :])
        x, out = out, x
        h *= 2
    return x


@lru_cache(maxsize=None)
def _parity_table(m: int) -> np.ndarray:
    """parity[beta, j] = popcount(beta & j) mod 2."""
    idx = np.arange(2**m)
    anded = idx[:, None] & idx[None, :]
    par = np.zeros_like(anded)
    for t in range(m):
        par ^= (anded >> t) & 1
    par = par.astype(np.uint8)
    par.setflags(write=False)
    return par


def fod_from_spectrum(omega: np.ndarray, m: int) -> np.ndarray:
    """Codeword selection from a Hadamard spectrum (argmax, sign, re-encode).

    Works on (..., 2**m) arrays; ties in |omega| go to the smallest index.
    """
    beta = np.argmax(np.abs(omega), axis=-1)
    peak = np.take_along_axis(omega, beta[..., None], axis=-1)[..., 0]
    lam = (peak < 0).astype(np.uint8)
    return _parity_table(m)[beta] ^ lam[..., None]


def fod(L, m: int) -> np.ndarray:
    """First-order (RM(m, 1)) soft decoder via the fast Hadamard transform.

    Returns the length-2**m codeword maximising the correlation with L.
    The Hadamard index selects the m linear rows (row t is the pattern
    ``j -> bit t of j``) and the sign of the peak selects the all-ones row.
    Leading batch axes are allowed.
    """
    L = np.asarray(L)
    if L.shape[-1] != 2**m:
        raise ParameterError(f"FOD of order m={m} expects length {2**m}, got {L.shape[-1]}")
    return fod_from_spectrum(fht(L), m)


def fod_info(L, m: int) -> tuple[int, int, int]:
    """(beta, lambda, alpha) chosen by the FOD for a single vector."""
    omega = fht(np.asarray(L, dtype=float))
    if omega.shape[-1] != 2**m:
        raise ParameterError(f"expected length {2**m}")
    beta = int(np.argmax(np.abs(omega)))
    lam = int(omega[beta] < 0)
    return beta, lam, 2**m * lam + beta
