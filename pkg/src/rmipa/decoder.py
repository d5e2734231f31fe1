"""Soft-decision projection-aggregation decoders for RM(m, r) codes.

``ipa_decode`` iterates only at the top level and decodes every projection
with a single inner pass; ``rpa_decode`` is the recursive reference that
iterates (with optional early stopping) at every level. Both count calls to
the first-order decoder.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import ceil, prod

import numpy as np

from . import fixed_point as fx
from .aggregation import hard_decision, expand, expansion_tables, rev_reorder, tree_reduce, vote_exact, vote_tree
from .fixed_point import QuantSpec
from .projection import all_pairs, exact_rule, minsum_rule
from .rm_core import ParameterError, fht, fod_from_spectrum

RULES = ("minsum", "exact")
VOTING = ("tree", "exact")


class ConfigError(ValueError):
    """Unsupported decoder configuration."""


@dataclass(frozen=True)
class DecoderConfig:
    """Decoder knobs.

    ``n_max=None`` means ceil(m/2) iterations, evaluated per recursion level
    for RPA. ``quant=None`` selects floating point; a :class:`QuantSpec`
    selects the fixed-point datapath (min-sum only).
    """

    n_max: int | None = None
    projection_rule: str = "minsum"
    voting_mode: str = "tree"
    quant: QuantSpec | None = None
    rpa_early_stop: bool = False

    def __post_init__(self):
        if self.n_max is not None and self.n_max < 1:
            raise ConfigError(f"n_max must be >= 1, got {self.n_max}")
        if self.projection_rule not in RULES:
            raise ConfigError(f"projection_rule must be one of {RULES}, got {self.projection_rule!r}")
        if self.voting_mode not in VOTING:
            raise ConfigError(f"voting_mode must be one of {VOTING}, got {self.voting_mode!r}")
        if self.quant is not None and self.projection_rule == "exact":
            raise ConfigError("fixed-point arithmetic supports the min-sum projection rule only")

    def iterations(self, m: int) -> int:
        return self.n_max if self.n_max is not None else ceil(m / 2)

    @classmethod
    def hardware(cls) -> "DecoderConfig":
        """Configuration of the synthesized decoder: 2 iterations, min-sum, tree divider, Q(3:2)."""
        return cls(n_max=2, projection_rule="minsum", voting_mode="tree", quant=QuantSpec(3, 2))


@dataclass
class DecodeResult:
    codeword: np.ndarray
    fod_calls: int
    iterations_run: int


@lru_cache(maxsize=None)
def _expansion(n: int) -> tuple[np.ndarray, np.ndarray]:
    return expansion_tables(np.stack([rev_reorder(i, n) for i in range(1, n)]))


class _FloatPath:
    def __init__(self, cfg: DecoderConfig):
        self.rule = exact_rule if cfg.projection_rule == "exact" else minsum_rule
        self.tree = cfg.voting_mode == "tree"

    def enter(self, L):
        return np.asarray(L, dtype=float)

    def project(self, a, b):
        return self.rule(a, b)

    def fod(self, proj, m):
        return fod_from_spectrum(fht(proj), m)

    negate = None

    def vote(self, agg):
        return vote_tree(agg) if self.tree else vote_exact(agg)


class _FixedPath:
    def __init__(self, cfg: DecoderConfig):
        self.spec = cfg.quant
        self.width = cfg.quant.width
        self.tree = cfg.voting_mode == "tree"

    def enter(self, L):
        L = np.asarray(L)
        if np.issubdtype(L.dtype, np.integer):
            return L.astype(np.int64)
        return fx.quantize_array(L, self.spec)

    def project(self, a, b):
        return fx.minsum_array(a, b, self.width)

    def fod(self, proj, m):
        # integer butterflies grow one bit per stage and never saturate
        return fod_from_spectrum(fht(proj), m)

    def negate(self, v):
        return fx.negate_array(v, self.width, self.spec.wrap_negate)

    def vote(self, agg):
        count = agg.shape[-2]
        if self.tree:
            zero = np.zeros(agg.shape[:-2] + (1, agg.shape[-1]), dtype=agg.dtype)
            return tree_reduce(np.concatenate([agg, zero], axis=-2), fx.tree_halve_array)
        return np.floor_divide(agg.sum(axis=-2), count)


def _datapath(cfg: DecoderConfig):
    return _FixedPath(cfg) if cfg.quant is not None else _FloatPath(cfg)


def _check(L: np.ndarray, m: int, r: int) -> None:
    if not (2 <= r <= m):
        raise ParameterError(f"projection-aggregation decoding needs 2 <= r <= m, got m={m}, r={r}")
    if L.shape[-1] != 2**m:
        raise ParameterError(f"expected {2**m} LLRs per frame for m={m}, got {L.shape[-1]}")


class _Counter:
    def __init__(self):
        self.vectors = 0


def _ipa_iteration(L, m: int, r: int, path, counter: _Counter):
    n = 2**m
    pairs = all_pairs(n)
    proj = path.project(L[..., pairs[..., 0]], L[..., pairs[..., 1]])
    if r == 2:
        y = path.fod(proj, m - 1)
        counter.vectors += prod(proj.shape[:-1])
    else:
        y = hard_decision(_ipa_iteration(proj, m - 1, r - 1, path, counter))
    agg = expand(L, y, *_expansion(n), negate=path.negate)
    return path.vote(agg)


def _ipa_llr(L, m, r, cfg, counter):
    path = _datapath(cfg)
    L = path.enter(L)
    for _ in range(cfg.iterations(m)):
        L = _ipa_iteration(L, m, r, path, counter)
    return L


def ipa_decode_batch(L, m: int, r: int, cfg: DecoderConfig) -> np.ndarray:
    """IPA-decode a (frames, n) array of LLRs; returns (frames, n) codeword bits."""
    L = np.asarray(L)
    _check(L, m, r)
    return hard_decision(_ipa_llr(L, m, r, cfg, _Counter()))


def ipa_decode(L, m: int, r: int, cfg: DecoderConfig) -> DecodeResult:
    """Iterative projection-aggregation decoding of one frame.

    Every outer iteration projects onto all 2**m - 1 one-dimensional
    subspaces, decodes each projection (FOD at r = 2, otherwise one inner IPA
    pass without iterations), pre-aggregates and votes. No early stopping.
    """
    L = np.asarray(L)
    if L.ndim != 1:
        raise ParameterError("ipa_decode takes a single frame; use ipa_decode_batch for batches")
    _check(L, m, r)
    counter = _Counter()
    out = _ipa_llr(L, m, r, cfg, counter)
    return DecodeResult(hard_decision(out), counter.vectors, cfg.iterations(m))


def ipa_decode_order2(L, m: int, cfg: DecoderConfig) -> DecodeResult:
    return ipa_decode(L, m, 2, cfg)


def _rpa(L, m: int, r: int, cfg: DecoderConfig, counter: _Counter) -> tuple[np.ndarray, int]:
    n = 2**m
    rule = exact_rule if cfg.projection_rule == "exact" else minsum_rule
    pairs = all_pairs(n)
    partner, slot = _expansion(n)
    iters = 0
    for _ in range(cfg.iterations(m)):
        y_in = hard_decision(L)
        proj = rule(L[pairs[..., 0]], L[pairs[..., 1]])
        if r == 2:
            y = fod_from_spectrum(fht(proj), m - 1)
            counter.vectors += n - 1
        else:
            y = np.stack([_rpa(p, m - 1, r - 1, cfg, counter)[0] for p in proj])
        L = vote_exact(expand(L, y, partner, slot))
        iters += 1
        if cfg.rpa_early_stop and np.array_equal(hard_decision(L), y_in):
            break
    return hard_decision(L), iters


def rpa_decode(L, m: int, r: int, cfg: DecoderConfig) -> DecodeResult:
    """Recursive projection-aggregation reference decoder (floating point, exact voting).

    Each recursion level runs up to ``cfg.iterations(level m)`` iterations and,
    with ``rpa_early_stop``, stops once the hard decision of the aggregated
    output equals the hard decision of that iteration's input.
    """
    if cfg.quant is not None:
        raise ConfigError("the RPA reference decoder is floating point only")
    L = np.asarray(L, dtype=float)
    if L.ndim != 1:
        raise ParameterError("rpa_decode takes a single frame")
    _check(L, m, r)
    counter = _Counter()
    codeword, iters = _rpa(L, m, r, cfg, counter)
    return DecodeResult(codeword, counter.vectors, iters)


def theta_as_printed(m: int, r: int, n_max: int) -> int:
    """Closed-form worst-case FOD count exactly as printed:
    n_max**(r-1) * prod_{i=1}^{r-1} (2**(m-i-1) - 1)."""
    return n_max ** (r - 1) * prod(2 ** (m - i - 1) - 1 for i in range(1, r))


@dataclass(frozen=True)
class ThetaReport:
    as_printed: int
    ipa_count: int
    rpa_worst_count: int


def theta_bound(m: int, r: int, n_max: int) -> ThetaReport:
    """FOD-call counts: printed closed form next to instrumented dry runs.

    The dry runs decode a random frame with early stopping disabled, so RPA
    runs its worst case of ``n_max`` iterations at every level.
    """
    if n_max < 1:
        raise ConfigError("n_max must be >= 1")
    cfg = DecoderConfig(n_max=n_max, voting_mode="exact")
    L = np.random.default_rng(0).standard_normal(2**m)
    ipa = ipa_decode(L, m, r, cfg).fod_calls
    rpa = rpa_decode(L, m, r, cfg).fod_calls
    return ThetaReport(theta_as_printed(m, r, n_max), ipa, rpa)
