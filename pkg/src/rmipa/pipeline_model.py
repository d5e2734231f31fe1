"""Analytic latency/throughput model of the pipelined IPA decoder.

Second order: one new frame every n/P cycles, a single iteration takes
(t_proj + t_fod + t_preagg) + (n/P - 1) + m + t_io cycles, and N_max
iterations are cascaded.

Higher order: the level-r stage feeds its 2**m - 1 projections (plus one
frozen cycle that injects zeros into the tree divider) into N_Dec inner
RM(m-1, r-1) decoders. The cycle spacing d between inputs to an inner decoder
is that decoder's initiation interval, which for a second-order inner decoder
with P' = min(P, 2**(m-r+2)) units is 2**(m-1) / P'. This reading of d and of
the freeze cycle is a fit to the published RM(6,3) figures rather than a
stated rule, and every report carries that note.
"""

from __future__ import annotations

import io
from dataclasses import dataclass
from math import ceil, prod

from .rm_core import ParameterError

INTERPRETATION_NOTE = (
    "higher-order latency: d(r-1) = initiation interval of the inner decoder "
    "(2^(m-1)/min(P, 2^(m-r+2)) cycles for a second-order inner decoder), "
    "+1 freeze cycle per level above 2; fitted, not stated"
)


@dataclass(frozen=True)
class PipelineConfig:
    m: int
    r: int
    P: int
    f_mhz: float
    t_proj: int = 1
    t_fod: int = 4
    t_preagg: int = 1
    t_io: int = 2
    n_max: int = 2
    n_dec: int | None = None

    def __post_init__(self):
        if not 2 <= self.r <= self.m:
            raise ParameterError(f"pipeline model needs 2 <= r <= m, got m={self.m}, r={self.r}")
        if self.P < 1 or self.P & (self.P - 1):
            raise ParameterError(f"P must be a power of two, got {self.P}")
        if self.P > self.pu_full:
            raise ParameterError(f"P={self.P} exceeds the fully-parallel count {self.pu_full}")
        if self.t_fod not in (3, 4):
            raise ParameterError(f"t_fod must be 3 or 4, got {self.t_fod}")
        if self.n_max < 1 or self.f_mhz <= 0:
            raise ParameterError("n_max and f_mhz must be positive")
        if min(self.t_proj, self.t_preagg, self.t_io) < 0:
            raise ParameterError("stage delays must be non-negative")
        if self.r > 2 and self.n_dec is not None:
            if self.n_dec < 1 or self.n_dec * self.base_pus > self.P:
                raise ParameterError(f"n_dec={self.n_dec} needs {self.n_dec * self.base_pus} PUs, only {self.P} available")

    @property
    def n(self) -> int:
        return 2**self.m

    @property
    def base_length(self) -> int:
        """Block length of the innermost second-order decoder."""
        return 2 ** (self.m - self.r + 2)

    @property
    def base_pus(self) -> int:
        """PUs per innermost second-order decoder."""
        return min(self.P, self.base_length)

    @property
    def decoders(self) -> int:
        if self.r == 2:
            return 1
        return self.n_dec if self.n_dec is not None else max(1, self.P // self.base_length)

    @property
    def pu_full(self) -> int:
        return pu_count_full_parallel(self.m, self.r)


@dataclass(frozen=True)
class PipelineReport:
    config: PipelineConfig
    latency_cycles: int
    latency_us: float
    throughput_mbps: float
    throughput_as_printed_mbps: float
    reg_array_depth: int
    pu_count_full_parallel: int
    note: str = ""

    def rows(self) -> list[tuple[str, object]]:
        c = self.config
        return [
            ("code", f"RM({c.m},{c.r})"),
            ("P", c.P),
            ("f_mhz", c.f_mhz),
            ("t_fod", c.t_fod),
            ("n_max", c.n_max),
            ("n_dec", c.decoders),
            ("latency_cycles", self.latency_cycles),
            ("latency_us", round(self.latency_us, 6)),
            ("throughput_mbps", round(self.throughput_mbps, 6)),
            ("throughput_as_printed_mbps", round(self.throughput_as_printed_mbps, 6)),
            ("reg_array_depth", self.reg_array_depth),
            ("pu_count_full_parallel", self.pu_count_full_parallel),
            ("note", self.note),
        ]

    def to_text(self) -> str:
        rows = self.rows()
        width = max(len(k) for k, _ in rows)
        return "\n".join(f"{k:<{width}}  {v}" for k, v in rows if v != "") + "\n"

    def to_csv(self) -> str:
        buf = io.StringIO()
        buf.write("param,value\n")
        for k, v in self.rows():
            text = str(v)
            if "," in text or '"' in text:
                text = '"' + text.replace('"', '""') + '"'
            buf.write(f"{k},{text}\n")
        return buf.getvalue()


def reg_array_depth(cfg: PipelineConfig) -> int:
    """Channel-LLR register array depth: ceil(t_agg / (n/P)) + 1 with t_agg = t_proj + t_fod."""
    t_agg = cfg.t_proj + cfg.t_fod
    return ceil(t_agg * cfg.P / cfg.n) + 1


def _r2_iteration(m: int, P: int, cfg: PipelineConfig) -> int:
    return (cfg.t_proj + cfg.t_fod + cfg.t_preagg) + (2**m // P - 1) + m + cfg.t_io


def latency_r2(cfg: PipelineConfig) -> int:
    if cfg.r != 2:
        raise ParameterError("latency_r2 applies to second-order codes")
    return _r2_iteration(cfg.m, cfg.P, cfg) * cfg.n_max


def throughput_r2(cfg: PipelineConfig) -> float:
    """P * f: one n-bit frame every n/P cycles."""
    return cfg.P * cfg.f_mhz


def _level(m: int, r: int, cfg: PipelineConfig, n_dec: int) -> tuple[int, int]:
    """(single-iteration latency, initiation interval) of an RM(m, r) stage."""
    if r == 2:
        P = cfg.base_pus
        return _r2_iteration(m, P, cfg), 2**m // P
    t_inner, d = _level(m - 1, r - 1, cfg, 1)
    freeze = 1
    t = cfg.t_proj + t_inner + cfg.t_preagg + ceil(d * (2**m - 2) / n_dec) + freeze + m
    return t, d * 2**m // n_dec


def latency_general(cfg: PipelineConfig) -> int:
    if cfg.r == 2:
        return latency_r2(cfg)
    t, _ = _level(cfg.m, cfg.r, cfg, cfg.decoders)
    return t * cfg.n_max


def slots_as_printed(m: int, r: int) -> int:
    return prod(2 ** (m - i) - 1 for i in range(r - 2)) * 2 ** (m - r + 2)


def throughput_general(cfg: PipelineConfig) -> tuple[float, float]:
    """(as-printed, effective) throughput in Mbps.

    The printed form divides P * f * n by prod(2**(m-i) - 1) * 2**(m-r+2)
    slots; the effective form uses the initiation interval, where the freeze
    cycle makes each level take 2**m slots instead of 2**m - 1.
    """
    if cfg.r == 2:
        thr = throughput_r2(cfg)
        return thr, thr
    printed = cfg.P * cfg.f_mhz * cfg.n / slots_as_printed(cfg.m, cfg.r)
    _, ii = _level(cfg.m, cfg.r, cfg, cfg.decoders)
    return printed, cfg.f_mhz * cfg.n / ii


def pu_count_full_parallel(m: int, r: int) -> int:
    return slots_as_printed(m, r)


def report(cfg: PipelineConfig) -> PipelineReport:
    lat = latency_general(cfg)
    printed, effective = throughput_general(cfg)
    return PipelineReport(
        config=cfg,
        latency_cycles=lat,
        latency_us=lat / cfg.f_mhz,
        throughput_mbps=effective,
        throughput_as_printed_mbps=printed,
        reg_array_depth=reg_array_depth(cfg),
        pu_count_full_parallel=pu_count_full_parallel(cfg.m, cfg.r),
        note=INTERPRETATION_NOTE if cfg.r > 2 else "",
    )


def schedule_table(m: int, frames: int = 2) -> str:
    """Cycle-by-cycle stage occupancy of a fully-sequential second-order decoder.

    Every stage is taken as one cycle; entries read ``frame:projection``.
    Projection index 0 is the dummy zero vector.
    """
    n = 2**m
    stages = ("Projection", "FOD", "PreAggregation")
    cycles = frames * n + len(stages) - 1
    lines = ["cycle  " + "  ".join(f"{s:>14}" for s in stages)]
    for t in range(cycles):
        cells = []
        for s in range(len(stages)):
            k = t - s
            cells.append(f"{k // n}:{k % n}" if 0 <= k < frames * n else "-")
        lines.append(f"{t:>5}  " + "  ".join(f"{c:>14}" for c in cells))
    return "\n".join(lines) + "\n"
