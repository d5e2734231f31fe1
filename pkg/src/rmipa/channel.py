"""BPSK over AWGN and the Monte Carlo frame-error-rate harness.

Every frame draws its info word and noise from its own counter-based Philox
stream keyed by ``(seed, frame index)``. The noise is unit-variance and scaled
by sigma afterwards, so all Eb/N0 points and all decoders see the same frames
(common random numbers), and batching or worker count cannot change a result.
"""

from __future__ import annotations

import io
import json
import logging
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass

import numpy as np

from .decoder import DecoderConfig, ipa_decode_batch, rpa_decode
from .rm_core import ParameterError, RmCode, encode

log = logging.getLogger(__name__)

# LLR magnitude used for a noiseless (sigma = 0) channel
NOISELESS_LLR = 64.0

CSV_COLUMNS = ("ebn0_db", "frames", "frame_errors", "bit_errors", "fer", "ber")


def ebn0_to_sigma(ebn0_db: float, rate: float) -> float:
    """Noise std for unit-energy BPSK: sqrt(1 / (2 R 10^(EbN0/10)))."""
    if not 0 < rate <= 1:
        raise ParameterError(f"rate must be in (0, 1], got {rate}")
    if math.isinf(ebn0_db) and ebn0_db > 0:
        return 0.0
    return math.sqrt(1.0 / (2.0 * rate * 10.0 ** (ebn0_db / 10.0)))


def llr_from_samples(y, sigma: float) -> np.ndarray:
    if sigma == 0:
        return np.sign(y) * NOISELESS_LLR
    return 2.0 * np.asarray(y) / sigma**2


def transmit(c, sigma: float, rng: np.random.Generator) -> np.ndarray:
    """BPSK-modulate ``c`` (0 -> +1), add N(0, sigma^2) noise, return channel LLRs."""
    x = 1.0 - 2.0 * np.asarray(c, dtype=float)
    y = x + sigma * rng.standard_normal(x.shape)
    return llr_from_samples(y, sigma)


def frame_rng(seed: int, frame: int) -> np.random.Generator:
    """Independent stream for one frame: Philox keyed by the seed, counter block by frame index."""
    return np.random.Generator(np.random.Philox(key=seed & (2**128 - 1), counter=[0, 0, frame, 0]))


def draw_frames(code: RmCode, seed: int, start: int, count: int) -> tuple[np.ndarray, np.ndarray]:
    """Info words (count, k) and unit noise (count, n) for frames start..start+count-1."""
    info = np.empty((count, code.k), dtype=np.uint8)
    noise = np.empty((count, code.n))
    for f in range(count):
        rng = frame_rng(seed, start + f)
        info[f] = rng.integers(0, 2, code.k)
        noise[f] = rng.standard_normal(code.n)
    return info, noise


@dataclass(frozen=True)
class SimConfig:
    code: RmCode
    decoder: DecoderConfig
    ebn0_points_db: tuple[float, ...]
    min_frame_errors: int = 100
    max_frames: int = 100_000
    seed: int = 0
    algorithm: str = "ipa"
    batch_size: int = 256

    def __post_init__(self):
        if self.min_frame_errors < 1:
            raise ParameterError("min_frame_errors must be >= 1")
        if self.max_frames < self.min_frame_errors:
            raise ParameterError("max_frames must be >= min_frame_errors")
        if self.algorithm not in ("ipa", "rpa"):
            raise ParameterError(f"algorithm must be 'ipa' or 'rpa', got {self.algorithm!r}")
        if self.batch_size < 1:
            raise ParameterError("batch_size must be >= 1")
        if not 2 <= self.code.r <= self.code.m:
            raise ParameterError(f"projection-aggregation decoding needs r >= 2, got RM({self.code.m}, {self.code.r})")
        if self.algorithm == "rpa" and self.decoder.quant is not None:
            raise ParameterError("the RPA reference decoder is floating point only")

    def describe(self) -> dict:
        dec = asdict(self.decoder)
        if self.decoder.quant is not None:
            dec["quant"] = str(self.decoder.quant)
        return {
            "m": self.code.m,
            "r": self.code.r,
            "n": self.code.n,
            "k": self.code.k,
            "algorithm": self.algorithm,
            "decoder": dec,
            "ebn0_points_db": list(self.ebn0_points_db),
            "min_frame_errors": self.min_frame_errors,
            "max_frames": self.max_frames,
            "seed": self.seed,
        }


@dataclass(frozen=True)
class FerPoint:
    ebn0_db: float
    frames: int
    frame_errors: int
    bit_errors: int
    fer: float
    ber: float

    @classmethod
    def from_counts(cls, ebn0_db: float, frames: int, frame_errors: int, bit_errors: int, n: int) -> "FerPoint":
        if frames < 1:
            raise ParameterError("an FER point needs at least one frame")
        return cls(ebn0_db, frames, frame_errors, bit_errors, frame_errors / frames, bit_errors / (frames * n))

    @property
    def std_error(self) -> float:
        """Binomial standard error of the FER estimate."""
        p = self.fer
        return math.sqrt(p * (1 - p) / self.frames) if self.frames else math.inf


def _decode(llr: np.ndarray, cfg: SimConfig) -> np.ndarray:
    m, r = cfg.code.m, cfg.code.r
    if cfg.algorithm == "ipa":
        return ipa_decode_batch(llr, m, r, cfg.decoder)
    return np.stack([rpa_decode(row, m, r, cfg.decoder).codeword for row in llr])


def simulate_batch(cfg: SimConfig, sigma: float, start: int, count: int) -> tuple[np.ndarray, np.ndarray]:
    """Per-frame (frame_error, bit_errors) arrays for a contiguous frame range."""
    info, noise = draw_frames(cfg.code, cfg.seed, start, count)
    cw = encode(info, cfg.code)
    y = (1.0 - 2.0 * cw) + sigma * noise
    decoded = _decode(llr_from_samples(y, sigma), cfg)
    bit_err = np.count_nonzero(decoded != cw, axis=1)
    return bit_err > 0, bit_err


def _batches(cfg: SimConfig, sigma: float, pool, workers: int):
    start = 0
    if pool is None:
        while start < cfg.max_frames:
            count = min(cfg.batch_size, cfg.max_frames - start)
            yield simulate_batch(cfg, sigma, start, count)
            start += count
        return
    while start < cfg.max_frames:
        futures = []
        for _ in range(workers):
            if start >= cfg.max_frames:
                break
            count = min(cfg.batch_size, cfg.max_frames - start)
            futures.append(pool.submit(simulate_batch, cfg, sigma, start, count))
            start += count
        for fut in futures:
            yield fut.result()


def run_point(cfg: SimConfig, ebn0_db: float, pool=None, workers: int = 1) -> FerPoint:
    """Simulate frames in index order until the error target or the frame cap.

    The stopping frame is located exactly inside the last batch, so the
    counts depend only on (seed, config), never on batching or workers.
    """
    sigma = ebn0_to_sigma(ebn0_db, cfg.code.rate)
    frames = errors = bits = 0
    for frame_err, bit_err in _batches(cfg, sigma, pool, workers):
        cum = errors + np.cumsum(frame_err)
        hit = np.flatnonzero(cum >= cfg.min_frame_errors)
        take = int(hit[0]) + 1 if hit.size else len(frame_err)
        frames += take
        errors += int(frame_err[:take].sum())
        bits += int(bit_err[:take].sum())
        if errors >= cfg.min_frame_errors:
            break
    return FerPoint.from_counts(ebn0_db, frames, errors, bits, cfg.code.n)


def fer_sweep(cfg: SimConfig, workers: int = 1, progress=None) -> list[FerPoint]:
    """FER/BER at each Eb/N0 point, in sweep order."""
    pool = ProcessPoolExecutor(workers) if workers > 1 else None
    points = []
    try:
        for ebn0 in cfg.ebn0_points_db:
            pt = run_point(cfg, ebn0, pool, workers)
            log.info("Eb/N0 %.2f dB: %d/%d frame errors, FER %.3e", ebn0, pt.frame_errors, pt.frames, pt.fer)
            if progress is not None:
                progress(pt)
            points.append(pt)
    finally:
        if pool is not None:
            pool.shutdown()
    return points


def points_to_csv(points: list[FerPoint], cfg: SimConfig) -> str:
    buf = io.StringIO()
    buf.write("# " + json.dumps(cfg.describe(), sort_keys=True) + "\n")
    buf.write(",".join(CSV_COLUMNS) + "\n")
    for p in points:
        buf.write(f"{p.ebn0_db:g},{p.frames},{p.frame_errors},{p.bit_errors},{p.fer:.6e},{p.ber:.6e}\n")
    return buf.getvalue()


def read_csv(text: str) -> list[FerPoint]:
    rows = [ln for ln in text.splitlines() if ln and not ln.startswith("#")]
    if not rows or rows[0].split(",") != list(CSV_COLUMNS):
        raise ParameterError("not an FER CSV file")
    out = []
    for ln in rows[1:]:
        e, f, fe, be, fer, ber = ln.split(",")
        out.append(FerPoint(float(e), int(f), int(fe), int(be), float(fer), float(ber)))
    return out


def ebn0_at_fer(points: list[FerPoint], target: float) -> float:
    """Eb/N0 where the FER curve crosses ``target`` (log-linear interpolation)."""
    pts = sorted(points, key=lambda p: p.ebn0_db)
    for lo, hi in zip(pts, pts[1:]):
        if lo.fer >= target >= hi.fer and lo.fer > 0 and hi.fer > 0:
            if lo.fer == hi.fer:
                return lo.ebn0_db
            t = (math.log10(lo.fer) - math.log10(target)) / (math.log10(lo.fer) - math.log10(hi.fer))
            return lo.ebn0_db + t * (hi.ebn0_db - lo.ebn0_db)
    raise ValueError(f"FER curve does not bracket {target:g}")
