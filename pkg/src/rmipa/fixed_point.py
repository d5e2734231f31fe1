"""Q(qi:qf) two's-complement LLR arithmetic matching the decoder datapath.

``q_i`` counts the sign bit, so Q(3:2) is a 5-bit word with range [-4, 3.75]
and resolution 0.25. Scalar helpers work on :class:`QVal`; the ``*_array``
helpers are the vectorised forms used by the decoder.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .rm_core import ParameterError, fht


@dataclass(frozen=True)
class QuantSpec:
    q_i: int
    q_f: int
    # TwosComp on the most negative code: saturate (default) or wrap around
    wrap_negate: bool = False

    def __post_init__(self):
        if self.q_i < 1 or self.q_f < 0:
            raise ParameterError(f"invalid Q({self.q_i}:{self.q_f})")

    @property
    def width(self) -> int:
        return self.q_i + self.q_f

    @classmethod
    def parse(cls, text: str) -> "QuantSpec":
        """Parse ``"3:2"`` (or ``"Q(3:2)"``)."""
        body = text.strip().removeprefix("Q(").removesuffix(")")
        try:
            qi, qf = (int(p) for p in body.split(":"))
        except ValueError:
            raise ParameterError(f"cannot parse quantization {text!r}; expected qi:qf") from None
        return cls(qi, qf)

    def __str__(self):
        return f"Q({self.q_i}:{self.q_f})"


def raw_min(width: int) -> int:
    return -(1 << (width - 1))


def raw_max(width: int) -> int:
    return (1 << (width - 1)) - 1


@dataclass(frozen=True)
class QVal:
    raw: int
    width: int
    q_f: int = 0

    def __post_init__(self):
        if not (raw_min(self.width) <= self.raw <= raw_max(self.width)):
            raise OverflowError(f"raw {self.raw} does not fit in {self.width} bits")

    @property
    def scale(self) -> float:
        return 2.0 ** -self.q_f

    @property
    def value(self) -> float:
        return self.raw * self.scale


def saturate(raw, width: int):
    return np.clip(raw, raw_min(width), raw_max(width))


def quantize_array(x, spec: QuantSpec) -> np.ndarray:
    """Round half away from zero onto the Q grid, then saturate."""
    x = np.asarray(x, dtype=float) * (1 << spec.q_f)
    r = np.sign(x) * np.floor(np.abs(x) + 0.5)
    return saturate(r, spec.width).astype(np.int64)


def quantize(x: float, spec: QuantSpec) -> QVal:
    return QVal(int(quantize_array(x, spec)), spec.width, spec.q_f)


def dequantize(raw, spec: QuantSpec):
    return np.asarray(raw) * 2.0 ** -spec.q_f


def negate_array(raw, width: int, wrap: bool = False) -> np.ndarray:
    neg = -np.asarray(raw, dtype=np.int64)
    if wrap:
        # -min wraps back to min in two's complement
        return np.where(neg > raw_max(width), raw_min(width), neg)
    return saturate(neg, width)


def _same_format(a: QVal, b: QVal) -> None:
    if a.q_f != b.q_f:
        raise ParameterError(f"scale mismatch: q_f {a.q_f} vs {b.q_f}")
    if a.width != b.width:
        raise ParameterError(f"width mismatch: {a.width} vs {b.width}")


def sat_add(a: QVal, b: QVal, widen: bool) -> QVal:
    """Sum of two equal-format values: exact at width+1, or saturated at width."""
    _same_format(a, b)
    s = a.raw + b.raw
    if widen:
        return QVal(s, a.width + 1, a.q_f)
    return QVal(int(saturate(s, a.width)), a.width, a.q_f)


def sat_negate(a: QVal, wrap: bool = False) -> QVal:
    return QVal(int(negate_array(a.raw, a.width, wrap)), a.width, a.q_f)


def shift_div2(a: QVal) -> QVal:
    """Arithmetic shift right by one; drops the extension bit of a widened add."""
    return QVal(a.raw >> 1, max(a.width - 1, 1), a.q_f)


def fht_fixed(L: list[QVal], m: int) -> list[QVal]:
    """Integer FHT; one extra bit per butterfly stage, no saturation."""
    if len(L) != 2**m:
        raise ParameterError(f"fht_fixed expects {2**m} values, got {len(L)}")
    widths = {q.width for q in L}
    scales = {q.q_f for q in L}
    if len(widths) > 1 or len(scales) > 1:
        raise ParameterError("fht_fixed inputs must share one format")
    width, q_f = widths.pop(), scales.pop()
    out = fht(np.array([q.raw for q in L], dtype=np.int64))
    return [QVal(int(v), width + m, q_f) for v in out]


def minsum_array(a, b, width: int) -> np.ndarray:
    """Min-sum on raw codes; |min code| is clipped back into the word."""
    sign = np.where((a < 0) ^ (b < 0), -1, 1)
    return saturate(sign * np.minimum(np.abs(a), np.abs(b)), width)


def tree_halve_array(a, b) -> np.ndarray:
    """One tree-divider node: widened add followed by a one-bit arithmetic shift."""
    return (a + b) >> 1
