"""Soft-decision iterative projection-aggregation decoding of Reed-Muller codes."""

from .aggregation import hard_decision, pre_aggregate, rev_reorder, vote_exact, vote_tree
from .channel import FerPoint, SimConfig, ebn0_to_sigma, fer_sweep, transmit
from .decoder import (
    ConfigError,
    DecodeResult,
    DecoderConfig,
    ipa_decode,
    ipa_decode_batch,
    ipa_decode_order2,
    rpa_decode,
    theta_bound,
)
from .fixed_point import QuantSpec, QVal
from .pipeline_model import PipelineConfig, PipelineReport, report
from .projection import project_exact, project_minsum, projection_pairs, reorder
from .rm_core import ParameterError, RmCode, code_params, de2bi, encode, fht, fod, generator_matrix

__version__ = "0.1.0"
