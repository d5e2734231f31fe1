"""Command-line front end: ``rmipa {encode,decode,fer,pipeline}``.

Exit codes: 0 success, 1 usage error, 2 runtime error.
"""

from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path

import numpy as np

from .channel import SimConfig, fer_sweep, points_to_csv
from .decoder import ConfigError, DecoderConfig, ipa_decode, rpa_decode
from .fixed_point import QuantSpec
from .pipeline_model import PipelineConfig, report, schedule_table
from .rm_core import ParameterError, code_params, encode

EXIT_USAGE = 1
EXIT_RUNTIME = 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def parse_range(text: str) -> list[float]:
    """``start:step:stop`` (inclusive) or a comma-separated list."""
    if ":" not in text:
        return [float(v) for v in text.split(",")]
    try:
        start, step, stop = (float(v) for v in text.split(":"))
    except ValueError:
        raise UsageError(f"bad Eb/N0 range {text!r}; expected start:step:stop") from None
    if step <= 0 or stop < start:
        raise UsageError(f"bad Eb/N0 range {text!r}")
    count = int(round((stop - start) / step)) + 1
    return [round(start + i * step, 10) for i in range(count)]


def _decoder_config(args) -> DecoderConfig:
    quant = QuantSpec.parse(args.quant) if args.quant else None
    return DecoderConfig(
        n_max=args.iters,
        projection_rule=args.rule,
        voting_mode=args.voting,
        quant=quant,
        rpa_early_stop=getattr(args, "early_stop", False),
    )


def _add_decoder_flags(p):
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--rule", choices=("minsum", "exact"), default="minsum")
    p.add_argument("--voting", choices=("tree", "exact"), default="tree")
    p.add_argument("--iters", type=int, default=None, help="outer iterations (default ceil(m/2))")
    p.add_argument("--quant", default=None, help="fixed-point format qi:qf, e.g. 3:2")
    p.add_argument("--algorithm", choices=("ipa", "rpa"), default="ipa")
    p.add_argument("--early-stop", action="store_true", help="RPA early stopping")


def cmd_encode(args) -> int:
    code = code_params(args.m, args.r)
    if args.zero:
        info = np.zeros(code.k, dtype=int)
    elif args.random:
        info = np.random.default_rng(args.seed).integers(0, 2, code.k)
    else:
        try:
            info = np.array([int(b) for b in args.info.replace(" ", "").split(",") if b != ""])
        except ValueError:
            raise UsageError(f"--info must be comma-separated bits, got {args.info!r}") from None
        if info.size != code.k:
            raise UsageError(f"--info has {info.size} bits, RM({code.m},{code.r}) needs k={code.k}")
        if np.any((info != 0) & (info != 1)):
            raise UsageError("--info must contain only 0 and 1")
    print(" ".join(str(b) for b in encode(info, code)))
    return 0


def read_llr_file(path: str, n: int) -> np.ndarray:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise RuntimeError(f"cannot read LLR file: {exc}") from None
    values = []
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        try:
            values.append(float(line))
        except ValueError:
            raise RuntimeError(f"{path}:{lineno}: not a number: {line!r}") from None
    if not values or len(values) % n:
        raise RuntimeError(f"{path}: found {len(values)} LLRs, expected a multiple of n={n}")
    arr = np.array(values).reshape(-1, n)
    if not np.all(np.isfinite(arr)):
        raise RuntimeError(f"{path}: LLRs must be finite")
    return arr


def cmd_decode(args) -> int:
    cfg = _decoder_config(args)
    code = code_params(args.m, args.r)
    frames = read_llr_file(args.llr_file, code.n)
    decode = rpa_decode if args.algorithm == "rpa" else ipa_decode
    for L in frames:
        res = decode(L, code.m, code.r, cfg)
        print(" ".join(str(b) for b in res.codeword))
        print(f"fod_calls={res.fod_calls} iterations_run={res.iterations_run}")
    return 0


def cmd_fer(args) -> int:
    cfg = SimConfig(
        code=code_params(args.m, args.r),
        decoder=_decoder_config(args),
        ebn0_points_db=tuple(parse_range(args.ebn0)),
        min_frame_errors=args.min_errors,
        max_frames=args.max_frames,
        seed=args.seed,
        algorithm=args.algorithm,
        batch_size=args.batch_size,
    )
    out = Path(args.out) if args.out else None
    if out is not None:
        try:
            out.touch()
        except OSError as exc:
            raise RuntimeError(f"cannot write {out}: {exc}") from None

    def progress(pt):
        print(f"Eb/N0 {pt.ebn0_db:g} dB: frames={pt.frames} errors={pt.frame_errors} fer={pt.fer:.3e} ber={pt.ber:.3e}", flush=True)

    points = fer_sweep(cfg, workers=args.workers, progress=progress)
    text = points_to_csv(points, cfg)
    if out is None:
        sys.stdout.write(text)
    else:
        out.write_text(text)
    return 0


def cmd_pipeline(args) -> int:
    cfg = PipelineConfig(
        m=args.m, r=args.r, P=args.pus, f_mhz=args.freq, t_fod=args.t_fod, n_max=args.iters, n_dec=args.n_dec
    )
    rep = report(cfg)
    sys.stdout.write(rep.to_csv() if args.csv else rep.to_text())
    if args.schedule:
        if cfg.r != 2 or cfg.P != 1:
            raise UsageError("--schedule is available for fully-sequential (P=1) second-order decoders")
        sys.stdout.write(schedule_table(cfg.m))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="rmipa", description="Reed-Muller projection-aggregation decoding tools")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("encode", help="encode one info word")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--r", type=int, required=True)
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--info", help="comma-separated info bits")
    g.add_argument("--zero", action="store_true")
    g.add_argument("--random", action="store_true")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_encode)

    p = sub.add_parser("decode", help="decode frames from an LLR file")
    _add_decoder_flags(p)
    p.add_argument("--llr-file", required=True, help="one LLR per line, n lines per frame")
    p.set_defaults(func=cmd_decode)

    p = sub.add_parser("fer", help="Monte Carlo FER sweep over AWGN")
    _add_decoder_flags(p)
    p.add_argument("--ebn0", required=True, help="start:step:stop (inclusive) or a comma list, dB")
    p.add_argument("--min-errors", type=int, default=100)
    p.add_argument("--max-frames", type=int, default=1_000_000)
    p.add_argument("--seed", type=int, default=1)
    p.add_argument("--out", default=None, help="CSV path (default stdout)")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--batch-size", type=int, default=256)
    p.set_defaults(func=cmd_fer)

    p = sub.add_parser("pipeline", help="analytic latency/throughput report")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--pus", type=int, required=True)
    p.add_argument("--freq", type=float, required=True, help="clock in MHz")
    p.add_argument("--t-fod", type=int, default=4)
    p.add_argument("--iters", type=int, default=2)
    p.add_argument("--n-dec", type=int, default=None)
    p.add_argument("--csv", action="store_true", help="param,value CSV instead of text")
    p.add_argument("--schedule", action="store_true", help="append the stage schedule (P=1, r=2)")
    p.set_defaults(func=cmd_pipeline)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(message)s")
    try:
        return args.func(args)
    except (UsageError, ParameterError, ConfigError) as exc:
        print(f"rmipa {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except RuntimeError as exc:
        print(f"rmipa {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_RUNTIME


if __name__ == "__main__":
    sys.exit(main())
