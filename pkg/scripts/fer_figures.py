"""FER comparison experiments behind the decoder-vs-decoder acceptance checks.

Each experiment sweeps a shared Eb/N0 grid with common random numbers and
writes one CSV per decoder into --out-dir, then prints the Eb/N0 at which
each curve crosses the target FER.

    python3 scripts/fer_figures.py rule --min-errors 100
    python3 scripts/fer_figures.py rpa-vs-ipa --workers 4
"""

import argparse
import pathlib

from rmipa.channel import SimConfig, ebn0_at_fer, fer_sweep, points_to_csv
from rmipa.decoder import DecoderConfig
from rmipa.fixed_point import QuantSpec
from rmipa.rm_core import code_params

EXPERIMENTS = {
    # RM(7,2): min-sum vs exact projection rule
    "rule": dict(
        m=7, r=2, grid=(1.0, 1.25, 1.5, 1.75, 2.0, 2.25, 2.5),
        decoders={
            "exact": DecoderConfig(n_max=4, projection_rule="exact"),
            "minsum": DecoderConfig(n_max=4),
        },
    ),
    # RM(6,3): outer iteration count
    "iterations": dict(
        m=6, r=3, grid=(2.5, 2.75, 3.0, 3.25, 3.5, 3.75),
        decoders={f"n_max={k}": DecoderConfig(n_max=k) for k in (1, 2, 3)},
    ),
    # RM(7,2): fixed-point formats against floating point
    "quant": dict(
        m=7, r=2, grid=(1.5, 1.75, 2.0, 2.25, 2.5, 2.75, 3.0),
        decoders={
            "float": DecoderConfig(n_max=2),
            "Q(3:2)": DecoderConfig.hardware(),
            "Q(2:1)": DecoderConfig(n_max=2, quant=QuantSpec(2, 1)),
            "Q(4:2)": DecoderConfig(n_max=2, quant=QuantSpec(4, 2)),
        },
    ),
    # RM(6,3): IPA with tree voting against RPA with early stopping
    "rpa-vs-ipa": dict(
        m=6, r=3, grid=(2.5, 3.0, 3.5, 4.0),
        decoders={
            "ipa": DecoderConfig(n_max=2),
            "ipa-exactvote": DecoderConfig(n_max=2, voting_mode="exact"),
            "rpa": DecoderConfig(voting_mode="exact", rpa_early_stop=True),
        },
        algorithms={"rpa": "rpa"},
    ),
}


def main():
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("experiment", choices=sorted(EXPERIMENTS))
    ap.add_argument("--min-errors", type=int, default=100)
    ap.add_argument("--max-frames", type=int, default=200_000)
    ap.add_argument("--seed", type=int, default=2024)
    ap.add_argument("--workers", type=int, default=1)
    ap.add_argument("--target", type=float, default=1e-2)
    ap.add_argument("--out-dir", type=pathlib.Path, default=pathlib.Path("results"))
    args = ap.parse_args()

    exp = EXPERIMENTS[args.experiment]
    code = code_params(exp["m"], exp["r"])
    args.out_dir.mkdir(parents=True, exist_ok=True)
    for name, dec in exp["decoders"].items():
        cfg = SimConfig(
            code, dec, exp["grid"],
            min_frame_errors=args.min_errors, max_frames=args.max_frames, seed=args.seed,
            algorithm=exp.get("algorithms", {}).get(name, "ipa"),
        )
        pts = fer_sweep(cfg, workers=args.workers)
        slug = "".join(ch if ch.isalnum() else "_" for ch in name)
        (args.out_dir / f"{args.experiment}_{slug}.csv").write_text(points_to_csv(pts, cfg))
        try:
            cross = f"{ebn0_at_fer(pts, args.target):.3f} dB"
        except ValueError:
            cross = "not bracketed"
        curve = "  ".join(f"{p.ebn0_db:g}:{p.fer:.2e}" for p in pts)
        print(f"{name:>14}  FER {args.target:g} at {cross}  [{curve}]", flush=True)


if __name__ == "__main__":
    main()
