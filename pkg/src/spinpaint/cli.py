"""Command-line front end.

Commands:

    sparsify       write the sparse image and its .spin side information
    corrupt        apply a generated or loaded loss mask, write image + mask
    inpaint        recover with transmitted side information (.spin)
    inpaint-blind  recover without side information (pattern estimated)
    tv             smoothing-quotient reconstruction only
    psnr           print PSNR between two images (2 fraction digits, or inf)
    pattern-diff   print miss-detection and false-alarm percentages
    bench          run a (kind x fraction) grid and emit a CSV

Identical command lines (including seeds) produce byte-identical output
files. On any failure the exit status is nonzero, a diagnostic goes to
standard error, and partially written outputs are removed.
"""

from __future__ import annotations

import argparse
import csv
import math
import sys
from dataclasses import dataclass
from pathlib import Path

from .blindpipe import BlindConfig, inpaint_blind
from .imagecore import apply_mask, read_mask, read_pgm, write_mask, write_pgm
from .masks import BlockSpec, block_mask, combine_masks, stroke_mask
from .metrics import pattern_error, psnr
from .pocs import RecoveryConfig, inpaint_with_side_info
from .sparsity import load_pattern, save_pattern, sparsify
from .transforms import TransformKind

import numpy as np

__all__ = ["CommandPlan", "parse_args", "run", "main"]

BENCH_CSV_HEADER = ["image", "kind", "fraction", "iterations",
                    "psnr_vs_original", "psnr_vs_sparse", "seed"]


@dataclass
class CommandPlan:
    """One validated command with its parsed parameters."""

    command: str
    params: dict


def _kind(text: str) -> TransformKind:
    try:
        return TransformKind.from_name(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _kind_list(text: str) -> list[TransformKind]:
    return [_kind(part) for part in text.split(",") if part]


def _fraction(text: str) -> float:
    try:
        value = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None
    if not 0.0 <= value <= 1.0:
        raise argparse.ArgumentTypeError(f"fraction {text} outside [0, 1]")
    return value


def _fraction_list(text: str) -> list[float]:
    return [_fraction(part) for part in text.split(",") if part]


def _recovery_iterations(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if value < 1:
        raise argparse.ArgumentTypeError("iterations must be >= 1 for a recovery run")
    return value


def _nonnegative_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if value < 0:
        raise argparse.ArgumentTypeError(f"must be >= 0, got {value}")
    return value


def _positive_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1, got {value}")
    return value


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="spinpaint",
        description="Grayscale inpainting via transform-domain sparsity and "
                    "alternating projections.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("sparsify", help="write sparse image and .spin side information")
    p.add_argument("input", help="source PGM")
    p.add_argument("-o", "--output", required=True, help="sparse image PGM")
    p.add_argument("--pattern", help="side-information path (default: output with .spin suffix)")
    p.add_argument("--kind", type=_kind, default=TransformKind.DCT, help="dct or fft (default dct)")
    p.add_argument("--fraction", type=_fraction, default=0.95,
                   help="sparsity fraction in [0,1] (default 0.95)")

    p = sub.add_parser("corrupt", help="apply a loss mask, write corrupted image and mask")
    p.add_argument("input", help="source PGM")
    p.add_argument("-o", "--output", required=True, help="corrupted image PGM")
    p.add_argument("--mask-out", help="mask PGM path (default: output with .mask.pgm suffix)")
    p.add_argument("--mask", help="load an existing mask PGM (0 = missing)")
    p.add_argument("--blocks", type=_nonnegative_int, default=0, help="number of square block losses")
    p.add_argument("--block-size", type=_positive_int, default=16, help="block side length (default 16)")
    p.add_argument("--strokes", type=_nonnegative_int, default=0, help="number of stroke losses")
    p.add_argument("--stroke-width", type=_positive_int, default=2, help="stroke width (default 2)")
    p.add_argument("--seed", type=int, default=1,
                   help="mask seed; blocks use it as-is, strokes use seed+1 (default 1)")

    p = sub.add_parser("inpaint", help="recover using transmitted side information")
    p.add_argument("input", help="corrupted PGM (missing pixels zero)")
    p.add_argument("mask", help="mask PGM (0 = missing)")
    p.add_argument("sideinfo", help=".spin side-information file")
    p.add_argument("-o", "--output", required=True, help="recovered image PGM")
    p.add_argument("--iterations", type=_recovery_iterations, default=500,
                   help="projection rounds (default 500)")
    p.add_argument("--early-stop", action="store_true",
                   help="stop once the per-iteration change drops below 1e-6")

    p = sub.add_parser("inpaint-blind", help="recover without side information")
    p.add_argument("input", help="corrupted PGM (missing pixels zero)")
    p.add_argument("mask", help="mask PGM (0 = missing)")
    p.add_argument("-o", "--output", required=True, help="recovered image PGM")
    p.add_argument("--kind", type=_kind, default=TransformKind.DCT, help="dct or fft (default dct)")
    p.add_argument("--fraction", type=_fraction, default=0.95,
                   help="assumed sparsity fraction (default 0.95)")
    p.add_argument("--iterations", type=_recovery_iterations, default=500,
                   help="projection rounds (default 500)")

    p = sub.add_parser("tv", help="smoothing-quotient reconstruction only")
    p.add_argument("input", help="corrupted PGM (missing pixels zero)")
    p.add_argument("mask", help="mask PGM (0 = missing)")
    p.add_argument("-o", "--output", required=True, help="reconstructed image PGM")

    p = sub.add_parser("psnr", help="print PSNR between two images")
    p.add_argument("a", help="first PGM")
    p.add_argument("b", help="second PGM")

    p = sub.add_parser("pattern-diff", help="print miss-detection and false-alarm percentages")
    p.add_argument("estimated", help="estimated .spin")
    p.add_argument("reference", help="reference .spin")

    p = sub.add_parser("bench", help="run a (kind x fraction) benchmark grid, emit CSV")
    p.add_argument("--grid", required=True, help="source PGM to benchmark")
    p.add_argument("--fractions", type=_fraction_list, required=True,
                   help="comma-separated sparsity fractions, e.g. 0.90,0.95")
    p.add_argument("--kinds", type=_kind_list, required=True,
                   help="comma-separated transform kinds, e.g. dct,fft")
    p.add_argument("--iterations", type=_recovery_iterations, default=500,
                   help="projection rounds per cell (default 500)")
    p.add_argument("--blocks", type=_nonnegative_int, default=10,
                   help="block losses per cell (default 10)")
    p.add_argument("--block-size", type=_positive_int, default=16, help="block side (default 16)")
    p.add_argument("--seed", type=int, default=1, help="mask seed (default 1)")
    p.add_argument("-o", "--output", help="CSV path (default: standard output)")

    return parser


def parse_args(argv: list[str]) -> CommandPlan:
    """Parse and validate; exits with a usage error for bad or unknown flags."""
    ns = _build_parser().parse_args(argv)
    params = vars(ns)
    command = params.pop("command")
    if command == "sparsify" and params["pattern"] is None:
        params["pattern"] = str(Path(params["output"]).with_suffix(".spin"))
    if command == "corrupt" and params["mask_out"] is None:
        out = Path(params["output"])
        params["mask_out"] = str(out.with_name(out.stem + ".mask.pgm"))
    if command == "bench":
        params["cells"] = [(k, f) for k in params["kinds"] for f in params["fractions"]]
    return CommandPlan(command=command, params=params)


def _track(created: list, path) -> str:
    created.append(Path(path))
    return str(path)


def _fmt_psnr(value: float) -> str:
    return "inf" if math.isinf(value) else f"{value:.2f}"


def _cmd_sparsify(p: dict, created: list) -> None:
    image = read_pgm(p["input"])
    sparse, pattern = sparsify(image, p["kind"], p["fraction"])
    write_pgm(sparse, _track(created, p["output"]))
    save_pattern(pattern, _track(created, p["pattern"]))


def _build_loss_mask(p: dict, rows: int, cols: int) -> np.ndarray:
    mask = np.ones((rows, cols), dtype=np.uint8)
    if p["mask"]:
        loaded = read_mask(p["mask"])
        if loaded.shape != (rows, cols):
            raise ValueError(f"mask shape {loaded.shape} != image shape {(rows, cols)}")
        mask = combine_masks(mask, loaded)
    if p["blocks"] > 0:
        mask = combine_masks(mask, block_mask(rows, cols,
                                              BlockSpec(p["block_size"], p["blocks"], p["seed"])))
    if p["strokes"] > 0:
        mask = combine_masks(mask, stroke_mask(rows, cols, p["strokes"],
                                               p["stroke_width"], p["seed"] + 1))
    return mask


def _cmd_corrupt(p: dict, created: list) -> None:
    image = read_pgm(p["input"])
    mask = _build_loss_mask(p, *image.shape)
    write_pgm(apply_mask(image, mask), _track(created, p["output"]))
    write_mask(mask, _track(created, p["mask_out"]))


def _cmd_inpaint(p: dict, created: list) -> None:
    image = read_pgm(p["input"])
    mask = read_mask(p["mask"])
    pattern = load_pattern(p["sideinfo"])
    corrupted = apply_mask(image, mask)
    config = RecoveryConfig(pattern.kind, p["iterations"], early_stop=p["early_stop"])
    report = inpaint_with_side_info(corrupted, mask, pattern, config)
    write_pgm(report.output, _track(created, p["output"]))


def _cmd_inpaint_blind(p: dict, created: list) -> None:
    image = read_pgm(p["input"])
    mask = read_mask(p["mask"])
    corrupted = apply_mask(image, mask)
    report = inpaint_blind(corrupted, mask, BlindConfig(p["kind"], p["fraction"], p["iterations"]))
    write_pgm(report.output, _track(created, p["output"]))


def _cmd_tv(p: dict, created: list) -> None:
    image = read_pgm(p["input"])
    mask = read_mask(p["mask"])
    from .tvrecon import tv_reconstruct

    write_pgm(tv_reconstruct(apply_mask(image, mask), mask), _track(created, p["output"]))


def _cmd_psnr(p: dict, created: list) -> None:
    print(_fmt_psnr(psnr(read_pgm(p["a"]), read_pgm(p["b"]))))


def _cmd_pattern_diff(p: dict, created: list) -> None:
    err = pattern_error(load_pattern(p["estimated"]), load_pattern(p["reference"]))
    print(f"{err.miss_detection_pct:.2f} {err.false_alarm_pct:.2f}")


def _cmd_bench(p: dict, created: list) -> None:
    image = read_pgm(p["grid"])
    rows, cols = image.shape
    mask = block_mask(rows, cols, BlockSpec(p["block_size"], p["blocks"], p["seed"]))
    table = [BENCH_CSV_HEADER]
    for kind, fraction in p["cells"]:
        sparse, pattern = sparsify(image, kind, fraction)
        corrupted = apply_mask(sparse, mask)
        report = inpaint_with_side_info(corrupted, mask, pattern,
                                        RecoveryConfig(kind, p["iterations"]))
        table.append([
            p["grid"],
            kind.name.lower(),
            f"{fraction:g}",
            str(p["iterations"]),
            _fmt_psnr(psnr(report.output, image)),
            _fmt_psnr(psnr(report.output, sparse)),
            str(p["seed"]),
        ])
    if p["output"]:
        with open(_track(created, p["output"]), "w", newline="") as fh:
            csv.writer(fh).writerows(table)
    else:
        csv.writer(sys.stdout).writerows(table)


_COMMANDS = {
    "sparsify": _cmd_sparsify,
    "corrupt": _cmd_corrupt,
    "inpaint": _cmd_inpaint,
    "inpaint-blind": _cmd_inpaint_blind,
    "tv": _cmd_tv,
    "psnr": _cmd_psnr,
    "pattern-diff": _cmd_pattern_diff,
    "bench": _cmd_bench,
}


def run(plan: CommandPlan) -> int:
    """Execute a plan; returns the process exit status.

    On failure, outputs this run already created (possibly partially) are
    removed before returning.
    """
    created: list[Path] = []
    try:
        _COMMANDS[plan.command](plan.params, created)
    except (ValueError, OSError, RuntimeError) as exc:
        for path in created:
            try:
                path.unlink(missing_ok=True)
            except OSError:
                pass
        print(f"spinpaint: error: {exc}", file=sys.stderr)
        return 1
    return 0


def main(argv: list[str] | None = None) -> int:
    plan = parse_args(sys.argv[1:] if argv is None else argv)
    return run(plan)


if __name__ == "__main__":
    sys.exit(main())
