"""Command-line interface.

Subcommands: gen (synthetic dataset), store (build and persist a memory),
recall (query a dataset or persisted memory), sweep (PSNR versus stored
count), mixed (three-set selectivity experiment).

Exit codes: 0 success, 1 usage error, 2 data error, 3 capacity error.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .corruption import CorruptionSpec
from .encoding import Mode
from .errors import HolomemError, MatrixTooLarge
from .memory import DEFAULT_BYTE_BUDGET, DENSE, FACTORED, save_memory
from .pgm import write_pgm
from .runner import RunConfig, build_memory, load_dataset, run_mixed_set, run_recall, run_sweep, write_metadata
from .synth import generate_set_family


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def parse_int_list(text: str) -> list[int]:
    """Comma-separated integers; "a-b" expands to the inclusive range."""
    values = []
    for part in text.split(","):
        part = part.strip()
        if not part:
            continue
        lo, sep, hi = part.partition("-")
        if sep and lo and hi:
            values.extend(range(int(lo), int(hi) + 1))
        else:
            values.append(int(part))
    if not values:
        raise ValueError(f"empty integer list {text!r}")
    return values


def _add_common(sub):
    sub.add_argument("--mode", default="amplitude", choices=["amplitude", "phase"],
                     help="wave encoding (default amplitude)")
    sub.add_argument("--backend", default=FACTORED, choices=[DENSE, FACTORED],
                     help="recall backend (default factored)")
    sub.add_argument("--budget", type=int, default=DEFAULT_BYTE_BUDGET,
                     help="dense matrix byte budget (default 2 GiB)")


def build_parser() -> _Parser:
    parser = _Parser(prog="holomem",
                     description="Holographic associative memory for grayscale image recall")
    subs = parser.add_subparsers(dest="command", required=True)

    gen = subs.add_parser("gen", help="generate a synthetic PGM dataset")
    gen.add_argument("--out", required=True, help="output directory")
    gen.add_argument("--count", type=int, default=10, help="images per set (default 10)")
    gen.add_argument("--width", type=int, default=64)
    gen.add_argument("--height", type=int, default=64)
    gen.add_argument("--seed", type=int, default=0)
    gen.add_argument("--sets", type=int, default=1,
                     help="number of set subdirectories (default 1: images at top level)")
    gen.add_argument("--lo", type=int, default=0, help="minimum gray level (default 0)")
    gen.add_argument("--hi", type=int, default=255, help="maximum gray level (default 255)")
    gen.add_argument("--orthogonalize", action="store_true",
                     help="Gram-Schmidt orthonormalize the patterns (jointly across sets)")
    gen.add_argument("--family-bias", type=float, default=0.0,
                     help="blend weight of a shared base image, for mutually similar sets")
    gen.set_defaults(func=_cmd_gen)

    st = subs.add_parser("store", help="build a memory from a dataset and persist it")
    st.add_argument("--dataset", required=True)
    st.add_argument("--out", required=True, help="memory file to write")
    _add_common(st)
    st.set_defaults(func=_cmd_store)

    rc = subs.add_parser("recall", help="recall a query against a dataset or memory file")
    rc.add_argument("--dataset", help="dataset directory to store on the fly")
    rc.add_argument("--memory", help="persisted memory file (alternative to --dataset)")
    rc.add_argument("--query", required=True, help="query PGM")
    rc.add_argument("--truth", help="uncorrupted original for PSNR")
    rc.add_argument("--corrupt", default="none",
                    help='corruption spec, e.g. "occlude:0.25:seed=42" or "sp:0.6:seed=7"')
    rc.add_argument("--clean", action="store_true", help="drop cross-talk (winner-take-all)")
    rc.add_argument("--iters", type=int, default=1, help="recall passes (default 1)")
    rc.add_argument("--out", required=True, help="output directory")
    _add_common(rc)
    rc.set_defaults(func=_cmd_recall)

    sw = subs.add_parser("sweep", help="PSNR/accuracy versus number of stored images")
    sw.add_argument("--dataset", required=True)
    sw.add_argument("--p-values", required=True, help='stored counts, e.g. "1-10" or "1,2,5"')
    sw.add_argument("--seeds", default="0", help='corruption seeds, e.g. "0-9" (default "0")')
    sw.add_argument("--corrupt", default="none", help="corruption spec (seed part ignored)")
    sw.add_argument("--query-index", type=int, default=0,
                    help="dataset image whose corrupted copy is the query (default 0)")
    sw.add_argument("--clean", action="store_true")
    sw.add_argument("--iters", type=int, default=1)
    sw.add_argument("--out", required=True, help="output directory")
    _add_common(sw)
    sw.set_defaults(func=_cmd_sweep)

    mx = subs.add_parser("mixed", help="store several dissimilar sets and test selectivity")
    mx.add_argument("--set-dirs", nargs=3, required=True, metavar="DIR")
    mx.add_argument("--per-set", type=int, default=10)
    mx.add_argument("--seeds", default="0")
    mx.add_argument("--corrupt", default="none")
    mx.add_argument("--clean", action="store_true")
    mx.add_argument("--iters", type=int, default=1)
    mx.add_argument("--out", required=True)
    _add_common(mx)
    mx.set_defaults(func=_cmd_mixed)

    return parser


def _cmd_gen(args) -> int:
    out = Path(args.out)
    families = generate_set_family(args.sets, args.count, args.width, args.height,
                                   args.seed, lo=args.lo, hi=args.hi,
                                   orthogonalize=args.orthogonalize,
                                   family_bias=args.family_bias)
    for s_idx, images in enumerate(families):
        target = out if args.sets == 1 else out / f"set{s_idx}"
        target.mkdir(parents=True, exist_ok=True)
        for i, img in enumerate(images):
            write_pgm(img, target / f"img{i:03d}.pgm")
    print(f"wrote {args.sets * args.count} images under {out}")
    return 0


def _cmd_store(args) -> int:
    images = load_dataset(args.dataset)
    m = build_memory(images, Mode.parse(args.mode), args.backend, args.budget)
    save_memory(m, args.out)
    write_metadata(str(args.out) + ".meta", [
        ("dataset", args.dataset),
        ("mode", m.mode),
        ("backend", m.backend),
        ("n", m.n),
        ("p", m.p),
        ("width", images[0].width),
        ("height", images[0].height),
        ("beta", repr(m.params.phase_scale)),
    ])
    print(f"stored {m.p} states of dimension {m.n} ({m.backend}) in {args.out}")
    return 0


def _config(args, **extra) -> RunConfig:
    return RunConfig(
        mode=Mode.parse(args.mode),
        backend=args.backend,
        byte_budget=args.budget,
        corruption=CorruptionSpec.parse(args.corrupt) if hasattr(args, "corrupt") else None,
        clean=getattr(args, "clean", False),
        iters=getattr(args, "iters", 1),
        output_dir=Path(args.out),
        **extra,
    )


def _cmd_recall(args) -> int:
    if args.dataset is None and args.memory is None:
        raise UsageError("recall needs --dataset or --memory")
    cfg = _config(
        args,
        dataset_dir=Path(args.dataset) if args.dataset else None,
        memory_path=Path(args.memory) if args.memory else None,
    )
    run_recall(cfg, args.query, args.truth)
    return 0


def _cmd_sweep(args) -> int:
    cfg = _config(
        args,
        dataset_dir=Path(args.dataset),
        p_values=parse_int_list(args.p_values),
        seeds=parse_int_list(args.seeds),
        query_index=args.query_index,
    )
    run_sweep(cfg)
    return 0


def _cmd_mixed(args) -> int:
    cfg = _config(args, seeds=parse_int_list(args.seeds))
    run_mixed_set(cfg, [Path(d) for d in args.set_dirs], per_set=args.per_set)
    return 0


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 1
    except ValueError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 1
    except MatrixTooLarge as exc:
        print(f"capacity error: {exc}", file=sys.stderr)
        return 3
    except (HolomemError, OSError) as exc:
        print(f"data error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
