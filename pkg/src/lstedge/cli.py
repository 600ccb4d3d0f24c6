"""Command line entry point.

Exit codes: 0 success, 1 runtime or I/O failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import csv
import io
import logging
import sys
from pathlib import Path

from .binarize import binarize
from .errors import LstEdgeError
from .imgcore import format_real, read_pgm, write_csv_matrix, write_pgm
from .methods import METHODS, respond
from .recognize import (
    RESULTS_HEADER,
    accuracy_experiment,
    ingest_dataset,
    make_dataset,
    roc_auc,
    write_dataset,
)
from .sketchop import LstConfig
from .synthbench import SHAPES, SyntheticSpec, run_bench

log = logging.getLogger("lstedge")


def _method(value):
    if value not in METHODS:
        raise argparse.ArgumentTypeError(
            f"invalid method {value!r} (choose from {', '.join(METHODS)})")
    return value


def _list_of(conv, name):
    def parse(text):
        items = [t.strip() for t in text.split(",") if t.strip()]
        if not items:
            raise argparse.ArgumentTypeError(f"empty {name} list")
        return [conv(t) for t in items]
    parse.__name__ = name
    return parse


def _percent(text):
    try:
        v = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None
    if not 0 <= v <= 100:
        raise argparse.ArgumentTypeError(f"noise level {v} outside [0, 100]")
    return v


def _fraction(text):
    try:
        v = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None
    if not 0 < v < 1:
        raise argparse.ArgumentTypeError(f"fraction {v} outside (0, 1)")
    return v


def _shape(text):
    if text not in SHAPES:
        raise argparse.ArgumentTypeError(f"invalid shape {text!r} (choose from {', '.join(SHAPES)})")
    return text


def _positive_int(text):
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if v < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {v}")
    return v


def _positive_float(text):
    try:
        v = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None
    if not v > 0:
        raise argparse.ArgumentTypeError(f"expected a positive number, got {v}")
    return v


def _seed(text):
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if not 0 <= v < 2**64:
        raise argparse.ArgumentTypeError("seed must be an unsigned 64-bit integer")
    return v


def _add_lst_flags(p):
    p.add_argument("--k", type=_positive_float, default=1.0, help="brightness scaling constant")
    p.add_argument("--floor", type=_positive_float, default=1.0,
                   help="intensity floor applied before log10")


def build_parser():
    fmt = argparse.ArgumentDefaultsHelpFormatter
    parser = argparse.ArgumentParser(prog="lstedge", description=__doc__.splitlines()[0],
                                     formatter_class=fmt)
    parser.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("detect", help="run one edge operator on a PGM image", formatter_class=fmt)
    p.add_argument("--input", required=True, help="input PGM (P2 or P5)")
    p.add_argument("--method", type=_method, default="lst", help=f"one of {', '.join(METHODS)}")
    _add_lst_flags(p)
    p.add_argument("--output", required=True, help="normalized response map PGM")
    p.add_argument("--binarize", metavar="PATH", help="also write the Otsu binary map here")
    p.add_argument("--raw-csv", metavar="PATH", help="also write raw float responses as CSV")
    p.add_argument("--zc-threshold", type=float, default=0.0,
                   help="strength threshold for the laplacian method")
    p.set_defaults(func=cmd_detect)

    p = sub.add_parser("synth-bench", help="noise robustness benchmark on synthetic shapes",
                       formatter_class=fmt)
    p.add_argument("--shapes", type=_list_of(_shape, "shapes"), default=list(SHAPES),
                   help="comma-separated shapes")
    p.add_argument("--noise", type=_list_of(_percent, "noise"), default=[0.0, 5.0, 10.0, 20.0],
                   help="comma-separated noise standard deviations, %% of peak intensity")
    p.add_argument("--methods", type=_list_of(_method, "methods"), default=list(METHODS),
                   help="comma-separated methods")
    p.add_argument("--seeds-per-cell", type=_positive_int, default=50)
    p.add_argument("--seed", type=_seed, default=0, help="first seed of every cell")
    p.add_argument("--size", type=_positive_int, default=64, help="image side length N")
    p.add_argument("--tolerance", type=_positive_int, default=2, help="localization tolerance, px")
    _add_lst_flags(p)
    p.add_argument("--out", help="report CSV (stdout when omitted)")
    p.add_argument("--dump-dir", help="write input and response PGMs of each cell's first seed here")
    p.set_defaults(func=cmd_synth_bench)

    p = sub.add_parser("recognize", help="nearest-neighbour recognition experiments",
                       formatter_class=fmt)
    p.add_argument("--data", required=True, help="dataset root laid out as <root>/<class>/*.pgm")
    p.add_argument("--methods", type=_list_of(_method, "methods"), default=list(METHODS))
    p.add_argument("--train-frac", type=_list_of(_fraction, "train-frac"), default=[0.5],
                   help="comma-separated training fractions")
    p.add_argument("--noise", type=_list_of(_percent, "noise"), default=[0.0, 10.0, 20.0],
                   help="comma-separated test-time noise levels, %% of peak intensity")
    p.add_argument("--seeds", type=_positive_int, default=5, help="repetitions per setting")
    p.add_argument("--seed", type=_seed, default=0, help="first repetition seed")
    p.add_argument("--downsample", type=_positive_int, default=4, help="block-mean feature factor")
    p.add_argument("--knn", type=_positive_int, default=1, help="neighbours voted (odd)")
    p.add_argument("--auc", action="store_true", help="add a genuine/impostor ROC AUC column")
    _add_lst_flags(p)
    p.add_argument("--out", help="results CSV (stdout when omitted)")
    p.set_defaults(func=cmd_recognize)

    p = sub.add_parser("mkdata", help="generate the synthetic grating dataset", formatter_class=fmt)
    p.add_argument("--out", required=True, help="output directory")
    p.add_argument("--classes", type=int, default=5)
    p.add_argument("--per-class", type=int, default=10)
    p.add_argument("--size", type=_positive_int, default=64)
    p.add_argument("--seed", type=_seed, default=0)
    p.add_argument("--noise", type=_percent, default=5.0, help="per-sample noise, %% of 255")
    p.set_defaults(func=cmd_mkdata)
    return parser


def _emit(text, out):
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def cmd_detect(args):
    img = read_pgm(args.input)
    resp = respond(img, args.method, LstConfig(k=args.k, epsilon_floor=args.floor),
                   zc_threshold=args.zc_threshold)
    write_pgm(resp.values, args.output, normalize=True)
    if args.binarize:
        bits = binarize(resp)
        if bits.degenerate:
            log.warning("constant response; binary map is empty")
        write_pgm(bits.as_float() * 255.0, args.binarize)
    if args.raw_csv:
        write_csv_matrix(resp.values, args.raw_csv)
    return 0


def cmd_synth_bench(args):
    specs = [SyntheticSpec(shape, args.size, 255.0, noise, args.seed)
             for shape in args.shapes for noise in args.noise]
    on_cell = None
    if args.dump_dir:
        dump = Path(args.dump_dir)
        dump.mkdir(parents=True, exist_ok=True)

        def on_cell(method, spec, seed, img, resp):
            if seed != spec.seed:
                return
            stem = f"{spec.shape}_n{format_real(spec.noise_pct)}_s{seed}"
            write_pgm(img, dump / f"{stem}_input.pgm", normalize=False)
            write_pgm(resp.values, dump / f"{stem}_{method}.pgm", normalize=True)

    report = run_bench(args.methods, specs, args.seeds_per_cell, args.tolerance,
                       LstConfig(k=args.k, epsilon_floor=args.floor), on_cell)
    if not report.rows:
        print("error: every benchmark cell failed", file=sys.stderr)
        return 1
    _emit(report.to_csv(), args.out)
    return 0


def cmd_recognize(args):
    if args.knn % 2 == 0:
        raise _Usage("--knn must be odd")
    dataset = ingest_dataset(args.data)
    cfg = LstConfig(k=args.k, epsilon_floor=args.floor)
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(RESULTS_HEADER if args.auc else RESULTS_HEADER[:-1])
    for method in args.methods:
        for frac in args.train_frac:
            for noise in args.noise:
                for seed in range(args.seed, args.seed + args.seeds):
                    acc = accuracy_experiment(dataset, method, frac, noise, seed,
                                              downsample=args.downsample, k=args.knn, cfg=cfg)
                    row = [method, format_real(frac), format_real(noise), seed, format_real(acc)]
                    if args.auc:
                        auc = roc_auc(dataset, method, frac, seed, noise, args.downsample, cfg)
                        row.append(format_real(auc))
                    writer.writerow(row)
                    log.info("%s frac=%s noise=%s seed=%d acc=%.4f", method, frac, noise, seed, acc)
    _emit(buf.getvalue(), args.out)
    return 0


def cmd_mkdata(args):
    if args.classes < 2:
        raise _Usage("--classes must be at least 2")
    if args.per_class < 2:
        raise _Usage("--per-class must be at least 2")
    ds = make_dataset(args.classes, args.per_class, args.size, args.seed, args.noise)
    write_dataset(ds, args.out)
    return 0


class _Usage(Exception):
    pass


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s: %(message)s")
    try:
        return args.func(args)
    except _Usage as exc:
        parser.error(str(exc))
    except (OSError, LstEdgeError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
