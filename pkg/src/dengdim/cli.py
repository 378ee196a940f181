"""Command-line entry point: ``dengdim analyze | batch | generate``."""

from __future__ import annotations

import argparse
import logging
import os
import shlex
import sys

from .boxcover import DEFAULT_REPETITIONS
from .entropy import MODES
from .fit import LOG_BASES
from .pipeline import (EMIT_ALL, RunConfig, StageError, batch, batch_csv, default_out_dir,
                       run, table_row_csv)
from .synthgen import GenSpec, export_edge_list, generate

log = logging.getLogger("dengdim")


class _ArgError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # manifest lines must not terminate the process on a bad flag
    def error(self, message):
        raise _ArgError(message)


def _add_run_args(p: argparse.ArgumentParser) -> None:
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--input", help="edge-list file (two node labels per line)")
    src.add_argument("--gen", help="generator spec, e.g. ba:n=500,m=3 or ws:n=500,k=10,p=0.1")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--reps", type=int, default=DEFAULT_REPETITIONS,
                   help="greedy colouring restarts per box diameter")
    p.add_argument("--mode", choices=MODES, default="exact",
                   help="evaluation of log2(2^|A|-1)")
    p.add_argument("--log-base", choices=LOG_BASES, default="e",
                   help="base of log(eps) in the fitted models")
    p.add_argument("--emax-override", type=int, default=None, metavar="M",
                   help="largest box diameter in the profile (default: delta-1)")
    p.add_argument("--out", default=None, help="output directory (default $DENGDIM_OUT or ./dengdim-out)")
    p.add_argument("--largest-component", action="store_true",
                   help="analyze the largest connected component of a disconnected input")
    p.add_argument("--emit", default=",".join(sorted(EMIT_ALL)),
                   help="comma list from profile,fits,plot,row")
    p.add_argument("--workers", type=int, default=1, help="threads for covering restarts")
    p.add_argument("--name", default=None, help="network name used in outputs")


def _config(args, out_default=None) -> RunConfig:
    return RunConfig(
        input=args.input, gen=args.gen, seed=args.seed, repetitions=args.reps,
        mode=args.mode, log_base=args.log_base, emax=args.emax_override,
        out_dir=args.out or out_default or default_out_dir(),
        largest_component=args.largest_component,
        emit=frozenset(filter(None, (s.strip() for s in args.emit.split(",")))),
        workers=args.workers, name=args.name,
    )


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="dengdim", description=__doc__)
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    a = sub.add_parser("analyze", help="profile, fit and compare one network")
    _add_run_args(a)

    b = sub.add_parser("batch", help="analyze every line of a manifest")
    b.add_argument("--manifest", required=True,
                   help="file with one set of analyze flags per line")
    b.add_argument("--out", default=None, help="default output directory for entries")
    b.add_argument("--table", default=None, help="combined CSV path (default OUT/batch.csv)")
    b.add_argument("--workers", type=int, default=1, help="entries analyzed concurrently")

    g = sub.add_parser("generate", help="write a synthetic network as an edge list")
    g.add_argument("--gen", required=True)
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--output", "-o", default="-")
    return parser


def _entry_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="manifest-entry", add_help=False)
    _add_run_args(p)
    return p


def read_manifest(path, out_default=None):
    """Parse a manifest into (configs, errors); errors are (line number, message)."""
    parser = _entry_parser()
    configs, errors = [], []
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            try:
                args = parser.parse_args(shlex.split(line))
            except _ArgError as exc:
                errors.append((lineno, str(exc)))
                continue
            configs.append(_config(args, out_default))
    return configs, errors


def _cmd_analyze(args) -> int:
    cfg = _config(args)
    try:
        result = run(cfg)
    except StageError as exc:
        print(f"dengdim: error in stage {exc.stage!r}: {exc.cause}", file=sys.stderr)
        return 1
    sys.stdout.write(table_row_csv(result))
    c = result.comparison
    print(f"# selected={c.selected} delta_aic_D={c.delta_aic_deng:.6g} "
          f"delta_aic_dD={c.delta_aic_dsummable:.6g}")
    for key, path in sorted(result.artifacts.items()):
        print(f"# {key}: {path}")
    return 0


def _cmd_batch(args) -> int:
    out = args.out or default_out_dir()
    try:
        configs, errors = read_manifest(args.manifest, out)
    except OSError as exc:
        print(f"dengdim: cannot read manifest: {exc}", file=sys.stderr)
        return 1
    for lineno, msg in errors:
        log.warning("manifest line %d ignored: %s", lineno, msg)
    if not configs:
        print("dengdim: manifest has no valid entries", file=sys.stderr)
        return 1
    rows = batch(configs, workers=args.workers)
    table = args.table or os.path.join(out, "batch.csv")
    os.makedirs(os.path.dirname(table) or ".", exist_ok=True)
    text = batch_csv(rows)
    with open(table, "w", encoding="utf-8", newline="") as fh:
        fh.write(text)
    sys.stdout.write(text)
    failed = sum(r["status"] != "ok" for r in rows)
    if failed:
        print(f"dengdim: warning: {failed} of {len(rows)} entries failed", file=sys.stderr)
    return 1 if failed == len(rows) else 0


def _cmd_generate(args) -> int:
    try:
        spec = GenSpec.parse(args.gen, args.seed)
    except Exception as exc:
        print(f"dengdim: error in stage 'generate': {exc}", file=sys.stderr)
        return 1
    text = export_edge_list(generate(spec))
    if args.output == "-":
        sys.stdout.write(text)
    else:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    return 0


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except _ArgError as exc:
        parser.print_usage(sys.stderr)
        print(f"dengdim: error: {exc}", file=sys.stderr)
        return 2
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    return {"analyze": _cmd_analyze, "batch": _cmd_batch, "generate": _cmd_generate}[args.command](args)


if __name__ == "__main__":
    sys.exit(main())
