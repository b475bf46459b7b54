"""Command line entry point: ``pitheorem analyze MODEL``."""

from __future__ import annotations

import argparse
import os
import sys
import tempfile
from pathlib import Path

from . import __version__
from .analysis import run_analysis
from .model import ModelError, parse_model
from .render import FORMATS, render


def _write_atomic(path: Path, text: str) -> None:
    path = path.resolve()
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pitheorem",
        description="Enumerate adequate partitions and pi-theorem representations of a dimensional model.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="analyze a model file")
    p.add_argument("file", help="model file ('-' for stdin)")
    p.add_argument("--dependent", metavar="NAME", help="override the [dependent] section")
    p.add_argument("--normalize", action="store_true", help="raise equations to a common lhs power")
    p.add_argument("--reduce", action="store_true", help="apply the declared [symmetry]")
    p.add_argument("--format", choices=FORMATS, default="text")
    p.add_argument("--scalar", action="store_true", help="render the scalar (measure) form")
    p.add_argument("--out", metavar="PATH", help="write output here instead of stdout")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.file == "-":
            text = sys.stdin.read()
        else:
            text = Path(args.file).read_text(encoding="utf-8")
    except OSError as exc:
        print(f"pitheorem: cannot read {args.file}: {exc.strerror}", file=sys.stderr)
        return 2
    try:
        model = parse_model(text, dependent=args.dependent)
        report = run_analysis(model, normalize=args.normalize, reduce=args.reduce)
    except (ModelError, KeyError, ValueError) as exc:
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else exc
        print(f"pitheorem: {args.file}: {msg}", file=sys.stderr)
        return 1
    out = render(report, args.format, scalar=args.scalar)
    if args.out:
        _write_atomic(Path(args.out), out)
    else:
        sys.stdout.write(out)
    return 0


if __name__ == "__main__":
    sys.exit(main())
