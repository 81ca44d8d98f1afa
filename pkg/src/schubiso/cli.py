"""Command-line interface.

Exit codes for ``check``: 0 isomorphic, 1 not isomorphic, 2 unknown.
Every other command exits 0 on success. Any error exits 3 and is reported
on stderr only, so ``--json`` output is always valid JSON or empty.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence

from . import __version__
from .atlas import build_atlas, classify, enumerate_data, surface_atlas
from .cartan import builtin
from .cohomology import chevalley, element_from_labels
from .documents import dump_datum, load_datum, load_json, parse_cartan
from .errors import AtlasMismatch, CartanError, SchubisoError, UnknownLabel
from .isoclass import VerdictKind, check_iso
from .weyl import DEFAULT_CAP, generate_roots

EXIT_CODES = {VerdictKind.ISOMORPHIC: 0, VerdictKind.NOT_ISOMORPHIC: 1, VerdictKind.UNKNOWN: 2}
EXIT_ERROR = 3


def _warn(msg: str) -> None:
    print(f"warning: {msg}", file=sys.stderr)


def _emit_json(obj) -> None:
    print(json.dumps(obj, sort_keys=True))


def _table(rows: Sequence[Sequence[object]], header: Sequence[str]) -> str:
    cells = [list(map(str, header))] + [[str(c) for c in row] for row in rows]
    widths = [max(len(r[i]) for r in cells) for i in range(len(header))]
    lines = ["  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip() for r in cells]
    lines.insert(1, "  ".join("-" * w for w in widths))
    return "\n".join(lines)


def _load(path: str, args) -> object:
    d, warnings = load_datum(path, normalize=args.normalize)
    for msg in warnings:
        _warn(msg)
    return d


def cmd_check(args) -> int:
    d = _load(args.file_a, args)
    e = _load(args.file_b, args)
    verdict = check_iso(d, e, cap=args.cap)
    if not args.json:
        print(f"{verdict.kind.value}: {d!r} vs {e!r}")
    _emit_json(verdict.to_json())
    return EXIT_CODES[verdict.kind]


def _describe(d) -> str:
    return f"X({','.join(d.word_labels())}; {d.cartan}; {{{','.join(d.parabolic_labels())}}})"


def cmd_surfaces(args) -> int:
    atlas = surface_atlas(cap=args.cap, threads=args.threads)
    if args.verify:
        cls = atlas.classification
        for (i, j), v in cls.verdicts.items():
            again = check_iso(cls.data[i], cls.data[j], cap=args.cap)
            if again.kind is not v.kind:
                raise AtlasMismatch(f"verdict for pair ({i}, {j}) changed on re-check")
            if again.certificate is not None and not again.certificate.verify():
                raise AtlasMismatch(f"certificate for pair ({i}, {j}) does not re-verify")
    if args.json:
        sys.stdout.write(atlas.to_jsonl())
        return 0
    cls = atlas.classification
    print(f"# schubiso {__version__} surfaces max_rank=2 max_length=2 dimension=2")
    rows = []
    for c, members in enumerate(cls.classes):
        rows.append((c, atlas.labels[c], len(members), "  ".join(_describe(cls.data[i]) for i in members)))
    print(_table(rows, ("class", "label", "size", "members")))
    print(f"{len(cls.classes)} classes, {len(cls.data)} data" + (", all verdicts re-verified" if args.verify else ""))
    return 0


def cmd_cohomology(args) -> int:
    d = _load(args.file, args)
    element = [x for x in args.element.split(",") if x] if args.element else []
    try:
        v = element_from_labels(d, element)
    except UnknownLabel as exc:
        raise SchubisoError(str(exc)) from None
    product = chevalley(d, args.generator, v)
    if args.json:
        _emit_json({"datum": d.to_json(), "generator": args.generator, "element": element, "product": product.to_json()})
    else:
        print(str(product))
    return 0


def cmd_interval(args) -> int:
    d = _load(args.file, args)
    elements = d.interval.elements
    if args.json:
        _emit_json([{"word": v.labeled_word(), "length": v.length, "degree": 2 * v.length} for v in elements])
    else:
        rows = [(",".join(v.labeled_word()) or "1", v.length, 2 * v.length) for v in elements]
        print(_table(rows, ("element", "length", "degree")))
    return 0


def cmd_enumerate(args) -> int:
    data = enumerate_data(args.max_rank, args.max_length)
    params = {"max_rank": args.max_rank, "max_length": args.max_length}
    if args.classify:
        atlas = build_atlas(classify(data, cap=args.cap, threads=args.threads), params)
        if args.json:
            sys.stdout.write(atlas.to_jsonl())
        else:
            cls = atlas.classification
            print(f"# schubiso {__version__} enumerate max_rank={args.max_rank} max_length={args.max_length}")
            rows = [(c, len(m), "  ".join(_describe(cls.data[i]) for i in m)) for c, m in enumerate(cls.classes)]
            print(_table(rows, ("class", "size", "members")))
            if cls.unknown_pairs:
                print(f"{len(cls.unknown_pairs)} undecided pairs")
        return 0
    if args.json:
        _emit_json({"tool": "schubiso", "version": __version__, "params": params, "data": len(data)})
        for d in data:
            print(dump_datum(d))
    else:
        print(f"# schubiso {__version__} enumerate max_rank={args.max_rank} max_length={args.max_length}")
        rows = [(i, d.cartan.rank, d.dimension, _describe(d)) for i, d in enumerate(data)]
        print(_table(rows, ("id", "rank", "dim", "datum")))
    return 0


def cmd_roots(args) -> int:
    if args.type:
        try:
            cartan = builtin(args.type)
        except ValueError as exc:
            raise SchubisoError(str(exc)) from None
    elif args.file:
        try:
            cartan = parse_cartan(load_json(args.file))
        except CartanError as exc:
            raise SchubisoError(f"{args.file}: {exc}") from None
    else:
        raise SchubisoError("roots needs a document file or --type")
    system = generate_roots(cartan)
    if args.json:
        _emit_json({"labels": list(cartan.labels), "positive_roots": [r.to_json() for r in system]})
    else:
        rows = [(i, tuple(r.root), tuple(r.coroot)) for i, r in enumerate(system)]
        print(_table(rows, ("#", "root", "coroot")))
    return 0


def build_parser() -> argparse.ArgumentParser:
    def add_common(p: argparse.ArgumentParser, suppress: bool) -> None:
        default = (lambda v: argparse.SUPPRESS) if suppress else (lambda v: v)
        p.add_argument("--json", action="store_true", default=default(False), help="machine-readable output")
        p.add_argument("--normalize", action="store_true", default=default(False),
                       help="replace input words by reduced minimal coset representatives")
        p.add_argument("--cap", type=int, default=default(DEFAULT_CAP), help="reduced-word enumeration cap")
        p.add_argument("--threads", type=int, default=default(1), help="worker threads for pairwise checks")

    parser = argparse.ArgumentParser(prog="schubiso", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"schubiso {__version__}")
    add_common(parser, suppress=False)
    common = argparse.ArgumentParser(add_help=False)
    add_common(common, suppress=True)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", parents=[common], help="decide isomorphism of two Schubert data")
    p.add_argument("file_a")
    p.add_argument("file_b")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("surfaces", parents=[common], help="classify all Schubert surfaces")
    p.add_argument("--verify", action="store_true", help="re-check every pairwise verdict")
    p.set_defaults(func=cmd_surfaces)

    p = sub.add_parser("cohomology", parents=[common], help="multiply a basis class by a degree-2 class")
    p.add_argument("file")
    p.add_argument("--generator", "-g", required=True, help="label of the degree-2 generator")
    p.add_argument("--element", "-e", default="", help="comma-separated word of the basis element (empty for 1)")
    p.set_defaults(func=cmd_cohomology)

    p = sub.add_parser("interval", parents=[common], help="list the basis-indexing interval")
    p.add_argument("file")
    p.set_defaults(func=cmd_interval)

    p = sub.add_parser("enumerate", parents=[common], help="enumerate fully supported data")
    p.add_argument("--max-rank", type=int, default=2)
    p.add_argument("--max-length", type=int, default=2)
    p.add_argument("--classify", action="store_true", help="also partition the data into isomorphism classes")
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("roots", parents=[common], help="positive roots with root and coroot coordinates")
    p.add_argument("file", nargs="?")
    p.add_argument("--type", help="built-in Cartan type, e.g. B2, G2, A1xA1")
    p.set_defaults(func=cmd_roots)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except SchubisoError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
