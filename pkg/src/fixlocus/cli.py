"""Command line interface.

Exit status: 0 on success, 1 when the instance or a computation is invalid,
2 when a document cannot be parsed.  Results go to stdout, diagnostics to
stderr.
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction
from pathlib import Path
from typing import Callable, Sequence

from fixlocus.catalog import CatalogInstance, fermat_instance, schottky_instance
from fixlocus.counting import component_count, component_upper_bound
from fixlocus.counting2d import fiber_oracle_count, macbeath_count, oval_count
from fixlocus.errors import FixLocusError, ParseError
from fixlocus.parser import InstanceBundle, parse_element, parse_instance, render_instance
from fixlocus.perm import element_order
from fixlocus.report import Report, Row, ValueRow, collect_assumptions, element_names
from fixlocus.words import validate_epimorphism

EXIT_OK, EXIT_INVALID, EXIT_PARSE = 0, 1, 2


class _Failure(Exception):
    def __init__(self, status: int, message: str):
        self.status = status
        super().__init__(message)


def _load(path: str, validate: bool = True) -> InstanceBundle:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise _Failure(EXIT_INVALID, f"{path}: {exc.strerror}") from None
    try:
        return parse_instance(text, validate=validate)
    except ParseError as exc:
        raise _Failure(EXIT_PARSE, f"{path}: parse error at {exc}") from None
    except FixLocusError as exc:
        raise _Failure(EXIT_INVALID, f"{path}: invalid instance: {exc}") from None


def _selected(bundle: InstanceBundle, args, only: Callable[[int], bool] | None = None
              ) -> list[tuple[str, int]]:
    G = bundle.epi.target
    names = element_names(G, bundle.group_names)
    if args.element:
        out = []
        for text in args.element:
            try:
                p = parse_element(text, G, bundle.group_names)
            except ParseError as exc:
                raise _Failure(EXIT_PARSE, f"--element {text!r}: {exc}") from None
            if p not in G:
                raise _Failure(EXIT_INVALID, f"--element {text!r} is not in the group")
            out.append((text, G.index(p)))
        return out
    return [(names[i], i) for i in range(1, G.order) if only is None or only(i)]


def _emit(report: Report, args) -> None:
    sys.stdout.write(report.to_json() if args.json else report.to_text())


def _run_rows(command: str, bundle: InstanceBundle, args, make_row: Callable[[str, int], Row],
              only: Callable[[int], bool] | None = None, extra: Sequence[str] = ()) -> int:
    rows, failed = [], False
    for name, idx in _selected(bundle, args, only):
        try:
            rows.append(make_row(name, idx))
        except FixLocusError as exc:
            failed = True
            print(f"{name}: {type(exc).__name__}: {exc}", file=sys.stderr)
    report = Report(command, bundle.epi.target.degree, tuple(rows), collect_assumptions(rows, extra))
    _emit(report, args)
    return EXIT_INVALID if failed else EXIT_OK


def cmd_count(args) -> int:
    bundle = _load(args.file)
    return _run_rows("count", bundle, args, lambda name, g: component_count(
        bundle.epi, g, bundle.merge, bundle.specs, name=name))


def cmd_bound(args) -> int:
    bundle = _load(args.file)
    epi = bundle.epi

    def row(name: str, g: int) -> Row:
        return ValueRow(name, epi.target.element(g), component_upper_bound(epi, g))
    return _run_rows("bound", bundle, args, row)


def cmd_macbeath(args) -> int:
    bundle = _load(args.file)
    epi = bundle.epi

    def row(name: str, g: int) -> Row:
        fc = macbeath_count(epi, g)
        return ValueRow(name, fc.element, Fraction(fc.count),
                        (("contributing", " ".join(map(str, fc.contributing_indices))),))
    return _run_rows("macbeath", bundle, args, row)


def cmd_oracle(args) -> int:
    bundle = _load(args.file)
    epi = bundle.epi
    return _run_rows("oracle", bundle, args, lambda name, g: ValueRow(
        name, epi.target.element(g), Fraction(fiber_oracle_count(epi, g))))


def cmd_ovals(args) -> int:
    bundle = _load(args.file)
    epi = bundle.epi
    notes = ("centralizer generators taken as complete",
             "classes summed over the G-conjugacy class of the symmetry")
    return _run_rows(
        "ovals", bundle, args,
        lambda name, g: ValueRow(name, epi.target.element(g),
                                 Fraction(oval_count(epi, g, list(bundle.reflections)))),
        only=lambda i: element_order(epi.target, i) == 2, extra=notes)


def cmd_validate(args) -> int:
    bundle = _load(args.file, validate=False)
    report = validate_epimorphism(bundle.epi)
    if report.passed:
        print("validation: pass")
    else:
        print(f"validation: fail ({report.failed_check}): {report.message}")
    for note in report.notes:
        print(f"* {note}")
    return EXIT_OK if report.passed else EXIT_INVALID


def _catalog_instance(args) -> CatalogInstance:
    if args.example == "fermat":
        return fermat_instance(args.m, args.k)
    return schottky_instance()


def cmd_catalog(args) -> int:
    try:
        inst = _catalog_instance(args)
    except FixLocusError as exc:
        raise _Failure(EXIT_INVALID, str(exc)) from None
    if not args.check:
        sys.stdout.write(render_instance(inst.bundle(), title=inst.name))
        return EXIT_OK
    got = inst.check()
    print(", ".join(f"{name}: {count}" for name, count in got.items()))
    bad = {n: (got[n], e) for n, e in inst.expected.items() if got[n] != e}
    for name, (g, e) in bad.items():
        print(f"{name}: computed {g}, expected {e}", file=sys.stderr)
    return EXIT_INVALID if bad else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fixlocus",
        description="Count connected components of fixed-point sets from finite group data.")
    sub = parser.add_subparsers(dest="command", required=True)

    def instance_command(name: str, func, help_: str) -> argparse.ArgumentParser:
        p = sub.add_parser(name, help=help_)
        p.add_argument("file", help="instance document")
        sel = p.add_mutually_exclusive_group()
        sel.add_argument("--element", action="append", metavar="NAME",
                         help="group element as a word in the group generators or in cycle notation "
                              "(repeatable)")
        sel.add_argument("--all", action="store_true", help="every non-trivial element (default)")
        p.add_argument("--json", action="store_true", help="machine-readable report")
        p.set_defaults(func=func)
        return p

    instance_command("count", cmd_count, "component counts")
    instance_command("bound", cmd_bound, "upper bounds needing no merge or normalizer data")
    instance_command("macbeath", cmd_macbeath, "fixed points on a Riemann surface (formula)")
    instance_command("oracle", cmd_oracle, "fixed points on a Riemann surface (coset fibers)")
    instance_command("ovals", cmd_ovals, "ovals of symmetries")

    p = sub.add_parser("validate", help="check relators, surjectivity and e.c.s. orders")
    p.add_argument("file")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("catalog", help="emit or check a built-in example")
    p.add_argument("example", choices=("fermat", "schottky"))
    p.add_argument("--m", type=int, default=3, help="cone order (fermat)")
    p.add_argument("--k", type=int, default=3, help="number of cone loops (fermat)")
    p.add_argument("--check", action="store_true", help="recompute the expected counts")
    p.set_defaults(func=cmd_catalog)
    return parser


def run_cli(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except _Failure as exc:
        print(str(exc), file=sys.stderr)
        return exc.status
    except FixLocusError as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INVALID


def main() -> None:
    sys.exit(run_cli())


if __name__ == "__main__":
    main()
