"""Command-line interface.

Exit status is 0 on success, 1 when a diagram fails validation and 2 on any
input error (unreadable file, parse error, bad arguments).
"""

from __future__ import annotations

import argparse
import sys
from functools import partial
from pathlib import Path
from typing import Sequence

from .compression import slide_system, standard_double_diagram
from .fileformat import DiagramParseError, parse_diagram_file, parse_page_spec, serialize_diagram
from .handles import build_xn, complex_to_text, homology, parse_complex, UnverifiedComplex
from .linalg import IntMatrix, cokernel, smith_normal_form
from .multisection import (
    DiagramReport,
    MultisectionDiagram,
    build_standard_multisection,
    validate_diagram,
    xn_diagram,
)

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


class InputError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):  # argparse would call sys.exit
        raise InputError(f"{message}\n\n{self.format_usage()}")


def _build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="multisect", description="Multisection diagram toolkit.")
    p.add_argument("--porcelain", action="store_true", help="key=value output for scripts")
    sub = p.add_subparsers(dest="command", metavar="COMMAND", parser_class=_Parser)
    common = _Parser(add_help=False)
    common.add_argument("--porcelain", action="store_true", default=argparse.SUPPRESS)
    sub.add_parser = partial(sub.add_parser, parents=[common])

    v = sub.add_parser("validate", help="validate a diagram file")
    v.add_argument("file")
    inv = sub.add_parser("invariants", help="Euler characteristic and H1 of the 4-manifold")
    inv.add_argument("file")

    gs = sub.add_parser("generate-standard", help="standard double compression body diagram")
    gs.add_argument("--page", required=True, help="'empty' or genus:boundary,...")
    gs.add_argument("--k", type=int, required=True)
    gs.add_argument("--stab", type=int, default=0)

    gm = sub.add_parser("generate-multisection", help="standard multisection diagram")
    gm.add_argument("--page", required=True)
    gm.add_argument("--k", type=int, required=True)
    gm.add_argument("--sectors", type=int, required=True)

    xn = sub.add_parser("xn", help="homology of the X_n family")
    xn.add_argument("n", type=int)
    xn.add_argument("--complex", action="store_true", help="also print the chain complex")
    sub.add_parser("xn-diagram", help="the X_n trisection diagram with its sphere page")

    sl = sub.add_parser("slide", help="homological handleslide inside one system")
    sl.add_argument("file")
    sl.add_argument("--system", type=int, required=True, help="system index (0-based)")
    sl.add_argument("--j", type=int, required=True)
    sl.add_argument("--l", type=int, required=True)
    sl.add_argument("--sign", type=int, required=True, choices=(1, -1))

    sn = sub.add_parser("snf", help="Smith normal form of an integer matrix file")
    sn.add_argument("file")
    hm = sub.add_parser("homology", help="homology of a chain complex file")
    hm.add_argument("file")
    return p


def _read(path: str) -> str:
    try:
        return Path(path).read_text()
    except (OSError, UnicodeDecodeError) as exc:
        raise InputError(f"cannot read {path}: {exc}") from None


def _load_diagram(path: str) -> MultisectionDiagram:
    try:
        return parse_diagram_file(_read(path))
    except DiagramParseError as exc:
        raise InputError(f"{path}: {exc}") from None


def _page(spec: str):
    try:
        return parse_page_spec(spec)
    except ValueError as exc:
        raise InputError(str(exc)) from None


def _verdict_lines(d: MultisectionDiagram, r: DiagramReport, porcelain: bool) -> list[str]:
    if porcelain:
        out = [f"verdict={'pass' if r.verdict else 'fail'}"]
        out += [f"failure={f}" for f in r.failures]
        for name, v in zip(d.names, r.per_system):
            out.append(f"system.{name}={v}")
        for (i, j), p in zip(d.pairs(), r.per_pair):
            key = f"pair.{d.names[i]}/{d.names[j]}"
            out.append(f"{key}.s={_opt(p.detected_stabilizations)}")
            out.append(f"{key}.k={_opt(p.k)}")
        return out
    out = [
        f"diagram: genus {d.surface.genus}, {d.surface.boundary} boundary, "
        f"{d.n} systems, page {d.page}",
        f"verdict: {'PASS' if r.verdict else 'FAIL'}",
    ]
    out += [f"failure: {f}" for f in r.failures]
    for name, v in zip(d.names, r.per_system):
        out.append(f"system {name}: {v}")
    for (i, j), p in zip(d.pairs(), r.per_pair):
        status = "pass" if p.verdict else "fail " + ",".join(f.value for f in p.failures)
        out.append(
            f"pair {d.names[i]}/{d.names[j]}: {status} "
            f"s={_opt(p.detected_stabilizations)} k={_opt(p.k)} snf={list(p.snf_diagonal)}"
        )
    return out


def _opt(x) -> str:
    return "-" if x is None else str(x)


def _cmd_validate(args) -> tuple[int, str]:
    d = _load_diagram(args.file)
    r = validate_diagram(d)
    lines = _verdict_lines(d, r, args.porcelain)
    return (EXIT_OK if r.verdict else EXIT_FAIL), "\n".join(lines)


def _cmd_invariants(args) -> tuple[int, str]:
    d = _load_diagram(args.file)
    r = validate_diagram(d)
    if not r.verdict:
        return EXIT_FAIL, "\n".join(_verdict_lines(d, r, args.porcelain))
    if args.porcelain:
        lines = [f"euler_characteristic={r.euler_characteristic}", f"H1={r.h1}"]
        lines += [f"s.{i + 1}={s}" for i, s in enumerate(r.s)]
        lines += [f"k.{i + 1}={k}" for i, k in enumerate(r.k)]
    else:
        lines = [f"euler characteristic: {r.euler_characteristic}", f"H1 = {r.h1}"]
        for (i, j), s, k in zip(d.pairs(), r.s, r.k):
            lines.append(f"pair {d.names[i]}/{d.names[j]}: s={s} k={k}")
    return EXIT_OK, "\n".join(lines)


def _cmd_generate_standard(args) -> tuple[int, str]:
    page = _page(args.page)
    try:
        dd = standard_double_diagram(page, args.k, args.stab)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    d = MultisectionDiagram(dd.surface, (dd.alpha, dd.beta), page, names=("alpha", "beta"))
    header = f"standard double diagram: page {page}, k={args.k}, stabilizations={args.stab}"
    return EXIT_OK, serialize_diagram(d, header).rstrip("\n")


def _cmd_generate_multisection(args) -> tuple[int, str]:
    page = _page(args.page)
    try:
        d = build_standard_multisection(page, args.k, args.sectors)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    header = f"standard multisection: page {page}, k={args.k}, sectors={args.sectors}"
    return EXIT_OK, serialize_diagram(d, header).rstrip("\n")


def _cmd_xn(args) -> tuple[int, str]:
    if args.n < 0:
        raise InputError("n must be nonnegative")
    k = build_xn(args.n)
    groups = homology(k)
    prefix = "" if args.porcelain else "X_{} ".format(args.n)
    lines = [] if args.porcelain else [f"{prefix}cells per degree: {list(k.dims)}"]
    sep = "=" if args.porcelain else " = "
    lines += [f"H{d}{sep}{groups[d]}" for d in range(3)]
    if args.complex:
        lines.append(complex_to_text(k).rstrip("\n"))
    return EXIT_OK, "\n".join(lines)


def _cmd_xn_diagram(args) -> tuple[int, str]:
    d, page = xn_diagram()
    header = "common trisection diagram of the X_n family; its page contains a sphere"
    return EXIT_OK, serialize_diagram(d, header).rstrip("\n")


def _cmd_slide(args) -> tuple[int, str]:
    d = _load_diagram(args.file)
    if not 0 <= args.system < d.n:
        raise InputError(f"system index {args.system} out of range (0..{d.n - 1})")
    try:
        cs = slide_system(d.systems[args.system], args.j, args.l, args.sign)
    except (ValueError, IndexError) as exc:
        raise InputError(str(exc)) from None
    out = d.replace_system(args.system, cs)
    sign = "+" if args.sign == 1 else "-"
    header = f"curve {args.j} slid over curve {args.l} ({sign}) in system {d.names[args.system]}"
    return EXIT_OK, serialize_diagram(out, header).rstrip("\n")


def parse_matrix(text: str) -> IntMatrix:
    """Whitespace-separated rows; an optional ``shape R C`` line allows empty shapes."""
    rows: list[list[int]] = []
    shape = None
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            if line.startswith("shape"):
                _, r, c = line.split()
                shape = (int(r), int(c))
            else:
                rows.append([int(x) for x in line.split()])
        except ValueError:
            raise InputError(f"line {lineno}: malformed matrix row {line!r}") from None
    if shape is None:
        cols = len(rows[0]) if rows else 0
    else:
        cols = shape[1]
        if cols == 0 and not rows:
            rows = [[] for _ in range(shape[0])]
        if shape[0] != len(rows) or min(shape) < 0:
            raise InputError(f"shape says {shape[0]}x{cols}, found {len(rows)} rows")
    try:
        return IntMatrix.from_rows(rows, cols)
    except ValueError as exc:
        raise InputError(f"malformed matrix: {exc}") from None


def _cmd_snf(args) -> tuple[int, str]:
    m = parse_matrix(_read(args.file))
    u, s, v = smith_normal_form(m)
    diag = s.diagonal_entries()
    if args.porcelain:
        lines = [f"shape={m.rows}x{m.cols}", f"diagonal={','.join(map(str, diag))}",
                 f"cokernel={cokernel(m)}"]
    else:
        lines = [f"matrix {m.rows}x{m.cols}", f"invariant factors: {diag}",
                 f"cokernel: {cokernel(m)}", "S =", str(s), "U =", str(u), "V =", str(v)]
    return EXIT_OK, "\n".join(lines)


def _cmd_homology(args) -> tuple[int, str]:
    try:
        k = parse_complex(_read(args.file))
        groups = homology(k)
    except (ValueError, UnverifiedComplex) as exc:
        raise InputError(str(exc)) from None
    sep = "=" if args.porcelain else " = "
    return EXIT_OK, "\n".join(f"H{d}{sep}{g}" for d, g in enumerate(groups))


_COMMANDS = {
    "validate": _cmd_validate,
    "invariants": _cmd_invariants,
    "generate-standard": _cmd_generate_standard,
    "generate-multisection": _cmd_generate_multisection,
    "xn": _cmd_xn,
    "xn-diagram": _cmd_xn_diagram,
    "slide": _cmd_slide,
    "snf": _cmd_snf,
    "homology": _cmd_homology,
}


def execute_command(argv: Sequence[str]) -> tuple[int, str]:
    """Run one command and return ``(exit status, report text)``."""
    parser = _build_parser()
    try:
        args = parser.parse_args(list(argv))
        if args.command is None:
            raise InputError(parser.format_help())
        return _COMMANDS[args.command](args)
    except InputError as exc:
        return EXIT_INPUT, f"error: {exc}".rstrip("\n")
    except SystemExit as exc:  # --help
        return (exc.code if isinstance(exc.code, int) else EXIT_INPUT), ""


def main(argv: Sequence[str] | None = None) -> int:
    status, report = execute_command(sys.argv[1:] if argv is None else argv)
    stream = sys.stderr if status == EXIT_INPUT else sys.stdout
    print(report, file=stream)
    return status


if __name__ == "__main__":
    sys.exit(main())
