"""Plain-text multisection diagram files.

Example::

    [surface]
    genus=1 boundary=0

    [system alpha1]
    piece genus=0 scars=2 boundary=0
    curve c class=a1:1 glue=0.0,0.1 orient=+

    [system alpha2]
    curve c class=b1:1

    [page]
    empty

    [suture]
    # surface boundary circle -> page boundary circle, one pair per line

Classes are written in the basis ``a1, b1, ..., ag, bg, d1, ..., d(b-1)``
(``class=0`` for a null-homologous curve). ``glue=P.S,Q.T`` identifies scar
slot ``S`` of piece ``P`` with slot ``T`` of piece ``Q``. A system without
``piece`` lines gets its pieces inferred from the classes, which only works
for non-separating, pairwise disjoint-looking classes. Blank lines and
``#`` comments are ignored.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .compression import CutSystem, infer_trace
from .curves import Gluing, Piece, TracedMulticurve
from .multisection import MultisectionDiagram
from .surface import CurveClass, Surface, SurfaceCollection

__all__ = [
    "DiagramParseError",
    "parse_diagram_file",
    "serialize_diagram",
    "parse_page_spec",
    "MAX_SIZE",
]

MISSING_SECTION = "MISSING_SECTION"
DUPLICATE_NAME = "DUPLICATE_NAME"
BASIS_OUT_OF_RANGE = "BASIS_OUT_OF_RANGE"
MALFORMED_LINE = "MALFORMED_LINE"

# Keeps hostile inputs from allocating huge coefficient vectors.
MAX_SIZE = 1000


class DiagramParseError(ValueError):
    def __init__(self, code: str, line: int | None, reason: str):
        self.code = code
        self.line = line
        self.reason = reason
        where = f" at line {line}" if line is not None else ""
        super().__init__(f"{code}{where}: {reason}")


_SECTION = re.compile(r"^\[\s*([a-z]+)(?:\s+(\S+))?\s*\]$")
_SLOT = re.compile(r"^(\d{1,6})\.(\d{1,6})$", re.ASCII)


@dataclass
class _CurveLine:
    line: int
    name: str
    terms: dict[str, int]
    glue: tuple[tuple[int, int], tuple[int, int]] | None
    orient: int


@dataclass
class _SystemBlock:
    line: int
    name: str
    pieces: list[Piece]
    curves: list[_CurveLine]


def _fields(tokens: list[str], allowed: set[str], lineno: int) -> dict[str, str]:
    out = {}
    for tok in tokens:
        key, sep, value = tok.partition("=")
        if not sep or key not in allowed:
            raise DiagramParseError(MALFORMED_LINE, lineno, f"unexpected token {tok!r}")
        if key in out:
            raise DiagramParseError(MALFORMED_LINE, lineno, f"repeated field {key!r}")
        out[key] = value
    return out


def _count(value: str | None, what: str, lineno: int) -> int:
    if value is None:
        raise DiagramParseError(MALFORMED_LINE, lineno, f"missing {what}")
    if not (value.isascii() and value.isdigit()):
        raise DiagramParseError(MALFORMED_LINE, lineno, f"{what} must be a nonnegative integer")
    n = int(value)
    if n > MAX_SIZE:
        raise DiagramParseError(MALFORMED_LINE, lineno, f"{what}={n} exceeds {MAX_SIZE}")
    return n


def _integer(text: str, lineno: int) -> int:
    if not re.fullmatch(r"[+-]?\d{1,30}", text, re.ASCII):
        raise DiagramParseError(MALFORMED_LINE, lineno, f"bad integer {text!r}")
    return int(text)


def _parse_class(value: str, lineno: int) -> dict[str, int]:
    if value == "0":
        return {}
    terms: dict[str, int] = {}
    for part in value.split(","):
        sym, sep, coeff = part.partition(":")
        if not sep or not re.fullmatch(r"[abd]\d{1,6}", sym, re.ASCII):
            raise DiagramParseError(MALFORMED_LINE, lineno, f"bad class term {part!r}")
        terms[sym] = terms.get(sym, 0) + _integer(coeff, lineno)
    return terms


def _parse_curve(tokens: list[str], lineno: int) -> _CurveLine:
    if not tokens or "=" in tokens[0]:
        raise DiagramParseError(MALFORMED_LINE, lineno, "curve needs a name")
    name = tokens[0]
    f = _fields(tokens[1:], {"class", "glue", "orient"}, lineno)
    if "class" not in f:
        raise DiagramParseError(MALFORMED_LINE, lineno, "curve needs class=")
    terms = _parse_class(f["class"], lineno)
    glue = None
    if "glue" in f:
        sides = f["glue"].split(",")
        slots = [_SLOT.match(s) for s in sides]
        if len(sides) != 2 or not all(slots):
            raise DiagramParseError(MALFORMED_LINE, lineno, "glue must look like P.S,Q.T")
        a, b = ((int(m.group(1)), int(m.group(2))) for m in slots)
        glue = (a, b)
    orient = {"+": 1, "-": -1, None: 1}.get(f.get("orient"), 0)
    if orient == 0:
        raise DiagramParseError(MALFORMED_LINE, lineno, "orient must be + or -")
    if "orient" in f and glue is None:
        raise DiagramParseError(MALFORMED_LINE, lineno, "orient= requires glue=")
    return _CurveLine(lineno, name, terms, glue, orient)


def parse_diagram_file(text: str) -> MultisectionDiagram:
    """Parse a diagram file; every failure is a :class:`DiagramParseError`."""
    try:
        return _parse(text)
    except DiagramParseError:
        raise
    except (ValueError, IndexError, TypeError, OverflowError, RecursionError) as exc:
        raise DiagramParseError(MALFORMED_LINE, None, str(exc)) from None


def _parse(text: str) -> MultisectionDiagram:
    surface: Surface | None = None
    systems: list[_SystemBlock] = []
    page: list[Surface] | None = None
    page_line: int | None = None
    page_empty = False
    suture: dict[int, int] | None = None
    suture_line: int | None = None
    section: str | None = None
    seen: dict[str, int] = {}

    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        m = _SECTION.match(line)
        if m:
            kind, name = m.group(1), m.group(2)
            if kind == "system":
                if name is None:
                    raise DiagramParseError(MALFORMED_LINE, lineno, "system needs a name")
                if any(s.name == name for s in systems):
                    raise DiagramParseError(DUPLICATE_NAME, lineno, f"system {name!r} defined twice")
                systems.append(_SystemBlock(lineno, name, [], []))
            elif kind in ("surface", "page", "suture"):
                if name is not None:
                    raise DiagramParseError(MALFORMED_LINE, lineno, f"[{kind}] takes no name")
                if kind in seen:
                    raise DiagramParseError(
                        DUPLICATE_NAME, lineno, f"[{kind}] already given on line {seen[kind]}"
                    )
                seen[kind] = lineno
                if kind == "page":
                    page, page_line = [], lineno
                elif kind == "suture":
                    suture, suture_line = {}, lineno
            else:
                raise DiagramParseError(MALFORMED_LINE, lineno, f"unknown section [{kind}]")
            section = kind
            continue

        tokens = line.split()
        if section is None:
            raise DiagramParseError(MALFORMED_LINE, lineno, "content before the first section")
        if section == "surface":
            if surface is not None:
                raise DiagramParseError(MALFORMED_LINE, lineno, "surface already specified")
            f = _fields(tokens, {"genus", "boundary"}, lineno)
            surface = Surface(_count(f.get("genus"), "genus", lineno),
                              _count(f.get("boundary", "0"), "boundary", lineno))
        elif section == "system":
            block = systems[-1]
            if tokens[0] == "piece":
                f = _fields(tokens[1:], {"genus", "scars", "boundary"}, lineno)
                if len(block.pieces) >= MAX_SIZE:
                    raise DiagramParseError(MALFORMED_LINE, lineno, "too many pieces")
                block.pieces.append(Piece(
                    _count(f.get("genus", "0"), "genus", lineno),
                    _count(f.get("scars", "0"), "scars", lineno),
                    _count(f.get("boundary", "0"), "boundary", lineno),
                ))
            elif tokens[0] == "curve":
                curve = _parse_curve(tokens[1:], lineno)
                if any(c.name == curve.name for c in block.curves):
                    raise DiagramParseError(
                        DUPLICATE_NAME, lineno, f"curve {curve.name!r} repeated in {block.name}"
                    )
                if len(block.curves) >= MAX_SIZE:
                    raise DiagramParseError(MALFORMED_LINE, lineno, "too many curves")
                block.curves.append(curve)
            else:
                raise DiagramParseError(MALFORMED_LINE, lineno, f"expected piece or curve, got {tokens[0]!r}")
        elif section == "page":
            if tokens == ["empty"]:
                if page:
                    raise DiagramParseError(MALFORMED_LINE, lineno, "'empty' page with components")
                page_empty = True
            elif tokens[0] == "component":
                if page_empty:
                    raise DiagramParseError(MALFORMED_LINE, lineno, "component after 'empty'")
                if len(page) >= MAX_SIZE:
                    raise DiagramParseError(MALFORMED_LINE, lineno, "too many page components")
                f = _fields(tokens[1:], {"genus", "boundary"}, lineno)
                page.append(Surface(_count(f.get("genus"), "genus", lineno),
                                    _count(f.get("boundary", "0"), "boundary", lineno)))
            else:
                raise DiagramParseError(MALFORMED_LINE, lineno, "expected 'empty' or 'component ...'")
        elif section == "suture":
            if len(tokens) != 2 or not all(t.isascii() and t.isdigit() for t in tokens):
                raise DiagramParseError(MALFORMED_LINE, lineno, "suture lines are 'i j'")
            i, j = int(tokens[0]), int(tokens[1])
            if i in suture:
                raise DiagramParseError(DUPLICATE_NAME, lineno, f"circle {i} paired twice")
            suture[i] = j

    end = len(text.splitlines())  # missing sections are reported at end of file
    if surface is None:
        raise DiagramParseError(MISSING_SECTION, seen.get("surface", end), "no [surface] given")
    if page is None:
        raise DiagramParseError(MISSING_SECTION, end, "no [page] section")
    if len(systems) < 2:
        raise DiagramParseError(MISSING_SECTION, end, "at least two [system NAME] blocks required")
    page_coll = SurfaceCollection(tuple(page))
    if page_coll.boundary != surface.boundary:
        raise DiagramParseError(
            MALFORMED_LINE, page_line,
            f"page has {page_coll.boundary} boundary circles, surface has {surface.boundary}",
        )

    cut_systems = [_build_system(surface, block) for block in systems]

    suture_t = None
    if suture is not None:
        b = surface.boundary
        if sorted(suture) != list(range(b)) or sorted(suture.values()) != list(range(b)):
            raise DiagramParseError(MALFORMED_LINE, suture_line, "suture is not a bijection")
        suture_t = tuple(suture[i] for i in range(b))
    return MultisectionDiagram(
        surface, tuple(cut_systems), page_coll, suture_t, tuple(s.name for s in systems)
    )


def _build_system(surface: Surface, block: _SystemBlock) -> CutSystem:
    classes = []
    for c in block.curves:
        try:
            classes.append(CurveClass.from_terms(surface, c.terms))
        except IndexError as exc:
            raise DiagramParseError(BASIS_OUT_OF_RANGE, c.line, str(exc)) from None
    glued = [c.glue is not None for c in block.curves]
    if block.pieces:
        if not all(glued):
            bad = block.curves[glued.index(False)]
            raise DiagramParseError(MALFORMED_LINE, bad.line, "curve needs glue= when pieces are given")
        trace = TracedMulticurve(
            tuple(block.pieces),
            tuple(Gluing(c.glue[0], c.glue[1], c.orient) for c in block.curves),
            class_of=dict(enumerate(classes)),
        )
    else:
        if any(glued):
            bad = block.curves[glued.index(True)]
            raise DiagramParseError(MALFORMED_LINE, bad.line, "glue= given but no pieces declared")
        try:
            trace = infer_trace(surface, classes)
        except ValueError as exc:
            raise DiagramParseError(MALFORMED_LINE, block.line, f"system {block.name}: {exc}") from None
    return CutSystem(surface, trace, tuple(classes))


def _class_text(c: CurveClass) -> str:
    t = c.terms()
    return ",".join(f"{s}:{v}" for s, v in t.items()) if t else "0"


def serialize_diagram(d: MultisectionDiagram, header: str | None = None) -> str:
    """Write a diagram with explicit piece data, so parsing it back is exact."""
    out = []
    if header:
        out.extend(f"# {line}" for line in header.splitlines())
    out += ["[surface]", f"genus={d.surface.genus} boundary={d.surface.boundary}", ""]
    for name, cs in zip(d.names, d.systems):
        out.append(f"[system {name}]")
        for p in cs.trace.pieces:
            out.append(f"piece genus={p.genus} scars={p.scars} boundary={p.boundary}")
        for i, (g, c) in enumerate(zip(cs.trace.curves, cs.classes)):
            sign = "+" if g.orient == 1 else "-"
            out.append(
                f"curve c{i + 1} class={_class_text(c)} "
                f"glue={g.side0[0]}.{g.side0[1]},{g.side1[0]}.{g.side1[1]} orient={sign}"
            )
        out.append("")
    out.append("[page]")
    if d.page.is_empty():
        out.append("empty")
    for s in d.page:
        out.append(f"component genus={s.genus} boundary={s.boundary}")
    if d.surface.boundary:
        out += ["", "[suture]"]
        out += [f"{i} {j}" for i, j in enumerate(d.suture)]
    return "\n".join(out) + "\n"


def parse_page_spec(spec: str) -> SurfaceCollection:
    """``"empty"`` or a comma list of ``genus:boundary`` pairs, e.g. ``"2:0,1:2"``."""
    spec = spec.strip()
    if spec == "empty":
        return SurfaceCollection()
    comps = []
    for part in spec.split(","):
        g, sep, b = part.strip().partition(":")
        if not sep or not (g.isascii() and g.isdigit() and b.isascii() and b.isdigit()):
            raise ValueError(f"bad page component {part!r}; expected genus:boundary")
        if int(g) > MAX_SIZE or int(b) > MAX_SIZE:
            raise ValueError(f"page component {part!r} too large")
        comps.append(Surface(int(g), int(b)))
    return SurfaceCollection(tuple(comps))
