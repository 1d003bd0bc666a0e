"""Disjoint multicurves stored by their complement.

A :class:`TracedMulticurve` records the pieces of a surface cut open along a
family of disjoint simple closed curves. Each piece is a connected surface
with some *scar* circles (left behind by the cut) and some true boundary
circles; each curve glues two scar slots back together. Cutting, regluing
and surgery then reduce to graph connectivity and Euler characteristic
bookkeeping, and no crossing data is ever needed.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping

from .surface import CurveClass, Surface, SurfaceCollection

__all__ = [
    "Piece",
    "Gluing",
    "TracedMulticurve",
    "MalformedTrace",
    "validate_traced",
    "reconstruct_surface",
    "surger",
    "cut_pieces",
]


class MalformedTrace(ValueError):
    pass


@dataclass(frozen=True)
class Piece:
    genus: int
    scars: int
    boundary: int = 0

    def euler_characteristic(self) -> int:
        return 2 - 2 * self.genus - self.scars - self.boundary


Slot = tuple[int, int]  # (piece index, scar slot on that piece)


@dataclass(frozen=True)
class Gluing:
    """A curve, seen as the identification of two scar slots.

    ``orient = +1`` means the two pieces' orientations agree across the
    curve; ``-1`` means one of them has to be flipped.
    """

    side0: Slot
    side1: Slot
    orient: int = 1


@dataclass(frozen=True)
class TracedMulticurve:
    pieces: tuple[Piece, ...]
    curves: tuple[Gluing, ...] = ()
    class_of: Mapping[int, CurveClass] | None = field(default=None, compare=False)

    def __post_init__(self) -> None:
        object.__setattr__(
            self, "pieces", tuple(p if isinstance(p, Piece) else Piece(*p) for p in self.pieces)
        )
        object.__setattr__(
            self, "curves",
            tuple(c if isinstance(c, Gluing) else Gluing(*c) for c in self.curves),
        )

    @property
    def num_curves(self) -> int:
        return len(self.curves)


def validate_traced(t: TracedMulticurve) -> list[str]:
    """Return a list of human-readable violations; empty means valid."""
    problems = []
    for i, p in enumerate(t.pieces):
        if p.genus < 0 or p.scars < 0 or p.boundary < 0:
            problems.append(f"piece {i} has negative data {(p.genus, p.scars, p.boundary)}")
    used: dict[Slot, int] = {}
    for ci, c in enumerate(t.curves):
        if c.orient not in (1, -1):
            problems.append(f"curve {ci} has orientation sign {c.orient!r}, expected +1 or -1")
        for slot in (c.side0, c.side1):
            pi, si = slot
            if not 0 <= pi < len(t.pieces):
                problems.append(f"curve {ci} refers to missing piece {pi}")
                continue
            if not 0 <= si < max(t.pieces[pi].scars, 0):
                problems.append(f"curve {ci} refers to missing scar slot {si} on piece {pi}")
                continue
            if slot in used:
                problems.append(f"scar slot used twice: {slot} (curves {used[slot]} and {ci})")
            else:
                used[slot] = ci
    for pi, p in enumerate(t.pieces):
        for si in range(max(p.scars, 0)):
            if (pi, si) not in used:
                problems.append(f"scar slot {(pi, si)} is not glued")
    if not problems and not _orientable(t):
        problems.append("orientation signs are inconsistent (non-orientable gluing)")
    if t.class_of is not None:
        for k in t.class_of:
            if not 0 <= k < len(t.curves):
                problems.append(f"class annotation for missing curve {k}")
    return problems


def _orientable(t: TracedMulticurve) -> bool:
    # 2-colour the pieces so every gluing sign equals the product of colours.
    adj: dict[int, list[tuple[int, int]]] = {i: [] for i in range(len(t.pieces))}
    for c in t.curves:
        a, b = c.side0[0], c.side1[0]
        adj[a].append((b, c.orient))
        adj[b].append((a, c.orient))
    colour: dict[int, int] = {}
    for start in adj:
        if start in colour:
            continue
        colour[start] = 1
        stack = [start]
        while stack:
            p = stack.pop()
            for q, sign in adj[p]:
                want = colour[p] * sign
                if q not in colour:
                    colour[q] = want
                    stack.append(q)
                elif colour[q] != want:
                    return False
    return True


def _require_valid(t: TracedMulticurve) -> None:
    problems = validate_traced(t)
    if problems:
        raise MalformedTrace("; ".join(problems))


def _components(n: int, edges: Iterable[tuple[int, int]]) -> list[list[int]]:
    parent = list(range(n))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for a, b in edges:
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[ra] = rb
    groups: dict[int, list[int]] = {}
    for i in range(n):
        groups.setdefault(find(i), []).append(i)
    return list(groups.values())


def _glue(t: TracedMulticurve, keep: set[int]) -> SurfaceCollection:
    """Reglue the kept curves and cap every other scar slot with a disk."""
    capped = [0] * len(t.pieces)
    for ci, c in enumerate(t.curves):
        if ci not in keep:
            capped[c.side0[0]] += 1
            capped[c.side1[0]] += 1
    edges = [(t.curves[ci].side0[0], t.curves[ci].side1[0]) for ci in keep]
    out = []
    for comp in _components(len(t.pieces), edges):
        # gluing two circles together leaves the Euler characteristic unchanged
        chi = sum(t.pieces[p].euler_characteristic() + capped[p] for p in comp)
        boundary = sum(t.pieces[p].boundary for p in comp)
        twice_genus = 2 - chi - boundary
        if twice_genus % 2 or twice_genus < 0:
            raise MalformedTrace(f"component with chi={chi}, boundary={boundary} has no genus")
        out.append(Surface(twice_genus // 2, boundary))
    return SurfaceCollection(tuple(out))


def reconstruct_surface(t: TracedMulticurve) -> SurfaceCollection:
    """The surface obtained by regluing every curve."""
    _require_valid(t)
    return _glue(t, set(range(len(t.curves))))


def surger(t: TracedMulticurve, which: Iterable[int]) -> SurfaceCollection:
    """Surger along the curves in ``which``: cut them open and cap both sides."""
    _require_valid(t)
    which = set(which)
    for ci in which:
        if not 0 <= ci < len(t.curves):
            raise IndexError(f"curve index {ci} out of range")
    return _glue(t, set(range(len(t.curves))) - which)


def cut_pieces(t: TracedMulticurve) -> SurfaceCollection:
    """The cut-open surface; scars become ordinary boundary circles."""
    _require_valid(t)
    return SurfaceCollection(tuple(Surface(p.genus, p.scars + p.boundary) for p in t.pieces))
