"""Multisection diagrams of compact 4-manifolds and their diagram-level invariants.

A diagram is a central surface with ``n >= 2`` cut systems, a page ``P``
and a suture identifying the boundary circles of the surface with those of
the page. Sector ``i`` is bounded by the double of the cyclically
consecutive pair of systems, and each pair must look like a standard
double compression body diagram.

Only the combinatorial conditions are checked. Smoothness of corners and
strata has no diagram-level content and is taken as structurally implied.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .compression import (
    CutSystem,
    CutVerdict,
    MalformedCutSystem,
    StandardnessReport,
    homological_standardness,
    standard_double_diagram,
    validate_cut_system,
)
from .linalg import AbelianGroup
from .surface import CurveClass, Surface, SurfaceCollection, quotient_homology

__all__ = [
    "MultisectionDiagram",
    "DiagramReport",
    "InvalidDiagram",
    "validate_diagram",
    "euler_characteristic_of_X",
    "first_homology_of_X",
    "build_standard_multisection",
    "xn_diagram",
    "SPHERE_IN_PAGE",
]

SPHERE_IN_PAGE = "SPHERE_IN_PAGE"
CUT_SYSTEM_MALFORMED = "CUT_SYSTEM_MALFORMED"
CUT_SYSTEM_INVALID = "CUT_SYSTEM_INVALID"
PAIR_NOT_STANDARD = "PAIR_NOT_STANDARD"


class InvalidDiagram(ValueError):
    pass


@dataclass(frozen=True)
class MultisectionDiagram:
    surface: Surface
    systems: tuple[CutSystem, ...]
    page: SurfaceCollection
    suture: tuple[int, ...] | None = None
    names: tuple[str, ...] | None = field(default=None, compare=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "systems", tuple(self.systems))
        if len(self.systems) < 2:
            raise ValueError("a multisection diagram needs at least two cut systems")
        for i, cs in enumerate(self.systems):
            if cs.surface != self.surface:
                raise ValueError(f"system {i} lives on {cs.surface}, not {self.surface}")
        b = self.surface.boundary
        if b != self.page.boundary:
            raise ValueError(
                f"surface has {b} boundary circles but the page has {self.page.boundary}"
            )
        suture = tuple(range(b)) if self.suture is None else tuple(self.suture)
        if sorted(suture) != list(range(b)):
            raise ValueError(f"suture {list(suture)} is not a bijection of {b} circles")
        object.__setattr__(self, "suture", suture)
        if self.names is None:
            object.__setattr__(
                self, "names", tuple(f"alpha{i + 1}" for i in range(len(self.systems)))
            )
        elif len(self.names) != len(self.systems):
            raise ValueError("one name per system required")

    @property
    def n(self) -> int:
        return len(self.systems)

    def pairs(self) -> list[tuple[int, int]]:
        """Index pairs of consecutive systems, ``(0, 1), (1, 2), ..., (n-1, 0)``."""
        return [(i, (i + 1) % self.n) for i in range(self.n)]

    def all_classes(self) -> list[CurveClass]:
        return [c for cs in self.systems for c in cs.classes]

    def replace_system(self, i: int, cs: CutSystem) -> MultisectionDiagram:
        systems = list(self.systems)
        systems[i] = cs
        return MultisectionDiagram(self.surface, tuple(systems), self.page, self.suture, self.names)

    def rotated(self, shift: int = 1) -> MultisectionDiagram:
        shift %= self.n
        return MultisectionDiagram(
            self.surface,
            self.systems[shift:] + self.systems[:shift],
            self.page,
            self.suture,
            self.names[shift:] + self.names[:shift],
        )


@dataclass(frozen=True)
class DiagramReport:
    verdict: bool
    failures: tuple[str, ...] = ()
    per_system: tuple[CutVerdict | str, ...] = ()
    per_pair: tuple[StandardnessReport, ...] = ()
    k: tuple[int | None, ...] = ()
    s: tuple[int | None, ...] = ()
    euler_characteristic: int | None = None
    h1: AbelianGroup | None = None


def validate_diagram(d: MultisectionDiagram) -> DiagramReport:
    """Run every diagram-level check and collect the results.

    A page with a sphere component is rejected immediately, before any
    other check runs.
    """
    if d.page.has_sphere():
        return DiagramReport(False, (SPHERE_IN_PAGE,))

    failures: list[str] = []
    per_system: list[CutVerdict | str] = []
    for name, cs in zip(d.names, d.systems):
        try:
            verdict = validate_cut_system(cs, d.page)
        except MalformedCutSystem as exc:
            per_system.append(f"malformed: {exc}")
            failures.append(f"{CUT_SYSTEM_MALFORMED}:{name}")
            continue
        per_system.append(verdict)
        if not verdict:
            failures.append(f"{CUT_SYSTEM_INVALID}:{name}:{verdict.reason.value}")

    cache: dict[frozenset, StandardnessReport] = {}
    per_pair = []
    for i, j in d.pairs():
        key = frozenset((i, j))
        if key not in cache:
            cache[key] = homological_standardness(
                d.surface, d.systems[i], d.systems[j], d.page
            )
        report = cache[key]
        per_pair.append(report)
        if not report.verdict:
            tags = ",".join(f.value for f in report.failures)
            failures.append(f"{PAIR_NOT_STANDARD}:{d.names[i]}/{d.names[j]}:{tags}")

    ks = tuple(r.k if r.verdict else None for r in per_pair)
    ss = tuple(r.detected_stabilizations if r.verdict else None for r in per_pair)
    ok = not failures
    return DiagramReport(
        verdict=ok,
        failures=tuple(failures),
        per_system=tuple(per_system),
        per_pair=tuple(per_pair),
        k=ks,
        s=ss,
        euler_characteristic=_euler(d, ks) if ok else None,
        h1=quotient_homology(d.surface, d.all_classes()) if ok else None,
    )


def _euler(d: MultisectionDiagram, ks: Sequence[int]) -> int:
    chi_surface = d.surface.euler_characteristic()
    if d.page.is_empty():
        chi_base, capped = 1, 1  # a 4-ball; surgery on each system leaves one sphere
    else:
        # P x D^2 plus the 1-handles joining its components into one sector
        chi_base, capped = d.page.euler_characteristic() - (len(d.page) - 1), 0
    sectors = sum(chi_base - k for k in ks)
    bodies = sum(chi_surface + len(cs) - capped for cs in d.systems)
    return sectors - bodies + chi_surface


def _require_valid(d: MultisectionDiagram) -> DiagramReport:
    report = validate_diagram(d)
    if not report.verdict:
        raise InvalidDiagram("; ".join(report.failures))
    return report


def euler_characteristic_of_X(d: MultisectionDiagram) -> int:
    """Euler characteristic of the 4-manifold, by inclusion-exclusion over the pieces."""
    return _require_valid(d).euler_characteristic


def first_homology_of_X(d: MultisectionDiagram) -> AbelianGroup:
    """``H_1(Σ)`` modulo the classes of every cut system.

    This relies on the inclusion of the central surface being surjective on
    H_1 through every sector, which is standard for trisections and is not
    re-derived here.
    """
    _require_valid(d)
    return quotient_homology(d.surface, d.all_classes())


def build_standard_multisection(
    page: SurfaceCollection, k: int | Sequence[int], n: int
) -> MultisectionDiagram:
    """Diagram with ``n`` copies of the standard alpha system; every sector has ``k`` 1-handles."""
    if n < 2:
        raise ValueError("need at least two sectors")
    if isinstance(k, int):
        ks = [k] * n
    else:
        ks = list(k)
        if len(ks) != n:
            raise ValueError(f"{len(ks)} values of k for {n} sectors")
        if len(set(ks)) != 1:
            raise ValueError(
                f"k = {ks} is not realizable with parallel systems; all k_i must agree"
            )
    double = standard_double_diagram(page, ks[0], 0)
    return MultisectionDiagram(double.surface, (double.alpha,) * n, page)


def xn_diagram() -> tuple[MultisectionDiagram, SurfaceCollection]:
    """The common trisection diagram of the X_n family, with the page it would need.

    Three parallel copies of ``a1`` on the torus. The 3-dimensional pieces of
    those trisections are punctured solid tori, whose negative boundary is a
    sphere; the returned diagram carries that page and is only meant to be
    rejected by :func:`validate_diagram`.
    """
    torus = Surface(1, 0)
    a = CurveClass.basis(torus, "a1")
    system = CutSystem.from_classes(torus, [a])
    page = SurfaceCollection((Surface(0, 0),))
    return MultisectionDiagram(torus, (system,) * 3, page), page
