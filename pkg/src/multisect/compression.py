"""Cut systems of compression bodies and standard double compression body diagrams.

A compression body ``C`` is encoded by a cut system on ``Σ = ∂+C``: a
traced multicurve together with the homology class of every curve.
Surgery along the whole system has to produce the negative boundary
``∂-C`` (the *page*), or a single sphere when the page is empty.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Sequence

from .curves import (
    Gluing,
    MalformedTrace,
    Piece,
    TracedMulticurve,
    reconstruct_surface,
    surger,
    validate_traced,
)
from .linalg import AbelianGroup, IntMatrix, rank, smith_normal_form
from .surface import (
    CurveClass,
    HostMismatch,
    Surface,
    SurfaceCollection,
    pairing_matrix,
    quotient_homology,
)

__all__ = [
    "CutSystem",
    "CutFailure",
    "CutVerdict",
    "MalformedCutSystem",
    "DoubleDiagram",
    "StandardnessFailure",
    "StandardnessReport",
    "validate_cut_system",
    "standard_double_diagram",
    "homological_standardness",
    "handleslide",
    "slide_system",
    "infer_trace",
]


class MalformedCutSystem(ValueError):
    pass


@dataclass(frozen=True)
class CutSystem:
    surface: Surface
    trace: TracedMulticurve
    classes: tuple[CurveClass, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "classes", tuple(self.classes))

    @classmethod
    def from_classes(cls, surface: Surface, classes: Sequence[CurveClass]) -> CutSystem:
        """Cut system whose trace is inferred from the classes, see :func:`infer_trace`."""
        return cls(surface, infer_trace(surface, classes), tuple(classes))

    def __len__(self) -> int:
        return len(self.classes)

    def problems(self) -> list[str]:
        """Internal consistency problems; empty when the system is well formed."""
        out = [f"trace: {p}" for p in validate_traced(self.trace)]
        if len(self.classes) != self.trace.num_curves:
            out.append(
                f"{len(self.classes)} classes for {self.trace.num_curves} traced curves"
            )
        for i, c in enumerate(self.classes):
            if c.host != self.surface:
                out.append(f"class {i} lives on {c.host}, not {self.surface}")
        if not out:
            try:
                rebuilt = reconstruct_surface(self.trace)
            except MalformedTrace as exc:
                out.append(str(exc))
            else:
                if rebuilt != SurfaceCollection((self.surface,)):
                    out.append(f"trace reconstructs {rebuilt}, not {self.surface}")
        return out

    def with_classes(self, classes: Sequence[CurveClass]) -> CutSystem:
        return CutSystem(self.surface, self.trace, tuple(classes))


class CutFailure(str, enum.Enum):
    SPHERE_IN_PAGE = "SPHERE_IN_PAGE"
    COMPONENT_MISMATCH = "COMPONENT_MISMATCH"
    EXCESS_SPHERES = "EXCESS_SPHERES"
    BOUNDARY_MISMATCH = "BOUNDARY_MISMATCH"
    NOT_SINGLE_SPHERE = "NOT_SINGLE_SPHERE"


@dataclass(frozen=True)
class CutVerdict:
    reason: CutFailure | None = None
    detail: str = ""

    @property
    def valid(self) -> bool:
        return self.reason is None

    def __bool__(self) -> bool:
        return self.valid

    def __str__(self) -> str:
        if self.valid:
            return "valid"
        return f"invalid {self.reason.value}" + (f" ({self.detail})" if self.detail else "")


def validate_cut_system(cs: CutSystem, page: SurfaceCollection) -> CutVerdict:
    """Check that surgery along ``cs`` yields ``page``.

    Raises :class:`MalformedCutSystem` if the cut system is not internally
    consistent; all other outcomes are returned as a :class:`CutVerdict`.
    """
    problems = cs.problems()
    if problems:
        raise MalformedCutSystem("; ".join(problems))
    result = surger(cs.trace, range(cs.trace.num_curves))
    if page.is_empty():
        if result == SurfaceCollection((Surface(0, 0),)):
            return CutVerdict()
        return CutVerdict(CutFailure.NOT_SINGLE_SPHERE, f"surgery gives {result}")
    if page.has_sphere():
        return CutVerdict(CutFailure.SPHERE_IN_PAGE, f"page {page}")
    if cs.surface.boundary != page.boundary:
        return CutVerdict(
            CutFailure.BOUNDARY_MISMATCH,
            f"surface has {cs.surface.boundary} boundary circles, page has {page.boundary}",
        )
    if result == page:
        return CutVerdict()
    if result.has_sphere() and result.without_spheres() == page:
        return CutVerdict(CutFailure.EXCESS_SPHERES, f"surgery gives {result}")
    return CutVerdict(CutFailure.COMPONENT_MISMATCH, f"surgery gives {result}, page is {page}")


def infer_trace(surface: Surface, classes: Sequence[CurveClass]) -> TracedMulticurve:
    """Guess the complement of a multicurve from homology classes alone.

    Only handles the unambiguous case: every class is nonzero, curves with
    equal class (up to sign) are parallel copies, and the distinct classes
    are isotropic and independent modulo the boundary, so together they do
    not separate. Anything else needs explicit piece data.
    """
    groups: list[tuple[CurveClass, list[int]]] = []
    for i, c in enumerate(classes):
        if c.host != surface:
            raise HostMismatch(f"class {i} lives on {c.host}, not {surface}")
        if c.is_zero():
            raise ValueError(f"curve {i} is null-homologous; piece data required")
        for rep, members in groups:
            if c == rep or c == -rep:
                members.append(i)
                break
        else:
            groups.append((c, [i]))
    reps = [rep for rep, _ in groups]
    closed_part = IntMatrix.from_rows(
        [[r.coefficients[i] for r in reps] for i in range(2 * surface.genus)], len(reps)
    )
    if rank(closed_part) < len(reps):
        raise ValueError("classes are dependent modulo the boundary; piece data required")
    if any(pairing_matrix(reps, reps).entries):
        raise ValueError("classes intersect algebraically; they cannot be disjoint")
    r = len(reps)
    pieces = [Piece(surface.genus - r, 2 * r, surface.boundary)]
    curves: list[Gluing | None] = [None] * len(classes)
    for j, (_, members) in enumerate(groups):
        prev: tuple[int, int] = (0, 2 * j)
        for idx in members[:-1]:
            pieces.append(Piece(0, 2, 0))
            curves[idx] = Gluing(prev, (len(pieces) - 1, 0))
            prev = (len(pieces) - 1, 1)
        curves[members[-1]] = Gluing(prev, (0, 2 * j + 1))
    return TracedMulticurve(
        tuple(pieces), tuple(curves), class_of=dict(enumerate(classes))
    )


# -- standard diagrams -------------------------------------------------------


@dataclass(frozen=True)
class DoubleDiagram:
    surface: Surface
    alpha: CutSystem
    beta: CutSystem
    page: SurfaceCollection
    k: int
    stabilizations: int


def _boundary_circle_class(host: Surface, idx: int) -> CurveClass:
    # the last boundary circle is minus the sum of the others
    if idx < host.boundary - 1:
        return CurveClass.basis(host, f"d{idx + 1}")
    total = CurveClass.zero(host)
    for j in range(1, host.boundary):
        total = total + CurveClass.basis(host, f"d{j}")
    return -total


def standard_double_diagram(page: SurfaceCollection, k: int, stabilizations: int) -> DoubleDiagram:
    """The standard diagram of ``#(P x I) # (#^k S1 x S2)``, stabilized ``s`` times.

    Page components are joined in a chain by separating tubes (one parallel
    alpha/beta pair each), every ``S1 x S2`` summand contributes a parallel
    non-separating pair and every stabilization a pair meeting once. Handle
    curves all sit on the first page component (or on the sphere when the
    page is empty).
    """
    if k < 0 or stabilizations < 0:
        raise ValueError("k and stabilizations must be nonnegative")
    if page.has_sphere():
        raise ValueError(f"page {page} contains a sphere component")
    comps = list(page.components) or [Surface(0, 0)]
    c = len(comps)
    s = stabilizations
    surface = Surface(page.genus + k + s, page.boundary)

    # scar slots on each page piece: [tube to previous][tube to next][handles...]
    scars = [int(i > 0) + int(i < c - 1) for i in range(c)]
    scars[0] += 2 * (k + s)
    pieces = tuple(Piece(f.genus, n, f.boundary) for f, n in zip(comps, scars))
    tube_gluings = [
        # the "next" slot of piece i is 0 for the first piece, 1 otherwise
        Gluing((i, int(i > 0)), (i + 1, 0))
        for i in range(c - 1)
    ]
    first = int(c > 1)
    handle_gluings = [
        Gluing((0, first + 2 * h), (0, first + 2 * h + 1)) for h in range(k + s)
    ]
    gluings = tuple(tube_gluings + handle_gluings)
    trace = TracedMulticurve(pieces, gluings)

    tubes = []
    circle = 0
    side = CurveClass.zero(surface)
    for f in comps[:-1]:
        for _ in range(f.boundary):
            side = side + _boundary_circle_class(surface, circle)
            circle += 1
        tubes.append(side)
    base = page.genus
    a = [CurveClass.basis(surface, f"a{base + h + 1}") for h in range(k + s)]
    b = [CurveClass.basis(surface, f"b{base + h + 1}") for h in range(k, k + s)]
    alpha = CutSystem(surface, trace, tuple(tubes + a))
    beta = CutSystem(surface, trace, tuple(tubes + a[:k] + b))
    return DoubleDiagram(surface, alpha, beta, page, k, s)


# -- homological certificate -------------------------------------------------


class StandardnessFailure(str, enum.Enum):
    CUT_SYSTEM_INVALID = "CUT_SYSTEM_INVALID"
    SNF_NOT_STANDARD = "SNF_NOT_STANDARD"
    H1_MISMATCH = "H1_MISMATCH"
    GENUS_LADDER_VIOLATION = "GENUS_LADDER_VIOLATION"


CERTIFICATE_CAVEAT = (
    "homological necessary conditions only; passing does not prove the pair "
    "is handleslide diffeomorphic to the standard diagram"
)


@dataclass(frozen=True)
class StandardnessReport:
    verdict: bool
    detected_stabilizations: int | None
    failures: tuple[StandardnessFailure, ...] = ()
    k: int | None = None
    snf_diagonal: tuple[int, ...] = ()
    h1: AbelianGroup | None = None
    details: tuple[str, ...] = ()
    caveat: str = field(default=CERTIFICATE_CAVEAT, repr=False)

    def __post_init__(self) -> None:
        if self.verdict and self.failures:
            raise ValueError("a passing report cannot carry failures")


def _leading_ones(diag: Sequence[int]) -> int | None:
    s = 0
    while s < len(diag) and diag[s] == 1:
        s += 1
    if any(diag[s:]):
        return None
    return s


def homological_standardness(
    surface: Surface, alpha: CutSystem, beta: CutSystem, page: SurfaceCollection
) -> StandardnessReport:
    """Certificate that ``(surface; alpha, beta)`` looks like a standard double diagram.

    Checks both cut systems against the page, that the Smith form of the
    alpha/beta intersection matrix is ``s`` ones followed by zeros, that the
    derived ``k = g(surface) - g(page) - s`` is nonnegative, and that
    ``H_1(surface) / <alpha, beta>`` matches ``H_1(page) + Z^k``.
    """
    if alpha.surface != surface or beta.surface != surface:
        raise HostMismatch("alpha and beta must both live on the given surface")
    failures: list[StandardnessFailure] = []
    details: list[str] = []
    for name, cs in (("alpha", alpha), ("beta", beta)):
        try:
            verdict = validate_cut_system(cs, page)
        except MalformedCutSystem as exc:
            failures.append(StandardnessFailure.CUT_SYSTEM_INVALID)
            details.append(f"{name}: malformed ({exc})")
            continue
        if not verdict:
            failures.append(StandardnessFailure.CUT_SYSTEM_INVALID)
            details.append(f"{name}: {verdict}")
    # both systems failing is still one failure tag
    failures = list(dict.fromkeys(failures))

    m = pairing_matrix(alpha.classes, beta.classes)
    diag = tuple(smith_normal_form(m)[1].diagonal_entries())
    s = _leading_ones(diag)
    k = None
    h1 = quotient_homology(surface, alpha.classes + beta.classes)
    if s is None:
        failures.append(StandardnessFailure.SNF_NOT_STANDARD)
        details.append(f"pairing SNF diagonal {list(diag)}")
    else:
        k = surface.genus - page.genus - s
        if k < 0:
            failures.append(StandardnessFailure.GENUS_LADDER_VIOLATION)
            details.append(f"g(surface)={surface.genus} < g(page)+s={page.genus + s}")
            k = None
        else:
            expected = page.first_homology() + AbelianGroup.free(k)
            if h1 != expected:
                failures.append(StandardnessFailure.H1_MISMATCH)
                details.append(f"H1 of double is {h1}, expected {expected}")
    return StandardnessReport(
        verdict=not failures,
        detected_stabilizations=s,
        failures=tuple(failures),
        k=k,
        snf_diagonal=diag,
        h1=h1,
        details=tuple(details),
    )


# -- handleslides ------------------------------------------------------------


def handleslide(classes: Sequence[CurveClass], j: int, l: int, sign: int) -> tuple[CurveClass, ...]:
    """Slide curve ``j`` over curve ``l``: ``class_j += sign * class_l``."""
    if j == l:
        raise ValueError("cannot slide a curve over itself")
    if sign not in (1, -1):
        raise ValueError(f"sign must be +1 or -1, got {sign}")
    n = len(classes)
    if not (0 <= j < n and 0 <= l < n):
        raise IndexError(f"slide indices ({j}, {l}) out of range for {n} curves")
    if classes[j].host != classes[l].host:
        raise HostMismatch("curves live on different surfaces")
    out = list(classes)
    out[j] = classes[j] + sign * classes[l]
    return tuple(out)


def slide_system(cs: CutSystem, j: int, l: int, sign: int) -> CutSystem:
    """Homological handleslide inside a cut system; the trace is kept as is."""
    return cs.with_classes(handleslide(cs.classes, j, l, sign))

