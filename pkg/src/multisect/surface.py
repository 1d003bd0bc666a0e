"""Compact oriented surfaces and their first homology.

Homology classes are written in the fixed basis

    a1, b1, ..., ag, bg, d1, ..., d(b-1)

where ``(ai, bi)`` is a symplectic pair with ``<ai, bi> = +1`` and ``dj`` is
the class of the j-th boundary circle. The last boundary circle is omitted
since the sum of all boundary circles is null-homologous.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from .linalg import AbelianGroup, IntMatrix, cokernel, gcd_all

__all__ = [
    "Surface",
    "SurfaceCollection",
    "CurveClass",
    "HostMismatch",
    "intersection_pairing",
    "quotient_homology",
    "is_primitive",
    "pairing_matrix",
]


class HostMismatch(ValueError):
    """Two curve classes live on different surfaces."""


@dataclass(frozen=True, order=True)
class Surface:
    """Connected compact oriented surface of the given genus with ``boundary`` holes."""

    genus: int
    boundary: int = 0

    def __post_init__(self) -> None:
        if self.genus < 0 or self.boundary < 0:
            raise ValueError(f"negative surface data ({self.genus}, {self.boundary})")

    def euler_characteristic(self) -> int:
        return 2 - 2 * self.genus - self.boundary

    @property
    def h1_rank(self) -> int:
        return 2 * self.genus + max(self.boundary - 1, 0)

    def is_sphere(self) -> bool:
        return self.genus == 0 and self.boundary == 0

    def basis_symbols(self) -> list[str]:
        out = []
        for i in range(1, self.genus + 1):
            out += [f"a{i}", f"b{i}"]
        out += [f"d{j}" for j in range(1, self.boundary)]
        return out

    def first_homology(self) -> AbelianGroup:
        return AbelianGroup.free(self.h1_rank)

    def __str__(self) -> str:
        return f"S({self.genus},{self.boundary})"


@dataclass(frozen=True)
class SurfaceCollection:
    """A finite multiset of connected surfaces (possibly empty).

    Components are kept sorted, so equality is multiset equality.
    """

    components: tuple[Surface, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "components", tuple(sorted(self.components)))

    @classmethod
    def of(cls, *pairs: tuple[int, int]) -> SurfaceCollection:
        return cls(tuple(Surface(g, b) for g, b in pairs))

    def __iter__(self):
        return iter(self.components)

    def __len__(self) -> int:
        return len(self.components)

    def is_empty(self) -> bool:
        return not self.components

    @property
    def genus(self) -> int:
        return sum(s.genus for s in self.components)

    @property
    def boundary(self) -> int:
        return sum(s.boundary for s in self.components)

    def euler_characteristic(self) -> int:
        return sum(s.euler_characteristic() for s in self.components)

    def sphere_count(self) -> int:
        return sum(1 for s in self.components if s.is_sphere())

    def has_sphere(self) -> bool:
        return self.sphere_count() > 0

    def without_spheres(self) -> SurfaceCollection:
        return SurfaceCollection(tuple(s for s in self.components if not s.is_sphere()))

    def first_homology(self) -> AbelianGroup:
        return AbelianGroup.free(sum(s.h1_rank for s in self.components))

    def __str__(self) -> str:
        if not self.components:
            return "empty"
        return " + ".join(str(s) for s in self.components)


_SYMBOL = re.compile(r"^([abd])(\d+)$")


@dataclass(frozen=True)
class CurveClass:
    """An element of H_1 of ``host``, as a coefficient vector in the fixed basis."""

    host: Surface
    coefficients: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "coefficients", tuple(int(c) for c in self.coefficients))
        if len(self.coefficients) != self.host.h1_rank:
            raise ValueError(
                f"{self.host} needs {self.host.h1_rank} coefficients, "
                f"got {len(self.coefficients)}"
            )

    @classmethod
    def zero(cls, host: Surface) -> CurveClass:
        return cls(host, (0,) * host.h1_rank)

    @classmethod
    def from_terms(cls, host: Surface, terms: Mapping[str, int]) -> CurveClass:
        """Build a class from ``{"a1": 1, "b2": -3, ...}``."""
        coeffs = [0] * host.h1_rank
        for sym, c in terms.items():
            coeffs[symbol_index(host, sym)] += c
        return cls(host, tuple(coeffs))

    @classmethod
    def basis(cls, host: Surface, symbol: str) -> CurveClass:
        return cls.from_terms(host, {symbol: 1})

    def terms(self) -> dict[str, int]:
        return {
            s: c for s, c in zip(self.host.basis_symbols(), self.coefficients) if c
        }

    def _check(self, other: CurveClass) -> None:
        if self.host != other.host:
            raise HostMismatch(f"classes on {self.host} and {other.host}")

    def __add__(self, other: CurveClass) -> CurveClass:
        self._check(other)
        return CurveClass(self.host, tuple(x + y for x, y in zip(self.coefficients, other.coefficients)))

    def __neg__(self) -> CurveClass:
        return CurveClass(self.host, tuple(-x for x in self.coefficients))

    def __sub__(self, other: CurveClass) -> CurveClass:
        return self + (-other)

    def __mul__(self, k: int) -> CurveClass:
        return CurveClass(self.host, tuple(k * x for x in self.coefficients))

    __rmul__ = __mul__

    def is_zero(self) -> bool:
        return not any(self.coefficients)

    def __str__(self) -> str:
        t = self.terms()
        if not t:
            return "0"
        return ",".join(f"{s}:{c}" for s, c in t.items())


def symbol_index(host: Surface, symbol: str) -> int:
    """Position of a basis symbol such as ``b2`` in the coefficient vector."""
    m = _SYMBOL.match(symbol)
    if not m:
        raise ValueError(f"not a basis symbol: {symbol!r}")
    kind, idx = m.group(1), int(m.group(2))
    if kind in "ab":
        if not 1 <= idx <= host.genus:
            raise IndexError(f"{symbol} out of range for genus {host.genus}")
        return 2 * (idx - 1) + (kind == "b")
    if not 1 <= idx <= host.boundary - 1:
        raise IndexError(f"{symbol} out of range for {host.boundary} boundary circles")
    return 2 * host.genus + idx - 1


def intersection_pairing(x: CurveClass, y: CurveClass) -> int:
    """Algebraic intersection number ``<x, y>``; boundary classes pair trivially."""
    x._check(y)
    total = 0
    for i in range(x.host.genus):
        xa, xb = x.coefficients[2 * i], x.coefficients[2 * i + 1]
        ya, yb = y.coefficients[2 * i], y.coefficients[2 * i + 1]
        total += xa * yb - xb * ya
    return total


def pairing_matrix(xs: Sequence[CurveClass], ys: Sequence[CurveClass]) -> IntMatrix:
    """Matrix with entry ``(i, j) = <xs[i], ys[j]>``."""
    return IntMatrix.from_rows(
        [[intersection_pairing(x, y) for y in ys] for x in xs], len(ys)
    )


def class_matrix(host: Surface, classes: Iterable[CurveClass]) -> IntMatrix:
    """Coefficient vectors of ``classes`` as the columns of a matrix."""
    classes = list(classes)
    for c in classes:
        if c.host != host:
            raise HostMismatch(f"class on {c.host}, expected {host}")
    return IntMatrix.from_rows(
        [[c.coefficients[i] for c in classes] for i in range(host.h1_rank)], len(classes)
    )


def quotient_homology(host: Surface, classes: Iterable[CurveClass]) -> AbelianGroup:
    """``H_1(host) / <classes>``."""
    return cokernel(class_matrix(host, classes))


def is_primitive(x: CurveClass) -> bool:
    return gcd_all(x.coefficients) == 1
