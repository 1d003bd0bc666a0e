"""Exact integer matrices, Smith normal form and finitely generated abelian groups.

Everything here works on Python ints; there is no floating point anywhere.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Iterable, Sequence

__all__ = [
    "IntMatrix",
    "AbelianGroup",
    "smith_normal_form",
    "cokernel",
    "groups_isomorphic",
    "rank",
]


@dataclass(frozen=True)
class IntMatrix:
    """Immutable integer matrix stored row-major."""

    rows: int
    cols: int
    entries: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.rows < 0 or self.cols < 0:
            raise ValueError("matrix dimensions must be nonnegative")
        if len(self.entries) != self.rows * self.cols:
            raise ValueError(
                f"expected {self.rows * self.cols} entries, got {len(self.entries)}"
            )
        for x in self.entries:
            if not isinstance(x, int) or isinstance(x, bool):
                raise TypeError(f"matrix entries must be int, got {type(x).__name__}")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], cols: int | None = None) -> IntMatrix:
        rows = [list(r) for r in rows]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        for r in rows:
            if len(r) != cols:
                raise ValueError("ragged rows")
        return cls(len(rows), cols, tuple(int(x) for r in rows for x in r))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> IntMatrix:
        return cls(rows, cols, (0,) * (rows * cols))

    @classmethod
    def identity(cls, n: int) -> IntMatrix:
        return cls(n, n, tuple(int(i == j) for i in range(n) for j in range(n)))

    @classmethod
    def diagonal(cls, values: Sequence[int], rows: int | None = None,
                 cols: int | None = None) -> IntMatrix:
        rows = len(values) if rows is None else rows
        cols = len(values) if cols is None else cols
        data = [[0] * cols for _ in range(rows)]
        for i, v in enumerate(values):
            data[i][i] = v
        return cls.from_rows(data, cols)

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        if not (0 <= i < self.rows and 0 <= j < self.cols):
            raise IndexError(ij)
        return self.entries[i * self.cols + j]

    def to_rows(self) -> list[list[int]]:
        c = self.cols
        return [list(self.entries[i * c:(i + 1) * c]) for i in range(self.rows)]

    def column(self, j: int) -> list[int]:
        return [self[i, j] for i in range(self.rows)]

    def transpose(self) -> IntMatrix:
        return IntMatrix.from_rows(
            [[self[i, j] for i in range(self.rows)] for j in range(self.cols)], self.rows
        )

    def __matmul__(self, other: IntMatrix) -> IntMatrix:
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        a = self.to_rows()
        b = other.to_rows()
        out = [
            [sum(a[i][t] * b[t][j] for t in range(self.cols)) for j in range(other.cols)]
            for i in range(self.rows)
        ]
        return IntMatrix.from_rows(out, other.cols)

    def is_zero(self) -> bool:
        return not any(self.entries)

    def is_diagonal(self) -> bool:
        return all(
            self[i, j] == 0 for i in range(self.rows) for j in range(self.cols) if i != j
        )

    def diagonal_entries(self) -> list[int]:
        return [self[i, i] for i in range(min(self.rows, self.cols))]

    def determinant(self) -> int:
        """Fraction-free (Bareiss) determinant of a square matrix."""
        if self.rows != self.cols:
            raise ValueError("determinant of a non-square matrix")
        n = self.rows
        if n == 0:
            return 1
        a = self.to_rows()
        sign = 1
        prev = 1
        for k in range(n - 1):
            if a[k][k] == 0:
                for i in range(k + 1, n):
                    if a[i][k] != 0:
                        a[k], a[i] = a[i], a[k]
                        sign = -sign
                        break
                else:
                    return 0
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            prev = a[k][k]
        return sign * a[n - 1][n - 1]

    def __str__(self) -> str:
        if self.rows == 0 or self.cols == 0:
            return f"[] ({self.rows}x{self.cols})"
        width = max(len(str(x)) for x in self.entries)
        return "\n".join(" ".join(str(x).rjust(width) for x in r) for r in self.to_rows())


def _min_nonzero(a: list[list[int]], start: int, rows: int, cols: int):
    best = None
    for i in range(start, rows):
        for j in range(start, cols):
            x = a[i][j]
            if x and (best is None or abs(x) < best[0]):
                best = (abs(x), i, j)
                if best[0] == 1:
                    return best
    return best


def smith_normal_form(m: IntMatrix) -> tuple[IntMatrix, IntMatrix, IntMatrix]:
    """Return ``(U, S, V)`` with ``S = U @ m @ V`` in Smith normal form.

    ``U`` and ``V`` are unimodular, ``S`` is diagonal with nonnegative
    entries forming a divisibility chain. Pivots are chosen with minimal
    absolute value to keep intermediate coefficients small.
    """
    rows, cols = m.shape
    a = m.to_rows()
    u = IntMatrix.identity(rows).to_rows()
    v = IntMatrix.identity(cols).to_rows()

    def swap_rows(i: int, k: int) -> None:
        a[i], a[k] = a[k], a[i]
        u[i], u[k] = u[k], u[i]

    def swap_cols(j: int, k: int) -> None:
        for r in a:
            r[j], r[k] = r[k], r[j]
        for r in v:
            r[j], r[k] = r[k], r[j]

    def add_row(dst: int, src: int, q: int) -> None:
        # row_dst += q * row_src
        a[dst] = [x + q * y for x, y in zip(a[dst], a[src])]
        u[dst] = [x + q * y for x, y in zip(u[dst], u[src])]

    def add_col(dst: int, src: int, q: int) -> None:
        for r in a:
            r[dst] += q * r[src]
        for r in v:
            r[dst] += q * r[src]

    t = 0
    while t < min(rows, cols):
        pivot = _min_nonzero(a, t, rows, cols)
        if pivot is None:
            break
        _, pi, pj = pivot
        swap_rows(t, pi)
        swap_cols(t, pj)
        while True:
            p = a[t][t]
            dirty = False
            for i in range(t + 1, rows):
                if a[i][t]:
                    add_row(i, t, -(a[i][t] // p))
                    dirty = dirty or a[i][t] != 0
            for j in range(t + 1, cols):
                if a[t][j]:
                    add_col(j, t, -(a[t][j] // p))
                    dirty = dirty or a[t][j] != 0
            if dirty:
                # a remainder smaller than the pivot survived; promote it
                best = None
                for i in range(t + 1, rows):
                    if a[i][t] and (best is None or abs(a[i][t]) < best[0]):
                        best = (abs(a[i][t]), i, t)
                for j in range(t + 1, cols):
                    if a[t][j] and (best is None or abs(a[t][j]) < best[0]):
                        best = (abs(a[t][j]), t, j)
                _, bi, bj = best
                if bi != t:
                    swap_rows(t, bi)
                else:
                    swap_cols(t, bj)
                continue
            # row and column cleared; enforce divisibility of the remainder
            bad = next(
                (i for i in range(t + 1, rows)
                 for j in range(t + 1, cols) if a[i][j] % p),
                None,
            )
            if bad is None:
                break
            add_row(t, bad, 1)
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            u[t] = [-x for x in u[t]]
        t += 1

    return (
        IntMatrix.from_rows(u, rows),
        IntMatrix.from_rows(a, cols),
        IntMatrix.from_rows(v, cols),
    )


def invariant_factors(m: IntMatrix) -> list[int]:
    """Nonzero diagonal entries of the Smith normal form, in chain order."""
    _, s, _ = smith_normal_form(m)
    return [d for d in s.diagonal_entries() if d]


def rank(m: IntMatrix) -> int:
    return len(invariant_factors(m))


@dataclass(frozen=True)
class AbelianGroup:
    """``Z^rank + Z/d1 + ... + Z/dt`` with ``1 < d1 | d2 | ... | dt``.

    Two instances compare equal exactly when the groups are isomorphic.
    """

    rank: int = 0
    torsion: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "torsion", tuple(self.torsion))
        if self.rank < 0:
            raise ValueError("rank must be nonnegative")
        for d in self.torsion:
            if d < 2:
                raise ValueError(f"torsion coefficients must exceed 1, got {d}")
        for d, e in zip(self.torsion, self.torsion[1:]):
            if e % d:
                raise ValueError(f"torsion {self.torsion} is not a divisibility chain")

    @classmethod
    def free(cls, rank: int) -> AbelianGroup:
        return cls(rank, ())

    @classmethod
    def cyclic(cls, n: int) -> AbelianGroup:
        """``Z/nZ``, reading ``n = 0`` as ``Z`` and ``n = 1`` as the trivial group."""
        n = abs(n)
        if n == 0:
            return cls(1, ())
        if n == 1:
            return cls(0, ())
        return cls(0, (n,))

    @classmethod
    def from_orders(cls, orders: Iterable[int]) -> AbelianGroup:
        """Normalize an arbitrary direct sum of cyclic groups ``Z/n_i``."""
        orders = list(orders)
        return cokernel(IntMatrix.diagonal(orders))

    def direct_sum(self, other: AbelianGroup) -> AbelianGroup:
        orders = [0] * (self.rank + other.rank) + list(self.torsion) + list(other.torsion)
        return AbelianGroup.from_orders(orders)

    __add__ = direct_sum

    def is_trivial(self) -> bool:
        return self.rank == 0 and not self.torsion

    def order(self) -> int | None:
        """Group order, or ``None`` when the group is infinite."""
        if self.rank:
            return None
        out = 1
        for d in self.torsion:
            out *= d
        return out

    def __str__(self) -> str:
        parts = []
        if self.rank == 1:
            parts.append("Z")
        elif self.rank > 1:
            parts.append(f"Z^{self.rank}")
        parts.extend(f"Z/{d}" for d in self.torsion)
        return " + ".join(parts) if parts else "0"


def cokernel(m: IntMatrix) -> AbelianGroup:
    """The group ``Z^rows / image(m)``; columns of ``m`` are the relations."""
    factors = invariant_factors(m)
    return AbelianGroup(m.rows - len(factors), tuple(d for d in factors if d > 1))


def groups_isomorphic(g: AbelianGroup, h: AbelianGroup) -> bool:
    return g.rank == h.rank and g.torsion == h.torsion


def gcd_all(values: Iterable[int]) -> int:
    out = 0
    for x in values:
        out = gcd(out, x)
    return out
