"""Cellular chain complexes of handle decompositions and their integral homology.

``boundaries[d]`` is the matrix of the boundary map from degree ``d`` to
degree ``d - 1``: it has ``dims[d - 1]`` rows and ``dims[d]`` columns, and
column ``j`` lists the boundary of the ``j``-th ``d``-cell.
``boundaries[0]`` is the empty ``0 x dims[0]`` map.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Sequence

from .linalg import AbelianGroup, IntMatrix, invariant_factors

__all__ = [
    "ChainComplex",
    "UnverifiedComplex",
    "verify_complex",
    "homology",
    "euler_characteristic",
    "build_xn",
    "complex_to_text",
    "parse_complex",
]


class UnverifiedComplex(ValueError):
    """The boundary maps do not compose to zero."""


@dataclass(frozen=True)
class ChainComplex:
    dims: tuple[int, ...]
    boundaries: tuple[IntMatrix, ...]
    labels: tuple[tuple[str, ...], ...] | None = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "dims", tuple(self.dims))
        object.__setattr__(self, "boundaries", tuple(self.boundaries))
        if self.labels is not None:
            object.__setattr__(self, "labels", tuple(tuple(l) for l in self.labels))

    @classmethod
    def from_maps(
        cls,
        dims: Sequence[int],
        maps: Mapping[int, Sequence[Sequence[int]] | IntMatrix],
        labels: Sequence[Sequence[str]] | None = None,
    ) -> ChainComplex:
        """Build a complex from the nonzero boundary maps; missing degrees are zero."""
        bds = [IntMatrix.zeros(0, dims[0] if dims else 0)]
        for d in range(1, len(dims)):
            m = maps.get(d)
            if m is None:
                bds.append(IntMatrix.zeros(dims[d - 1], dims[d]))
            elif isinstance(m, IntMatrix):
                bds.append(m)
            else:
                bds.append(IntMatrix.from_rows(m, dims[d]))
        return cls(tuple(dims), tuple(bds), None if labels is None else tuple(map(tuple, labels)))

    @property
    def top(self) -> int:
        return len(self.dims) - 1

    def boundary_of(self, d: int, label: str) -> dict[str, int]:
        """Boundary of a labelled cell as ``{label: coefficient}``."""
        j = self.labels[d].index(label)
        col = self.boundaries[d].column(j)
        return {self.labels[d - 1][i]: c for i, c in enumerate(col) if c}


def _check_shapes(k: ChainComplex) -> None:
    if len(k.boundaries) != len(k.dims):
        raise ValueError(f"{len(k.dims)} degrees but {len(k.boundaries)} boundary maps")
    for d, (n, m) in enumerate(zip(k.dims, k.boundaries)):
        rows = k.dims[d - 1] if d > 0 else 0
        if m.shape != (rows, n):
            raise ValueError(f"boundary map in degree {d} has shape {m.shape}, expected {(rows, n)}")
    if k.labels is not None:
        if len(k.labels) != len(k.dims) or any(
            len(l) != n for l, n in zip(k.labels, k.dims)
        ):
            raise ValueError("labels do not match cell counts")


def verify_complex(k: ChainComplex) -> bool:
    """True iff every composite of consecutive boundary maps vanishes."""
    _check_shapes(k)
    return all((k.boundaries[d - 1] @ k.boundaries[d]).is_zero() for d in range(2, len(k.dims)))


def homology(k: ChainComplex) -> list[AbelianGroup]:
    """Integral homology ``H_0, ..., H_top`` via Smith normal form."""
    if not verify_complex(k):
        raise UnverifiedComplex("boundary maps do not square to zero")
    factors = [invariant_factors(m) for m in k.boundaries] + [[]]
    out = []
    for d, n in enumerate(k.dims):
        cycles = n - len(factors[d])
        incoming = factors[d + 1]
        out.append(AbelianGroup(cycles - len(incoming), tuple(x for x in incoming if x > 1)))
    return out


def euler_characteristic(k: ChainComplex) -> int:
    return sum((-1) ** d * n for d, n in enumerate(k.dims))


def build_xn(n: int) -> ChainComplex:
    """Cellular chain complex (through degree 3) of the 4-manifold ``X_n``.

    Start from the torus (one vertex ``v``, edges ``a``, ``b``, face ``f``)
    standing in for the product of the torus with a disk, attach three
    2-cells ``D1, D2, D3`` along the parallel curves (all in class ``a``) and
    three 3-cells ``B1, B2, B3``. ``B_i`` is glued along
    ``D_{i-1} - D_i`` plus the annulus swept between consecutive curves.
    The three sweeps together cover the torus once; we let the sweep of
    ``B1`` carry that face. Every one of the ``n - 1`` extra turns in the
    gluing of ``B3`` has to sweep the whole torus once more to get around
    the 2-handles, adding ``(n - 1) f`` to its boundary.

    The result has ``H_2 = Z/n`` (``Z`` for ``n = 0``).
    """
    if n < 0:
        raise ValueError("n must be nonnegative")
    sweep = (1, 0, n - 1)
    d2 = [
        # f  D1 D2 D3
        [0, 1, 1, 1],  # a
        [0, 0, 0, 0],  # b
    ]
    d3 = [[sweep[0], sweep[1], sweep[2]]]  # f
    for i in range(3):  # row for D_{i+1}
        d3.append([(1 if (j - 1) % 3 == i else 0) - (1 if j == i else 0) for j in range(3)])
    return ChainComplex.from_maps(
        (1, 2, 4, 3),
        {1: [[0, 0]], 2: d2, 3: d3},
        labels=(("v",), ("a", "b"), ("f", "D1", "D2", "D3"), ("B1", "B2", "B3")),
    )


def complex_to_text(k: ChainComplex) -> str:
    """Serialize as ``dims`` / ``labels`` / ``boundary`` blocks (row-major)."""
    lines = ["dims " + " ".join(map(str, k.dims))]
    if k.labels is not None:
        for d, names in enumerate(k.labels):
            if names:
                lines.append(f"labels {d} " + " ".join(names))
    for d in range(1, len(k.dims)):
        m = k.boundaries[d]
        lines.append(f"boundary {d}")
        lines.extend(" ".join(map(str, row)) for row in m.to_rows())
    return "\n".join(lines) + "\n"


def parse_complex(text: str) -> ChainComplex:
    """Inverse of :func:`complex_to_text`; raises ``ValueError`` with a line number."""
    dims: list[int] | None = None
    labels: dict[int, list[str]] = {}
    maps: dict[int, list[list[int]]] = {}
    current: int | None = None
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        head, *rest = line.split()
        try:
            if head == "dims":
                if dims is not None:
                    raise ValueError("duplicate dims line")
                dims = [int(x) for x in rest]
                if any(x < 0 for x in dims):
                    raise ValueError("negative cell count")
                current = None
            elif head == "labels":
                labels[int(rest[0])] = rest[1:]
                current = None
            elif head == "boundary":
                if len(rest) != 1:
                    raise ValueError("expected 'boundary <degree>'")
                current = int(rest[0])
                if current in maps:
                    raise ValueError(f"duplicate boundary {current}")
                maps[current] = []
            elif current is not None:
                maps[current].append([int(x) for x in line.split()])
            else:
                raise ValueError(f"unexpected line {line!r}")
        except (ValueError, IndexError) as exc:
            raise ValueError(f"line {lineno}: {exc}") from None
    if dims is None:
        raise ValueError("missing dims line")
    mats = {}
    for d, rows in maps.items():
        if not 1 <= d < len(dims):
            raise ValueError(f"boundary degree {d} out of range")
        if dims[d] == 0 and not rows:
            rows = [[] for _ in range(dims[d - 1])]  # zero-column rows print as blank lines
        if len(rows) != dims[d - 1] or any(len(r) != dims[d] for r in rows):
            raise ValueError(f"boundary {d} should be {dims[d - 1]}x{dims[d]}")
        mats[d] = IntMatrix.from_rows(rows, dims[d])
    label_seq = None
    if labels:
        label_seq = [labels.get(d, [f"e{d}_{j}" for j in range(n)]) for d, n in enumerate(dims)]
    k = ChainComplex.from_maps(dims, mats, label_seq)
    _check_shapes(k)
    return k
