import random
from fractions import Fraction
from itertools import combinations, permutations

import pytest
from hypothesis import strategies as st

from multisect.curves import Gluing, Piece, TracedMulticurve
from multisect.linalg import IntMatrix

# (criterion, passed, detail) rows collected by tests/test_acceptance.py
ACCEPTANCE_RESULTS = []


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for name, ok, detail in ACCEPTANCE_RESULTS:
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  {name}  {detail}")


# -- oracles that do not go through the library's elimination code ---------


def leibniz_det(rows):
    n = len(rows)
    total = 0
    for perm in permutations(range(n)):
        sign = 1
        for i in range(n):
            for j in range(i + 1, n):
                if perm[i] > perm[j]:
                    sign = -sign
        prod = 1
        for i in range(n):
            prod *= rows[i][perm[i]]
        total += sign * prod
    return total


def determinantal_invariant_factors(rows):
    """Invariant factors as ratios of gcds of k x k minors."""
    from math import gcd

    m = len(rows)
    n = len(rows[0]) if rows else 0
    divisors = [1]
    for k in range(1, min(m, n) + 1):
        g = 0
        for ri in combinations(range(m), k):
            for ci in combinations(range(n), k):
                g = gcd(g, leibniz_det([[rows[i][j] for j in ci] for i in ri]))
        if g == 0:
            break
        divisors.append(g)
    return [divisors[i] // divisors[i - 1] for i in range(1, len(divisors))]


def rational_rank(rows):
    a = [[Fraction(x) for x in r] for r in rows]
    rank = 0
    cols = len(a[0]) if a else 0
    for c in range(cols):
        piv = next((i for i in range(rank, len(a)) if a[i][c] != 0), None)
        if piv is None:
            continue
        a[rank], a[piv] = a[piv], a[rank]
        for i in range(len(a)):
            if i != rank and a[i][c] != 0:
                f = a[i][c] / a[rank][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[rank])]
        rank += 1
    return rank


def random_unimodular(n, rng, steps=None):
    """Product of random elementary integer operations."""
    rows = IntMatrix.identity(n).to_rows()
    for _ in range(steps if steps is not None else 3 * n):
        if n < 2:
            break
        i, j = rng.sample(range(n), 2)
        op = rng.randrange(3)
        if op == 0:
            q = rng.randint(-3, 3)
            rows[i] = [x + q * y for x, y in zip(rows[i], rows[j])]
        elif op == 1:
            rows[i], rows[j] = rows[j], rows[i]
        else:
            rows[i] = [-x for x in rows[i]]
    return IntMatrix.from_rows(rows, n)


@pytest.fixture
def rng():
    return random.Random(20261019)


# -- hypothesis strategies ---------------------------------------------------


def int_matrices(max_rows=6, max_cols=6, lo=-50, hi=50):
    return st.integers(0, max_rows).flatmap(
        lambda r: st.integers(0, max_cols).flatmap(
            lambda c: st.lists(st.integers(lo, hi), min_size=r * c, max_size=r * c).map(
                lambda e: IntMatrix(r, c, tuple(e))
            )
        )
    )


@st.composite
def traced_multicurves(draw, max_pieces=5, max_curves=6, connected=False):
    """Valid traces: random pieces, a random perfect matching of scar slots."""
    n_curves = draw(st.integers(0, max_curves))
    n_pieces = draw(st.integers(1, max_pieces))
    owners = [draw(st.integers(0, n_pieces - 1)) for _ in range(2 * n_curves)]
    if connected and n_pieces > 1:
        # force a spanning path of gluings so the result is connected
        n_pieces = min(n_pieces, n_curves + 1)
        owners = [draw(st.integers(0, n_pieces - 1)) for _ in range(2 * n_curves)]
        for p in range(n_pieces - 1):
            owners[2 * p], owners[2 * p + 1] = p, p + 1
    scars = [0] * n_pieces
    slots = []
    for o in owners:
        slots.append((o, scars[o]))
        scars[o] += 1
    order = draw(st.permutations(range(len(slots))))
    slots = [slots[i] for i in order] if not connected else slots
    colours = [draw(st.sampled_from((1, -1))) for _ in range(n_pieces)]
    pieces = tuple(
        Piece(draw(st.integers(0, 2)), scars[p], draw(st.integers(0, 2)))
        for p in range(n_pieces)
    )
    curves = tuple(
        Gluing(slots[2 * i], slots[2 * i + 1], colours[slots[2 * i][0]] * colours[slots[2 * i + 1][0]])
        for i in range(n_curves)
    )
    return TracedMulticurve(pieces, curves)
