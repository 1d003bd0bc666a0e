import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import determinantal_invariant_factors, rational_rank
from multisect.handles import (
    ChainComplex,
    UnverifiedComplex,
    build_xn,
    complex_to_text,
    euler_characteristic,
    homology,
    parse_complex,
    verify_complex,
)
from multisect.linalg import AbelianGroup, IntMatrix, groups_isomorphic

Z = AbelianGroup(1)
ZERO = AbelianGroup()

TORUS = ChainComplex.from_maps((1, 2, 1), {})
SPHERE = ChainComplex.from_maps((1, 0, 1), {})
RP2 = ChainComplex.from_maps((1, 1, 1), {2: [[2]]})
KLEIN = ChainComplex.from_maps((1, 2, 1), {2: [[0], [2]]})  # face word a b a^-1 b
S1XS2 = ChainComplex.from_maps((1, 1, 1, 1), {})
CORPUS = [TORUS, SPHERE, RP2, KLEIN, S1XS2] + [build_xn(n) for n in range(9)]


def oracle_homology(k):
    """Homology from rational ranks and determinantal divisors, no SNF."""
    out = []
    for d, n in enumerate(k.dims):
        rows = k.boundaries[d].to_rows()
        r_out = rational_rank(rows) if rows and n else 0
        if d + 1 < len(k.dims):
            incoming = k.boundaries[d + 1].to_rows()
            r_in = rational_rank(incoming) if incoming and k.dims[d + 1] else 0
            tors = [x for x in determinantal_invariant_factors(incoming) if x > 1] if r_in else []
        else:
            r_in, tors = 0, []
        out.append(AbelianGroup(n - r_out - r_in, tuple(tors)))
    return out


def fine_xn(n):
    """X_n on a torus cut into three annuli between the parallel curves.

    Cells: vertices w1..w3 on the curves; loops al1..al3 (the curves) and arcs
    e1..e3 (e_i from w_{i-1} to w_i); annuli A1..A3 with boundary
    al_i - al_{i-1}; 2-handle cores D1..D3 on al_i; 3-cells B_i glued along
    D_{i-1} - D_i + A_i, plus (n - 1) full sweeps A1 + A2 + A3 for B3.
    """
    idx1 = {"al1": 0, "al2": 1, "al3": 2, "e1": 3, "e2": 4, "e3": 5}
    d1 = [[0] * 6 for _ in range(3)]
    for i in range(3):
        e = idx1[f"e{i + 1}"]
        d1[i][e] += 1
        d1[(i - 1) % 3][e] -= 1
    idx2 = {"A1": 0, "A2": 1, "A3": 2, "D1": 3, "D2": 4, "D3": 5}
    d2 = [[0] * 6 for _ in range(6)]
    for i in range(3):
        d2[idx1[f"al{i + 1}"]][idx2[f"A{i + 1}"]] += 1
        d2[idx1[f"al{(i - 1) % 3 + 1}"]][idx2[f"A{i + 1}"]] -= 1
        d2[idx1[f"al{i + 1}"]][idx2[f"D{i + 1}"]] = 1
    d3 = [[0] * 3 for _ in range(6)]
    for i in range(3):
        d3[idx2[f"D{(i - 1) % 3 + 1}"]][i] += 1
        d3[idx2[f"D{i + 1}"]][i] -= 1
        d3[idx2[f"A{i + 1}"]][i] += 1
    for a in ("A1", "A2", "A3"):
        d3[idx2[a]][2] += n - 1
    return ChainComplex.from_maps((3, 6, 6, 3), {1: d1, 2: d2, 3: d3})


class TestVerify:
    def test_torus(self):
        assert verify_complex(TORUS)

    def test_bad_composite(self):
        bad = ChainComplex.from_maps((1, 1, 1), {1: [[1]], 2: [[1]]})
        assert not verify_complex(bad)
        with pytest.raises(UnverifiedComplex):
            homology(bad)

    def test_shape_mismatch(self):
        bad = ChainComplex((1, 2), (IntMatrix.zeros(0, 1), IntMatrix.zeros(2, 2)))
        with pytest.raises(ValueError):
            verify_complex(bad)

    @pytest.mark.parametrize("n", range(9))
    def test_xn(self, n):
        assert verify_complex(build_xn(n))
        assert verify_complex(fine_xn(n))


class TestHomology:
    def test_torus(self):
        assert homology(TORUS) == [Z, AbelianGroup(2), Z]

    def test_rp2(self):
        assert homology(RP2) == [Z, AbelianGroup(0, (2,)), ZERO]

    def test_sphere(self):
        assert homology(SPHERE) == [Z, ZERO, Z]

    def test_klein(self):
        assert homology(KLEIN) == [Z, AbelianGroup(1, (2,)), ZERO]

    def test_s1xs2(self):
        assert homology(S1XS2) == [Z, Z, Z, Z]

    @pytest.mark.parametrize("k", CORPUS)
    def test_against_oracle(self, k):
        assert homology(k) == oracle_homology(k)

    @pytest.mark.parametrize("k", CORPUS)
    def test_euler_identity(self, k):
        assert sum((-1) ** d * g.rank for d, g in enumerate(homology(k))) == euler_characteristic(k)

    @settings(max_examples=40, deadline=None)
    @given(st.sampled_from(CORPUS), st.randoms(use_true_random=False))
    def test_basis_change_invariance(self, k, rnd):
        qs = [_unimodular_pair(n, rnd) for n in k.dims]
        bds = [k.boundaries[0] @ qs[0][1]]
        for d in range(1, len(k.dims)):
            bds.append(qs[d - 1][0] @ k.boundaries[d] @ qs[d][1])
        changed = ChainComplex(k.dims, tuple(bds))
        assert verify_complex(changed)
        assert homology(changed) == homology(k)


def _unimodular_pair(n, rnd):
    q = IntMatrix.identity(n).to_rows()
    qi = IntMatrix.identity(n).to_rows()
    for _ in range(2 * n):
        if n < 2:
            break
        i, j = rnd.sample(range(n), 2)
        c = rnd.randint(-2, 2)
        # Q <- E Q with E = I + c e_ij, and Q^-1 <- Q^-1 E^-1
        q[i] = [x + c * y for x, y in zip(q[i], q[j])]
        for row in qi:
            row[j] -= c * row[i]
    return IntMatrix.from_rows(q, n), IntMatrix.from_rows(qi, n)


class TestXn:
    def test_h2_z5(self):
        assert homology(build_xn(5))[2] == AbelianGroup(0, (5,))

    def test_h2_n0(self):
        assert homology(build_xn(0))[2] == Z

    @pytest.mark.parametrize("n", range(9))
    def test_h0_h1(self, n):
        h = homology(build_xn(n))
        assert h[0] == Z
        assert h[1] == Z  # the class b survives

    @pytest.mark.parametrize("n", range(9))
    def test_matches_fine_model(self, n):
        assert homology(build_xn(n))[:3] == homology(fine_xn(n))[:3]

    def test_euler_constant(self):
        assert len({euler_characteristic(build_xn(n)) for n in range(9)}) == 1

    def test_pairwise_distinct(self):
        h2 = [homology(build_xn(n))[2] for n in range(2, 9)]
        for i, g in enumerate(h2):
            for j, h in enumerate(h2):
                assert groups_isomorphic(g, h) == (i == j)

    def test_boundary_of_b3_carries_turns(self):
        assert build_xn(4).boundary_of(3, "B3") == {"f": 3, "D2": 1, "D3": -1}

    def test_negative_n(self):
        with pytest.raises(ValueError):
            build_xn(-1)


class TestText:
    @pytest.mark.parametrize("k", CORPUS)
    def test_round_trip(self, k):
        back = parse_complex(complex_to_text(k))
        assert back.dims == k.dims and back.boundaries == k.boundaries

    def test_labels_kept(self):
        assert parse_complex(complex_to_text(build_xn(2))).labels == build_xn(2).labels

    @pytest.mark.parametrize(
        "text",
        ["", "dims 1 x", "dims 1 1\nboundary 1\n1 2", "dims 1 1\nboundary 5\n", "junk",
         "dims 1\ndims 1", "dims -1"],
    )
    def test_errors(self, text):
        with pytest.raises(ValueError):
            parse_complex(text)
