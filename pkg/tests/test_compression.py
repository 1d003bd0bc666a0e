import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from multisect.compression import (
    CutFailure,
    CutSystem,
    MalformedCutSystem,
    StandardnessFailure,
    handleslide,
    homological_standardness,
    infer_trace,
    slide_system,
    standard_double_diagram,
    validate_cut_system,
)
from multisect.curves import TracedMulticurve
from multisect.linalg import AbelianGroup, IntMatrix, smith_normal_form
from multisect.surface import (
    CurveClass,
    HostMismatch,
    Surface,
    SurfaceCollection,
    class_matrix,
    pairing_matrix,
    quotient_homology,
)

T = Surface(1, 0)
EMPTY = SurfaceCollection()
PAGES = [
    EMPTY,
    SurfaceCollection.of((1, 1)),
    SurfaceCollection.of((0, 3)),
    SurfaceCollection.of((0, 1)),
    SurfaceCollection.of((2, 0), (1, 2)),
    SurfaceCollection.of((0, 1), (0, 1)),
]
SUITE = list(itertools.product(PAGES, range(3), range(2)))


def a(host=T, i=1):
    return CurveClass.basis(host, f"a{i}")


def b(host=T, i=1):
    return CurveClass.basis(host, f"b{i}")


class TestValidateCutSystem:
    def test_solid_torus(self):
        cs = CutSystem.from_classes(T, [a()])
        assert validate_cut_system(cs, EMPTY)

    def test_separating_curve_vs_torus_page(self):
        g2 = Surface(2, 0)
        trace = TracedMulticurve([(1, 1, 0), (1, 1, 0)], [((0, 0), (1, 0), 1)])
        cs = CutSystem(g2, trace, (CurveClass.zero(g2),))
        v = validate_cut_system(cs, SurfaceCollection.of((1, 0)))
        assert v.reason is CutFailure.COMPONENT_MISMATCH

    def test_parallel_copies(self):
        cs = CutSystem.from_classes(T, [a(), a()])
        assert validate_cut_system(cs, EMPTY).reason is CutFailure.NOT_SINGLE_SPHERE

    def test_sphere_in_page(self):
        cs = CutSystem.from_classes(T, [a()])
        v = validate_cut_system(cs, SurfaceCollection.of((0, 0)))
        assert v.reason is CutFailure.SPHERE_IN_PAGE

    def test_boundary_mismatch(self):
        s = Surface(0, 1)
        cs = CutSystem.from_classes(s, [])
        v = validate_cut_system(cs, SurfaceCollection.of((0, 2)))
        assert v.reason is CutFailure.BOUNDARY_MISMATCH

    def test_excess_spheres(self):
        # one-holed torus, core curve: surgery gives a disk; a parallel copy adds a sphere
        s = Surface(1, 1)
        cs = CutSystem.from_classes(s, [a(s), a(s)])
        v = validate_cut_system(cs, SurfaceCollection.of((0, 1)))
        assert v.reason is CutFailure.EXCESS_SPHERES

    def test_malformed(self):
        cs = CutSystem(T, TracedMulticurve([(0, 2, 0)], [((0, 0), (0, 1), 1)]), ())
        with pytest.raises(MalformedCutSystem):
            validate_cut_system(cs, EMPTY)
        wrong_surface = CutSystem(Surface(2, 0), TracedMulticurve([(0, 2, 0)], [((0, 0), (0, 1), 1)]),
                                  (CurveClass.basis(Surface(2, 0), "a1"),))
        with pytest.raises(MalformedCutSystem):
            validate_cut_system(wrong_surface, EMPTY)

    @pytest.mark.parametrize("page,k,s", SUITE)
    def test_generator_output_is_valid(self, page, k, s):
        d = standard_double_diagram(page, k, s)
        assert validate_cut_system(d.alpha, page)
        assert validate_cut_system(d.beta, page)


class TestStandardDiagram:
    def test_s1xs2(self):
        d = standard_double_diagram(EMPTY, 1, 0)
        assert d.surface == T
        assert d.alpha.classes == d.beta.classes == (a(),)

    def test_three_holed_sphere(self):
        d = standard_double_diagram(SurfaceCollection.of((0, 3)), 0, 0)
        assert d.surface == Surface(0, 3)
        assert len(d.alpha) == len(d.beta) == 0

    def test_two_disks(self):
        page = SurfaceCollection.of((0, 1), (0, 1))
        d = standard_double_diagram(page, 0, 0)
        assert d.surface == Surface(0, 2)
        assert len(d.alpha) == 1
        for cs in (d.alpha, d.beta):
            assert validate_cut_system(cs, page)

    def test_rejects_sphere_page(self):
        with pytest.raises(ValueError):
            standard_double_diagram(SurfaceCollection.of((0, 0)), 1, 0)

    @pytest.mark.parametrize("page,k,s", SUITE)
    def test_genus_ladder_and_counts(self, page, k, s):
        d = standard_double_diagram(page, k, s)
        assert d.surface.genus == page.genus + k + s
        assert d.surface.boundary == page.boundary
        c = max(len(page), 1)
        capped = page if not page.is_empty() else SurfaceCollection.of((0, 0))
        euler_count = (capped.euler_characteristic() - d.surface.euler_characteristic()) // 2
        assert len(d.alpha) == len(d.beta) == c + k - 1 + s == euler_count

    @pytest.mark.parametrize("page,k,s", SUITE)
    def test_certificate(self, page, k, s):
        d = standard_double_diagram(page, k, s)
        r = homological_standardness(d.surface, d.alpha, d.beta, page)
        assert r.verdict, r.details
        assert r.detected_stabilizations == s
        assert r.k == k


class TestStandardness:
    def test_s1xs2(self):
        d = standard_double_diagram(EMPTY, 1, 0)
        r = homological_standardness(d.surface, d.alpha, d.beta, EMPTY)
        assert r.verdict and r.detected_stabilizations == 0 and r.k == 1
        assert r.h1 == AbelianGroup(1)

    def test_stabilized_s3(self):
        r = homological_standardness(
            T, CutSystem.from_classes(T, [a()]), CutSystem.from_classes(T, [b()]), EMPTY
        )
        assert r.verdict and r.detected_stabilizations == 1 and r.k == 0

    def test_lens_space_rejected(self):
        r = homological_standardness(
            T, CutSystem.from_classes(T, [a()]), CutSystem.from_classes(T, [a() + 2 * b()]), EMPTY
        )
        assert not r.verdict
        assert StandardnessFailure.SNF_NOT_STANDARD in r.failures
        assert r.snf_diagonal == (2,)
        assert r.detected_stabilizations is None

    def test_genus_ladder_violation(self):
        # a closed genus-1 page needs genus >= 1 even with no curves
        s = Surface(1, 0)
        page = SurfaceCollection.of((2, 0))
        cs = CutSystem.from_classes(s, [])
        r = homological_standardness(s, cs, cs, page)
        assert StandardnessFailure.GENUS_LADDER_VIOLATION in r.failures

    def test_h1_mismatch(self):
        # alpha, beta both {a1} on genus 2: SNF zero, k = 2, but H1 = Z^3 not Z^2
        g2 = Surface(2, 0)
        cs = CutSystem.from_classes(g2, [a(g2)])
        r = homological_standardness(g2, cs, cs, EMPTY)
        assert StandardnessFailure.H1_MISMATCH in r.failures
        assert StandardnessFailure.CUT_SYSTEM_INVALID in r.failures
        assert not r.verdict

    def test_host_mismatch(self):
        with pytest.raises(HostMismatch):
            homological_standardness(
                Surface(2, 0), CutSystem.from_classes(T, [a()]), CutSystem.from_classes(T, [a()]), EMPTY
            )

    def test_caveat_present(self):
        d = standard_double_diagram(EMPTY, 0, 1)
        r = homological_standardness(d.surface, d.alpha, d.beta, EMPTY)
        assert "necessary" in r.caveat


def span_invariant(host, classes):
    """Invariant factors and rank of the span, read off the SNF of the column matrix."""
    _, s, _ = smith_normal_form(class_matrix(host, classes))
    return [x for x in s.diagonal_entries() if x]


class TestHandleslide:
    def test_example(self):
        g2 = Surface(2, 0)
        out = handleslide([a(g2, 1), a(g2, 2)], 0, 1, 1)
        assert out == (a(g2, 1) + a(g2, 2), a(g2, 2))

    def test_inverse(self):
        g2 = Surface(2, 0)
        start = (a(g2, 1) + 3 * b(g2, 2), a(g2, 2))
        assert handleslide(handleslide(start, 0, 1, 1), 0, 1, -1) == start

    def test_errors(self):
        with pytest.raises(ValueError):
            handleslide([a(), b()], 0, 0, 1)
        with pytest.raises(ValueError):
            handleslide([a(), b()], 0, 1, 2)
        with pytest.raises(IndexError):
            handleslide([a(), b()], 0, 5, 1)

    @settings(max_examples=60, deadline=None)
    @given(st.sampled_from(SUITE), st.data())
    def test_slides_preserve_span_and_pairing_snf(self, case, data):
        page, k, s = case
        d = standard_double_diagram(page, k, s)
        alpha, beta = list(d.alpha.classes), list(d.beta.classes)
        span_before = span_invariant(d.surface, alpha)
        pair_before = smith_normal_form(pairing_matrix(alpha, beta))[1]
        h1_before = quotient_homology(d.surface, alpha + beta)
        n = len(alpha)
        if n < 2:
            return
        for _ in range(data.draw(st.integers(1, 6))):
            j, l = data.draw(st.permutations(range(n)))[:2]
            sign = data.draw(st.sampled_from((1, -1)))
            if data.draw(st.booleans()):
                alpha = list(handleslide(alpha, j, l, sign))
            else:
                beta = list(handleslide(beta, j, l, sign))
        assert span_invariant(d.surface, alpha) == span_before
        assert smith_normal_form(pairing_matrix(alpha, beta))[1] == pair_before
        assert quotient_homology(d.surface, alpha + beta) == h1_before

    def test_slide_system_keeps_trace(self):
        d = standard_double_diagram(SurfaceCollection.of((0, 1)), 2, 0)
        slid = slide_system(d.alpha, 0, 1, -1)
        assert slid.trace == d.alpha.trace
        assert validate_cut_system(slid, SurfaceCollection.of((0, 1)))


class TestInferTrace:
    def test_parallel_copies_get_annuli(self):
        t = infer_trace(T, [a(), -a(), a()])
        assert len(t.pieces) == 3
        assert sum(p.scars for p in t.pieces) == 6

    def test_rejects_separating(self):
        with pytest.raises(ValueError):
            infer_trace(T, [CurveClass.zero(T)])

    def test_rejects_intersecting(self):
        with pytest.raises(ValueError):
            infer_trace(T, [a(), b()])

    def test_rejects_dependent_mod_boundary(self):
        s = Surface(1, 2)
        with pytest.raises(ValueError):
            infer_trace(s, [a(s), a(s) + CurveClass.basis(s, "d1")])

    def test_handlebody(self):
        g3 = Surface(3, 0)
        cs = CutSystem.from_classes(g3, [a(g3, i) for i in (1, 2, 3)])
        assert validate_cut_system(cs, EMPTY)
