import itertools
import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from toricmle import exact
from toricmle.errors import (
    DimensionMismatch,
    InexactScaling,
    NotGeneralPosition,
    NotHypersurface,
    StartInvalid,
)
from toricmle.families import (
    ScrollSpec,
    VER22_FACES,
    binomial_scroll_scaling,
    hierarchical_model,
    hirzebruch_mldegree,
    hypersurface_discriminant,
    hypersurface_generator,
    hypersurface_kernel,
    hypersurface_sigma_test,
    scroll_closed_form_start,
    scroll_matrix,
    scroll_mldegree,
    scroll_model,
    scroll_polynomials,
    segre_model,
    segre_rank1_mle,
    segre_rank1_test,
    ver2_matrix,
    ver2_scaling_from_matrix,
    ver2_sigma_test,
    veronese_columns,
    veronese_model,
    veronese_rank1_scaling,
    veronese_rank1_start,
)
from toricmle.fixtures import (
    FOUR_CYCLE_MATRIX,
    THREE_CYCLE_GENERATOR,
    THREE_CYCLE_MATRIX,
    VER22_TABLE,
    four_cycle_model,
    three_cycle_model,
)
from toricmle.ips import ips_solve
from toricmle.model import evaluate_map, validate_model
from toricmle.polynomial import RationalPoly

specs = st.lists(st.integers(1, 4), min_size=1, max_size=4).map(lambda l: ScrollSpec(tuple(l)))


class TestScroll:
    def test_matrix_shape(self):
        A = scroll_matrix((2, 1))
        assert A == [[1, 1, 1, 0, 0], [0, 1, 2, 0, 1]]

    def test_single_block_is_curve(self):
        assert scroll_matrix((4,)) == [[0, 1, 2, 3, 4]]
        assert ScrollSpec((4,)).degree == 4

    def test_curve_examples(self):
        assert scroll_mldegree((4,), [1, 1, 1, 1, 1]) == 4
        assert scroll_mldegree((4,), [1, 4, 6, 4, 1]) == 1

    def test_polynomials(self):
        g = scroll_polynomials((1, 2), [1, 2, 3, 4, 5])
        assert g == [RationalPoly([1, 2]), RationalPoly([3, 4, 5])]

    def test_float_scaling_rejected(self):
        with pytest.raises(InexactScaling):
            scroll_mldegree((2,), [1, 0.3, 1])

    def test_bad_spec(self):
        with pytest.raises((DimensionMismatch, ValueError)):
            ScrollSpec(())
        with pytest.raises((DimensionMismatch, ValueError)):
            ScrollSpec((0, 2))

    @pytest.mark.parametrize("n1,n2", list(itertools.product(range(1, 9), repeat=2)))
    def test_hirzebruch(self, n1, n2):
        assert hirzebruch_mldegree(n1, n2) == scroll_mldegree((n1, n2), [1] * (n1 + n2 + 2))

    @given(specs)
    @settings(max_examples=30, deadline=None)
    def test_binomial_gives_one(self, spec):
        assert scroll_mldegree(spec, binomial_scroll_scaling(spec)) == 1

    @given(specs, st.data())
    @settings(max_examples=40, deadline=None)
    def test_degree_bound(self, spec, data):
        c = data.draw(st.lists(st.integers(1, 5), min_size=spec.n, max_size=spec.n))
        generic = np.random.default_rng(spec.n).integers(1, 10**6, spec.n).tolist()
        assert scroll_mldegree(spec, c) <= scroll_mldegree(spec, generic) == spec.degree

    def test_closed_form_matches_ips(self, rng):
        for n_list in [(4,), (2, 3), (4, 4, 4), (1, 5, 2, 3)]:
            spec = ScrollSpec(n_list)
            model = scroll_model(spec, binomial_scroll_scaling(spec))
            u = rng.integers(1, 50, spec.n)
            raw = scroll_closed_form_start(spec, u, polish=False)
            assert raw == pytest.approx(ips_solve(model, u).theta_hat, rel=1e-9)

    def test_closed_form_needs_positive_counts(self):
        with pytest.raises(StartInvalid):
            scroll_closed_form_start((2, 2), [1, 0, 1, 1, 1, 1])


class TestVeronese:
    def test_columns(self):
        assert veronese_columns(2, 2) == [(0, 0), (1, 0), (2, 0), (0, 1), (1, 1), (0, 2)]
        assert len(veronese_columns(3, 3)) == math.comb(6, 3)

    def test_rank1_scaling(self):
        assert veronese_rank1_scaling(2, 2, [1, 1, 1]) == [1, 2, 1, 2, 2, 1]
        assert veronese_rank1_scaling(1, 4, [1, 1]) == [1, 4, 6, 4, 1]

    def test_ver2_matrix_roundtrip(self):
        c = [1, 2, 3, 4, 5, 6]
        C = ver2_matrix(2, c)
        assert C == [[2, 2, 4], [2, 6, 5], [4, 5, 12]]
        assert ver2_scaling_from_matrix(C) == c

    def test_ones_not_in_sigma(self):
        for m in range(1, 5):
            in_sigma, minors = ver2_sigma_test(m, [1] * len(veronese_columns(m, 2)))
            assert not in_sigma
            full = tuple(range(m + 1))
            assert minors[full] == m + 2

    @given(st.integers(1, 3), st.data())
    @settings(max_examples=30, deadline=None)
    def test_rank1_always_in_sigma(self, m, data):
        b = data.draw(st.lists(st.integers(-5, 5).filter(bool), min_size=m + 1, max_size=m + 1))
        in_sigma, _ = ver2_sigma_test(m, veronese_rank1_scaling(m, 2, b))
        assert in_sigma

    def test_faces_are_principal_minors(self):
        C = VER22_TABLE[0][0]
        _, minors = ver2_sigma_test(2, C=C)
        assert set(VER22_FACES) == set(minors)

    @pytest.mark.parametrize("row", range(7))
    def test_table_patterns_recomputed(self, row):
        # independent oracle: numeric principal minors on the faces
        C, _, _ = VER22_TABLE[row]
        _, minors = ver2_sigma_test(2, C=C)
        Cn = np.array(C, dtype=float)
        for S in VER22_FACES:
            assert float(minors[S]) == pytest.approx(np.linalg.det(Cn[np.ix_(S, S)]), abs=1e-9)

    def test_rank1_start_matches_ips(self, rng):
        for m, k in [(1, 3), (2, 2), (2, 3), (3, 2)]:
            b = rng.integers(1, 4, m + 1).tolist()
            model = veronese_model(m, k, veronese_rank1_scaling(m, k, b))
            u = rng.integers(1, 40, model.n)
            raw = veronese_rank1_start(m, k, b, u, polish=False)
            assert raw == pytest.approx(ips_solve(model, u).theta_hat, rel=1e-9)


class TestHierarchical:
    def test_four_cycle_row_space(self):
        m = four_cycle_model()
        assert m.A.tolist() == [list(r) for r in FOUR_CYCLE_MATRIX]
        assert exact.same_row_space(m.A_bar.tolist(), [list(r) for r in FOUR_CYCLE_MATRIX] + [[1] * 16])

    def test_three_cycle_row_space(self):
        m = three_cycle_model()
        assert m.A.tolist() == [list(r) for r in THREE_CYCLE_MATRIX]

    def test_levels_mismatch(self):
        with pytest.raises(DimensionMismatch):
            hierarchical_model(["AB"], [2, 2, 2])

    def test_three_levels(self):
        m = hierarchical_model(["AB", "BC"], [3, 2, 3])
        # dimension of the graphical model: 1 + 2 + 1 + 2 + 2 + 2
        assert m.d == 10
        assert m.n == 18


class TestSegre:
    def test_rank1(self):
        assert segre_rank1_test([[1, 2], [3, 6]])
        assert not segre_rank1_test([[1, 2], [3, 5]])

    def test_mle_is_birch_point(self, rng):
        U = rng.integers(0, 20, size=(3, 4))
        U[0, 0] += 1
        p = segre_rank1_mle(U)
        m = segre_model(3, 4)
        tot = int(U.sum())
        A_bar = m.A_bar.tolist()
        u = U.ravel().tolist()
        for row in A_bar:
            assert sum(a * x for a, x in zip(row, p)) == Fraction(sum(a * x for a, x in zip(row, u)), tot)

    def test_two_by_two_discriminant(self):
        m = segre_model(2, 2)
        c11, c12, c21, c22 = map(Fraction, (3, 5, 7, 11))
        assert hypersurface_discriminant(m, [c11, c12, c21, c22]) == c11 * c22 - c12 * c21


class TestHypersurface:
    def test_three_cycle_generator(self):
        pos, neg = hypersurface_generator(three_cycle_model())
        assert (pos, neg) == (list(THREE_CYCLE_GENERATOR[0]), list(THREE_CYCLE_GENERATOR[1]))

    def test_three_cycle_discriminant(self):
        m = three_cycle_model()
        assert hypersurface_sigma_test(m) == (True, 0)
        c = [1] * 8
        c[3] = Fraction(3, 2)
        in_sigma, value = hypersurface_sigma_test(m, c)
        assert not in_sigma and value == Fraction(1, 2)

    def test_curve_discriminant(self):
        # a x^2 + b x + c: kernel (1,-2,1), discriminant 4ac - b^2
        m = validate_model([[0, 1, 2]])
        assert hypersurface_discriminant(m, [3, 5, 7]) == 4 * 3 * 7 - 25

    def test_not_hypersurface(self):
        with pytest.raises(NotHypersurface):
            hypersurface_kernel(validate_model([[0, 1, 2, 3]]))

    def test_not_general_position(self):
        m = validate_model([[0, 1, 2, 0], [0, 0, 0, 1]])
        with pytest.raises(NotGeneralPosition):
            hypersurface_discriminant(m)

    def test_generator_vanishes_on_model(self, rng):
        for model in (three_cycle_model(rng.uniform(0.5, 2, 8)), segre_model(2, 2, rng.uniform(0.5, 2, 4))):
            pos, neg = hypersurface_generator(model)
            c = model.c_float
            # the binomial vanishes on p / c
            for _ in range(20):
                q = evaluate_map(model, rng.uniform(0.2, 3, model.d)) / c
                a = np.prod(q ** np.array(pos))
                b = np.prod(q ** np.array(neg))
                assert abs(a - b) <= 1e-10 * max(abs(a), abs(b))
