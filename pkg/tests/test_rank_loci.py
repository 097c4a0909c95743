import json
import random
from fractions import Fraction

import pytest
import sympy as sp
from hypothesis import given, settings
from hypothesis import strategies as st

from chowkit.errors import IncidenceViolated, NotAlternatingError, OddDimensionError, OddSizeError
from chowkit.rank_loci import (
    ALT,
    HOM,
    ExactMatrix,
    SampleConfig,
    det,
    det_section,
    fiber_over,
    kernel_basis,
    low_rank_sample,
    matrix_from_json,
    pf_section,
    pfaffian,
    pfaffian_elimination,
    pfaffian_expansion,
    probe_birational,
    probe_exceptional,
    random_alternating,
    random_matrix,
    rank,
)

M = ExactMatrix.from_rows


def to_sympy(A: ExactMatrix):
    return sp.Matrix(A.rows, A.cols, lambda i, j: sp.Rational(A[i, j].numerator, A[i, j].denominator))


def random_rational_alternating(rng, size, bound=6):
    a = [[Fraction(0)] * size for _ in range(size)]
    for i in range(size):
        for j in range(i + 1, size):
            x = Fraction(rng.randint(-bound, bound), rng.randint(1, 4))
            a[i][j], a[j][i] = x, -x
    return M(a)


@st.composite
def matrices(draw, max_dim=6, bound=5, rational=True):
    r = draw(st.integers(1, max_dim))
    c = draw(st.integers(1, max_dim))
    num = st.fractions(min_value=-bound, max_value=bound, max_denominator=5) if rational else st.integers(-bound, bound)
    return M([[draw(num) for _ in range(c)] for _ in range(r)])


class TestRank:
    def test_examples(self):
        assert rank(ExactMatrix.identity(3)) == 3
        assert rank(ExactMatrix.zeros(3, 4)) == 0

    def test_inner_dimension_bound(self):
        rng = random.Random(3)
        for n in range(2, 6):
            hits = 0
            for _ in range(20):
                phi = random_matrix(rng, n + 1, n - 1, 10) @ random_matrix(rng, n - 1, n, 10)
                r = rank(phi)
                assert r <= n - 1
                hits += r == n - 1
            assert hits >= 15

    @settings(max_examples=60)
    @given(matrices())
    def test_against_sympy_and_transpose(self, A):
        assert rank(A) == to_sympy(A).rank() == rank(A.T)

    @settings(max_examples=40)
    @given(st.integers(1, 6).flatmap(lambda n: st.lists(
        st.lists(st.fractions(min_value=-5, max_value=5, max_denominator=4), min_size=n, max_size=n),
        min_size=n, max_size=n)))
    def test_det_against_sympy(self, rows):
        A = M(rows)
        assert det(A) == to_sympy(A).det()


class TestKernel:
    def test_transpose_of_inclusion(self):
        phi = M([[1, 0], [0, 1], [0, 0]])
        assert kernel_basis(phi.T) == [(0, 0, 1)]

    def test_invertible(self):
        assert kernel_basis(M([[2, 1], [1, 1]])) == []

    def test_low_rank_hom_sample(self):
        rng = random.Random(5)
        phi = low_rank_sample(HOM, 3, rng, 10)
        assert len(kernel_basis(phi.T)) >= 2

    @settings(max_examples=60)
    @given(matrices())
    def test_rank_nullity_and_annihilation(self, A):
        basis = kernel_basis(A)
        assert len(basis) == A.cols - rank(A)
        for v in basis:
            assert not any(A.apply(v))
        if basis:
            assert rank(M(basis)) == len(basis)


class TestPfaffian:
    def test_two_by_two(self):
        for a in (1, -3, Fraction(5, 7)):
            assert pfaffian(M([[0, a], [-a, 0]])) == a

    def test_four_by_four_formula(self):
        rng = random.Random(11)
        for _ in range(20):
            A = random_alternating(rng, 4, 9)
            m = lambda i, j: A[i - 1, j - 1]  # noqa: E731
            assert pfaffian(A) == m(1, 2) * m(3, 4) - m(1, 3) * m(2, 4) + m(1, 4) * m(2, 3)

    def test_block_diagonal_sign(self):
        J = M([[0, 1, 0, 0], [-1, 0, 0, 0], [0, 0, 0, 1], [0, 0, -1, 0]])
        assert pfaffian(J) == 1

    def test_square_is_determinant_rational_8x8(self):
        rng = random.Random(8)
        for _ in range(5):
            A = random_rational_alternating(rng, 8)
            assert pfaffian(A) ** 2 == det(A) == to_sympy(A).det()

    def test_expansion_and_elimination_agree(self):
        rng = random.Random(12)
        for size in (0, 2, 4, 6, 8):
            for _ in range(5):
                A = random_rational_alternating(rng, size)
                assert pfaffian_expansion(A) == pfaffian_elimination(A)

    def test_elimination_handles_zero_pivots(self):
        A = M([[0, 0, 1, 0], [0, 0, 0, 1], [-1, 0, 0, 0], [0, -1, 0, 0]])
        assert pfaffian_elimination(A) == pfaffian_expansion(A) == -1
        Z = ExactMatrix.zeros(8, 8)
        assert pfaffian(Z) == 0

    def test_errors(self):
        with pytest.raises(NotAlternatingError):
            pfaffian(M([[0, 1], [1, 0]]))
        with pytest.raises(NotAlternatingError):
            pfaffian(M([[1, 1], [-1, 0]]))
        with pytest.raises(OddSizeError):
            pfaffian(ExactMatrix.zeros(3, 3))

    def test_alternating_rank_is_even(self):
        rng = random.Random(13)
        for size in range(1, 9):
            for _ in range(5):
                A = random_alternating(rng, size, 3)
                assert rank(A) % 2 == 0


class TestFibers:
    def test_hom_full_rank(self):
        f = fiber_over(HOM, M([[1, 0], [0, 1], [0, 0]]))
        assert f.dim == 0 and f.representative == (0, 0, 1)

    def test_alt_example(self):
        f = fiber_over(ALT, M([[0, 1, 0], [-1, 0, 0], [0, 0, 0]]))
        assert f.dim == 0 and f.representative == (0, 0, 1)

    def test_hom_low_rank(self):
        rng = random.Random(21)
        for n in range(2, 6):
            assert fiber_over(HOM, low_rank_sample(HOM, n, rng, 10)).dim >= 1

    def test_zero_matrix_fiber_is_everything(self):
        assert fiber_over(HOM, ExactMatrix.zeros(4, 3)).dim == 3
        assert fiber_over(ALT, ExactMatrix.zeros(5, 5)).dim == 4

    def test_shape_and_parity_errors(self):
        with pytest.raises(ValueError):
            fiber_over(HOM, ExactMatrix.zeros(3, 3))
        with pytest.raises(OddDimensionError):
            fiber_over(ALT, ExactMatrix.zeros(4, 4))
        with pytest.raises(NotAlternatingError):
            fiber_over(ALT, M([[0, 1, 0], [1, 0, 0], [0, 0, 0]]))


class TestSections:
    def test_det_section_example(self):
        assert abs(det_section((0, 0, 1), M([[1, 0], [0, 1], [0, 0]]))) == 1

    def test_det_section_incidence(self):
        with pytest.raises(IncidenceViolated):
            det_section((1, 0, 0), M([[1, 0], [0, 1], [0, 0]]))

    def test_det_section_homogeneity(self):
        rng = random.Random(31)
        for n in (2, 3, 4):
            phi = random_matrix(rng, n + 1, n, 9)
            v = kernel_basis(phi.T)[0]
            for lam in (2, -3, Fraction(1, 2)):
                assert det_section(v, lam * phi) == lam**n * det_section(v, phi)

    def test_pf_section_example(self):
        assert abs(pf_section((0, 0, 1), M([[0, 1, 0], [-1, 0, 0], [0, 0, 0]]))) == 1
        assert pf_section((1, 2, 3), ExactMatrix.zeros(3, 3)) == 0

    def test_pf_section_errors(self):
        with pytest.raises(IncidenceViolated):
            pf_section((1, 0, 0), M([[0, 1, 0], [-1, 0, 0], [0, 0, 0]]))

    def test_pf_section_homogeneity(self):
        rng = random.Random(32)
        for n in (2, 4, 6):
            phi = random_alternating(rng, n + 1, 9)
            v = kernel_basis(phi)[0]
            for lam in (2, -3, Fraction(2, 3)):
                assert pf_section(v, lam * phi) == lam ** (n // 2) * pf_section(v, phi)

    @pytest.mark.parametrize("n", [2, 3, 4, 5])
    def test_det_vanishing_iff_rank_deficient(self, n):
        rng = random.Random(100 + n)
        for _ in range(15):
            for phi in (random_matrix(rng, n + 1, n, 5), low_rank_sample(HOM, n, rng, 5)):
                v = kernel_basis(phi.T)[0]
                assert (det_section(v, phi) == 0) == (rank(phi) <= n - 1)

    @pytest.mark.parametrize("n", [2, 4, 6])
    def test_pf_vanishing_iff_rank_deficient(self, n):
        rng = random.Random(200 + n)
        for _ in range(15):
            for phi in (random_alternating(rng, n + 1, 5), low_rank_sample(ALT, n, rng, 5)):
                v = kernel_basis(phi)[0]
                assert (pf_section(v, phi) == 0) == (rank(phi) <= n - 2)

    def test_basis_choice_changes_value_not_vanishing(self):
        rng = random.Random(41)
        changed = 0
        for n in (2, 3, 4):
            for _ in range(20):
                phi = random_matrix(rng, n + 1, n, 6)
                v = kernel_basis(phi.T)[0]
                a, b = det_section(v, phi, pivot="max"), det_section(v, phi, pivot="last")
                assert (a == 0) == (b == 0)
                changed += a != b
        for n in (2, 4):
            for _ in range(20):
                phi = random_alternating(rng, n + 1, 6)
                v = kernel_basis(phi)[0]
                a, b = pf_section(v, phi, pivot="max"), pf_section(v, phi, pivot="last")
                assert (a == 0) == (b == 0)
        assert changed > 0


class TestProbes:
    def test_hom_birational(self):
        rep = probe_birational(HOM, 2, SampleConfig(seed=42, bound=10, samples=100))
        assert rep.passed
        assert rep.counts["full_rank"] == rep.counts["singleton_fibers"]
        assert sum(rep.counts[k] for k in ("full_rank", "degenerate_draws")) == 100

    def test_alt_birational(self):
        assert probe_birational(ALT, 4, SampleConfig(samples=100)).passed

    def test_alt_odd(self):
        with pytest.raises(OddDimensionError):
            probe_birational(ALT, 3)

    def test_degenerate_draws_counted(self):
        rep = probe_birational(HOM, 3, SampleConfig(bound=1, samples=100))
        assert rep.counts["degenerate_draws"] > 0 and rep.passed

    def test_exceptional(self):
        assert probe_exceptional(HOM, 3, SampleConfig(samples=30)).passed
        rep = probe_exceptional(ALT, 4, SampleConfig(samples=30))
        assert rep.passed and rep.counts["kernel_vectors"] >= 30 * 3

    def test_determinism(self):
        cfg = SampleConfig(seed=7, bound=4, samples=25)
        for fn, variant, n in ((probe_birational, HOM, 3), (probe_exceptional, ALT, 4)):
            a = json.dumps(fn(variant, n, cfg).to_json())
            b = json.dumps(fn(variant, n, cfg).to_json())
            assert a == b

    def test_samples_depend_only_on_seed_and_index(self):
        cfg = SampleConfig(seed=5)
        forward = [cfg.rng(i, "birational").random() for i in range(10)]
        backward = [cfg.rng(i, "birational").random() for i in reversed(range(10))]
        assert forward == backward[::-1]
        assert cfg.rng(3, "birational").random() != cfg.rng(3, "exceptional").random()

    def test_alt_low_rank_construction(self):
        rng = random.Random(9)
        for _ in range(10):
            A = low_rank_sample(ALT, 4, rng, 10)
            assert A.is_alternating() and rank(A) <= 2


class TestMatrixFiles:
    def test_parse(self):
        A = matrix_from_json([[0, "1/2"], ["-1/2", 0]])
        assert A[0, 1] == Fraction(1, 2) and pfaffian(A) == Fraction(1, 2)

    @pytest.mark.parametrize("bad", [[], [[0, 1.5]], [[True]], "x", [[0, "a/b"]]])
    def test_reject(self, bad):
        with pytest.raises(ValueError):
            matrix_from_json(bad)

    def test_ragged(self):
        with pytest.raises(ValueError):
            matrix_from_json([[0, 1], [2]])
