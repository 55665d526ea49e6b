import numpy as np
import pytest
from scipy.linalg import eigh_tridiagonal

from pdmorse import (
    ConstantMass,
    DegenerateSampleError,
    DiscretizedOperator,
    DomainTooWideError,
    ExponentialMass,
    Grid,
    ParameterError,
    discretize,
    eigenvalues_bisect,
    refine_richardson,
    residual_norm,
)
from pdmorse._kernels import (
    bisect_smallest_numpy,
    pivot_floor,
    solve_shifted_numpy,
    sturm_counts_numpy,
)


def zero(x):
    return np.zeros_like(np.asarray(x, dtype=float))


def box_operator(n_points):
    return discretize(ConstantMass(1.0), zero, Grid(0.0, np.pi, n_points))


def morse_well(a_c, b_c):
    def u(x):
        ex = np.exp(-np.asarray(x, dtype=float))
        return b_c**2 * ex**2 - b_c * (2 * a_c + 1) * ex

    return u


class TestDiscretize:
    def test_assembled_matrix_is_bitwise_symmetric(self):
        op = discretize(ExponentialMass(), zero, Grid(-2.0, 2.0, 101))
        dense = op.dense()
        assert np.array_equal(dense, dense.T)

    def test_interior_sizes(self):
        op = box_operator(11)
        assert op.size == 9
        assert op.off_diagonal.size == 8

    def test_overflow_names_the_node(self):
        with pytest.raises(DomainTooWideError):
            discretize(ExponentialMass(), zero, Grid(-400.0, 0.0, 51))

    def test_box_lowest_eigenvalue(self):
        # infinite well on [0, pi]: E_1 = 1 in these units
        res = refine_richardson(ConstantMass(1.0), zero, Grid(0.0, np.pi, 1001), 1)
        assert res.eigenvalues[0] == pytest.approx(1.0, abs=1e-7)

    def test_morse_well_reference_spectrum(self):
        # constant-mass well with A=2.5, B=1: E_n = -(A-n)^2, solver self-check
        grid = Grid(-4.0, 20.0, 601)
        res = refine_richardson(ConstantMass(1.0), morse_well(2.5, 1.0), grid, 3)
        assert np.allclose(res.eigenvalues, [-6.25, -2.25, -0.25], atol=2e-5)


class TestBisect:
    def test_two_by_two_analytic(self):
        grid = Grid(0.0, 3.0, 4)
        op = DiscretizedOperator(grid, np.array([2.0, 2.0]), np.array([-1.0]))
        res = eigenvalues_bisect(op, 2)
        assert np.allclose(res.eigenvalues, [1.0, 3.0], atol=1e-12)

    def test_sturm_count_positive_definite(self):
        grid = Grid(0.0, 3.0, 4)
        op = DiscretizedOperator(grid, np.array([2.0, 2.0]), np.array([-1.0]))
        assert op.sturm_count(0.0) == 0
        assert op.sturm_count(2.0) == 1
        assert op.sturm_count(10.0) == 2

    def test_sturm_count_monotone_in_shift(self):
        rng = np.random.default_rng(7)
        d = rng.standard_normal(60)
        e = rng.standard_normal(59)
        esq = e * e
        shifts = np.linspace(-6, 6, 25)
        counts = sturm_counts_numpy(d, esq, shifts, pivot_floor(esq))
        assert np.all(np.diff(counts) >= 0)

    def test_count_at_exact_diagonal_resonance(self):
        # uniform matrix probed exactly at its diagonal value: half the
        # spectrum lies below
        d = np.full(8, 2.0)
        esq = np.full(7, 1.0)
        counts = sturm_counts_numpy(d, esq, np.array([2.0]), pivot_floor(esq))
        assert counts[0] == 4

    def test_matches_lapack_on_tame_matrix(self):
        rng = np.random.default_rng(11)
        d = rng.standard_normal(80)
        e = rng.standard_normal(79)
        grid = Grid(0.0, 81.0, 82)
        op = DiscretizedOperator(grid, d, e)
        mine = eigenvalues_bisect(op, 5).eigenvalues
        ref = eigh_tridiagonal(d, e, eigvals_only=True)[:5]
        assert np.allclose(mine, ref, atol=1e-10)

    def test_numpy_and_active_backend_agree(self):
        op = box_operator(301)
        esq = op.off_diagonal**2
        lower = float(np.min(op.diagonal) - 2 * np.max(np.abs(op.off_diagonal)))
        upper = float(np.max(op.diagonal) + 2 * np.max(np.abs(op.off_diagonal)))
        via_numpy = bisect_smallest_numpy(op.diagonal, esq, 3, lower, upper, 1e-12, pivot_floor(esq))
        via_active = eigenvalues_bisect(op, 3).eigenvalues
        assert np.allclose(via_numpy, via_active, atol=1e-11)

    def test_k_too_large(self):
        op = box_operator(5)
        with pytest.raises(ParameterError):
            eigenvalues_bisect(op, 10)

    def test_eigenvectors_residual_and_normalization(self):
        op = box_operator(501)
        res = eigenvalues_bisect(op, 2, want_vectors=True)
        dense = op.dense()
        for j in range(2):
            v = res.eigenvectors[:, j]
            lhs = dense @ v
            assert np.max(np.abs(lhs - res.eigenvalues[j] * v)) < 1e-6 * np.max(np.abs(lhs))
            assert op.grid.h * np.sum(v * v) == pytest.approx(1.0, rel=1e-12)

    def test_shifted_solver_against_dense(self):
        rng = np.random.default_rng(3)
        d = rng.standard_normal(40) * 3
        e = rng.standard_normal(39)
        rhs = rng.standard_normal(40)
        got = solve_shifted_numpy(d, e, 0.37, rhs)
        dense = np.diag(d - 0.37) + np.diag(e, 1) + np.diag(e, -1)
        want = np.linalg.solve(dense, rhs)
        assert np.allclose(got, want, rtol=1e-9, atol=1e-9)


class TestRichardson:
    def test_box_first_three(self):
        res = eigenvalues_bisect(box_operator(2001), 3)
        assert np.allclose(res.eigenvalues, [1.0, 4.0, 9.0], atol=1e-4)

    def test_extrapolation_tightens_box(self):
        res = refine_richardson(ConstantMass(1.0), zero, Grid(0.0, np.pi, 2001), 3)
        assert res.extrapolated
        assert np.allclose(res.eigenvalues, [1.0, 4.0, 9.0], atol=1e-8)

    def test_fixed_point_for_exact_values(self):
        # (4*v - v)/3 = v when both resolutions agree
        assert (4.0 * 5.0 - 5.0) / 3.0 == 5.0

    def test_convergence_order_near_two(self):
        exact = np.array([1.0, 4.0, 9.0])
        coarse = eigenvalues_bisect(box_operator(1001), 3).eigenvalues
        fine = eigenvalues_bisect(box_operator(2001), 3).eigenvalues
        order = np.log2((coarse - exact) / (fine - exact))
        assert np.all(np.abs(order - 2.0) < 0.2)

    def test_variational_domain_monotonicity(self):
        # widening the Dirichlet box can only lower the eigenvalues
        u = morse_well(2.5, 1.0)
        vals = []
        for hi in (10.0, 14.0, 18.0):
            grid = Grid(-4.0, hi, int((hi + 4) / 0.02) + 1)
            vals.append(eigenvalues_bisect(discretize(ConstantMass(1.0), u, grid), 3).eigenvalues)
        vals = np.array(vals)
        assert np.all(np.diff(vals, axis=0) <= 1e-13)


class TestResidualNorm:
    def _box_state(self, k):
        def phi(x):
            xa = np.asarray(x, dtype=float)
            return np.sin(k * xa), k * np.cos(k * xa), -k * k * np.sin(k * xa)

        return phi

    def test_exact_eigenpair_small_residual(self):
        xs = np.linspace(0.3, np.pi - 0.3, 50)
        r = residual_norm(ConstantMass(1.0), zero, 1.0, self._box_state(1), xs)
        assert r < 1e-12

    def test_perturbed_energy_detected(self):
        xs = np.linspace(0.3, np.pi - 0.3, 50)
        r = residual_norm(ConstantMass(1.0), zero, 1.1, self._box_state(1), xs)
        assert r > 1e-2

    def test_all_zero_samples_rejected(self):
        def phi(x):
            z = np.zeros_like(np.asarray(x, dtype=float))
            return z, z, z

        with pytest.raises(DegenerateSampleError):
            residual_norm(ConstantMass(1.0), zero, 1.0, phi, np.linspace(0, 1, 10))
