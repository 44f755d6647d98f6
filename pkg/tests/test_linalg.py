import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from rmtspec import (
    ComplexSpectrum,
    CovarianceMatrix,
    DataMatrix,
    eigvals_general,
    eigvals_symmetric,
    lagged_correlation,
    matrix_sqrt_psd,
    sample_covariance,
    shift_matrix,
    split_symmetric,
    standardize_rows,
)
from rmtspec.errors import (
    LagOutOfRange,
    NotPSD,
    NotStandardized,
    NotSymmetric,
    ZeroVarianceRow,
    DimensionMismatch,
)

from oracles import (
    charpoly_eigs,
    greedy_pairing_residual,
    lagged_corr_loops,
    sample_cov_loops,
)


class TestStandardize:
    def test_two_point_row(self):
        X = standardize_rows(DataMatrix(np.array([[1.0, 3.0]])))
        np.testing.assert_allclose(X.entries, [[-1 / np.sqrt(2), 1 / np.sqrt(2)]], atol=1e-12)
        assert X.standardized

    def test_idempotent(self, rng):
        X = standardize_rows(DataMatrix(rng.standard_normal((4, 32))))
        Y = standardize_rows(X)
        np.testing.assert_allclose(Y.entries, X.entries, atol=1e-12)

    def test_seeded_matrix_moments(self):
        rng = np.random.default_rng(8)
        X = standardize_rows(DataMatrix(rng.standard_normal((8, 64))))
        a = X.entries
        assert np.abs(a.mean(axis=1)).max() < 1e-10
        np.testing.assert_allclose(a.var(axis=1, ddof=1), 1.0, atol=1e-8)

    def test_constant_row_raises(self):
        with pytest.raises(ZeroVarianceRow) as err:
            standardize_rows(DataMatrix(np.array([[1.0, 2.0], [5.0, 5.0]])))
        assert err.value.row == 1


class TestMatrixSqrt:
    def test_identity(self):
        S = matrix_sqrt_psd(CovarianceMatrix(np.eye(3), (3, 3)))
        np.testing.assert_allclose(S.entries, np.eye(3), atol=1e-12)

    def test_diagonal(self):
        S = matrix_sqrt_psd(CovarianceMatrix(np.diag([4.0, 9.0]), (2, 2)))
        np.testing.assert_allclose(S.entries, np.diag([2.0, 3.0]), atol=1e-12)

    def test_random_psd_squares_back(self, rng):
        B = rng.standard_normal((5, 5))
        T = B @ B.T
        S = matrix_sqrt_psd(CovarianceMatrix(T, (5, 5))).entries
        err = np.linalg.norm(S @ S - T) / np.linalg.norm(T)
        assert err < 1e-8
        np.testing.assert_allclose(S, S.T, atol=1e-12)

    def test_not_psd(self):
        with pytest.raises(NotPSD):
            matrix_sqrt_psd(CovarianceMatrix(np.diag([1.0, -0.5]), (2, 2)))


class TestSampleCovariance:
    def test_identity_input(self):
        A = sample_covariance(DataMatrix(np.eye(2)))
        np.testing.assert_allclose(A.entries, 0.5 * np.eye(2), atol=1e-15)

    def test_rank_one_all_ones(self):
        A = sample_covariance(DataMatrix(np.ones((3, 5))))
        np.testing.assert_allclose(A.entries, np.ones((3, 3)), atol=1e-14)
        w = np.linalg.eigvalsh(A.entries)
        np.testing.assert_allclose(np.sort(w), [0.0, 0.0, 3.0], atol=1e-12)

    def test_against_triple_loop(self, rng):
        X = rng.standard_normal((4, 8))
        A = sample_covariance(DataMatrix(X)).entries
        np.testing.assert_allclose(A, sample_cov_loops(X), atol=1e-12)

    def test_population_shaping(self, rng):
        X = rng.standard_normal((4, 16))
        B = rng.standard_normal((4, 4))
        T = CovarianceMatrix(B @ B.T, (4, 4))
        S = matrix_sqrt_psd(T).entries
        A = sample_covariance(DataMatrix(X), T).entries
        np.testing.assert_allclose(A, S @ X @ X.T @ S / 16, atol=1e-10)

    def test_population_dim_mismatch(self, rng):
        X = DataMatrix(rng.standard_normal((4, 8)))
        with pytest.raises(DimensionMismatch):
            sample_covariance(X, CovarianceMatrix(np.eye(3), (3, 3)))

    def test_psd_output(self, rng):
        X = DataMatrix(rng.standard_normal((6, 4)))  # p > n: rank deficient
        w = np.linalg.eigvalsh(sample_covariance(X).entries)
        assert w.min() >= -1e-10 * np.trace(sample_covariance(X).entries)


class TestShiftMatrix:
    def test_zero_lag_is_identity(self):
        np.testing.assert_array_equal(shift_matrix(4, 0), np.eye(4))

    def test_tau_one(self):
        D = shift_matrix(3, 1)
        np.testing.assert_array_equal(D, [[0, 1, 0], [0, 0, 1], [0, 0, 0]])

    def test_tau_two(self):
        D = shift_matrix(3, 2)
        assert D[0, 2] == 1.0
        np.testing.assert_array_equal(D.sum(axis=1), [1, 0, 0])

    @given(T=st.integers(1, 12), tau=st.integers(0, 11))
    @settings(max_examples=40, deadline=None)
    def test_indicator_definition(self, T, tau):
        if tau >= T:
            with pytest.raises(LagOutOfRange):
                shift_matrix(T, tau)
            return
        D = shift_matrix(T, tau)
        for t in range(T):
            for tp in range(T):
                assert D[t, tp] == (1.0 if tp == t + tau else 0.0)

    def test_negative_lag(self):
        with pytest.raises(LagOutOfRange):
            shift_matrix(4, -1)


class TestLaggedCorrelation:
    def test_zero_lag_matches_covariance(self, rng):
        X = standardize_rows(DataMatrix(rng.standard_normal((5, 20))))
        C = lagged_correlation(X, 0).entries
        A = sample_covariance(X).entries
        np.testing.assert_allclose(C, A, atol=1e-12)
        np.testing.assert_allclose(C, X.entries @ X.entries.T / 20, atol=1e-14)

    def test_ones_row_lag_one(self):
        # standardization bypassed deliberately: contract is the raw product
        X = DataMatrix(np.ones((1, 6)), standardized=True)
        C = lagged_correlation(X, 1)
        np.testing.assert_allclose(C.entries, [[5.0 / 6.0]], atol=1e-15)

    def test_against_direct_sum(self, rng):
        X = standardize_rows(DataMatrix(rng.standard_normal((5, 50))))
        C = lagged_correlation(X, 2).entries
        np.testing.assert_allclose(C, lagged_corr_loops(X.entries, 2), atol=1e-12)

    def test_matches_shift_matrix_route(self, rng):
        X = standardize_rows(DataMatrix(rng.standard_normal((4, 12))))
        a = X.entries
        for tau in (0, 1, 3, 11):
            C = lagged_correlation(X, tau).entries
            D = shift_matrix(12, tau)
            np.testing.assert_allclose(C, a @ D @ a.T / 12, atol=1e-13)

    def test_requires_standardized(self, rng):
        with pytest.raises(NotStandardized):
            lagged_correlation(DataMatrix(rng.standard_normal((3, 10))), 1)

    def test_lag_out_of_range(self, rng):
        X = standardize_rows(DataMatrix(rng.standard_normal((3, 10))))
        with pytest.raises(LagOutOfRange):
            lagged_correlation(X, 10)


class TestSplitSymmetric:
    def test_symmetric_input(self, rng):
        M = rng.standard_normal((4, 4))
        M = M + M.T
        from rmtspec.linalg import LaggedMatrix
        sym, asym = split_symmetric(LaggedMatrix(M, 0, (4, 4)))
        np.testing.assert_allclose(sym, M, atol=1e-14)
        np.testing.assert_allclose(asym, 0.0, atol=1e-14)

    def test_small_example(self):
        from rmtspec.linalg import LaggedMatrix
        C = LaggedMatrix(np.array([[0.0, 1.0], [0.0, 0.0]]), 1, (2, 2))
        sym, asym = split_symmetric(C)
        np.testing.assert_array_equal(sym, [[0, 0.5], [0.5, 0]])
        np.testing.assert_array_equal(asym, [[0, 0.5], [-0.5, 0]])

    @given(seed=st.integers(0, 2**31 - 1))
    @settings(max_examples=25, deadline=None)
    def test_reconstruction_and_spectra(self, seed):
        g = np.random.default_rng(seed)
        from rmtspec.linalg import LaggedMatrix
        C = LaggedMatrix(g.standard_normal((6, 6)), 1, (6, 6))
        sym, asym = split_symmetric(C)
        np.testing.assert_allclose(sym + asym, C.entries, atol=1e-14)
        assert np.abs(np.linalg.eigvals(sym).imag).max() < 1e-10
        assert np.abs(np.linalg.eigvals(asym).real).max() < 1e-10


class TestEigvals:
    def test_diagonal(self):
        s = eigvals_symmetric(np.diag([3.0, 1.0, 2.0]))
        np.testing.assert_allclose(s.values, [1, 2, 3], atol=1e-14)

    def test_rank_one_ones(self):
        s = eigvals_symmetric(np.ones((3, 3)))
        np.testing.assert_allclose(s.values, [0, 0, 3], atol=1e-12)

    def test_trace_consistency(self, rng):
        M = rng.standard_normal((7, 7))
        M = M + M.T
        s = eigvals_symmetric(M)
        assert abs(s.values.sum() - np.trace(M)) <= 1e-8 * max(1, abs(np.trace(M)))

    def test_rejects_asymmetric(self, rng):
        with pytest.raises(NotSymmetric):
            eigvals_symmetric(rng.standard_normal((4, 4)))

    def test_rotation_matrix(self):
        s = eigvals_general(np.array([[0.0, -1.0], [1.0, 0.0]]))
        np.testing.assert_allclose(s.values, [-1j, 1j], atol=1e-12)

    def test_general_diagonal(self):
        s = eigvals_general(np.diag([2.0, 5.0]))
        np.testing.assert_allclose(s.values, [2.0, 5.0], atol=1e-14)

    def test_conjugate_closure(self, rng):
        for _ in range(10):
            M = rng.standard_normal((6, 6))
            v = eigvals_general(M).values
            assert greedy_pairing_residual(v, np.conj(v)) < 1e-8

    def test_symmetric_vs_charpoly_oracle(self):
        rng = np.random.default_rng(42)
        for _ in range(100):
            n = rng.integers(1, 4)
            M = rng.standard_normal((n, n))
            M = M + M.T
            got = eigvals_symmetric(M).values
            want = np.sort(charpoly_eigs(M).real)
            np.testing.assert_allclose(got, want, atol=1e-8, rtol=1e-8)

    def test_general_vs_charpoly_oracle(self):
        rng = np.random.default_rng(43)
        for _ in range(100):
            n = rng.integers(1, 4)
            M = rng.standard_normal((n, n))
            got = eigvals_general(M).values
            assert greedy_pairing_residual(got, charpoly_eigs(M)) < 1e-8


class TestTypes:
    def test_data_matrix_rejects_nan(self):
        with pytest.raises(ValueError):
            DataMatrix(np.array([[1.0, np.nan]]))

    def test_complex_spectrum_sorted(self):
        s = ComplexSpectrum(np.array([2 + 1j, -1 + 0j, 2 - 1j]))
        np.testing.assert_array_equal(s.values, [-1 + 0j, 2 - 1j, 2 + 1j])

    def test_real_spectrum_trace_mismatch(self):
        from rmtspec import RealSpectrum
        with pytest.raises(ValueError):
            RealSpectrum(values=np.array([1.0, 2.0]), matrix_trace=10.0)
