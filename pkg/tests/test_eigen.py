"""Eigensolver routes cross-checked against numpy and each other."""

import numpy as np
import pytest

from prsm.eigen import (
    JACOBI_MAX_N,
    Spectrum,
    circulant_eigenvalues,
    dense_sym_eigenvalues,
    jacobi_eigenvalues,
    tridiag_eigenvalues,
)
from prsm.ensembles import (
    SymCirculant,
    TriDiag,
    build_pseudo,
    member_rng,
    sample_random_circulant,
    sample_tridiag_hermite,
)
from prsm.errors import CapabilityError, DomainError
from prsm.gf2 import smallest_primitive
from prsm.sequences import msequence


def _seq(m):
    return msequence(smallest_primitive(m), (1,) * m)


def _numpy_reference(matrix):
    return np.sort(np.linalg.eigvalsh(matrix))


def test_cosine_route_matches_numpy_on_pseudo():
    for m in (3, 4, 5):
        s = _seq(m)
        for a in range(s.n):
            A = build_pseudo(s, a, 1)
            got = circulant_eigenvalues(A).values
            assert np.max(np.abs(got - _numpy_reference(A.full()))) < 1e-12


def test_fft_backend_agrees_with_cosine():
    for k in range(10):
        C = sample_random_circulant(101, member_rng(3, k))
        cos = circulant_eigenvalues(C, backend="cosine").values
        fft = circulant_eigenvalues(C, backend="fft").values
        assert np.max(np.abs(cos - fft)) < 1e-12


def test_even_order_circulant():
    # even n exercises the alternating-sign Nyquist term
    row = np.array([2.0, -1.0, 3.0, 7.0, 3.0, -1.0])
    C = SymCirculant(first_row=row, scale=0.5, n=6)
    got = circulant_eigenvalues(C).values
    assert np.max(np.abs(got - _numpy_reference(C.full()))) < 1e-12


def test_non_palindromic_row_rejected():
    C = SymCirculant(first_row=np.array([1.0, 1.0, -1.0]), scale=1.0, n=3)
    with pytest.raises(DomainError):
        circulant_eigenvalues(C)


def test_unknown_backend_rejected():
    s = _seq(3)
    with pytest.raises(DomainError):
        circulant_eigenvalues(build_pseudo(s, 0, 1), backend="walsh")


def test_dense_route_matches_numpy():
    rng = np.random.default_rng(11)
    for n in (2, 3, 17, 96, 97):
        M = rng.normal(size=(n, n))
        M = (M + M.T) / 2
        got = dense_sym_eigenvalues(M).values
        assert np.max(np.abs(got - _numpy_reference(M))) < 1e-11 * max(1, n)


def test_dense_route_on_structured_matrices():
    s = _seq(5)
    A = build_pseudo(s, 4, -1)
    got = dense_sym_eigenvalues(A).values
    assert np.max(np.abs(got - _numpy_reference(A.full()))) < 1e-12


def test_jacobi_matches_numpy():
    rng = np.random.default_rng(5)
    M = rng.normal(size=(33, 33))
    M = (M + M.T) / 2
    got = jacobi_eigenvalues(M).values
    assert np.max(np.abs(got - _numpy_reference(M))) < 1e-10


def test_jacobi_size_cap():
    with pytest.raises(CapabilityError):
        jacobi_eigenvalues(np.eye(JACOBI_MAX_N + 1))


def test_tridiag_route_matches_numpy():
    t = sample_tridiag_hermite(300, member_rng(2, 0), "standard")
    got = tridiag_eigenvalues(t).values
    assert np.max(np.abs(got - _numpy_reference(t.full()))) < 1e-10


def test_tridiag_scale_applied_to_values():
    t = TriDiag(diag=np.array([2.0, -2.0]), subdiag=np.array([0.0]))
    sp = tridiag_eigenvalues(t, scale=0.25)
    assert np.array_equal(sp.values, np.array([-0.5, 0.5]))


def test_three_routes_agree_on_one_matrix():
    C = sample_random_circulant(63, member_rng(9, 0))
    a = circulant_eigenvalues(C).values
    b = dense_sym_eigenvalues(C).values
    c = jacobi_eigenvalues(C).values
    assert np.max(np.abs(a - b)) < 1e-8
    assert np.max(np.abs(a - c)) < 1e-8


def test_values_sorted_and_provenance_tagged():
    s = _seq(4)
    A = build_pseudo(s, 1, 1)
    for sp, tag in (
        (circulant_eigenvalues(A), "circulant-cosine"),
        (circulant_eigenvalues(A, backend="fft"), "circulant-fft"),
        (dense_sym_eigenvalues(A), "householder-ql"),
        (jacobi_eigenvalues(A), "jacobi"),
    ):
        assert isinstance(sp, Spectrum)
        assert sp.provenance == tag
        assert sp.n == s.n
        assert np.all(np.diff(sp.values) >= 0)


def test_trace_and_frobenius_identities():
    s = _seq(5)
    for a in (0, 7, 19):
        A = build_pseudo(s, a, 1)
        F = A.full()
        vals = circulant_eigenvalues(A).values
        assert abs(vals.sum() - np.trace(F)) < 1e-9 * abs(np.trace(F))
        fro2 = float(np.sum(F * F))
        assert abs(np.sum(vals**2) - fro2) < 1e-9 * fro2
