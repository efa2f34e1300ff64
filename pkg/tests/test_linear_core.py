import numpy as np
import pytest

from wha import linear_core as lc
from wha.errors import NoSolution, NotPositive, SingularMatrix
from wha.linear_core import Field

Q = Field.rationals()
C = Field.complex()
GF7 = Field.gf(7)


def test_identity_system_has_unique_solution():
    sol = lc.solve_affine(Q, Q.eye(3), Q.unit_vector(3, 0))
    assert Q.equal(sol.particular, Q.unit_vector(3, 0))
    assert len(sol.kernel) == 0 and sol.unique


def test_zero_matrix_kernel_is_everything():
    assert len(lc.kernel(Q, Q.zeros((2, 2)))) == 2


def test_inconsistent_system_signals_no_solution():
    with pytest.raises(NoSolution):
        lc.solve_affine(Q, Q.zeros((2, 2)), Q.array([1, 0]))


@pytest.mark.parametrize("F", [Q, GF7, C], ids=str)
def test_planted_rank(F):
    rng = np.random.default_rng(5)

    def invertible():
        while True:
            P = F.random(rng, (5, 5))
            if lc.rank(F, P) == 5:
                return P

    D = F.zeros((5, 5))
    for i in range(3):
        D[i, i] = F.scalar(1)
    M = F.dot(F.dot(invertible(), D), invertible())
    assert lc.rank(F, M) == 3
    K = lc.kernel(F, M)
    assert len(K) == 2
    assert F.is_zero(F.dot(M, K.T))


def test_rational_inverse_is_exact():
    M = Q.array([["1/2", 1], [3, "-2/3"]])
    Minv = lc.inverse(Q, M)
    assert Q.equal(Q.dot(M, Minv), Q.eye(2))
    with pytest.raises(SingularMatrix):
        lc.inverse(Q, Q.array([[1, 2], [2, 4]]))


def test_gf_arithmetic_reduces():
    M = GF7.array([[3, 5], [1, 2]])
    Minv = lc.inverse(GF7, M)
    assert GF7.equal(GF7.dot(M, Minv), GF7.eye(2))
    assert GF7.scalar(9) == 2


def test_invertible_in_span_identity():
    found = lc.invertible_in_span(Q, [Q.eye(2)])
    assert found is not None
    m, coeffs, _ = found
    assert lc.rank(Q, m) == 2


def test_invertible_in_span_diagonal():
    basis = [Q.array([[1, 0], [0, 0]]), Q.array([[0, 0], [0, 1]])]
    m, coeffs, _ = lc.invertible_in_span(Q, basis)
    assert all(not Q.is_zero_scalar(c) for c in coeffs)


@pytest.mark.parametrize("F", [Q, GF7, C], ids=str)
def test_nilpotent_line_has_no_invertible(F):
    e12 = F.array([[0, 1], [0, 0]])
    assert lc.invertible_in_span(F, [e12]) is None


def test_exhaustive_search_over_gf2():
    F = Field.gf(2)
    assert lc.invertible_search_exhaustive(F, 2)


def test_hermitian_sqrt_examples():
    assert np.allclose(lc.hermitian_sqrt(np.eye(3)), np.eye(3))
    assert np.allclose(lc.hermitian_sqrt(np.diag([4.0, 9.0])), np.diag([2.0, 3.0]))
    rng = np.random.default_rng(1)
    v = rng.standard_normal(4) + 1j * rng.standard_normal(4)
    v /= np.linalg.norm(v)
    M = np.outer(v, v.conj())
    R = lc.hermitian_sqrt(M)
    assert np.max(np.abs(R @ R - M)) <= 1e-9
    with pytest.raises(NotPositive):
        lc.hermitian_sqrt(np.diag([1.0, -1.0]))


def test_jacobi_matches_numpy_spectrum():
    rng = np.random.default_rng(2)
    X = rng.standard_normal((6, 6)) + 1j * rng.standard_normal((6, 6))
    H = X + X.conj().T
    w, V = lc.hermitian_eig(H)
    assert np.allclose(np.sort(w), np.linalg.eigvalsh(H))
    assert np.allclose(V @ np.diag(w) @ V.conj().T, H)


def _diag_algebra_action(k):
    L = np.zeros((k, k, k), dtype=complex)
    for i in range(k):
        L[i, i, i] = 1
    return L


def test_split_one_dimensional():
    idem = lc.split_commutative(C, _diag_algebra_action(1), np.array([1.0 + 0j]))
    assert np.allclose(idem, [[1.0]])


def test_split_diagonal_c3():
    idem = lc.split_commutative(C, _diag_algebra_action(3), np.ones(3, dtype=complex))
    order = np.argsort([np.argmax(np.abs(e)) for e in idem])
    assert np.allclose(np.array(idem)[order], np.eye(3))


def test_split_center_of_s3():
    from wha.examples import group_algebra, symmetric_table

    A = group_algebra(symmetric_table(3), C)
    Z = A.center
    mats = [np.array([lc.coordinates(C, Z, A.mul(z, w)) for w in Z]).T for z in Z]
    unit = lc.coordinates(C, Z, A.unit)
    idem = lc.split_commutative(C, mats, unit)
    assert len(idem) == 3
    elems = [c @ Z for c in idem]
    assert np.allclose(sum(elems), A.unit)
    for i, e in enumerate(elems):
        for j, f in enumerate(elems):
            assert np.allclose(A.mul(e, f), e if i == j else 0, atol=1e-9)


def test_complex_format_round_trips():
    for z in (1 / 3 + 2j, -0.1, 1e-20 - 5j):
        assert lc.parse_complex(lc.format_complex(z)) == z


def test_rational_parse_and_format():
    v = Q.parse("-7/21")
    assert Q.format(v) == "-1/3"
