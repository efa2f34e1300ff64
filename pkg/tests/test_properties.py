"""Property tests over randomly drawn groups, groupoids, fields and matrices."""
from fractions import Fraction

import numpy as np
from hypothesis import given, settings
from hypothesis import strategies as st

from wha import linear_core as lc
from wha.core import check_axioms, dual, pi, twist
from wha.document import emit, parse
from wha.examples import cyclic_table, group_algebra, groupoid_algebra, symmetric_table
from wha.integrals import haar, integral_space, is_integral
from wha.linear_core import Field

SETTINGS = settings(max_examples=25, deadline=None)


def _product(t1, t2):
    n2 = len(t2)
    n = len(t1) * n2
    return [[t1[a // n2][b // n2] * n2 + t2[a % n2][b % n2] for b in range(n)] for a in range(n)]


def _relabel(table, perm):
    n = len(table)
    out = [[0] * n for _ in range(n)]
    for a in range(n):
        for b in range(n):
            out[perm[a]][perm[b]] = perm[table[a][b]]
    return out


@st.composite
def group_tables(draw, max_order=6):
    kind = draw(st.sampled_from(["cyclic", "product", "symmetric"]))
    if kind == "cyclic":
        table = cyclic_table(draw(st.integers(1, max_order)))
    elif kind == "product":
        table = _product(cyclic_table(2), cyclic_table(draw(st.integers(1, max_order // 2))))
    else:
        table = symmetric_table(3)
    perm = draw(st.permutations(range(len(table))))
    return _relabel(table, list(perm))


fields = st.sampled_from([Field.rationals(), Field.gf(2), Field.gf(3), Field.gf(7),
                          Field.complex()])


@st.composite
def algebras(draw):
    F = draw(fields)
    table = draw(group_tables(max_order=4))
    objects = draw(st.integers(1, 2))
    if objects == 1:
        return group_algebra(table, F)
    return groupoid_algebra(objects, table, F)


def _equal(A, B):
    for attr in ("mult", "unit", "comult", "counit", "antipode"):
        assert A.F.equal(getattr(A, attr), getattr(B, attr)), attr


@SETTINGS
@given(group_tables(), fields)
def test_group_algebras_are_hopf(table, F):
    rep = check_axioms(group_algebra(table, F), include_dual=False)
    assert rep.is_wha and rep.is_hopf
    if F.exact:
        assert rep.max_residual == 0


@SETTINGS
@given(algebras())
def test_groupoid_algebras_are_weak_hopf(A):
    assert check_axioms(A, include_dual=False).is_wha


@SETTINGS
@given(algebras())
def test_double_dual_is_identity(A):
    _equal(dual(dual(A)), A)


@SETTINGS
@given(algebras(), st.sampled_from(["op", "cop", "opcop"]))
def test_twists_are_involutions(A, kind):
    _equal(twist(twist(A, kind), kind), A)


@SETTINGS
@given(algebras())
def test_emit_parse_idempotent(A):
    text = emit(A)
    B = parse(text)
    _equal(A, B)
    assert emit(B) == text


@SETTINGS
@given(algebras(), st.integers(0, 2**31))
def test_counital_projections_are_idempotent(A, seed):
    x = A.F.random(np.random.default_rng(seed), A.dim)
    for side in "LR":
        y = pi(A, x, side)
        assert A.F.equal(pi(A, y, side), y)


@SETTINGS
@given(algebras())
def test_integral_space_elements_are_integrals(A):
    for side in "LR":
        for l in integral_space(A, side).basis:
            assert is_integral(A, l, side)


@SETTINGS
@given(group_tables(max_order=5))
def test_haar_of_group_is_uniform(table):
    n = len(table)
    h = haar(group_algebra(table, Field.complex())).element
    assert np.allclose(h, np.full(n, 1 / n), atol=1e-12)


exact_fields = st.sampled_from([Field.rationals(), Field.gf(2), Field.gf(5), Field.gf(11)])


@SETTINGS
@given(exact_fields, st.integers(1, 5), st.integers(1, 5), st.integers(0, 2**31))
def test_rank_nullity(F, rows, cols, seed):
    rng = np.random.default_rng(seed)
    M = F.random(rng, (rows, cols))
    K = lc.kernel(F, M)
    assert lc.rank(F, M) + len(K) == cols
    for v in K:
        assert F.equal(F.dot(M, v), F.zeros(rows))


@SETTINGS
@given(exact_fields, st.integers(1, 5), st.integers(1, 5), st.integers(0, 2**31))
def test_solve_affine_on_consistent_systems(F, rows, cols, seed):
    rng = np.random.default_rng(seed)
    M = F.random(rng, (rows, cols))
    b = F.dot(M, F.random(rng, cols))
    sol = lc.solve_affine(F, M, b)
    assert F.equal(F.dot(M, sol.particular), b)
    assert sol.rank == lc.rank(F, M)


@SETTINGS
@given(exact_fields, st.integers(1, 5), st.integers(0, 2**31))
def test_inverse_when_full_rank(F, n, seed):
    M = F.random(np.random.default_rng(seed), (n, n))
    if lc.rank(F, M) < n:
        return
    assert F.equal(F.dot(M, lc.inverse(F, M)), F.eye(n))


@SETTINGS
@given(st.integers(1, 6), st.integers(0, 2**31))
def test_hermitian_sqrt_squares_back(n, seed):
    rng = np.random.default_rng(seed)
    X = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    M = X @ X.conj().T
    R = lc.hermitian_sqrt(M)
    assert np.allclose(R, R.conj().T, atol=1e-9)
    assert np.allclose(R @ R, M, atol=1e-8 * max(1, np.abs(M).max()))
    assert lc.is_psd(R)


@SETTINGS
@given(st.integers(1, 6), st.integers(0, 2**31))
def test_jacobi_matches_reference_spectrum(n, seed):
    rng = np.random.default_rng(seed)
    X = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    M = X + X.conj().T
    values = np.sort(np.real(lc.hermitian_eig(M)[0]))
    assert np.allclose(values, np.linalg.eigvalsh(M), atol=1e-8)


finite = st.floats(allow_nan=False, allow_infinity=False, width=64)


@given(finite, finite)
def test_complex_text_round_trip(re_, im):
    z = complex(re_, im)
    assert lc.parse_complex(lc.format_complex(z)) == z


@given(st.fractions())
def test_rational_text_round_trip(q):
    Q = Field.rationals()
    v = Q.parse(Q.format(Q.scalar(q)))
    assert Fraction(int(v.numerator), int(v.denominator)) == q
