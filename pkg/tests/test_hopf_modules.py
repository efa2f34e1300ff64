import numpy as np
import pytest

from wha import linear_core as lc
from wha.core import trivial_representation
from wha.examples import cyclic_table, group_algebra, pair_groupoid, symmetric_table
from wha.hopf_modules import (
    RightWHM,
    amalgamated_product,
    basic_modules_report,
    check_whm,
    coinvariants,
    coinvariants_report,
    example_dual_module,
    example_dual_report,
    fundamental_iso,
    invariants,
    projection,
    regular_module,
    whm_project,
)
from wha.integrals import integral_space, projection_matrix
from wha.linear_core import Field

Q = Field.rationals()


def test_example_modules_pass(examples):
    for name, A in examples.items():
        for M in (example_dual_module(A), regular_module(A)):
            rep = check_whm(M)
            assert rep.passed, (name, M.name, [c.name for c in rep.failures()])


def test_zero_coaction_fails_counitality():
    A = pair_groupoid(2, Q)
    M = regular_module(A)
    broken = RightWHM(A, M.action, Q.zeros(M.coaction.shape))
    rep = check_whm(broken)
    assert not rep["coaction counital"].passed


def test_bad_shapes_are_rejected():
    A = group_algebra(cyclic_table(2), Q)
    with pytest.raises(ValueError):
        RightWHM(A, Q.zeros((2, 3, 3)), Q.zeros((3, 2, 2)))


def test_dual_module_coinvariants_are_dual_left_integrals(examples):
    for name, A in examples.items():
        N = coinvariants(example_dual_module(A))
        assert lc.same_span(A.F, N, integral_space(A.hat, "L").basis), name


def test_dual_module_projection_is_dual_integral_projection(examples):
    for name, A in examples.items():
        E = projection(example_dual_module(A))
        assert A.F.equal(E, projection_matrix(A.hat, "L")), name


def test_regular_module_coinvariants_match_projection(examples):
    for name, A in examples.items():
        M = regular_module(A)
        rep = coinvariants_report(M)
        assert rep.passed, (name, [c.name for c in rep.failures()])
        # for the regular module the coinvariants are the left subalgebra
        assert lc.same_span(A.F, coinvariants(M), A.left_sub), name


def test_projection_fixes_coinvariants():
    A = pair_groupoid(2, Q)
    M = example_dual_module(A)
    for v in coinvariants(M):
        assert Q.equal(whm_project(M, v), v)


def test_zero_module():
    A = group_algebra(cyclic_table(2), Q)
    M = RightWHM(A, Q.zeros((2, 0, 0)), Q.zeros((0, 0, 2)))
    assert coinvariants(M).shape[0] == 0


def test_hopf_case_amalgam_is_the_algebra():
    # over a Hopf algebra A^L is the ground field and N (x) A = A
    A = group_algebra(symmetric_table(3), Q)
    am = amalgamated_product(A, Q.array([[[1]]]))
    assert am.module.dim == A.dim
    assert am.report.passed


def test_amalgam_dimension_matches_dual(examples):
    for name, A in examples.items():
        rep = example_dual_report(A)
        assert rep.passed, (name, [c.name for c in rep.failures()])
        assert rep["quotient dimension = dim A"].passed


def test_amalgam_module_reproduces_itself():
    A = pair_groupoid(2, Q)
    base = fundamental_iso(example_dual_module(A))
    rebuilt = fundamental_iso(base.amalgam.module)
    n = rebuilt.alpha.shape[0]
    assert Q.equal(Q.dot(rebuilt.alpha, rebuilt.beta), Q.eye(n))


def test_scrambled_coaction_fails_axioms():
    A = pair_groupoid(2, Q)
    M = regular_module(A)
    broken = RightWHM(A, M.action, np.ascontiguousarray(M.coaction[:, :, ::-1]))
    rep = check_whm(broken)
    # the counit of the pair groupoid is constant, so counitality survives
    assert rep["coaction counital"].passed
    assert not rep["compatibility"].passed


def test_basic_modules(examples):
    for name, A in examples.items():
        rep = basic_modules_report(A)
        assert rep.passed, (name, [c.name for c in rep.failures()])


def test_trivial_representation_invariants():
    # over a Hopf algebra the whole trivial representation is invariant
    H = group_algebra(symmetric_table(3), Q)
    space, mats, _ = trivial_representation(H)
    assert len(invariants(H, mats, "left")) == len(space)
    # over the pair groupoid it is a proper subspace
    A = pair_groupoid(2, Q)
    space, mats, _ = trivial_representation(A)
    inv = invariants(A, mats, "left")
    assert 0 < len(inv) < len(space)
