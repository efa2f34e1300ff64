"""Acceptance criteria 1-10, one test each; the summary prints one line per criterion."""
import itertools
import time
from pathlib import Path

import numpy as np
import pytest

from wha import linear_core as lc
from wha.cli import main
from wha.core import check_axioms, dual
from wha.cstar import cstar_pipeline, cstar_certify, canonical_grouplike, radon_nikodym
from wha.document import emit, parse
from wha.examples import (
    cyclic_table,
    gamma_instance,
    group_algebra,
    haar_criterion_element,
    m2z2,
    matrix_algebra,
    normalize_index,
    pair_groupoid,
    symmetric_table,
    trace_weighted,
    bbop,
)
from wha.hopf_modules import example_dual_module, example_dual_report, fundamental_iso
from wha.integrals import (
    element_inverse,
    frobenius_test,
    haar,
    haar_bruteforce,
    integral_calculus_report,
    integral_space,
    is_integral,
    is_nondegenerate,
    is_semisimple,
    normalized_integral,
)
from wha.linear_core import Field

GOLDEN = Path(__file__).parent / "golden"
C = Field.complex()


def _close(F, a, b, tol=1e-9):
    """Exact equality over Q and GF(p), entrywise ``<= tol`` over C."""
    if a is None or b is None:
        return a is None and b is None
    if a.shape != b.shape:
        return False
    if F.kind == "C":
        return a.size == 0 or float(np.max(np.abs(a - b))) <= tol
    return F.is_zero(a - b)


def _require(rep, tol=1e-8):
    assert rep.passed, [str(c) for c in rep.failures()]
    assert rep.max_residual <= tol, rep.max_residual


@pytest.mark.criterion(1, "axiom suite on all examples, duals and twists")
def test_criterion_1_axioms(family):
    start = time.perf_counter()
    for name, A in family.items():
        rep = check_axioms(A, include_dual=False)
        assert rep.is_wha, (name, [c.name for c in rep.failures()])
        if A.F.kind == "C":
            assert rep.max_residual <= A.F.tol, (name, rep.max_residual)
        else:
            assert rep.max_residual == 0, name
    assert time.perf_counter() - start < 30


@pytest.mark.criterion(2, "dual(dual(A)) = A tensor by tensor")
def test_criterion_2_selfduality(family):
    for name, A in family.items():
        B = dual(dual(A))
        F = A.F
        for attr in ("mult", "unit", "comult", "counit", "antipode", "star"):
            assert _close(F, getattr(A, attr), getattr(B, attr)), (name, attr)


@pytest.mark.criterion(3, "M2(Z2) integrals: normalized l1, l2 degenerate, l1+l2 not normalized")
def test_criterion_3_m2z2():
    A = m2z2()
    F = A.F
    idx = {label: i for i, label in enumerate(A.labels)}
    l1 = F.zeros(4)
    l1[[idx["e11"], idx["e21"]]] = 1
    l2 = F.zeros(4)
    l2[[idx["e12"], idx["e22"]]] = 1
    space = integral_space(A, "L")
    assert space.dim == 2
    assert lc.same_span(F, space.basis, np.stack([l1, l2]))
    for l in (l1, l2):
        assert is_integral(A, l, "L")
        assert F.equal(F.dot(A.pi_left, l), A.unit)
        assert not is_nondegenerate(A, l)
    s = F.clean(l1 + l2)
    assert is_nondegenerate(A, s)
    assert F.is_zero(F.dot(A.pi_left, s))
    # l1 + l2 is the only non-degenerate element of the two-dimensional space
    nondeg = [c for c in itertools.product(range(2), repeat=2)
              if is_nondegenerate(A, F.dot(F.array(c), space.basis))]
    assert len(nondeg) == 1


@pytest.mark.criterion(4, "Maschke: semisimple iff normalized integral; separability idempotent")
def test_criterion_4_maschke(examples):
    negatives = []
    for name, A in examples.items():
        res = normalized_integral(A)
        assert (res.element is not None) == is_semisimple(A), name
        if res.element is None:
            negatives.append(name)
            continue
        check = res.report["(x (x) 1) q = q (1 (x) x)"]
        assert check.passed, name
        assert check.residual == 0 if A.F.kind != "C" else check.residual <= 1e-9, name
        _require(res.report, 1e-9)
    assert negatives == ["GF(2)[Z2]"]


def _negative_m2_gamma():
    """An index-1 ``gamma = diag(a, b)`` on M2 whose bbop has no Haar integral.

    Index 1 means ``1/a + 1/b = 1``; on that curve ``b = a/(a-1)`` and
    ``Tr gamma = a^2/(a-1)``.  Returns None when no admissible root exists.
    """
    for a in np.roots([1.0, 0.0, 0.0]):
        if abs(a) > 1e-9 and abs(a - 1) > 1e-9:
            return np.diag([a, a / (a - 1)])
    return None


def _criterion_invertible(B):
    x = haar_criterion_element(B)
    L = B.field.einsum("i,ijk->kj", x, B.mult)
    return lc.rank(B.field, L) == B.dim


@pytest.mark.criterion(5, "Haar integral of C[G]; existence criterion on bbop(M2(C), gamma)")
def test_criterion_5_haar():
    for table in (cyclic_table(2), cyclic_table(3), cyclic_table(4), symmetric_table(3)):
        A = group_algebra(table, C)
        h = haar(A).element
        expected = np.full(A.dim, 1 / A.dim, dtype=complex)
        assert np.max(np.abs(h - expected)) <= 1e-12
        brute = haar_bruteforce(A)
        assert brute is not None and brute.unique
        assert np.max(np.abs(brute.particular - h)) <= 1e-12
    # the invertibility criterion is Tr(gamma) != 0 along the index-1 family
    for a in (2.0, 3.0, -1.0, 0.5 + 1j):
        B = trace_weighted(matrix_algebra(2, C), np.diag([a, a / (a - 1)]))
        assert _criterion_invertible(B) == (abs(a + a / (a - 1)) > 1e-9)
    positive = normalize_index(trace_weighted(matrix_algebra(2, C), [[2, 0], [0, 0.5]]))
    assert _criterion_invertible(positive)
    assert (haar(bbop(positive)).element is not None) == _criterion_invertible(positive)
    gamma = _negative_m2_gamma()
    assert gamma is not None, "no index-1 gamma on M2(C) has a singular criterion element"
    negative = trace_weighted(matrix_algebra(2, C), gamma)
    assert not _criterion_invertible(negative)
    assert haar(bbop(negative)).element is None


@pytest.mark.criterion(6, "Frobenius criteria agree")
def test_criterion_6_frobenius(examples):
    for name, A in examples.items():
        fr = frobenius_test(A)
        assert fr.report["criteria agree"].passed, name
        assert fr.frobenius, name
        assert fr.left_integral is not None and is_nondegenerate(A, fr.left_integral), name


@pytest.mark.criterion(7, "fundamental theorem on the dual module")
def test_criterion_7_fundamental(examples):
    for name, A in examples.items():
        iso = fundamental_iso(example_dual_module(A))
        F = A.F
        size = iso.alpha.shape[0]
        assert _close(F, F.dot(iso.alpha, iso.beta), F.eye(size)), name
        assert _close(F, F.dot(iso.beta, iso.alpha), F.eye(iso.beta.shape[0])), name
        _require(iso.report, 1e-9)
        _require(example_dual_report(A), 1e-9)


@pytest.mark.criterion(8, "C* pipeline, canonical grouplike and Radon-Nikodym")
def test_criterion_8_cstar():
    start = time.perf_counter()
    instances = {"C[S3]": group_algebra(symmetric_table(3), C, name="C[S3]"),
                 "pair2": pair_groupoid(2, C),
                 "t=1": gamma_instance(1),
                 "t=2": gamma_instance(2)}
    for name, A in instances.items():
        _require(cstar_pipeline(A))
        cert = cstar_certify(A)
        gd = canonical_grouplike(cert)
        # a second, non-normalized left integral
        basis = integral_space(A, "L").basis
        l = 2 * cert.haar + 0.5 * basis[-1]
        _require(radon_nikodym(cert, l, gd).report)
        S2 = A.antipode @ A.antipode
        adg = A.left_mult(gd.g) @ A.right_mult(element_inverse(A, gd.g))
        assert np.max(np.abs(adg - S2)) <= 1e-8, name
        if name == "t=1":
            assert np.max(np.abs(gd.g - A.unit)) <= 1e-12
        if name == "t=2":
            assert np.max(np.abs(S2 - np.eye(A.dim))) > 0.1
    assert time.perf_counter() - start < 60


@pytest.mark.criterion(9, "integral calculus identities")
def test_criterion_9_calculus(family):
    for name, A in family.items():
        rep = integral_calculus_report(A)
        for key in ("left integral criteria a-f agree",
                    "(phi <- x) -> l = S(x)(phi -> l)",
                    "(x -> phi) -> r = (phi -> r) S^-1(x)",
                    "l <- (phi <- x) = S^-1(x)(l <- phi)",
                    "r <- (x -> phi) = (r <- phi) S(x)",
                    "1^ = sum S(r_a) -> lam^a",
                    "1 = sum r_a <- S^(lam^a)"):
            assert rep[key].passed, (name, key)
        assert all(c.passed for c in rep.checks if c.name.startswith("annihilator: ")), name
        _require(rep, 1e-9)


def _run(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr()


@pytest.mark.criterion(10, "CLI exit codes and document round trip")
def test_criterion_10_cli(capsys, tmp_path):
    docs = sorted(GOLDEN.glob("*.wha.json"))
    assert docs
    for path in docs:
        text = path.read_text()
        assert emit(parse(text)) == text, path.name
        code, out = _run(capsys, "convert", str(path))
        assert code == 0 and out.out == text, path.name
    code, out = _run(capsys, "verify", str(GOLDEN / "q_z3.wha.json"))
    assert code == 0
    code, out = _run(capsys, "verify", str(GOLDEN / "invalid" / "bad_antipode.wha.json"))
    assert code == 1
    code, out = _run(capsys, "verify", str(GOLDEN / "invalid" / "out_of_range.wha.json"))
    assert code == 2 and "line" in out.err
    code, out = _run(capsys, "verify", str(tmp_path / "missing.wha.json"))
    assert code == 2
    code, out = _run(capsys, "make", "m2z2")
    assert code == 0 and out.out == (GOLDEN / "m2z2.wha.json").read_text()
    code, out = _run(capsys, "dual", str(GOLDEN / "q_z3.wha.json"))
    assert code == 0 and out.out == (GOLDEN / "dual_q_z3.wha.json").read_text()
