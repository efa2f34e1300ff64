"""Integral theory of weak Hopf algebras.

Left integrals ``x l = piL(x) l``, right integrals ``r x = r piR(x)``, their
normalized and non-degenerate members, dual pairs, quasibases, modular
automorphisms, the q-trace ``chi`` and the Haar integral.

Functionals on A are coordinate vectors in the dual basis, so a functional
``f`` induces two maps ``A -> A^``: ``f_L(x) = f <- x`` (``y -> f(x y)``) and
``f_R(x) = x -> f`` (``y -> f(y x)``).
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import linear_core as lc
from .core import (WeakHopfAlgebra, centers, fhit, fhit_by, hit, hit_by, twist)
from .errors import ConsistencyError, Degenerate, NoDualPair, NoSolution, SingularMatrix
from .report import Report


def _rows(F, vectors, n):
    vectors = list(vectors)
    if not vectors:
        return F.zeros((0, n))
    return np.stack([np.asarray(v) for v in vectors])


def _check(rep, F, name, r, detail=""):
    r = np.asarray(r)
    rep.add(name, F.is_zero(r), F.residual(r), detail)


def _left_mults(A):
    """``out[i]`` is the matrix of ``y -> b_i y``."""
    return np.ascontiguousarray(A.mult.transpose(0, 2, 1))


def _right_mults(A):
    """``out[i]`` is the matrix of ``y -> y b_i``."""
    return np.ascontiguousarray(A.mult.transpose(1, 2, 0))


# --------------------------------------------------------------------------
# integral spaces


@dataclass
class IntegralSpace:
    """A basis (rows) of the left or right integrals of ``algebra``."""

    side: str
    basis: np.ndarray
    algebra: WeakHopfAlgebra = field(repr=False)

    @property
    def dim(self):
        return len(self.basis)

    def __contains__(self, x):
        return lc.in_span(self.algebra.F, self.basis, x)


def _integral_equations(A, side):
    F = A.F
    if side == "L":
        mats = _left_mults(A)
        proj = F.einsum("mi,mkj->ikj", A.pi_left, mats)
    elif side == "R":
        mats = _right_mults(A)
        proj = F.einsum("mi,mkj->ikj", A.pi_right, mats)
    else:
        raise ValueError("side must be 'L' or 'R'")
    return (mats - proj).reshape(-1, A.dim)


def integral_space(A: WeakHopfAlgebra, side="L") -> IntegralSpace:
    """Solve ``b_i l = piL(b_i) l`` (or the right-handed version) for all i."""
    # A is immutable, so the solved basis is memoized on the instance
    key = f"_integrals_{side}"
    if key not in A.__dict__:
        F = A.F
        eqs = _integral_equations(A, side)
        basis = lc.span(F, lc.kernel(F, eqs), dim=A.dim)
        if len(basis) == 0:
            raise ConsistencyError("no nonzero integrals; the input cannot be a weak Hopf algebra")
        basis.setflags(write=False)
        A.__dict__[key] = basis
    return IntegralSpace(side, A.__dict__[key], A)


def two_sided_integrals(A: WeakHopfAlgebra) -> np.ndarray:
    return lc.intersect(A.F, integral_space(A, "L").basis, integral_space(A, "R").basis)


def is_integral(A, x, side="L") -> bool:
    return A.F.is_zero(A.F.dot(_integral_equations(A, side), x))


def projection_matrix(A: WeakHopfAlgebra, side="L"):
    """Matrix of the projection onto left (right) integrals.

    ``L(x) = sum_i S^2^(beta^i) -> (b_i x)`` and
    ``R(x) = sum_i (x b_i) <- S^2^(beta^i)``.
    """
    F, M, D = A.F, A.mult, A.comult
    S2 = F.dot(A.antipode, A.antipode)
    if side == "L":
        return F.einsum("ijk,kab,ib->aj", M, D, S2)
    if side == "R":
        return F.einsum("jik,kab,ia->bj", M, D, S2)
    raise ValueError("side must be 'L' or 'R'")


def integral_projection(A: WeakHopfAlgebra, x, side="L"):
    return A.F.dot(projection_matrix(A, side), x)


def projection_report(A: WeakHopfAlgebra) -> Report:
    F = A.F
    rep = Report("integral projections")
    P = {s: projection_matrix(A, s) for s in "LR"}
    for s in "LR":
        space = integral_space(A, s)
        _check(rep, F, f"{s} lands in integrals", F.dot(_integral_equations(A, s), P[s]))
        _check(rep, F, f"{s} idempotent", F.dot(P[s], P[s]) - P[s])
        _check(rep, F, f"{s} fixes integrals", F.dot(space.basis, P[s].T) - space.basis)
        rep.add(f"{s} image spans integrals", lc.same_span(F, P[s].T, space.basis))
    _check(rep, F, "R = S L S^-1",
           P["R"] - F.dot(F.dot(A.antipode, P["L"]), A.antipode_inv))
    _check(rep, F, "dual L transposes to R", projection_matrix(A.hat, "L").T - P["R"])
    return rep


# --------------------------------------------------------------------------
# functionals


def functional_maps(A: WeakHopfAlgebra, f):
    """``(f_L, f_R)`` with ``f_L[k, j] = f(b_j b_k)`` and ``f_R[k, j] = f(b_k b_j)``."""
    FR = A.F.einsum("kjm,m->kj", A.mult, f)
    return FR.T.copy(), FR


def element_map(A: WeakHopfAlgebra, x):
    """Matrix of ``phi -> phi -> x = x_(1) phi(x_(2))``; x as a functional on the dual."""
    return A.F.einsum("k,kab->ab", x, A.comult)


def is_nondegenerate(A: WeakHopfAlgebra, x, kind="element") -> bool:
    """Non-degeneracy of ``x`` as a functional on the dual (kind "element")
    or of ``x`` as a functional on A (kind "functional")."""
    F = A.F
    if kind == "element":
        N = element_map(A, x)
    elif kind == "functional":
        N = functional_maps(A, x)[1]
    else:
        raise ValueError("kind is 'element' or 'functional'")
    return lc.rank(F, N) == A.dim


def nondegeneracy_report(A: WeakHopfAlgebra, l, side="L") -> Report:
    """Compare the three equivalent characterizations for an integral.

    For a left integral: non-degenerate; separating for the right actions of
    the counital subalgebras (``x -> l x`` injective there); cyclic for them
    (``l A^R`` and ``l A^L`` are the whole integral space).
    """
    F = A.F
    space = integral_space(A, side)
    rep = Report("non-degeneracy equivalences")
    nondeg = is_nondegenerate(A, l)
    verdicts = {"non-degenerate": nondeg}
    for name, sub in (("left", A.left_sub), ("right", A.right_sub)):
        act = [A.mul(l, x) if side == "L" else A.mul(x, l) for x in sub]
        img = _rows(F, act, A.dim)
        separating = lc.rank(F, img) == len(sub)
        cyclic = lc.same_span(F, img, space.basis)
        verdicts[f"separating for {name}"] = separating
        verdicts[f"cyclic for {name}"] = cyclic
    agree = len(set(verdicts.values())) == 1
    for k, v in verdicts.items():
        rep.add(k, True, detail=str(v))
    rep.add("characterizations agree", agree)
    return rep


# --------------------------------------------------------------------------
# normalized integrals and semisimplicity


@dataclass
class NormalizedIntegral:
    element: np.ndarray | None
    semisimple: bool
    report: Report


def trace_form(A: WeakHopfAlgebra):
    """``T[i, j] = Tr(y -> b_i b_j y)``."""
    F = A.F
    tr = F.clean(np.trace(A.mult, axis1=1, axis2=2))
    return F.einsum("ijk,k->ij", A.mult, tr)


def separability_element(A: WeakHopfAlgebra):
    """Solve ``mu(q) = 1`` and ``(b_i (x) 1) q = q (1 (x) b_i)``; None if impossible."""
    F, n, M = A.F, A.dim, A.mult
    I = F.eye(n)
    rows = [F.einsum("pqa->apq", M).reshape(n, n * n)]
    Ls, Rs = _left_mults(A), _right_mults(A)
    for i in range(n):
        # (L_i (x) I - I (x) R_i) vec(q)
        rows.append((F.einsum("ap,bq->abpq", Ls[i], I) - F.einsum("ap,bq->abpq", I, Rs[i]))
                    .reshape(n * n, n * n))
    rhs = np.concatenate([A.unit, F.zeros(n * n * n)])
    try:
        sol = lc.solve_affine(F, np.concatenate(rows), rhs)
    except NoSolution:
        return None
    return sol.particular.reshape(n, n)


def is_semisimple(A: WeakHopfAlgebra) -> bool:
    """Semisimplicity decided without integrals.

    In characteristic 0 the trace form of the regular representation is
    non-degenerate exactly for semisimple algebras; over GF(p) (a perfect
    field) semisimple means separable, which is decided by solving for a
    separability idempotent.
    """
    F = A.F
    if F.characteristic == 0:
        return lc.rank(F, trace_form(A)) == A.dim
    return separability_element(A) is not None


def normalized_integral(A: WeakHopfAlgebra, side="L") -> NormalizedIntegral:
    """A left integral with ``piL(l) = 1`` (right: ``piR(r) = 1``), or None.

    The answer is cross-checked against :func:`is_semisimple`; for a found
    left integral the element ``l_(1) (x) S(l_(2))`` is certified to be a
    separability idempotent.
    """
    F, n = A.F, A.dim
    space = integral_space(A, side)
    P = A.pi_left if side == "L" else A.pi_right
    rep = Report(f"normalized {side} integral")
    try:
        sol = lc.solve_affine(F, F.dot(P, space.basis.T), A.unit)
        l = F.dot(sol.particular, space.basis)
    except NoSolution:
        l = None
    semi = is_semisimple(A)
    rep.add("existence matches semisimplicity", (l is not None) == semi,
            detail=f"normalized integral {'found' if l is not None else 'absent'}, "
                   f"{'semisimple' if semi else 'not semisimple'}")
    if (l is not None) != semi:
        raise ConsistencyError("normalized integral and semisimplicity verdicts differ")
    if l is not None:
        _check(rep, F, "normalized", F.dot(P, l) - A.unit)
        if side == "L":
            q = F.einsum("k,kap,bp->ab", l, A.comult, A.antipode)
        else:
            q = F.einsum("k,kpb,ap->ab", l, A.comult, A.antipode)
        _check(rep, F, "separability element multiplies to 1",
               F.einsum("pq,pqa->a", q, A.mult) - A.unit)
        Ls, Rs = _left_mults(A), _right_mults(A)
        r = np.stack([F.dot(Ls[i], q) - F.dot(q, Rs[i].T) for i in range(n)])
        _check(rep, F, "(x (x) 1) q = q (1 (x) x)", r)
    return NormalizedIntegral(l, semi, rep)


# --------------------------------------------------------------------------
# dual pairs, quasibases, modular automorphisms


@dataclass
class DualPair:
    l: np.ndarray
    lam: np.ndarray
    report: Report


def dual_left_integral(A: WeakHopfAlgebra, l) -> DualPair:
    """The functional ``lam`` with ``lam -> l = 1``, certified as a dual pair."""
    F = A.F
    if not is_integral(A, l, "L"):
        raise NoDualPair("element is not a left integral")
    N = element_map(A, l)
    try:
        lam = lc.solve_affine(F, N, A.unit)
    except NoSolution:
        raise NoDualPair("left integral is degenerate") from None
    if not lam.unique:
        raise NoDualPair("left integral is degenerate")
    lam = lam.particular
    rep = Report("dual pair")
    _check(rep, F, "lam -> l = 1", fhit(A, lam, l) - A.unit)
    _check(rep, F, "l -> lam = 1^", hit(A, l, lam) - A.counit)
    rep.add("lam is a left integral of the dual", is_integral(A.hat, lam, "L"))
    lam_L, _ = functional_maps(A, lam)
    _check(rep, F, "l_R lam_L = S", F.dot(N, lam_L) - A.antipode)
    if not rep.passed:
        raise ConsistencyError("dual pair certification failed: "
                               + ", ".join(c.name for c in rep.failures()))
    return DualPair(l, lam, rep)


@dataclass
class QuasiBasis:
    tensor: np.ndarray
    index: np.ndarray
    report: Report


def quasibasis(A: WeakHopfAlgebra, f) -> QuasiBasis:
    """``sum_i f_R^-1(beta^i) (x) b_i`` and the index ``sum_i a_i b_i``."""
    F = A.F
    f_L, f_R = functional_maps(A, f)
    try:
        Q = lc.inverse(F, f_R)
    except SingularMatrix:
        raise Degenerate("functional is degenerate") from None
    index = F.einsum("pq,pqa->a", Q, A.mult)
    rep = Report("quasibasis")
    n = A.dim
    # sum_i f(x a_i) b_i = x  and  sum_i a_i f(b_i x) = x
    _check(rep, F, "sum f(x a_i) b_i = x", F.einsum("xpm,m,pi->xi", A.mult, f, Q) - F.eye(n))
    _check(rep, F, "sum a_i f(b_i x) = x", F.einsum("ixm,m,pi->xp", A.mult, f, Q) - F.eye(n))
    Ls, Rs = _left_mults(A), _right_mults(A)
    _check(rep, F, "index is central", np.stack([F.dot(Ls[i] - Rs[i], index) for i in range(n)]))
    return QuasiBasis(Q, index, rep)


def dual_pair_quasibasis_report(A: WeakHopfAlgebra, pair: DualPair) -> Report:
    """Quasibasis of ``lam`` is ``l_(2) (x) S^-1(l_(1))`` with index ``S^-1 piL(l)``."""
    F = A.F
    qb = quasibasis(A, pair.lam)
    rep = Report("dual pair quasibasis")
    rep.extend(qb.report)
    expected = F.einsum("k,kap,qa->pq", pair.l, A.comult, A.antipode_inv)
    _check(rep, F, "quasibasis = l_(2) (x) S^-1(l_(1))", qb.tensor - expected)
    _check(rep, F, "index = S^-1 piL(l)", qb.index - A.S_inv(F.dot(A.pi_left, pair.l)))
    normalized = F.is_zero(F.dot(A.pi_left, pair.l) - A.unit)
    unit_index = F.is_zero(qb.index - A.unit)
    rep.add("normalized iff index 1", normalized == unit_index,
            detail=f"normalized={normalized}")
    return rep


@dataclass
class ModularData:
    f: np.ndarray
    theta: np.ndarray
    is_qtrace: bool
    report: Report


def modular_automorphism(A: WeakHopfAlgebra, f) -> ModularData:
    """``theta_f = f_R^-1 f_L``, so that ``f(x y) = f(y theta_f(x))``."""
    F = A.F
    f_L, f_R = functional_maps(A, f)
    try:
        theta = F.dot(lc.inverse(F, f_R), f_L)
    except SingularMatrix:
        raise Degenerate("functional is degenerate") from None
    rep = Report("modular automorphism")
    lhs = F.einsum("ijm,m->ij", A.mult, f)
    rhs = F.einsum("ka,jkm,m->aj", theta, A.mult, f)
    _check(rep, F, "f(xy) = f(y theta(x))", lhs - rhs)
    prod = F.einsum("ijm,ai,bj->abm", A.mult, theta, theta)
    _check(rep, F, "theta multiplicative", prod - F.einsum("ijk,mk->ijm", A.mult, theta))
    S2 = F.dot(A.antipode, A.antipode)
    qtrace = F.is_zero(theta - S2)
    return ModularData(f, theta, qtrace, rep)


# --------------------------------------------------------------------------
# chi and the Haar integral


def chi(A: WeakHopfAlgebra):
    """``chi(x) = Tr(y -> S^-2(y) x)``."""
    F = A.F
    Sinv = A.antipode_inv
    return F.einsum("kij,kj->i", A.mult, F.dot(Sinv, Sinv))


def chi_report(A: WeakHopfAlgebra) -> Report:
    F = A.F
    c = chi(A)
    rep = Report("chi")
    Sinv2 = F.dot(A.antipode_inv, A.antipode_inv)
    alt = sum((hit_by(A, A.basis(i), Sinv2[:, i]) for i in range(A.dim)), F.zeros(A.dim))
    _check(rep, F, "sum beta^i <- S^-2(b_i) agrees", alt - c)
    rep.add("left integral of the dual", is_integral(A.hat, c, "L"))
    S2 = F.dot(A.antipode, A.antipode)
    # chi(xy) = chi(y S^2(x))
    lhs = F.einsum("ijm,m->ij", A.mult, c)
    rhs = F.einsum("ka,jkm,m->aj", S2, A.mult, c)
    _check(rep, F, "chi(xy) = chi(y S^2(x))", lhs - rhs)
    Shat2 = S2.T
    res = [hit(A, l, c) - F.dot(Shat2, hit_by(A, A.counit, l))
           for l in integral_space(A, "L").basis]
    _check(rep, F, "l -> chi = S^2^(1^ <- l)", np.stack(res))
    return rep


@dataclass
class HaarResult:
    element: np.ndarray | None
    chi_rank: int
    report: Report


def haar_bruteforce(A: WeakHopfAlgebra):
    """Solve the two-sided integral and double normalization equations directly."""
    F = A.F
    M = np.concatenate([_integral_equations(A, "L"), _integral_equations(A, "R"),
                        A.pi_left, A.pi_right])
    rhs = np.concatenate([F.zeros(2 * A.dim * A.dim), A.unit, A.unit])
    try:
        return lc.solve_affine(F, M, rhs)
    except NoSolution:
        return None


def haar_via_right_normalization(A: WeakHopfAlgebra):
    """A left integral with ``piR(l) = 1``, or None."""
    F = A.F
    basis = integral_space(A, "L").basis
    try:
        sol = lc.solve_affine(F, F.dot(A.pi_right, basis.T), A.unit)
    except NoSolution:
        return None
    return F.dot(sol.particular, basis)


def _haar_split_criterion(A: WeakHopfAlgebra, seed=0):
    """Semisimple, ``S^2 = Ad_g`` and ``tr D_r(g^-1) != 0`` on every block (C only)."""
    F = A.F
    if not is_semisimple(A):
        return False
    g = implementing_element(A, seed)
    if g is None:
        return False
    ginv = element_inverse(A, g)
    for e, nr in _blocks(A, seed):
        t = np.trace(A.left_mult(ginv) @ A.left_mult(e)) / nr
        if abs(t) <= F.tol * max(1.0, A.dim):
            return False
    return True


def _blocks(A: WeakHopfAlgebra, seed=0):
    """Minimal central idempotents of a semisimple complex algebra with block sizes."""
    F = A.F
    Z = A.center
    mats = [np.array([lc.coordinates(F, Z, A.mul(z, w)) for w in Z]).T for z in Z]
    unit = lc.coordinates(F, Z, A.unit)
    idem = lc.split_commutative(F, mats, unit, seed)
    out = []
    for c in idem:
        e = c @ Z
        r = lc.rank(F, A.left_mult(e))
        nr = int(round(r ** 0.5))
        if nr * nr != r:
            raise ConsistencyError(f"block of dimension {r} is not a full matrix algebra")
        out.append((e, nr))
    return out


def haar(A: WeakHopfAlgebra, seed=0) -> HaarResult:
    """The Haar integral, or ``element=None`` when it does not exist.

    Computed as the dual left integral of ``chi`` and cross-checked by the
    right-normalized left integral, by a direct affine solve, and over C by
    the split semisimple criterion.
    """
    F = A.F
    c = chi(A)
    _, c_R = functional_maps(A, c)
    rk = lc.rank(F, c_R)
    rep = Report("Haar integral")
    h = None
    if rk == A.dim:
        h = lc.solve_affine(F, c_R, A.counit).particular
    rep.add("chi non-degenerate", True, detail=f"rank {rk} of {A.dim}")
    alt = haar_via_right_normalization(A)
    brute = haar_bruteforce(A)
    verdicts = {"chi": h is not None, "right normalization": alt is not None,
                "direct solve": brute is not None}
    if F.kind == "C":
        verdicts["split criterion"] = _haar_split_criterion(A, seed)
    rep.add("existence criteria agree", len(set(verdicts.values())) == 1, detail=str(verdicts))
    if len(set(verdicts.values())) != 1:
        raise ConsistencyError(f"Haar existence criteria disagree: {verdicts}")
    if h is not None:
        _check(rep, F, "chi -> h = 1", fhit(A, c, h) - A.unit)
        rep.add("left integral", is_integral(A, h, "L"))
        rep.add("right integral", is_integral(A, h, "R"))
        _check(rep, F, "piL(h) = 1", F.dot(A.pi_left, h) - A.unit)
        _check(rep, F, "piR(h) = 1", F.dot(A.pi_right, h) - A.unit)
        _check(rep, F, "h^2 = h", A.mul(h, h) - h)
        _check(rep, F, "S(h) = h", A.S(h) - h)
        rep.add("unique", brute.unique)
        _check(rep, F, "direct solve agrees", brute.particular - h)
        _check(rep, F, "right normalization agrees", alt - h)
        if not rep.passed:
            raise ConsistencyError("Haar certification failed: "
                                   + ", ".join(x.name for x in rep.failures()))
    return HaarResult(h, rk, rep)


# --------------------------------------------------------------------------
# two-sided integrals, symmetry and S^4


def _verdict(found, F, nbasis):
    if found:
        return "yes"
    if F.kind != "GF" or lc.invertible_search_exhaustive(F, nbasis):
        return "no"
    return "unknown"


def find_nondegenerate(A: WeakHopfAlgebra, basis, seed=0):
    """Search the span of ``basis`` for an element non-degenerate on the dual.

    Returns ``(element or None, verdict)`` with verdict "yes", "no" or
    "unknown" (random search failed over a large finite field).
    """
    F = A.F
    if len(basis) == 0:
        return None, "no"
    hit_ = lc.invertible_in_span(F, [element_map(A, b) for b in basis], seed=seed)
    if hit_ is None:
        return None, _verdict(False, F, len(basis))
    _, coeffs, _ = hit_
    return F.dot(F.array(coeffs) if F.kind != "C" else coeffs, basis), "yes"


@dataclass
class TwoSided:
    basis: np.ndarray
    nondegenerate: np.ndarray | None
    verdict: str
    report: Report


def two_sided_analysis(A: WeakHopfAlgebra, seed=0) -> TwoSided:
    F = A.F
    I = two_sided_integrals(A)
    rep = Report("two-sided integrals")
    rep.add("dimension", True, detail=str(len(I)))
    j, verdict = find_nondegenerate(A, I, seed)
    rep.add("non-degenerate two-sided integral", True, detail=verdict)
    if j is not None:
        _check(rep, F, "all two-sided integrals are S-invariant",
               F.dot(I, A.antipode.T) - I if len(I) else F.zeros(0))
        zr = centers(A).right
        jz = _rows(F, [A.mul(j, z) for z in zr], A.dim)
        rep.add("I = j Z^R", lc.same_span(F, jz, I))
    return TwoSided(I, j, verdict, rep)


def implementing_element(A: WeakHopfAlgebra, seed=0):
    """An invertible g with ``g x g^-1 = S^2(x)``, or None if the search fails."""
    F, n = A.F, A.dim
    S2 = F.dot(A.antipode, A.antipode)
    Ls, Rs = _left_mults(A), _right_mults(A)
    # g b_i - S^2(b_i) g = 0, linear in g
    eqs = np.concatenate([Rs[i] - F.einsum("m,mkj->kj", S2[:, i], Ls) for i in range(n)])
    sols = lc.kernel(F, eqs)
    if len(sols) == 0:
        return None
    found = lc.invertible_in_span(F, [A.left_mult(s) for s in sols], seed=seed)
    if found is None:
        return None
    _, coeffs, _ = found
    return F.dot(F.array(coeffs) if F.kind != "C" else coeffs, sols)


def _innerness_verdict(A, seed):
    F, n = A.F, A.dim
    g = implementing_element(A, seed)
    if g is not None:
        return g, "yes"
    S2 = F.dot(A.antipode, A.antipode)
    Ls, Rs = _left_mults(A), _right_mults(A)
    eqs = np.concatenate([Rs[i] - F.einsum("m,mkj->kj", S2[:, i], Ls) for i in range(n)])
    return None, _verdict(False, F, len(lc.kernel(F, eqs)))


def element_inverse(A: WeakHopfAlgebra, x):
    return lc.solve_affine(A.F, A.left_mult(x), A.unit).particular


@dataclass
class SymmetryData:
    symmetric: str
    trace: np.ndarray | None
    implementing: np.ndarray | None
    a_left: np.ndarray | None
    report: Report


def symmetric_and_s4(A: WeakHopfAlgebra, seed=0) -> SymmetryData:
    """Symmetric iff a non-degenerate two-sided integral exists and S^2 is inner.

    When both A and its dual have non-degenerate two-sided integrals the
    element ``a_L = h^ -> h`` is computed and ``Ad(a_L a_R^-1) = S^4``,
    ``Ad(a_L a_R) = theta_h^^2`` are certified.
    """
    F, n = A.F, A.dim
    rep = Report("symmetry and S^4")
    two = two_sided_analysis(A, seed)
    g, inner = _innerness_verdict(A, seed)
    if two.verdict == "yes" and inner == "yes":
        sym = "yes"
    elif "no" in (two.verdict, inner):
        sym = "no"
    else:
        sym = "unknown"
    rep.add("symmetric", True, detail=f"{sym} (integral {two.verdict}, S^2 inner {inner})")
    tau = None
    if sym == "yes":
        j = two.nondegenerate
        chi_j = dual_left_integral(A, j).lam
        ginv = element_inverse(A, g)
        tau = hit(A, ginv, chi_j)
        md = modular_automorphism(A, tau)
        _check(rep, F, "witness is a trace", md.theta - F.eye(n))
        rep.add("witness is non-degenerate", is_nondegenerate(A, tau, "functional"))
        _check(rep, F, "g implements S^2",
               F.dot(A.left_mult(g), lc.inverse(F, A.right_mult(g)))
               - F.dot(A.antipode, A.antipode))
    a_L = None
    dual_two = two_sided_analysis(A.hat, seed)
    if two.nondegenerate is not None and dual_two.nondegenerate is not None:
        h, hh = two.nondegenerate, dual_two.nondegenerate
        a_L = fhit(A, hh, h)
        alpha_L = hit(A, h, hh)
        a_R = A.S(a_L)
        alpha_R = F.dot(A.antipode.T, alpha_L)
        rep.add("a_L in left subalgebra", lc.in_span(F, A.left_sub, a_L))
        _check(rep, F, "1^ <- a_L = alpha_L", hit_by(A, A.counit, a_L) - alpha_L)
        a_R_inv = element_inverse(A, a_R)
        u = A.mul(a_L, a_R_inv)
        v = A.mul(a_L, a_R)
        S4 = F.dot(F.dot(A.antipode, A.antipode), F.dot(A.antipode, A.antipode))
        ad_u = F.dot(A.left_mult(u), A.right_mult(element_inverse(A, u)))
        _check(rep, F, "Ad(a_L a_R^-1) = S^4", ad_u - S4)
        theta = modular_automorphism(A, hh).theta
        ad_v = F.dot(A.left_mult(v), A.right_mult(element_inverse(A, v)))
        _check(rep, F, "Ad(a_L a_R) = theta^2", ad_v - F.dot(theta, theta))
        H = A.hat
        w = H.mul(alpha_L, alpha_R)
        w_inv = element_inverse(H, w)
        res = []
        for i in range(n):
            psi = A.basis(i)
            lhs = hit(A, u, hit_by(A, psi, u))
            res.append(lhs - H.mul_many(w, psi, w_inv))
        _check(rep, F, "a_L a_R^-1 -> psi <- a_L a_R^-1 = Ad(alpha_L alpha_R) psi",
               np.stack(res))
    return SymmetryData(sym, tau, g, a_L, rep)


# --------------------------------------------------------------------------
# Frobenius and annihilators


@dataclass
class FrobeniusData:
    frobenius: bool
    left_integral: np.ndarray | None
    report: Report


def frobenius_test(A: WeakHopfAlgebra, seed=0) -> FrobeniusData:
    """``dim I^R = dim A^L`` versus a found non-degenerate integral versus the dual."""
    rep = Report("Frobenius")
    dim_ir, dim_al = integral_space(A, "R").dim, len(A.left_sub)
    by_dim = dim_ir == dim_al
    rep.add("dim I^R = dim A^L", True, detail=f"{dim_ir} vs {dim_al}: {by_dim}")
    l, found = find_nondegenerate(A, integral_space(A, "L").basis, seed)
    rep.add("non-degenerate left integral", True, detail=found)
    H = A.hat
    dual_dim = integral_space(H, "R").dim == len(H.left_sub)
    _, dual_found = find_nondegenerate(H, integral_space(H, "L").basis, seed)
    rep.add("dual is Frobenius", True, detail=f"dims {dual_dim}, search {dual_found}")
    verdicts = [by_dim, dual_dim]
    for v in (found, dual_found):
        if v != "unknown":
            verdicts.append(v == "yes")
    agree = len(set(verdicts)) == 1
    rep.add("criteria agree", agree)
    if not agree:
        raise ConsistencyError(f"Frobenius criteria disagree: {verdicts}")
    return FrobeniusData(by_dim, l, rep)


def annihilator_duality_check(A: WeakHopfAlgebra) -> Report:
    """``r.ann(Ker piL) = I^L``, ``l.ann(I^L) = Ker piL`` and the pairing of A^L with I^L."""
    F, n = A.F, A.dim
    rep = Report("annihilators")
    K = lc.kernel(F, A.pi_left)
    IL = integral_space(A, "L").basis
    if len(K):
        rann = lc.span(F, lc.kernel(F, np.concatenate([A.left_mult(k) for k in K])), dim=n)
    else:
        rann = F.eye(n)
    rep.add("right annihilator of Ker piL is I^L", lc.same_span(F, rann, IL))
    lann = lc.kernel(F, np.concatenate([A.right_mult(r) for r in rann]))
    rep.add("left annihilator of I^L is Ker piL", lc.same_span(F, lann, K) if len(K) or len(lann)
            else True)
    AL = A.left_sub
    prods = np.concatenate([F.dot(A.right_mult(l), AL.T) for l in IL])
    rep.add("x^L l = 0 for all l forces x^L = 0", lc.rank(F, prods) == len(AL))
    prods = np.concatenate([F.dot(A.left_mult(x), IL.T) for x in AL])
    rep.add("x^L l = 0 for all x^L forces l = 0", lc.rank(F, prods) == len(IL))
    return rep


# --------------------------------------------------------------------------
# identities of the integral calculus


def _test_elements(A, basis, seed, extra=3):
    """Integrals, random integral combinations, basis elements and random elements."""
    F = A.F
    rng = np.random.default_rng(seed)
    out = [("integral", b) for b in basis]
    for _ in range(extra):
        out.append(("integral", F.dot(F.random(rng, len(basis)), basis)))
    for i in range(A.dim):
        out.append(("other", A.basis(i)))
    for _ in range(extra):
        out.append(("other", F.random(rng, A.dim)))
    return out


def _arrow_tensors(A):
    """``HB[p, i] = beta^p <- b_i`` and ``HT[p, i] = b_i -> beta^p`` as vectors."""
    return A.mult.transpose(2, 0, 1), A.mult.transpose(2, 1, 0)


def left_integral_criteria(A: WeakHopfAlgebra, x) -> dict:
    """The six equivalent descriptions of a left integral, each evaluated on ``x``."""
    F, M, S = A.F, A.mult, A.antipode
    H = A.hat
    N = element_map(A, x)
    Ls = _left_mults(A)
    HB, _ = _arrow_tensors(A)
    out = {}
    out["a"] = is_integral(A, x, "L")
    # x_(1) (x) b_i x_(2) = S(b_i) x_(1) (x) x_(2)
    out["b"] = F.is_zero(F.einsum("ac,ibc->iab", N, Ls) - F.einsum("mi,mac,cb->iab", S, Ls, N))
    imgs = F.einsum("j,kji->ik", x, M)
    out["c"] = lc.rank(F, np.concatenate([H.left_sub, imgs])) == len(H.left_sub)
    # (beta^p <- b_i) -> x = S(b_i) (beta^p -> x)
    out["d"] = F.is_zero(F.einsum("ak,pik->pia", N, HB) - F.einsum("mi,cp,mca->pia", S, N, M))
    K = lc.kernel(F, A.pi_left)
    out["e"] = F.is_zero(F.einsum("pi,j,ijk->pk", K, x, M)) if len(K) else True
    out["f"] = is_integral(A, A.S(x), "R")
    return out


def twisted_arrow_residuals(A: WeakHopfAlgebra) -> dict:
    """Residual tensors of the four twisted arrow identities on basis data."""
    F, M, S, Sinv = A.F, A.mult, A.antipode, A.antipode_inv
    HB, HT = _arrow_tensors(A)
    out = {k: [] for k in "abcd"}
    for l in integral_space(A, "L").basis:
        N = element_map(A, l)
        out["a"].append(F.einsum("ak,pik->pia", N, HB) - F.einsum("mi,cp,mca->pia", S, N, M))
        out["c"].append(F.einsum("ka,pik->pia", N, HB) - F.einsum("mi,pc,mca->pia", Sinv, N, M))
    for r in integral_space(A, "R").basis:
        N = element_map(A, r)
        out["b"].append(F.einsum("ak,pik->pia", N, HT) - F.einsum("cp,mi,cma->pia", N, Sinv, M))
        out["d"].append(F.einsum("ka,pik->pia", N, HT) - F.einsum("pc,mi,cma->pia", N, S, M))
    return {k: np.stack(v) for k, v in out.items()}


def integral_calculus_report(A: WeakHopfAlgebra, seed=0) -> Report:
    F, n, D = A.F, A.dim, A.comult
    H = A.hat
    rep = Report("integral calculus")
    IL, IR = integral_space(A, "L").basis, integral_space(A, "R").basis
    ok = True
    for kind, x in _test_elements(A, IL, seed):
        v = left_integral_criteria(A, x)
        ok &= len(set(v.values())) == 1 and (kind == "other" or v["a"])
    rep.add("left integral criteria a-f agree", ok)
    rep.add("S(I^L) = I^R", lc.same_span(F, F.dot(IL, A.antipode.T), IR))
    tw = twisted_arrow_residuals(A)
    _check(rep, F, "(phi <- x) -> l = S(x)(phi -> l)", tw["a"])
    _check(rep, F, "(x -> phi) -> r = (phi -> r) S^-1(x)", tw["b"])
    _check(rep, F, "l <- (phi <- x) = S^-1(x)(l <- phi)", tw["c"])
    _check(rep, F, "r <- (x -> phi) = (r <- phi) S(x)", tw["d"])
    # dual bases of the left integrals of the dual and the right integrals
    lam = integral_space(H, "L").basis
    G = F.einsum("ai,bi->ab", lam, IR)
    try:
        Ginv = lc.inverse(F, G)
        rep.add("pairing of dual left and right integrals non-degenerate", True)
        r_dual = F.dot(Ginv.T, IR)  # lam^a(r_b) = delta
        one_hat = sum((hit(A, A.S(r_dual[a]), lam[a]) for a in range(len(lam))), F.zeros(n))
        _check(rep, F, "1^ = sum S(r_a) -> lam^a", one_hat - A.counit)
        one = sum((fhit_by(A, r_dual[a], F.dot(A.antipode.T, lam[a]))
                   for a in range(len(lam))), F.zeros(n))
        _check(rep, F, "1 = sum r_a <- S^(lam^a)", one - A.unit)
    except SingularMatrix:
        rep.add("pairing of dual left and right integrals non-degenerate", False)
    # conditional expectations x -> lam -> x
    lands, res_mod = True, []
    for lm in lam:
        E = F.einsum("kab,b->ak", D, lm)
        lands &= lc.rank(F, np.concatenate([A.left_sub, E.T])) == len(A.left_sub)
        # E(x <- beta^p) = E(x) <- beta^p
        res_mod.append(F.einsum("ac,kpc->pak", E, D) - F.einsum("cpb,ck->pbk", D, E))
    rep.add("E_lam lands in A^L", lands)
    _check(rep, F, "E_lam is a right module map", np.stack(res_mod))
    rep.extend(projection_report(A), prefix="projection: ")
    rep.extend(chi_report(A), prefix="chi: ")
    rep.extend(annihilator_duality_check(A), prefix="annihilator: ")
    return rep


def twist_table_report(A: WeakHopfAlgebra) -> Report:
    """Projections, counital subalgebras, integrals and duals of the twists."""
    F = A.F
    rep = Report("twists")
    Sinv = A.antipode_inv
    IL, IR = integral_space(A, "L").basis, integral_space(A, "R").basis
    table = {
        "op": (F.dot(Sinv, A.pi_right), F.dot(Sinv, A.pi_left), A.left_sub, A.right_sub, IR, IL),
        "cop": (F.dot(Sinv, A.pi_left), F.dot(Sinv, A.pi_right), A.right_sub, A.left_sub, IL, IR),
        "opcop": (A.pi_right, A.pi_left, A.right_sub, A.left_sub, IR, IL),
    }
    dual_twist = {"op": "cop", "cop": "op", "opcop": "opcop"}
    for kind, (pl, pr, al, ar, il, ir) in table.items():
        T = twist(A, kind)
        _check(rep, F, f"{kind}: piL", T.pi_left - pl)
        _check(rep, F, f"{kind}: piR", T.pi_right - pr)
        rep.add(f"{kind}: left subalgebra", lc.same_span(F, T.left_sub, al))
        rep.add(f"{kind}: right subalgebra", lc.same_span(F, T.right_sub, ar))
        rep.add(f"{kind}: left integrals", lc.same_span(F, integral_space(T, "L").basis, il))
        rep.add(f"{kind}: right integrals", lc.same_span(F, integral_space(T, "R").basis, ir))
        D, E = T.hat, twist(A.hat, dual_twist[kind])
        ok = all(F.equal(getattr(D, a), getattr(E, a))
                 for a in ("mult", "comult", "unit", "counit", "antipode"))
        rep.add(f"{kind}: dual is the {dual_twist[kind]} twist of the dual", ok)
        TT = twist(T, kind)
        ok = all(F.equal(getattr(TT, a), getattr(A, a))
                 for a in ("mult", "comult", "unit", "counit", "antipode"))
        rep.add(f"{kind}: involutive", ok)
    return rep
