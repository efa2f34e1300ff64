"""Star structures, C* certification and the canonical grouplike element.

Positivity of an element is tested in the GNS representation defined by the
Haar functional of the dual: ``<x, y> = h^(x* y)`` with Gram matrix ``G``
and the faithful representation ``y -> x y``.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import linear_core as lc
from .core import WeakHopfAlgebra, centers, fhit, fhit_by, hit, hit_by, is_grouplike
from .errors import NotCStar, NotPositive, SplitFailed, WhaError
from .integrals import (
    _blocks,
    dual_left_integral,
    element_inverse,
    haar,
    implementing_element,
    integral_space,
    is_nondegenerate,
    modular_automorphism,
    quasibasis,
    two_sided_integrals,
)
from .report import Report


def _check(rep, F, name, r, detail=""):
    r = np.asarray(r)
    rep.add(name, F.is_zero(r), F.residual(r), detail)


def _star_checks(A: WeakHopfAlgebra, rep: Report, prefix=""):
    F, n = A.F, A.dim
    st, M = A.star, A.mult
    cst = F.conj(st)
    _check(rep, F, prefix + "involutive", F.dot(st, cst) - F.eye(n))
    lhs = F.einsum("ijk,lk->ijl", F.conj(M), st)
    rhs = F.einsum("aj,bi,abl->ijl", st, st, M)
    _check(rep, F, prefix + "antimultiplicative", lhs - rhs)
    lhs = F.einsum("mk,mab->kab", st, A.comult)
    rhs = F.einsum("kcd,ac,bd->kab", F.conj(A.comult), st, st)
    _check(rep, F, prefix + "comultiplication is a *-map", lhs - rhs)
    _check(rep, F, prefix + "1* = 1", A.conj_star(A.unit) - A.unit)
    _check(rep, F, prefix + "eps(x*) = conj eps(x)", F.dot(A.counit, st) - F.conj(A.counit))
    _check(rep, F, prefix + "S(x*)* = S^-1(x)",
           F.dot(F.dot(st, F.conj(A.antipode)), cst) - A.antipode_inv)
    for side, basis in (("left", A.left_sub), ("right", A.right_sub)):
        ok = all(lc.in_span(F, basis, A.conj_star(x)) for x in basis)
        rep.add(f"{prefix}{side} subalgebra is a *-subalgebra", ok)


def check_star(A: WeakHopfAlgebra) -> Report:
    """The star axioms on A and, via ``<phi*, x> = conj <phi, S(x)*>``, on the dual."""
    rep = Report("star structure")
    if A.star is None:
        rep.add("star present", False, detail="no star data")
        return rep
    if A.F.kind != "C":
        rep.add("complex field", False, detail=f"field is {A.F}")
        return rep
    _star_checks(A, rep)
    _star_checks(A.hat, rep, prefix="dual: ")
    return rep


# --------------------------------------------------------------------------
# C* certification


@dataclass
class CStarCertificate:
    algebra: WeakHopfAlgebra
    cstar: bool
    haar: np.ndarray | None
    dual_haar: np.ndarray | None
    gram: np.ndarray | None
    gns_root: np.ndarray | None  # G^(1/2)
    report: Report

    def require(self):
        if not self.cstar:
            bad = ", ".join(c.name for c in self.report.failures())
            raise NotCStar(f"not a C*-weak Hopf algebra: {bad}")
        return self


def gram_matrix(A: WeakHopfAlgebra, functional):
    """``G[i, j] = f(b_i* b_j)``."""
    return A.F.einsum("ai,ajk,k->ij", A.star, A.mult, functional)


def cstar_certify(A: WeakHopfAlgebra, seed=0) -> CStarCertificate:
    """Haar on both sides, self-adjointness, a positive-definite GNS Gram
    matrix making the regular representation a *-representation, and
    positivity of the counit."""
    F = A.F
    rep = Report(f"C* certification {A.name}".strip())
    srep = check_star(A)
    rep.extend(srep, prefix="star: ")
    if not srep.passed:
        return CStarCertificate(A, False, None, None, None, None, rep)
    h = haar(A, seed).element
    hh = haar(A.hat, seed).element
    rep.add("Haar integral exists", h is not None)
    rep.add("dual Haar integral exists", hh is not None)
    if h is None or hh is None:
        return CStarCertificate(A, False, h, hh, None, None, rep)
    _check(rep, F, "h* = h", A.conj_star(h) - h)
    _check(rep, F, "dual h* = h", A.hat.conj_star(hh) - hh)
    G = gram_matrix(A, hh)
    _check(rep, F, "Gram matrix Hermitian", G - G.conj().T)
    try:
        w, _ = lc.hermitian_eig(G, F.tol)
    except ValueError:
        rep.add("Gram matrix positive definite", False, detail="not Hermitian")
        return CStarCertificate(A, False, h, hh, G, None, rep)
    pd = bool(w.min() > F.tol * max(1.0, w.max()))
    rep.add("Gram matrix positive definite", pd, detail=f"smallest eigenvalue {w.min():.6g}")
    if not pd:
        return CStarCertificate(A, False, h, hh, G, None, rep)
    W = lc.hermitian_sqrt(G, F.tol)
    Ginv = np.linalg.inv(G)
    res = [Ginv @ A.left_mult(A.basis(i)).conj().T @ G - A.left_mult(A.conj_star(A.basis(i)))
           for i in range(A.dim)]
    _check(rep, F, "regular representation is a *-representation", np.stack(res))
    E = gram_matrix(A, A.counit)
    rep.add("counit positive", lc.is_psd(E, F.tol * max(1.0, np.abs(E).max())),
            detail=f"smallest eigenvalue {lc.hermitian_eig(E, F.tol)[0].min():.6g}")
    rng = np.random.default_rng(seed)
    xs = rng.standard_normal((8, A.dim)) + 1j * rng.standard_normal((8, A.dim))
    vals = [A.eps(A.mul(A.conj_star(x), x)) for x in xs]
    rep.add("eps(x* x) >= 0 on random x",
            all(v.real >= -F.tol and abs(v.imag) <= F.tol * max(1.0, abs(v)) for v in vals))
    return CStarCertificate(A, rep.passed, h, hh, G, W, rep)


def gns_image(cert: CStarCertificate, x):
    """The Hermitian-basis matrix of ``x`` in the GNS representation."""
    W = cert.gns_root
    return W @ cert.algebra.left_mult(x) @ np.linalg.inv(W)


def is_positive(cert: CStarCertificate, x) -> bool:
    A = cert.require().algebra
    if not A.F.is_zero(A.conj_star(x) - x):
        return False
    T = gns_image(cert, x)
    return lc.is_psd((T + T.conj().T) / 2, A.F.tol * max(1.0, np.abs(T).max()))


def positive_sqrt(cert: CStarCertificate, x):
    """The positive square root of a positive element, pulled back to A."""
    A = cert.require().algebra
    F = A.F
    if not F.is_zero(A.conj_star(x) - x):
        raise NotPositive("element is not self-adjoint")
    T = gns_image(cert, x)
    R = lc.hermitian_sqrt((T + T.conj().T) / 2, F.tol * max(1.0, np.abs(T).max()))
    W = cert.gns_root
    L = np.linalg.inv(W) @ R @ W
    y = L @ A.unit
    if not F.is_zero(A.left_mult(y) - L):
        raise WhaError("square root is not represented by an element")
    return y


def block_trace(A: WeakHopfAlgebra, x, e, n_r):
    """Trace of ``x`` in the irreducible representation supported by ``e``."""
    return np.trace(A.left_mult(A.mul(x, e))) / n_r


# --------------------------------------------------------------------------
# sectors


@dataclass
class SectorData:
    idempotents: list
    dims: list
    vacuum: list
    z_left: dict
    z_right: dict
    h_parts: dict
    report: Report


def sectors(cert: CStarCertificate, seed=0) -> SectorData:
    A = cert.require().algebra
    F = A.F
    h = cert.haar
    try:
        blocks = _blocks(A, seed)
    except SplitFailed as exc:
        raise SplitFailed(f"{exc}; retry with another --seed") from None
    rep = Report("sectors")
    es = [e for e, _ in blocks]
    dims = [nr for _, nr in blocks]
    _check(rep, F, "idempotents sum to 1", sum(es) - A.unit)
    res = [A.mul(e, f) - (e if i == j else 0) for i, e in enumerate(es) for j, f in enumerate(es)]
    _check(rep, F, "orthogonal idempotents", np.stack(res))
    rep.add("block dimensions", True, detail=str(dims))
    vacuum, zL, zR, hq = [], {}, {}, {}
    for r, (e, nr) in enumerate(blocks):
        rk = lc.rank(F, A.left_mult(A.mul(h, e)))
        if rk % nr:
            rep.add(f"sector {r}: rank of D(h)", False, detail=f"{rk} not a multiple of {nr}")
            continue
        rk //= nr
        vacuum.append(rk > 0)
        if rk:
            rep.add(f"sector {r}: D(h) is a rank one projection", rk == 1, detail=f"rank {rk}")
            zL[r] = F.dot(A.pi_left, e)
            zR[r] = F.dot(A.pi_right, e)
            hq[r] = A.mul(h, e)
            _check(rep, F, f"sector {r}: h_q idempotent", A.mul(hq[r], hq[r]) - hq[r])
            _check(rep, F, f"sector {r}: z^R = S(z^L)", A.S(zL[r]) - zR[r])
    zs = list(zL.values())
    if zs:
        _check(rep, F, "z^L_q are orthogonal projections",
               np.stack([A.mul(a, b) - (a if i == j else 0)
                         for i, a in enumerate(zs) for j, b in enumerate(zs)]))
        _check(rep, F, "z^L_q sum to 1", sum(zs) - A.unit)
    ZL = centers(A).left
    rep.add("z^L_q minimal in the left center", len(zs) == len(ZL) and
            all(lc.in_span(F, ZL, z) for z in zs), detail=f"{len(zs)} of dim {len(ZL)}")
    rep.add("two-sided integrals spanned by h_q",
            lc.same_span(F, np.stack(list(hq.values())), two_sided_integrals(A)) if hq else False)
    _check(rep, F, "sum of h_q = h", sum(hq.values()) - h if hq else h)
    return SectorData(es, dims, vacuum, zL, zR, hq, rep)


# --------------------------------------------------------------------------
# conditional expectations


def conditional_expectation(cert: CStarCertificate, x, side="L"):
    """``E^L(x) = h^ -> x`` or ``E^R(x) = x <- h^``."""
    A = cert.require().algebra
    if side == "L":
        return fhit(A, cert.dual_haar, x)
    if side == "R":
        return fhit_by(A, x, cert.dual_haar)
    raise ValueError("side is 'L' or 'R'")


def conditional_expectation_report(cert: CStarCertificate, seed=0) -> Report:
    A = cert.require().algebra
    F = A.F
    rep = Report("conditional expectations")
    rng = np.random.default_rng(seed)
    xs = rng.standard_normal((4, A.dim)) + 1j * rng.standard_normal((4, A.dim))
    for side, sub in (("L", A.left_sub), ("R", A.right_sub)):
        E = np.stack([conditional_expectation(cert, A.basis(i), side) for i in range(A.dim)]).T
        rep.add(f"E^{side} lands in the subalgebra", all(lc.in_span(F, sub, c) for c in E.T))
        _check(rep, F, f"E^{side}(1) = 1", F.dot(E, A.unit) - A.unit)
        _check(rep, F, f"E^{side} fixes the subalgebra", F.dot(sub, E.T) - sub)
        res = [F.dot(E, A.mul_many(a, x, b)) - A.mul_many(a, F.dot(E, x), b)
               for a in sub for b in sub for x in xs[:2]]
        _check(rep, F, f"E^{side} bimodule map", np.stack(res))
        rep.add(f"E^{side}(x* x) positive",
                all(is_positive(cert, F.dot(E, A.mul(A.conj_star(x), x))) for x in xs))
    return rep


# --------------------------------------------------------------------------
# canonical grouplike element


@dataclass
class GrouplikeData:
    g: np.ndarray
    g_left: np.ndarray
    g_right: np.ndarray
    dual_g: np.ndarray
    dual_g_left: np.ndarray
    dual_g_right: np.ndarray
    report: Report


def _factors(cert: CStarCertificate):
    A = cert.algebra
    gL2 = fhit(A, cert.dual_haar, cert.haar)
    gR2 = fhit_by(A, cert.haar, cert.dual_haar)
    try:
        g_left = positive_sqrt(cert, gL2)
        g_right = positive_sqrt(cert, gR2)
    except NotPositive as exc:
        raise NotCStar(f"square root failed: {exc}") from None
    g = A.mul(g_left, element_inverse(A, g_right))
    return g, g_left, g_right


def _normalized_implementer(A, seed, blocks):
    """The positive S^2-implementer with balanced block traces, built from an
    arbitrary implementing element by rescaling each block."""
    g0 = implementing_element(A, seed)
    if g0 is None:
        return None
    g0inv = element_inverse(A, g0)
    out = np.zeros(A.dim, dtype=complex)
    for e, nr in blocks:
        t = block_trace(A, g0, e, nr)
        phase = t / abs(t)
        ti = block_trace(A, g0inv, e, nr) * phase
        s = np.sqrt(ti.real / (t / phase).real)
        out = out + s * A.mul(g0, e) / phase
    return out


def canonical_grouplike(cert: CStarCertificate, seed=0) -> GrouplikeData:
    """``g = g_L g_R^-1`` with ``g_L = (h^ -> h)^(1/2)``, ``g_R = (h <- h^)^(1/2)``."""
    A = cert.require().algebra
    F, n = A.F, A.dim
    H = A.hat
    h = cert.haar
    rep = Report("canonical grouplike element")
    g, gL, gR = _factors(cert)
    dcert = cstar_certify(H, seed)
    rep.add("dual is C*", dcert.cstar)
    dcert.require()
    dg, dgL, dgR = _factors(dcert)
    ginv = element_inverse(A, g)
    S2 = F.dot(A.antipode, A.antipode)
    # the four defining properties
    rep.add("g positive", is_positive(cert, g))
    _check(rep, F, "g invertible", A.mul(g, ginv) - A.unit)
    _check(rep, F, "g x g^-1 = S^2(x)", F.dot(A.left_mult(g), A.right_mult(ginv)) - S2)
    blocks = _blocks(A, seed)
    tr = [block_trace(A, g, e, nr) - block_trace(A, ginv, e, nr) for e, nr in blocks]
    _check(rep, F, "tr_r(g) = tr_r(g^-1)", np.array(tr))
    _check(rep, F, "S(g) = g^-1", A.S(g) - ginv)
    alt = _normalized_implementer(A, seed, blocks)
    rep.add("balanced positive implementer exists", alt is not None)
    if alt is not None:
        _check(rep, F, "unique: agrees with rescaled implementer", alt - g)
    # factorization
    rep.add("g_L in left subalgebra", lc.in_span(F, A.left_sub, gL))
    rep.add("g_R in right subalgebra", lc.in_span(F, A.right_sub, gR))
    _check(rep, F, "g_L g_R = g_R g_L", A.mul(gL, gR) - A.mul(gR, gL))
    _check(rep, F, "g_L^2 g_R^-2 = g^2",
           A.mul_many(gL, gL, element_inverse(A, A.mul(gR, gR))) - A.mul(g, g))
    rep.add("grouplike", is_grouplike(A, g))
    # Haar coproduct and the flip
    X = A.comul(h)
    T = F.dot(A.left_mult(g), A.right_mult(g))
    _check(rep, F, "h_(2) (x) h_(1) = h_(1) (x) g h_(2) g", X.T - F.dot(X, T.T))
    qb = quasibasis(A, hit(A, ginv, dual_left_integral(A, h).lam)).tensor
    SX = F.dot(A.antipode, X)
    _check(rep, F, "S(h_(1)) (x) h_(2) = sum x_i (x) g^-1 y_i",
           SX - F.dot(qb, A.left_mult(ginv).T))
    _check(rep, F, "h_(1) (x) S(h_(2)) = sum x_i g (x) y_i",
           F.dot(X, A.antipode.T) - F.dot(A.right_mult(g), qb))
    C = np.linalg.solve(A.star, SX)
    rep.add("(S (x) id) Delta(h) in the positive cone",
            F.is_zero(C - C.conj().T) and lc.is_psd((C + C.conj().T) / 2, F.tol * n))
    # cross relations with the dual
    _check(rep, F, "S(g_L) = g_R", A.S(gL) - gR)
    _check(rep, F, "S^-1(g_L) = g_R", A.S_inv(gL) - gR)
    _check(rep, F, "dual g_L = 1^ <- g_L", hit_by(A, A.counit, gL) - dgL)
    _check(rep, F, "dual g_L = 1^ <- g_R", hit_by(A, A.counit, gR) - dgL)
    _check(rep, F, "dual g_R = g_R -> 1^", hit(A, gR, A.counit) - dgR)
    _check(rep, F, "dual g_R = g_L -> 1^", hit(A, gL, A.counit) - dgR)
    _check(rep, F, "g_L = 1 <- dual g_L", fhit_by(A, A.unit, dgL) - gL)
    _check(rep, F, "g_L = 1 <- dual g_R", fhit_by(A, A.unit, dgR) - gL)
    _check(rep, F, "g_R = dual g_R -> 1", fhit(A, dgR, A.unit) - gR)
    _check(rep, F, "g_R = dual g_L -> 1", fhit(A, dgL, A.unit) - gR)
    _check(rep, F, "dual S(g_L) = g_R", H.S(dgL) - dgR)
    rep.add("dual g grouplike", is_grouplike(H, dg))
    return GrouplikeData(g, gL, gR, dg, dgL, dgR, rep)


def haar_modular_identities(cert: CStarCertificate, gd: GrouplikeData) -> Report:
    A = cert.require().algebra
    F, H = A.F, A.hat
    h, hh = cert.haar, cert.dual_haar
    rep = Report("Haar modular identities")
    v = A.mul(gd.g_left, gd.g_right)
    theta = modular_automorphism(A, hh).theta
    ad_v = F.dot(A.left_mult(v), A.right_mult(element_inverse(A, v)))
    _check(rep, F, "theta of the dual Haar = Ad(g_L g_R)", theta - ad_v)
    chi_h = dual_left_integral(A, h).lam
    dgR_inv = element_inverse(H, gd.dual_g_right)
    _check(rep, F, "chi = h^ g^_R^-2", H.mul_many(hh, dgR_inv, dgR_inv) - chi_h)
    tau = hit(A, element_inverse(A, gd.g), chi_h)
    _check(rep, F, "tau = g^_L^-1 h^ g^_R^-1",
           H.mul_many(element_inverse(H, gd.dual_g_left), hh, dgR_inv) - tau)
    _check(rep, F, "h^ = g_L g_R -> tau", hit(A, v, tau) - hh)
    _check(rep, F, "tau S-invariant", F.dot(A.antipode.T, tau) - tau)
    _check(rep, F, "tau is a trace", modular_automorphism(A, tau).theta - F.eye(A.dim))
    return rep


# --------------------------------------------------------------------------
# Radon-Nikodym derivatives


@dataclass
class RadonNikodym:
    rho_left: np.ndarray
    rho_right: np.ndarray
    positive_type: bool
    report: Report


def radon_nikodym(cert: CStarCertificate, l, gd: GrouplikeData | None = None,
                  seed=0) -> RadonNikodym:
    """``rho_R = piR(l) -> 1^`` and ``rho_L = S^-1(piR(l)) -> 1^`` for a left integral l."""
    A = cert.require().algebra
    F, H, n = A.F, A.hat, A.dim
    l = np.asarray(l, dtype=complex)
    if not lc.in_span(F, integral_space(A, "L").basis, l):
        raise WhaError("precondition: l is not a left integral")
    h = cert.haar
    p = F.dot(A.pi_right, l)
    rho_R = hit(A, p, A.counit)
    rho_L = hit(A, A.S_inv(p), A.counit)
    rep = Report("Radon-Nikodym derivatives")
    _check(rep, F, "rho_L = S^2(rho_R)", F.dot(F.dot(H.antipode, H.antipode), rho_R) - rho_L)
    res = [np.array([H.mul(H.basis(i), rho_R) @ h - l[i], H.mul(rho_L, H.basis(i)) @ h - l[i]])
           for i in range(n)]
    _check(rep, F, "<phi, l> = <phi rho_R, h> = <rho_L phi, h>", np.stack(res))
    nondeg = is_nondegenerate(A, l, "element")
    inv_R = lc.rank(F, H.left_mult(rho_R)) == n
    inv_L = lc.rank(F, H.left_mult(rho_L)) == n
    rep.add("non-degenerate iff rho invertible", nondeg == inv_R == inv_L,
            detail=f"non-degenerate {nondeg}")
    if nondeg:
        normalized = F.is_zero(F.dot(A.pi_left, l) - A.unit)
        idem = F.is_zero(A.mul(l, l) - l)
        rep.add("normalized iff l^2 = l", normalized == idem, detail=f"normalized {normalized}")
    # positive type: phi -> <phi* phi, l> on the dual
    P = gram_matrix(H, l)
    scale = F.tol * max(1.0, np.abs(P).max())
    pos_type = bool(np.allclose(P, P.conj().T, atol=scale) and lc.is_psd((P + P.conj().T) / 2, scale))
    pos_p = is_positive(cert, p)
    rep.add("positive type iff piR(l) >= 0", pos_type == pos_p, detail=f"positive type {pos_type}")
    if pos_type and pos_p:
        _check(rep, F, "rho_L = rho_R*", H.conj_star(rho_R) - rho_L)
        xi = hit(A, positive_sqrt(cert, p), A.counit)
        xs = H.conj_star(xi)
        res = [H.mul_many(xs, H.basis(i), xi) @ h - l[i] for i in range(n)]
        _check(rep, F, "<phi, l> = <xi* phi xi, h>", np.array(res))
    if nondeg and gd is not None:
        lam = dual_left_integral(A, l).lam
        q = fhit(A, F.dot(H.pi_right, lam), A.unit)
        gR_inv = element_inverse(A, gd.g_right)
        _check(rep, F, "piR(l) (piR^(lam) -> 1) = g_R^-2", A.mul(p, q) - A.mul(gR_inv, gR_inv))
    return RadonNikodym(rho_L, rho_R, pos_type, rep)


def cstar_pipeline(A: WeakHopfAlgebra, seed=0) -> Report:
    """Every certificate of this module on one algebra."""
    rep = Report(f"C* pipeline {A.name}".strip())
    cert = cstar_certify(A, seed)
    rep.extend(cert.report, prefix="certify: ")
    if not cert.cstar:
        return rep
    gd = canonical_grouplike(cert, seed)
    rep.extend(gd.report, prefix="grouplike: ")
    rep.extend(haar_modular_identities(cert, gd), prefix="modular: ")
    rep.extend(sectors(cert, seed).report, prefix="sectors: ")
    rep.extend(conditional_expectation_report(cert, seed), prefix="expectation: ")
    _check(rep, A.F, "E^L(h) = g_L^2",
           conditional_expectation(cert, cert.haar) - A.mul(gd.g_left, gd.g_left))
    rep.extend(radon_nikodym(cert, cert.haar, gd, seed).report, prefix="Radon-Nikodym h: ")
    return rep
