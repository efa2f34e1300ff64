"""Right weak Hopf modules, their coinvariants and the structure theorem.

A right weak Hopf module over A is stored by

* ``action[i]``: the matrix of ``v -> v . b_i`` on the carrier,
* ``coaction[k, j, a]``: ``v_k -> sum_ja coaction[k, j, a] v_j (x) b_a``.

One-sided module data for invariants use ``mats[i]`` as the matrix of the
action of ``b_i``.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import linear_core as lc
from .core import WeakHopfAlgebra
from .errors import ConsistencyError
from .integrals import integral_space, projection_matrix
from .report import Report


def _check(rep, F, name, r):
    r = np.asarray(r)
    rep.add(name, F.is_zero(r), F.residual(r))


@dataclass(eq=False)
class RightWHM:
    algebra: WeakHopfAlgebra = field(repr=False)
    action: np.ndarray
    coaction: np.ndarray
    name: str = ""

    def __post_init__(self):
        F, n = self.algebra.F, self.algebra.dim
        self.action = F.array(self.action)
        self.coaction = F.array(self.coaction)
        m = self.action.shape[1] if self.action.ndim == 3 else 0
        if self.action.shape != (n, m, m) or self.coaction.shape != (m, m, n):
            raise ValueError("action must be (dim A, m, m) and coaction (m, m, dim A)")

    @property
    def dim(self):
        return self.action.shape[1]

    def act(self, v, x):
        F = self.algebra.F
        return F.einsum("i,ipq,q->p", x, self.action, v)

    def coact(self, v):
        return self.algebra.F.einsum("k,kja->ja", v, self.coaction)

    def action_of(self, x):
        """Matrix of ``v -> v . x``."""
        return self.algebra.F.einsum("i,ipq->pq", x, self.action)


def check_whm(M: RightWHM) -> Report:
    """Module, comodule and compatibility axioms on basis data."""
    A = M.algebra
    F, D, Mu = A.F, A.comult, A.mult
    act, co = M.action, M.coaction
    m = M.dim
    rep = Report(f"weak Hopf module {M.name}".strip())
    # (v . b_i) . b_j = v . (b_i b_j)
    _check(rep, F, "action associative",
           F.einsum("ijk,kpq->ijpq", Mu, act) - F.einsum("jpr,irq->ijpq", act, act))
    _check(rep, F, "action unital", F.einsum("i,ipq->pq", A.unit, act) - F.eye(m))
    _check(rep, F, "coaction coassociative",
           F.einsum("kjb,jpa->kpab", co, co) - F.einsum("kpc,cab->kpab", co, D))
    _check(rep, F, "coaction counital", F.einsum("kja,a->kj", co, A.counit) - F.eye(m))
    lhs = F.einsum("ijk,jpa->kipa", act, co)
    # m_0 . x_(1) (x) m_1 x_(2)
    legs = F.einsum("kje,cpj->kecp", co, act)
    rhs = F.einsum("kecp,icea->kipa", legs, F.einsum("icd,eda->icea", D, Mu))
    _check(rep, F, "compatibility", lhs - rhs)
    # m_0 . piR(m_1) = m
    _check(rep, F, "m_0 . piR(m_1) = m",
           F.einsum("kja,ca,cpj->pk", co, A.pi_right, act) - F.eye(m))
    return rep


def example_dual_module(A: WeakHopfAlgebra) -> RightWHM:
    """The dual with ``phi . x = S(x) -> phi`` and ``phi -> sum_i beta^i phi (x) b_i``."""
    F = A.F
    act = F.einsum("ji,kjm->ikm", A.antipode, A.mult)
    co = A.comult.transpose(1, 0, 2).transpose(2, 1, 0)  # co[k, r, i] = D[r, i, k]
    return RightWHM(A, act, np.ascontiguousarray(co), name="dual module")


def regular_module(A: WeakHopfAlgebra) -> RightWHM:
    """A with right multiplication and coaction Delta."""
    return RightWHM(A, np.ascontiguousarray(A.mult.transpose(1, 2, 0)), A.comult,
                    name="regular module")


def coinvariants(M: RightWHM) -> np.ndarray:
    """Rows spanning ``{m : m_0 (x) m_1 = m . 1_(1) (x) 1_(2)}``."""
    A = M.algebra
    F = A.F
    m = M.dim
    if m == 0:
        return F.zeros((0, 0))
    eqs = M.coaction.transpose(1, 2, 0) - F.einsum("pa,pjk->jak", A.one2, M.action)
    return lc.span(F, lc.kernel(F, eqs.reshape(-1, m)), dim=m)


def coinvariants_report(M: RightWHM) -> Report:
    A = M.algebra
    F = A.F
    N = coinvariants(M)
    rep = Report("coinvariants")
    ok = all(lc.in_span(F, N, M.act(v, x)) for v in N for x in A.left_sub)
    rep.add("right submodule over the left subalgebra", ok)
    E = projection(M)
    _check(rep, F, "projection idempotent", F.dot(E, E) - E)
    rep.add("projection image is the coinvariants", lc.same_span(F, E.T, N))
    _check(rep, F, "projection fixes coinvariants", F.dot(N, E.T) - N if len(N) else F.zeros(0))
    # coinvariance of E(v) on every basis vector
    img = E.T
    if len(img):
        lhs = F.einsum("vk,kja->vja", img, M.coaction)
        rhs = F.einsum("pa,pjk,vk->vja", A.one2, M.action, img)
        _check(rep, F, "E(m) coinvariant", lhs - rhs)
    return rep


def projection(M: RightWHM):
    """Matrix of ``E(m) = m_0 . S(m_1)``."""
    A = M.algebra
    return A.F.einsum("kja,ca,cpj->pk", M.coaction, A.antipode, M.action)


def whm_project(M: RightWHM, v):
    return M.algebra.F.dot(projection(M), v)


# --------------------------------------------------------------------------
# amalgamated tensor products


@dataclass
class Amalgam:
    module: RightWHM
    to_quotient: np.ndarray  # q x (s n)
    lift: np.ndarray  # (s n) x q
    relations: np.ndarray  # rows, canonical basis of the relation span
    report: Report


def amalgamated_product(A: WeakHopfAlgebra, left_action) -> Amalgam:
    """``N (x)_{A^L} A`` for a right A^L-module N.

    ``left_action[t]`` is the matrix of ``n -> n . x_t`` where ``x_t`` is the
    t-th row of ``A.left_sub``.  The quotient of ``N (x) A`` by the relations
    ``(n . x^L) (x) a - n (x) x^L a`` is represented by the non-pivot
    coordinates of the row-reduced relation span.
    """
    F, n = A.F, A.dim
    AL = A.left_sub
    nact = F.array(left_action) if F.kind != "C" else np.asarray(left_action, dtype=complex)
    s = nact.shape[1] if nact.ndim == 3 else 0
    if nact.shape != (len(AL), s, s):
        raise ValueError("need one s x s matrix per basis element of the left subalgebra")
    I_s, I_n = F.eye(s), F.eye(n)
    rels = []
    for t, x in enumerate(AL):
        Lx = F.einsum("i,ikj->jk", x, A.mult.transpose(0, 2, 1)).T  # y -> x y
        # (u, a) -> e_{(n_u . x), a} - e_{u, x b_a}
        r = F.einsum("wu,ca->wcua", nact[t], I_n) - F.einsum("wu,ca->wcua", I_s, Lx)
        rels.append(r.reshape(s * n, s * n).T)
    R = np.concatenate(rels) if rels else F.zeros((0, s * n))
    Rr, piv = lc.rref(F, R) if len(R) else (R, [])
    Rr = Rr[: len(piv)]
    free = [c for c in range(s * n) if c not in piv]
    q = len(free)
    sel_free = F.zeros((q, s * n))
    for r, c in enumerate(free):
        sel_free[r, c] = F.scalar(1)
    sel_piv = F.zeros((len(piv), s * n))
    for r, c in enumerate(piv):
        sel_piv[r, c] = F.scalar(1)
    Q = F.dot(sel_free, F.eye(s * n) - F.dot(Rr.T, sel_piv)) if len(piv) else sel_free
    lift = sel_free.T.copy()
    Rs = np.ascontiguousarray(A.mult.transpose(1, 2, 0))
    act = np.stack([F.dot(F.dot(Q, F.einsum("wu,ca->wcua", I_s, Rs[i]).reshape(s * n, s * n)),
                          lift) for i in range(n)]) if q else F.zeros((n, 0, 0))
    # (u, a) -> (u, c) (x) e with coefficient D[a, c, e]
    co_big = F.einsum("wu,ace->uawce", I_s, A.comult).reshape(s * n, s * n, n)
    co = F.einsum("kx,xye,jy->kje", lift.T, co_big, Q) if q else F.zeros((0, 0, n))
    rep = Report("amalgamated product")
    _check(rep, F, "action preserves relations",
           np.stack([F.dot(Q, F.dot(F.einsum("wu,ca->wcua", I_s, Rs[i]).reshape(s * n, s * n),
                                    Rr.T)) for i in range(n)]) if len(Rr) and q else F.zeros(0))
    if len(Rr) and q:
        _check(rep, F, "coaction preserves relations",
               F.einsum("rx,xye,jy->rje", Rr, co_big, Q))
    rep.add("dimension bookkeeping", q == s * n - len(piv),
            detail=f"{s} x {n} - {len(piv)} = {q}")
    module = RightWHM(A, act, co, name="amalgamated product")
    rep.extend(check_whm(module), prefix="module: ")
    return Amalgam(module, Q, lift, Rr, rep)


@dataclass
class FundamentalIso:
    alpha: np.ndarray
    beta: np.ndarray
    amalgam: Amalgam
    coinvariants: np.ndarray
    report: Report


def fundamental_iso(M: RightWHM) -> FundamentalIso:
    """``alpha(n (x) x) = n . x`` and ``beta(m) = E(m_0) (x) m_1`` with certificates."""
    A = M.algebra
    F, n = A.F, A.dim
    N = coinvariants(M)
    s = len(N)
    AL = A.left_sub
    left_action = []
    for x in AL:
        Ax = M.action_of(x)
        cols = [lc.coordinates(F, N, F.dot(Ax, v)) for v in N]
        left_action.append(np.stack(cols).T if s else F.zeros((0, 0)))
    am = amalgamated_product(A, np.stack(left_action) if s else F.zeros((len(AL), 0, 0)))
    # alpha on N (x) A, column (u, a) -> N_u . b_a
    alpha_big = F.einsum("apk,uk->pua", M.action, N).reshape(M.dim, s * n)
    alpha = F.dot(alpha_big, am.lift)
    E = projection(M)
    coords = F.zeros((s, M.dim))
    for j in range(M.dim):
        coords[:, j] = lc.coordinates(F, N, E[:, j])
    beta_big = F.einsum("kja,uj->uak", M.coaction, coords).reshape(s * n, M.dim)
    beta = F.dot(am.to_quotient, beta_big)
    rep = Report("fundamental theorem")
    rep.extend(am.report, prefix="amalgam: ")
    if len(am.relations):
        _check(rep, F, "alpha vanishes on relations", F.dot(alpha_big, am.relations.T))
    _check(rep, F, "alpha beta = id", F.dot(alpha, beta) - F.eye(M.dim))
    _check(rep, F, "beta alpha = id", F.dot(beta, alpha) - F.eye(alpha.shape[1]))
    _check(rep, F, "alpha intertwines actions",
           F.einsum("pk,ikj->ipj", alpha, am.module.action)
           - F.einsum("ipk,kj->ipj", M.action, alpha))
    _check(rep, F, "alpha intertwines coactions",
           F.einsum("kje,pj->kpe", am.module.coaction, alpha)
           - F.einsum("rk,rpe->kpe", alpha, M.coaction))
    bij = rep["alpha beta = id"].passed and rep["beta alpha = id"].passed
    if not bij:
        raise ConsistencyError("alpha and beta are not mutually inverse")
    return FundamentalIso(alpha, beta, am, N, rep)


def example_dual_report(A: WeakHopfAlgebra) -> Report:
    """Structure theorem on the dual module, compared with the integral theory."""
    F = A.F
    M = example_dual_module(A)
    rep = Report("dual module")
    rep.extend(check_whm(M), prefix="axioms: ")
    N = coinvariants(M)
    rep.add("coinvariants = left integrals of the dual",
            lc.same_span(F, N, integral_space(A.hat, "L").basis))
    _check(rep, F, "projection = dual integral projection",
           projection(M) - projection_matrix(A.hat, "L"))
    fi = fundamental_iso(M)
    rep.extend(fi.report, prefix="iso: ")
    rep.add("quotient dimension = dim A", fi.alpha.shape[1] == A.dim)
    return rep


# --------------------------------------------------------------------------
# one-sided modules and invariants


def invariants(A: WeakHopfAlgebra, mats, side="left") -> np.ndarray:
    """``{m : b_i . m = piL(b_i) . m}`` (left) or ``{m : m . b_i = m . piR(b_i)}``."""
    F = A.F
    mats = F.array(mats) if F.kind != "C" else np.asarray(mats, dtype=complex)
    P = A.pi_left if side == "left" else A.pi_right
    if side not in ("left", "right"):
        raise ValueError("side is 'left' or 'right'")
    eqs = mats - F.einsum("ki,kpq->ipq", P, mats)
    d = mats.shape[1]
    return lc.span(F, lc.kernel(F, eqs.reshape(-1, d)), dim=d)


def basic_modules(A: WeakHopfAlgebra) -> dict:
    """The eight modules on A and its dual: name -> (side, matrices)."""
    F, M, S = A.F, A.mult, A.antipode
    Ls = np.ascontiguousarray(M.transpose(0, 2, 1))
    Rs = np.ascontiguousarray(M.transpose(1, 2, 0))
    return {
        "_A A": ("left", Ls),
        "A_A": ("right", Rs),
        "^A A": ("left", F.einsum("mi,mpq->ipq", S, Rs)),
        "A^A": ("right", F.einsum("mi,mpq->ipq", S, Ls)),
        "_A A^": ("left", M.transpose(1, 0, 2)),
        "A^_A": ("right", M.copy()),
        "^A A^": ("left", F.einsum("ji,jkm->ikm", S, M)),
        "A^^A": ("right", F.einsum("ji,kjm->ikm", S, M)),
    }


def _generated_submodule(F, mats, W, d):
    cur = W
    while True:
        imgs = [F.dot(cur, m.T) for m in mats]
        nxt = lc.span(F, np.concatenate([cur] + imgs), dim=d)
        if len(nxt) == len(cur):
            return nxt
        cur = nxt


def _is_submodule(F, mats, W):
    return all(lc.same_span(F, np.concatenate([W, F.dot(W, m.T)]), W) for m in mats)


def _is_subcomodule(F, mats, W, d):
    # coaction w -> sum_i (b_i . w) (x) beta^i; W (x) A^ contains it iff each leg does
    n = len(mats)
    co = F.einsum("ipk->kpi", np.asarray(mats))
    for w in W:
        legs = F.einsum("k,kpi->ip", w, co)
        if lc.rank(F, np.concatenate([W, legs])) != len(W):
            return False
    return n >= 0


def basic_modules_report(A: WeakHopfAlgebra) -> Report:
    F = A.F
    rep = Report("basic modules")
    mods = basic_modules(A)
    H = A.hat
    for name, (side, mats) in mods.items():
        d = mats.shape[1]
        prod = F.einsum("ijk,kpq->ijpq", A.mult, mats)
        comp = (F.einsum("ipr,jrq->ijpq", mats, mats) if side == "left"
                else F.einsum("jpr,irq->ijpq", mats, mats))
        _check(rep, F, f"{name}: module axioms", prod - comp)
        _check(rep, F, f"{name}: unital", F.einsum("i,ipq->pq", A.unit, mats) - F.eye(d))
        inv = invariants(A, mats, side)
        ok = True
        for W in (inv, _generated_submodule(F, mats, inv, d)):
            if len(W):
                ok &= _is_submodule(F, mats, W) == _is_subcomodule(F, mats, W, d)
        rep.add(f"{name}: submodule iff subcomodule", ok)
    expected = {"_A A": integral_space(A, "L").basis, "A_A": integral_space(A, "R").basis,
                "_A A^": H.left_sub, "A^_A": H.right_sub}
    for name, target in expected.items():
        side, mats = mods[name]
        rep.add(f"invariants of {name}", lc.same_span(F, invariants(A, mats, side), target))
    return rep
