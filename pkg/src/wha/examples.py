"""Factories for the standard families of weak Hopf algebras."""
from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from . import linear_core as lc
from .core import WeakHopfAlgebra
from .errors import FactoryError, SingularMatrix
from .linear_core import Field
from .report import Report


# --------------------------------------------------------------------------
# groups and groupoids


def cyclic_table(n):
    return [[(i + j) % n for j in range(n)] for i in range(n)]


def symmetric_table(k):
    perms = list(itertools.permutations(range(k)))
    index = {p: i for i, p in enumerate(perms)}
    # (p q)(x) = p(q(x))
    return [[index[tuple(p[q[x]] for x in range(k))] for q in perms] for p in perms]


def _check_group(table):
    n = len(table)
    t = np.asarray(table)
    if t.shape != (n, n) or t.min() < 0 or t.max() >= n:
        raise FactoryError("multiplication table must be n x n with entries in range(n)")
    ids = [e for e in range(n) if all(t[e, g] == g and t[g, e] == g for g in range(n))]
    if len(ids) != 1:
        raise FactoryError("multiplication table has no identity")
    e = ids[0]
    for a, b, c in itertools.product(range(n), repeat=3):
        if t[t[a, b], c] != t[a, t[b, c]]:
            raise FactoryError("multiplication table is not associative")
    inv = []
    for g in range(n):
        hs = [h for h in range(n) if t[g, h] == e]
        if len(hs) != 1 or t[hs[0], g] != e:
            raise FactoryError(f"element {g} has no inverse")
        inv.append(hs[0])
    return t, e, inv


def group_algebra(table, field: Field = Field.rationals(), labels=None, name="K[G]"):
    """Group algebra with ``Delta(g) = g (x) g``, ``eps(g) = 1``, ``S(g) = g^-1``."""
    t, e, inv = _check_group(table)
    n = len(t)
    return _groupoid_from_data(n, lambda a, b: int(t[a, b]), inv, [e], field,
                               labels or tuple(f"g{i}" for i in range(n)), name)


def _groupoid_from_data(n, compose, inv, identities, field, labels, name):
    F = field
    M = F.zeros((n, n, n))
    for a in range(n):
        for b in range(n):
            c = compose(a, b)
            if c is not None:
                M[a, b, c] = F.scalar(1)
    D = F.zeros((n, n, n))
    S = F.zeros((n, n))
    for a in range(n):
        D[a, a, a] = F.scalar(1)
        S[inv[a], a] = F.scalar(1)
    unit = F.zeros(n)
    for i in identities:
        unit[i] = F.scalar(1)
    counit = F.array([1] * n)
    star = S.copy() if F.kind != "GF" else None
    return WeakHopfAlgebra(F, M, unit, D, counit, S, star, labels, name)


def groupoid_algebra(objects, table, field: Field = Field.rationals(), name="K[groupoid]"):
    """Algebra of the transitive groupoid ``objects x G x objects``.

    Morphisms are ``(i, g, j)`` from object j to object i; they compose as
    ``(i, g, j)(j, h, l) = (i, gh, l)`` and otherwise multiply to zero.
    With a one-element group this is the pair groupoid on ``objects``.
    """
    if objects < 1:
        raise FactoryError("a groupoid needs at least one object")
    t, e, inv = _check_group(table)
    g = len(t)
    morph = [(i, a, j) for i in range(objects) for a in range(g) for j in range(objects)]
    index = {m: k for k, m in enumerate(morph)}

    def compose(x, y):
        (i, a, j), (j2, b, l) = morph[x], morph[y]
        return index[(i, int(t[a, b]), l)] if j == j2 else None

    inverse = [index[(j, inv[a], i)] for (i, a, j) in morph]
    ids = [index[(i, e, i)] for i in range(objects)]
    if g == 1:
        labels = tuple(f"e{i + 1}{j + 1}" for (i, _, j) in morph)
    else:
        labels = tuple(f"({i},g{a},{j})" for (i, a, j) in morph)
    return _groupoid_from_data(len(morph), compose, inverse, ids, field, labels, name)


def pair_groupoid(objects, field: Field = Field.rationals()):
    return groupoid_algebra(objects, [[0]], field, name=f"pair groupoid {objects}")


def m2z2():
    """``M_2`` over GF(2) with ``Delta(e_ij) = e_ij (x) e_ij``."""
    A = pair_groupoid(2, Field.gf(2))
    A.name = "M2(Z2)"
    return A


# --------------------------------------------------------------------------
# B (x) B^op


@dataclass
class SeparableAlgebraInput:
    """A finite-dimensional algebra B with a functional E of index 1.

    ``mult[i, j, k]`` and ``unit`` as for weak Hopf algebras; ``E`` gives the
    values of the functional on the basis; ``star`` optionally gives the
    involution (``star[i, j]`` is the coefficient of ``b_i`` in ``b_j*``).
    """

    field: Field
    mult: np.ndarray
    unit: np.ndarray
    E: np.ndarray
    star: np.ndarray | None = None
    labels: tuple[str, ...] | None = None
    name: str = "B"

    def __post_init__(self):
        F = self.field
        self.mult = F.array(self.mult)
        self.unit = F.array(self.unit)
        self.E = F.array(self.E)
        if self.star is not None:
            self.star = F.array(self.star)
        d = self.dim
        if self.mult.shape != (d, d, d) or self.unit.shape != (d,) or self.E.shape != (d,):
            raise FactoryError("inconsistent shapes in separable algebra input")
        if self.labels is None:
            self.labels = tuple(f"e{i}" for i in range(d))

    @property
    def dim(self):
        return self.mult.shape[0]


def _functional_data(F, mult, E):
    """Gram matrix, dual basis matrix and modular automorphism of E."""
    G = F.einsum("ijm,m->ij", mult, E)
    try:
        Ginv = lc.inverse(F, G)
    except SingularMatrix:
        raise FactoryError("functional is degenerate") from None
    FL = G.T  # column j: the functional y -> E(b_j y)
    theta = F.dot(lc.inverse(F, G), FL)  # E(y theta(x)) = E(x y)
    return G, Ginv, theta


def functional_index(B: SeparableAlgebraInput):
    """``sum_i f_i e_i`` for the dual basis ``E(e_i f_j) = delta_ij``."""
    F = B.field
    _, Ginv, _ = _functional_data(F, B.mult, B.E)
    return F.einsum("ki,kim->m", Ginv, B.mult)


def normalize_index(B: SeparableAlgebraInput) -> SeparableAlgebraInput:
    """Rescale E so that its index becomes 1 (the index must be a scalar)."""
    F = B.field
    idx = functional_index(B)
    j = next((k for k in range(B.dim) if not F.is_zero_scalar(B.unit[k])), None)
    lam = idx[j] * F.inv(B.unit[j])
    if not F.equal(idx, lam * B.unit) or F.is_zero_scalar(lam):
        raise FactoryError("index of E is not an invertible scalar")
    return SeparableAlgebraInput(F, B.mult, B.unit, F.clean(B.E * lam), B.star, B.labels, B.name)


def matrix_algebra(k, field: Field = Field.rationals(), E=None, name=None):
    """``M_k`` on matrix units ``e_ab`` (index ``a*k + b``), standard involution."""
    F = field
    d = k * k
    M = F.zeros((d, d, d))
    for a, b, c in itertools.product(range(k), repeat=3):
        M[a * k + b, b * k + c, a * k + c] = F.scalar(1)
    unit = F.zeros(d)
    for a in range(k):
        unit[a * k + a] = F.scalar(1)
    star = None
    if F.kind != "GF":
        star = F.zeros((d, d))
        for a, b in itertools.product(range(k), repeat=2):
            star[b * k + a, a * k + b] = F.scalar(1)
    if E is None:
        E = unit.copy()
    labels = tuple(f"e{a + 1}{b + 1}" for a in range(k) for b in range(k))
    return SeparableAlgebraInput(F, M, unit, E, star, labels, name or f"M{k}")


def diagonal_algebra(k, field: Field = Field.rationals(), E=None, name=None):
    """``K^k`` on its minimal idempotents."""
    F = field
    M = F.zeros((k, k, k))
    for a in range(k):
        M[a, a, a] = F.scalar(1)
    unit = F.array([1] * k)
    star = F.eye(k) if F.kind != "GF" else None
    return SeparableAlgebraInput(F, M, unit, unit.copy() if E is None else E, star,
                                 tuple(f"p{a + 1}" for a in range(k)), name or f"K^{k}")


def trace_weighted(B: SeparableAlgebraInput, gamma):
    """``E(x) = Tr(gamma x)`` on a matrix algebra built by ``matrix_algebra``."""
    F = B.field
    k = int(round(B.dim ** 0.5))
    gamma = F.array(gamma)
    E = F.zeros(B.dim)
    for a, b in itertools.product(range(k), repeat=2):
        E[a * k + b] = gamma[b, a]
    return SeparableAlgebraInput(F, B.mult, B.unit, E, B.star, B.labels, B.name)


def bbop(B: SeparableAlgebraInput, check=True) -> WeakHopfAlgebra:
    """The weak Hopf algebra ``B (x) B^op`` built from an index-1 functional.

    Basis ``e_a (x) e_b`` has index ``a * dim B + b``.
    """
    F, d = B.field, B.dim
    MB = B.mult
    G, Ginv, theta = _functional_data(F, MB, B.E)
    if check:
        rep = bbop_report(B)
        if not rep["index is 1"].passed:
            raise FactoryError("index must be 1 (see normalize_index)")
        if not rep.passed:
            bad = ", ".join(c.name for c in rep.failures())
            raise FactoryError(f"functional is not admissible: {bad}")
    n = d * d
    M = F.einsum("acx,eby->abcexy", MB, MB).reshape(n, n, n)
    I = F.eye(d)
    D = F.einsum("aA,bB,ki->abAkiB", I, I, Ginv).reshape(n, n, n)
    counit = G.reshape(n)
    S = F.einsum("ya,Bb->Byab", theta, I).reshape(n, n)
    unit = F.einsum("a,b->ab", B.unit, B.unit).reshape(n)
    star = None
    if B.star is not None:
        # (x (x) y)* = x* (x) theta(y*) keeps the counit and Delta *-compatible
        star = F.einsum("ca,db->cdab", B.star, F.dot(theta, B.star)).reshape(n, n)
    labels = tuple(f"{x}(x){y}" for x in B.labels for y in B.labels)
    return WeakHopfAlgebra(F, M, unit, D, counit, S, star, labels, name=f"bbop({B.name})")


def bbop_report(B: SeparableAlgebraInput, seed=0) -> Report:
    """Properties of the dual-basis tensor ``sum f_i (x) e_i`` of E."""
    F, d, MB = B.field, B.dim, B.mult
    G, Ginv, theta = _functional_data(F, MB, B.E)
    rep = Report("separable functional")

    def add(name, r):
        rep.add(name, F.is_zero(r), F.residual(r))

    T = Ginv  # sum_i f_i (x) e_i as T[p, q]
    rng = np.random.default_rng(seed)
    for _ in range(8):
        P = F.random(rng, (d, d))
        try:
            lc.inverse(F, P)
            break
        except SingularMatrix:
            continue
    Gp = F.einsum("ki,kl,lj->ij", P, G, P)
    Tp = F.einsum("pi,ij,qj->pq", P, lc.inverse(F, Gp), P)
    add("dual basis tensor is basis independent", Tp - T)
    E = B.E
    # sum_i E(x f_i) e_i = x  and  sum_i f_i E(e_i x) = x
    add("expansion by E(x f_i)", F.einsum("xpm,m,pi->xi", MB, E, Ginv) - F.eye(d))
    add("expansion by E(e_i x)", F.einsum("ixm,m,pi->xp", MB, E, Ginv) - F.eye(d))
    add("index is 1", F.einsum("pq,pqm->m", T, MB) - B.unit)
    add("x f_i (x) e_i = f_i (x) e_i x",
        F.einsum("xpa,pq->xaq", MB, T) - F.einsum("pq,qxb->xpb", T, MB))
    add("f_i (x) x e_i = f_i theta(x) (x) e_i",
        F.einsum("pq,xqb->xpb", T, MB) - F.einsum("pq,yx,pya->xaq", T, theta, MB))
    theta_inv = lc.inverse(F, theta)
    add("f_i (x) e_i = e_i (x) theta^-1(f_i)", T - F.einsum("ap,pi->ia", theta_inv, T))
    add("f_i (x) e_i = theta(e_i) (x) f_i", T - F.einsum("ai,pi->ap", theta, T))
    return rep


def direct_sum(A1: WeakHopfAlgebra, A2: WeakHopfAlgebra) -> WeakHopfAlgebra:
    if A1.F != A2.F:
        raise FactoryError("direct sum needs a common field")
    F = A1.F
    n1, n2 = A1.dim, A2.dim
    n = n1 + n2

    def block3(a, b):
        t = F.zeros((n, n, n))
        t[:n1, :n1, :n1] = a
        t[n1:, n1:, n1:] = b
        return t

    def block2(a, b):
        t = F.zeros((n, n))
        t[:n1, :n1] = a
        t[n1:, n1:] = b
        return t

    star = None
    if A1.star is not None and A2.star is not None:
        star = block2(A1.star, A2.star)
    return WeakHopfAlgebra(F, block3(A1.mult, A2.mult), np.concatenate([A1.unit, A2.unit]),
                           block3(A1.comult, A2.comult), np.concatenate([A1.counit, A2.counit]),
                           block2(A1.antipode, A2.antipode), star,
                           tuple(f"1:{l}" for l in A1.labels) + tuple(f"2:{l}" for l in A2.labels),
                           name=f"{A1.name}+{A2.name}")


# --------------------------------------------------------------------------
# catalog


def gamma_instance(t, field: Field = Field.complex()):
    """``bbop(M_2, E)`` with ``E = c Tr(diag(t, 1/t) .)`` normalized to index 1."""
    B = trace_weighted(matrix_algebra(2, field), [[t, 0], [0, 1 / t]])
    B = normalize_index(B)
    B.name = f"M2,gamma=diag({t},1/{t})"
    return bbop(B)


def indefinite_instance(field: Field = Field.complex()):
    """``bbop(M_2, E)`` with ``E = Tr(gamma .)``, ``gamma = diag(-1, 1/2)``.

    The index is ``Tr(gamma^-1) = 1`` but E is not positive.
    """
    B = trace_weighted(matrix_algebra(2, field), [[-1, 0], [0, field.scalar(1) / 2]])
    B.name = "M2,gamma=diag(-1,1/2)"
    return bbop(B)


def haar_free_instance(field: Field = Field.rationals()):
    """``bbop(M_3, E)`` with ``gamma = diag(3/2, 3/2, -3)``: index 1, ``Tr(gamma) = 0``."""
    g = [field.scalar(3) / 2, field.scalar(3) / 2, field.scalar(-3)]
    B = trace_weighted(matrix_algebra(3, field),
                       [[g[0], 0, 0], [0, g[1], 0], [0, 0, g[2]]])
    B.name = "M3,gamma=diag(3/2,3/2,-3)"
    return bbop(B)


def haar_criterion_element(B: SeparableAlgebraInput):
    """``sum_i f_i gamma^2 e_i`` where ``E = Tr(gamma .)`` on a matrix algebra.

    B must use the matrix-unit basis of :func:`matrix_algebra`.
    """
    F = B.field
    k = int(round(B.dim ** 0.5))
    _, Ginv, _ = _functional_data(F, B.mult, B.E)
    g = B.E.reshape(k, k).T.reshape(B.dim)
    g2 = F.einsum("i,j,ijk->k", g, g, B.mult)
    return F.einsum("pq,j,pjm,mqk->k", Ginv, g2, B.mult, B.mult)


def catalog(include_complex=True):
    """The named examples used by the test-suite and the CLI."""
    Q = Field.rationals()
    C = Field.complex()
    out = {}
    for k in (2, 3, 4):
        out[f"Q[Z{k}]"] = group_algebra(cyclic_table(k), Q, name=f"Q[Z{k}]")
    out["Q[S3]"] = group_algebra(symmetric_table(3), Q, name="Q[S3]")
    for k in (1, 2, 3):
        out[f"pair{k}"] = pair_groupoid(k, Q)
    out["Z2 x pair2"] = groupoid_algebra(2, cyclic_table(2), Q, name="Z2 x pair2")
    out["bbop(K)"] = bbop(normalize_index(diagonal_algebra(1, Q, name="K")))
    out["bbop(K^2)"] = bbop(normalize_index(diagonal_algebra(2, Q)))
    out["bbop(M2(Q))"] = bbop(normalize_index(matrix_algebra(2, Q, name="M2(Q)")))
    out["M2(Z2)"] = m2z2()
    out["GF(2)[Z2]"] = group_algebra(cyclic_table(2), Field.gf(2), name="GF(2)[Z2]")
    if include_complex:
        out["bbop(M2(C))"] = bbop(normalize_index(matrix_algebra(2, C, name="M2(C)")))
        out["C[S3]"] = group_algebra(symmetric_table(3), C, name="C[S3]")
    return out
