"""Field-generic linear algebra over Q, GF(p) and C.

Elements of every field are stored in numpy arrays: ``gmpy2.mpq`` in object
arrays for Q, reduced ``int64`` for GF(p) and ``complex128`` for C.  Exact
fields decide zero-ness exactly; C uses an absolute tolerance.
"""
from __future__ import annotations

import re
from dataclasses import dataclass

import gmpy2
import numpy as np
from gmpy2 import mpq

from .errors import NoSolution, NotPositive, SingularMatrix, SplitFailed

_MAX_PRIME = 2**20
_to_bool = np.frompyfunc(bool, 1, 1)
_to_float = np.frompyfunc(float, 1, 1)
_to_mpq = np.frompyfunc(mpq, 1, 1)


@dataclass(frozen=True)
class Field:
    """A ground field: ``kind`` is "Q", "GF" or "C"."""

    kind: str
    p: int = 0
    tol: float = 0.0

    def __post_init__(self):
        if self.kind not in ("Q", "GF", "C"):
            raise ValueError(f"unknown field kind {self.kind!r}")
        if self.kind == "GF":
            if not (1 < self.p < _MAX_PRIME) or not gmpy2.is_prime(self.p):
                raise ValueError(f"GF(p) needs a prime p < {_MAX_PRIME}, got {self.p}")
        if self.kind == "C" and self.tol <= 0:
            raise ValueError("complex field needs a positive tolerance")

    @classmethod
    def rationals(cls):
        return cls("Q")

    @classmethod
    def gf(cls, p):
        return cls("GF", p=p)

    @classmethod
    def complex(cls, tol=1e-9):
        return cls("C", tol=tol)

    def __str__(self):
        return {"Q": "Q", "GF": f"GF({self.p})", "C": "C"}[self.kind]

    @property
    def exact(self):
        return self.kind != "C"

    @property
    def characteristic(self):
        return self.p if self.kind == "GF" else 0

    @property
    def dtype(self):
        return {"Q": object, "GF": np.int64, "C": np.complex128}[self.kind]

    # construction ---------------------------------------------------------
    def scalar(self, v):
        if isinstance(v, str):
            return self.parse(v)
        if self.kind == "Q":
            return mpq(v)
        if self.kind == "GF":
            if isinstance(v, type(mpq(0))) or hasattr(v, "denominator"):
                v = mpq(v)
                return int(v.numerator) * pow(int(v.denominator), -1, self.p) % self.p
            return int(v) % self.p
        return complex(v)

    def array(self, data):
        a = np.asarray(data, dtype=object if self.kind != "C" else None)
        if self.kind == "Q":
            if a.dtype != object:
                a = a.astype(object)
            return _to_mpq(a).astype(object) if a.size else a.astype(object)
        if self.kind == "GF":
            if a.dtype == object:
                flat = [self.scalar(v) for v in a.ravel()]
                return np.array(flat, dtype=np.int64).reshape(a.shape)
            return np.asarray(a, dtype=np.int64) % self.p
        return np.asarray(a, dtype=np.complex128)

    def zeros(self, shape):
        if self.kind == "Q":
            return np.full(shape, mpq(0), dtype=object)
        return np.zeros(shape, dtype=self.dtype)

    def eye(self, n):
        e = self.zeros((n, n))
        for i in range(n):
            e[i, i] = self.scalar(1)
        return e

    def unit_vector(self, n, i):
        v = self.zeros(n)
        v[i] = self.scalar(1)
        return v

    def clean(self, a):
        if self.kind == "GF":
            return np.asarray(a, dtype=np.int64) % self.p
        return a

    # predicates -------------------------------------------------------------
    def nonzero_mask(self, a):
        a = np.asarray(a)
        if self.kind == "Q":
            return _to_bool(a).astype(bool) if a.size else np.zeros(a.shape, bool)
        if self.kind == "GF":
            return a % self.p != 0
        return np.abs(a) > self.tol

    def is_zero(self, a):
        return not self.nonzero_mask(a).any()

    def equal(self, a, b):
        return self.is_zero(np.asarray(a) - np.asarray(b))

    def residual(self, a):
        """Largest absolute entry, as a float (0 or 1 for GF(p))."""
        a = np.asarray(a)
        if a.size == 0:
            return 0.0
        if self.kind == "Q":
            return float(np.max(np.abs(_to_float(a).astype(float))))
        if self.kind == "GF":
            return 1.0 if (a % self.p != 0).any() else 0.0
        return float(np.max(np.abs(a)))

    def abs_value(self, s):
        if self.kind == "GF":
            return 0.0 if s % self.p == 0 else 1.0
        return float(abs(s))

    def is_zero_scalar(self, s):
        if self.kind == "Q":
            return s == 0
        if self.kind == "GF":
            return s % self.p == 0
        return abs(s) <= self.tol

    # arithmetic -------------------------------------------------------------
    def inv(self, s):
        if self.is_zero_scalar(s):
            raise ZeroDivisionError("inverse of zero")
        if self.kind == "Q":
            return 1 / mpq(s)
        if self.kind == "GF":
            return pow(int(s), self.p - 2, self.p)
        return 1 / complex(s)

    def conj(self, a):
        if self.kind == "C":
            return np.conj(a)
        return a

    def sqrt_scalar(self, s):
        """Square root in the field; only used for perfect squares off C."""
        if self.kind == "C":
            return complex(np.sqrt(complex(s)))
        if self.kind == "Q":
            s = mpq(s)
            num, den = gmpy2.isqrt(s.numerator), gmpy2.isqrt(s.denominator)
            if num * num != s.numerator or den * den != s.denominator:
                raise ValueError(f"{s} is not a rational square")
            return mpq(num, den)
        for r in range(self.p):
            if r * r % self.p == s % self.p:
                return r
        raise ValueError(f"{s} is not a square mod {self.p}")

    def random(self, rng, shape, spread=3):
        if self.kind == "Q":
            return self.array(rng.integers(-spread, spread + 1, size=shape))
        if self.kind == "GF":
            return rng.integers(0, self.p, size=shape).astype(np.int64)
        return rng.standard_normal(shape) + 1j * rng.standard_normal(shape)

    # text -------------------------------------------------------------------
    def parse(self, s: str):
        s = s.strip()
        if self.kind == "Q":
            try:
                return mpq(s)
            except ValueError:
                raise ValueError(f"not a rational number: {s!r}") from None
        if self.kind == "GF":
            m = re.fullmatch(r"(-?\d+)(?:\s*mod\s*(\d+))?", s)
            if m:
                if m.group(2) and int(m.group(2)) != self.p:
                    raise ValueError(f"{s!r} is not an element of GF({self.p})")
                return int(m.group(1)) % self.p
            m = re.fullmatch(r"(-?\d+)/(\d+)", s)
            if m and int(m.group(2)) % self.p:
                return self.scalar(mpq(s))
            raise ValueError(f"not an element of GF({self.p}): {s!r}")
        return parse_complex(s)

    def format(self, v) -> str:
        if self.kind == "Q":
            v = mpq(v)
            return str(v.numerator) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"
        if self.kind == "GF":
            return str(int(v) % self.p)
        return format_complex(complex(v))

    # contraction --------------------------------------------------------------
    def einsum(self, spec, *ops):
        return einsum(self, spec, *ops)

    def dot(self, a, b):
        a, b = np.asarray(a), np.asarray(b)
        if a.ndim == 2 and b.ndim == 2:
            return einsum(self, "ij,jk->ik", a, b)
        if a.ndim == 2 and b.ndim == 1:
            return einsum(self, "ij,j->i", a, b)
        if a.ndim == 1 and b.ndim == 2:
            return einsum(self, "i,ij->j", a, b)
        return einsum(self, "i,i->", a, b)


FieldSpec = Field


def parse_complex(s: str) -> complex:
    t = s.replace(" ", "")
    if "/" in t and "i" not in t:
        return complex(float(mpq(t)))
    t = re.sub(r"(^|[+-])i$", r"\g<1>1i", t)
    try:
        return complex(t.replace("i", "j"))
    except ValueError:
        raise ValueError(f"not a complex number: {s!r}") from None


def format_complex(z: complex) -> str:
    re_, im = z.real + 0.0, z.imag + 0.0
    if im == 0:
        return f"{re_:.17g}"
    if re_ == 0:
        return f"{im:.17g}i"
    return f"{re_:.17g}{im:+.17g}i"


# --------------------------------------------------------------------------
# contraction engine


def einsum(F: Field, spec: str, *ops):
    """Contract operands left to right, reducing in the field after each pair.

    For rationals the pairwise step loops over the nonzero entries of the
    sparser operand, which keeps structure-tensor contractions cheap.
    """
    inputs, out = spec.replace(" ", "").split("->")
    terms = inputs.split(",")
    if len(terms) != len(ops):
        raise ValueError("operand count does not match subscripts")
    ops = [np.asarray(o) for o in ops]
    for t, o in zip(terms, ops):
        if len(t) != o.ndim or len(set(t)) != len(t):
            raise ValueError(f"bad subscripts {t!r} for shape {o.shape}")

    def needed(k):
        return set(out).union(*[set(t) for t in terms[k:]])

    cur, idx = _sum_out(F, ops[0], terms[0], needed(1))
    for k in range(1, len(ops)):
        keep = needed(k + 1)
        b, bidx = _sum_out(F, ops[k], terms[k], keep | set(idx))
        cur, idx = _pair(F, cur, idx, b, bidx, keep)
    cur, idx = _sum_out(F, cur, idx, set(out))
    if idx != out:
        cur = np.transpose(cur, [idx.index(c) for c in out])
    return F.clean(cur) if F.kind == "GF" else cur


def _sum_out(F, a, idx, keep):
    drop = [i for i, c in enumerate(idx) if c not in keep]
    if not drop:
        return a, idx
    a = a.sum(axis=tuple(drop))
    idx = "".join(c for c in idx if c in keep)
    if F.kind == "GF":
        a = np.asarray(a, dtype=np.int64) % F.p
    elif F.kind == "Q" and not isinstance(a, np.ndarray):
        a = np.array(a, dtype=object)
    return a, idx


def _pair(F, a, ia, b, ib, keep):
    shared = [c for c in ia if c in ib]
    batch = [c for c in shared if c in keep]
    contr = [c for c in shared if c not in keep]
    fa = [c for c in ia if c not in shared]
    fb = [c for c in ib if c not in shared]
    res = "".join(batch + fa + fb)
    if F.kind != "Q":
        r = np.einsum(f"{ia},{ib}->{res}", a, b)
        return (r % F.p if F.kind == "GF" else r), res
    dims = dict(zip(ia, a.shape)) | dict(zip(ib, b.shape))
    size = lambda cs: int(np.prod([dims[c] for c in cs], dtype=np.int64))
    nb, nfa, nc, nfb = size(batch), size(fa), size(contr), size(fb)
    a3 = np.transpose(a, [ia.index(c) for c in batch + fa + contr]).reshape(nb, nfa, nc)
    b3 = np.transpose(b, [ib.index(c) for c in batch + contr + fb]).reshape(nb, nc, nfb)
    out = np.full((nb, nfa, nfb), mpq(0), dtype=object)
    for t in range(nb):
        am, bm = a3[t], b3[t]
        ra, ca = np.nonzero(F.nonzero_mask(am))
        rb, cb = np.nonzero(F.nonzero_mask(bm))
        if len(ra) == 0 or len(rb) == 0:
            continue
        if len(ra) <= len(rb):
            for r, c in zip(ra, ca):
                out[t, r] += am[r, c] * bm[c]
        else:
            for r, c in zip(rb, cb):
                out[t, :, c] += am[:, r] * bm[r, c]
    shape = [dims[c] for c in res]
    return out.reshape(shape), res


# --------------------------------------------------------------------------
# elimination


def rref(F: Field, M):
    """Reduced row echelon form; returns (R, pivot_columns)."""
    A = np.array(M, dtype=F.dtype, copy=True)
    if A.ndim != 2:
        raise ValueError("rref needs a matrix")
    rows, cols = A.shape
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        col = A[r:, c]
        if F.kind == "C":
            k = int(np.argmax(np.abs(col)))
            if abs(col[k]) <= F.tol:
                A[r:, c] = 0
                continue
        else:
            nz = np.flatnonzero(F.nonzero_mask(col))
            if len(nz) == 0:
                continue
            k = int(nz[0])
        k += r
        if k != r:
            A[[r, k]] = A[[k, r]]
        A[r] = F.clean(A[r] * F.inv(A[r, c]))
        f = A[:, c].copy()
        f[r] = F.scalar(0)
        hit = np.flatnonzero(F.nonzero_mask(f))
        if len(hit):
            A[hit] = F.clean(A[hit] - np.outer(f[hit], A[r]))
        if F.kind == "C":
            A[:, c] = 0
            A[r, c] = 1
        pivots.append(c)
        r += 1
    return A, pivots


def rank(F: Field, M) -> int:
    M = np.asarray(M)
    if M.size == 0:
        return 0
    return len(rref(F, M)[1])


@dataclass
class AffineSolution:
    """Solution set ``particular + span(kernel rows)`` of ``M x = b``."""

    particular: np.ndarray
    kernel: np.ndarray
    rank: int

    @property
    def unique(self):
        return len(self.kernel) == 0


def kernel(F: Field, M) -> np.ndarray:
    """Basis of the null space of ``M`` as the rows of the returned array."""
    M = np.asarray(M)
    cols = M.shape[1]
    if M.shape[0] == 0:
        return F.eye(cols)
    R, piv = rref(F, M)
    free = [c for c in range(cols) if c not in piv]
    K = F.zeros((len(free), cols))
    for t, fcol in enumerate(free):
        K[t, fcol] = F.scalar(1)
        for i, pc in enumerate(piv):
            K[t, pc] = -R[i, fcol]
    return F.clean(K)


def solve_affine(F: Field, M, b) -> AffineSolution:
    """Solve ``M x = b``; raises NoSolution if the system is inconsistent."""
    M = np.asarray(M)
    b = np.asarray(b).reshape(-1, 1)
    rows, cols = M.shape
    aug = np.concatenate([np.asarray(M, dtype=F.dtype), np.asarray(b, dtype=F.dtype)], axis=1)
    R, piv = rref(F, aug)
    if cols in piv:
        raise NoSolution("inconsistent linear system")
    x = F.zeros(cols)
    for i, pc in enumerate(piv):
        x[pc] = R[i, cols]
    free = [c for c in range(cols) if c not in piv]
    K = F.zeros((len(free), cols))
    for t, fcol in enumerate(free):
        K[t, fcol] = F.scalar(1)
        for i, pc in enumerate(piv):
            K[t, pc] = -R[i, fcol]
    return AffineSolution(x, F.clean(K), len(piv))


def inverse(F: Field, M):
    M = np.asarray(M)
    n = M.shape[0]
    if M.shape != (n, n):
        raise SingularMatrix("not a square matrix")
    R, piv = rref(F, np.concatenate([np.asarray(M, dtype=F.dtype), F.eye(n)], axis=1))
    if piv[:n] != list(range(n)):
        raise SingularMatrix("matrix is singular")
    return R[:, n:]


def condition_number(F: Field, M) -> float:
    """2-norm condition number (computed in floating point for every field)."""
    if F.kind == "GF":
        return 1.0 if rank(F, M) == len(M) else float("inf")
    A = np.asarray(M, dtype=complex) if F.kind == "C" else _to_float(np.asarray(M)).astype(float)
    return float(np.linalg.cond(A))


# --------------------------------------------------------------------------
# subspaces, stored as the rows of a matrix


def span(F: Field, vectors, dim=None) -> np.ndarray:
    """Canonical (row-reduced) basis of the span of the given rows."""
    V = np.asarray(vectors)
    if V.size == 0:
        return F.zeros((0, dim if dim is not None else (V.shape[-1] if V.ndim == 2 else 0)))
    V = V.reshape(-1, V.shape[-1])
    R, piv = rref(F, V)
    return R[: len(piv)]


def column_space(F: Field, M) -> np.ndarray:
    return span(F, np.asarray(M).T, dim=np.asarray(M).shape[0])


def same_span(F: Field, U, V) -> bool:
    U, V = span(F, U), span(F, V)
    return U.shape == V.shape and F.equal(U, V)


def in_span(F: Field, basis, v) -> bool:
    basis = np.asarray(basis)
    v = np.asarray(v).reshape(-1, basis.shape[-1] if basis.size else len(v))
    if basis.size == 0:
        return F.is_zero(v)
    return rank(F, np.concatenate([basis, v])) == rank(F, basis)


def coordinates(F: Field, basis, v):
    """Coordinates of ``v`` in the basis given by the rows; NoSolution if outside."""
    basis = np.asarray(basis)
    return solve_affine(F, basis.T, v).particular


def intersect(F: Field, U, V) -> np.ndarray:
    U, V = np.asarray(U), np.asarray(V)
    if len(U) == 0 or len(V) == 0:
        return F.zeros((0, U.shape[1] if U.ndim == 2 and U.shape[1] else V.shape[1]))
    K = kernel(F, np.concatenate([U, -V]).T)
    if len(K) == 0:
        return F.zeros((0, U.shape[1]))
    return span(F, F.dot(K[:, : len(U)], U))


# --------------------------------------------------------------------------
# randomized searches and spectral helpers


def invertible_in_span(F: Field, basis, seed=0, attempts=64, exhaustive_limit=4096):
    """Find an invertible matrix in the span of ``basis`` (a list of matrices).

    Returns ``(matrix, coefficients, proven)`` or ``None``.  Over a finite
    field with at most ``exhaustive_limit`` combinations every combination is
    tried, so ``None`` is then a proof of absence; otherwise ``None`` only
    means the random search failed.
    """
    basis = [np.asarray(b) for b in basis]
    if not basis:
        return None
    n = basis[0].shape[0]
    stack = np.stack(basis)
    if F.kind == "GF" and F.p ** len(basis) <= exhaustive_limit:
        for flat in range(1, F.p ** len(basis)):
            c = np.array([(flat // F.p**k) % F.p for k in range(len(basis))], dtype=np.int64)
            m = F.einsum("k,kij->ij", c, stack)
            if rank(F, m) == n:
                return m, c, True
        return None
    rng = np.random.default_rng(seed)
    for _ in range(attempts):
        c = F.random(rng, len(basis), spread=7)
        m = F.einsum("k,kij->ij", c, stack)
        if rank(F, m) == n:
            return m, c, True
    return None


def invertible_search_exhaustive(F: Field, nbasis, exhaustive_limit=4096) -> bool:
    return F.kind == "GF" and F.p**nbasis <= exhaustive_limit


def hermitian_eig(M, tol=1e-9, max_sweeps=100):
    """Eigen-decomposition of a Hermitian matrix by cyclic Jacobi rotations.

    Returns ``(eigenvalues, V)`` with ``M = V diag(eigenvalues) V^H``.
    """
    H = np.array(M, dtype=np.complex128, copy=True)
    n = H.shape[0]
    if n and np.max(np.abs(H - H.conj().T)) > max(tol, 1e-12) * max(1.0, np.max(np.abs(H))):
        raise ValueError("matrix is not Hermitian")
    H = (H + H.conj().T) / 2
    V = np.eye(n, dtype=np.complex128)
    scale = max(1.0, float(np.max(np.abs(H)))) if n else 1.0
    for _ in range(max_sweeps):
        off = np.linalg.norm(H - np.diag(np.diag(H)))
        if off <= 1e-15 * scale * n:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                b = H[p, q]
                if abs(b) <= 1e-300:
                    continue
                phase = b / abs(b)
                a, d = H[p, p].real, H[q, q].real
                tau = (d - a) / (2 * abs(b))
                t = (1.0 if tau >= 0 else -1.0) / (abs(tau) + np.sqrt(1 + tau * tau))
                c = 1 / np.sqrt(1 + t * t)
                s = t * c
                U = _rot(c, s, phase)
                H[:, [p, q]] = H[:, [p, q]] @ U
                H[[p, q], :] = U.conj().T @ H[[p, q], :]
                H[p, q] = H[q, p] = 0
                V[:, [p, q]] = V[:, [p, q]] @ U
    return np.real(np.diag(H)).copy(), V


def _rot(c, s, phase):
    # Unitary that zeroes the (p, q) entry of [[a, b], [conj(b), d]] with b = |b| phase.
    return np.array([[c, s], [-s * np.conj(phase), c * np.conj(phase)]], dtype=np.complex128)


def is_psd(M, tol=1e-9) -> bool:
    w, _ = hermitian_eig(M, tol)
    return bool(np.all(w >= -tol))


def hermitian_sqrt(M, tol=1e-9):
    """Positive square root of a Hermitian PSD matrix; NotPositive otherwise."""
    w, V = hermitian_eig(M, tol)
    if np.any(w < -tol):
        raise NotPositive(f"smallest eigenvalue {w.min():.3g} is below -{tol}")
    return (V * np.sqrt(np.clip(w, 0, None))) @ V.conj().T


def split_commutative(F: Field, mult_action, unit, seed=0, attempts=16):
    """Primitive idempotents of a split commutative semisimple algebra.

    ``mult_action[i]`` is the matrix of multiplication by the i-th basis
    element on the algebra itself and ``unit`` the coordinates of 1.  A random
    element with simple spectrum is chosen and the idempotents are obtained by
    Lagrange interpolation at its eigenvalues.
    """
    if F.kind != "C":
        raise SplitFailed("idempotent splitting is only implemented over C")
    L = np.asarray(mult_action, dtype=np.complex128)
    m = L.shape[0]
    unit = np.asarray(unit, dtype=np.complex128)
    rng = np.random.default_rng(seed)
    for _ in range(attempts):
        c = rng.standard_normal(m) + 1j * rng.standard_normal(m)
        Lc = np.einsum("k,kij->ij", c, L)
        lam = np.linalg.eigvals(Lc)
        gaps = np.abs(lam[:, None] - lam[None, :])
        np.fill_diagonal(gaps, np.inf)
        if m > 1 and gaps.min() < 1e-4 * max(1.0, np.abs(lam).max()):
            continue
        idem = []
        for j in range(m):
            P = np.eye(m, dtype=np.complex128)
            for k in range(m):
                if k != j:
                    P = P @ (Lc - lam[k] * np.eye(m)) / (lam[j] - lam[k])
            idem.append(P @ unit)
        idem = np.array(idem)
        ok = np.allclose(idem.sum(axis=0), unit, atol=1e3 * F.tol)
        for i in range(m):
            Li = np.einsum("k,kij->ij", idem[i], L)
            for j in range(m):
                target = idem[i] if i == j else 0
                ok &= np.allclose(Li @ idem[j], target, atol=1e3 * F.tol)
        if ok:
            return idem
    raise SplitFailed("no element with simple spectrum found")
