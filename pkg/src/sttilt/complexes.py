"""Complexes of projective modules and their Hom spaces.

A map between sums of indecomposable projectives is a sparse matrix
``{(row, col): element}``; an entry from P_v to P_u lies in e_u A e_v and acts
by left multiplication, so composition is ordinary matrix multiplication.
A two-term complex P^-1 -> P^0 has rows indexed by P^0 and columns by P^-1.
"""
from __future__ import annotations

from .errors import NotTwoTermReducible
from .linalg import Echelon, axpy, kernel, mat_inverse, pivot_columns


class TwoTermComplex:
    __slots__ = ("algebra", "p0", "p1", "d", "_g")

    def __init__(self, algebra, p0, p1, d=None):
        self.algebra = algebra
        self.p0 = tuple(p0)
        self.p1 = tuple(p1)
        self.d = {k: v for k, v in (d or {}).items() if v}
        self._g = None

    def g_vector(self) -> tuple:
        if self._g is None:
            g = [0] * self.algebra.n
            for v in self.p0:
                g[v] += 1
            for v in self.p1:
                g[v] -= 1
            self._g = tuple(g)
        return self._g

    @property
    def size(self) -> int:
        return len(self.p0) + len(self.p1)

    def is_zero(self) -> bool:
        return not self.p0 and not self.p1

    def is_minimal(self) -> bool:
        A = self.algebra
        return all(A.is_radical(x) for x in self.d.values())

    def entries_ok(self) -> bool:
        A = self.algebra
        for (r, c), x in self.d.items():
            for b in x:
                if A.src[b] != self.p0[r] or A.tgt[b] != self.p1[c]:
                    return False
        return True

    def shift_projective(self) -> bool:
        """True for [P -> 0]."""
        return not self.p0

    def __repr__(self):
        A = self.algebra
        return "[%s -> %s]" % ("+".join("P%s" % A.vertices[v] for v in self.p1) or "0",
                                "+".join("P%s" % A.vertices[v] for v in self.p0) or "0")


def stalk(A, i, shifted=False) -> TwoTermComplex:
    """[0 -> P_i] or, when shifted, [P_i -> 0]."""
    return TwoTermComplex(A, (), (i,)) if shifted else TwoTermComplex(A, (i,), ())


def direct_sum(items) -> TwoTermComplex:
    items = list(items)
    A = items[0].algebra
    p0, p1, d = [], [], {}
    for X in items:
        r0, c0 = len(p0), len(p1)
        p0.extend(X.p0)
        p1.extend(X.p1)
        for (r, c), x in X.d.items():
            d[r + r0, c + c0] = x
    return TwoTermComplex(A, p0, p1, d)


# matrices over the algebra

def lmul_basis(A, b, y: dict) -> dict:
    row = A.mul[b]
    out = {}
    for c, v in y.items():
        p = row.get(c)
        if p:
            axpy(out, v, p)
    return out


def rmul_basis(A, y: dict, b) -> dict:
    out = {}
    mul = A.mul
    for c, v in y.items():
        p = mul[c].get(b)
        if p:
            axpy(out, v, p)
    return out


def mat_mul(A, X: dict, Y: dict) -> dict:
    """Matrix product X*Y of sparse algebra matrices."""
    by_row = {}
    for (k, c), y in Y.items():
        by_row.setdefault(k, []).append((c, y))
    out = {}
    for (r, k), x in X.items():
        for c, y in by_row.get(k, ()):
            p = A.multiply(x, y)
            if p:
                cur = out.get((r, c))
                if cur is None:
                    out[r, c] = p
                else:
                    axpy(cur, A.field.one, p)
                    if not cur:
                        del out[r, c]
    return out


def mat_sub(A, X: dict, Y: dict) -> dict:
    out = {k: dict(v) for k, v in X.items()}
    for k, y in Y.items():
        cur = out.setdefault(k, {})
        axpy(cur, -A.field.one, y)
        if not cur:
            del out[k]
    return out


def top_matrix(A, M: dict, rows, cols):
    """Scalar matrix of idempotent coefficients (zero between distinct vertices)."""
    F = A.field
    out = [[F.zero] * len(cols) for _ in rows]
    for (r, c), x in M.items():
        if rows[r] == cols[c]:
            v = x.get(A.idem[rows[r]])
            if v:
                out[r][c] = v
    return out


def element_inverse(A, x: dict, i) -> dict:
    """Inverse in e_i A e_i of an element with nonzero e_i coefficient."""
    F = A.field
    lam = x[A.idem[i]]
    inv = 1 / lam
    n = {b: -inv * c for b, c in x.items() if b != A.idem[i]}
    out = {A.idem[i]: F.one}
    power = dict(n)
    while power:
        axpy(out, F.one, power)
        power = A.multiply(power, n)
    return {b: inv * c for b, c in out.items()}


def mat_inverse_alg(A, M: dict, rows, cols) -> dict:
    """Inverse of a square algebra matrix whose top is invertible."""
    F = A.field
    t = top_matrix(A, M, rows, cols)
    tinv = mat_inverse(t, F)
    if tinv is None:
        raise ValueError("matrix is not invertible")
    Tinv = {}
    for c in range(len(cols)):
        for r in range(len(rows)):
            if tinv[c][r]:
                Tinv[c, r] = {A.idem[cols[c]]: tinv[c][r]}
    # Tinv*M = I - N with N radical
    TM = mat_mul(A, Tinv, M)
    N = {}
    for k, x in TM.items():
        x = {b: -v for b, v in x.items()}
        if k[0] == k[1]:
            e = A.idem[cols[k[0]]]
            v = x.get(e, F.zero) + F.one
            if v:
                x[e] = v
            else:
                x.pop(e, None)
        if x:
            N[k] = x
    S = {(j, j): {A.idem[cols[j]]: F.one} for j in range(len(cols))}
    power = dict(N)
    while power:
        for k, x in power.items():
            cur = S.setdefault(k, {})
            axpy(cur, F.one, x)
            if not cur:
                del S[k]
        power = mat_mul(A, power, N)
    return mat_mul(A, S, Tinv)


# Hom spaces

class ChainMap:
    """Chain map T -> S given by degree 0 and degree -1 matrices."""

    __slots__ = ("f0", "f1")

    def __init__(self, f0, f1):
        self.f0 = f0
        self.f1 = f1

    def compose(self, other: "ChainMap", A) -> "ChainMap":
        """self after other."""
        return ChainMap(mat_mul(A, self.f0, other.f0), mat_mul(A, self.f1, other.f1))


class HomSystem:
    """The linear map L(f0, f1) = f0 d_T - d_S f1 into Hom(P^-1_T, P^0_S)."""

    def __init__(self, T: TwoTermComplex, S: TwoTermComplex):
        A = T.algebra
        self.A, self.T, self.S = A, T, S
        F = A.field
        blocks = A.blocks
        self.vars = []
        for rs, u in enumerate(S.p0):
            for rt, v in enumerate(T.p0):
                for b in blocks[u, v]:
                    self.vars.append((0, rs, rt, b))
        for cs, u in enumerate(S.p1):
            for ct, v in enumerate(T.p1):
                for b in blocks[u, v]:
                    self.vars.append((1, cs, ct, b))
        self.var_index = {v: k for k, v in enumerate(self.vars)}
        self.target_dim = sum(len(blocks[u, v]) for u in S.p0 for v in T.p1)
        self._images = None
        self.one = F.one

    def images(self):
        if self._images is not None:
            return self._images
        A, T, S = self.A, self.T, self.S
        F = A.field
        dT_rows = {}
        for (r, c), x in T.d.items():
            dT_rows.setdefault(r, []).append((c, x))
        dS_cols = {}
        for (r, c), x in S.d.items():
            dS_cols.setdefault(c, []).append((r, x))
        coord = {}
        ncols = len(T.p1)
        dim = A.dim

        def key(rs, ct, k):
            return (rs * ncols + ct) * dim + k

        out = []
        for kind, a, b_, bas in self.vars:
            img = {}
            if kind == 0:
                for ct, x in dT_rows.get(b_, ()):
                    p = lmul_basis(A, bas, x)
                    for k, v in p.items():
                        img[key(a, ct, k)] = v
            else:
                for rs, z in dS_cols.get(a, ()):
                    p = rmul_basis(A, z, bas)
                    for k, v in p.items():
                        kk = key(rs, b_, k)
                        w = img.get(kk, F.zero) - v
                        if w:
                            img[kk] = w
                        else:
                            img.pop(kk, None)
            out.append(img)
        self._images = out
        return out

    def surjective(self) -> bool:
        if self.target_dim == 0:
            return True
        e = Echelon()
        for v in self.images():
            if v:
                e.add(v)
                if e.rank == self.target_dim:
                    return True
        return e.rank == self.target_dim

    def chain_map_vectors(self):
        return kernel(self.images(), self.one)

    def homotopy_vectors(self):
        A, T, S = self.A, self.T, self.S
        F = A.field
        dT_rows = {}
        for (r, c), x in T.d.items():
            dT_rows.setdefault(r, []).append((c, x))
        dS_cols = {}
        for (r, c), x in S.d.items():
            dS_cols.setdefault(c, []).append((r, x))
        out = []
        for cs, u in enumerate(S.p1):
            for rt, v in enumerate(T.p0):
                for bas in A.blocks[u, v]:
                    vec = {}
                    for rs, z in dS_cols.get(cs, ()):
                        for k, c in rmul_basis(A, z, bas).items():
                            idx = self.var_index[0, rs, rt, k]
                            w = vec.get(idx, F.zero) + c
                            if w:
                                vec[idx] = w
                            else:
                                vec.pop(idx, None)
                    for ct, x in dT_rows.get(rt, ()):
                        for k, c in lmul_basis(A, bas, x).items():
                            idx = self.var_index[1, cs, ct, k]
                            w = vec.get(idx, F.zero) + c
                            if w:
                                vec[idx] = w
                            else:
                                vec.pop(idx, None)
                    if vec:
                        out.append(vec)
        return out

    def to_chain_map(self, vec: dict) -> ChainMap:
        f0, f1 = {}, {}
        for idx, c in vec.items():
            kind, a, b_, bas = self.vars[idx]
            m = f0 if kind == 0 else f1
            m.setdefault((a, b_), {})[bas] = c
        return ChainMap(f0, f1)


def hom_chain_basis(T: TwoTermComplex, S: TwoTermComplex):
    """(chain maps T -> S, null-homotopic chain maps) as lists of ChainMap."""
    h = HomSystem(T, S)
    chains = [h.to_chain_map(v) for v in h.chain_map_vectors()]
    homs = [h.to_chain_map(v) for v in h.homotopy_vectors()]
    return chains, homs


def hom_k_basis(T: TwoTermComplex, S: TwoTermComplex) -> list:
    """Chain maps representing a basis of Hom in the homotopy category."""
    h = HomSystem(T, S)
    e = Echelon()
    for v in h.homotopy_vectors():
        e.add(v)
    reps = []
    for v in h.chain_map_vectors():
        ok, _ = e.add(v)
        if ok:
            reps.append(h.to_chain_map(v))
    return reps


def hom_k_dim(T, S) -> int:
    return len(hom_k_basis(T, S))


def hom_shift1_vanishes(T: TwoTermComplex, S: TwoTermComplex) -> bool:
    """Hom(T, S[1]) = 0 in the homotopy category."""
    if not T.p1 or not S.p0:
        return True
    return HomSystem(T, S).surjective()


# general bounded complexes and minimisation

class Complex:
    """terms[k] are vertex tuples from the lowest degree up to degree 0;
    diffs[k] maps terms[k] (columns) to terms[k+1] (rows)."""

    def __init__(self, algebra, terms, diffs):
        self.algebra = algebra
        self.terms = [list(t) for t in terms]
        self.diffs = [dict(d) for d in diffs]

    @classmethod
    def from_two_term(cls, T: TwoTermComplex) -> "Complex":
        return cls(T.algebra, [T.p1, T.p0], [T.d])

    def to_two_term(self) -> TwoTermComplex:
        lead = len(self.terms) - 2
        for k in range(lead):
            if self.terms[k]:
                raise NotTwoTermReducible("degree %d survives minimisation" % (k - len(self.terms) + 1))
        if len(self.terms) == 1:
            return TwoTermComplex(self.algebra, self.terms[0], (), {})
        return TwoTermComplex(self.algebra, self.terms[-1], self.terms[-2], self.diffs[-1])


def _find_invertible(C: Complex):
    A = C.algebra
    for k, d in enumerate(C.diffs):
        rows, cols = C.terms[k + 1], C.terms[k]
        for (r, c), x in d.items():
            if rows[r] == cols[c] and x.get(A.idem[rows[r]]):
                return k, r, c
    return None


def _cancel(C: Complex, k, r0, c0) -> None:
    A = C.algebra
    F = A.field
    d = C.diffs[k]
    phi_inv = element_inverse(A, d[r0, c0], C.terms[k][c0])
    col = {r: x for (r, c), x in d.items() if c == c0 and r != r0}
    row = {c: x for (r, c), x in d.items() if r == r0 and c != c0}
    new = {}
    for (r, c), x in d.items():
        if r != r0 and c != c0:
            new[r, c] = dict(x)
    for r, x in col.items():
        left = A.multiply(x, phi_inv)
        if not left:
            continue
        for c, y in row.items():
            p = A.multiply(left, y)
            if p:
                cur = new.setdefault((r, c), {})
                axpy(cur, -F.one, p)
                if not cur:
                    del new[r, c]

    def rmap(j):
        return j if j < r0 else j - 1

    def cmap(j):
        return j if j < c0 else j - 1

    C.diffs[k] = {(rmap(r), cmap(c)): x for (r, c), x in new.items()}
    if k > 0:
        prev = C.diffs[k - 1]
        C.diffs[k - 1] = {(cmap(r), c): x for (r, c), x in prev.items() if r != c0}
    if k + 1 < len(C.diffs):
        nxt = C.diffs[k + 1]
        C.diffs[k + 1] = {(r, rmap(c)): x for (r, c), x in nxt.items() if c != r0}
    del C.terms[k][c0]
    del C.terms[k + 1][r0]


def minimize_complex(C: Complex) -> Complex:
    """Cancel invertible differential entries until all entries are radical (in place)."""
    while True:
        hit = _find_invertible(C)
        if hit is None:
            return C
        _cancel(C, *hit)


def minimize(C) -> TwoTermComplex:
    """Minimal two-term representative of a two- or three-term complex."""
    if isinstance(C, TwoTermComplex):
        C = Complex.from_two_term(C)
    else:
        C = Complex(C.algebra, C.terms, C.diffs)
    return minimize_complex(C).to_two_term()


def cone(T: TwoTermComplex, B: TwoTermComplex, f: ChainMap) -> Complex:
    """Mapping cone of f: T -> B, a complex in degrees -2..0."""
    A = T.algebra
    F = A.field
    n0 = len(T.p0)
    d2 = {}
    for (r, c), x in T.d.items():
        d2[r, c] = {b: -v for b, v in x.items()}
    for (r, c), x in f.f1.items():
        d2[n0 + r, c] = x
    d1 = {}
    for (r, c), x in f.f0.items():
        d1[r, c] = x
    for (r, c), x in B.d.items():
        d1[r, n0 + c] = x
    return Complex(A, [T.p1, list(T.p0) + list(B.p1), B.p0], [d2, d1])


# splitting off summands

def chain_top(A, f: ChainMap, src: TwoTermComplex, tgt: TwoTermComplex):
    return (top_matrix(A, f.f0, tgt.p0, src.p0), top_matrix(A, f.f1, tgt.p1, src.p1))


def kernel_complement(C: TwoTermComplex, p: ChainMap, X: TwoTermComplex) -> TwoTermComplex:
    """Complex ker p for a degreewise split epimorphism p: C -> X."""
    A = C.algebra
    F = A.field
    t0 = top_matrix(A, p.f0, X.p0, C.p0)
    t1 = top_matrix(A, p.f1, X.p1, C.p1)
    J0 = pivot_columns(t0, F)
    J1 = pivot_columns(t1, F)
    if len(J0) != len(X.p0) or len(J1) != len(X.p1):
        raise ValueError("map is not a split epimorphism")
    K0 = [j for j in range(len(C.p0)) if j not in set(J0)]
    K1 = [j for j in range(len(C.p1)) if j not in set(J1)]
    # inverse of p1 restricted to J1 and the correction -p1_J^{-1} p1_K
    pJ = {}
    pK = {}
    jpos = {j: a for a, j in enumerate(J1)}
    kpos = {j: a for a, j in enumerate(K1)}
    for (r, c), x in p.f1.items():
        if c in jpos:
            pJ[r, jpos[c]] = x
        else:
            pK[r, kpos[c]] = x
    if J1:
        inv = mat_inverse_alg(A, pJ, X.p1, [C.p1[j] for j in J1])
        corr = mat_mul(A, inv, pK)
    else:
        corr = {}
    k0pos = {j: a for a, j in enumerate(K0)}
    dKK, dKJ = {}, {}
    for (r, c), x in C.d.items():
        if r not in k0pos:
            continue
        if c in kpos:
            dKK[k0pos[r], kpos[c]] = x
        else:
            dKJ[k0pos[r], jpos[c]] = x
    d = mat_sub(A, dKK, mat_mul(A, dKJ, corr))
    return TwoTermComplex(A, [C.p0[j] for j in K0], [C.p1[j] for j in K1], d)


def _invertible_pair(tops, F) -> bool:
    for m in tops:
        if m and mat_inverse(m, F) is None:
            return False
    return True


def strip_summand(C: TwoTermComplex, X: TwoTermComplex):
    """Split off copies of X from C; returns (count, remainder)."""
    A = C.algebra
    F = A.field
    count = 0
    while not C.is_zero():
        if not _fits(C, X):
            break
        s_maps = hom_k_basis(X, C)
        if not s_maps:
            break
        p_maps = hom_k_basis(C, X)
        if not p_maps:
            break
        # End(X) is local with top K, so p.s is invertible iff the trace of
        # top(p).top(s) is nonzero; test that bilinear form first
        s_tops = [chain_top(A, s, X, C) for s in s_maps]
        s_flat = [_flat(t, transpose=True) for t in s_tops]
        found = None
        for p in p_maps:
            pt = chain_top(A, p, C, X)
            pf = _flat(pt)
            for st, sf in zip(s_tops, s_flat):
                tr = F.zero
                for key, x in pf.items():
                    y = sf.get(key)
                    if y:
                        tr = tr + x * y
                if not tr:
                    continue
                prod = [_dense_mul(pt[0], st[0], F), _dense_mul(pt[1], st[1], F)]
                if _invertible_pair(prod, F):
                    found = p
                    break
            if found is not None:
                break
        if found is None:
            break
        C = kernel_complement(C, found, X)
        count += 1
    return count, C


def _flat(tops, transpose=False) -> dict:
    out = {}
    for deg, m in enumerate(tops):
        for a, row in enumerate(m):
            for b, x in enumerate(row):
                if x:
                    out[(deg, b, a) if transpose else (deg, a, b)] = x
    return out


def _fits(C, X) -> bool:
    from collections import Counter
    c0, c1 = Counter(C.p0), Counter(C.p1)
    return all(c0[v] >= k for v, k in Counter(X.p0).items()) and all(c1[v] >= k for v, k in Counter(X.p1).items())


def _dense_mul(a, b, F):
    from .linalg import mat_mul as mm
    return mm(a, b, F)


def endomorphism_top_rank(X: TwoTermComplex):
    """(dim of the top image of End(X), dim of its semisimple quotient)."""
    A = X.algebra
    F = A.field
    maps = hom_k_basis(X, X)
    tops = [chain_top(A, f, X, X) for f in maps]
    vecs = []
    for t0, t1 in tops:
        v = {}
        k = 0
        for m in (t0, t1):
            for row in m:
                for x in row:
                    if x:
                        v[k] = x
                    k += 1
        vecs.append(v)
    e = Echelon()
    basis = []
    for v, t in zip(vecs, tops):
        ok, _ = e.add(v)
        if ok:
            basis.append(t)
    # trace form on the top image, a faithful matrix representation
    gram = []
    for a in basis:
        row = {}
        for j, b in enumerate(basis):
            s = F.zero
            for ma, mb in zip(a, b):
                if ma:
                    prod = _dense_mul(ma, mb, F)
                    for i in range(len(prod)):
                        s = s + prod[i][i]
            if s:
                row[j] = s
        gram.append(row)
    g = Echelon()
    for row in gram:
        g.add(row)
    return len(basis), g.rank
