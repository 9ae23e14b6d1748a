"""Constructions of Hopf algebras: group algebras, Taft algebras, duals
and Drinfeld doubles.

Nothing built here is trusted by fiat.  The doubles in particular are
assembled from the textbook cross-product formulas and then pushed through
verify_hopf / verify_quasitriangular; the axiom gate, not the formula, is
the source of truth.
"""

from __future__ import annotations

from .linalg import Matrix, solve, Inconsistent
from .hopf import (HopfAlgebraData, HopfError, NotAHopfAlgebra,
                   vec_add_into, verify_hopf, verify_quasitriangular)


class NotAGroup(HopfError):
    pass


class NotPrimitiveRoot(HopfError):
    pass


# ---------------------------------------------------------------------------
# group algebras

def build_group_algebra(field, table, labels=None, name=None):
    """kG for a finite group given by its multiplication table.

    table[i][j] is the index of g_i g_j.  Group axioms are checked up
    front (identity, associativity, inverses); NotAGroup on any failure.
    Delta(g) = g (x) g, eps(g) = 1, S(g) = g^{-1}.
    """
    n = len(table)
    for row in table:
        if len(row) != n or any(not (0 <= x < n) for x in row):
            raise NotAGroup("table is not n x n over range(n)")
    # identity
    e = None
    for i in range(n):
        if all(table[i][j] == j and table[j][i] == j for j in range(n)):
            e = i
            break
    if e is None:
        raise NotAGroup("no two-sided identity")
    for i in range(n):
        for j in range(n):
            for k in range(n):
                if table[table[i][j]][k] != table[i][table[j][k]]:
                    raise NotAGroup(f"associativity fails at {(i, j, k)}")
    inv = [None] * n
    for i in range(n):
        for j in range(n):
            if table[i][j] == e and table[j][i] == e:
                inv[i] = j
                break
        if inv[i] is None:
            raise NotAGroup(f"element {i} has no inverse")

    if labels is None:
        labels = [f"g{i}" for i in range(n)]
    mult = Matrix(field, n, n * n)
    for i in range(n):
        for j in range(n):
            mult.rows[table[i][j]][i * n + j] = 1
    unit = Matrix.column(field, n, {e: 1})
    comult = Matrix(field, n * n, n)
    for i in range(n):
        comult.rows[i * n + i][i] = 1
    counit = Matrix(field, 1, n)
    for i in range(n):
        counit.rows[0][i] = 1
    antipode = Matrix(field, n, n)
    for i in range(n):
        antipode.rows[inv[i]][i] = 1
    return HopfAlgebraData(field, n, labels, mult, unit, comult, counit, antipode,
                           name=name or f"kG({n})")


def cyclic_group_table(n):
    return [[(i + j) % n for j in range(n)] for i in range(n)]


def symmetric_group_s3_table():
    """S_3 as permutations of {0,1,2}; element order: id, (01), (02), (12),
    (012), (021) written as one-line images."""
    perms = [(0, 1, 2), (1, 0, 2), (2, 1, 0), (0, 2, 1), (1, 2, 0), (2, 0, 1)]
    index = {p: i for i, p in enumerate(perms)}
    table = []
    for p in perms:
        row = []
        for q in perms:
            comp = tuple(p[q[i]] for i in range(3))  # p after q
            row.append(index[comp])
        table.append(row)
    labels = ["e", "s01", "s02", "s12", "c012", "c021"]
    return table, labels


# ---------------------------------------------------------------------------
# Taft algebras (Sweedler's algebra is the n = 2 case)

def build_taft(field, n, q, name=None):
    """Taft algebra of dimension n^2: g^n = 1, x^n = 0, x g = q g x,
    Delta(g) = g (x) g, Delta(x) = x (x) 1 + g (x) x.

    q must be a primitive n-th root of unity in the field.  Comultiplication
    and antipode on the monomial basis g^a x^b are computed multiplicatively
    rather than through q-binomial formulas.
    """
    q = field.normalize(q)
    pw = 1
    for k in range(1, n):
        pw = field.mul(pw, q)
        if pw == 1:
            raise NotPrimitiveRoot(f"q={field.fmt(q)} has order {k} < {n}")
    pw = field.mul(pw, q)
    if pw != 1:
        raise NotPrimitiveRoot(f"q={field.fmt(q)}: q^{n} != 1")

    d = n * n
    labels = []
    for a in range(n):
        for b in range(n):
            la = "" if a == 0 else ("g" if a == 1 else f"g^{a}")
            lb = "" if b == 0 else ("x" if b == 1 else f"x^{b}")
            labels.append((la + lb) or "1")
    idx = lambda a, b: a * n + b

    # q-powers table
    qpow = [1]
    for _ in range(n * n):
        qpow.append(field.mul(qpow[-1], q))

    mult = Matrix(field, d, d * d)
    for a in range(n):
        for b in range(n):
            for c in range(n):
                for e2 in range(n):
                    if b + e2 >= n:
                        continue  # x^n = 0
                    coeff = qpow[b * c]  # x^b g^c = q^{bc} g^c x^b
                    mult.rows[idx((a + c) % n, b + e2)][idx(a, b) * d + idx(c, e2)] = coeff
    unit = Matrix.column(field, d, {idx(0, 0): 1})
    counit = Matrix(field, 1, d)
    for a in range(n):
        counit.rows[0][idx(a, 0)] = 1

    # local product on H (x) H for building Delta multiplicatively
    fmul = field.mul
    mcols = {}
    for k2 in range(d):
        for slot, v in mult.rows[k2].items():
            p, r = divmod(slot, d)
            mcols.setdefault((p, r), {})[k2] = v

    def mul2(u, v):
        out = {}
        for s1, cu in u.items():
            i1, j1 = divmod(s1, d)
            for s2, cv in v.items():
                i2, j2 = divmod(s2, d)
                left = mcols.get((i1, i2))
                right = mcols.get((j1, j2))
                if not left or not right:
                    continue
                c = fmul(cu, cv)
                for m1, a in left.items():
                    for m2, b in right.items():
                        vec_add_into(field, out, {m1 * d + m2: 1},
                                     fmul(c, fmul(a, b)))
        return out

    dg = {idx(1, 0) * d + idx(1, 0): 1}                      # g (x) g
    dx = {idx(0, 1) * d + idx(0, 0): 1, idx(1, 0) * d + idx(0, 1): 1}  # x(x)1 + g(x)x
    one2 = {idx(0, 0) * d + idx(0, 0): 1}
    comult = Matrix(field, d * d, d)
    for a in range(n):
        for b in range(n):
            acc = dict(one2)
            for _ in range(a):
                acc = mul2(acc, dg)
            for _ in range(b):
                acc = mul2(acc, dx)
            for slot, v in acc.items():
                comult.rows[slot][idx(a, b)] = v

    def mulH(u, v):
        out = {}
        for p, cu in u.items():
            for r, cv in v.items():
                col = mcols.get((p, r))
                if col:
                    vec_add_into(field, out, col, fmul(cu, cv))
        return out

    # S(g) = g^{n-1}, S(x) = -g^{-1}x = -(g^{n-1} x); extend as an antialgebra map
    sg = {idx((n - 1) % n, 0): 1}
    sx = {idx(n - 1, 1): field.neg(1)}
    antipode = Matrix(field, d, d)
    for a in range(n):
        for b in range(n):
            acc = {idx(0, 0): 1}
            for _ in range(b):          # S(g^a x^b) = S(x)^b S(g)^a
                acc = mulH(acc, sx)
            for _ in range(a):
                acc = mulH(acc, sg)
            for m, v in acc.items():
                antipode.rows[m][idx(a, b)] = v
    return HopfAlgebraData(field, d, labels, mult, unit, comult, counit, antipode,
                           name=name or f"Taft({n})")


def build_sweedler(field, name=None):
    """The 4-dimensional algebra with g^2 = 1, x^2 = 0, xg = -gx."""
    return build_taft(field, 2, field.parse("-1"), name=name or "H4")


# ---------------------------------------------------------------------------
# duals

def build_dual(H, verify=True, name=None):
    """The dual Hopf algebra on the dual basis: every structure tensor is
    the transpose of the corresponding tensor of H (mult <-> comult,
    unit <-> counit, antipode -> transpose)."""
    field = H.field
    out = HopfAlgebraData(
        field, H.dim, [b + "^" for b in H.basis],
        mult=H.comult.transpose(),
        unit=H.counit.transpose(),
        comult=H.mult.transpose(),
        counit=H.unit.transpose(),
        antipode=H.antipode.transpose(),
        name=name or f"{H.name}^*")
    if verify:
        verify_hopf(out).require()
    return out


# ---------------------------------------------------------------------------
# Drinfeld double

class DoubleAlgebra:
    """The double D(H) = H* (x) H as an algebra, with products computed
    lazily from the cross-relation

        (f >< h)(f' >< h') = f (h_1 -> f' <- S^{-1} h_3) >< h_2 h'

    where (a -> q)(x) = q(x a) and (q <- a)(x) = q(a x).  Basis element
    p = i*dim + j stands for f_i >< e_j.  This object carries no coalgebra
    structure; build_drinfeld_double assembles and verifies the full Hopf
    algebra on top of it.
    """

    def __init__(self, H):
        self.H = H
        self.dim = H.dim * H.dim
        self._mcols = {}
        self._d2 = None  # cached Delta^2 terms per basis element

    def _delta2(self, j):
        if self._d2 is None:
            self._d2 = [None] * self.H.dim
        got = self._d2[j]
        if got is None:
            H = self.H
            field = H.field
            got = []
            for a, b, c in H.dterms(j):
                for a1, a2, c2 in H.dterms(a):
                    got.append((a1, a2, b, field.mul(c, c2)))
            self._d2[j] = got
        return got

    def mult_col(self, p, q):
        """Sparse product of basis elements p = (i, j), q = (k, l)."""
        got = self._mcols.get((p, q))
        if got is not None:
            return got
        H = self.H
        d = H.dim
        field = H.field
        fmul = field.mul
        i, j = divmod(p, d)
        k, l = divmod(q, d)
        sinv = H.antipode_inv()
        out = {}
        for j1, j2, j3, c in self._delta2(j):
            # q'(x) = e^k(S^{-1}(e_j3) x e_j1), as a vector over the dual basis
            qprime = {}
            s3 = mat_cols(sinv, j3)
            for m in range(d):
                acc = 0
                for t, ct in s3.items():
                    step = H.mcol(t, m)
                    for w, cw in step.items():
                        cc = H.mcol(w, j1).get(k)
                        if cc is not None:
                            acc = field.add(acc, fmul(ct, fmul(cw, cc)))
                if acc != 0:
                    qprime[m] = acc
            if not qprime:
                continue
            # convolution f_i * q' in H*: (u v)(x) = u(x_1) v(x_2)
            conv = {}
            for m in range(d):
                acc = 0
                for a, b, cm in H.dterms(m):
                    if a == i:
                        vb = qprime.get(b)
                        if vb is not None:
                            acc = field.add(acc, fmul(cm, vb))
                if acc != 0:
                    conv[m] = acc
            if not conv:
                continue
            tail = H.mcol(j2, l)
            for w, cw in conv.items():
                for z, cz in tail.items():
                    vec_add_into(field, out, {w * d + z: 1},
                                 fmul(c, fmul(cw, cz)))
        self._mcols[(p, q)] = out
        return out

    def mul_vec(self, u, v):
        field = self.H.field
        fmul = field.mul
        out = {}
        for p, a in u.items():
            for q, b in v.items():
                vec_add_into(field, out, self.mult_col(p, q), fmul(a, b))
        return out

    @property
    def unit_vec(self):
        """eps >< 1 as a sparse vector."""
        H = self.H
        d = H.dim
        out = {}
        for i, ei in H.counit.rows[0].items():
            for j, oj in H.unit_vec.items():
                out[i * d + j] = H.field.mul(ei, oj)
        return out

    def embed_dual(self, fvec):
        """f >< 1 for f a vector over the dual basis."""
        H = self.H
        d = H.dim
        field = H.field
        out = {}
        for i, c in fvec.items():
            for j, oj in H.unit_vec.items():
                vec_add_into(field, out, {i * d + j: 1}, field.mul(c, oj))
        return out

    def embed_primal(self, hvec):
        """eps >< h."""
        H = self.H
        d = H.dim
        field = H.field
        out = {}
        for j, c in hvec.items():
            for i, ei in H.counit.rows[0].items():
                vec_add_into(field, out, {i * d + j: 1}, field.mul(c, ei))
        return out


def mat_cols(mat, j):
    """Column j of a row-sparse matrix as a dict (scan)."""
    out = {}
    for i, row in enumerate(mat.rows):
        v = row.get(j)
        if v is not None:
            out[i] = v
    return out


def _antipode_by_convolution(field, dim, mcol, dterms, unit_vec, eps):
    """Solve m (S (x) id) Delta = unit . eps for S as a linear system."""
    rows_eq = Matrix(field, dim * dim, dim * dim)  # (p, out) x (m, p1) unknown S[m, p1]
    rhs = Matrix(field, dim * dim, 1)
    fmul = field.mul
    for p in range(dim):
        for p1, p2, c in dterms(p):
            # contribution c * e_m' with m' from S(e_p1) e_p2: unknown S[m,p1]
            for m in range(dim):
                for o, cv in mcol(m, p2).items():
                    rows_eq.add_at(p * dim + o, m * dim + p1, fmul(c, cv))
        target = eps(p)
        if target != 0:
            for o, cv in unit_vec.items():
                rhs.add_at(p * dim + o, 0, fmul(target, cv))
    x = solve(rows_eq, rhs)
    s = Matrix(field, dim, dim)
    for slot, row in enumerate(x.rows):
        v = row.get(0)
        if v is not None:
            m, p1 = divmod(slot, dim)
            s.rows[m][p1] = v
    return s


def build_drinfeld_double(H, verify=True, name=None):
    """D(H) on the basis f_i >< e_j (slot i*dim+j), with the cross-product
    algebra from DoubleAlgebra, the coalgebra H*cop (x) H, the antipode
    obtained as the convolution inverse of the identity, and the canonical
    R-matrix R = sum_i (eps >< e_i) (x) (e^i >< 1).

    verify=True replays verify_hopf and verify_quasitriangular and raises
    on any failure; correctness is gated there, not assumed.
    """
    field = H.field
    d = H.dim
    dd = d * d
    alg = DoubleAlgebra(H)

    mult = Matrix(field, dd, dd * dd)
    for p in range(dd):
        for q in range(dd):
            for m, v in alg.mult_col(p, q).items():
                mult.rows[m][p * dd + q] = v
    unit = Matrix.column(field, dd, alg.unit_vec)

    # Delta_D(f_i >< e_j) = sum (f_i)_2 >< (e_j)_1 (x) (f_i)_1 >< (e_j)_2
    # where Delta_{H*}(e^i) = sum_{a,b} mult[i,(a,b)] e^a (x) e^b.
    comult = Matrix(field, dd * dd, dd)
    for i in range(d):
        dual_terms = []
        for slot in range(d * d):
            a, b = divmod(slot, d)
            v = H.mult.rows[i].get(slot)
            if v is not None:
                dual_terms.append((a, b, v))
        for j in range(d):
            col = i * d + j
            for a, b, cv in dual_terms:
                for j1, j2, cj in H.dterms(j):
                    slot = (b * d + j1) * dd + (a * d + j2)
                    comult.add_at(slot, col, field.mul(cv, cj))

    counit = Matrix(field, 1, dd)
    for i in range(d):
        f_at_one = H.unit.rows[i].get(0, 0)  # f_i(1) = coefficient of e_i in 1
        if f_at_one == 0:
            continue
        for j in range(d):
            ej = H.eps(j)
            if ej != 0:
                counit.add_at(0, i * d + j, field.mul(f_at_one, ej))

    def mcol(p, q):
        return alg.mult_col(p, q)

    # assemble dterms from the comult matrix once
    dterms_cache = [[] for _ in range(dd)]
    for slot, row in enumerate(comult.rows):
        a, b = divmod(slot, dd)
        for col, v in row.items():
            dterms_cache[col].append((a, b, v))
    for t in dterms_cache:
        t.sort()

    antipode = _antipode_by_convolution(
        field, dd, mcol, lambda p: dterms_cache[p], alg.unit_vec,
        lambda p: counit.rows[0].get(p, 0))

    # R = sum_i (eps >< e_i) (x) (e^i >< 1)
    rmatrix = Matrix(field, dd * dd, 1)
    for i in range(d):
        left = alg.embed_primal({i: 1})
        right = alg.embed_dual({i: 1})
        for p, a in left.items():
            for q, b in right.items():
                rmatrix.add_at(p * dd + q, 0, field.mul(a, b))

    labels = [f"{H.basis[i]}^.{H.basis[j]}" for i in range(d) for j in range(d)]
    out = HopfAlgebraData(field, dd, labels, mult, unit, comult, counit, antipode,
                          rmatrix=rmatrix, name=name or f"D({H.name})")
    if verify:
        verify_hopf(out).require()
        verify_quasitriangular(out).require()
    return out
