"""Yetter-Drinfeld modules over a structure-constant Hopf algebra.

A YD module is an H-module that is simultaneously an H-comodule, the
two structures tied by the compatibility

    delta(h.m) = h_(1) m_(-1) S(h_(3))  (x)  h_(2) m_(0).

These are the objects of the monoidal center of H-mod.  This file
provides the objects, their tensor/dual/braiding calculus, intertwiner
solvers, the left and right adjoints L and R of the forgetful functor,
and the object-wise theorem checks built on top of them.

Index conventions follow the rest of the package: a tensor slot (i, j)
over dimensions (a, b) lives at flat position i*b + j.  Module actions
are packed dV x (dH*dV), coactions (dH*dV) x dV.

Verification strategy: module multiplicativity and the YD condition are
checked on an algebra generating set only.  That is sound: once
rho(gb) = rho(g)rho(b) holds for every generator g against every basis
element b, multiplicativity for arbitrary products follows by induction
on word length, and the YD identity for a product hh' follows from the
identities for h and h' because Delta is an algebra map and S an
antihomomorphism.  Comodule axioms are cheap and checked in full.

Isomorphy of large objects is decided through a cyclicity certificate:
a YD module of dimension (dim H)^2 whose orbit of a single vector under
the action and coaction operators is everything is free of rank one
over the double, and any two such objects are isomorphic.  The orbit
span is tracked mod a prime (sound over Q, exact over F_p).
"""

import os
import random
from itertools import product as iter_product

from .linalg import (BadScalar, EchelonSpan, Matrix, ModpSpan, Singular,
                     _reduce_mod_p, invert, nullspace)
from .report import Report
from .hopf import (Character, column_to_vec, distinguished_character,
                   is_unimodular, mat_apply, vec_add_into)
from .algtools import (PlainAlgebra, algebra_generators,
                       newton_idempotent_lift, quotient_algebra, radical_of)


class ConventionUndetermined(Exception):
    """Neither modular-character convention satisfies the pinning identity."""


class SocleNotSimple(Exception):
    """The socle of the projective cover of the unit is not a line."""


# certificate primes for rational rank lower bounds
_RANK_PRIMES = (65521, 65537, 46337)


def _seed():
    return int(os.environ.get("WORKBENCH_SEED", "0"))


# ---------------------------------------------------------------------------
# generating sets, cached on the Hopf algebra

def _hopf_gens(H):
    gens = H._cache.get("alg_gens")
    if gens is None:
        gens = algebra_generators(H)
        H._cache["alg_gens"] = gens
    return gens


def _dual_alg(H):
    """H^* as an algebra: convolution, i.e. the comult read sideways."""
    A = H._cache.get("dual_alg")
    if A is None:
        d = H.dim
        cols = {}
        for p in range(d * d):
            row = H.comult.rows[p]
            if row:
                cols[divmod(p, d)] = dict(row)
        A = PlainAlgebra(H.field, d, cols, dict(H.counit_vec),
                         name=f"{H.name}^*alg")
        H._cache["dual_alg"] = A
    return A


def _dual_gens(H):
    gens = H._cache.get("dual_alg_gens")
    if gens is None:
        gens = algebra_generators(_dual_alg(H))
        H._cache["dual_alg_gens"] = gens
    return gens


# ---------------------------------------------------------------------------
# plain modules

class HModule:
    """A finite-dimensional left module, action packed as dV x (dH*dV)."""

    def __init__(self, hopf, dim, action, name="V"):
        self.hopf = hopf
        self.dim = dim
        self.action = action
        self.name = name
        assert action.nrows == dim and action.ncols == hopf.dim * dim
        self._rhos = None
        self._verified = False

    @classmethod
    def from_rhos(cls, hopf, rhos, name="V"):
        dim = rhos[0].nrows if rhos else 0
        act = Matrix(hopf.field, dim, hopf.dim * dim)
        for h, R in enumerate(rhos):
            for i, row in enumerate(R.rows):
                for j, c in row.items():
                    act.set(i, h * dim + j, c)
        M = cls(hopf, dim, act, name)
        M._rhos = list(rhos)
        return M

    def rho(self, h):
        """Action of basis element e_h as a dV x dV matrix."""
        if self._rhos is None:
            d = self.dim
            self._rhos = [Matrix(self.hopf.field, d, d)
                          for _ in range(self.hopf.dim)]
            for i, row in enumerate(self.action.rows):
                for col, c in row.items():
                    self._rhos[col // d].set(i, col % d, c)
        return self._rhos[h]

    def rho_vec(self, u):
        """Action of a sparse algebra element."""
        field = self.hopf.field
        out = Matrix(field, self.dim, self.dim)
        for h, c in u.items():
            out = out + self.rho(h).scale(c)
        return out

    def apply(self, h, vec):
        return mat_apply(self.rho(h), vec)

    def __repr__(self):
        return f"HModule({self.name}, dim={self.dim})"


def verify_hmodule(V):
    H = V.hopf
    field = H.field
    rep = Report(f"module axioms for {V.name}")

    rep.add("unit_acts_as_identity",
            V.rho_vec(H.unit_vec) == Matrix.identity(field, V.dim))

    witness = None
    for g in _hopf_gens(H):
        for b in range(H.dim):
            if V.rho_vec(H.mcol(g, b)) != V.rho(g) * V.rho(b):
                witness = (g, b)
                break
        if witness:
            break
    rep.add("action_multiplicative_on_generators", witness is None,
            witness and f"g={witness[0]} b={witness[1]}")
    return rep


def _gate_module(V):
    if not V._verified:
        verify_hmodule(V).require(V.name)
        V._verified = True
    return V


def trivial_module(H):
    got = H._cache.get("triv_mod")
    if got is not None:
        return got
    act = Matrix(H.field, 1, H.dim)
    for i, e in H.counit_vec.items():
        act.set(0, i, e)
    got = _gate_module(HModule(H, 1, act, "k"))
    H._cache["triv_mod"] = got
    return got


def one_dim_module(H, values, name="k_chi"):
    """k_chi for a character given by its value row."""
    chi = Character(H, list(values))
    assert chi.is_algebra_map(), "value row is not a character"
    act = Matrix(H.field, 1, H.dim)
    for i, v in enumerate(chi.values):
        if v != 0:
            act.set(0, i, v)
    return _gate_module(HModule(H, 1, act, name))


def regular_module(H):
    got = H._cache.get("reg_mod")
    if got is not None:
        return got
    rhos = [H.left_mult_matrix(i) for i in range(H.dim)]
    got = _gate_module(HModule.from_rhos(H, rhos, name=f"{H.name}_reg"))
    H._cache["reg_mod"] = got
    return got


def tensor_hmod(V, W):
    H = V.hopf
    rhos = []
    for h in range(H.dim):
        acc = Matrix(H.field, V.dim * W.dim, V.dim * W.dim)
        for j, k, c in H.dterms(h):
            acc = acc + V.rho(j).kron(W.rho(k)).scale(c)
        rhos.append(acc)
    M = HModule.from_rhos(H, rhos, name=f"({V.name}(x){W.name})")
    return _gate_module(M)


def dual_hmod(V):
    """Left dual: (h.f)(v) = f(S(h) v)."""
    got = getattr(V, "_dual_plain", None)
    if got is not None:
        return got
    H = V.hopf
    rhos = [V.rho_vec(H.apply_S({h: 1})).transpose() for h in range(H.dim)]
    got = _gate_module(HModule.from_rhos(H, rhos, name=f"{V.name}^*"))
    V._dual_plain = got
    return got


def direct_sum_hmod(V, W):
    H = V.hopf
    dv = V.dim
    rhos = []
    for h in range(H.dim):
        R = Matrix(H.field, dv + W.dim, dv + W.dim)
        for i, row in enumerate(V.rho(h).rows):
            for j, c in row.items():
                R.set(i, j, c)
        for i, row in enumerate(W.rho(h).rows):
            for j, c in row.items():
                R.set(dv + i, dv + j, c)
        rhos.append(R)
    M = HModule.from_rhos(H, rhos, name=f"({V.name}(+){W.name})")
    return _gate_module(M)


def hom_hmod(V, W):
    """Basis of H-linear maps V -> W, as dW x dV matrices."""
    return _intertwiners(V, W, with_coaction=False)


def is_iso_hmod(V, W):
    if V is W:
        return True
    if V.dim != W.dim:
        return False
    return _decide_iso(V.hopf, V.dim, hom_hmod(V, W))


# ---------------------------------------------------------------------------
# YD modules

class YDModule:
    """An HModule plus a compatible coaction, packed (dH*dV) x dV."""

    def __init__(self, module, coaction, name=None):
        self.module = module
        self.coaction = coaction
        self.name = name or module.name
        dH, dV = module.hopf.dim, module.dim
        assert coaction.nrows == dH * dV and coaction.ncols == dV
        self._comps = None
        self._cols = None
        self._verified = False
        self.cyclic_hint = None   # known generator, if any (sparse vec)

    @property
    def hopf(self):
        return self.module.hopf

    @property
    def dim(self):
        return self.module.dim

    def rho(self, h):
        return self.module.rho(h)

    def comp(self, a):
        """Coaction component: delta(v) = sum_a e_a (x) comp(a) v."""
        if self._comps is None:
            dV = self.dim
            self._comps = [Matrix(self.hopf.field, dV, dV)
                           for _ in range(self.hopf.dim)]
            for r, row in enumerate(self.coaction.rows):
                for v, c in row.items():
                    self._comps[r // dV].set(r % dV, v, c)
        return self._comps[a]

    def coact_col(self, v):
        """delta(e_v) as a sparse dict over slots a*dV + j."""
        if self._cols is None:
            cols = [{} for _ in range(self.dim)]
            for r, row in enumerate(self.coaction.rows):
                for j, c in row.items():
                    cols[j][r] = c
            self._cols = cols
        return self._cols[v]

    def __repr__(self):
        return f"YDModule({self.name}, dim={self.dim})"


def verify_yd(M):
    """Module and comodule axioms plus YD compatibility, with witnesses."""
    H = M.hopf
    field = H.field
    dH, dV = H.dim, M.dim
    rep = Report(f"YD axioms for {M.name}")
    rep.merge(verify_hmodule(M.module))

    # (eps (x) id) delta = id
    witness = None
    for v in range(dV):
        acc = {}
        for slot, c in M.coact_col(v).items():
            e = H.eps(slot // dV)
            if e != 0:
                vec_add_into(field, acc, {slot % dV: 1}, field.mul(e, c))
        if acc != {v: 1}:
            witness = v
            break
    rep.add("coaction_counital", witness is None,
            None if witness is None else f"v={witness}")

    # (Delta (x) id) delta = (id (x) delta) delta
    witness = None
    for v in range(dV):
        lhs, rhs = {}, {}
        for slot, c in M.coact_col(v).items():
            a, j = divmod(slot, dV)
            for x, y, cd in H.dterms(a):
                vec_add_into(field, lhs, {(x * dH + y) * dV + j: 1},
                             field.mul(c, cd))
            for slot2, c2 in M.coact_col(j).items():
                b, j2 = divmod(slot2, dV)
                vec_add_into(field, rhs, {(a * dH + b) * dV + j2: 1},
                             field.mul(c, c2))
        if lhs != rhs:
            witness = v
            break
    rep.add("coaction_coassociative", witness is None,
            None if witness is None else f"v={witness}")

    # delta(h.m) = h_(1) m_(-1) S(h_(3)) (x) h_(2) m_(0), generators only
    witness = None
    for g in _hopf_gens(H):
        d2 = []
        for j, k, c in H.dterms(g):
            st3 = H.apply_S({k: 1})
            for j1, j2, c2 in H.dterms(j):
                d2.append((j1, j2, st3, field.mul(c, c2)))
        hmemo = {}
        vmemo = {}
        for v in range(dV):
            lhs = {}
            for j, cj in mat_apply(M.rho(g), {v: 1}).items():
                vec_add_into(field, lhs, M.coact_col(j), cj)
            rhs = {}
            for idx, (t1, t2, st3, c) in enumerate(d2):
                for slot, c2 in M.coact_col(v).items():
                    a, j = divmod(slot, dV)
                    key = (idx, a)
                    hpart = hmemo.get(key)
                    if hpart is None:
                        hpart = H.mul_vec(H.mul_vec({t1: 1}, {a: 1}), st3)
                        hmemo[key] = hpart
                    if not hpart:
                        continue
                    vkey = (t2, j)
                    vpart = vmemo.get(vkey)
                    if vpart is None:
                        vpart = mat_apply(M.rho(t2), {j: 1})
                        vmemo[vkey] = vpart
                    coeff = field.mul(c, c2)
                    for b, cb in hpart.items():
                        cc = field.mul(coeff, cb)
                        for j2, cv in vpart.items():
                            vec_add_into(field, rhs, {b * dV + j2: 1},
                                         field.mul(cc, cv))
            if lhs != rhs:
                witness = (g, v)
                break
        if witness:
            break
    rep.add("yd_compatibility", witness is None,
            witness and f"h={witness[0]} v={witness[1]}")
    return rep


def _gate_yd(M):
    if not M._verified:
        verify_yd(M).require(M.name)
        M._verified = True
    return M


def unit_yd(H):
    got = H._cache.get("unit_yd")
    if got is not None:
        return got
    mod = trivial_module(H)
    coact = Matrix(H.field, H.dim, 1)
    for i, c in H.unit_vec.items():
        coact.set(i, 0, c)
    got = _gate_yd(YDModule(mod, coact, name="1"))
    H._cache["unit_yd"] = got
    return got


def tensor_yd(M, N):
    """Diagonal action, codiagonal coaction m_(-1)n_(-1) (x) m_(0)n_(0)."""
    H = M.hopf
    field = H.field
    dm, dn = M.dim, N.dim
    mod = tensor_hmod(M.module, N.module)
    coact = Matrix(field, H.dim * dm * dn, dm * dn)
    for u in range(dm):
        mcol = M.coact_col(u)
        for v in range(dn):
            col = u * dn + v
            for slot1, c1 in mcol.items():
                a, j = divmod(slot1, dm)
                for slot2, c2 in N.coact_col(v).items():
                    b, k = divmod(slot2, dn)
                    coeff = field.mul(c1, c2)
                    for w, cw in H.mcol(a, b).items():
                        coact.add_at(w * dm * dn + j * dn + k, col,
                                     field.mul(coeff, cw))
    return _gate_yd(YDModule(mod, coact, name=f"({M.name}(x){N.name})"))


def dual_yd(M):
    """Left dual in the center: S-transposed action, S^{-1}-twisted
    coaction comp*_i[b, a] = sum_j Sinv[i, j] comp_j[a, b]."""
    got = getattr(M, "_dual_cache", None)
    if got is not None:
        return got
    H = M.hopf
    field = H.field
    dV = M.dim
    mod = dual_hmod(M.module)
    Sinv = H.antipode_inv()
    coact = Matrix(field, H.dim * dV, dV)
    for j in range(H.dim):
        scol = Sinv.col_dict(j)
        if not scol:
            continue
        for a, row in enumerate(M.comp(j).rows):
            for b, c in row.items():
                for i, si in scol.items():
                    coact.add_at(i * dV + b, a, field.mul(si, c))
    got = _gate_yd(YDModule(mod, coact, name=f"{M.name}^*"))
    M._dual_cache = got
    return got


def direct_sum_yd(M, N):
    H = M.hopf
    dm, dn = M.dim, N.dim
    mod = direct_sum_hmod(M.module, N.module)
    coact = Matrix(H.field, H.dim * (dm + dn), dm + dn)
    for v in range(dm):
        for slot, c in M.coact_col(v).items():
            a, j = divmod(slot, dm)
            coact.set(a * (dm + dn) + j, v, c)
    for v in range(dn):
        for slot, c in N.coact_col(v).items():
            a, j = divmod(slot, dn)
            coact.set(a * (dm + dn) + dm + j, dm + v, c)
    return _gate_yd(YDModule(mod, coact, name=f"({M.name}(+){N.name})"))


def braiding_yd(M, N):
    """sigma(m (x) n) = (m_(-1).n) (x) m_(0), as a matrix M(x)N -> N(x)M."""
    H = M.hopf
    field = H.field
    dm, dn = M.dim, N.dim
    sig = Matrix(field, dn * dm, dm * dn)
    for u in range(dm):
        for slot, c in M.coact_col(u).items():
            a, j = divmod(slot, dm)
            rho_a = N.rho(a)
            for v in range(dn):
                for w, cw in mat_apply(rho_a, {v: 1}).items():
                    sig.add_at(w * dm + j, u * dn + v, field.mul(c, cw))
    return sig


class MorphismMatrix:
    """A linear map with its (co)domain handles attached."""

    def __init__(self, matrix, domain, codomain):
        assert matrix.nrows == codomain.dim and matrix.ncols == domain.dim
        self.matrix = matrix
        self.domain = domain
        self.codomain = codomain

    def __repr__(self):
        return (f"MorphismMatrix({self.domain.name} -> {self.codomain.name}, "
                f"nnz={self.matrix.nnz()})")


# ---------------------------------------------------------------------------
# intertwiner solvers

def _intertwiners(V, W, with_coaction):
    """Nullspace of AX - XB = 0 over the generating operator pairs.

    A generating set suffices: commuting with generators forces
    commuting with every product.  The coaction components
    C_a = (e^a (x) id) delta multiply along the dual algebra (in
    reversed order), so the dual generators again suffice.
    """
    H = V.hopf
    field = H.field
    dv, dw = V.dim, W.dim
    nvars = dw * dv
    pairs = [(W.rho(g), V.rho(g)) for g in _hopf_gens(H)]
    if with_coaction:
        pairs += [(W.comp(a), V.comp(a)) for a in _dual_gens(H)]

    cons = Matrix(field, len(pairs) * nvars, nvars)
    base = 0
    for A, B in pairs:
        for i, row in enumerate(A.rows):
            for k, a in row.items():
                for j in range(dv):
                    cons.add_at(base + i * dv + j, k * dv + j, a)
        for j in range(dv):
            for k, b in B.col_dict(j).items():
                for i in range(dw):
                    cons.add_at(base + i * dv + j, i * dv + k, field.neg(b))
        base += nvars

    out = []
    for col in nullspace(cons):
        X = Matrix(field, dw, dv)
        for r, row in enumerate(col.rows):
            if row:
                X.set(r // dv, r % dv, row[0])
        out.append(X)
    return out


def hom_yd(M, N):
    """Basis of maps commuting with both the action and the coaction."""
    mats = _intertwiners(M, N, with_coaction=True)
    return [MorphismMatrix(X, M, N) for X in mats]


def _decide_iso(H, n, basis):
    """Is some linear combination of the basis invertible?

    Seeded random combinations first; if those fail, an exhaustive pass
    when the coefficient space is small (all of F_p^h, or the integer
    grid {0..n}^h over Q, which decides because det is a polynomial of
    degree at most n in each coefficient).  A False from the sampling
    tail without an exhaustive pass is possible only outside the
    dimension ranges the callers use.
    """
    mats = [b.matrix if isinstance(b, MorphismMatrix) else b for b in basis]
    if not mats:
        return False
    field = H.field
    h = len(mats)

    def combo(cs):
        X = Matrix(field, n, n)
        for c, B in zip(cs, mats):
            if c != 0:
                X = X + B.scale(c)
        return X

    rng = random.Random(_seed())
    for trial in range(8):
        hi = 2 + 3 * trial
        cs = [field.from_int(rng.randint(-hi, hi)) for _ in range(h)]
        try:
            invert(combo(cs))
            return True
        except Singular:
            continue

    if field.kind == "Fp" and h <= 17 and field.p ** h <= 100000:
        for cs in iter_product(range(field.p), repeat=h):
            if not any(cs):
                continue
            try:
                invert(combo(cs))
                return True
            except Singular:
                continue
        return False
    if field.kind == "Q" and h <= 3 and (n + 1) ** h <= 8000:
        for cs in iter_product(range(n + 1), repeat=h):
            if not any(cs):
                continue
            try:
                invert(combo(cs))
                return True
            except Singular:
                continue
        return False
    return False


def _spin_ops(M):
    return ([M.rho(g) for g in _hopf_gens(M.hopf)] +
            [M.comp(a) for a in _dual_gens(M.hopf)])


class _Spin:
    """Orbit spinner mod p over a fixed operator family.

    The span of the orbit of a seed under the operators is the
    submodule the double generates from it, grown breadth-first with
    the frontier pruned by mod-p independence.  Ops are reduced to
    dense numpy int64 matrices once when numpy is around (a matvec of
    entries below p < 2^16 stays far inside int64), sparse dicts else.
    """

    def __init__(self, n, p, ops):
        self.n = n
        self.p = p
        try:
            import numpy as np
        except ImportError:
            np = None
        self._np = np
        if np is None:
            self.ops = ops
            return
        dense = []
        for op in ops:
            A = np.zeros((n, n), dtype=np.int64)
            for i, row in enumerate(op.rows):
                for j, w in _reduce_mod_p(row, p).items():
                    A[i, j] = w
            dense.append(A)
        self.ops = dense

    def generates(self, seed):
        p = self.p
        span = ModpSpan(self.n, p)
        np = self._np
        if np is None:
            if not span.add(seed):
                return False
            frontier = [seed]
            while frontier and span.dim < self.n:
                nxt = []
                for v in frontier:
                    for op in self.ops:
                        w = mat_apply(op, v)
                        if w and span.add(w):
                            nxt.append(w)
                frontier = nxt
            return span.dim == self.n
        a = np.zeros(self.n, dtype=np.int64)
        for i, w in _reduce_mod_p(seed, p).items():
            a[i] = w
        if not span.add_np(a):
            return False
        frontier = a[:, None]
        while frontier.shape[1] and span.dim < self.n:
            nxt = []
            for op in self.ops:
                W = (op @ frontier) % p
                for i in range(W.shape[1]):
                    w = W[:, i]
                    if span.add_np(w):
                        nxt.append(w)
                    if span.dim == self.n:
                        return True
            if not nxt:
                break
            frontier = np.stack(nxt, axis=1)
        return span.dim == self.n


def _cyclic_generator(M, tries=6):
    """A single vector generating all of M, or None if none was found.

    Candidates: the construction's own hint, two fixed vectors, then
    seeded random ones.  Certification is mod p (sound over Q); every
    certificate prime gets a chance before giving up.  The outcome is
    cached on the object: spins over double-sized carriers are the
    expensive step and the same object recurs across probe pairs.
    """
    got = getattr(M, "_cyc_cert", None)
    if got is not None:
        return got[0]
    cands = []
    if M.cyclic_hint:
        cands.append(M.cyclic_hint)
    cands.append({0: 1})
    cands.append({i: 1 for i in range(M.dim)})
    rng = random.Random(_seed() ^ (1009 * M.dim + M.hopf.dim))
    for _ in range(tries):
        c = {i: rng.randint(0, 3) for i in range(M.dim)}
        c = {i: v for i, v in c.items() if v}
        if c:
            cands.append(c)
    field = M.hopf.field
    ops = _spin_ops(M)
    primes = (field.p,) if field.kind == "Fp" else _RANK_PRIMES
    for p in primes:
        try:
            spin = _Spin(M.dim, p, ops)
        except BadScalar:
            continue
        for cand in cands:
            try:
                if spin.generates(cand):
                    M._cyc_cert = (cand,)
                    return cand
            except BadScalar:
                continue
    M._cyc_cert = (None,)
    return None


_HOM_VAR_CAP = 3600


def is_iso_yd(M, N):
    """Isomorphism in the center.

    Objects of double dimension get the free-rank-one certificate
    first (cyclic of dimension dim D(H) means isomorphic to the regular
    double module).  Below the variable cap the hom-space route decides
    via _decide_iso.  Beyond the cap only the certificate is available,
    so a pair of large non-cyclic objects comes back False even though
    nothing was proved; the callers keep such pairs out of that regime.
    """
    if M is N:
        return True
    if M.dim != N.dim:
        return False
    big = M.dim * N.dim > _HOM_VAR_CAP
    if M.dim == M.hopf.dim ** 2:
        if _cyclic_generator(M) is not None:
            if _cyclic_generator(N) is not None:
                return True
            if big:
                return False
    if not big:
        return _decide_iso(M.hopf, M.dim, hom_yd(M, N))
    return False


# ---------------------------------------------------------------------------
# the adjoints L and R of the forgetful functor

def _functor_cache(V):
    cache = getattr(V, "_adjoints", None)
    if cache is None:
        cache = V._adjoints = {}
    return cache


def _leg_hint(H, right_dim):
    """Candidate generator unit (x) unit-ish on an H (x) V carrier."""
    field = H.field
    right = dict(H.unit_vec) if right_dim == H.dim else {0: 1}
    hint = {}
    for a, ca in H.unit_vec.items():
        for b, cb in right.items():
            hint[a * right_dim + b] = field.mul(ca, cb)
    return hint


def functor_R(H, V):
    """R(V) = H (x) V: h.(a (x) v) = h_(1) a S(h_(3)) (x) h_(2) v,
    coaction Delta on the first leg."""
    cache = _functor_cache(V)
    got = cache.get("R")
    if got is not None:
        return got
    field = H.field
    dH, dV = H.dim, V.dim
    dim = dH * dV
    act = Matrix(field, dim, dH * dim)
    for t in range(dH):
        d2 = []
        for j, k, c in H.dterms(t):
            st3 = H.apply_S({k: 1})
            for j1, j2, c2 in H.dterms(j):
                d2.append((j1, j2, st3, field.mul(c, c2)))
        for t1, t2, st3, c in d2:
            if not st3:
                continue
            rho2 = V.rho(t2)
            for a in range(dH):
                hpart = H.mul_vec(H.mul_vec({t1: 1}, {a: 1}), st3)
                if not hpart:
                    continue
                for v in range(dV):
                    for j, cv in mat_apply(rho2, {v: 1}).items():
                        coeff = field.mul(c, cv)
                        for b, cb in hpart.items():
                            act.add_at(b * dV + j, t * dim + a * dV + v,
                                       field.mul(coeff, cb))
    mod = HModule(H, dim, act, name=f"R({V.name})")
    coact = Matrix(field, dH * dim, dim)
    for a in range(dH):
        for v in range(dV):
            for x, y, c in H.dterms(a):
                coact.add_at(x * dim + y * dV + v, a * dV + v, c)
    out = YDModule(mod, coact, name=f"R({V.name})")
    out.cyclic_hint = _leg_hint(H, dV)
    out = _gate_yd(out)
    cache["R"] = out
    return out


def _L_action_template(H):
    """Straightened cross action of H on basis functionals.

    tpl[t][i] holds {(p, q): c}: acting by e_t on the functional f_i
    produces c * f_p with e_q left over for the spectator leg, where
    the f_p coefficient is f_i(S^{-1}(t_(3)) e_p t_(1)) and q runs over
    the middle comultiplication leg t_(2).
    """
    tpl = H._cache.get("L_tpl")
    if tpl is not None:
        return tpl
    field = H.field
    dH = H.dim
    tpl = [[{} for _ in range(dH)] for _ in range(dH)]
    for t in range(dH):
        d2 = []
        for j, k, c in H.dterms(t):
            s3 = H.apply_S_inv({k: 1})
            for j1, j2, c2 in H.dterms(j):
                d2.append((j1, j2, s3, field.mul(c, c2)))
        for t1, t2, s3, c in d2:
            if not s3:
                continue
            for p in range(dH):
                prod = H.mul_vec(H.mul_vec(s3, {p: 1}), {t1: 1})
                for i, ci in prod.items():
                    cell = tpl[t][i]
                    key = (p, t2)
                    w = field.add(cell.get(key, 0), field.mul(c, ci))
                    if w == 0:
                        cell.pop(key, None)
                    else:
                        cell[key] = w
    H._cache["L_tpl"] = tpl
    return tpl


def _L_coaction_matrix(H, dV, twist):
    """Coaction of L(V): delta(f_i (x) v) = sum_a e_a (x) (e^a o S') * f_i
    (x) v with S' the antipode (twist "S") or its inverse ("Sinv").

    The twist is forced: reading the coaction off left multiplication
    by functionals in the double would make a -> C_a multiplicative in
    the convolution index, while coassociativity of a left coaction
    needs anti-multiplicative; precomposing with an antipode flips the
    order.  Which of the two powers closes the YD compatibility depends
    on the remaining sign conventions and is settled by the gate.
    """
    field = H.field
    dH = H.dim
    dim = dH * dV
    dual = _dual_alg(H)
    smat = H.antipode if twist == "S" else H.antipode_inv()
    coact = Matrix(field, dH * dim, dim)
    for a in range(dH):
        srow = smat.rows[a]
        for i in range(dH):
            cell = {}
            for q, cq in srow.items():
                for p, cp in dual.mcol(q, i).items():
                    w = field.add(cell.get(p, 0), field.mul(cq, cp))
                    if w == 0:
                        cell.pop(p, None)
                    else:
                        cell[p] = w
            for p, c in cell.items():
                for v in range(dV):
                    coact.add_at(a * dim + p * dV + v, i * dV + v, c)
    return coact


def functor_L(H, V):
    """L(V): induction of V along H into the double, straightened onto
    the basis (functional i, vector j).  The action routes through the
    double's cross relation; the coaction convolves an antipode-twisted
    functional onto the functional leg.  The verify gate and the
    adjunction dimension checks certify the conventions."""
    cache = _functor_cache(V)
    got = cache.get("L")
    if got is not None:
        return got
    field = H.field
    dH, dV = H.dim, V.dim
    dim = dH * dV
    tpl = _L_action_template(H)

    act = Matrix(field, dim, dH * dim)
    for t in range(dH):
        for i in range(dH):
            for (p, q), c in tpl[t][i].items():
                rho_q = V.rho(q)
                for v in range(dV):
                    col = t * dim + i * dV + v
                    for j, cv in mat_apply(rho_q, {v: 1}).items():
                        act.add_at(p * dV + j, col, field.mul(c, cv))
    mod = HModule(H, dim, act, name=f"L({V.name})")

    # counit functional tensor a unit-ish leg; the free generator when
    # V is the regular module
    right = dict(H.unit_vec) if dV == H.dim else {0: 1}
    hint = {}
    for k, ck in H.counit_vec.items():
        for l, cl in right.items():
            hint[k * dV + l] = field.mul(ck, cl)

    pinned = H._cache.get("L_twist")
    out = None
    for twist in ([pinned] if pinned else ["S", "Sinv"]):
        cand = YDModule(mod, _L_coaction_matrix(H, dV, twist),
                        name=f"L({V.name})")
        cand.cyclic_hint = hint
        if pinned:
            out = _gate_yd(cand)
            break
        rep = verify_yd(cand)
        if rep.ok:
            cand._verified = True
            H._cache["L_twist"] = twist
            out = cand
            break
    if out is None:
        rep.require(f"L({V.name}) with either antipode twist")
    cache["L"] = out
    return out


def yd_from_rmatrix(H, V):
    """Coaction induced by an R-matrix on a plain module.

    Of the two leg orders only one satisfies the compatibility for a
    given R-matrix convention; both are tried and the verify gate
    picks.  Raises through the gate if neither closes.
    """
    field = H.field
    dV = V.dim

    def build(flip):
        coact = Matrix(field, H.dim * dV, dV)
        for i, j, c in H.rmatrix_terms():
            coslot, actor = (i, j) if flip else (j, i)
            rho = V.rho(actor)
            for v in range(dV):
                for w, cw in mat_apply(rho, {v: 1}).items():
                    coact.add_at(coslot * dV + w, v, field.mul(c, cw))
        return YDModule(V, coact, name=f"{V.name}[R]")

    first = build(False)
    if verify_yd(first).ok:
        first._verified = True
        return first
    return _gate_yd(build(True))


# ---------------------------------------------------------------------------
# distinguished object and the socle oracle

def distinguished_object(H):
    """The 1-dim module D pinned by R(k) = L(D) in the center.

    The candidates are the modular character and its convolution
    inverse; which one satisfies the identity depends on a chain of
    sign conventions, so it is settled per algebra by the identity
    itself and cached.
    """
    got = H._cache.get("dist_obj")
    if got is not None:
        return got
    alpha = distinguished_character(H)
    seen = []
    for chi in (alpha, alpha.convolution_inverse()):
        if not any(chi == c for c in seen):
            seen.append(chi)
    Rk = functor_R(H, trivial_module(H))
    for chi in seen:
        Dm = one_dim_module(H, chi.values, name="k_D")
        if is_iso_yd(Rk, functor_L(H, Dm)):
            H._cache["dist_obj"] = Dm
            return Dm
    raise ConventionUndetermined(
        f"neither modular character convention gives R(k) = L(D) on {H.name}")


def socle_projective_cover_oracle(H):
    """Isomorphism class of soc(P(k)), computed independently of L and R.

    Route: certified radical J, semisimple quotient, the central block
    of the counit cut out by a.v = eps(a) v = v.a, Newton-lift its
    idempotent back along J, form P = He, and read the character off
    the socle {v in P : Jv = 0}, which must be a line.  The class is
    asserted to agree with the distinguished object.
    """
    field = H.field
    J = radical_of(H)
    q = quotient_algebra(H, J)
    A = q.alg
    eps_bar = [H.counit_of(q.lift({i: 1})) for i in range(A.dim)]

    cons = Matrix(field, 2 * A.dim * A.dim, A.dim)
    r = 0
    for a in range(A.dim):
        for v in range(A.dim):
            for k, c in A.mcol(a, v).items():
                cons.add_at(r + k, v, c)
            cons.add_at(r + v, v, field.neg(eps_bar[a]))
        r += A.dim
    for a in range(A.dim):
        for v in range(A.dim):
            for k, c in A.mcol(v, a).items():
                cons.add_at(r + k, v, c)
            cons.add_at(r + v, v, field.neg(eps_bar[a]))
        r += A.dim
    block = nullspace(cons)
    assert len(block) == 1, "central counit block is not one-dimensional"
    v0 = column_to_vec(block[0])
    ev = 0
    for i, c in v0.items():
        ev = field.add(ev, field.mul(c, eps_bar[i]))
    assert ev != 0, "counit vanishes on its own block"
    s = field.inv(ev)
    v0 = {i: field.mul(s, c) for i, c in v0.items()}

    e = newton_idempotent_lift(H, q.lift(v0))
    assert H.mul_vec(e, e) == e

    span = EchelonSpan(field)
    pbasis = []
    for h in range(H.dim):
        w = H.mul_vec({h: 1}, e)
        if w and span.add(w):
            pbasis.append(w)

    m = len(pbasis)
    if J:
        cons = Matrix(field, len(J) * H.dim, m)
        r = 0
        for jrow in J:
            for cidx, pb in enumerate(pbasis):
                for k, c in H.mul_vec(jrow, pb).items():
                    cons.add_at(r + k, cidx, c)
            r += H.dim
        soc = nullspace(cons)
    else:
        soc = nullspace(Matrix(field, 1, m))
    if len(soc) != 1:
        raise SocleNotSimple(
            f"soc(P(k)) for {H.name} has dimension {len(soc)}")
    svec = {}
    for i, row in enumerate(soc[0].rows):
        if row:
            vec_add_into(field, svec, pbasis[i], row[0])

    pivot = min(svec)
    piv_inv = field.inv(svec[pivot])
    values = []
    for h in range(H.dim):
        w = H.mul_vec({h: 1}, svec)
        lam = field.mul(w.get(pivot, 0), piv_inv)
        expect = {}
        vec_add_into(field, expect, svec, lam)
        assert w == expect, "socle line is not stable under the action"
        values.append(lam)

    Dm = distinguished_object(H)
    dvals = [Dm.rho(h).get(0, 0) for h in range(H.dim)]
    assert values == dvals, (
        f"socle class {values} disagrees with the distinguished object "
        f"{dvals} on {H.name}")
    return one_dim_module(H, values, name="soc(P(k))")


# ---------------------------------------------------------------------------
# object-wise theorem checks

def _probe_modules(H, cap=None):
    """Deterministic probe list: trivial, the 1-dim modules, regular.

    Probes whose constructed image dim H * dim V would exceed the cap
    are dropped (default cap: the double dimension, which admits the
    regular module).
    """
    cap = H.dim * H.dim if cap is None else cap
    key = ("probes", cap)
    got = H._cache.get(key)
    if got is not None:
        return got
    from .algtools import enumerate_characters
    probes = [("k", trivial_module(H))]
    eps_values = [H.eps(i) for i in range(H.dim)]
    for idx, chi in enumerate(enumerate_characters(H)):
        if chi.values == eps_values:
            continue
        probes.append((f"k_chi{idx}",
                       one_dim_module(H, chi.values, name=f"k_chi{idx}")))
    probes.append(("reg", regular_module(H)))
    got = [(label, V) for label, V in probes if H.dim * V.dim <= cap]
    H._cache[key] = got
    return got


def _objectwise(probes, pair_fn):
    """AND of an iso check across probes, stopping at the first failure."""
    for label, V in probes:
        left, right = pair_fn(V)
        if not is_iso_yd(left, right):
            return False, f"fails at probe {label}"
    return True, f"object-wise evidence on {len(probes)} probes"


def check_main_theorem(H, probe_dim_cap=None):
    """The eight equivalent characterizations of unimodularity, each
    evaluated independently; the final check is that they agree."""
    rep = Report(f"unimodularity equivalences for {H.name}")
    probes = _probe_modules(H, probe_dim_cap)
    k = trivial_module(H)
    Lk = functor_L(H, k)
    Rk = functor_R(H, k)
    unit = unit_yd(H)

    results = []

    def put(name, value, witness=None):
        results.append(value)
        rep.add(name, value, witness)

    put("1_unimodular", is_unimodular(H))

    ok, wit = _objectwise(probes,
                          lambda V: (functor_L(H, V), functor_R(H, V)))
    put("2_L_iso_R", ok, wit)
    ok, wit = _objectwise(probes,
                          lambda V: (functor_L(H, dual_hmod(V)),
                                     dual_yd(functor_L(H, V))))
    put("3_L_commutes_with_dual", ok, wit)
    ok, wit = _objectwise(probes,
                          lambda V: (functor_R(H, dual_hmod(V)),
                                     dual_yd(functor_R(H, V))))
    put("4_R_commutes_with_dual", ok, wit)

    put("5_Lk_selfdual", is_iso_yd(Lk, dual_yd(Lk)))
    put("6_Rk_selfdual", is_iso_yd(Rk, dual_yd(Rk)))
    put("7_hom_1_Lk_nonzero", len(hom_yd(unit, Lk)) > 0)
    put("8_hom_Rk_1_nonzero", len(hom_yd(Rk, unit)) > 0)

    rep.add("all_agree", len(set(results)) == 1,
            "".join("T" if r else "F" for r in results))
    return rep


def check_L_R_relations(H):
    """Object-wise L(D (x) -) = R = L(- (x) D), the mate relation
    R(V) = L(V^*)^*, and the induced hom-dimension equalities."""
    rep = Report(f"L/R relations for {H.name}")
    Dm = distinguished_object(H)
    probes = _probe_modules(H, cap=64)
    unit = unit_yd(H)
    k = trivial_module(H)

    for label, V in probes:
        RV = functor_R(H, V)
        rep.add(f"LD_tensor_{label}",
                is_iso_yd(RV, functor_L(H, tensor_hmod(Dm, V))))
        rep.add(f"L_tensor_D_{label}",
                is_iso_yd(RV, functor_L(H, tensor_hmod(V, Dm))))
        rep.add(f"mate_{label}",
                is_iso_yd(RV, dual_yd(functor_L(H, dual_hmod(V)))))

    for xlabel, X in (("1", unit), ("Lk", functor_L(H, k))):
        for vlabel, V in probes:
            lhs = len(hom_hmod(tensor_hmod(Dm, X.module), V))
            rhs = len(hom_yd(X, functor_L(H, V)))
            rep.add(f"ind_hom_dims_{xlabel}_{vlabel}", lhs == rhs,
                    f"{lhs} vs {rhs}")
    return rep


def check_adjunction_dims(H):
    """dim Hom(L(V), M) = dim Hom(V, UM) and dim Hom(M, R(V)) =
    dim Hom(UM, V) on small probes."""
    rep = Report(f"adjunction dimensions for {H.name}")
    small = [(l, V) for l, V in _probe_modules(H, cap=64) if V.dim == 1]
    k = trivial_module(H)
    targets = [("1", unit_yd(H)), ("Rk", functor_R(H, k)),
               ("Lk", functor_L(H, k))]
    for vl, V in small:
        LV = functor_L(H, V)
        RV = functor_R(H, V)
        for ml, M in targets:
            lhs = len(hom_yd(LV, M))
            rhs = len(hom_hmod(V, M.module))
            rep.add(f"left_{vl}_{ml}", lhs == rhs, f"{lhs} vs {rhs}")
            lhs = len(hom_yd(M, RV))
            rhs = len(hom_hmod(M.module, V))
            rep.add(f"right_{vl}_{ml}", lhs == rhs, f"{lhs} vs {rhs}")
    return rep


def check_exactness_proxy(H):
    """L and R carry direct sums to direct sums (dimension bookkeeping
    plus the verify gates on the summed carriers)."""
    rep = Report(f"exactness proxy for {H.name}")
    k = trivial_module(H)
    reg = regular_module(H)
    s = direct_sum_hmod(k, reg)
    rep.add("L_additive", functor_L(H, s).dim ==
            functor_L(H, k).dim + functor_L(H, reg).dim)
    rep.add("R_additive", functor_R(H, s).dim ==
            functor_R(H, k).dim + functor_R(H, reg).dim)
    return rep


def check_faithfulness_proxy(H):
    """L and R kill no nonzero probe."""
    rep = Report(f"faithfulness proxy for {H.name}")
    for label, V in _probe_modules(H, cap=64):
        rep.add(f"L_nonzero_{label}", functor_L(H, V).dim > 0)
        rep.add(f"R_nonzero_{label}", functor_R(H, V).dim > 0)
    return rep
