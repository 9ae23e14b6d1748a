"""The coend Hopf algebra of the module category of a quasitriangular H.

The coend of X -> X* (x) X over finite-dimensional H-modules lives on the
dual space H* with the coadjoint action (h.f)(x) = f(S(h_(1)) x h_(2)).
The dinatural component at a module X sends xi (x) v to the matrix
coefficient h |-> xi(h.v); at the regular module this map is onto, so
every structure map is solved exactly from its defining equation
restricted to an invertible square of coefficient columns:

  multiplication   m o (i(X) (x) i(Y)) = i(Y (x) X) o (id (x) sigma),
                   with sigma the R-matrix braiding moving the X leg
                   past Y* (x) Y;
  comultiplication splits a coefficient along an inserted dual basis,
                   Delta(i(xi (x) x)) = sum_t i(xi (x) e_t) (x) i(e^t (x) x);
  counit           evaluation, eps o i(X) = ev_X;
  unit             i at the trivial module, i.e. the counit functional;
  antipode         not postulated: solved as the convolution inverse of
                   the identity and certified by both antipode axioms.

Everything is certified after the fact.  The multiplication's defining
equation lives on dim^4 columns; it is checked exactly on the dim^3
columns with the last leg frozen at 1, which suffices because
V (x) H_reg is free on {basis (x) 1} (v (x) h |-> S(h_(1))v (x) h_(2) is
an H-isomorphism onto a trivial-tensor-regular module) and both sides of
the equation are independently certified H-linear.
"""

import random

from .algtools import enumerate_characters
from .hopf import (NotUnimodular, is_unimodular, mat_apply, ribbon_search,
                   vec_add_into, verify_quasitriangular, verify_ribbon)
from .linalg import Matrix, column_span_basis, invert, nullspace, same_span
from .report import Report
from .yd import (HModule, MorphismMatrix, _hopf_gens, _seed, dual_hmod,
                 functor_L, hom_yd, one_dim_module, regular_module,
                 trivial_module, unit_yd, verify_hmodule)


class InconsistentFactorization(Exception):
    """A structure map failed to factor through the coefficient map.

    Dinaturality guarantees the factorizations exist, so this only fires
    on an implementation bug (or corrupted input surviving the gates).
    """


class MissingRMatrix(Exception):
    pass


class RibbonNotFound(Exception):
    pass


# ---------------------------------------------------------------------------
# matrix coefficients and the carrier

class MatrixCoefficientMap:
    """i(X): X* (x) X -> H*, xi (x) v |-> (h |-> xi(h.v)).

    Stored as a dim(H) x dim(X)^2 matrix over the dual basis of H and
    the tensor basis e^xi (x) e_v of the domain.
    """

    def __init__(self, hopf, module, matrix):
        self.hopf = hopf
        self.module = module
        self.matrix = matrix

    def __repr__(self):
        return f"MatrixCoefficientMap({self.module.name}, nnz={self.matrix.nnz()})"


def matrix_coefficient_map(H, X):
    dx = X.dim
    out = Matrix(H.field, H.dim, dx * dx)
    for m in range(H.dim):
        for xi, row in enumerate(X.rho(m).rows):
            for v, c in row.items():
                out.set(m, xi * dx + v, c)
    return MatrixCoefficientMap(H, X, out)


def _reg_coefficients(H):
    got = H._cache.get("coend_ireg")
    if got is None:
        got = matrix_coefficient_map(H, regular_module(H))
        H._cache["coend_ireg"] = got
    return got


def _xx_rho(H, g):
    """Action of e_g on X* (x) X for X the regular module."""
    X = regular_module(H)
    Xd = dual_hmod(X)
    acc = Matrix(H.field, H.dim ** 2, H.dim ** 2)
    for a, b, c in H.dterms(g):
        acc = acc + Xd.rho(a).kron(X.rho(b)).scale(c)
    return acc


def coadjoint_carrier(H):
    """H* as a module under (h.f)(x) = f(S(h_(1)) x h_(2)).

    The closed form is not trusted as written: it must make the
    coefficient map of the regular module H-linear.  If that fails the
    action is re-derived from the linearity equation itself, which pins
    it uniquely because the coefficient map is onto.
    """
    got = H._cache.get("coad_mod")
    if got is not None:
        return got
    field = H.field
    d = H.dim
    rhos = []
    for h in range(d):
        acc = Matrix(field, d, d)
        for a, b, c in H.dterms(h):
            left = Matrix(field, d, d)
            for k, ck in H.apply_S({a: 1}).items():
                left = left + H.left_mult_matrix(k).scale(ck)
            acc = acc + (left * H.right_mult_matrix(b)).transpose().scale(c)
        rhos.append(acc)

    I = _reg_coefficients(H).matrix
    gens = _hopf_gens(H)
    route = "closed form"
    if not all(rhos[g] * I == I * _xx_rho(H, g) for g in gens):
        chosen, isinv = _coefficient_square(H)
        rhos = []
        for h in range(d):
            img = I * _xx_rho(H, h)
            sq = Matrix(field, d, d)
            for pos, c in enumerate(chosen):
                for r, v in img.col_dict(c).items():
                    sq.set(r, pos, v)
            rhos.append(sq * isinv)
        route = "solved from coefficient linearity"
        if not all(rhos[g] * I == I * _xx_rho(H, g) for g in gens):
            raise InconsistentFactorization(
                f"no action on {H.name}* makes the coefficient map H-linear")
    mod = HModule.from_rhos(H, rhos, name=f"{H.name}*coad")
    verify_hmodule(mod).require(mod.name)
    mod._verified = True
    mod.certification = route
    H._cache["coad_mod"] = mod
    return mod


def _coefficient_square(H):
    """Column indices of an invertible square inside i(H_reg), plus its inverse."""
    got = H._cache.get("coend_isq")
    if got is not None:
        return got
    d = H.dim
    I = _reg_coefficients(H).matrix
    chosen, _ = column_span_basis(
        (I.col_dict(c) for c in range(d * d)), d, H.field)
    if len(chosen) < d:
        raise InconsistentFactorization(
            f"matrix coefficients of the regular module of {H.name} "
            f"do not span the dual")
    sq = Matrix(H.field, d, d)
    for pos, c in enumerate(chosen):
        for r, v in I.col_dict(c).items():
            sq.set(r, pos, v)
    got = (chosen, invert(sq))
    H._cache["coend_isq"] = got
    return got


# ---------------------------------------------------------------------------
# the braided Hopf structure

class BraidedHopfData:
    """The coend with its five structure maps and the gate report.

    m: F (x) F -> F, u: k -> F, delta: F -> F (x) F, eps: F -> k and
    antipode: F -> F are MorphismMatrix values; braiding_source records
    the R-matrix terms the multiplication was braided with.
    """

    def __init__(self, carrier, m, u, delta, eps, antipode,
                 braiding_source, axioms):
        self.carrier = carrier
        self.m = m
        self.u = u
        self.delta = delta
        self.eps = eps
        self.antipode = antipode
        self.braiding_source = braiding_source
        self.axioms = axioms

    @property
    def hopf(self):
        return self.carrier.hopf

    @property
    def dim(self):
        return self.carrier.dim

    def __repr__(self):
        return f"BraidedHopfData({self.hopf.name}, dim={self.dim})"


class _TensorSquare:
    """Dimension-only stand-in so tensor-square legs carry a handle
    without paying for a full verified module on dim^2."""

    def __init__(self, base):
        self.dim = base.dim ** 2
        self.name = f"({base.name}(x){base.name})"


def _pair_rho(H, carrier, g):
    """Diagonal action of e_g on carrier (x) carrier."""
    acc = Matrix(H.field, carrier.dim ** 2, carrier.dim ** 2)
    for a, b, c in H.dterms(g):
        acc = acc + carrier.rho(a).kron(carrier.rho(b)).scale(c)
    return acc


def build_coend_F(H):
    got = H._cache.get("coend_F")
    if got is not None:
        return got
    if H.rmatrix is None:
        raise MissingRMatrix(f"{H.name} carries no R-matrix")
    verify_quasitriangular(H).require(H.name)

    field = H.field
    d = H.dim
    fmul, fadd = field.mul, field.add
    X = regular_module(H)
    Xd = dual_hmod(X)
    carrier = coadjoint_carrier(H)
    I = _reg_coefficients(H).matrix
    icols = [I.col_dict(c) for c in range(d * d)]
    chosen, isinv = _coefficient_square(H)
    terms = H.rmatrix_terms()
    eye = Matrix.identity(field, d)

    rep = Report(f"coend Hopf algebra of {H.name}")
    rep.add("coefficients_surjective", True,
            "invertible square at columns " + repr(chosen))
    rep.add("carrier_action_certified", True, carrier.certification)
    rep.add("coefficient_map_linear",
            all(carrier.rho(g) * I == I * _xx_rho(H, g)
                for g in _hopf_gens(H)))

    # unit: the coefficient map of the trivial module is the counit functional
    u_col = Matrix(field, d, 1)
    for m in range(d):
        e = H.eps(m)
        if e != 0:
            u_col.set(m, 0, e)

    # counit: factor evaluation through the coefficient square
    ev_sq = Matrix(field, 1, d)
    for pos, c in enumerate(chosen):
        a, b = divmod(c, d)
        if a == b:
            ev_sq.set(0, pos, field.one)
    eps_row = ev_sq * isinv
    ev_full = Matrix(field, 1, d * d)
    for a in range(d):
        ev_full.set(0, a * d + a, field.one)
    rep.add("counit_factors_evaluation", eps_row * I == ev_full)
    rep.add("counit_evaluates_at_unit",
            all(eps_row.get(0, m) == field.normalize(H.unit_vec.get(m, 0))
                for m in range(d)))

    # comultiplication: dual-basis insertion, solved on the square and
    # then certified on every coefficient column
    def delta_target(a, b):
        out = {}
        for t in range(d):
            left = icols[a * d + t]
            if not left:
                continue
            right = icols[t * d + b]
            if not right:
                continue
            for m1, c1 in left.items():
                base = m1 * d
                for m2, c2 in right.items():
                    vec_add_into(field, out, {base + m2: 1}, fmul(c1, c2))
        return out

    delta_sq = Matrix(field, d * d, d)
    for pos, c in enumerate(chosen):
        a, b = divmod(c, d)
        for slot, v in delta_target(a, b).items():
            delta_sq.set(slot, pos, v)
    delta_mat = delta_sq * isinv
    witness = None
    for c in range(d * d):
        a, b = divmod(c, d)
        if mat_apply(delta_mat, icols[c]) != delta_target(a, b):
            witness = (a, b)
            break
    if witness is not None:
        raise InconsistentFactorization(
            f"comultiplication does not factor on {H.name} at column {witness}")
    rep.add("comultiplication_factors", True)

    # multiplication: braid the X leg past Y* (x) Y, land in i of Y (x) X.
    # i_{Y(x)X}[(eta y)(xi x)] pairs eta with h_(1) y and xi with h_(2) x;
    # stored column-keyed for the contraction below.
    iyx = {}
    for m in range(d):
        for u1, u2, cu in H.dterms(m):
            L1 = H.left_mult_matrix(u1)
            L2 = H.left_mult_matrix(u2)
            for eta, row1 in enumerate(L1.rows):
                for y, c1 in row1.items():
                    k1 = eta * d + y
                    cc1 = fmul(cu, c1)
                    for xi, row2 in enumerate(L2.rows):
                        for x, c2 in row2.items():
                            col = iyx.setdefault((k1, xi * d + x), {})
                            w = fadd(col.get(m, 0), fmul(cc1, c2))
                            if w == 0:
                                col.pop(m, None)
                            else:
                                col[m] = w

    sd_cols = []
    for s in range(d):
        M = Xd.rho(s)
        sd_cols.append([M.col_dict(j) for j in range(d)])

    def braid_spread(x, eta, yvec):
        """sigma_{X, Y*(x)Y} on e_x (x) e^eta (x) yvec, flattened to
        [(eta'*d + y', x', coeff)] with the X leg last."""
        out = []
        for r1, r2, cr in terms:
            xpart = H.mcol(r1, x)
            if not xpart:
                continue
            for s, t, cd in H.dterms(r2):
                epart = sd_cols[s][eta]
                if not epart:
                    continue
                ypart = H.mul_vec({t: 1}, yvec)
                if not ypart:
                    continue
                c0 = fmul(cr, cd)
                for ep, ce in epart.items():
                    base = ep * d
                    for yp, cy in ypart.items():
                        cc = fmul(c0, fmul(ce, cy))
                        for xp, cx in xpart.items():
                            out.append((base + yp, xp, fmul(cc, cx)))
        return out

    def rhs_col(xi, spread):
        out = {}
        for k1, xp, c in spread:
            col = iyx.get((k1, xi * d + xp))
            if col:
                vec_add_into(field, out, col, c)
        return out

    rhs_sq = Matrix(field, d, d * d)
    for pos2, c2 in enumerate(chosen):
        eta, y = divmod(c2, d)
        for pos1, c1 in enumerate(chosen):
            xi, x = divmod(c1, d)
            spread = braid_spread(x, eta, {y: 1})
            for m, v in rhs_col(xi, spread).items():
                rhs_sq.set(m, pos1 * d + pos2, v)
    m_mat = (rhs_sq * isinv.kron(eye)) * eye.kron(isinv)
    mcols = [m_mat.col_dict(c) for c in range(d * d)]

    # gate 1: the factorized multiplication must be H-linear (together
    # with the generator sweep below this pins the defining equation on
    # every column, not just the swept ones)
    if not all(carrier.rho(g) * m_mat == m_mat * _pair_rho(H, carrier, g)
               for g in _hopf_gens(H)):
        raise InconsistentFactorization(
            f"factorized multiplication on {H.name} is not a module map")
    rep.add("multiplication_is_module_map", True)

    # gate 2: defining equation on the generator columns (last leg at 1)
    unit = H.unit_vec
    witness = None
    for eta in range(d):
        if witness:
            break
        for x in range(d):
            spread = braid_spread(x, eta, unit)
            for xi in range(d):
                lhs = {}
                for m1, c1 in icols[xi * d + x].items():
                    vec_add_into(field, lhs, mcols[m1 * d + eta], c1)
                if lhs != rhs_col(xi, spread):
                    witness = (xi, x, eta)
                    break
            if witness:
                break
    if witness is not None:
        raise InconsistentFactorization(
            f"multiplication does not factor on {H.name} at generator "
            f"column {witness}")
    rep.add("multiplication_factors_on_generators", True)

    # spot insurance on full columns, bypassing the freeness reduction
    rng = random.Random(_seed() ^ (0x5EED ^ H.dim))
    ok = True
    for _ in range(8):
        xi, x, eta, y = (rng.randrange(d) for _ in range(4))
        lhs = {}
        for m1, c1 in icols[xi * d + x].items():
            for m2, c2 in icols[eta * d + y].items():
                vec_add_into(field, lhs, mcols[m1 * d + m2], fmul(c1, c2))
        if lhs != rhs_col(xi, braid_spread(x, eta, {y: 1})):
            ok = False
            break
    rep.add("multiplication_factors_spot_random", ok)
    rep.add("factorization_unique_on_image", True,
            "solved on an invertible coefficient square")
    if not rep.ok:
        raise InconsistentFactorization(repr(rep.failures()))

    # remaining module-map certificates
    gens = _hopf_gens(H)
    rep.add("unit_is_module_map",
            all(carrier.rho(g) * u_col == u_col.scale(H.eps(g)) for g in gens))
    rep.add("counit_is_module_map",
            all(eps_row * carrier.rho(g) == eps_row.scale(H.eps(g))
                for g in gens))
    rep.add("comultiplication_is_module_map",
            all(_pair_rho(H, carrier, g) * delta_mat == delta_mat * carrier.rho(g)
                for g in gens))

    # plain (co)algebra axioms
    rep.add("associative",
            m_mat * m_mat.kron(eye) == m_mat * eye.kron(m_mat))
    rep.add("left_unital", m_mat * u_col.kron(eye) == eye)
    rep.add("right_unital", m_mat * eye.kron(u_col) == eye)
    rep.add("coassociative",
            delta_mat.kron(eye) * delta_mat == eye.kron(delta_mat) * delta_mat)
    rep.add("left_counital", eps_row.kron(eye) * delta_mat == eye)
    rep.add("right_counital", eye.kron(eps_row) * delta_mat == eye)
    rep.add("counit_multiplicative",
            eps_row * m_mat == eps_row.kron(eps_row))
    rep.add("comultiplication_of_unit",
            delta_mat * u_col == u_col.kron(u_col))
    rep.add("counit_of_unit", (eps_row * u_col).get(0, 0) == field.one)

    # braided bialgebra compatibility, column by column
    rho_cols = []
    for h in range(d):
        M = carrier.rho(h)
        rho_cols.append([M.col_dict(j) for j in range(d)])
    sig_cols = {}

    def sig_col(j, k):
        got = sig_cols.get((j, k))
        if got is None:
            got = {}
            for r1, r2, cr in terms:
                for q, cq in rho_cols[r2][k].items():
                    base = q * d
                    c0 = fmul(cr, cq)
                    for p, cp in rho_cols[r1][j].items():
                        vec_add_into(field, got, {base + p: 1}, fmul(c0, cp))
            sig_cols[(j, k)] = got
        return got

    dcols = [delta_mat.col_dict(c) for c in range(d)]
    compat = True
    for a in range(d):
        if not compat:
            break
        for b in range(d):
            lhs = mat_apply(delta_mat, mcols[a * d + b])
            rhs = {}
            for s1, c1 in dcols[a].items():
                i, j = divmod(s1, d)
                for s2, c2 in dcols[b].items():
                    k, l = divmod(s2, d)
                    c12 = fmul(c1, c2)
                    for sq, cq in sig_col(j, k).items():
                        p, q = divmod(sq, d)
                        c3 = fmul(c12, cq)
                        right = mcols[q * d + l]
                        if not right:
                            continue
                        for r1_, v1 in mcols[i * d + p].items():
                            base = r1_ * d
                            cc = fmul(c3, v1)
                            for r2_, v2 in right.items():
                                vec_add_into(field, rhs, {base + r2_: 1},
                                             fmul(cc, v2))
            if lhs != rhs:
                compat = False
                break
    rep.add("bialgebra_braided_compat", compat,
            None if compat else f"first mismatch at column ({a},{b})")

    # antipode: cheap closed-form candidates, else the linear solve
    s_mat, route = _solve_antipode(H, m_mat, delta_mat, u_col, eps_row, mcols,
                                   dcols)
    rep.add("antipode_route", s_mat is not None, route)
    if s_mat is None:
        raise InconsistentFactorization(
            f"identity map on the coend of {H.name} has no convolution inverse")
    rep.add("antipode_left",
            _convolve(field, d, mcols, dcols, s_mat, None) == _unit_counit(
                field, d, u_col, eps_row))
    rep.add("antipode_right",
            _convolve(field, d, mcols, dcols, None, s_mat) == _unit_counit(
                field, d, u_col, eps_row))
    rep.add("antipode_is_module_map",
            all(carrier.rho(g) * s_mat == s_mat * carrier.rho(g)
                for g in gens))
    try:
        invert(s_mat)
        rep.add("antipode_invertible", True)
    except Exception:
        rep.add("antipode_invertible", False)

    if {(j, i) for i, j, _ in terms} == {(i, j) for i, j, _ in terms} and \
            {i * d + j: c for i, j, c in terms} == \
            {j * d + i: c for i, j, c in terms}:
        flip = Matrix(field, d * d, d * d)
        for i in range(d):
            for j in range(d):
                flip.set(i * d + j, j * d + i, field.one)
        sig_full = Matrix(field, d * d, d * d)
        for jk, col in ((j * d + k, sig_col(j, k))
                        for j in range(d) for k in range(d)):
            for slot, v in col.items():
                sig_full.set(slot, jk, v)
        rep.add("commutative_under_symmetric_rmatrix",
                m_mat * sig_full == m_mat)

    FF = _TensorSquare(carrier)
    triv = trivial_module(H)
    out = BraidedHopfData(
        carrier,
        MorphismMatrix(m_mat, FF, carrier),
        MorphismMatrix(u_col, triv, carrier),
        MorphismMatrix(delta_mat, carrier, FF),
        MorphismMatrix(eps_row, carrier, triv),
        MorphismMatrix(s_mat, carrier, carrier),
        list(terms),
        rep,
    )
    rep.require(f"coend of {H.name}")
    H._cache["coend_F"] = out
    return out


def _unit_counit(field, d, u_col, eps_row):
    return u_col * eps_row


def _convolve(field, d, mcols, dcols, left, right):
    """m o (left (x) right) o Delta with None meaning the identity."""
    out = Matrix(field, d, d)
    for c in range(d):
        acc = {}
        for slot, v in dcols[c].items():
            i, j = divmod(slot, d)
            li = {i: 1} if left is None else left.col_dict(i)
            rj = {j: 1} if right is None else right.col_dict(j)
            for p, cp in li.items():
                base = p * d
                cc = field.mul(v, cp)
                for q, cq in rj.items():
                    vec_add_into(field, acc, mcols[base + q],
                                 field.mul(cc, cq))
        for r, v in acc.items():
            out.set(r, c, v)
    return out


def _solve_antipode(H, m_mat, delta_mat, u_col, eps_row, mcols, dcols):
    """Convolution inverse of the identity on the coend.

    The dual antipode (and its inverse) are tried first; they are exact
    for symmetric R.  Otherwise the antipode axiom is a square linear
    system in the matrix entries and is solved directly.
    """
    field = H.field
    d = H.dim
    target = _unit_counit(field, d, u_col, eps_row)

    def hits(S):
        return (_convolve(field, d, mcols, dcols, S, None) == target and
                _convolve(field, d, mcols, dcols, None, S) == target)

    for name, cand in (("transposed antipode", H.antipode.transpose()),
                       ("transposed inverse antipode",
                        H.antipode_inv().transpose())):
        if hits(cand):
            return cand, name

    # A[(r,c),(p,i)] = sum_j m[r, p d + j] Delta[i d + j, c]
    cons = Matrix(field, d * d, d * d)
    for r in range(d):
        for col, vm in m_mat.rows[r].items():
            p, j = divmod(col, d)
            for i in range(d):
                for c, vd in delta_mat.rows[i * d + j].items():
                    cons.add_at(r * d + c, p * d + i, field.mul(vm, vd))
    rhs = Matrix(field, d * d, 1)
    for r, row in enumerate(target.rows):
        for c, v in row.items():
            rhs.set(r * d + c, 0, v)
    from .linalg import Inconsistent, solve
    try:
        vec = solve(cons, rhs)
    except Inconsistent:
        return None, "left convolution system inconsistent"
    S = Matrix(field, d, d)
    for slot, row in enumerate(vec.rows):
        if row:
            S.set(slot // d, slot % d, row[0])
    if hits(S):
        return S, "solved left convolution system"
    return None, "left inverse is not two-sided"


# ---------------------------------------------------------------------------
# dinaturality probes

def dinaturality_report(H):
    """Wedge condition i(X) o (f* (x) id) = i(Y) o (id (x) f) on probes.

    Probes: right multiplications (endomorphisms of the regular module),
    the counit onto the trivial module, and a left integral embedding
    the trivial module.
    """
    from .hopf import left_integrals_in
    field = H.field
    d = H.dim
    rep = Report(f"dinaturality of matrix coefficients over {H.name}")
    I = _reg_coefficients(H).matrix
    eye = Matrix.identity(field, d)
    u_col = Matrix(field, d, 1)
    for m in range(d):
        e = H.eps(m)
        if e != 0:
            u_col.set(m, 0, e)

    ok = True
    witness = None
    for a in range(d):
        f = H.right_mult_matrix(a)
        if I * f.transpose().kron(eye) != I * eye.kron(f):
            ok = False
            witness = f"right multiplication by basis {a}"
            break
    rep.add("right_multiplications", ok, witness)

    eps_col = Matrix(field, d, 1)
    eps_rowm = Matrix(field, 1, d)
    for m in range(d):
        e = H.eps(m)
        if e != 0:
            eps_col.set(m, 0, e)
            eps_rowm.set(0, m, e)
    rep.add("counit_morphism", I * eps_col.kron(eye) == u_col * eps_rowm)

    lam_col = left_integrals_in(H)[0]
    lam_row = lam_col.transpose()
    rep.add("integral_morphism", I * eye.kron(lam_col) == u_col * lam_row)
    return rep


# ---------------------------------------------------------------------------
# integrals in the coend

def _integral_constraints(F, K, sides):
    H = F.hopf
    field = H.field
    d = F.dim
    gens = _hopf_gens(H)
    m_mat = F.m.matrix
    eps_row = F.eps.matrix
    cons = Matrix(field, (len(gens) + d * len(sides)) * d, d)
    base = 0
    for g in gens:
        chi = K.rho(g).get(0, 0)
        for r, row in enumerate(F.carrier.rho(g).rows):
            for cidx, v in row.items():
                cons.add_at(base + r, cidx, v)
            cons.add_at(base + r, r, field.neg(chi))
        base += d
    for side in sides:
        for r in range(d):
            for col, v in m_mat.rows[r].items():
                i, w = divmod(col, d)
                if side == "right":
                    w, i = i, w
                cons.add_at(base + i * d + r, w, v)
        for i in range(d):
            e = eps_row.get(0, i)
            if e != 0:
                for r in range(d):
                    cons.add_at(base + i * d + r, r, field.neg(e))
        base += d * d
    return cons


def integrals_based(F, K, side="left"):
    """Basis of H-linear maps K -> F with m o (id (x) Lambda) = eps (x) Lambda
    (or the mirrored identity for side="right")."""
    return nullspace(_integral_constraints(F, K, (side,)))


def check_int_F_D(H):
    """Character sweep for the object of integrals.

    The K-based left integrals of the coend form a line exactly when K
    is the dual of the distinguished object, and vanish otherwise.
    """
    from .yd import distinguished_object
    F = build_coend_F(H)
    field = H.field
    d = H.dim
    rep = Report(f"object of integrals of the coend of {H.name}")
    Dm = distinguished_object(H)
    chi_d = [Dm.rho(h).get(0, 0) for h in range(d)]
    dual_vals = []
    for h in range(d):
        acc = field.zero
        for k, c in H.apply_S({h: 1}).items():
            acc = field.add(acc, field.mul(c, chi_d[k]))
        dual_vals.append(acc)

    hits = []
    for n, chi in enumerate(enumerate_characters(H)):
        K = one_dim_module(H, chi.values, name=f"k_chi{n}")
        got = len(integrals_based(F, K))
        expected = 1 if [field.normalize(v) for v in chi.values] == \
            [field.normalize(v) for v in dual_vals] else 0
        rep.add(f"character_{n}_integral_dim", got == expected,
                "values=(%s) dim=%d expected=%d" % (
                    ",".join(field.fmt(v) for v in chi.values), got, expected))
        if got:
            hits.append(n)
    rep.add("exactly_one_character_carries_integrals", len(hits) == 1,
            repr(hits))
    return rep


def two_sided_integral(H):
    """The invariant integral of the coend for unimodular H.

    Returns (column, report): the one-dimensional space of maps 1 -> F
    satisfying both integral identities, cross-checked against the line
    of central morphisms 1 -> L(1) transported onto the carrier."""
    if not is_unimodular(H):
        raise NotUnimodular(f"{H.name} is not unimodular")
    F = build_coend_F(H)
    field = H.field
    d = H.dim
    rep = Report(f"two-sided integral of the coend of {H.name}")
    K = trivial_module(H)
    left = integrals_based(F, K, "left")
    right = integrals_based(F, K, "right")
    rep.add("left_integrals_dim_1", len(left) == 1, str(len(left)))
    rep.add("right_integrals_dim_1", len(right) == 1, str(len(right)))
    two = nullspace(_integral_constraints(F, K, ("left", "right")))
    rep.add("two_sided_dim_1", len(two) == 1, str(len(two)))
    lam = two[0] if two else None

    homs = hom_yd(unit_yd(H), functor_L(H, trivial_module(H)))
    rep.add("central_hom_line", len(homs) == 1, str(len(homs)))
    if lam is not None and len(homs) == 1:
        # f |-> f o S intertwines the coadjoint carrier with L(1)
        T = H.antipode.transpose()
        rep.add("matches_central_hom",
                same_span([T * lam], [homs[0].matrix], d, field))
    return lam, rep


def kirby_pair_identity(F, left_col, right_col):
    """(id (x) m) o (Delta (x) id) on left (x) right, compared with
    left (x) right."""
    field = F.hopf.field
    d = F.dim
    w = F.delta.matrix * left_col
    lam2 = {r: row[0] for r, row in enumerate(right_col.rows) if row}
    m_mat = F.m.matrix
    out = {}
    for slot, row in enumerate(w.rows):
        if not row:
            continue
        c = row[0]
        i, j = divmod(slot, d)
        base = j * d
        for k, ck in lam2.items():
            cc = field.mul(c, ck)
            for r, vm in m_mat.col_dict(base + k).items():
                vec_add_into(field, out, {i * d + r: 1}, field.mul(cc, vm))
    lam1 = {r: row[0] for r, row in enumerate(left_col.rows) if row}
    want = {}
    for i, c1 in lam1.items():
        for r, c2 in lam2.items():
            want[i * d + r] = field.mul(c1, c2)
    return out == want


def kirby_element_check(H):
    """The two algebraic Kirby identities for the invariant integral."""
    lam, pre = two_sided_integral(H)
    if lam is None:
        raise InconsistentFactorization(
            f"no two-sided integral found on the coend of {H.name}")
    v = ribbon_search(H)
    if v is None:
        raise RibbonNotFound(f"no ribbon element found on {H.name}")
    verify_ribbon(H, v).require(H.name)
    F = build_coend_F(H)
    rep = Report(f"Kirby element identities for {H.name}")
    rep.add("antipode_fixes_integral", F.antipode.matrix * lam == lam)
    rep.add("integral_pair_identity", kirby_pair_identity(F, lam, lam))
    return rep
