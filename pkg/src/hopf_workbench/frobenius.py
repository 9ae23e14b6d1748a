"""Algebra objects in the center built on the induced carrier B.

B is the underlying algebra of H made into an object of the center:
adjoint action h.a = h_(1) a S(h_(2)), comultiplication coaction.  Its
multiplication and unit are the ambient ones, and both turn out to be
morphisms for that structure, which the builder verifies rather than
assumes.  On top of B the module computes trace spaces, the Frobenius
pairing and copairing, and the five quantum-commutativity axioms that
license the tangle evaluation downstream.

The load-bearing dichotomy: maps B -> k that respect only the coaction
always form a line (they are the left integrals on the dual), while
maps respecting both structures exist exactly in the unimodular case.
The pairing e(a (x) b) = lambda(ab) is then invertible exactly when a
full trace exists, and its inverse is the copairing closing the snake
identities.
"""

from __future__ import annotations

from .linalg import Matrix, Singular, invert, nullspace, same_span
from .report import Report
from .hopf import is_unimodular
from .yd import (MorphismMatrix, braiding_yd, dual_yd, hom_yd, is_iso_yd,
                 tensor_yd, trivial_module, unit_yd, functor_R,
                 _dual_gens, _hopf_gens)


class Degenerate(Exception):
    """The trace pairing is singular; no Frobenius structure arises."""


# ---------------------------------------------------------------------------
# morphism checks

def _commutes_with_structure(phi):
    """Report whether phi respects the action and coaction of its handles.

    Generators suffice on both sides: the action operators multiply
    along H, the coaction components compose contravariantly along the
    dual algebra, and commuting is stable under products either way.
    """
    M, N = phi.domain, phi.codomain
    H = M.hopf
    X = phi.matrix
    rep = Report(f"morphism {M.name} -> {N.name}")
    for g in _hopf_gens(H):
        rep.add(f"action_g{g}", N.rho(g) * X == X * M.rho(g))
    for a in _dual_gens(H):
        rep.add(f"coaction_a{a}", N.comp(a) * X == X * M.comp(a))
    return rep


class AlgebraInYD:
    """An algebra whose carrier lives in the center.

    mult: object (x) object -> object and unit: 1 -> object, both
    morphisms there.  verify() re-derives every structural claim.
    """

    def __init__(self, obj, tensor_obj, mult, unit):
        self.object = obj
        self.tensor_obj = tensor_obj
        self.mult = mult
        self.unit = unit

    @property
    def hopf(self):
        return self.object.hopf

    def verify(self):
        H = self.hopf
        field = H.field
        d = self.object.dim
        rep = Report(f"algebra on {self.object.name}")
        rep.merge(_commutes_with_structure(self.mult), prefix="mult")
        rep.merge(_commutes_with_structure(self.unit), prefix="unit")

        m = self.mult.matrix
        eye = Matrix.identity(field, d)
        lhs = m * m.kron(eye)
        rhs = m * eye.kron(m)
        rep.add("associative", lhs == rhs)

        u = self.unit.matrix
        rep.add("left_unital", m * u.kron(eye) == eye)
        rep.add("right_unital", m * eye.kron(u) == eye)
        return rep


def build_B(H):
    """The induced algebra on the trivial module, gated.

    The carrier is the image of k under the right adjoint of the
    forgetful functor, so its slots are exactly the basis of H; the
    multiplication matrix is the structure multiplication read
    columnwise.
    """
    got = H._cache.get("B_alg")
    if got is not None:
        return got
    field = H.field
    d = H.dim
    obj = functor_R(H, trivial_module(H))
    assert obj.dim == d
    tensor_obj = tensor_yd(obj, obj)

    m = Matrix(field, d, d * d)
    for i in range(d):
        for j in range(d):
            for k, c in H.mcol(i, j).items():
                m.set(k, i * d + j, c)
    u = Matrix(field, d, 1)
    for i, c in H.unit_vec.items():
        u.set(i, 0, c)

    alg = AlgebraInYD(obj,
                      tensor_obj,
                      MorphismMatrix(m, tensor_obj, obj),
                      MorphismMatrix(u, unit_yd(H), obj))
    alg.verify().require(f"build_B({H.name})")
    H._cache["B_alg"] = alg
    return alg


def verify_commutative(B, braiding=None):
    """m after the braiding equals m.  An override braiding lets the
    caller probe what fails with, say, the plain flip."""
    if braiding is None:
        braiding = braiding_yd(B.object, B.object)
    return B.mult.matrix * braiding == B.mult.matrix


def flip_matrix(field, d):
    """The tensor swap on a d-dim square tensor, for mutation probes."""
    sig = Matrix(field, d * d, d * d)
    for i in range(d):
        for j in range(d):
            sig.set(j * d + i, i * d + j, field.one)
    return sig


# ---------------------------------------------------------------------------
# traces

def colinear_traces(B):
    """Basis of maps B -> k respecting the coaction alone.

    The constraint, per basis column v and output slot a of H:
    sum_j coact[a, j; v] lam_j = lam_v 1_H[a].  Its solutions are the
    left integrals on the dual, which the caller can cross-check; the
    space is always one-dimensional.
    """
    obj = B.object
    H = obj.hopf
    field = H.field
    d = obj.dim
    unit = H.unit_vec
    cons = Matrix(field, H.dim * d, d)
    for v in range(d):
        for slot, c in obj.coact_col(v).items():
            a, j = divmod(slot, d)
            cons.add_at(a * d + v, j, c)
        for a, ca in unit.items():
            cons.add_at(a * d + v, v, field.neg(ca))
    out = []
    for col in nullspace(cons):
        lam = Matrix(field, 1, d)
        for r, row in enumerate(col.rows):
            if row:
                lam.set(0, r, row[0])
        out.append(lam)
    return out


def traces_in_yd(B):
    """Basis of full traces: morphisms B -> 1 in the center."""
    return hom_yd(B.object, unit_yd(B.hopf))


def traces_report(B):
    """Dimension bookkeeping plus the integral cross-check."""
    from .builders import build_dual
    from .hopf import left_integrals_in
    H = B.hopf
    rep = Report(f"traces on B({H.name})")
    col = colinear_traces(B)
    full = traces_in_yd(B)
    rep.add("colinear_dim_1", len(col) == 1, witness=f"dim={len(col)}")
    want = 1 if is_unimodular(H) else 0
    rep.add("yd_trace_dim_matches_unimodularity", len(full) == want,
            witness=f"dim={len(full)}, unimodular={want == 1}")
    dual = H._cache.get("dual_alg_for_traces")
    if dual is None:
        dual = build_dual(H, verify=False)
        H._cache["dual_alg_for_traces"] = dual
    ints = left_integrals_in(dual)
    lam_vecs = [{j: v for j, v in lam.rows[0].items()} for lam in col]
    rep.add("colinear_equals_integrals_on_dual",
            same_span(lam_vecs, ints, H.dim, H.field))
    if full:
        span_full = [{j: v for j, v in f.matrix.rows[0].items()} for f in full]
        rep.add("yd_traces_inside_colinear",
                same_span(lam_vecs + span_full, lam_vecs, H.dim, H.field))
    return rep


# ---------------------------------------------------------------------------
# Frobenius structure

class FrobeniusData:
    """A trace with invertible pairing and the induced copairing."""

    def __init__(self, algebra, trace, copairing):
        self.algebra = algebra
        self.trace = trace
        self.copairing = copairing

    @property
    def pairing(self):
        return self.trace.matrix * self.algebra.mult.matrix


def _pairing_square(field, e_row, d):
    P = Matrix(field, d, d)
    for col, c in e_row.rows[0].items():
        P.set(col // d, col % d, c)
    return P


def _snake_ok(field, e_row, c_col, d):
    """Both triangle identities for the pairing/copairing pair."""
    eye = Matrix.identity(field, d)
    # (e (x) id) (id (x) c) and (id (x) e) (c (x) id), both on B
    left = e_row.kron(eye) * eye.kron(c_col)
    right = eye.kron(e_row) * c_col.kron(eye)
    return left == eye and right == eye


def frobenius_copairing(B, lam):
    """Invert the trace pairing; Degenerate when it is singular.

    This is where unimodularity becomes an observable: a nonzero full
    trace forces nondegeneracy, while the colinear-only trace of a
    non-unimodular algebra produces a singular pairing.
    """
    H = B.hopf
    field = H.field
    d = B.object.dim
    lam_m = lam.matrix if isinstance(lam, MorphismMatrix) else lam
    e_row = lam_m * B.mult.matrix
    P = _pairing_square(field, e_row, d)
    try:
        C = invert(P)
    except Singular:
        raise Degenerate(f"trace pairing on B({H.name}) is singular")
    c_col = Matrix(field, d * d, 1)
    for i in range(d):
        for j, v in C.rows[i].items():
            c_col.set(i * d + j, 0, v)
    assert _snake_ok(field, e_row, c_col, d)
    trace = lam if isinstance(lam, MorphismMatrix) else \
        MorphismMatrix(lam_m, B.object, unit_yd(H))
    return FrobeniusData(B, trace,
                         MorphismMatrix(c_col, unit_yd(H), B.tensor_obj))


def self_duality_report(H):
    """Trace existence against self-duality of the carrier.

    The pairing sends the carrier to its dual; when a full trace
    exists that map is an isomorphism in the center, and the
    associativity identity e(ab (x) x) = e(a (x) bx) is its module
    compatibility.
    """
    B = build_B(H)
    rep = Report(f"self-duality of B({H.name})")
    full = traces_in_yd(B)
    iso = is_iso_yd(B.object, dual_yd(B.object))
    rep.add("trace_exists_iff_selfdual", (len(full) == 1) == iso,
            witness=f"traces={len(full)}, iso={iso}")
    if full:
        field = H.field
        d = B.object.dim
        e_row = full[0].matrix * B.mult.matrix
        # curry e through its left slot: phi(a) = e(a (x) -), so the
        # matrix into the dual basis is the transposed pairing square
        P = _pairing_square(field, e_row, d)
        phi = MorphismMatrix(P.transpose(), B.object, dual_yd(B.object))
        rep.add("pairing_map_is_morphism",
                _commutes_with_structure(phi).ok)
        try:
            invert(P)
            rep.add("pairing_map_invertible", True)
        except Singular:
            rep.add("pairing_map_invertible", False)
        m = B.mult.matrix
        eye = Matrix.identity(field, d)
        rep.add("right_module_compat",
                e_row * m.kron(eye) == e_row * eye.kron(m))
    return rep


# ---------------------------------------------------------------------------
# the five axioms

def verify_qcqsa(obj, m, e, braiding=None):
    """Q1 associativity, Q2 balanced pairing, Q3 braided commutativity,
    Q4 braided symmetry of the pairing, Q5 self-dual pairing via the
    inverse copairing.  Each is an exact matrix identity; a braiding
    override turns the suite into a mutation probe.
    """
    H = obj.hopf
    field = H.field
    d = obj.dim
    m_mat = m.matrix if isinstance(m, MorphismMatrix) else m
    e_mat = e.matrix if isinstance(e, MorphismMatrix) else e
    if braiding is None:
        braiding = braiding_yd(obj, obj)
    rep = Report(f"QCQSA on {obj.name}")
    if isinstance(e, MorphismMatrix):
        rep.add("e_is_morphism", _commutes_with_structure(e).ok)
    eye = Matrix.identity(field, d)
    rep.add("Q1_associative", m_mat * m_mat.kron(eye) == m_mat * eye.kron(m_mat))
    rep.add("Q2_pairing_balanced",
            e_mat * m_mat.kron(eye) == e_mat * eye.kron(m_mat))
    rep.add("Q3_braided_commutative", m_mat * braiding == m_mat)
    rep.add("Q4_pairing_symmetric", e_mat * braiding == e_mat)
    P = _pairing_square(field, e_mat, d)
    try:
        C = invert(P)
        c_col = Matrix(field, d * d, 1)
        for i in range(d):
            for j, v in C.rows[i].items():
                c_col.set(i * d + j, 0, v)
        rep.add("Q5_self_dual", _snake_ok(field, e_mat, c_col, d))
    except Singular:
        rep.add("Q5_self_dual", False, witness="pairing singular")
    return rep


def qcqsa_report(H):
    """Everything this module knows about H's induced algebra, one pass.

    Non-unimodular inputs exercise the degenerate branch on purpose:
    the pairing built from the colinear trace must be singular there.
    """
    rep = Report(f"center algebra of {H.name}")
    B = build_B(H)
    rep.merge(B.verify(), prefix="algebra")
    rep.add("commutative", verify_commutative(B))
    rep.merge(traces_report(B), prefix="traces")
    uni = is_unimodular(H)
    full = traces_in_yd(B)
    if uni and full:
        fd = frobenius_copairing(B, full[0])
        rep.add("frobenius_nondegenerate", True)
        e_full = MorphismMatrix(fd.trace.matrix * B.mult.matrix,
                                B.tensor_obj, unit_yd(H))
        rep.merge(verify_qcqsa(B.object, B.mult, e_full), prefix="qcqsa")
    else:
        # the carrier is still Frobenius as a bare algebra (the colinear
        # trace pairs nondegenerately), but that trace is not a morphism,
        # and the morphism trace space is zero: feeding its only element
        # shows the degenerate branch
        lam = colinear_traces(B)[0]
        lam_mor = MorphismMatrix(lam, B.object, unit_yd(H))
        rep.add("colinear_trace_not_morphism",
                not _commutes_with_structure(lam_mor).ok)
        try:
            frobenius_copairing(B, lam)
            rep.add("colinear_pairing_invertible", True)
        except Degenerate:
            rep.add("colinear_pairing_invertible", False,
                    witness="expected the bare-algebra pairing to work")
        zero = Matrix(H.field, 1, B.object.dim)
        try:
            frobenius_copairing(B, zero)
            rep.add("degenerate_branch_observed", False,
                    witness="zero trace produced a copairing")
        except Degenerate:
            rep.add("degenerate_branch_observed", True)
    rep.merge(self_duality_report(H), prefix="selfdual")
    return rep
