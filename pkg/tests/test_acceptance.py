"""One gate per headline claim, all at zero tolerance.

Each test is a single pass/fail line under pytest -v.  The bundled
seven are trivial, kZ/2, kS3, the 4-dimensional algebra over Q, its
dual, Taft(3) over F_7, and the double of the 4-dimensional algebra;
the bank adds D(kZ/2) and the stored dual presentation.
"""

import json
import random

from hopf_workbench import cli
from hopf_workbench.bank import (bank_names, resolve_hopf,
                                 sweedler_with_rmatrix)
from hopf_workbench.builders import build_dual
from hopf_workbench.coend import (build_coend_F, check_int_F_D,
                                  kirby_element_check, kirby_pair_identity,
                                  two_sided_integral)
from hopf_workbench.frobenius import (Degenerate, build_B, colinear_traces,
                                      frobenius_copairing, traces_in_yd,
                                      verify_commutative, verify_qcqsa)
from hopf_workbench.hopf import (distinguished_character, is_unimodular,
                                 left_integrals_in, right_integrals_in,
                                 ribbon_search, verify_hopf)
from hopf_workbench.linalg import Matrix, same_span
from hopf_workbench.tangle import (build_context, check_s_condition,
                                   count_free_homs, genus_unknot, invariant_V,
                                   parse_tangle, relation_suite)
from hopf_workbench.yd import (MorphismMatrix, check_main_theorem,
                               distinguished_object, functor_L, functor_R,
                               is_iso_yd, socle_projective_cover_oracle,
                               trivial_module, unit_yd)

from conftest import mutate_structure, mutation_detected

UNIMODULAR = {"trivial": True, "kz2": True, "ks3": True, "h4": False,
              "h4dual": False, "taft3": False, "dh4": True}


def test_criterion_1_axiom_gate_and_mutation_detection(suite7):
    for label, H in suite7.items():
        assert verify_hopf(H).ok, label
    rng = random.Random(20260823)
    algebras = list(suite7.values())
    detected = 0
    misses = []
    for n in range(100):
        H = algebras[n % len(algebras)]
        mut, what = mutate_structure(H, rng)
        if mutation_detected(mut):
            detected += 1
        else:
            misses.append(f"{H.name}: {what}")
    assert detected == 100, f"undetected mutations: {misses}"


def test_criterion_2_integral_spans_and_unimodularity(suite7, h4):
    left = left_integrals_in(h4)
    right = right_integrals_in(h4)
    assert len(left) == 1 and len(right) == 1
    assert same_span(left, [{1: 1, 3: 1}], 4, h4.field)      # x + gx
    assert same_span(right, [{1: 1, 3: -1}], 4, h4.field)    # x - gx
    for label, H in suite7.items():
        assert is_unimodular(H) == UNIMODULAR[label], label
    assert distinguished_character(h4).values[2] == -1       # alpha(g)


def test_criterion_3_main_theorem_coherence(suite7):
    for label, H in suite7.items():
        rep = check_main_theorem(H)
        verdicts = [c.passed for c in rep.checks[:-1]]
        assert len(verdicts) == 8, label
        assert rep.checks[-1].passed, f"{label}: {rep.checks}"
        assert set(verdicts) == {UNIMODULAR[label]}, f"{label}: {verdicts}"


def test_criterion_4_distinguished_object_oracle(suite7, ks3, h4, taft3):
    for H in (ks3, h4, taft3):
        soc = socle_projective_cover_oracle(H)
        Dm = distinguished_object(H)
        assert [soc.action.get(0, i) for i in range(H.dim)] \
            == [Dm.action.get(0, i) for i in range(H.dim)], H.name
    for label, H in suite7.items():
        Rk = functor_R(H, trivial_module(H))
        LD = functor_L(H, distinguished_object(H))
        assert is_iso_yd(Rk, LD), label


def test_criterion_5_center_algebra_frobenius(suite7):
    for label, H in suite7.items():
        B = build_B(H)
        assert verify_commutative(B), label
        assert len(colinear_traces(B)) == 1, label
        full = traces_in_yd(B)
        if is_unimodular(H):
            assert len(full) == 1, label
            frobenius_copairing(B, full[0])  # raises Degenerate if singular
        else:
            assert len(full) == 0, label
            try:
                frobenius_copairing(B, Matrix(H.field, 1, B.object.dim))
            except Degenerate:
                pass
            else:
                raise AssertionError(f"{label}: zero trace gave a copairing")


def test_criterion_6_qcqsa_and_genus_invariants(suite7, kz2, ks3):
    for label, H in suite7.items():
        if not is_unimodular(H):
            continue
        B = build_B(H)
        e = MorphismMatrix(traces_in_yd(B)[0].matrix * B.mult.matrix,
                           B.tensor_obj, unit_yd(H))
        rep = verify_qcqsa(B.object, B.mult, e)
        assert rep.ok, f"{label}: {rep.failures()}"
        rel = relation_suite(build_context(H))
        assert rel.ok, f"{label}: {rel.failures()}"

    from hopf_workbench.bank import read_tangle_text
    for H, order in ((kz2, 2), (ks3, 6)):
        table = [[next(iter(H.mcol(i, j))) for j in range(H.dim)]
                 for i in range(H.dim)]
        for g in (1, 2, 3):
            want = count_free_homs(table, g)
            assert want == order ** g
            assert invariant_V(genus_unknot(g), H) == want, (H.name, g)
        assert check_s_condition(H), H.name
        for name in ("genus1", "genus2", "genus3"):
            plain = invariant_V(read_tangle_text(name), H)
            twisted = invariant_V(read_tangle_text(name + "_twisted"), H)
            assert plain == twisted, (H.name, name)


def test_criterion_7_coend_reconstruction_and_sweeps(kz2, ks3, dh4, h4r):
    for H in (kz2, ks3):
        F = build_coend_F(H)
        D = build_dual(H, verify=False)
        assert F.m.matrix == D.mult, H.name
        assert F.delta.matrix == D.comult, H.name
        assert F.antipode.matrix == D.antipode, H.name
        assert F.u.matrix.col_dict(0) == D.unit_vec, H.name
        assert dict(F.eps.matrix.rows[0]) == D.counit_vec, H.name

    Fd = build_coend_F(dh4)
    assert Fd.axioms.ok, Fd.axioms.failures()

    for H in (ks3, dh4, h4r):
        rep = check_int_F_D(H)
        assert rep.ok, f"{H.name}: {rep.failures()}"


def test_criterion_8_invariant_integral_and_kirby(ks3, dz2, dh4, bank_suite):
    for H in (ks3, dz2, dh4):
        lam, rep = two_sided_integral(H)
        assert lam is not None and rep.ok, f"{H.name}: {rep.failures()}"

    ran = 0
    for label, H in bank_suite.items():
        if H.rmatrix is None or not is_unimodular(H):
            continue
        if ribbon_search(H) is None:
            continue
        rep = kirby_element_check(H)
        assert rep.ok, f"{label}: {rep.failures()}"
        ran += 1
    assert ran >= 3  # trivial, kZ/2, kS3, D(kZ/2) all carry ribbons

    F = build_coend_F(ks3)
    lam, _ = two_sided_integral(ks3)
    assert not kirby_pair_identity(F, lam, F.u.matrix)


def test_criterion_9_byte_identical_reports(tmp_path):
    def sweep(tag):
        blobs = []
        for name in bank_names():
            path = tmp_path / f"{tag}_{name}"
            code = cli.run(["all", "--hopf", name, "--report", str(path)])
            assert code == 0, name
            blobs.append(path.read_bytes())
            json.loads(blobs[-1])  # well-formed
        return blobs

    assert sweep("first") == sweep("second")
