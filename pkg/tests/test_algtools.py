"""Radical, quotients, idempotent lifting, character enumeration."""

from fractions import Fraction

import pytest

from hopf_workbench.algtools import (algebra_generators, commutator_ideal,
                                     enumerate_characters, mul_elements,
                                     newton_idempotent_lift, poly_roots,
                                     quotient_algebra, radical_of, trace_gram)
from hopf_workbench.linalg import QQ, FieldSpec, same_span

F7 = FieldSpec("Fp", 7)


def test_mul_elements_matches_vector_multiplication(ks3):
    u, v = {1: 2, 3: 1}, {0: 1, 4: Fraction(1, 2)}
    assert mul_elements(ks3, u, v) == ks3.mul_vec(u, v)


def test_trace_gram_is_symmetric(ks3, h4):
    for H in (ks3, h4):
        G = trace_gram(H)
        assert G == G.transpose()


def test_radical_of_semisimple_is_zero(kz2, ks3):
    assert radical_of(kz2) == []
    assert radical_of(ks3) == []


def test_radical_of_sweedler(h4):
    # rad = (x) = span{x, gx}; the quotient is the group algebra of <g>
    rad = radical_of(h4)
    assert same_span(rad, [{1: 1}, {3: 1}], h4.dim, h4.field)
    q = quotient_algebra(h4, rad)
    assert q.alg.dim == 2


def test_radical_of_taft(taft3):
    # span of all monomials g^a x^b with b >= 1: indices 3a + b, b in {1, 2}
    rad = radical_of(taft3)
    want = [{3 * a + b: 1} for a in range(3) for b in (1, 2)]
    assert same_span(rad, want, taft3.dim, taft3.field)


def test_commutator_ideal_dims(kz2, ks3):
    assert len(commutator_ideal(kz2)) == 0  # commutative
    # kS3 has two 1-dim and one 2-dim simple: the commutator ideal of the
    # semisimple algebra is the 4-dimensional matrix block's traceless part
    # saturated to the full block
    assert len(commutator_ideal(ks3)) == 4


def test_idempotent_lift_in_sweedler(h4):
    # (1 + g)/2 is idempotent mod rad; the lift must land on an exact one
    half = Fraction(1, 2)
    e = newton_idempotent_lift(h4, {0: half, 2: half})
    assert mul_elements(h4, e, e) == e
    assert e != {}


def test_algebra_generators_are_small_and_generate(ks3, taft3):
    for H in (ks3, taft3):
        gens = algebra_generators(H)
        assert 1 <= len(gens) <= 2


def test_poly_roots_rational():
    assert poly_roots(QQ, [-1, 0, 1]) == [-1, 1]          # x^2 - 1
    assert poly_roots(QQ, [1, 0, 1]) == []                # x^2 + 1
    assert poly_roots(QQ, [0, -1, 2]) == [0, Fraction(1, 2)]  # 2x^2 - x


def test_poly_roots_fp():
    assert poly_roots(F7, [-1, 0, 0, 1]) == [1, 2, 4]     # cube roots of 1


def test_character_counts(suite7, dz2):
    expected = {"trivial": 1, "kz2": 2, "ks3": 2, "h4": 2, "h4dual": 2,
                "taft3": 3, "dh4": 2}
    for label, H in suite7.items():
        chars = enumerate_characters(H)
        assert len(chars) == expected[label], label
        for chi in chars:
            assert chi.is_algebra_map(), label
    assert len(enumerate_characters(dz2)) == 4


def test_characters_are_sorted_and_stable(ks3):
    a = [c.values for c in enumerate_characters(ks3)]
    b = [c.values for c in enumerate_characters(ks3)]
    assert a == b
    # sign character sorts before the trivial one under the string order
    assert a[0] == [1, -1, -1, -1, 1, 1]
    assert a[1] == [1, 1, 1, 1, 1, 1]


def test_taft_characters_kill_nilpotents(taft3):
    for chi in enumerate_characters(taft3):
        for a in range(3):
            for b in (1, 2):
                assert chi.values[3 * a + b] == 0
