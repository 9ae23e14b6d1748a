"""Session fixtures: every bundled algebra is built and certified once.

Heavy derived structure (doubles, coends, probe caches) hangs off the
algebra objects themselves, so sharing the objects across test modules
is what keeps the whole suite inside its time budget.
"""

import os

import pytest

os.environ.setdefault("WORKBENCH_SEED", "0")

from hopf_workbench.bank import resolve_hopf, sweedler_with_rmatrix
from hopf_workbench.linalg import FieldSpec, Matrix

QQ = FieldSpec("Q")
F7 = FieldSpec("Fp", 7)


def unit_rmatrix(H):
    """R = 1 (x) 1 as a dim^2 column; the symmetric braiding choice."""
    R = Matrix(H.field, H.dim ** 2, 1)
    for i, a in H.unit_vec.items():
        for j, b in H.unit_vec.items():
            R.add_at(i * H.dim + j, 0, H.field.mul(a, b))
    return R


@pytest.fixture(scope="session")
def trivial():
    return resolve_hopf("trivial.json")


@pytest.fixture(scope="session")
def kz2():
    return resolve_hopf("k_z2.json")


@pytest.fixture(scope="session")
def ks3():
    return resolve_hopf("k_s3.json")


@pytest.fixture(scope="session")
def h4():
    return resolve_hopf("sweedler_q.json")


@pytest.fixture(scope="session")
def h4dual():
    return resolve_hopf("sweedler_dual.json")


@pytest.fixture(scope="session")
def taft3():
    return resolve_hopf("taft3_f7.json")


@pytest.fixture(scope="session")
def dz2():
    return resolve_hopf("double_z2.json")


@pytest.fixture(scope="session")
def dh4():
    return resolve_hopf("double_h4.json")


@pytest.fixture(scope="session")
def h4r():
    """Sweedler algebra carrying the bundled R-matrix family member at 1."""
    return sweedler_with_rmatrix("1")


@pytest.fixture(scope="session")
def suite7(trivial, kz2, ks3, h4, h4dual, taft3, dh4):
    """The seven core algebras, label -> instance."""
    return {"trivial": trivial, "kz2": kz2, "ks3": ks3, "h4": h4,
            "h4dual": h4dual, "taft3": taft3, "dh4": dh4}


@pytest.fixture(scope="session")
def bank_suite(suite7, dz2):
    out = dict(suite7)
    out["dz2"] = dz2
    return out


@pytest.fixture(scope="session")
def quasitriangular_suite(trivial, kz2, ks3, dz2, dh4, h4r):
    """Everything carrying a gate-passing R-matrix."""
    return {"trivial": trivial, "kz2": kz2, "ks3": ks3,
            "dz2": dz2, "dh4": dh4, "h4r": h4r}


@pytest.fixture(scope="session")
def unimodular_suite(trivial, kz2, ks3, dz2, dh4):
    return {"trivial": trivial, "kz2": kz2, "ks3": ks3,
            "dz2": dz2, "dh4": dh4}


def mutate_structure(H, rng):
    """One random structure-constant change, rebuilt as a fresh algebra.

    Returns (mutant, description).  The change is always real: a nonzero
    delta lands on one entry of one structure tensor.
    """
    from fractions import Fraction

    from hopf_workbench.hopf import HopfAlgebraData

    field = H.field
    tensors = {"mult": H.mult, "unit": H.unit, "comult": H.comult,
               "counit": H.counit, "antipode": H.antipode}
    which = rng.choice(sorted(tensors))
    src = tensors[which]
    i = rng.randrange(src.nrows)
    j = rng.randrange(src.ncols)
    if field.kind == "Q":
        delta = rng.choice([1, -1, 2, Fraction(1, 2)])
    else:
        delta = rng.randrange(1, field.p)
    changed = src.copy()
    changed.add_at(i, j, delta)
    parts = {k: (changed if k == which else v) for k, v in tensors.items()}
    mut = HopfAlgebraData(field, H.dim, H.basis, parts["mult"], parts["unit"],
                          parts["comult"], parts["counit"], parts["antipode"],
                          name=f"{H.name} mutated")
    return mut, f"{H.name}: {which}[{i},{j}] += {field.fmt(field.normalize(delta))}"


def mutation_detected(mut):
    """True when the axiom gate notices the algebra is broken."""
    from hopf_workbench.hopf import HopfError, verify_hopf
    from hopf_workbench.linalg import LinalgError

    try:
        return not verify_hopf(mut).ok
    except (HopfError, LinalgError, ZeroDivisionError, AssertionError):
        return True
