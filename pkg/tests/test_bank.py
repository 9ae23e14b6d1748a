"""Serialization schema, the bundled bank, and the R-matrix family."""

import copy
import json

import pytest

from hopf_workbench.bank import (FormatError, bank_names, family_member,
                                 field_from_json, field_to_json,
                                 hopf_from_json, hopf_to_json, load_hopf,
                                 load_rmatrix_family, parse_field_flag,
                                 read_tangle_text, resolve_hopf, save_hopf,
                                 sweedler_with_rmatrix)
from hopf_workbench.builders import build_sweedler
from hopf_workbench.hopf import verify_hopf, verify_quasitriangular
from hopf_workbench.linalg import QQ, FieldSpec

STORED = ["trivial", "k_z2", "k_s3", "sweedler_q", "taft3_f7"]


def _same_presentation(a, b):
    assert a.field.kind == b.field.kind and a.dim == b.dim
    assert a.basis == b.basis and a.name == b.name
    for attr in ("mult", "unit", "comult", "counit", "antipode"):
        assert getattr(a, attr) == getattr(b, attr), attr
    for attr in ("rmatrix", "ribbon"):
        assert (getattr(a, attr) is None) == (getattr(b, attr) is None)
        if getattr(a, attr) is not None:
            assert getattr(a, attr) == getattr(b, attr), attr


def test_bank_members_round_trip():
    for name in STORED:
        H = resolve_hopf(name)
        _same_presentation(H, hopf_from_json(hopf_to_json(H)))


def test_save_load_round_trip(tmp_path):
    H = resolve_hopf("k_s3")
    path = tmp_path / "out.json"
    save_hopf(H, str(path))
    _same_presentation(H, load_hopf(str(path)))
    # stable on disk too
    again = tmp_path / "again.json"
    save_hopf(load_hopf(str(path)), str(again))
    assert path.read_bytes() == again.read_bytes()


def test_field_round_trip_and_flag_parsing():
    assert field_from_json(field_to_json(QQ)).kind == "Q"
    f7 = FieldSpec("Fp", 7)
    assert field_from_json(field_to_json(f7)).p == 7
    assert parse_field_flag("Q").kind == "Q"
    assert parse_field_flag("Fp:7").p == 7
    assert parse_field_flag("11").p == 11
    with pytest.raises(FormatError):
        parse_field_flag("R")
    with pytest.raises(FormatError):
        parse_field_flag("Fp:4")
    with pytest.raises(FormatError):
        field_from_json({"kind": "C"})


def test_field_override_reparses_scalars():
    # integer structure constants survive the trip into any odd
    # characteristic; the axioms are re-gated on load
    H5 = resolve_hopf("sweedler_q", field=FieldSpec("Fp", 5))
    assert H5.field.p == 5 and verify_hopf(H5).ok
    H7 = resolve_hopf("k_z2", field=FieldSpec("Fp", 7))
    assert H7.field.p == 7 and verify_hopf(H7).ok


def _base_doc():
    return hopf_to_json(resolve_hopf("k_z2"))


def test_malformed_documents_are_refused():
    good = _base_doc()
    assert verify_hopf(hopf_from_json(good)).ok

    doc = _base_doc()
    del doc["counit"]
    with pytest.raises(FormatError, match="missing key"):
        hopf_from_json(doc)

    doc = _base_doc()
    doc["dim"] = "2"
    with pytest.raises(FormatError, match="dim"):
        hopf_from_json(doc)

    doc = _base_doc()
    doc["basis"] = ["only_one"]
    with pytest.raises(FormatError, match="basis"):
        hopf_from_json(doc)

    doc = _base_doc()
    doc["mult"] = doc["mult"] + [[0, 0, "1"]]
    with pytest.raises(FormatError, match="malformed entry"):
        hopf_from_json(doc)

    doc = _base_doc()
    doc["mult"] = doc["mult"] + [[0, 0, 9, "1"]]
    with pytest.raises(FormatError, match="out of range"):
        hopf_from_json(doc)

    doc = _base_doc()
    doc["unit"] = [[0, "2/0"]]
    with pytest.raises(FormatError):
        hopf_from_json(doc)

    # schema errors are the loader's job; broken axioms are not.  A
    # well-shaped document with a wrong antipode loads and then fails
    # the verification gate
    doc = _base_doc()
    doc["antipode"] = [[0, 0, "1"]]
    assert not verify_hopf(hopf_from_json(doc)).ok


def test_denominator_collision_with_characteristic():
    doc = _base_doc()
    doc["unit"] = [[0, "1/3"]]
    with pytest.raises(FormatError):
        hopf_from_json(doc, field=FieldSpec("Fp", 3))


def test_bank_listing_and_unknown_names():
    assert bank_names() == [
        "k_s3.json", "k_z2.json", "sweedler_q.json", "taft3_f7.json",
        "trivial.json",
        "double_h4.json", "double_z2.json", "sweedler_dual.json"]
    with pytest.raises(FormatError, match="bank"):
        resolve_hopf("no_such_algebra")


def test_generated_members_verify():
    for name in ("double_z2", "double_h4", "sweedler_dual"):
        H = resolve_hopf(name)
        assert verify_hopf(H).ok, name


def test_read_tangle_text(tmp_path):
    assert "cap" in read_tangle_text("genus1")
    assert read_tangle_text("genus2") == read_tangle_text("genus2.hbt")
    p = tmp_path / "my.hbt"
    p.write_text("cup ; cap\n")
    assert read_tangle_text(str(p)) == "cup ; cap\n"
    with pytest.raises(FormatError):
        read_tangle_text("genus99")


def test_rmatrix_family():
    doc = load_rmatrix_family()
    base = family_member(QQ, doc, "0")
    assert base == family_member(QQ, doc, 0)
    for lam in doc["samples"]:
        H = sweedler_with_rmatrix(lam)
        assert verify_quasitriangular(H).ok, lam
    # members at distinct parameters differ
    assert sweedler_with_rmatrix("0").rmatrix != sweedler_with_rmatrix("1").rmatrix


def test_family_members_are_fresh_instances(h4):
    H = sweedler_with_rmatrix("1")
    assert H is not h4
    assert h4.rmatrix is None


def test_corrupted_family_step_fails_the_gate():
    doc = copy.deepcopy(load_rmatrix_family())
    doc["step"] = doc["step"][:-1]
    H = build_sweedler(QQ)
    H.rmatrix = family_member(QQ, doc, "1")
    assert not verify_quasitriangular(H).ok


def test_family_file_requires_its_keys(tmp_path):
    doc = copy.deepcopy(load_rmatrix_family())
    del doc["step"]
    p = tmp_path / "fam.json"
    p.write_text(json.dumps(doc))
    with pytest.raises(FormatError, match="step"):
        load_rmatrix_family(str(p))
