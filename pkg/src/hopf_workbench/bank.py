"""Hopf algebra presentations on disk, and the bundled example bank.

File schema: a JSON object with scalars written as strings in the syntax
of FieldSpec.parse ("-2", "1/2"); bare integers are accepted on input.

    field     {"kind": "Q"} or {"kind": "Fp", "p": 7}
    name      display name, optional
    dim       positive integer
    basis     list of dim labels
    mult      entries [i, j, k, c]: e_i e_j contains c e_k
    unit      entries [i, c]
    comult    entries [i, j, k, c]: Delta(e_i) contains c e_j (x) e_k
    counit    entries [i, c]
    antipode  entries [i, j, c]: S(e_j) contains c e_i
    rmatrix   optional entries [i, j, c]: R contains c e_i (x) e_j
    ribbon    optional entries [i, c]

The bank resolves names against the packaged data directory.  Drinfeld
doubles are rebuilt from their base presentations on demand instead of
being stored; everything else ships as a file.  taft2_rmatrix.json is
not an algebra but a one-parameter R-matrix family for the 4-dimensional
algebra in sweedler_q.json, kept separate because no single member is
canonical; members are only handed out after the quasitriangularity
check passes on them.
"""

import json
import os
from importlib import resources

from .builders import (build_drinfeld_double, build_dual, build_group_algebra,
                       build_sweedler, cyclic_group_table)
from .hopf import HopfAlgebraData, NotAHopfAlgebra, verify_quasitriangular
from .linalg import QQ, BadScalar, FieldSpec, LinalgError, Matrix


class FormatError(Exception):
    """Input file does not match the published schema."""


# ---------------------------------------------------------------------------
# field headers

def field_to_json(field):
    if field.kind == "Q":
        return {"kind": "Q"}
    return {"kind": "Fp", "p": field.p}


def field_from_json(doc):
    if not isinstance(doc, dict) or "kind" not in doc:
        raise FormatError(f"field header must be an object with 'kind', got {doc!r}")
    kind = doc["kind"]
    try:
        if kind == "Q":
            return FieldSpec("Q")
        if kind == "Fp":
            return FieldSpec("Fp", doc.get("p"))
    except BadScalar as e:
        raise FormatError(str(e)) from e
    raise FormatError(f"unknown field kind {kind!r}")


def parse_field_flag(text):
    """Command-line field override: "Q", "Fp:7" or just "7"."""
    t = text.strip()
    if t in ("Q", "q"):
        return FieldSpec("Q")
    if t.lower().startswith("fp:"):
        t = t[3:]
    try:
        p = int(t)
    except ValueError:
        raise FormatError(f"field must be Q or Fp:<prime>, got {text!r}") from None
    try:
        return FieldSpec("Fp", p)
    except BadScalar as e:
        raise FormatError(str(e)) from e


# ---------------------------------------------------------------------------
# sparse entry lists

def _entries_to_matrix(field, entries, what, nrows, ncols, colkey):
    """colkey maps the leading indices of one entry to (row, col)."""
    out = Matrix(field, nrows, ncols)
    if not isinstance(entries, list):
        raise FormatError(f"{what} must be a list of entries")
    for ent in entries:
        if not isinstance(ent, list) or len(ent) != colkey.__code__.co_argcount + 1:
            raise FormatError(f"{what}: malformed entry {ent!r}")
        *idx, c = ent
        if not all(isinstance(i, int) for i in idx):
            raise FormatError(f"{what}: indices must be integers in {ent!r}")
        try:
            r, col = colkey(*idx)
        except IndexError:
            raise FormatError(f"{what}: index out of range in {ent!r}") from None
        if not (0 <= r < nrows and 0 <= col < ncols):
            raise FormatError(f"{what}: index out of range in {ent!r}")
        try:
            out.add_at(r, col, field.parse(c))
        except BadScalar as e:
            raise FormatError(f"{what}: {e}") from e
    return out


def hopf_from_json(doc, field=None, name=None):
    """Build the algebra a document describes.

    field, when given, overrides the file header; every scalar string is
    re-read in the new field, so rational presentations with denominators
    survive the trip into F_p when the denominators are units there.
    """
    if not isinstance(doc, dict):
        raise FormatError("top level must be a JSON object")
    for key in ("field", "dim", "basis", "mult", "unit", "comult", "counit",
                "antipode"):
        if key not in doc:
            raise FormatError(f"missing key {key!r}")
    if field is None:
        field = field_from_json(doc["field"])
    d = doc["dim"]
    if not (isinstance(d, int) and d >= 1):
        raise FormatError(f"dim must be a positive integer, got {d!r}")
    basis = doc["basis"]
    if not (isinstance(basis, list) and len(basis) == d
            and all(isinstance(b, str) for b in basis)):
        raise FormatError("basis must list one label per dimension")

    mult = _entries_to_matrix(field, doc["mult"], "mult", d, d * d,
                              lambda i, j, k: (k, i * d + j))
    unit = _entries_to_matrix(field, doc["unit"], "unit", d, 1,
                              lambda i: (i, 0))
    comult = _entries_to_matrix(field, doc["comult"], "comult", d * d, d,
                                lambda i, j, k: (j * d + k, i))
    counit = _entries_to_matrix(field, doc["counit"], "counit", 1, d,
                                lambda i: (0, i))
    antipode = _entries_to_matrix(field, doc["antipode"], "antipode", d, d,
                                  lambda i, j: (i, j))
    rmatrix = ribbon = None
    if doc.get("rmatrix") is not None:
        rmatrix = _entries_to_matrix(field, doc["rmatrix"], "rmatrix", d * d, 1,
                                     lambda i, j: (i * d + j, 0))
    if doc.get("ribbon") is not None:
        ribbon = _entries_to_matrix(field, doc["ribbon"], "ribbon", d, 1,
                                    lambda i: (i, 0))
    try:
        return HopfAlgebraData(field, d, basis, mult, unit, comult, counit,
                               antipode, rmatrix=rmatrix, ribbon=ribbon,
                               name=name or doc.get("name"))
    except NotAHopfAlgebra as e:
        raise FormatError(str(e)) from e


def _fmt_entries(field, it):
    out = [[*idx, field.fmt(c)] for *idx, c in it]
    out.sort(key=lambda ent: ent[:-1])
    return out


def hopf_to_json(H):
    d = H.dim
    field = H.field
    doc = {
        "field": field_to_json(field),
        "name": H.name,
        "dim": d,
        "basis": list(H.basis),
        "mult": _fmt_entries(field, ((c // d, c % d, k, v)
                                     for k, row in enumerate(H.mult.rows)
                                     for c, v in row.items())),
        "unit": _fmt_entries(field, ((i, row[0])
                                     for i, row in enumerate(H.unit.rows) if row)),
        "comult": _fmt_entries(field, ((i, p // d, p % d, v)
                                       for p, row in enumerate(H.comult.rows)
                                       for i, v in row.items())),
        "counit": _fmt_entries(field, ((i, v)
                                       for i, v in H.counit.rows[0].items())),
        "antipode": _fmt_entries(field, ((i, j, v)
                                         for i, row in enumerate(H.antipode.rows)
                                         for j, v in row.items())),
    }
    if H.rmatrix is not None:
        doc["rmatrix"] = _fmt_entries(field, ((p // d, p % d, row[0])
                                              for p, row in enumerate(H.rmatrix.rows)
                                              if row))
    if H.ribbon is not None:
        doc["ribbon"] = _fmt_entries(field, ((i, row[0])
                                             for i, row in enumerate(H.ribbon.rows)
                                             if row))
    return doc


def load_hopf(path, field=None):
    try:
        with open(path, "r", encoding="utf-8") as fp:
            doc = json.load(fp)
    except OSError as e:
        raise FormatError(f"cannot read {path}: {e}") from e
    except json.JSONDecodeError as e:
        raise FormatError(f"{path} is not JSON: {e}") from e
    stem = os.path.splitext(os.path.basename(path))[0]
    return hopf_from_json(doc, field=field, name=None if "name" in doc else stem)


def save_hopf(H, path):
    with open(path, "w", encoding="utf-8") as fp:
        json.dump(hopf_to_json(H), fp, indent=1)
        fp.write("\n")


# ---------------------------------------------------------------------------
# the bundled bank

def data_dir():
    return resources.files(__package__) / "data"


def _double_z2(field):
    return build_drinfeld_double(
        build_group_algebra(field, cyclic_group_table(2), name="kZ2"))


def _double_h4(field):
    return build_drinfeld_double(build_sweedler(field))


_GENERATED = {
    "double_z2": _double_z2,
    "double_h4": _double_h4,
    "sweedler_dual": lambda field: build_dual(build_sweedler(field)),
}


def bank_names():
    """Everything resolve_hopf accepts by bare name, bundled or rebuilt."""
    stored = sorted(p.name for p in data_dir().iterdir()
                    if p.name.endswith(".json") and p.name != "taft2_rmatrix.json")
    return stored + sorted(n + ".json" for n in _GENERATED)


def resolve_hopf(name, field=None):
    """A path on disk, or the bare name of a bank member."""
    if os.path.exists(name):
        return load_hopf(name, field=field)
    stem = os.path.splitext(os.path.basename(name))[0]
    if stem in _GENERATED:
        return _GENERATED[stem](field or QQ)
    bundled = data_dir() / (stem + ".json")
    if bundled.is_file():
        doc = json.loads(bundled.read_text(encoding="utf-8"))
        return hopf_from_json(doc, field=field,
                              name=None if "name" in doc else stem)
    raise FormatError(f"{name!r} is neither a file nor a bank member "
                      f"(bank: {', '.join(bank_names())})")


def read_tangle_text(name):
    """Contents of a diagram file: a path, or a bundled .hbt name."""
    if os.path.exists(name):
        with open(name, "r", encoding="utf-8") as fp:
            return fp.read()
    base = os.path.basename(name)
    if not base.endswith(".hbt"):
        base += ".hbt"
    bundled = data_dir() / base
    if bundled.is_file():
        return bundled.read_text(encoding="utf-8")
    raise FormatError(f"{name!r}: no such diagram file")


# ---------------------------------------------------------------------------
# the R-matrix family on the Sweedler algebra

def load_rmatrix_family(path=None):
    if path is None:
        doc = json.loads((data_dir() / "taft2_rmatrix.json").read_text(encoding="utf-8"))
    else:
        with open(path, "r", encoding="utf-8") as fp:
            doc = json.load(fp)
    for key in ("dim", "base", "step", "samples"):
        if key not in doc:
            raise FormatError(f"R-matrix family: missing key {key!r}")
    return doc


def family_member(field, doc, lam):
    """R = base + lam * step as a dim^2 column."""
    d = doc["dim"]
    lam = field.parse(lam)
    R = _entries_to_matrix(field, doc["base"], "base", d * d, 1,
                           lambda i, j: (i * d + j, 0))
    step = _entries_to_matrix(field, doc["step"], "step", d * d, 1,
                              lambda i, j: (i * d + j, 0))
    return R + step.scale(lam)


def sweedler_with_rmatrix(lam, field=None):
    """A fresh Sweedler algebra carrying the family member at lam.

    Fresh because attaching a different R to a shared instance would
    poison its derived-structure caches.  The member is gated: anything
    failing verify_quasitriangular is rejected here, whatever the file
    says.
    """
    field = field or QQ
    H = build_sweedler(field)
    H.rmatrix = family_member(field, load_rmatrix_family(), lam)
    verify_quasitriangular(H).require(f"family member at {lam!r}")
    return H
