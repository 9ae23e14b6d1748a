"""Exact sparse linear algebra over Q and over prime fields F_p.

Scalars are kept raw: over Q they are python ints or Fractions (ints
whenever the value is integral, so hot loops stay in fast int arithmetic),
over F_p they are ints in range(p).  All arithmetic is routed through a
FieldSpec so the same matrix code serves both fields.

Matrices are row-sparse: a list of dicts col -> nonzero value.  Zero
entries are never stored.  The tensor index convention is fixed once and
for all: basis vector i of A tensor basis vector j of B sits at slot
i*dim(B) + j.
"""

from __future__ import annotations

from fractions import Fraction


class LinalgError(Exception):
    pass


class ShapeMismatch(LinalgError):
    pass


class Inconsistent(LinalgError):
    """Raised by solve() when the system has no solution."""


class Singular(LinalgError):
    """Raised by invert() on a rank-deficient square matrix."""


class BadScalar(LinalgError):
    pass


def _is_prime(n):
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


class FieldSpec:
    """Either the rationals ("Q") or a prime field ("Fp", p odd prime)."""

    __slots__ = ("kind", "p")

    def __init__(self, kind, p=None):
        if kind == "Q":
            assert p is None
        elif kind == "Fp":
            if not (isinstance(p, int) and _is_prime(p) and p > 2):
                raise BadScalar(f"Fp needs an odd prime, got p={p!r}")
        else:
            raise BadScalar(f"unknown field kind {kind!r}")
        self.kind = kind
        self.p = p

    def __eq__(self, other):
        return isinstance(other, FieldSpec) and self.kind == other.kind and self.p == other.p

    def __hash__(self):
        return hash((self.kind, self.p))

    def __repr__(self):
        return "Q" if self.kind == "Q" else f"F{self.p}"

    # -- scalar arithmetic ------------------------------------------------

    @property
    def zero(self):
        return 0

    @property
    def one(self):
        return 1

    def add(self, a, b):
        if self.kind == "Q":
            return a + b
        return (a + b) % self.p

    def sub(self, a, b):
        if self.kind == "Q":
            return a - b
        return (a - b) % self.p

    def mul(self, a, b):
        if self.kind == "Q":
            return a * b
        return (a * b) % self.p

    def neg(self, a):
        if self.kind == "Q":
            return -a
        return (-a) % self.p

    def inv(self, a):
        if self.kind == "Q":
            if a == 0:
                raise ZeroDivisionError("1/0 in Q")
            r = Fraction(1, 1) / a if not isinstance(a, Fraction) else 1 / a
            return self.normalize(r)
        a %= self.p
        if a == 0:
            raise ZeroDivisionError("1/0 in Fp")
        return pow(a, self.p - 2, self.p)

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def normalize(self, a):
        """Canonical form: Fractions with denominator 1 become ints, Fp reduces mod p."""
        if self.kind == "Q":
            if isinstance(a, Fraction):
                return int(a) if a.denominator == 1 else a
            if isinstance(a, int):
                return a
            raise BadScalar(f"not a Q scalar: {a!r}")
        if not isinstance(a, int):
            raise BadScalar(f"not an Fp scalar: {a!r}")
        return a % self.p

    def from_int(self, n):
        return self.normalize(n) if self.kind == "Fp" else n

    def parse(self, s):
        """Parse "3/4", "-2" style scalar strings."""
        if isinstance(s, int):
            return self.from_int(s)
        if not isinstance(s, str):
            raise BadScalar(f"scalar must be a string, got {s!r}")
        try:
            f = Fraction(s.strip())
        except (ValueError, ZeroDivisionError) as e:
            raise BadScalar(f"cannot parse scalar {s!r}") from e
        if self.kind == "Q":
            return self.normalize(f)
        num = f.numerator % self.p
        den = f.denominator % self.p
        if den == 0:
            raise BadScalar(f"denominator of {s!r} vanishes mod {self.p}")
        return (num * pow(den, self.p - 2, self.p)) % self.p

    def fmt(self, a):
        """Serialize a scalar: reduced fraction with positive denominator, or int mod p."""
        a = self.normalize(a)
        if isinstance(a, Fraction):
            return f"{a.numerator}/{a.denominator}"
        return str(a)


QQ = FieldSpec("Q")


class Matrix:
    """Row-sparse exact matrix.  rows[i] maps column -> nonzero entry."""

    __slots__ = ("field", "nrows", "ncols", "rows")

    def __init__(self, field, nrows, ncols, rows=None):
        self.field = field
        self.nrows = nrows
        self.ncols = ncols
        self.rows = rows if rows is not None else [dict() for _ in range(nrows)]

    # -- constructors -----------------------------------------------------

    @staticmethod
    def zeros(field, nrows, ncols):
        return Matrix(field, nrows, ncols)

    @staticmethod
    def identity(field, n):
        m = Matrix(field, n, n)
        for i in range(n):
            m.rows[i][i] = 1
        return m

    @staticmethod
    def from_dense(field, entries):
        nr = len(entries)
        nc = len(entries[0]) if nr else 0
        m = Matrix(field, nr, nc)
        for i, row in enumerate(entries):
            assert len(row) == nc
            for j, v in enumerate(row):
                v = field.normalize(v)
                if v != 0:
                    m.rows[i][j] = v
        return m

    @staticmethod
    def from_triples(field, nrows, ncols, triples):
        """triples: iterable of (i, j, value); repeated slots accumulate."""
        m = Matrix(field, nrows, ncols)
        for i, j, v in triples:
            if not (0 <= i < nrows and 0 <= j < ncols):
                raise ShapeMismatch(f"entry ({i},{j}) outside {nrows}x{ncols}")
            m.add_at(i, j, v)
        return m

    @staticmethod
    def column(field, n, entries):
        """n x 1 column from a dict row_index -> value or a dense list."""
        m = Matrix(field, n, 1)
        it = entries.items() if isinstance(entries, dict) else enumerate(entries)
        for i, v in it:
            v = field.normalize(v)
            if v != 0:
                m.rows[i][0] = v
        return m

    # -- entry access -----------------------------------------------------

    def get(self, i, j):
        return self.rows[i].get(j, 0)

    def set(self, i, j, v):
        v = self.field.normalize(v)
        if v == 0:
            self.rows[i].pop(j, None)
        else:
            self.rows[i][j] = v

    def add_at(self, i, j, v):
        row = self.rows[i]
        w = self.field.add(row.get(j, 0), self.field.normalize(v))
        if w == 0:
            row.pop(j, None)
        else:
            row[j] = w

    def nnz(self):
        return sum(len(r) for r in self.rows)

    def is_zero(self):
        return all(not r for r in self.rows)

    def copy(self):
        return Matrix(self.field, self.nrows, self.ncols, [dict(r) for r in self.rows])

    def to_dense(self):
        return [[self.rows[i].get(j, 0) for j in range(self.ncols)] for i in range(self.nrows)]

    def col_dict(self, j):
        """Column j as a dict row -> value (built by scanning; use sparingly)."""
        out = {}
        for i, row in enumerate(self.rows):
            v = row.get(j)
            if v is not None:
                out[i] = v
        return out

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return (self.field == other.field and self.nrows == other.nrows
                and self.ncols == other.ncols and self.rows == other.rows)

    def __repr__(self):
        return f"Matrix({self.field!r}, {self.nrows}x{self.ncols}, nnz={self.nnz()})"

    # -- arithmetic -------------------------------------------------------

    def __add__(self, other):
        self._check_same_shape(other)
        fadd = self.field.add
        out = Matrix(self.field, self.nrows, self.ncols)
        for i in range(self.nrows):
            row = dict(self.rows[i])
            for j, v in other.rows[i].items():
                w = fadd(row.get(j, 0), v)
                if w == 0:
                    row.pop(j, None)
                else:
                    row[j] = w
            out.rows[i] = row
        return out

    def __sub__(self, other):
        return self + other.scale(-1)

    def __neg__(self):
        return self.scale(-1)

    def scale(self, c):
        c = self.field.normalize(self.field.from_int(c) if isinstance(c, int) else c)
        out = Matrix(self.field, self.nrows, self.ncols)
        if c == 0:
            return out
        fmul = self.field.mul
        for i, row in enumerate(self.rows):
            out.rows[i] = {j: fmul(c, v) for j, v in row.items()}
        return out

    def __mul__(self, other):
        """Matrix product self @ other (sparse row-by-row accumulation)."""
        if not isinstance(other, Matrix):
            return NotImplemented
        if self.ncols != other.nrows:
            raise ShapeMismatch(f"{self.nrows}x{self.ncols} @ {other.nrows}x{other.ncols}")
        field = self.field
        fmul, fadd = field.mul, field.add
        out = Matrix(field, self.nrows, other.ncols)
        orows = other.rows
        for i, row in enumerate(self.rows):
            acc = {}
            for k, a in row.items():
                for j, b in orows[k].items():
                    w = fadd(acc.get(j, 0), fmul(a, b))
                    if w == 0:
                        acc.pop(j, None)
                    else:
                        acc[j] = w
            out.rows[i] = acc
        return out

    def transpose(self):
        out = Matrix(self.field, self.ncols, self.nrows)
        orows = out.rows
        for i, row in enumerate(self.rows):
            for j, v in row.items():
                orows[j][i] = v
        return out

    def kron(self, other):
        """Kronecker product; slot (i*nr2+k, j*nc2+l) gets a_ij*b_kl."""
        f = self.field
        assert f == other.field
        fmul = f.mul
        nr2, nc2 = other.nrows, other.ncols
        out = Matrix(f, self.nrows * nr2, self.ncols * nc2)
        orows = out.rows
        for i, arow in enumerate(self.rows):
            if not arow:
                continue
            base_i = i * nr2
            for k, brow in enumerate(other.rows):
                if not brow:
                    continue
                tr = orows[base_i + k]
                for j, a in arow.items():
                    bj = j * nc2
                    for l, b in brow.items():
                        tr[bj + l] = fmul(a, b)
        return out

    def trace(self):
        f = self.field
        assert self.nrows == self.ncols
        t = 0
        for i, row in enumerate(self.rows):
            v = row.get(i)
            if v is not None:
                t = f.add(t, v)
        return t

    def hstack(self, other):
        assert self.nrows == other.nrows and self.field == other.field
        out = Matrix(self.field, self.nrows, self.ncols + other.ncols)
        off = self.ncols
        for i in range(self.nrows):
            row = dict(self.rows[i])
            for j, v in other.rows[i].items():
                row[off + j] = v
            out.rows[i] = row
        return out

    def vstack(self, other):
        assert self.ncols == other.ncols and self.field == other.field
        rows = [dict(r) for r in self.rows] + [dict(r) for r in other.rows]
        return Matrix(self.field, self.nrows + other.nrows, self.ncols, rows)

    def _check_same_shape(self, other):
        if self.nrows != other.nrows or self.ncols != other.ncols or self.field != other.field:
            raise ShapeMismatch(f"{self!r} vs {other!r}")


# -- elimination -----------------------------------------------------------

def _rref_rows(rows, ncols, field):
    """In-place reduced row echelon form on a list of sparse row dicts.

    Pivoting is deterministic: scan columns left to right, take the topmost
    live row with a nonzero in that column.  Returns the list of pivot
    columns; on return rows[:len(pivots)] are the pivot rows (normalized,
    fully reduced) and the remaining rows are empty.
    """
    fmul, fsub, finv = field.mul, field.sub, field.inv
    pivots = []
    nrows = len(rows)
    done = 0  # rows[:done] are settled pivot rows
    for col in range(ncols):
        piv = None
        for r in range(done, nrows):
            if col in rows[r]:
                piv = r
                break
        if piv is None:
            continue
        rows[done], rows[piv] = rows[piv], rows[done]
        prow = rows[done]
        # normalize pivot to 1
        pv = prow[col]
        if pv != 1:
            s = finv(pv)
            for j in list(prow):
                prow[j] = fmul(s, prow[j])
            prow[col] = 1
        # eliminate everywhere else
        for r in range(nrows):
            if r == done:
                continue
            row = rows[r]
            f = row.get(col)
            if f is None:
                continue
            for j, v in prow.items():
                w = fsub(row.get(j, 0), fmul(f, v))
                if w == 0:
                    row.pop(j, None)
                else:
                    row[j] = w
        pivots.append(col)
        done += 1
        if done == nrows:
            break
    return pivots


def rref(mat):
    """Reduced row echelon form of a Matrix; returns (rref_matrix, pivot_cols)."""
    rows = [dict(r) for r in mat.rows]
    pivots = _rref_rows(rows, mat.ncols, mat.field)
    return Matrix(mat.field, mat.nrows, mat.ncols, rows), pivots


def rank(mat):
    rows = [dict(r) for r in mat.rows if r]
    return len(_rref_rows(rows, mat.ncols, mat.field))


def nullspace(mat):
    """Basis of the right kernel, one n x 1 column per free variable.

    The basis is pivot-normalized (reduced echelon over the free slots) and
    deterministic: one vector per free column in increasing column order,
    with entry 1 at the free column.
    """
    field = mat.field
    rows = [dict(r) for r in mat.rows if r]
    pivots = _rref_rows(rows, mat.ncols, mat.field)
    pivot_set = set(pivots)
    pivot_of_col = {c: i for i, c in enumerate(pivots)}
    basis = []
    fneg = field.neg
    for free in range(mat.ncols):
        if free in pivot_set:
            continue
        vec = Matrix(field, mat.ncols, 1)
        vec.rows[free][0] = 1
        for c, r in pivot_of_col.items():
            v = rows[r].get(free)
            if v is not None:
                vec.rows[c][0] = fneg(v)
        basis.append(vec)
    return basis


def solve(a, b):
    """Least structured solve: X with a @ X = b, free variables set to zero.

    Raises Inconsistent when no solution exists.
    """
    if a.nrows != b.nrows:
        raise ShapeMismatch(f"solve: {a.nrows} equations vs rhs {b.nrows}")
    field = a.field
    n = a.ncols
    aug = [dict(a.rows[i]) for i in range(a.nrows)]
    for i in range(a.nrows):
        for j, v in b.rows[i].items():
            aug[i][n + j] = v
    pivots = _rref_rows(aug, n + b.ncols, field)
    x = Matrix(field, n, b.ncols)
    for r, c in enumerate(pivots):
        if c >= n:
            raise Inconsistent("pivot escaped into the right-hand side")
        row = aug[r]
        for j, v in row.items():
            if j >= n:
                x.rows[c][j - n] = v
    return x


def invert(a):
    """Exact inverse of a square matrix; raises Singular on rank deficiency."""
    if a.nrows != a.ncols:
        raise ShapeMismatch("invert needs a square matrix")
    n = a.nrows
    field = a.field
    aug = [dict(a.rows[i]) for i in range(n)]
    for i in range(n):
        aug[i][n + i] = 1  # identity block on the right
    pivots = _rref_rows(aug, 2 * n, field)
    if len(pivots) < n or any(c >= n for c in pivots):
        raise Singular(f"rank {sum(1 for c in pivots if c < n)} < {n}")
    inv = Matrix(field, n, n)
    for r, c in enumerate(pivots):
        for j, v in aug[r].items():
            if j >= n:
                inv.rows[c][j - n] = v
    return inv


def column_span_basis(columns, n, field):
    """Greedy first-fit independent subset of the given sparse columns.

    columns: iterable of dicts (row -> value).  Returns (indices, echelon)
    where indices selects an independent spanning subfamily in input
    order.  Used for picking quotient/complement bases deterministically.
    """
    chosen = []
    ech = []        # echelon rows: list of (pivot_row_index, dict)
    fmul, fsub, finv = field.mul, field.sub, field.inv
    for idx, col in enumerate(columns):
        vec = dict(col)
        for pr, prow in ech:
            f = vec.get(pr)
            if f is None:
                continue
            for j, v in prow.items():
                w = fsub(vec.get(j, 0), fmul(f, v))
                if w == 0:
                    vec.pop(j, None)
                else:
                    vec[j] = w
        if vec:
            pr = min(vec)
            s = finv(vec[pr])
            vec = {j: fmul(s, v) for j, v in vec.items()}
            ech.append((pr, vec))
            chosen.append(idx)
            if len(chosen) == n:
                break
    return chosen, ech


def same_span(vecs_a, vecs_b, n, field):
    """Do two vector families span the same subspace?

    Entries may be sparse dicts or n x 1 Matrix columns, mixed freely.
    """
    def echelon(vecs):
        rows = []
        for v in vecs:
            if isinstance(v, dict):
                rows.append(dict(v))
            else:
                rows.append({i: row[0] for i, row in enumerate(v.rows) if row})
        _rref_rows(rows, n, field)
        return sorted(tuple(sorted(r.items())) for r in rows if r)
    return echelon(vecs_a) == echelon(vecs_b)


class EchelonSpan:
    """A growing row space kept in echelon form.

    Rows are pivot-normalized (leading coefficient 1) with strictly
    increasing pivot columns, so membership is one reduction pass and
    adding a vector costs O(rows * nnz).  Vectors are sparse dicts.
    """

    def __init__(self, field):
        self.field = field
        self.rows = []      # parallel to .pivots, sorted by pivot column
        self.pivots = []

    @property
    def dim(self):
        return len(self.rows)

    def reduce(self, vec):
        """Residue of vec modulo the span (a fresh dict)."""
        res, _ = self._reduce_with_coords(vec)
        return res

    def _reduce_with_coords(self, vec):
        field = self.field
        fsub, fmul = field.sub, field.mul
        res = dict(vec)
        coords = [0] * len(self.rows)
        # single pass works: each row has zeros left of its own pivot
        for k, (p, row) in enumerate(zip(self.pivots, self.rows)):
            f = res.get(p)
            if f is None or f == 0:
                continue
            coords[k] = f
            for j, v in row.items():
                w = fsub(res.get(j, 0), fmul(f, v))
                if w == 0:
                    res.pop(j, None)
                else:
                    res[j] = w
        return res, coords

    def contains(self, vec):
        return not self.reduce(vec)

    def coords(self, vec):
        """Coefficients of vec over the stored rows, or None if outside."""
        res, coords = self._reduce_with_coords(vec)
        return None if res else coords

    def add(self, vec):
        """Insert vec if it grows the span.  Returns True when it did."""
        res = self.reduce(vec)
        if not res:
            return False
        p = min(res)
        s = self.field.inv(res[p])
        row = {j: self.field.mul(s, v) for j, v in res.items()}
        at = 0
        while at < len(self.pivots) and self.pivots[at] < p:
            at += 1
        self.pivots.insert(at, p)
        self.rows.insert(at, row)
        return True

    def basis(self):
        """Current rows as sparse dicts (shared, do not mutate)."""
        return list(self.rows)


def _reduce_mod_p(vec, p):
    """Sparse int/Fraction dict -> sparse dict of ints in range(1, p)."""
    col = {}
    for i, x in vec.items():
        if isinstance(x, Fraction):
            num, den = x.numerator, x.denominator
            if den % p == 0:
                raise BadScalar(f"denominator divisible by {p}")
            x = num * pow(den, p - 2, p)
        w = x % p
        if w:
            col[i] = w
    return col


def modp_rank(vectors, n, p):
    """Rank over F_p of a family of integer vectors (sparse dicts).

    Entries may be ints or Fractions whose denominators are prime to p;
    everything is reduced mod p first.  Used as a sound one-sided
    certificate for rank over Q: the mod-p rank never exceeds the
    rational rank, so full mod-p rank proves full rational rank.

    Uses numpy's int64 arithmetic when available (exact for p < 2^16
    since intermediate products stay below 2^63), else a sparse
    elimination fallback.
    """
    cols = [_reduce_mod_p(v, p) for v in vectors]
    try:
        import numpy as np
    except ImportError:
        np = None
    if np is not None:
        A = np.zeros((n, len(cols)), dtype=np.int64)
        for c, col in enumerate(cols):
            for i, w in col.items():
                A[i, c] = w
        r = 0
        nrows, ncols = A.shape
        for c in range(ncols):
            piv = None
            for i in range(r, nrows):
                if A[i, c] % p:
                    piv = i
                    break
            if piv is None:
                continue
            if piv != r:
                A[[r, piv]] = A[[piv, r]]
            inv = pow(int(A[r, c]), p - 2, p)
            A[r] = (A[r] * inv) % p
            below = A[r + 1:, c].copy()
            if below.size:
                A[r + 1:] = (A[r + 1:] - np.outer(below, A[r])) % p
            r += 1
            if r == nrows:
                break
        return r
    span = EchelonSpan(FieldSpec("Fp", p))
    for col in cols:
        span.add(col)
    return span.dim


class ModpSpan:
    """Incremental row span over F_p, for pruning orbit searches.

    Same soundness contract as modp_rank: entries are ints or Fractions
    reduced mod p (BadScalar when a denominator hits p), so over Q a
    full span certifies full rational rank while a stalled span proves
    nothing.  numpy int64 rows when available, sparse fallback else.
    """

    def __init__(self, n, p):
        self.n = n
        self.p = p
        try:
            import numpy as np
            self._np = np
        except ImportError:
            self._np = None
            self._span = EchelonSpan(FieldSpec("Fp", p))
        # numpy backend holds the stored rows fully reduced (each row is 1
        # at its own pivot and 0 at every other pivot), so reducing a new
        # vector is a single coefficient gather and matmul
        self._R = None
        self._pivots = []

    @property
    def dim(self):
        if self._np is None:
            return self._span.dim
        return len(self._pivots)

    def add(self, vec):
        """Reduce a sparse vector into the span; True if the span grew."""
        col = _reduce_mod_p(vec, self.p)
        if self._np is None:
            return self._span.add(col)
        if not col:
            return False
        a = self._np.zeros(self.n, dtype=self._np.int64)
        for i, w in col.items():
            a[i] = w
        return self.add_np(a)

    def add_np(self, a):
        """int64 array variant of add; entries must already be reduced.

        Only valid when numpy backed (add() never reaches here else).
        """
        np, p = self._np, self.p
        if self._pivots:
            c = a[self._pivots]
            if c.any():
                a = (a - c @ self._R) % p
        nz = np.flatnonzero(a)
        if nz.size == 0:
            return False
        j = int(nz[0])
        a = (a * pow(int(a[j]), p - 2, p)) % p
        if self._pivots:
            col = self._R[:, j]
            if col.any():
                self._R = (self._R - col[:, None] * a[None, :]) % p
            self._R = np.vstack([self._R, a])
        else:
            self._R = a[None, :].copy()
        self._pivots.append(j)
        return True
