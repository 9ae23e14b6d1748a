"""Structure theory for finite-dimensional algebras over exact fields.

Three things are needed from plain (non-Hopf) representation theory:
the Jacobson radical, idempotent lifting along it, and the complete
list of one-dimensional representations.  All of it works through a
minimal protocol -- an object exposing .field, .dim, .mcol(i, j) and
.unit_vec -- satisfied by HopfAlgebraData and by the quotient algebras
built here.

Radical certificates
--------------------
The kernel K of the trace form (i, j) |-> Tr(L_{e_i e_j}) always
contains the radical: left multiplications compose (L_x L_y = L_{xy}),
so x in rad gives nilpotent L_{xy} for every y.  Conversely a nilpotent
ideal is contained in the radical.  So instead of demanding a large
characteristic up front we compute K and then *certify* that it is a
nilpotent ideal; when the certificate holds, K equals the radical in
any characteristic.  When it fails the field really is too small for
this route and we say so rather than guess.
"""

from fractions import Fraction

from .linalg import EchelonSpan, Inconsistent, Matrix, nullspace, solve
from .hopf import Character, vec_add_into


class FieldTooSmall(Exception):
    """The trace-form kernel could not be certified as the radical."""


def mul_elements(A, u, v):
    """Product of two sparse elements through the structure tensor."""
    field = A.field
    out = {}
    for i, a in u.items():
        for j, b in v.items():
            c = field.mul(a, b)
            if c != 0:
                vec_add_into(field, out, A.mcol(i, j), c)
    return out


class PlainAlgebra:
    """A bare associative algebra given by its product columns."""

    def __init__(self, field, dim, cols, unit_vec, name="A"):
        self.field = field
        self.dim = dim
        self._cols = cols          # (i, j) -> sparse column of e_i e_j
        self.unit_vec = dict(unit_vec)
        self.name = name

    def mcol(self, i, j):
        return self._cols.get((i, j), {})


class Quotient:
    """A/I packaged with the projection and a linear section."""

    def __init__(self, alg, proj, lift):
        self.alg = alg
        self.proj = proj
        self.lift = lift


def trace_vector(A):
    """t[k] = Tr(L_{e_k})."""
    field = A.field
    t = []
    for k in range(A.dim):
        s = 0
        for i in range(A.dim):
            s = field.add(s, A.mcol(k, i).get(i, 0))
        t.append(s)
    return t


def trace_gram(A):
    """Gram matrix of the symmetric form (x, y) |-> Tr(L_{xy})."""
    field = A.field
    t = trace_vector(A)
    G = Matrix(field, A.dim, A.dim)
    for i in range(A.dim):
        for j in range(A.dim):
            s = 0
            for k, c in A.mcol(i, j).items():
                s = field.add(s, field.mul(c, t[k]))
            if s != 0:
                G.set(i, j, s)
    return G


def radical_of(A):
    """Certified Jacobson radical, as echelon rows (sparse dicts).

    Certificates checked: the trace-form kernel is a two-sided ideal
    (a theorem, asserted cheaply) and it is nilpotent (which can fail
    over small fields; FieldTooSmall then).
    """
    field = A.field
    K = EchelonSpan(field)
    for col in nullspace(trace_gram(A)):
        K.add({i: row[0] for i, row in enumerate(col.rows) if row})
    if K.dim == 0:
        return []

    for r in K.basis():
        for i in range(A.dim):
            assert K.contains(mul_elements(A, {i: 1}, r)), "kernel not a left ideal"
            assert K.contains(mul_elements(A, r, {i: 1})), "kernel not a right ideal"

    # powers K, K^2, ...: dims strictly decrease or the chain is stuck
    cur = K.basis()
    for _ in range(A.dim):
        nxt = EchelonSpan(field)
        for u in cur:
            for v in K.basis():
                nxt.add(mul_elements(A, u, v))
        if nxt.dim == 0:
            return K.basis()
        if nxt.dim >= len(cur):
            break
        cur = nxt.basis()
    raise FieldTooSmall(
        "trace-form kernel is not nilpotent; cannot certify the radical "
        f"over this field (dim {A.dim})")


def quotient_algebra(A, ideal_rows, name=None):
    """Quotient by a two-sided ideal given as echelon rows."""
    field = A.field
    E = EchelonSpan(field)
    for r in ideal_rows:
        E.add(r)
    free = [i for i in range(A.dim) if i not in set(E.pivots)]
    pos = {c: k for k, c in enumerate(free)}
    qdim = len(free)

    def proj(vec):
        res = E.reduce(vec)
        return {pos[c]: v for c, v in res.items()}

    def lift(qvec):
        return {free[k]: v for k, v in qvec.items()}

    cols = {}
    for a in range(qdim):
        for b in range(qdim):
            col = proj(A.mcol(free[a], free[b]))
            if col:
                cols[(a, b)] = col
    alg = PlainAlgebra(field, qdim, cols, proj(A.unit_vec),
                       name=name or f"{getattr(A, 'name', 'A')}/I")
    return Quotient(alg, proj, lift)


def commutator_ideal(A):
    """Two-sided ideal generated by all [e_i, e_j], as echelon rows."""
    field = A.field
    E = EchelonSpan(field)
    queue = []
    for i in range(A.dim):
        for j in range(i + 1, A.dim):
            c = dict(A.mcol(i, j))
            for k, v in A.mcol(j, i).items():
                w = field.sub(c.get(k, 0), v)
                if w == 0:
                    c.pop(k, None)
                else:
                    c[k] = w
            if E.add(c):
                queue.append(c)
    while queue:
        r = queue.pop()
        for i in range(A.dim):
            for p in (mul_elements(A, {i: 1}, r), mul_elements(A, r, {i: 1})):
                if E.add(p):
                    queue.append(p)
    return E.basis()


def algebra_generators(A):
    """Greedy set of basis indices generating A as a unital algebra.

    Scans the basis once; a new index joins the set only if it lies
    outside the subalgebra generated so far.  Words are closed on the
    right, which reaches every word one letter at a time.
    """
    field = A.field
    span = EchelonSpan(field)
    span.add(A.unit_vec)
    gens = []
    for i in range(A.dim):
        if span.contains({i: 1}):
            continue
        gens.append(i)
        span.add({i: 1})
        queue = span.basis()
        while queue:
            r = queue.pop()
            for g in gens:
                p = mul_elements(A, r, {g: 1})
                if span.add(p):
                    queue.append(p)
        if span.dim == A.dim:
            break
    assert span.dim == A.dim
    return gens


def newton_idempotent_lift(A, e0):
    """Lift an idempotent-mod-nilpotents to an exact one via e <- 3e^2 - 2e^3."""
    field = A.field
    e = dict(e0)
    for _ in range(64):
        e2 = mul_elements(A, e, e)
        if e2 == e:
            return e
        e3 = mul_elements(A, e2, e)
        nxt = {}
        vec_add_into(field, nxt, e2, field.from_int(3))
        vec_add_into(field, nxt, e3, field.from_int(-2))
        e = nxt
    raise ArithmeticError("idempotent lift did not converge; seed was not "
                          "idempotent modulo a nilpotent ideal")


# ---------------------------------------------------------------------------
# one-dimensional representations

def _min_poly(field, M):
    """Monic minimal polynomial of a small square matrix, coeffs low->high."""
    m = M.nrows
    flat_dim = m * m
    powers = [Matrix.identity(field, m)]
    while True:
        t = len(powers)
        cols = Matrix(field, flat_dim, t)
        for s, P in enumerate(powers):
            for i, row in enumerate(P.rows):
                for j, v in row.items():
                    cols.set(i * m + j, s, v)
        target = powers[-1] * M
        b = Matrix(field, flat_dim, 1)
        for i, row in enumerate(target.rows):
            for j, v in row.items():
                b.set(i * m + j, 0, v)
        try:
            x = solve(cols, b)
        except Inconsistent:
            powers.append(target)
            continue
        coeffs = [field.neg(x.rows[s].get(0, 0)) for s in range(t)]
        coeffs.append(field.one)
        return coeffs


def _int_divisors(n):
    n = abs(n)
    out = []
    d = 1
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            if d != n // d:
                out.append(n // d)
        d += 1
    return sorted(out)


def poly_roots(field, coeffs):
    """All roots in the base field of a polynomial given low->high."""
    def horner(x):
        acc = 0
        for c in reversed(coeffs):
            acc = field.add(field.mul(acc, x), c)
        return acc

    if field.kind == "Fp":
        return [x for x in range(field.p) if horner(x) == 0]

    # over Q: clear denominators, deflate zero roots, then rational-root scan
    coeffs = [Fraction(c) for c in coeffs]
    roots = []
    while coeffs and coeffs[0] == 0:
        if 0 not in roots:
            roots.append(Fraction(0))
        coeffs = coeffs[1:]
    if len(coeffs) <= 1:
        return sorted(roots)
    den = 1
    for c in coeffs:
        den = den * c.denominator // _gcd(den, c.denominator)
    ints = [int(c * den) for c in coeffs]
    a0, an = ints[0], ints[-1]
    seen = set(roots)
    for p in _int_divisors(a0):
        for q in _int_divisors(an):
            for cand in (Fraction(p, q), Fraction(-p, q)):
                if cand not in seen and horner(cand) == 0:
                    seen.add(cand)
                    roots.append(cand)
    return sorted(roots)


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a


def enumerate_characters(A):
    """All algebra maps A -> k, deterministically ordered.

    Route: kill the certified radical, then the commutator ideal; the
    result is commutative semisimple, i.e. a product of field
    extensions.  Split it into simultaneous eigenblocks of the left
    multiplications; blocks that resist splitting over k are honest
    field extensions and carry no k-valued characters, so they are
    dropped.  Every surviving block is one-dimensional and reads off a
    character, which is verified multiplicatively before being returned.
    """
    field = A.field
    rad = radical_of(A)
    q1 = quotient_algebra(A, rad)
    comm = commutator_ideal(q1.alg)
    q2 = quotient_algebra(q1.alg, comm)
    Q = q2.alg

    def to_Q(i):
        return q2.proj(q1.proj({i: 1}))

    if Q.dim == 0:
        return []

    full = EchelonSpan(field)
    for i in range(Q.dim):
        full.add({i: 1})
    blocks = [full]
    for b in range(Q.dim):
        nxt = []
        for blk in blocks:
            m = blk.dim
            if m == 1:
                nxt.append(blk)
                continue
            rows = blk.basis()
            M = Matrix(field, m, m)
            for c, v in enumerate(rows):
                w = mul_elements(Q, {b: 1}, v)
                co = blk.coords(w)
                assert co is not None, "block not closed under multiplication"
                for r, val in enumerate(co):
                    if val != 0:
                        M.set(r, c, val)
            for lam in poly_roots(field, _min_poly(field, M)):
                shifted = M.copy()
                for i in range(m):
                    shifted.set(i, i, field.sub(M.get(i, i), lam))
                sub = EchelonSpan(field)
                for col in nullspace(shifted):
                    vec = {}
                    for r, row in enumerate(col.rows):
                        if row:
                            vec_add_into(field, vec, rows[r], row[0])
                    sub.add(vec)
                if sub.dim:
                    nxt.append(sub)
            # the rest of blk splits over proper extensions only: drop it
        blocks = nxt

    chars = []
    seen = set()
    for blk in blocks:
        assert blk.dim == 1, "indecomposable block of dim > 1 survived"
        v = blk.basis()[0]
        p = blk.pivots[0]
        values = []
        ok = True
        for i in range(A.dim):
            w = mul_elements(Q, to_Q(i), v)
            lam = w.get(p, 0)
            scaled = {k: field.mul(lam, x) for k, x in v.items() if field.mul(lam, x) != 0}
            if w != scaled:
                ok = False
                break
            values.append(lam)
        if not ok:
            continue
        chi = Character(A, values)
        assert chi.is_algebra_map(), "eigenblock value row is not multiplicative"
        key = tuple(field.fmt(x) for x in chi.values)
        if key not in seen:
            seen.add(key)
            chars.append(chi)
    chars.sort(key=lambda c: tuple(field.fmt(x) for x in c.values))
    return chars
