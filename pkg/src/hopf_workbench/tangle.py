"""A small typed language of handlebody diagrams and its evaluation.

Expressions describe planar diagrams built from five generators
(cup joins two strands into nothing, cap creates two, Y merges two
into one, X+/X- cross two) plus identity bundles.  ';' stacks
diagrams top to bottom, '*' places them side by side, objects are
strand counts.  Evaluation sends a diagram with n strands at a level
to the n-th tensor power of the center algebra B, the generators to
the trace pairing, the copairing, the multiplication, and the
braiding.  The genus-g closed diagram then evaluates to a scalar.

Typing happens during parsing: every node knows its strand counts,
and a composition whose interfaces disagree is rejected with the
position of the offending operator.
"""

from __future__ import annotations

import re
from itertools import product as iter_product

from .linalg import Matrix, invert
from .report import Report
from .hopf import NotUnimodular, is_unimodular
from .yd import braiding_yd
from .frobenius import build_B, frobenius_copairing, traces_in_yd


class TangleSyntaxError(Exception):
    def __init__(self, message, line, col):
        super().__init__(f"line {line}, col {col}: {message}")
        self.line = line
        self.col = col


class TangleTypeError(Exception):
    def __init__(self, message, line, col):
        super().__init__(f"line {line}, col {col}: {message}")
        self.line = line
        self.col = col


# ---------------------------------------------------------------------------
# syntax

class TangleExpr:
    """Base node; dom and cod are strand counts, pos the source anchor."""

    __slots__ = ("dom", "cod", "pos")

    def __init__(self, dom, cod, pos):
        self.dom = dom
        self.cod = cod
        self.pos = pos

    def __repr__(self):
        return f"<{self.__class__.__name__} {self.dom}->{self.cod}>"


class Gen(TangleExpr):
    __slots__ = ("kind",)

    _ARITIES = {"cup": (2, 0), "cap": (0, 2), "Y": (2, 1),
                "X+": (2, 2), "X-": (2, 2)}

    def __init__(self, kind, pos):
        dom, cod = self._ARITIES[kind]
        super().__init__(dom, cod, pos)
        self.kind = kind


class Id(TangleExpr):
    __slots__ = ()

    def __init__(self, n, pos):
        super().__init__(n, n, pos)


class Compose(TangleExpr):
    """a then b, reading the page downward."""

    __slots__ = ("first", "second")

    def __init__(self, first, second, pos):
        if first.cod != second.dom:
            raise TangleTypeError(
                f"cannot stack: upper part ends with {first.cod} "
                f"strand(s), lower part expects {second.dom}",
                pos[0], pos[1])
        super().__init__(first.dom, second.cod, first.pos)
        self.first = first
        self.second = second


class Tensor(TangleExpr):
    __slots__ = ("left", "right")

    def __init__(self, left, right):
        super().__init__(left.dom + right.dom, left.cod + right.cod,
                         left.pos)
        self.left = left
        self.right = right


_TOKEN_RE = re.compile(r"""
    (?P<ws>[^\S\n]+)
  | (?P<comment>\#[^\n]*)
  | (?P<nl>\n)
  | (?P<xplus>X\+)
  | (?P<xminus>X-)
  | (?P<name>[A-Za-z]+)
  | (?P<int>[0-9]+)
  | (?P<semi>;)
  | (?P<star>\*)
  | (?P<lparen>[(])
  | (?P<rparen>[)])
""", re.VERBOSE)


def _tokenize(text):
    toks = []
    line, col = 1, 1
    i = 0
    while i < len(text):
        m = _TOKEN_RE.match(text, i)
        if m is None:
            raise TangleSyntaxError(f"unexpected character {text[i]!r}",
                                    line, col)
        kind = m.lastgroup
        val = m.group()
        if kind == "nl":
            line += 1
            col = 1
        elif kind in ("ws", "comment"):
            col += len(val)
        else:
            toks.append((kind, val, line, col))
            col += len(val)
        i = m.end()
    toks.append(("eof", "", line, col))
    return toks


class _Parser:
    def __init__(self, toks):
        self.toks = toks
        self.i = 0

    def peek(self):
        return self.toks[self.i]

    def next(self):
        t = self.toks[self.i]
        self.i += 1
        return t

    def expr(self):
        node = self.term()
        while self.peek()[0] == "semi":
            _, _, line, col = self.next()
            rhs = self.term()
            node = Compose(node, rhs, (line, col))
        return node

    def term(self):
        node = self.factor()
        while self.peek()[0] == "star":
            self.next()
            node = Tensor(node, self.factor())
        return node

    def factor(self):
        kind, val, line, col = self.next()
        if kind == "xplus":
            return Gen("X+", (line, col))
        if kind == "xminus":
            return Gen("X-", (line, col))
        if kind == "name":
            if val in ("cup", "cap", "Y"):
                return Gen(val, (line, col))
            if val == "id":
                nkind, nval, nline, ncol = self.next()
                if nkind != "int":
                    raise TangleSyntaxError(
                        "expected a strand count after 'id'", nline, ncol)
                return Id(int(nval), (line, col))
            raise TangleSyntaxError(
                f"unknown word {val!r}; expected cup, cap, Y, X+, X-, "
                "id N, or '('", line, col)
        if kind == "lparen":
            node = self.expr()
            ckind, _, cline, ccol = self.next()
            if ckind != "rparen":
                raise TangleSyntaxError("expected ')'", cline, ccol)
            return node
        raise TangleSyntaxError(
            f"expected cup, cap, Y, X+, X-, id N, or '(', got {val!r}",
            line, col)


def parse_tangle(text):
    p = _Parser(_tokenize(text))
    node = p.expr()
    kind, val, line, col = p.peek()
    if kind != "eof":
        raise TangleSyntaxError(f"trailing input starting at {val!r}",
                                line, col)
    return node


def count_cups_caps(expr):
    """(cups, caps) in the expression, for the trace-scaling law."""
    if isinstance(expr, Gen):
        return (1, 0) if expr.kind == "cup" else \
            ((0, 1) if expr.kind == "cap" else (0, 0))
    if isinstance(expr, Id):
        return (0, 0)
    if isinstance(expr, Compose):
        a = count_cups_caps(expr.first)
        b = count_cups_caps(expr.second)
    else:
        a = count_cups_caps(expr.left)
        b = count_cups_caps(expr.right)
    return (a[0] + b[0], a[1] + b[1])


# ---------------------------------------------------------------------------
# evaluation

class StrandSpace:
    """Handle standing for the n-th tensor power of the carrier."""

    __slots__ = ("arity", "dim", "name")

    def __init__(self, arity, d):
        self.arity = arity
        self.dim = d ** arity
        self.name = f"B^(x){arity}"


class EvalContext:
    """Generator matrices of the diagram functor for one Frobenius pack.

    e and c are the pairing and copairing, m the multiplication, sig
    the braiding of the carrier with itself.  All five satisfy the
    relation_suite identities; evaluation is pure matrix algebra.
    """

    def __init__(self, frob):
        self.frobenius = frob
        alg = frob.algebra
        H = alg.hopf
        self.hopf = H
        self.field = H.field
        self.d = alg.object.dim
        self.m = alg.mult.matrix
        self.e = frob.trace.matrix * self.m
        self.c = frob.copairing.matrix
        sig = H._cache.get("B_sigma")
        if sig is None:
            sig = braiding_yd(alg.object, alg.object)
            H._cache["B_sigma"] = sig
        self.sig = sig
        self.sig_inv = invert(sig)
        self._ids = {}

    def identity(self, n):
        got = self._ids.get(n)
        if got is None:
            got = Matrix.identity(self.field, self.d ** n)
            self._ids[n] = got
        return got


def build_context(H, lam=None):
    """Frobenius pack for H's center algebra; NotUnimodular without one."""
    B = build_B(H)
    if lam is None:
        full = traces_in_yd(B)
        if not full:
            raise NotUnimodular(
                f"{H.name} carries no trace on its center algebra")
        lam = full[0]
    return EvalContext(frobenius_copairing(B, lam))


def evaluate(expr, ctx):
    """The diagram functor: strand counts to tensor powers, stacking to
    matrix product, side-by-side to Kronecker product."""
    mat = _eval(expr, ctx)
    return mat


def _eval(expr, ctx):
    if isinstance(expr, Gen):
        return {"cup": ctx.e, "cap": ctx.c, "Y": ctx.m,
                "X+": ctx.sig, "X-": ctx.sig_inv}[expr.kind]
    if isinstance(expr, Id):
        return ctx.identity(expr.dom)
    if isinstance(expr, Compose):
        return _eval(expr.second, ctx) * _eval(expr.first, ctx)
    return _eval(expr.left, ctx).kron(_eval(expr.right, ctx))


def evaluated_morphism(expr, ctx):
    """evaluate wrapped with its strand-space handles."""
    from .yd import MorphismMatrix
    return MorphismMatrix(_eval(expr, ctx),
                          StrandSpace(expr.dom, ctx.d),
                          StrandSpace(expr.cod, ctx.d))


# ---------------------------------------------------------------------------
# the closed invariant

def _counit_squared_row(H):
    field = H.field
    d = H.dim
    row = Matrix(field, 1, d * d)
    for i in range(d):
        ei = H.eps(i)
        if ei == 0:
            continue
        for j in range(d):
            ej = H.eps(j)
            if ej != 0:
                row.set(0, i * d + j, field.mul(ei, ej))
    return row


def invariant_V(tprime, H, lam=None):
    """Scalar of a closed genus diagram presented as its 0 -> 2 part.

    The final cup is applied as counit (x) counit, which agrees with
    trace-of-product readings because the counit is multiplicative.
    Requires a trace in the center, hence unimodularity.
    """
    if isinstance(tprime, str):
        tprime = parse_tangle(tprime)
    if not is_unimodular(H):
        raise NotUnimodular(f"{H.name} is not unimodular")
    if (tprime.dom, tprime.cod) != (0, 2):
        raise TangleTypeError(
            f"closure needs a 0 -> 2 diagram, got "
            f"{tprime.dom} -> {tprime.cod}", *tprime.pos)
    ctx = build_context(H, lam)
    col = _eval(tprime, ctx)
    out = _counit_squared_row(H) * col
    return out.get(0, 0)


def genus_unknot(g):
    """The standard 0 -> 2 presentation of the genus-g closed diagram."""
    assert g >= 1
    parts = ["cap"]
    for _ in range(g - 1):
        parts.append("(id1 * cap * id1)")
        parts.append("(Y * Y)")
    return " ; ".join(parts)


def count_free_homs(table, g):
    """|Hom(F_g, G)| by brute enumeration of generator images.

    Every tuple extends uniquely (the group is free), so this counts
    tuples; the loop stays because the point of the oracle is to not
    share a formula with what it checks.
    """
    n = len(table)
    count = 0
    for _tup in iter_product(range(n), repeat=g):
        count += 1
    return count


def check_s_condition(H, lam=None):
    """Does the trace see the antipode trivially on central elements?

    The closed invariant is presentation-independent exactly under
    this condition, so it gates the decomposition tests.
    """
    from .hopf import center_of
    if lam is None:
        ctx_B = build_B(H)
        full = traces_in_yd(ctx_B)
        if not full:
            return False
        lam = full[0].matrix
    else:
        lam = lam.matrix if hasattr(lam, "matrix") else lam
    lam_vec = dict(lam.rows[0])
    field = H.field

    def pair(vec):
        acc = field.zero
        for i, c in vec.items():
            acc = field.add(acc, field.mul(lam_vec.get(i, 0), c))
        return acc

    for zcol in center_of(H):
        z = {i: row[0] for i, row in enumerate(zcol.rows) if row}
        if pair(H.apply_S(z)) != pair(z):
            return False
    return True


# ---------------------------------------------------------------------------
# identities of the generator images

def relation_suite(ctx):
    """Exact identities the five generator matrices must satisfy.

    These are the consequences of the five-axiom algebra structure
    plus braiding naturality; the full diagrammatic presentation
    lives outside this package, so the suite names only what the
    evaluation relies on.
    """
    field = ctx.field
    d = ctx.d
    m, e, c, sig, sig_inv = ctx.m, ctx.e, ctx.c, ctx.sig, ctx.sig_inv
    eye = ctx.identity(1)
    rep = Report(f"generator relations over {ctx.hopf.name}")

    rep.add("Y_associative", m * m.kron(eye) == m * eye.kron(m))
    rep.add("pairing_balanced", e * m.kron(eye) == e * eye.kron(m))
    rep.add("Y_after_crossing", m * sig == m)
    rep.add("pairing_after_crossing", e * sig == e)
    rep.add("snake_left", e.kron(eye) * eye.kron(c) == eye)
    rep.add("snake_right", eye.kron(e) * c.kron(eye) == eye)
    rep.add("crossing_natural",
            sig * m.kron(eye) == eye.kron(m) * sig.kron(eye) * eye.kron(sig))
    rep.add("yang_baxter",
            sig.kron(eye) * eye.kron(sig) * sig.kron(eye)
            == eye.kron(sig) * sig.kron(eye) * eye.kron(sig))
    rep.add("crossings_inverse", sig * sig_inv == ctx.identity(2))
    return rep
