"""Exact quadratic form toolkit over the symbolic scalar fields.

A form is a symmetric Gram matrix or a diagonal entry list over a PolyRing.
diagonalize converts Gram to diagonal by an explicit congruence P with
P^T G P exactly diagonal.  Witt moves are small rewriting steps on diagonal
forms, each carrying a witness that is re-verified on replay, so a move list
is a machine-checkable certificate of an isometry (or, when hyperbolic pairs
are cancelled, of a Witt equivalence).

trace_form computes the reduced-trace bilinear form of any algebra exposing
the structure-constant protocol (ring, degree, basis_count, one_coords,
basis_product, basis_label).  trace_data extracts, from a degree-4 crossed
product, the quadratic-subfield traces and norms of the three squared slot
generators; serre_form and equiv_form build the associated diagonal forms,
and witt_derive_equivalence links them by an explicit move certificate.

Rational forms get classical invariants: signature, square-class
discriminant, and Hasse symbols from the Hilbert symbol at each place,
which decide isometry over the rationals.
"""

from fractions import Fraction
from typing import Optional, Sequence

from .exactfield import (
    Cyc,
    FieldElement,
    PolyRing,
    extend_ring,
    identity_matrix,
    is_square,
    mat_det,
    mat_mul,
    transport,
)


class QuadFormError(ValueError):
    pass


def _zeta4(ring: PolyRing) -> FieldElement:
    if ring.conductor % 4 != 0:
        raise QuadFormError("need a square root of -1: conductor not divisible by 4")
    return ring.element(ring.zeta(ring.conductor // 4))


# ------------------------------------------------------------------ expressions


class GenExpr:
    """Expression tree over named generators and rational constants.

    Used to build form entries syntactically, so that an audit can confirm
    every entry lies in the subfield the generators define: the leaf set of
    the tree is the whole proof.
    """

    __slots__ = ("kind", "value", "args")

    def __init__(self, kind, value=None, args=()):
        self.kind = kind        # "const" | "gen" | "add" | "sub" | "mul"
        self.value = value      # Fraction for const, name for gen
        self.args = args

    @staticmethod
    def const(value) -> "GenExpr":
        return GenExpr("const", Fraction(value))

    @staticmethod
    def gen(name: str) -> "GenExpr":
        return GenExpr("gen", name)

    @staticmethod
    def _coerce(value) -> "GenExpr":
        if isinstance(value, GenExpr):
            return value
        return GenExpr.const(value)

    def __add__(self, other):
        return GenExpr("add", args=(self, GenExpr._coerce(other)))

    def __sub__(self, other):
        return GenExpr("sub", args=(self, GenExpr._coerce(other)))

    def __mul__(self, other):
        return GenExpr("mul", args=(self, GenExpr._coerce(other)))

    def leaves(self) -> set:
        if self.kind == "gen":
            return {self.value}
        if self.kind == "const":
            return set()
        out = set()
        for a in self.args:
            out |= a.leaves()
        return out

    def uses_only(self, names) -> bool:
        return self.leaves() <= set(names)

    def evaluate(self, env: dict, ring: PolyRing) -> FieldElement:
        if self.kind == "const":
            return ring.element(self.value)
        if self.kind == "gen":
            return env[self.value]
        left = self.args[0].evaluate(env, ring)
        right = self.args[1].evaluate(env, ring)
        if self.kind == "add":
            return left + right
        if self.kind == "sub":
            return left - right
        return left * right

    def render(self) -> str:
        if self.kind == "const":
            return str(self.value)
        if self.kind == "gen":
            return self.value
        op = {"add": " + ", "sub": " - ", "mul": "*"}[self.kind]
        return "(" + self.args[0].render() + op + self.args[1].render() + ")"


# ------------------------------------------------------------------------ forms


class QuadraticForm:
    """Diagonal entry list or symmetric Gram matrix over a PolyRing."""

    def __init__(self, ring: PolyRing, diagonal=None, gram=None, degenerate=False):
        if (diagonal is None) == (gram is None):
            raise ValueError("give exactly one of diagonal or gram")
        self.ring = ring
        self.degenerate = degenerate
        if diagonal is not None:
            self.entries = [ring.element(e) for e in diagonal]
            self.gram = None
            if any(e.is_zero() for e in self.entries):
                self.degenerate = True
        else:
            self.entries = None
            self.gram = [[ring.element(e) for e in row] for row in gram]
            n = len(self.gram)
            for row in self.gram:
                if len(row) != n:
                    raise ValueError("gram matrix is not square")
            for i in range(n):
                for j in range(i + 1, n):
                    if not self.gram[i][j] == self.gram[j][i]:
                        raise ValueError("gram matrix is not symmetric")

    @property
    def dim(self) -> int:
        return len(self.entries) if self.entries is not None else len(self.gram)

    @property
    def is_diagonal(self) -> bool:
        return self.entries is not None

    def describe(self) -> str:
        if self.is_diagonal:
            return "<" + ", ".join(str(e) for e in self.entries) + ">"
        return "gram " + str(self.dim) + "x" + str(self.dim)

    def to_json(self) -> dict:
        if self.is_diagonal:
            return {
                "kind": "diagonal",
                "entries": [e.to_json() for e in self.entries],
                "degenerate": self.degenerate,
            }
        return {
            "kind": "gram",
            "rows": [[e.to_json() for e in row] for row in self.gram],
            "degenerate": self.degenerate,
        }


def diagonal(entries: Sequence, ring: Optional[PolyRing] = None) -> QuadraticForm:
    entries = list(entries)
    if ring is None:
        for e in entries:
            if isinstance(e, FieldElement):
                ring = e.ring
                break
        else:
            raise ValueError("cannot infer the scalar ring; pass ring=")
    entries = [ring.element(e) for e in entries]
    if any(e.is_zero() for e in entries):
        raise QuadFormError("zero entry")
    return QuadraticForm(ring, diagonal=entries)


def direct_sum(left: QuadraticForm, right: QuadraticForm) -> QuadraticForm:
    if not (left.is_diagonal and right.is_diagonal):
        raise ValueError("direct sum implemented for diagonal forms")
    return QuadraticForm(
        left.ring,
        diagonal=left.entries + right.entries,
        degenerate=left.degenerate or right.degenerate,
    )


def tensor(left: QuadraticForm, right: QuadraticForm) -> QuadraticForm:
    """Kronecker product of diagonal forms, left-entry-major order."""
    if not (left.is_diagonal and right.is_diagonal):
        raise ValueError("tensor implemented for diagonal forms")
    out = []
    for a in left.entries:
        for b in right.entries:
            out.append(a * b)
    return QuadraticForm(left.ring, diagonal=out)


def pfister(slots: Sequence, ring: Optional[PolyRing] = None) -> QuadraticForm:
    """Tensor of the binary forms <1, a_i>; dimension 2^r.

    Entry order follows the subset bitmask: entry b is the product of the
    slots whose bit is set, so pfister([a]) is <1, a> and pfister([a, b])
    is <1, a, b, a*b>.
    """
    base = diagonal(slots, ring=ring)
    ring = base.ring
    out = [ring.element(1)]
    for a in base.entries:
        out = out + [e * a for e in out]
    return QuadraticForm(ring, diagonal=out)


def pfister0(slots: Sequence, ring: Optional[PolyRing] = None) -> QuadraticForm:
    """Pure part: pfister(slots) with one unit slot removed; dimension 2^r - 1."""
    full = pfister(slots, ring=ring)
    return QuadraticForm(full.ring, diagonal=full.entries[1:])


# -------------------------------------------------------------- diagonalization


def diagonalize(q: QuadraticForm):
    """Congruence-diagonalize: returns (diagonal form, P) with P^T G P diagonal.

    Pivot rule is deterministic: take the first nonzero diagonal entry at or
    after the current step; when the remaining diagonal is zero, create a
    pivot from the first nonzero off-diagonal entry by a column-plus-column
    move.  An all-zero remainder yields explicit zero entries and sets the
    degenerate flag.  Both P invertible and the congruence identity are
    re-verified before returning.
    """
    ring = q.ring
    if q.is_diagonal:
        return q, identity_matrix(ring, q.dim)
    n = q.dim
    G = [[e for e in row] for row in q.gram]
    P = identity_matrix(ring, n)
    zero = ring.element(0)

    def col_add(dst, src, c):
        # column dst += c * column src, then the same for rows; P follows.
        for i in range(n):
            G[i][dst] = G[i][dst] + c * G[i][src]
        for j in range(n):
            G[dst][j] = G[dst][j] + c * G[src][j]
        for i in range(n):
            P[i][dst] = P[i][dst] + c * P[i][src]

    def swap(i, j):
        for r in range(n):
            G[r][i], G[r][j] = G[r][j], G[r][i]
        G[i], G[j] = G[j], G[i]
        for r in range(n):
            P[r][i], P[r][j] = P[r][j], P[r][i]

    for k in range(n):
        pivot_row = None
        for r in range(k, n):
            if not G[r][r].is_zero():
                pivot_row = r
                break
        if pivot_row is None:
            found = None
            for r in range(k, n):
                for s in range(r + 1, n):
                    if not G[r][s].is_zero():
                        found = (r, s)
                        break
                if found:
                    break
            if found is None:
                break  # remaining block is zero
            r, s = found
            col_add(s, r, ring.element(1))  # makes G[s][s] = 2*G[r][s] nonzero
            pivot_row = s
        if pivot_row != k:
            swap(k, pivot_row)
        pivot = G[k][k]
        for i in range(k + 1, n):
            if not G[i][k].is_zero():
                col_add(i, k, -(G[i][k] / pivot))

    entries = [G[i][i] for i in range(n)]
    degenerate = any(e.is_zero() for e in entries)

    # congruence identity P^T G P = D, re-verified entry by entry
    GP = mat_mul(q.gram, P)
    Pt = [[P[r][i] for r in range(n)] for i in range(n)]
    PtGP = mat_mul(Pt, GP)
    for i in range(n):
        for j in range(n):
            want = entries[i] if i == j else zero
            if not PtGP[i][j] == want:
                raise QuadFormError("diagonalization postcondition failed")
    if mat_det(P).is_zero():
        raise QuadFormError("diagonalization produced a singular transform")
    return QuadraticForm(ring, diagonal=entries, degenerate=degenerate), P


# ----------------------------------------------------------------- trace forms


class MatrixAlgebra:
    """Full d x d matrix algebra over the scalar field, matrix-unit basis."""

    def __init__(self, ring: PolyRing, d: int):
        if d < 1:
            raise ValueError("matrix size must be positive")
        self.ring = ring
        self.d = d
        self.basis_count = d * d
        self.degree = d

    def basis_label(self, r: int) -> str:
        i, j = divmod(r, self.d)
        return "e" + str(i + 1) + str(j + 1)

    def one_coords(self) -> list:
        zero = self.ring.element(0)
        out = [zero] * self.basis_count
        for i in range(self.d):
            out[i * self.d + i] = self.ring.element(1)
        return out

    def basis_product(self, r: int, s: int) -> list:
        zero = self.ring.element(0)
        out = [zero] * self.basis_count
        i, j = divmod(r, self.d)
        k, l = divmod(s, self.d)
        if j == k:
            out[i * self.d + l] = self.ring.element(1)
        return out


def trace_form(algebra) -> QuadraticForm:
    """Gram matrix of (x, y) -> Trd(xy) on the structure-constant basis.

    Trd is the regular trace divided by the degree, and Trd(1) = degree is
    checked before the form is assembled.
    """
    ring = algebra.ring
    n = algebra.degree
    count = algebra.basis_count
    if count != n * n:
        raise QuadFormError("algebra dimension is not the square of its degree")
    deg = ring.element(n)

    # regular trace of left multiplication by each basis element
    zero = ring.element(0)
    tr = []
    for t in range(count):
        acc = zero
        for w in range(count):
            acc = acc + algebra.basis_product(t, w)[w]
        tr.append(acc)

    def trd(coords):
        acc = zero
        for t in range(count):
            if not coords[t].is_zero():
                acc = acc + coords[t] * tr[t]
        return acc / deg

    if not trd(algebra.one_coords()) == deg:
        raise QuadFormError("reduced trace of the identity is not the degree")

    gram = [[zero] * count for _ in range(count)]
    for r in range(count):
        for s in range(r, count):
            value = trd(algebra.basis_product(r, s))
            gram[r][s] = value
            gram[s][r] = value
    return QuadraticForm(ring, gram=gram)


# ------------------------------------------------------------------- trace data


class TraceData:
    """Subfield traces t_i and norms n_i of the three squared slot generators.

    For a degree-4 crossed product with slots z1, z2 and z3 = (z1 z2)^-1,
    each square z_i^2 lies in the quadratic subfield fixed by the matching
    involution, so it has a trace and a norm down to the scalar field.
    t_i is half the trace; n_i is the norm.
    """

    def __init__(self, ring, t1, t2, t3, n1, n2, n3, checks=None):
        self.ring = ring
        self.t1 = ring.element(t1)
        self.t2 = ring.element(t2)
        self.t3 = ring.element(t3)
        self.n1 = ring.element(n1)
        self.n2 = ring.element(n2)
        self.n3 = ring.element(n3)
        self.checks = checks or []

    def values(self) -> dict:
        return {
            "t1": self.t1, "t2": self.t2, "t3": self.t3,
            "n1": self.n1, "n2": self.n2, "n3": self.n3,
        }

    def to_json(self) -> dict:
        out = {name: value.to_json() for name, value in self.values().items()}
        out["checks"] = self.checks
        return out


def _half_trace_and_norm(component_pairs, square):
    # element g + h*alpha with alpha^2 = square: half-trace g, norm g^2 - h^2*square
    g, h = component_pairs
    return g, g * g - h * h * square


def trace_data(algebra) -> TraceData:
    """Trace data of a degree-4 crossed product, with the input identities
    re-verified.

    The three squares are b1 = z1^2 in F(al2), b2 = z2^2 in F(al1), and
    b3 = (z1 z2)^-2 in F(al1 al2); b3 is computed inside the algebra and its
    membership in the third quadratic subfield is checked.  With
    b1 = f1 + f2 al2 the identities t1 = f1 and n1 - t1^2 = (i f2)^2 a2 hold
    on the nose (i a fourth root of unity), and both are recorded as checks.
    """
    K = algebra.K
    if K.m != 2:
        raise ValueError("trace data needs a degree-4 algebra (m = 2)")
    ring = algebra.ring
    zero = ring.element(0)
    a1, a2 = K.a1, K.a2

    b1 = algebra.b1
    b2 = algebra.b2
    for key in b1:
        if key not in ((0, 0), (0, 1)) and not b1[key].is_zero():
            raise QuadFormError("b1 outside the subfield F(al2)")
    for key in b2:
        if key not in ((0, 0), (1, 0)) and not b2[key].is_zero():
            raise QuadFormError("b2 outside the subfield F(al1)")
    t1, n1 = _half_trace_and_norm((b1.get((0, 0), zero), b1.get((0, 1), zero)), a2)
    t2, n2 = _half_trace_and_norm((b2.get((0, 0), zero), b2.get((1, 0), zero)), a1)
    for t, n in ((t1, n1), (t2, n2)):
        if t.is_zero() or (n - t * t).is_zero():
            raise QuadFormError("degenerate: some t_i = 0 or n_i - t_i^2 = 0")

    f1, f2 = algebra.b1_pair()
    i4 = _zeta4(ring)
    witness = i4 * f2
    checks = [
        {"name": "t1-equals-b1-scalar-part", "ok": bool(t1 == f1)},
        {
            "name": "norm-deficit-is-square-times-a2",
            "ok": bool(n1 - t1 * t1 == witness * witness * a2),
            "witness": str(witness),
        },
    ]
    if not all(c["ok"] for c in checks):
        raise QuadFormError("trace data identities failed")

    w = algebra.mul(algebra.z1(), algebra.z2())
    w2 = algebra.power(w, 2)
    # (z1 z2)^2 must be a pure K coefficient at the identity word
    for word, coeff in w2.items():
        if word != (0, 0) and any(not c.is_zero() for c in coeff.values()):
            raise QuadFormError("(z1 z2)^2 left the coefficient field")
    if (0, 0) not in w2:
        raise QuadFormError("(z1 z2)^2 vanished")
    square = w2[(0, 0)]
    for key in square:
        if key not in ((0, 0), (1, 1)) and not square[key].is_zero():
            raise QuadFormError("(z1 z2)^2 outside the subfield F(al1 al2)")
    p = square.get((0, 0), zero)
    q = square.get((1, 1), zero)
    # with N the subfield norm of p + q al1 al2: t3 = p/N, n3 = 1/N, so
    # t3 = 0 iff p = 0 and n3 - t3^2 = -q^2 a1 a2 / N^2 = 0 iff q = 0;
    # gate on p, q before touching the larger products
    if p.is_zero() or q.is_zero():
        raise QuadFormError("degenerate: some t_i = 0 or n_i - t_i^2 = 0")
    # invert inside the quadratic subfield: conjugate over norm, much
    # cheaper than the full Galois cofactor
    norm = p * p - q * q * a1 * a2
    if norm.is_zero():
        raise QuadFormError("(z1 z2)^2 is not invertible")
    t3 = p / norm
    n3 = norm.inverse()
    return TraceData(ring, t1, t2, t3, n1, n2, n3, checks=checks)


READINGS = ("consistent", "printed")


def _check_hypothesis(td: TraceData, reading: str) -> None:
    if reading not in READINGS:
        raise ValueError("unknown reading: " + str(reading))
    pairs = ((td.t1, td.n1), (td.t2, td.n2), (td.t3, td.n3))
    for t, n in pairs:
        if t.is_zero() or n.is_zero():
            raise QuadFormError("hypothesis violated")
        if reading == "consistent":
            deficit = n - t * t
        else:
            deficit = n * n - t
        if deficit.is_zero():
            raise QuadFormError("hypothesis violated")


def serre_form(td: TraceData, reading: str = "consistent") -> QuadraticForm:
    """Direct sum of the 2-fold and 4-fold Pfister forms built from the trace
    data; dimension 20.

    The first slot of the 4-fold factor has two circulating readings that
    differ by a transposition of exponents; reading="consistent" uses
    t1^2 - n1, which is the one the move certificate can link to the reduced
    form, and reading="printed" uses t1 - n1^2.  The hypothesis (all t_i and
    the matching deficits nonzero) is enforced either way.
    """
    _check_hypothesis(td, reading)
    q2 = pfister([td.n1 - td.t1 * td.t1, td.n2], ring=td.ring)
    if reading == "consistent":
        slot1 = td.t1 * td.t1 - td.n1
    else:
        slot1 = td.t1 - td.n1 * td.n1
    q4 = pfister(
        [slot1, (td.n2 - td.t2 * td.t2) * td.n2, td.t1 * td.t2, td.t2 * td.t3],
        ring=td.ring,
    )
    return direct_sum(q2, q4)


EQUIV_GENERATORS = ("g1", "g2", "g3", "g4")


def equiv_form(td: TraceData) -> QuadraticForm:
    """The reduced 16-dimensional form, every entry built syntactically from
    the four generators g1 = n1/t1^2, g2 = n2/t2^2, g3 = t1 t2, g4 = t2 t3.

    Entries are assembled as expression trees over the generators and
    rationals, then evaluated; the trees are attached to the result so the
    four-generator audit is a leaf-set inspection, bounding the
    transcendence degree of the field the entries generate by 4.
    """
    ring = td.ring
    if td.t1.is_zero() or td.t2.is_zero():
        raise QuadFormError("zero denominator")
    g1 = GenExpr.gen("g1")
    g2 = GenExpr.gen("g2")
    g3 = GenExpr.gen("g3")
    g4 = GenExpr.gen("g4")
    one = GenExpr.const(1)
    y = one - g1
    w = (one - g2) * g2
    second = [g2, w, g3, w * g3, g4, w * g4, g3 * g4, w * g3 * g4]
    exprs = second + [y * s for s in second]

    t1sq = td.t1 * td.t1
    t2sq = td.t2 * td.t2
    env = {
        "g1": td.n1 / t1sq,
        "g2": td.n2 / t2sq,
        "g3": td.t1 * td.t2,
        "g4": td.t2 * td.t3,
    }
    entries = [e.evaluate(env, ring) for e in exprs]
    form = diagonal(entries, ring=ring)
    form.entry_expressions = exprs
    form.generator_legend = {
        "g1": "n1/t1^2",
        "g2": "n2/t2^2",
        "g3": "t1*t2",
        "g4": "t2*t3",
    }
    form.audit = audit_entries(form)
    return form


def audit_entries(form: QuadraticForm) -> dict:
    """Leaf-set audit of a form carrying entry expression trees."""
    exprs = getattr(form, "entry_expressions", None)
    if exprs is None:
        raise ValueError("form carries no entry expressions")
    ok = all(e.uses_only(EQUIV_GENERATORS) for e in exprs)
    return {
        "only_four_generators": ok,
        "generators": dict(form.generator_legend),
        "transcendence_degree_bound": len(EQUIV_GENERATORS),
        "entries": [e.render() for e in exprs],
    }


# ------------------------------------------------------------------ Witt moves


class WittMove:
    """One verifiable step on a diagonal form.

    kind "scale":   entries[i] *= factor, witness^2 = factor.
    kind "negate":  entries[i] flips sign, witness^2 = -1.
    kind "permute": entries reordered, data is the permutation (new from old).
    kind "cancel":  entries i, j removed, witness has q_i*witness^2 = -q_j.
    kind "split":   no change; asserts the listed positions carry the stated
                    entries, naming a summand before it is cancelled.
    """

    KINDS = ("scale", "negate", "permute", "cancel", "split")

    def __init__(self, kind, indices, witness=None, factor=None,
                 expected=None, note=""):
        if kind not in self.KINDS:
            raise ValueError("unknown move kind: " + str(kind))
        self.kind = kind
        self.indices = list(indices)
        self.witness = witness
        self.factor = factor
        self.expected = expected
        self.note = note

    def describe(self) -> str:
        tail = " (" + self.note + ")" if self.note else ""
        return self.kind + " @ " + str(self.indices) + tail

    def to_json(self) -> dict:
        out = {"kind": self.kind, "indices": self.indices, "note": self.note}
        if self.witness is not None:
            out["witness"] = self.witness.to_json()
        if self.factor is not None:
            out["factor"] = self.factor.to_json()
        if self.expected is not None:
            out["expected"] = [e.to_json() for e in self.expected]
        return out

    @classmethod
    def from_json(cls, ring: PolyRing, data: dict) -> "WittMove":
        witness = data.get("witness")
        factor = data.get("factor")
        expected = data.get("expected")
        return cls(
            data["kind"],
            data["indices"],
            witness=FieldElement.from_json(ring, witness) if witness else None,
            factor=FieldElement.from_json(ring, factor) if factor else None,
            expected=[FieldElement.from_json(ring, e) for e in expected]
            if expected else None,
            note=data.get("note", ""),
        )


def witt_apply(form: QuadraticForm, moves: Sequence[WittMove]) -> QuadraticForm:
    """Replay a move list, re-verifying every witness; returns the final form.

    Indices refer to the current entry list, so a cancel shifts later
    positions.  Any failed witness aborts with the offending move named.
    """
    if not form.is_diagonal:
        raise ValueError("witt moves need a diagonal form")
    ring = form.ring
    entries = list(form.entries)

    def fail(move):
        raise QuadFormError("witness fails: " + move.describe())

    for move in moves:
        idx = move.indices
        if any(i < 0 or i >= len(entries) for i in idx):
            fail(move)
        if move.kind == "scale":
            if move.witness is None or move.factor is None:
                fail(move)
            if move.witness.is_zero() or not move.witness * move.witness == move.factor:
                fail(move)
            entries[idx[0]] = entries[idx[0]] * move.factor
        elif move.kind == "negate":
            if move.witness is None or not move.witness * move.witness == ring.element(-1):
                fail(move)
            entries[idx[0]] = -entries[idx[0]]
        elif move.kind == "permute":
            if sorted(idx) != list(range(len(entries))):
                fail(move)
            entries = [entries[i] for i in idx]
        elif move.kind == "cancel":
            i, j = idx
            if i == j or move.witness is None:
                fail(move)
            if not entries[i] * move.witness * move.witness == -entries[j]:
                fail(move)
            entries = [e for r, e in enumerate(entries) if r not in (i, j)]
        else:  # split
            if move.expected is None or len(move.expected) != len(idx):
                fail(move)
            for k, i in enumerate(idx):
                if not entries[i] == move.expected[k]:
                    fail(move)
    return QuadraticForm(ring, diagonal=entries)


def witt_derive_equivalence(td: TraceData, reading: str = "consistent"):
    """Move certificate from serre_form(td) to equiv_form(td).

    The chain is: flip signs so the 2-fold block and the 4-fold block share
    the unit slot pair, rescale by the squares t1^2, t2^2, t2^4 to reach the
    four-generator entries, exhibit the doubled summand <1, t1^2 - n1> (up
    to squares) on four positions, cancel it as two hyperbolic pairs (each
    doubled entry <a, a> is hyperbolic because -1 is a square), and permute
    into the reduced order.  Only the consistent reading admits the shared
    slot; the printed reading leaves nothing to cancel.
    """
    if reading not in READINGS:
        raise ValueError("unknown reading: " + str(reading))
    if reading == "printed":
        raise QuadFormError(
            "printed reading leaves no cancelable common term; "
            "use reading='consistent'"
        )
    _check_hypothesis(td, reading)
    ring = td.ring
    i4 = _zeta4(ring)
    one = ring.element(1)
    t1, t2 = td.t1, td.t2
    t2sq = t2 * t2
    y = (t1 * t1 - td.n1) / (t1 * t1)

    moves = []
    for i in (1, 3, 6, 7, 10, 11, 14, 15, 18, 19):
        moves.append(WittMove("negate", [i], witness=i4))
    scale_plan = [
        (1, t1), (2, t2), (3, t1 * t2),
        (5, t1), (6, t2sq), (7, t1 * t2sq),
        (9, t1), (10, t2sq), (11, t1 * t2sq),
        (13, t1), (14, t2sq), (15, t1 * t2sq),
        (17, t1), (18, t2sq), (19, t1 * t2sq),
    ]
    for i, divisor in scale_plan:
        witness = divisor.inverse()
        moves.append(WittMove("scale", [i], witness=witness,
                              factor=witness * witness))
    moves.append(WittMove(
        "split", [0, 4, 1, 5], expected=[one, one, y, y],
        note="doubled common term <1, t1^2 - n1>, up to squares",
    ))
    moves.append(WittMove("cancel", [0, 4], witness=i4,
                          note="hyperbolic pair <1, 1>"))
    moves.append(WittMove("cancel", [0, 3], witness=i4,
                          note="hyperbolic pair <y, y>, y = 1 - n1/t1^2"))
    moves.append(WittMove(
        "permute", [0, 2, 4, 6, 8, 10, 12, 14, 1, 3, 5, 7, 9, 11, 13, 15],
        note="interleave to the reduced order",
    ))
    return moves


def replay_trace_form_equivalence(td: TraceData, reading: str = "consistent") -> dict:
    """Build the certificate, replay it, and compare against the reduced form.

    Returns a report with the reading used, the move count, the final-form
    comparison, and the four-generator audit of the reduced form.
    """
    start = serre_form(td, reading=reading)
    moves = witt_derive_equivalence(td, reading=reading)
    final = witt_apply(start, moves)
    target = equiv_form(td)
    matches = final.dim == target.dim and all(
        final.entries[i] == target.entries[i] for i in range(final.dim)
    )
    return {
        "reading": reading,
        "start_dim": start.dim,
        "moves": len(moves),
        "final_dim": final.dim,
        "final_matches_equiv_form": matches,
        "cancelled": "two hyperbolic pairs carrying <1, t1^2 - n1> twice, up to squares",
        "audit": target.audit,
        "ok": matches and target.audit["only_four_generators"],
    }


# ---------------------------------------------------------- hyperbolic pairing


def hyperbolic_sufficient(q: QuadraticForm) -> Optional[dict]:
    """Greedy certificate that q is hyperbolic: pair entries whose ratio is a
    recognized square.

    Needs a square root of -1 in the scalars, so each matched pair <a, b>
    with a/b square is isometric to <a, -a>, a hyperbolic plane.  Returns
    the pairing with cancel-ready witnesses, or None when some entry stays
    unmatched (inconclusive: square recognition is partial and pairing is
    only a sufficient test).
    """
    i4 = _zeta4(q.ring)
    if q.is_diagonal:
        d, transform = q, None
    else:
        d, transform = diagonalize(q)
    if d.degenerate:
        raise QuadFormError("degenerate form")
    if d.dim % 2 == 1:
        return None
    unpaired = list(range(d.dim))
    pairs = []
    while unpaired:
        i = unpaired[0]
        match = None
        for j in unpaired[1:]:
            root = is_square(d.entries[i] / d.entries[j])
            if root is not None:
                match = (j, root)
                break
        if match is None:
            return None
        j, root = match
        # witness w with q_i * w^2 = -q_j: w = i4 / root
        witness = i4 / root
        pairs.append({"indices": (i, j), "witness": witness})
        unpaired.remove(i)
        unpaired.remove(j)
    return {"pairs": pairs, "diagonal": d, "transform": transform}


# ------------------------------------------------------- rational invariants


def _to_fraction(value) -> Fraction:
    if isinstance(value, FieldElement):
        return value.as_fraction()
    if isinstance(value, Cyc):
        return value.as_fraction()
    return Fraction(value)


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def _odd_primes_of(fr: Fraction) -> set:
    out = set()
    for n in (fr.numerator, fr.denominator):
        n = abs(n)
        while n % 2 == 0:
            n //= 2
        f = 3
        while f * f <= n:
            if n % f == 0:
                out.add(f)
                while n % f == 0:
                    n //= f
            else:
                f += 2
        if n > 1:
            out.add(n)
    return out


def _valuation(fr: Fraction, p: int):
    v = 0
    num, den = fr.numerator, fr.denominator
    while num % p == 0:
        num //= p
        v += 1
    while den % p == 0:
        den //= p
        v -= 1
    return v, Fraction(num, den)


def _squarefree(fr: Fraction) -> int:
    sign = -1 if fr < 0 else 1
    n = abs(fr.numerator * fr.denominator)
    out = 1
    f = 2
    while f * f <= n:
        e = 0
        while n % f == 0:
            n //= f
            e += 1
        if e % 2 == 1:
            out *= f
        f += 1 if f == 2 else 2
    return sign * out * n


def hilbert_symbol(a, b, place) -> int:
    """Hilbert symbol (a, b) at a finite prime or at "inf".

    Classical valuation and Legendre formulas: at an odd prime p with
    a = p^alpha u, b = p^beta v the symbol is
    (-1)^(alpha beta (p-1)/2) (u|p)^beta (v|p)^alpha; at 2 it is
    (-1)^(eps(u) eps(v) + alpha omega(v) + beta omega(u)); at infinity it is
    -1 exactly when both arguments are negative.
    """
    fa, fb = _to_fraction(a), _to_fraction(b)
    if fa == 0 or fb == 0:
        raise QuadFormError("zero entry")
    if place == "inf":
        return -1 if fa < 0 and fb < 0 else 1
    p = int(place)
    if not _is_prime(p):
        raise ValueError("place must be a prime or 'inf'")

    alpha, u = _valuation(fa, p)
    beta, v = _valuation(fb, p)
    if p == 2:
        def unit_mod8(fr):
            return (fr.numerator * pow(fr.denominator, -1, 8)) % 8
        um, vm = unit_mod8(u), unit_mod8(v)
        eps_u, eps_v = (um - 1) // 2 % 2, (vm - 1) // 2 % 2
        om_u, om_v = (um * um - 1) // 8 % 2, (vm * vm - 1) // 8 % 2
        exponent = eps_u * eps_v + alpha * om_v + beta * om_u
        return -1 if exponent % 2 else 1

    def legendre(fr):
        residue = (fr.numerator * pow(fr.denominator, -1, p)) % p
        value = pow(residue, (p - 1) // 2, p)
        return -1 if value == p - 1 else 1

    sym = 1
    if (alpha * beta * ((p - 1) // 2)) % 2:
        sym = -sym
    if beta % 2 and legendre(u) == -1:
        sym = -sym
    if alpha % 2 and legendre(v) == -1:
        sym = -sym
    return sym


def _rational_entries(q: QuadraticForm) -> list:
    if q.is_diagonal:
        d = q
    else:
        d, _ = diagonalize(q)
    if d.degenerate:
        raise QuadFormError("degenerate form")
    try:
        return [_to_fraction(e) for e in d.entries]
    except (ValueError, ArithmeticError):
        raise QuadFormError("rational invariants need rational entries")


def hilbert_places(values) -> list:
    """Places where a Hilbert symbol among the given rationals can be -1:
    the real place, 2, and the odd primes meeting a numerator or denominator.
    """
    return _places_for([[_to_fraction(v) for v in values]])


def _places_for(entry_lists) -> list:
    primes = set()
    for entries in entry_lists:
        for e in entries:
            primes |= _odd_primes_of(e)
    return ["inf", 2] + sorted(primes)


def invariants_over_Q(q: QuadraticForm) -> dict:
    """Rank, signature, square-class discriminant, and Hasse symbols of a
    nondegenerate rational form.

    The Hasse symbol is listed at infinity, at 2, and at every odd prime
    dividing some entry; it is +1 at all other places.
    """
    entries = _rational_entries(q)
    places = _places_for([entries])
    disc = Fraction(1)
    for e in entries:
        disc *= e
    hasse = {}
    for place in places:
        sym = 1
        for i in range(len(entries)):
            for j in range(i + 1, len(entries)):
                sym *= hilbert_symbol(entries[i], entries[j], place)
        hasse[str(place)] = sym
    return {
        "rank": len(entries),
        "signature": sum(1 if e > 0 else -1 for e in entries),
        "discriminant": _squarefree(disc),
        "hasse": hasse,
    }


def isometry_over_Q(q1: QuadraticForm, q2: QuadraticForm) -> bool:
    """Isometry of nondegenerate rational forms, decided by invariant
    comparison (rank, signature, discriminant, Hasse at the shared place
    list); complete over the rationals."""
    e1 = _rational_entries(q1)
    e2 = _rational_entries(q2)
    if len(e1) != len(e2):
        return False
    places = _places_for([e1, e2])

    def profile(entries):
        disc = Fraction(1)
        for e in entries:
            disc *= e
        sig = sum(1 if e > 0 else -1 for e in entries)
        hasse = []
        for place in places:
            sym = 1
            for i in range(len(entries)):
                for j in range(i + 1, len(entries)):
                    sym *= hilbert_symbol(entries[i], entries[j], place)
            hasse.append(sym)
        return (_squarefree(disc), sig, hasse)

    return profile(e1) == profile(e2)


# -------------------------------------------------------------- scaling descent


def scaling_descent(q: QuadraticForm, prefix: str = "sc"):
    """Rescale each diagonal entry by the square of a fresh variable.

    Returns (form with entries sc_i^2 a_i over the extended ring, generator
    list).  The rescaled entries generate the subfield the form is rational
    over after descent, one generator per entry.
    """
    if not q.is_diagonal:
        raise ValueError("scaling descent needs a diagonal form")
    if q.degenerate:
        raise QuadFormError("degenerate form")
    names = [prefix + str(i + 1) for i in range(q.dim)]
    for name in names:
        if name in q.ring.variables:
            raise ValueError("variable name collision: " + name)
    big = extend_ring(q.ring, names)
    generators = []
    for i, e in enumerate(q.entries):
        s = big.element(big.var(names[i]))
        generators.append(s * s * transport(e, big))
    return QuadraticForm(big, diagonal=generators), generators


FORM_PARAMETER_CITATION = (
    "generic diagonal form: the parameter count equals the dimension, "
    "attained by square-rescaling each entry into an independent generator"
)


def tau_form_bound(q: QuadraticForm) -> dict:
    """Upper bound on the number of field generators needed to present the
    form up to square rescaling: the dimension, with generic equality."""
    if not q.is_diagonal:
        raise ValueError("parameter bound stated for diagonal forms")
    return {
        "dimension": q.dim,
        "bound": q.dim,
        "equality_generic": True,
        "citation": FORM_PARAMETER_CITATION,
    }
