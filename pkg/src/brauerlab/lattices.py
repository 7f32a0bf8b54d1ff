"""Integral representations (G-lattices), equivariant maps and exact
sequences, all over Z with certificates.

A lattice stores one integer matrix per group generator; the action of an
arbitrary element is assembled on demand by walking the BFS spanning tree
of the group and cached. Derived lattices (tensor, wedge, sym, sums) build
their element actions from the factors instead, which keeps the per-element
cost proportional to the factor ranks.

Exactness of 0 -> A -> B -> C -> 0 is certified by: composition zero,
inner map injective with saturated image, outer map surjective over Z,
rank additivity, and an explicit integer solve expressing a kernel basis
of the outer map through the inner map. Saturation makes "kernel = image"
equivalent to these finitely many checks.
"""

from __future__ import annotations

from typing import Callable, Iterable, Optional, Sequence

from . import snf
from .groups import (
    CosetSpace,
    PermutationGroup,
    Subgroup,
    coset_space,
    normal_core,
)
from .snf import SNFResult  # re-export: part of this module's surface

__all__ = [
    "GLattice", "LatticeMap", "LatticeSequence", "LatticeError", "SNFResult",
    "perm_lattice", "natural_perm_lattice", "trivial_lattice",
    "augmentation_kernel", "augmentation_map", "tensor", "wedge2", "sym2",
    "direct_sum", "wedge2_inclusion", "sym2_projection", "wedge_sym2_sequence",
    "freepres_sequence", "seq2_sequence", "formanek_sequence",
    "is_exact", "ExactnessReport", "is_faithful",
    "faithful_predicate_freepres", "faithful_predicate_seq2",
    "character", "perm_character_decomposition", "solve_membership",
]


class LatticeError(ValueError):
    pass


def _trace(m: list[list[int]]) -> int:
    return sum(m[i][i] for i in range(len(m)))


def _is_identity(m: list[list[int]]) -> bool:
    for i, row in enumerate(m):
        for j, v in enumerate(row):
            if v != (1 if i == j else 0):
                return False
    return True


def _is_neg_identity(m: list[list[int]]) -> bool:
    for i, row in enumerate(m):
        for j, v in enumerate(row):
            if v != (-1 if i == j else 0):
                return False
    return True


def _kron(a: list[list[int]], b: list[list[int]]) -> list[list[int]]:
    rb = len(b)
    cb = len(b[0]) if rb else 0
    out = []
    for arow in a:
        for brow in b:
            row = []
            for av in arow:
                if av == 0:
                    row.extend([0] * cb)
                else:
                    row.extend(av * bv for bv in brow)
            out.append(row)
    return out


def _block_diag(mats: Sequence[list[list[int]]]) -> list[list[int]]:
    total = sum(len(m) for m in mats)
    out = snf.zeros(total, total)
    off = 0
    for m in mats:
        for i, row in enumerate(m):
            for j, v in enumerate(row):
                if v:
                    out[off + i][off + j] = v
        off += len(m)
    return out


class GLattice:
    """Free Z-module with a group action given by unimodular matrices."""

    def __init__(self, group: PermutationGroup, rank: int,
                 gen_matrices: Optional[list[list[list[int]]]] = None,
                 label: str = ""):
        self.group = group
        self.rank = rank
        self.label = label
        self._gen_mats = gen_matrices
        self._cache: dict[int, list[list[int]]] = {0: snf.identity(rank)}

    def action(self, g: int) -> list[list[int]]:
        got = self._cache.get(g)
        if got is None:
            got = self._compute(g)
            self._cache[g] = got
        return got

    def _compute(self, g: int) -> list[list[int]]:
        parent, pos = self.group.parents[g]
        return snf.mat_mult(self.action(parent), self._gen_mats[pos])

    def character(self, g: int) -> int:
        return _trace(self.action(g))

    def acts_as_identity(self, g: int) -> bool:
        return _is_identity(self.action(g))

    def __repr__(self) -> str:
        return f"<GLattice rank {self.rank} [{self.label}]>"

    def to_json(self) -> dict:
        return {
            "rank": self.rank,
            "label": self.label,
            "group": self.group.to_json(),
            "generator_matrices": [self.action(g) for g in self.group.generators],
        }


class PermLattice(GLattice):
    """Z[G/H] with basis the cosets in representative order."""

    def __init__(self, cosets: CosetSpace, label: str = ""):
        n = cosets.size
        mats = []
        for g in cosets.group.generators:
            m = snf.zeros(n, n)
            for c in range(n):
                m[cosets.act(g, c)][c] = 1
            mats.append(m)
        super().__init__(cosets.group, n, mats,
                         label or f"perm[{cosets.group.name or 'G'}:{n}]")
        self.cosets = cosets


class TensorLattice(GLattice):
    def __init__(self, left: GLattice, right: GLattice):
        if left.group is not right.group:
            raise LatticeError("tensor factors must share the group")
        super().__init__(left.group, left.rank * right.rank,
                         label=f"({left.label})x({right.label})")
        self.left = left
        self.right = right

    def _compute(self, g: int) -> list[list[int]]:
        return _kron(self.left.action(g), self.right.action(g))

    def acts_as_identity(self, g: int) -> bool:
        # A (x) A = 1 forces A = +-1 (compare any nonzero row scaling),
        # so the self-tensor case never materializes the big matrix.
        if self.left is self.right:
            m = self.left.action(g)
            return _is_identity(m) or _is_neg_identity(m)
        return _is_identity(self.action(g))


class DirectSumLattice(GLattice):
    def __init__(self, parts: Sequence[GLattice]):
        parts = list(parts)
        if not parts:
            raise LatticeError("empty direct sum")
        group = parts[0].group
        if any(p.group is not group for p in parts):
            raise LatticeError("summands must share the group")
        super().__init__(group, sum(p.rank for p in parts),
                         label="+".join(p.label for p in parts))
        self.parts = parts

    def _compute(self, g: int) -> list[list[int]]:
        return _block_diag([p.action(g) for p in self.parts])

    def acts_as_identity(self, g: int) -> bool:
        return all(p.acts_as_identity(g) for p in self.parts)


def _pair_basis(rank: int, strict: bool) -> list[tuple[int, int]]:
    if strict:
        return [(i, j) for i in range(rank) for j in range(i + 1, rank)]
    return [(i, j) for i in range(rank) for j in range(i, rank)]


class Wedge2Lattice(GLattice):
    def __init__(self, base: GLattice):
        self.base = base
        self.pairs = _pair_basis(base.rank, strict=True)
        self.pair_index = {p: k for k, p in enumerate(self.pairs)}
        super().__init__(base.group, len(self.pairs),
                         label=f"wedge2({base.label})")

    def _compute(self, g: int) -> list[list[int]]:
        a = self.base.action(g)
        m = snf.zeros(self.rank, self.rank)
        for col, (i, j) in enumerate(self.pairs):
            # g.(e_i ^ e_j) = sum_{k<l} (a_ki a_lj - a_li a_kj) e_k ^ e_l
            for row, (k, l) in enumerate(self.pairs):
                v = a[k][i] * a[l][j] - a[l][i] * a[k][j]
                if v:
                    m[row][col] = v
        return m


class Sym2Lattice(GLattice):
    def __init__(self, base: GLattice):
        self.base = base
        self.pairs = _pair_basis(base.rank, strict=False)
        self.pair_index = {p: k for k, p in enumerate(self.pairs)}
        super().__init__(base.group, len(self.pairs),
                         label=f"sym2({base.label})")

    def _compute(self, g: int) -> list[list[int]]:
        a = self.base.action(g)
        m = snf.zeros(self.rank, self.rank)
        for col, (i, j) in enumerate(self.pairs):
            for row, (k, l) in enumerate(self.pairs):
                if k == l:
                    v = a[k][i] * a[k][j]
                else:
                    v = a[k][i] * a[l][j] + a[l][i] * a[k][j]
                if v:
                    m[row][col] = v
        return m


class PairsLattice(GLattice):
    """Permutation lattice on ordered pairs of distinct cosets."""

    def __init__(self, cosets: CosetSpace):
        n = cosets.size
        self.cosets = cosets
        self.pairs = [(a, b) for a in range(n) for b in range(n) if a != b]
        self.pair_index = {p: k for k, p in enumerate(self.pairs)}
        mats = []
        for g in cosets.group.generators:
            img = [cosets.act(g, c) for c in range(n)]
            m = snf.zeros(len(self.pairs), len(self.pairs))
            for col, (a, b) in enumerate(self.pairs):
                m[self.pair_index[(img[a], img[b])]][col] = 1
            mats.append(m)
        super().__init__(cosets.group, len(self.pairs), mats,
                         label=f"pairs[{n}]")


# --- constructors ---------------------------------------------------------

def perm_lattice(cosets: CosetSpace) -> PermLattice:
    return PermLattice(cosets)


def natural_perm_lattice(group: PermutationGroup) -> GLattice:
    """Permutation lattice on the points the group acts on."""
    n = group.degree
    mats = []
    for g in group.generators:
        perm = group.elements[g]
        m = snf.zeros(n, n)
        for c in range(n):
            m[perm[c]][c] = 1
        mats.append(m)
    lat = GLattice(group, n, mats, label=f"natural[{group.name or 'G'}]")
    return lat


def trivial_lattice(group: PermutationGroup) -> GLattice:
    return GLattice(group, 1, [[[1]] for _ in group.generators], label="Z")


def _omega_from_perm(perm: GLattice, coset_act: Callable[[int, int], int],
                     label: str) -> tuple[GLattice, "LatticeMap"]:
    """Kernel of the coordinate-sum map, basis e_i - e_0 for i >= 1."""
    n = perm.rank
    mats = []
    for g in perm.group.generators:
        m = snf.zeros(n - 1, n - 1)
        z = coset_act(g, 0)
        for i in range(1, n):
            gi = coset_act(g, i)
            if gi != 0:
                m[gi - 1][i - 1] += 1
            if z != 0:
                m[z - 1][i - 1] -= 1
        mats.append(m)
    omega = GLattice(perm.group, n - 1, mats, label=label)
    incl = snf.zeros(n, n - 1)
    for i in range(1, n):
        incl[i][i - 1] = 1
        incl[0][i - 1] = -1
    emb = LatticeMap(omega, perm, incl, label="augmentation-kernel-embedding")
    emb.row_pivots = [(i, i - 1) for i in range(1, n)]
    return omega, emb


def augmentation_kernel(cosets: CosetSpace) -> tuple[GLattice, "LatticeMap"]:
    """The lattice of coset differences inside Z[G/H], with its embedding."""
    perm = PermLattice(cosets)
    return _omega_from_perm(perm, cosets.act, label=f"omega[{cosets.size}]")


def augmentation_map(perm: GLattice) -> "LatticeMap":
    """Coordinate-sum map onto the trivial lattice."""
    m = LatticeMap(perm, trivial_lattice(perm.group),
                   [[1] * perm.rank], label="augmentation")
    m.col_pivots = [(0, 0)]
    return m


def tensor(left: GLattice, right: GLattice) -> TensorLattice:
    return TensorLattice(left, right)


def wedge2(base: GLattice) -> Wedge2Lattice:
    return Wedge2Lattice(base)


def sym2(base: GLattice) -> Sym2Lattice:
    return Sym2Lattice(base)


def direct_sum(parts: Sequence[GLattice]) -> DirectSumLattice:
    return DirectSumLattice(parts)


def wedge2_inclusion(base: GLattice,
                     square: Optional[TensorLattice] = None) -> "LatticeMap":
    """e_i ^ e_j -> e_i (x) e_j - e_j (x) e_i into the tensor square."""
    w = wedge2(base)
    t = square if square is not None else tensor(base, base)
    r = base.rank
    m = snf.zeros(t.rank, w.rank)
    for col, (i, j) in enumerate(w.pairs):
        m[i * r + j][col] = 1
        m[j * r + i][col] = -1
    out = LatticeMap(w, t, m, label="wedge2-inclusion")
    out.row_pivots = [(i * r + j, col) for col, (i, j) in enumerate(w.pairs)]
    return out


def sym2_projection(base: GLattice,
                    square: Optional[TensorLattice] = None) -> "LatticeMap":
    """e_i (x) e_j -> e_i.e_j onto the symmetric square."""
    s = sym2(base)
    t = square if square is not None else tensor(base, base)
    r = base.rank
    m = snf.zeros(s.rank, t.rank)
    for i in range(r):
        for j in range(r):
            m[s.pair_index[(min(i, j), max(i, j))]][i * r + j] = 1
    out = LatticeMap(t, s, m, label="sym2-projection")
    out.col_pivots = [(row, i * r + j)
                      for row, (i, j) in enumerate(s.pairs)]
    return out


# --- maps and sequences ---------------------------------------------------

class LatticeMap:
    """Equivariant map between lattices, stored as target.rank x source.rank.

    row_pivots / col_pivots are optional unit-echelon certificates attached
    by constructors that know the matrix structure; they let is_exact avoid
    a full Smith form on large sparse maps. They are verified, not trusted.
    """

    def __init__(self, source: GLattice, target: GLattice,
                 matrix: list[list[int]], label: str = ""):
        if len(matrix) != target.rank or any(len(r) != source.rank for r in matrix):
            raise LatticeError(
                f"map shape {len(matrix)}x{len(matrix[0]) if matrix else 0} "
                f"does not match {target.rank}x{source.rank}")
        self.source = source
        self.target = target
        self.matrix = matrix
        self.label = label
        self.row_pivots: Optional[list[tuple[int, int]]] = None
        self.col_pivots: Optional[list[tuple[int, int]]] = None
        self._divisors: Optional[list[int]] = None
        self._solver: Optional[snf.IntSolver] = None

    def __repr__(self) -> str:
        return f"<LatticeMap {self.source.rank}->{self.target.rank} [{self.label}]>"

    def check_equivariance(self) -> bool:
        for g in self.source.group.generators:
            lhs = snf.mat_mult(self.matrix, self.source.action(g))
            rhs = snf.mat_mult(self.target.action(g), self.matrix)
            if lhs != rhs:
                return False
        return True

    def compose(self, inner: "LatticeMap") -> "LatticeMap":
        if inner.target is not self.source:
            raise LatticeError("composition mismatch")
        return LatticeMap(inner.source, self.target,
                          snf.mat_mult(self.matrix, inner.matrix),
                          label=f"{self.label}*{inner.label}")

    def elementary_divisors(self) -> list[int]:
        if self._divisors is None:
            self._divisors = snf.elementary_divisors(self.matrix)
        return self._divisors

    def _verified_row_pivots(self) -> Optional[list[tuple[int, int]]]:
        p = self.row_pivots
        if p is None:
            return None
        cols = [c for _, c in p]
        if sorted(cols) != list(range(self.source.rank)):
            return None
        if len({r for r, _ in p}) != len(p):
            return None
        m = self.matrix
        for k, (r, c) in enumerate(p):
            if m[r][c] not in (1, -1):
                return None
            row = m[r]
            for _, c2 in p[k + 1:]:
                if row[c2] != 0:
                    return None
        return p

    def _verified_col_pivots(self) -> Optional[list[tuple[int, int]]]:
        p = self.col_pivots
        if p is None:
            return None
        rows = [r for r, _ in p]
        if sorted(rows) != list(range(self.target.rank)):
            return None
        if len({c for _, c in p}) != len(p):
            return None
        m = self.matrix
        for k, (r, c) in enumerate(p):
            if m[r][c] not in (1, -1):
                return None
            for r2, _ in p[k + 1:]:
                if m[r2][c] != 0:
                    return None
        return p

    def is_injective_saturated(self) -> bool:
        """Columns independent and image a direct summand of the target."""
        if self._verified_row_pivots() is not None:
            return True
        div = self.elementary_divisors()
        return len(div) == self.source.rank and all(d == 1 for d in div)

    def is_surjective(self) -> bool:
        if self._verified_col_pivots() is not None:
            return True
        div = self.elementary_divisors()
        return len(div) == self.target.rank and all(d == 1 for d in div)

    def solve(self, vec: list[int]) -> Optional[list[int]]:
        """Integer x with matrix.x = vec, or None."""
        pivots = self._verified_row_pivots()
        if pivots is not None:
            return self._solve_by_substitution(pivots, vec)
        if self._solver is None:
            self._solver = snf.IntSolver(self.matrix)
        return self._solver.solve(vec)

    def _solve_by_substitution(self, pivots, vec):
        m = self.matrix
        x = [0] * self.source.rank
        solved: list[tuple[int, int]] = []
        for r, c in pivots:
            s = vec[r]
            row = m[r]
            for _, c2 in solved:
                if row[c2]:
                    s -= row[c2] * x[c2]
            x[c] = s * m[r][c]  # pivot is +-1
            solved.append((r, c))
        # Verify on every row; the pivots only cover source.rank of them.
        for r, row in enumerate(m):
            s = 0
            for c, v in enumerate(row):
                if v and x[c]:
                    s += v * x[c]
            if s != vec[r]:
                return None
        return x


class LatticeSequence:
    """A two-map complex 0 -> A -> B -> C -> 0."""

    def __init__(self, inner: LatticeMap, outer: LatticeMap):
        if inner.target is not outer.source:
            raise LatticeError("inner.target must be outer.source")
        self.inner = inner
        self.outer = outer

    def __repr__(self) -> str:
        return (f"<LatticeSequence {self.inner.source.rank} -> "
                f"{self.inner.target.rank} -> {self.outer.target.rank}>")


class ExactnessReport:
    def __init__(self):
        self.composition_zero = False
        self.inner_injective_saturated = False
        self.outer_surjective = False
        self.rank_additive = False
        self.kernel_inside_image = False
        self.failures: list[str] = []

    @property
    def exact(self) -> bool:
        return not self.failures

    def __bool__(self) -> bool:
        return self.exact

    def to_json(self) -> dict:
        return {
            "exact": self.exact,
            "composition_zero": self.composition_zero,
            "inner_injective_saturated": self.inner_injective_saturated,
            "outer_surjective": self.outer_surjective,
            "rank_additive": self.rank_additive,
            "kernel_inside_image": self.kernel_inside_image,
            "failures": list(self.failures),
        }


def is_exact(seq: LatticeSequence) -> ExactnessReport:
    """Certify exactness of 0 -> A -> B -> C -> 0.

    The five recorded checks together are equivalent to exactness: the
    composition being zero gives image inside kernel; the outer kernel is
    saturated (C is torsion-free), so once the inner image is saturated of
    the same rank and contains a kernel basis, the two submodules agree.
    """
    rep = ExactnessReport()
    inner, outer = seq.inner, seq.outer

    comp = snf.mat_mult(outer.matrix, inner.matrix)
    rep.composition_zero = snf.is_zero_matrix(comp)
    if not rep.composition_zero:
        rep.failures.append("composition pi.iota is nonzero")

    rep.inner_injective_saturated = inner.is_injective_saturated()
    if not rep.inner_injective_saturated:
        rep.failures.append("inner map not injective with saturated image")

    rep.outer_surjective = outer.is_surjective()
    if not rep.outer_surjective:
        rep.failures.append("outer map not surjective over Z")

    rep.rank_additive = (inner.source.rank + outer.target.rank
                         == inner.target.rank)
    if not rep.rank_additive:
        rep.failures.append("ranks do not add up")

    if not rep.failures:
        rep.kernel_inside_image = True
        for k in snf.kernel_basis(outer.matrix):
            if inner.solve(k) is None:
                rep.kernel_inside_image = False
                rep.failures.append("outer kernel vector escapes inner image")
                break
    return rep


def is_faithful(lat: GLattice) -> bool:
    """True iff no nonidentity element acts as the identity (exhaustive)."""
    return not any(lat.acts_as_identity(g)
                   for g in range(1, lat.group.order))


def faithful_predicate_freepres(group: PermutationGroup, subgroup: Subgroup,
                                r: int) -> bool:
    """Theory oracle for the relation-module kernel: r >= 2 or H nontrivial."""
    return r >= 2 or subgroup.order > 1


def faithful_predicate_seq2(group: PermutationGroup,
                            subgroup: Subgroup) -> bool:
    """Theory oracle for the tensor-square kernel: trivial core, index >= 3."""
    return (normal_core(group, subgroup).is_trivial()
            and group.order // subgroup.order >= 3)


# --- the three named sequences -------------------------------------------

def _resolve_element(group: PermutationGroup, g) -> int:
    if isinstance(g, int):
        return g
    from .groups import parse_cycles
    perm = parse_cycles(g, group.degree) if isinstance(g, str) else tuple(g)
    perm = perm + tuple(range(len(perm), group.degree))
    return group.index[perm]


def _kernel_as_lattice(middle: GLattice, outer_matrix: list[list[int]],
                       label: str) -> tuple[GLattice, LatticeMap]:
    basis = snf.kernel_basis(outer_matrix, cols=middle.rank)
    rank = len(basis)
    kmat = [[basis[j][i] for j in range(rank)]
            for i in range(middle.rank)]
    solver = snf.IntSolver(kmat)
    gen_mats = []
    for g in middle.group.generators:
        moved = snf.mat_mult(middle.action(g), kmat)
        m = snf.zeros(rank, rank)
        for col in range(rank):
            x = solver.solve([moved[i][col] for i in range(middle.rank)])
            if x is None:
                raise LatticeError("kernel is not action-stable")
            for i, v in enumerate(x):
                m[i][col] = v
        gen_mats.append(m)
    kernel = GLattice(middle.group, rank, gen_mats, label=label)
    incl = LatticeMap(kernel, middle, kmat, label=f"{label}-embedding")
    incl._solver = solver
    return kernel, incl


def freepres_sequence(group: PermutationGroup, subgroup: Subgroup,
                      g_list: Iterable) -> LatticeSequence:
    """0 -> M -> Z[G]^r -> omega(G/H) -> 0 sending the i-th unit to the
    coset difference of the i-th chosen element."""
    alphas = [_resolve_element(group, g) for g in g_list]
    if group.closure(list(subgroup.members) + alphas) != frozenset(
            range(group.order)):
        raise LatticeError("does not generate")
    r = len(alphas)
    reg = coset_space(group, group.trivial_subgroup())
    regular = PermLattice(reg, label=f"Z[{group.name or 'G'}]")
    middle = direct_sum([regular] * r)
    cos = coset_space(group, subgroup)
    omega, _ = augmentation_kernel(cos)
    n = cos.size
    f = snf.zeros(n - 1, r * group.order)
    for i, alpha in enumerate(alphas):
        for c in range(group.order):
            g = reg.reps[c]
            c1 = cos.coset_of[group.mult(g, alpha)]
            c2 = cos.coset_of[g]
            col = i * group.order + c
            if c1 != 0:
                f[c1 - 1][col] += 1
            if c2 != 0:
                f[c2 - 1][col] -= 1
    kernel, incl = _kernel_as_lattice(middle, f, label="relation-module")
    outer = LatticeMap(middle, omega, f, label="coset-difference-map")
    return LatticeSequence(incl, outer)


def seq2_sequence(group: PermutationGroup,
                  subgroup: Subgroup) -> LatticeSequence:
    """0 -> omega^(x2) -> Z[ordered distinct coset pairs] -> omega -> 0.

    The middle term is a permutation lattice; the returned sequence also
    carries .pair_basis_iso, the unimodular equivariant identification of
    the pairs lattice with omega (x) Z[G/H] on the basis
    (coset_a - coset_b) (x) coset_b -> pair (a, b).
    """
    cos = coset_space(group, subgroup)
    n = cos.size
    if n < 2:
        raise LatticeError("index must be at least 2")
    perm = PermLattice(cos)
    omega, _ = augmentation_kernel(cos)
    pairs = PairsLattice(cos)
    pidx = pairs.pair_index
    t2 = tensor(omega, omega)

    iota = snf.zeros(pairs.rank, t2.rank)
    row_pivots = []
    diag_cols = []
    for i in range(1, n):
        for l in range(1, n):
            col = (i - 1) * (n - 1) + (l - 1)
            if i == l:
                iota[pidx[(0, i)]][col] -= 1
                iota[pidx[(i, 0)]][col] -= 1
                diag_cols.append((pidx[(i, 0)], col))
            else:
                iota[pidx[(i, l)]][col] += 1
                iota[pidx[(0, l)]][col] -= 1
                iota[pidx[(i, 0)]][col] -= 1
                row_pivots.append((pidx[(i, l)], col))
    inner = LatticeMap(t2, pairs, iota, label="tensor-square-embedding")
    inner.row_pivots = row_pivots + diag_cols

    pi = snf.zeros(n - 1, pairs.rank)
    for col, (a, b) in enumerate(pairs.pairs):
        if a != 0:
            pi[a - 1][col] += 1
        if b != 0:
            pi[b - 1][col] -= 1
    outer = LatticeMap(pairs, omega, pi, label="pair-difference-map")
    outer.col_pivots = [(a - 1, pidx[(a, 0)]) for a in range(1, n)]

    seq = LatticeSequence(inner, outer)

    mixed = tensor(omega, perm)
    m = snf.zeros(pairs.rank, mixed.rank)
    piv_a, piv_b, piv_c = [], [], []
    for i in range(1, n):
        for c in range(n):
            col = (i - 1) * n + c
            if c == 0:
                m[pidx[(i, 0)]][col] += 1
                piv_b.append((pidx[(i, 0)], col))
            elif c == i:
                m[pidx[(0, i)]][col] -= 1
                piv_c.append((pidx[(0, i)], col))
            else:
                m[pidx[(i, c)]][col] += 1
                m[pidx[(0, c)]][col] -= 1
                piv_a.append((pidx[(i, c)], col))
    iso = LatticeMap(mixed, pairs, m, label="pair-basis-identification")
    iso.row_pivots = piv_a + piv_b + piv_c
    seq.pair_basis_iso = iso
    return seq


def formanek_sequence(n: int) -> tuple[LatticeSequence, LatticeMap]:
    """0 -> K -> U (+) U^(x2) -> A -> 0 for the symmetric group on n points,
    where U is the natural lattice and A its augmentation kernel, with the
    map killing U and sending e_j (x) e_h to e_j - e_h.

    Also returns the unimodular equivariant isomorphism
    U (+) U (+) A^(x2) -> K assembled from the explicit kernel vectors
    e_i; e_i (x) e_i; (e_i - e_0) (x) (e_l - e_0).
    """
    if n < 2:
        raise LatticeError("need n >= 2")
    from .groups import symmetric_group
    G = symmetric_group(n)
    U = natural_perm_lattice(G)
    T = tensor(U, U)
    middle = direct_sum([U, T])
    A, _ = _omega_from_perm(U, lambda g, c: G.elements[g][c],
                            label=f"roots[{n - 1}]")
    f = snf.zeros(n - 1, middle.rank)
    for j in range(n):
        for h in range(n):
            col = n + j * n + h
            if j != 0:
                f[j - 1][col] += 1
            if h != 0:
                f[h - 1][col] -= 1
    kernel, incl = _kernel_as_lattice(middle, f, label="formanek-kernel")
    outer = LatticeMap(middle, A, f, label="tensor-difference-map")
    seq = LatticeSequence(incl, outer)

    src = direct_sum([U, U, tensor(A, A)])
    assembled: list[list[int]] = []
    for i in range(n):
        v = [0] * middle.rank
        v[i] = 1
        assembled.append(v)
    for i in range(n):
        v = [0] * middle.rank
        v[n + i * n + i] = 1
        assembled.append(v)
    for i in range(1, n):
        for l in range(1, n):
            v = [0] * middle.rank
            v[n + i * n + l] += 1
            v[n + l] -= 1
            v[n + i * n] -= 1
            v[n] += 1
            assembled.append(v)
    coords = []
    for v in assembled:
        x = incl.solve(v)
        if x is None:
            raise LatticeError("assembled vector is not in the kernel")
        coords.append(x)
    mat = [[coords[j][i] for j in range(len(coords))]
           for i in range(kernel.rank)]
    iso = LatticeMap(src, kernel, mat, label="kernel-decomposition")
    return seq, iso


# --- characters -----------------------------------------------------------

def character(lat: GLattice) -> Callable[[int], int]:
    """The trace class function of the lattice, as a callable on element
    indices."""
    return lat.character


def perm_character_decomposition(lat: GLattice,
                                 subgroups: Sequence[Subgroup],
                                 search_radius: int = 4
                                 ) -> Optional[list[int]]:
    """Nonnegative integers c_i with char(lat) = sum c_i char(Z[G/H_i]),
    or None if no such decomposition exists over the supplied list.

    Equality of characters pins the rational representation, so a hit
    certifies lat (x) Q is a permutation representation; it is only a
    necessary condition for lat itself being a permutation lattice.
    """
    G = lat.group
    reps = [c[0] for c in G.conjugacy_classes()]
    target = [lat.character(g) for g in reps]
    cols = []
    for H in subgroups:
        X = coset_space(G, H)
        cols.append([sum(1 for c in range(X.size) if X.act(g, c) == c)
                     for g in reps])
    a = [[cols[j][i] for j in range(len(subgroups))]
         for i in range(len(reps))]
    solver = snf.IntSolver(a)
    part = solver.solve(target)
    if part is None:
        return None
    free = snf.kernel_basis(a)
    if not free:
        return part if all(x >= 0 for x in part) else None
    # Bounded search over the solution affine sublattice for a nonneg point.
    from itertools import product
    for shifts in product(range(-search_radius, search_radius + 1),
                          repeat=len(free)):
        cand = list(part)
        for s, k in zip(shifts, free):
            for idx in range(len(cand)):
                cand[idx] += s * k[idx]
        if all(x >= 0 for x in cand):
            return cand
    return None


def solve_membership(target: list[int],
                     spanning: Sequence[list[int]]) -> Optional[list[int]]:
    """Exact integer coordinates of target in the span, or None."""
    if not spanning:
        return [] if all(v == 0 for v in target) else None
    m = len(target)
    if any(len(v) != m for v in spanning):
        raise LatticeError("spanning vectors have mixed lengths")
    a = [[v[i] for v in spanning] for i in range(m)]
    return snf.IntSolver(a).solve(target)
