"""Factor sets for the generic division algebra as Laurent monomials.

A monomial lives in the free abelian group on the matrix variables z_ij
(one per ordered pair, diagonal included) and the diagonal primes z'_ii.
Written additively these groups are the permutation lattices U_n^(x2) and
U_n, so factor-set identities become integer linear algebra: equivariance
and the cocycle condition are checked entrywise, and membership of a
monomial in the antisymmetric sublattice is an exact integer solve.

Index convention is 1-based to match the classical c_ijh notation.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Optional

from . import snf
from .groups import PermutationGroup, Subgroup, coset_space, cycles_string
from .lattices import (
    augmentation_kernel,
    direct_sum,
    perm_character_decomposition,
    perm_lattice,
    sym2,
    trivial_lattice,
)


class FactorSetError(ValueError):
    pass


class FactorSetMonomial:
    """Laurent monomial in z_ij (pairs) and z'_ii (primes)."""

    __slots__ = ("n", "pairs", "primes")

    def __init__(self, n: int, pairs: Optional[dict] = None,
                 primes: Optional[dict] = None):
        self.n = n
        self.pairs = {k: v for k, v in (pairs or {}).items() if v}
        self.primes = {k: v for k, v in (primes or {}).items() if v}
        for (i, j) in self.pairs:
            if not (1 <= i <= n and 1 <= j <= n):
                raise FactorSetError(f"pair index {(i, j)} out of range")
        for i in self.primes:
            if not (1 <= i <= n):
                raise FactorSetError(f"prime index {i} out of range")

    @staticmethod
    def variable(n: int, i: int, j: int, e: int = 1) -> "FactorSetMonomial":
        return FactorSetMonomial(n, {(i, j): e})

    def __mul__(self, other: "FactorSetMonomial") -> "FactorSetMonomial":
        pairs = dict(self.pairs)
        for k, v in other.pairs.items():
            pairs[k] = pairs.get(k, 0) + v
        primes = dict(self.primes)
        for k, v in other.primes.items():
            primes[k] = primes.get(k, 0) + v
        return FactorSetMonomial(self.n, pairs, primes)

    def __pow__(self, e: int) -> "FactorSetMonomial":
        return FactorSetMonomial(
            self.n,
            {k: v * e for k, v in self.pairs.items()},
            {k: v * e for k, v in self.primes.items()})

    def inverse(self) -> "FactorSetMonomial":
        return self ** -1

    def __eq__(self, other) -> bool:
        return (isinstance(other, FactorSetMonomial) and self.n == other.n
                and self.pairs == other.pairs and self.primes == other.primes)

    def __hash__(self) -> int:
        return hash((self.n, tuple(sorted(self.pairs.items())),
                     tuple(sorted(self.primes.items()))))

    def is_trivial(self) -> bool:
        return not self.pairs and not self.primes

    def apply_perm(self, perm: tuple[int, ...]) -> "FactorSetMonomial":
        """Relabel indices by a 0-based image tuple (degree n)."""
        return FactorSetMonomial(
            self.n,
            {(perm[i - 1] + 1, perm[j - 1] + 1): v
             for (i, j), v in self.pairs.items()},
            {perm[i - 1] + 1: v for i, v in self.primes.items()})

    def exponent_tensor(self) -> list[int]:
        """Pair exponents as a vector over the u_i (x) u_j basis."""
        out = [0] * (self.n * self.n)
        for (i, j), v in self.pairs.items():
            out[(i - 1) * self.n + (j - 1)] = v
        return out

    def __str__(self) -> str:
        if self.is_trivial():
            return "1"
        bits = []
        for (i, j), v in sorted(self.pairs.items()):
            bits.append(f"z{i}{j}" if v == 1 else f"z{i}{j}^{v}")
        for i, v in sorted(self.primes.items()):
            bits.append(f"z'{i}{i}" if v == 1 else f"z'{i}{i}^{v}")
        return "*".join(bits)

    def to_json(self) -> dict:
        return {
            "pairs": {f"{i},{j}": v for (i, j), v in sorted(self.pairs.items())},
            "primes": {str(i): v for i, v in sorted(self.primes.items())},
        }


class FactorSet:
    """A complete triple-indexed table of monomials."""

    def __init__(self, n: int, entries: dict):
        self.n = n
        self.entries = entries
        expected = n ** 3
        if len(entries) != expected:
            raise FactorSetError(
                f"need all {expected} triples, got {len(entries)}")

    def __getitem__(self, triple) -> FactorSetMonomial:
        return self.entries[triple]

    def triples(self):
        return self.entries.keys()

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "entries": {f"{i},{j},{h}": m.to_json()
                        for (i, j, h), m in sorted(self.entries.items())},
        }


def udn_factor_set(n: int) -> FactorSet:
    """The standard factor set c_ijh = z_ij z_jh z_ih^-1."""
    if n < 2:
        raise FactorSetError("need n >= 2")
    entries = {}
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            for h in range(1, n + 1):
                m = FactorSetMonomial(n, {})
                for key, e in (((i, j), 1), ((j, h), 1), ((i, h), -1)):
                    m = m * FactorSetMonomial(n, {key: e})
                entries[(i, j, h)] = m
    return FactorSet(n, entries)


def normalized_factor_set(n: int) -> FactorSet:
    """(c_ijh / c_hji)^((n+1)/2): kills the diagonal part and lands in the
    antisymmetric sublattice, at the price of passing to an odd power."""
    if n % 2 == 0:
        raise FactorSetError("n must be odd")
    if n < 3:
        raise FactorSetError("need n >= 3")
    c = udn_factor_set(n)
    e = (n + 1) // 2
    entries = {}
    for (i, j, h), m in c.entries.items():
        entries[(i, j, h)] = (m * c[(h, j, i)].inverse()) ** e
    return FactorSet(n, entries)


class CheckCertificate:
    def __init__(self, kind: str):
        self.kind = kind
        self.checked = 0
        self.failures: list = []

    @property
    def ok(self) -> bool:
        return self.checked > 0 and not self.failures

    def __bool__(self) -> bool:
        return self.ok

    def to_json(self) -> dict:
        return {"kind": self.kind, "ok": self.ok, "checked": self.checked,
                "failures": [list(f) for f in self.failures[:20]]}


def _sn_generators(n: int) -> list[tuple[int, ...]]:
    swap = (1, 0) + tuple(range(2, n))
    cyc = tuple(range(1, n)) + (0,)
    return [swap, cyc] if n > 2 else [swap]


def check_equivariance(fs: FactorSet) -> CheckCertificate:
    """sigma(c_ijh) = c_{sigma(i) sigma(j) sigma(h)} for generators of S_n."""
    cert = CheckCertificate("equivariance")
    for perm in _sn_generators(fs.n):
        label = cycles_string(perm)
        for (i, j, h), m in fs.entries.items():
            cert.checked += 1
            lhs = m.apply_perm(perm)
            rhs = fs[(perm[i - 1] + 1, perm[j - 1] + 1, perm[h - 1] + 1)]
            if lhs != rhs:
                cert.failures.append((label, i, j, h))
    return cert


def check_cocycle(fs: FactorSet) -> CheckCertificate:
    """c_ijl c_jhl = c_ihl c_ijh for all quadruples (the associativity
    identity of Brauer factor sets, multiplicative form)."""
    cert = CheckCertificate("cocycle")
    n = fs.n
    rng = range(1, n + 1)
    for i in rng:
        for j in rng:
            for h in rng:
                for l in rng:
                    cert.checked += 1
                    lhs = fs[(i, j, l)] * fs[(j, h, l)]
                    rhs = fs[(i, h, l)] * fs[(i, j, h)]
                    if lhs != rhs:
                        cert.failures.append((i, j, h, l))
    return cert


def is_reduced(fs: FactorSet) -> bool:
    """Adopted definition: c_iij = c_ijj = 1 for all i, j."""
    rng = range(1, fs.n + 1)
    return all(fs[(i, i, j)].is_trivial() and fs[(i, j, j)].is_trivial()
               for i in rng for j in rng)


def is_normalized(fs: FactorSet) -> bool:
    """Adopted definition: reduced and c_ijh * c_hji = 1."""
    if not is_reduced(fs):
        return False
    rng = range(1, fs.n + 1)
    return all((fs[(i, j, h)] * fs[(h, j, i)]).is_trivial()
               for i in rng for j in rng for h in rng)


def _wedge_vector(n: int, a: int, b: int, c: int, d: int) -> list[int]:
    """(u_a - u_b) ^ (u_c - u_d) in u (x) u coordinates (1-based)."""
    out = [0] * (n * n)

    def tick(i, j, v):
        out[(i - 1) * n + (j - 1)] += v

    for (x, sx) in ((a, 1), (b, -1)):
        for (y, sy) in ((c, 1), (d, -1)):
            tick(x, y, sx * sy)
            tick(y, x, -sx * sy)
    return out


@lru_cache(maxsize=None)
def _wedge_solver(n: int):
    """Solver over the basis (u_i - u_1) ^ (u_j - u_1), 2 <= i < j."""
    basis_keys = [(i, j) for i in range(2, n + 1)
                  for j in range(i + 1, n + 1)]
    cols = [_wedge_vector(n, i, 1, j, 1) for (i, j) in basis_keys]
    mat = [[col[r] for col in cols] for r in range(n * n)]
    return basis_keys, snf.IntSolver(mat)


def wedge_membership(m: FactorSetMonomial) -> Optional[dict]:
    """Integer coordinates of the exponent tensor over spanning wedges
    (u_i - u_j) ^ (u_l - u_m), or None if it is not in the sublattice.

    The returned dict maps ((i, j), (l, m)) to a coefficient; only the
    canonical spanning elements ((i, 1), (j, 1)) appear with nonzero
    coefficient, which is still a coordinate vector over the full spanning
    set since every other entry is 0.
    """
    if m.primes or any(i == j for (i, j) in m.pairs):
        raise FactorSetError("diagonal variables present")
    basis_keys, solver = _wedge_solver(m.n)
    x = solver.solve(m.exponent_tensor())
    if x is None:
        return None
    return {((i, 1), (j, 1)): v
            for (i, j), v in zip(basis_keys, x) if v}


def expand_wedge_coordinates(n: int, coords: dict) -> list[int]:
    """Rebuild the exponent tensor from wedge_membership output."""
    out = [0] * (n * n)
    for ((a, b), (c, d)), v in coords.items():
        vec = _wedge_vector(n, a, b, c, d)
        for r in range(n * n):
            out[r] += v * vec[r]
    return out


def y_generators(group: PermutationGroup, subgroup: Subgroup
                 ) -> tuple[list[list[int]], CheckCertificate]:
    """All (coset_i - coset_j) (x) (coset_j - coset_h) in the tensor square
    of the augmentation kernel, with a spanning certificate (elementary
    divisors of the coordinate matrix all 1 at full rank)."""
    cos = coset_space(group, subgroup)
    n = cos.size
    rank = (n - 1) ** 2

    def bvec(a, b):
        # coset_a - coset_b over the difference basis
        v = [0] * (n - 1)
        if a != 0:
            v[a - 1] += 1
        if b != 0:
            v[b - 1] -= 1
        return v

    vecs = []
    for i in range(n):
        for j in range(n):
            for h in range(n):
                left = bvec(i, j)
                right = bvec(j, h)
                vecs.append([lv * rv for lv in left for rv in right])
    cert = CheckCertificate("y-spanning")
    cert.checked = len(vecs)
    mat = [[v[r] for v in vecs] for r in range(rank)]
    div = snf.elementary_divisors(mat)
    if len(div) != rank or any(d != 1 for d in div):
        cert.failures.append(("divisors", div))
    return vecs, cert


def _q_candidates(G: PermutationGroup, n: int) -> list[Subgroup]:
    two_sub = ["(1 2)"]
    if n - 2 >= 2:
        two_sub.append("(3 4)")
    if n - 2 >= 3:
        two_sub.append("(" + " ".join(str(i) for i in range(3, n + 1)) + ")")
    point = ["(1 2)"]
    if n - 1 >= 3:
        point.append("(" + " ".join(str(i) for i in range(1, n)) + ")")
    return [G.subgroup(two_sub), G.subgroup(point), G.full_subgroup()]


def field_of_definition_report(n: int) -> dict:
    """Bookkeeping for where the generic degree-n division algebra is
    defined: the transcendence degree of the antisymmetric invariant field
    and the rationality certificate for the complementary lattice."""
    if n % 2 == 0 or n < 5:
        raise FactorSetError("n must be odd and at least 5")
    from .groups import symmetric_group
    G = symmetric_group(n)
    cands = _q_candidates(G, n)
    # stabilizer cosets realize U_n; its augmentation kernel is the
    # deleted-sum lattice
    X = coset_space(G, cands[1])
    U = perm_lattice(X)
    A, _ = augmentation_kernel(X)
    Q = direct_sum([sym2(A), U, trivial_lattice(G)])
    coeffs = perm_character_decomposition(Q, cands)
    trdeg = (n - 1) * (n - 2) // 2
    m = n * (n + 1) // 2 + 1
    return {
        "n": n,
        "invariant_field_trdeg": trdeg,
        "wedge_rank": trdeg,
        "complement_rank": Q.rank,
        "x_variable_count": m,
        "t_variable_count": n - 1,
        "q_candidates": ["pair-stabilizer", "point-stabilizer", "full"],
        "q_candidate_orders": [h.order for h in cands],
        "q_permutation_coefficients": coeffs,
        "q_rationally_permutation": coeffs is not None,
    }
