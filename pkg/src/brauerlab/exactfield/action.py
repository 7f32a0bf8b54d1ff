"""Semilinear group actions on free modules over rational function fields.

An automorphism of the coefficient field is a permutation of the variables,
a root-of-unity multiplier per variable, and a Galois twist zeta -> zeta^k.
A semilinear action pairs one such automorphism with a matrix per group
generator; the pair for an arbitrary element is assembled along the BFS
spanning tree of the group, and composition follows the twisted rule
(M, s)(N, t) = (M * s(N), s . t).

``invariant_basis_average`` produces a fixed-field basis of the invariants
by averaging multiplier * basis-vector over the group, sweeping multipliers
through monomials (times powers of zeta) of increasing degree until the
averages span.  Faithfulness of the field action is checked first because
the averaging argument is garbage without it.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Optional, Sequence, Union

from ..groups import PermutationGroup
from .cyclotomic import Cyc, ExactFieldError
from .linalg import Matrix, Vector, identity_matrix, mat_mul
from .poly import FieldElement, MultiPoly, PolyRing, _grevlex_key


class FieldAutomorphism:
    """Variable permutation with scalar multipliers plus zeta -> zeta^k."""

    __slots__ = ("ring", "targets", "scalars", "zeta_power")

    def __init__(self, ring: PolyRing, var_map: Optional[dict] = None, zeta_power: int = 1):
        n = ring.conductor
        if gcd(zeta_power % n if n > 1 else 1, n) != 1:
            raise ValueError("zeta exponent must be prime to the conductor")
        names = ring.variables
        targets = list(range(len(names)))
        scalars = [Cyc.one(n)] * len(names)
        for name, image in (var_map or {}).items():
            k = ring.var_index(name)
            if isinstance(image, str):
                targets[k] = ring.var_index(image)
            elif isinstance(image, tuple):
                target_name, scale = image
                targets[k] = ring.var_index(target_name)
                scalars[k] = ring.scalar_cyc(scale)
            else:
                scalars[k] = ring.scalar_cyc(image)
        if sorted(targets) != list(range(len(names))):
            raise ValueError("variable map is not a permutation")
        if any(s.is_zero() for s in scalars):
            raise ValueError("variable multiplier must be nonzero")
        self.ring = ring
        self.targets = tuple(targets)
        self.scalars = tuple(scalars)
        self.zeta_power = zeta_power % n if n > 1 else 1

    @classmethod
    def identity(cls, ring: PolyRing) -> "FieldAutomorphism":
        return cls(ring)

    def is_identity(self) -> bool:
        # stored zeta_power is already reduced mod the conductor, and the
        # only unit mod 1 or 2 is stored as 1
        return (
            self.zeta_power == 1
            and self.targets == tuple(range(len(self.targets)))
            and all(s.is_one() for s in self.scalars)
        )

    def __eq__(self, other):
        if not isinstance(other, FieldAutomorphism):
            return NotImplemented
        return (
            self.ring == other.ring
            and self.targets == other.targets
            and self.scalars == other.scalars
            and self.zeta_power == other.zeta_power
        )

    def __hash__(self):
        return hash((self.ring, self.targets, self.scalars, self.zeta_power))

    # -- application -------------------------------------------------------

    def apply_scalar(self, c: Cyc) -> Cyc:
        if self.ring.conductor == 1:
            return c
        return c.galois(self.zeta_power)

    def apply_poly(self, p: MultiPoly) -> MultiPoly:
        nvars = len(self.ring.variables)
        terms: dict = {}
        for exps, coeff in p.terms.items():
            c = self.apply_scalar(coeff)
            new = [0] * nvars
            for k, e in enumerate(exps):
                if e:
                    new[self.targets[k]] += e
                    c = c * self.scalars[k] ** e
            key = tuple(new)
            if key in terms:
                s = terms[key] + c
                if s.is_zero():
                    del terms[key]
                else:
                    terms[key] = s
            else:
                terms[key] = c
        return MultiPoly(p.ring, terms)

    def __call__(self, value: Union[FieldElement, MultiPoly, Cyc]) -> Union[FieldElement, MultiPoly, Cyc]:
        if isinstance(value, Cyc):
            return self.apply_scalar(value)
        if isinstance(value, MultiPoly):
            return self.apply_poly(value)
        if isinstance(value, FieldElement):
            return FieldElement(self.apply_poly(value.num), self.apply_poly(value.den))
        raise TypeError("cannot apply automorphism to this value")

    def compose(self, other: "FieldAutomorphism") -> "FieldAutomorphism":
        """self after other."""
        if self.ring != other.ring:
            raise ValueError("ring mismatch")
        n = len(self.targets)
        targets = [0] * n
        scalars = [Cyc.one(self.ring.conductor)] * n
        for v in range(n):
            mid = other.targets[v]
            targets[v] = self.targets[mid]
            scalars[v] = self.apply_scalar(other.scalars[v]) * self.scalars[mid]
        out = FieldAutomorphism.__new__(FieldAutomorphism)
        out.ring = self.ring
        out.targets = tuple(targets)
        out.scalars = tuple(scalars)
        nconductor = self.ring.conductor
        out.zeta_power = (self.zeta_power * other.zeta_power) % nconductor if nconductor > 1 else 1
        return out

    def __repr__(self):
        names = self.ring.variables
        bits = []
        for k, name in enumerate(names):
            t, s = self.targets[k], self.scalars[k]
            if t != k or not s.is_one():
                img = names[t] if s.is_one() else f"({s})*{names[t]}"
                bits.append(f"{name}->{img}")
        if self.zeta_power != 1 and self.ring.conductor > 2:
            bits.append(f"zeta->zeta^{self.zeta_power}")
        return f"FieldAutomorphism({', '.join(bits) or 'id'})"


SemilinearPair = tuple[Matrix, FieldAutomorphism]


class SemilinearAction:
    """Group action on a free module twisted by field automorphisms.

    ``gen_matrices[p]`` has columns the images of the basis vectors under
    generator p, entries FieldElement; ``gen_autos[p]`` is the matching field
    automorphism.  Vectors transform as x -> M * sigma(x).
    """

    def __init__(
        self,
        group: PermutationGroup,
        ring: PolyRing,
        basis: Sequence[str],
        gen_autos: Sequence[FieldAutomorphism],
        gen_matrices: Sequence[Matrix],
    ):
        if len(gen_autos) != len(group.generators) or len(gen_matrices) != len(group.generators):
            raise ValueError("need one automorphism and one matrix per generator")
        self.group = group
        self.ring = ring
        self.basis = tuple(basis)
        n = len(self.basis)
        for m in gen_matrices:
            if len(m) != n or any(len(row) != n for row in m):
                raise ValueError("generator matrix has wrong shape")
        self.gen_autos = list(gen_autos)
        self.gen_matrices = [
            [[ring.element(e) for e in row] for row in m] for m in gen_matrices
        ]
        self._pairs: dict[int, SemilinearPair] = {}

    def dim(self) -> int:
        return len(self.basis)

    def _compose_pairs(self, a: SemilinearPair, b: SemilinearPair) -> SemilinearPair:
        ma, sa = a
        mb, sb = b
        twisted = [[sa(entry) for entry in row] for row in mb]
        return mat_mul(ma, twisted, self.ring), sa.compose(sb)

    def element_pair(self, g: int) -> SemilinearPair:
        """Matrix and automorphism for group element index g."""
        if g in self._pairs:
            return self._pairs[g]
        if g == 0:
            pair = (identity_matrix(self.ring, self.dim()), FieldAutomorphism.identity(self.ring))
        else:
            parent, pos = self.group.parents[g]
            gen_pair = (self.gen_matrices[pos], self.gen_autos[pos])
            pair = self._compose_pairs(self.element_pair(parent), gen_pair)
        self._pairs[g] = pair
        return pair

    def act(self, g: int, vector: Vector) -> Vector:
        m, s = self.element_pair(g)
        twisted = [s(self.ring.element(x)) for x in vector]
        out = []
        for row in m:
            acc = self.ring.element(0)
            for entry, x in zip(row, twisted):
                if not entry.is_zero() and not x.is_zero():
                    acc = acc + entry * x
            out.append(acc)
        return out

    def check_homomorphism(self, pairs: Optional[list[tuple[int, int]]] = None) -> bool:
        """Verify pair(a*b) = pair(a) . pair(b) on the given element pairs.

        Defaults to all generator pairs plus generators against a few group
        elements; BFS assembly makes tree edges consistent automatically, so
        the content here is that the generator data respects the relations.
        """
        if pairs is None:
            pairs = []
            gens = self.group.generators
            sample = range(min(self.group.order, 8))
            for a in gens:
                for b in gens:
                    pairs.append((a, b))
                for b in sample:
                    pairs.append((a, b))
                    pairs.append((b, a))
        for a, b in pairs:
            ab = self.group.mult(a, b)
            ma, sa = self.element_pair(a)
            got_m, got_s = self._compose_pairs((ma, sa), self.element_pair(b))
            want_m, want_s = self.element_pair(ab)
            if got_s != want_s:
                return False
            for r1, r2 in zip(got_m, want_m):
                for x, y in zip(r1, r2):
                    if x != y:
                        return False
        return True

    def average(self, vector: Vector) -> Vector:
        """Sum of g . vector over the whole group; always invariant."""
        total = [self.ring.element(0)] * self.dim()
        for g in range(self.group.order):
            image = self.act(g, vector)
            total = [t + x for t, x in zip(total, image)]
        return total

    def is_invariant(self, vector: Vector) -> bool:
        vec = [self.ring.element(x) for x in vector]
        for p in range(len(self.group.generators)):
            g = self.group.generators[p]
            image = self.act(g, vec)
            if any(x != y for x, y in zip(image, vec)):
                return False
        return True


def _multiplier_sweep(ring: PolyRing, max_degree: int):
    """Monomials by increasing degree, times powers of zeta, in a fixed order."""
    nvars = len(ring.variables)
    zeta_powers = range(1) if ring.conductor == 1 else range(ring.conductor)

    def monomials_of_degree(d: int):
        if nvars == 0:
            if d == 0:
                yield ()
            return

        def rec(prefix, remaining, slots):
            if slots == 1:
                yield prefix + (remaining,)
                return
            for e in range(remaining + 1):
                yield from rec(prefix + (e,), remaining - e, slots - 1)

        yield from sorted(rec((), d, nvars), key=_grevlex_key)

    for d in range(max_degree + 1):
        for exps in monomials_of_degree(d):
            mono = MultiPoly(
                ring, {tuple(exps): Cyc.one(ring.conductor)}
            ) if nvars else ring.one()
            for p in zeta_powers:
                yield ring.element(mono * Cyc.zeta(ring.conductor, p))


def _rational_content_normalize(ring: PolyRing, vector: Vector) -> Vector:
    # scale by a rational only, so invariance is untouched
    nums: list[int] = []
    dens: list[int] = []
    for entry in vector:
        if not entry.is_polynomial():
            return vector
        for coeff in entry.num.terms.values():
            dens.append(coeff.den)
            for a in coeff.nums:
                if a:
                    nums.append(a)
    if not nums:
        return vector
    g = 0
    for a in nums:
        g = gcd(g, a)
    l = 1
    for d in dens:
        l = l * d // gcd(l, d)
    scale = Fraction(l, g)
    lead = next(x for x in vector if not x.is_zero())
    lead_coeff = lead.num.leading_coefficient()
    first = next(a for a in lead_coeff.nums if a)
    if first < 0:
        scale = -scale
    if scale == 1:
        return vector
    return [x * scale for x in vector]


def invariant_basis_average(
    action: SemilinearAction,
    max_degree: Optional[int] = None,
    normalize: bool = True,
) -> list[Vector]:
    """Basis of the invariants over the fixed field, found by averaging.

    Candidates are averages of multiplier * basis-vector with multipliers
    swept through monomials times zeta powers of increasing degree; a
    candidate is kept when it enlarges the span.  Raises "action not
    faithful" when a nonidentity element acts trivially on the field, and
    "averaging degenerate" when the sweep cannot reach full rank.
    """
    group = action.group
    ring = action.ring
    n = action.dim()
    for g in range(1, group.order):
        _, sigma = action.element_pair(g)
        if sigma.is_identity():
            raise ExactFieldError("action not faithful")
    if max_degree is None:
        max_degree = max(1, group.order)
    kept: list[Vector] = []
    echelon: list[Vector] = []

    def try_add(vec: Vector) -> bool:
        # Gaussian reduction of a working copy against the current span
        work = list(vec)
        for row in echelon:
            lead = next(i for i, x in enumerate(row) if not x.is_zero())
            if not work[lead].is_zero():
                factor = work[lead] / row[lead]
                work = [w - factor * r for w, r in zip(work, row)]
        if all(x.is_zero() for x in work):
            return False
        echelon.append(work)
        echelon.sort(key=lambda row: next(i for i, x in enumerate(row) if not x.is_zero()))
        return True

    zero = ring.element(0)
    for mult in _multiplier_sweep(ring, max_degree):
        for j in range(n):
            candidate = [zero] * n
            candidate[j] = mult
            avg = action.average(candidate)
            if all(x.is_zero() for x in avg):
                continue
            if try_add(avg):
                kept.append(_rational_content_normalize(ring, avg) if normalize else avg)
                if len(kept) == n:
                    return kept
    raise ExactFieldError("averaging degenerate")
