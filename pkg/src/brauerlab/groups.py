"""Finite permutation groups, subgroups and coset spaces.

Groups are materialized: the element list is enumerated up front (BFS over
the generators) with a configurable order cap, and every element carries a
word in the generators so module-level code can extend generator data to
the whole group. Points are 0-based internally; cycle notation I/O is
1-based.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Iterable, Optional, Sequence


class GroupError(ValueError):
    pass


DEFAULT_ORDER_CAP = 10_080


def parse_cycles(text: str, degree: Optional[int] = None) -> tuple[int, ...]:
    """Parse 1-based cycle notation like "(1 2)(3 4 5)" into an image tuple.

    Commas and spaces both separate points. "()" is the identity.
    """
    text = text.strip()
    cycles: list[list[int]] = []
    maxpt = 0
    i = 0
    while i < len(text):
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch != "(":
            raise GroupError(f"unexpected character {ch!r} in cycle notation")
        j = text.index(")", i)
        body = text[i + 1 : j].replace(",", " ").split()
        pts = [int(tok) for tok in body]
        if any(p < 1 for p in pts):
            raise GroupError("points are 1-based")
        if len(set(pts)) != len(pts):
            raise GroupError(f"repeated point in cycle {text[i:j+1]}")
        if pts:
            cycles.append([p - 1 for p in pts])
            maxpt = max(maxpt, max(pts))
        i = j + 1
    if degree is None:
        degree = maxpt
    elif maxpt > degree:
        raise GroupError(f"cycle uses point {maxpt} beyond degree {degree}")
    img = list(range(degree))
    for cyc in cycles:
        for a, b in zip(cyc, cyc[1:] + cyc[:1]):
            img[a] = b
    return tuple(img)


def cycles_string(perm: Sequence[int]) -> str:
    """Inverse of parse_cycles; fixed points are omitted."""
    seen = [False] * len(perm)
    parts = []
    for start in range(len(perm)):
        if seen[start] or perm[start] == start:
            seen[start] = True
            continue
        cyc = []
        p = start
        while not seen[p]:
            seen[p] = True
            cyc.append(p + 1)
            p = perm[p]
        parts.append("(" + " ".join(str(x) for x in cyc) + ")")
    return "".join(parts) if parts else "()"


def _mult(a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, ...]:
    # (a*b)(i) = a(b(i)): apply b first.
    return tuple(a[i] for i in b)


def _inv(a: tuple[int, ...]) -> tuple[int, ...]:
    out = [0] * len(a)
    for i, j in enumerate(a):
        out[j] = i
    return tuple(out)


class PermutationGroup:
    """A materialized permutation group.

    elements[0] is always the identity. Each element stores the word
    (sequence of generator positions) that produced it during the BFS.
    """

    def __init__(self, generators: Iterable, degree: Optional[int] = None,
                 order_cap: int = DEFAULT_ORDER_CAP, name: str = ""):
        gens = []
        for g in generators:
            if isinstance(g, str):
                gens.append(parse_cycles(g, degree))
            else:
                gens.append(tuple(g))
        if degree is None:
            degree = max((len(g) for g in gens), default=1)
        gens = [g + tuple(range(len(g), degree)) for g in gens]
        for g in gens:
            if sorted(g) != list(range(degree)):
                raise GroupError(f"not a permutation of degree {degree}: {g}")
        self.degree = degree
        self.name = name
        ident = tuple(range(degree))
        self.elements: list[tuple[int, ...]] = [ident]
        self.index: dict[tuple[int, ...], int] = {ident: 0}
        self.words: list[tuple[int, ...]] = [()]
        # parents[i] = (parent element index, generator position) along the
        # BFS tree, so element i = parent * gens[pos]. parents[0] is None.
        self.parents: list[Optional[tuple[int, int]]] = [None]
        self.generators: list[int] = []
        # Insert generators first so their indices are stable and small.
        for pos, g in enumerate(gens):
            if g not in self.index:
                self.index[g] = len(self.elements)
                self.elements.append(g)
                self.words.append((pos,))
                self.parents.append((0, pos))
            self.generators.append(self.index[g])
        frontier = list(range(len(self.elements)))
        while frontier:
            nxt = []
            for ei in frontier:
                e = self.elements[ei]
                for pos, g in enumerate(gens):
                    prod = _mult(e, g)
                    if prod not in self.index:
                        if len(self.elements) >= order_cap:
                            raise GroupError(
                                f"order cap exceeded (cap={order_cap})")
                        self.index[prod] = len(self.elements)
                        self.elements.append(prod)
                        self.words.append(self.words[ei] + (pos,))
                        self.parents.append((ei, pos))
                        nxt.append(self.index[prod])
            frontier = nxt
        self.order = len(self.elements)
        self.identity = 0
        self.inverses = [self.index[_inv(e)] for e in self.elements]
        self._gen_perms = gens
        self._table: list[Optional[list[int]]] = [None] * self.order

    def __len__(self) -> int:
        return self.order

    def __repr__(self) -> str:
        label = self.name or "PermutationGroup"
        return f"<{label} of order {self.order} on {self.degree} points>"

    def mult(self, i: int, j: int) -> int:
        row = self._table[i]
        if row is not None:
            return row[j]
        return self.index[_mult(self.elements[i], self.elements[j])]

    def table_row(self, i: int) -> list[int]:
        row = self._table[i]
        if row is None:
            e = self.elements[i]
            row = [self.index[_mult(e, x)] for x in self.elements]
            self._table[i] = row
        return row

    @property
    def table(self) -> list[list[int]]:
        return [self.table_row(i) for i in range(self.order)]

    def inverse(self, i: int) -> int:
        return self.inverses[i]

    def conjugate(self, g: int, h: int) -> int:
        """g h g^-1 by index."""
        return self.mult(self.mult(g, h), self.inverses[g])

    def element_order(self, i: int) -> int:
        k, p = 1, i
        while p != 0:
            p = self.mult(p, i)
            k += 1
        return k

    def closure(self, seed: Iterable[int]) -> frozenset[int]:
        """Indices of the subgroup generated by the given element indices."""
        seed = list(seed)
        members = {0}
        frontier = [0]
        while frontier:
            nxt = []
            for x in frontier:
                for s in seed:
                    y = self.mult(x, s)
                    if y not in members:
                        members.add(y)
                        nxt.append(y)
            frontier = nxt
        return frozenset(members)

    def subgroup(self, generators: Iterable) -> "Subgroup":
        """Subgroup from generators given as indices, image tuples or cycle strings."""
        idxs = []
        for g in generators:
            if isinstance(g, int):
                idxs.append(g)
            else:
                perm = parse_cycles(g, self.degree) if isinstance(g, str) else tuple(g)
                perm = perm + tuple(range(len(perm), self.degree))
                if perm not in self.index:
                    raise GroupError(f"{cycles_string(perm)} is not in the group")
                idxs.append(self.index[perm])
        return Subgroup(self, self.closure(idxs), tuple(idxs))

    def trivial_subgroup(self) -> "Subgroup":
        return Subgroup(self, frozenset({0}), ())

    def full_subgroup(self) -> "Subgroup":
        return Subgroup(self, frozenset(range(self.order)), tuple(self.generators))

    def conjugacy_classes(self) -> list[list[int]]:
        seen = [False] * self.order
        classes = []
        for i in range(self.order):
            if seen[i]:
                continue
            orbit = {i}
            frontier = [i]
            while frontier:
                nxt = []
                for x in frontier:
                    for g in self.generators:
                        y = self.conjugate(g, x)
                        if y not in orbit:
                            orbit.add(y)
                            nxt.append(y)
                frontier = nxt
            for x in orbit:
                seen[x] = True
            classes.append(sorted(orbit))
        return classes

    def to_json(self) -> dict:
        return {
            "degree": self.degree,
            "generators": [cycles_string(self.elements[g]) for g in self.generators],
            "name": self.name,
        }

    @staticmethod
    def from_json(data: dict) -> "PermutationGroup":
        return PermutationGroup(data["generators"], degree=data["degree"],
                                name=data.get("name", ""))


class Subgroup:
    def __init__(self, parent: PermutationGroup, members: frozenset[int],
                 generators: tuple[int, ...] = ()):
        self.parent = parent
        self.members = members
        self.generators = generators
        if 0 not in members:
            raise GroupError("subgroup must contain the identity")

    @property
    def order(self) -> int:
        return len(self.members)

    @property
    def index_in_parent(self) -> int:
        return self.parent.order // self.order

    def __contains__(self, i: int) -> bool:
        return i in self.members

    def __eq__(self, other) -> bool:
        return (isinstance(other, Subgroup) and other.parent is self.parent
                and other.members == self.members)

    def __hash__(self) -> int:
        return hash((id(self.parent), self.members))

    def __repr__(self) -> str:
        return f"<Subgroup of order {self.order} and index {self.index_in_parent}>"

    def is_trivial(self) -> bool:
        return self.order == 1

    def conjugate_by(self, g: int) -> "Subgroup":
        G = self.parent
        return Subgroup(G, frozenset(G.conjugate(g, h) for h in self.members))

    def is_normal(self) -> bool:
        G = self.parent
        return all(G.conjugate(g, h) in self.members
                   for g in G.generators for h in self.members)

    def sorted_members(self) -> list[int]:
        return sorted(self.members)


def generate_group(generators: Iterable, degree: Optional[int] = None,
                   order_cap: int = DEFAULT_ORDER_CAP, name: str = "") -> PermutationGroup:
    return PermutationGroup(generators, degree=degree, order_cap=order_cap, name=name)


class CosetSpace:
    """Left cosets gH with lexicographically minimal representatives.

    Representatives are ordered by their image tuples, so the identity
    coset always comes first.
    """

    def __init__(self, group: PermutationGroup, subgroup: Subgroup):
        if subgroup.parent is not group:
            raise GroupError("subgroup belongs to a different group")
        self.group = group
        self.subgroup = subgroup
        order = group.order
        coset_of = [-1] * order
        reps: list[int] = []
        members = sorted(subgroup.members, key=lambda i: group.elements[i])
        by_tuple = sorted(range(order), key=lambda i: group.elements[i])
        for e in by_tuple:
            if coset_of[e] != -1:
                continue
            c = len(reps)
            reps.append(e)
            for h in members:
                coset_of[group.mult(e, h)] = c
        self.reps = reps
        self.coset_of = coset_of
        self.size = len(reps)

    def act(self, g: int, c: int) -> int:
        return self.coset_of[self.group.mult(g, self.reps[c])]

    def __repr__(self) -> str:
        return f"<CosetSpace with {self.size} cosets>"


def coset_space(group: PermutationGroup, subgroup: Subgroup) -> CosetSpace:
    return CosetSpace(group, subgroup)


def normal_core(group: PermutationGroup, subgroup: Subgroup) -> Subgroup:
    """The largest normal subgroup of `group` contained in `subgroup`."""
    core = set(subgroup.members)
    for g in range(group.order):
        if len(core) == 1:
            break
        conj = {group.conjugate(g, h) for h in core}
        core &= conj
    return Subgroup(group, frozenset(core))


def min_generators_rel(group: PermutationGroup, subgroup: Subgroup,
                       max_r: int = 6) -> tuple[int, tuple[int, ...]]:
    """Least r such that subgroup plus r extra elements generates the group.

    Exhaustive search with pruning: a candidate already inside the current
    closure can never grow it. The result bounds (from above) the minimal
    number of module generators of the relative augmentation ideal; the two
    can differ in principle, and callers treat this as a certified bound.
    """
    base = list(subgroup.members)
    if group.closure(base) == frozenset(range(group.order)):
        return 0, ()
    full = frozenset(range(group.order))

    def extend(closed: frozenset[int], chosen: tuple[int, ...], depth: int):
        if depth == 0:
            return None
        for g in range(1, group.order):
            if g in closed:
                continue
            bigger = group.closure(list(closed) + [g])
            if bigger == full:
                return chosen + (g,)
            if depth > 1:
                got = extend(bigger, chosen + (g,), depth - 1)
                if got is not None:
                    return got
        return None

    start = group.closure(base)
    for r in range(1, max_r + 1):
        got = extend(start, (), r)
        if got is not None:
            return r, got
    raise GroupError(f"no generating tuple of length <= {max_r} found")


def subgroups_up_to_conjugacy(group: PermutationGroup) -> list[Subgroup]:
    """One representative per conjugacy class of subgroups."""
    subs = all_subgroups(group)
    seen: set[frozenset[int]] = set()
    reps = []
    for h in subs:
        if h.members in seen:
            continue
        reps.append(h)
        for g in range(group.order):
            seen.add(frozenset(group.conjugate(g, x) for x in h.members))
    return reps


def all_subgroups(group: PermutationGroup) -> list[Subgroup]:
    """Every subgroup, by closure-extension search. Fine for small orders."""
    found: dict[frozenset[int], tuple[int, ...]] = {frozenset({0}): ()}
    frontier = [frozenset({0})]
    while frontier:
        nxt = []
        for s in frontier:
            gens = found[s]
            for g in range(1, group.order):
                if g in s:
                    continue
                t = group.closure(list(s) + [g])
                if t not in found:
                    found[t] = gens + (g,)
                    nxt.append(t)
        frontier = nxt
    subs = [Subgroup(group, s, found[s]) for s in found]
    subs.sort(key=lambda h: (h.order, h.sorted_members()))
    return subs


# --- standard constructions ---------------------------------------------

def cyclic_group(n: int) -> PermutationGroup:
    if n == 1:
        return PermutationGroup([], degree=1, name="C1")
    return PermutationGroup([tuple(range(1, n)) + (0,)], degree=n, name=f"C{n}")


def symmetric_group(n: int, order_cap: int = DEFAULT_ORDER_CAP) -> PermutationGroup:
    if n < 2:
        return PermutationGroup([], degree=max(n, 1), name=f"S{n}")
    gens = [(1, 0) + tuple(range(2, n)), tuple(range(1, n)) + (0,)]
    return PermutationGroup(gens, degree=n, order_cap=order_cap, name=f"S{n}")


def alternating_group(n: int) -> PermutationGroup:
    if n < 3:
        return PermutationGroup([], degree=max(n, 1), name=f"A{n}")
    three = parse_cycles("(1 2 3)", n)
    if n == 3:
        gens = [three]
    elif n % 2:
        gens = [three, tuple(range(1, n)) + (0,)]
    else:
        gens = [three, (0,) + tuple(range(2, n)) + (1,)]
    return PermutationGroup(gens, degree=n, name=f"A{n}")


def dihedral_group(n: int) -> PermutationGroup:
    """Dihedral group of order 2n acting on an n-gon."""
    rot = tuple(range(1, n)) + (0,)
    flip = tuple((n - i) % n for i in range(n))
    return PermutationGroup([rot, flip], degree=n, name=f"D{n}")


def quaternion_group() -> PermutationGroup:
    # Left-regular action with points labelled 1,i,-1,-i,j,-j,k,-k.
    gi = parse_cycles("(1 2 3 4)(5 7 6 8)", 8)
    gj = parse_cycles("(1 5 3 6)(2 8 4 7)", 8)
    return PermutationGroup([gi, gj], degree=8, name="Q8")


def direct_product(a: PermutationGroup, b: PermutationGroup, name: str = "") -> PermutationGroup:
    da = a.degree
    gens = [a.elements[g] + tuple(range(da, da + b.degree)) for g in a.generators]
    for g in b.generators:
        gens.append(tuple(range(da)) + tuple(x + da for x in b.elements[g]))
    return PermutationGroup(gens, degree=da + b.degree,
                            name=name or f"{a.name}x{b.name}")


def zm_x_z2(m: int) -> PermutationGroup:
    """Z/m x Z/2 on m+2 points: an m-cycle next to a transposition."""
    return direct_product(cyclic_group(m), cyclic_group(2), name=f"C{m}xC2")


@lru_cache(maxsize=None)
def builtin_family() -> tuple[PermutationGroup, ...]:
    """The small-group family used by the lattice regression sweeps."""
    c2 = cyclic_group(2)
    groups = (
        c2,
        cyclic_group(3),
        cyclic_group(4),
        cyclic_group(6),
        direct_product(cyclic_group(2), cyclic_group(2), name="C2xC2"),
        symmetric_group(3),
        dihedral_group(4),
        quaternion_group(),
        alternating_group(4),
        symmetric_group(4),
        direct_product(direct_product(cyclic_group(2), cyclic_group(2), name="C2xC2"),
                       c2, name="C2xC2xC2"),
    )
    return groups
