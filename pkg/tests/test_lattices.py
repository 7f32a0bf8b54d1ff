import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from brauerlab import snf
from brauerlab.groups import (
    coset_space,
    cyclic_group,
    direct_product,
    symmetric_group,
)
from brauerlab.lattices import (
    LatticeError,
    LatticeMap,
    LatticeSequence,
    augmentation_kernel,
    augmentation_map,
    direct_sum,
    faithful_predicate_freepres,
    faithful_predicate_seq2,
    formanek_sequence,
    freepres_sequence,
    is_exact,
    is_faithful,
    natural_perm_lattice,
    perm_character_decomposition,
    perm_lattice,
    seq2_sequence,
    solve_membership,
    sym2,
    sym2_projection,
    tensor,
    trivial_lattice,
    wedge2,
    wedge2_inclusion,
)


def stabilizer_cosets(n):
    """Cosets of the stabilizer of the last point in S_n."""
    G = symmetric_group(n)
    gens = ["(1 2)"] if n == 3 else ["(1 2)", "(" + " ".join(
        str(i) for i in range(1, n)) + ")"]
    H = G.subgroup(gens)
    assert H.order * n == G.order
    return G, H, coset_space(G, H)


def check_action_invariants(lat, pairs=200, seed=0, check_det=True):
    G = lat.group
    for a in G.generators:
        for b in G.generators:
            lhs = snf.mat_mult(lat.action(a), lat.action(b))
            assert lhs == lat.action(G.mult(a, b))
        if check_det:
            assert snf.det(lat.action(a)) in (1, -1)
    rng = random.Random(seed)
    for _ in range(pairs):
        a = rng.randrange(G.order)
        b = rng.randrange(G.order)
        lhs = snf.mat_mult(lat.action(a), lat.action(b))
        assert lhs == lat.action(G.mult(a, b))


def test_perm_lattice_ranks():
    G3, H3, X3 = stabilizer_cosets(3)
    assert perm_lattice(X3).rank == 3
    G5, H5, X5 = stabilizer_cosets(5)
    U5 = perm_lattice(X5)
    assert U5.rank == 5
    full = coset_space(G5, G5.full_subgroup())
    assert perm_lattice(full).rank == 1
    check_action_invariants(U5, pairs=1000)


def test_perm_lattice_matches_natural_character():
    G, H, X = stabilizer_cosets(5)
    U = perm_lattice(X)
    nat = natural_perm_lattice(G)
    for c in G.conjugacy_classes():
        g = c[0]
        assert U.character(g) == nat.character(g)


def test_augmentation_kernel():
    G, H, X = stabilizer_cosets(5)
    omega, emb = augmentation_kernel(X)
    assert omega.rank == 4
    assert emb.check_equivariance()
    aug = augmentation_map(emb.target)
    comp = aug.compose(emb)
    assert snf.is_zero_matrix(comp.matrix)
    check_action_invariants(omega)

    full = coset_space(G, G.full_subgroup())
    zero_omega, _ = augmentation_kernel(full)
    assert zero_omega.rank == 0


def test_tensor_wedge_sym_ranks():
    G, H, X = stabilizer_cosets(5)
    U = perm_lattice(X)
    A, _ = augmentation_kernel(X)
    assert tensor(U, U).rank == 25
    assert wedge2(A).rank == 6
    assert sym2(A).rank == 10
    check_action_invariants(wedge2(A), pairs=100)
    check_action_invariants(sym2(A), pairs=100)
    check_action_invariants(tensor(A, A), pairs=100)


def test_sym2_character_is_fixed_pair_count():
    # Trace of sym2 of the deleted-permutation lattice at a transposition
    # equals the number of fixed 2-subsets: C(3,2) + 1 = 4 for S5.
    G, H, X = stabilizer_cosets(5)
    A, _ = augmentation_kernel(X)
    S = sym2(A)
    t = G.index[(1, 0, 2, 3, 4)]
    assert S.character(t) == 4
    # and at a 5-cycle: fix = 0, fix(sq) = 0 -> ((0-1)^2 + 0 - 1)/2 = 0
    five = G.index[(1, 2, 3, 4, 0)]
    assert S.character(five) == 0


def test_wedge_sym_sequence_exact():
    G, H, X = stabilizer_cosets(5)
    A, _ = augmentation_kernel(X)
    sq = tensor(A, A)
    inner = wedge2_inclusion(A, sq)
    outer = sym2_projection(A, sq)
    assert inner.check_equivariance()
    assert outer.check_equivariance()
    rep = is_exact(LatticeSequence(inner, outer))
    assert rep.exact, rep.failures


def test_freepres_ranks_and_exactness():
    C3 = cyclic_group(3)
    seq = freepres_sequence(C3, C3.trivial_subgroup(), [C3.generators[0]])
    assert seq.inner.source.rank == 1
    rep = is_exact(seq)
    assert rep.exact, rep.failures

    G, H, X = stabilizer_cosets(3)
    seq = freepres_sequence(G, H, ["(1 2 3)"])
    assert seq.inner.source.rank == 4
    assert is_exact(seq).exact
    assert seq.inner.check_equivariance()
    assert seq.outer.check_equivariance()

    V = direct_product(cyclic_group(2), cyclic_group(2))
    seq = freepres_sequence(V, V.trivial_subgroup(), list(V.generators))
    assert seq.inner.source.rank == 5
    assert is_exact(seq).exact


def test_freepres_rejects_nongenerating():
    G = symmetric_group(3)
    with pytest.raises(LatticeError, match="does not generate"):
        freepres_sequence(G, G.trivial_subgroup(), ["(1 2 3)"])


def test_freepres_faithfulness_matches_predicate():
    # r = 1 with trivial H gives the norm sublattice: not faithful.
    C3 = cyclic_group(3)
    seq = freepres_sequence(C3, C3.trivial_subgroup(), [C3.generators[0]])
    assert is_faithful(seq.inner.source) is False
    assert faithful_predicate_freepres(C3, C3.trivial_subgroup(), 1) is False

    g = C3.generators[0]
    seq2c = freepres_sequence(C3, C3.trivial_subgroup(), [g, g])
    assert is_faithful(seq2c.inner.source) is True
    assert faithful_predicate_freepres(C3, C3.trivial_subgroup(), 2) is True

    G, H, X = stabilizer_cosets(3)
    seq = freepres_sequence(G, H, ["(1 2 3)"])
    assert is_faithful(seq.inner.source) is True
    assert faithful_predicate_freepres(G, H, 1) is True


def test_seq2_small():
    G, H, X = stabilizer_cosets(3)
    seq = seq2_sequence(G, H)
    assert (seq.inner.source.rank, seq.inner.target.rank,
            seq.outer.target.rank) == (4, 6, 2)
    rep = is_exact(seq)
    assert rep.exact, rep.failures
    assert seq.inner.check_equivariance()
    assert seq.outer.check_equivariance()

    C2 = cyclic_group(2)
    seq = seq2_sequence(C2, C2.trivial_subgroup())
    assert (seq.inner.source.rank, seq.inner.target.rank,
            seq.outer.target.rank) == (1, 2, 1)
    assert is_exact(seq).exact


def test_seq2_pair_basis_iso():
    G, H, X = stabilizer_cosets(3)
    seq = seq2_sequence(G, H)
    iso = seq.pair_basis_iso
    assert iso.source.rank == iso.target.rank == 6
    assert iso.is_injective_saturated()
    assert snf.det(iso.matrix) in (1, -1)
    assert iso.check_equivariance()
    # (coset_0 - coset_1) (x) coset_1 -> ordered pair (0, 1):
    # source coordinates put -1 on basis slot (i=1, c=1).
    n = 3
    col = (1 - 1) * n + 1
    image = [-iso.matrix[r][col] for r in range(iso.target.rank)]
    pairs_lat = iso.target
    expected = [0] * pairs_lat.rank
    expected[pairs_lat.pair_index[(0, 1)]] = 1
    assert image == expected


def test_seq2_faithfulness_predicate():
    G4 = symmetric_group(4)
    S3 = G4.subgroup(["(1 2)", "(1 2 3)"])
    assert faithful_predicate_seq2(G4, S3) is True
    X = coset_space(G4, S3)
    omega, _ = augmentation_kernel(X)
    assert is_faithful(tensor(omega, omega)) is True

    C2 = cyclic_group(2)
    assert faithful_predicate_seq2(C2, C2.trivial_subgroup()) is False
    C4 = cyclic_group(4)
    sq = C4.mult(C4.generators[0], C4.generators[0])
    H = C4.subgroup([sq])
    assert faithful_predicate_seq2(C4, H) is False
    Xc = coset_space(C4, H)
    om, _ = augmentation_kernel(Xc)
    assert is_faithful(tensor(om, om)) is False


def test_formanek_sequence():
    for n, krank in ((3, 10), (5, 26)):
        seq, iso = formanek_sequence(n)
        assert seq.inner.source.rank == krank == n * n + 1
        rep = is_exact(seq)
        assert rep.exact, rep.failures
        assert iso.source.rank == iso.target.rank == krank
        assert snf.det(iso.matrix) in (1, -1)
        assert iso.check_equivariance()
        assert seq.outer.check_equivariance()


def test_is_exact_negative_controls():
    G, H, X = stabilizer_cosets(3)
    seq = seq2_sequence(G, H)
    broken = LatticeMap(seq.outer.source, seq.outer.target,
                        snf.zeros(2, 6))
    rep = is_exact(LatticeSequence(seq.inner, broken))
    assert not rep.exact
    assert any("surjective" in msg for msg in rep.failures)

    # Drop a column from inner: ranks stop adding up.
    thin = [row[:-1] for row in seq.inner.matrix]
    small_src = trivial_lattice(G)
    with pytest.raises(LatticeError):
        LatticeMap(small_src, seq.inner.target, thin)


def test_is_faithful_basics():
    G, H, X = stabilizer_cosets(5)
    A, _ = augmentation_kernel(X)
    assert is_faithful(wedge2(A)) is True
    assert is_faithful(trivial_lattice(G)) is False

    G3, H3, X3 = stabilizer_cosets(3)
    A2, _ = augmentation_kernel(X3)
    assert is_faithful(wedge2(A2)) is False


def test_character_values():
    G, H, X = stabilizer_cosets(3)
    U = perm_lattice(X)
    t = G.index[(1, 0, 2)]
    assert U.character(t) == 1
    assert U.character(0) == 3


def test_perm_character_decomposition_q_lattice():
    G, H, X = stabilizer_cosets(5)
    A, _ = augmentation_kernel(X)
    U = perm_lattice(X)
    Q = direct_sum([sym2(A), U, trivial_lattice(G)])
    assert Q.rank == 16
    cands = [
        G.subgroup(["(1 2)", "(3 4)", "(3 4 5)"]),  # pair x complement
        G.subgroup(["(1 2)", "(1 2 3 4)"]),         # point stabilizer
        G.full_subgroup(),
    ]
    assert cands[0].order == 12
    coeffs = perm_character_decomposition(Q, cands)
    assert coeffs == [1, 1, 1]


def test_perm_character_decomposition_sign_fails():
    G, H, X = stabilizer_cosets(3)
    A, _ = augmentation_kernel(X)
    sign = wedge2(A)
    t = G.index[(1, 0, 2)]
    assert sign.character(t) == -1
    cands = [G.subgroup(["(1 2)"]), G.full_subgroup(),
             G.trivial_subgroup()]
    assert perm_character_decomposition(sign, cands) is None


def test_solve_membership():
    assert solve_membership([1, 1], [[1, 0], [0, 1]]) == [1, 1]
    assert solve_membership([1, 0], [[2, 0]]) is None
    assert solve_membership([0, 0], []) == []
    assert solve_membership([1], []) is None


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 23), st.integers(0, 23))
def test_action_multiplicative_property(i, j):
    G = symmetric_group(4)
    H = G.subgroup(["(1 2)", "(1 2 3)"])
    omega, _ = augmentation_kernel(coset_space(G, H))
    lhs = snf.mat_mult(omega.action(i), omega.action(j))
    assert lhs == omega.action(G.mult(i, j))
