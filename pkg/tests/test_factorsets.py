import random

import pytest

from brauerlab.factorsets import (
    FactorSetError,
    FactorSetMonomial,
    check_cocycle,
    check_equivariance,
    expand_wedge_coordinates,
    field_of_definition_report,
    is_normalized,
    is_reduced,
    normalized_factor_set,
    udn_factor_set,
    wedge_membership,
    y_generators,
)
from brauerlab.groups import cyclic_group, symmetric_group


def test_udn_entries():
    c = udn_factor_set(3)
    assert c[(1, 2, 3)] == FactorSetMonomial(3, {(1, 2): 1, (2, 3): 1,
                                                 (1, 3): -1})
    assert c[(1, 1, 1)] == FactorSetMonomial(3, {(1, 1): 1})
    # c_iih and c_ijj collapse to a diagonal variable
    assert c[(2, 2, 3)] == FactorSetMonomial(3, {(2, 2): 1})
    assert c[(1, 3, 3)] == FactorSetMonomial(3, {(3, 3): 1})


def test_udn_cocycle_identity():
    for n in (2, 3, 4, 5, 6, 7):
        cert = check_cocycle(udn_factor_set(n))
        assert cert.ok
        assert cert.checked == n ** 4


def test_normalized_entries():
    cp = normalized_factor_set(5)
    m = cp[(1, 2, 3)]
    assert m.pairs == {(1, 2): 3, (2, 1): -3, (2, 3): 3, (3, 2): -3,
                       (3, 1): 3, (1, 3): -3}
    # degenerate triples vanish
    assert cp[(1, 2, 1)].is_trivial()
    assert cp[(2, 2, 4)].is_trivial()
    assert cp[(3, 5, 5)].is_trivial()
    with pytest.raises(FactorSetError, match="odd"):
        normalized_factor_set(4)


def test_reduced_and_normalized_predicates():
    assert is_reduced(udn_factor_set(5)) is False
    cp = normalized_factor_set(5)
    assert is_reduced(cp) is True
    assert is_normalized(cp) is True
    for (i, j, h) in ((1, 2, 3), (4, 2, 5), (1, 5, 2)):
        assert (cp[(i, j, h)] * cp[(h, j, i)]).is_trivial()


def test_equivariance():
    assert check_equivariance(udn_factor_set(5)).ok
    assert check_equivariance(normalized_factor_set(5)).ok

    broken = udn_factor_set(3)
    broken.entries[(1, 2, 3)] = FactorSetMonomial(3, {(1, 2): 2})
    cert = check_equivariance(broken)
    assert not cert.ok
    assert any(f[1:] == (1, 2, 3) or f[1:] != () for f in cert.failures)


def test_cocycle_negative_control():
    broken = udn_factor_set(3)
    broken.entries[(1, 2, 3)] = FactorSetMonomial(3, {(1, 2): 2})
    assert not check_cocycle(broken).ok


def test_wedge_membership_of_normalized_entries():
    cp = normalized_factor_set(5)
    m = cp[(1, 2, 3)]
    coords = wedge_membership(m)
    assert coords is not None
    assert expand_wedge_coordinates(5, coords) == m.exponent_tensor()
    # the single spanning wedge (u1-u2)^(u2-u3), cubed, also matches
    assert expand_wedge_coordinates(
        5, {((1, 2), (2, 3)): 3}) == m.exponent_tensor()


def test_wedge_membership_rejections():
    z12 = FactorSetMonomial(5, {(1, 2): 1})
    assert wedge_membership(z12) is None
    empty = FactorSetMonomial(5)
    assert wedge_membership(empty) == {}
    with pytest.raises(FactorSetError, match="diagonal"):
        wedge_membership(FactorSetMonomial(5, {(2, 2): 1}))
    with pytest.raises(FactorSetError, match="diagonal"):
        wedge_membership(FactorSetMonomial(5, {}, {1: 1}))


def test_wedge_membership_random_roundtrip():
    rng = random.Random(7)
    n = 5
    keys = [(i, j) for i in range(2, n + 1) for j in range(i + 1, n + 1)]
    for _ in range(25):
        coords = {((i, 1), (j, 1)): rng.randint(-3, 3) for (i, j) in keys}
        tensorv = expand_wedge_coordinates(n, coords)
        m = FactorSetMonomial(
            n, {(i + 1, j + 1): tensorv[i * n + j]
                for i in range(n) for j in range(n) if i != j})
        got = wedge_membership(m)
        assert got is not None
        assert expand_wedge_coordinates(n, got) == tensorv
    # perturb antisymmetry -> must be rejected
    bad = FactorSetMonomial(n, {(1, 2): 1, (2, 1): 1})
    assert wedge_membership(bad) is None


def test_membership_implies_antisymmetric_zero_rowsums():
    cp = normalized_factor_set(5)
    for triple in ((1, 2, 3), (2, 5, 4), (1, 4, 2)):
        t = cp[triple].exponent_tensor()
        n = 5
        for i in range(n):
            assert t[i * n + i] == 0
            assert sum(t[i * n + j] for j in range(n)) == 0
            for j in range(n):
                assert t[i * n + j] == -t[j * n + i]


def test_y_generators_span():
    G = symmetric_group(3)
    H = G.subgroup(["(1 2)"])
    vecs, cert = y_generators(G, H)
    assert cert.ok
    assert len(vecs) == 27
    C2 = cyclic_group(2)
    vecs, cert = y_generators(C2, C2.trivial_subgroup())
    assert cert.ok
    assert any(v != [0] for v in vecs)


def test_field_of_definition_report():
    rep = field_of_definition_report(5)
    assert rep["invariant_field_trdeg"] == 6
    assert rep["x_variable_count"] == 16
    assert rep["complement_rank"] == 16
    assert rep["t_variable_count"] == 4
    assert rep["q_permutation_coefficients"] == [1, 1, 1]
    assert rep["q_rationally_permutation"] is True
    with pytest.raises(FactorSetError):
        field_of_definition_report(4)
    with pytest.raises(FactorSetError):
        field_of_definition_report(3)
