import itertools
from fractions import Fraction

import pytest

from brauerlab.crossed import (
    CrossedAlgebra,
    CrossedError,
    DecompositionCertificate,
    KummerField,
    SymbolAlgebra,
    bergman_power,
    crossed_from_data,
    crossed_from_json,
    cyclic_to_symbol,
    decompose,
    generic_cyclic_algebra,
    instance_from_symbol,
    rationalize_symbol_params,
    specialize_decomposition,
    standard_ring,
    symbol_algebra,
    tensor_brauer,
)
from brauerlab.exactfield import PolyRing


def rational_ring():
    return PolyRing((), 4)


def symbolic_ring():
    return PolyRing(("a1", "a2", "t", "lam"), 4)


def symbolic_gens(ring):
    return [ring.element(ring.var(v)) for v in ("a1", "a2", "t", "lam")]


# ---------------------------------------------------------------- symbol algebras


def test_symbol_algebra_relations():
    ring = rational_ring()
    S = symbol_algebra(ring.element(3), ring.element(5), 4, ring=ring)
    assert S.dim == 16
    x, y = S.x(), S.y()
    assert S.equal(S.power(x, 4), {(0, 0): ring.element(3)})
    assert S.equal(S.power(y, 4), {(0, 0): ring.element(5)})
    lhs = S.mul(x, y)
    rhs = S.mul(y, x)
    assert S.equal(lhs, {k: c * S.zeta for k, c in rhs.items()})


def test_symbol_algebra_zero_parameter():
    ring = rational_ring()
    with pytest.raises(CrossedError, match="zero parameter"):
        symbol_algebra(ring.element(0), ring.element(5), 2, ring=ring)


def test_symbol_algebra_structure_protocol():
    ring = rational_ring()
    S = symbol_algebra(ring.element(2), ring.element(3), 2, ring=ring)
    assert S.basis_count == 4
    assert S.degree == 2
    one = S.one_coords()
    assert one[0].is_one() and all(c.is_zero() for c in one[1:])
    # x*y lands on the x*y basis slot with coefficient 1
    prod = S.basis_product(2, 1)
    assert prod[3].is_one()


# ---------------------------------------------------------------- kummer field


def test_kummer_inverse_symbolic():
    ring = symbolic_ring()
    a1, a2, t, lam = symbolic_gens(ring)
    K = KummerField(ring, 2, a1, a2)
    w = K.from_pair(t, ring.element(1))
    inv = K.inverse(w)
    assert K.equal(K.mul(w, inv), K.one())
    mixed = K.add(K.alpha1(), K.alpha2())
    assert K.equal(K.mul(mixed, K.inverse(mixed)), K.one())


def test_kummer_zero_divisor_rejected():
    # a2 = 4 makes al2 - 2 a zero divisor: its quadratic norm vanishes
    ring = rational_ring()
    K = KummerField(ring, 2, ring.element(3), ring.element(4))
    bad = K.from_pair(ring.element(-2), ring.element(1))
    with pytest.raises(CrossedError, match="not invertible"):
        K.inverse(bad)


# ---------------------------------------------------------------- multiplication law


def test_crossed_mult_matches_symbol_embedding():
    # independent oracle: al1 = x^2, al2 = y^2, z1 = (al2 + t) y^-1,
    # z2 = lam x inside x^4 = e, y^4 = g, xy = zeta_4 yx reproduce every
    # basis-pair product of the structure-constant algebra
    ring = rational_ring()
    e, g, t, lam = 3, 5, 2, 7
    A = instance_from_symbol(2, e, g, t, lam, ring=ring, check="none")
    S = SymbolAlgebra(ring, e, g, 4)
    one = ring.element(1)
    y_inv = S.mul(S.y(3), {(0, 0): ring.element(Fraction(1, g))})
    assert S.equal(S.mul(S.y(), y_inv), S.one())
    al1 = S.power(S.x(), 2)
    al2 = S.power(S.y(), 2)
    w = S.add(al2, {(0, 0): ring.element(t)})
    z1 = S.mul(w, y_inv)
    z2 = {k: c * lam for k, c in S.x().items()}

    images = {}
    for (i, j, k, l) in itertools.product(range(2), repeat=4):
        term = S.one()
        for base, count in ((al1, i), (al2, j), (z1, k), (z2, l)):
            for _ in range(count):
                term = S.mul(term, base)
        images[(i, j, k, l)] = term

    def embed(elem):
        out = S.zero()
        for (k, l), coeff in elem.items():
            for (i, j), c in coeff.items():
                out = S.add(out, {key: cc * c for key, cc in images[(i, j, k, l)].items()})
        return out

    monos = list(itertools.product(range(2), repeat=4))
    for a, b in itertools.product(monos, monos):
        ea = {(a[2], a[3]): {(a[0], a[1]): one}}
        eb = {(b[2], b[3]): {(b[0], b[1]): one}}
        assert S.equal(embed(A.mul(ea, eb)), S.mul(embed(ea), embed(eb)))


def test_conjugation_relations_hold():
    ring = rational_ring()
    A = instance_from_symbol(2, 3, 5, 2, 1, ring=ring, check="none")
    z1, z2 = A.z1(), A.alpha1()
    # z1 al1 = zeta_2 al1 z1 for m = 2
    lhs = A.mul(A.z1(), A.alpha1())
    rhs = A.scale(A.mul(A.alpha1(), A.z1()), A.K.zeta_m)
    assert A.equal(lhs, rhs)
    # z2 al2 = -al2 z2
    lhs = A.mul(A.z2(), A.alpha2())
    rhs = A.neg(A.mul(A.alpha2(), A.z2()))
    assert A.equal(lhs, rhs)


# ---------------------------------------------------------------- associativity gate


def test_norm_incompatible_u_rejected():
    # u = 1 with a genuine al2-component in b1 violates the forced relation
    # N_s1(u) = b1 / s2(b1), so the full triple check must fail
    ring = rational_ring()
    with pytest.raises(CrossedError, match=r"associativity violated: incompatible \(u, b1, b2\)"):
        crossed_from_data(2, 3, 5, 1, (4, 2), 7, ring=ring, check="full")


def test_symbolic_family_passes_full_check():
    ring = symbolic_ring()
    A = instance_from_symbol(2, *symbolic_gens(ring), ring=ring, check="full")
    assert A.check_level == "full"
    f1, f2 = A.b1_pair()
    t = ring.element(ring.var("t"))
    a2 = ring.element(ring.var("a2"))
    assert f1 == 2 * t
    assert f2 == (t * t + a2) / a2


def test_zero_parameter_and_membership_errors():
    ring = rational_ring()
    with pytest.raises(CrossedError, match="zero parameter"):
        crossed_from_data(2, 3, 5, 1, 0, 1, ring=ring)
    K = KummerField(ring, 2, ring.element(3), ring.element(5))
    with pytest.raises(CrossedError, match=r"b1 must lie in F\(al2\)"):
        CrossedAlgebra(K, K.one(), K.alpha1(), K.one(), check="none")
    with pytest.raises(CrossedError, match=r"b2 must lie in F\(al1\)"):
        CrossedAlgebra(K, K.one(), K.one(), K.alpha2(), check="none")


# ---------------------------------------------------------------- power cancellation


def test_power_cancellation_m2_through_m5():
    for m in (2, 3, 4, 5):
        A = generic_cyclic_algebra(m)
        cert = bergman_power(A)
        assert cert.ok
        assert cert.m == m
        assert cert.computed == cert.expected


def test_power_cancellation_on_full_instance():
    ring = rational_ring()
    A = instance_from_symbol(2, 3, 5, 2, 1, ring=ring, check="full")
    cert = bergman_power(A)
    assert cert.ok
    payload = cert.to_json()
    assert payload["identity"] == "(z1 + al1)^m = b1 + a1"
    assert payload["check_level"] == "full"


# ---------------------------------------------------------------- tensor product


def test_tensor_parameter_homomorphism():
    ring = rational_ring()
    A = instance_from_symbol(2, 3, 5, 2, 1, ring=ring, check="none")
    B = instance_from_symbol(2, 3, 5, 4, 3, ring=ring, check="none")
    C = tensor_brauer(A, B, check="full")
    K = A.K
    assert K.equal(C.u, K.mul(A.u, B.u))
    assert K.equal(C.b1, K.mul(A.b1, B.b1))
    assert K.equal(C.b2, K.mul(A.b2, B.b2))


def test_tensor_mismatched_data():
    ring = rational_ring()
    A = instance_from_symbol(2, 3, 5, 2, 1, ring=ring, check="none")
    B = instance_from_symbol(2, 3, 7, 2, 1, ring=ring, check="none")
    with pytest.raises(CrossedError, match="mismatched K-data"):
        tensor_brauer(A, B)


# ---------------------------------------------------------------- decomposition


def test_decompose_generic_symbolic():
    ring = symbolic_ring()
    a1, a2, t, lam = symbolic_gens(ring)
    A = instance_from_symbol(2, a1, a2, t, lam, ring=ring, check="full")
    cert = decompose(A)
    assert cert.branch == "generic"
    assert cert.ok
    names = {item["name"] for item in cert.identities}
    assert {"gamma-power-m", "gamma-power-2m", "gamma-min-poly-degree",
            "tensor-cocycle-witness"} <= names
    # the twist scalar matches -a1 f2 / f1 exactly
    from brauerlab.exactfield import FieldElement
    f1, f2 = A.b1_pair()
    c = FieldElement.from_json(ring, cert.witnesses["c"])
    assert c == -(a1 * f2) / f1
    f = FieldElement.from_json(ring, cert.witnesses["f"])
    assert f == -a1 / f1


def test_decompose_generic_rational_and_replay():
    ring = rational_ring()
    A = instance_from_symbol(2, 3, 5, 2, 1, ring=ring, check="full")
    cert = decompose(A)
    assert cert.branch == "generic" and cert.ok
    payload = cert.to_json()
    replayed = DecompositionCertificate.from_json(payload)
    assert replayed.verify(ring)


def test_decompose_f1_zero_cyclic():
    # t = 0 collapses b1 to a pure al2 multiple
    ring = rational_ring()
    A = instance_from_symbol(2, 3, 5, 0, 1, ring=ring, check="full")
    f1, f2 = A.b1_pair()
    assert f1.is_zero() and f2.is_one()
    cert = decompose(A)
    assert cert.branch == "f1-zero-cyclic"
    assert cert.ok
    # z1^4 = f2^2 a2 = 5
    z4 = A.scalar_of(A.power(A.z1(), 4))
    assert z4 == ring.element(5)


def test_decompose_f2_zero_split():
    ring = rational_ring()
    A = crossed_from_data(2, 3, 5, 1, 7, 11, ring=ring, check="full")
    cert = decompose(A)
    assert cert.branch == "f2-zero-split-quaternion"
    assert cert.ok
    assert cert.identity("dimension-product")
    assert cert.identity("factors-commute-z1-vs-z2")


def test_decompose_f2_zero_with_norm_one_u():
    # u = -1 has s1-norm 1, so a Hilbert-90 adjuster k = al1 restores the
    # commuting split; b2 must stay in F because s1(b2)/b2 = u s2(u) = 1
    ring = rational_ring()
    A = crossed_from_data(2, 3, 5, -1, 7, 11, ring=ring, check="full")
    cert = decompose(A)
    assert cert.branch == "f2-zero-split-quaternion"
    assert cert.identity("hilbert90-adjustment")
    assert cert.identity("factors-commute-z1-vs-z2")
    assert cert.ok


def test_decompose_rejects_double_zero():
    ring = rational_ring()
    A = crossed_from_data(2, 3, 5, 1, 7, 11, ring=ring, check="none")
    A.b1 = {}
    with pytest.raises(CrossedError, match="f1 = f2 = 0 rejected"):
        decompose(A)


def test_certificate_json_roundtrip():
    ring = rational_ring()
    A = instance_from_symbol(2, 6, 13, 1, 4, ring=ring, check="full")
    cert = decompose(A)
    rebuilt = crossed_from_json(ring, cert.params, check="none")
    assert rebuilt.K.equal(rebuilt.b1, A.b1)
    assert rebuilt.K.equal(rebuilt.u, A.u)
    assert rebuilt.K.equal(rebuilt.b2, A.b2)


# ---------------------------------------------------------------- symbol extraction


def test_cyclic_to_symbol_rational():
    ring = rational_ring()
    A = instance_from_symbol(2, 3, 5, 2, 1, ring=ring, check="none")
    K = A.K
    f1, f2 = A.b1_pair()
    f = -K.a1 / f1
    Af = CrossedAlgebra(K, A.u, K.mul(A.b1, K.scalar(f)), A.b2, check="none")
    gamma = Af.add(Af.z1(), Af.alpha1())
    pres = cyclic_to_symbol(Af, gamma)
    assert pres.ok
    c = -(K.a1 * f2) / f1
    assert pres.c_prime == c * c * K.a2
    assert not pres.d_prime.is_zero()
    # delta really conjugates gamma by zeta_4
    delta = Af.from_coords(pres.delta_coords)
    lhs = Af.mul(delta, gamma)
    rhs = Af.scale(Af.mul(gamma, delta), K.zeta_2m)
    assert Af.equal(lhs, rhs)


def test_cyclic_to_symbol_symbolic():
    ring = symbolic_ring()
    A = instance_from_symbol(2, *symbolic_gens(ring), ring=ring, check="none")
    K = A.K
    f1, f2 = A.b1_pair()
    f = -K.a1 / f1
    Af = CrossedAlgebra(K, A.u, K.mul(A.b1, K.scalar(f)), A.b2, check="none")
    gamma = Af.add(Af.z1(), Af.alpha1())
    pres = cyclic_to_symbol(Af, gamma)
    assert pres.ok
    c = -(K.a1 * f2) / f1
    assert pres.c_prime == c * c * K.a2


def test_cyclic_to_symbol_input_gates():
    ring = rational_ring()
    A = instance_from_symbol(2, 3, 5, 2, 1, ring=ring, check="none")
    # z1^4 = b1^2 is not scalar for this instance
    with pytest.raises(CrossedError, match="not a nonzero scalar"):
        cyclic_to_symbol(A, A.z1())
    # al1 has scalar fourth power but generates only a quadratic subfield
    with pytest.raises(CrossedError, match="degree-2m subfield"):
        cyclic_to_symbol(A, A.alpha1())


# ---------------------------------------------------------------- specialization


def test_specialize_decomposition_reports():
    ring = PolyRing(("t",), 4)
    t = ring.element(ring.var("t"))
    factors = [
        (t * t - ring.element(4), t + ring.element(1), 2),
        ((t - ring.element(3)) / (t + ring.element(5)), t * t + ring.element(1), 2),
    ]
    rep = specialize_decomposition(factors, avoid=[t - ring.element(7)], seed=11)
    t0 = rep["t0"]
    assert t0 not in (2, -2, -1, 3, 7, -5)
    assert rep["dimension"] == 16
    assert rep["ok"]
    assert {c["name"] for c in rep["checks"]} == {"factors-commute", "dimension-product"}
    # deterministic under the seed
    again = specialize_decomposition(factors, avoid=[t - ring.element(7)], seed=11)
    assert again["t0"] == t0


def test_specialize_decomposition_exhaustion():
    ring = PolyRing(("t",), 4)
    t = ring.element(ring.var("t"))
    with pytest.raises(CrossedError, match="no admissible t0 in sample box"):
        specialize_decomposition([(t, t, 2)], avoid=[ring.element(0)], seed=3)


# ---------------------------------------------------------------- rescaling


def test_rationalize_symbol_params():
    ring = PolyRing(("a", "b", "c", "d"), 4)
    a, b, c, d = (ring.element(ring.var(v)) for v in "abcd")
    rep = rationalize_symbol_params([(a, b, 2), (c, d, 2)])
    assert rep["trdeg"] == 4
    assert rep["ok"]
    assert rep["field_generators"] == ["a*lam1^2", "b*mu1^2", "c*lam2^2", "d*mu2^2"]
    (a1, b1, n1), (a2, b2, n2) = rep["symbols"]
    assert n1 == n2 == 2
    lam1 = a1.ring.element(a1.ring.var("lam1"))
    assert a1 == a1.ring.element(a1.ring.parse("a")) * lam1 * lam1


def test_rationalize_empty():
    rep = rationalize_symbol_params([])
    assert rep["trdeg"] == 0
    assert rep["symbols"] == []
    assert rep["ok"]
