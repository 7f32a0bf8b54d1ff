import functools
import random
from fractions import Fraction

import pytest

from brauerlab.crossed import SymbolAlgebra, TensorAlgebra, instance_from_symbol
from brauerlab.exactfield import PolyRing, is_square
from brauerlab.quadforms import (
    GenExpr,
    MatrixAlgebra,
    QuadFormError,
    QuadraticForm,
    TraceData,
    WittMove,
    audit_entries,
    diagonal,
    diagonalize,
    direct_sum,
    equiv_form,
    hilbert_symbol,
    hyperbolic_sufficient,
    invariants_over_Q,
    isometry_over_Q,
    pfister,
    pfister0,
    replay_trace_form_equivalence,
    scaling_descent,
    serre_form,
    tau_form_bound,
    tensor,
    trace_data,
    trace_form,
    witt_apply,
    witt_derive_equivalence,
)


def rational_ring():
    return PolyRing((), 4)


def free_trace_ring():
    return PolyRing(("t1", "t2", "t3", "n1", "n2", "n3"), 4)


def free_trace_data(ring):
    vals = [ring.element(ring.var(v)) for v in ("t1", "t2", "t3", "n1", "n2", "n3")]
    return TraceData(ring, *vals)


# -------------------------------------------------------------------- builders


def test_diagonal_rejects_zero_entry():
    ring = rational_ring()
    with pytest.raises(QuadFormError, match="zero entry"):
        diagonal([1, 0, 3], ring=ring)


def test_pfister_entry_order():
    ring = rational_ring()
    a = ring.element(3)
    b = ring.element(5)
    one = pfister([a])
    assert [str(e) for e in one.entries] == ["1", "3"]
    two = pfister([a, b])
    assert [str(e) for e in two.entries] == ["1", "3", "5", "15"]
    assert pfister([a, b, a]).dim == 8
    pure = pfister0([a, b])
    assert [str(e) for e in pure.entries] == ["3", "5", "15"]
    assert pfister0([a]).dim == 1
    with pytest.raises(QuadFormError, match="zero entry"):
        pfister([a, ring.element(0)])


def test_direct_sum_and_tensor():
    ring = rational_ring()
    left = diagonal([1, 2], ring=ring)
    right = diagonal([3], ring=ring)
    assert [str(e) for e in direct_sum(left, right).entries] == ["1", "2", "3"]
    assert [str(e) for e in tensor(left, right).entries] == ["3", "6"]


# --------------------------------------------------------------- diagonalize


def test_diagonalize_hyperbolic_gram():
    # no nonzero diagonal entry: the pivot is created from the off-diagonal 1
    ring = rational_ring()
    q = QuadraticForm(ring, gram=[[0, 1], [1, 0]])
    d, P = diagonalize(q)
    assert [str(e) for e in d.entries] == ["2", "-1/2"]
    assert not d.degenerate
    assert len(P) == 2


def test_diagonalize_symbolic_gram():
    ring = PolyRing(("a", "b"), 4)
    a = ring.element(ring.var("a"))
    b = ring.element(ring.var("b"))
    q = QuadraticForm(ring, gram=[[a, b], [b, a]])
    d, _ = diagonalize(q)
    assert str(d.entries[0]) == "a"
    # complement a - b^2/a
    assert d.entries[1] * a == a * a - b * b


def test_diagonalize_zero_rows_marks_degenerate():
    ring = rational_ring()
    q = QuadraticForm(ring, gram=[[1, 0, 0], [0, 0, 0], [0, 0, 0]])
    d, _ = diagonalize(q)
    assert d.degenerate
    assert [str(e) for e in d.entries] == ["1", "0", "0"]


def test_diagonalize_random_rational_grams():
    ring = rational_ring()
    rng = random.Random(11)
    for _ in range(10):
        n = rng.randint(2, 5)
        gram = [[0] * n for _ in range(n)]
        for i in range(n):
            for j in range(i, n):
                value = Fraction(rng.randint(-4, 4))
                gram[i][j] = value
                gram[j][i] = value
        # the congruence identity is re-verified inside diagonalize
        d, P = diagonalize(QuadraticForm(ring, gram=gram))
        assert d.dim == n


def test_gram_must_be_symmetric():
    ring = rational_ring()
    with pytest.raises(ValueError, match="symmetric"):
        QuadraticForm(ring, gram=[[0, 1], [2, 0]])


# --------------------------------------------------------------- trace forms


def test_trace_form_of_2x2_matrices():
    ring = rational_ring()
    tf = trace_form(MatrixAlgebra(ring, 2))
    assert tf.dim == 4
    # basis e11, e12, e21, e22: diagonal block <1, 1> plus one hyperbolic plane
    assert str(tf.gram[0][0]) == "1"
    assert str(tf.gram[3][3]) == "1"
    assert str(tf.gram[0][3]) == "0"
    assert str(tf.gram[1][2]) == "1"
    assert str(tf.gram[1][1]) == "0"
    d, _ = diagonalize(tf)
    assert [str(e) for e in d.entries] == ["1", "1", "2", "-1/2"]


def test_trace_form_of_quaternion_symbol():
    # squares of the basis monomials 1, y, x, xy give <2, 2b, 2a, -2ab>
    ring = PolyRing(("a", "b"), 4)
    a = ring.element(ring.var("a"))
    b = ring.element(ring.var("b"))
    tf = trace_form(SymbolAlgebra(ring, a, b, 2))
    d, _ = diagonalize(tf)
    assert str(d.entries[0]) == "2"
    assert d.entries[1] == 2 * b
    assert d.entries[2] == 2 * a
    assert d.entries[3] == -2 * a * b


def test_tensor_algebra_identity_spreads_over_matrix_units():
    ring = rational_ring()
    E = SymbolAlgebra(ring, ring.element(3), ring.element(5), 2)
    M2E = TensorAlgebra([MatrixAlgebra(ring, 2), E])
    one = M2E.one_coords()
    support = [r for r, c in enumerate(one) if not c.is_zero()]
    # e11 (x) 1 at flat 0*4+0 and e22 (x) 1 at flat 3*4+0
    assert support == [0, 12]


def test_matrix_quaternion_trace_forms_pair_hyperbolically():
    ring = rational_ring()
    assert hyperbolic_sufficient(trace_form(MatrixAlgebra(ring, 2))) is not None
    for a, b in ((3, 5), (-2, 7), (-1, -1)):
        E = SymbolAlgebra(ring, ring.element(a), ring.element(b), 2)
        M2E = TensorAlgebra([MatrixAlgebra(ring, 2), E])
        cert = hyperbolic_sufficient(trace_form(M2E))
        assert cert is not None
        assert len(cert["pairs"]) == 8
        d = cert["diagonal"]
        for pair in cert["pairs"]:
            i, j = pair["indices"]
            w = pair["witness"]
            assert d.entries[i] * w * w == -d.entries[j]


def test_hyperbolic_sufficient_inconclusive_and_odd():
    ring = rational_ring()
    assert hyperbolic_sufficient(diagonal([1, 3], ring=ring)) is None
    assert hyperbolic_sufficient(diagonal([1, 1, 1], ring=ring)) is None
    cert = hyperbolic_sufficient(diagonal([1, 1], ring=ring))
    assert cert is not None and len(cert["pairs"]) == 1


# ----------------------------------------------------------------- trace data


def quartic_instance(ring, e, g, t, lam, mu, nu, check="none"):
    return instance_from_symbol(2, e, g, t, lam, ring=ring, check=check, mu=mu, nu=nu)


def test_trace_data_values_and_identities():
    ring = rational_ring()
    A = quartic_instance(ring, 3, 5, 2, 1, 1, 1, check="auto")
    td = trace_data(A)
    f1, f2 = A.b1_pair()
    assert td.t1 == f1
    assert str(td.t1) == "4"
    # half-trace of b2 = tau sigma2(tau) al1 with tau = 1 + al1 + al2
    assert str(td.t2) == "6"
    assert td.n1 - td.t1 * td.t1 == -(f2 * f2) * A.K.a2
    assert all(c["ok"] for c in td.checks)


def test_trace_data_symbolic_identities():
    # symbolic symbol parameters, rational twist: the fully symbolic twist
    # blows past the no-gcd fraction budget, and these three variables
    # already exercise every identity on free input
    ring = PolyRing(("e", "g", "t"), 4)
    e, g, t = [ring.element(ring.var(v)) for v in ring.variables]
    one = ring.element(1)
    A = quartic_instance(ring, e, g, t, one, 2 * one, one)
    td = trace_data(A)
    assert td.t1 == 2 * t
    assert td.t2 == 4 * e  # 2 lam mu e with lam = 1, mu = 2
    # norm of b1 = f1 + f2 al2 down the quadratic subfield
    f1, f2 = A.b1_pair()
    assert td.n1 == f1 * f1 - f2 * f2 * g


def test_trace_data_rejects_degenerate():
    ring = rational_ring()
    A = quartic_instance(ring, 3, 5, 2, 1, 0, 0)  # b2 on the al1 axis: t2 = 0
    with pytest.raises(QuadFormError, match="degenerate: some t_i = 0"):
        trace_data(A)


def test_trace_data_needs_degree_four():
    A = instance_from_symbol(3, 2, 5, 1, 1, ring=PolyRing((), 12), check="none")
    with pytest.raises(ValueError, match="degree-4"):
        trace_data(A)


# -------------------------------------------------------- serre and equiv forms


def test_serre_form_dimensions_and_slots():
    ring = free_trace_ring()
    td = free_trace_data(ring)
    q = serre_form(td)
    assert q.dim == 20
    deficit = td.n1 - td.t1 * td.t1
    assert q.entries[0] == ring.element(1)
    assert q.entries[1] == deficit
    assert q.entries[2] == td.n2
    assert q.entries[3] == deficit * td.n2
    assert q.entries[5] == td.t1 * td.t1 - td.n1
    printed = serre_form(td, reading="printed")
    assert printed.entries[5] == td.t1 - td.n1 * td.n1


def test_serre_form_hypothesis_violated():
    ring = rational_ring()
    td = TraceData(ring, 2, 0, 1, 3, 5, 7)
    with pytest.raises(QuadFormError, match="hypothesis violated"):
        serre_form(td)
    td = TraceData(ring, 2, 1, 1, 4, 5, 7)  # n1 = t1^2
    with pytest.raises(QuadFormError, match="hypothesis violated"):
        serre_form(td)


def test_equiv_form_entries_and_audit():
    ring = free_trace_ring()
    td = free_trace_data(ring)
    q = equiv_form(td)
    assert q.dim == 16
    audit = audit_entries(q)
    assert audit["only_four_generators"]
    assert audit["transcendence_degree_bound"] == 4
    assert set(audit["generators"]) == {"g1", "g2", "g3", "g4"}
    t2sq = td.t2 * td.t2
    assert q.entries[0] == td.n2 / t2sq
    one = ring.element(1)
    assert q.entries[8] == (one - td.n1 / (td.t1 * td.t1)) * (td.n2 / t2sq)


def test_equiv_form_zero_denominator():
    ring = rational_ring()
    td = TraceData(ring, 0, 1, 1, 2, 3, 5)
    with pytest.raises(QuadFormError, match="zero denominator"):
        equiv_form(td)


def test_genexpr_audit_detects_foreign_leaf():
    expr = GenExpr.gen("g1") * GenExpr.gen("g9") + GenExpr.const(2)
    assert not expr.uses_only(("g1", "g2", "g3", "g4"))
    assert expr.leaves() == {"g1", "g9"}


# ------------------------------------------------------------------ Witt moves


def test_witt_apply_moves_and_witnesses():
    ring = rational_ring()
    i4 = ring.element(ring.zeta())
    q = diagonal([3, 5, -3], ring=ring)
    half = ring.element(Fraction(1, 2))
    moves = [
        WittMove("scale", [1], witness=half, factor=half * half),
        WittMove("negate", [2], witness=i4),
        WittMove("permute", [2, 1, 0]),
        WittMove("split", [1, 2], expected=[ring.element(Fraction(5, 4)), ring.element(3)]),
        WittMove("cancel", [0, 2], witness=i4),
    ]
    out = witt_apply(q, moves)
    assert [str(e) for e in out.entries] == ["5/4"]


def test_witt_apply_rejects_bad_witness():
    ring = rational_ring()
    i4 = ring.element(ring.zeta())
    q = diagonal([3, 5], ring=ring)
    bad_scale = WittMove("scale", [0], witness=ring.element(2), factor=ring.element(5))
    with pytest.raises(QuadFormError, match="witness fails"):
        witt_apply(q, [bad_scale])
    bad_cancel = WittMove("cancel", [0, 1], witness=i4)
    with pytest.raises(QuadFormError, match="witness fails"):
        witt_apply(q, [bad_cancel])
    bad_perm = WittMove("permute", [0, 0])
    with pytest.raises(QuadFormError, match="witness fails"):
        witt_apply(q, [bad_perm])
    out_of_range = WittMove("negate", [7], witness=i4)
    with pytest.raises(QuadFormError, match="witness fails"):
        witt_apply(q, [out_of_range])


def test_witt_derivation_symbolic_generic():
    ring = free_trace_ring()
    td = free_trace_data(ring)
    start = serre_form(td)
    moves = witt_derive_equivalence(td)
    final = witt_apply(start, moves)
    target = equiv_form(td)
    assert final.dim == 16
    assert all(final.entries[i] == target.entries[i] for i in range(16))


def test_witt_derivation_printed_reading_rejected():
    ring = free_trace_ring()
    td = free_trace_data(ring)
    with pytest.raises(QuadFormError, match="printed reading"):
        witt_derive_equivalence(td, reading="printed")


def test_replay_report_on_algebra_instance():
    ring = rational_ring()
    A = quartic_instance(ring, 3, 5, 2, 1, 1, 1)
    td = trace_data(A)
    report = replay_trace_form_equivalence(td)
    assert report["ok"]
    assert report["start_dim"] == 20
    assert report["final_dim"] == 16
    assert report["final_matches_equiv_form"]
    assert report["audit"]["only_four_generators"]


def test_witt_moves_preserve_discriminant_class():
    # every move multiplies the discriminant by a square of the base field
    # (scale by witness^2, negate by zeta4^2, cancel drops -d^2), so the
    # start form and final + 2H agree up to squares there; over Q the
    # rational discriminant also survives (negations pair up, cancels drop
    # squares) but signature and Hasse data do not, because the witnessed
    # moves are isometries of a field containing i, not of Q
    ring = rational_ring()
    rng = random.Random(23)
    done = 0
    while done < 50:
        vals = [Fraction(rng.randint(-9, 9)) for _ in range(6)]
        if any(v == 0 for v in vals):
            continue
        td = TraceData(ring, *vals)
        try:
            start = serre_form(td)
        except QuadFormError:
            continue
        final = witt_apply(start, witt_derive_equivalence(td))
        assert final.dim == start.dim - 4
        restored = direct_sum(final, diagonal([1, -1, 1, -1], ring=ring))
        disc_start = functools.reduce(lambda x, y: x * y, start.entries)
        disc_restored = functools.reduce(lambda x, y: x * y, restored.entries)
        # x/y is a square exactly when x*y is
        assert is_square(disc_start * disc_restored) is not None
        iq_start = invariants_over_Q(start)
        iq_final = invariants_over_Q(final)
        assert iq_start["discriminant"] == iq_final["discriminant"]
        assert iq_start["rank"] - iq_final["rank"] == 4
        done += 1


def test_witt_move_json_roundtrip():
    ring = rational_ring()
    td = TraceData(ring, 2, 3, 5, 7, 11, 13)
    moves = witt_derive_equivalence(td)
    replayed = [WittMove.from_json(ring, m.to_json()) for m in moves]
    final = witt_apply(serre_form(td), replayed)
    target = equiv_form(td)
    assert all(final.entries[i] == target.entries[i] for i in range(16))


# ------------------------------------------------------------ rational places


def test_hilbert_symbol_hand_values():
    assert hilbert_symbol(-1, -1, 2) == -1
    assert hilbert_symbol(-1, -1, "inf") == -1
    assert hilbert_symbol(-1, -1, 3) == 1
    assert hilbert_symbol(2, 3, 2) == -1
    for place in ("inf", 2, 3, 5, 7):
        assert hilbert_symbol(1, -30, place) == 1
    with pytest.raises(QuadFormError, match="zero entry"):
        hilbert_symbol(0, 3, 2)
    with pytest.raises(ValueError, match="place"):
        hilbert_symbol(2, 3, 6)


def test_hilbert_symbol_vanishes_on_represented_pairs():
    # a x^2 + b y^2 = z^2 solvable over Q forces +1 at every place
    cases = {(2, 7): (1, 1, 3), (3, 6): (1, 1, 3), (5, -1): (1, 2, 1), (-3, 7): (1, 1, 2)}
    for (a, b), (x, y, z) in cases.items():
        assert a * x * x + b * y * y == z * z
        for place in ("inf", 2, 3, 5, 7):
            assert hilbert_symbol(a, b, place) == 1


def test_hilbert_symbol_square_class_invariance():
    rng = random.Random(5)
    for _ in range(50):
        a = rng.choice([-1, 1]) * rng.randint(1, 40)
        b = rng.choice([-1, 1]) * rng.randint(1, 40)
        s = rng.randint(1, 6)
        for place in ("inf", 2, 3, 5):
            assert hilbert_symbol(a * s * s, b, place) == hilbert_symbol(a, b, place)


def test_hilbert_product_formula():
    from brauerlab.quadforms import _places_for

    rng = random.Random(17)
    for _ in range(100):
        a = Fraction(rng.choice([-1, 1]) * rng.randint(1, 60), rng.randint(1, 20))
        b = Fraction(rng.choice([-1, 1]) * rng.randint(1, 60), rng.randint(1, 20))
        product = 1
        for place in _places_for([[a, b]]):
            product *= hilbert_symbol(a, b, place)
        assert product == 1


def test_hilbert_bimultiplicative_and_symmetric():
    from brauerlab.quadforms import _places_for

    rng = random.Random(29)
    for _ in range(500):
        a = Fraction(rng.choice([-1, 1]) * rng.randint(1, 30), rng.randint(1, 10))
        b = Fraction(rng.choice([-1, 1]) * rng.randint(1, 30), rng.randint(1, 10))
        c = Fraction(rng.choice([-1, 1]) * rng.randint(1, 30), rng.randint(1, 10))
        places = _places_for([[a, b, c]])
        place = places[rng.randrange(len(places))]
        assert hilbert_symbol(a * b, c, place) == hilbert_symbol(a, c, place) * hilbert_symbol(b, c, place)
        assert hilbert_symbol(a, b, place) == hilbert_symbol(b, a, place)


def test_invariants_over_Q_record():
    ring = rational_ring()
    inv = invariants_over_Q(diagonal([1, -1, 2, -2], ring=ring))
    assert inv["rank"] == 4
    assert inv["signature"] == 0
    assert inv["discriminant"] == 1
    assert inv["hasse"]["2"] == -1
    assert inv["hasse"]["inf"] == -1
    with pytest.raises(QuadFormError, match="degenerate form"):
        invariants_over_Q(QuadraticForm(ring, gram=[[1, 0], [0, 0]]))
    with pytest.raises(QuadFormError, match="rational"):
        invariants_over_Q(diagonal([ring.element(ring.zeta())], ring=ring))


def test_isometry_over_Q_decides():
    ring = rational_ring()
    q = diagonal([1, -1, 2, -2], ring=ring)
    assert isometry_over_Q(q, diagonal([2, -2, 1, -1], ring=ring))
    assert isometry_over_Q(q, diagonal([1, -1, 1, -1], ring=ring))  # both 2H
    assert not isometry_over_Q(q, diagonal([1, 1, -1, -2], ring=ring))
    assert not isometry_over_Q(q, diagonal([1, -1], ring=ring))


# -------------------------------------------------------------------- descent


def test_scaling_descent_and_parameter_bound():
    ring = PolyRing(("a", "b"), 4)
    q = diagonal([ring.element(ring.var("a")), ring.element(ring.var("b"))])
    descended, generators = scaling_descent(q)
    assert [str(e) for e in descended.entries] == ["a*sc1^2", "b*sc2^2"]
    assert len(generators) == 2
    bound = tau_form_bound(q)
    assert bound["bound"] == 2
    assert bound["equality_generic"]
    assert "parameter count" in bound["citation"]


def test_scaling_descent_name_collision():
    ring = PolyRing(("sc1",), 4)
    q = diagonal([ring.element(ring.var("sc1"))])
    with pytest.raises(ValueError, match="collision"):
        scaling_descent(q)
