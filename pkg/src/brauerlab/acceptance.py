"""Acceptance checks shared by the test gate and the command-line selftest.

Each check function takes the run seed and returns (verdict, details):
True for pass, False for fail, None for inconclusive.  Details are plain
deterministic strings (counts and witnesses, never wall-clock), so a whole
run serializes byte-identically under a fixed seed.  The ten checks are
registered in CRITERIA in their documented order; the per-object helpers
(relation_kernel_checks, tensor_square_checks, formanek_checks) are reused
by the lattice subcommand of the CLI.
"""

from __future__ import annotations

import json
import random
from fractions import Fraction
from typing import Optional

from .bounds import d_bounds, tau_bound_crossed
from .crossed import (
    CrossedAlgebra,
    CrossedError,
    SymbolAlgebra,
    TensorAlgebra,
    bergman_power,
    crossed_from_data,
    cyclic_to_symbol,
    decompose,
    generic_cyclic_algebra,
    instance_from_symbol,
)
from .exactfield import PolyRing
from .factorsets import (
    check_equivariance,
    expand_wedge_coordinates,
    is_normalized,
    is_reduced,
    normalized_factor_set,
    wedge_membership,
)
from .groups import (
    PermutationGroup,
    Subgroup,
    builtin_family,
    min_generators_rel,
    subgroups_up_to_conjugacy,
    symmetric_group,
)
from .lattices import (
    faithful_predicate_freepres,
    faithful_predicate_seq2,
    formanek_sequence,
    freepres_sequence,
    is_exact,
    is_faithful,
    seq2_sequence,
)
from .quadforms import (
    MatrixAlgebra,
    QuadFormError,
    hilbert_places,
    hilbert_symbol,
    hyperbolic_sufficient,
    invariants_over_Q,
    replay_trace_form_equivalence,
    trace_data,
    trace_form,
)
from . import snf


def _rng(seed: int, slug: str) -> random.Random:
    # string seeding hashes the bytes, stable across runs and platforms
    return random.Random(f"{seed}/{slug}")


def _nonzero(rng: random.Random, top: int = 9) -> Fraction:
    return Fraction(rng.choice([-1, 1]) * rng.randint(1, top))


# ------------------------------------------------------------- 1: factor sets


def check_udn_factor_sets(seed: int):
    problems = []
    wedge_count = norm_count = 0
    for n in (5, 7):
        cp = normalized_factor_set(n)
        if not (is_reduced(cp) and is_normalized(cp)):
            problems.append(f"n={n}: normalization predicates fail")
        if not check_equivariance(cp).ok:
            problems.append(f"n={n}: equivariance fails")
        for i in range(1, n + 1):
            for j in range(1, n + 1):
                for h in range(1, n + 1):
                    m = cp[(i, j, h)]
                    coords = wedge_membership(m)
                    if coords is None or (
                        expand_wedge_coordinates(n, coords) != m.exponent_tensor()
                    ):
                        problems.append(f"n={n}: ({i},{j},{h}) escapes the wedge")
                    wedge_count += 1
                    if not (m * cp[(h, j, i)]).is_trivial():
                        problems.append(f"n={n}: ({i},{j},{h}) breaks c*c-reversed = 1")
                    norm_count += 1
    if problems:
        return False, "; ".join(problems[:6])
    return True, (
        f"n=5 and n=7: {wedge_count} wedge memberships, "
        f"{norm_count} reversal products, equivariance on both"
    )


# ------------------------------------------- 2 and 3: lattice family sweeps


def relation_kernel_checks(group: PermutationGroup, subgroup: Subgroup,
                           r: int, generators=None) -> dict:
    """One (G, H, r) relation-kernel instance: exactness plus the
    faithfulness-iff-(r >= 2 or H nontrivial) comparison."""
    if generators is None:
        r0, gens0 = min_generators_rel(group, subgroup, max_r=3)
        if r0 > r:
            return {"ok": None, "skipped": True,
                    "reason": f"no generating tuple of length {r}"}
        pad = gens0[0] if gens0 else 1
        generators = list(gens0) + [pad] * (r - r0)
    seq = freepres_sequence(group, subgroup, generators)
    report = is_exact(seq)
    faithful = is_faithful(seq.inner.source)
    predicted = faithful_predicate_freepres(group, subgroup, r)
    return {
        "ok": bool(report.exact and faithful == predicted
                   and predicted == (r >= 2 or subgroup.order > 1)),
        "skipped": False,
        "exact": report.exact,
        "kernel_rank": seq.inner.source.rank,
        "faithful": faithful,
        "predicted": predicted,
    }


def check_relation_kernel_family(seed: int):
    checked = skipped = 0
    problems = []
    for group in builtin_family():
        for subgroup in subgroups_up_to_conjugacy(group):
            for r in (1, 2):
                res = relation_kernel_checks(group, subgroup, r)
                if res.get("skipped"):
                    skipped += 1
                    continue
                checked += 1
                if not res["ok"]:
                    problems.append(
                        f"{group.name}/|H|={subgroup.order}/r={r}: "
                        f"exact={res['exact']} faithful={res['faithful']} "
                        f"predicted={res['predicted']}")
    if problems:
        return False, "; ".join(problems[:6])
    return True, (
        f"{checked} (G, H, r) triples match the predicate; "
        f"{skipped} skipped with no length-r generating tuple"
    )


def tensor_square_checks(group: PermutationGroup, subgroup: Subgroup) -> dict:
    """One (G, H) tensor-square instance: exactness, the pair-basis map
    verified column by column against its defining rule together with an
    explicit sparse inverse, and faithfulness against the core/index rule."""
    n = group.order // subgroup.order
    if n < 2:
        return {"ok": None, "skipped": True, "reason": "index 1"}
    seq = seq2_sequence(group, subgroup)
    report = is_exact(seq)
    iso = seq.pair_basis_iso
    matrix = iso.matrix
    rank = iso.target.rank
    pidx = seq.inner.target.pair_index

    # defining rule: mixed slot (i, c) -> pair (i, c) - pair (0, c), with
    # the degenerate pair (x, x) dropped
    rule_ok = True
    for i in range(1, n):
        for c in range(n):
            col = (i - 1) * n + c
            expect = {}
            if i != c:
                expect[pidx[(i, c)]] = 1
            if c != 0:
                expect[pidx[(0, c)]] = expect.get(pidx[(0, c)], 0) - 1
            for row in range(rank):
                if matrix[row][col] != expect.get(row, 0):
                    rule_ok = False

    # unimodularity witness: the rule inverts explicitly, so M . Q = I with
    # Q integral proves det = +-1 without a dense determinant
    inverse_ok = True
    for (a, b) in seq.inner.target.pairs:
        if b == 0:
            cols = {(a - 1) * n: 1}
        elif a == 0:
            cols = {(b - 1) * n + b: -1}
        else:
            cols = {(a - 1) * n + b: 1, (b - 1) * n + b: -1}
        image: dict = {}
        for col, coeff in cols.items():
            for row in range(rank):
                v = matrix[row][col]
                if v:
                    image[row] = image.get(row, 0) + coeff * v
        image = {k: v for k, v in image.items() if v}
        if image != {pidx[(a, b)]: 1}:
            inverse_ok = False

    faithful = is_faithful(seq.inner.source)
    predicted = faithful_predicate_seq2(group, subgroup)
    return {
        "ok": bool(report.exact and rule_ok and inverse_ok
                   and faithful == predicted),
        "skipped": False,
        "exact": report.exact,
        "basis_rule": rule_ok,
        "explicit_inverse": inverse_ok,
        "faithful": faithful,
        "predicted": predicted,
    }


def check_tensor_square_family(seed: int):
    checked = skipped = 0
    problems = []
    for group in builtin_family():
        for subgroup in subgroups_up_to_conjugacy(group):
            res = tensor_square_checks(group, subgroup)
            if res.get("skipped"):
                skipped += 1
                continue
            checked += 1
            if not res["ok"]:
                problems.append(
                    f"{group.name}/|H|={subgroup.order}: exact={res['exact']} "
                    f"rule={res['basis_rule']} inverse={res['explicit_inverse']} "
                    f"faithful={res['faithful']} predicted={res['predicted']}")
    if problems:
        return False, "; ".join(problems[:6])
    return True, (
        f"{checked} (G, H) pairs: exact, pair-basis map verified with its "
        f"explicit inverse, faithfulness matches core/index rule; "
        f"{skipped} index-1 pairs skipped"
    )


# --------------------------------------------------- 4: symmetric-group kernel


def formanek_checks(n: int) -> dict:
    seq, iso = formanek_sequence(n)
    report = is_exact(seq)
    return {
        "ok": bool(
            report.exact
            and seq.inner.source.rank == n * n + 1
            and iso.source.rank == iso.target.rank == n * n + 1
            and snf.det(iso.matrix) in (1, -1)
            and iso.check_equivariance()
            and seq.outer.check_equivariance()
        ),
        "exact": report.exact,
        "kernel_rank": seq.inner.source.rank,
        "iso_det": snf.det(iso.matrix),
    }


def check_formanek_kernel(seed: int):
    problems = []
    for n in (3, 4, 5):
        res = formanek_checks(n)
        if not res["ok"]:
            problems.append(
                f"n={n}: exact={res['exact']} rank={res['kernel_rank']} "
                f"det={res['iso_det']}")
    if problems:
        return False, "; ".join(problems)
    return True, ("n in 3..5: exact, kernel rank n^2+1, unimodular "
                  "equivariant splitting")


# ------------------------------------------------------------------ 5: bounds


def check_parameter_bounds(seed: int):
    problems = []
    rep4 = d_bounds(4)
    if (rep4.lower, rep4.upper) != (5, 5):
        problems.append(f"d(4) = ({rep4.lower}, {rep4.upper}), want (5, 5)")
    rep5 = d_bounds(5)
    if rep5.upper != 6 or "wedge" not in rep5.upper_citation:
        problems.append(f"d(5) upper = {rep5.upper} ({rep5.upper_citation})")
    for n in range(5, 100, 2):
        wedge = (n - 1) * (n - 2) // 2
        rowen = wedge + n
        formulas = " | ".join(f for f, _ in d_bounds(n).provenance)
        if f"= {wedge}" not in formulas or f"= {rowen}" not in formulas:
            problems.append(f"odd n={n}: wedge/Rowen values missing")
            break
    s5 = symmetric_group(5)
    s4 = s5.subgroup(["(1 2)", "(1 2 3 4)"])
    tau = tau_bound_crossed(s5, s4)
    if tau.upper != 116:
        problems.append(f"crossed tau bound = {tau.upper}, want 116")
    if problems:
        return False, "; ".join(problems)
    return True, ("d(4) = (5, 5); d(5) <= 6 by the wedge count; odd n in "
                  "5..99 wedge = Rowen - n; S5/S4 crossed bound 116")


# --------------------------------------------------- 6: power cancellation


def check_power_cancellation(seed: int):
    problems = []
    for m in (2, 3, 4, 5):
        cert = bergman_power(generic_cyclic_algebra(m))
        if not (cert.ok and cert.m == m and cert.computed == cert.expected):
            problems.append(f"m={m}: power identity fails")
    if problems:
        return False, "; ".join(problems)
    return True, "(z1 + al1)^m = b1 + a1 on fully symbolic data, m in 2..5"


# ------------------------------------------------- 7: decomposition pipeline


def _draw_symbol_params(rng: random.Random):
    """Nonzero rational (e, g, t, lam) avoiding the structural degeneracies
    g = t^2 (zero divisor in the splitter) and g = -t^2 (f2 = 0)."""
    while True:
        e, g, t, lam = (_nonzero(rng) for _ in range(4))
        if t != 0 and g not in (t * t, -t * t):
            return e, g, t, lam


def _decomposition_ok(algebra: CrossedAlgebra) -> tuple[bool, str]:
    cert = decompose(algebra)
    bad = [item["name"] for item in cert.identities if not item["ok"]]
    if bad or not cert.ok:
        return False, f"branch {cert.branch}: failing {bad}"
    if cert.branch != "generic":
        return True, cert.branch
    K = algebra.K
    f1, f2 = algebra.b1_pair()
    f = -K.a1 / f1
    twisted = CrossedAlgebra(K, algebra.u, K.mul(algebra.b1, K.scalar(f)),
                             algebra.b2, check="none")
    gamma = twisted.add(twisted.z1(), twisted.alpha1())
    pres = cyclic_to_symbol(twisted, gamma)
    c = -(K.a1 * f2) / f1
    if not (pres.ok and pres.c_prime == c * c * K.a2):
        return False, "commutation solve or c' value fails"
    return True, "generic"


def check_decomposition_pipeline(seed: int):
    ring = PolyRing(("a1", "a2", "t", "lam"), 4)
    gens = [ring.element(ring.var(v)) for v in ring.variables]
    algebra = instance_from_symbol(2, *gens, ring=ring, check="full")
    ok, detail = _decomposition_ok(algebra)
    if not ok:
        return False, f"symbolic generic run: {detail}"

    rq = PolyRing((), 4)
    rng = _rng(seed, "decomposition")
    done = resampled = 0
    while done < 20:
        e, g, t, lam = _draw_symbol_params(rng)
        try:
            algebra = instance_from_symbol(
                2, rq.element(e), rq.element(g), rq.element(t),
                rq.element(lam), ring=rq, check="full")
        except CrossedError:
            resampled += 1
            if resampled > 50:
                return False, "instance generator exhausted"
            continue
        ok, detail = _decomposition_ok(algebra)
        if not ok:
            return False, f"instance ({e},{g},{t},{lam}): {detail}"
        done += 1

    ok1, d1 = _decomposition_ok(
        instance_from_symbol(2, 3, 5, 0, 1, ring=rq, check="full"))
    ok2, d2 = _decomposition_ok(
        crossed_from_data(2, 3, 5, 1, 7, 11, ring=rq, check="full"))
    if not (ok1 and d1 == "f1-zero-cyclic"):
        return False, f"f1 = 0 branch: {d1}"
    if not (ok2 and d2 == "f2-zero-split-quaternion"):
        return False, f"f2 = 0 branch: {d2}"
    return True, (
        f"symbolic generic run, 20 rational instances ({resampled} resampled), "
        "and both degenerate branches certified"
    )


# ------------------------------------------------------ 8: trace-form chain


def _draw_quartic_params(rng: random.Random):
    while True:
        e, g, t, lam, mu, nu = (_nonzero(rng) for _ in range(6))
        if t != 0 and g not in (t * t, -t * t):
            return e, g, t, lam, mu, nu


def quartic_trace_instance(ring: PolyRing, rng: random.Random,
                           max_resamples: int = 50):
    """A seeded degree-4 instance with full trace data; resamples the
    measure-zero residual degeneracies."""
    resampled = 0
    while True:
        e, g, t, lam, mu, nu = _draw_quartic_params(rng)
        try:
            algebra = instance_from_symbol(
                2, ring.element(e), ring.element(g), ring.element(t),
                ring.element(lam), ring=ring, check="full",
                mu=ring.element(mu), nu=ring.element(nu))
            return trace_data(algebra), resampled
        except (CrossedError, QuadFormError):
            resampled += 1
            if resampled > max_resamples:
                raise


def check_trace_form_certificates(seed: int):
    ring = PolyRing((), 4)
    rng = _rng(seed, "traceform")
    resampled_total = 0
    for k in range(10):
        try:
            td, resampled = quartic_trace_instance(ring, rng)
        except (CrossedError, QuadFormError):
            return False, f"instance {k}: generator exhausted"
        resampled_total += resampled
        bad = [c["name"] for c in td.checks if not c["ok"]]
        if bad:
            return False, f"instance {k}: identities {bad} fail"
        report = replay_trace_form_equivalence(td)
        if not (report["ok"] and report["final_matches_equiv_form"]
                and report["start_dim"] == 20 and report["final_dim"] == 16):
            return False, f"instance {k}: certificate replay fails"
        if not report["audit"]["only_four_generators"]:
            return False, f"instance {k}: entry audit exceeds four generators"
    return True, (
        f"10 instances ({resampled_total} resampled): trace identities with "
        "the quartic-root witness, 20 -> 16 move replay onto the reduced "
        "form, four-generator entry audit"
    )


# --------------------------------------- 9: Hilbert symbols and split forms


def check_hilbert_and_hyperbolic(seed: int):
    rng = _rng(seed, "hilbert")
    problems = []
    for _ in range(100):
        a = Fraction(rng.choice([-1, 1]) * rng.randint(1, 60), rng.randint(1, 20))
        b = Fraction(rng.choice([-1, 1]) * rng.randint(1, 60), rng.randint(1, 20))
        product = 1
        for place in hilbert_places([a, b]):
            product *= hilbert_symbol(a, b, place)
        if product != 1:
            problems.append(f"product formula fails at ({a},{b})")
            break
    for _ in range(500):
        a, b, c = (Fraction(rng.choice([-1, 1]) * rng.randint(1, 30),
                            rng.randint(1, 10)) for _ in range(3))
        places = hilbert_places([a, b, c])
        place = places[rng.randrange(len(places))]
        if hilbert_symbol(a * b, c, place) != (
                hilbert_symbol(a, c, place) * hilbert_symbol(b, c, place)):
            problems.append(f"bimultiplicativity fails at ({a},{b},{c})")
            break
        if hilbert_symbol(a, b, place) != hilbert_symbol(b, a, place):
            problems.append(f"symmetry fails at ({a},{b})")
            break

    ring = PolyRing((), 4)
    if hyperbolic_sufficient(trace_form(MatrixAlgebra(ring, 2))) is None:
        problems.append("2x2 matrix trace form does not pair")
    for _ in range(5):
        a = rng.choice([-1, 1]) * rng.randint(1, 30)
        b = rng.choice([-1, 1]) * rng.randint(1, 30)
        quaternion = SymbolAlgebra(ring, ring.element(a), ring.element(b), 2)
        matrix_e = TensorAlgebra([MatrixAlgebra(ring, 2), quaternion])
        cert = hyperbolic_sufficient(trace_form(matrix_e))
        if cert is None or len(cert["pairs"]) != 8:
            problems.append(f"matrix-of-quaternion ({a},{b}) does not pair")
    if problems:
        return False, "; ".join(problems[:6])
    return True, ("product formula on 100 pairs, bimultiplicativity and "
                  "symmetry on 500 triples, matrix and matrix-of-quaternion "
                  "trace forms fully paired")


# ------------------------------------------------------------ 10: determinism


def _seeded_draws(seed: int) -> dict:
    """The raw parameter streams behind checks 7, 8, and 9, re-derived."""
    rng7 = _rng(seed, "decomposition")
    draws7 = [tuple(map(str, _draw_symbol_params(rng7))) for _ in range(20)]
    rng8 = _rng(seed, "traceform")
    draws8 = [tuple(map(str, _draw_quartic_params(rng8))) for _ in range(10)]
    rng9 = _rng(seed, "hilbert")
    draws9 = [str(Fraction(rng9.choice([-1, 1]) * rng9.randint(1, 60),
                           rng9.randint(1, 20))) for _ in range(40)]
    return {"decomposition": draws7, "traceform": draws8, "hilbert": draws9}


def _pipeline_probe(seed: int) -> dict:
    ring = PolyRing((), 4)
    td, _ = quartic_trace_instance(ring, _rng(seed, "probe"))
    report = replay_trace_form_equivalence(td)
    return {
        "trace": {k: str(v) for k, v in td.values().items()},
        "replay": {k: report[k] for k in
                   ("reading", "start_dim", "moves", "final_dim",
                    "final_matches_equiv_form", "ok")},
    }


def check_seeded_determinism(seed: int):
    first = json.dumps(_seeded_draws(seed), sort_keys=True)
    second = json.dumps(_seeded_draws(seed), sort_keys=True)
    probe_a = json.dumps(_pipeline_probe(seed), sort_keys=True)
    probe_b = json.dumps(_pipeline_probe(seed), sort_keys=True)
    if first != second:
        return False, "seeded parameter streams diverge between replays"
    if probe_a != probe_b:
        return False, "replayed trace-form pipeline serializes differently"
    return True, (
        "seeded parameter streams and a full trace-form pipeline replay "
        "serialize byte-identically; whole-envelope identity is exercised "
        "by running selftest twice with one seed"
    )


# ----------------------------------------------------------------- registry


CRITERIA = (
    ("udn-normalized-factor-sets", check_udn_factor_sets),
    ("relation-kernel-faithfulness-family", check_relation_kernel_family),
    ("tensor-square-faithfulness-family", check_tensor_square_family),
    ("formanek-kernel-splitting", check_formanek_kernel),
    ("parameter-count-bounds", check_parameter_bounds),
    ("power-cancellation-identity", check_power_cancellation),
    ("quartic-decomposition-pipeline", check_decomposition_pipeline),
    ("quartic-trace-form-certificates", check_trace_form_certificates),
    ("hilbert-symbols-and-hyperbolic-forms", check_hilbert_and_hyperbolic),
    ("seeded-determinism", check_seeded_determinism),
)


def run_criterion(index: int, seed: int) -> dict:
    name, fn = CRITERIA[index]
    verdict, details = fn(seed)
    if verdict is True:
        status = "pass"
    elif verdict is False:
        status = "fail"
    else:
        status = "inconclusive"
    return {"name": name, "status": status, "details": details}


def _run_one(args) -> dict:
    return run_criterion(*args)


def run_all(seed: int, jobs: int = 1,
            indices: Optional[list] = None) -> list[dict]:
    """All acceptance checks in registry order; `jobs` > 1 runs them in
    worker processes, merged back by criterion order."""
    idx = list(indices) if indices is not None else list(range(len(CRITERIA)))
    if jobs > 1:
        from concurrent.futures import ProcessPoolExecutor
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(_run_one, [(i, seed) for i in idx]))
    return [run_criterion(i, seed) for i in idx]
