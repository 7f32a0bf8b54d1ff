"""Command-line entry point producing JSON certificate envelopes.

Every subcommand builds one envelope: the command name, an echo of the
inputs, the tool version, the seed, and a list of named checks with
status pass / fail / inconclusive.  Envelopes are serialized with sorted
keys and carry no wall-clock field, so equal seeds give byte-identical
output; timing goes to standard error.  Exit codes: 0 when every check
passes, 1 when a mathematical check fails, 2 for invalid input.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from fractions import Fraction

from . import __version__
from .acceptance import (
    CRITERIA,
    formanek_checks,
    quartic_trace_instance,
    relation_kernel_checks,
    run_all,
    tensor_square_checks,
    _decomposition_ok,
    _draw_symbol_params,
    _rng,
)
from .bounds import d_bounds
from .crossed import CrossedError, decompose, instance_from_symbol, standard_ring
from .exactfield import PolyRing, is_square
from .factorsets import (
    check_cocycle,
    check_equivariance,
    expand_wedge_coordinates,
    is_normalized,
    is_reduced,
    normalized_factor_set,
    udn_factor_set,
    wedge_membership,
)
from .groups import builtin_family
from .quadforms import (
    QuadFormError,
    diagonal,
    direct_sum,
    equiv_form,
    invariants_over_Q,
    serre_form,
    witt_apply,
    witt_derive_equivalence,
)

SCHEMA = "brauerlab-envelope/1"


class UsageError(ValueError):
    """Invalid input surfaced as exit code 2."""


def _check(name: str, ok, details) -> dict:
    if ok is True:
        status = "pass"
    elif ok is False:
        status = "fail"
    else:
        status = "inconclusive"
    return {"name": name, "status": status, "details": details}


def _aggregate(checks: list) -> str:
    statuses = {c["status"] for c in checks}
    if "fail" in statuses:
        return "fail"
    if "inconclusive" in statuses:
        return "inconclusive"
    return "pass"


def make_envelope(command: str, inputs: dict, seed, checks: list) -> dict:
    return {
        "schema": SCHEMA,
        "tool": "brauerlab",
        "version": __version__,
        "command": command,
        "input": inputs,
        "seed": seed,
        "checks": checks,
        "status": _aggregate(checks),
        # wall-clock would break byte-identity under equal seeds; real
        # timing is reported on standard error instead
        "timing": None,
    }


def serialize_envelope(envelope: dict) -> str:
    return json.dumps(envelope, sort_keys=True, indent=2) + "\n"


def _parse_fraction(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"not a rational number: {text!r}") from exc


# ------------------------------------------------------------------- bounds


def cmd_bounds(args) -> tuple[dict, list]:
    report = d_bounds(args.n, args.assume)
    data = report.to_json()
    checks = [
        _check("degree-bounds", True, data),
        _check("bounds-consistent", report.lower <= report.upper,
               f"lower {report.lower} <= upper {report.upper}"),
    ]
    return {"n": args.n, "assumptions": list(args.assume)}, checks


# ------------------------------------------------------------------ lattice


def _family_registry() -> dict:
    return {g.name: g for g in builtin_family()}


def cmd_lattice(args) -> tuple[dict, list]:
    if args.formanek is not None:
        if args.formanek < 2:
            raise UsageError("the symmetric-group kernel needs n >= 2")
        res = formanek_checks(args.formanek)
        checks = [
            _check("sequence-exact", res["exact"], f"kernel rank {res['kernel_rank']}"),
            _check("kernel-rank", res["kernel_rank"] == args.formanek ** 2 + 1,
                   f"rank {res['kernel_rank']}, expected n^2 + 1"),
            _check("splitting-unimodular", res["iso_det"] in (1, -1),
                   f"determinant {res['iso_det']}"),
        ]
        return {"formanek": args.formanek}, checks

    registry = _family_registry()
    if args.group not in registry:
        raise UsageError(
            f"unknown group {args.group!r}; choose from {sorted(registry)}")
    group = registry[args.group]
    if args.subgroup:
        subgroup = group.subgroup([s.strip() for s in args.subgroup.split(",")])
    else:
        subgroup = group.trivial_subgroup()

    rel = relation_kernel_checks(group, subgroup, args.r)
    if rel.get("skipped"):
        raise UsageError(
            f"no generating tuple of length {args.r} relative to the "
            f"subgroup; raise --r")
    checks = [
        _check("relation-kernel", rel["ok"], {
            "exact": rel["exact"], "kernel_rank": rel["kernel_rank"],
            "faithful": rel["faithful"], "predicted": rel["predicted"],
            "r": args.r,
        }),
    ]
    tens = tensor_square_checks(group, subgroup)
    if tens.get("skipped"):
        raise UsageError("the tensor-square sequence needs index at least 2")
    checks.append(_check("tensor-square", tens["ok"], {
        "exact": tens["exact"], "basis_rule": tens["basis_rule"],
        "explicit_inverse": tens["explicit_inverse"],
        "faithful": tens["faithful"], "predicted": tens["predicted"],
    }))
    return {
        "group": args.group,
        "subgroup": args.subgroup or "trivial",
        "r": args.r,
    }, checks


# ------------------------------------------------------------- udn-factorset


def cmd_udn_factorset(args) -> tuple[dict, list]:
    if args.n < 2:
        raise UsageError("factor sets need n >= 2")
    mode = args.check
    needs_normalized = mode in ("all", "wedge", "normalization")
    if needs_normalized and args.n % 2 == 0:
        raise UsageError("the normalized factor set needs odd n")
    raw = udn_factor_set(args.n)
    checks = []
    if mode in ("all", "cocycle"):
        cert = check_cocycle(raw)
        checks.append(_check("cocycle-identity", cert.ok,
                             f"{cert.checked} quadruples"))
    if mode in ("all", "equivariance"):
        cert = check_equivariance(raw)
        checks.append(_check("equivariance-raw", cert.ok,
                             f"{cert.checked} entry-generator pairs"))
    if needs_normalized:
        cp = normalized_factor_set(args.n)
        if mode in ("all", "normalization"):
            checks.append(_check("reduced-normalized-predicates",
                                 is_reduced(cp) and is_normalized(cp),
                                 "degenerate entries trivial, reversal products trivial"))
            bad = sum(
                0 if (cp[(i, j, h)] * cp[(h, j, i)]).is_trivial() else 1
                for i in range(1, args.n + 1)
                for j in range(1, args.n + 1)
                for h in range(1, args.n + 1))
            checks.append(_check("reversal-products", bad == 0,
                                 f"{args.n ** 3} products, {bad} nontrivial"))
        if mode in ("all", "equivariance"):
            cert = check_equivariance(cp)
            checks.append(_check("equivariance-normalized", cert.ok,
                                 f"{cert.checked} entry-generator pairs"))
        if mode in ("all", "wedge"):
            failures = 0
            total = 0
            for i in range(1, args.n + 1):
                for j in range(1, args.n + 1):
                    for h in range(1, args.n + 1):
                        m = cp[(i, j, h)]
                        coords = wedge_membership(m)
                        total += 1
                        if coords is None or expand_wedge_coordinates(
                                args.n, coords) != m.exponent_tensor():
                            failures += 1
            checks.append(_check("wedge-membership", failures == 0,
                                 f"{total} entries, {failures} escapes"))
    return {"n": args.n, "check": mode}, checks


# --------------------------------------------------------- crossed-decompose


def cmd_crossed_decompose(args) -> tuple[dict, list]:
    if args.m < 2:
        raise UsageError("crossed products here need m >= 2")
    ring = standard_ring(args.m, ())
    checks = []

    def run_one(label: str, algebra) -> None:
        # verdict covers the branch identities plus, on the generic branch,
        # the commutation solve back to a symbol presentation
        ok, detail = _decomposition_ok(algebra)
        payload = decompose(algebra).to_json()
        payload["pipeline"] = detail
        checks.append(_check(label, ok, payload))

    if args.symbol is not None:
        e, g, t, lam = [_parse_fraction(v) for v in args.symbol]
        if e == 0 or g == 0:
            raise UsageError("symbol entries must be nonzero")
        try:
            algebra = instance_from_symbol(
                args.m, ring.element(e), ring.element(g), ring.element(t),
                ring.element(lam), ring=ring, check="full",
                mu=ring.element(_parse_fraction(args.mu)),
                nu=ring.element(_parse_fraction(args.nu)))
        except CrossedError as exc:
            raise UsageError(str(exc)) from exc
        run_one("decomposition", algebra)
        inputs = {"m": args.m, "symbol": [str(v) for v in (e, g, t, lam)],
                  "mu": args.mu, "nu": args.nu}
    else:
        if args.m != 2:
            raise UsageError("--random draws the degree-4 family; use --symbol for larger m")
        rng = _rng(args.seed, "decomposition")
        done = resampled = 0
        while done < args.random:
            e, g, t, lam = _draw_symbol_params(rng)
            try:
                algebra = instance_from_symbol(
                    2, ring.element(e), ring.element(g), ring.element(t),
                    ring.element(lam), ring=ring, check="full")
            except CrossedError:
                resampled += 1
                if resampled > 50:
                    raise UsageError("instance generator exhausted")
                continue
            run_one(f"decomposition-{done}", algebra)
            done += 1
        inputs = {"m": 2, "random": args.random, "resampled": resampled}
    return inputs, checks


# ----------------------------------------------------------------- traceform


def cmd_traceform(args) -> tuple[dict, list]:
    if args.m != 2:
        raise UsageError("trace data needs a degree-4 algebra (m = 2)")
    if args.random < 1:
        raise UsageError("--random needs at least one instance")
    ring = PolyRing((), 4)
    rng = _rng(args.seed, "traceform")
    checks = []
    for k in range(args.random):
        td, _ = quartic_trace_instance(ring, rng)
        checks.append(_check(
            f"instance-{k}-trace-identities",
            all(c["ok"] for c in td.checks),
            {"trace_data": {n: str(v) for n, v in td.values().items()},
             "identity_checks": td.checks}))

        start = serre_form(td)
        moves = witt_derive_equivalence(td)
        final = witt_apply(start, moves)
        target = equiv_form(td)
        matches = final.dim == target.dim and all(
            final.entries[i] == target.entries[i] for i in range(final.dim))
        checks.append(_check(
            f"instance-{k}-move-certificate",
            matches and target.audit["only_four_generators"],
            {"serre_form": [str(e) for e in start.entries],
             "equiv_form": target.audit["entries"],
             "generator_legend": target.generator_legend,
             "moves": [m.to_json() for m in moves],
             "start_dim": start.dim, "final_dim": final.dim,
             "matches_reduced_form": matches,
             "four_generator_audit": target.audit["only_four_generators"]}))

        # the moves are isometries of the trace field (which contains i),
        # so the sound cross-checks are the rank drop and the discriminant
        # square class there; rational invariants are reported in addition
        # whenever the entries happen to lie in Q
        restored = direct_sum(final, diagonal([1, -1, 1, -1], ring=ring))
        disc = ring.element(1)
        for e in list(start.entries) + list(restored.entries):
            disc = disc * e
        square_class_ok = is_square(disc) is not None
        rank_ok = start.dim - final.dim == 4
        detail = {
            "rank_drop": start.dim - final.dim,
            "discriminant_square_class_preserved": square_class_ok,
        }
        ok = rank_ok and square_class_ok
        try:
            inv_start = invariants_over_Q(start)
            inv_final = invariants_over_Q(final)
            detail["rational"] = {
                "start": inv_start, "final": inv_final,
                "discriminant_equal":
                    inv_start["discriminant"] == inv_final["discriminant"],
            }
            ok = ok and inv_start["discriminant"] == inv_final["discriminant"]
        except QuadFormError:
            detail["rational"] = ("entries generate Q(i); "
                                  "rational invariants not defined")
        checks.append(_check(
            f"instance-{k}-invariant-cross-checks", ok, detail))
    return {"m": args.m, "random": args.random}, checks


# ------------------------------------------------------------------ selftest


def cmd_selftest(args) -> tuple[dict, list]:
    if args.criteria:
        try:
            indices = [int(v) - 1 for v in args.criteria.split(",")]
        except ValueError as exc:
            raise UsageError("--criteria wants comma-separated numbers") from exc
        if any(i < 0 or i >= len(CRITERIA) for i in indices):
            raise UsageError(f"criteria run 1..{len(CRITERIA)}")
    else:
        indices = None
    results = run_all(args.seed, jobs=args.jobs, indices=indices)
    checks = [_check(r["name"], r["status"] == "pass"
                     if r["status"] != "inconclusive" else None,
                     r["details"]) for r in results]
    return {
        "seed": args.seed,
        "jobs": args.jobs,
        "criteria": [i + 1 for i in indices] if indices else "all",
    }, checks


# -------------------------------------------------------------------- driver


def _default_jobs() -> int:
    try:
        return max(1, int(os.environ.get("BRAUERLAB_JOBS", "1")))
    except ValueError:
        return 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="brauerlab",
        description="exact certificates for crossed products, lattices, "
                    "factor sets and trace forms")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--out", metavar="FILE",
                       help="write the envelope to FILE instead of stdout")
        p.add_argument("--seed", type=int, default=42,
                       help="seed for all randomness (default 42)")

    p = sub.add_parser("bounds", help="parameter-count bounds for degree n")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--assume", action="append", default=[],
                   metavar="FLAG", help="assumption flags, repeatable")
    common(p)
    p.set_defaults(handler=cmd_bounds)

    p = sub.add_parser("lattice", help="relation-kernel and tensor-square "
                                       "certificates over the builtin family")
    p.add_argument("--group", help="family group name, e.g. S4")
    p.add_argument("--subgroup", help="comma-separated generator cycles")
    p.add_argument("--r", type=int, default=2, choices=(1, 2))
    p.add_argument("--formanek", type=int, metavar="N",
                   help="check the symmetric-group kernel splitting instead")
    common(p)
    p.set_defaults(handler=cmd_lattice)

    p = sub.add_parser("udn-factorset", help="universal-division factor-set checks")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--check", default="all",
                   choices=("all", "cocycle", "equivariance", "wedge",
                            "normalization"))
    common(p)
    p.set_defaults(handler=cmd_udn_factorset)

    p = sub.add_parser("crossed-decompose",
                       help="decomposition certificates for crossed products")
    p.add_argument("--m", type=int, default=2)
    p.add_argument("--symbol", nargs=4, metavar=("E", "G", "T", "LAM"),
                   help="embed one instance from symbol parameters")
    p.add_argument("--mu", default="0", help="alpha1 twist component")
    p.add_argument("--nu", default="0", help="alpha2 twist component")
    p.add_argument("--random", type=int, default=1, metavar="N",
                   help="number of seeded instances (default 1)")
    common(p)
    p.set_defaults(handler=cmd_crossed_decompose)

    p = sub.add_parser("traceform", help="trace data, the 20-entry start "
                                         "form, and the move certificate")
    p.add_argument("--m", type=int, default=2)
    p.add_argument("--random", type=int, default=1, metavar="N")
    common(p)
    p.set_defaults(handler=cmd_traceform)

    p = sub.add_parser("selftest", help="run the acceptance checks")
    p.add_argument("--jobs", type=int, default=_default_jobs(),
                   help="worker processes (default from BRAUERLAB_JOBS)")
    p.add_argument("--criteria", metavar="LIST",
                   help="comma-separated subset, e.g. 1,5,10")
    common(p)
    p.set_defaults(handler=cmd_selftest)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    started = time.monotonic()
    try:
        inputs, checks = args.handler(args)
    except ValueError as exc:
        print(f"brauerlab {args.command}: {exc}", file=sys.stderr)
        return 2
    envelope = make_envelope(args.command, inputs, args.seed, checks)
    text = serialize_envelope(envelope)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as handle:
            handle.write(text)
    else:
        sys.stdout.write(text)
    elapsed = time.monotonic() - started
    print(f"# {args.command}: {envelope['status']} in {elapsed:.2f}s",
          file=sys.stderr)
    return 0 if envelope["status"] == "pass" else 1


if __name__ == "__main__":
    sys.exit(main())
