"""Command-line surface.

Every command emits a machine-readable JSON report (the canonical format;
all integers are decimal strings so 64-bit consumers never overflow) or a
human-readable table derived from it.  Exit status: 0 = success/certified,
1 = a verification or certification failed, 2 = input or usage error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from .arithmetic import (
    KummerPair,
    SearchBoundError,
    biquadratic_place_records,
    certify,
    find_p,
    find_q,
)
from .cohomology import dimension_shift_check, h1, sha_cyc, verify_augmentation_lemma
from .finite_groups import (
    DEFAULT_ORDER_LIMIT,
    all_subgroups,
    builtin_group,
    cyclic_subgroups,
    full_subgroup,
    group_from_json,
    subgroup_generated,
)
from .g_modules import augmentation_ideal, group_ring, module_from_json, trivial_module

LIMIT_ENV_VAR = "TAMEAPPROX_GROUP_LIMIT"


class UsageError(ValueError):
    pass


def _load_group(source, limit):
    if source.startswith("builtin:"):
        return builtin_group(source[len("builtin:"):], limit=limit)
    try:
        with open(source, "r", encoding="utf-8") as fh:
            obj = json.load(fh)
    except OSError as exc:
        raise UsageError(f"cannot read group file {source!r}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise UsageError(f"group file {source!r} is not valid JSON: {exc}") from exc
    return group_from_json(obj, limit=limit)


def _load_module(spec, group, modulus):
    if spec == "aug":
        m = modulus if modulus else group.order
        return augmentation_ideal(group, m)[0]
    if spec == "ring":
        m = modulus if modulus else group.order
        return group_ring(group, m)
    if spec.startswith("trivial:"):
        try:
            m = int(spec.split(":", 1)[1])
        except ValueError:
            raise UsageError(f"bad trivial module spec {spec!r}; expected trivial:<m>") from None
        return trivial_module(group, m)
    try:
        with open(spec, "r", encoding="utf-8") as fh:
            obj = json.load(fh)
    except OSError as exc:
        raise UsageError(f"cannot read module file {spec!r}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise UsageError(f"module file {spec!r} is not valid JSON: {exc}") from exc
    return module_from_json(group, obj)


def _structure_json(structure):
    return [str(d) for d in structure.invariant_factors]


def _cocycle_json(group, rep):
    return {group.names[g]: [str(x) for x in rep[g]] for g in range(group.order)}


def _emit(args, report, table_lines):
    if args.format == "json":
        text = json.dumps(report, indent=2) + "\n"
    else:
        text = "\n".join(table_lines) + "\n"
    if args.output == "-":
        sys.stdout.write(text)
    else:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)


def _cmd_h1(args, limit):
    group = _load_group(args.group, limit)
    module = _load_module(args.module, group, args.modulus)
    result = h1(group, module)
    report = {
        "command": "h1",
        "group": {"source": args.group, "order": str(group.order)},
        "module": {"label": module.label, "modulus": str(module.modulus),
                   "rank": str(module.rank)},
        "structure": _structure_json(result.structure),
        "cocycles": [
            {"order": str(order), "values": _cocycle_json(group, rep)}
            for order, rep in zip(result.basis_correspondence, result.cocycle_reps)
        ],
    }
    lines = [f"H^1 structure: {result.structure}"]
    for order, rep in zip(result.basis_correspondence, result.cocycle_reps):
        lines.append(f"generator of order {order}:")
        for g in range(group.order):
            lines.append(f"  z({group.names[g]}) = {list(rep[g])}")
    return 0, report, lines


def _cmd_sha_cyc(args, limit):
    group = _load_group(args.group, limit)
    module = _load_module(args.module, group, args.modulus)
    structure = sha_cyc(group, module)
    report = {
        "command": "sha-cyc",
        "group": {"source": args.group, "order": str(group.order)},
        "module": {"label": module.label, "modulus": str(module.modulus),
                   "rank": str(module.rank)},
        "structure": _structure_json(structure),
    }
    return 0, report, [f"Sha^1_cyc structure: {structure}"]


def _cmd_verify_lemma(args, limit):
    group = _load_group(args.group, limit)
    rep = verify_augmentation_lemma(group)
    report = {
        "command": "verify-lemma",
        "group": {"source": args.group, "order": str(rep.order),
                  "exponent": str(rep.exponent)},
        "expected": _structure_json(rep.expected),
        "computed": _structure_json(rep.computed),
        "pass": rep.passed,
    }
    lines = [
        f"group order n = {rep.order}, exponent e = {rep.exponent}, f = n/e = {rep.order // rep.exponent}",
        f"expected Sha^1_cyc(G, I): {rep.expected}",
        f"computed Sha^1_cyc(G, I): {rep.computed}",
        "PASS" if rep.passed else "FAIL",
    ]
    return (0 if rep.passed else 1), report, lines


def _parse_subgroup_flags(group, args):
    subs = list(cyclic_subgroups(group))
    if not any(s.order == group.order for s in subs):
        subs.append(full_subgroup(group))
    if args.all_subgroups:
        subs = all_subgroups(group)
    for spec in args.subgroup or ():
        try:
            gens = [int(x) for x in spec.split(",") if x.strip() != ""]
        except ValueError:
            raise UsageError(f"bad --subgroup spec {spec!r}; expected comma-separated indices") from None
        subs.append(subgroup_generated(group, gens))
    return subs


def _cmd_dimension_shift(args, limit):
    group = _load_group(args.group, limit)
    subs = _parse_subgroup_flags(group, args)
    reports = dimension_shift_check(group, subs)
    all_pass = all(r.passed for r in reports)
    report = {
        "command": "dimension-shift",
        "group": {"source": args.group, "order": str(group.order)},
        "subgroups": [
            {
                "order": str(r.subgroup.order),
                "elements": [group.names[x] for x in r.subgroup.elements],
                "ideal_h1": _structure_json(r.ideal_h1),
                "ideal_expected": _structure_json(r.ideal_expected),
                "ring_h1": _structure_json(r.ring_h1),
                "pass": r.passed,
            }
            for r in reports
        ],
        "pass": all_pass,
    }
    lines = []
    for r in reports:
        status = "ok" if r.passed else "FAIL"
        lines.append(
            f"|H| = {r.subgroup.order:>3}  H^1(H, I|_H) = {str(r.ideal_h1):<12}"
            f" expected {str(r.ideal_expected):<12} H^1(H, ring|_H) = {str(r.ring_h1):<6} {status}"
        )
    lines.append("PASS" if all_pass else "FAIL")
    return (0 if all_pass else 1), report, lines


def _cmd_sigma0(args, limit):
    try:
        pair = KummerPair(args.a, args.b)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    records, witnesses = biquadratic_place_records(pair)
    sigma0 = [str(rec.label) for rec in records if rec.subgroup.order == 4]
    report = {
        "command": "sigma0",
        "a": str(pair.a),
        "b": str(pair.b),
        "sigma0": sigma0,
        "places": [
            {
                "place": str(w["place"]),
                "ramified": w["ramified"],
                "square_classes": {k: v for k, v in w["square_classes"].items()},
                "decomposition_order": str(w["decomposition_order"]),
                "cyclic": w["cyclic"],
                "elements": w["elements"],
            }
            for w in witnesses
        ],
    }
    lines = [f"Sigma_0(Q, I) for Q(sqrt {pair.a}, sqrt {pair.b}): {{{', '.join(sigma0)}}}"]
    for w in witnesses:
        lines.append(
            f"place {w['place']:>6}: |D| = {w['decomposition_order']}"
            f" ({'cyclic' if w['cyclic'] else 'full, non-cyclic'})"
            f" ramified={w['ramified']}"
        )
    return 0, report, lines


def _cmd_find_params(args, limit):
    ell, n = args.ell, args.n
    if ell is None or n is None:
        raise UsageError("find-params requires --ell and --n")
    if args.p is not None:
        p = args.p
    else:
        p = find_p(ell, n, start=args.start)
    q = find_q(ell, p, bound=args.search_bound)
    report = {
        "command": "find-params",
        "ell": str(ell), "n": str(n), "p": str(p), "q": str(q),
    }
    return 0, report, [f"ell = {ell}, n = {n}, p = {p}, q = {q}"]


def _cmd_certify(args, limit):
    if args.ell is None or args.n is None or args.p is None:
        raise UsageError("certify requires --ell, --n and --p")
    cert = certify(args.ell, args.n, args.p, args.q,
                   search_bound=args.search_bound,
                   hensel_precision=args.hensel_precision,
                   group_limit=limit)
    report = cert.to_json_dict()
    lines = [
        f"certificate for (ell, n, p, q) = ({cert.ell}, {cert.n}, {cert.p}, {cert.q})",
        f"field: {cert.field_desc}",
        f"Sigma_0: {{{', '.join(str(v) for v in cert.sigma0_labels)}}}"
        + ("" if cert.sigma0_exact else "  (partial: " + cert.sigma0_statement + ")"),
    ]
    for c in cert.checks:
        lines.append(f"  [{'ok' if c.passed else 'FAIL'}] {c.name}")
    if cert.sha_sigma0 is not None:
        lines.append(f"Sha^1_Sigma0 = {cert.sha_sigma0}, Sha^1 = {cert.sha_full}")
        for k, v in cert.sha_sigma0_minus.items():
            lines.append(f"Sha^1 without {k}: {v}")
    lines.append(f"conclusion: {cert.conclusion}")
    return (0 if cert.certified else 1), report, lines


def build_parser():
    parser = argparse.ArgumentParser(
        prog="tameapprox",
        description="Certified counterexamples to tame approximation via"
                    " Tate-Shafarevich restriction kernels.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, group=False, module=False, params=False):
        p.add_argument("--format", choices=("json", "table"), default="json",
                       help="output format (JSON is canonical)")
        p.add_argument("--output", default="-", help="output path, '-' for stdout")
        p.add_argument("--limit", type=int, default=None,
                       help=f"group order limit (default 512; env {LIMIT_ENV_VAR})")
        if group:
            p.add_argument("--group", required=True,
                           help="builtin:<name> or path to a group JSON file")
        if module:
            p.add_argument("--module", default="aug",
                           help="aug | ring | trivial:<m> | path to module JSON")
            p.add_argument("--modulus", type=int, default=None,
                           help="modulus for aug/ring (default |G|)")
        if params:
            p.add_argument("--ell", type=int, default=None)
            p.add_argument("--n", type=int, default=None)
            p.add_argument("--p", type=int, default=None)
            p.add_argument("--search-bound", type=int, default=2 ** 32)

    p_h1 = sub.add_parser("h1", help="H^1(G, M) with cocycle representatives")
    common(p_h1, group=True, module=True)

    p_sha = sub.add_parser("sha-cyc", help="kernel of restriction to all cyclic subgroups")
    common(p_sha, group=True, module=True)

    p_lem = sub.add_parser("verify-lemma",
                           help="check Sha^1_cyc(G, I) = Z/(n/e) for the augmentation ideal")
    common(p_lem, group=True)

    p_dim = sub.add_parser("dimension-shift",
                           help="check H^1(H, I|_H) = Z/|H| and H^1(H, ring|_H) = 0")
    common(p_dim, group=True)
    p_dim.add_argument("--all-subgroups", action="store_true",
                       help="run over the full subgroup lattice")
    p_dim.add_argument("--subgroup", action="append", default=None,
                       metavar="I,J,...", help="extra subgroup generated by these element indices")

    p_s0 = sub.add_parser("sigma0",
                          help="places with non-cyclic decomposition group in Q(sqrt a, sqrt b)")
    common(p_s0)
    p_s0.add_argument("--a", type=int, required=True)
    p_s0.add_argument("--b", type=int, required=True)

    p_fp = sub.add_parser("find-params", help="search the (p, q) prime parameters")
    common(p_fp, params=True)
    p_fp.add_argument("--start", type=int, default=2, help="lower bound for the p search")

    p_cert = sub.add_parser("certify", help="build and verify a counterexample certificate")
    common(p_cert, params=True)
    p_cert.add_argument("--q", type=int, default=None,
                        help="companion prime (default: least admissible)")
    p_cert.add_argument("--hensel-precision", type=int, default=8,
                        help="ell-adic precision exponent for the local witness")

    return parser


_COMMANDS = {
    "h1": _cmd_h1,
    "sha-cyc": _cmd_sha_cyc,
    "verify-lemma": _cmd_verify_lemma,
    "dimension-shift": _cmd_dimension_shift,
    "sigma0": _cmd_sigma0,
    "find-params": _cmd_find_params,
    "certify": _cmd_certify,
}


def run(args):
    limit = args.limit
    if limit is None:
        env = os.environ.get(LIMIT_ENV_VAR)
        if env is not None:
            try:
                limit = int(env)
            except ValueError:
                raise UsageError(f"{LIMIT_ENV_VAR} must be an integer, got {env!r}") from None
        else:
            limit = DEFAULT_ORDER_LIMIT
    status, report, lines = _COMMANDS[args.command](args, limit)
    _emit(args, report, lines)
    return status


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return run(args)
    except (UsageError, SearchBoundError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
