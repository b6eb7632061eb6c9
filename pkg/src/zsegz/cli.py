"""Command-line interface with reproducible, machine-readable output.

Sequence grammar (shared by ``--seq`` and all emitted sequences):

    --group n1,n2,...          moduli of the group
    --seq "(r1,...,rd):m ..."  whitespace-separated entries, ":m" optional

Exit codes: 0 success, 2 parse/usage error, 3 inconclusive search,
4 verification failure.  JSON output carries ``schema: 1`` and echoes the
seed and orbit budget; identical configuration and seed produce identical
bytes regardless of ``--threads``.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import acceptance, congruences
from .constants import (
    DEFAULT_NODE_BUDGET,
    InconclusiveSearchError,
    LengthSpec,
    MissingCeilingError,
    NoTheoremError,
    UnsoundCeilingError,
    compute_constant,
    default_symmetry,
)
from .constructions import build_construction, construction_names, verify_construction
from .counting import count_fixed_length, count_mod, count_table
from .sequences import (
    SequenceParseError,
    SymmetryMode,
    format_seq,
    parse_entries,
    parse_group,
)

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_INCONCLUSIVE = 3
EXIT_VERIFY = 4

_CONGRUENCE_IDS = (
    "reiher",  # alias of reiher_2d
    "reiher_2d",
    "cw_rank3_full",
    "cw_rank3_shift",
    "cw_general_full",
    "cw_general_shift",
    "dichotomy_4p",
    "lset_bound",
)


def _build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="zsegz",
        description="Exact zero-sum subsequence counting, constructions, "
        "congruence checks, and constant search over finite abelian groups.",
    )
    ap.add_argument("--format", choices=("json", "csv", "text"), default="text")
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--orbit-budget", type=int, default=DEFAULT_NODE_BUDGET)
    ap.add_argument("--threads", type=int, default=1)
    sub = ap.add_subparsers(dest="command", required=True)

    c = sub.add_parser("count", help="zero-sum subsequence counts (k | J)")
    c.add_argument("--group", required=True)
    c.add_argument("--seq", required=True)
    c.add_argument("--k", type=int)
    c.add_argument("--kmax", type=int)
    c.add_argument("--table", action="store_true", help="emit the full count table")
    c.add_argument("--mod", type=int, help="reduce counts mod this prime")

    k = sub.add_parser("constant", help="compute a zero-sum constant exactly")
    k.add_argument("--group", required=True)
    k.add_argument("--lengths", required=True, help="comma-separated target lengths")
    k.add_argument("--modified", action="store_true")
    k.add_argument("--ceiling", type=int)
    k.add_argument(
        "--symmetry",
        choices=("auto", "both", "none", "translation", "automorphism"),
        default="auto",
    )

    b = sub.add_parser("construct", help="generate and verify a known construction")
    b.add_argument("name", choices=construction_names())
    b.add_argument("--n", type=int)
    b.add_argument("--t", type=int)
    b.add_argument("--n1", type=int)
    b.add_argument("--n2", type=int)

    g = sub.add_parser("congruence", help="run a congruence or bound suite")
    g.add_argument("identity", choices=_CONGRUENCE_IDS)
    g.add_argument("--p", type=int, required=True)
    g.add_argument("--d", type=int)
    g.add_argument("--length", help="comma-separated lengths (default: all valid)")
    g.add_argument("--exhaustive", action="store_true")
    g.add_argument("--samples", type=int)

    s = sub.add_parser("selftest", help="run the acceptance suite")
    s.add_argument("--criterion", type=int, help="run a single criterion (1-10)")
    return ap


def _emit(args, payload: dict, csv_rows: list[tuple] | None = None) -> None:
    if args.format == "json":
        doc = {
            "schema": 1,
            "command": args.command,
            "config": {"seed": args.seed, "orbit_budget": args.orbit_budget},
            "result": payload,
        }
        sys.stdout.write(json.dumps(doc, indent=2, sort_keys=True) + "\n")
    elif args.format == "csv":
        if csv_rows is None:
            raise SequenceParseError("csv output is only available for count tables", 0)
        for row in csv_rows:
            sys.stdout.write(",".join(str(x) for x in row) + "\n")
    else:
        _emit_text(payload)


def _emit_text(payload, indent: int = 0) -> None:
    pad = "  " * indent
    if isinstance(payload, dict):
        for key in payload:
            val = payload[key]
            if isinstance(val, (dict, list)) and val:
                sys.stdout.write(f"{pad}{key}:\n")
                _emit_text(val, indent + 1)
            else:
                sys.stdout.write(f"{pad}{key}: {val}\n")
    elif isinstance(payload, list):
        for val in payload:
            if isinstance(val, (dict, list)):
                sys.stdout.write(f"{pad}-\n")
                _emit_text(val, indent + 1)
            else:
                sys.stdout.write(f"{pad}- {val}\n")
    else:
        sys.stdout.write(f"{pad}{payload}\n")


def _cmd_count(args) -> int:
    group = parse_group(args.group)
    seq = parse_entries(group, args.seq)
    if args.k is None and args.kmax is None:
        raise SequenceParseError("count needs --k or --kmax", 0)
    payload: dict = {"group": list(group.moduli), "seq": format_seq(seq)}
    csv_rows: list[tuple] = [("k", "count")]
    if args.table or args.kmax is not None:
        kmax = args.kmax if args.kmax is not None else args.k
        if args.mod:
            rows = count_mod(seq, kmax, args.mod)
            payload["mod"] = args.mod
            identity_col = [rows[k][0] for k in range(kmax + 1)]
            table_rows = rows
        else:
            tab = count_table(seq, kmax)
            identity_col = [tab.counts[k][0] for k in range(kmax + 1)]
            table_rows = [list(r) for r in tab.counts]
        payload["counts"] = {str(k): identity_col[k] for k in range(kmax + 1)}
        csv_rows += [(k, identity_col[k]) for k in range(kmax + 1)]
        if args.table:
            payload["elements"] = [
                "(" + ",".join(map(str, e)) + ")" for e in group.elements()
            ]
            payload["table"] = {str(k): table_rows[k] for k in range(kmax + 1)}
            payload["row_sums"] = {
                str(k): sum(table_rows[k]) for k in range(kmax + 1)
            }
    else:
        if args.mod:
            rows = count_mod(seq, args.k, args.mod)
            val = rows[args.k][0]
            payload["mod"] = args.mod
        else:
            val = count_fixed_length(seq, args.k)
        payload["k"] = args.k
        payload["count"] = val
        csv_rows.append((args.k, val))
    _emit(args, payload, csv_rows)
    return EXIT_OK


def _symmetry_from_flag(flag: str) -> SymmetryMode | None:
    if flag == "auto":
        return None  # let compute_constant choose the strongest sound mode
    if flag == "both":
        return SymmetryMode(use_translation=True, use_automorphism=True)
    if flag == "none":
        return SymmetryMode.none()
    if flag == "translation":
        return SymmetryMode(use_translation=True, use_automorphism=False)
    return SymmetryMode(use_translation=False, use_automorphism=True)


def _cmd_constant(args) -> int:
    group = parse_group(args.group)
    try:
        lens = LengthSpec.fixed(int(x) for x in args.lengths.split(","))
    except ValueError as exc:
        raise SequenceParseError(f"bad --lengths: {exc}", 0) from exc
    sym = _symmetry_from_flag(args.symmetry)
    res = compute_constant(
        group,
        lens,
        modified=args.modified,
        ceiling=args.ceiling,
        sym=sym,
        node_budget=args.orbit_budget,
        threads=args.threads,
    )
    used_sym = sym if sym is not None else default_symmetry(group, lens)
    payload = {
        "group": list(group.moduli),
        "lengths": sorted(lens.lengths),
        "mode": res.mode,
        "value": res.value,
        "ceiling": res.ceiling,
        "ceiling_source": res.ceiling_source,
        "symmetry": {
            "translation": used_sym.use_translation,
            "automorphism": used_sym.use_automorphism,
        },
        "bounds": None
        if res.bounds is None
        else {
            "lower": res.bounds.lower,
            "upper": res.bounds.upper,
            "exact": res.bounds.exact,
            "sources": list(res.bounds.sources),
        },
        "outcomes": [
            {
                "length": o.length,
                "exhausted": o.exhausted,
                "orbits_visited": o.orbits_visited,
                "counterexample": None
                if o.counterexample is None
                else format_seq(o.counterexample),
            }
            for o in res.outcomes
        ],
    }
    if res.bounds is not None and res.bounds.exact is not None:
        payload["matches_table"] = res.value == res.bounds.exact
    _emit(args, payload)
    return EXIT_OK


def _cmd_construct(args) -> int:
    params = {
        k: v
        for k, v in (("n", args.n), ("t", args.t), ("n1", args.n1), ("n2", args.n2))
        if v is not None
    }
    spec, seq = build_construction(args.name, **params)
    report = verify_construction(spec, seq)
    payload = {"sequence": format_seq(seq), "verification": report.as_dict()}
    _emit(args, payload)
    return EXIT_OK if report.all_passed else EXIT_VERIFY


def _congruence_lengths(identity: str, p: int, d: int) -> list[int]:
    if identity == "reiher_2d":
        return [3 * p - 2, 3 * p - 1]
    if identity == "cw_rank3_full":
        return [4 * p - 4]
    if identity == "cw_rank3_shift":
        return [4 * p - 3, 4 * p - 2, 4 * p - 1]
    if identity == "cw_general_full":
        return [(d + 1) * (p - 1)]
    if identity == "cw_general_shift":
        return [(d + 1) * p - m for m in range(d, 0, -1)]
    return [4 * p if identity == "dichotomy_4p" else (d + 1) * p]


def _cmd_congruence(args) -> int:
    if args.identity == "reiher":
        args.identity = "reiher_2d"
    p = args.p
    d = args.d
    if d is None:
        d = {"reiher_2d": 2, "cw_rank3_full": 3, "cw_rank3_shift": 3, "dichotomy_4p": 3}.get(
            args.identity
        )
        if d is None:
            raise SequenceParseError(f"{args.identity} needs --d", 0)
    if args.samples is None and not args.exhaustive:
        raise SequenceParseError("choose --exhaustive or --samples N", 0)
    reports = []
    if args.identity == "dichotomy_4p":
        reports.append(
            congruences.run_dichotomy_suite(
                p, samples=args.samples, seed=args.seed
            )
        )
    elif args.identity == "lset_bound":
        reports.append(
            congruences.lset_bound_check(p, d, samples=args.samples, seed=args.seed)
        )
    else:
        if args.length:
            lengths = [int(x) for x in args.length.split(",")]
        else:
            lengths = _congruence_lengths(args.identity, p, d)
        for L in lengths:
            if args.exhaustive:
                reports.append(congruences.run_exhaustive(args.identity, p, d, L))
            else:
                reports.append(
                    congruences.run_sampled(
                        args.identity, p, d, L, samples=args.samples, seed=args.seed
                    )
                )
    payload = {"reports": reports}
    _emit(args, payload)
    asserted = [r for r in reports if "note" not in r]
    return EXIT_VERIFY if any(r["failures"] for r in asserted) else EXIT_OK


def _cmd_selftest(args) -> int:
    results = acceptance.run_all(
        only=args.criterion, threads=args.threads, budget=args.orbit_budget
    )
    for r in results:
        status = "PASS" if r.passed else "FAIL"
        sys.stdout.write(f"{status} criterion {r.number}: {r.name} ({r.seconds:.1f}s)\n")
        if not r.passed:
            sys.stdout.write(f"     {r.detail}\n")
    ok = all(r.passed for r in results)
    if args.format == "json":
        _emit(
            args,
            {
                "criteria": [
                    {
                        "number": r.number,
                        "name": r.name,
                        "passed": r.passed,
                        "detail": r.detail,
                        "seconds": round(r.seconds, 2),
                    }
                    for r in results
                ],
                "all_passed": ok,
            },
        )
    return EXIT_OK if ok else EXIT_VERIFY


def main(argv: list[str] | None = None) -> int:
    ap = _build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return EXIT_PARSE if exc.code not in (0, None) else 0
    try:
        if args.command == "count":
            return _cmd_count(args)
        if args.command == "constant":
            return _cmd_constant(args)
        if args.command == "construct":
            return _cmd_construct(args)
        if args.command == "congruence":
            return _cmd_congruence(args)
        return _cmd_selftest(args)
    except SequenceParseError as exc:
        sys.stderr.write(f"parse error: {exc}\n")
        return EXIT_PARSE
    except (NoTheoremError, MissingCeilingError, ValueError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_PARSE
    except InconclusiveSearchError as exc:
        sys.stderr.write(f"inconclusive: {exc}\n")
        return EXIT_INCONCLUSIVE
    except UnsoundCeilingError as exc:
        sys.stderr.write(f"verification failure: {exc}\n")
        return EXIT_VERIFY


if __name__ == "__main__":
    raise SystemExit(main())
