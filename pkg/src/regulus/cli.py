"""Batch command-line surface.

Subcommands: expand, verify, identities, density, discover, modcheck,
oracle.  Exit codes: 0 all selected checks pass, 1 verification failure,
2 usage/parse error, 3 truncation budget exceeded.  The truncation budget
resolves as: --budget flag, then REGULUS_BUDGET environment variable, then
the built-in default of 2e6.
"""

from __future__ import annotations

import argparse
import json
import os
import re
import sys
from concurrent.futures import ThreadPoolExecutor

from . import claims as claims_mod
from .congruence import (
    DEFAULT_BUDGET,
    CongruenceClaim,
    ProgressionRef,
    SeriesCache,
    density_scan,
    discover,
    verify_any,
    warm_cache,
)
from .errors import (
    BudgetExceeded,
    DomainError,
    ParseError,
    RegulusError,
    UnknownIdentity,
    UnknownSelection,
)
from .etaq import (
    FQuotient,
    catalog_json,
    expand_fquotient,
    identity_ids,
    verify_identity,
)
from .modform import (
    EtaQuotientSpec,
    b_series_check,
    character_of,
    check_ono_conditions,
    is_holomorphic,
    weight,
)
from .oracles import (
    count_distinct,
    count_lregular,
    count_partitions,
    count_tuple,
    ped_count,
)
from .series import RingSpec, ZZ

_USAGE_ERRORS = (
    ParseError,
    UnknownSelection,
    UnknownIdentity,
    DomainError,
    ValueError,
)


def _emit(lines: list[str], out: str | None):
    text = "\n".join(lines) + ("\n" if lines else "")
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _resolve_budget(args) -> int:
    if args.budget is not None:
        return args.budget
    env = os.environ.get("REGULUS_BUDGET")
    if env:
        return int(env)
    return DEFAULT_BUDGET


def _parse_int_list(text: str) -> list[int]:
    """Accept "3", "3,5,7" and "0..2"."""
    text = text.strip()
    m = re.fullmatch(r"(-?\d+)\s*\.\.\s*(-?\d+)", text)
    if m:
        lo, hi = int(m.group(1)), int(m.group(2))
        return list(range(lo, hi + 1))
    return [int(tok) for tok in text.split(",") if tok.strip()]


def _parse_progression(text: str) -> tuple[int, int]:
    m = re.fullmatch(r"\s*(\d+)\s*\*?\s*n\s*(?:\+\s*(\d+))?\s*", text)
    if not m:
        raise ParseError(f"cannot parse progression {text!r}")
    return int(m.group(1)), int(m.group(2) or 0)


def _parse_eta_literal(text: str) -> EtaQuotientSpec:
    """Parse spec literals like ``N=16; eta(4)^6 eta(2)^-3``."""
    m = re.match(r"\s*N\s*=\s*(\d+)\s*;\s*", text)
    if not m:
        raise ParseError("eta-quotient literal must start with 'N=<level>;'", 0)
    level = int(m.group(1))
    exps: dict[int, int] = {}
    pos = m.end()
    token = re.compile(r"\s*(?:eta\((\d+)\)(?:\^(-?\d+))?|\*)")
    while pos < len(text):
        tm = token.match(text, pos)
        if not tm:
            raise ParseError(f"unexpected character {text[pos]!r}", pos)
        if tm.group(1) is not None:
            d = int(tm.group(1))
            r = int(tm.group(2) or 1)
            exps[d] = exps.get(d, 0) + r
        pos = tm.end()
    if not exps:
        raise ParseError("no eta factors found", len(text))
    return EtaQuotientSpec.make(level, exps)


def _parse_kv_params(pairs: list[str]) -> dict:
    out = {}
    for pair in pairs:
        if "=" not in pair:
            raise ParseError(f"expected key=value, got {pair!r}")
        key, val = pair.split("=", 1)
        key = key.strip()
        if key == "l":
            key = "ell"
        out[key] = int(val)
    return out


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------


def _cmd_expand(args) -> int:
    budget = _resolve_budget(args)
    if args.trunc > budget:
        raise BudgetExceeded(f"trunc {args.trunc} exceeds budget {budget}")
    fq = FQuotient.parse(args.fquotient)
    ring = RingSpec.mod(args.mod) if args.mod else ZZ
    series = expand_fquotient(fq, args.trunc, ring)
    if args.format == "json":
        payload = {
            "fquotient": fq.as_json(),
            "trunc": args.trunc,
            "modulus": args.mod,
            "coeffs": series.coeffs(),
        }
        _emit([json.dumps(payload)], args.out)
    else:
        rows = ["n,coefficient"] + [
            f"{n},{c}" for n, c in enumerate(series.coeffs())
        ]
        _emit(rows, args.out)
    return 0


def _theorem_selection(args) -> list:
    selected = []
    override_lists = {}
    if args.alpha:
        override_lists["alpha"] = _parse_int_list(args.alpha)
    if args.p:
        override_lists["p"] = _parse_int_list(args.p)
    if args.k is not None:
        override_lists["k"] = [args.k]
    if args.t is not None:
        override_lists["t"] = [args.t]
    if args.ell:
        override_lists["ell"] = _parse_int_list(args.ell)
    if args.primes:
        override_lists["primes"] = [tuple(_parse_int_list(args.primes))]
    for tid in args.theorem or []:
        if tid == "all":
            selected += claims_mod.default_claims()
            continue
        grid = claims_mod.theorem_params(tid)
        keys = sorted({key for entry in grid for key in entry})
        overrides = {k: v for k, v in override_lists.items() if k in keys}
        if overrides:
            new_grid = [{}]
            for key in keys:
                if key in overrides:
                    values = overrides[key]
                else:
                    values, seen = [], set()
                    for entry in grid:
                        if repr(entry[key]) not in seen:
                            seen.add(repr(entry[key]))
                            values.append(entry[key])
                new_grid = [
                    dict(g, **{key: v}) for g in new_grid for v in values
                ]
            grid = new_grid
        for params in grid:
            selected += claims_mod.generate_family(tid, **params)
    return selected


def _cmd_verify(args) -> int:
    budget = _resolve_budget(args)
    selected = _theorem_selection(args)
    if args.claims_file:
        with open(args.claims_file) as fh:
            data = json.load(fh)
        selected += [CongruenceClaim.from_json(d) for d in data]
    if args.claim:
        by_id = {c.claim_id: c for c in claims_mod.default_claims()}
        for cid in args.claim:
            if cid not in by_id:
                raise UnknownSelection(f"unknown claim {cid!r}")
            selected.append(by_id[cid])
    identity_reports = []
    for ident in args.identity or []:
        identity_reports.append(verify_identity(ident, args.trunc))
    if not selected and not identity_reports:
        selected = claims_mod.default_claims()

    cache = SeriesCache()
    warm_cache(selected, args.nmax, cache, budget)
    if args.jobs > 1:
        with ThreadPoolExecutor(max_workers=args.jobs) as pool:
            reports = list(
                pool.map(
                    lambda c: verify_any(c, args.nmax, cache, budget), selected
                )
            )
    else:
        reports = [verify_any(c, args.nmax, cache, budget) for c in selected]
    reports += identity_reports
    reports.sort(key=lambda r: r.claim_id)

    if args.format == "csv":
        rows = ["claim_id,status,tag,n_max,counterexample_n,counterexample_value"]
        for r in reports:
            ce = r.counterexample or ("", "")
            rows.append(
                f"{r.claim_id},{'pass' if r.passed else 'fail'},{r.tag},"
                f"{r.n_max},{ce[0]},{ce[1]}"
            )
    else:
        rows = [json.dumps(r.to_json()) for r in reports]
    _emit(rows, args.out)
    failures = [r for r in reports if not r.passed and r.tag != "CONJECTURE"]
    return 1 if failures else 0


def _cmd_identities(args) -> int:
    if args.export:
        with open(args.export, "w") as fh:
            json.dump(catalog_json(), fh, indent=2)
    ids = args.identity or identity_ids()
    reports = [verify_identity(i, args.trunc) for i in ids]
    rows = [json.dumps(r.to_json()) for r in reports]
    _emit(rows, args.out)
    return 0 if all(r.passed for r in reports) else 1


def _cmd_density(args) -> int:
    budget = _resolve_budget(args)
    series = claims_mod.series_by_name(args.series)
    a, b = _parse_progression(args.ap) if args.ap else (1, 0)
    checkpoints = _parse_int_list(args.checkpoints)
    rep = density_scan(
        ProgressionRef(series, a, b),
        args.mod,
        args.residue,
        checkpoints,
        budget=budget,
    )
    if args.format == "json":
        _emit([json.dumps(rep.to_json())], args.out)
    else:
        rows = ["X,count,proportion"] + [
            f"{x},{c},{p:.6f}" for x, c, p in rep.csv_rows()
        ]
        _emit(rows, args.out)
    return 0


def _cmd_discover(args) -> int:
    budget = _resolve_budget(args)
    series = claims_mod.series_by_name(args.series)
    found = discover(
        series,
        args.mod,
        args.amax,
        args.nmax,
        min_support=args.min_support,
        budget=budget,
    )
    rows = ["a,b,indices_checked,label"]
    for a, b, count in found:
        rows.append(f"{a},{b},{count},EMPIRICAL")
    _emit(rows, args.out)
    return 0


def _cmd_modcheck(args) -> int:
    if args.bseries:
        params = _parse_kv_params(args.bseries)
        rep = b_series_check(
            params["ell"],
            params["p"],
            params["a"],
            params["m"],
            params["k"],
            args.trunc,
        )
        lines = [
            f"params: l={rep.params[0]} p={rep.params[1]} a={rep.params[2]} "
            f"m={rep.params[3]} k={rep.params[4]}",
            f"congruence mod p^m to trunc {args.trunc}: "
            f"{'pass' if rep.congruence.passed else 'fail'}",
            f"stated_level: {rep.stated_level}",
            f"minimal_level: {rep.min_level}",
            f"level_consistent: {rep.level_consistent}",
            f"cusp_orders_nonnegative: {rep.cusp_ok}",
            f"min_cusp_order: {rep.min_cusp_order}",
        ]
        if rep.notes:
            lines.append(f"notes: {rep.notes}")
        _emit(lines, args.out)
        return 0 if rep.passed else 1

    spec = _parse_eta_literal(args.spec)
    lines = [f"spec: {spec.label()}", f"weight: {weight(spec)}"]
    reason = check_ono_conditions(spec)
    if reason is not None:
        lines.append(f"conditions: fail ({reason})")
        _emit(lines, args.out)
        return 1
    lines.append("conditions: pass")
    chi = character_of(spec)
    lines.append(
        "character: trivial"
        if chi.is_trivial
        else f"character: kronecker({chi.discriminant}, .)"
    )
    verdict = is_holomorphic(spec)
    lines.append(f"verdict: {verdict.status}")
    lines.append("divisor,order,sign")
    for d, order in verdict.orders:
        sign = "+" if order > 0 else ("0" if order == 0 else "-")
        lines.append(f"{d},{order},{sign}")
    _emit(lines, args.out)
    return 0


_ORACLE_KINDS = {
    "lregular": lambda args: count_lregular(args.ell, args.nmax),
    "tuple": lambda args: count_tuple(args.ell, args.k, args.nmax),
    "ped": lambda args: ped_count(args.nmax),
    "partition": lambda args: count_partitions(args.nmax),
    "distinct": lambda args: count_distinct(args.nmax),
}


def _cmd_oracle(args) -> int:
    table = _ORACLE_KINDS[args.kind](args)
    rows = ["n,value"] + [f"{n},{v}" for n, v in enumerate(table.values)]
    _emit(rows, args.out)
    return 0


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="regulus",
        description="q-series expansion and congruence verification for "
        "k-tuple l-regular partition counts",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--out", help="write output to this path instead of stdout")
        p.add_argument("--budget", type=int, default=None,
                       help="truncation budget (default: REGULUS_BUDGET or 2000000)")

    p = sub.add_parser("expand", help="dump coefficients of an f-quotient")
    p.add_argument("fquotient", help='literal such as "3 * f2^4 f3^5 / (f1^8 f6)"')
    p.add_argument("--trunc", type=int, required=True)
    p.add_argument("--mod", type=int, default=None)
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    common(p)
    p.set_defaults(func=_cmd_expand)

    p = sub.add_parser("verify", help="run congruence claims")
    p.add_argument("--theorem", action="append",
                   help="theorem family id, or 'all' (repeatable)")
    p.add_argument("--claim", action="append", help="claim id (repeatable)")
    p.add_argument("--identity", action="append",
                   help="identity id to verify alongside claims (repeatable)")
    p.add_argument("--claims-file", help="JSON file with claim objects")
    p.add_argument("--nmax", type=int, default=None,
                   help="indices per claim (default: fill the budget)")
    p.add_argument("--trunc", type=int, default=300,
                   help="truncation for --identity checks")
    p.add_argument("--alpha", help="family power parameter, e.g. 0..2")
    p.add_argument("--p", help="prime parameter(s), e.g. 5,7")
    p.add_argument("--k", type=int, default=None)
    p.add_argument("--t", type=int, default=None)
    p.add_argument("--ell", help="regularity parameter(s)")
    p.add_argument("--primes", help="comma list for the multi-prime family")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--format", choices=("json", "csv"), default="json")
    common(p)
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("identities", help="verify the product-identity catalog")
    p.add_argument("--identity", action="append")
    p.add_argument("--trunc", type=int, default=300)
    p.add_argument("--export", help="write the catalog as JSON to this path")
    common(p)
    p.set_defaults(func=_cmd_identities)

    p = sub.add_parser("density", help="zero-density table of a progression")
    p.add_argument("--series", required=True, help="name (T2, ped, ...) or literal")
    p.add_argument("--ap", help='progression "9n+1" (default n)')
    p.add_argument("--mod", type=int, required=True)
    p.add_argument("--residue", type=int, default=0)
    p.add_argument("--checkpoints", required=True, help="e.g. 1000,10000,100000")
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    common(p)
    p.set_defaults(func=_cmd_density)

    p = sub.add_parser("discover", help="scan for vanishing progressions")
    p.add_argument("--series", required=True)
    p.add_argument("--mod", type=int, required=True)
    p.add_argument("--amax", type=int, required=True)
    p.add_argument("--nmax", type=int, required=True)
    p.add_argument("--min-support", type=int, default=16)
    common(p)
    p.set_defaults(func=_cmd_discover)

    p = sub.add_parser("modcheck", help="eta-quotient modularity verdict")
    p.add_argument("spec", nargs="?", help='literal like "N=16; eta(4)^6"')
    p.add_argument("--bseries", nargs="+", metavar="KEY=VAL",
                   help="B-series parameters: l= p= a= m= k=")
    p.add_argument("--trunc", type=int, default=2400,
                   help="truncation for the B-series congruence check")
    common(p)
    p.set_defaults(func=_cmd_modcheck)

    p = sub.add_parser("oracle", help="dump a brute-force counting table")
    p.add_argument("--kind", choices=sorted(_ORACLE_KINDS), required=True)
    p.add_argument("--ell", type=int, default=2)
    p.add_argument("--k", type=int, default=3)
    p.add_argument("--nmax", type=int, required=True)
    common(p)
    p.set_defaults(func=_cmd_oracle)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "modcheck" and not args.spec and not args.bseries:
        parser.error("modcheck needs a spec literal or --bseries")
    try:
        return args.func(args)
    except BudgetExceeded as ex:
        print(f"error: {ex}", file=sys.stderr)
        return 3
    except _USAGE_ERRORS as ex:
        print(f"error: {ex}", file=sys.stderr)
        return 2
    except RegulusError as ex:
        print(f"error: {ex}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
