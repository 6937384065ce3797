"""Command-line surface over the workspace format.

Subcommands: ``verify`` (base axiom checker), ``homology``, ``truncate``
(writes the truncated complex *and* its quotient map into a new workspace),
``preserve`` (preservation report, exit 0 iff green), ``search`` (seeded
counterexample hunt, exit 1 iff one is found).

Exit codes: 0 success or green, 1 red report or counterexample found,
2 usage error, 3 parse or validation error.  ``COALG_SEED`` overrides
``--seed``.  All output is deterministic given argv, files, and seed;
the CLI adds no logic of its own on top of the library calls.
"""

from __future__ import annotations

import argparse
import os
import sys

from .complexes import NotAChainMap, NotAComplex, homology, truncate
from .structures import AxiomReport
from .transfer import (
    BaseStructureInvalid,
    SearchConfig,
    normalize_kind,
    preservation_report,
    search_counterexample,
)
from .workspace import (
    ParseError,
    SchemaError,
    ValidationError,
    Workspace,
    emit_report,
    emit_workspace,
    parse_workspace,
    workspace_for_structure,
)


class _UsageError(Exception):
    pass


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="homtrunc",
        description="exact truncation of chain complexes and transfer of (co)algebraic structure",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def with_file(sp, validate_flag=True):
        sp.add_argument("file", help="workspace JSON file")
        if validate_flag:
            sp.add_argument("--no-validate", action="store_true",
                            help="skip axiom checkers at load time")

    sp = sub.add_parser("verify", help="run the base axiom checker on a named structure")
    sp.add_argument("file", help="workspace JSON file")
    sp.add_argument("--name", required=True)

    sp = sub.add_parser("homology", help="print homology dimensions of a named complex")
    with_file(sp)
    sp.add_argument("--name", required=True)
    sp.add_argument("--range", dest="degree_range", metavar="a..b",
                    help="degree range to print (default: the support)")

    sp = sub.add_parser("truncate", help="truncate a named complex and write the result")
    with_file(sp)
    sp.add_argument("--name", required=True)
    sp.add_argument("-n", type=int, required=True)
    sp.add_argument("--out", required=True, help="output workspace file")

    sp = sub.add_parser("preserve", help="preservation report for a named structure")
    with_file(sp)
    sp.add_argument("--name", required=True)
    sp.add_argument("-n", type=int, required=True)
    sp.add_argument("--format", choices=("text", "json"), default="text")

    sp = sub.add_parser("search", help="hunt for a structure whose report is red")
    sp.add_argument("--mode", required=True, choices=("comonoid", "comodule", "coring-comodule"))
    sp.add_argument("-n", type=int, required=True)
    sp.add_argument("--window", required=True, metavar="a..b")
    sp.add_argument("--max-dim", dest="max_dim", type=int, required=True)
    sp.add_argument("--trials", type=int, required=True)
    sp.add_argument("--seed", type=int, default=0)
    return parser


def _parse_window(raw: str) -> tuple[int, int]:
    lo, sep, hi = raw.partition("..")
    if not sep:
        raise _UsageError(f"window must look like a..b, got {raw!r}")
    try:
        return int(lo), int(hi)
    except ValueError:
        raise _UsageError(f"window bounds must be integers, got {raw!r}") from None


def _load(path: str, validate: bool) -> Workspace:
    with open(path, encoding="utf-8") as handle:
        return parse_workspace(handle.read(), validate=validate)


def _print_axiom_report(report: AxiomReport):
    print(f"axiom check: {report.structure}")
    for name, verdict in report.entries:
        if verdict.ok:
            print(f"{name:<22} PASS")
        else:
            w = verdict.witness
            where = f"  [on '{w.basis}' in degree {w.degree}]" if w else ""
            print(f"{name:<22} FAIL{where}")
    print(f"result: {'PASS' if report.ok else 'FAIL'}")


_SECTION_TO_KIND = {
    "comonoids": "comonoid",
    "comodules": "comodule",
    "monoids": "monoid",
    "modules": "right_module",
    "corings": "coring",
    "coring_comodules": "coring_comodule",
}


def _cmd_verify(args) -> int:
    ws = _load(args.file, validate=False)
    found = ws.find(args.name)
    if found is None:
        raise _UsageError(f"no structure named '{args.name}' in {args.file}")
    section, structure = found
    if section == "complexes":
        print(f"complex '{args.name}': d∘d = 0 holds on every degree")
        return 0
    if section == "maps":
        print(f"chain map '{args.name}': commutes with the differentials")
        return 0
    from .structures import (
        check_comodule, check_comonoid, check_coring,
        check_coring_comodule, check_monoid, check_right_module,
    )

    checker = {
        "comonoids": check_comonoid,
        "comodules": check_comodule,
        "monoids": check_monoid,
        "modules": check_right_module,
        "corings": check_coring,
        "coring_comodules": check_coring_comodule,
    }[section]
    report = checker(structure)
    _print_axiom_report(report)
    return 0 if report.ok else 1


def _cmd_homology(args) -> int:
    ws = _load(args.file, validate=not args.no_validate)
    x = ws.complexes.get(args.name)
    if x is None:
        raise _UsageError(f"no complex named '{args.name}' in {args.file}")
    h = homology(x)
    degrees = x.module.degrees()
    if args.degree_range:
        lo, hi = _parse_window(args.degree_range)
    elif degrees:
        lo, hi = min(degrees), max(degrees)
    else:
        print(f"homology of '{args.name}': zero complex")
        return 0
    print(f"homology of '{args.name}':")
    for deg in range(lo, hi + 1):
        dim = h.dim(deg)
        classes = f"  {', '.join(h.module.labels(deg))}" if dim else ""
        print(f"H_{deg}: dim {dim}{classes}")
    return 0


def _cmd_truncate(args) -> int:
    ws = _load(args.file, validate=not args.no_validate)
    x = ws.complexes.get(args.name)
    if x is None:
        raise _UsageError(f"no complex named '{args.name}' in {args.file}")
    truncated, q = truncate(x, args.n)
    out = Workspace(ws.field)
    out.complexes[args.name] = x
    truncated_name = f"L{args.n}_{args.name}"
    map_name = f"q{args.n}_{args.name}"
    out.complexes[truncated_name] = truncated
    out.maps[map_name] = q
    out.refs[map_name] = {"source": args.name, "target": truncated_name}
    with open(args.out, "w", encoding="utf-8") as handle:
        handle.write(emit_workspace(out))
    print(f"wrote '{truncated_name}' and '{map_name}' to {args.out}")
    return 0


def _cmd_preserve(args) -> int:
    ws = _load(args.file, validate=not args.no_validate)
    found = ws.find(args.name)
    if found is None:
        raise _UsageError(f"no structure named '{args.name}' in {args.file}")
    section, structure = found
    kind = _SECTION_TO_KIND.get(section)
    if kind not in ("comonoid", "comodule", "coring_comodule"):
        raise _UsageError(
            f"'{args.name}' is a {section[:-1]}; preserve needs a comonoid, comodule, or coring comodule"
        )
    report = preservation_report(kind, structure, args.n)
    sys.stdout.write(emit_report(report, args.format))
    return 0 if report.green else 1


def _cmd_search(args) -> int:
    seed = args.seed
    env_seed = os.environ.get("COALG_SEED")
    if env_seed is not None:
        try:
            seed = int(env_seed)
        except ValueError:
            raise _UsageError(f"COALG_SEED must be an integer, got {env_seed!r}") from None
    cfg = SearchConfig(args.mode, args.n, _parse_window(args.window), args.max_dim, args.trials, seed)
    hit = search_counterexample(cfg)
    if hit is None:
        print(f"no counterexample in {args.trials} trials")
        return 0
    print(f"counterexample found at trial {hit.trial}")
    sys.stdout.write(emit_report(hit.report))
    sys.stdout.write(emit_workspace(workspace_for_structure(normalize_kind(args.mode), hit.structure)))
    return 1


_COMMANDS = {
    "verify": _cmd_verify,
    "homology": _cmd_homology,
    "truncate": _cmd_truncate,
    "preserve": _cmd_preserve,
    "search": _cmd_search,
}


def _join_range_values(argv: list[str]) -> list[str]:
    # argparse refuses values like "-1..0" after a separate flag token, so
    # fold them into --flag=value form before parsing.
    out = []
    i = 0
    while i < len(argv):
        tok = argv[i]
        if tok in ("--window", "--range") and i + 1 < len(argv):
            out.append(f"{tok}={argv[i + 1]}")
            i += 2
        else:
            out.append(tok)
            i += 1
    return out


def cli_main(argv=None) -> int:
    parser = _build_parser()
    if argv is None:
        argv = sys.argv[1:]
    try:
        args = parser.parse_args(_join_range_values(list(argv)))
    except SystemExit as exc:
        return 0 if exc.code == 0 else 2
    try:
        return _COMMANDS[args.command](args)
    except _UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (ParseError, SchemaError, ValidationError, NotAComplex, NotAChainMap,
            BaseStructureInvalid, FileNotFoundError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def main():
    sys.exit(cli_main(sys.argv[1:]))


if __name__ == "__main__":
    main()
