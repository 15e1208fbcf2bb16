"""Command-line front end: ``scspread {bound,count,construct,search,verify,girth}``.

Exit status: 0 on success, 1 on a violation or failed search, 2 on usage errors.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from typing import Sequence

from . import __version__
from ._json import decimal, safe_int
from .bounds import HarmfulStructureSet, bound_report, memory_bound_girth6, min_hitting_set_load
from .counting import (
    c4_counting_bound,
    exhaustive_count_valid,
    general_af_bound,
    monte_carlo_fraction,
)
from .cycles import tanner_girth
from .errors import (
    DomainError,
    InvalidArgumentError,
    PreconditionError,
    ResourceError,
    UndefinedGirthError,
    UnsupportedRegimeError,
)
from .protograph import (
    BaseGraph,
    CouplingPattern,
    PartitionMatrix,
    SparseBinaryMatrix,
    build_sc_matrix,
    explicit_product_assignment,
    spread_edges,
)
from .search import SearchConfig, search_assignment, verify_assignment

log = logging.getLogger("scspread")

USAGE_ERRORS = (
    InvalidArgumentError,
    DomainError,
    PreconditionError,
    UnsupportedRegimeError,
    ResourceError,
    UndefinedGirthError,
)


class UsageError(Exception):
    pass


def _positive(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return v


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--format", choices=("json", "table"), default="json")
    p.add_argument("--threads", type=_positive, default=None, help="worker cap (fallback: SC_SPREAD_THREADS)")


def _add_instance(p: argparse.ArgumentParser, targets=True) -> None:
    p.add_argument("--gamma", type=_positive, required=True)
    p.add_argument("--kappa", type=_positive, required=True)
    if targets:
        p.add_argument("--target", default="girth6", help="girth6, girth8, or a path to a structures JSON file")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="scspread", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("bound", help="memory thresholds, hitting-set load and CLLL/MT comparison")
    _add_instance(p)
    p.add_argument("--hit-budget", type=_positive, default=10**6)
    _add_common(p)

    p = sub.add_parser("count", help="Alon-Furedi counting bound with optional oracles")
    _add_instance(p)
    p.add_argument("--mt", type=int, default=None, help="m_t for the consecutive pattern 0..m_t")
    p.add_argument("--pattern", default=None, help='"consecutive:m" or a list such as "0,2,5"')
    p.add_argument("--exhaustive", action="store_true", help="also count valid assignments exactly")
    p.add_argument("--budget", type=_positive, default=10**8, help="enumeration budget for --exhaustive")
    p.add_argument("--samples", type=int, default=0, help="Monte-Carlo samples (0 disables)")
    p.add_argument("--seed", type=int, default=0)
    _add_common(p)

    p = sub.add_parser("construct", help="explicit product assignment and its coupled matrix")
    _add_instance(p, targets=False)
    p.add_argument("--L", dest="coupling_length", type=_positive, default=10)
    p.add_argument("--alist-out", default=None, help="write the coupled matrix alist here")
    p.add_argument("--emit", choices=("report", "alist"), default="report",
                   help="'alist' prints only the alist text, for piping into 'girth -'")
    _add_common(p)

    p = sub.add_parser("search", help="search for a structure-breaking partition matrix")
    _add_instance(p)
    p.add_argument("--mt", type=int, default=None)
    p.add_argument("--pattern", default=None)
    p.add_argument("--strategy", choices=("backtracking", "random", "explicit"), default="backtracking")
    p.add_argument("--budget", type=_positive, default=10**6, help="node budget")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", default=None, help="write the found partition matrix JSON here")
    _add_common(p)

    p = sub.add_parser("verify", help="check a partition matrix against a structure family")
    _add_instance(p)
    p.add_argument("--matrix", required=True, help="partition matrix JSON (row-major integer grid)")
    p.add_argument("--pattern", default=None, help="defaults to 0..max entry")
    _add_common(p)

    p = sub.add_parser("girth", help="Tanner-graph girth of an alist matrix")
    p.add_argument("alist", help="alist file path, or - for stdin")
    p.add_argument("--cap", type=int, default=12, choices=(4, 6, 8, 10, 12))
    _add_common(p)
    return parser


def _load_json(path: str, field: str):
    try:
        with open(path) as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"{field}: cannot read {path}: {exc}") from exc


def _hset(base: BaseGraph, target: str) -> HarmfulStructureSet:
    if target in ("girth6", "girth8"):
        return HarmfulStructureSet.for_target(base, target)
    if not os.path.exists(target):
        raise UsageError(f"--target: expected girth6, girth8 or an existing structures file, got {target!r}")
    try:
        hset = HarmfulStructureSet.from_json(_load_json(target, "--target"))
    except (KeyError, TypeError) as exc:
        raise UsageError(f"--target: malformed structures file: {exc}") from exc
    try:
        hset.check_in_range(base)
    except InvalidArgumentError as exc:
        raise UsageError(f"--target: {exc}") from exc
    return hset


def _pattern(args, default_mt: int | None = None) -> CouplingPattern:
    try:
        if args.pattern:
            pat = CouplingPattern.parse(args.pattern)
            if getattr(args, "mt", None) is not None and args.mt != pat.m_t:
                raise UsageError(f"--mt {args.mt} disagrees with --pattern (m_t={pat.m_t})")
            return pat
        mt = getattr(args, "mt", None)
        if mt is None:
            mt = default_mt
        if mt is None:
            raise UsageError("--mt or --pattern is required")
        return CouplingPattern.consecutive(mt)
    except (ValueError, InvalidArgumentError) as exc:
        if isinstance(exc, UsageError):
            raise
        raise UsageError(f"--pattern: {exc}") from exc


def cmd_bound(args) -> tuple[dict, int]:
    base = BaseGraph(args.gamma, args.kappa)
    target = args.target
    hset = _hset(base, target)
    label = target if target in ("girth6", "girth8") else "custom"
    rep = bound_report(args.gamma, args.kappa, label, hset, args.hit_budget)
    return rep.to_json(), 0


def cmd_count(args) -> tuple[dict, int]:
    base = BaseGraph(args.gamma, args.kappa)
    pattern = _pattern(args)
    hset = _hset(base, args.target)
    out: dict = {"gamma": args.gamma, "kappa": args.kappa, "pattern": pattern.to_json(), "m_t": pattern.m_t}
    if args.target == "girth6":
        cb = c4_counting_bound(args.gamma, args.kappa, pattern.m_t)
        out["hitting_set_size"] = cb.degree
    else:
        hit = min_hitting_set_load(base, hset)
        if pattern.m_t < hit.upper:
            raise PreconditionError(
                f"m_t={pattern.m_t} is below the hitting-set load {hit.upper} of the chosen hitting set"
            )
        cb = general_af_bound(base.n_edges, pattern.m_t, len(hit.witness))
        out["hitting_set_size"] = len(hit.witness)
    out["bound"] = cb.to_json()
    if args.exhaustive:
        exact = exhaustive_count_valid(base, pattern, hset, budget=args.budget, threads=args.threads)
        out["exhaustive"] = {"valid": safe_int(exact), "dominates_bound": exact >= cb.bound}
    if args.samples:
        est = monte_carlo_fraction(base, pattern, hset, args.samples, args.seed, threads=args.threads)
        out["monte_carlo"] = est.to_json()
    return out, 0


def cmd_construct(args) -> tuple[dict | str, int]:
    base = BaseGraph(args.gamma, args.kappa)
    p = explicit_product_assignment(base)
    pattern = CouplingPattern.consecutive(memory_bound_girth6(args.gamma, args.kappa))
    h = build_sc_matrix(spread_edges(base, p, pattern), args.coupling_length)
    alist = h.to_alist()
    if args.alist_out:
        with open(args.alist_out, "w") as fh:
            fh.write(alist)
    if args.emit == "alist":
        return alist, 0
    out = {
        "base": base.to_json(),
        "pattern": pattern.to_json(),
        "p": p.to_json(),
        "coupling_length": args.coupling_length,
        "h_sc": {"rows": h.rows, "cols": h.cols, "nnz": h.nnz},
    }
    if args.alist_out:
        out["alist_path"] = args.alist_out
    else:
        out["alist"] = alist
    return out, 0


def cmd_search(args) -> tuple[dict, int]:
    base = BaseGraph(args.gamma, args.kappa)
    hset = _hset(base, args.target)
    pattern = _pattern(args)
    res = search_assignment(base, SearchConfig(pattern, hset, args.budget, args.seed, args.strategy))
    if res.found and args.out:
        with open(args.out, "w") as fh:
            json.dump(res.p.to_json(), fh)
    return res.to_json(), 0 if res.found else 1


def cmd_verify(args) -> tuple[dict, int]:
    base = BaseGraph(args.gamma, args.kappa)
    hset = _hset(base, args.target)
    try:
        p = PartitionMatrix.from_json(_load_json(args.matrix, "--matrix"))
    except (InvalidArgumentError, TypeError, ValueError) as exc:
        raise UsageError(f"--matrix: {exc}") from exc
    pattern = _pattern(args, default_mt=p.max_entry())
    v = verify_assignment(base, p, pattern, hset)
    return v.to_json(), 0 if v.ok else 1


def cmd_girth(args) -> tuple[dict, int]:
    try:
        text = sys.stdin.read() if args.alist == "-" else open(args.alist).read()
    except OSError as exc:
        raise UsageError(f"alist: {exc}") from exc
    h = SparseBinaryMatrix.from_alist(text)
    g = tanner_girth(h, args.cap)
    return {"rows": h.rows, "cols": h.cols, "girth": g.to_json(), "exact": g.exact, "cap": args.cap}, 0


COMMANDS = {
    "bound": cmd_bound,
    "count": cmd_count,
    "construct": cmd_construct,
    "search": cmd_search,
    "verify": cmd_verify,
    "girth": cmd_girth,
}


def _flatten(obj, prefix="") -> list[tuple[str, str]]:
    rows = []
    if isinstance(obj, dict):
        for k, v in obj.items():
            rows += _flatten(v, f"{prefix}.{k}" if prefix else str(k))
    elif isinstance(obj, list) and obj and isinstance(obj[0], (dict, list)) and len(obj) > 8:
        rows.append((prefix, f"[{len(obj)} items]"))
    else:
        rows.append((prefix, json.dumps(obj) if isinstance(obj, (list, type(None), bool)) else str(obj)))
    return rows


def _comparison_table(cmp: dict) -> list[str]:
    def val(v):
        if v is None:
            return "-"
        if isinstance(v, dict):
            return v["decimal"]
        return decimal(int(v), 3)

    lines = ["", "             memory  asymptotic memory  feasible-count bound   AF bound at same memory"]
    rows = [
        ("threshold", cmp["threshold_bound"], "-", "-", cmp["af_count_at_threshold_decimal"]),
        ("CLLL", cmp["m_clll"], cmp["m_clll_asymptotic"]["symbolic"] + f" ~ {cmp['m_clll_asymptotic']['decimal']}",
         val(cmp["clll_feasible_count"]), val(cmp["af_count_at_clll_memory"])),
        ("MT", cmp["m_mt"], cmp["m_mt_asymptotic"]["symbolic"] + f" ~ {cmp['m_mt_asymptotic']['decimal']}",
         val(cmp["mt_output_diversity"]), val(cmp["af_count_at_mt_memory"])),
    ]
    for name, m, asym, feas, af in rows:
        lines.append(f"{name:<11}  {str(m if m is not None else '-'):>6}  {asym:>17}  {feas:>20}   {af:>23}")
    return lines


def render_table(command: str, out: dict) -> str:
    rows = _flatten({k: v for k, v in out.items() if k not in ("comparison", "alist")})
    width = max((len(k) for k, _ in rows), default=0)
    lines = [f"{k:<{width}}  {v}" for k, v in rows]
    if command == "bound" and out.get("comparison"):
        lines += _comparison_table(out["comparison"])
    return "\n".join(lines)


def main(argv: Sequence[str] | None = None) -> int:
    logging.basicConfig(level=logging.WARNING, format="%(levelname)s: %(message)s")
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "threads", None) is None:
        env = os.environ.get("SC_SPREAD_THREADS")
        if env:
            try:
                args.threads = _positive(env)
            except (ValueError, argparse.ArgumentTypeError):
                parser.error(f"SC_SPREAD_THREADS: expected a positive integer, got {env!r}")
    try:
        out, status = COMMANDS[args.command](args)
    except UsageError as exc:
        parser.error(str(exc))
    except USAGE_ERRORS as exc:
        print(f"scspread {args.command}: error: {exc}", file=sys.stderr)
        return 2
    if isinstance(out, str):
        sys.stdout.write(out)
    elif args.format == "table":
        print(render_table(args.command, out))
    else:
        print(json.dumps(out, indent=2))
    return status


run = main

if __name__ == "__main__":
    sys.exit(main())
