"""Command-line front end: sign-character class tables, per-flag
classification reports, and verification sweeps."""

from __future__ import annotations

import argparse
import json
import sys as _sys

from .chevalley import StructureConstants
from .classify import full_report, render_table, report_to_dict
from .mclass import m_classes
from .rootsys import DynkinType, build_root_system
from .weylgrp import make_theta

_FAMILY_RANKS = {"A": (1, 8), "B": (2, 8), "C": (3, 8), "D": (4, 8),
                 "E": (6, 8), "F": (4, 4), "G": (2, 2)}


def _parse_theta(text: str, rank: int):
    if not text:
        return []
    try:
        indices = [int(tok) for tok in text.split(",") if tok.strip()]
    except ValueError:
        raise SystemExit(f"cannot parse theta {text!r}; expected e.g. 1,3")
    for i in indices:
        if not 1 <= i <= rank:
            raise SystemExit(f"theta index {i} out of range 1..{rank}")
    return indices


def cmd_mclasses(args) -> int:
    sys = build_root_system(DynkinType(args.type, args.rank))
    classes = m_classes(sys)
    if args.format == "json":
        doc = {
            "schema": "flagiso-mclasses/1",
            "type": args.type,
            "rank": args.rank,
            "classes": [
                {"roots": [list(sys.coords[r]) for r in blk],
                 "roots_display": [sys.describe(r) for r in blk]}
                for blk in classes
            ],
        }
        print(json.dumps(doc, indent=2))
    else:
        print(f"{sys.dynkin}: {sys.n_pos} positive roots, {len(classes)} classes")
        for i, blk in enumerate(classes):
            print(f"  [{i}] {{{', '.join(sys.describe(r) for r in blk)}}}")
    return 0


def cmd_classify(args) -> int:
    sys = build_root_system(DynkinType(args.type, args.rank))
    theta = make_theta(sys, _parse_theta(args.theta, args.rank), one_based=True)
    report = full_report(sys, theta, verify=args.verify)
    if args.format == "json":
        print(json.dumps(report_to_dict(report), indent=2))
    else:
        print(render_table(report))
    if args.verify and not report.oracle_verified:
        return 1
    return 0


def cmd_sweep(args) -> int:
    families = [f.strip().upper() for f in args.families.split(",") if f.strip()]
    failures = []
    count = 0
    for fam in families:
        if fam not in _FAMILY_RANKS:
            raise SystemExit(f"unknown family {fam!r}")
        lo, hi = _FAMILY_RANKS[fam]
        for rank in range(lo, min(hi, args.max_rank) + 1):
            sys = build_root_system(DynkinType(fam, rank))
            constants = StructureConstants(sys)
            for mask in range(2 ** rank - 1):
                theta = frozenset(p for p in range(rank) if mask >> p & 1)
                report = full_report(sys, theta, verify=args.verify, constants=constants)
                count += 1
                label = f"{fam}{rank} theta={sorted(report.theta)}"
                if args.verify and not report.oracle_verified:
                    failures.append(label)
                    print(f"FAIL {label}: {'; '.join(report.mismatches)}")
                else:
                    dims = ",".join(str(d) for d in sorted(report.block_dims))
                    eq = sum(1 for e in report.equivalences if e.continuum)
                    print(f"ok   {label}: blocks [{dims}], {eq} continuum family(ies)")
    print(f"swept {count} flags: {len(failures)} disagreement(s)")
    return 1 if failures else 0


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="flagiso",
        description="Isotropy representations of real flag manifolds of split real forms",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_cls = sub.add_parser("mclasses", help="sign-character classes of the positive roots")
    p_cls.add_argument("--type", required=True, choices=list("ABCDEFG"))
    p_cls.add_argument("--rank", required=True, type=int)
    p_cls.add_argument("--format", default="table", choices=["table", "json"])
    p_cls.set_defaults(func=cmd_mclasses)

    p_fl = sub.add_parser("classify", help="classify the isotropy representation of one flag")
    p_fl.add_argument("--type", required=True, choices=list("ABCDEFG"))
    p_fl.add_argument("--rank", required=True, type=int)
    p_fl.add_argument("--theta", default="", help="1-based simple-root indices, e.g. 1,3")
    p_fl.add_argument("--format", default="table", choices=["table", "json"])
    p_fl.add_argument("--verify", action="store_true",
                      help="cross-check every verdict against the exact oracle")
    p_fl.set_defaults(func=cmd_classify)

    p_sw = sub.add_parser("sweep", help="classify every flag up to a rank bound")
    p_sw.add_argument("--max-rank", required=True, type=int)
    p_sw.add_argument("--families", default="A,B,C,D,E,F,G")
    p_sw.add_argument("--verify", action=argparse.BooleanOptionalAction, default=True,
                      help="oracle-check all verdicts (default: on)")
    p_sw.set_defaults(func=cmd_sweep)

    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ValueError as exc:
        print(f"error: {exc}", file=_sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
