"""Command-line entry point: ``altspin <command> ...``."""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import __version__, crystal, modrep, spinchars, verify
from .errors import AltSpinError, ResourceGuard
from .gf2.io import dump
from .partitions import Family, Partition, benson_split, enumerate_family

SUITES = ("mt", "scan", "benson", "branching", "perm", "spinchar")
DEFAULT_MAX_N = {"mt": 9, "scan": 7, "benson": 9, "branching": 8, "spinchar": 12}


def _partition(text: str) -> Partition:
    text = text.strip().strip("()")
    return Partition(int(x) for x in text.split(",") if x.strip())


def _common() -> argparse.ArgumentParser:
    # defaults are suppressed so the flags work before or after the subcommand
    p = argparse.ArgumentParser(add_help=False, argument_default=argparse.SUPPRESS)
    p.add_argument("--threads", type=int, help="worker processes (default 1)")
    p.add_argument("--cache-dir", type=Path, help="cache of serialized irreducibles")
    p.add_argument("--force", action="store_true", help="lift the size guards")
    p.add_argument("--timing", action="store_true", help="record elapsed_ms in reports")
    return p


COMMON_DEFAULTS = {"threads": 1, "cache_dir": None, "force": False, "timing": False}


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = argparse.ArgumentParser(prog="altspin", parents=[common])
    parser.add_argument("--version", action="version", version=f"altspin {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("enum", parents=[common], help="list partitions of a family")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--family", default="two-regular", choices=[f.value for f in Family])

    p = sub.add_parser("crystal", parents=[common], help="residue data of a 2-regular partition")
    p.add_argument("--lam", type=_partition, required=True)

    p = sub.add_parser("spinchar", parents=[common], help="spin character data")
    p.add_argument("--lam", type=_partition, required=True)
    p.add_argument("--alpha", type=_partition, required=True)

    p = sub.add_parser("rep", parents=[common], help="representations")
    rsub = p.add_subparsers(dest="rep_command", required=True)
    b = rsub.add_parser("build", parents=[common], help="build D^lam (or its A_n constituents)")
    b.add_argument("--lam", type=_partition, required=True)
    b.add_argument("--alt", action="store_true", help="restrict to the alternating group")
    b.add_argument("--out", type=Path, default=None)
    b.add_argument("--seed", type=int, default=1)

    p = sub.add_parser("verify", parents=[common], help="run verification suites")
    p.add_argument("suites", nargs="+", choices=SUITES + ("all",))
    p.add_argument("--max-n", type=int, default=None)
    p.add_argument("--n", type=int, nargs="+", default=None, help="odd sizes for the perm suite")
    p.add_argument("--seed", type=int, default=1)
    p.add_argument("--out", type=Path, default=None, help="JSON file (one suite) or directory")
    p.add_argument("--tsv", type=Path, default=None, help="TSV summary file")

    p = sub.add_parser("filter", parents=[common], help="character-level candidate pairs")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--seed", type=int, default=1)
    p.add_argument("--out", type=Path, default=None)
    return parser


def _cmd_enum(args) -> int:
    for lam in enumerate_family(args.family, args.n):
        print(repr(lam))
    return 0


def _cmd_crystal(args) -> int:
    lam = args.lam
    info = {"lam": repr(lam), "benson_split": benson_split(lam), "js": crystal.is_js(lam)}
    for i in (0, 1):
        sig = crystal.signature(lam, i)
        info[f"residue_{i}"] = {
            "eps": sig.eps,
            "phi": sig.phi,
            "normal": [[nd.row, nd.col] for nd in sig.normal],
            "conormal": [[nd.row, nd.col] for nd in sig.conormal],
            "e_tilde": repr(crystal.e_tilde(lam, i)) if sig.eps else None,
            "f_tilde": repr(crystal.f_tilde(lam, i)) if sig.phi else None,
        }
    print(json.dumps(info, indent=2))
    return 0


def _cmd_spinchar(args) -> int:
    lam, alpha = args.lam, args.alpha
    info = {
        "lam": repr(lam),
        "alpha": repr(alpha),
        "paths": dict(sorted(spinchars.a_statistics(lam, alpha).items())),
        "parity": spinchars.zeta_parity(lam, alpha),
        "valuation_lb": spinchars.zeta_valuation_lb(lam, alpha),
        "mod4": spinchars.zeta_mod4(lam, alpha),
        "value": spinchars.spin_char(lam, alpha),
    }
    print(json.dumps(info, indent=2, default=str))
    return 0


def _cmd_rep(args) -> int:
    lam = args.lam
    if not args.alt:
        member = modrep.irreducible_head(lam)
        print(f"D{lam!r}: degree {member.rep.degree}")
        if args.out:
            dump(member.rep, args.out)
        return 0
    data = modrep.restriction_to_alt(lam, args.seed)
    for m in data.members:
        kind = "GF(4)" if m.j is not None else "GF(2)"
        print(f"E{m.name}: dimension {m.dim} (realized over {kind}, degree {m.rep.degree})")
        if args.out:
            suffix = {"": "", "+": "_plus", "-": "_minus"}[m.sign]
            dump(m.rep, args.out.with_name(args.out.stem + suffix + args.out.suffix))
    return 0


def _run_suite(name: str, args) -> verify.Report:
    max_n = args.max_n if args.max_n is not None else DEFAULT_MAX_N.get(name)
    common = {"seed": args.seed, "timing": args.timing}
    if name == "mt":
        return verify.verify_mt(max_n, threads=args.threads, force=args.force, **common)
    if name == "scan":
        return verify.verify_pair_scan(max_n, threads=args.threads, force=args.force, **common)
    if name == "benson":
        return verify.verify_benson(max_n, threads=args.threads, **common)
    if name == "branching":
        return verify.verify_branching(max_n, threads=args.threads, **common)
    if name == "perm":
        ns = tuple(args.n) if args.n else (5, 7, 9)
        return verify.verify_perm_structure(ns, threads=args.threads, **common)
    return verify.verify_spinchar(max_n, **common)


def _write_reports(reports, out: Path | None) -> None:
    if out is None:
        return
    if len(reports) == 1 and out.suffix:
        out.parent.mkdir(parents=True, exist_ok=True)
        out.write_text(reports[0].to_json())
        return
    out.mkdir(parents=True, exist_ok=True)
    for r in reports:
        (out / f"{r.suite}.json").write_text(r.to_json())


def _cmd_verify(args) -> int:
    names = SUITES if "all" in args.suites else tuple(dict.fromkeys(args.suites))
    reports = [_run_suite(name, args) for name in names]
    _write_reports(reports, args.out)
    summary = verify.tsv_summary(reports)
    if args.tsv:
        args.tsv.write_text(summary)
    sys.stdout.write(summary)
    for r in reports:
        for case in r.failures[:20]:
            print(f"FAIL {r.suite}: {json.dumps(case['input'], sort_keys=True)} "
                  f"expected {json.dumps(case['expected'], sort_keys=True)} "
                  f"got {json.dumps(case['got'], sort_keys=True)}", file=sys.stderr)
    return 0 if all(r.passed for r in reports) else 1


def _cmd_filter(args) -> int:
    report = verify.filter_candidates(args.n, args.seed, timing=args.timing)
    params = report.params
    print(f"n = {args.n}: {len(params['pairs'])} candidate pairs")
    print("nu candidates: " + (" ".join(params["nu_candidates"]) or "none"))
    for lam, nu in params["pairs"]:
        print(f"{lam}\t{nu}")
    if args.out:
        args.out.write_text(report.to_json())
    sys.stdout.write(verify.tsv_summary([report]))
    return 0 if report.passed else 1


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    for key, value in COMMON_DEFAULTS.items():
        if not hasattr(args, key):
            setattr(args, key, value)
    if args.cache_dir is not None:
        modrep.set_cache_dir(args.cache_dir)
    handlers = {"enum": _cmd_enum, "crystal": _cmd_crystal, "spinchar": _cmd_spinchar,
                "rep": _cmd_rep, "verify": _cmd_verify, "filter": _cmd_filter}
    try:
        return handlers[args.command](args)
    except ResourceGuard as exc:
        print(f"resource guard: {exc}", file=sys.stderr)
        return 2
    except AltSpinError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
