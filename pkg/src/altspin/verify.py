"""Verification suites and their reports.

Every suite returns a :class:`Report` whose JSON form is deterministic for a
fixed seed: cases are sorted, dictionaries are emitted with sorted keys and
wall-clock time is recorded only on request.
"""

from __future__ import annotations

import hashlib
import json
import time
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from . import __version__
from . import crystal, modrep, spinchars
from .errors import ResourceGuard
from .gf2.extension import abs_irreducible, k_tensor, pull_back
from .gf2.module import endo_dim, iso
from .partitions import (
    Partition,
    benson_split,
    beta,
    is_double,
    odd_parts,
    two_regular,
)

SCHEMA_VERSION = 1
MEMORY_LIMIT = 8 * 2**30


def digest(obj) -> str:
    blob = json.dumps(obj, sort_keys=True, default=str).encode()
    return hashlib.sha256(blob).hexdigest()[:16]


@dataclass
class Report:
    suite: str
    seed: int
    cases: list[dict] = field(default_factory=list)
    params: dict = field(default_factory=dict)
    elapsed_ms: int | None = None

    @property
    def passed(self) -> bool:
        return all(c["pass"] for c in self.cases)

    @property
    def failures(self) -> list[dict]:
        return [c for c in self.cases if not c["pass"]]

    def add(self, input, expected, got, certificate=None) -> dict:
        case = {"input": input, "expected": expected, "got": got, "pass": expected == got,
                "certificate": certificate}
        self.cases.append(case)
        return case

    def as_dict(self) -> dict:
        return {
            "suite": self.suite,
            "version": __version__,
            "schema": SCHEMA_VERSION,
            "seed": self.seed,
            "params": self.params,
            "cases": self.cases,
            "passed": self.passed,
            "elapsed_ms": self.elapsed_ms,
        }

    def to_json(self) -> str:
        return json.dumps(self.as_dict(), sort_keys=True, indent=2, default=str) + "\n"

    def tsv_row(self) -> str:
        n_fail = len(self.failures)
        status = "PASS" if self.passed else "FAIL"
        return f"{self.suite}\t{len(self.cases)}\t{len(self.cases) - n_fail}\t{n_fail}\t{status}"


TSV_HEADER = "suite\tcases\tpassed\tfailed\tstatus"


def tsv_summary(reports) -> str:
    return "\n".join([TSV_HEADER] + [r.tsv_row() for r in reports]) + "\n"


def _run(func, tasks, threads: int):
    """Map ``func`` over ``tasks``; results keep task order."""
    if threads <= 1 or len(tasks) <= 1:
        return [func(t) for t in tasks]
    with ProcessPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(func, tasks))


def _timed(report: Report, start: float, timing: bool) -> Report:
    if timing:
        report.elapsed_ms = int((time.perf_counter() - start) * 1000)
    return report


def _guard_tensor(da: int, db: int, ngens: int) -> None:
    d = da * db
    projected = d * d * (ngens + 12)
    if projected > MEMORY_LIMIT:
        raise ResourceGuard(
            f"tensor of degrees {da} x {db} needs about {projected / 2**30:.1f} GiB "
            f"(limit {MEMORY_LIMIT / 2**30:.0f} GiB)"
        )


# --- tensor products ------------------------------------------------------------------------


def _tensor_case(n: int, v, w, lib, seed: int) -> dict:
    _guard_tensor(v.rep.degree, w.rep.degree, v.rep.ngens)
    t = k_tensor(v.krep, w.krep)
    res = abs_irreducible(t, seed)
    label = None
    if res.irreducible:
        label = modrep.match_factor(res.form, lib, res.form_j, seed).name
    return {
        "n": n,
        "pair": [v.name, w.name],
        "product_dim": v.dim * w.dim,
        "irreducible": res.irreducible,
        "matched_label": label,
        "certificate": {"digest": digest(res.certificate), "reason": res.certificate.get("reason"),
                        "seed": seed},
    }


def _unordered_pairs(members, second=None):
    """Unordered pairs ``{v, w}`` with ``w`` from ``second`` (default: all)."""
    names = {id(m): k for k, m in enumerate(members)}
    seen = set()
    out = []
    pool = second if second is not None else members
    for w in pool:
        for v in members:
            key = tuple(sorted((names[id(v)], names[id(w)])))
            if key in seen:
                continue
            seen.add(key)
            a, b = (v, w) if names[id(v)] <= names[id(w)] else (w, v)
            out.append((a, b))
    return out


def _mt_task(args) -> list[dict]:
    n, seed = args
    lib = modrep.alt_irreducibles(n, seed)
    big = [m for m in lib if m.dim > 1]
    basic = [m for m in big if m.label == beta(n)]
    return [_tensor_case(n, v, w, lib, seed) for v, w in _unordered_pairs(big, basic)]


def mt_expected(n: int, pair) -> tuple[bool, str | None]:
    if n == 5 and sorted(pair) == ["(3,2)+", "(3,2)-"]:
        return True, "(4,1)"
    return False, None


def verify_mt(max_n: int = 9, seed: int = 1, threads: int = 1, force: bool = False,
              timing: bool = False, min_n: int = 5) -> Report:
    """Products of a dim > 1 A_n-irreducible with a basic spin constituent."""
    if not 5 <= max_n <= 9 and not force:
        raise ResourceGuard(f"max_n = {max_n} outside 5..9; pass --force to override")
    start = time.perf_counter()
    report = Report("mt", seed, params={"min_n": min_n, "max_n": max_n})
    ns = list(range(min_n, max_n + 1))
    for rows in _run(_mt_task, [(n, seed) for n in ns], threads):
        for row in rows:
            exp_irr, exp_label = mt_expected(row["n"], row["pair"])
            report.add(
                {"n": row["n"], "pair": row["pair"], "product_dim": row["product_dim"]},
                {"irreducible": exp_irr, "matched_label": exp_label},
                {"irreducible": row["irreducible"], "matched_label": row["matched_label"]},
                row["certificate"],
            )
    irreducible = sorted((c["input"]["n"], tuple(c["input"]["pair"])) for c in report.cases
                         if c["got"]["irreducible"])
    report.params["irreducible_products"] = [[n, list(p)] for n, p in irreducible]
    return _timed(report, start, timing)


def scan_prediction(n: int) -> dict[tuple[str, str], str]:
    """Irreducible pairs predicted for p = 2, keyed by sorted names, with the product label."""
    out = {}
    if n % 2:
        w = Partition((n - 1, 1))
        if not benson_split(w):
            for lam in two_regular(n):
                if benson_split(lam) and crystal.is_js(lam):
                    target = repr(crystal.js_tensor_label(lam))
                    for sign in "+-":
                        out[tuple(sorted((f"{lam!r}{sign}", repr(w))))] = target
    if n == 5:
        out[("(3,2)+", "(3,2)-")] = "(4,1)"
    return out


def _scan_task(args) -> list[dict]:
    n, seed = args
    lib = modrep.alt_irreducibles(n, seed)
    big = [m for m in lib if m.dim > 1]
    return [_tensor_case(n, v, w, lib, seed) for v, w in _unordered_pairs(big)]


def verify_pair_scan(max_n: int = 7, seed: int = 1, threads: int = 1, force: bool = False,
                        timing: bool = False, min_n: int = 5) -> Report:
    """All unordered pairs of dim > 1 A_n-irreducibles."""
    if not 5 <= max_n <= 7 and not force:
        raise ResourceGuard(f"max_n = {max_n} outside 5..7; pass --force to override")
    start = time.perf_counter()
    report = Report("scan", seed, params={"min_n": min_n, "max_n": max_n})
    ns = list(range(min_n, max_n + 1))
    for n, rows in zip(ns, _run(_scan_task, [(n, seed) for n in ns], threads)):
        pred = scan_prediction(n)
        for row in rows:
            key = tuple(sorted(row["pair"]))
            exp_label = pred.get(key)
            exp = {"irreducible": key in pred, "matched_label": exp_label}
            got = {"irreducible": row["irreducible"],
                   "matched_label": row["matched_label"].rstrip("+-") if row["matched_label"] else None}
            report.add({"n": n, "pair": row["pair"], "product_dim": row["product_dim"]}, exp, got,
                       row["certificate"])
        report.params[f"predicted_n{n}"] = sorted(list(k) for k in pred)
    return _timed(report, start, timing)


# --- splitting --------------------------------------------------------------------------------


def _benson_task(args) -> list[dict]:
    n, seed = args
    rows = []
    for lam in two_regular(n):
        data = modrep.restriction_to_alt(lam, seed)
        got = {"split": data.split, "gf2_factors": data.gf2_factors}
        checks = {}
        if data.split and n >= 3:
            plus, minus = data.members
            if plus.j is None:
                checks["endo_dims"] = [endo_dim(plus.rep, seed), endo_dim(minus.rep, seed)]
                checks["non_isomorphic"] = iso(plus.rep, minus.rep, seed) is None
                twisted = modrep.twist_member(plus, n)
                checks["twist_swaps"] = iso(minus.rep, twisted.rep, seed) is not None
            else:
                one = plus.j @ plus.j + plus.j
                checks["j_order_three"] = (one + plus.j @ plus.j @ plus.j).is_zero() and not plus.j.is_zero()
                twisted = modrep.twist_member(plus, n)
                phi = iso(plus.rep, twisted.rep, seed)
                checks["twist_swaps"] = phi is not None and pull_back(phi, plus.j) == minus.j
        got["checks_ok"] = all(v if isinstance(v, bool) else v == [1, 1] for v in checks.values())
        rows.append({"lam": repr(lam), "dim": modrep.irreducible_head(lam).rep.degree,
                     "expected": benson_split(lam), "got": got, "checks": checks,
                     "endo_dim": data.endo_dim})
    return rows


def verify_benson(n_max: int = 9, seed: int = 1, threads: int = 1, timing: bool = False) -> Report:
    """Meataxe splitting of ``D^lam`` on ``A_n`` against the arithmetic criterion."""
    start = time.perf_counter()
    report = Report("benson", seed, params={"n_max": n_max})
    ns = list(range(2, n_max + 1))
    for n, rows in zip(ns, _run(_benson_task, [(n, seed) for n in ns], threads)):
        for row in rows:
            report.add({"n": n, "lam": row["lam"], "dim": row["dim"]},
                       {"split": row["expected"], "checks_ok": True},
                       {"split": row["got"]["split"], "checks_ok": row["got"]["checks_ok"]},
                       {"gf2_factors": row["got"]["gf2_factors"], "endo_dim": row["endo_dim"],
                        **row["checks"]})
    return _timed(report, start, timing)


# --- branching --------------------------------------------------------------------------------


def predicted_restriction(lam: Partition) -> dict[str, int]:
    """Multiplicities of ``D^{lam_A}`` for removable ``A`` with ``lam_A`` 2-regular."""
    out = {}
    for node in crystal.removable_nodes(lam):
        mu = crystal.remove_node(lam, node)
        if not mu.is_p_regular(2):
            continue
        sig = crystal.signature(lam, node.residue(2))
        normal = sig.normal
        if node in normal:
            out[repr(mu)] = 1 + sum(1 for b in normal if b.row < node.row)
        else:
            out[repr(mu)] = 0
    return out


def _branching_task(args) -> list[dict]:
    n, seed = args
    rows = []
    for lam in two_regular(n):
        data = modrep.branching_data(lam, seed)
        total = Counter()
        for part in data.values():
            total.update(part)
        pred = predicted_restriction(lam)
        got_mult = {}
        for mu_name in pred:
            mu = _parse(mu_name)
            got_mult[mu_name] = total.get(mu, 0)
        good = {}
        for i in (0, 1):
            e = crystal.eps(lam, i)
            if e:
                target = crystal.e_tilde(lam, i)
                good[str(i)] = [e, data.get(i, Counter()).get(target, 0)]
        rows.append({
            "lam": repr(lam),
            "eps_sum": crystal.eps(lam, 0) + crystal.eps(lam, 1),
            "endo": modrep.restriction_endo_dim(lam, seed),
            "pred": pred,
            "got": got_mult,
            "good": good,
            "blocks": {str(i): {repr(k): v for k, v in sorted(c.items())} for i, c in sorted(data.items())},
        })
    return rows


def _parse(name: str) -> Partition:
    return Partition(int(x) for x in name.strip("()").split(",") if x)


def _basic_task(args) -> dict:
    n, seed = args
    b = beta(n)
    dim = modrep.irreducible_head(b).rep.degree
    if n == 1:
        return {"n": n, "dim": dim, "restriction": {}}
    res = modrep.restrict_to_previous(modrep.irreducible_head(b).rep, n)
    counts = modrep.comp_factors(res, modrep.all_irreducibles(n - 1).values(), seed)
    return {"n": n, "dim": dim, "restriction": {repr(k): v for k, v in sorted(counts.items())}}


def verify_branching(n_max: int = 8, seed: int = 1, threads: int = 1, timing: bool = False,
                     basic_max: int = 9) -> Report:
    """Endomorphism dimensions and factor multiplicities of ``D^lam`` on ``S_{n-1}``."""
    start = time.perf_counter()
    report = Report("branching", seed, params={"n_max": n_max, "basic_max": basic_max})
    ns = list(range(2, n_max + 1))
    for n, rows in zip(ns, _run(_branching_task, [(n, seed) for n in ns], threads)):
        for row in rows:
            inp = {"n": n, "lam": row["lam"]}
            report.add({**inp, "check": "endo_dim"}, row["eps_sum"], row["endo"])
            report.add({**inp, "check": "normal_node_multiplicities"}, row["pred"], row["got"],
                       {"blocks": row["blocks"]})
            report.add({**inp, "check": "good_node_multiplicity"},
                       {i: v[0] for i, v in row["good"].items()},
                       {i: v[1] for i, v in row["good"].items()})
    bs = list(range(2, basic_max + 1))
    for row in _run(_basic_task, [(n, seed) for n in bs], threads):
        n = row["n"]
        report.add({"n": n, "lam": repr(beta(n)), "check": "basic_spin_dim"},
                   2 ** ((n - 1) // 2), row["dim"])
        expected = {repr(beta(n - 1)): 1 + n % 2}
        report.add({"n": n, "lam": repr(beta(n)), "check": "basic_spin_restriction"},
                   expected, row["restriction"])
    return _timed(report, start, timing)


# --- permutation modules ---------------------------------------------------------------------


def perm_expected(n: int) -> dict[str, dict[str, int]]:
    d0, d1, d2 = repr(Partition((n,))), repr(Partition((n - 1, 1))), repr(Partition((n - 2, 2)))
    ybar = Counter({d0: 2, d2: 1}) if n % 4 == 1 else Counter({d0: 1, d2: 1})
    m2 = Counter({d1: 1}) + ybar
    m11 = Counter({d1: 2}) + ybar + ybar
    return {"M1": {d0: 1, d1: 1}, "M2": dict(sorted(m2.items())), "M11": dict(sorted(m11.items()))}


def _perm_task(args) -> dict:
    n, seed = args
    lib = modrep.all_irreducibles(n)
    shapes = {"M1": (n - 1, 1), "M2": (n - 2, 2), "M11": (n - 2, 1, 1)}
    got = {}
    for key, shape in shapes.items():
        counts = modrep.comp_factors(modrep.perm_module(n, shape), lib.values(), seed)
        got[key] = {repr(k): v for k, v in sorted(counts.items())}
    summands = [lib[Partition((n,))], lib[Partition((n - 1, 1))]]
    direct = modrep.certify_direct_sum(modrep.perm_module(n, (n - 1, 1)), summands, seed)
    return {"n": n, "got": got, "direct": direct}


def verify_perm_structure(ns=(5, 7, 9), seed: int = 1, threads: int = 1, timing: bool = False) -> Report:
    """Composition factors of ``M_1``, ``M_2``, ``M_{1^2}`` for odd ``n``."""
    start = time.perf_counter()
    report = Report("perm", seed, params={"n": list(ns)})
    for row in _run(_perm_task, [(n, seed) for n in ns], threads):
        n = row["n"]
        exp = perm_expected(n)
        for key in ("M1", "M2", "M11"):
            report.add({"n": n, "module": key}, exp[key], row["got"][key])
        report.add({"n": n, "module": "M1", "check": "direct_sum"}, True, row["direct"]["direct_sum"],
                   row["direct"])
    return _timed(report, start, timing)


# --- spin characters ---------------------------------------------------------------------------


def verify_spinchar(n_max: int = 12, seed: int = 1, timing: bool = False, signed: bool = True) -> Report:
    """Parity predicates and, for the signed tier, the degree and magnitude laws."""
    start = time.perf_counter()
    report = Report("spinchar", seed, params={"n_max": n_max, "signed": signed})
    groups: dict[tuple[str, str], list] = {}
    for chk in spinchars.parity_checks(n_max, signed):
        family = chk.case.split("(")[0]
        groups.setdefault((family, repr(chk.lam)), []).append(chk)
    for (family, lam), checks in sorted(groups.items(), key=lambda kv: (kv[0][0], len(kv[0][1]), kv[0][1])):
        bad = [repr(c.alpha) for c in checks if not c.agrees]
        report.add({"check": f"parity-{family}", "lam": lam, "classes": len(checks)}, [], bad)
    if signed:
        for n in range(1, n_max + 1):
            ones = Partition((1,) * n)
            deg_bad, par_bad = [], []
            for lam in two_regular(n):
                if spinchars.spin_char(lam, ones) != spinchars.spin_degree(lam):
                    deg_bad.append(repr(lam))
                for alpha in odd_parts(n):
                    if spinchars.spin_char(lam, alpha) % 2 != spinchars.zeta_parity(lam, alpha):
                        par_bad.append([repr(lam), repr(alpha)])
            report.add({"check": "degree", "n": n}, [], deg_bad)
            report.add({"check": "parity_agreement", "n": n}, [], par_bad)
            mag_bad = []
            for alpha in odd_parts(n):
                v = spinchars.spin_char(Partition((n,)), alpha)
                if abs(v) != spinchars.basic_spin_magnitude(alpha):
                    mag_bad.append([repr(alpha), v])
            report.add({"check": "basic_magnitude", "n": n}, [], mag_bad)
    return _timed(report, start, timing)


# --- candidate filters -----------------------------------------------------------------------


def filter_candidates(n: int, seed: int = 1, mt_report: Report | None = None, timing: bool = False) -> Report:
    """Character-level surviving (lam, nu) pairs, checked against tensor results for n <= 9."""
    start = time.perf_counter()
    filt = spinchars.candidate_filters(n)
    report = Report("filter", seed, params={
        "n": n,
        "empty": filt.empty,
        "nu_candidates": [repr(x) for x in filt.nu_candidates],
        "pairs": [[repr(a), repr(b)] for a, b in filt.pairs],
    })
    if n == 5:
        report.add({"n": n, "check": "exception_kept"}, True,
                   Partition((4, 1)) in filt.nu_candidates)
    if 5 <= n <= 9:
        if mt_report is None:
            mt_report = verify_mt(n, seed, min_n=n)
        irreducible = [c for c in mt_report.cases if c["input"]["n"] == n and c["got"]["irreducible"]]
        unexplained = []
        for c in irreducible:
            v, w = c["input"]["pair"]
            lam = _parse(v.rstrip("+-")) if _parse(w.rstrip("+-")) == beta(n) else _parse(w.rstrip("+-"))
            nu = _parse(c["got"]["matched_label"].rstrip("+-"))
            exception = n == 5 and nu == Partition((4, 1))
            listed = (lam, nu) in filt.pairs
            if not (exception or listed):
                unexplained.append({"pair": c["input"]["pair"], "nu": repr(nu)})
            if is_double(lam) and is_double(nu):
                unexplained.append({"pair": c["input"]["pair"], "nu": repr(nu), "reason": "double to double"})
        report.add({"n": n, "check": "consistent_with_tensor_products"}, [], unexplained)
        report.add({"n": n, "check": "only_known_exception"},
                   [["(3,2)+", "(3,2)-"]] if n == 5 else [],
                   sorted(sorted(c["input"]["pair"]) for c in irreducible))
    return _timed(report, start, timing)


__all__ = [
    "Report", "TSV_HEADER", "filter_candidates", "tsv_summary", "verify_benson", "verify_branching",
    "verify_mt", "verify_perm_structure", "verify_spinchar", "verify_pair_scan",
]
