"""Spin characters on odd-part classes and the filters derived from them.

Two tiers.  The sign-free tier enumerates bar paths (chains of strict
partitions grown by the parts of an odd-part class) and reads off parity,
a 2-adic valuation lower bound and, when determined, the value mod 4.  The
signed tier computes exact spin character values from Schur Q-functions
expanded in odd power sums; it is checked against the sign-free tier, the
degree formula and the basic spin magnitudes.
"""

from __future__ import annotations

import math
from collections import Counter, defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from .errors import BadFamily, CaseShapeMismatch, Not2Regular, WeightMismatch
from .partitions import (
    Partition,
    benson_split,
    dbl,
    h,
    h2,
    is_double,
    odd_distinct,
    odd_parts,
    sort_to_partition,
    two_regular,
)

NEW_PART = "NewPart"
TWO_PARTS = "TwoParts"
GROW_PART = "GrowPart"


@dataclass(frozen=True)
class BarPath:
    chain: tuple[Partition, ...]
    steps: tuple[tuple, ...]

    @property
    def a(self) -> int:
        return sum(1 for s in self.steps if s[0] != NEW_PART)


def _successors(mu: tuple[int, ...], step: int):
    parts = set(mu)
    if step not in parts:
        yield (NEW_PART,), tuple(sorted(mu + (step,), reverse=True))
    for y in range(1, (step + 1) // 2):
        x = step - y
        if x != y and x not in parts and y not in parts:
            yield (TWO_PARTS, x, y), tuple(sorted(mu + (x, y), reverse=True))
    for j, part in enumerate(mu):
        grown = part + step
        if grown not in parts:
            new = mu[:j] + (grown,) + mu[j + 1 :]
            yield (GROW_PART, j + 1), tuple(sorted(new, reverse=True))


def _check_pair(lam: Partition, alpha: Partition) -> tuple[Partition, Partition]:
    lam, alpha = Partition(lam), Partition(alpha)
    if lam.n != alpha.n:
        raise WeightMismatch(f"|{lam}| != |{alpha}|")
    if not lam.is_p_regular(2):
        raise BadFamily(f"{lam} is not 2-regular")
    if any(x % 2 == 0 for x in alpha):
        raise BadFamily(f"{alpha} has an even part")
    return lam, alpha


@lru_cache(maxsize=None)
def _all_paths(alpha: tuple[int, ...]) -> dict[tuple[int, ...], tuple[BarPath, ...]]:
    out: dict[tuple[int, ...], list[BarPath]] = defaultdict(list)

    def walk(chain, steps):
        k = len(steps)
        if k == len(alpha):
            out[chain[-1]].append(
                BarPath(tuple(Partition(c) for c in chain), tuple(steps))
            )
            return
        for tag, nxt in _successors(chain[-1], alpha[k]):
            walk(chain + (nxt,), steps + [tag])

    walk(((),), [])
    return {lam: tuple(ps) for lam, ps in out.items()}


def enumerate_paths(lam: Partition, alpha: Partition) -> list[BarPath]:
    """All bar paths for the class ``alpha`` ending at ``lam``."""
    lam, alpha = _check_pair(lam, alpha)
    return list(_all_paths(tuple(alpha)).get(tuple(lam), ()))


def a_statistics(lam: Partition, alpha: Partition) -> Counter:
    return Counter(p.a for p in enumerate_paths(lam, alpha))


def zeta_parity(lam: Partition, alpha: Partition) -> int:
    stats = a_statistics(lam, alpha)
    return (stats[0] + stats[1]) % 2


def zeta_valuation_lb(lam: Partition, alpha: Partition) -> float:
    """min over paths of floor(a/2); ``inf`` when there are no paths."""
    stats = a_statistics(lam, alpha)
    return min((a // 2 for a in stats), default=math.inf)


def zeta_mod4(lam: Partition, alpha: Partition) -> int | None:
    """Value mod 4 when it is independent of the path signs, else ``None``."""
    stats = a_statistics(lam, alpha)
    if stats[0] + stats[1]:
        return None
    return (2 * (stats[2] + stats[3])) % 4


# --- signed tier: Schur Q-functions in odd power sums -----------------------

Poly = dict  # odd partition tuple -> Fraction


def _z(rho: tuple[int, ...]) -> int:
    out = 1
    for part, mult in Counter(rho).items():
        out *= part**mult * math.factorial(mult)
    return out


def _mul(a: Poly, b: Poly) -> Poly:
    out: Poly = defaultdict(Fraction)
    for ka, va in a.items():
        for kb, vb in b.items():
            out[tuple(sorted(ka + kb, reverse=True))] += va * vb
    return {k: v for k, v in out.items() if v}


def _add(a: Poly, b: Poly, scale: Fraction | int = 1) -> Poly:
    out = dict(a)
    for k, v in b.items():
        out[k] = out.get(k, Fraction(0)) + scale * v
    return {k: v for k, v in out.items() if v}


@lru_cache(maxsize=None)
def _q(r: int) -> Poly:
    if r < 0:
        return {}
    if r == 0:
        return {(): Fraction(1)}
    return {tuple(rho): Fraction(2 ** len(rho), _z(tuple(rho))) for rho in odd_parts(r)}


@lru_cache(maxsize=None)
def _q_pair(r: int, s: int) -> Poly:
    out = _mul(_q(r), _q(s))
    for i in range(1, s + 1):
        out = _add(out, _mul(_q(r + i), _q(s - i)), 2 * (-1) ** i)
    return out


def _pfaffian(idx: tuple[int, ...], parts: tuple[int, ...]) -> Poly:
    if not idx:
        return {(): Fraction(1)}
    first, rest = idx[0], idx[1:]
    out: Poly = {}
    for pos, j in enumerate(rest):
        sign = -1 if pos % 2 else 1
        minor = _pfaffian(rest[:pos] + rest[pos + 1 :], parts)
        out = _add(out, _mul(_q_pair(parts[first], parts[j]), minor), sign)
    return out


@lru_cache(maxsize=None)
def schur_q(lam: tuple[int, ...]) -> Poly:
    parts = tuple(lam) + ((0,) if len(lam) % 2 else ())
    return _pfaffian(tuple(range(len(parts))), parts)


def spin_char(lam: Partition, alpha: Partition) -> int:
    """Spin character of ``lam`` on the odd-part class ``alpha``."""
    lam, alpha = _check_pair(lam, alpha)
    coeff = schur_q(tuple(lam)).get(tuple(alpha), Fraction(0))
    eps = (lam.n - len(lam)) % 2
    shift = -(-(len(lam) + len(alpha) + eps) // 2)
    value = coeff * _z(tuple(alpha)) / 2**shift
    if value.denominator != 1:
        raise ArithmeticError(f"non-integral spin character at {lam}, {alpha}")
    return int(value)


def spin_degree(lam: Partition) -> int:
    """Degree of one irreducible spin representation labelled by ``lam``."""
    lam = Partition(lam)
    n = lam.n
    value = Fraction(2 ** ((n - len(lam)) // 2) * math.factorial(n))
    for x in lam:
        value /= math.factorial(x)
    for i, x in enumerate(lam):
        for y in lam[i + 1 :]:
            value *= Fraction(x - y, x + y)
    return int(value)


# --- divisibility predicates --------------------------------------------------


def _odd_distinct_partition(lam) -> Partition:
    lam = Partition(lam)
    if any(x % 2 == 0 for x in lam) or not lam.is_p_regular(2):
        raise CaseShapeMismatch(f"{lam} is not in odd distinct parts")
    return lam


def predicted_odd_i(lam: Partition, alpha: Partition) -> bool:
    """Odd-distinct ``lam``: the value at ``alpha`` is odd iff ``alpha == lam``."""
    lam = _odd_distinct_partition(lam)
    return Partition(alpha) == lam


def odd_classes_ii(lam: Partition, c: int) -> set[Partition]:
    """Classes where the character of ``p(lam, 2c)`` is odd (c odd)."""
    lam = _odd_distinct_partition(lam)
    if c < 1 or c % 2 == 0:
        raise CaseShapeMismatch(f"c = {c} must be odd and positive")
    out = set()
    for j in range(len(lam)):
        out.add(sort_to_partition(lam[:j] + lam[j + 1 :] + (lam[j] + 2 * c,)))
    for e in range(1, c + 1, 2):
        out.add(sort_to_partition(lam + (2 * c - e, e)))
    return out


def shape_ii(lam: Partition, c: int) -> Partition:
    return sort_to_partition(tuple(_odd_distinct_partition(lam)) + (2 * c,))


def predicted_odd_ii(lam: Partition, c: int, alpha: Partition) -> bool:
    return Partition(alpha) in odd_classes_ii(lam, c)


def not_div4_classes_iii(c: int, d: int) -> set[Partition]:
    """Superset of the classes where the value of ``(2c, 2d)`` is not divisible by 4."""
    if not (c > d >= 1 and c % 2 and d % 2):
        raise CaseShapeMismatch(f"need c > d >= 1 both odd, got {c}, {d}")
    out = set()
    n = 2 * c + 2 * d
    for e in range(1, c + d + 1, 2):
        out.add(sort_to_partition((n - e, e)))
    for e in range(1, 2 * c, 2):
        for f in range(1, 2 * d, 2):
            out.add(sort_to_partition((2 * c - e, e, 2 * d - f, f)))
    return out


@dataclass(frozen=True)
class ParityCheck:
    case: str
    lam: Partition
    alpha: Partition
    predicted: bool
    observed: bool | None

    @property
    def agrees(self) -> bool:
        return self.observed is None or self.predicted == self.observed


def parity_checks(n_max: int, signed: bool = True) -> list[ParityCheck]:
    """Run the divisibility predicates against path parities for sizes <= n_max."""
    checks: list[ParityCheck] = []
    for n in range(1, n_max + 1):
        for lam in odd_distinct(n):
            for alpha in odd_parts(n):
                checks.append(
                    ParityCheck("i", lam, alpha, predicted_odd_i(lam, alpha),
                               bool(zeta_parity(lam, alpha)))
                )
    for c in range(3, n_max // 2 + 1, 2):
        for m in range(0, n_max - 2 * c + 1):
            for lam in odd_distinct(m):
                shape = shape_ii(lam, c)
                for alpha in odd_parts(m + 2 * c):
                    checks.append(
                        ParityCheck(f"ii(c={c})", shape, alpha,
                                   predicted_odd_ii(lam, c, alpha),
                                   bool(zeta_parity(shape, alpha)))
                    )
    for c in range(3, n_max, 2):
        for d in range(1, c, 2):
            n = 2 * c + 2 * d
            if n > n_max:
                continue
            shape = Partition((2 * c, 2 * d))
            allowed = not_div4_classes_iii(c, d)
            for alpha in odd_parts(n):
                checks.append(
                    ParityCheck("iii-even", shape, alpha, True, zeta_parity(shape, alpha) == 0)
                )
                if signed:
                    val = spin_char(shape, alpha)
                    if val % 4:
                        checks.append(ParityCheck("iii-mod4", shape, alpha, True, alpha in allowed))
            if signed:
                alpha = Partition((c, c, d, d))
                checks.append(
                    ParityCheck("iii-witness", shape, alpha, True, spin_char(shape, alpha) % 4 != 0)
                )
    return checks


# --- basic spin data ------------------------------------------------------------


@dataclass(frozen=True)
class BasicSpinTable:
    n: int
    magnitudes: dict
    difference_classes: frozenset | None


def basic_spin_magnitude(alpha: Partition) -> int:
    return 2 ** ((h(alpha) - 1) // 2)


def basic_spin_tables(n: int) -> BasicSpinTable:
    if n < 2:
        raise ValueError("n >= 2 required")
    mags = {alpha: basic_spin_magnitude(alpha) for alpha in odd_parts(n)}
    if n % 2:
        diff = frozenset({Partition((n,))})
    elif n % 4 == 0:
        diff = frozenset(a for a in odd_distinct(n) if h(a) == 2)
    else:
        diff = None
    return BasicSpinTable(n, mags, diff)


def spin_principal_multiplicity(lam: Partition) -> int:
    lam = Partition(lam)
    if not lam.is_p_regular(2):
        raise Not2Regular(f"{lam} is not 2-regular")
    return 2 ** (h2(lam) // 2)


# --- reduction filters -------------------------------------------------------------


@dataclass
class CandidateFilter:
    n: int
    empty: bool
    nu_candidates: list[Partition] = field(default_factory=list)
    pairs: list[tuple[Partition, Partition]] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)


def _two_regular_partition(seq) -> Partition | None:
    try:
        p = Partition(seq)
    except ValueError:
        return None
    return p if p.is_p_regular(2) else None


def candidate_filters(n: int) -> CandidateFilter:
    """Admissible (lam, nu) label pairs for an irreducible product with basic spin."""
    if n < 5:
        raise ValueError("filters are stated for n >= 5")
    if n % 4 == 2:
        return CandidateFilter(n, True, notes=["n = 2 mod 4: no candidates"])
    nonsplit = {nu for nu in two_regular(n) if not benson_split(nu)}
    lam_pool = [lam for lam in two_regular(n) if lam != Partition((n,))]
    groups: list[tuple[set, int]] = []
    if n % 2:
        shapes = set()
        for b in range(1, (n - 1) // 2 + 1):
            shapes.add(Partition((n - b, b)))
            d = _two_regular_partition(dbl((n - b, b)))
            if d is not None:
                shapes.add(d)
        groups.append((shapes, 4))
    else:
        first = set()
        for b in range(1, n // 2 - 1):
            first.add(Partition((n - b, b)))
            d = _two_regular_partition(dbl((n - b, b)))
            if d is not None:
                first.add(d)
        groups.append((first, 4))
        second = {nu for nu in two_regular(n) if h(nu) <= 4}
        for c in range(1, n):
            for d in range(1, n - c):
                if c % 4 == d % 4 and c % 2 and n - c - d >= 1:
                    nu = _two_regular_partition(dbl(sort_to_partition((n - c - d, c, d))))
                    if nu is not None:
                        second.add(nu)
        groups.append((second, 6))
    pairs = set()
    nus = set()
    for shapes, hmax in groups:
        for nu in shapes & nonsplit:
            nus.add(nu)
            for lam in lam_pool:
                if h(lam) > hmax:
                    continue
                if is_double(lam) and is_double(nu):
                    continue
                pairs.add((lam, nu))
    return CandidateFilter(
        n, not pairs, sorted(nus, reverse=True), sorted(pairs, reverse=True)
    )
