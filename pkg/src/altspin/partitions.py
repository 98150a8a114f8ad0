"""Partitions and the structural maps used throughout the package.

A :class:`Partition` is an immutable tuple of positive, weakly decreasing
integers.  Indexing is the usual 0-based tuple indexing; :meth:`Partition.part`
gives the 1-based accessor that returns 0 past the last part.
"""

from __future__ import annotations

import enum
from collections import Counter
from collections.abc import Iterable, Iterator, Sequence

from .errors import IndexOutOfRange, Not2Regular, NotAPartition


class Partition(tuple):
    """Weakly decreasing tuple of positive integers."""

    __slots__ = ()

    def __new__(cls, parts: Iterable[int] = ()):
        parts = tuple(int(x) for x in parts)
        while parts and parts[-1] == 0:
            parts = parts[:-1]
        for x in parts:
            if x <= 0:
                raise NotAPartition(f"non-positive part in {parts}")
        for a, b in zip(parts, parts[1:]):
            if a < b:
                raise NotAPartition(f"{parts} is not weakly decreasing")
        return super().__new__(cls, parts)

    @property
    def n(self) -> int:
        return sum(self)

    def part(self, j: int) -> int:
        """1-based part access; 0 beyond the last part."""
        if j < 1:
            raise IndexOutOfRange(j)
        return self[j - 1] if j <= len(self) else 0

    def nodes(self) -> Iterator[tuple[int, int]]:
        for r, row in enumerate(self, start=1):
            for c in range(1, row + 1):
                yield (r, c)

    def conjugate(self) -> Partition:
        if not self:
            return Partition()
        return Partition(sum(1 for x in self if x > c) for c in range(self[0]))

    def is_p_regular(self, p: int = 2) -> bool:
        return all(m < p for m in Counter(self).values())

    def __repr__(self) -> str:
        return "(" + ",".join(map(str, self)) + ")"

    __str__ = __repr__


def as_partition(seq: Sequence[int]) -> Partition:
    """Checked conversion of a raw sequence (trailing zeros allowed)."""
    return Partition(seq)


def sort_to_partition(parts: Iterable[int]) -> Partition:
    """``p(mu)``: reorder a multiset of parts into a partition (zeros dropped)."""
    return Partition(sorted((x for x in parts if x), reverse=True))


def h(lam: Sequence[int]) -> int:
    return sum(1 for x in lam if x)


def h2(lam: Sequence[int]) -> int:
    return sum(1 for x in lam if x and x % 2 == 0)


def dominance(lam: Sequence[int], mu: Sequence[int]) -> bool:
    """True iff ``lam`` dominates ``mu`` (weights must agree)."""
    if sum(lam) != sum(mu):
        return False
    a = b = 0
    for k in range(max(len(lam), len(mu))):
        a += lam[k] if k < len(lam) else 0
        b += mu[k] if k < len(mu) else 0
        if a < b:
            return False
    return True


def remove_part(lam: Partition, j: int) -> Partition:
    """``lam`` with its ``j``-th part (1-based) deleted."""
    if not 1 <= j <= len(lam):
        raise IndexOutOfRange(f"part {j} of {lam}")
    return Partition(lam[: j - 1] + lam[j:])


# --- enumeration -----------------------------------------------------------


class Family(enum.Enum):
    ALL = "all"
    TWO_REGULAR = "two-regular"
    ODD_PARTS = "odd-parts"
    ODD_DISTINCT = "odd-distinct"
    BENSON_SPLIT = "benson-split"


def _partitions(n: int, largest: int, distinct: bool, odd: bool) -> Iterator[tuple[int, ...]]:
    if n == 0:
        yield ()
        return
    for first in range(min(n, largest), 0, -1):
        if odd and first % 2 == 0:
            continue
        nxt = first - 1 if distinct else first
        for rest in _partitions(n - first, nxt, distinct, odd):
            yield (first,) + rest


def enumerate_family(family: Family | str, n: int) -> list[Partition]:
    """All partitions of ``n`` in ``family``, in descending lexicographic order."""
    family = Family(family)
    if n < 0:
        raise ValueError("n must be non-negative")
    distinct = family in (Family.TWO_REGULAR, Family.ODD_DISTINCT, Family.BENSON_SPLIT)
    odd = family in (Family.ODD_PARTS, Family.ODD_DISTINCT)
    out = [Partition(p) for p in _partitions(n, n, distinct, odd)]
    if family is Family.BENSON_SPLIT:
        out = [p for p in out if benson_split(p)]
    return out


def partitions(n: int) -> list[Partition]:
    return enumerate_family(Family.ALL, n)


def two_regular(n: int) -> list[Partition]:
    return enumerate_family(Family.TWO_REGULAR, n)


def odd_parts(n: int) -> list[Partition]:
    return enumerate_family(Family.ODD_PARTS, n)


def odd_distinct(n: int) -> list[Partition]:
    return enumerate_family(Family.ODD_DISTINCT, n)


# --- splitting criterion ---------------------------------------------------


def benson_split(lam: Partition) -> bool:
    """Whether ``D^lam`` splits on restriction to the alternating group.

    Pairs ``(lam_{2k-1}, lam_{2k})`` must satisfy difference <= 2 and sum not
    congruent to 2 mod 4, missing parts read as 0.
    """
    lam = Partition(lam)
    if not lam.is_p_regular(2):
        raise Not2Regular(f"{lam} is not 2-regular")
    for k in range(1, (len(lam) + 1) // 2 + 1):
        a, b = lam.part(2 * k - 1), lam.part(2 * k)
        if a - b > 2 or (a + b) % 4 == 2:
            return False
    return True


# --- doubles ---------------------------------------------------------------


def _strip_trailing_zeros(seq: list[int]) -> tuple[int, ...]:
    while seq and seq[-1] == 0:
        seq.pop()
    return tuple(seq)


def dbl(lam: Iterable[int]) -> tuple[int, ...]:
    """Raw double: concatenation of (ceil((x+1)/2), floor((x-1)/2)) per part.

    The result need not be a partition; use :func:`as_partition` to check.
    """
    out: list[int] = []
    for x in lam:
        out += [(x + 2) // 2, (x - 1) // 2]
    return _strip_trailing_zeros(out)


def dblb(lam: Iterable[int]) -> tuple[int, ...]:
    """Raw concatenation of (ceil(x/2), floor(x/2)) per part."""
    out: list[int] = []
    for x in lam:
        out += [(x + 1) // 2, x // 2]
    return _strip_trailing_zeros(out)


def beta(n: int) -> Partition:
    """Label of the basic spin module in characteristic 2."""
    if n < 1:
        raise ValueError("beta requires n >= 1")
    return Partition(dbl((n,)))


def is_double(nu: Partition) -> bool:
    """Whether ``nu = dbl(mu)`` for some partition ``mu``."""
    return double_preimage(nu) is not None


def double_preimage(nu: Partition) -> Partition | None:
    nu = tuple(nu) + (0,)
    parts = [nu[k] + nu[k + 1] for k in range(0, len(nu) - 1, 2)]
    try:
        mu = sort_to_partition(parts)
    except NotAPartition:
        return None
    return mu if dbl(mu) == tuple(nu[:-1]) else None


# --- regularisation, cores, content -----------------------------------------


def regularize(lam: Iterable[int]) -> Partition:
    """James regularisation for p = 2 (ladders are the anti-diagonals)."""
    lam = Partition(lam)
    per_ladder = Counter(r + c for r, c in lam.nodes())
    cells = []
    for s, count in per_ladder.items():
        # highest positions on ladder s are rows 1, 2, ..., count
        cells += [(r, s - r) for r in range(1, count + 1)]
    rows = Counter(r for r, _ in cells)
    return Partition(rows[r] for r in range(1, len(rows) + 1))


def content(lam: Iterable[int], p: int = 2) -> tuple[int, ...]:
    """Number of nodes of each residue ``(col - row) mod p``."""
    counts = [0] * p
    for r, c in Partition(lam).nodes():
        counts[(c - r) % p] += 1
    return tuple(counts)


def _beta_set(lam: Partition, length: int) -> list[int]:
    return [lam.part(i) + length - i for i in range(1, length + 1)]


def core(lam: Iterable[int], p: int = 2) -> Partition:
    """p-core via the abacus: slide every bead up its runner."""
    lam = Partition(lam)
    length = len(lam) + (-len(lam)) % p
    beads = _beta_set(lam, length)
    runners = Counter(b % p for b in beads)
    new = []
    for r in range(p):
        new += [r + p * k for k in range(runners[r])]
    new.sort(reverse=True)
    return Partition(b - (length - i) for i, b in enumerate(new, start=1))


def two_core(lam: Iterable[int]) -> Partition:
    return core(lam, 2)


def hook_length_dimension(lam: Partition) -> int:
    """Number of standard tableaux of shape ``lam``."""
    lam = Partition(lam)
    conj = lam.conjugate()
    prod = 1
    for r, c in lam.nodes():
        prod *= lam[r - 1] - c + conj[c - 1] - r + 1
    fact = 1
    for k in range(2, lam.n + 1):
        fact *= k
    return fact // prod
