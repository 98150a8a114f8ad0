"""Concrete 2-modular irreducibles of symmetric and alternating groups.

``S_n`` acts through the Coxeter generators ``s_1 .. s_{n-1}`` (generator
``k - 1`` swaps ``k`` and ``k + 1``).  ``A_n`` is generated by the words
``s_1 s_2`` and ``s_1 s_k`` for ``3 <= k <= n - 1``; conjugating by ``s_1``
inverts each of them.

``D^lam`` is the Specht module modulo the radical of the tabloid form,
realized on the row space of the Gram matrix of standard polytabloids.
"""

from __future__ import annotations

import enum
import logging
from collections import Counter
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import permutations, product
from pathlib import Path

import numpy as np

from .errors import BadComposition, BadShape, Not2Regular, NotAPartition, UnmatchedFactor
from .gf2 import _kernels as K
from .gf2.bitmatrix import BitMatrix, rref
from .gf2.extension import KRep, pull_back, split_structure
from .gf2.io import dump, load
from .gf2.module import (
    IrreducibleCertificate,
    Rep,
    SubmoduleBasis,
    certify_irreducible,
    chop,
    conjugate_rep,
    endo_dim,
    hom_space,
    iso,
    restrict,
)
from .partitions import Partition, benson_split, content, hook_length_dimension, two_regular

log = logging.getLogger(__name__)


def sym_tag(n: int) -> str:
    return f"Sym({n})"


def alt_tag(n: int) -> str:
    return f"Alt({n})"


def alt_words(n: int) -> list[tuple[int, ...]]:
    """A_n generators as words in the Coxeter generators (0-based indices)."""
    if n < 3:
        return []
    return [(0, 1)] + [(0, k - 1) for k in range(3, n)]


def alt_twist(n: int) -> list[tuple[tuple[int, int], ...]]:
    """Conjugation by ``s_1`` on the A_n generators: each goes to its inverse."""
    return [((i, -1),) for i in range(len(alt_words(n)))]


def _as_shape(lam) -> Partition:
    try:
        return Partition(lam)
    except NotAPartition as exc:
        raise BadShape(str(exc)) from exc


# --- tabloids and permutation modules ----------------------------------------------------


@dataclass(frozen=True)
class TabloidSpace:
    """Row-equivalence classes of ``lam``-tableaux.

    A tabloid is stored as the tuple giving the row of each entry ``1..n``.
    """

    shape: Partition
    tabloids: tuple[tuple[int, ...], ...]
    index: dict = field(compare=False, repr=False)

    @property
    def dim(self) -> int:
        return len(self.tabloids)

    def swap_permutation(self, k: int) -> np.ndarray:
        """Images of the tabloids under the transposition ``(k, k+1)``."""
        out = np.empty(self.dim, dtype=np.int64)
        for i, t in enumerate(self.tabloids):
            s = list(t)
            s[k - 1], s[k] = s[k], s[k - 1]
            out[i] = self.index[tuple(s)]
        return out


@lru_cache(maxsize=None)
def tabloid_space(lam) -> TabloidSpace:
    lam = _as_shape(lam)
    n = lam.n
    tabloids = []

    def fill(pos, counts, acc):
        if pos == n:
            tabloids.append(tuple(acc))
            return
        for r, cap in enumerate(lam):
            if counts[r] < cap:
                counts[r] += 1
                acc.append(r)
                fill(pos + 1, counts, acc)
                acc.pop()
                counts[r] -= 1

    fill(0, [0] * len(lam), [])
    return TabloidSpace(lam, tuple(tabloids), {t: i for i, t in enumerate(tabloids)})


def perm_module(n: int, lam) -> Rep:
    lam = _as_shape(lam)
    if lam.n != n:
        raise BadShape(f"{lam} is not a partition of {n}")
    space = tabloid_space(lam)
    gens = tuple(BitMatrix.from_permutation(space.swap_permutation(k)) for k in range(1, n))
    return Rep(space.dim, gens, sym_tag(n), f"M{lam!r}")


# --- Specht modules and heads ---------------------------------------------------------------


def standard_tableaux(lam) -> list[tuple[tuple[int, ...], ...]]:
    """Standard tableaux as tuples of rows, in a fixed order."""
    lam = _as_shape(lam)
    n = lam.n
    out = []

    def place(k, rows):
        if k > n:
            out.append(tuple(tuple(r) for r in rows))
            return
        for r in range(len(lam)):
            if len(rows[r]) < lam[r] and (r == 0 or len(rows[r - 1]) > len(rows[r])):
                rows[r].append(k)
                place(k + 1, rows)
                rows[r].pop()

    place(1, [[] for _ in lam])
    return out


def polytabloid(tableau, space: TabloidSpace) -> np.ndarray:
    """0/1 vector of the polytabloid of ``tableau`` (signs vanish mod 2)."""
    n = space.shape.n
    columns = [[row[c] for row in tableau if c < len(row)] for c in range(len(tableau[0]))]
    vec = np.zeros(space.dim, dtype=np.uint8)
    for arrangement in product(*(permutations(col) for col in columns)):
        rows = [0] * n
        for col in arrangement:
            for r, entry in enumerate(col):
                rows[entry - 1] = r
        vec[space.index[tuple(rows)]] ^= 1
    return vec


def specht_matrix(lam) -> np.ndarray:
    """Standard polytabloids as rows over the tabloid basis."""
    space = tabloid_space(lam)
    return np.vstack([polytabloid(t, space) for t in standard_tableaux(lam)])


def specht(lam) -> SubmoduleBasis:
    basis, piv = rref(BitMatrix.from_dense(specht_matrix(lam)))
    return SubmoduleBasis(basis, piv)


def gram_matrix(lam) -> BitMatrix:
    e = specht_matrix(lam)
    return BitMatrix.from_dense(K.dense_matmul(e, e.T))


def head_rep(lam) -> Rep:
    """``D^lam`` on the row space of the Gram matrix."""
    lam = _as_shape(lam)
    if not lam.is_p_regular(2):
        raise Not2Regular(f"{lam} is not 2-regular")
    n = lam.n
    space = tabloid_space(lam)
    e = specht_matrix(lam)
    f = e.shape[0]
    gram = K.dense_matmul(e, e.T)
    words = K.pack(np.hstack([gram, np.eye(f, dtype=np.uint8)]))
    rnk, piv = K.rref_inplace(words, f)
    trans = K.unpack(words[:rnk], 2 * f)[:, f:]
    vectors = K.dense_matmul(trans, e)
    gens = []
    for k in range(1, n):
        perm = space.swap_permutation(k)
        moved = np.empty_like(vectors)
        moved[:, perm] = vectors
        gens.append(BitMatrix.from_dense(K.dense_matmul(moved, e.T)[:, piv]))
    return Rep(rnk, tuple(gens), sym_tag(n), repr(lam))


# --- labelled irreducibles --------------------------------------------------------------


class Split(enum.Enum):
    NON_SPLIT = "NonSplit"
    SPLIT_PLUS = "SplitPlus"
    SPLIT_MINUS = "SplitMinus"


@dataclass(eq=False)
class LabeledIrreducible:
    label: Partition
    rep: Rep
    split: Split = Split.NON_SPLIT
    j: BitMatrix | None = None
    _cert: IrreducibleCertificate | None = field(default=None, repr=False)

    @property
    def sign(self) -> str:
        return {Split.NON_SPLIT: "", Split.SPLIT_PLUS: "+", Split.SPLIT_MINUS: "-"}[self.split]

    @property
    def name(self) -> str:
        return f"{self.label!r}{self.sign}"

    @property
    def dim(self) -> int:
        """Dimension over the algebraic closure."""
        return self.rep.degree // 2 if self.j is not None else self.rep.degree

    @property
    def krep(self) -> KRep:
        return KRep(self.rep, self.j)

    def certificate(self, seed: int = 1) -> IrreducibleCertificate:
        if self._cert is None:
            self._cert = certify_irreducible(self.rep, seed)
            if self._cert is None:
                raise UnmatchedFactor(f"library member {self.name} is reducible")
        return self._cert

    def sort_key(self):
        return (self.dim, tuple(self.label), self.sign)


_CACHE_DIR: Path | None = None


def set_cache_dir(path) -> None:
    global _CACHE_DIR
    _CACHE_DIR = Path(path) if path else None
    _irreducible_head.cache_clear()


@lru_cache(maxsize=None)
def _irreducible_head(lam: Partition) -> Rep:
    if _CACHE_DIR is not None:
        path = _CACHE_DIR / f"S{lam.n}_{'_'.join(map(str, lam))}.rep"
        if path.exists():
            return load(path)
        rep = head_rep(lam)
        dump(rep, path)
        return rep
    return head_rep(lam)


def irreducible_head(lam) -> LabeledIrreducible:
    lam = _as_shape(lam)
    if not lam.is_p_regular(2):
        raise Not2Regular(f"{lam} is not 2-regular")
    return LabeledIrreducible(lam, _irreducible_head(lam))


def all_irreducibles(n: int) -> dict[Partition, LabeledIrreducible]:
    return {lam: irreducible_head(lam) for lam in two_regular(n)}


def restrict_to_alt(rep: Rep, n: int) -> Rep:
    return restrict(rep, alt_words(n), alt_tag(n))


@dataclass
class SplitData:
    """How ``D^lam`` behaves on restriction to ``A_n``."""

    label: Partition
    split: bool
    gf2_factors: int
    endo_dim: int
    members: list[LabeledIrreducible]


def restriction_to_alt(lam, seed: int = 1) -> SplitData:
    lam = Partition(lam)
    n = lam.n
    res = restrict_to_alt(irreducible_head(lam).rep, n)
    if res.degree == 1 or n < 3:
        member = LabeledIrreducible(lam, res.with_label(repr(lam)))
        return SplitData(lam, False, 1, 1, [member])
    factors = chop(res, seed)
    if len(factors) == 2:
        a, b = factors
        members = [LabeledIrreducible(lam, a.with_label(f"{lam!r}+"), Split.SPLIT_PLUS),
                   LabeledIrreducible(lam, b.with_label(f"{lam!r}-"), Split.SPLIT_MINUS)]
        return SplitData(lam, True, 2, 2, members)
    if len(factors) != 1:
        raise UnmatchedFactor(f"restriction of D{lam!r} has {len(factors)} composition factors")
    e = endo_dim(res, seed)
    if e == 1:
        return SplitData(lam, False, 1, 1, [LabeledIrreducible(lam, res.with_label(repr(lam)))])
    j = split_structure(res, seed)
    one = BitMatrix.identity(res.degree)
    members = [LabeledIrreducible(lam, res.with_label(f"{lam!r}+"), Split.SPLIT_PLUS, j),
               LabeledIrreducible(lam, res.with_label(f"{lam!r}-"), Split.SPLIT_MINUS, j + one)]
    return SplitData(lam, True, 1, e, members)


def alt_irreducibles(n: int, seed: int = 1, check: bool = True) -> list[LabeledIrreducible]:
    """Labelled absolutely irreducible ``A_n``-modules, sorted by (dim, label, sign)."""
    out = []
    for lam in two_regular(n):
        data = restriction_to_alt(lam, seed)
        if check and n >= 2 and data.split != benson_split(lam):
            raise UnmatchedFactor(f"splitting of D{lam!r} disagrees with the arithmetic criterion")
        out.extend(data.members)
    return sorted(out, key=LabeledIrreducible.sort_key)


def twist_member(member: LabeledIrreducible, n: int) -> LabeledIrreducible:
    """The conjugate of an ``A_n``-module under ``s_1``."""
    rep = conjugate_rep(member.rep, alt_twist(n))
    return LabeledIrreducible(member.label, rep, member.split, member.j)


# --- factor matching ------------------------------------------------------------------------


def match_factor(factor: Rep, library, form_j: BitMatrix | None = None, seed: int = 1) -> LabeledIrreducible:
    """The library member isomorphic to ``factor`` (first in ascending (dim, label))."""
    for member in sorted(library, key=LabeledIrreducible.sort_key):
        if member.rep.degree != factor.degree or (member.j is None) != (form_j is None):
            continue
        phi = iso(member.rep, factor, seed, cert=member.certificate(seed))
        if phi is None:
            continue
        if form_j is None or pull_back(phi, form_j) == member.j:
            return member
    raise UnmatchedFactor(f"no library member matches a factor of degree {factor.degree}")


def match_gf2_factor(factor: Rep, library, seed: int = 1) -> LabeledIrreducible:
    """Match a GF(2)-irreducible factor, ignoring any GF(4)-structure."""
    seen = set()
    for member in sorted(library, key=LabeledIrreducible.sort_key):
        key = id(member.rep)
        if member.rep.degree != factor.degree or key in seen:
            continue
        seen.add(key)
        if iso(member.rep, factor, seed, cert=member.certificate(seed)) is not None:
            return member
    raise UnmatchedFactor(f"no library member matches a factor of degree {factor.degree}")


def comp_factors(rep: Rep, library, seed: int = 1) -> Counter:
    """Composition multiplicities of ``rep`` by library label (GF(2) factors)."""
    counts: Counter = Counter()
    for f in chop(rep, seed):
        counts[match_gf2_factor(f, library, seed).label] += 1
    return counts


# --- restriction to S_{n-1} and Young subgroups -----------------------------------------


def young_words(composition) -> list[tuple[int, ...]]:
    comp = list(composition)
    if any(c <= 0 for c in comp):
        raise BadComposition(f"{tuple(comp)} has a non-positive part")
    cuts, total = set(), 0
    for c in comp:
        total += c
        cuts.add(total)
    return [(k - 1,) for k in range(1, total) if k not in cuts]


def young_restrict(rep: Rep, composition) -> Rep:
    comp = tuple(composition)
    if any(c <= 0 for c in comp) or sum(comp) - 1 != rep.ngens:
        raise BadComposition(f"{comp} does not match {rep.ngens + 1} points")
    tag = "Young(" + ",".join(map(str, comp)) + ")"
    return restrict(rep, young_words(comp), tag)


def restrict_to_previous(rep: Rep, n: int) -> Rep:
    return restrict(rep, [(k,) for k in range(n - 2)], sym_tag(n - 1))


def branching_data(lam, seed: int = 1) -> dict[int, Counter]:
    """Composition factors of ``D^lam`` restricted to ``S_{n-1}``, split by residue.

    A factor ``D^mu`` lies in the residue-``i`` part when ``lam`` has one more
    node of residue ``i`` than ``mu`` (block projection by content).
    """
    lam = Partition(lam)
    n = lam.n
    if n == 1:
        return {}
    res = restrict_to_previous(irreducible_head(lam).rep, n)
    counts = comp_factors(res, all_irreducibles(n - 1).values(), seed)
    c_lam = content(lam)
    out: dict[int, Counter] = {}
    for mu, mult in counts.items():
        c_mu = content(mu)
        diff = [a - b for a, b in zip(c_lam, c_mu)]
        i = diff.index(1)
        out.setdefault(i, Counter())[mu] = mult
    return out


def restriction_endo_dim(lam, seed: int = 1) -> int:
    lam = Partition(lam)
    res = restrict_to_previous(irreducible_head(lam).rep, lam.n)
    return endo_dim(res, seed)


# --- direct sums ------------------------------------------------------------------------------


def certify_direct_sum(rep: Rep, summands, seed: int = 1) -> dict:
    """Check ``rep`` is the direct sum of the given irreducibles.

    For each summand a nonzero homomorphism into ``rep`` is taken; the
    images must be independent and fill ``rep``.
    """
    images = []
    for s in summands:
        homs = [h for h in hom_space(s.rep, rep, seed=seed) if not h.is_zero()]
        picked = None
        for h in homs:
            trial = images + [h.dense]
            if rref(BitMatrix.from_dense(np.vstack(trial)))[0].rows == sum(x.shape[0] for x in trial):
                picked = h
                break
        if picked is None:
            return {"direct_sum": False, "failed_summand": s.name}
        images.append(picked.dense)
    total = rref(BitMatrix.from_dense(np.vstack(images)))[0].rows
    return {"direct_sum": total == rep.degree, "rank": total, "degree": rep.degree}
