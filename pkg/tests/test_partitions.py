from itertools import combinations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from altspin.errors import IndexOutOfRange, Not2Regular, NotAPartition
from altspin.partitions import (
    Family,
    Partition,
    benson_split,
    beta,
    content,
    dbl,
    dblb,
    dominance,
    double_preimage,
    enumerate_family,
    h,
    h2,
    hook_length_dimension,
    is_double,
    odd_distinct,
    odd_parts,
    partitions,
    regularize,
    remove_part,
    sort_to_partition,
    two_core,
    two_regular,
)

# number of partitions of n, n = 0..12
PARTITION_COUNTS = [1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42, 56, 77]


def P(*parts):
    return Partition(parts)


@st.composite
def any_partition(draw, max_n=12):
    n = draw(st.integers(0, max_n))
    return draw(st.sampled_from(partitions(n)))


@st.composite
def regular_partition(draw, max_n=12):
    n = draw(st.integers(1, max_n))
    return draw(st.sampled_from(two_regular(n)))


# --- construction --------------------------------------------------------------


def test_trailing_zeros_are_dropped():
    assert Partition((3, 1, 0, 0)) == (3, 1)
    assert repr(P(3, 1)) == "(3,1)"


@pytest.mark.parametrize("bad", [(1, 2), (3, -1), (2, 0, 1)])
def test_rejects_non_partitions(bad):
    with pytest.raises(NotAPartition):
        Partition(bad)


def test_part_accessor_pads_with_zero():
    lam = P(4, 2)
    assert [lam.part(j) for j in (1, 2, 3, 7)] == [4, 2, 0, 0]
    with pytest.raises(IndexOutOfRange):
        lam.part(0)


def test_empty_partition():
    assert Partition().n == 0
    assert partitions(0) == [Partition()]


# --- enumeration ------------------------------------------------------------


def test_small_families():
    assert two_regular(5) == [P(5), P(4, 1), P(3, 2)]
    assert odd_distinct(5) == [P(5)]
    assert enumerate_family(Family.BENSON_SPLIT, 5) == [P(3, 2)]
    assert enumerate_family("odd-parts", 5) == [P(5), P(3, 1, 1), P(1, 1, 1, 1, 1)]


@pytest.mark.parametrize("n", range(13))
def test_partition_counts(n):
    assert len(partitions(n)) == PARTITION_COUNTS[n]


@pytest.mark.parametrize("n", range(1, 16))
def test_distinct_and_odd_part_counts_agree(n):
    # Euler: as many partitions into distinct parts as into odd parts
    assert len(two_regular(n)) == len(odd_parts(n))


@pytest.mark.parametrize("n", range(1, 11))
def test_families_nest_and_are_sorted(n):
    for fam in Family:
        out = enumerate_family(fam, n)
        assert out == sorted(out, reverse=True)
        assert len(set(out)) == len(out)
    assert set(enumerate_family(Family.BENSON_SPLIT, n)) <= set(two_regular(n))
    assert set(odd_distinct(n)) <= set(odd_parts(n))


# --- splitting criterion ---------------------------------------------------------


def test_benson_examples():
    assert benson_split(P(3, 2))
    assert not benson_split(P(4, 2))
    assert not benson_split(P(5))
    assert benson_split(P(3, 1))


def test_benson_requires_two_regular():
    with pytest.raises(Not2Regular):
        benson_split(P(2, 2))


@pytest.mark.parametrize("n", range(2, 21))
def test_basic_label_splits_unless_two_mod_four(n):
    assert benson_split(beta(n)) == (n % 4 != 2)


# --- doubles -----------------------------------------------------------------


def test_double_examples():
    assert beta(5) == P(3, 2)
    assert beta(6) == P(4, 2)
    assert dbl((6, 1)) == (4, 2, 1)
    assert dbl((1,)) == (1,)
    assert dblb((4,)) == (2, 2)


@pytest.mark.parametrize("n", range(1, 13))
def test_doubles_preserve_size(n):
    for lam in partitions(n):
        assert sum(dbl(lam)) == n
        assert sum(dblb(lam)) == n


def test_double_preimage_roundtrip():
    for n in range(1, 11):
        for mu in partitions(n):
            raw = dbl(mu)
            try:
                nu = Partition(raw)
            except NotAPartition:
                continue
            assert is_double(nu)
            assert dbl(double_preimage(nu)) == tuple(nu)
    assert not is_double(P(5))
    assert is_double(P(3, 2))


# --- regularisation ------------------------------------------------------------


def _ladder_counts(lam):
    counts = {}
    for i, row in enumerate(lam, 1):
        for j in range(1, row + 1):
            counts[i + j] = counts.get(i + j, 0) + 1
    return counts


def _ladder_oracle(lam):
    """The 2-regular partition of the same size with the same ladder profile."""
    hits = [mu for mu in two_regular(lam.n) if _ladder_counts(mu) == _ladder_counts(lam)]
    assert len(hits) == 1
    return hits[0]


def test_regularize_examples():
    assert regularize(P(2, 2)) == P(3, 1)
    assert regularize(P(3, 2)) == P(3, 2)
    # anti-diagonal ladders send the single column of length three to a row
    assert regularize(P(1, 1, 1)) == P(3)


@pytest.mark.parametrize("n", range(1, 10))
def test_regularize_matches_ladder_profile(n):
    for lam in partitions(n):
        assert regularize(lam) == _ladder_oracle(lam)


@settings(max_examples=200, deadline=None)
@given(any_partition())
def test_regularize_properties(lam):
    r = regularize(lam)
    assert r.n == lam.n
    assert r.is_p_regular(2)
    assert regularize(r) == r
    assert content(r) == content(lam)
    assert dominance(r, lam)
    if lam.is_p_regular(2):
        assert r == lam


# --- cores and content -------------------------------------------------------------


def _domino_core(lam):
    """Remove rim dominoes by exhaustive search; the first dead end is the core."""
    lam = tuple(lam)
    while True:
        nxt = None
        rows = list(lam)
        for i in range(len(rows)):
            # horizontal domino at the end of row i
            t = rows.copy()
            t[i] -= 2
            if t[i] >= 0 and (i + 1 == len(t) or t[i] >= t[i + 1]):
                nxt = t
                break
            # vertical domino ending rows i and i+1
            if i + 1 < len(rows) and rows[i] == rows[i + 1]:
                t = rows.copy()
                t[i] -= 1
                t[i + 1] -= 1
                if i + 2 == len(t) or t[i + 1] >= t[i + 2]:
                    nxt = t
                    break
        if nxt is None:
            return Partition(lam)
        lam = tuple(x for x in nxt if x)


def test_core_examples():
    assert two_core(P(3, 2)) == P(1)
    assert two_core(P(2, 1)) == P(2, 1)
    assert content(P(3, 2)) == (3, 2)


@pytest.mark.parametrize("n", range(0, 11))
def test_core_matches_domino_removal(n):
    for lam in partitions(n):
        core = two_core(lam)
        assert core == _domino_core(lam)
        assert (lam.n - core.n) % 2 == 0


@pytest.mark.parametrize("n", range(1, 9))
def test_equal_content_iff_equal_core(n):
    for a, b in combinations(partitions(n), 2):
        assert (content(a) == content(b)) == (two_core(a) == two_core(b))


# --- small accessors -------------------------------------------------------------


def test_accessors():
    assert h2(P(4, 3, 2)) == 2
    assert h(P(4, 3, 2)) == 3
    assert dominance(P(4, 1), P(3, 2))
    assert not dominance(P(3, 2), P(4, 1))
    assert sort_to_partition({3, 2, 5}) == P(5, 3, 2)
    assert remove_part(P(5, 3, 2), 2) == P(5, 2)
    with pytest.raises(IndexOutOfRange):
        remove_part(P(5, 3, 2), 4)


@pytest.mark.parametrize("n", range(1, 9))
def test_hook_formula_counts_standard_tableaux(n):
    def count(shape):
        shape = list(shape)
        if sum(shape) == 0:
            return 1
        total = 0
        for i in range(len(shape)):
            if shape[i] and (i + 1 == len(shape) or shape[i] > shape[i + 1]):
                shape[i] -= 1
                total += count(shape)
                shape[i] += 1
        return total

    for lam in partitions(n):
        assert hook_length_dimension(lam) == count(lam)


@settings(max_examples=100, deadline=None)
@given(any_partition(), any_partition())
def test_dominance_is_a_partial_order(a, b):
    assert dominance(a, a)
    if dominance(a, b) and dominance(b, a):
        assert a == b
    assert dominance(a, b) == dominance(b.conjugate(), a.conjugate()) or a.n != b.n


@settings(max_examples=100, deadline=None)
@given(regular_partition())
def test_conjugate_is_an_involution(lam):
    assert lam.conjugate().conjugate() == lam
    assert lam.conjugate().n == lam.n
