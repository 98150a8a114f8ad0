import math
from collections import Counter

import numpy as np
import pytest

from altspin import crystal
from altspin.errors import BadComposition, BadShape, Not2Regular
from altspin.gf2.bitmatrix import BitMatrix, rank
from altspin.gf2.extension import abs_irreducible, k_tensor
from altspin.gf2.module import chop, endo_dim, is_irreducible, iso
from altspin.modrep import (
    Split,
    all_irreducibles,
    alt_irreducibles,
    alt_words,
    branching_data,
    certify_direct_sum,
    comp_factors,
    gram_matrix,
    head_rep,
    irreducible_head,
    match_factor,
    perm_module,
    restrict_to_previous,
    restriction_endo_dim,
    restriction_to_alt,
    set_cache_dir,
    specht,
    specht_matrix,
    standard_tableaux,
    tabloid_space,
    twist_member,
    young_restrict,
)
from altspin.partitions import Partition, beta, hook_length_dimension, partitions, two_regular


def P(*parts):
    return Partition(parts)


def perm_parity(perm):
    seen, sign = set(), 0
    for start in range(len(perm)):
        if start in seen:
            continue
        k, length = start, 0
        while k not in seen:
            seen.add(k)
            k = perm[k]
            length += 1
        sign += length - 1
    return sign % 2


# --- permutation modules and Specht modules -----------------------------------------------


@pytest.mark.parametrize("lam,degree", [((4, 1), 5), ((3, 2), 10), ((3, 1, 1), 20)])
def test_perm_module_degrees(lam, degree):
    rep = perm_module(5, lam)
    assert rep.degree == degree
    assert rep.ngens == 4


def test_perm_module_rejects_wrong_size():
    with pytest.raises(BadShape):
        perm_module(5, (3, 1))


@pytest.mark.parametrize("n", range(2, 7))
def test_coxeter_relations_hold(n):
    rep = perm_module(n, (n - 2, 1, 1) if n > 2 else (1, 1))
    one = BitMatrix.identity(rep.degree)
    for i, g in enumerate(rep.gens):
        assert g @ g == one
        if i + 1 < rep.ngens:
            h = rep.gens[i + 1]
            assert g @ h @ g == h @ g @ h


def test_tabloid_count_is_multinomial():
    space = tabloid_space(P(3, 2, 2))
    assert space.dim == math.factorial(7) // (6 * 2 * 2)


@pytest.mark.parametrize("n", range(1, 8))
def test_specht_dimensions(n):
    for lam in partitions(n):
        hooks = hook_length_dimension(lam)
        assert len(standard_tableaux(lam)) == hooks
        assert rank(BitMatrix.from_dense(specht_matrix(lam))) == hooks
        assert specht(lam).dim == hooks


def test_specht_small():
    assert specht((3, 2)).dim == 5
    assert rank(gram_matrix((3, 2))) == 4


@pytest.mark.parametrize("n", range(1, 10))
def test_one_row_head_is_trivial(n):
    d = irreducible_head((n,))
    assert d.rep.degree == 1
    assert d.dim == 1


def test_head_rejects_singular():
    with pytest.raises(Not2Regular):
        irreducible_head((2, 2))


# --- irreducible lists -------------------------------------------------------------------------


def test_symmetric_group_five():
    lib = all_irreducibles(5)
    assert {lam: m.rep.degree for lam, m in lib.items()} == {P(5): 1, P(4, 1): 4, P(3, 2): 4}


def test_symmetric_group_nine_dimensions():
    # frozen from the Gram-rank construction
    dims = {repr(lam): m.rep.degree for lam, m in all_irreducibles(9).items()}
    assert dims == {"(9)": 1, "(8,1)": 8, "(7,2)": 26, "(6,3)": 48, "(6,2,1)": 78,
                    "(5,4)": 16, "(5,3,1)": 40, "(4,3,2)": 160}


@pytest.mark.parametrize("n", range(2, 9))
def test_heads_are_absolutely_irreducible_and_distinct(n):
    lib = list(all_irreducibles(n).values())
    for m in lib:
        assert is_irreducible(m.rep)[0]
        assert endo_dim(m.rep) == 1
    for a in lib:
        for b in lib:
            if a is not b and a.rep.degree == b.rep.degree:
                assert iso(a.rep, b.rep) is None


@pytest.mark.parametrize("n", range(2, 10))
def test_basic_spin_dimension(n):
    assert irreducible_head(beta(n)).rep.degree == 2 ** ((n - 1) // 2)


def test_alternating_group_four():
    members = {m.name: m for m in alt_irreducibles(4)}
    assert set(members) == {"(4)", "(3,1)+", "(3,1)-"}
    assert members["(3,1)+"].dim == 1 and members["(3,1)-"].dim == 1


def test_alternating_group_five():
    members = {m.name: m for m in alt_irreducibles(5)}
    assert {k: m.dim for k, m in members.items()} == {"(5)": 1, "(4,1)": 4, "(3,2)+": 2, "(3,2)-": 2}
    assert members["(3,2)+"].split is Split.SPLIT_PLUS


def test_gf2_split_members_are_swapped_by_the_twist():
    data = restriction_to_alt((4, 3))
    assert data.split and data.gf2_factors == 2
    plus, minus = data.members
    assert iso(plus.rep, minus.rep) is None
    assert iso(minus.rep, twist_member(plus, 7).rep) is not None


def test_gf4_split_members_are_swapped_by_the_twist():
    plus, minus = restriction_to_alt((3, 2)).members
    assert plus.j is not None
    twisted = twist_member(plus, 5)
    lib = alt_irreducibles(5)
    assert match_factor(twisted.rep, lib, plus.j).name == "(3,2)-"
    assert match_factor(plus.rep, lib, plus.j).name == "(3,2)+"


def test_alt_generators_are_even():
    for n in range(3, 9):
        for w in alt_words(n):
            assert len(w) % 2 == 0


def test_alt_generators_generate_alternating_group():
    n = 5
    gens = []
    for w in alt_words(n):
        perm = list(range(n))
        for k in w:
            perm[k], perm[k + 1] = perm[k + 1], perm[k]
        gens.append(tuple(perm))
    group = {tuple(range(n))}
    frontier = list(group)
    while frontier:
        nxt = []
        for g in frontier:
            for s in gens:
                h = tuple(g[s[i]] for i in range(n))
                if h not in group:
                    group.add(h)
                    nxt.append(h)
        frontier = nxt
    assert len(group) == 60
    assert all(perm_parity(g) == 0 for g in group)


# --- tensor product at n = 5 --------------------------------------------------------------------


def test_conjugate_halves_tensor_to_the_natural_module():
    lib = alt_irreducibles(5)
    by_name = {m.name: m for m in lib}
    t = k_tensor(by_name["(3,2)+"].krep, by_name["(3,2)-"].krep)
    assert t.kdim == 4
    res = abs_irreducible(t)
    assert res.irreducible
    assert match_factor(res.form, lib, res.form_j).name == "(4,1)"


def test_basic_spin_square_is_reducible():
    by_name = {m.name: m for m in alt_irreducibles(5)}
    plus = by_name["(3,2)+"]
    res = abs_irreducible(k_tensor(plus.krep, plus.krep))
    assert not res.irreducible


# --- composition factors and branching ---------------------------------------------------------


def test_point_module_factors():
    lib = all_irreducibles(5).values()
    m = perm_module(5, (4, 1))
    assert comp_factors(m, lib) == Counter({P(5): 1, P(4, 1): 1})
    cert = certify_direct_sum(m, [irreducible_head((5,)), irreducible_head((4, 1))])
    assert cert["direct_sum"]


def test_pair_module_factors():
    got = comp_factors(perm_module(5, (3, 2)), all_irreducibles(5).values())
    assert got == Counter({P(5): 2, P(4, 1): 1, P(3, 2): 1})


def test_branching_small():
    assert branching_data((2, 1)) == {1: Counter({P(2): 2})}
    assert branching_data((5,)) == {0: Counter({P(4): 1})}
    assert restriction_endo_dim((4, 1)) == 2


@pytest.mark.parametrize("n", range(2, 8))
def test_js_iff_restriction_irreducible(n):
    for lam in two_regular(n):
        res = restrict_to_previous(irreducible_head(lam).rep, n)
        assert crystal.is_js(lam) == is_irreducible(res)[0]


@pytest.mark.parametrize("n", range(2, 8))
def test_restriction_endomorphisms_count_normal_nodes(n):
    for lam in two_regular(n):
        assert restriction_endo_dim(lam) == len(crystal.normal_nodes(lam))


@pytest.mark.parametrize("n", range(2, 8))
def test_good_node_gives_head_of_each_block(n):
    for lam in two_regular(n):
        data = branching_data(lam)
        for i in (0, 1):
            e = crystal.eps(lam, i)
            block = data.get(i, Counter())
            assert bool(block) == bool(e)
            if e:
                assert block[crystal.e_tilde(lam, i)] == e


def test_young_restriction_of_basic_spin():
    d = irreducible_head(beta(5)).rep
    r = young_restrict(d, (3, 2))
    assert r.degree == d.degree
    assert r.group_tag == "Young(3,2)"
    factors = chop(r)
    assert [f.degree for f in factors] == [2, 2]
    base = head_rep((2, 1))
    for f in factors:
        assert f.gens[2] == BitMatrix.identity(2)
        small = type(f)(2, f.gens[:2], "Sym(3)")
        assert iso(base, small) is not None


def test_young_restrict_checks_composition():
    d = irreducible_head((3, 2)).rep
    with pytest.raises(BadComposition):
        young_restrict(d, (3, 1))
    with pytest.raises(BadComposition):
        young_restrict(d, (5, 0))
    triv = irreducible_head((5,)).rep
    assert all(g == BitMatrix.identity(1) for g in young_restrict(triv, (2, 3)).gens)


# --- cache --------------------------------------------------------------------------------------


def test_cache_dir_roundtrip(tmp_path):
    try:
        set_cache_dir(tmp_path)
        first = irreducible_head((4, 2)).rep
        files = list(tmp_path.glob("*.rep"))
        assert [f.name for f in files] == ["S6_4_2.rep"]
        set_cache_dir(tmp_path)
        again = irreducible_head((4, 2)).rep
        assert all(np.array_equal(a.dense, b.dense) for a, b in zip(first.gens, again.gens))
    finally:
        set_cache_dir(None)
