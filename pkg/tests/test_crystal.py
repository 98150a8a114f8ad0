import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from altspin.crystal import (
    ADDABLE,
    REMOVABLE,
    Node,
    add_node,
    addable_nodes,
    e_tilde,
    eps,
    f_tilde,
    is_js,
    js_tensor_label,
    normal_nodes,
    phi,
    remove_node,
    removable_nodes,
    signature,
)
from altspin.errors import NotPRegular
from altspin.partitions import Partition, partitions, two_regular


def P(*parts):
    return Partition(parts)


@st.composite
def regular(draw, max_n=14):
    n = draw(st.integers(1, max_n))
    return draw(st.sampled_from(two_regular(n)))


def test_nodes_of_a_hook():
    lam = P(3, 1)
    assert removable_nodes(lam) == [Node(1, 3), Node(2, 1)]
    assert addable_nodes(lam) == [Node(1, 4), Node(2, 2), Node(3, 1)]
    assert Node(2, 1).residue() == 1
    assert Node(3, 5).residue(3) == 2
    assert add_node(lam, Node(3, 1)) == P(3, 1, 1)
    assert remove_node(lam, Node(1, 3)) == P(2, 1)


def test_signature_of_two_one():
    sig = signature(P(2, 1), 1)
    assert set(sig.normal) == {Node(1, 2), Node(2, 1)}
    assert sig.eps == 2
    assert sig.good == Node(2, 1)


def test_addable_above_removable_cancels():
    sig = signature(P(3, 1), 1)
    assert [kind for _, kind in sig.nodes] == [ADDABLE, REMOVABLE]
    assert sig.eps == 0 and sig.phi == 0


def test_crystal_moves_on_small_shapes():
    assert e_tilde(P(2, 1), 1) == P(2)
    assert f_tilde(P(2, 1), 0) == P(3, 1)
    assert e_tilde(P(2, 1), 1, r=3) is None
    assert f_tilde(P(2, 1), 1) is None
    assert e_tilde(P(2, 1), 1, r=2) == P(1)


def test_moves_reject_singular_shapes():
    with pytest.raises(NotPRegular):
        e_tilde(P(1, 1), 0)
    with pytest.raises(NotPRegular):
        is_js(P(2, 2))


@pytest.mark.parametrize("n", range(1, 10))
def test_one_row_is_js(n):
    assert is_js(P(n))
    assert len(normal_nodes(P(n))) == 1


def test_js_examples():
    assert not is_js(P(3, 2))
    assert not is_js(P(2, 1))
    # both removable nodes of (4,1) have residue 1 and nothing cancels them
    assert eps(P(4, 1), 1) == 2
    assert not is_js(P(4, 1))
    assert is_js(P(4, 3, 1)) == (sum(eps(P(4, 3, 1), i) for i in (0, 1)) == 1)


def test_js_tensor_label():
    # top removable (1,5) out, second-lowest addable (2,3) in
    assert js_tensor_label(P(5, 2)) == P(4, 3)
    assert js_tensor_label(P(6, 3, 1)) == P(5, 3, 2)


@pytest.mark.parametrize("n", range(0, 13))
def test_addable_minus_removable_is_one(n):
    for lam in partitions(n):
        assert len(addable_nodes(lam)) - len(removable_nodes(lam)) == 1


@settings(max_examples=300, deadline=None)
@given(regular(), st.integers(0, 1))
def test_signature_shape(lam, i):
    sig = signature(lam, i)
    kinds = [kind for _, kind in sig.reduced]
    # surviving removables sit above surviving addables
    assert kinds == sorted(kinds, key=lambda k: k == ADDABLE)
    n_rem = sum(1 for _, k in sig.nodes if k == REMOVABLE)
    n_add = sum(1 for _, k in sig.nodes if k == ADDABLE)
    assert n_rem - sig.eps == n_add - sig.phi
    rows = [nd.row for nd, _ in sig.nodes]
    assert rows == sorted(rows)
    assert all(nd.residue() == i for nd, _ in sig.nodes)


@settings(max_examples=300, deadline=None)
@given(regular(), st.integers(0, 1))
def test_moves_are_inverse(lam, i):
    if eps(lam, i):
        mu = e_tilde(lam, i)
        assert mu.is_p_regular(2)
        assert f_tilde(mu, i) == lam
        assert eps(mu, i) == eps(lam, i) - 1
        assert phi(mu, i) == phi(lam, i) + 1
    if phi(lam, i):
        nu = f_tilde(lam, i)
        assert nu.is_p_regular(2)
        assert e_tilde(nu, i) == lam


@settings(max_examples=200, deadline=None)
@given(regular(), st.integers(0, 1))
def test_repeated_moves_stop_at_eps(lam, i):
    e = eps(lam, i)
    assert e_tilde(lam, i, r=e) is not None
    assert e_tilde(lam, i, r=e + 1) is None
    assert f_tilde(lam, i, r=phi(lam, i) + 1) is None


@settings(max_examples=200, deadline=None)
@given(regular())
def test_every_regular_shape_has_a_normal_node(lam):
    assert normal_nodes(lam)
