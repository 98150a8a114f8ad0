"""Residue combinatorics: i-signatures, normal and conormal nodes, crystal moves.

Signature convention: the addable and removable i-nodes are read from the top
row down, and every addable node immediately followed by a removable node is
cancelled until no such pair remains.  Surviving removable nodes are normal
(the lowest one is good), surviving addable nodes are conormal (the highest
one is cogood).  The branching suites in :mod:`altspin.verify` check this
convention against restriction multiplicities computed by the meataxe.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import NotPRegular
from .partitions import Partition

ADDABLE = "A"
REMOVABLE = "R"


@dataclass(frozen=True, order=True)
class Node:
    row: int
    col: int

    def residue(self, p: int = 2) -> int:
        return (self.col - self.row) % p


def removable_nodes(lam: Partition) -> list[Node]:
    lam = Partition(lam)
    return [Node(r, lam[r - 1]) for r in range(1, len(lam) + 1) if lam.part(r + 1) < lam[r - 1]]


def addable_nodes(lam: Partition) -> list[Node]:
    lam = Partition(lam)
    out = []
    for r in range(1, len(lam) + 2):
        c = lam.part(r) + 1
        if r == 1 or lam.part(r - 1) >= c:
            out.append(Node(r, c))
    return out


def remove_node(lam: Partition, node: Node) -> Partition:
    parts = list(lam)
    parts[node.row - 1] -= 1
    return Partition(parts)


def add_node(lam: Partition, node: Node) -> Partition:
    parts = list(lam) + [0]
    parts[node.row - 1] += 1
    return Partition(parts)


@dataclass(frozen=True)
class SignatureData:
    residue: int
    nodes: tuple[tuple[Node, str], ...]
    reduced: tuple[tuple[Node, str], ...]

    @property
    def normal(self) -> tuple[Node, ...]:
        return tuple(nd for nd, kind in self.reduced if kind == REMOVABLE)

    @property
    def conormal(self) -> tuple[Node, ...]:
        return tuple(nd for nd, kind in self.reduced if kind == ADDABLE)

    @property
    def eps(self) -> int:
        return len(self.normal)

    @property
    def phi(self) -> int:
        return len(self.conormal)

    @property
    def good(self) -> Node | None:
        return self.normal[-1] if self.normal else None

    @property
    def cogood(self) -> Node | None:
        return self.conormal[0] if self.conormal else None


def signature(lam: Partition, i: int, p: int = 2) -> SignatureData:
    lam = Partition(lam)
    i %= p
    tagged = [(nd, ADDABLE) for nd in addable_nodes(lam) if nd.residue(p) == i]
    tagged += [(nd, REMOVABLE) for nd in removable_nodes(lam) if nd.residue(p) == i]
    tagged.sort(key=lambda t: t[0].row)
    stack: list[tuple[Node, str]] = []
    for item in tagged:
        if item[1] == REMOVABLE and stack and stack[-1][1] == ADDABLE:
            stack.pop()
        else:
            stack.append(item)
    return SignatureData(i, tuple(tagged), tuple(stack))


def _check_regular(lam: Partition, p: int) -> Partition:
    lam = Partition(lam)
    if not lam.is_p_regular(p):
        raise NotPRegular(f"{lam} is not {p}-regular")
    return lam


def eps(lam: Partition, i: int, p: int = 2) -> int:
    return signature(lam, i, p).eps


def phi(lam: Partition, i: int, p: int = 2) -> int:
    return signature(lam, i, p).phi


def normal_nodes(lam: Partition, p: int = 2) -> list[Node]:
    out = []
    for i in range(p):
        out += signature(lam, i, p).normal
    return sorted(out)


def e_tilde(lam: Partition, i: int, r: int = 1, p: int = 2) -> Partition | None:
    """Remove the i-good node ``r`` times; ``None`` when ``r > eps_i``."""
    lam = _check_regular(lam, p)
    for _ in range(r):
        good = signature(lam, i, p).good
        if good is None:
            return None
        lam = remove_node(lam, good)
    return lam


def f_tilde(lam: Partition, i: int, r: int = 1, p: int = 2) -> Partition | None:
    """Add the i-cogood node ``r`` times; ``None`` when ``r > phi_i``."""
    lam = _check_regular(lam, p)
    for _ in range(r):
        cogood = signature(lam, i, p).cogood
        if cogood is None:
            return None
        lam = add_node(lam, cogood)
    return lam


def is_js(lam: Partition, p: int = 2) -> bool:
    lam = _check_regular(lam, p)
    return sum(eps(lam, i, p) for i in range(p)) == 1


def top_removable(lam: Partition) -> Node:
    return removable_nodes(lam)[0]


def second_bottom_addable(lam: Partition) -> Node:
    return addable_nodes(lam)[-2]


def js_tensor_label(lam: Partition) -> Partition:
    """``(lam minus top removable) plus second-bottom addable node``."""
    lam = Partition(lam)
    return add_node(remove_node(lam, top_removable(lam)), second_bottom_addable(lam))
