"""Modules over GF(4) carried as GF(2)-modules with a complex structure.

A GF(2)-irreducible module ``X`` with ``End(X) = GF(4)`` splits over the
algebraic closure into two conjugate constituents.  Rather than implement
GF(4) arithmetic we keep ``X`` together with an endomorphism ``J`` satisfying
``J^2 + J + 1 = 0``; the pairs ``(X, J)`` and ``(X, J + 1)`` stand for the two
constituents.  Tensor products over GF(4) are kernels of ``J (x) 1 + 1 (x) J``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from ..errors import ShapeMismatch
from . import _kernels as K
from .bitmatrix import BitMatrix, inverse, left_nullspace, rref
from .module import (
    Rep,
    SubmoduleBasis,
    endo_dim,
    endomorphism_basis,
    irreducible_submodule,
    meataxe,
    submodule_rep,
    tensor,
)


def find_j(endos: list[BitMatrix]) -> BitMatrix | None:
    """An element of the span of ``endos`` with ``J^2 + J + 1 = 0``."""
    if not endos:
        return None
    d = endos[0].rows
    one = BitMatrix.identity(d)
    k = len(endos)
    for mask in range(1, 1 << k):
        j = BitMatrix.zeros(d, d)
        for b in range(k):
            if mask >> b & 1:
                j = j + endos[b]
        if (j @ j + j + one).is_zero():
            return j
    return None


@dataclass(eq=False)
class KRep:
    """A GF(2) representation, optionally with a GF(4)-structure ``j``."""

    rep: Rep
    j: BitMatrix | None = None

    @property
    def kdim(self) -> int:
        return self.rep.degree // 2 if self.j is not None else self.rep.degree


def _restrict_endo(m: BitMatrix, sub: SubmoduleBasis) -> BitMatrix:
    img = K.dense_matmul(sub.basis.dense, m.dense)
    return BitMatrix.from_dense(img[:, sub.pivots])


def k_tensor(a: KRep, b: KRep) -> KRep:
    """Tensor product over GF(4) when either factor carries a structure."""
    if a.rep.ngens != b.rep.ngens:
        raise ShapeMismatch("tensor of representations with different generating sets")
    big = tensor(a.rep, b.rep)
    da, db = a.rep.degree, b.rep.degree
    if a.j is None and b.j is None:
        return KRep(big)
    if b.j is None:
        return KRep(big, a.j.kron(BitMatrix.identity(db)))
    if a.j is None:
        return KRep(big, BitMatrix.identity(da).kron(b.j))
    ja = a.j.kron(BitMatrix.identity(db))
    jb = BitMatrix.identity(da).kron(b.j)
    basis, piv = rref(left_nullspace(ja + jb))
    sub = SubmoduleBasis(basis, piv)
    return KRep(submodule_rep(big, sub), _restrict_endo(ja, sub))


@dataclass
class AbsResult:
    """Outcome of an absolute irreducibility test.

    ``form`` is the GF(2)-module used for label matching and ``form_j`` its
    GF(4)-structure, if any.
    """

    irreducible: bool
    form: Rep | None = None
    form_j: BitMatrix | None = None
    certificate: dict = field(default_factory=dict)


def _is_stable(basis: BitMatrix, m: BitMatrix) -> bool:
    r, piv = rref(basis)
    img = K.dense_matmul(r.dense, m.dense)
    img ^= K.dense_matmul(img[:, piv], r.dense)
    return not img.any()


def _span_dim(a: BitMatrix, b: BitMatrix) -> int:
    return rref(a.vstack(b))[0].rows


def abs_irreducible(t: KRep, seed: int = 1) -> AbsResult:
    rep = t.rep
    d = rep.degree
    res = meataxe(rep, seed)
    cert = {"degree": d, "kstructure": t.j is not None, "meataxe": res.certificate}
    if t.j is None:
        if not res.irreducible:
            cert["reason"] = "proper submodule"
            return AbsResult(False, certificate=cert)
        e = endo_dim(rep, seed)
        cert["endo_dim"] = e
        return AbsResult(e == 1, rep if e == 1 else None, None, cert)

    if res.irreducible:
        e = endo_dim(rep, seed)
        cert["endo_dim"] = e
        if e == 2:
            return AbsResult(True, rep, t.j, cert)
        cert["reason"] = "endomorphism field larger than GF(4)"
        return AbsResult(False, certificate=cert)

    u = res.submodule.basis
    uj = u @ t.j
    if _is_stable(u, t.j) or _span_dim(u, uj) < d:
        cert["reason"] = "proper GF(4)-submodule"
        cert["submodule_dim"] = u.rows
        return AbsResult(False, certificate=cert)
    inner, w_rep = irreducible_submodule(submodule_rep(rep, res.submodule), seed)
    w = BitMatrix.from_dense(K.dense_matmul(inner.dense, u.dense))
    if _is_stable(w, t.j) or 2 * w.rows < d:
        cert["reason"] = "proper GF(4)-submodule"
        cert["submodule_dim"] = w.rows
        return AbsResult(False, certificate=cert)
    e = endo_dim(w_rep, seed)
    cert["half_endo_dim"] = e
    cert["half_dim"] = w.rows
    if e == 1:
        return AbsResult(True, w_rep, None, cert)
    cert["reason"] = "half is not absolutely irreducible"
    return AbsResult(False, certificate=cert)


def pull_back(phi: BitMatrix, j: BitMatrix) -> BitMatrix:
    """``phi j phi^-1`` for an isomorphism ``phi`` (rows map source to target)."""
    return phi @ j @ inverse(phi)


def split_structure(rep: Rep, seed: int = 1) -> BitMatrix | None:
    """A GF(4)-structure on an irreducible ``rep`` whose endomorphisms form GF(4)."""
    basis = endomorphism_basis(rep, seed)
    if len(basis) != 2:
        return None
    return find_j(basis)


__all__ = ["KRep", "AbsResult", "abs_irreducible", "find_j", "k_tensor", "pull_back", "split_structure"]
