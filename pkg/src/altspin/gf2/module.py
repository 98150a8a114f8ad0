"""Matrix representations over GF(2): spinning, meataxe, homomorphisms.

Vectors are rows and generators act on the right, ``v -> v @ g``.  A word is
a tuple of generator indices evaluated left to right; an algebra element is a
tuple of words summed.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field
from itertools import product

import numpy as np

from ..errors import CertificationError, DegreeZero, NotIrreducible, ShapeMismatch
from . import _kernels as K
from .bitmatrix import BitMatrix, inverse, left_nullspace, nullspace, rref

Word = tuple[int, ...]
Element = tuple[Word, ...]

MAX_NULLITY = 3
DEFAULT_BUDGET = 200


@dataclass(frozen=True, eq=False)
class Rep:
    degree: int
    gens: tuple[BitMatrix, ...]
    group_tag: str = ""
    label: str | None = None

    def __post_init__(self):
        for g in self.gens:
            if g.shape != (self.degree, self.degree):
                raise ShapeMismatch(f"generator {g.shape} for degree {self.degree}")

    @property
    def ngens(self) -> int:
        return len(self.gens)

    def word(self, w: Word) -> BitMatrix:
        out = BitMatrix.identity(self.degree)
        for i in w:
            out = out @ self.gens[i]
        return out

    def evaluate(self, element: Element) -> BitMatrix:
        out = BitMatrix.zeros(self.degree, self.degree)
        for w in element:
            out = out + self.word(w)
        return out

    def transpose(self) -> Rep:
        return Rep(self.degree, tuple(g.T for g in self.gens), self.group_tag, self.label)

    def with_label(self, label: str | None) -> Rep:
        return Rep(self.degree, self.gens, self.group_tag, label)

    def validate(self) -> None:
        for g in self.gens:
            inverse(g)

    def digest(self) -> str:
        h = hashlib.sha256(f"{self.degree}|{self.group_tag}".encode())
        for g in self.gens:
            h.update(g.payload.tobytes())
        return h.hexdigest()[:16]


def _dense_gens(rep: Rep) -> list[np.ndarray]:
    return [g.dense for g in rep.gens]


# --- spinning -------------------------------------------------------------------


@dataclass(frozen=True)
class SubmoduleBasis:
    """Row-reduced basis of a generator-closed subspace."""

    basis: BitMatrix
    pivots: np.ndarray

    @property
    def dim(self) -> int:
        return self.basis.rows


def _rref_dense(rows: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    words = K.pack(rows)
    rnk, piv = K.rref_inplace(words, rows.shape[1])
    return K.unpack(words[:rnk], rows.shape[1]), piv


def spin_up(vectors: BitMatrix, rep: Rep, stop_at_full: bool = True) -> SubmoduleBasis:
    """Smallest generator-closed subspace containing the given rows."""
    if vectors.cols != rep.degree:
        raise ShapeMismatch(f"vectors of length {vectors.cols} for degree {rep.degree}")
    d = rep.degree
    gens = _dense_gens(rep)
    basis, piv = _rref_dense(vectors.dense)
    frontier = basis
    while frontier.shape[0] and gens and not (stop_at_full and basis.shape[0] == d):
        imgs = np.vstack([K.dense_matmul(frontier, g) for g in gens])
        if len(piv):
            imgs ^= K.dense_matmul(imgs[:, piv], basis)
        new, new_piv = _rref_dense(imgs)
        if new.shape[0] == 0:
            break
        basis ^= K.dense_matmul(basis[:, new_piv], new)
        basis = np.vstack([basis, new])
        piv = np.concatenate([piv, new_piv])
        frontier = new
    order = np.argsort(piv, kind="stable")
    return SubmoduleBasis(BitMatrix.from_dense(basis[order]), piv[order])


def submodule_rep(rep: Rep, sub: SubmoduleBasis) -> Rep:
    u = sub.basis
    gens = tuple(BitMatrix.from_dense(K.dense_matmul(u.dense, g.dense)[:, sub.pivots]) for g in rep.gens)
    return Rep(sub.dim, gens, rep.group_tag)


def quotient_rep(rep: Rep, sub: SubmoduleBasis) -> Rep:
    d = rep.degree
    free = np.setdiff1d(np.arange(d), sub.pivots)
    u = sub.basis.dense
    gens = []
    for g in rep.gens:
        rows = g.dense[free].copy()
        if sub.dim:
            rows ^= K.dense_matmul(rows[:, sub.pivots], u)
        gens.append(BitMatrix.from_dense(rows[:, free]))
    return Rep(len(free), tuple(gens), rep.group_tag)


def is_submodule(rep: Rep, basis: BitMatrix) -> bool:
    r, piv = rref(basis)
    for g in rep.gens:
        img = K.dense_matmul(r.dense, g.dense)
        if len(piv):
            img ^= K.dense_matmul(img[:, piv], r.dense)
        if img.any():
            return False
    return True


# --- random algebra elements ---------------------------------------------------------


def element_stream(ngens: int, seed: int):
    """Deterministic stream of algebra elements (sums of short words)."""
    rng = np.random.Generator(np.random.PCG64(seed))
    while True:
        nwords_ = int(rng.integers(2, 5))
        words = []
        for _ in range(nwords_):
            length = int(rng.integers(1, 6))
            words.append(tuple(int(x) for x in rng.integers(0, max(ngens, 1), size=length)))
        yield tuple(words) if ngens else ((),)


def _nonzero_combinations(basis: np.ndarray):
    k = basis.shape[0]
    for coeffs in product((0, 1), repeat=k):
        if any(coeffs):
            yield K.dense_matmul(np.array([coeffs], dtype=np.uint8), basis)


@dataclass
class MeataxeResult:
    irreducible: bool
    submodule: SubmoduleBasis | None
    certificate: dict = field(default_factory=dict)

    def digest(self) -> str:
        blob = json.dumps(self.certificate, sort_keys=True).encode()
        return hashlib.sha256(blob).hexdigest()[:16]


def meataxe(rep: Rep, seed: int = 1, budget: int = DEFAULT_BUDGET) -> MeataxeResult:
    """Find a proper submodule or certify irreducibility (Norton's criterion).

    For an element ``theta`` with small nullity every nonzero vector of its
    kernel and of the kernel of its transpose is spun up; if all of them
    generate the whole space the module is irreducible.  Otherwise the spun
    subspace (or the annihilator of the dual one) is a proper submodule.
    """
    d = rep.degree
    if d == 0:
        raise DegreeZero("zero-dimensional representation")
    if d == 1:
        return MeataxeResult(True, None, {"reason": "degree 1"})
    if rep.ngens == 0:
        e0 = BitMatrix.from_dense(np.eye(d, dtype=np.uint8)[:1])
        return MeataxeResult(False, spin_up(e0, rep), {"reason": "no generators"})
    rep_t = rep.transpose()
    stream = element_stream(rep.ngens, seed)
    for attempt in range(budget):
        element = next(stream)
        theta = rep.evaluate(element)
        for shift in (0, 1):
            th = theta + BitMatrix.identity(d) if shift else theta
            null = left_nullspace(th)
            k = null.rows
            if k == 0:
                continue
            cert = {"attempt": attempt, "element": [list(w) for w in element], "shift": shift,
                    "nullity": k, "seed": seed}
            if k > MAX_NULLITY:
                for row in null.dense[:8]:
                    sub = spin_up(BitMatrix.from_dense(row), rep)
                    if sub.dim < d:
                        cert["witness"] = "kernel vector"
                        cert["submodule_dim"] = sub.dim
                        return MeataxeResult(False, sub, cert)
                continue
            for v in _nonzero_combinations(null.dense):
                sub = spin_up(BitMatrix.from_dense(v), rep)
                if sub.dim < d:
                    cert["witness"] = "kernel vector"
                    cert["submodule_dim"] = sub.dim
                    return MeataxeResult(False, sub, cert)
            null_t = nullspace(th)
            for w in _nonzero_combinations(null_t.dense):
                dual_sub = spin_up(BitMatrix.from_dense(w), rep_t)
                if dual_sub.dim < d:
                    ann = nullspace(dual_sub.basis)
                    r, piv = rref(ann)
                    cert["witness"] = "dual kernel vector"
                    cert["submodule_dim"] = r.rows
                    return MeataxeResult(False, SubmoduleBasis(r, piv), cert)
            cert["spins"] = 2 * (2**k - 1)
            return MeataxeResult(True, None, cert)
    raise CertificationError(f"no certificate within {budget} elements (degree {d})")


def is_irreducible(rep: Rep, seed: int = 1, budget: int = DEFAULT_BUDGET) -> tuple[bool, dict]:
    res = meataxe(rep, seed, budget)
    return res.irreducible, res.certificate


def chop(rep: Rep, seed: int = 1, budget: int = DEFAULT_BUDGET) -> list[Rep]:
    """Composition factors over GF(2), bottom of the series first."""
    if rep.degree == 0:
        raise DegreeZero("zero-dimensional representation")
    out: list[Rep] = []
    stack = [rep]
    while stack:
        cur = stack.pop()
        res = meataxe(cur, seed, budget)
        if res.irreducible:
            out.append(cur)
            continue
        # process the submodule first so factors come out bottom-up
        stack.append(quotient_rep(cur, res.submodule))
        stack.append(submodule_rep(cur, res.submodule))
    return out


def irreducible_submodule(rep: Rep, seed: int = 1, budget: int = DEFAULT_BUDGET) -> tuple[BitMatrix, Rep]:
    """An irreducible submodule: basis rows in the ambient space and its action."""
    basis = BitMatrix.identity(rep.degree)
    cur = rep
    while True:
        res = meataxe(cur, seed, budget)
        if res.irreducible:
            return basis, cur
        sub = res.submodule
        basis = BitMatrix.from_dense(K.dense_matmul(sub.basis.dense, basis.dense))
        cur = submodule_rep(cur, sub)


# --- homomorphisms --------------------------------------------------------------------


def _generators_of(rep: Rep, seed: int) -> np.ndarray:
    """Rows generating ``rep`` as a module, found deterministically."""
    d = rep.degree
    rng = np.random.Generator(np.random.PCG64(seed))
    chosen = []
    span = SubmoduleBasis(BitMatrix.zeros(0, d), np.zeros(0, dtype=np.int64))
    while span.dim < d:
        v = rng.integers(0, 2, size=(1, d), dtype=np.uint8)
        trial = spin_up(BitMatrix.from_dense(np.vstack(chosen + [v])), rep)
        if trial.dim > span.dim:
            chosen.append(v)
            span = trial
    return np.vstack(chosen)


def hom_space(src: Rep, dst: Rep, seeds: np.ndarray | None = None,
              candidates: np.ndarray | None = None, seed: int = 1) -> list[BitMatrix]:
    """Basis of ``Hom(src, dst)`` as ``src.degree x dst.degree`` matrices.

    ``seeds`` are rows generating ``src``; ``candidates`` has shape
    ``(c, len(seeds), dst.degree)`` and lists the allowed images of the seeds
    (default: everything).  Images are propagated along the spinning of the
    seeds and every linear relation met on the way becomes a constraint.
    """
    if src.ngens != dst.ngens:
        raise ShapeMismatch("representations of different generating sets")
    dv, dw = src.degree, dst.degree
    if seeds is None:
        seeds = _generators_of(src, seed)
    seeds = np.asarray(seeds, dtype=np.uint8)
    r = seeds.shape[0]
    if candidates is None:
        c = r * dw
        candidates = np.zeros((c, r, dw), dtype=np.uint8)
        for k in range(r):
            candidates[k * dw:(k + 1) * dw, k, :] = np.eye(dw, dtype=np.uint8)
    candidates = np.asarray(candidates, dtype=np.uint8)
    c = candidates.shape[0]
    if c == 0:
        return []
    gv, gw = _dense_gens(src), _dense_gens(dst)

    basis = np.zeros((0, dv), dtype=np.uint8)
    shadow = np.zeros((0, c * dw), dtype=np.uint8)
    piv = np.zeros(0, dtype=np.int64)
    constraints = np.zeros((0, c), dtype=np.uint8)

    def absorb(main, carry):
        nonlocal basis, shadow, piv, constraints
        if len(piv):
            coeff = main[:, piv]
            main = main ^ K.dense_matmul(coeff, basis)
            carry = carry ^ K.dense_matmul(coeff, shadow)
        words = K.pack(np.hstack([main, carry]))
        rnk, new_piv = K.rref_inplace(words, dv)
        full = K.unpack(words, dv + c * dw)
        new, new_shadow = full[:rnk, :dv], full[:rnk, dv:]
        dead = full[rnk:, dv:]
        if dead.any():
            rows = dead[dead.any(axis=1)].reshape(-1, c, dw).transpose(0, 2, 1).reshape(-1, c)
            constraints, _ = _rref_dense(np.vstack([constraints, rows]))
        if rnk:
            coeff = basis[:, new_piv]
            basis = basis ^ K.dense_matmul(coeff, new)
            shadow = shadow ^ K.dense_matmul(coeff, new_shadow)
            basis = np.vstack([basis, new])
            shadow = np.vstack([shadow, new_shadow])
            piv = np.concatenate([piv, new_piv])
        return new, new_shadow

    front, front_shadow = absorb(seeds.copy(), candidates.transpose(1, 0, 2).reshape(r, c * dw).copy())
    while front.shape[0] and gv:
        mains, carries = [], []
        m = front.shape[0]
        for a, b in zip(gv, gw):
            mains.append(K.dense_matmul(front, a))
            carries.append(K.dense_matmul(front_shadow.reshape(m * c, dw), b).reshape(m, c * dw))
        front, front_shadow = absorb(np.vstack(mains), np.vstack(carries))
    if basis.shape[0] != dv:
        raise ValueError("seeds do not generate the source module")
    if constraints.shape[0]:
        sols = nullspace(BitMatrix.from_dense(constraints)).dense
    else:
        sols = np.eye(c, dtype=np.uint8)
    basis_bm = BitMatrix.from_dense(basis)
    out = []
    shadow3 = shadow.reshape(dv, c, dw)
    for u in sols:
        images = np.zeros((dv, dw), dtype=np.uint8)
        for m_ in np.flatnonzero(u):
            images ^= shadow3[:, m_, :]
        out.append(_solve_left(basis_bm, BitMatrix.from_dense(images)))
    return out


def _solve_left(basis: BitMatrix, images: BitMatrix) -> BitMatrix:
    """``X`` with ``basis @ X == images`` for invertible ``basis``."""
    return BitMatrix.from_dense(K.dense_matmul(inverse(basis).dense, images.dense))


def is_homomorphism(src: Rep, dst: Rep, phi: BitMatrix) -> bool:
    return all((a @ phi) == (phi @ b) for a, b in zip(src.gens, dst.gens))


@dataclass
class IrreducibleCertificate:
    """An irreducible module with a kernel vector of a small-nullity element."""

    rep: Rep
    element: Element
    shift: int
    kernel: np.ndarray
    meataxe: dict

    def theta(self, other: Rep) -> BitMatrix:
        th = other.evaluate(self.element)
        return th + BitMatrix.identity(other.degree) if self.shift else th


def certify_irreducible(rep: Rep, seed: int = 1, budget: int = DEFAULT_BUDGET) -> IrreducibleCertificate | None:
    res = meataxe(rep, seed, budget)
    if not res.irreducible:
        return None
    if rep.degree == 1 or rep.ngens == 0:
        return IrreducibleCertificate(rep, ((),), 1, np.ones((1, 1), dtype=np.uint8), res.certificate)
    element = tuple(tuple(w) for w in res.certificate["element"])
    shift = res.certificate["shift"]
    cert = IrreducibleCertificate(rep, element, shift, np.zeros((0, rep.degree), dtype=np.uint8), res.certificate)
    cert.kernel = left_nullspace(cert.theta(rep)).dense
    return cert


def homs_from_irreducible(cert: IrreducibleCertificate, dst: Rep) -> list[BitMatrix]:
    """``Hom(V, dst)`` for irreducible ``V``: images of the kernel vector stay in the kernel."""
    if cert.rep.degree == 1 and cert.rep.ngens == 0:
        return hom_space(cert.rep, dst)
    ker = left_nullspace(cert.theta(dst)).dense
    if ker.shape[0] == 0:
        return []
    v = cert.kernel[:1]
    return hom_space(cert.rep, dst, seeds=v, candidates=ker.reshape(ker.shape[0], 1, dst.degree))


def endo_dim(rep: Rep, seed: int = 1) -> int:
    cert = certify_irreducible(rep, seed)
    if cert is not None:
        return len(homs_from_irreducible(cert, rep))
    return len(hom_space(rep, rep, seed=seed))


def endomorphism_basis(rep: Rep, seed: int = 1) -> list[BitMatrix]:
    cert = certify_irreducible(rep, seed)
    if cert is not None:
        return homs_from_irreducible(cert, rep)
    return hom_space(rep, rep, seed=seed)


def iso(a: Rep, b: Rep, seed: int = 1, cert: IrreducibleCertificate | None = None) -> BitMatrix | None:
    """An isomorphism ``a -> b`` when ``a`` is irreducible, else ``None``."""
    if a.degree != b.degree or a.ngens != b.ngens:
        return None
    if cert is None:
        cert = certify_irreducible(a, seed)
        if cert is None:
            raise NotIrreducible("iso requires an irreducible first argument")
    for phi in homs_from_irreducible(cert, b):
        if not phi.is_zero():
            return phi
    return None


# --- constructions -------------------------------------------------------------------


def tensor(a: Rep, b: Rep) -> Rep:
    if a.ngens != b.ngens:
        raise ShapeMismatch("tensor of representations with different generating sets")
    return Rep(a.degree * b.degree, tuple(x.kron(y) for x, y in zip(a.gens, b.gens)), a.group_tag)


def dual(rep: Rep) -> Rep:
    return Rep(rep.degree, tuple(inverse(g).T for g in rep.gens), rep.group_tag, rep.label)


def restrict(rep: Rep, words: list[Word], group_tag: str = "") -> Rep:
    return Rep(rep.degree, tuple(rep.word(w) for w in words), group_tag or rep.group_tag, rep.label)


def conjugate_rep(rep: Rep, twist: list[tuple[tuple[int, int], ...]]) -> Rep:
    """Twist by an automorphism given as signed words ``((gen, +-1), ...)`` per generator."""
    invs: dict[int, BitMatrix] = {}
    gens = []
    for w in twist:
        m = BitMatrix.identity(rep.degree)
        for i, e in w:
            if e > 0:
                m = m @ rep.gens[i]
            else:
                if i not in invs:
                    invs[i] = inverse(rep.gens[i])
                m = m @ invs[i]
        gens.append(m)
    return Rep(rep.degree, tuple(gens), rep.group_tag, rep.label)


def direct_sum(a: Rep, b: Rep) -> Rep:
    gens = []
    for x, y in zip(a.gens, b.gens):
        dense = np.zeros((a.degree + b.degree,) * 2, dtype=np.uint8)
        dense[: a.degree, : a.degree] = x.dense
        dense[a.degree :, a.degree :] = y.dense
        gens.append(BitMatrix.from_dense(dense))
    return Rep(a.degree + b.degree, tuple(gens), a.group_tag)


def change_basis(rep: Rep, basis: BitMatrix) -> Rep:
    """Action in the basis given by the rows of ``basis`` (invertible)."""
    inv = inverse(basis)
    return Rep(rep.degree, tuple(basis @ g @ inv for g in rep.gens), rep.group_tag, rep.label)
