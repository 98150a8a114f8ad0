"""Linear algebra and module theory over GF(2)."""

from .bitmatrix import BitMatrix, inverse, is_invertible, left_nullspace, nullspace, rank, rref, solve, solve_rows
from .module import (
    Rep,
    chop,
    conjugate_rep,
    dual,
    endo_dim,
    hom_space,
    is_irreducible,
    iso,
    meataxe,
    restrict,
    spin_up,
    tensor,
)

__all__ = [
    "BitMatrix", "Rep", "chop", "conjugate_rep", "dual", "endo_dim", "hom_space", "inverse",
    "is_invertible", "is_irreducible", "iso", "left_nullspace", "meataxe", "nullspace", "rank",
    "restrict", "rref", "solve", "solve_rows", "spin_up", "tensor",
]
