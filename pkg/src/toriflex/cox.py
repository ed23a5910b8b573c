"""Total-coordinate lifts: the ray-pairing embedding, class group, descent.

The rays of a pointed full-dimensional cone give an injective map from the
weight lattice into Z^k, one coordinate per ray.  Its cokernel presents the
divisor class group, and orthant roots upstairs descend to roots downstairs
exactly when they are in the image.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

from .exactla import (
    SmithDecomposition,
    Vector,
    dot,
    kernel_lattice_basis,
    smith_normal_form,
    solve_integer,
)
from .lattice import Cone, lattice_points_in, require_pointed_full
from .roots import RootDatum, is_demazure_root

__all__ = [
    "CoxPresentation",
    "ClassGroup",
    "cox_presentation",
    "total_coordinates",
    "class_group",
    "degree_is_zero",
    "descend_root",
    "invariant_monomials",
]


@dataclass(frozen=True)
class CoxPresentation:
    cone: Cone
    phi: tuple[Vector, ...]  # k x n, one row per ray
    snf: SmithDecomposition

    @property
    def num_rays(self) -> int:
        return len(self.phi)

    @property
    def rank(self) -> int:
        return self.cone.ambient_rank


@dataclass(frozen=True)
class ClassGroup:
    free_rank: int
    torsion: tuple[int, ...]

    @property
    def is_trivial(self) -> bool:
        return self.free_rank == 0 and not self.torsion


def cox_presentation(cone: Cone) -> CoxPresentation:
    require_pointed_full(cone, "cox_presentation")
    phi = tuple(cone.rays)
    snf = smith_normal_form([list(r) for r in phi])
    if any(d == 0 for d in snf.diagonal):
        raise AssertionError("full-dimensional cone must give an injective embedding")
    return CoxPresentation(cone=cone, phi=phi, snf=snf)


def total_coordinates(cp: CoxPresentation, m: Sequence[int]) -> Vector:
    """All ray pairings of a weight vector, in canonical ray order."""
    if len(m) != cp.rank:
        raise ValueError("rank mismatch")
    return tuple(dot(row, m) for row in cp.phi)


def class_group(cp: CoxPresentation) -> ClassGroup:
    """Cokernel of the embedding: free rank (rays minus rank) plus the
    invariant factors exceeding one."""
    free = cp.num_rays - cp.rank
    torsion = tuple(d for d in cp.snf.diagonal if d > 1)
    return ClassGroup(free_rank=free, torsion=torsion)


def degree_is_zero(cp: CoxPresentation, v: Sequence[int]) -> Optional[Vector]:
    """The unique preimage of v under the embedding, or None.

    Existence of the preimage is exactly the statement that the monomial with
    exponent v has trivial divisor class.
    """
    if len(v) != cp.num_rays:
        raise ValueError(f"expected a vector of length {cp.num_rays}")
    return solve_integer([list(r) for r in cp.phi], v)


def descend_root(cp: CoxPresentation, e_hat: Sequence[int]) -> Optional[RootDatum]:
    """Descend an orthant root from total coordinates, when possible.

    Requires e_hat to be a Demazure root of the positive orthant upstairs,
    i.e. exactly one coordinate -1 and the rest nonnegative.  Returns the
    downstairs root when e_hat is in the image of the embedding, else None.
    """
    e_hat = tuple(int(x) for x in e_hat)
    negatives = [x for x in e_hat if x < 0]
    if negatives != [-1]:
        raise ValueError(f"{e_hat} is not an orthant Demazure root")
    m = degree_is_zero(cp, e_hat)
    if m is None:
        return None
    idx = is_demazure_root(cp.cone, m)
    if idx is None:
        return None
    return RootDatum(ray_index=idx, e=m)


def invariant_monomials(cp: CoxPresentation, bound: int) -> list[tuple[Vector, Vector]]:
    """Pairs (m, total_coordinates(m)) for weight-cone points in a box.

    These exponents are exactly the quasitorus-invariant monomials upstairs,
    i.e. the coordinate functions of the quotient.
    """
    cons = [(r, ">=", 0) for r in cp.cone.rays]
    return [(m, total_coordinates(cp, m)) for m in lattice_points_in(cons, bound)]
