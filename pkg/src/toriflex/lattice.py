"""Lattice vectors, rational polyhedral cones, duality, faces, indices.

Cones are stored by generators (V-representation) with primitive rays in a
canonical lex-sorted order.  All dual descriptions are computed by bounded
enumeration of candidate extreme directions, which is exact and entirely
sufficient at desk scale (at most a dozen rays in rank at most six).
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

from .errors import ConeShapeError
from .exactla import (
    Vector,
    content,
    dot,
    is_zero_vector,
    kernel_lattice_basis,
    mat_vec,
    primitive_part,
    rank,
    row_lattice_basis,
    smith_normal_form,
    solve_rational,
    transpose,
    vec_add,
)

__all__ = [
    "Cone",
    "ConeProperties",
    "cone_properties",
    "dual_cone",
    "saturate",
    "two_faces",
    "is_smooth_in_codim2",
    "lattice_index",
    "lattice_points_in",
    "pairings",
    "in_dual_cone",
    "positive_orthant",
    "quadrant",
    "singular_threefold",
]


@dataclass(frozen=True)
class Cone:
    """A finitely generated rational cone, given by primitive generators.

    `lattice_tag` records which of the two mutually dual lattices the cone
    lives in ("N" or "M").  Rays are canonicalized on construction: divided
    by their gcd, deduplicated and sorted lexicographically.  Redundant
    (non-extremal) generators are kept; use `saturate` to drop them.
    """

    ambient_rank: int
    rays: tuple[Vector, ...]
    lattice_tag: str = "N"

    @staticmethod
    def from_rays(rays: Iterable[Sequence[int]], ambient_rank: Optional[int] = None,
                  lattice_tag: str = "N") -> "Cone":
        rys = [tuple(int(x) for x in r) for r in rays]
        if ambient_rank is None:
            if not rys:
                raise ValueError("ambient_rank required for a cone with no rays")
            ambient_rank = len(rys[0])
        if ambient_rank < 1:
            raise ValueError("ambient rank must be positive")
        for r in rys:
            if len(r) != ambient_rank:
                raise ValueError(f"ray {r} does not have length {ambient_rank}")
            if is_zero_vector(r):
                raise ValueError("zero vector is not a valid ray")
        if lattice_tag not in ("N", "M"):
            raise ValueError("lattice_tag must be 'N' or 'M'")
        canon = sorted({primitive_part(r) for r in rys})
        return Cone(ambient_rank=ambient_rank, rays=tuple(canon), lattice_tag=lattice_tag)

    def ray(self, index: int) -> Vector:
        """1-based ray accessor."""
        if not 1 <= index <= len(self.rays):
            raise ValueError(f"ray index {index} out of range 1..{len(self.rays)}")
        return self.rays[index - 1]

    def dual_tag(self) -> str:
        return "M" if self.lattice_tag == "N" else "N"


@dataclass(frozen=True)
class ConeProperties:
    pointed: bool
    full_dimensional: bool


def pairings(cone: Cone, m: Sequence[int]) -> tuple:
    """All pairings <ray_i, m> in ray order."""
    return tuple(dot(r, m) for r in cone.rays)


def in_dual_cone(cone: Cone, m: Sequence[int]) -> bool:
    """Does m pair nonnegatively with every ray of the cone?"""
    return all(p >= 0 for p in pairings(cone, m))


# ---------------------------------------------------------------------------
# duality
# ---------------------------------------------------------------------------

def _quotient_maps(lineality: list[Vector], n: int):
    """Return (project, section) for Z^n -> Z^n / <lineality>.

    The lineality basis must be saturated (it always is here, coming from
    kernel_lattice_basis).  The section embeds the quotient back as a direct
    summand, so primitive quotient vectors lift to primitive vectors.
    """
    d = len(lineality)
    if d == 0:
        return (lambda x: tuple(x)), (lambda y: tuple(y))
    snf = smith_normal_form([list(b) for b in lineality])
    if any(x != 1 for x in snf.diagonal):
        raise AssertionError("lineality basis is not saturated")
    # In the coordinates y = x V the lineality is the first d coordinate
    # directions; the projection keeps the tail, the section pads with zeros
    # and maps back through V^{-1}.
    v_cols = transpose(snf.right)
    v_inv_cols = transpose(snf.right_inv)

    def project(x: Sequence[int]) -> Vector:
        coords = tuple(dot(col, x) for col in v_cols)
        return coords[d:]

    def section(y: Sequence[int]) -> Vector:
        padded = [0] * d + list(y)
        return tuple(dot(col, padded) for col in v_inv_cols)

    return project, section


def _dual_generators(rays: Sequence[Vector], n: int) -> list[Vector]:
    """Generators of {x : <x, r> >= 0 for all r}, primitive and lex-sorted.

    Lineality directions appear as +/- pairs; the pointed part contributes
    one primitive generator per extreme ray of the quotient cone.
    """
    rays = [tuple(r) for r in rays if not is_zero_vector(r)]
    if not rays:
        basis = [tuple(1 if j == i else 0 for j in range(n)) for i in range(n)]
        return sorted(basis + [tuple(-x for x in b) for b in basis])

    r = rank(rays)
    lineality = kernel_lattice_basis([list(v) for v in rays], ncols=n)
    d = len(lineality)
    project, section = _quotient_maps(lineality, n)

    kept: set[Vector] = set()
    for subset in itertools.combinations(range(len(rays)), r - 1):
        sub = [list(rays[i]) for i in subset]
        solution_space = kernel_lattice_basis(sub, ncols=n)
        if len(solution_space) != d + 1:
            continue
        direction = None
        for w in solution_space:
            q = project(w)
            if not is_zero_vector(q):
                direction = primitive_part(q)
                break
        if direction is None:
            continue
        for cand in (direction, tuple(-x for x in direction)):
            lift = section(cand)
            prs = [dot(lift, ray) for ray in rays]
            if all(p >= 0 for p in prs):
                kept.add(cand)

    out = {primitive_part(section(c)) for c in kept}
    for b in lineality:
        out.add(tuple(b))
        out.add(tuple(-x for x in b))
    return sorted(out)


def dual_cone(cone: Cone) -> Cone:
    """The dual cone {x : <x, y> >= 0 for all generators y}.

    Output rays are primitive, extremal (modulo lineality) and lex-sorted;
    the result is always saturated.  Accepts any input cone, pointed or not.
    """
    gens = _dual_generators(cone.rays, cone.ambient_rank)
    return Cone(ambient_rank=cone.ambient_rank, rays=tuple(gens),
                lattice_tag=cone.dual_tag())


def saturate(cone: Cone) -> Cone:
    """Canonical minimal generator description of the same cone."""
    dd = dual_cone(dual_cone(cone))
    return Cone(ambient_rank=cone.ambient_rank, rays=dd.rays, lattice_tag=cone.lattice_tag)


def cone_properties(cone: Cone) -> ConeProperties:
    """Pointedness (no line contained) and full-dimensionality."""
    full = bool(cone.rays) and rank(cone.rays) == cone.ambient_rank
    dual = dual_cone(cone)
    pointed = rank(dual.rays) == cone.ambient_rank if dual.rays else cone.ambient_rank == 0
    return ConeProperties(pointed=pointed, full_dimensional=full)


def require_pointed_full(cone: Cone, what: str) -> None:
    props = cone_properties(cone)
    if not (props.pointed and props.full_dimensional):
        raise ConeShapeError(f"{what} requires a pointed full-dimensional cone")


# ---------------------------------------------------------------------------
# faces and smoothness in codimension 2
# ---------------------------------------------------------------------------

def two_faces(cone: Cone) -> list[tuple[int, int]]:
    """Ray-index pairs (1-based) spanning two-dimensional faces.

    A pair qualifies when some functional vanishes on both rays and is
    strictly positive on all the others; the certifying functional is the sum
    of the generators of the corresponding dual face.
    """
    require_pointed_full(cone, "two_faces")
    n = cone.ambient_rank
    out = []
    for i, j in itertools.combinations(range(len(cone.rays)), 2):
        ri, rj = cone.rays[i], cone.rays[j]
        if rank([ri, rj]) != 2:
            continue
        m = support_functional(cone, (i + 1, j + 1))
        if m is not None:
            out.append((i + 1, j + 1))
    return out


def support_functional(cone: Cone, pair: tuple[int, int]) -> Optional[Vector]:
    """A functional certifying that the 1-based ray pair spans a 2-face.

    Returns m with <ray_i, m> = <ray_j, m> = 0 and <ray_l, m> > 0 otherwise,
    or None when no such functional exists.
    """
    i, j = pair[0] - 1, pair[1] - 1
    ri, rj = cone.rays[i], cone.rays[j]
    fence = [ri, tuple(-x for x in ri), rj, tuple(-x for x in rj)]
    others = [r for k, r in enumerate(cone.rays) if k not in (i, j)]
    gens = _dual_generators(fence + others, cone.ambient_rank)
    m = tuple([0] * cone.ambient_rank)
    for g in gens:
        m = vec_add(m, g)
    if dot(ri, m) != 0 or dot(rj, m) != 0:
        return None
    if all(dot(r, m) > 0 for r in others):
        return m
    return None


def is_smooth_in_codim2(cone: Cone) -> bool:
    """Every 2-face ray pair spans a saturated rank-2 sublattice.

    Tested via the gcd of all 2x2 minors of the two ray columns; gcd 1 means
    the pair extends to a lattice basis.
    """
    require_pointed_full(cone, "is_smooth_in_codim2")
    for i, j in two_faces(cone):
        ri, rj = cone.ray(i), cone.ray(j)
        g = 0
        for a, b in itertools.combinations(range(cone.ambient_rank), 2):
            minor = ri[a] * rj[b] - ri[b] * rj[a]
            g = math.gcd(g, abs(minor))
        if g != 1:
            return False
    return True


# ---------------------------------------------------------------------------
# bounded lattice point enumeration
# ---------------------------------------------------------------------------

Constraint = tuple[Vector, str, int]


def lattice_points_in(constraints: Sequence[Constraint], box_bound: int,
                      ambient_rank: Optional[int] = None) -> list[Vector]:
    """Integer points of sup-norm <= box_bound satisfying all constraints.

    A constraint is (normal, rel, value) with rel one of ">=", "==".  The
    output is complete within the box and lexicographically sorted.
    """
    if box_bound < 0:
        raise ValueError("box_bound must be >= 0")
    if constraints:
        n = len(constraints[0][0])
        for normal, rel, _ in constraints:
            if len(normal) != n:
                raise ValueError("constraint normals have inconsistent lengths")
            if rel not in (">=", "=="):
                raise ValueError(f"unknown relation {rel!r}")
        if ambient_rank is not None and ambient_rank != n:
            raise ValueError("ambient_rank disagrees with constraint normals")
    else:
        if ambient_rank is None:
            raise ValueError("ambient_rank required when there are no constraints")
        n = ambient_rank

    out = []
    span = range(-box_bound, box_bound + 1)
    for point in itertools.product(span, repeat=n):
        ok = True
        for normal, rel, value in constraints:
            p = dot(normal, point)
            if rel == ">=" and p < value:
                ok = False
                break
            if rel == "==" and p != value:
                ok = False
                break
        if ok:
            out.append(point)
    return out


# ---------------------------------------------------------------------------
# lattice index
# ---------------------------------------------------------------------------

def lattice_index(generators: Sequence[Sequence[int]],
                  ambient: Sequence[Sequence[int]]):
    """Index of the subgroup spanned by `generators` inside that of `ambient`.

    Returns math.inf when the ranks differ.  Requires the generators to lie
    in the ambient subgroup (a rational-span check alone is not enough to
    define an integer index).
    """
    gens = [tuple(int(x) for x in g) for g in generators]
    amb = [tuple(int(x) for x in a) for a in ambient]
    if not amb:
        raise ValueError("ambient generators must be nonempty")
    basis = row_lattice_basis([list(a) for a in amb])
    joint_rank = rank(list(amb) + [g for g in gens if not is_zero_vector(g)]) if gens else rank(amb)
    if joint_rank != len(basis):
        raise ValueError("generators do not lie in the rational span of ambient")

    coord_rows = []
    cols = transpose([list(b) for b in basis])
    for g in gens:
        sol = solve_rational(cols, g)
        if sol is None:
            raise ValueError("internal: span check passed but solve failed")
        if any(x.denominator != 1 for x in sol):
            raise ValueError(f"generator {g} is not in the ambient lattice")
        coord_rows.append([int(x) for x in sol])

    r = len(basis)
    if not coord_rows or rank(coord_rows) < r:
        return math.inf
    snf = smith_normal_form(coord_rows)
    index = 1
    for d in snf.diagonal:
        if d != 0:
            index *= d
    return index


# ---------------------------------------------------------------------------
# stock cones
# ---------------------------------------------------------------------------

def positive_orthant(n: int, lattice_tag: str = "N") -> Cone:
    """The cone spanned by the standard basis of rank n."""
    rays = [tuple(1 if j == i else 0 for j in range(n)) for i in range(n)]
    return Cone.from_rays(rays, ambient_rank=n, lattice_tag=lattice_tag)


def quadrant() -> Cone:
    return positive_orthant(2)


def singular_threefold() -> Cone:
    """Rank-3 cone over a quadrilateral: one singular point, smooth in codim 2."""
    return Cone.from_rays([(1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, -1)])
