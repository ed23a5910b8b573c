"""Demazure facets and roots: membership tests and bounded enumeration."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

from .exactla import Vector, dot
from .lattice import Cone, Constraint, lattice_points_in, require_pointed_full

__all__ = [
    "RootDatum",
    "DemazureFacet",
    "RootEnumeration",
    "demazure_facet",
    "is_demazure_root",
    "root_datum",
    "enumerate_roots",
]


@dataclass(frozen=True)
class RootDatum:
    """A Demazure root e together with the 1-based ray it belongs to.

    Pairings: <ray, e> = -1 at ray_index and >= 0 at every other ray.
    """

    ray_index: int
    e: Vector


@dataclass(frozen=True)
class DemazureFacet:
    """Constraint system of the root polyhedron of one ray: the hyperplane
    <ray_i, e> = -1 cut by <ray_j, e> >= 0 for all j != i."""

    ray_index: int
    equality_normal: Vector
    inequality_normals: tuple[Vector, ...]

    def constraints(self) -> list[Constraint]:
        cons: list[Constraint] = [(self.equality_normal, "==", -1)]
        cons.extend((normal, ">=", 0) for normal in self.inequality_normals)
        return cons


@dataclass(frozen=True)
class RootEnumeration:
    """Roots found inside a sup-norm box; the bound is part of the result."""

    bound: int
    roots: tuple[RootDatum, ...]

    def __iter__(self):
        return iter(self.roots)

    def __len__(self):
        return len(self.roots)

    def by_ray(self, ray_index: int) -> tuple[RootDatum, ...]:
        return tuple(r for r in self.roots if r.ray_index == ray_index)


def demazure_facet(cone: Cone, ray_index: int) -> DemazureFacet:
    """The facet constraint system for one primitive ray generator."""
    require_pointed_full(cone, "demazure_facet")
    equality = cone.ray(ray_index)
    inequalities = tuple(r for k, r in enumerate(cone.rays, start=1) if k != ray_index)
    return DemazureFacet(ray_index=ray_index, equality_normal=equality,
                         inequality_normals=inequalities)


def is_demazure_root(cone: Cone, e: Sequence[int]) -> Optional[int]:
    """The unique 1-based ray index whose facet contains e, or None."""
    require_pointed_full(cone, "is_demazure_root")
    if len(e) != cone.ambient_rank:
        raise ValueError("rank mismatch between cone and candidate root")
    hit = None
    for k, ray in enumerate(cone.rays, start=1):
        p = dot(ray, e)
        if p == -1:
            if hit is not None:
                return None
            hit = k
        elif p < 0:
            return None
    return hit


def root_datum(cone: Cone, e: Sequence[int]) -> RootDatum:
    """Validated RootDatum constructor; raises on non-roots."""
    idx = is_demazure_root(cone, e)
    if idx is None:
        raise ValueError(f"{tuple(e)} is not a Demazure root of the cone")
    return RootDatum(ray_index=idx, e=tuple(int(x) for x in e))


def enumerate_roots(cone: Cone, bound: int) -> RootEnumeration:
    """All Demazure roots of sup-norm <= bound, grouped by ray, lex sorted.

    The facets are unbounded, so completeness is only claimed inside the box;
    the bound travels with the result.
    """
    require_pointed_full(cone, "enumerate_roots")
    if bound < 0:
        raise ValueError("bound must be >= 0")
    found: list[RootDatum] = []
    for k in range(1, len(cone.rays) + 1):
        facet = demazure_facet(cone, k)
        for e in lattice_points_in(facet.constraints(), bound):
            found.append(RootDatum(ray_index=k, e=e))
    return RootEnumeration(bound=bound, roots=tuple(found))
