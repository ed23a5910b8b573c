"""The graded Lie algebra of homogeneous derivations of a toric coordinate ring.

A homogeneous derivation is determined by a scalar, a linear form on the
weight lattice and a degree: it sends the monomial of weight m to
<rho, m> times the monomial of weight m + e.  General derivations are finite
sums of homogeneous components, one per occurring degree.  Commutators close
on this shape:

    [d_{rho,e}, d_{rho',e'}] = d_{rho^, e+e'},
    rho^ = <rho, e'> rho' - <rho', e> rho.

Everything is exact; scalars are Fractions, lattice data is integral.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from .errors import SupportError, WorkbenchError
from .exactla import (
    Vector,
    content,
    dot,
    in_convex_hull,
    is_zero_vector,
    vec_add,
)
from .lattice import Cone, Constraint, in_dual_cone, lattice_points_in, pairings
from .roots import is_demazure_root

__all__ = [
    "AlgebraElement",
    "HomogeneousComponent",
    "Derivation",
    "NewtonPolytope",
    "CertificationResult",
    "apply_derivation",
    "preserves_algebra",
    "is_lnd_homogeneous",
    "certified_lnd",
    "commutator",
    "ad_power",
    "newton_polytope",
    "face_restriction",
    "principal_part",
    "replica",
    "kernel_facet",
    "in_kernel_facet",
    "generating_monomials",
    "certify_lnd",
]


# ---------------------------------------------------------------------------
# monomial sums
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class AlgebraElement:
    """Finite sum of Laurent monomials with exact rational coefficients.

    Terms are stored sorted by exponent with no zero coefficients, so equal
    elements compare equal structurally.
    """

    rank: int
    terms: tuple[tuple[Vector, Fraction], ...]

    @staticmethod
    def from_terms(rank: int, terms: Iterable[tuple[Sequence[int], Fraction]]) -> "AlgebraElement":
        acc: dict[Vector, Fraction] = {}
        for exponent, coeff in terms:
            m = tuple(int(x) for x in exponent)
            if len(m) != rank:
                raise ValueError("exponent length does not match rank")
            c = acc.get(m, Fraction(0)) + Fraction(coeff)
            if c == 0:
                acc.pop(m, None)
            else:
                acc[m] = c
        return AlgebraElement(rank=rank, terms=tuple(sorted(acc.items())))

    @staticmethod
    def monomial(exponent: Sequence[int], coeff=1) -> "AlgebraElement":
        return AlgebraElement.from_terms(len(exponent), [(tuple(exponent), Fraction(coeff))])

    @staticmethod
    def constant(rank: int, value) -> "AlgebraElement":
        return AlgebraElement.from_terms(rank, [((0,) * rank, Fraction(value))])

    @staticmethod
    def zero(rank: int) -> "AlgebraElement":
        return AlgebraElement(rank=rank, terms=())

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def support(self) -> tuple[Vector, ...]:
        return tuple(m for m, _ in self.terms)

    def coefficient(self, exponent: Sequence[int]) -> Fraction:
        m = tuple(exponent)
        for mm, c in self.terms:
            if mm == m:
                return c
        return Fraction(0)

    def __add__(self, other: "AlgebraElement") -> "AlgebraElement":
        if self.rank != other.rank:
            raise ValueError("rank mismatch")
        return AlgebraElement.from_terms(self.rank, list(self.terms) + list(other.terms))

    def __sub__(self, other: "AlgebraElement") -> "AlgebraElement":
        return self + (-1) * other

    def __mul__(self, other):
        if isinstance(other, AlgebraElement):
            if self.rank != other.rank:
                raise ValueError("rank mismatch")
            out = []
            for m1, c1 in self.terms:
                for m2, c2 in other.terms:
                    out.append((vec_add(m1, m2), c1 * c2))
            return AlgebraElement.from_terms(self.rank, out)
        return AlgebraElement.from_terms(
            self.rank, [(m, c * Fraction(other)) for m, c in self.terms])

    __rmul__ = __mul__

    def evaluate(self, point: Sequence[Fraction]) -> Fraction:
        """Exact value at a rational point; negative exponents need nonzero
        coordinates."""
        if len(point) != self.rank:
            raise ValueError("point dimension mismatch")
        total = Fraction(0)
        for m, c in self.terms:
            value = c
            for x, p in zip(point, m):
                if p != 0:
                    value *= Fraction(x) ** p
            total += value
        return total

    def assert_supported(self, cone: Cone) -> None:
        """Every exponent must pair nonnegatively with all rays of the cone."""
        for m, _ in self.terms:
            if not in_dual_cone(cone, m):
                raise SupportError(f"exponent {m} lies outside the weight cone")


# ---------------------------------------------------------------------------
# homogeneous components and derivations
# ---------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class HomogeneousComponent:
    """One graded piece: scalar lam, linear form rho, degree e.

    Two components are equal when they act identically, i.e. when their
    degrees agree and lam * rho agree as rational vectors; rho itself is not
    required to be primitive.
    """

    lam: Fraction
    rho: Vector
    e: Vector

    def __post_init__(self):
        object.__setattr__(self, "lam", Fraction(self.lam))
        object.__setattr__(self, "rho", tuple(int(x) for x in self.rho))
        object.__setattr__(self, "e", tuple(int(x) for x in self.e))
        if self.lam == 0:
            raise ValueError("lam must be nonzero")
        if is_zero_vector(self.rho):
            raise ValueError("rho must be nonzero")
        if len(self.rho) != len(self.e):
            raise ValueError("rho and e must have the same length")

    def weight(self) -> tuple[Fraction, ...]:
        return tuple(self.lam * x for x in self.rho)

    def __eq__(self, other):
        if not isinstance(other, HomogeneousComponent):
            return NotImplemented
        return self.e == other.e and self.weight() == other.weight()

    def __hash__(self):
        return hash((self.e, self.weight()))

    def scaled(self, c) -> Optional["HomogeneousComponent"]:
        c = Fraction(c)
        if c == 0:
            return None
        return HomogeneousComponent(lam=self.lam * c, rho=self.rho, e=self.e)


def _component_from_weight(weight: Sequence[Fraction], e: Vector) -> Optional[HomogeneousComponent]:
    if all(x == 0 for x in weight):
        return None
    denom = math.lcm(*[x.denominator for x in weight])
    ints = [int(x * denom) for x in weight]
    g = content(ints)
    rho = tuple(x // g for x in ints)
    return HomogeneousComponent(lam=Fraction(g, denom), rho=rho, e=e)


@dataclass(frozen=True)
class Derivation:
    """Finite sum of homogeneous components, keyed by degree."""

    rank: int
    components: tuple[HomogeneousComponent, ...]

    @staticmethod
    def from_components(components: Iterable[HomogeneousComponent],
                        rank: Optional[int] = None) -> "Derivation":
        comps = list(components)
        if rank is None:
            if not comps:
                raise ValueError("rank required for the zero derivation")
            rank = len(comps[0].e)
        by_degree: dict[Vector, list[Fraction]] = {}
        for c in comps:
            if len(c.e) != rank:
                raise ValueError("component rank mismatch")
            w = by_degree.setdefault(c.e, [Fraction(0)] * rank)
            for i, x in enumerate(c.weight()):
                w[i] += x
        merged = []
        for e in sorted(by_degree):
            comp = _component_from_weight(by_degree[e], e)
            if comp is not None:
                merged.append(comp)
        return Derivation(rank=rank, components=tuple(merged))

    @staticmethod
    def single(component: HomogeneousComponent) -> "Derivation":
        return Derivation.from_components([component])

    @staticmethod
    def zero(rank: int) -> "Derivation":
        return Derivation(rank=rank, components=())

    @property
    def is_zero(self) -> bool:
        return not self.components

    def degrees(self) -> tuple[Vector, ...]:
        return tuple(c.e for c in self.components)

    def component_at(self, e: Sequence[int]) -> Optional[HomogeneousComponent]:
        key = tuple(e)
        for c in self.components:
            if c.e == key:
                return c
        return None

    def __add__(self, other: "Derivation") -> "Derivation":
        if self.rank != other.rank:
            raise ValueError("rank mismatch")
        return Derivation.from_components(
            list(self.components) + list(other.components), rank=self.rank)

    def __sub__(self, other: "Derivation") -> "Derivation":
        return self + (-1) * other

    def __mul__(self, c):
        c = Fraction(c)
        if c == 0:
            return Derivation.zero(self.rank)
        return Derivation.from_components(
            [comp.scaled(c) for comp in self.components], rank=self.rank)

    __rmul__ = __mul__


def as_derivation(d) -> Derivation:
    if isinstance(d, Derivation):
        return d
    if isinstance(d, HomogeneousComponent):
        return Derivation.single(d)
    raise TypeError(f"cannot interpret {type(d).__name__} as a derivation")


# ---------------------------------------------------------------------------
# action on the algebra
# ---------------------------------------------------------------------------

def apply_derivation(d, f: AlgebraElement, cone: Cone, *,
                     unchecked: bool = False) -> AlgebraElement:
    """Apply a derivation to a monomial sum.

    The monomial of weight m goes to lam * <rho, m> times the monomial of
    weight m + e, extended bilinearly.  With unchecked=False every resulting
    exponent must stay in the weight cone.
    """
    d = as_derivation(d)
    if d.rank != f.rank or f.rank != cone.ambient_rank:
        raise ValueError("rank mismatch")
    out = []
    for comp in d.components:
        for m, c in f.terms:
            factor = dot(comp.rho, m)
            if factor != 0:
                out.append((vec_add(m, comp.e), comp.lam * c * factor))
    result = AlgebraElement.from_terms(f.rank, out)
    if not unchecked:
        result.assert_supported(cone)
    return result


def preserves_algebra(d, cone: Cone) -> bool:
    """Does every component map the coordinate ring into itself?

    A component of degree e qualifies when either e lies in the weight cone,
    or e is a Demazure root of some ray and rho is proportional to that ray.
    """
    d = as_derivation(d)
    for comp in d.components:
        if in_dual_cone(cone, comp.e):
            continue
        idx = is_demazure_root(cone, comp.e)
        if idx is None:
            return False
        if not _proportional(comp.rho, cone.ray(idx)):
            return False
    return True


def _proportional(u: Vector, v: Vector) -> bool:
    for i in range(len(u)):
        for j in range(i + 1, len(u)):
            if u[i] * v[j] != u[j] * v[i]:
                return False
    return True


# ---------------------------------------------------------------------------
# local nilpotency of homogeneous components
# ---------------------------------------------------------------------------

def is_lnd_homogeneous(c: Optional[HomogeneousComponent], cone: Cone) -> bool:
    """Locally nilpotent iff the degree is a Demazure root of some ray and
    rho is proportional to that ray.  None stands for the zero component and
    is vacuously locally nilpotent."""
    if c is None:
        return True
    idx = is_demazure_root(cone, c.e)
    if idx is None:
        return False
    return _proportional(c.rho, cone.ray(idx))


def certified_lnd(cone: Cone, e: Sequence[int], lam=1,
                  rho: Optional[Sequence[int]] = None) -> HomogeneousComponent:
    """Build a certified locally nilpotent component in canonical form.

    The degree must be a Demazure root; rho defaults to the primitive ray
    generator it belongs to, and any multiple passed in is folded into lam.
    """
    idx = is_demazure_root(cone, e)
    if idx is None:
        raise ValueError(f"{tuple(e)} is not a Demazure root")
    ray = cone.ray(idx)
    lam = Fraction(lam)
    if rho is not None:
        rho = tuple(int(x) for x in rho)
        if not _proportional(rho, ray):
            raise ValueError("rho is not proportional to the ray of the root")
        k = next(i for i, x in enumerate(ray) if x != 0)
        lam = lam * Fraction(rho[k], ray[k])
    if lam == 0:
        raise ValueError("zero scalar does not define a component")
    return HomogeneousComponent(lam=lam, rho=ray, e=tuple(int(x) for x in e))


# ---------------------------------------------------------------------------
# Lie structure
# ---------------------------------------------------------------------------

def commutator(d1, d2) -> Derivation:
    """Bilinear extension of the homogeneous commutator formula."""
    d1 = as_derivation(d1)
    d2 = as_derivation(d2)
    if d1.rank != d2.rank:
        raise ValueError("rank mismatch")
    parts = []
    for a in d1.components:
        for b in d2.components:
            rho_hat = tuple(
                dot(a.rho, b.e) * rb - dot(b.rho, a.e) * ra
                for ra, rb in zip(a.rho, b.rho)
            )
            if is_zero_vector(rho_hat):
                continue
            parts.append(HomogeneousComponent(
                lam=a.lam * b.lam, rho=rho_hat, e=vec_add(a.e, b.e)))
    return Derivation.from_components(parts, rank=d1.rank)


def ad_power(U, V, m: int) -> Derivation:
    """Iterated commutator with U applied m times to V."""
    if m < 0:
        raise ValueError("m must be >= 0")
    U = as_derivation(U)
    cur = as_derivation(V)
    for _ in range(m):
        if cur.is_zero:
            break
        cur = commutator(U, cur)
    return cur


# ---------------------------------------------------------------------------
# Newton polytope, faces, principal parts
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class NewtonPolytope:
    support: tuple[Vector, ...]
    vertices: tuple[Vector, ...]


def newton_polytope(d) -> NewtonPolytope:
    """Support degrees and the exact convex hull vertices among them."""
    d = as_derivation(d)
    if d.is_zero:
        raise WorkbenchError("the zero derivation has no Newton polytope")
    support = sorted(d.degrees())
    vertices = [p for p in support
                if not in_convex_hull([q for q in support if q != p], p)]
    return NewtonPolytope(support=tuple(support), vertices=tuple(vertices))


def face_restriction(d, face: tuple[Sequence[int], int]) -> Derivation:
    """Sum of the components on a supporting hyperplane {<normal, e> = value}.

    The hyperplane must support the Newton polytope: <normal, e> <= value on
    all of the support, with equality attained.
    """
    d = as_derivation(d)
    normal, value = face
    levels = [dot(normal, c.e) for c in d.components]
    if not levels:
        raise WorkbenchError("cannot restrict the zero derivation")
    if max(levels) != value or any(l > value for l in levels):
        raise WorkbenchError(
            f"hyperplane <{tuple(normal)}, e> = {value} does not support the polytope")
    keep = [c for c, l in zip(d.components, levels) if l == value]
    return Derivation.from_components(keep, rank=d.rank)


def principal_part(d, rho_T: Sequence[int]) -> Derivation:
    """Face restriction where the direction rho_T attains its maximum."""
    d = as_derivation(d)
    if d.is_zero:
        raise WorkbenchError("the zero derivation has no principal part")
    l_max = max(dot(rho_T, c.e) for c in d.components)
    return face_restriction(d, (tuple(rho_T), l_max))


# ---------------------------------------------------------------------------
# replicas and kernel facets
# ---------------------------------------------------------------------------

def kernel_facet(cone: Cone, ray_index: int) -> list[Constraint]:
    """Constraints for the weight-cone facet annihilated by one ray: the
    exponents of the kernel monomials of any root derivation on that ray."""
    ray = cone.ray(ray_index)
    cons: list[Constraint] = [(ray, "==", 0)]
    for k, r in enumerate(cone.rays, start=1):
        if k != ray_index:
            cons.append((r, ">=", 0))
    return cons


def in_kernel_facet(cone: Cone, ray_index: int, f: Sequence[int]) -> bool:
    return dot(cone.ray(ray_index), f) == 0 and in_dual_cone(cone, f)


def replica(c: HomogeneousComponent, f: Sequence[int], cone: Cone) -> HomogeneousComponent:
    """Shift a certified root component by a kernel-monomial weight.

    Multiplying by the kernel monomial of weight f moves the degree from e to
    e + f and keeps local nilpotency.
    """
    if not is_lnd_homogeneous(c, cone):
        raise ValueError("replica requires a certified locally nilpotent component")
    idx = is_demazure_root(cone, c.e)
    if not in_kernel_facet(cone, idx, f):
        raise ValueError(f"{tuple(f)} is not in the kernel facet of ray {idx}")
    return HomogeneousComponent(lam=c.lam, rho=c.rho, e=vec_add(c.e, tuple(f)))


# ---------------------------------------------------------------------------
# three-valued certification for non-homogeneous derivations
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CertificationResult:
    status: str  # "certified" | "refuted" | "unknown"
    reason: str
    max_steps: int = 0


def generating_monomials(cone: Cone, bound: int = 4) -> list[Vector]:
    """Weight-cone monomial exponents inside a sup-norm box.

    Stands in for a Hilbert basis at desk scale: complete within the box and
    closed under addition as far as the box allows.
    """
    cons: list[Constraint] = [(r, ">=", 0) for r in cone.rays]
    return lattice_points_in(cons, bound)


def certify_lnd(d, cone: Cone, *, step_budget: int = 64,
                box: int = 4) -> CertificationResult:
    """Decide local nilpotency as far as the available certificates reach.

    Certified: every Newton polytope vertex is a locally nilpotent component
    and iterated application kills every box monomial within the budget.
    Refuted: the derivation leaves the ring, or some vertex component fails.
    Unknown: the nilpotency witness ran out of budget.
    """
    d = as_derivation(d)
    if d.is_zero:
        return CertificationResult("certified", "zero derivation")
    if not preserves_algebra(d, cone):
        return CertificationResult("refuted", "does not preserve the coordinate ring")
    poly = newton_polytope(d)
    for v in poly.vertices:
        if not is_lnd_homogeneous(d.component_at(v), cone):
            return CertificationResult(
                "refuted", f"vertex component at {v} is not locally nilpotent")
    worst = 0
    for m in generating_monomials(cone, bound=box):
        f = AlgebraElement.monomial(m)
        steps = 0
        while not f.is_zero:
            if steps >= step_budget:
                return CertificationResult(
                    "unknown", f"budget exhausted on monomial {m}", max_steps=steps)
            f = apply_derivation(d, f, cone)
            steps += 1
        worst = max(worst, steps)
    return CertificationResult("certified", "vertices and nilpotency witness pass",
                               max_steps=worst)
