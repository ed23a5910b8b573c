"""Automorphism letters and words: exponential flows, adjoints, point actions.

Point actions are supported in total coordinates (an orthant chart), where a
root flow is the elementary shear

    (x_1, ..., x_k) |-> (..., x_i + t * x^(e + eps_i), ...)

for the root e with e_i = -1.  Words compose left to right: the leftmost
letter acts first.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence, Union

from .errors import BudgetError, ChartError
from .derivations import (
    AlgebraElement,
    Derivation,
    HomogeneousComponent,
    apply_derivation,
    as_derivation,
    commutator,
    is_lnd_homogeneous,
)
from .exactla import dot, Vector
from .lattice import Cone
from .roots import is_demazure_root

__all__ = [
    "Point",
    "exp_closed_form",
    "RootFlow",
    "ReplicaFlow",
    "TorusElement",
    "Permutation",
    "LinearMap",
    "Translation",
    "Word",
    "exp_on_algebra",
    "adjoint",
    "torus_conjugate",
    "act_on_point",
    "letter_as_derivation_flow_check",
]

BCH_BUDGET = 64
EXP_BUDGET = 512


@dataclass(frozen=True)
class Point:
    coords: tuple[Fraction, ...]
    space_tag: str = "total"

    @staticmethod
    def of(coords: Sequence, space_tag: str = "total") -> "Point":
        return Point(tuple(Fraction(x) for x in coords), space_tag)

    def __len__(self):
        return len(self.coords)


@dataclass(frozen=True)
class RootFlow:
    """exp(t * component) for a certified root component."""

    component: HomogeneousComponent
    t: Fraction


@dataclass(frozen=True)
class ReplicaFlow:
    """exp(t * a * component) with a kernel monomial sum a."""

    component: HomogeneousComponent
    kernel_poly: AlgebraElement
    t: Fraction


@dataclass(frozen=True)
class TorusElement:
    """Coordinatewise scaling x_j -> lam^(rho_T_j) * x_j."""

    rho_T: Vector
    lam: Fraction


@dataclass(frozen=True)
class Permutation:
    """Coordinate permutation; images[k] is where old coordinate k goes."""

    images: tuple[int, ...]


@dataclass(frozen=True)
class LinearMap:
    matrix: tuple[tuple[Fraction, ...], ...]


@dataclass(frozen=True)
class Translation:
    vector: tuple[Fraction, ...]


Letter = Union[RootFlow, ReplicaFlow, TorusElement, Permutation, LinearMap, Translation]


@dataclass(frozen=True)
class Word:
    letters: tuple[Letter, ...] = ()

    def __iter__(self):
        return iter(self.letters)

    def __len__(self):
        return len(self.letters)

    def __add__(self, other: "Word") -> "Word":
        return Word(self.letters + other.letters)


# ---------------------------------------------------------------------------
# exponentials on the algebra
# ---------------------------------------------------------------------------

def exp_on_algebra(c: HomogeneousComponent, t, f: AlgebraElement, cone: Cone,
                   kernel_poly: Optional[AlgebraElement] = None) -> AlgebraElement:
    """Finite Taylor sum of exp(t * a * c) applied to f.

    The optional kernel_poly a must be supported on the kernel facet of the
    component's ray, which keeps the series finite.
    """
    if not is_lnd_homogeneous(c, cone):
        raise ValueError("exp_on_algebra requires a certified locally nilpotent component")
    if kernel_poly is not None:
        idx = is_demazure_root(cone, c.e)
        ray = cone.ray(idx)
        kernel_poly.assert_supported(cone)
        for m, _ in kernel_poly.terms:
            if dot(ray, m) != 0:
                raise ValueError(f"kernel polynomial exponent {m} is not killed by the ray")
    t = Fraction(t)
    result = f
    cur = f
    l = 0
    while True:
        cur = apply_derivation(c, cur, cone)
        if kernel_poly is not None:
            cur = kernel_poly * cur
        if cur.is_zero:
            return result
        l += 1
        if l > EXP_BUDGET:
            raise BudgetError("exponential series did not terminate")
        result = result + (t ** l / math.factorial(l)) * cur


def exp_closed_form(c: HomogeneousComponent, t, f: AlgebraElement,
                    cone: Cone) -> AlgebraElement:
    """Binomial closed form of the root flow on monomials:
    the weight-m monomial maps to chi^m (1 + t chi^e)^<rho, m>.

    Only valid for certified components; verified against the Taylor sum in
    the test suite before anything relies on it.
    """
    if not is_lnd_homogeneous(c, cone):
        raise ValueError("closed form only applies to certified components")
    idx = is_demazure_root(cone, c.e)
    ray = cone.ray(idx)
    k = next(i for i, x in enumerate(ray) if x != 0)
    tau = Fraction(t) * c.lam * Fraction(c.rho[k], ray[k])
    out = AlgebraElement.zero(f.rank)
    for m, coeff in f.terms:
        p = dot(ray, m)
        if p < 0:
            raise ValueError("closed form needs monomials inside the weight cone")
        for j in range(p + 1):
            exponent = tuple(mi + j * ei for mi, ei in zip(m, c.e))
            out = out + AlgebraElement.monomial(exponent,
                                                coeff * math.comb(p, j) * tau ** j)
    return out


# ---------------------------------------------------------------------------
# adjoint (conjugation of derivations by a flow)
# ---------------------------------------------------------------------------

def adjoint(U: HomogeneousComponent, V, budget: int = BCH_BUDGET) -> Derivation:
    """Ad_{exp(U)}(V) as the finite sum V + sum_m ad_U^m(V)/m!.

    Terminates because ad of a locally nilpotent derivation is locally
    nilpotent; a blown budget therefore reports a non-certified U.
    """
    U_der = as_derivation(U)
    V_der = as_derivation(V)
    out = V_der
    cur = V_der
    m = 0
    while True:
        cur = commutator(U_der, cur)
        if cur.is_zero:
            return out
        m += 1
        if m > budget:
            raise BudgetError("adjoint series did not terminate; U is not locally nilpotent?")
        out = out + Fraction(1, math.factorial(m)) * cur


def torus_conjugate(d, rho_T: Sequence[int], lam) -> Derivation:
    """Conjugation by the one-parameter torus element of direction rho_T:
    a component of torus degree s rescales by lam^(-s)."""
    lam = Fraction(lam)
    if lam == 0:
        raise ValueError("torus parameter must be nonzero")
    d = as_derivation(d)
    comps = []
    for c in d.components:
        s = dot(rho_T, c.e)
        comps.append(c.scaled(lam ** (-s)))
    return Derivation.from_components([c for c in comps if c is not None], rank=d.rank)


# ---------------------------------------------------------------------------
# point actions
# ---------------------------------------------------------------------------

def _distinguished_index(e: Vector) -> int:
    """The unique coordinate where an orthant root is -1; rejects non-roots."""
    hits = [i for i, x in enumerate(e) if x == -1]
    if len(hits) != 1 or any(x < 0 for i, x in enumerate(e) if i != hits[0]):
        raise ChartError(f"{e} is not an orthant root presented in total coordinates")
    return hits[0]


def _monomial_value(coords: Sequence[Fraction], exponent: Sequence[int]) -> Fraction:
    value = Fraction(1)
    for x, p in zip(coords, exponent):
        if p != 0:
            value *= Fraction(x) ** p
    return value


def _apply_letter(letter: Letter, coords: tuple[Fraction, ...]) -> tuple[Fraction, ...]:
    n = len(coords)
    if isinstance(letter, RootFlow) or isinstance(letter, ReplicaFlow):
        comp = letter.component
        if len(comp.e) != n:
            raise ValueError("letter dimension mismatch")
        i = _distinguished_index(comp.e)
        for j, r in enumerate(comp.rho):
            if j != i and r != 0:
                raise ChartError("component rho is not aligned with the moved coordinate")
        if comp.rho[i] == 0:
            raise ChartError("component rho vanishes on the moved coordinate")
        multiplier = Fraction(letter.t) * comp.lam * comp.rho[i]
        shift_exp = tuple(x + (1 if j == i else 0) for j, x in enumerate(comp.e))
        increment = multiplier * _monomial_value(coords, shift_exp)
        if isinstance(letter, ReplicaFlow):
            for m, _ in letter.kernel_poly.terms:
                if m[i] != 0 or any(x < 0 for x in m):
                    raise ChartError("kernel polynomial is not an invariant of the flow")
            increment *= letter.kernel_poly.evaluate(coords)
        return tuple(x + increment if j == i else x for j, x in enumerate(coords))
    if isinstance(letter, TorusElement):
        if len(letter.rho_T) != n:
            raise ValueError("letter dimension mismatch")
        if letter.lam == 0:
            raise ValueError("torus parameter must be nonzero")
        return tuple(x * Fraction(letter.lam) ** p for x, p in zip(coords, letter.rho_T))
    if isinstance(letter, Permutation):
        images = letter.images
        if sorted(images) != list(range(n)):
            raise ValueError("permutation images must be a bijection on coordinates")
        out = [Fraction(0)] * n
        for k, x in enumerate(coords):
            out[images[k]] = x
        return tuple(out)
    if isinstance(letter, LinearMap):
        rows = letter.matrix
        if len(rows) != n or any(len(r) != n for r in rows):
            raise ValueError("matrix shape mismatch")
        if _det(rows) == 0:
            raise ValueError("linear letter must be invertible")
        return tuple(sum(Fraction(a) * x for a, x in zip(row, coords)) for row in rows)
    if isinstance(letter, Translation):
        if len(letter.vector) != n:
            raise ValueError("letter dimension mismatch")
        return tuple(x + Fraction(v) for x, v in zip(coords, letter.vector))
    raise TypeError(f"unknown letter {type(letter).__name__}")


def _det(rows) -> Fraction:
    n = len(rows)
    A = [[Fraction(x) for x in r] for r in rows]
    det = Fraction(1)
    for col in range(n):
        pivot = next((i for i in range(col, n) if A[i][col] != 0), None)
        if pivot is None:
            return Fraction(0)
        if pivot != col:
            A[col], A[pivot] = A[pivot], A[col]
            det = -det
        det *= A[col][col]
        inv = 1 / A[col][col]
        A[col] = [x * inv for x in A[col]]
        for i in range(col + 1, n):
            if A[i][col] != 0:
                f = A[i][col]
                A[i] = [x - f * y for x, y in zip(A[i], A[col])]
    return det


def act_on_point(word: Union[Word, Letter], point: Union[Point, Sequence]) -> Point:
    """Apply a word (or a single letter) to a point, leftmost letter first."""
    if isinstance(point, Point):
        coords = point.coords
        tag = point.space_tag
    else:
        coords = tuple(Fraction(x) for x in point)
        tag = "total"
    letters = word.letters if isinstance(word, Word) else (word,)
    for letter in letters:
        coords = _apply_letter(letter, coords)
    return Point(coords=coords, space_tag=tag)


# ---------------------------------------------------------------------------
# consistency between algebra flows and point flows
# ---------------------------------------------------------------------------

def letter_as_derivation_flow_check(letter: RootFlow, cone: Cone,
                                    sample_values=(1, 2, Fraction(1, 2), -1)) -> bool:
    """Does the point action agree with the algebra action on coordinates?

    Evaluates exp on each coordinate monomial and compares with the point
    action over a grid of sample points.  Any structural violation counts as
    disagreement.
    """
    import itertools

    n = cone.ambient_rank
    try:
        basis = [tuple(1 if j == i else 0 for j in range(n)) for i in range(n)]
        images = [exp_on_algebra(letter.component, letter.t,
                                 AlgebraElement.monomial(b), cone) for b in basis]
        for values in itertools.product(sample_values, repeat=n):
            p = Point.of(values)
            moved = act_on_point(letter, p)
            for j in range(n):
                if images[j].evaluate(p.coords) != moved.coords[j]:
                    return False
        return True
    except (ChartError, ValueError, BudgetError):
        return False
