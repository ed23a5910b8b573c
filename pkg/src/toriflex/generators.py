"""Finite generator collections with machine-checked production certificates.

Each construction returns a GeneratorPackage: the letters (root subgroups,
permutation or matrix families), the derivation specs feeding the
transitivity machinery, a condition tag recomputed from lattice indices, and
two-root production witnesses.  A witness records that conjugating one root
flow by another produces a new root: the adjoint's Newton polytope is a
segment and its far endpoint carries a certified locally nilpotent component
of the predicted degree.
"""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence, Union

from .automorphisms import adjoint
from .derivations import (
    HomogeneousComponent,
    certified_lnd,
    is_lnd_homogeneous,
    newton_polytope,
    principal_part,
)
from .errors import BudgetError, WorkbenchError
from .exactla import (
    EchelonBasis,
    Vector,
    bezout_solve,
    dot,
    kernel_lattice_basis,
    mat_mul,
    rank,
    solve_integer,
    vec_add,
)
from .lattice import (
    Cone,
    is_smooth_in_codim2,
    lattice_index,
    lattice_points_in,
    positive_orthant,
    require_pointed_full,
    two_faces,
)
from .roots import RootDatum, enumerate_roots, is_demazure_root, root_datum

__all__ = [
    "RootLetter",
    "PermutationFamily",
    "MatrixGenerator",
    "DerivationSpecEntry",
    "TwoRootWitness",
    "ConditionReport",
    "TangentReport",
    "GeneratorPackage",
    "ChainStep",
    "LieClosureResult",
    "compute_condition",
    "saff_generators",
    "thm52_generators",
    "lemma_first_chain",
    "lemma55_root",
    "thm511_generators",
    "lie_closure",
    "thm513_generators",
    "toric_generators",
    "strict_support",
    "minus_one_form",
    "two_root_witness",
]


# ---------------------------------------------------------------------------
# package building blocks
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class RootLetter:
    name: str
    root: RootDatum


@dataclass(frozen=True)
class PermutationFamily:
    name: str
    generators: tuple[tuple[int, ...], ...]  # 0-based images


@dataclass(frozen=True)
class MatrixGenerator:
    name: str
    matrix: tuple[tuple[int, ...], ...]
    certificate_dim: Optional[int] = None


LetterFamily = Union[RootLetter, PermutationFamily, MatrixGenerator]


@dataclass(frozen=True)
class DerivationSpecEntry:
    component: HomogeneousComponent
    kernel_generators: tuple[Vector, ...]
    b1_exponents: Optional[tuple[Vector, ...]] = None
    b1_certificate: Optional[str] = None


@dataclass(frozen=True)
class TwoRootWitness:
    """Certificate that conjugating `moved` by the flow of `conjugating`
    produces the root `produced` = moved + delta * conjugating."""

    conjugating: RootDatum
    moved: RootDatum
    delta: int
    produced: RootDatum

    def verify(self, cone: Cone) -> bool:
        U = certified_lnd(cone, self.conjugating.e)
        V = certified_lnd(cone, self.moved.e)
        d = adjoint(U, V)
        poly = newton_polytope(d)
        if set(poly.vertices) != {self.moved.e, self.produced.e}:
            return False
        direction = bezout_solve(self.conjugating.e, 1)
        if direction is None:
            return False
        pp = principal_part(d, direction)
        if len(pp.components) != 1:
            return False
        c = pp.components[0]
        return (c.e == self.produced.e
                and is_lnd_homogeneous(c, cone)
                and is_demazure_root(cone, c.e) == self.produced.ray_index)


@dataclass(frozen=True)
class ConditionReport:
    tag: str  # "alpha" | "beta" | "gamma"
    indices: tuple[int, ...]
    union_index: int


@dataclass(frozen=True)
class TangentReport:
    samples: int
    all_spanned: bool


@dataclass(frozen=True)
class GeneratorPackage:
    cone: Cone
    construction: str
    parameters: tuple[tuple[str, object], ...]
    letters: tuple[LetterFamily, ...]
    derivation_specs: tuple[DerivationSpecEntry, ...] = ()
    condition: Optional[ConditionReport] = None
    witnesses: tuple[TwoRootWitness, ...] = ()
    base_roots: tuple[RootDatum, ...] = ()
    tangent_report: Optional[TangentReport] = None

    def root_letters(self) -> list[RootLetter]:
        return [l for l in self.letters if isinstance(l, RootLetter)]

    def parameter(self, key: str):
        for k, v in self.parameters:
            if k == key:
                return v
        raise KeyError(key)

    def verify_witnesses(self) -> bool:
        return all(w.verify(self.cone) for w in self.witnesses)


@dataclass(frozen=True)
class ChainStep:
    root: RootDatum
    witness: TwoRootWitness


@dataclass(frozen=True)
class LieClosureResult:
    dimension: int
    basis: tuple[tuple[tuple[Fraction, ...], ...], ...]


def two_root_witness(cone: Cone, conjugating: RootDatum, moved: RootDatum) -> TwoRootWitness:
    """Build the production witness for an admissible root pair.

    The step needs the moved root's ray to pair at least 1 with the
    conjugating root; delta is one more than the conjugating ray's pairing
    with the moved root.
    """
    ray_c = cone.ray(conjugating.ray_index)
    ray_m = cone.ray(moved.ray_index)
    if dot(ray_m, conjugating.e) < 1:
        raise ValueError("production step requires pairing >= 1 with the moved ray")
    delta = dot(ray_c, moved.e) + 1
    produced_e = vec_add(moved.e, tuple(delta * x for x in conjugating.e))
    produced = root_datum(cone, produced_e)
    if produced.ray_index != conjugating.ray_index:
        raise ValueError("produced root does not land on the conjugating ray")
    return TwoRootWitness(conjugating=conjugating, moved=moved,
                          delta=delta, produced=produced)


# ---------------------------------------------------------------------------
# conditions
# ---------------------------------------------------------------------------

def compute_condition(cone: Cone, specs: Sequence[DerivationSpecEntry]) -> ConditionReport:
    """Recompute the condition tag from lattice indices, never from labels.

    Per spec entry, the index of its kernel-generator lattice inside the full
    kernel-facet lattice; the tag is beta when some index is 1, else alpha
    when the union of all generator lattices is the whole weight lattice
    (the fraction fields then generate the full function field), else gamma.
    """
    if not specs:
        raise ValueError("need at least one derivation spec")
    indices = []
    union: list[Vector] = []
    for entry in specs:
        idx = is_demazure_root(cone, entry.component.e)
        if idx is None:
            raise ValueError("spec component is not a root derivation")
        facet_basis = kernel_lattice_basis([list(cone.ray(idx))],
                                           ncols=cone.ambient_rank)
        index = lattice_index(entry.kernel_generators, facet_basis)
        if index == math.inf:
            raise WorkbenchError(
                "kernel generators have infinite index in the kernel facet")
        indices.append(index)
        union.extend(entry.kernel_generators)
    n = cone.ambient_rank
    identity = [tuple(1 if j == i else 0 for j in range(n)) for i in range(n)]
    if rank(union) < n:
        union_index = math.inf
    else:
        union_index = lattice_index(union, identity)
    if any(i == 1 for i in indices):
        tag = "beta"
    elif union_index == 1:
        tag = "alpha"
    else:
        tag = "gamma"
    return ConditionReport(tag=tag, indices=tuple(indices), union_index=union_index)


# ---------------------------------------------------------------------------
# affine-space constructions
# ---------------------------------------------------------------------------

def _unit(n: int, pos: int, value: int = 1) -> Vector:
    """Vector with `value` at 1-based position `pos`."""
    return tuple(value if j == pos - 1 else 0 for j in range(n))


def saff_generators(n: int) -> GeneratorPackage:
    """One translation root plus the cycle of elementary linear roots:
    the volume-preserving affine group in n + 1 root letters."""
    if n < 2:
        raise ValueError("need n >= 2")
    octant = positive_orthant(n)
    letters: list[LetterFamily] = [
        RootLetter("translation_1", root_datum(octant, _unit(n, 1, -1)))]
    for i in range(1, n):
        e = vec_add(_unit(n, i, -1), _unit(n, i + 1, 1))
        letters.append(RootLetter(f"linear_{i}_{i + 1}", root_datum(octant, e)))
    e = vec_add(_unit(n, n, -1), _unit(n, 1, 1))
    letters.append(RootLetter(f"linear_{n}_1", root_datum(octant, e)))
    return GeneratorPackage(cone=octant, construction="saff",
                            parameters=(("n", n),), letters=tuple(letters))


def _shear_degree(n: int) -> Vector:
    """(-1, 2, 0, ..., 0)."""
    return vec_add(_unit(n, 1, -1), _unit(n, 2, 2))


def thm52_generators(n: int) -> GeneratorPackage:
    """One quadratic shear root plus the coordinate permutations.

    The derivation specs are the permutation conjugates of the degree
    (-1, 1, ..., 1, 2) root derivation, each with the cube-and-pair kernel
    algebra in the remaining coordinates.
    """
    if n < 3:
        raise ValueError("need n >= 3")
    octant = positive_orthant(n)
    letters: list[LetterFamily] = [
        RootLetter("shear_1_2", root_datum(octant, _shear_degree(n))),
        PermutationFamily("coordinate_permutations", (
            tuple([1, 0] + list(range(2, n))),
            tuple(list(range(1, n)) + [0]),
        )),
    ]
    specs = []
    for p in range(1, n + 1):
        succ = p % n + 1
        w = tuple(-1 if q == p else (2 if q == succ else 1) for q in range(1, n + 1))
        gens = _cube_and_pair_exponents(n, p)
        specs.append(DerivationSpecEntry(
            component=certified_lnd(octant, w),
            kernel_generators=tuple(gens)))
    condition = compute_condition(octant, specs)
    return GeneratorPackage(cone=octant, construction="thm52",
                            parameters=(("n", n),), letters=tuple(letters),
                            derivation_specs=tuple(specs), condition=condition)


def _cube_and_pair_exponents(n: int, skip: int) -> list[Vector]:
    gens = []
    for q in range(1, n + 1):
        if q != skip:
            gens.append(_unit(n, q, 3))
    for q in range(1, n + 1):
        for l in range(q + 1, n + 1):
            if skip not in (q, l):
                gens.append(vec_add(_unit(n, q, 1), _unit(n, l, 1)))
    return gens


def lemma_first_chain(u: RootDatum, n: Optional[int] = None) -> ChainStep:
    """One production step along the first coordinate's root polyhedron:
    add (0, -1, 2, 0, ..., 0) to a root (-1, c2, ...) with c2 >= 1."""
    e = u.e
    if n is None:
        n = len(e)
    if n < 3:
        raise ValueError("need ambient dimension >= 3")
    if e[0] != -1:
        raise ValueError("expected a root with first coordinate -1")
    if e[1] < 1:
        raise ValueError("the second coordinate must be at least 1")
    octant = positive_orthant(n)
    conjugating = root_datum(octant, e)
    moved = root_datum(octant, vec_add(_unit(n, 2, -1), _unit(n, 3, 2)))
    witness = two_root_witness(octant, conjugating, moved)
    return ChainStep(root=witness.produced, witness=witness)


def lemma55_root(n: int, cube_shifts: Optional[dict[int, int]] = None,
                 pair_shifts: Optional[dict[tuple[int, int], int]] = None
                 ) -> tuple[RootDatum, tuple[TwoRootWitness, ...]]:
    """The staircase root (-1, 1, ..., 1, 2) shifted by cubes and pairs,
    together with the full production chain that reaches it.

    cube_shifts maps a 1-based coordinate s >= 2 to the number of 3*eps_s
    additions; pair_shifts maps (i, j), both >= 2 and distinct, to the number
    of (eps_i + eps_j) additions.
    """
    if n < 3:
        raise ValueError("need n >= 3")
    cube_shifts = dict(cube_shifts or {})
    pair_shifts = dict(pair_shifts or {})
    for s in cube_shifts:
        if not 2 <= s <= n:
            raise ValueError(f"cube shift index {s} out of range")
        if cube_shifts[s] < 0:
            raise ValueError("shift counts must be nonnegative")
    for (i, j) in pair_shifts:
        if i == j or not (2 <= i <= n and 2 <= j <= n):
            raise ValueError(f"pair shift index {(i, j)} out of range")
        if pair_shifts[(i, j)] < 0:
            raise ValueError("shift counts must be nonnegative")

    octant = positive_orthant(n)
    witnesses: list[TwoRootWitness] = []
    current = root_datum(octant, _shear_degree(n))

    def step(summand: Vector) -> None:
        nonlocal current
        moved = root_datum(octant, summand)
        w = two_root_witness(octant, current, moved)
        witnesses.append(w)
        current = w.produced

    # climb to the staircase root
    for i in range(2, n):
        step(vec_add(_unit(n, i, -1), _unit(n, i + 1, 2)))

    def add_pair(i: int, j: int) -> None:
        step(vec_add(_unit(n, i, -1), _unit(n, j, 2)))
        step(vec_add(_unit(n, i, 2), _unit(n, j, -1)))

    for (i, j), count in sorted(pair_shifts.items()):
        for _ in range(count):
            add_pair(i, j)
    for s, count in sorted(cube_shifts.items()):
        helper = 2 if s != 2 else 3
        for _ in range(count):
            add_pair(s, helper)
            step(vec_add(_unit(n, s, 2), _unit(n, helper, -1)))
    return current, tuple(witnesses)


def thm511_generators(n: int, u: Optional[Sequence[int]] = None) -> GeneratorPackage:
    """The affine letters plus one non-affine root (n + 2 letters), or the
    three-root collection in the plane."""
    if n < 2:
        raise ValueError("need n >= 2")
    if n == 2:
        quad = positive_orthant(2)
        if u is not None and tuple(u) != (-1, 2):
            raise ValueError("the planar package is fixed; do not pass u")
        roots = [(0, -1), (1, -1), (-1, 2)]
        letters = tuple(RootLetter(f"root_{i}", root_datum(quad, e))
                        for i, e in enumerate(roots, 1))
        conjugating = root_datum(quad, (-1, 2))
        moved = root_datum(quad, (0, -1))
        witness = two_root_witness(quad, conjugating, moved)
        return GeneratorPackage(cone=quad, construction="thm511",
                                parameters=(("n", 2),), letters=letters,
                                witnesses=(witness,))

    octant = positive_orthant(n)
    if u is None:
        u = _shear_degree(n)
    u = tuple(int(x) for x in u)
    if u[0] != -1 or any(x < 0 for x in u[1:]):
        raise ValueError("u must be a root with first coordinate -1")
    if sum(u[1:]) < 2:
        raise ValueError("u must be non-affine: coordinate sum at least 2")
    u_root = root_datum(octant, u)

    base = saff_generators(n)
    letters = base.letters + (RootLetter("non_affine", u_root),)

    witnesses: list[TwoRootWitness] = []
    for i in range(2, n + 1):
        if u[i - 1] < 1:
            continue
        # translation conjugate
        witnesses.append(two_root_witness(
            octant, u_root, root_datum(octant, _unit(n, i, -1))))
        # linear conjugates within the nonprincipal coordinates
        for j in range(2, n + 1):
            if j != i:
                moved = root_datum(octant, vec_add(_unit(n, i, -1), _unit(n, j, 1)))
                witnesses.append(two_root_witness(octant, u_root, moved))
        # the doubled step through the first coordinate
        moved = root_datum(octant, vec_add(_unit(n, i, -1), _unit(n, 1, 1)))
        witnesses.append(two_root_witness(octant, u_root, moved))
    return GeneratorPackage(cone=octant, construction="thm511",
                            parameters=(("n", n), ("u", u)), letters=letters,
                            witnesses=tuple(witnesses))


# ---------------------------------------------------------------------------
# Lie closure of matrix sets
# ---------------------------------------------------------------------------

def lie_closure(mats: Sequence[Sequence[Sequence]]) -> LieClosureResult:
    """Dimension and basis of the Lie algebra generated by square matrices.

    Brackets are added to an exact echelon basis until the span stops
    growing.  All inputs must be traceless.
    """
    if not mats:
        return LieClosureResult(dimension=0, basis=())
    n = len(mats[0])
    normalized = []
    for m in mats:
        rows = tuple(tuple(Fraction(x) for x in row) for row in m)
        if len(rows) != n or any(len(r) != n for r in rows):
            raise ValueError("matrices must be square of equal size")
        if sum(rows[i][i] for i in range(n)) != 0:
            raise ValueError("matrices must be traceless")
        normalized.append(rows)

    def vectorize(m):
        return [x for row in m for x in row]

    basis_mats: list = []
    echelon = EchelonBasis(n * n)
    queue = list(normalized)
    while queue:
        m = queue.pop(0)
        if echelon.add(vectorize(m)):
            for other in basis_mats:
                queue.append(_bracket(m, other))
                queue.append(_bracket(other, m))
            basis_mats.append(m)
    return LieClosureResult(dimension=echelon.dimension,
                            basis=tuple(tuple(tuple(r) for r in m) for m in basis_mats))


def _bracket(a, b):
    ab = mat_mul([list(r) for r in a], [list(r) for r in b])
    ba = mat_mul([list(r) for r in b], [list(r) for r in a])
    return tuple(tuple(x - y for x, y in zip(ra, rb)) for ra, rb in zip(ab, ba))


def thm513_generators(n: int, seed: int = 0, budget: int = 1000) -> GeneratorPackage:
    """Three one-parameter letters: a seeded nilpotent matrix flow completing
    the elementary shear to the full special linear algebra, one translation
    root and one quadratic root."""
    if n < 2:
        raise ValueError("need n >= 2")
    if n == 2:
        pkg = thm511_generators(2)
        return GeneratorPackage(cone=pkg.cone, construction="thm513",
                                parameters=(("n", 2), ("seed", seed)),
                                letters=pkg.letters, witnesses=pkg.witnesses)

    octant = positive_orthant(n)
    # the elementary shear matrix moving coordinate 2 into coordinate 1
    x = tuple(tuple(1 if (i, j) == (0, 1) else 0 for j in range(n)) for i in range(n))
    target = n * n - 1
    rng = random.Random(seed)
    y = None
    tried = 0
    for tried in range(1, budget + 1):
        # strictly triangular seed, conjugated by a coordinate permutation:
        # nilpotent by construction, sparse and integral
        lower = [[0] * n for _ in range(n)]
        filled = 0
        for i in range(n):
            for j in range(i):
                if rng.random() < 0.6:
                    lower[i][j] = rng.choice([-2, -1, 1, 2])
                    filled += 1
        if filled == 0:
            continue
        perm = list(range(n))
        rng.shuffle(perm)
        cand = [[0] * n for _ in range(n)]
        for i in range(n):
            for j in range(n):
                if lower[i][j]:
                    cand[perm[i]][perm[j]] = lower[i][j]
        if rng.random() < 0.5:
            cand = [list(col) for col in zip(*cand)]
        cand_t = tuple(tuple(row) for row in cand)
        if lie_closure([x, cand_t]).dimension == target:
            y = cand_t
            break
    if y is None:
        raise BudgetError(f"no nilpotent partner found in {budget} seeded candidates",
                          detail={"seed": seed, "tried": tried})

    u = _shear_degree(n)
    letters: tuple[LetterFamily, ...] = (
        MatrixGenerator("nilpotent_partner", y, certificate_dim=target),
        RootLetter("translation_2", root_datum(octant, _unit(n, 2, -1))),
        RootLetter("quadratic", root_datum(octant, u)),
    )
    # the shear root (-1, 1, 0, ...) produced from u and the translation
    witness = two_root_witness(octant, root_datum(octant, u),
                               root_datum(octant, _unit(n, 2, -1)))
    return GeneratorPackage(cone=octant, construction="thm513",
                            parameters=(("n", n), ("seed", seed), ("tried", tried)),
                            letters=letters, witnesses=(witness,))


# ---------------------------------------------------------------------------
# toric construction
# ---------------------------------------------------------------------------

def strict_support(cone: Cone, ray_index: int, budget: int = 10) -> Vector:
    """Functional vanishing on one ray and strictly positive on the others,
    found by an expanding box search (lexicographically first hit)."""
    require_pointed_full(cone, "strict_support")
    ray = cone.ray(ray_index)
    others = [r for k, r in enumerate(cone.rays, 1) if k != ray_index]
    cons = [(ray, "==", 0)] + [(r, ">=", 1) for r in others]
    for bound in range(1, budget + 1):
        hits = lattice_points_in(cons, bound)
        if hits:
            return hits[0]
    raise BudgetError(
        f"no strictly supporting functional for ray {ray_index} within box {budget}; "
        "this should not happen for a pointed full-dimensional cone")


def minus_one_form(ray: Sequence[int]) -> Vector:
    """Integer functional pairing to -1 with a primitive ray."""
    sol = bezout_solve(ray, -1)
    if sol is None:
        raise ValueError("ray must be primitive")
    return sol


def _minimal_stretch(base: Vector, offset: Vector, others: list[Vector],
                     floor: int = 2) -> tuple[int, Vector]:
    """Least r >= 1 with <rho, r*base + offset> >= floor for all rhos."""
    r = 1
    for rho in others:
        a = dot(rho, base)
        b = dot(rho, offset)
        if a <= 0:
            raise ValueError("base functional must be strictly positive on the rays")
        need = -(-(floor - b) // a)  # ceil
        r = max(r, need)
    return r, vec_add(tuple(r * x for x in base), offset)


def _face_root(cone: Cone, zero_ray: int, minus_ray: int) -> Vector:
    """Root with pairing 0 on one ray, -1 on an adjacent face ray, >= 2 on
    the rest; needs the pair to span a regular two-face."""
    r0 = cone.ray(zero_ray)
    r1 = cone.ray(minus_ray)
    breve = solve_integer([list(r0), list(r1)], (0, -1))
    if breve is None:
        raise WorkbenchError(
            f"ray pair {(zero_ray, minus_ray)} spans a non-saturated sublattice")
    others = [r for k, r in enumerate(cone.rays, 1) if k not in (zero_ray, minus_ray)]
    cons = [(r0, "==", 0), (r1, "==", 0)] + [(r, ">=", 1) for r in others]
    bar = None
    for bound in range(1, 11):
        hits = lattice_points_in(cons, bound)
        if hits:
            bar = hits[0]
            break
    if bar is None:
        raise WorkbenchError(f"ray pair {(zero_ray, minus_ray)} is not a two-face")
    if not others:
        return breve
    _, e = _minimal_stretch(bar, breve, others)
    return e


def _face_directions(cone: Cone, pair: tuple[int, int], count: int) -> list[Vector]:
    """Lex-first linearly independent primitive generators of the dual face
    of a two-face."""
    from .lattice import _dual_generators

    i, j = pair
    ri, rj = cone.ray(i), cone.ray(j)
    fence = [ri, tuple(-x for x in ri), rj, tuple(-x for x in rj)]
    others = [r for k, r in enumerate(cone.rays, 1) if k not in pair]
    gens = _dual_generators(fence + others, cone.ambient_rank)
    picked: list[Vector] = []
    echelon = EchelonBasis(cone.ambient_rank)
    for g in gens:
        if echelon.add(g):
            picked.append(g)
            if len(picked) == count:
                return picked
    raise WorkbenchError(f"dual face of {pair} has rank below {count}")


def _shift_into_facet(cone: Cone, pivot: int, m: Vector, deep: Vector) -> Vector:
    """Translate m by multiples of a facet-interior vector until it lies in
    the weight cone; the pivot pairing stays zero."""
    t = 0
    for k, r in enumerate(cone.rays, 1):
        if k == pivot:
            continue
        a = dot(r, deep)
        b = dot(r, m)
        if b < 0:
            if a <= 0:
                raise AssertionError("deep vector is not facet-interior")
            t = max(t, -(-(-b) // a))
    return vec_add(m, tuple(t * x for x in deep))


def _b1_from_quotient(cone: Cone, pivot: int, kernel_gens: Sequence[Vector]
                      ) -> tuple[Optional[tuple[Vector, ...]], Optional[str]]:
    """Kernel-facet coset generators for the extra field generator.

    Computes the quotient of the facet lattice by the generator lattice; a
    cyclic quotient gives one certified coset monomial, otherwise one
    monomial per invariant factor with the certificate downgraded.
    """
    from .exactla import smith_normal_form, solve_rational, transpose

    facet_basis = kernel_lattice_basis([list(cone.ray(pivot))],
                                       ncols=cone.ambient_rank)
    coords = []
    cols = transpose([list(b) for b in facet_basis])
    for g in kernel_gens:
        sol = solve_rational(cols, g)
        coords.append([int(x) for x in sol])
    snf = smith_normal_form(coords)
    factors = [(i, d) for i, d in enumerate(snf.diagonal) if d > 1]
    if not factors:
        return None, None
    deep = (0,) * cone.ambient_rank
    for g in kernel_gens:
        deep = vec_add(deep, g)
    reps = []
    for i, _ in factors:
        coset_coords = snf.right_inv[i]
        m = (0,) * cone.ambient_rank
        for c, b in zip(coset_coords, facet_basis):
            m = vec_add(m, tuple(c * x for x in b))
        reps.append(_shift_into_facet(cone, pivot, m, deep))
    certificate = "cyclic" if len(factors) == 1 else "assumed-primitive-element"
    return tuple(reps), certificate


def toric_generators(cone: Cone, tangent_samples: int = 5,
                     seed: int = 0) -> GeneratorPackage:
    """Per-ray root systems certifying finite generation on a toric cone
    that is smooth in codimension two.

    For each of rank-many independent rays: a deep root on the ray, a ladder
    of roots along one adjacent two-face, a partner root on a second
    two-face, and the kernel monoid their sums generate.  First-round
    production witnesses are attached and checked at the derivation level.
    """
    require_pointed_full(cone, "toric_generators")
    n = cone.ambient_rank
    if n < 3:
        raise ValueError("need a cone of rank at least 3")
    if not is_smooth_in_codim2(cone):
        raise WorkbenchError("cone is not smooth in codimension 2")

    faces = two_faces(cone)

    # lex-first linearly independent rays
    chosen: list[int] = []
    echelon = EchelonBasis(n)
    for k, r in enumerate(cone.rays, 1):
        if echelon.add(r):
            chosen.append(k)
    if len(chosen) < n:
        raise AssertionError("full-dimensional cone must contain n independent rays")

    letters: list[LetterFamily] = []
    specs: list[DerivationSpecEntry] = []
    witnesses: list[TwoRootWitness] = []

    for pivot in chosen:
        adjacent = [p for p in faces if pivot in p]
        if len(adjacent) < 2:
            raise WorkbenchError(f"ray {pivot} lies on fewer than two two-faces")
        first, second = adjacent[0], adjacent[1]
        ray_a = first[0] if first[1] == pivot else first[1]
        ray_b = second[0] if second[1] == pivot else second[1]

        bar = strict_support(cone, pivot)
        breve = minus_one_form(cone.ray(pivot))
        others = [r for k, r in enumerate(cone.rays, 1) if k != pivot]
        r_min, e1 = _minimal_stretch(bar, breve, others)
        e1_root = root_datum(cone, e1)

        e2 = _face_root(cone, pivot, ray_a)
        e3 = _face_root(cone, pivot, ray_b)
        e2_root = root_datum(cone, e2)
        e3_root = root_datum(cone, e3)

        etas = _face_directions(cone, (min(pivot, ray_a), max(pivot, ray_a)), n - 2)
        ladder = [e2] + [vec_add(e2, eta) for eta in etas]
        ladder_roots = [root_datum(cone, u) for u in ladder]
        kernel_gens = [vec_add(u, e3) for u in ladder]
        if rank(kernel_gens) != n - 1:
            raise AssertionError("kernel generators must be linearly independent")

        letters.append(RootLetter(f"deep_{pivot}", e1_root))
        for idx, u_root in enumerate(ladder_roots, 1):
            letters.append(RootLetter(f"ladder_{pivot}_{idx}", u_root))
        letters.append(RootLetter(f"partner_{pivot}", e3_root))

        specs.append(DerivationSpecEntry(
            component=certified_lnd(cone, e1),
            kernel_generators=tuple(kernel_gens)))

        # first production round: conjugate each ladder root into the pivot
        # facet, then add the partner
        for u_root in ladder_roots:
            w1 = two_root_witness(cone, e1_root, u_root)
            witnesses.append(w1)
            w2 = two_root_witness(cone, w1.produced, e3_root)
            witnesses.append(w2)

    condition = compute_condition(cone, specs)
    if condition.tag == "gamma":
        reps, certificate = _b1_from_quotient(
            cone, chosen[0], specs[0].kernel_generators)
        specs[0] = DerivationSpecEntry(
            component=specs[0].component,
            kernel_generators=specs[0].kernel_generators,
            b1_exponents=reps, b1_certificate=certificate)

    base = enumerate_roots(cone, 3)
    report = _torus_tangent_report(cone, tuple(base), tangent_samples, seed)

    return GeneratorPackage(cone=cone, construction="toric",
                            parameters=(("rays", tuple(chosen)), ("seed", seed)),
                            letters=tuple(letters), derivation_specs=tuple(specs),
                            condition=condition, witnesses=tuple(witnesses),
                            base_roots=tuple(base), tangent_report=report)


def _torus_tangent_report(cone: Cone, roots: Sequence[RootDatum],
                          samples: int, seed: int) -> TangentReport:
    """Check that the root vector fields span the tangent space at sampled
    dense-orbit points.

    At a point where every character is nonzero, the field of a root on ray
    rho takes the value (character at the root degree) * rho, so spanning is
    a rank computation with exact nonzero coefficients.
    """
    rng = random.Random(seed)
    n = cone.ambient_rank
    ok = True
    for _ in range(samples):
        coords = [Fraction(rng.randint(1, 7), rng.randint(1, 5))
                  * rng.choice([1, -1]) for _ in range(n)]
        vectors = []
        for rd in roots:
            char = Fraction(1)
            for x, p in zip(coords, rd.e):
                if p != 0:
                    char *= Fraction(x) ** p
            vectors.append(tuple(char * x for x in cone.ray(rd.ray_index)))
        if rank(vectors) != n:
            ok = False
    return TangentReport(samples=samples, all_spanned=ok)
