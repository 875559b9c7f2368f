"""Validation and classification of planar affine semigroup generators.

A usable generator set spans a strictly convex two-dimensional cone, spans
the full integer lattice, and is minimal: no generator is a nonnegative
integer combination of the others.  After validation the generators are
reordered into the canonical block layout

    edge-1 block (x) | interior block (y) | edge-2 block (z)

with edge blocks sorted by increasing squared norm and the interior block
sorted lexicographically, so downstream output is reproducible.
"""
from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import NamedTuple, Sequence

from .errors import (
    ConeNotStrictlyConvex,
    ConeNotTwoDimensional,
    EmptyEdge,
    InvalidGeneratorSet,
    LatticeNotFull,
    NotMinimal,
    TooFewGenerators,
    UnboundedSearch,
)


class LatticePoint(NamedTuple):
    u: int
    v: int


def cross(a: LatticePoint, b: LatticePoint) -> int:
    return a.u * b.v - a.v * b.u


def dot(a: LatticePoint, b: LatticePoint) -> int:
    return a.u * b.u + a.v * b.v


def primitive(p: LatticePoint) -> LatticePoint:
    g = gcd(p.u, p.v)
    return LatticePoint(p.u // g, p.v // g)


def norm2(p: LatticePoint) -> int:
    return p.u * p.u + p.v * p.v


@dataclass(frozen=True)
class GeneratorSet:
    """An ordered list of pairwise distinct nonzero lattice points."""

    points: tuple

    def __post_init__(self):
        if len(set(self.points)) != len(self.points):
            raise InvalidGeneratorSet("duplicate generator")
        for p in self.points:
            if p == (0, 0):
                raise InvalidGeneratorSet("the origin is not a generator")

    def __len__(self) -> int:
        return len(self.points)


def generator_set(pairs: Sequence[Sequence[int]]) -> GeneratorSet:
    pts = []
    for p in pairs:
        try:
            u, v = p
        except (TypeError, ValueError):
            raise InvalidGeneratorSet(f"not a coordinate pair: {p!r}")
        if not isinstance(u, int) or not isinstance(v, int) \
                or isinstance(u, bool) or isinstance(v, bool):
            raise InvalidGeneratorSet(f"non-integer coordinates: {p!r}")
        pts.append(LatticePoint(u, v))
    return GeneratorSet(tuple(pts))


@dataclass(frozen=True)
class ConeClassification:
    """Edge/interior partition of a generator set.

    ray1 and ray2 are the primitive extreme-ray directions with ray1
    preceding ray2 counterclockwise.  Index lists refer to the generator
    set the classification was computed from.
    """

    ray1: LatticePoint
    ray2: LatticePoint
    edge1_indices: tuple
    interior_indices: tuple
    edge2_indices: tuple

    @property
    def l(self) -> int:
        return len(self.edge1_indices)

    @property
    def m(self) -> int:
        return len(self.interior_indices)

    @property
    def n(self) -> int:
        return len(self.edge2_indices)


def compute_cone_rays(gens: GeneratorSet) -> tuple:
    """Primitive extreme rays of the cone, counterclockwise order.

    Raises ConeNotTwoDimensional when all generators are collinear and
    ConeNotStrictlyConvex when the cone contains a line (angular width of
    pi or more).
    """
    pts = gens.points
    if not pts:
        raise InvalidGeneratorSet("empty generator set")
    dirs = []
    for p in pts:
        d = primitive(p)
        if d not in dirs:
            dirs.append(d)
    if all(cross(dirs[0], d) == 0 for d in dirs):
        raise ConeNotTwoDimensional(
            "all generators lie on one line through the origin")
    # Scan ordered direction pairs for a counterclockwise wedge of angular
    # width below pi containing every generator.
    for d1 in dirs:
        for d2 in dirs:
            if cross(d1, d2) <= 0:
                continue
            if all(cross(d1, p) >= 0 and cross(p, d2) >= 0 for p in pts):
                return d1, d2
    raise ConeNotStrictlyConvex("the cone spanned contains a line")


def classify_generators(gens: GeneratorSet) -> ConeClassification:
    """Assign each generator to edge 1, the interior, or edge 2."""
    ray1, ray2 = compute_cone_rays(gens)
    edge1, interior, edge2 = [], [], []
    for i, p in enumerate(gens.points):
        if cross(ray1, p) == 0:
            edge1.append(i)
        elif cross(p, ray2) == 0:
            edge2.append(i)
        else:
            interior.append(i)
    return ConeClassification(ray1, ray2, tuple(edge1), tuple(interior),
                              tuple(edge2))


def check_generates_Z2(gens: GeneratorSet) -> bool:
    """True when the generators span the full lattice: the gcd of all 2x2
    minors of the generator matrix is 1."""
    pts = gens.points
    g = 0
    for i in range(len(pts)):
        for j in range(i + 1, len(pts)):
            g = gcd(g, abs(cross(pts[i], pts[j])))
            if g == 1:
                return True
    return g == 1


def interior_dual_vector(gens: GeneratorSet) -> LatticePoint:
    """An integer vector w with w . g > 0 for every generator.

    For a strictly convex two-dimensional cone the sum of the two inward
    edge normals works; for generators on a single ray the primitive
    direction itself works.  Raises UnboundedSearch when no such w exists.
    """
    pts = gens.points
    dirs = {primitive(p) for p in pts}
    if all(cross(next(iter(dirs)), d) == 0 for d in dirs):
        d = next(iter(dirs))
        if all(dot(d, p) > 0 for p in pts):
            return d
        if all(dot(d, p) < 0 for p in pts):
            return LatticePoint(-d.u, -d.v)
        raise UnboundedSearch("generators point in opposite directions")
    try:
        ray1, ray2 = compute_cone_rays(gens)
    except ConeNotStrictlyConvex:
        raise UnboundedSearch("cone is not strictly convex")
    # inward normals: rotate ray1 counterclockwise, ray2 clockwise
    w = LatticePoint(-ray1.v + ray2.v, ray1.u - ray2.u)
    assert all(dot(w, p) > 0 for p in pts)
    return w


def semigroup_membership(p, gens: GeneratorSet) -> bool:
    """Decide p in the semigroup of gens by bounded exhaustive search.

    A strictly positive dual vector w caps every coefficient at
    w.p // w.gen, so the search tree is finite.
    """
    p = LatticePoint(*p)
    w = interior_dual_vector(gens)
    pts = gens.points
    wg = [dot(w, g) for g in pts]

    def rec(k: int, target: LatticePoint) -> bool:
        if target == (0, 0):
            return True
        if k == len(pts):
            return False
        wt = dot(w, target)
        if wt < 0:
            return False
        g = pts[k]
        for lam in range(wt // wg[k], -1, -1):
            if rec(k + 1, LatticePoint(target.u - lam * g.u,
                                       target.v - lam * g.v)):
                return True
        return False

    return rec(0, p)


@dataclass(frozen=True)
class ValidatedSemigroup:
    """A validated generator set in canonical block order.

    permutation maps canonical positions to input positions:
    gens.points[i] == original.points[permutation[i]].
    degree_weights are the pairings w . generator for the interior dual
    vector w; every binomial relation is homogeneous for them.
    """

    gens: GeneratorSet
    classification: ConeClassification
    permutation: tuple
    dual_vector: LatticePoint
    degree_weights: tuple

    @property
    def N(self) -> int:
        return len(self.gens.points)

    @property
    def r(self) -> int:
        return self.N - 2

    @property
    def l(self) -> int:
        return self.classification.l

    @property
    def m(self) -> int:
        return self.classification.m

    @property
    def n(self) -> int:
        return self.classification.n

    @property
    def x_indices(self) -> range:
        return range(0, self.l)

    @property
    def y_indices(self) -> range:
        return range(self.l, self.l + self.m)

    @property
    def z_indices(self) -> range:
        return range(self.l + self.m, self.N)

    def block_of(self, var: int) -> str:
        if var < self.l:
            return "x"
        if var < self.l + self.m:
            return "y"
        return "z"


def validate(gens: GeneratorSet) -> ValidatedSemigroup:
    """Check every standing hypothesis and canonicalize the generator order.

    Raising order: cone shape first (so a single generator reports
    ConeNotTwoDimensional, not a count problem), then lattice fullness,
    generator count, and minimality.
    """
    cls = classify_generators(gens)
    if cls.l == 0 or cls.n == 0:
        raise EmptyEdge("an edge of the cone carries no generator")
    if not check_generates_Z2(gens):
        raise LatticeNotFull("generators span a proper sublattice")
    if len(gens) < 3:
        raise TooFewGenerators(
            f"need at least 3 generators, got {len(gens)}")
    pts = gens.points
    for i, p in enumerate(pts):
        rest = GeneratorSet(tuple(q for j, q in enumerate(pts) if j != i))
        if semigroup_membership(p, rest):
            raise NotMinimal(i, p)

    def edge_key(i):
        return norm2(pts[i])

    perm = (tuple(sorted(cls.edge1_indices, key=edge_key))
            + tuple(sorted(cls.interior_indices, key=lambda i: pts[i]))
            + tuple(sorted(cls.edge2_indices, key=edge_key)))
    canonical = GeneratorSet(tuple(pts[i] for i in perm))
    l, m = cls.l, cls.m
    ordered = ConeClassification(
        cls.ray1, cls.ray2,
        tuple(range(l)), tuple(range(l, l + m)),
        tuple(range(l + m, len(pts))))
    w = interior_dual_vector(canonical)
    weights = tuple(dot(w, p) for p in canonical.points)
    return ValidatedSemigroup(canonical, ordered, perm, w, weights)
