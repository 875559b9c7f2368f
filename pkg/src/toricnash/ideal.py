"""Lattice kernels, binomial Groebner bases, and the toric ideal pipeline.

The defining ideal of the surface is the lattice ideal of the kernel of the
generator matrix.  It is computed the standard way: take the ideal of a
kernel basis, then saturate with respect to every variable.  Everything in
sight is a pure difference of two monomials, and S-polynomials and
reductions of such differences stay differences, so the Buchberger loop
below never touches a general polynomial.

Saturation by one variable recomputes the basis under a graded reverse-lex
order that ranks the variable last and then strips the common variable
power from every element.  That trick requires the ideal to be homogeneous
for the (strictly positive) degree weights attached to the order, which
holds for every ideal this library builds: the weights come from a vector
that pairs strictly positively with all semigroup generators.
"""
from __future__ import annotations

import heapq
import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterable, List, Optional, Sequence

from .algebra import (
    Binomial,
    Polynomial,
    TermOrder,
    binomial_from_vector,
    exp_add,
    exp_divides,
    exp_lcm,
    exp_sub,
    lex_order,
    oriented_binomial,
)
from .errors import InvariantViolation, NotSameEdge
from .semigroup import ValidatedSemigroup, primitive

# --- integer kernel --------------------------------------------------------


@dataclass(frozen=True)
class LatticeBasis:
    """Integer basis of the relation lattice of the generator matrix."""

    vectors: tuple

    def __len__(self) -> int:
        return len(self.vectors)


def _row_reduce_column(rows: List[List[int]], pivot_row: int, col: int) -> bool:
    """Clear column col below pivot_row with unimodular row operations.

    Returns True when a pivot was found (and moved to pivot_row).
    """
    piv = None
    for i in range(pivot_row, len(rows)):
        if rows[i][col] != 0:
            piv = i
            break
    if piv is None:
        return False
    rows[pivot_row], rows[piv] = rows[piv], rows[pivot_row]
    for i in range(pivot_row + 1, len(rows)):
        while rows[i][col] != 0:
            a, b = rows[pivot_row][col], rows[i][col]
            if abs(a) > abs(b):
                rows[pivot_row], rows[i] = rows[i], rows[pivot_row]
                continue
            q = b // a
            rows[i] = [x - q * y for x, y in zip(rows[i], rows[pivot_row])]
    return True


def _lll_reduce(vectors: Sequence[Sequence[int]]) -> list:
    """Size-reduce an integer lattice basis (textbook LLL, delta = 3/4).

    Plain elimination leaves kernel vectors with needlessly large entries,
    which makes every basis computation downstream explode; short vectors
    keep them cheap.  Dimensions here are tiny, so the quadratic
    re-orthogonalization below costs nothing.
    """
    b = [list(v) for v in vectors]
    n = len(b)
    if n <= 1:
        return [tuple(v) for v in b]

    def fdot(u, v):
        return sum(Fraction(x) * y for x, y in zip(u, v))

    def gso():
        gs, mu, norms = [], [[Fraction(0)] * n for _ in range(n)], []
        for i in range(n):
            w = [Fraction(x) for x in b[i]]
            for j in range(i):
                mu[i][j] = fdot(b[i], gs[j]) / norms[j]
                w = [x - mu[i][j] * y for x, y in zip(w, gs[j])]
            gs.append(w)
            norms.append(fdot(w, w))
        return gs, mu, norms

    delta = Fraction(3, 4)
    gs, mu, norms = gso()
    k = 1
    while k < n:
        for j in range(k - 1, -1, -1):
            q = round(mu[k][j])
            if q:
                b[k] = [x - q * y for x, y in zip(b[k], b[j])]
                gs, mu, norms = gso()
        if norms[k] >= (delta - mu[k][k - 1] ** 2) * norms[k - 1]:
            k += 1
        else:
            b[k], b[k - 1] = b[k - 1], b[k]
            gs, mu, norms = gso()
            k = max(k - 1, 1)
    return [tuple(v) for v in b]


def lattice_kernel(vs: ValidatedSemigroup) -> LatticeBasis:
    """Basis of all integer vectors v with sum(v_i * generator_i) == 0.

    Row-reduces the generator columns of [generators | identity]; rows whose
    generator part vanishes carry the kernel vectors in the identity part.
    The result is LLL-reduced so the binomials it seeds stay small.
    """
    pts = vs.gens.points
    s = len(pts)
    rows = [[p.u, p.v] + [1 if j == i else 0 for j in range(s)]
            for i, p in enumerate(pts)]
    pivot = 0
    for col in range(2):
        if _row_reduce_column(rows, pivot, col):
            pivot += 1
    basis = []
    for row in _lll_reduce([row[2:] for row in rows[pivot:]]):
        v = list(row)
        g = 0
        for x in v:
            g = gcd(g, abs(x))
        v = [x // g for x in v]
        for x in v:
            if x != 0:
                if x < 0:
                    v = [-y for y in v]
                break
        basis.append(tuple(v))
    basis.sort()
    for v in basis:
        acc = (sum(c * p.u for c, p in zip(v, pts)),
               sum(c * p.v for c, p in zip(v, pts)))
        if acc != (0, 0):
            raise InvariantViolation("kernel vector fails the relation check")
    if len(basis) != s - 2:
        raise InvariantViolation("kernel rank is not s - 2")
    return LatticeBasis(tuple(basis))


# --- binomial Groebner engine -----------------------------------------------


@dataclass(frozen=True)
class GroebnerBasis:
    """A reduced Groebner basis of a binomial ideal under a fixed order."""

    order: TermOrder
    elements: tuple

    @property
    def nvars(self) -> int:
        return self.order.nvars

    def __len__(self) -> int:
        return len(self.elements)


def _monomial_nf(exp, elements) -> tuple:
    """Normal form of a single monomial exponent against binomials.

    Rewrites by the first applicable element until irreducible; each step
    strictly decreases the monomial, so this terminates.
    """
    changed = True
    while changed:
        changed = False
        for b in elements:
            if exp_divides(b.plus, exp):
                exp = exp_add(exp_sub(exp, b.plus), b.minus)
                changed = True
                break
    return exp


def _reduce_binomial(u, v, elements, order) -> Optional[Binomial]:
    """Remainder of x^u - x^v on division by binomials; None when zero."""
    u = _monomial_nf(u, elements)
    v = _monomial_nf(v, elements)
    return oriented_binomial(u, v, order)


def _autoreduce(elements: List[Binomial], order: TermOrder) -> List[Binomial]:
    """Minimize leading terms, then reduce every trailing term."""
    elements = sorted(set(elements), key=lambda b: order.key(b.plus))
    kept: List[Binomial] = []
    for b in elements:
        if any(exp_divides(k.plus, b.plus) for k in kept):
            continue
        kept.append(b)
    out: List[Binomial] = list(kept)
    for i, b in enumerate(out):
        minus = _monomial_nf(b.minus, out)
        if minus != b.minus:
            nb = oriented_binomial(b.plus, minus, order)
            if nb is None:
                raise InvariantViolation("basis element reduced to zero")
            out[i] = nb
    out.sort(key=lambda b: order.key(b.plus))
    return out


def buchberger(gens: Iterable[Binomial], order: TermOrder) -> GroebnerBasis:
    """Reduced Groebner basis of the binomial ideal spanned by gens.

    Pair selection follows the normal strategy (smallest lcm of leading
    terms first); pairs with coprime leading terms are skipped.
    """
    basis: List[Binomial] = []
    seen = set()
    for b in gens:
        ob = oriented_binomial(b.plus, b.minus, order)
        if ob is not None and (ob.plus, ob.minus) not in seen:
            seen.add((ob.plus, ob.minus))
            basis.append(ob)

    heap: list = []
    counter = itertools.count()

    def push_pairs(j: int) -> None:
        for i in range(j):
            lcm = exp_lcm(basis[i].plus, basis[j].plus)
            heapq.heappush(heap, (order.key(lcm), next(counter), i, j))

    for j in range(len(basis)):
        push_pairs(j)

    while heap:
        _, _, i, j = heapq.heappop(heap)
        f, g = basis[i], basis[j]
        if exp_add(f.plus, g.plus) == exp_lcm(f.plus, g.plus):
            continue  # coprime leading terms: S-polynomial reduces to zero
        lcm = exp_lcm(f.plus, g.plus)
        u = exp_add(exp_sub(lcm, f.plus), f.minus)
        v = exp_add(exp_sub(lcm, g.plus), g.minus)
        rem = _reduce_binomial(u, v, basis, order)
        if rem is not None:
            basis.append(rem)
            push_pairs(len(basis) - 1)

    return GroebnerBasis(order, tuple(_autoreduce(basis, order)))


def normal_form(p: Polynomial, gb: GroebnerBasis) -> Polynomial:
    """Complete multivariate division of p by the basis.

    The result contains no term divisible by a leading term; it is the
    unique normal form since the basis is a Groebner basis.
    """
    order = gb.order
    elements = gb.elements
    work = dict(p.terms)
    out: dict = {}
    while work:
        exp = max(work, key=order.key)
        coeff = work.pop(exp)
        reducer = None
        for b in elements:
            if exp_divides(b.plus, exp):
                reducer = b
                break
        if reducer is None:
            s = out.get(exp, 0) + coeff
            if s:
                out[exp] = s
            else:
                out.pop(exp, None)
            continue
        new = exp_add(exp_sub(exp, reducer.plus), reducer.minus)
        s = work.get(new, 0) + coeff
        if s:
            work[new] = s
        else:
            work.pop(new, None)
    return Polynomial(out)


def ideal_member(p: Polynomial, gb: GroebnerBasis) -> bool:
    return normal_form(p, gb).is_zero()


def same_ideal(fam_a: Sequence[Binomial], fam_b: Sequence[Binomial],
               order: TermOrder) -> bool:
    """Ideal equality through reduced-basis equality under one order."""
    ga = buchberger(fam_a, order)
    gb = buchberger(fam_b, order)
    return ga.elements == gb.elements


# --- saturation --------------------------------------------------------------


def _saturate_elements_once(elements: Sequence[Binomial], var: int, nvars: int,
                            weights: Optional[Sequence[int]]) -> tuple:
    """One variable saturation step on a raw binomial list.

    Returns (new elements, True when any power was stripped).  The output
    is a basis of (ideal : var^infinity) under the step's own order.
    """
    ranking = tuple(j for j in range(nvars) if j != var) + (var,)
    sat_order = TermOrder("degrevlex", ranking,
                          None if weights is None else tuple(weights))
    lowered = buchberger(elements, sat_order)
    stripped = []
    changed = False
    for b in lowered.elements:
        k = min(b.plus[var], b.minus[var])
        if k:
            plus = b.plus[:var] + (b.plus[var] - k,) + b.plus[var + 1:]
            minus = b.minus[:var] + (b.minus[var] - k,) + b.minus[var + 1:]
            b = Binomial(plus, minus)
            changed = True
        stripped.append(b)
    return stripped, changed


def _saturate_elements(elements: Sequence[Binomial], nvars: int,
                       weights: Optional[Sequence[int]]) -> list:
    """Generators of (ideal : (product of all variables)^infinity).

    Sweeps the variables until a full pass strips nothing.  All work stays
    in the cheap graded reverse-lex orders; callers convert to their target
    order once at the end.
    """
    current = list(elements)
    while True:
        changed = False
        for var in range(nvars):
            current, c = _saturate_elements_once(current, var, nvars, weights)
            changed = changed or c
        if not changed:
            return current


def saturate_variable(gb: GroebnerBasis, var: int,
                      weights: Optional[Sequence[int]] = None) -> GroebnerBasis:
    """Basis of (I : var^infinity), returned under the original order.

    Recomputes the basis under a graded reverse-lex order ranking var last,
    divides every element by the common var power of its two terms, and
    reduces again.  Requires I homogeneous for the given strictly positive
    weights (total degree when weights is None).
    """
    stripped, _ = _saturate_elements_once(gb.elements, var, gb.nvars, weights)
    return buchberger(stripped, gb.order)


def saturate_all(gb: GroebnerBasis,
                 weights: Optional[Sequence[int]] = None) -> GroebnerBasis:
    """Saturation with respect to the product of all variables."""
    return buchberger(_saturate_elements(gb.elements, gb.nvars, weights),
                      gb.order)


# --- minimal generators and the full pipeline --------------------------------


def minimal_generators(gb: GroebnerBasis) -> tuple:
    """Irredundant generating subset of the reduced basis.

    Prunes in increasing leading-term order; an element is dropped when it
    lies in the ideal of the remaining ones (fresh basis each test).  For
    these positively graded ideals any irredundant subset has the minimal
    possible cardinality.  Membership is order-independent, so the interior
    tests run under degrevlex, which is much cheaper than lex here.
    """
    test_order = TermOrder("degrevlex", tuple(range(gb.nvars)))
    kept = sorted(gb.elements, key=lambda b: gb.order.key(b.plus))
    for b in list(kept):
        others = [h for h in kept if h is not b]
        if not others:
            continue
        sub = buchberger(others, test_order)
        if ideal_member(Polynomial.from_binomial(b), sub):
            kept.remove(b)
    return tuple(kept)


@dataclass(frozen=True)
class ToricIdeal:
    """The defining binomial ideal of a validated semigroup.

    gb is the reduced Groebner basis under the requested order and
    minimal_gens an irredundant generating subset of it (s_min elements).
    """

    semigroup: ValidatedSemigroup
    gb: GroebnerBasis
    minimal_gens: tuple

    @property
    def s_min(self) -> int:
        return len(self.minimal_gens)

    @property
    def order(self) -> TermOrder:
        return self.gb.order


def _check_no_unit_sides(elements: Iterable[Binomial]) -> None:
    for b in elements:
        for side in (b.plus, b.minus):
            if sum(side) == 1:
                raise InvariantViolation(
                    "relation with a bare-variable side; generators were "
                    "not minimal")


def toric_ideal(vs: ValidatedSemigroup,
                order: Optional[TermOrder] = None) -> ToricIdeal:
    """Defining ideal of the toric surface of vs under the given order."""
    order = order or lex_order(vs.N)
    if order.nvars != vs.N:
        raise InvariantViolation("term order has the wrong variable count")
    kernel = lattice_kernel(vs)
    gens = []
    for v in kernel.vectors:
        b = binomial_from_vector(v, order)
        if b is not None:
            gens.append(b)
    saturated = _saturate_elements(gens, vs.N, vs.degree_weights)
    gb = buchberger(saturated, order)
    mingens = minimal_generators(gb)
    _check_no_unit_sides(gb.elements)
    # mingens must generate the same ideal as the full basis
    regenerated = buchberger(mingens, order)
    if regenerated.elements != gb.elements:
        raise InvariantViolation("pruned generators span a smaller ideal")
    return ToricIdeal(vs, gb, mingens)


def edge_relation(vs: ValidatedSemigroup, block: str, i: int, j: int,
                  order: Optional[TermOrder] = None,
                  ideal: Optional[ToricIdeal] = None) -> Binomial:
    """Minimal pure relation between two generators on one edge.

    block is "edge1" or "edge2"; i and j index into that block.  With
    multiples k_i, k_j of the primitive ray the relation is
    var_i^(k_j/g) - var_j^(k_i/g), g = gcd(k_i, k_j).  Membership is
    checked against the defining map directly, and against ideal when one
    is supplied.
    """
    if block == "edge1":
        idx = list(vs.x_indices)
        ray = vs.classification.ray1
    elif block == "edge2":
        idx = list(vs.z_indices)
        ray = vs.classification.ray2
    else:
        raise NotSameEdge(f"unknown edge block {block!r}")
    if i == j or not (0 <= i < len(idx)) or not (0 <= j < len(idx)):
        raise NotSameEdge(f"indices {i}, {j} do not select two distinct "
                          f"generators of {block}")
    order = order or lex_order(vs.N)
    gi, gj = vs.gens.points[idx[i]], vs.gens.points[idx[j]]
    ki = gi.u // ray.u if ray.u else gi.v // ray.v
    kj = gj.u // ray.u if ray.u else gj.v // ray.v
    g = gcd(ki, kj)
    a = [0] * vs.N
    b = [0] * vs.N
    a[idx[i]] = kj // g
    b[idx[j]] = ki // g
    rel = oriented_binomial(tuple(a), tuple(b), order)
    if rel is None:
        raise NotSameEdge("generators coincide")
    diff = rel.difference()
    pts = vs.gens.points
    acc = (sum(c * p.u for c, p in zip(diff, pts)),
           sum(c * p.v for c, p in zip(diff, pts)))
    if acc != (0, 0):
        raise InvariantViolation("edge relation fails the defining map")
    if ideal is not None and not ideal_member(Polynomial.from_binomial(rel),
                                              ideal.gb):
        raise InvariantViolation("edge relation not in the computed ideal")
    return rel
