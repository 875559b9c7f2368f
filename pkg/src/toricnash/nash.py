"""Jacobian minors, orbit zero loci, the singular locus, and the dichotomy.

For a toric surface in N variables with defining binomials f_1,...,f_s and
codimension r = N - 2, every r x r minor of the Jacobian of r chosen
binomials is, modulo the defining ideal, an integer times a single
monomial.  The integer is the corresponding minor of the exponent
difference matrix and the monomial has exponent

    (sum of leading exponents over the chosen rows) - (1,...,1) + indicator(K)

where K is the pair of deleted columns.  When that exponent has a negative
entry the congruence class is still a monomial class; the symbolic
determinant reduced to normal form recovers a valid representative, and
that fallback is what minor_monomial_formula does.

Zero loci of the resulting monomial ideals and the singular locus itself
are unions of torus-orbit closures; an OrbitSet records which of the two
one-dimensional closures are present (the origin always is, the dense
torus never).
"""
from __future__ import annotations

import itertools
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence

from .algebra import Binomial, Monomial, Polynomial, derivative, determinant
from .errors import (
    EmptyIdeal,
    InvariantViolation,
    NonMonomialResidue,
    NotARelation,
    RankDeficient,
    SigmaDimensionError,
    TheoremViolation,
    TorusSingular,
    WitnessNotFound,
)
from .ideal import ToricIdeal, normal_form
from .semigroup import ValidatedSemigroup

# --- exact integer linear algebra -------------------------------------------


def int_det(matrix: Sequence[Sequence[int]]) -> int:
    """Determinant by fraction-free (Bareiss) elimination."""
    n = len(matrix)
    if n == 0:
        return 1
    m = [list(row) for row in matrix]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k] != 0:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
            m[i][k] = 0
        prev = m[k][k]
    return sign * m[-1][-1]


def int_rank(rows: Sequence[Sequence[int]]) -> int:
    """Rank over the rationals by exact Gaussian elimination."""
    m = [[Fraction(x) for x in row] for row in rows]
    if not m:
        return 0
    ncols = len(m[0])
    rank = 0
    for col in range(ncols):
        piv = next((i for i in range(rank, len(m)) if m[i][col]), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        inv = 1 / m[rank][col]
        m[rank] = [x * inv for x in m[rank]]
        for i in range(len(m)):
            if i != rank and m[i][col]:
                f = m[i][col]
                m[i] = [x - f * y for x, y in zip(m[i], m[rank])]
        rank += 1
        if rank == len(m):
            break
    return rank


# --- exponent difference matrix ----------------------------------------------


@dataclass(frozen=True)
class DifferenceMatrix:
    """Rows are the exponent differences (plus - minus) of a binomial family."""

    rows: tuple

    def __len__(self) -> int:
        return len(self.rows)


def difference_matrix(family: Sequence[Binomial],
                      vs: ValidatedSemigroup) -> DifferenceMatrix:
    """Difference rows of family, verified against the defining map of vs."""
    pts = vs.gens.points
    rows = []
    for b in family:
        row = b.difference()
        acc = (sum(c * p.u for c, p in zip(row, pts)),
               sum(c * p.v for c, p in zip(row, pts)))
        if acc != (0, 0):
            raise NotARelation(
                f"binomial difference {row} is not a relation")
        rows.append(row)
    return DifferenceMatrix(tuple(rows))


def rank(family: Sequence[Binomial]) -> int:
    """Generic Jacobian rank of the family: the rank of its difference rows."""
    return int_rank([b.difference() for b in family])


# --- minors -------------------------------------------------------------------


def _normalize_selection(selection, nvars: int) -> tuple:
    a, b = sorted(selection)
    if a == b or not (0 <= a < nvars) or not (0 <= b < nvars):
        raise ValueError(f"column selection {selection} invalid for "
                         f"{nvars} variables")
    return (a, b)


def minor_symbolic(family_subset: Sequence[Binomial], selection,
                   ideal: ToricIdeal) -> Polynomial:
    """Jacobian minor with the two selected columns deleted, reduced.

    The reduced result must be zero or a single term; anything else means
    the inputs do not define a toric surface and is raised loudly.
    """
    vs = ideal.semigroup
    sel = _normalize_selection(selection, vs.N)
    cols = [i for i in range(vs.N) if i not in sel]
    matrix = [[derivative(f, i) for i in cols] for f in family_subset]
    det = determinant(matrix)
    reduced = normal_form(det, ideal.gb)
    if len(reduced) > 1:
        raise NonMonomialResidue(
            f"minor reduced to {len(reduced)} terms for columns {sel}")
    return reduced


def minor_monomial_formula(family_subset: Sequence[Binomial], selection,
                           ideal: ToricIdeal,
                           stats: Optional[dict] = None) -> Optional[Monomial]:
    """Minor as det(R_K) times a monomial; None when the minor vanishes.

    Uses the closed combinatorial form when its exponent is nonnegative,
    otherwise falls back to the symbolic determinant and records the event
    in stats["formula_fallbacks"].
    """
    vs = ideal.semigroup
    sel = _normalize_selection(selection, vs.N)
    cols = [i for i in range(vs.N) if i not in sel]
    rows = [b.difference() for b in family_subset]
    det_rk = int_det([[row[c] for c in cols] for row in rows])
    if det_rk == 0:
        return None
    exp = []
    for i in range(vs.N):
        e = sum(b.plus[i] for b in family_subset) - 1 + (1 if i in sel else 0)
        exp.append(e)
    if min(exp) >= 0:
        return Monomial(det_rk, tuple(exp))
    if stats is not None:
        stats["formula_fallbacks"] = stats.get("formula_fallbacks", 0) + 1
    reduced = minor_symbolic(family_subset, sel, ideal)
    term = reduced.single_term()
    if term is None:
        raise InvariantViolation(
            "nonzero coefficient minor reduced to zero")
    if term.coeff != det_rk:
        raise InvariantViolation(
            "reduced minor coefficient differs from the difference-matrix "
            "determinant")
    return term


def subset_minors(family_subset: Sequence[Binomial], ideal: ToricIdeal,
                  stats: Optional[dict] = None) -> list:
    """All nonvanishing minors of the subset as (selection, det, monomial).

    The monomial coefficient always equals the deleted-column determinant,
    on either evaluation path, so it doubles as the det entry.
    """
    out = []
    for sel in itertools.combinations(range(ideal.semigroup.N), 2):
        mono = minor_monomial_formula(family_subset, sel, ideal, stats)
        if mono is not None:
            out.append((sel, mono.coeff, mono))
    return out


def nash_ideal(family_subset: Sequence[Binomial],
               ideal: ToricIdeal,
               stats: Optional[dict] = None) -> list:
    """Monomial generators of the minor ideal of an r-element subset.

    The subset must have full generic rank; otherwise no minor survives and
    the choice is invalid.
    """
    vs = ideal.semigroup
    if len(family_subset) != vs.r:
        raise RankDeficient(
            f"need {vs.r} binomials, got {len(family_subset)}")
    if rank(family_subset) < vs.r:
        raise RankDeficient("difference matrix rank below codimension")
    return [mono for _, _, mono in subset_minors(family_subset, ideal, stats)]


def nash_ideal_classes(family_subset: Sequence[Binomial],
                       ideal: ToricIdeal) -> frozenset:
    """Normal-form exponents of the minor monomials (coefficients dropped).

    Congruent monomials share a normal form, so this is the canonical way
    to compare a computed minor set against a printed one.
    """
    out = set()
    for mono in nash_ideal(family_subset, ideal):
        nf = normal_form(Polynomial.from_monomial(1, mono.exp), ideal.gb)
        term = nf.single_term()
        if term is None:
            raise NonMonomialResidue("monomial class with a non-monomial NF")
        out.add(term.exp)
    return frozenset(out)


# --- orbit sets ---------------------------------------------------------------


@dataclass(frozen=True)
class OrbitSet:
    """A union of torus-orbit closures inside the surface.

    has_O1 marks the closure of the one-dimensional orbit along the z block
    (edge 2), has_O2 the one along the x block (edge 1).  The origin is
    always part of the set; the dense orbit never is.
    """

    has_O1: bool
    has_O2: bool

    @property
    def dimension(self) -> int:
        return 1 if (self.has_O1 or self.has_O2) else 0

    def contains(self, other: "OrbitSet") -> bool:
        return (other.has_O1 <= self.has_O1) and (other.has_O2 <= self.has_O2)

    def describe(self) -> str:
        parts = []
        if self.has_O1:
            parts.append("closure(O1)")
        if self.has_O2:
            parts.append("closure(O2)")
        parts.append("{0}")
        return " u ".join(parts)


def orbit_representatives(vs: ValidatedSemigroup) -> dict:
    l, m, n = vs.l, vs.m, vs.n
    return {
        "torus": (1,) * vs.N,
        "O1": (0,) * (l + m) + (1,) * n,
        "O2": (1,) * l + (0,) * (m + n),
        "origin": (0,) * vs.N,
    }


def zero_locus(monomials: Sequence[Monomial],
               vs: ValidatedSemigroup) -> OrbitSet:
    """Orbit-closure decomposition of the vanishing set of the monomials.

    A monomial vanishes on the z-axis orbit exactly when it involves an x
    or y variable, and on the x-axis orbit exactly when it involves a y or
    z variable; the whole set vanishes on an orbit when every monomial
    does.
    """
    if not monomials:
        raise EmptyIdeal("no monomials given")
    xy = list(vs.x_indices) + list(vs.y_indices)
    yz = list(vs.y_indices) + list(vs.z_indices)
    has_o1 = True
    has_o2 = True
    for mono in monomials:
        if mono.is_constant():
            raise InvariantViolation("constant minor: empty zero locus")
        if not any(mono.exp[i] for i in xy):
            has_o1 = False
        if not any(mono.exp[i] for i in yz):
            has_o2 = False
    return OrbitSet(has_o1, has_o2)


# --- singular locus -----------------------------------------------------------


@dataclass(frozen=True)
class SingularLocus:
    """Orbit-set shape of the singular locus plus the origin flag.

    origin_singular False would mean the smooth-origin hypothesis fails;
    validated minimal generators make that impossible, but the check is
    performed honestly and surfaced rather than assumed.
    """

    orbits: OrbitSet
    origin_singular: bool


def _jacobian_rank_at(family: Sequence[Binomial], point,
                      nvars: int) -> int:
    rows = [[derivative(f, i).evaluate(point) for i in range(nvars)]
            for f in family]
    return int_rank(rows)


def singular_locus(ideal: ToricIdeal,
                   family: Optional[Sequence[Binomial]] = None) -> SingularLocus:
    """Per-orbit Jacobian rank test, cross-checked against the minor ideal.

    An orbit is singular when the Jacobian of the generating family drops
    below codimension at its representative.  The same answer must come out
    of the zero locus of all r x r minors over all r-row subsets of the
    family; disagreement is an internal error.
    """
    vs = ideal.semigroup
    fam = tuple(family) if family is not None else ideal.minimal_gens
    reps = orbit_representatives(vs)
    r = vs.r
    if _jacobian_rank_at(fam, reps["torus"], vs.N) < r:
        raise TorusSingular("Jacobian rank drops on the dense torus")
    has_o1 = _jacobian_rank_at(fam, reps["O1"], vs.N) < r
    has_o2 = _jacobian_rank_at(fam, reps["O2"], vs.N) < r
    origin_singular = _jacobian_rank_at(fam, reps["origin"], vs.N) < r

    monomials: List[Monomial] = []
    for subset in itertools.combinations(range(len(fam)), r):
        chosen = [fam[i] for i in subset]
        if rank(chosen) < r:
            continue
        monomials.extend(m for _, _, m in subset_minors(chosen, ideal))
    if not monomials:
        raise TorusSingular("no subset of the family reaches full rank")
    alt = zero_locus(monomials, vs)
    if (alt.has_O1, alt.has_O2) != (has_o1, has_o2):
        raise InvariantViolation(
            "rank test and minor ideal disagree about the singular locus")
    return SingularLocus(OrbitSet(has_o1, has_o2), origin_singular)


# --- exhaustive search and verdicts -------------------------------------------


@dataclass(frozen=True)
class NashReport:
    """Outcome for one r-subset of the generating family.

    minors holds (selection, det, monomial) triples for the nonvanishing
    minors; zero_locus and equals_sigma are None when the subset never
    reaches full rank.
    """

    subset: tuple
    rank_ok: bool
    minors: tuple
    zero_locus: Optional[OrbitSet]
    equals_sigma: Optional[bool]


def _family(ideal: ToricIdeal, which: str) -> tuple:
    if which == "minimal":
        return ideal.minimal_gens
    if which == "groebner":
        return ideal.gb.elements
    raise ValueError(f"unknown family {which!r}")


def _subset_report(ideal: ToricIdeal, fam: Sequence[Binomial], subset: tuple,
                   sigma: OrbitSet, stats: Optional[dict]) -> NashReport:
    vs = ideal.semigroup
    chosen = [fam[i] for i in subset]
    if rank(chosen) < vs.r:
        return NashReport(subset, False, (), None, None)
    minors = tuple(subset_minors(chosen, ideal, stats))
    locus = zero_locus([m for _, _, m in minors], vs)
    return NashReport(subset, True, minors, locus, locus == sigma)


def search_all_subsets(ideal: ToricIdeal, family: str = "minimal",
                       jobs: int = 1,
                       stats: Optional[dict] = None) -> list:
    """Reports for every r-subset of the family, in subset-index order."""
    vs = ideal.semigroup
    fam = _family(ideal, family)
    sigma = singular_locus(ideal).orbits
    subsets = list(itertools.combinations(range(len(fam)), vs.r))
    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(
                lambda s: _subset_report(ideal, fam, s, sigma, stats),
                subsets))
    return [_subset_report(ideal, fam, s, sigma, stats) for s in subsets]


def classify_ci(ideal: ToricIdeal) -> tuple:
    """(is_hypersurface, is_complete_intersection) by generator count."""
    n = ideal.semigroup.N
    return (n == 3, ideal.s_min == n - 2)


def dim1_selector(ideal: ToricIdeal, family: str = "minimal") -> NashReport:
    """Constructive witness subset when the singular locus has dimension 1.

    When both one-dimensional closures are singular any full-rank subset
    works.  When only the z-axis closure is singular there must be a subset
    with a minor supported purely on the x block, and symmetrically; the
    scan below finds it and its zero locus necessarily equals the singular
    locus.
    """
    vs = ideal.semigroup
    sig = singular_locus(ideal)
    sigma = sig.orbits
    if sigma.dimension != 1:
        raise SigmaDimensionError(
            "witness construction requires a one-dimensional singular locus")
    fam = _family(ideal, family)
    subsets = itertools.combinations(range(len(fam)), vs.r)

    if sigma.has_O1 and sigma.has_O2:
        for subset in subsets:
            report = _subset_report(ideal, fam, subset, sigma, None)
            if report.rank_ok:
                if not report.equals_sigma:
                    raise TheoremViolation(
                        f"subset {subset} misses the doubly singular locus")
                return report
        raise WitnessNotFound("no subset reaches full rank")

    block = list(vs.x_indices) if sigma.has_O1 else list(vs.z_indices)
    for subset in subsets:
        chosen = [fam[i] for i in subset]
        if rank(chosen) < vs.r:
            continue
        for sel in itertools.combinations(range(vs.N), 2):
            mono = minor_monomial_formula(chosen, sel, ideal)
            if mono is None:
                continue
            support = [i for i, e in enumerate(mono.exp) if e]
            if support and all(i in block for i in support):
                report = _subset_report(ideal, fam, subset, sigma, None)
                if not report.equals_sigma:
                    raise TheoremViolation(
                        f"subset {subset} has a pure edge minor but its "
                        f"zero locus differs from the singular locus")
                return report
    raise WitnessNotFound(
        "no subset carries a minor supported on the opposite edge block")


@dataclass(frozen=True)
class TheoremVerdict:
    """Predicted versus observed shape of the minor-ideal search.

    predicted/observed range over always_equal, exists_equal, never_equal
    and out_of_scope; for in-scope inputs the two must agree, and
    verify_dichotomy raises rather than returning a mismatch.
    """

    sigma: OrbitSet
    is_hypersurface: bool
    is_complete_intersection: bool
    predicted: str
    observed: str
    witness: Optional[tuple]


def verify_dichotomy(ideal: ToricIdeal, family: str = "minimal",
                     jobs: int = 1,
                     stats: Optional[dict] = None) -> TheoremVerdict:
    """Predict the search outcome from the singular locus and verify it.

    A one-dimensional singular locus guarantees a witness subset (both
    closures singular: every subset works).  A zero-dimensional one on a
    non-complete-intersection guarantees there is none.  Complete
    intersections with point singular locus, and smooth-origin inputs, are
    out of scope and reported without assertion.
    """
    sig = singular_locus(ideal)
    is_hyp, is_ci = classify_ci(ideal)
    if not sig.origin_singular:
        return TheoremVerdict(sig.orbits, is_hyp, is_ci,
                              "out_of_scope", "out_of_scope", None)
    sigma = sig.orbits
    if sigma.dimension == 0:
        if is_ci and not is_hyp:
            raise TheoremViolation(
                "complete intersection with isolated singular origin in "
                f"{ideal.semigroup.N} > 3 variables; this should be "
                "impossible and needs investigation")
        predicted = "out_of_scope" if is_ci else "never_equal"
    elif sigma.has_O1 and sigma.has_O2:
        predicted = "always_equal"
    else:
        predicted = "exists_equal"

    if predicted == "out_of_scope":
        return TheoremVerdict(sigma, is_hyp, is_ci,
                              "out_of_scope", "out_of_scope", None)

    reports = search_all_subsets(ideal, family, jobs, stats)
    valid = [r for r in reports if r.rank_ok]
    if not valid:
        raise InvariantViolation("no subset of a generating family reaches "
                                 "full rank")
    equal = [r for r in valid if r.equals_sigma]
    if not equal:
        observed = "never_equal"
    elif sigma.has_O1 and sigma.has_O2:
        observed = "always_equal" if len(equal) == len(valid) else "exists_equal"
    else:
        # a single one-dimensional closure: the claim being tested is bare
        # existence, so extra matching subsets do not change the category
        observed = "exists_equal"

    witness = None
    if observed in ("exists_equal", "always_equal"):
        if predicted == "exists_equal":
            witness = dim1_selector(ideal, family).subset
        else:
            witness = equal[0].subset

    if predicted != observed:
        raise TheoremViolation(
            f"predicted {predicted} but observed {observed} for generators "
            f"{[tuple(p) for p in ideal.semigroup.gens.points]}")
    return TheoremVerdict(sigma, is_hyp, is_ci, predicted, observed, witness)
