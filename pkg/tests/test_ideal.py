import random

import pytest

from toricnash.algebra import (
    Binomial,
    Polynomial,
    degrevlex_order,
    lex_order,
)
from toricnash.errors import NotSameEdge
from toricnash.ideal import (
    buchberger,
    edge_relation,
    ideal_member,
    lattice_kernel,
    minimal_generators,
    normal_form,
    same_ideal,
    saturate_all,
    saturate_variable,
    toric_ideal,
)
from toricnash.semigroup import generator_set, validate

import _support as sup


class TestLatticeKernel:
    def test_fixture_a_properties(self, fixture_a):
        vs, _ = fixture_a
        basis = lattice_kernel(vs)
        assert len(basis) == 2
        for v in basis.vectors:
            assert sup.pi(vs, [max(x, 0) for x in v]) == \
                sup.pi(vs, [max(-x, 0) for x in v])

    def test_fixture_a_spans_known_vectors(self, fixture_a):
        vs, _ = fixture_a
        basis = lattice_kernel(vs)
        for v in ((1, -2, 1, 0), (0, 1, -2, 1), (1, -1, -1, 1)):
            assert sup.in_integer_span(basis.vectors, v)

    def test_rank_one_case(self):
        vs = validate(generator_set([(1, 0), (1, 2), (1, 1)]))
        basis = lattice_kernel(vs)
        assert len(basis) == 1
        assert basis.vectors[0] in ((1, -2, 1), (-1, 2, -1))

    def test_spans_brute_force_kernel(self, population):
        # every small integer relation must lie in the span of the basis
        import itertools
        checked = 0
        for vs, _ in population:
            if vs.N > 4:
                continue
            basis = lattice_kernel(vs)
            pts = vs.gens.points
            for v in itertools.product(range(-2, 3), repeat=vs.N):
                if sum(c * p.u for c, p in zip(v, pts)) == 0 and \
                        sum(c * p.v for c, p in zip(v, pts)) == 0:
                    if any(v):
                        assert sup.in_integer_span(basis.vectors, v)
                        checked += 1
            if checked > 40:
                break
        assert checked >= 1

    def test_content_one(self, population):
        from math import gcd
        for vs, _ in population:
            for v in lattice_kernel(vs).vectors:
                g = 0
                for x in v:
                    g = gcd(g, abs(x))
                assert g == 1


class TestBuchberger:
    def test_fixture_a_generators_already_basis(self):
        order = lex_order(4)
        gens = sup.binomials(sup.IDEAL_A)
        gb = buchberger(gens, order)
        assert set((b.plus, b.minus) for b in gb.elements) == \
            set(sup.IDEAL_A)

    def test_single_binomial(self):
        order = lex_order(3)
        b = Binomial((2, 0, 0), (0, 1, 1))
        gb = buchberger([b], order)
        assert gb.elements == (b,)

    def test_linear_chain_reduces(self):
        order = lex_order(3)
        gens = [Binomial((1, 0, 0), (0, 1, 0)), Binomial((0, 1, 0), (0, 0, 1))]
        gb = buchberger(gens, order)
        assert set((b.plus, b.minus) for b in gb.elements) == {
            ((1, 0, 0), (0, 0, 1)), ((0, 1, 0), (0, 0, 1))}

    def test_reducedness(self, population):
        from toricnash.algebra import exp_divides
        for _, ideal in population[:20]:
            elems = ideal.gb.elements
            for i, b in enumerate(elems):
                for j, c in enumerate(elems):
                    if i != j:
                        assert not exp_divides(c.plus, b.plus)
                        assert not exp_divides(c.plus, b.minus)

    def test_canonical_under_regeneration(self, fixture_b):
        _, ideal = fixture_b
        rng = random.Random(1)
        elems = list(ideal.minimal_gens)
        for _ in range(3):
            rng.shuffle(elems)
            gb = buchberger(elems, ideal.gb.order)
            assert gb.elements == ideal.gb.elements


class TestSaturation:
    def test_strip_common_factor(self):
        order = lex_order(3)
        # x1*x2 - x1*x3 saturated at x1 leaves x2 - x3
        gb = buchberger([Binomial((1, 1, 0), (1, 0, 1))], order)
        sat = saturate_variable(gb, 0)
        assert [(b.plus, b.minus) for b in sat.elements] == \
            [((0, 1, 0), (0, 0, 1))]

    def test_fixed_point(self, fixture_a):
        _, ideal = fixture_a
        weights = ideal.semigroup.degree_weights
        sat = saturate_all(ideal.gb, weights)
        assert sat.elements == ideal.gb.elements

    def test_lattice_basis_saturates_to_full_ideal(self, fixture_a):
        vs, ideal = fixture_a
        order = lex_order(4)
        from toricnash.algebra import binomial_from_vector
        # a specific kernel basis whose binomial ideal is strictly smaller
        # than the saturated one
        gens = [binomial_from_vector(v, order)
                for v in ((1, -2, 1, 0), (0, 1, -2, 1))]
        gb = saturate_all(buchberger(gens, order), vs.degree_weights)
        assert gb.elements == ideal.gb.elements
        # the middle relation only appears after saturation
        missing = Polynomial.from_binomial(Binomial((1, 0, 0, 1), (0, 1, 1, 0)))
        assert not ideal_member(missing, buchberger(gens, order))
        assert ideal_member(missing, gb)

    def test_any_kernel_basis_saturates_to_full_ideal(self, fixture_a):
        vs, ideal = fixture_a
        order = lex_order(4)
        from toricnash.algebra import binomial_from_vector
        gens = [binomial_from_vector(v, order)
                for v in lattice_kernel(vs).vectors]
        gb = saturate_all(buchberger(gens, order), vs.degree_weights)
        assert gb.elements == ideal.gb.elements


class TestToricIdeal:
    def test_fixture_a(self, fixture_a):
        _, ideal = fixture_a
        assert same_ideal(ideal.gb.elements, sup.binomials(sup.IDEAL_A),
                          lex_order(4))
        assert ideal.s_min == 3

    def test_fixture_b(self, fixture_b):
        _, ideal = fixture_b
        assert same_ideal(ideal.gb.elements, sup.binomials(sup.IDEAL_B),
                          lex_order(5))

    def test_fixture_c(self, fixture_c):
        _, ideal = fixture_c
        assert same_ideal(ideal.gb.elements, sup.binomials(sup.IDEAL_C),
                          lex_order(4))
        assert ideal.s_min == 4

    def test_degrevlex_defines_same_ideal(self, fixture_a):
        vs, ideal = fixture_a
        other = toric_ideal(vs, degrevlex_order(vs.N))
        regenerated = buchberger(other.gb.elements, lex_order(vs.N))
        assert regenerated.elements == ideal.gb.elements

    def test_no_unit_exponent_sides(self, population):
        for _, ideal in population:
            for b in ideal.minimal_gens:
                assert sum(b.plus) >= 2
                assert sum(b.minus) >= 2

    def test_minimal_gens_irredundant(self, population):
        for _, ideal in population[:12]:
            gens = ideal.minimal_gens
            for i in range(len(gens)):
                if len(gens) == 1:
                    continue
                rest = [g for j, g in enumerate(gens) if j != i]
                sub = buchberger(rest, ideal.gb.order)
                assert not ideal_member(
                    Polynomial.from_binomial(gens[i]), sub)

    def test_pure_edge_relation_sides_stay_in_block(self, population):
        # a relation with one side supported on an edge block keeps its
        # other side in the same block
        for vs, ideal in population[:20]:
            x = set(vs.x_indices)
            z = set(vs.z_indices)
            for b in ideal.gb.elements:
                for block in (x, z):
                    sides = (set(i for i, e in enumerate(b.plus) if e),
                             set(i for i, e in enumerate(b.minus) if e))
                    if sides[0] <= block or sides[1] <= block:
                        assert sides[0] <= block and sides[1] <= block

    def test_generators_vanish_at_block_points(self, population):
        # both all-ones-on-one-block points lie on the surface
        for vs, ideal in population[:20]:
            o1 = tuple(1 if i in vs.z_indices else 0 for i in range(vs.N))
            o2 = tuple(1 if i in vs.x_indices else 0 for i in range(vs.N))
            for b in ideal.minimal_gens:
                p = Polynomial.from_binomial(b)
                assert p.evaluate(o1) == 0
                assert p.evaluate(o2) == 0


class TestNormalForm:
    def test_single_division_step(self, fixture_a):
        _, ideal = fixture_a
        nf = normal_form(Polynomial.from_monomial(1, (1, 0, 1, 0)), ideal.gb)
        assert nf == Polynomial.from_monomial(1, (0, 2, 0, 0))

    def test_basis_elements_reduce_to_zero(self, fixture_a):
        _, ideal = fixture_a
        for b in ideal.gb.elements:
            assert normal_form(Polynomial.from_binomial(b), ideal.gb).is_zero()

    def test_constant_is_irreducible(self, fixture_a):
        _, ideal = fixture_a
        one = Polynomial.constant(1, 4)
        assert normal_form(one, ideal.gb) == one

    def test_member_examples(self, fixture_a):
        _, ideal = fixture_a
        gen = Polynomial.from_binomial(Binomial((0, 1, 0, 1), (0, 0, 2, 0)))
        assert ideal_member(gen, ideal.gb)
        assert not ideal_member(Polynomial.from_monomial(1, (1, 0, 0, 0)),
                                ideal.gb)
        assert ideal_member(Polynomial.zero(), ideal.gb)

    def test_no_monomials_in_ideal(self, population):
        rng = random.Random(17)
        for vs, ideal in population[:15]:
            for _ in range(20):
                exp = tuple(rng.randint(0, 3) for _ in range(vs.N))
                if all(e == 0 for e in exp):
                    continue
                assert not ideal_member(
                    Polynomial.from_monomial(1, exp), ideal.gb)

    def test_membership_characterization(self, population):
        rng = random.Random(29)
        for vs, ideal in population[:15]:
            for _ in range(40):
                a = tuple(rng.randint(0, 3) for _ in range(vs.N))
                b = tuple(rng.randint(0, 3) for _ in range(vs.N))
                p = Polynomial({a: 1}) - Polynomial({b: 1})
                assert ideal_member(p, ideal.gb) == \
                    (sup.pi(vs, a) == sup.pi(vs, b))


class TestMinimalGenerators:
    def test_counts(self, fixture_a, fixture_c):
        assert len(minimal_generators(fixture_a[1].gb)) == 3
        assert len(minimal_generators(fixture_c[1].gb)) == 4

    def test_principal(self):
        vs = validate(generator_set([(1, 0), (1, 1), (1, 2)]))
        ideal = toric_ideal(vs)
        assert ideal.s_min == 1


class TestEdgeRelation:
    def test_edge1_fixture_b(self, fixture_b):
        vs, ideal = fixture_b
        rel = edge_relation(vs, "edge1", 0, 1, ideal=ideal)
        # 3*(2,0) == 2*(3,0): x1^3 - x2^2
        assert (rel.plus, rel.minus) == ((3, 0, 0, 0, 0), (0, 2, 0, 0, 0))

    def test_edge2_fixture_b(self, fixture_b):
        vs, ideal = fixture_b
        rel = edge_relation(vs, "edge2", 0, 1, ideal=ideal)
        assert (rel.plus, rel.minus) == ((0, 0, 0, 5, 0), (0, 0, 0, 0, 4))

    def test_bad_indices(self, fixture_b):
        vs, _ = fixture_b
        with pytest.raises(NotSameEdge):
            edge_relation(vs, "edge1", 0, 0)
        with pytest.raises(NotSameEdge):
            edge_relation(vs, "edge2", 0, 5)
        with pytest.raises(NotSameEdge):
            edge_relation(vs, "interior", 0, 1)

    def test_members_of_ideal(self, population):
        for vs, ideal in population:
            for block, count in (("edge1", vs.l), ("edge2", vs.n)):
                for i in range(count):
                    for j in range(i + 1, count):
                        rel = edge_relation(vs, block, i, j, ideal=ideal)
                        assert ideal_member(
                            Polynomial.from_binomial(rel), ideal.gb)
