"""Expression grammar: parsing, rendering, LaTeX and JSON emission."""

from __future__ import annotations

import json
import random
from fractions import Fraction

import pytest

from singclass.classes import (
    BASIC,
    SINGULARITY,
    ClassExpr,
    basic_to_sing,
    psi_power_sing,
)
from singclass.cycles import completed_cycle
from singclass.errors import ParseError
from singclass.exact import XiPolynomial
from singclass.grammar import (
    class_to_json,
    cycles_to_json,
    format_partition,
    format_profile,
    parse_class,
    parse_cycles,
    parse_partition,
    parse_profile,
    render_class,
    render_class_latex,
    render_cycles,
    render_cycles_latex,
    render_xpoly,
)
from singclass.trees import codim, enumerate_trees, star, stick, tree, leaf


class TestRenderClass:
    def test_psi_square_layout(self):
        assert render_class(psi_power_sing(2)) == (
            "1/2*a_2 + 1/4*i[1,1] + 3/2*xi*a_1 + xi^2"
        )

    def test_negative_terms(self):
        from singclass.classes import product_expansion

        assert render_class(product_expansion(3)) == (
            "a_3 + 2*i[1,2] + 1/6*i[1,1,1] - 1/2*xi*i[1,1]"
        )

    def test_unit_and_zero(self):
        assert render_class(ClassExpr.unit(SINGULARITY)) == "1"
        assert render_class(ClassExpr.zero(BASIC)) == "0"

    def test_nested_trees_render_in_the_tree_grammar(self):
        e = parse_class("1/4*T{(0;0,0,(0;0,0))}@sing")
        assert render_class(e) == "1/4*T{(0;(0;0,0),0,0)}@sing"


class TestParseClass:
    def test_round_trip_on_engine_output(self):
        for m in range(0, 6):
            e = psi_power_sing(m)
            assert parse_class(render_class(e)) == e

    def test_randomized_round_trip(self):
        rng = random.Random(1234)
        trees_pool = enumerate_trees(5)
        for _ in range(40):
            total = rng.randint(0, 6)
            basis = rng.choice([SINGULARITY, BASIC])
            picks = [t for t in trees_pool if codim(t) <= total]
            mapping = {}
            for t in rng.sample(picks, min(len(picks), rng.randint(1, 5))):
                coeff = Fraction(rng.randint(-9, 9), rng.randint(1, 9))
                if coeff == 0:
                    continue
                mapping[t] = XiPolynomial.xi_power(total - codim(t), coeff)
            e = ClassExpr.from_terms(basis, mapping)
            if e.is_zero():
                continue
            assert parse_class(render_class(e), default_basis=basis) == e

    def test_spec_sample_expression(self):
        e = parse_class("i[1,2] + xi*i[1,1]")
        assert e == basic_to_sing(parse_class("d[0,1]", default_basis=BASIC))

    def test_unit_atom(self):
        assert parse_class("a_0") == ClassExpr.unit(SINGULARITY)
        assert parse_class("1", default_basis=BASIC) == ClassExpr.unit(BASIC)

    def test_tree_atom_in_basic_basis(self):
        e = parse_class("T{(0;1,2)}@basic")
        assert e == ClassExpr.single(BASIC, tree(0, [leaf(1), leaf(2)]))
        assert e.basis == BASIC

    def test_unordered_index_lists_are_sorted(self):
        assert parse_class("i[2,1]") == parse_class("i[1,2]")

    def test_psi_prefix_sets_the_internal_marking(self):
        assert parse_class("psi*i[1,1,1]") == ClassExpr.single(
            SINGULARITY, star(1, [0, 0, 0])
        )
        assert parse_class("psi^2*i[1,1,1,1]") == ClassExpr.single(
            SINGULARITY, star(2, [0, 0, 0, 0])
        )

    def test_standalone_psi_powers_are_basic_sticks(self):
        assert parse_class("psi^3") == ClassExpr.single(BASIC, stick(3))

    def test_vanishing_atoms_collapse_to_zero(self):
        assert parse_class("psi*i[1,1]").is_zero()

    def test_mixed_bases_are_rejected(self):
        with pytest.raises(ParseError):
            parse_class("i[1,1] + d[0,0]")
        with pytest.raises(ParseError):
            parse_class("psi + a_1")

    def test_inhomogeneous_sums_are_rejected(self):
        with pytest.raises(ParseError):
            parse_class("a_1 + a_2")

    def test_psi_times_stick_is_rejected(self):
        with pytest.raises(ParseError):
            parse_class("psi*a_2")

    def test_syntax_errors_carry_positions(self):
        with pytest.raises(ParseError) as info:
            parse_class("i[1,2] + @")
        assert info.value.position is not None

    def test_zero_literal(self):
        assert parse_class("0").is_zero()

    def test_empty_input(self):
        with pytest.raises(ParseError):
            parse_class("   ")


class TestCycleGrammar:
    def test_round_trip(self):
        for m in range(0, 5):
            e = completed_cycle(m)
            assert parse_cycles(render_cycles(e)) == e

    def test_table_layout(self):
        assert render_cycles(completed_cycle(2)) == (
            "1/2*C[3] + 1/4*C[1,1] + 1/24*C[1]"
        )

    def test_identity_term(self):
        e = parse_cycles("1")
        assert e.coefficient(()) == 1
        assert render_cycles(e) == "1"

    def test_negative_coefficients(self):
        e = parse_cycles("C[2] - 1/2*C[1,1]")
        assert e.coefficient((1, 1)) == Fraction(-1, 2)


class TestProfilesAndPartitions:
    def test_profile_forms(self):
        assert parse_profile("{1,2,2}") == (1, 2, 2)
        assert parse_profile("2,1,2") == (1, 2, 2)
        assert format_profile((1, 2, 2)) == "{1,2,2}"
        assert parse_profile("{}") == ()

    def test_partition_forms(self):
        assert parse_partition("[3,1,1]") == (3, 1, 1)
        assert format_partition((3, 1, 1)) == "[3,1,1]"
        assert parse_partition("[]") == ()

    def test_bad_literals(self):
        with pytest.raises(ParseError):
            parse_profile("{1,a}")
        with pytest.raises(ParseError):
            parse_profile("{0,1}")


class TestLatex:
    def test_psi_square(self):
        assert render_class_latex(psi_power_sing(2)) == (
            "\\frac{1}{2} a_{2} + \\frac{1}{4} i_{1,1}"
            " + \\frac{3}{2} \\xi a_{1} + \\xi^{2}"
        )

    def test_delta_and_psi_atoms(self):
        e = parse_class("d[0,1] - xi*psi^2", default_basis=BASIC)
        assert render_class_latex(e) == "\\delta_{0,1} - \\xi \\psi^{2}"

    def test_cycles(self):
        assert render_cycles_latex(completed_cycle(1)) == "C_{2}"
        assert render_cycles_latex(completed_cycle(2)) == (
            "\\frac{1}{2} C_{3} + \\frac{1}{4} C_{1,1} + \\frac{1}{24} C_{1}"
        )


class TestJson:
    def test_class_schema(self):
        payload = json.loads(class_to_json(psi_power_sing(2)))
        assert payload["basis"] == "singularity"
        assert payload["codim"] == 2
        assert payload["terms"][0] == {"coeff": "1/2", "xi_power": 0, "tree": "2"}
        assert {"coeff": "1", "xi_power": 2, "tree": "0"} in payload["terms"]

    def test_stable_output(self):
        a = class_to_json(psi_power_sing(3))
        b = class_to_json(psi_power_sing(3))
        assert a == b

    def test_cycles_schema(self):
        payload = json.loads(cycles_to_json(completed_cycle(2)))
        assert {"coeff": "1/4", "profile": [1, 1]} in payload["terms"]


class TestXPolyRendering:
    def test_monomials_with_powers(self):
        from singclass.cycles import x_polynomial

        assert render_xpoly(x_polynomial(2)) == "1/2*x3 + 1/4*x1^2"
        assert render_xpoly(x_polynomial(2, normalized=False)) == "x3 + 1/2*x1^2"
