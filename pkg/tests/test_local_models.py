"""Local models: profile constants, the canonical pole function, and the
partial-fraction (Hurwitz) coordinates."""

from __future__ import annotations

import random
from fractions import Fraction
from math import prod

import pytest

from singclass.combinatorics import profiles_with_sum
from singclass.errors import ConstraintError
from singclass.local_models import (
    BranchCoordinates,
    HurwitzCoordinates,
    Polynomial,
    RationalFunction,
    canonical_function,
    format_polynomial,
    format_rational_function,
    hurwitz_coordinates,
    orbit_count,
    profile_constants,
    reassemble,
)


class TestProfileConstants:
    @pytest.mark.parametrize(
        "profile,K,r,d",
        [
            ((1, 1), 1, (1, 1), 1),
            ((2, 2), 2, (1, 1), 2),
            ((2, 3), 6, (3, 2), 1),
            ((4,), 4, (1,), 1),
        ],
    )
    def test_examples(self, profile, K, r, d):
        constants = profile_constants(profile)
        assert (constants.lcm, constants.exponents, constants.components) == (K, r, d)

    def test_component_count_times_lcm_is_the_product(self):
        for total in range(1, 9):
            for p in profiles_with_sum(total):
                constants = profile_constants(p)
                assert constants.components * constants.lcm == prod(p)

    def test_component_count_matches_orbit_enumeration(self):
        for total in range(1, 9):
            for p in profiles_with_sum(total):
                assert profile_constants(p).components == orbit_count(p)


class TestPolynomial:
    def test_divmod(self):
        p = Polynomial.from_roots([(1, 2), (2, 1)])
        q, r = p.divmod(Polynomial.linear_root(1))
        assert r.is_zero()
        assert q == Polynomial.from_roots([(1, 1), (2, 1)])

    def test_gcd(self):
        a = Polynomial.from_roots([(1, 2), (3, 1)])
        b = Polynomial.from_roots([(1, 1), (2, 1)])
        assert a.gcd(b) == Polynomial.linear_root(1)

    def test_taylor_shift(self):
        p = Polynomial.from_coeffs([1, 0, 1])  # 1 + z^2
        series = p.taylor(Fraction(2), 2)
        # 1 + (2+t)^2 = 5 + 4t + t^2
        assert [series.coefficient(j) for j in range(3)] == [5, 4, 1]

    def test_format(self):
        p = Polynomial.from_coeffs([Fraction(-1), 0, 1])
        assert format_polynomial(p) == "-1 + z^2"
        assert format_polynomial(Polynomial.zero()) == "0"
        assert format_polynomial(Polynomial.from_coeffs([0, Fraction(3, 2)])) == "3/2*z"


class TestCanonicalFunction:
    def test_single_simple_pole(self):
        f = canonical_function((1,), 0, (1,))
        assert f.numerator == Polynomial.from_coeffs([0, 1])
        assert f.denominator == Polynomial.from_coeffs([-1, 1])

    def test_two_simple_poles(self):
        f = canonical_function((1, 1), 0, (1, -1))
        assert f.numerator == Polynomial.from_coeffs([0, 0, 1])
        assert f.denominator == Polynomial.from_coeffs([-1, 0, 1])
        assert format_rational_function(f) == "(z^2) / (-1 + z^2)"

    def test_derivative_vanishing_orders(self):
        # first m-1 derivatives vanish at x, the m-th does not, for the
        # symbolic quotient-rule derivative
        for profile, x, poles in [
            ((1, 1), 0, (1, -1)),
            ((2,), 0, (1,)),
            ((1, 2), Fraction(1, 2), (1, -2)),
        ]:
            m = sum(profile)
            f = canonical_function(profile, x, poles)
            for _ in range(m - 1):
                f = f.derivative()
                assert f(x) == 0
            assert f.derivative()(x) != 0

    def test_coincident_points_rejected(self):
        with pytest.raises(ConstraintError):
            canonical_function((1, 1), 0, (1, 1))
        with pytest.raises(ConstraintError):
            canonical_function((1,), 1, (1,))


class TestHurwitzCoordinates:
    def test_two_simple_poles(self):
        f = canonical_function((1, 1), 0, (1, -1))
        coords = hurwitz_coordinates(f, (1, 1), (1, -1))
        assert coords.constant == 1
        assert [(b.pole, b.u, b.tail) for b in coords.branches] == [
            (Fraction(1), Fraction(1, 2), ()),
            (Fraction(-1), Fraction(-1, 2), ()),
        ]

    def test_double_pole(self):
        f = canonical_function((2,), 0, (1,))
        coords = hurwitz_coordinates(f, (2,), (1,))
        branch = coords.branches[0]
        assert (branch.u, branch.tail, coords.constant) == (
            Fraction(1),
            (Fraction(2),),
            Fraction(1),
        )

    def test_reassembly_is_the_identity(self):
        # poles chosen so the order-2 leading coefficient 4^3/(4-3) = 64 has
        # a rational square root
        f = canonical_function((1, 2), 0, (3, 4))
        coords = hurwitz_coordinates(f, (1, 2), (3, 4))
        assert coords.branches[1].u == 8
        assert reassemble(coords) == f

    def test_irrational_canonical_coordinates_are_reported(self):
        f = canonical_function((1, 2), 0, (1, 3))
        with pytest.raises(ConstraintError):
            hurwitz_coordinates(f, (1, 2), (1, 3))

    def test_pole_order_mismatch(self):
        f = canonical_function((1, 1), 0, (1, -1))
        with pytest.raises(ConstraintError):
            hurwitz_coordinates(f, (2,), (1,))

    def test_irrational_root_is_reported(self):
        f = RationalFunction.make(
            Polynomial.constant(2), Polynomial.from_roots([(1, 2)])
        )
        with pytest.raises(ConstraintError):
            hurwitz_coordinates(f, (2,), (1,))

    def test_even_order_sign_normalization(self):
        # build from u = -3/2 at an order-2 pole; the decomposition returns
        # the positive root with the tail adjusted, and the same function
        branch = BranchCoordinates(Fraction(0), 2, Fraction(-3, 2), (Fraction(5),))
        coords = HurwitzCoordinates((branch,), Fraction(2))
        f = reassemble(coords)
        recovered = hurwitz_coordinates(f, (2,), (0,))
        out = recovered.branches[0]
        assert out.u == Fraction(3, 2)
        assert out.tail == (Fraction(-5),)
        assert reassemble(recovered) == f


def _random_coordinates(rng: random.Random) -> HurwitzCoordinates:
    length = rng.randint(1, 4)
    orders = [rng.randint(1, 4) for _ in range(length)]
    poles = rng.sample([Fraction(v) for v in range(-6, 7)], length)
    branches = []
    for pole, k in zip(poles, orders):
        u = Fraction(0)
        while u == 0:
            u = Fraction(rng.randint(-6, 6), rng.randint(1, 4))
        if k % 2 == 0:
            u = abs(u)
        tail = tuple(
            Fraction(rng.randint(-5, 5), rng.randint(1, 3)) for _ in range(k - 1)
        )
        branches.append(BranchCoordinates(pole, k, u, tail))
    constant = Fraction(rng.randint(-4, 4))
    return HurwitzCoordinates(tuple(branches), constant)


class TestRandomizedReassembly:
    def test_decomposition_inverts_reassembly(self):
        rng = random.Random(20240517)
        for _ in range(60):
            coords = _random_coordinates(rng)
            f = reassemble(coords)
            profile = tuple(b.order for b in coords.branches)
            poles = tuple(b.pole for b in coords.branches)
            recovered = hurwitz_coordinates(f, profile, poles)
            assert recovered == coords
            assert reassemble(recovered) == f
