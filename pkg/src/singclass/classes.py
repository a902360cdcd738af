"""Class-expansion engine.

Expansions live in one of two bases over the same set of canonical marked
trees.  In the singularity basis a stick with marking m denotes a_m and a
tree denotes the pushforward of its boundary-stratum class over the
corresponding ramification locus; in the basic basis a stick denotes psi^m
and leaf markings denote cotangent powers at the branch points.  A
ClassExpr is a finite sum of trees with xi-polynomial coefficients, always
homogeneous: xi-degree plus tree codimension is one fixed integer.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import factorial, prod
from typing import Iterable, Mapping

from .combinatorics import Profile, aut_count, make_profile, profiles_with_sum
from .errors import ConstraintError
from .exact import XiPolynomial, solve_linear
from .trees import (
    MarkedTree,
    codim,
    encoding,
    leaf_markings,
    star,
    stick,
    substitute,
    tree,
    vanishes,
    weight,
)

SINGULARITY = "singularity"
BASIC = "basic"

__all__ = [
    "SINGULARITY",
    "BASIC",
    "ClassExpr",
    "product_expansion",
    "psi_decomposition",
    "psi_power_sing",
    "basic_to_sing",
    "sing_to_basic",
    "point_class_tree",
    "point_coefficient_psi",
    "point_coefficient_delta",
]


def _check_basis(basis: str) -> str:
    if basis not in (SINGULARITY, BASIC):
        raise ConstraintError(f"unknown basis {basis!r}")
    return basis


@dataclass(frozen=True)
class ClassExpr:
    """Graded linear combination of marked trees with xi-polynomial coefficients."""

    basis: str
    terms: tuple[tuple[MarkedTree, XiPolynomial], ...]

    @staticmethod
    def from_terms(
        basis: str, mapping: Mapping[MarkedTree, XiPolynomial]
    ) -> "ClassExpr":
        _check_basis(basis)
        items = [
            (t, poly)
            for t, poly in mapping.items()
            if poly and not vanishes(t)
        ]
        degrees = {
            codim(t) + q for t, poly in items for q, c in poly.monomials()
        }
        if len(degrees) > 1:
            raise ConstraintError(
                f"inhomogeneous class expression: total degrees {sorted(degrees)}"
            )
        items.sort(key=lambda item: encoding(item[0]))
        return ClassExpr(basis, tuple(items))

    @staticmethod
    def zero(basis: str) -> "ClassExpr":
        return ClassExpr(_check_basis(basis), ())

    @staticmethod
    def unit(basis: str) -> "ClassExpr":
        return ClassExpr.single(basis, stick(0))

    @staticmethod
    def single(
        basis: str, t: MarkedTree, poly: XiPolynomial | None = None
    ) -> "ClassExpr":
        poly = XiPolynomial.one() if poly is None else poly
        return ClassExpr.from_terms(basis, {t: poly})

    def is_zero(self) -> bool:
        return not self.terms

    @property
    def total_codim(self) -> int | None:
        """xi-degree + tree codimension, the same for every monomial; None when zero."""
        for t, poly in self.terms:
            q, _ = poly.monomials()[0]
            return codim(t) + q
        return None

    def coefficient(self, t: MarkedTree) -> XiPolynomial:
        for t2, poly in self.terms:
            if t2 == t:
                return poly
        return XiPolynomial.zero()

    def coefficient_at(self, t: MarkedTree, xi_power: int) -> Fraction:
        return self.coefficient(t).coefficient(xi_power)

    def monomials(self) -> list[tuple[MarkedTree, int, Fraction]]:
        return [
            (t, q, c) for t, poly in self.terms for q, c in poly.monomials()
        ]

    def _as_dict(self) -> dict[MarkedTree, XiPolynomial]:
        return dict(self.terms)

    def _require_same_basis(self, other: "ClassExpr"):
        if self.basis != other.basis:
            raise ConstraintError(
                f"basis mismatch: {self.basis} vs {other.basis}"
            )

    def __add__(self, other: "ClassExpr") -> "ClassExpr":
        self._require_same_basis(other)
        acc = self._as_dict()
        for t, poly in other.terms:
            acc[t] = acc[t] + poly if t in acc else poly
        return ClassExpr.from_terms(self.basis, acc)

    def __sub__(self, other: "ClassExpr") -> "ClassExpr":
        return self + other.scale(Fraction(-1))

    def scale(self, c: Fraction | int) -> "ClassExpr":
        c = Fraction(c)
        if c == 0:
            return ClassExpr.zero(self.basis)
        return ClassExpr(
            self.basis, tuple((t, poly.scale(c)) for t, poly in self.terms)
        )

    def scale_poly(self, p: XiPolynomial) -> "ClassExpr":
        if not p:
            return ClassExpr.zero(self.basis)
        return ClassExpr.from_terms(
            self.basis, {t: poly * p for t, poly in self.terms}
        )

    def mul_xi(self, k: int = 1) -> "ClassExpr":
        return ClassExpr(
            self.basis, tuple((t, poly.shift(k)) for t, poly in self.terms)
        )

    def mul_psi_top(self) -> "ClassExpr":
        """Increment the marking of the root-adjacent vertex of every term.

        Defined only for trees with at least two leaves; terms whose bumped
        vertex exceeds the vanishing bound are dropped.
        """
        acc: dict[MarkedTree, XiPolynomial] = {}
        for t, poly in self.terms:
            if not t.children:
                raise ConstraintError("psi-multiplication is not defined on sticks")
            bumped = tree(t.marking + 1, t.children)
            if vanishes(bumped):
                continue
            acc[bumped] = acc[bumped] + poly if bumped in acc else poly
        return ClassExpr.from_terms(self.basis, acc)


def _new_profile_layer(m: int) -> ClassExpr:
    """Sum over profiles with total m and >= 2 parts of (prod k / |Aut|) i_{k...}."""
    acc: dict[MarkedTree, XiPolynomial] = {}
    for p in profiles_with_sum(m, 2):
        t = star(0, [k - 1 for k in p])
        acc[t] = XiPolynomial.constant(Fraction(prod(p), aut_count(p)))
    return ClassExpr.from_terms(SINGULARITY, acc)


@lru_cache(maxsize=None)
def _correction_part(m: int) -> ClassExpr:
    """The non-stick part P_m of the product expansion, by the recursion
    P_m = (new-profile layer) + (m psi - xi) P_{m-1}, P_1 = 0."""
    if m <= 1:
        return ClassExpr.zero(SINGULARITY)
    prev = _correction_part(m - 1)
    return (
        _new_profile_layer(m)
        + prev.mul_psi_top().scale(m)
        - prev.mul_xi(1)
    )


@lru_cache(maxsize=None)
def product_expansion(m: int) -> ClassExpr:
    """Expansion of prod_{r=1}^m (r psi - xi) as a_m plus tree terms."""
    if m < 1:
        raise ConstraintError("m must be >= 1")
    return ClassExpr.single(SINGULARITY, stick(m)) + _correction_part(m)


@lru_cache(maxsize=None)
def psi_decomposition(m: int) -> tuple[Fraction, ...]:
    """Coefficients c_{m,0..m} with psi^m = sum_j c_{m,j} xi^{m-j} prod_{r=1}^j (r psi - xi).

    Found by expanding both sides in the two commuting formal symbols and
    solving the (triangular) linear system exactly.
    """
    if m < 0:
        raise ConstraintError("m must be nonnegative")
    # products[j][t] = coefficient of psi^t (with xi^(j-t) implied) in prod_{r<=j}(r psi - xi)
    products: list[list[Fraction]] = [[Fraction(1)]]
    for j in range(1, m + 1):
        prev = products[-1]
        cur = [Fraction(0)] * (j + 1)
        for t, c in enumerate(prev):
            cur[t + 1] += j * c
            cur[t] -= c
        products.append(cur)
    matrix = [
        [products[j][t] if t <= j else Fraction(0) for j in range(m + 1)]
        for t in range(m + 1)
    ]
    rhs = [Fraction(1) if t == m else Fraction(0) for t in range(m + 1)]
    sol = solve_linear(matrix, rhs)
    if sol.status != "unique":
        raise ConstraintError(f"psi decomposition system was {sol.status}")
    return sol.solution


@lru_cache(maxsize=None)
def psi_power_sing(m: int) -> ClassExpr:
    """psi^m expanded in the singularity basis; homogeneous of codimension m."""
    if m < 0:
        raise ConstraintError("m must be nonnegative")
    coeffs = psi_decomposition(m)
    out = ClassExpr.zero(SINGULARITY)
    for j, c in enumerate(coeffs):
        piece = ClassExpr.unit(SINGULARITY) if j == 0 else product_expansion(j)
        out = out + piece.scale(c).mul_xi(m - j)
    return out


@lru_cache(maxsize=None)
def _tree_basic_expansion(t: MarkedTree) -> ClassExpr:
    """The basic class of a single canonical tree, expanded in the singularity basis."""
    if not t.children:
        return psi_power_sing(t.marking)
    return substitute(t, [psi_power_sing(m) for m in leaf_markings(t)])


def basic_to_sing(e: ClassExpr) -> ClassExpr:
    """Convert a basic-basis expression to the singularity basis.

    Each leaf marked m is replaced by the expansion of psi^m via grafting;
    sticks map through psi_power_sing directly; internal markings pass
    through unchanged.
    """
    if e.basis != BASIC:
        raise ConstraintError("basic_to_sing expects a basic-basis expression")
    out = ClassExpr.zero(SINGULARITY)
    for t, poly in e.terms:
        out = out + _tree_basic_expansion(t).scale_poly(poly)
    return out


def sing_to_basic(e: ClassExpr) -> ClassExpr:
    """Convert a singularity-basis expression to the basic basis.

    Inversion by descending weight: the basic class of a tree T equals
    1/(m_1! ... m_l!) [T]_sing plus strictly lower-weight terms, so peeling
    the highest-weight tree at each step terminates and is exact.
    """
    if e.basis != SINGULARITY:
        raise ConstraintError("sing_to_basic expects a singularity-basis expression")
    residue = e._as_dict()
    out: dict[MarkedTree, XiPolynomial] = {}
    while residue:
        t = max(residue, key=lambda t: (weight(t), encoding(t)))
        poly = residue.pop(t)
        if not poly:
            continue
        lead = poly.scale(prod(factorial(m) for m in leaf_markings(t)))
        out[t] = out[t] + lead if t in out else lead
        for t2, poly2 in _tree_basic_expansion(t).scale_poly(lead).terms:
            if t2 == t:
                continue
            updated = residue.get(t2, XiPolynomial.zero()) - poly2
            if updated:
                residue[t2] = updated
            else:
                residue.pop(t2, None)
    return ClassExpr.from_terms(BASIC, out)


def point_class_tree(p: Profile) -> MarkedTree:
    """Tree carrying the point class over the locus with ramification profile p.

    For l >= 2 branches this is the star with internal marking l - 2 (the
    top power of the cotangent class at the root); for a single branch it is
    the stick a_{k-1}.
    """
    p = make_profile(p)
    if not p:
        raise ConstraintError("profile must be nonempty")
    if len(p) == 1:
        return stick(p[0] - 1)
    return star(len(p) - 2, [k - 1 for k in p])


def point_coefficient_psi(m: int, p: Profile, raw: bool = False) -> Fraction:
    """Coefficient of the point class over the profile-p locus in psi^m.

    Requires m + 2 = l + sum(p).  The value is prod k_i / (|Aut| (sum k_i)!),
    which matches the expansion tables; ``raw=True`` returns the variant
    scaled by m! for inspection.
    """
    p = make_profile(p)
    if not p:
        raise ConstraintError("profile must be nonempty")
    if m + 2 != len(p) + sum(p):
        raise ConstraintError(
            f"need m + 2 = l + sum(profile); got m={m}, profile={p}"
        )
    value = Fraction(prod(p), aut_count(p) * factorial(sum(p)))
    return value * factorial(m) if raw else value


def point_coefficient_delta(ms: Iterable[int], p: Profile) -> Fraction:
    """Coefficient of the point class over the profile-p locus in the
    point-class delta expression with cotangent exponents ms.

    Requires 2 s + sum(ms) = l + sum(p); equals the coefficient of the
    monomial prod x_{k_i} in the product of normalized one-exponent
    polynomials.
    """
    from .cycles import x_polynomial

    ms = [int(v) for v in ms]
    if any(v < 0 for v in ms):
        raise ConstraintError("exponents must be nonnegative")
    p = make_profile(p)
    if 2 * len(ms) + sum(ms) != len(p) + sum(p):
        raise ConstraintError(
            f"need 2 s + sum(ms) = l + sum(profile); got ms={ms}, profile={p}"
        )
    poly = x_polynomial(ms[0], normalized=True) if ms else None
    if poly is None:
        raise ConstraintError("need at least one exponent")
    for v in ms[1:]:
        poly = poly * x_polynomial(v, normalized=True)
    return poly.coefficient(p)
