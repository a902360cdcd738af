"""Verification suites over the checked-in golden data.

Each suite returns one :class:`CheckResult` per identity so a failure points
at a single golden row; the CLI ``verify`` subcommand prints them and tests
reuse them directly.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from importlib import resources

from . import classes, cycles, grammar, trees
from .classes import BASIC, SINGULARITY, ClassExpr, basic_to_sing, sing_to_basic
from .combinatorics import partitions_of, shifted_power_sum
from .errors import ParseError
from .exact import XiPolynomial, format_rational, parse_rational

__all__ = [
    "CheckResult",
    "load_fixture_rows",
    "check_product_expansions",
    "check_psi_powers",
    "check_basic_to_sing",
    "check_sing_to_basic",
    "check_completed_cycles",
    "check_appendix",
    "check_shifted_power_sums",
    "check_genus0_equality",
    "check_cycle_products",
    "check_roundtrip",
    "run_suite",
    "SUITES",
]


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str = ""

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        text = f"{status}  {self.name}"
        if not self.passed and self.detail:
            text += f"\n      {self.detail}"
        return text


def load_fixture_rows(name: str) -> list[list[str]]:
    source = resources.files("singclass").joinpath("golden", name).read_text()
    rows = []
    for line in source.splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        rows.append([field.strip() for field in line.split("::")])
    return rows


def _diff(expected: str, computed: str) -> str:
    return f"expected: {expected}\n      computed: {computed}"


def check_product_expansions() -> list[CheckResult]:
    out = []
    for m_text, expr_text in load_fixture_rows("product_expansions.txt"):
        m = int(m_text)
        expected = grammar.parse_class(expr_text)
        computed = classes.product_expansion(m)
        out.append(
            CheckResult(
                f"product expansion m={m}",
                computed == expected,
                _diff(grammar.render_class(expected), grammar.render_class(computed)),
            )
        )
    return out


def check_psi_powers() -> list[CheckResult]:
    out = []
    for m_text, expr_text in load_fixture_rows("psi_powers.txt"):
        m = int(m_text)
        expected = grammar.parse_class(expr_text)
        computed = classes.psi_power_sing(m)
        out.append(
            CheckResult(
                f"psi^{m} expansion",
                computed == expected,
                _diff(grammar.render_class(expected), grammar.render_class(computed)),
            )
        )
    return out


def _is_nested(t: trees.MarkedTree) -> bool:
    return bool(t.children) and any(c.children for c in t.children)


def _parse_nested_specs(field: str) -> list[tuple[Fraction, int]]:
    specs = []
    for chunk in field.split(";"):
        coeff_text, power_text = chunk.strip().split("@")
        specs.append((parse_rational(coeff_text), int(power_text)))
    return sorted(specs)


def check_basic_to_sing() -> list[CheckResult]:
    out = []
    for row in load_fixture_rows("basic_to_sing.txt"):
        lhs_text, rhs_text = row[0], row[1]
        nested_specs = _parse_nested_specs(row[2]) if len(row) > 2 else []
        lhs = grammar.parse_class(lhs_text, default_basis=BASIC)
        computed = basic_to_sing(lhs)
        expected_scalar = grammar.parse_class(rhs_text)
        scalar_part: dict[trees.MarkedTree, XiPolynomial] = {}
        nested_monomials: list[tuple[Fraction, int]] = []
        for t, poly in computed.terms:
            if _is_nested(t):
                nested_monomials.extend((c, q) for q, c in poly.monomials())
            else:
                scalar_part[t] = poly
        scalar_expr = ClassExpr.from_terms(SINGULARITY, scalar_part)
        ok = scalar_expr == expected_scalar and (
            sorted((c, q) for c, q in nested_monomials)
            == [(c, q) for c, q in nested_specs]
        )
        nested_text = "; ".join(
            f"{format_rational(c)}@{q}" for c, q in sorted(nested_monomials, key=lambda x: x[1])
        )
        out.append(
            CheckResult(
                f"basic->sing {lhs_text}",
                ok,
                _diff(
                    rhs_text + (f"  [nested: {row[2]}]" if len(row) > 2 else ""),
                    grammar.render_class(scalar_expr)
                    + (f"  [nested: {nested_text}]" if nested_text else ""),
                ),
            )
        )
    return out


def check_sing_to_basic() -> list[CheckResult]:
    out = []
    for lhs_text, rhs_text in load_fixture_rows("sing_to_basic.txt"):
        lhs = grammar.parse_class(lhs_text)
        expected = grammar.parse_class(rhs_text, default_basis=BASIC)
        computed = sing_to_basic(lhs)
        out.append(
            CheckResult(
                f"sing->basic {lhs_text}",
                computed == expected,
                _diff(grammar.render_class(expected), grammar.render_class(computed)),
            )
        )
    return out


def check_completed_cycles() -> list[CheckResult]:
    out = []
    for m_text, expr_text in load_fixture_rows("completed_cycles.txt"):
        m = int(m_text)
        expected = grammar.parse_cycles(expr_text)
        computed = cycles.completed_cycle(m)
        out.append(
            CheckResult(
                f"completed cycle m={m}",
                computed == expected,
                _diff(grammar.render_cycles(expected), grammar.render_cycles(computed)),
            )
        )
    return out


def check_appendix() -> list[CheckResult]:
    return (
        check_product_expansions()
        + check_psi_powers()
        + check_basic_to_sing()
        + check_sing_to_basic()
        + check_completed_cycles()
    )


def _partitions_up_to(n: int):
    for size in range(0, n + 1):
        yield from partitions_of(size)


def check_shifted_power_sums(max_m: int = 5, max_size: int = 8) -> list[CheckResult]:
    out = []
    for m in range(0, max_m + 1):
        element = cycles.completed_cycle(m)
        bad = None
        count = 0
        for lam in _partitions_up_to(max_size):
            count += 1
            left = cycles.evaluate(element, lam)
            right = shifted_power_sum(lam, m)
            if left != right:
                bad = (lam, left, right)
                break
        out.append(
            CheckResult(
                f"shifted-power-sum evaluation m={m} ({count} partitions)",
                bad is None,
                ""
                if bad is None
                else f"lambda={bad[0]}: evaluate={bad[1]} shifted={bad[2]}",
            )
        )
    return out


def check_genus0_equality(max_m: int = 6) -> list[CheckResult]:
    return [
        CheckResult(f"genus-0 coefficients match psi^{m}", cycles.genus0_equality_check(m))
        for m in range(1, max_m + 1)
    ]


def check_cycle_products() -> list[CheckResult]:
    out = []
    squared = cycles.multiply_central((2,), (2,))
    expected = grammar.parse_cycles("C[2,2] + 3*C[3] + 1/2*C[1,1]")
    out.append(
        CheckResult(
            "C_2 * C_2",
            squared == expected,
            _diff(grammar.render_cycles(expected), grammar.render_cycles(squared)),
        )
    )
    for n in (4, 5):
        out.append(
            CheckResult(
                f"C_2 * C_2 in the group algebra of S_{n}",
                cycles.verify_in_group_algebra((2,), (2,), squared, n),
            )
        )
    ones = cycles.multiply_central((1,), (1,))
    expected_ones = grammar.parse_cycles("C[1,1] + C[1]")
    out.append(
        CheckResult(
            "C_1 * C_1",
            ones == expected_ones
            and cycles.verify_in_group_algebra((1,), (1,), ones, 3),
            _diff(grammar.render_cycles(expected_ones), grammar.render_cycles(ones)),
        )
    )
    return out


def check_roundtrip(max_codim: int = 6) -> list[CheckResult]:
    out = []
    generators = trees.enumerate_trees(max_codim)
    bad_basic = None
    for t in generators:
        e = ClassExpr.single(BASIC, t)
        if sing_to_basic(basic_to_sing(e)) != e:
            bad_basic = t
            break
    out.append(
        CheckResult(
            f"sing_to_basic(basic_to_sing) identity on {len(generators)} generators (codim <= {max_codim})",
            bad_basic is None,
            "" if bad_basic is None else f"failed on tree {trees.format_tree(bad_basic)}",
        )
    )
    bad_sing = None
    for t in generators:
        e = ClassExpr.single(SINGULARITY, t)
        if basic_to_sing(sing_to_basic(e)) != e:
            bad_sing = t
            break
    out.append(
        CheckResult(
            f"basic_to_sing(sing_to_basic) identity on {len(generators)} generators (codim <= {max_codim})",
            bad_sing is None,
            "" if bad_sing is None else f"failed on tree {trees.format_tree(bad_sing)}",
        )
    )
    return out


SUITES = {
    "appendix": lambda max_m: check_appendix(),
    "ko": lambda max_m: check_shifted_power_sums(max_m if max_m is not None else 5),
    "equality": lambda max_m: check_genus0_equality(max_m if max_m is not None else 6),
    "cycles": lambda max_m: check_cycle_products(),
    "roundtrip": lambda max_m: check_roundtrip(max_m if max_m is not None else 6),
}


def run_suite(name: str, max_m: int | None = None) -> list[CheckResult]:
    if name not in SUITES:
        raise ParseError(f"unknown verify suite {name!r}")
    return SUITES[name](max_m)
