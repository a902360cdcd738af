"""Concrete text grammar: parsing and rendering of class expressions,
cycle expressions, profiles and partitions, with LaTeX and JSON emitters.

Class-expression atoms: ``a_m``, ``i[k1,...,kl]``, ``d[m1,...,ms]``, ``psi``,
``xi``, ``T{tree}@sing`` / ``T{tree}@basic``; terms are joined by ``+``/``-``,
factors by ``*``, exponents by ``^``, coefficients are rationals ``p/q``.
"""

from __future__ import annotations

import json
import re
from fractions import Fraction

from .classes import BASIC, SINGULARITY, ClassExpr
from .combinatorics import Partition, Profile, make_partition, make_profile
from .cycles import CycleExpr, XPolynomial
from .errors import ConstraintError, ParseError, TreeStructureError
from .exact import XiPolynomial, format_rational
from .trees import MarkedTree, encoding, parse_tree, star, stick, tree, vanishes, weight

__all__ = [
    "ordered_monomials",
    "render_class",
    "render_class_latex",
    "class_to_json",
    "parse_class",
    "render_cycles",
    "render_cycles_latex",
    "cycles_to_json",
    "parse_cycles",
    "render_xpoly",
    "render_xpoly_latex",
    "xpoly_to_json",
    "format_profile",
    "parse_profile",
    "format_partition",
    "parse_partition",
]


# ---------------------------------------------------------------------------
# class expressions: rendering

def ordered_monomials(e: ClassExpr) -> list[tuple[MarkedTree, int, Fraction]]:
    """Monomials ordered for display: ascending xi-degree, then descending
    tree weight, then canonical encoding."""
    return sorted(
        e.monomials(), key=lambda m: (m[1], -weight(m[0]), encoding(m[0]))
    )


def _is_star(t: MarkedTree) -> bool:
    return bool(t.children) and all(not c.children for c in t.children)


def _atom_text(t: MarkedTree, basis: str) -> str | None:
    if not t.children:
        m = t.marking
        if m == 0:
            return None
        if basis == SINGULARITY:
            return f"a_{m}"
        return "psi" if m == 1 else f"psi^{m}"
    if _is_star(t):
        marks = sorted(c.marking for c in t.children)
        if basis == SINGULARITY:
            inner = "i[" + ",".join(str(m + 1) for m in marks) + "]"
        else:
            inner = "d[" + ",".join(str(m) for m in marks) + "]"
        p = t.marking
        if p == 0:
            return inner
        return ("psi*" if p == 1 else f"psi^{p}*") + inner
    tag = "sing" if basis == SINGULARITY else "basic"
    return f"T{{{encoding(t)}}}@{tag}"


def render_class(e: ClassExpr) -> str:
    if e.is_zero():
        return "0"
    parts = []
    for t, q, coeff in ordered_monomials(e):
        pieces = []
        atom = _atom_text(t, e.basis)
        xi = None if q == 0 else ("xi" if q == 1 else f"xi^{q}")
        magnitude = abs(coeff)
        if magnitude != 1 or (atom is None and xi is None):
            pieces.append(format_rational(magnitude))
        if xi:
            pieces.append(xi)
        if atom:
            pieces.append(atom)
        parts.append(("-" if coeff < 0 else "+", "*".join(pieces)))
    sign, body = parts[0]
    text = ("-" if sign == "-" else "") + body
    for sign, body in parts[1:]:
        text += f" {sign} {body}"
    return text


def _coeff_latex(c: Fraction) -> str:
    if c.denominator == 1:
        return str(c)
    return f"\\frac{{{c.numerator}}}{{{c.denominator}}}"


def _atom_latex(t: MarkedTree, basis: str) -> str | None:
    if not t.children:
        m = t.marking
        if m == 0:
            return None
        if basis == SINGULARITY:
            return f"a_{{{m}}}"
        return "\\psi" if m == 1 else f"\\psi^{{{m}}}"
    if _is_star(t):
        marks = sorted(c.marking for c in t.children)
        if basis == SINGULARITY:
            inner = "i_{" + ",".join(str(m + 1) for m in marks) + "}"
        else:
            inner = "\\delta_{" + ",".join(str(m) for m in marks) + "}"
        p = t.marking
        if p == 0:
            return inner
        return ("\\psi " if p == 1 else f"\\psi^{{{p}}} ") + inner
    tag = "\\mathrm{sing}" if basis == SINGULARITY else "\\mathrm{basic}"
    return f"\\left[{encoding(t)}\\right]_{{{tag}}}"


def render_class_latex(e: ClassExpr) -> str:
    if e.is_zero():
        return "0"
    parts = []
    for t, q, coeff in ordered_monomials(e):
        pieces = []
        atom = _atom_latex(t, e.basis)
        xi = None if q == 0 else ("\\xi" if q == 1 else f"\\xi^{{{q}}}")
        magnitude = abs(coeff)
        if magnitude != 1 or (atom is None and xi is None):
            pieces.append(_coeff_latex(magnitude))
        if xi:
            pieces.append(xi)
        if atom:
            pieces.append(atom)
        parts.append(("-" if coeff < 0 else "+", " ".join(pieces)))
    sign, body = parts[0]
    text = ("-" if sign == "-" else "") + body
    for sign, body in parts[1:]:
        text += f" {sign} {body}"
    return text


def class_to_json(e: ClassExpr) -> str:
    payload = {
        "basis": e.basis,
        "codim": e.total_codim,
        "terms": [
            {
                "coeff": format_rational(coeff),
                "xi_power": q,
                "tree": encoding(t),
            }
            for t, q, coeff in ordered_monomials(e)
        ],
    }
    return json.dumps(payload, indent=2)


# ---------------------------------------------------------------------------
# class expressions: parsing

_TOKEN_RE = re.compile(
    r"(?P<WS>\s+)"
    r"|(?P<TREE>T\{[^{}]*\})"
    r"|(?P<ATOM_A>a_\d+)"
    r"|(?P<NUMBER>\d+)"
    r"|(?P<NAME>[A-Za-z]+)"
    r"|(?P<OP>[-+*/^\[\],@])"
)


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    while pos < len(text):
        match = _TOKEN_RE.match(text, pos)
        if match is None:
            raise ParseError(f"unexpected character {text[pos]!r}", pos)
        kind = match.lastgroup
        if kind != "WS":
            tokens.append((kind, match.group(), pos))
        pos = match.end()
    tokens.append(("END", "", len(text)))
    return tokens


class _ClassParser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = _tokenize(text)
        self.index = 0

    def peek(self):
        return self.tokens[self.index]

    def advance(self):
        token = self.tokens[self.index]
        self.index += 1
        return token

    def expect_op(self, op: str):
        kind, value, pos = self.peek()
        if kind != "OP" or value != op:
            raise ParseError(f"expected {op!r}", pos)
        return self.advance()

    def parse_int_list(self) -> list[int]:
        self.expect_op("[")
        values = []
        while True:
            kind, value, pos = self.peek()
            if kind != "NUMBER":
                raise ParseError("expected an integer", pos)
            self.advance()
            values.append(int(value))
            kind, value, pos = self.peek()
            if kind == "OP" and value == ",":
                self.advance()
                continue
            break
        self.expect_op("]")
        return values

    def parse_exponent(self) -> int:
        kind, value, _ = self.peek()
        if kind == "OP" and value == "^":
            self.advance()
            kind, value, pos = self.peek()
            if kind != "NUMBER":
                raise ParseError("expected an integer exponent", pos)
            self.advance()
            return int(value)
        return 1

    def parse_term(self):
        coeff = Fraction(1)
        xi_power = 0
        psi_power = 0
        atom = None  # (kind, payload, position)
        while True:
            kind, value, pos = self.peek()
            if kind == "NUMBER":
                self.advance()
                numerator = int(value)
                k2, v2, _ = self.peek()
                if k2 == "OP" and v2 == "/":
                    self.advance()
                    k3, v3, p3 = self.peek()
                    if k3 != "NUMBER":
                        raise ParseError("expected a denominator", p3)
                    self.advance()
                    if int(v3) == 0:
                        raise ParseError("zero denominator", p3)
                    coeff *= Fraction(numerator, int(v3))
                else:
                    coeff *= numerator
            elif kind == "NAME" and value == "xi":
                self.advance()
                xi_power += self.parse_exponent()
            elif kind == "NAME" and value == "psi":
                self.advance()
                psi_power += self.parse_exponent()
            elif kind == "ATOM_A":
                self.advance()
                if atom is not None:
                    raise ParseError("a term may contain at most one class atom", pos)
                atom = ("a", int(value[2:]), pos)
            elif kind == "NAME" and value in ("i", "d"):
                self.advance()
                if atom is not None:
                    raise ParseError("a term may contain at most one class atom", pos)
                atom = (value, self.parse_int_list(), pos)
            elif kind == "TREE":
                self.advance()
                if atom is not None:
                    raise ParseError("a term may contain at most one class atom", pos)
                inner = value[2:-1]
                kind2, value2, pos2 = self.peek()
                if not (kind2 == "OP" and value2 == "@"):
                    raise ParseError("tree atom needs a basis tag @sing or @basic", pos2)
                self.advance()
                kind3, value3, pos3 = self.peek()
                if kind3 != "NAME" or value3 not in ("sing", "basic"):
                    raise ParseError("basis tag must be sing or basic", pos3)
                self.advance()
                try:
                    parsed = parse_tree(inner)
                except (ParseError, TreeStructureError) as exc:
                    raise ParseError(f"bad tree literal: {exc}", pos) from None
                tag = SINGULARITY if value3 == "sing" else BASIC
                atom = ("tree", (parsed, tag), pos)
            else:
                raise ParseError("expected a factor", pos)
            kind, value, _ = self.peek()
            if kind == "OP" and value == "*":
                self.advance()
                continue
            break
        return coeff, xi_power, psi_power, atom

    def build_term(self, coeff, xi_power, psi_power, atom):
        """Resolve a parsed term to (tree, xi_power, coeff, basis constraint)."""
        if atom is None:
            if psi_power > 0:
                return stick(psi_power), xi_power, coeff, BASIC
            return stick(0), xi_power, coeff, None
        kind, payload, pos = atom
        if kind == "a":
            if psi_power:
                raise ParseError("psi * a_m is not a class atom", pos)
            constraint = SINGULARITY if payload > 0 else None
            return stick(payload), xi_power, coeff, constraint
        if kind == "i":
            if len(payload) < 2 or any(k < 1 for k in payload):
                raise ParseError(
                    "i[...] needs at least two ramification orders >= 1", pos
                )
            return (
                star(psi_power, [k - 1 for k in payload]),
                xi_power,
                coeff,
                SINGULARITY,
            )
        if kind == "d":
            if len(payload) < 2:
                raise ParseError("d[...] needs at least two exponents", pos)
            return star(psi_power, payload), xi_power, coeff, BASIC
        parsed, tag = payload
        if psi_power:
            if not parsed.children and tag == SINGULARITY:
                raise ParseError("psi * a_m is not a class atom", pos)
            parsed = tree(parsed.marking + psi_power, parsed.children)
        return parsed, xi_power, coeff, tag

    def parse(self, default_basis: str) -> ClassExpr:
        acc: dict[MarkedTree, XiPolynomial] = {}
        constraints: set[str] = set()
        sign = 1
        kind, value, _ = self.peek()
        if kind == "OP" and value == "-":
            self.advance()
            sign = -1
        while True:
            term = self.parse_term()
            t, q, coeff, constraint = self.build_term(*term)
            if constraint:
                constraints.add(constraint)
            if coeff != 0 and not vanishes(t):
                poly = XiPolynomial.xi_power(q, sign * coeff)
                acc[t] = acc[t] + poly if t in acc else poly
            kind, value, pos = self.peek()
            if kind == "OP" and value in ("+", "-"):
                self.advance()
                sign = 1 if value == "+" else -1
                continue
            if kind == "END":
                break
            raise ParseError("expected '+', '-' or end of expression", pos)
        if len(constraints) > 1:
            raise ParseError(
                "expression mixes singularity-basis and basic-basis atoms"
            )
        basis = constraints.pop() if constraints else default_basis
        try:
            return ClassExpr.from_terms(basis, acc)
        except ConstraintError as exc:
            raise ParseError(str(exc)) from None


def parse_class(text: str, default_basis: str = SINGULARITY) -> ClassExpr:
    """Parse a class expression; the basis is inferred from the atoms.

    ``i[...]`` and ``T{...}@sing`` force the singularity basis; ``d[...]``,
    bare psi powers and ``T{...}@basic`` force the basic one.  Mixing the two
    is an error, and expressions built only from rationals, xi powers and
    ``a_0`` fall back to ``default_basis``.
    """
    if not text.strip():
        raise ParseError("empty expression", 0)
    if text.strip() == "0":
        return ClassExpr.zero(default_basis)
    return _ClassParser(text).parse(default_basis)


# ---------------------------------------------------------------------------
# cycle expressions

def render_cycles(c: CycleExpr) -> str:
    if c.is_zero():
        return "0"
    parts = []
    for p, coeff in c.terms:
        magnitude = abs(coeff)
        if not p:
            body = format_rational(magnitude)
        else:
            atom = "C[" + ",".join(str(k) for k in p) + "]"
            body = atom if magnitude == 1 else f"{format_rational(magnitude)}*{atom}"
        parts.append(("-" if coeff < 0 else "+", body))
    sign, body = parts[0]
    text = ("-" if sign == "-" else "") + body
    for sign, body in parts[1:]:
        text += f" {sign} {body}"
    return text


def render_cycles_latex(c: CycleExpr) -> str:
    if c.is_zero():
        return "0"
    parts = []
    for p, coeff in c.terms:
        magnitude = abs(coeff)
        if not p:
            body = _coeff_latex(magnitude)
        else:
            atom = "C_{" + ",".join(str(k) for k in p) + "}"
            body = atom if magnitude == 1 else f"{_coeff_latex(magnitude)} {atom}"
        parts.append(("-" if coeff < 0 else "+", body))
    sign, body = parts[0]
    text = ("-" if sign == "-" else "") + body
    for sign, body in parts[1:]:
        text += f" {sign} {body}"
    return text


def cycles_to_json(c: CycleExpr) -> str:
    payload = {
        "terms": [
            {"coeff": format_rational(coeff), "profile": list(p)}
            for p, coeff in c.terms
        ]
    }
    return json.dumps(payload, indent=2)


def parse_cycles(text: str) -> CycleExpr:
    """Parse ``1/2*C[3] + 1/4*C[1,1] + 1/24*C[1]``; a bare rational is the identity."""
    if not text.strip():
        raise ParseError("empty expression", 0)
    if text.strip() == "0":
        return CycleExpr.zero()
    parser = _ClassParser(text)
    acc: dict[Profile, Fraction] = {}
    sign = 1
    kind, value, _ = parser.peek()
    if kind == "OP" and value == "-":
        parser.advance()
        sign = -1
    while True:
        coeff = Fraction(1)
        profile = None
        while True:
            kind, value, pos = parser.peek()
            if kind == "NUMBER":
                parser.advance()
                numerator = int(value)
                k2, v2, _ = parser.peek()
                if k2 == "OP" and v2 == "/":
                    parser.advance()
                    k3, v3, p3 = parser.peek()
                    if k3 != "NUMBER":
                        raise ParseError("expected a denominator", p3)
                    parser.advance()
                    coeff *= Fraction(numerator, int(v3))
                else:
                    coeff *= numerator
            elif kind == "NAME" and value == "C":
                parser.advance()
                if profile is not None:
                    raise ParseError("a term may contain at most one C atom", pos)
                profile = make_profile(parser.parse_int_list())
            else:
                raise ParseError("expected a factor", pos)
            kind, value, _ = parser.peek()
            if kind == "OP" and value == "*":
                parser.advance()
                continue
            break
        key = profile if profile is not None else ()
        acc[key] = acc.get(key, Fraction(0)) + sign * coeff
        kind, value, pos = parser.peek()
        if kind == "OP" and value in ("+", "-"):
            parser.advance()
            sign = 1 if value == "+" else -1
            continue
        if kind == "END":
            break
        raise ParseError("expected '+', '-' or end of expression", pos)
    return CycleExpr.from_terms(acc)


# ---------------------------------------------------------------------------
# x-polynomials (output only)

def render_xpoly(x: XPolynomial) -> str:
    if not x.terms:
        return "0"
    parts = []
    for p, coeff in x.terms:
        powers: dict[int, int] = {}
        for k in p:
            powers[k] = powers.get(k, 0) + 1
        body_atoms = [
            f"x{k}" if e == 1 else f"x{k}^{e}" for k, e in sorted(powers.items())
        ]
        magnitude = abs(coeff)
        pieces = ([format_rational(magnitude)] if magnitude != 1 or not body_atoms else []) + body_atoms
        parts.append(("-" if coeff < 0 else "+", "*".join(pieces)))
    sign, body = parts[0]
    text = ("-" if sign == "-" else "") + body
    for sign, body in parts[1:]:
        text += f" {sign} {body}"
    return text


def render_xpoly_latex(x: XPolynomial) -> str:
    if not x.terms:
        return "0"
    parts = []
    for p, coeff in x.terms:
        powers: dict[int, int] = {}
        for k in p:
            powers[k] = powers.get(k, 0) + 1
        body_atoms = [
            f"x_{{{k}}}" if e == 1 else f"x_{{{k}}}^{{{e}}}"
            for k, e in sorted(powers.items())
        ]
        magnitude = abs(coeff)
        pieces = ([_coeff_latex(magnitude)] if magnitude != 1 or not body_atoms else []) + body_atoms
        parts.append(("-" if coeff < 0 else "+", " ".join(pieces)))
    sign, body = parts[0]
    text = ("-" if sign == "-" else "") + body
    for sign, body in parts[1:]:
        text += f" {sign} {body}"
    return text


def xpoly_to_json(x: XPolynomial) -> str:
    payload = {
        "terms": [
            {"coeff": format_rational(coeff), "monomial": list(p)}
            for p, coeff in x.terms
        ]
    }
    return json.dumps(payload, indent=2)


# ---------------------------------------------------------------------------
# profiles and partitions

def format_profile(p: Profile) -> str:
    return "{" + ",".join(str(k) for k in p) + "}"


def parse_profile(text: str) -> Profile:
    s = text.strip()
    if s.startswith("{") and s.endswith("}"):
        s = s[1:-1]
    if not s.strip():
        return ()
    try:
        parts = [int(x) for x in s.split(",")]
    except ValueError as exc:
        raise ParseError(f"bad profile literal: {text!r}") from exc
    try:
        return make_profile(parts)
    except ConstraintError as exc:
        raise ParseError(str(exc)) from None


def format_partition(lam: Partition) -> str:
    return "[" + ",".join(str(r) for r in lam) + "]"


def parse_partition(text: str) -> Partition:
    s = text.strip()
    if s.startswith("[") and s.endswith("]"):
        s = s[1:-1]
    if not s.strip():
        return ()
    try:
        rows = [int(x) for x in s.split(",")]
    except ValueError as exc:
        raise ParseError(f"bad partition literal: {text!r}") from exc
    try:
        return make_partition(rows)
    except ConstraintError as exc:
        raise ParseError(str(exc)) from None
