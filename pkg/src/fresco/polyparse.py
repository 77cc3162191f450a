"""Parser for (n+2)-monomial polynomials, monomial forms and b-polynomials.

Grammar (whitespace-insensitive, explicit '*' required)::

    poly   := sign? term (('+' | '-') term)*
    term   := [coef '*'] factor ('*' factor)*
    coef   := rational | lam ['^' uint] | rational '*' lam ['^' uint]
    factor := var ['^' uint]
    lam    := 'L' | 'lambda'
    rational := uint ['/' uint]

At most one term may carry lambda; it is stored last.  Without one, the last
listed term is the lambda-slot and its coefficient is kept as a specialised
value (``lambda_power == 0``).
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .core import MonomialPoly
from .errors import (
    ArityError,
    ConstantTerm,
    DuplicateMonomial,
    MultipleLambda,
    PolySyntaxError,
    ZeroCoefficient,
)
from .qexact import QPoly, fmt_q

LAMBDA_NAMES = ("L", "lambda")
_MAX_DIGITS = 1000

_TOKEN = re.compile(r"\s*(?:(?P<int>[0-9]+)|(?P<id>[A-Za-z_][A-Za-z0-9_]*)|(?P<op>[-+*/^]))")


@dataclass(frozen=True)
class Token:
    kind: str   # 'int', 'id', 'op', 'end'
    text: str
    pos: int


def tokenize(text: str) -> list[Token]:
    toks = []
    pos = 0
    n = len(text)
    while True:
        while pos < n and text[pos].isspace():
            pos += 1
        if pos >= n:
            break
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise PolySyntaxError(
                f"unexpected character {text[pos]!r}", pos, "number, name or one of + - * / ^", text
            )
        kind = m.lastgroup
        start = m.start(kind)
        toks.append(Token(kind, m.group(kind), start))
        pos = m.end()
    toks.append(Token("end", "", len(text)))
    return toks


@dataclass
class ParsedTerm:
    coefficient: Fraction
    lambda_power: int
    exponent: tuple
    pos: int


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.toks = tokenize(text)
        self.i = 0

    @property
    def tok(self) -> Token:
        return self.toks[self.i]

    def advance(self) -> Token:
        t = self.toks[self.i]
        self.i += 1
        return t

    def error(self, msg, expected=None, tok=None, cls=PolySyntaxError):
        tok = tok or self.tok
        return cls(msg, tok.pos, expected, self.text)

    def accept_op(self, op: str) -> bool:
        if self.tok.kind == "op" and self.tok.text == op:
            self.i += 1
            return True
        return False

    def expect_uint(self, what: str) -> int:
        t = self.tok
        if t.kind != "int":
            raise self.error(f"expected {what}, found {t.text or 'end of input'!r}", "unsigned integer")
        if len(t.text) > _MAX_DIGITS:
            raise self.error("number too long", tok=t)
        self.i += 1
        return int(t.text)

    def optional_power(self) -> int:
        if self.accept_op("^"):
            return self.expect_uint("exponent")
        return 1

    def rational(self) -> Fraction:
        num = self.expect_uint("number")
        if self.accept_op("/"):
            den_tok = self.tok
            den = self.expect_uint("denominator")
            if den == 0:
                raise self.error("zero denominator", tok=den_tok)
            return Fraction(num, den)
        return Fraction(num)

    def end(self):
        if self.tok.kind != "end":
            raise self.error(f"unexpected {self.tok.text!r}", "'+', '-', '*' or end of input")


def _items(p: _Parser, var_index, allow_lambda=True):
    """Parse '*'-separated items of one term: (coef, lambda_power, {var: power}, start)."""
    start = p.tok.pos
    coef = Fraction(1)
    lam = 0
    powers: dict[int, int] = {}
    stage = 0   # 0: rational allowed, 1: lambda allowed, 2: vars only
    first = True
    while True:
        t = p.tok
        if t.kind == "int":
            if stage > 0:
                raise p.error("a number must come first in a term", "variable")
            coef = p.rational()
            stage = 1
        elif t.kind == "id" and t.text in LAMBDA_NAMES:
            if not allow_lambda:
                raise p.error(f"{t.text!r} not allowed here", "variable")
            if stage > 1 or lam:
                raise p.error("lambda must precede the variables of a term", "variable")
            p.advance()
            lam = p.optional_power()
            stage = 2
        elif t.kind == "id":
            idx = var_index(t)
            p.advance()
            e = p.optional_power()
            powers[idx] = powers.get(idx, 0) + e
            stage = 2
        else:
            what = "term" if first else "factor after '*'"
            raise p.error(f"expected {what}, found {t.text or 'end of input'!r}",
                          "number, L or variable")
        first = False
        if not p.accept_op("*"):
            break
    if p.tok.kind in ("int", "id"):
        raise p.error("implicit multiplication is not supported", "'*'")
    return coef, lam, powers, start


def infer_variables(text: str) -> tuple[str, ...]:
    """Variable names in order of first appearance (lambda names excluded)."""
    seen: list[str] = []
    for t in tokenize(text):
        if t.kind == "id" and t.text not in LAMBDA_NAMES and t.text not in seen:
            seen.append(t.text)
    return tuple(seen)


def _var_lookup(p: _Parser, names: Sequence[str]):
    index = {v: i for i, v in enumerate(names)}

    def lookup(tok: Token) -> int:
        if tok.text not in index:
            raise p.error(f"unknown variable {tok.text!r}", "one of " + ", ".join(names), tok)
        return index[tok.text]

    return lookup


def _check_vars(names: Sequence[str]) -> tuple[str, ...]:
    names = tuple(names)
    if len(set(names)) != len(names):
        raise PolySyntaxError(f"duplicate variable names in {names}")
    for v in names:
        if not re.fullmatch(r"[A-Za-z_][A-Za-z0-9_]*", v) or v in LAMBDA_NAMES:
            raise PolySyntaxError(f"invalid variable name {v!r}")
    return names


def parse_terms(text: str, variables: Sequence[str]) -> list[ParsedTerm]:
    names = _check_vars(variables)
    p = _Parser(text)
    lookup = _var_lookup(p, names)
    terms = []
    sign = 1
    if p.accept_op("-"):
        sign = -1
    else:
        p.accept_op("+")
    while True:
        coef, lam, powers, start = _items(p, lookup)
        exp = tuple(powers.get(i, 0) for i in range(len(names)))
        terms.append(ParsedTerm(sign * coef, lam, exp, start))
        if p.accept_op("+"):
            sign = 1
        elif p.accept_op("-"):
            sign = -1
        else:
            break
    p.end()
    return terms


def parse_poly(text: str, variables: Sequence[str] | None = None) -> MonomialPoly:
    if variables is None:
        variables = infer_variables(text)
    names = _check_vars(variables)
    terms = parse_terms(text, names)
    for t in terms:
        if t.coefficient == 0:
            raise ZeroCoefficient("zero coefficient", t.pos, None, text)
        if not any(t.exponent):
            raise ConstantTerm("constant term not allowed: every monomial needs a variable", t.pos, None, text)
    seen: dict[tuple, ParsedTerm] = {}
    for t in terms:
        if t.exponent in seen:
            raise DuplicateMonomial(
                f"monomial repeated (first at column {seen[t.exponent].pos + 1})", t.pos, None, text
            )
        seen[t.exponent] = t
    if len(terms) != len(names) + 1:
        raise ArityError(
            f"{len(terms)} monomials for {len(names)} variables; need exactly {len(names) + 1}",
            None, None, text,
        )
    lam_terms = [t for t in terms if t.lambda_power]
    if len(lam_terms) > 1:
        raise MultipleLambda("lambda may appear in one monomial only", lam_terms[1].pos, None, text)
    if lam_terms:
        slot = lam_terms[0]
        ordered = [t for t in terms if t is not slot] + [slot]
        lam_power = slot.lambda_power
    else:
        ordered = terms
        lam_power = 0
    return MonomialPoly(
        nvars=len(names),
        exponents=tuple(t.exponent for t in ordered),
        coefficients=tuple(t.coefficient for t in ordered),
        lambda_power=lam_power,
    )


def parse_form(text: str, variables: Sequence[str]) -> tuple[int, ...]:
    """Exponent vector beta of the monomial form x^beta dx; '1' gives 0."""
    names = _check_vars(variables)
    p = _Parser(text)
    if p.tok.kind == "int" and p.tok.text == "1" and p.toks[p.i + 1].kind == "end":
        return (0,) * len(names)
    lookup = _var_lookup(p, names)
    powers: dict[int, int] = {}
    while True:
        t = p.tok
        if t.kind != "id" or t.text in LAMBDA_NAMES:
            raise p.error(f"expected variable, found {t.text or 'end of input'!r}", "variable or '1'")
        idx = lookup(t)
        p.advance()
        powers[idx] = powers.get(idx, 0) + p.optional_power()
        if not p.accept_op("*"):
            break
    p.end()
    return tuple(powers.get(i, 0) for i in range(len(names)))


def parse_univariate(text: str, var: str = "b") -> QPoly:
    """Sum of terms [rational '*'] var['^'k]; like terms are added."""
    p = _Parser(text)
    lookup = _var_lookup(p, (var,))
    coeffs: dict[int, Fraction] = {}
    sign = 1
    if p.accept_op("-"):
        sign = -1
    else:
        p.accept_op("+")
    while True:
        coef, _, powers, _ = _items(p, lookup, allow_lambda=False)
        k = powers.get(0, 0)
        coeffs[k] = coeffs.get(k, Fraction(0)) + sign * coef
        if p.accept_op("+"):
            sign = 1
        elif p.accept_op("-"):
            sign = -1
        else:
            break
    p.end()
    deg = max(coeffs)
    return QPoly([coeffs.get(i, 0) for i in range(deg + 1)])


def _monomial_str(exp: Sequence[int], names: Sequence[str]) -> str:
    return "*".join(v if e == 1 else f"{v}^{e}" for v, e in zip(names, exp) if e)


def render_form(beta: Sequence[int], names: Sequence[str]) -> str:
    return _monomial_str(beta, names) or "1"


def render(poly: MonomialPoly, variables: Sequence[str]) -> str:
    """Text that parses back to ``poly`` with the same variables."""
    out = []
    last = len(poly.exponents) - 1
    for j, (exp, c) in enumerate(zip(poly.exponents, poly.coefficients)):
        lam = poly.lambda_power if j == last else 0
        coef_parts = []
        if abs(c) != 1:
            coef_parts.append(fmt_q(abs(c)))
        if lam:
            coef_parts.append("L" if lam == 1 else f"L^{lam}")
        body = "*".join(coef_parts + [_monomial_str(exp, variables)])
        if not out:
            out.append(("-" if c < 0 else "") + body)
        else:
            out.append((" - " if c < 0 else " + ") + body)
    return "".join(out)
