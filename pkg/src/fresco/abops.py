"""Normal-form arithmetic in the algebra generated by a, b with ab - ba = b^2.

Monomials are kept as a^p b^nu (a-powers on the left).  Moving a b-power
across an a uses

    b^nu a = a b^nu - nu b^(nu+1)

which is the straightening rule everything else is built on.

Homogeneous elements act on the family z^mu (a = multiplication by z,
b = integration from 0) by a rational function of mu; its numerator, the
Mellin symbol, is how Bernstein polynomials are read off.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .errors import NotMonic, ZeroFactor
from .qexact import Q, QPoly, fmt_q


def _mono_str(p: int, nu: int) -> str:
    parts = []
    if p:
        parts.append("a" if p == 1 else f"a^{p}")
    if nu:
        parts.append("b" if nu == 1 else f"b^{nu}")
    return "*".join(parts)


def _terms_str(items) -> str:
    if not items:
        return "0"
    out = []
    for (p, nu), c in items:
        mono = _mono_str(p, nu)
        a = abs(c)
        if not mono:
            body = fmt_q(a)
        elif a == 1:
            body = mono
        else:
            body = f"{fmt_q(a)}*{mono}"
        out.append(("-" if c < 0 else "+", body))
    s = ("-" if out[0][0] == "-" else "") + out[0][1]
    for sign, body in out[1:]:
        s += f" {sign} {body}"
    return s


class ABElement:
    """Finite sum of c * a^p b^nu; zero coefficients are never stored."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[tuple[int, int], object] | None = None):
        clean = {}
        for (p, nu), c in (terms or {}).items():
            if p < 0 or nu < 0:
                raise ValueError("negative exponent")
            c = Q(c)
            if c:
                clean[(p, nu)] = clean.get((p, nu), Fraction(0)) + c
                if not clean[(p, nu)]:
                    del clean[(p, nu)]
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, name, value):
        raise AttributeError("ABElement is immutable")

    @classmethod
    def a(cls) -> "ABElement":
        return cls({(1, 0): 1})

    @classmethod
    def b(cls) -> "ABElement":
        return cls({(0, 1): 1})

    @classmethod
    def const(cls, c) -> "ABElement":
        return cls({(0, 0): c})

    def is_zero(self) -> bool:
        return not self.terms

    def degrees(self) -> set[int]:
        return {p + nu for (p, nu) in self.terms}

    def is_homogeneous(self) -> bool:
        return len(self.degrees()) <= 1

    def __eq__(self, other):
        if isinstance(other, HomogeneousOperator):
            other = other.to_element()
        if not isinstance(other, ABElement):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __add__(self, other: "ABElement") -> "ABElement":
        t = dict(self.terms)
        for k, c in other.terms.items():
            t[k] = t.get(k, Fraction(0)) + c
        return ABElement(t)

    def __neg__(self) -> "ABElement":
        return self.scale(-1)

    def __sub__(self, other: "ABElement") -> "ABElement":
        return self + (-other)

    def scale(self, c) -> "ABElement":
        c = Q(c)
        return ABElement({k: c * v for k, v in self.terms.items()})

    def __mul__(self, other: "ABElement") -> "ABElement":
        return multiply(self, other)

    def __repr__(self):
        return f"ABElement({str(self)!r})"

    def __str__(self):
        items = sorted(self.terms.items(), key=lambda kv: (-(kv[0][0] + kv[0][1]), -kv[0][0]))
        return _terms_str(items)


def _b_pow_times_a_pow(nu: int, p: int) -> dict[tuple[int, int], Fraction]:
    """Normal form of b^nu a^p, one a at a time from the left."""
    # state: {(a_left, b_power): coeff} representing a^a_left b^b_power a^(remaining)
    state = {(0, nu): Fraction(1)}
    for _ in range(p):
        nxt: dict[tuple[int, int], Fraction] = {}
        for (al, bn), c in state.items():
            # b^bn a = a b^bn - bn b^(bn+1)
            nxt[(al + 1, bn)] = nxt.get((al + 1, bn), Fraction(0)) + c
            if bn:
                nxt[(al, bn + 1)] = nxt.get((al, bn + 1), Fraction(0)) - bn * c
        state = nxt
    return state


def multiply(p: ABElement, q: ABElement) -> ABElement:
    """Normal-form product p*q."""
    out: dict[tuple[int, int], Fraction] = {}
    cache: dict[tuple[int, int], dict] = {}
    for (p1, n1), c1 in p.terms.items():
        for (p2, n2), c2 in q.terms.items():
            key = (n1, p2)
            if key not in cache:
                cache[key] = _b_pow_times_a_pow(n1, p2)
            # a^p1 (b^n1 a^p2) b^n2
            for (al, bn), c in cache[key].items():
                k = (p1 + al, bn + n2)
                out[k] = out.get(k, Fraction(0)) + c1 * c2 * c
    return ABElement(out)


@dataclass(frozen=True)
class HomogeneousOperator:
    """sum_i coeffs[i] * a^(k-i) b^i, homogeneous of degree k = len(coeffs) - 1."""

    coeffs: tuple

    def __post_init__(self):
        cs = tuple(Q(c) for c in self.coeffs)
        if not cs:
            raise ValueError("need at least one coefficient")
        object.__setattr__(self, "coeffs", cs)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def is_monic(self) -> bool:
        return self.coeffs[0] == 1

    @classmethod
    def one(cls) -> "HomogeneousOperator":
        return cls((1,))

    @classmethod
    def from_element(cls, e: ABElement) -> "HomogeneousOperator":
        degs = e.degrees()
        if len(degs) > 1:
            raise ValueError(f"element is not homogeneous (degrees {sorted(degs)})")
        k = degs.pop() if degs else 0
        return cls(tuple(e.terms.get((k - i, i), 0) for i in range(k + 1)))

    def to_element(self) -> ABElement:
        k = self.degree
        return ABElement({(k - i, i): c for i, c in enumerate(self.coeffs)})

    def __mul__(self, other: "HomogeneousOperator") -> "HomogeneousOperator":
        # degree is fixed by the factors even if the product vanishes
        k = self.degree + other.degree
        out = multiply(self.to_element(), other.to_element())
        return HomogeneousOperator(tuple(out.terms.get((k - i, i), 0) for i in range(k + 1)))

    def __str__(self):
        k = self.degree
        items = [((k - i, i), c) for i, c in enumerate(self.coeffs) if c]
        return _terms_str(items)


def left_mul_linear(u, v, p: HomogeneousOperator) -> HomogeneousOperator:
    """(u*a + v*b) * p."""
    u, v = Q(u), Q(v)
    if u == 0 and v == 0:
        raise ZeroFactor("linear factor u*a + v*b with u = v = 0")
    lin = ABElement({(1, 0): u, (0, 1): v})
    out = multiply(lin, p.to_element())
    k = p.degree + 1
    return HomogeneousOperator(tuple(out.terms.get((k - i, i), 0) for i in range(k + 1)))


@dataclass(frozen=True)
class MellinSymbol:
    """p * z^mu = numerator(mu) / prod_{t=1..k}(mu + t) * z^(mu + k)."""

    numerator: QPoly
    degree_shift: int


def mellin_symbol(p: HomogeneousOperator) -> MellinSymbol:
    k = p.degree
    num = QPoly()
    for i, c in enumerate(p.coeffs):
        if c:
            term = QPoly([1])
            for t in range(i + 1, k + 1):
                term = term * QPoly([t, 1])
            num = num + term.scale(c)
    return MellinSymbol(num, k)


def bernstein_from_operator(p: HomogeneousOperator) -> QPoly:
    """B with (-b)^k B(-b^-1 a) = p, i.e. B(x) = (-1)^k N(-x-1)."""
    if not p.is_monic:
        raise NotMonic(f"leading a-coefficient is {fmt_q(p.coeffs[0])}, not 1")
    n = mellin_symbol(p).numerator
    return n.compose_affine(-1, -1).scale((-1) ** p.degree)


@dataclass(frozen=True)
class FactorSequence:
    """constant * (a - r_1 b)(a - r_2 b)...(a - r_k b), product left to right."""

    factors: tuple = ()
    constant: Fraction = Fraction(1)

    def __post_init__(self):
        object.__setattr__(self, "factors", tuple(Q(r) for r in self.factors))
        c = Q(self.constant)
        if c == 0:
            raise ZeroFactor("FactorSequence constant must be nonzero")
        object.__setattr__(self, "constant", c)

    def __len__(self):
        return len(self.factors)

    def prepend(self, r, scale=1) -> "FactorSequence":
        """(a - r b) * self, constant multiplied by scale."""
        return FactorSequence((Q(r),) + self.factors, self.constant * Q(scale))

    def factor_str(self, a: str = "a", b: str = "b") -> str:
        if not self.factors:
            return "1"
        parts = []
        for r in self.factors:
            if r == 0:
                parts.append(f"({a})")
            else:
                sign = "-" if r > 0 else "+"
                coef = "" if abs(r) == 1 else f"{fmt_q(abs(r))}*"
                parts.append(f"({a} {sign} {coef}{b})")
        return "".join(parts)

    def __str__(self):
        body = self.factor_str()
        return body if self.constant == 1 else f"{fmt_q(self.constant)}*{body}"


def roots_from_factors(f: FactorSequence) -> list[Fraction]:
    """Bernstein roots -(r_j + j - k), j = 1..k, sorted descending."""
    k = len(f.factors)
    return sorted((-(r + j - k) for j, r in enumerate(f.factors, start=1)), reverse=True)


def expand_factors(f: FactorSequence) -> HomogeneousOperator:
    out = HomogeneousOperator((f.constant,))
    for r in reversed(f.factors):
        out = left_mul_linear(1, -r, out)
    return out


def operator_from_factors(rs: Sequence | Iterable, constant=1) -> HomogeneousOperator:
    return expand_factors(FactorSequence(tuple(rs), constant))
