"""Exact linear algebra and univariate polynomials over Q.

Rationals are :class:`fractions.Fraction`.  Matrices are tiny (a handful of
rows), so plain reduced-fraction Gauss elimination with first-nonzero
pivoting is used throughout.
"""

from __future__ import annotations

from fractions import Fraction
from math import lcm as _ilcm
from typing import Iterable, Sequence

from .errors import SingularMatrix

Rational = Fraction


def Q(x) -> Fraction:
    """Coerce ints, strings like '3/2' and Fractions to a Fraction."""
    return x if isinstance(x, Fraction) else Fraction(x)


def fmt_q(x) -> str:
    """'p/q' with q > 0; integers without '/1'."""
    x = Q(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


class QMatrix:
    """Immutable dense matrix of Fractions, stored row-major."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, rows: int, cols: int, entries: Iterable):
        entries = tuple(Q(e) for e in entries)
        if len(entries) != rows * cols:
            raise ValueError(f"need {rows * cols} entries, got {len(entries)}")
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "cols", cols)
        object.__setattr__(self, "entries", entries)

    def __setattr__(self, name, value):
        raise AttributeError("QMatrix is immutable")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence]) -> "QMatrix":
        rows = [list(r) for r in rows]
        ncols = len(rows[0]) if rows else 0
        if any(len(r) != ncols for r in rows):
            raise ValueError("ragged rows")
        return cls(len(rows), ncols, [e for r in rows for e in r])

    @classmethod
    def from_columns(cls, cols: Sequence[Sequence]) -> "QMatrix":
        return cls.from_rows(list(zip(*cols))) if cols else cls(0, 0, [])

    @classmethod
    def identity(cls, n: int) -> "QMatrix":
        return cls(n, n, [int(i == j) for i in range(n) for j in range(n)])

    @classmethod
    def zero(cls, rows: int, cols: int | None = None) -> "QMatrix":
        cols = rows if cols is None else cols
        return cls(rows, cols, [0] * (rows * cols))

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> tuple:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def column(self, j: int) -> tuple:
        return tuple(self.entries[i * self.cols + j] for i in range(self.rows))

    def to_rows(self) -> list[list[Fraction]]:
        return [list(self.row(i)) for i in range(self.rows)]

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    def transpose(self) -> "QMatrix":
        return QMatrix.from_columns(self.to_rows()) if self.rows else QMatrix(self.cols, 0, [])

    def __eq__(self, other):
        if not isinstance(other, QMatrix):
            return NotImplemented
        return (self.rows, self.cols, self.entries) == (other.rows, other.cols, other.entries)

    def __hash__(self):
        return hash((self.rows, self.cols, self.entries))

    def __add__(self, other: "QMatrix") -> "QMatrix":
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("shape mismatch")
        return QMatrix(self.rows, self.cols, [x + y for x, y in zip(self.entries, other.entries)])

    def __sub__(self, other: "QMatrix") -> "QMatrix":
        return self + other.scale(-1)

    def scale(self, c) -> "QMatrix":
        c = Q(c)
        return QMatrix(self.rows, self.cols, [c * x for x in self.entries])

    def __matmul__(self, other: "QMatrix") -> "QMatrix":
        if self.cols != other.rows:
            raise ValueError("shape mismatch")
        out = []
        for i in range(self.rows):
            r = self.row(i)
            for j in range(other.cols):
                out.append(sum((r[k] * other[k, j] for k in range(self.cols)), Fraction(0)))
        return QMatrix(self.rows, other.cols, out)

    def apply(self, vec: Sequence) -> list[Fraction]:
        """Matrix-vector product."""
        if len(vec) != self.cols:
            raise ValueError("shape mismatch")
        vec = [Q(v) for v in vec]
        return [sum((a * v for a, v in zip(self.row(i), vec)), Fraction(0)) for i in range(self.rows)]

    def __repr__(self):
        return f"QMatrix({[[fmt_q(x) for x in r] for r in self.to_rows()]})"


def _echelon(rows: list[list[Fraction]], ncols: int):
    """Row-reduce in place to reduced echelon form; return pivot columns."""
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        p = rows[r][c]
        rows[r] = [x / p for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return pivots


def rank(m: QMatrix) -> int:
    return len(_echelon(m.to_rows(), m.cols))


def solve_linear(m: QMatrix, rhs: Sequence) -> list[Fraction]:
    """Exact solution of m·x = rhs for square m; SingularMatrix if rank < n."""
    if not m.is_square:
        raise ValueError("solve_linear needs a square matrix")
    n = m.rows
    if len(rhs) != n:
        raise ValueError("rhs length mismatch")
    aug = [r + [Q(b)] for r, b in zip(m.to_rows(), rhs)]
    pivots = _echelon(aug, n)
    if len(pivots) < n:
        raise SingularMatrix(f"matrix has rank {len(pivots)} < {n}")
    return [aug[i][n] for i in range(n)]


def invert(m: QMatrix) -> QMatrix:
    if not m.is_square:
        raise ValueError("invert needs a square matrix")
    n = m.rows
    aug = [r + [Fraction(int(i == j)) for j in range(n)] for i, r in enumerate(m.to_rows())]
    pivots = _echelon(aug, n)
    if len(pivots) < n:
        raise SingularMatrix(f"matrix has rank {len(pivots)} < {n}")
    return QMatrix.from_rows([r[n:] for r in aug])


class QPoly:
    """Univariate polynomial over Q; ``coeffs`` ascending, no trailing zeros."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        cs = [Q(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, name, value):
        raise AttributeError("QPoly is immutable")

    @classmethod
    def x(cls) -> "QPoly":
        return cls([0, 1])

    @classmethod
    def const(cls, c) -> "QPoly":
        return cls([c])

    @classmethod
    def from_roots(cls, roots: Iterable) -> "QPoly":
        p = cls([1])
        for r in roots:
            p = p * cls([-Q(r), 1])
        return p

    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    @property
    def lead(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def is_zero(self) -> bool:
        return not self.coeffs

    def monic(self) -> "QPoly":
        if self.is_zero():
            return self
        return self.scale(1 / self.lead)

    def scale(self, c) -> "QPoly":
        c = Q(c)
        return QPoly(c * x for x in self.coeffs)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = QPoly([other])
        if not isinstance(other, QPoly):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def _coerce(self, other) -> "QPoly":
        return other if isinstance(other, QPoly) else QPoly([other])

    def __add__(self, other) -> "QPoly":
        other = self._coerce(other)
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (Fraction(0),) * (n - len(self.coeffs))
        b = other.coeffs + (Fraction(0),) * (n - len(other.coeffs))
        return QPoly(x + y for x, y in zip(a, b))

    __radd__ = __add__

    def __neg__(self) -> "QPoly":
        return self.scale(-1)

    def __sub__(self, other) -> "QPoly":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "QPoly":
        return self._coerce(other) - self

    def __mul__(self, other) -> "QPoly":
        other = self._coerce(other)
        if self.is_zero() or other.is_zero():
            return QPoly()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, x in enumerate(self.coeffs):
            if x:
                for j, y in enumerate(other.coeffs):
                    out[i + j] += x * y
        return QPoly(out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "QPoly":
        out = QPoly([1])
        for _ in range(k):
            out = out * self
        return out

    def __divmod__(self, other: "QPoly"):
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dq = other.degree
        quot = [Fraction(0)] * max(len(rem) - dq, 0)
        lead = other.lead
        for k in range(len(rem) - 1, dq - 1, -1):
            c = rem[k] / lead
            if c:
                quot[k - dq] = c
                for i, y in enumerate(other.coeffs):
                    rem[k - dq + i] -= c * y
        return QPoly(quot), QPoly(rem[:dq] if dq > 0 else [])

    def __floordiv__(self, other: "QPoly") -> "QPoly":
        return divmod(self, other)[0]

    def __mod__(self, other: "QPoly") -> "QPoly":
        return divmod(self, other)[1]

    def divides(self, other: "QPoly") -> bool:
        """True iff self | other."""
        return (other % self).is_zero()

    def __call__(self, x):
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def compose_affine(self, alpha, beta) -> "QPoly":
        """p(alpha·x + beta)."""
        lin = QPoly([beta, alpha])
        acc = QPoly()
        for c in reversed(self.coeffs):
            acc = acc * lin + c
        return acc

    def shift(self, c) -> "QPoly":
        """p(x + c)."""
        return self.compose_affine(1, c)

    def eval_matrix(self, m: QMatrix) -> QMatrix:
        n = m.rows
        acc = QMatrix.zero(n)
        for c in reversed(self.coeffs):
            acc = (acc @ m) + QMatrix.identity(n).scale(c)
        return acc

    def derivative(self) -> "QPoly":
        return QPoly(i * c for i, c in enumerate(self.coeffs) if i)

    def to_str(self, var: str = "x") -> str:
        if self.is_zero():
            return "0"
        parts = []
        for k in range(self.degree, -1, -1):
            c = self.coeffs[k]
            if c == 0:
                continue
            sign = "-" if c < 0 else "+"
            a = abs(c)
            mono = "" if k == 0 else (var if k == 1 else f"{var}^{k}")
            if not mono:
                body = fmt_q(a)
            elif a == 1:
                body = mono
            else:
                body = f"{fmt_q(a)}*{mono}"
            parts.append((sign, body))
        s = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sign, body in parts[1:]:
            s += f" {sign} {body}"
        return s

    def __str__(self):
        return self.to_str()

    def __repr__(self):
        return f"QPoly({self.to_str()!r})"


def poly_gcd(p: QPoly, q: QPoly) -> QPoly:
    while not q.is_zero():
        p, q = q, p % q
    return p.monic()


def poly_lcm(p: QPoly, q: QPoly) -> QPoly:
    if p.is_zero() or q.is_zero():
        return QPoly()
    return ((p * q) // poly_gcd(p, q)).monic()


def _vector_min_poly(m: QMatrix, v: list[Fraction]) -> QPoly:
    """Monic least-degree p with p(m)·v = 0, via the Krylov sequence of v."""
    n = m.rows
    krylov = [v]
    while True:
        w = m.apply(krylov[-1])
        # Express w in terms of the (independent) Krylov vectors so far.
        k = len(krylov)
        aug = [[krylov[j][i] for j in range(k)] + [w[i]] for i in range(n)]
        pivots = _echelon(aug, k + 1)
        if k not in pivots:
            coeffs = [Fraction(0)] * k
            for r, c in enumerate(pivots):
                coeffs[c] = aug[r][k]
            return QPoly([-c for c in coeffs] + [1])
        krylov.append(w)


def minimal_polynomial(m: QMatrix) -> QPoly:
    """lcm over basis vectors of their Krylov minimal polynomials."""
    if not m.is_square:
        raise ValueError("minimal_polynomial needs a square matrix")
    n = m.rows
    result = QPoly([1])
    for i in range(n):
        e = [Fraction(int(i == j)) for j in range(n)]
        if result.eval_matrix(m).apply(e) == [0] * n:
            continue
        result = poly_lcm(result, _vector_min_poly(m, e))
    return result


def characteristic_polynomial(m: QMatrix) -> QPoly:
    """det(x·I − m) by the Faddeev–LeVerrier recursion (exact over Q)."""
    if not m.is_square:
        raise ValueError("characteristic_polynomial needs a square matrix")
    n = m.rows
    coeffs = [Fraction(0)] * (n + 1)
    coeffs[n] = Fraction(1)
    mk = QMatrix.zero(n)
    ident = QMatrix.identity(n)
    for k in range(1, n + 1):
        mk = m @ mk + ident.scale(coeffs[n - k + 1])
        am = m @ mk
        coeffs[n - k] = -sum((am[i, i] for i in range(n)), Fraction(0)) / k
    return QPoly(coeffs)


def lcm_denominators(values: Iterable[Fraction]) -> int:
    out = 1
    for v in values:
        out = _ilcm(out, Q(v).denominator)
    return out
