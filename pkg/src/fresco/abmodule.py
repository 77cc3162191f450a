"""Free modules over truncated power series in b with a prescribed a-action.

Given columns x_j = a.e_j, the action of a on any element is forced by

    a.(S(b) e_j) = S(b) x_j + b^2 S'(b) e_j

All series are cut at order N (coefficients of b^0..b^N), so results are
exact only through b^N; the commutation check compares through b^(N-1).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import NotSimplePole, PresentationError
from .qexact import Q, QMatrix, QPoly, minimal_polynomial

DEFAULT_TRUNCATION = 8


@dataclass(frozen=True)
class BTruncSeries:
    """c_0 + c_1 b + ... + c_N b^N."""

    coefficients: tuple

    def __post_init__(self):
        object.__setattr__(self, "coefficients", tuple(Q(c) for c in self.coefficients))

    @classmethod
    def from_poly(cls, coeffs: Sequence, order: int) -> "BTruncSeries":
        cs = [Q(c) for c in coeffs][: order + 1]
        return cls(tuple(cs + [Fraction(0)] * (order + 1 - len(cs))))

    @classmethod
    def zero(cls, order: int) -> "BTruncSeries":
        return cls((Fraction(0),) * (order + 1))

    @property
    def order(self) -> int:
        return len(self.coefficients) - 1

    def is_zero(self) -> bool:
        return not any(self.coefficients)

    def __add__(self, other: "BTruncSeries") -> "BTruncSeries":
        return BTruncSeries(tuple(x + y for x, y in zip(self.coefficients, other.coefficients)))

    def __sub__(self, other: "BTruncSeries") -> "BTruncSeries":
        return BTruncSeries(tuple(x - y for x, y in zip(self.coefficients, other.coefficients)))

    def scale(self, c) -> "BTruncSeries":
        c = Q(c)
        return BTruncSeries(tuple(c * x for x in self.coefficients))

    def __mul__(self, other: "BTruncSeries") -> "BTruncSeries":
        n = self.order
        out = [Fraction(0)] * (n + 1)
        for i, x in enumerate(self.coefficients):
            if x:
                for j in range(n + 1 - i):
                    out[i + j] += x * other.coefficients[j]
        return BTruncSeries(tuple(out))

    def times_b(self, k: int = 1) -> "BTruncSeries":
        """Multiply by b^k; the top k coefficients fall off."""
        n = self.order
        return BTruncSeries((Fraction(0),) * min(k, n + 1) + self.coefficients[: max(n + 1 - k, 0)])

    def derivative(self) -> "BTruncSeries":
        """Formal d/db; the top coefficient becomes 0."""
        cs = self.coefficients
        return BTruncSeries(tuple(i * cs[i] for i in range(1, len(cs))) + (Fraction(0),))

    def agrees_with(self, other: "BTruncSeries", upto: int) -> bool:
        return self.coefficients[: upto + 1] == other.coefficients[: upto + 1]

    def __str__(self):
        return QPoly(self.coefficients).to_str("b")


@dataclass(frozen=True)
class ModuleElement:
    coords: tuple

    def __post_init__(self):
        object.__setattr__(self, "coords", tuple(self.coords))

    @classmethod
    def basis(cls, rank: int, j: int, order: int) -> "ModuleElement":
        return cls(tuple(BTruncSeries.from_poly([int(i == j)], order) for i in range(rank)))

    @classmethod
    def zero(cls, rank: int, order: int) -> "ModuleElement":
        return cls(tuple(BTruncSeries.zero(order) for _ in range(rank)))

    @classmethod
    def from_polys(cls, polys: Sequence[Sequence], order: int) -> "ModuleElement":
        return cls(tuple(BTruncSeries.from_poly(p, order) for p in polys))

    def __add__(self, other: "ModuleElement") -> "ModuleElement":
        return ModuleElement(tuple(x + y for x, y in zip(self.coords, other.coords)))

    def __sub__(self, other: "ModuleElement") -> "ModuleElement":
        return ModuleElement(tuple(x - y for x, y in zip(self.coords, other.coords)))

    def scale(self, c) -> "ModuleElement":
        return ModuleElement(tuple(x.scale(c) for x in self.coords))

    def agrees_with(self, other: "ModuleElement", upto: int) -> bool:
        return all(x.agrees_with(y, upto) for x, y in zip(self.coords, other.coords))


@dataclass(frozen=True)
class ABModulePresentation:
    """a_matrix[i][j] is the coefficient of e_i in a.e_j."""

    rank: int
    a_matrix: tuple
    truncation_order: int = DEFAULT_TRUNCATION

    def __post_init__(self):
        if self.truncation_order < 2:
            raise ValueError("truncation order must be >= 2")
        rows = tuple(tuple(self.a_matrix[i]) for i in range(len(self.a_matrix)))
        if len(rows) != self.rank or any(len(r) != self.rank for r in rows):
            raise ValueError(f"a_matrix must be {self.rank}x{self.rank}")
        for r in rows:
            for s in r:
                if s.order != self.truncation_order:
                    raise ValueError("all entries must share the truncation order")
        object.__setattr__(self, "a_matrix", rows)

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence[Sequence]], order: int = DEFAULT_TRUNCATION):
        """columns[j][i] = b-polynomial coefficients (ascending) of A_ij."""
        k = len(columns)
        for j, col in enumerate(columns):
            if len(col) != k:
                raise ValueError(f"column {j} has {len(col)} entries, expected {k}")
            for entry in col:
                if len(QPoly(entry).coeffs) > order + 1:
                    raise ValueError(f"entry exceeds truncation order {order}")
        mat = tuple(
            tuple(BTruncSeries.from_poly(columns[j][i], order) for j in range(k)) for i in range(k)
        )
        return cls(k, mat, order)

    def column(self, j: int) -> ModuleElement:
        return ModuleElement(tuple(self.a_matrix[i][j] for i in range(self.rank)))


def apply_a(m: ABModulePresentation, x: ModuleElement) -> ModuleElement:
    N = m.truncation_order
    if len(x.coords) != m.rank or any(s.order != N for s in x.coords):
        raise ValueError("element does not match the presentation")
    out = ModuleElement.zero(m.rank, N)
    for j, s in enumerate(x.coords):
        if s.is_zero():
            continue
        col = m.column(j)
        out = out + ModuleElement(tuple(s * c for c in col.coords))
        extra = [BTruncSeries.zero(N)] * m.rank
        extra[j] = s.derivative().times_b(2)
        out = out + ModuleElement(tuple(extra))
    return out


def apply_b(x: ModuleElement) -> ModuleElement:
    return ModuleElement(tuple(s.times_b() for s in x.coords))


def is_simple_pole(m: ABModulePresentation) -> bool:
    """a.E inside b.E, i.e. no entry of the a-matrix has a constant term."""
    return all(s.coefficients[0] == 0 for row in m.a_matrix for s in row)


def residue_matrix(m: ABModulePresentation) -> QMatrix:
    """Matrix of -b^-1 a on E/bE: entry (i, j) = -(b-coefficient of A_ij)."""
    return QMatrix.from_rows([[-s.coefficients[1] for s in row] for row in m.a_matrix])


def bernstein_simple_pole(m: ABModulePresentation) -> QPoly:
    if not is_simple_pole(m):
        bad = [
            (i, j) for i, row in enumerate(m.a_matrix) for j, s in enumerate(row) if s.coefficients[0]
        ]
        raise NotSimplePole(f"a.E is not inside b.E: constant terms at (row, col) {bad}")
    return minimal_polynomial(residue_matrix(m))


def commutation_check(m: ABModulePresentation, x: ModuleElement) -> bool:
    """a(bx) - b(ax) == b(bx) through order N-1."""
    lhs = apply_a(m, apply_b(x)) - apply_b(apply_a(m, x))
    rhs = apply_b(apply_b(x))
    return lhs.agrees_with(rhs, m.truncation_order - 1)


def parse_presentation(text: str, order: int = DEFAULT_TRUNCATION) -> ABModulePresentation:
    """One line per column j: comma-separated b-polynomials for A_0j, A_1j, ...

    '#' starts a comment; blank lines are ignored.
    """
    from .polyparse import parse_univariate

    columns = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        entries = []
        for cell in line.split(","):
            try:
                p = parse_univariate(cell.strip(), "b")
            except PresentationError:
                raise
            except Exception as exc:
                raise PresentationError(f"line {lineno}: {exc}") from exc
            if p.degree > order:
                raise PresentationError(
                    f"line {lineno}: entry {cell.strip()!r} has b-degree {p.degree} > truncation {order}"
                )
            entries.append(p.coeffs)
        columns.append(entries)
    if not columns:
        raise PresentationError("empty presentation")
    k = len(columns)
    for j, col in enumerate(columns):
        if len(col) != k:
            raise PresentationError(f"column {j + 1} has {len(col)} entries; rank is {k}")
    return ABModulePresentation.from_columns(columns, order)
