"""Built-in example families with their reference divisors.

Each reference divisor is stored as the shifts q_i of prod (xi + q_i).
Row ids are ``<family>/<form>``; ``--case`` filters by prefix.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction as F


@dataclass(frozen=True)
class Family:
    id: str
    poly: str
    variables: tuple
    note: str


@dataclass(frozen=True)
class Case:
    family: Family
    form: str
    shifts: tuple

    @property
    def id(self) -> str:
        return f"{self.family.id}/{self.form}"


QUINTIC = Family(
    "quintic", "x^5 + y^5 + z^5 + L*x*y*z^2", ("x", "y", "z"),
    "isolated singularity; degree-4 divisors",
)
CYCLIC = Family(
    "cyclic", "x*y^3 + y*z^3 + z*x^3 + L*x*y*z", ("x", "y", "z"),
    "isolated singularity; degree-3 divisors",
)
NONISOLATED = Family(
    "nonisolated", "x*y^2*z^3 + y*z^2*t^3 + z*t^2*x^3 + t*x^2*y^3 + L*x*y*z*t", ("x", "y", "z", "t"),
    "singular locus is four coordinate lines",
)
TWOCUBICS = Family(
    "twocubics", "x*y^2 + x^2*y + z*t^3 + t*z^3 + L*x*y*z*t", ("x", "y", "z", "t"),
    "degree-12 divisor from a single repeated monomial",
)

FAMILIES = (QUINTIC, CYCLIC, NONISOLATED, TWOCUBICS)

CASES = (
    Case(QUINTIC, "1", (F(7, 10), F(4, 5), F(4, 5), F(6, 5))),
    Case(QUINTIC, "x", (F(9, 10), F(1), F(6, 5), F(7, 5))),
    Case(QUINTIC, "z", (F(1), F(1), F(1), F(3, 2))),
    Case(QUINTIC, "z^2", (F(6, 5), F(6, 5), F(13, 10), F(9, 5))),
    Case(QUINTIC, "x*y", (F(11, 10), F(7, 5), F(7, 5), F(8, 5))),
    Case(QUINTIC, "x^2", (F(6, 5), F(8, 5), F(8, 5), F(11, 10))),
    Case(QUINTIC, "x*z", (F(6, 5), F(6, 5), F(7, 5), F(17, 10))),
    Case(QUINTIC, "x*y*z", (F(7, 5), F(8, 5), F(8, 5), F(19, 10))),
    Case(CYCLIC, "1", (F(1), F(1), F(1))),
    Case(CYCLIC, "x", (F(8, 7), F(9, 7), F(11, 7))),
    Case(CYCLIC, "x^2", (F(9, 7), F(11, 7), F(15, 7))),
    Case(CYCLIC, "x*y", (F(10, 7), F(12, 7), F(13, 7))),
    Case(CYCLIC, "x*y*z", (F(2), F(2), F(2))),
    Case(CYCLIC, "x^7", (F(5), F(3), F(2))),
    Case(NONISOLATED, "1", (F(1), F(1), F(1), F(1))),
    Case(TWOCUBICS, "1", tuple(F(k + 7, 6) for k in range(12))),
)


def select(prefix: str | None = None) -> list[Case]:
    if not prefix:
        return list(CASES)
    return [c for c in CASES if c.id == prefix or c.id.startswith(prefix.rstrip("/") + "/")]
