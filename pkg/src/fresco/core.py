"""Bernstein divisors for polynomials in n+1 variables with n+2 monomials.

Pipeline: :func:`analyze` computes the combinatorics of the unique rational
relation between the exponent vectors, :func:`step` solves the square linear
system giving ``m_j * w = (u_j a + v_j b) w`` for the current monomial class
``w = m^eta x^beta dx``, :func:`build_operator` chains those steps into a
product of linear factors, and :func:`annihilator` pairs the two sides of the
monomial relation into the two-term annihilator of ``x^beta dx``.

Monomial indices are 0-based throughout the Python API; the last index
``n+1`` is the lambda-slot.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from math import floor, prod
from typing import Sequence

from .abops import FactorSequence, roots_from_factors
from .errors import C1Violation, C2Violation, UnreachableTarget, ZeroPivot
from .qexact import Q, QMatrix, fmt_q, invert, lcm_denominators, rank, solve_linear

PATH_STRATEGIES = ("lex", "revlex", "balanced")


@dataclass(frozen=True)
class MonomialPoly:
    """f = sum_j coefficients[j] * x^exponents[j], last term times lambda^lambda_power.

    ``lambda_power`` is 0 when the lambda-slot carries a plain rational
    (lambda specialised to that value).
    """

    nvars: int
    exponents: tuple
    coefficients: tuple
    lambda_power: int = 1

    def __post_init__(self):
        exps = tuple(tuple(int(e) for e in a) for a in self.exponents)
        coeffs = tuple(Q(c) for c in self.coefficients)
        object.__setattr__(self, "exponents", exps)
        object.__setattr__(self, "coefficients", coeffs)
        if len(exps) != self.nvars + 1:
            raise ValueError(f"need {self.nvars + 1} monomials for {self.nvars} variables, got {len(exps)}")
        if len(coeffs) != len(exps):
            raise ValueError("one coefficient per monomial")
        for a in exps:
            if len(a) != self.nvars:
                raise ValueError(f"exponent {a} has wrong length")
            if any(e < 0 for e in a):
                raise ValueError(f"negative exponent in {a}")
            if not any(a):
                raise ValueError("constant monomial not allowed")
        if len(set(exps)) != len(exps):
            raise ValueError("monomials must be distinct")
        if any(c == 0 for c in coeffs):
            raise ValueError("zero coefficient")
        if self.lambda_power < 0:
            raise ValueError("lambda_power must be >= 0")

    @property
    def n(self) -> int:
        return self.nvars - 1

    def lambda_exponents(self) -> tuple:
        return (0,) * (self.nvars) + (self.lambda_power,)


@dataclass(frozen=True)
class MonomialSetup:
    poly: MonomialPoly              # after any C1 reordering (lambda bookkeeping in lambda_exponents)
    order: tuple                    # order[k] = index in the input poly of slot k
    M: QMatrix
    Mtilde: QMatrix
    Mtilde_inv: QMatrix
    rho: tuple
    rbar: int
    p: tuple
    H: tuple
    Jplus: tuple
    Jminus: tuple
    Delta: tuple
    delta: tuple
    d: int
    h: int
    r: int
    u: tuple
    lambda_exponents: tuple = field(repr=False, default=())

    @property
    def nmono(self) -> int:
        return self.Mtilde.rows

    @property
    def coefficient_ratio(self) -> Fraction:
        """sigma^Delta / sigma^delta (rational parts of the monomial coefficients)."""
        cs = self.poly.coefficients
        num = prod((c ** e for c, e in zip(cs, self.Delta)), start=Fraction(1))
        den = prod((c ** e for c, e in zip(cs, self.delta)), start=Fraction(1))
        return num / den

    @property
    def lambda_power(self) -> int:
        """Power of lambda in m^Delta = kappa * lambda^power * m^delta."""
        return sum(e * (D - dd) for e, D, dd in zip(self.lambda_exponents, self.Delta, self.delta))

    @property
    def reordered(self) -> bool:
        return self.order != tuple(range(len(self.order)))


@dataclass(frozen=True)
class StepContext:
    beta: tuple
    eta: tuple

    def __post_init__(self):
        object.__setattr__(self, "beta", tuple(int(x) for x in self.beta))
        object.__setattr__(self, "eta", tuple(int(x) for x in self.eta))
        if any(x < 0 for x in self.beta) or any(x < 0 for x in self.eta):
            raise ValueError("beta and eta must be non-negative")

    def gamma(self, setup: MonomialSetup) -> tuple:
        """Gamma_i = 1 + beta_i + sum_j alpha_{i,j} eta_j."""
        exps = setup.poly.exponents
        return tuple(
            Fraction(1 + self.beta[i] + sum(a[i] * e for a, e in zip(exps, self.eta)))
            for i in range(setup.poly.nvars)
        )


@dataclass(frozen=True)
class AnnihilatorResult:
    """(Pdh - c * kappa * lambda^lambda_power * Pd)[x^beta dx] = 0."""

    beta: tuple
    path: str
    Pdh: FactorSequence
    Pd: FactorSequence
    c: Fraction
    r: int
    coefficient_ratio: Fraction
    lambda_power: int
    divisor_roots: tuple

    @property
    def divisor_shifts(self) -> tuple:
        """q_i with divisor = prod (xi + q_i), ascending."""
        return tuple(sorted(-x for x in self.divisor_roots))


def _basis_ok(exps: Sequence[Sequence[int]], nvars: int) -> bool:
    return rank(QMatrix.from_columns(exps)) == nvars


def analyze(f: MonomialPoly) -> MonomialSetup:
    nvars = f.nvars
    nm = nvars + 1
    exps = list(f.exponents)
    if rank(QMatrix.from_columns(exps)) < nvars:
        raise C1Violation(
            f"the {nm} exponent vectors span a space of dimension < {nvars}; no ordering satisfies C1"
        )
    order = list(range(nm))
    if not _basis_ok(exps[:nvars], nvars):
        for j in reversed(range(nvars)):
            rest = [k for k in range(nm) if k != j]
            if _basis_ok([exps[k] for k in rest], nvars):
                order = rest + [j]
                break
        else:  # pragma: no cover - rank(M) = nvars guarantees some basis
            raise C1Violation("no ordering of the monomials satisfies C1")

    poly = f
    lam = list(f.lambda_exponents())
    if order != list(range(nm)):
        poly = MonomialPoly(
            nvars,
            tuple(f.exponents[j] for j in order),
            tuple(f.coefficients[j] for j in order),
            0,
        )
        lam = [lam[j] for j in order]
    exps = poly.exponents

    M = QMatrix.from_columns(exps)
    Mt = QMatrix.from_rows([[1] * nm] + M.to_rows())
    if rank(Mt) < nm:
        raise C2Violation("f is quasi-homogeneous: the exponent matrix with a row of ones has rank < n+2")
    Mt_inv = invert(Mt)

    basis = QMatrix.from_columns(exps[:nvars])
    rho = tuple(solve_linear(basis, exps[nvars]))
    rbar = lcm_denominators(rho)
    p = tuple(int(rbar * x) for x in rho)
    H = tuple(j for j in range(nvars) if rho[j] == 0)
    Jp = tuple(j for j in range(nvars) if rho[j] > 0)
    Jm = tuple(j for j in range(nvars) if rho[j] < 0)

    # rbar*alpha_last + sum_{J-} (-p_j) alpha_j = sum_{J+} p_j alpha_j
    left = [0] * nm
    left[nvars] = rbar
    for j in Jm:
        left[j] = -p[j]
    right = [0] * nm
    for j in Jp:
        right[j] = p[j]
    # m^left = lambda^rbar m^right in the normal form (a); sign of r follows
    if sum(left) > sum(right):
        Delta, delta, r = tuple(left), tuple(right), rbar
    else:
        Delta, delta, r = tuple(right), tuple(left), -rbar
    d, h = sum(delta), sum(Delta) - sum(delta)
    u = Mt_inv.column(0)

    return MonomialSetup(
        poly=poly, order=tuple(order), M=M, Mtilde=Mt, Mtilde_inv=Mt_inv,
        rho=rho, rbar=rbar, p=p, H=H, Jplus=Jp, Jminus=Jm,
        Delta=Delta, delta=delta, d=d, h=h, r=r, u=tuple(u),
        lambda_exponents=tuple(lam),
    )


def step(setup: MonomialSetup, ctx: StepContext, j: int) -> tuple[Fraction, Fraction]:
    """(u_j, v_j) with m_j * m^eta x^beta dx = (u_j a + v_j b) m^eta x^beta dx."""
    if not 0 <= j < setup.nmono:
        raise IndexError(f"monomial index {j} out of range")
    inv = setup.Mtilde_inv
    gamma = ctx.gamma(setup)
    u = inv[j, 0]
    v = sum((inv[j, i + 1] * g for i, g in enumerate(gamma)), Fraction(0))
    return u, v


def path_order(target: Sequence[int], strategy: str = "lex") -> list[int]:
    """Sequence of monomial indices, in the order they are multiplied in."""
    budget = list(target)
    if strategy == "lex":
        return [j for j, k in enumerate(budget) for _ in range(k)]
    if strategy == "revlex":
        return [j for j in reversed(range(len(budget))) for _ in range(budget[j])]
    if strategy == "balanced":
        seq = []
        while any(budget):
            for j in range(len(budget)):
                if budget[j]:
                    seq.append(j)
                    budget[j] -= 1
        return seq
    raise ValueError(f"unknown path strategy {strategy!r}; choose from {PATH_STRATEGIES}")


def build_operator(setup: MonomialSetup, beta: Sequence[int], target: Sequence[int],
                   path: str = "lex") -> FactorSequence:
    """Monic factor product P with P[x^beta dx] = constant * m^target x^beta dx."""
    target = tuple(int(t) for t in target)
    if len(target) != setup.nmono or any(t < 0 for t in target):
        raise ValueError(f"target must be a non-negative vector of length {setup.nmono}")
    if len(beta) != setup.poly.nvars:
        raise ValueError(f"beta must have length {setup.poly.nvars}")
    touched = [j for j in setup.H if target[j]]
    if touched:
        raise UnreachableTarget(f"target has support on H at indices {touched}")
    eta = [0] * setup.nmono
    seq = FactorSequence()
    for j in path_order(target, path):
        u, v = step(setup, StepContext(tuple(beta), tuple(eta)), j)
        if u == 0:
            raise ZeroPivot(f"u_{j} = 0 off H")
        # new factor multiplies on the left: (u a + v b) = u (a - (-v/u) b)
        seq = seq.prepend(-v / u, 1 / u)
        eta[j] += 1
    return seq


def annihilator(setup: MonomialSetup, beta: Sequence[int], path: str = "lex") -> AnnihilatorResult:
    beta = tuple(int(b) for b in beta)
    Pdh = build_operator(setup, beta, setup.Delta, path)
    Pd = build_operator(setup, beta, setup.delta, path)
    return AnnihilatorResult(
        beta=beta, path=path, Pdh=Pdh, Pd=Pd,
        c=Pdh.constant / Pd.constant, r=setup.r,
        coefficient_ratio=setup.coefficient_ratio,
        lambda_power=setup.lambda_power,
        divisor_roots=tuple(roots_from_factors(Pd)),
    )


@dataclass(frozen=True)
class PoleClass:
    residue: Fraction      # fractional part of q = -root, in [0, 1)
    roots: tuple           # roots in this class, descending
    multiplicity: int

    @property
    def max_pole_order(self) -> int:
        return self.multiplicity

    @property
    def max_log_power(self) -> int:
        return self.multiplicity - 1


@dataclass(frozen=True)
class PoleReport:
    classes: tuple

    @property
    def total_multiplicity(self) -> int:
        return sum(c.multiplicity for c in self.classes)

    def to_dict(self) -> dict:
        return {
            "classes": [
                {
                    "residue": fmt_q(c.residue),
                    "lattice": f"{fmt_q(c.roots[0])} + Z",
                    "roots": [fmt_q(x) for x in c.roots],
                    "multiplicity": c.multiplicity,
                    "max_pole_order": c.max_pole_order,
                    "max_log_power": c.max_log_power,
                }
                for c in self.classes
            ],
            "total_multiplicity": self.total_multiplicity,
        }

    def lines(self) -> list[str]:
        out = []
        for c in self.classes:
            out.append(
                f"class {fmt_q(c.roots[0])} + Z (residue {fmt_q(c.residue)}): "
                f"{c.multiplicity} root(s) {', '.join(fmt_q(x) for x in c.roots)}; "
                f"poles in this class have order <= {c.max_pole_order}, "
                f"expansion terms carry (log s)^k with k <= {c.max_log_power}"
            )
        out.append("classes not listed: no pole and no asymptotic term of that residue is allowed")
        return out


def pole_report(roots: Sequence) -> PoleReport:
    """Group roots into classes xi + Z by the fractional part of -root."""
    groups: dict[Fraction, list[Fraction]] = defaultdict(list)
    for x in roots:
        q = -Q(x)
        groups[q - floor(q)].append(Q(x))
    classes = tuple(
        PoleClass(res, tuple(sorted(rs, reverse=True)), len(rs))
        for res, rs in sorted(groups.items())
    )
    return PoleReport(classes)


def divisor_str(shifts: Sequence, var: str = "ξ") -> str:
    """prod (var + q_i)^m_i with repeated factors collapsed."""
    if not shifts:
        return "1"
    counts: dict[Fraction, int] = {}
    for q in sorted(Q(s) for s in shifts):
        counts[q] = counts.get(q, 0) + 1
    parts = []
    for q, m in counts.items():
        if q == 0:
            base = var
        else:
            base = f"({var} {'+' if q > 0 else '-'} {fmt_q(abs(q))})"
        parts.append(base if m == 1 else f"{base}^{m}")
    return "".join(parts) if all(p.startswith("(") for p in parts) else "*".join(parts)
