"""Serializable reports for the CLI.

Rationals are written as 'p/q' strings and monomial indices are 1-based in
every report, text or JSON.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .abops import FactorSequence
from .core import MonomialSetup, PoleReport, divisor_str, pole_report
from .qexact import Q, fmt_q


def _qs(xs) -> list[str]:
    return [fmt_q(x) for x in xs]


def _idx(js) -> list[int]:
    return [j + 1 for j in js]


def setup_to_dict(setup: MonomialSetup) -> dict:
    return {
        "order": _idx(setup.order),
        "reordered": setup.reordered,
        "exponents": [list(a) for a in setup.poly.exponents],
        "rho": _qs(setup.rho),
        "rbar": setup.rbar,
        "p": list(setup.p),
        "H": _idx(setup.H),
        "J+": _idx(setup.Jplus),
        "J-": _idx(setup.Jminus),
        "Delta": list(setup.Delta),
        "delta": list(setup.delta),
        "d": setup.d,
        "h": setup.h,
        "r": setup.r,
        "u": _qs(setup.u),
    }


def _vec(xs) -> str:
    return "(" + ", ".join(str(x) if isinstance(x, int) else fmt_q(x) for x in xs) + ")"


def _set(js) -> str:
    return "{" + ", ".join(str(j) for j in js) + "}"


def setup_lines(setup: MonomialSetup) -> list[str]:
    s = setup_to_dict(setup)
    lines = []
    if setup.reordered:
        lines.append(f"monomials reordered to satisfy C1: order = {_vec(s['order'])}")
    lines += [
        f"rho = {_vec(setup.rho)}   |r| = {setup.rbar}   p = {_vec(setup.p)}",
        f"H = {_set(s['H'])}   J+ = {_set(s['J+'])}   J- = {_set(s['J-'])}",
        f"Delta = {_vec(setup.Delta)}   delta = {_vec(setup.delta)}",
        f"d = {setup.d}   h = {setup.h}   r = {setup.r}",
        f"first column of inverse(Mtilde) = {_vec(setup.u)}",
    ]
    return lines


def _factor_dict(fs: FactorSequence) -> dict:
    return {"factors": _qs(fs.factors), "constant": fmt_q(fs.constant)}


def _factor_from(d: dict) -> FactorSequence:
    return FactorSequence(tuple(Fraction(x) for x in d["factors"]), Fraction(d["constant"]))


def ode_rendering(pdh: FactorSequence, pd: FactorSequence, c, kappa, lam_power: int) -> str:
    """Annihilator as text, with a = multiplication by s and b = J (integration from 0 to s)."""
    k = Q(c) * Q(kappa)
    lam = "" if lam_power == 0 else ("L*" if lam_power == 1 else f"L^{lam_power}*")
    sign = "-" if k > 0 else "+"
    coef = "" if abs(k) == 1 else f"{fmt_q(abs(k))}*"
    return (
        f"[{pdh.factor_str('s', 'J')} {sign} {coef}{lam}{pd.factor_str('s', 'J')}] phi(s) = 0"
        "   where s = multiplication by s, J = integration from 0 to s"
    )


@dataclass(frozen=True)
class DivisorReport:
    poly: str
    variables: tuple
    form: str
    beta: tuple
    path: str
    setup: dict
    Pdh: FactorSequence
    Pd: FactorSequence
    c: Fraction
    coefficient_ratio: Fraction
    lambda_power: int
    divisor_shifts: tuple

    @property
    def divisor(self) -> str:
        return divisor_str(self.divisor_shifts)

    @property
    def poles(self) -> PoleReport:
        return pole_report([-q for q in self.divisor_shifts])

    @property
    def ode(self) -> str:
        return ode_rendering(self.Pdh, self.Pd, self.c, self.coefficient_ratio, self.lambda_power)

    def to_dict(self) -> dict:
        return {
            "poly": self.poly,
            "variables": list(self.variables),
            "form": self.form,
            "beta": list(self.beta),
            "path": self.path,
            "setup": self.setup,
            "P_dh": _factor_dict(self.Pdh),
            "P_d": _factor_dict(self.Pd),
            "c": fmt_q(self.c),
            "coefficient_ratio": fmt_q(self.coefficient_ratio),
            "lambda_power": self.lambda_power,
            "divisor_shifts": _qs(self.divisor_shifts),
            "divisor": self.divisor,
            "label": "divisor candidate",
            "pole_report": self.poles.to_dict(),
            "ode": self.ode,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "DivisorReport":
        return cls(
            poly=d["poly"],
            variables=tuple(d["variables"]),
            form=d["form"],
            beta=tuple(d["beta"]),
            path=d["path"],
            setup=d["setup"],
            Pdh=_factor_from(d["P_dh"]),
            Pd=_factor_from(d["P_d"]),
            c=Fraction(d["c"]),
            coefficient_ratio=Fraction(d["coefficient_ratio"]),
            lambda_power=int(d["lambda_power"]),
            divisor_shifts=tuple(Fraction(x) for x in d["divisor_shifts"]),
        )

    def lines(self, setup: MonomialSetup | None = None) -> list[str]:
        out = [
            f"f = {self.poly}   (variables {', '.join(self.variables)})",
            f"omega = {self.form} dx   beta = {_vec(self.beta)}   path = {self.path}",
        ]
        if setup is not None:
            out += setup_lines(setup)
        out += [
            f"P_(d+h) = {self.Pdh.factor_str()}   constant {fmt_q(self.Pdh.constant)}",
            f"P_d     = {self.Pd.factor_str()}   constant {fmt_q(self.Pd.constant)}",
            f"c = {fmt_q(self.c)}   coefficient ratio = {fmt_q(self.coefficient_ratio)}   "
            f"lambda power = {self.lambda_power}",
            f"divisor candidate: B | {self.divisor}",
            "pole lattice constraints:",
        ]
        out += ["  " + ln for ln in self.poles.lines()]
        out.append(f"ode: {self.ode}")
        return out


def divisor_report(poly_text: str, variables: Sequence[str], form: str, beta, path: str,
                   setup: MonomialSetup, result) -> DivisorReport:
    return DivisorReport(
        poly=poly_text,
        variables=tuple(variables),
        form=form,
        beta=tuple(beta),
        path=path,
        setup=setup_to_dict(setup),
        Pdh=result.Pdh,
        Pd=result.Pd,
        c=result.c,
        coefficient_ratio=result.coefficient_ratio,
        lambda_power=result.lambda_power,
        divisor_shifts=result.divisor_shifts,
    )
