import random
from fractions import Fraction as F

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from fresco.abops import FactorSequence, bernstein_from_operator, expand_factors, roots_from_factors
from fresco.cases import CASES
from fresco.core import (
    PATH_STRATEGIES,
    MonomialPoly,
    StepContext,
    analyze,
    annihilator,
    build_operator,
    divisor_str,
    path_order,
    pole_report,
    step,
)
from fresco.errors import C1Violation, C2Violation, UnreachableTarget
from fresco.polyparse import parse_form, parse_poly
from fresco.qexact import QMatrix, QPoly

from conftest import FAMILY_BY_ID


def sym_solve(setup, rhs):
    m = sympy.Matrix([[sympy.Integer(int(x)) for x in row] for row in setup.Mtilde.to_rows()])
    sol = m.LUsolve(sympy.Matrix([sympy.Rational(x.numerator, x.denominator) for x in rhs]))
    return [F(int(s.p), int(s.q)) for s in sol]


def test_analyze_quintic(setups):
    s = setups["quintic"]
    assert s.rho == (F(1, 5), F(1, 5), F(2, 5))
    assert (s.rbar, s.p) == (5, (1, 1, 2))
    assert (s.H, s.Jplus, s.Jminus) == ((), (0, 1, 2), ())
    assert s.Delta == (0, 0, 0, 5)
    assert s.delta == (1, 1, 2, 0)
    assert (s.d, s.h, s.r) == (4, 1, 5)
    assert s.u == (-1, -1, -2, 5)
    assert not s.reordered


def test_analyze_cyclic_nonisolated_twocubics(setups):
    c = setups["cyclic"]
    assert c.rho == (F(1, 4),) * 3 and (c.d, c.h, c.r) == (3, 1, 4)
    n = setups["nonisolated"]
    assert n.rho == (F(1, 6),) * 4 and (n.d, n.h) == (4, 2)
    t = setups["twocubics"]
    assert t.rho == (F(1, 3), F(1, 3), F(1, 4), F(1, 4))
    assert t.rbar == 12
    assert t.Delta == (4, 4, 3, 3, 0) and t.delta == (0, 0, 0, 0, 12)
    assert (t.d, t.h, t.r) == (12, 2, -12)


def test_u_closed_form(setups):
    # M~ u = e_0 forces u = (rho, -1) / (|rho| - 1)
    for s in setups.values():
        scale = sum(s.rho) - 1
        assert s.u == tuple(x / scale for x in s.rho) + (-1 / scale,)


def test_quasi_homogeneous_rejected():
    with pytest.raises(C2Violation, match="quasi-homogeneous"):
        analyze(parse_poly("x^3 + y^3 + z^3 + L*x*y*z"))


def test_c1_reordering():
    s = analyze(parse_poly("x + x^2 + L*y"))
    assert s.reordered
    assert s.order == (0, 2, 1)
    assert s.poly.exponents == ((1, 0), (0, 1), (2, 0))
    assert s.lambda_exponents == (0, 1, 0)


def test_c1_violation():
    with pytest.raises(C1Violation):
        analyze(parse_poly("x + x^2 + x^3 + L*x^4", ("x", "y", "z")))


def test_step_twocubics_closed_form(setups):
    s = setups["twocubics"]
    for k in range(12):
        u, v = step(s, StepContext((0, 0, 0, 0), (0, 0, 0, 0, k)), 4)
        assert (u, v) == (-6, 7 * (k + 1))
        assert -v / u == F(7, 6) * (k + 1) and 1 / u == F(-1, 6)


def test_step_quintic_start(setups):
    s = setups["quintic"]
    us = [step(s, StepContext((0, 0, 0), (0, 0, 0, 0)), j)[0] for j in range(4)]
    assert us == [-1, -1, -2, 5]
    with pytest.raises(IndexError):
        step(s, StepContext((0, 0, 0), (0, 0, 0, 0)), 4)


def test_step_matches_direct_solve(setups):
    rng = random.Random(5)
    for s in setups.values():
        for _ in range(5):
            nv = s.poly.nvars
            ctx = StepContext(tuple(rng.randint(0, 4) for _ in range(nv)),
                              tuple(rng.randint(0, 3) for _ in range(s.nmono)))
            gamma = ctx.gamma(s)
            us = sym_solve(s, [1] + [0] * nv)
            vs = sym_solve(s, [0] + list(gamma))
            assert [step(s, ctx, j) for j in range(s.nmono)] == list(zip(us, vs))


def test_build_operator_empty(setups):
    seq = build_operator(setups["quintic"], (0, 0, 0), (0, 0, 0, 0))
    assert seq.factors == () and seq.constant == 1


def test_build_operator_twocubics(setups):
    seq = build_operator(setups["twocubics"], (0,) * 4, (0, 0, 0, 0, 12))
    assert seq.factors == tuple(F(7, 6) * (k + 1) for k in range(11, -1, -1))
    assert seq.constant == F(-1, 6) ** 12


def test_build_operator_cyclic(setups):
    s = setups["cyclic"]
    for path in PATH_STRATEGIES:
        seq = build_operator(s, (0, 0, 0), s.delta, path)
        assert len(seq) == 3
        assert sorted(roots_from_factors(seq)) == [-1, -1, -1]


def test_unreachable_target():
    s = analyze(parse_poly("x^2 + y^3 + L*x^4"))
    assert s.H == (1,)
    assert s.u == (2, 0, -1)
    with pytest.raises(UnreachableTarget):
        build_operator(s, (0, 0), (0, 1, 0))
    assert len(build_operator(s, (0, 0), (2, 0, 1))) == 3


def test_path_order():
    assert path_order((2, 0, 1)) == [0, 0, 2]
    assert path_order((2, 0, 1), "revlex") == [2, 0, 0]
    assert path_order((2, 1, 2), "balanced") == [0, 1, 2, 0, 2]
    with pytest.raises(ValueError):
        path_order((1,), "random")


@pytest.mark.parametrize("case", CASES, ids=[c.id for c in CASES])
def test_reference_rows(case, setups):
    s = setups[case.family.id]
    beta = parse_form(case.form, case.family.variables)
    for path in PATH_STRATEGIES:
        res = annihilator(s, beta, path)
        assert res.divisor_shifts == tuple(sorted(case.shifts)), path
        assert len(res.divisor_roots) == s.d


def test_annihilator_quintic_details(setups):
    res = annihilator(setups["quintic"], (0, 0, 0))
    assert divisor_str(res.divisor_shifts) == "(ξ + 7/10)(ξ + 4/5)^2(ξ + 6/5)"
    assert len(res.Pdh) == 5 and len(res.Pd) == 4
    assert res.c == res.Pdh.constant / res.Pd.constant
    assert res.lambda_power == 5 and res.coefficient_ratio == 1
    z = annihilator(setups["quintic"], (0, 0, 1))
    assert divisor_str(z.divisor_shifts) == "(ξ + 1)^3(ξ + 3/2)"


def test_pole_report_groupings():
    r = pole_report([-1, -1, -1])
    assert len(r.classes) == 1 and r.total_multiplicity == 3
    assert r.classes[0].max_pole_order == 3 and r.classes[0].max_log_power == 2
    q = pole_report([F(-7, 10), F(-4, 5), F(-4, 5), F(-6, 5)])
    assert {c.residue: c.multiplicity for c in q.classes} == {F(7, 10): 1, F(4, 5): 2, F(1, 5): 1}
    six = pole_report([-F(k + 7, 6) for k in range(12)])
    assert {c.residue: c.multiplicity for c in six.classes} == {F(i, 6): 2 for i in range(6)}


def test_divisor_str():
    assert divisor_str(()) == "1"
    assert divisor_str((0, 0, F(1, 2))) == "ξ^2*(ξ + 1/2)"
    assert divisor_str((F(-1, 3),)) == "(ξ - 1/3)"


# --- invariants ---------------------------------------------------------


def test_setup_consistency(setups):
    for s in setups.values():
        M = s.M
        assert M.apply(s.Delta) == M.apply(s.delta)
        assert s.Delta[-1] - s.delta[-1] == s.r
        assert sum(s.Delta) - sum(s.delta) == s.h
        assert not any(s.Delta[j] or s.delta[j] for j in s.H)
        assert s.d >= 1 and s.h >= 1
        assert s.d == sum(s.delta)


def test_u_zero_iff_h(setups):
    extra = [analyze(parse_poly(t)) for t in ("x^2 + y^3 + L*x^4", "x*y + y^2*z + z^3 + L*x^2*y^2")]
    for s in list(setups.values()) + extra:
        assert [j for j in range(s.nmono) if s.u[j] == 0] == list(s.H)


def test_path_validity_and_pipelines(setups):
    rng = random.Random(11)
    for s in setups.values():
        for _ in range(4):
            target = tuple(0 if j in s.H else rng.randint(0, 3) for j in range(s.nmono))
            beta = tuple(rng.randint(0, 3) for _ in range(s.poly.nvars))
            for path in PATH_STRATEGIES:
                seq = build_operator(s, beta, target, path)
                assert len(seq) == sum(target)
                mono = FactorSequence(seq.factors)
                B = bernstein_from_operator(expand_factors(mono))
                assert B == QPoly.from_roots(roots_from_factors(seq))


def _randomized(f: MonomialPoly, rng) -> MonomialPoly:
    cs = tuple(F(rng.choice([-1, 1]) * rng.randint(1, 9), rng.randint(1, 5)) for _ in f.coefficients)
    return MonomialPoly(f.nvars, f.exponents, cs, rng.randint(0, 3))


def test_lambda_independence():
    rng = random.Random(3)
    for fam in FAMILY_BY_ID.values():
        f = parse_poly(fam.poly, fam.variables)
        base = annihilator(analyze(f), (0,) * f.nvars).divisor_roots
        for _ in range(3):
            g = _randomized(f, rng)
            assert annihilator(analyze(g), (0,) * f.nvars).divisor_roots == base


@st.composite
def generic_polys(draw):
    nv = draw(st.integers(2, 3))
    exps = draw(st.lists(st.tuples(*[st.integers(0, 4)] * nv).filter(any),
                         min_size=nv + 1, max_size=nv + 1, unique=True))
    return MonomialPoly(nv, tuple(exps), (1,) * (nv + 1))


def test_resubstitution_random():
    rng = random.Random(1)
    tried = 0
    while tried < 20:
        nv = rng.randint(2, 3)
        exps = set()
        while len(exps) < nv + 1:
            e = tuple(rng.randint(0, 4) for _ in range(nv))
            if any(e):
                exps.add(e)
        try:
            s = analyze(MonomialPoly(nv, tuple(sorted(exps)), (1,) * (nv + 1)))
        except (C1Violation, C2Violation):
            continue
        tried += 1
        ctx = StepContext(tuple(rng.randint(0, 3) for _ in range(nv)),
                          tuple(rng.randint(0, 3) for _ in range(nv + 1)))
        uv = [step(s, ctx, j) for j in range(s.nmono)]
        u = [x for x, _ in uv]
        v = [y for _, y in uv]
        assert s.Mtilde.apply(u) == [1] + [0] * nv
        assert s.Mtilde.apply(v) == [0] + list(ctx.gamma(s))


@settings(max_examples=40, deadline=None)
@given(generic_polys())
def test_random_setups_are_consistent(f):
    try:
        s = analyze(f)
    except (C1Violation, C2Violation):
        return
    assert s.M.apply(s.Delta) == s.M.apply(s.delta)
    assert s.Delta[-1] - s.delta[-1] == s.r
    assert [j for j in range(s.nmono) if s.u[j] == 0] == list(s.H)
    assert s.Mtilde @ s.Mtilde_inv == QMatrix.identity(s.nmono)
    seq = build_operator(s, (0,) * f.nvars, s.delta)
    assert len(seq) == s.d
