import itertools

import pytest
from hypothesis import given, strategies as st

from gradedpi import checker, engine, fleet
from gradedpi.checker import (EmptyComponent, InhomogeneousValue, MissingAssignment, PreconditionFailed,
                              compare_id_spaces, evaluate, evaluate_generic, find_e_central, is_central,
                              is_identity, is_sharp, multilinear_id_space, rho_dichotomy, strong_falsifier, sweep)
from gradedpi.freepoly import GradedPolynomial, parse_poly, regev, var
from gradedpi.galg import NotSemisimple, algebra_from_table, exponent
from gradedpi.scalars import CycScalar

REMARK = "x[1,s]*x[2,t] - z*x[2,t]*x[1,s]"


def P(text, A):
    return parse_poly(text, A.group, A.m)


def test_evaluate_remark():
    A = fleet.c3c3()
    f = P(REMARK, A)
    val = evaluate(f, A, {var(1, A.group.element("s")): A.b("u_s"), var(2, A.group.element("t")): A.b("u_t")})
    assert val.is_zero()


def test_evaluate_unit():
    A = fleet.qc2()
    assert evaluate(P("x[1,e]", A), A, {var(1, 0): A.one()}) == A.one()


def test_evaluate_errors():
    A = fleet.qc2()
    with pytest.raises(MissingAssignment):
        evaluate(P("x[1,e]*x[2,t]", A), A, {var(1, 0): A.one()})
    with pytest.raises(InhomogeneousValue):
        evaluate(P("x[1,e]", A), A, {var(1, 0): A.b(1)})


def test_generic_square_on_qc2():
    A = fleet.qc2()
    gen = evaluate_generic(P("x[1,t]*x[1,t]", A), A)
    assert gen.coeffs[0] == {(2,): CycScalar.one(1)} and not gen.coeffs[1]


def test_generic_commutator_e_on_qc2():
    A = fleet.qc2()
    assert evaluate_generic(P("x[1,e]*x[2,e] - x[2,e]*x[1,e]", A), A).is_zero()


def test_generic_single_variable():
    A = fleet.m_eg()
    gen = evaluate_generic(P("x[1,e]", A), A)
    assert [bool(c) for c in gen.coeffs] == [True, False, False, True]


def test_generic_empty_component():
    A = algebra_from_table(1, "C2", ["1"], ["e"], {(0, 0): {0: 1}}, unit=["1"])
    with pytest.raises(EmptyComponent):
        evaluate_generic(P("x[1,t]", A), A)
    assert is_identity(P("x[1,t]", A), A).holds


def test_is_identity_examples():
    A = fleet.c3c3()
    assert is_identity(P(REMARK, A), A).holds
    M = fleet.m_eg()
    v = is_identity(P("x[1,e]*x[2,t] - x[2,t]*x[1,e]", M), M)
    assert not v.holds
    assert sorted(M.basis[next(i for i, c in enumerate(x.coeffs) if c)] for x in v.witness.values()) == ["e11", "e12"]
    # A_e of M_(e,t) is the diagonal, so the degree-(e,e) commutator vanishes
    assert is_identity(P("x[1,e]*x[2,e] - x[2,e]*x[1,e]", M), M).holds
    Z = algebra_from_table(1, "C2", [], [], {}, name="0")
    assert is_identity(P("x[1,e]", Z), Z).holds


def test_non_multilinear_routes():
    A = fleet.qc2()
    v = is_identity(P("x[1,t]*x[1,t]", A), A)
    assert not v.holds and v.method == "generic" and not v.value.is_zero()
    assert is_identity(P("x[1,e]*x[1,e]*x[2,t] - x[2,t]*x[1,e]*x[1,e]", A), A).holds
    w = is_identity(P("x[1,e]*x[1,t] - x[1,t]*x[1,e]", A), A)
    assert w.holds and w.method == "sweep"
    M = fleet.m_eg()
    assert not is_identity(P("x[1,t]*x[1,t]", M), M).holds


def test_is_central_examples():
    M2 = fleet.m2_trivial()
    assert is_central(P("x[1,?]*x[2,?] - x[2,?]*x[1,?]", M2), M2).kind == "neither"
    A = fleet.qc2()
    assert is_central(P("x[1,e]", A), A).kind == "central"
    assert is_central(P("x[1,e]*x[2,e] - x[2,e]*x[1,e]", A), A).kind == "identity"


def test_rho_dichotomy():
    M = fleet.m_eg()
    r = find_e_central(M)
    assert rho_dichotomy(r.poly, M).kind == "central"
    A = fleet.qc2()
    assert rho_dichotomy(P("x[1,e]*x[2,e]", A), A).kind == "central"
    assert rho_dichotomy(P("x[1,t]", A), A).kind == "identity"
    with pytest.raises(PreconditionFailed):
        rho_dichotomy(P("x[1,?]*x[2,?] - x[2,?]*x[1,?]", M), M)


def test_strong_falsifier_small():
    A = fleet.qc2()
    assert strong_falsifier(P("x[1,?]", A), A, budget=0).checked == 0
    r = strong_falsifier(P("x[1,?]", A), A)
    assert r.verdict == "counterexample"
    assert r.value == A.b(1)
    r = strong_falsifier(P("x[1,e]*x[2,?]*x[3,?]", fleet.m2_trivial()), fleet.m2_trivial(), check_central=False)
    assert r.verdict == "no_counterexample"  # trivially graded: everything lies in degree e
    with pytest.raises(PreconditionFailed):
        strong_falsifier(P("x[1,?]*x[2,?] - x[2,?]*x[1,?]", fleet.m2_trivial()), fleet.m2_trivial())


def test_sharpness_examples():
    M, A = fleet.m_eg(), fleet.qc2()
    r = find_e_central(M)
    rep = is_sharp(r.poly, [(A, 1), (M, 4)])
    assert rep.sharp and [row[3] for row in rep.rows] == [True, False]
    assert not is_sharp(P("x[1,e]", A), [(A, 1), (M, 4)]).sharp
    assert is_sharp(P("x[1,e]", A), []).sharp


def test_find_e_central_qc2():
    A = fleet.qc2()
    r = find_e_central(A)
    assert r.n == 1 and r.degrees == (0, 0)
    assert r.poly == P("x[1,e]*x[2,e]", A)


def test_find_e_central_values_are_scalar():
    M = fleet.m_eg()
    r = find_e_central(M)
    assert not r.value.is_zero()
    for dom, start, vals in checker.sweep_values(r.poly, M):
        for row in vals:
            x = engine.real_to_element(M, row)
            assert x == M.one() * x.coeffs[0]


def test_find_e_central_needs_semisimple():
    with pytest.raises(NotSemisimple):
        find_e_central(fleet.dual_numbers())


def test_id_space_examples():
    A = fleet.qc2()
    sp = multilinear_id_space(A, (1, 1))
    assert sp.dim == 1
    assert sp.polynomial(sp.basis[0], A.group) == P("x[1,t]*x[2,t] - x[2,t]*x[1,t]", A)
    assert multilinear_id_space(fleet.m2_trivial(), (0, 0)).dim == 0
    for name in ("QC2", "M_(e,t)(Q)", "F^a(C3xC3)"):
        B = fleet.get(name)
        for g in B.support:
            assert multilinear_id_space(B, (g,)).dim == 0


def test_compare_examples():
    A, M, U = fleet.qc2(), fleet.m_eg(), fleet.q_minus_c2()
    assert compare_id_spaces(A, A, 2).equal
    c = compare_id_spaces(A, M, 2)
    assert not c.equal and c.degrees == (0, 1) and c.identity_of == A.name
    assert c.witness == P("x[1,e]*x[2,t] - x[2,t]*x[1,e]", A)
    assert compare_id_spaces(A, U, 3).equal


def test_threads_give_same_result(monkeypatch):
    M2 = fleet.m2_trivial()
    f = regev(2)
    base, _ = sweep(f, M2, "central")
    monkeypatch.setenv("GRADEDPI_THREADS", "3")
    par, _ = sweep(f, M2, "central")
    assert (par.checked, par.nonzero, par.first_bad, par.first_nonzero) == \
        (base.checked, base.nonzero, base.first_bad, base.first_nonzero)
    monkeypatch.setenv("GRADEDPI_THREADS", "2")
    g = parse_poly("x[1,?]*x[2,?]*x[3,?]*x[4,?]*x[5,?]*x[6,?] - x[6,?]*x[5,?]*x[4,?]*x[3,?]*x[2,?]*x[1,?]",
                   M2.group, 1)
    serial = sweep(g, M2, "identity")[0].first_bad
    monkeypatch.setenv("GRADEDPI_THREADS", "1")
    assert serial == sweep(g, M2, "identity")[0].first_bad


# -- properties ---------------------------------------------------------------------------

FLEET_SMALL = ["QC2", "M_(e,t)(Q)", "F^a(C2xC2)-sign", "F^a(C3xC3)", "Q^aC2(u2=-1)", "QC4"]


@st.composite
def multilinear_polys(draw):
    A = fleet.get(draw(st.sampled_from(FLEET_SMALL)))
    G = A.group
    k = draw(st.integers(1, 3))
    degs = [draw(st.sampled_from(A.support)) for _ in range(k)]
    terms = {}
    for perm in itertools.permutations(range(k)):
        c = draw(st.integers(-2, 2))
        if c:
            terms[tuple(var(i + 1, degs[i]) for i in perm)] = CycScalar.rational(A.m, c)
    return A, GradedPolynomial(G, A.m, terms)


def generic_identity(f, A):
    return evaluate_generic(f, A, strict=False).is_zero()


@given(multilinear_polys())
def test_sweep_agrees_with_generic(case):
    A, f = case
    if f.is_zero():
        return
    assert is_identity(f, A).holds == generic_identity(f, A)


@given(multilinear_polys())
def test_central_values_commute(case):
    A, f = case
    if f.is_zero() or is_central(f, A).kind != "central":
        return
    dom = engine.basis_domain(f.variables(), A)
    for tup in engine.all_tuples(dom):
        val = engine.eval_poly(f, A, {v: A.b(b) for v, b in tup})
        assert all(val * A.b(j) == A.b(j) * val for j in range(A.dim))


@given(multilinear_polys())
def test_identity_space_contains_identities(case):
    A, f = case
    if f.is_zero():
        return
    degs = tuple(v[1] for v in sorted(f.variables()))
    sp = multilinear_id_space(A, degs)
    from gradedpi.linalg import Subspace
    S = Subspace(len(sp.perms), A.zero_scalar)
    for v in sp.basis:
        S.add(v)
    vec = [f.terms.get(sp.monomial(p), A.zero_scalar) for p in sp.perms]
    assert (vec in S) == is_identity(f, A).holds
