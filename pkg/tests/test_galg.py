import itertools
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, strategies as st

from gradedpi import fleet
from gradedpi.galg import (AlgElement, GradedAlgebra, InvalidAlgebra, NotNormalized, NotTwistedMatrixForm,
                           algebra_from_table, base_field, bicharacter_cocycle, center, central_idempotents,
                           cocycle_validate, exponent, graded_ideal_closure, group_algebra, is_g_division,
                           is_g_simple, map_components, matrix_graded, opposite, regrade_quotient,
                           star_involution, tensor_graded, trace_radical, trivial_cocycle, twisted_group_algebra)
from gradedpi.groups import cyclic, group_build, quotient
from gradedpi.scalars import CycScalar

Q1 = lambda x: CycScalar.rational(1, x)


def brute_cocycle_identity(G, c):
    for g, h, k in itertools.product(range(G.order), repeat=3):
        if c(g, h) * c(G.mul(g, h), k) != c(h, k) * c(g, G.mul(h, k)):
            return False
    return True


def test_trivial_cocycle_accepted():
    G = cyclic(3)
    assert brute_cocycle_identity(G, trivial_cocycle(G))


def test_bicharacter_accepted():
    A = fleet.c3c3()
    c = A.twisted.cocycle
    assert brute_cocycle_identity(c.group, c)


def test_unnormalized_rejected():
    G = cyclic(3)
    one, z = CycScalar.one(3), CycScalar.zeta(3, 1)
    vals = [[one] * 3 for _ in range(3)]
    vals[0][1] = z
    with pytest.raises(NotNormalized):
        cocycle_validate(G, 3, vals)


def test_c3c3_relations():
    A = fleet.c3c3()
    us, ut = A.b("u_s"), A.b("u_t")
    assert us * us * us == A.one() == ut * ut * ut
    assert us * ut == (ut * us) * CycScalar.zeta(3, 1)


def test_group_algebra_c2():
    A = fleet.qc2()
    assert A.b(1) * A.b(1) == A.one()


def sign_rep():
    """u_a -> diag(1,-1), u_b -> swap: an explicit isomorphism onto M_2(Q)."""
    ua = np.array([[1, 0], [0, -1]])
    ub = np.array([[0, 1], [1, 0]])
    return {"1": np.eye(2, dtype=int), "u_a": ua, "u_b": ub, "u_ab": ua @ ub}


def test_sign_algebra_is_matrix_algebra():
    A = fleet.sign_algebra()
    rep = sign_rep()
    ua, ub = A.b("u_a"), A.b("u_b")
    assert ua * ub == -(ub * ua) and ua * ua == A.one() == ub * ub
    img = lambda x: sum(int(c.to_fraction()) * rep[n] for n, c in zip(A.basis, x.coeffs))
    for i, j in itertools.product(range(4), repeat=2):
        assert np.array_equal(img(A.b(i) * A.b(j)), rep[A.basis[i]] @ rep[A.basis[j]])
    assert np.linalg.matrix_rank(np.array([rep[n].ravel() for n in A.basis])) == 4


def test_matrix_grading_e_g():
    A = fleet.m_eg()
    G = A.group
    deg = dict(zip(A.basis, (G.elements[g] for g in A.degrees)))
    assert deg == {"e11": "e", "e12": "t", "e21": "t", "e22": "e"}
    assert {g: len(i) for g, i in A.components.items()} == {0: 2, 1: 2}


def test_matrix_grading_all_e():
    B = fleet.qc2()
    A = matrix_graded(B, ["e", "e"])
    assert set(A.support) == set(B.support)


def test_matrix_grading_over_twisted():
    A = fleet.sign_matrix()
    G = A.group
    for idx, name in enumerate(A.basis):
        h, rest = divmod(idx, 4)
        i, j = divmod(rest, 2)
        gt = [0, G.element("a")]
        assert A.degrees[idx] == G.prod([G.inv(gt[i]), h, gt[j]])


def test_tensor():
    A = tensor_graded(fleet.qc2(), fleet.qc2())
    assert A.dim == 4
    assert all(len(i) == 1 for i in A.components.values()) and len(A.components) == 4
    F = base_field(group_build("C1") if False else cyclic(1))
    B = tensor_graded(fleet.qc2(), F)
    assert B.dim == 2


def test_opposite():
    A = fleet.c3c3()
    assert opposite(opposite(A)).sc == A.sc
    c3 = twisted_group_algebra(trivial_cocycle(cyclic(3, "s")))
    op = opposite(c3)
    s, s2 = c3.group.element("s"), c3.group.element("s2")
    assert len(op.component_indices(s)) == len(c3.component_indices(s2)) == 1
    assert is_g_simple(opposite(fleet.sign_algebra())).verdict == "simple"


def test_regrade_quotient():
    A = fleet.qc4()
    G = A.group
    whole = regrade_quotient(A, quotient(G, range(4)))
    assert len(whole.components) == 1
    same = regrade_quotient(A, quotient(G, [0]))
    assert [len(same.component_indices(g)) for g in range(4)] == [1, 1, 1, 1]
    half = regrade_quotient(A, quotient(G, [0, 2]))
    assert len(half.component_indices(0)) == 2


def test_elem_ops():
    A = fleet.qc4()
    x = A.b(0) + A.b(1)
    assert x.component(0) == A.b(0)
    M = fleet.m_eg()
    assert M.b("e12") * M.b("e21") == M.b("e11")


def test_center():
    M = fleet.m2_trivial()
    Z, Ze = center(M)
    assert len(Z) == len(Ze) == 1
    assert Z[0] * M.b(1) == M.b(1) * Z[0]
    Z, Ze = center(fleet.qc2())
    assert (len(Z), len(Ze)) == (2, 1)
    assert len(center(fleet.sign_algebra())[0]) == 1


def test_map_components():
    A = fleet.qc4()
    ut = A.b(1)
    L = A.left_matrix(ut.coeffs)
    comps = map_components(L, A)
    assert list(comps) == [1]
    ident = [[A.one_scalar if i == j else A.zero_scalar for j in range(4)] for i in range(4)]
    assert list(map_components(ident, A)) == [0]


@given(st.lists(st.integers(-4, 4), min_size=4, max_size=4))
def test_map_components_sum(vals):
    A = fleet.qc2()
    phi = [[Q1(vals[0]), Q1(vals[1])], [Q1(vals[2]), Q1(vals[3])]]
    comps = map_components(phi, A)
    total = [[sum((comps[g][i][j] for g in comps), Q1(0)) for j in range(2)] for i in range(2)]
    assert total == phi


def test_radical():
    assert trace_radical(fleet.m2_trivial()) == []
    assert trace_radical(fleet.qc2()) == []
    D = fleet.dual_numbers()
    rad = trace_radical(D)
    assert len(rad) == 1 and rad[0].coeffs[0] == 0


def test_idempotents_qc2():
    A = fleet.qc2()
    ids = central_idempotents(A)
    half = Fraction(1, 2)
    got = sorted(tuple(c.to_fraction() for c in e.element.coeffs) for e in ids)
    assert got == [(half, -half), (half, half)]
    assert all(e.mu_e == Q1(half) for e in ids)


def test_idempotents_single():
    for A in (fleet.m_eg(), fleet.sign_algebra()):
        ids = central_idempotents(A)
        assert len(ids) == 1 and ids[0].element == A.one() and ids[0].mu_e == A.one_scalar


@pytest.mark.parametrize("name", ["QC2", "QC4", "F^a(C2xC2)-sign", "Q[C2xC2]", "F^a(C3xC3)", "Q^aC2(u2=-1)"])
def test_idempotents_are_orthogonal_partition(name):
    A = fleet.get(name)
    ids = [e.element for e in central_idempotents(A)]
    assert sum(ids, A.zero()) == A.one()
    for i, e in enumerate(ids):
        assert e * e == e
        assert all(e * A.b(j) == A.b(j) * e for j in range(A.dim))
        for f in ids[i + 1:]:
            assert (e * f).is_zero()


def test_graded_ideal_closure():
    M = fleet.m_eg()
    assert len(graded_ideal_closure(M, M.b("e11"))) == 4
    A = fleet.qc2()
    assert len(graded_ideal_closure(A, A.element(["1", "1"]))) == 2
    assert graded_ideal_closure(A, A.zero()) == []


def test_simplicity():
    assert is_g_simple(fleet.qc2()).verdict == "simple"
    assert is_g_simple(fleet.m_eg()).verdict == "simple"
    QxQ = algebra_from_table(1, "C1", ["p", "q"], ["e", "e"], {(0, 0): {0: 1}, (1, 1): {1: 1}},
                             unit=["1", "1"], name="QxQ")
    v = is_g_simple(QxQ)
    assert v.verdict == "not_simple" and len(v.witness) == 1


def test_division():
    r = is_g_division(fleet.c3c3())
    assert r.is_division is True and len(r.support) == 9
    r = is_g_division(fleet.m_eg())
    assert r.is_division is False
    r = is_g_division(fleet.qc2())
    assert r.is_division is True and r.support == (0, 1)


def test_exponent():
    assert exponent(fleet.m2_trivial()) == 4
    assert exponent(fleet.m_eg()) == 4
    assert exponent(fleet.qc2()) == 1
    assert exponent(fleet.sign_algebra()) == 4
    assert exponent(fleet.c3c3()) == 9


def test_star_examples():
    A = fleet.sign_matrix()
    assert star_involution(A, A.one()) == A.one()
    x = A.b("u_a*e12")
    S = fleet.sign_algebra()
    ua_inv = S.b("u_a")  # u_a^2 = 1
    assert star_involution(A, x) == A.b("u_a*e21")
    with pytest.raises(NotTwistedMatrixForm):
        star_involution(fleet.dual_numbers(), fleet.dual_numbers().one())


def test_star_anti_automorphism_exhaustive():
    A = fleet.sign_matrix()
    st_ = lambda x: star_involution(A, x)
    for i, j in itertools.product(range(A.dim), repeat=2):
        x, y = A.b(i), A.b(j)
        assert st_(x * y) == st_(y) * st_(x)
    for i in range(A.dim):
        assert st_(st_(A.b(i))) == A.b(i)


def test_json_round_trip():
    A = fleet.c3c3()
    B = GradedAlgebra.from_json(A.to_json())
    assert B.sc == A.sc and B.degrees == A.degrees


def test_invalid_grading():
    with pytest.raises(InvalidAlgebra):
        algebra_from_table(1, "C2", ["1", "u"], ["e", "t"],
                           {(0, 0): {0: 1}, (0, 1): {1: 1}, (1, 0): {1: 1}, (1, 1): {1: 1}}, unit=["1", "0"])


ALGEBRAS = ["QC2", "M_(e,t)(Q)", "F^a(C2xC2)-sign", "F^a(C3xC3)"]


@st.composite
def element_triples(draw):
    A = fleet.get(draw(st.sampled_from(ALGEBRAS)))
    vec = lambda: A.element([str(draw(st.integers(-3, 3))) for _ in range(A.dim)])
    return A, vec(), vec(), vec()


@given(element_triples())
def test_associative_and_real_structure(t):
    A, x, y, z = t
    assert (x * y) * z == x * (y * z)
    C = A.real_structure
    xr, yr = A.to_real(x), A.to_real(y)
    prod = np.einsum("i,j,ijk->k", xr.astype(object), yr.astype(object), C.astype(object))
    assert A.from_real(prod) == x * y


@given(element_triples())
def test_star_conjugate_linear(t):
    A = fleet.c3c3()
    _, x, y, _ = t
    if x.algebra is not A:
        return
    s = lambda v: star_involution(A, v)
    z = CycScalar.zeta(3, 1)
    assert s(x * z) == s(x) * z.conj()
    assert s(x * y) == s(y) * s(x)
