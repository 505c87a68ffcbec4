import itertools
import random

import numpy as np
from hypothesis import given, strategies as st

from gradedpi import engine, fleet
from gradedpi.checker import sweep_values
from gradedpi.freepoly import GradedPolynomial, parse_poly, perm_sign, regev, regev_form, var
from gradedpi.galg import star_involution
from gradedpi.scalars import CycScalar


def brute_regev(xs, ys, pattern):
    """Direct sum over sigma, tau of signed products of integer matrices."""
    d = len(xs)
    total = np.zeros((2, 2), dtype=object)
    for s in itertools.permutations(range(d)):
        for t in itertools.permutations(range(d)):
            it = [iter(s), iter(t)]
            prod = np.eye(2, dtype=object)
            for fam in pattern:
                k = next(it[fam])
                prod = prod @ (xs[k] if fam == 0 else ys[k])
            total = total + perm_sign(s) * perm_sign(t) * prod
    return total


def as_element(A, M):
    return A.element([str(int(v)) for v in np.asarray(M).ravel()])


def to_matrix(x):
    return np.array([int(c.to_fraction()) for c in x.coeffs], dtype=object).reshape(2, 2)


@given(st.integers(0, 10**6))
def test_regev_matches_bruteforce(seed):
    rng = random.Random(seed)
    A = fleet.m2_trivial()
    mats = [np.array([[rng.randint(-2, 2) for _ in range(2)] for _ in range(2)], dtype=object) for _ in range(8)]
    want = brute_regev(mats[:4], mats[4:], regev_form(2).pattern)
    vals = {var(i + 1, None): as_element(A, M) for i, M in enumerate(mats)}
    assert np.array_equal(to_matrix(engine.eval_alternant(regev_form(2), A, vals)), want)
    assert np.array_equal(to_matrix(engine.eval_poly(regev(2), A, vals)), want)


def test_regev_at_matrix_units():
    A = fleet.m2_trivial()
    vals = {var(i + 1, None): A.b(b) for i, b in enumerate([0, 1, 2, 3, 0, 1, 2, 3])}
    assert engine.eval_poly(regev(2), A, vals) == A.one() * CycScalar.rational(1, -3)


def test_batch_matches_exact_cyclotomic():
    A = fleet.c3c3()
    G = A.group
    f = parse_poly("x[1,s]*x[2,t] - z*x[2,t]*x[1,s] + (1+z)*x[1,s]*x[3,st]*x[2,t]", G, 3)
    for dom, start, vals in sweep_values(f, A):
        for r in range(vals.shape[0]):
            asg = engine.element_of_choice(A, dom.tuple_at(start + r))
            assert engine.real_to_element(A, vals[r]) == engine.eval_poly(f, A, asg)


def test_batch_matches_exact_ungraded():
    A = fleet.sign_algebra()
    f = parse_poly("x[1,?]*x[2,?]*x[3,?] - 2*x[3,?]*x[1,?]*x[2,?]", A.group, 1)
    seen = 0
    for dom, start, vals in sweep_values(f, A):
        for r in range(vals.shape[0]):
            asg = engine.element_of_choice(A, dom.tuple_at(start + r))
            assert engine.real_to_element(A, vals[r]) == engine.eval_poly(f, A, asg)
            seen += 1
    assert seen == 4 ** 3


def test_star_matrix():
    A = fleet.sign_matrix()
    S = engine.star_matrix(A, lambda x: star_involution(A, x))
    rng = random.Random(3)
    for _ in range(20):
        x = A.element([str(rng.randint(-2, 2)) for _ in range(A.dim)])
        assert np.array_equal(S.dot(A.to_real(x)), A.to_real(star_involution(A, x)))


def test_commutator_tensor():
    A = fleet.m_eg()
    K = engine.commutator_tensor(A, np.int64)
    x = A.b("e12")
    blocks = A.to_real(x).astype(np.int64) @ K
    D = A.realdim
    for j in range(A.dim):
        want = A.to_real(x * A.b(j) - A.b(j) * x).astype(np.int64)
        assert np.array_equal(blocks[j * D:(j + 1) * D], want)


def test_domain_order_is_lexicographic():
    A = fleet.qc2()
    f = parse_poly("x[1,?]*x[2,?]", A.group, 1)
    dom = engine.basis_domain(f.variables(), A)
    tuples = [tuple(b for _, b in dom.tuple_at(k)) for k in range(dom.total)]
    assert tuples == sorted(tuples) and len(set(tuples)) == 4


def test_compile_shares_suffixes():
    prog = engine.compile_poly(regev(2))
    assert len(prog.edges) < 100
