import itertools

import pytest
from hypothesis import given, strategies as st

from gradedpi.groups import (FiniteGroup, NotAGroup, NotNormal, cyclic, dihedral, direct_product, group_build,
                             quotient, separating_quotient, symmetric, transversal)


def test_cyclic4():
    G = group_build("C4")
    t, t3 = G.element("t"), G.element("t3")
    assert G.mul(t, t3) == 0


def test_c3xc3():
    G = group_build("C3xC3")
    assert (G.order, G.exponent) == (9, 3)


def test_nonassociative_table():
    table = [[0, 1, 2], [1, 0, 0], [2, 2, 0]]
    with pytest.raises(NotAGroup):
        FiniteGroup("bad", ("e", "a", "b"), tuple(map(tuple, table)))


def test_quotient_c4():
    G = cyclic(4)
    q = quotient(G, [0, 2])
    assert q.target.order == 2
    assert q(1) == q(3) != q(0) == q(2)


def test_quotient_trivial_kernel_bijective():
    G = dihedral(4)
    q = quotient(G, [0])
    assert sorted(q.projection) == list(range(G.order))


def test_s3_non_normal():
    G = symmetric(3)
    H = next(h for h in itertools.combinations(range(6), 2) if 0 in h and G.is_subgroup(h))
    with pytest.raises(NotNormal):
        quotient(G, H)


def test_transversal():
    G = cyclic(4)
    assert transversal(G, [0, 2]) == [0, 1]
    assert transversal(G, range(4)) == [0]
    assert transversal(G, [0]) == [0, 1, 2, 3]


def test_separating_quotient():
    G = cyclic(4)
    assert separating_quotient(G, [1], 2, [[0, 2], [0]]).kernel == (0,)
    H = group_build("C3(s)xC3(t)")
    s, t = H.element("s"), H.element("t")
    tN = H.generated([t])
    assert separating_quotient(H, [s], 2, [tN, [0]]).kernel == tN
    assert separating_quotient(H, [s], 2, [[0]]).kernel == (0,)


GROUPS = [cyclic(2), cyclic(5), group_build("C2xC2"), group_build("C3xC3"), dihedral(4), symmetric(3),
          direct_product(cyclic(2), cyclic(3))]


@given(st.sampled_from(GROUPS), st.data())
def test_axioms(G, data):
    a, b, c = (data.draw(st.integers(0, G.order - 1)) for _ in range(3))
    assert G.mul(G.mul(a, b), c) == G.mul(a, G.mul(b, c))
    assert G.mul(a, G.inv(a)) == 0 == G.mul(G.inv(a), a)
    assert G.mul(0, a) == a == G.mul(a, 0)


@given(st.sampled_from(GROUPS), st.data())
def test_quotient_is_homomorphism(G, data):
    normals = [H for H in (G.generated([g]) for g in range(G.order)) if G.is_normal(H)]
    N = data.draw(st.sampled_from(normals))
    q = quotient(G, N)
    a, b = data.draw(st.integers(0, G.order - 1)), data.draw(st.integers(0, G.order - 1))
    assert q(G.mul(a, b)) == q.target.mul(q(a), q(b))
    assert q.target.order * len(N) == G.order
    reps = transversal(G, N)
    assert sorted(q(r) for r in reps) == list(range(q.target.order))


def test_json_round_trip():
    G = dihedral(3)
    assert FiniteGroup.from_json(G.to_json()) == G
