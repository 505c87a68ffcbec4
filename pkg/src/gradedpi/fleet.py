"""Named desk-scale algebras used by the experiments and tests."""
from __future__ import annotations

import dataclasses
from functools import lru_cache

from .galg import (GradedAlgebra, algebra_from_table, base_field, bicharacter_cocycle, cocycle_validate,
                   exponent, group_algebra, matrix_graded, twisted_group_algebra)
from .groups import cyclic, group_build, trivial_group
from .scalars import CycScalar


def _named(A: GradedAlgebra, name: str) -> GradedAlgebra:
    return dataclasses.replace(A, name=name, validate=False)


@lru_cache(maxsize=None)
def qc2() -> GradedAlgebra:
    return _named(group_algebra(cyclic(2)), "QC2")


@lru_cache(maxsize=None)
def qc4() -> GradedAlgebra:
    """F^alpha C4 with u^4 = 1 (the trivial class)."""
    return _named(group_algebra(cyclic(4)), "QC4")


@lru_cache(maxsize=None)
def q_minus_c2() -> GradedAlgebra:
    """Q^alpha C2 with u^2 = -1, i.e. Q(i) graded by C2."""
    C2 = cyclic(2)
    one, neg = CycScalar.one(1), CycScalar.rational(1, -1)
    c = cocycle_validate(C2, 1, [[one, one], [one, neg]])
    return _named(twisted_group_algebra(c), "Q^aC2(u2=-1)")


@lru_cache(maxsize=None)
def m_eg() -> GradedAlgebra:
    """M_2(Q) graded by C2 through the tuple (e, t)."""
    return _named(matrix_graded(base_field(cyclic(2)), ["e", "t"]), "M_(e,t)(Q)")


@lru_cache(maxsize=None)
def m2_trivial() -> GradedAlgebra:
    return _named(matrix_graded(base_field(trivial_group()), ["e", "e"]), "M_2(Q)")


@lru_cache(maxsize=None)
def sign_algebra() -> GradedAlgebra:
    """F^alpha(C2xC2) with alpha((a1,b1),(a2,b2)) = (-1)^(b1 a2): a rational quaternion-type algebra."""
    V = group_build("C2xC2")
    c = bicharacter_cocycle(V, (2, 2), 1, lambda a, b, c, d: b * c, root=2)
    return _named(twisted_group_algebra(c), "F^a(C2xC2)-sign")


@lru_cache(maxsize=None)
def c3c3() -> GradedAlgebra:
    """F^alpha(C3xC3) with u_s u_t = zeta u_t u_s."""
    G = group_build("C3(s)xC3(t)")
    c = bicharacter_cocycle(G, (3, 3), 3, lambda a, b, c, d: a * d)
    return _named(twisted_group_algebra(c), "F^a(C3xC3)")


@lru_cache(maxsize=None)
def qc2xc2() -> GradedAlgebra:
    return _named(group_algebra(group_build("C2xC2")), "Q[C2xC2]")


@lru_cache(maxsize=None)
def qc3c3() -> GradedAlgebra:
    return _named(group_algebra(group_build("C3(s)xC3(t)"), 3), "Q(z)[C3xC3]")


@lru_cache(maxsize=None)
def sign_matrix() -> GradedAlgebra:
    """Dimension-16 twisted-matrix algebra F^alpha(C2xC2) (x) M_2 with tuple (e, a)."""
    return _named(matrix_graded(sign_algebra(), ["e", "a"]), "M_(e,a)(sign)")


@lru_cache(maxsize=None)
def dual_numbers() -> GradedAlgebra:
    return algebra_from_table(1, "1", ["1", "x"], ["e", "e"],
                              {(0, 0): {0: 1}, (0, 1): {1: 1}, (1, 0): {1: 1}}, unit=["1", "0"], name="Q[x]/(x^2)")


FLEET = {
    "QC2": qc2,
    "QC4": qc4,
    "Q^aC2(u2=-1)": q_minus_c2,
    "M_(e,t)(Q)": m_eg,
    "M_2(Q)": m2_trivial,
    "F^a(C2xC2)-sign": sign_algebra,
    "F^a(C3xC3)": c3c3,
    "Q[C2xC2]": qc2xc2,
    "Q(z)[C3xC3]": qc3c3,
    "M_(e,a)(sign)": sign_matrix,
    "Q[x]/(x^2)": dual_numbers,
}


def get(name: str) -> GradedAlgebra:
    try:
        return FLEET[name]()
    except KeyError:
        raise KeyError(f"no fleet algebra named {name!r}") from None


def same_group_family(group_name: str):
    """(algebra, exponent) pairs of the semisimple fleet members graded by one group."""
    out = []
    for name, make in FLEET.items():
        A = make()
        if A.group.name != group_name or name in ("Q[x]/(x^2)",):
            continue
        out.append((A, exponent(A)))
    return out
