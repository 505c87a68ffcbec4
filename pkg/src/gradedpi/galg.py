"""Finite-dimensional G-graded algebras over Q(zeta_m).

An algebra is a homogeneous basis together with sparse structure
constants ``b_i * b_j = sum_k c_ij^k b_k`` and a degree map.  All
constructors return validated, immutable :class:`GradedAlgebra` objects.
"""
from __future__ import annotations

import itertools
import json
import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property

import numpy as np

from .groups import FiniteGroup, GroupMismatch, QuotientMap, direct_product, group_build, transversal
from .linalg import Subspace, nullspace, rank, solve
from .scalars import CycScalar, OrderMismatch, guess_element, is_root_of_unity, parse_scalar, phi, units_mod


class AlgebraError(ValueError):
    code = "AlgebraError"


class CocycleIdentityFails(AlgebraError):
    code = "CocycleIdentityFails"


class NotNormalized(AlgebraError):
    code = "NotNormalized"


class NotRootOfUnity(AlgebraError):
    code = "NotRootOfUnity"


class InvalidAlgebra(AlgebraError):
    code = "InvalidAlgebra"


class AlgebraMismatch(AlgebraError):
    code = "AlgebraMismatch"


class NotSemisimple(AlgebraError):
    code = "NotSemisimple"


class NotSplit(AlgebraError):
    code = "NotSplit"


class FactorizationIncomplete(AlgebraError):
    code = "FactorizationIncomplete"


class NotTwistedMatrixForm(AlgebraError):
    code = "NotTwistedMatrixForm"


# -- cocycles -----------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class Cocycle:
    group: FiniteGroup
    m: int
    values: tuple[tuple[CycScalar, ...], ...]

    def __call__(self, g: int, h: int) -> CycScalar:
        return self.values[g][h]


def cocycle_validate(H: FiniteGroup, m: int, values) -> Cocycle:
    n = H.order
    if len(values) != n or any(len(r) != n for r in values):
        raise AlgebraError(f"cocycle array must be {n}x{n}")
    vals = tuple(
        tuple(v if isinstance(v, CycScalar) else parse_scalar(v, m) for v in row) for row in values
    )
    for row in vals:
        for v in row:
            if v.m != m:
                raise OrderMismatch(f"cocycle value of order {v.m}, expected {m}")
    for h in range(n):
        if not (vals[0][h].is_one() and vals[h][0].is_one()):
            raise NotNormalized(f"alpha(e,{H.elements[h]}) or alpha({H.elements[h]},e) is not 1")
    for g in range(n):
        for h in range(n):
            if not is_root_of_unity(vals[g][h]):
                raise NotRootOfUnity(f"alpha({H.elements[g]},{H.elements[h]}) = {vals[g][h]}")
    t = H.table
    for g, h, k in itertools.product(range(n), repeat=3):
        if vals[g][h] * vals[t[g][h]][k] != vals[g][t[h][k]] * vals[h][k]:
            names = (H.elements[g], H.elements[h], H.elements[k])
            raise CocycleIdentityFails(f"cocycle identity fails at {names}")
    return Cocycle(H, m, vals)


def trivial_cocycle(H: FiniteGroup, m: int = 1) -> Cocycle:
    one = CycScalar.one(m)
    return cocycle_validate(H, m, [[one] * H.order for _ in range(H.order)])


def bicharacter_cocycle(G: FiniteGroup, orders: tuple[int, int], m: int, exponent, root: int | None = None) -> Cocycle:
    """Cocycle on C_p x C_q (indices a*q + b) with value w^exponent(a, b, c, d).

    w is a primitive ``root``-th root of unity (default m); it must lie in
    Q(zeta_m), so ``root`` divides m, or root = 2.
    """
    p, q = orders
    root = m if root is None else root
    if G.order != p * q:
        raise AlgebraError("group order does not match the factor orders")
    if m % root == 0:
        w = lambda k: CycScalar.zeta(m, k * (m // root))
    elif root == 2:
        w = lambda k: CycScalar.rational(m, (-1) ** (k % 2))
    else:
        raise OrderMismatch(f"no primitive {root}-th root of unity in Q(zeta_{m})")
    vals = []
    for x in range(G.order):
        a, b = divmod(x, q)
        vals.append([w(exponent(a, b, *divmod(y, q))) for y in range(G.order)])
    return cocycle_validate(G, m, vals)


# -- algebras -----------------------------------------------------------------

@dataclass(frozen=True)
class TwistedForm:
    """Records that an algebra is F^alpha H (x) M_n with basis u_h (x) e_ij at h*n*n + i*n + j."""

    cocycle: Cocycle
    n: int
    embed: tuple[int, ...]  # H-index -> G-index


@dataclass(frozen=True, eq=False)
class GradedAlgebra:
    m: int
    group: FiniteGroup
    basis: tuple[str, ...]
    degrees: tuple[int, ...]
    sc: tuple[tuple[tuple[tuple[int, CycScalar], ...], ...], ...]
    unit: tuple[CycScalar, ...] | None = None
    name: str = "A"
    twisted: TwistedForm | None = field(default=None, repr=False)
    validate: bool = field(default=True, repr=False)

    def __post_init__(self):
        d = len(self.basis)
        if len(self.degrees) != d or len(self.sc) != d or any(len(r) != d for r in self.sc):
            raise InvalidAlgebra("basis, degree map and structure constants disagree in size")
        if self.validate:
            self._validate()

    def _validate(self):
        t = self.group.table
        for i, j in itertools.product(range(self.dim), repeat=2):
            for k, c in self.sc[i][j]:
                if c.m != self.m:
                    raise OrderMismatch("structure constant of the wrong order")
                if c and self.degrees[k] != t[self.degrees[i]][self.degrees[j]]:
                    raise InvalidAlgebra(f"grading fails for b{i}*b{j} -> b{k}")
        for i, j, k in itertools.product(range(self.dim), repeat=3):
            left = self.mul_vec(self.mul_vec(self.basis_vec(i), self.basis_vec(j)), self.basis_vec(k))
            right = self.mul_vec(self.basis_vec(i), self.mul_vec(self.basis_vec(j), self.basis_vec(k)))
            if left != right:
                raise InvalidAlgebra(f"associativity fails on basis triple {(i, j, k)}")
        if self.unit is not None:
            u = list(self.unit)
            for i in range(self.dim):
                b = self.basis_vec(i)
                if self.mul_vec(u, b) != b or self.mul_vec(b, u) != b:
                    raise InvalidAlgebra("declared unit is not a two-sided identity")

    # basic data
    @property
    def dim(self) -> int:
        return len(self.basis)

    @cached_property
    def zero_scalar(self) -> CycScalar:
        return CycScalar.zero(self.m)

    @cached_property
    def one_scalar(self) -> CycScalar:
        return CycScalar.one(self.m)

    @cached_property
    def components(self) -> dict[int, tuple[int, ...]]:
        out: dict[int, list[int]] = {}
        for i, g in enumerate(self.degrees):
            out.setdefault(g, []).append(i)
        return {g: tuple(v) for g, v in sorted(out.items())}

    def component_indices(self, g: int) -> tuple[int, ...]:
        return self.components.get(g, ())

    @cached_property
    def support(self) -> tuple[int, ...]:
        return tuple(self.components)

    def zero_vec(self) -> list:
        return [self.zero_scalar] * self.dim

    def basis_vec(self, i: int) -> list:
        v = self.zero_vec()
        v[i] = self.one_scalar
        return v

    def mul_vec(self, x, y) -> list:
        out = self.zero_vec()
        for i, xi in enumerate(x):
            if not xi:
                continue
            row = self.sc[i]
            for j, yj in enumerate(y):
                if not yj:
                    continue
                t = xi * yj
                for k, c in row[j]:
                    out[k] = out[k] + (t if c.is_one() else t * c)
        return out

    # elements
    def element(self, coeffs) -> "AlgElement":
        vals = [c if isinstance(c, CycScalar) else parse_scalar(c, self.m) for c in coeffs]
        if len(vals) != self.dim:
            raise AlgebraMismatch(f"expected {self.dim} coordinates")
        return AlgElement(self, tuple(vals))

    def zero(self) -> "AlgElement":
        return AlgElement(self, tuple(self.zero_vec()))

    def b(self, i) -> "AlgElement":
        if isinstance(i, str):
            i = self.basis.index(i)
        return AlgElement(self, tuple(self.basis_vec(i)))

    def one(self) -> "AlgElement":
        if self.unit is None:
            raise AlgebraError(f"{self.name} is not unital")
        return AlgElement(self, self.unit)

    def scalar_element(self, c) -> "AlgElement":
        return self.one() * c

    @cached_property
    def is_nonzero_product(self) -> bool:
        return any(c for row in self.sc for cell in row for _, c in cell)

    def left_matrix(self, x) -> list[list[CycScalar]]:
        """Matrix of y -> x*y (rows = output coordinates)."""
        cols = [self.mul_vec(x, self.basis_vec(j)) for j in range(self.dim)]
        return [[cols[j][k] for j in range(self.dim)] for k in range(self.dim)]

    def right_matrix(self, x) -> list[list[CycScalar]]:
        cols = [self.mul_vec(self.basis_vec(j), x) for j in range(self.dim)]
        return [[cols[j][k] for j in range(self.dim)] for k in range(self.dim)]

    # realified structure over Q, used by the numeric sweep kernels
    @cached_property
    def realdim(self) -> int:
        return self.dim * phi(self.m)

    @cached_property
    def real_structure(self) -> np.ndarray:
        """Tensor C[(a,r),(j,t),(k,s)] of (zeta^r b_a)(zeta^t b_j) over the Q-basis zeta^s b_k."""
        f = phi(self.m)
        D = self.realdim
        C = np.zeros((D, D, D), dtype=object)
        C[...] = Fraction(0)
        zs = [CycScalar.zeta(self.m, r) for r in range(2 * f)]
        for a in range(self.dim):
            for j in range(self.dim):
                for k, c in self.sc[a][j]:
                    for r in range(f):
                        for t in range(f):
                            val = c * zs[r + t]
                            for s, q in enumerate(val.coeffs):
                                if q:
                                    C[a * f + r, j * f + t, k * f + s] += q
        if all(x.denominator == 1 for x in C.flat):
            return C.astype(np.int64) if np.max(np.abs(C.astype(float))) < 2**31 else C
        return C

    def to_real(self, x) -> np.ndarray:
        f = phi(self.m)
        out = np.zeros(self.realdim, dtype=object)
        for a, c in enumerate(x.coeffs if isinstance(x, AlgElement) else x):
            for r, q in enumerate(c.coeffs):
                out[a * f + r] = q
        return out

    def from_real(self, v) -> "AlgElement":
        f = phi(self.m)
        vals = [CycScalar(self.m, [Fraction(int(v[a * f + r])) if isinstance(v[a * f + r], (np.integer,)) else Fraction(v[a * f + r]) for r in range(f)]) for a in range(self.dim)]
        return AlgElement(self, tuple(vals))

    # serialisation
    def to_json(self) -> dict:
        sc = []
        for i, j in itertools.product(range(self.dim), repeat=2):
            for k, c in self.sc[i][j]:
                if c:
                    sc.append({"i": i, "j": j, "k": k, "c": str(c)})
        return {
            "name": self.name,
            "m": self.m,
            "group": self.group.to_json(),
            "basis": [{"name": n, "deg": self.group.elements[g]} for n, g in zip(self.basis, self.degrees)],
            "unit": None if self.unit is None else [str(c) for c in self.unit],
            "sc": sc,
        }

    @classmethod
    def from_json(cls, doc) -> "GradedAlgebra":
        if isinstance(doc, str):
            doc = json.loads(doc)
        m = int(doc["m"])
        G = group_build(doc["group"])
        basis = tuple(b["name"] for b in doc["basis"])
        degrees = tuple(G.element(b["deg"]) for b in doc["basis"])
        d = len(basis)
        cells = [[{} for _ in range(d)] for _ in range(d)]
        for e in doc["sc"]:
            c = parse_scalar(e["c"], m)
            cell = cells[e["i"]][e["j"]]
            cell[e["k"]] = cell.get(e["k"], CycScalar.zero(m)) + c
        sc = _freeze(cells)
        unit = None if doc.get("unit") is None else tuple(parse_scalar(c, m) for c in doc["unit"])
        return cls(m, G, basis, degrees, sc, unit, doc.get("name", "A"))

    def __repr__(self):
        return f"GradedAlgebra({self.name}, dim={self.dim}, group={self.group.name}, m={self.m})"


def _freeze(cells):
    return tuple(
        tuple(tuple(sorted((k, c) for k, c in cell.items() if c)) for cell in row) for row in cells
    )


@dataclass(frozen=True, eq=False)
class AlgElement:
    algebra: GradedAlgebra
    coeffs: tuple[CycScalar, ...]

    def _check(self, other):
        if not isinstance(other, AlgElement):
            return NotImplemented
        if other.algebra is not self.algebra:
            raise AlgebraMismatch("elements of different algebras")
        return other

    def __add__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return AlgElement(self.algebra, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return AlgElement(self.algebra, tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self):
        return AlgElement(self.algebra, tuple(-a for a in self.coeffs))

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, CycScalar)):
            return AlgElement(self.algebra, tuple(a * other for a in self.coeffs))
        other = self._check(other)
        if other is NotImplemented:
            return other
        return AlgElement(self.algebra, tuple(self.algebra.mul_vec(self.coeffs, other.coeffs)))

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction, CycScalar)):
            return AlgElement(self.algebra, tuple(other * a for a in self.coeffs))
        return NotImplemented

    def __eq__(self, other):
        if not isinstance(other, AlgElement):
            return NotImplemented
        return self.algebra is other.algebra and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __bool__(self):
        return not self.is_zero()

    def component(self, g: int) -> "AlgElement":
        degs = self.algebra.degrees
        z = self.algebra.zero_scalar
        return AlgElement(self.algebra, tuple(c if degs[i] == g else z for i, c in enumerate(self.coeffs)))

    def components(self) -> dict[int, "AlgElement"]:
        return {g: self.component(g) for g in self.algebra.support if self.component(g)}

    def degree(self) -> int | None:
        degs = {self.algebra.degrees[i] for i, c in enumerate(self.coeffs) if c}
        if len(degs) == 1:
            return degs.pop()
        return 0 if not degs else None

    def is_homogeneous(self) -> bool:
        return self.degree() is not None

    def __str__(self):
        A = self.algebra
        parts = []
        for name, c in zip(A.basis, self.coeffs):
            if c:
                s = str(c)
                parts.append(name if s == "1" else f"-{name}" if s == "-1" else f"({s})*{name}")
        return " + ".join(parts) if parts else "0"

    def to_literals(self) -> list[str]:
        return [str(c) for c in self.coeffs]


def elem_ops(op: str, a: AlgElement, b=None):
    """Dispatcher mirroring the element operations (add, mul, scalar, component, is_homogeneous)."""
    if op == "add":
        return a + b
    if op == "mul":
        return a * b
    if op == "scalar":
        return b * a
    if op == "component":
        return a.component(b)
    if op == "is_homogeneous":
        return a.is_homogeneous()
    raise ValueError(f"unknown element op {op!r}")


# -- constructors -------------------------------------------------------------

def _build(m, G, basis, degrees, cells, unit, name, twisted=None, validate=True):
    return GradedAlgebra(m, G, tuple(basis), tuple(degrees), _freeze(cells), unit, name, twisted, validate)


def base_field(G: FiniteGroup, m: int = 1) -> GradedAlgebra:
    one = CycScalar.one(m)
    return _build(m, G, ["1"], [0], [[{0: one}]], (one,), "F")


def twisted_group_algebra(c: Cocycle, G: FiniteGroup | None = None, embed=None, name=None) -> GradedAlgebra:
    """F^alpha H, optionally graded by an overgroup G via the index map ``embed``."""
    H = c.group
    G = H if G is None else G
    embed = tuple(range(H.order)) if embed is None else tuple(embed)
    n = H.order
    cells = [[{H.mul(g, h): c(g, h)} for h in range(n)] for g in range(n)]
    unit = tuple(CycScalar.one(c.m) if i == 0 else CycScalar.zero(c.m) for i in range(n))
    basis = ["u_" + H.elements[h] if h else "1" for h in range(n)]
    return _build(c.m, G, basis, [embed[h] for h in range(n)], cells, unit,
                  name or f"F^a{H.name}", TwistedForm(c, 1, embed))


def group_algebra(G: FiniteGroup, m: int = 1) -> GradedAlgebra:
    return twisted_group_algebra(trivial_cocycle(G, m), name=f"Q{G.name}")


def matrix_graded(B: GradedAlgebra, gtuple) -> GradedAlgebra:
    """B (x) M_n graded by deg(b (x) e_ij) = g_i^-1 deg(b) g_j."""
    G = B.group
    gt = [G.element(g) if isinstance(g, str) else int(g) for g in gtuple]
    n = len(gt)
    if n < 1:
        raise AlgebraError("need at least one matrix index")
    d = B.dim
    idx = lambda b, i, j: b * n * n + i * n + j
    basis, degrees = [], []
    for b in range(d):
        for i in range(n):
            for j in range(n):
                pre = "" if B.basis[b] == "1" else B.basis[b] + "*"
                basis.append(f"{pre}e{i + 1}{j + 1}")
                degrees.append(G.prod([G.inv(gt[i]), B.degrees[b], gt[j]]))
    D = d * n * n
    cells = [[{} for _ in range(D)] for _ in range(D)]
    for a, b in itertools.product(range(d), repeat=2):
        for k, c in B.sc[a][b]:
            for i, j, l in itertools.product(range(n), repeat=3):
                cells[idx(a, i, j)][idx(b, j, l)][idx(k, i, l)] = c
    unit = None
    if B.unit is not None:
        u = [CycScalar.zero(B.m)] * D
        for b, c in enumerate(B.unit):
            for i in range(n):
                u[idx(b, i, i)] = c
        unit = tuple(u)
    twisted = None
    if B.twisted is not None and B.twisted.n == 1:
        twisted = TwistedForm(B.twisted.cocycle, n, B.twisted.embed)
    names = ",".join(G.elements[g] for g in gt)
    return _build(B.m, G, basis, degrees, cells, unit, f"M_({names})({B.name})", twisted)


def tensor_graded(A: GradedAlgebra, B: GradedAlgebra) -> GradedAlgebra:
    if A.m != B.m:
        raise OrderMismatch(f"scalar orders {A.m} and {B.m} differ")
    G = direct_product(A.group, B.group)
    nb = B.dim
    ng = B.group.order
    basis = [f"{a}@{b}" for a in A.basis for b in B.basis]
    degrees = [A.degrees[a] * ng + B.degrees[b] for a in range(A.dim) for b in range(nb)]
    D = A.dim * nb
    cells = [[{} for _ in range(D)] for _ in range(D)]
    for a1, a2 in itertools.product(range(A.dim), repeat=2):
        for k1, c1 in A.sc[a1][a2]:
            for b1, b2 in itertools.product(range(nb), repeat=2):
                for k2, c2 in B.sc[b1][b2]:
                    cell = cells[a1 * nb + b1][a2 * nb + b2]
                    key = k1 * nb + k2
                    cell[key] = cell.get(key, CycScalar.zero(A.m)) + c1 * c2
    unit = None
    if A.unit is not None and B.unit is not None:
        unit = tuple(x * y for x in A.unit for y in B.unit)
    return _build(A.m, G, basis, degrees, cells, unit, f"{A.name}(x){B.name}")


def opposite(A: GradedAlgebra) -> GradedAlgebra:
    G = A.group
    cells = [[dict(A.sc[j][i]) for j in range(A.dim)] for i in range(A.dim)]
    degrees = [G.inv(g) for g in A.degrees]
    return _build(A.m, G, A.basis, degrees, cells, A.unit, f"{A.name}^op")


def regrade_quotient(A: GradedAlgebra, q: QuotientMap) -> GradedAlgebra:
    if q.source != A.group:
        raise GroupMismatch("algebra is not graded by the quotient's source group")
    cells = [[dict(A.sc[i][j]) for j in range(A.dim)] for i in range(A.dim)]
    return _build(A.m, q.target, A.basis, [q(g) for g in A.degrees], cells, A.unit,
                  f"{A.name}/N", validate=False)


def algebra_from_table(m, G, basis, degrees, products: dict, unit=None, name="A") -> GradedAlgebra:
    """Build from ``{(i, j): {k: scalar}}``; missing pairs multiply to zero."""
    d = len(basis)
    G = group_build(G)
    degrees = [G.element(g) if isinstance(g, str) else g for g in degrees]
    cells = [[{} for _ in range(d)] for _ in range(d)]
    for (i, j), out in products.items():
        for k, c in out.items():
            cells[i][j][k] = c if isinstance(c, CycScalar) else parse_scalar(c, m)
    if unit is not None:
        unit = tuple(c if isinstance(c, CycScalar) else parse_scalar(c, m) for c in unit)
    return _build(m, G, basis, degrees, cells, unit, name)


# -- subspaces and centres -----------------------------------------------------

def _span(A: GradedAlgebra, vecs) -> Subspace:
    S = Subspace(A.dim, A.zero_scalar)
    for v in vecs:
        S.add(v)
    return S


def _elements(A, vecs):
    return [AlgElement(A, tuple(v)) for v in vecs]


def center(A: GradedAlgebra):
    """Bases of Z(A) and of Z(A)_e."""
    d = A.dim
    eqs = []
    for j in range(d):
        bj = A.basis_vec(j)
        cols = [[a - b for a, b in zip(A.mul_vec(A.basis_vec(i), bj), A.mul_vec(bj, A.basis_vec(i)))]
                for i in range(d)]
        for k in range(d):
            row = [cols[i][k] for i in range(d)]
            if any(row):
                eqs.append(row)
    Z = nullspace(eqs, d, A.zero_scalar, A.one_scalar)
    e_idx = A.component_indices(0)
    sub = [[row[i] for i in e_idx] for row in eqs]
    Ze_small = nullspace(sub, len(e_idx), A.zero_scalar, A.one_scalar)
    Ze = []
    for v in Ze_small:
        full = A.zero_vec()
        for i, c in zip(e_idx, v):
            full[i] = c
        Ze.append(full)
    return _elements(A, Z), _elements(A, Ze)


def map_components(phi_mat, A: GradedAlgebra) -> dict[int, list[list[CycScalar]]]:
    """phi_g = sum_h P_{gh} phi P_h for each g with phi_g != 0."""
    G = A.group
    out = {}
    for g in range(G.order):
        M = [[phi_mat[k][j] if A.degrees[k] == G.mul(g, A.degrees[j]) else A.zero_scalar
              for j in range(A.dim)] for k in range(A.dim)]
        if any(x for row in M for x in row):
            out[g] = M
    return out


def trace_radical(A: GradedAlgebra) -> list[AlgElement]:
    """Radical of the trace form tr(L_x L_y); zero iff A is semisimple (char 0)."""
    d = A.dim
    tr = [sum((c for j in range(d) for k, c in A.sc[i][j] if k == j), A.zero_scalar) for i in range(d)]
    gram = []
    for i in range(d):
        row = []
        for j in range(d):
            row.append(sum((c * tr[k] for k, c in A.sc[i][j]), A.zero_scalar))
        gram.append(row)
    return _elements(A, nullspace(gram, d, A.zero_scalar, A.one_scalar))


# -- univariate polynomials over Q(zeta_m), low degree first -----------------------

def _ptrim(p):
    p = list(p)
    while len(p) > 1 and not p[-1]:
        p.pop()
    return p


def _pdivmod(a, b):
    a = _ptrim(a)
    b = _ptrim(b)
    zero = b[0] * 0
    if len(a) < len(b):
        return [zero], a
    q = [zero] * (len(a) - len(b) + 1)
    inv = 1 / b[-1]
    a = list(a)
    for s in range(len(a) - len(b), -1, -1):
        c = a[s + len(b) - 1] * inv
        q[s] = c
        if c:
            for i, x in enumerate(b):
                a[s + i] = a[s + i] - c * x
    return q, _ptrim(a[: len(b) - 1] or [zero])


def _pmul(a, b):
    zero = a[0] * 0
    out = [zero] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    out[i + j] = out[i + j] + x * y
    return out


def _psub(a, b):
    zero = a[0] * 0
    n = max(len(a), len(b))
    return _ptrim([(a[i] if i < len(a) else zero) - (b[i] if i < len(b) else zero) for i in range(n)])


def _pinv_mod(a, p):
    """Inverse of a modulo p (coprime) by extended Euclid."""
    zero, one = p[0] * 0, p[0] * 0 + 1
    r0, r1 = _ptrim(p), _pdivmod(a, p)[1]
    s0, s1 = [zero], [one]
    while len(r1) > 1 or r1[0]:
        if len(r1) == 1:
            c = 1 / r1[0]
            return _pdivmod([x * c for x in s1], p)[1]
        q, r = _pdivmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, _psub(s0, _pmul(q, s1))
    raise FactorizationIncomplete("factors are not coprime")


def _peval(p, m, x):
    """Evaluate polynomial p at a point x in Q(zeta_m)."""
    out = CycScalar.zero(m)
    for c in reversed(p):
        out = out * x + c
    return out


def _guess_combos(m, root_lists, size, make_coeffs, limit=20000):
    """Yield candidate coefficient tuples from per-embedding root subsets."""
    per = [list(itertools.combinations(rs, size)) for rs in root_lists]
    total = math.prod(len(x) for x in per)
    if total > limit:
        raise FactorizationIncomplete(f"{total} root combinations exceed the search budget")
    for choice in itertools.product(*per):
        coeff_sets = [make_coeffs(ch) for ch in choice]
        out = []
        for pos in range(len(coeff_sets[0])):
            g = guess_element(m, [cs[pos] for cs in coeff_sets])
            if g is None:
                break
            out.append(g)
        else:
            yield out


def factor_poly(p, m: int) -> list[list[CycScalar]]:
    """Factor a squarefree monic polynomial over Q(zeta_m) into irreducibles.

    Linear and quadratic factors are found by recognising candidates from
    the complex roots of every Galois conjugate and checking each exactly.
    Remaining factors of degree <= 5 with no linear or quadratic factor are
    irreducible; anything else raises FactorizationIncomplete.
    """
    p = _ptrim(p)
    lead = p[-1]
    p = [c / lead for c in p]
    js = units_mod(m)

    def conj_roots(q):
        out = []
        for j in js:
            coeffs = [c.to_complex(j) for c in reversed(q)]
            out.append(list(np.roots(coeffs)) if len(q) > 1 else [])
        return out

    factors = []
    rest = p
    # linear factors
    while len(rest) > 2:
        found = None
        for (r,) in _guess_combos(m, conj_roots(rest), 1, lambda ch: [ch[0]]):
            if not _peval(rest, m, r):
                found = r
                break
        if found is None:
            break
        lin = [-found, CycScalar.one(m)]
        factors.append(lin)
        rest = _pdivmod(rest, lin)[0]
    if len(rest) == 2:
        factors.append(rest)
        return factors
    deg = len(rest) - 1
    if deg <= 3:
        if deg >= 1:
            factors.append(rest)
        return factors
    # quadratic factors
    while len(rest) - 1 >= 4:
        found = None
        for a1, a0 in _guess_combos(m, conj_roots(rest), 2,
                                    lambda ch: [-(ch[0] + ch[1]), ch[0] * ch[1]]):
            quad = [a0, a1, CycScalar.one(m)]
            q, r = _pdivmod(rest, quad)
            if not any(r):
                found = quad
                break
        if found is None:
            break
        factors.append(found)
        rest = _pdivmod(rest, found)[0]
    deg = len(rest) - 1
    if deg > 5:
        raise FactorizationIncomplete(
            f"degree {deg} factor has no linear or quadratic factor; enlarge m or reduce the algebra")
    if deg >= 1:
        factors.append(rest)
    return factors


def _minpoly(A: GradedAlgebra, w, unit) -> list[CycScalar]:
    """Monic minimal polynomial of w in the subalgebra with identity ``unit``."""
    powers = [list(unit)]
    while True:
        nxt = A.mul_vec(powers[-1], w) if len(powers) > 1 else list(w)
        k = len(powers)
        M = [[powers[c][r] for c in range(k)] for r in range(A.dim)]
        sol = solve(M, nxt, k, A.zero_scalar)
        if sol is not None:
            return [-c for c in sol] + [A.one_scalar]
        powers.append(nxt)


def _poly_at(A, p, w, unit):
    out = A.zero_vec()
    power = list(unit)
    for i, c in enumerate(p):
        if i:
            power = A.mul_vec(power, w)
        if c:
            out = [a + c * b for a, b in zip(out, power)]
    return out


@dataclass(frozen=True)
class CentralIdempotent:
    element: AlgElement
    e_part: AlgElement
    mu_e: CycScalar | None

    @property
    def e_part_nonzero(self) -> bool:
        return not self.e_part.is_zero()


def _central_splitting(A: GradedAlgebra, seed: int = 0, tries: int = 12):
    if A.unit is None:
        raise AlgebraError("central idempotents need a unital algebra")
    if trace_radical(A):
        raise NotSemisimple(f"{A.name} has a nonzero radical")
    Z, _ = center(A)
    zvecs = [list(z.coeffs) for z in Z]
    rng = random.Random(seed)
    done = []
    todo = [list(A.unit)]
    while todo:
        e = todo.pop()
        eZ = [A.mul_vec(e, z) for z in zvecs]
        s = rank(eZ)
        if s == 1:
            done.append(e)
            continue
        candidates = list(eZ) + [
            [sum((rng.randint(-3, 3) * v[i] for v in eZ), A.zero_scalar) for i in range(A.dim)]
            for _ in range(tries)
        ]
        for w in candidates:
            if not any(w):
                continue
            p = _minpoly(A, w, e)
            facs = factor_poly(p, A.m)
            if len(facs) > 1:
                for f in facs:
                    cof = _pdivmod(p, f)[0]
                    E = _pdivmod(_pmul(cof, _pinv_mod(cof, f)), p)[1]
                    todo.append(_poly_at(A, E, w, e))
                break
            if len(p) - 1 == s:
                done.append(e)
                break
        else:
            raise FactorizationIncomplete("could not decide primitivity of a central idempotent")
    return done


def central_idempotents(A: GradedAlgebra, seed: int = 0) -> list[CentralIdempotent]:
    """Primitive central idempotents with their degree-e parts."""
    out = []
    unit = AlgElement(A, A.unit) if A.unit is not None else None
    for v in _central_splitting(A, seed):
        el = AlgElement(A, tuple(v))
        ep = el.component(0)
        mu = _ratio(ep, unit)
        out.append(CentralIdempotent(el, ep, mu))
    out.sort(key=lambda ci: [c.coeffs for c in ci.element.coeffs])
    return out


def _ratio(x: AlgElement, y: AlgElement):
    """lambda with x = lambda*y, or None."""
    lam = None
    for a, b in zip(x.coeffs, y.coeffs):
        if b:
            lam = a / b
            break
    if lam is None:
        return None
    return lam if (y * lam) == x else None


def graded_ideal_closure(A: GradedAlgebra, v) -> list[AlgElement]:
    """Smallest graded two-sided ideal containing v."""
    vec = list(v.coeffs) if isinstance(v, AlgElement) else list(v)
    S = Subspace(A.dim, A.zero_scalar)
    queue = []
    for g in A.support:
        comp = [c if A.degrees[i] == g else A.zero_scalar for i, c in enumerate(vec)]
        if any(comp) and S.add(comp):
            queue.append(comp)
    while queue:
        w = queue.pop()
        for j in range(A.dim):
            bj = A.basis_vec(j)
            for prod in (A.mul_vec(bj, w), A.mul_vec(w, bj)):
                if any(prod) and S.add(prod):
                    queue.append(prod)
    return _elements(A, S.basis())


def is_graded_subspace(A: GradedAlgebra, vecs) -> bool:
    S = _span(A, vecs)
    for v in S.basis():
        for g in A.support:
            comp = [c if A.degrees[i] == g else A.zero_scalar for i, c in enumerate(v)]
            if comp not in S:
                return False
    return True


@dataclass
class SimplicityVerdict:
    verdict: str  # simple | not_simple | inconclusive
    witness: list[AlgElement] | None = None
    reason: str = ""

    def __bool__(self):
        return self.verdict == "simple"


def is_g_simple(A: GradedAlgebra) -> SimplicityVerdict:
    if not A.is_nonzero_product:
        return SimplicityVerdict("not_simple", [], "A^2 = 0")
    rad = trace_radical(A)
    if rad:
        vecs = [list(r.coeffs) for r in rad]
        if is_graded_subspace(A, vecs):
            return SimplicityVerdict("not_simple", rad, "nonzero radical")
        return SimplicityVerdict("inconclusive", None, "radical is not graded")
    try:
        idems = central_idempotents(A)
    except (FactorizationIncomplete, AlgebraError) as exc:
        return SimplicityVerdict("inconclusive", None, str(exc))
    r = len(idems)
    if r > 16:
        return SimplicityVerdict("inconclusive", None, f"{r} simple components")
    for mask in range(1, 2**r - 1):
        e = sum((idems[i].element for i in range(r) if mask >> i & 1), A.zero())
        ideal = [list(A.mul_vec(A.basis_vec(j), e.coeffs)) for j in range(A.dim)]
        if is_graded_subspace(A, ideal):
            return SimplicityVerdict("not_simple", _elements(A, _span(A, ideal).basis()),
                                     "graded ideal from central idempotents")
    return SimplicityVerdict("simple")


@dataclass
class DivisionStructureReport:
    is_division: bool | None  # None = inconclusive
    support: tuple[int, ...]
    witnesses: dict[int, AlgElement]
    counterexample: AlgElement | None = None


def _inverse(A: GradedAlgebra, x) -> list | None:
    if A.unit is None:
        return None
    sol = solve(A.left_matrix(x), list(A.unit), A.dim, A.zero_scalar)
    if sol is None or A.mul_vec(sol, x) != list(A.unit):
        return None
    return sol


def is_g_division(A: GradedAlgebra, samples: int = 50, seed: int = 0) -> DivisionStructureReport:
    support = A.support
    wit = {}
    for g, idx in A.components.items():
        for i in idx:
            if _inverse(A, A.basis_vec(i)) is None:
                return DivisionStructureReport(False, support, wit, A.b(i))
        wit[g] = A.b(idx[0])
    if all(len(idx) <= 1 for idx in A.components.values()):
        return DivisionStructureReport(True, support, wit)
    rng = random.Random(seed)
    for _ in range(samples):
        g = rng.choice(support)
        v = A.zero_vec()
        for i in A.component_indices(g):
            v[i] = CycScalar.rational(A.m, rng.randint(-3, 3))
        if any(v) and _inverse(A, v) is None:
            return DivisionStructureReport(False, support, wit, AlgElement(A, tuple(v)))
    return DivisionStructureReport(None, support, wit)


def simple_components(A: GradedAlgebra):
    """(idempotent, dim A*e, dim Z*e) for each primitive central idempotent."""
    Z, _ = center(A)
    out = []
    for ci in central_idempotents(A):
        e = list(ci.element.coeffs)
        dA = rank([A.mul_vec(A.basis_vec(j), e) for j in range(A.dim)])
        dZ = rank([A.mul_vec(list(z.coeffs), e) for z in Z])
        out.append((ci.element, dA, dZ))
    return out


def exponent(A: GradedAlgebra) -> int:
    """Largest dimension of a simple component over its centre (split semisimple A)."""
    if trace_radical(A):
        raise NotSemisimple(f"{A.name} has a nonzero radical")
    best = 0
    for e, dA, dZ in simple_components(A):
        q, r = divmod(dA, dZ)
        n = math.isqrt(q)
        if r or n * n != q:
            raise NotSplit(f"component of dimension {dA} over a centre of dimension {dZ}")
        if n > 1 and not _has_zero_divisor(A, list(e.coeffs)):
            raise NotSplit("no zero divisor found in a component of degree > 1")
        best = max(best, q)
    return best


def _has_zero_divisor(A: GradedAlgebra, e) -> bool:
    for j in range(A.dim):
        x = A.mul_vec(e, A.basis_vec(j))
        if not any(x):
            continue
        try:
            if len(factor_poly(_minpoly(A, x, e), A.m)) > 1:
                return True
        except FactorizationIncomplete:
            continue
    return False


def kaplansky_report(A: GradedAlgebra, d: int | None = None) -> dict:
    """Transversal-part dimension against d/2 (a report, not an assertion)."""
    G = A.group
    d = exponent(A) if d is None else d
    H = [g for g, idx in A.components.items()
         if any(_inverse(A, A.basis_vec(i)) is not None for i in idx)]
    Hsub = G.generated(H)
    T = transversal(G, Hsub)
    dim_T = sum(len(A.component_indices(t)) for t in T)
    _, Ze = center(A)
    ratio = Fraction(dim_T, max(len(Ze), 1))
    return {"H": [G.elements[h] for h in Hsub], "T": [G.elements[t] for t in T],
            "dim_T_over_Ze": str(ratio), "bound": str(Fraction(d, 2)), "within": ratio <= Fraction(d, 2)}


def star_involution(A: GradedAlgebra, x: AlgElement) -> AlgElement:
    """(c u_h (x) e_ij)* = conj(c) u_h^-1 (x) e_ji, extended conjugate-linearly."""
    tw = A.twisted
    if tw is None:
        raise NotTwistedMatrixForm(f"{A.name} was not built as a twisted matrix algebra")
    H = tw.cocycle.group
    n = tw.n
    out = A.zero_vec()
    for idx, c in enumerate(x.coeffs):
        if not c:
            continue
        h, rest = divmod(idx, n * n)
        i, j = divmod(rest, n)
        hi = H.inv(h)
        coeff = c.conj() * tw.cocycle(h, hi).inv()
        k = hi * n * n + j * n + i
        out[k] = out[k] + coeff
    return AlgElement(A, tuple(out))
