"""Evaluation machinery shared by the decision procedures.

Polynomials are compiled once into a DAG: a node stands for a sum
``c*1 + sum_v mult * x_v * (child)``; identical suffix sums (up to a
scalar) are shared, so f(x) * f^t(y) costs about as much as f plus f^t.
The DAG is then evaluated either exactly on one assignment or in batches
over many basis tuples with numpy, using the algebra's structure tensor
over Q.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .freepoly import Alternant, GradedPolynomial, var
from .galg import AlgElement, GradedAlgebra
from .scalars import CycScalar, phi


@dataclass(frozen=True)
class Program:
    variables: tuple  # vid -> variable
    consts: tuple  # node -> CycScalar (coefficient of the formal unit)
    edges: tuple  # node -> ((vid, child or -1, mult), ...)
    root: int  # -1 for the zero polynomial
    m: int
    length: int

    @property
    def size(self) -> int:
        return sum(len(e) for e in self.edges)


def compile_poly(f: GradedPolynomial) -> Program:
    variables = f.variables()
    vid = {v: k for k, v in enumerate(variables)}
    items = sorted((tuple(vid[v] for v in mono), c) for mono, c in f.terms.items())
    memo: dict = {}
    consts: list = []
    edges: list = []
    zero = CycScalar.zero(f.m)

    def build(lo, hi, off):
        const = None
        out = []
        k = lo
        while k < hi and len(items[k][0]) == off:
            const = items[k][1] if const is None else const + items[k][1]
            k += 1
        while k < hi:
            v = items[k][0][off]
            j = k
            while j < hi and items[j][0][off] == v:
                j += 1
            child, scale = build(k, j, off + 1)
            if child is not None:
                out.append((v, child, scale))
            k = j
        if const is not None and not const:
            const = None
        if const is None and not out:
            return None, zero
        lead = const if const is not None else out[0][2]
        if not lead.is_one():
            if (-lead).is_one():
                const = None if const is None else -const
                out = [(v, c, -s) for v, c, s in out]
            else:
                inv = lead.inv()
                const = None if const is None else const * inv
                out = [(v, c, s * inv) for v, c, s in out]
        key = (const, tuple(out))
        node = memo.get(key)
        if node is None:
            node = len(consts)
            memo[key] = node
            consts.append(zero if const is None else const)
            edges.append(tuple(out))
        return node, lead

    root, scale = build(0, len(items), 0)
    if root is None:
        return Program(tuple(variables), (), (), -1, f.m, 0)
    # fold the root scale into a fresh top node
    top = len(consts)
    consts.append(consts[root] * scale)
    edges.append(tuple((v, c, s * scale) for v, c, s in edges[root]))
    return Program(tuple(variables), tuple(consts), tuple(edges), top, f.m, f.max_length())


# -- exact evaluation ------------------------------------------------------------

def run_exact(prog: Program, values: dict, zero):
    """Evaluate on objects supporting +, * and scalar *; ``values`` maps vid -> value or None."""
    if prog.root < 0:
        return zero
    cache: dict[int, tuple] = {}
    for node in range(prog.root + 1):
        total = None
        for v, child, mult in prog.edges[node]:
            a = values.get(v)
            if a is None:
                continue
            c, E = cache[child]
            part = None
            if c:
                part = a * c
            if E is not None:
                prod = a * E
                part = prod if part is None else part + prod
            if part is None:
                continue
            if not mult.is_one():
                part = part * mult
            total = part if total is None else total + part
        cache[node] = (prog.consts[node], total)
    c, E = cache[prog.root]
    return zero if E is None else E


def eval_poly(f, A: GradedAlgebra, values: dict) -> AlgElement:
    """Exact value; ``values`` maps variable -> AlgElement (missing = 0)."""
    if isinstance(f, Alternant):
        return eval_alternant(f, A, values)
    prog = cached_program(f)
    vals = {k: values.get(v) for k, v in enumerate(prog.variables)}
    return run_exact(prog, vals, A.zero())


_PROGRAMS: dict = {}


def cached_program(f: GradedPolynomial) -> Program:
    """compile_poly memoized on the polynomial object (large f are compiled once)."""
    hit = _PROGRAMS.get(id(f))
    if hit is not None and hit[0] is f:
        return hit[1]
    prog = compile_poly(f)
    if len(_PROGRAMS) > 32:
        _PROGRAMS.clear()
    _PROGRAMS[id(f)] = (f, prog)
    return prog


def eval_alternant(f: Alternant, A: GradedAlgebra, values: dict) -> AlgElement:
    """Subset dynamic programme over the two alternating families."""
    d = f.d
    vs = f.variables()
    vecs = []
    for v in vs:
        a = values.get(v)
        vecs.append(None if a is None or a.is_zero() else _sparse(a.coeffs))
    states = {(0, 0): None}  # None = formal unit
    for fam in f.pattern:
        nxt: dict = {}
        for (ux, uy), val in states.items():
            used = ux if fam == 0 else uy
            for i in range(d):
                if used >> i & 1:
                    continue
                a = vecs[i + fam * d]
                if a is None:
                    continue
                sign = -1 if bin(used >> (i + 1)).count("1") & 1 else 1
                prod = a if val is None else _smul(A, val, a)
                if not prod:
                    continue
                key = (ux | 1 << i, uy) if fam == 0 else (ux, uy | 1 << i)
                acc = nxt.setdefault(key, {})
                for k, c in prod.items():
                    c = c if sign > 0 else -c
                    acc[k] = acc[k] + c if k in acc else c
        states = {k: {i: c for i, c in v.items() if c} for k, v in nxt.items()}
        states = {k: v for k, v in states.items() if v}
        if not states:
            return A.zero()
    out = A.zero_vec()
    for val in states.values():
        for k, c in val.items():
            out[k] = out[k] + c
    el = AlgElement(A, tuple(out))
    return el.component(f.keep) if f.keep is not None else el


def _sparse(coeffs):
    return {i: c for i, c in enumerate(coeffs) if c}


def _smul(A, x, y):
    out: dict = {}
    for i, xi in x.items():
        row = A.sc[i]
        for j, yj in y.items():
            cell = row[j]
            if not cell:
                continue
            t = xi * yj
            for k, c in cell:
                val = t if c.is_one() else t * c
                out[k] = out[k] + val if k in out else val
    return out


# -- realified batches -------------------------------------------------------------

def scalar_matrix(c: CycScalar) -> np.ndarray:
    """Matrix (object) of multiplication by c on the basis 1, z, ..., z^(phi-1)."""
    f = phi(c.m)
    M = np.empty((f, f), dtype=object)
    for r in range(f):
        col = (c * CycScalar.zeta(c.m, r)).coeffs
        for s in range(f):
            M[s, r] = col[s]
    return M


def _integral(M) -> bool:
    return all(Fraction(x).denominator == 1 for x in np.asarray(M).flat)


class BatchEvaluator:
    """Evaluate a compiled program on many assignments at once."""

    def __init__(self, prog: Program, A: GradedAlgebra, input_bound: float = 1.0):
        self.prog = prog
        self.A = A
        self.f = phi(A.m)
        C = A.real_structure
        mults = {}
        bound_c = 1.0
        for node in prog.edges:
            for _, _, s in node:
                if s not in mults:
                    mults[s] = scalar_matrix(s)
        for c in prog.consts:
            if c and c not in mults:
                mults[c] = scalar_matrix(c)
        integral = C.dtype != object or _integral(C)
        integral = integral and all(_integral(M) for M in mults.values())
        Cabs = np.abs(C.astype(float))
        bound_c = max(1.0, float(Cabs.sum(axis=2).max(initial=0.0)))
        norms = {s: max(1.0, float(np.abs(M.astype(float)).sum(axis=0).max())) for s, M in mults.items()}
        # l1 bound on every node value, children first
        nb = []
        ib = max(1.0, input_bound)
        for node in range(len(prog.edges)):
            b = norms.get(prog.consts[node], 1.0) if prog.consts[node] else 0.0
            for _, child, s in prog.edges[node]:
                b += norms[s] * ib * bound_c * max(1.0, nb[child])
            nb.append(b)
        worst = max(nb, default=0.0)
        self.dtype = np.int64 if integral and worst < 2.0**61 else object
        self.C = C.astype(self.dtype) if self.dtype is np.int64 else C.astype(object)
        self.mults = {s: (M.astype(self.dtype) if self.dtype is np.int64 else M) for s, M in mults.items()}
        D = A.realdim
        self.C2 = self.C.reshape(D, D * D)

    def lmul(self, X, Y):
        """Row-wise product X[n] * Y[n] in the algebra."""
        N, D = X.shape
        T = (X @ self.C2).reshape(N, D, D)
        return np.einsum("njk,nj->nk", T, Y) if self.dtype is np.int64 else (T * Y[:, :, None]).sum(axis=1)

    def scale(self, X, s: CycScalar):
        if s.is_one():
            return X
        M = self.mults[s]
        N = X.shape[0]
        Z = X.reshape(N, self.A.dim, self.f) @ M.T
        return Z.reshape(N, -1)

    def run(self, values: dict, N: int):
        """values: vid -> array (N, D) or None.  Returns array (N, D)."""
        prog = self.prog
        D = self.A.realdim
        if prog.root < 0:
            return np.zeros((N, D), dtype=self.dtype)
        parents = [0] * (prog.root + 1)
        for node in range(prog.root + 1):
            for _, child, _ in prog.edges[node]:
                parents[child] += 1
        cache: dict[int, tuple] = {}
        for node in range(prog.root + 1):
            total = None
            for v, child, mult in prog.edges[node]:
                a = values.get(v)
                if a is not None:
                    c, E = cache[child]
                    part = None
                    if c:
                        part = self.scale(a, c)
                    if E is not None:
                        prod = self.lmul(a, E)
                        part = prod if part is None else part + prod
                    if part is not None:
                        part = self.scale(part, mult)
                        total = part if total is None else total + part
                parents[child] -= 1
                if parents[child] == 0 and child != node:
                    cache.pop(child, None)
            cache[node] = (prog.consts[node], total)
        c, E = cache[prog.root]
        return np.zeros((N, D), dtype=self.dtype) if E is None else E


# -- basis-tuple domains --------------------------------------------------------------

@dataclass(frozen=True)
class Domain:
    """Reduced homogeneous substitutions.

    ``slots`` lists, per variable index, the (variable, basis index) choices;
    a tuple picks one choice per slot and sets the other variables of that
    index to zero.
    """

    indices: tuple[int, ...]
    slots: tuple[tuple[tuple, ...], ...]

    @property
    def total(self) -> int:
        return math.prod(len(s) for s in self.slots)

    def tuple_at(self, flat: int):
        out = []
        for s in reversed(self.slots):
            flat, r = divmod(flat, len(s))
            out.append(s[r])
        return out[::-1]

    def choice_arrays(self, start: int, stop: int):
        flat = np.arange(start, stop, dtype=np.int64)
        out = []
        for s in reversed(self.slots):
            out.append(flat % len(s))
            flat = flat // len(s)
        return out[::-1]


def basis_domain(variables, A: GradedAlgebra, per_variable: bool = False) -> Domain:
    """Domain of reduced basis tuples; graded variables range over A_g, ungraded over all of A."""
    groups: dict = {}
    for v in variables:
        key = v if per_variable else v[0]
        idx = range(A.dim) if v[1] is None else A.component_indices(v[1])
        groups.setdefault(key, []).extend((v, b) for b in idx)
    keys = sorted(groups, key=lambda k: k if not per_variable else (k[0], -1 if k[1] is None else k[1]))
    return Domain(tuple(k if not per_variable else k[0] for k in keys), tuple(tuple(groups[k]) for k in keys))


def star_matrix(A: GradedAlgebra, star) -> np.ndarray:
    """Q-linear matrix (object) of a conjugate-linear map on the realified space."""
    f = phi(A.m)
    D = A.realdim
    S = np.empty((D, D), dtype=object)
    S[...] = Fraction(0)
    for b in range(A.dim):
        for r in range(f):
            vec = A.zero_vec()
            vec[b] = CycScalar.zeta(A.m, r)
            img = star(AlgElement(A, tuple(vec)))
            for k, c in enumerate(img.coeffs):
                for s, q in enumerate(c.coeffs):
                    S[k * f + s, b * f + r] = q
    return S


def batch_inputs(prog: Program, A: GradedAlgebra, dom: Domain, start: int, stop: int, dtype,
                 derived=None):
    """Per-vid value arrays for the flat tuple range [start, stop).

    ``derived`` maps a variable to (source variable, matrix) meaning
    value = source value transformed by the matrix (used for y = x*).
    """
    N = stop - start
    D = A.realdim
    f = phi(A.m)
    choice = dom.choice_arrays(start, stop)
    vid = {v: k for k, v in enumerate(prog.variables)}
    arrays: dict = {}
    base: dict = {}
    for slot, ch in zip(dom.slots, choice):
        by_var: dict = {}
        for pos, (v, b) in enumerate(slot):
            by_var.setdefault(v, []).append((pos, b))
        for v, opts in by_var.items():
            arr = np.zeros((N, D), dtype=dtype)
            for pos, b in opts:
                arr[ch == pos, b * f] = 1
            base[v] = arr
    for v, arr in base.items():
        if v in vid:
            arrays[vid[v]] = arr
    if derived:
        for v, (src, M) in derived.items():
            if v in vid and src in base:
                X = base[src]
                Mt = M.T.astype(dtype) if dtype is np.int64 else M.T
                arrays[vid[v]] = X @ Mt
    return arrays


def real_to_element(A: GradedAlgebra, row) -> AlgElement:
    f = phi(A.m)
    return AlgElement(A, tuple(
        CycScalar(A.m, [Fraction(int(x)) if isinstance(x, (int, np.integer)) else Fraction(x)
                        for x in row[b * f:(b + 1) * f]]) for b in range(A.dim)))


def element_of_choice(A: GradedAlgebra, choice) -> dict:
    """Assignment dict for one reduced tuple."""
    return {v: A.b(b) for v, b in choice}


def commutator_tensor(A: GradedAlgebra, dtype):
    """K with (v @ K)[:, j*D:(j+1)*D] = v*b_j - b_j*v."""
    f = phi(A.m)
    C = A.real_structure
    D = A.realdim
    blocks = [C[:, j * f, :] - C[j * f, :, :] for j in range(A.dim)]
    K = np.concatenate(blocks, axis=1) if blocks else np.zeros((D, 0))
    return K.astype(dtype) if dtype is np.int64 else K.astype(object)


def degree_mask(A: GradedAlgebra, g: int) -> np.ndarray:
    f = phi(A.m)
    mask = np.zeros(A.realdim, dtype=bool)
    for b in A.component_indices(g):
        mask[b * f:(b + 1) * f] = True
    return mask


def chunk_size(A: GradedAlgebra) -> int:
    D = max(1, A.realdim)
    return max(64, min(8192, (1 << 21) // (D * D)))


def all_tuples(dom: Domain):
    return itertools.product(*dom.slots)
