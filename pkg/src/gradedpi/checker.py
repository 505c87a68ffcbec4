"""Deciding graded identities, central and strong central polynomials.

Multilinear polynomials are decided by sweeping homogeneous basis tuples
(complete by multilinearity).  Everything else goes through the generic
algebra: each variable x_{i,g} becomes sum_b t_{i,g,b} b with commuting
indeterminates t, and f is an identity iff every coefficient polynomial
of the generic value vanishes.
"""
from __future__ import annotations

import itertools
import math
import os
import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from . import engine
from .engine import BatchEvaluator, Domain, basis_domain, cached_program, compile_poly
from .freepoly import (Alternant, GradedPolynomial, PolyError, ResourceBound, is_linear_in_each,
                       is_multilinear, project, regev, regev_form, substitute_degrees, var)
from .galg import (AlgElement, AlgebraMismatch, GradedAlgebra, NotSemisimple, center, exponent,
                   star_involution, trace_radical)
from .groups import GroupMismatch
from .linalg import Subspace, nullspace
from .scalars import CycScalar, phi

TUPLE_CAP = 10**7
ID_SPACE_CAP = 4
DEFAULT_SEED = 0


class CheckerError(ValueError):
    code = "CheckerError"


class MissingAssignment(CheckerError):
    code = "MissingAssignment"


class InhomogeneousValue(CheckerError):
    code = "InhomogeneousValue"


class EmptyComponent(CheckerError):
    code = "EmptyComponent"


class PreconditionFailed(CheckerError):
    code = "PreconditionFailed"


class DichotomyViolated(CheckerError):
    code = "DichotomyViolated"


class SearchExhausted(CheckerError):
    code = "SearchExhausted"


class VerificationFailed(CheckerError):
    code = "VerificationFailed"


def workers() -> int:
    try:
        return max(1, int(os.environ.get("GRADEDPI_THREADS", "1")))
    except ValueError:
        return 1


# -- assignments ------------------------------------------------------------------

def serialize_assignment(asg: dict, A: GradedAlgebra) -> list[dict]:
    out = []
    for v in sorted(asg, key=lambda v: (v[0], -1 if v[1] is None else v[1])):
        g = "?" if v[1] is None else A.group.elements[v[1]]
        out.append({"var": [v[0], g], "value": asg[v].to_literals()})
    return out


def evaluate(f, A: GradedAlgebra, asg: dict) -> AlgElement:
    """Exact value of f at a homogeneous assignment {variable: AlgElement}."""
    variables = f.variables()
    for v in variables:
        if v not in asg:
            raise MissingAssignment(f"variable x[{v[0]},{v[1]}] has no value")
        a = asg[v]
        if a.algebra is not A:
            raise AlgebraMismatch("assigned value lives in another algebra")
        if v[1] is not None and any(c and A.degrees[i] != v[1] for i, c in enumerate(a.coeffs)):
            raise InhomogeneousValue(f"value for x[{v[0]},{A.group.elements[v[1]]}] is not of that degree")
    return engine.eval_poly(f, A, asg)


# -- generic algebra ----------------------------------------------------------------

class GenericElement:
    """Algebra element with coefficients in Q(zeta_m)[t_1, ..., t_T].

    Coefficient polynomials are dicts from exponent tuples to CycScalar.
    """

    __slots__ = ("algebra", "coeffs", "nt")

    def __init__(self, algebra: GradedAlgebra, coeffs, nt: int):
        self.algebra = algebra
        self.coeffs = coeffs
        self.nt = nt

    @classmethod
    def generator(cls, A: GradedAlgebra, basis_idx, first_t: int, nt: int):
        coeffs = [{} for _ in range(A.dim)]
        one = A.one_scalar
        for k, b in enumerate(basis_idx):
            mono = [0] * nt
            mono[first_t + k] = 1
            coeffs[b] = {tuple(mono): one}
        return cls(A, coeffs, nt)

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __add__(self, other):
        out = []
        for p, q in zip(self.coeffs, other.coeffs):
            r = dict(p)
            for mono, c in q.items():
                s = r.get(mono)
                s = c if s is None else s + c
                if s:
                    r[mono] = s
                else:
                    r.pop(mono, None)
            out.append(r)
        return GenericElement(self.algebra, out, self.nt)

    def __sub__(self, other):
        return self + other * CycScalar.rational(self.algebra.m, -1)

    def __mul__(self, other):
        A = self.algebra
        if isinstance(other, CycScalar):
            return GenericElement(A, [{k: c * other for k, c in p.items()} for p in self.coeffs], self.nt)
        if isinstance(other, AlgElement):
            other = GenericElement(A, [{(0,) * self.nt: c} if c else {} for c in other.coeffs], self.nt)
        out = [{} for _ in range(A.dim)]
        for a, p in enumerate(self.coeffs):
            if not p:
                continue
            for j, q in enumerate(other.coeffs):
                if not q:
                    continue
                cell = A.sc[a][j]
                if not cell:
                    continue
                prod: dict = {}
                for m1, c1 in p.items():
                    for m2, c2 in q.items():
                        key = tuple(x + y for x, y in zip(m1, m2))
                        s = prod.get(key)
                        prod[key] = c1 * c2 if s is None else s + c1 * c2
                for k, c in cell:
                    tgt = out[k]
                    for mono, val in prod.items():
                        s = tgt.get(mono)
                        s = val * c if s is None else s + val * c
                        if s:
                            tgt[mono] = s
                        else:
                            tgt.pop(mono, None)
        return GenericElement(A, out, self.nt)

    def rmul_basis(self, b: int):
        """b * self for a basis index b."""
        left = GenericElement(self.algebra, [{(0,) * self.nt: self.algebra.one_scalar} if i == b else {}
                                             for i in range(self.algebra.dim)], self.nt)
        return left * self

    def component(self, g: int):
        A = self.algebra
        return GenericElement(A, [p if A.degrees[i] == g else {} for i, p in enumerate(self.coeffs)], self.nt)

    def specialize(self, point) -> AlgElement:
        A = self.algebra
        out = []
        for p in self.coeffs:
            s = A.zero_scalar
            for mono, c in p.items():
                s = s + c * math.prod(x**e for x, e in zip(point, mono))
            out.append(s)
        return AlgElement(A, tuple(out))


def _generic_values(f, A: GradedAlgebra, degrees: dict | None, strict: bool):
    variables = f.variables()
    slots = []
    for v in variables:
        g = v[1] if v[1] is not None else (degrees or {}).get(v[0])
        if g is None:
            raise MissingAssignment(f"no degree chosen for ungraded variable x[{v[0]},?]")
        idx = A.component_indices(g)
        if not idx and strict:
            raise EmptyComponent(f"component of degree {A.group.elements[g]} is zero")
        slots.append((v, g, idx))
    nt = sum(len(idx) for _, _, idx in slots)
    values = {}
    labels = []
    first = 0
    for v, g, idx in slots:
        if idx:
            values[v] = GenericElement.generator(A, idx, first, nt)
        labels += [(v[0], g, b) for b in idx]
        first += len(idx)
    return values, labels, nt


def evaluate_generic(f, A: GradedAlgebra, degrees: dict | None = None, strict: bool = True) -> GenericElement:
    """Generic value of f; ``degrees`` fixes i -> g for ungraded variables."""
    values, _, nt = _generic_values(f, A, degrees, strict)
    if isinstance(f, Alternant):
        f = f.to_poly()
    prog = compile_poly(f)
    vals = {k: values.get(v) for k, v in enumerate(prog.variables)}
    zero = GenericElement(A, [{} for _ in range(A.dim)], nt)
    return engine.run_exact(prog, vals, zero)


# -- verdicts ---------------------------------------------------------------------------

@dataclass
class IdentityVerdict:
    holds: bool
    method: str
    checked: int = 0
    witness: dict | None = None
    value: AlgElement | None = None
    degrees: dict | None = None

    def __bool__(self):
        return self.holds


@dataclass
class CentralityVerdict:
    kind: str  # identity | central | neither
    checked: int = 0
    witness: dict | None = None
    value: AlgElement | None = None
    basis: str | None = None


@dataclass
class SweepResult:
    total: int
    checked: int = 0
    nonzero: int = 0
    first_bad: int | None = None
    first_nonzero: int | None = None
    bad: int = 0


# -- basis sweeps ------------------------------------------------------------------------

def _classify(A, vals, kind, keep, K, e_mask):
    """Boolean arrays (nonzero, bad) for a block of realified values."""
    if keep is not None:
        vals = vals * degree_mask_cached(A, keep)
    nonzero = np.any(vals != 0, axis=1)
    if kind == "identity":
        bad = nonzero
    elif kind == "central":
        bad = np.any((vals @ K) != 0, axis=1)
    elif kind == "central_e":
        bad = np.any((vals @ K) != 0, axis=1) | np.any(vals[:, ~e_mask] != 0, axis=1)
    elif kind == "strong":
        bad = nonzero & ~np.any(vals[:, e_mask] != 0, axis=1)
    else:
        raise ValueError(kind)
    return nonzero, bad


_MASKS: dict = {}


def degree_mask_cached(A, g):
    key = (id(A), g)
    if key not in _MASKS:
        _MASKS[key] = (A, engine.degree_mask(A, g).astype(np.int64))
    return _MASKS[key][1]


def _block(args):
    prog, A, dom, start, stop, kind, keep, derived = args
    ev = BatchEvaluator(prog, A)
    K = engine.commutator_tensor(A, ev.dtype) if kind in ("central", "central_e") else None
    e_mask = engine.degree_mask(A, 0)
    res = SweepResult(total=dom.total)
    step = engine.chunk_size(A)
    for s in range(start, stop, step):
        e = min(stop, s + step)
        vals = ev.run(engine.batch_inputs(prog, A, dom, s, e, ev.dtype, derived), e - s)
        nonzero, bad = _classify(A, vals, kind, keep, K, e_mask)
        res.checked += e - s
        res.nonzero += int(nonzero.sum())
        res.bad += int(bad.sum())
        if res.first_nonzero is None and nonzero.any():
            res.first_nonzero = s + int(np.argmax(nonzero))
        if res.first_bad is None and bad.any():
            res.first_bad = s + int(np.argmax(bad))
            if kind != "strong":
                break
    return res


def _exact_check(A, val: AlgElement, kind, keep):
    if keep is not None:
        val = val.component(keep)
    nz = not val.is_zero()
    if kind == "identity":
        return nz, nz
    if kind == "strong":
        return nz, nz and val.component(0).is_zero()
    noncentral = any(val * A.b(j) != A.b(j) * val for j in range(A.dim))
    if kind == "central":
        return nz, noncentral
    return nz, noncentral or val.component(0) != val


_ALT_VALUES: dict = {}


def _alternant_value(f: Alternant, A: GradedAlgebra, choice):
    """Exact alternant value, memoized: successive checks revisit the same tuples."""
    key = (f, id(A), tuple(choice))
    hit = _ALT_VALUES.get(key)
    if hit is not None and hit[0] is A:
        return hit[1]
    val = engine.eval_alternant(f, A, engine.element_of_choice(A, choice))
    if len(_ALT_VALUES) > 4096:
        _ALT_VALUES.clear()
    _ALT_VALUES[key] = (A, val)
    return val


def sweep(f, A: GradedAlgebra, kind: str, keep: int | None = None, limit: int | None = None,
          per_variable: bool = False, derived=None, domain_vars=None) -> tuple[SweepResult, Domain]:
    """Run ``kind`` over every reduced homogeneous basis tuple (in lexicographic order)."""
    if isinstance(f, Alternant) and f.term_count_bound() <= 10**5:
        f = f.to_poly()
    dom = basis_domain(domain_vars or f.variables(), A, per_variable)
    total = dom.total
    stop = total if limit is None else min(total, limit)
    if stop > TUPLE_CAP:
        raise ResourceBound(f"{total} basis tuples exceed the cap {TUPLE_CAP}")
    if isinstance(f, Alternant):
        res = SweepResult(total=total)
        for flat in range(stop):
            choice = dom.tuple_at(flat)
            val = _alternant_value(f, A, choice)
            nz, bad = _exact_check(A, val, kind, keep)
            res.checked += 1
            res.nonzero += nz
            res.bad += bad
            if nz and res.first_nonzero is None:
                res.first_nonzero = flat
            if bad and res.first_bad is None:
                res.first_bad = flat
                if kind != "strong":
                    break
        return res, dom
    prog = cached_program(f)
    nw = workers()
    if nw > 1 and stop > 4 * engine.chunk_size(A):
        bounds = np.linspace(0, stop, nw + 1).astype(int)
        jobs = [(prog, A, dom, int(a), int(b), kind, keep, derived) for a, b in zip(bounds, bounds[1:]) if b > a]
        with ProcessPoolExecutor(max_workers=nw) as pool:
            parts = list(pool.map(_block, jobs))
        res = SweepResult(total=total)
        for p in parts:
            res.checked += p.checked
            res.nonzero += p.nonzero
            res.bad += p.bad
            if res.first_nonzero is None:
                res.first_nonzero = p.first_nonzero
            if res.first_bad is None:
                res.first_bad = p.first_bad
        return res, dom
    return _block((prog, A, dom, 0, stop, kind, keep, derived)), dom


def sweep_values(f: GradedPolynomial, A: GradedAlgebra, per_variable: bool = False):
    """Yield (domain, start, realified values) blocks over all reduced basis tuples."""
    prog = cached_program(f)
    dom = basis_domain(f.variables(), A, per_variable)
    ev = BatchEvaluator(prog, A)
    step = engine.chunk_size(A)
    for s in range(0, dom.total, step):
        e = min(dom.total, s + step)
        yield dom, s, ev.run(engine.batch_inputs(prog, A, dom, s, e, ev.dtype), e - s)


def _choice_assignment(A, dom, flat):
    return engine.element_of_choice(A, dom.tuple_at(flat))


def _sweepable(f):
    if isinstance(f, Alternant):
        return "index"
    if is_multilinear(f):
        return "index"
    if is_linear_in_each(f):
        return "variable"
    return None


def _degree_maps(f, A):
    """All maps (ungraded index -> degree in supp A)."""
    free = sorted({v[0] for v in f.variables() if v[1] is None})
    for combo in itertools.product(A.support, repeat=len(free)):
        yield dict(zip(free, combo))


def is_identity(f, A: GradedAlgebra, keep: int | None = None, seed: int = DEFAULT_SEED) -> IdentityVerdict:
    if A.dim == 0 or (isinstance(f, GradedPolynomial) and f.is_zero()):
        return IdentityVerdict(True, "vacuous")
    route = _sweepable(f)
    if route is not None:
        res, dom = sweep(f, A, "identity", keep, per_variable=route == "variable")
        if res.first_bad is None:
            return IdentityVerdict(True, "sweep", res.checked)
        asg = _choice_assignment(A, dom, res.first_bad)
        val = _value_at(f, A, dom, res.first_bad, keep)
        return IdentityVerdict(False, "sweep", res.checked, asg, val)
    checked = 0
    for dmap in _degree_maps(f, A):
        gen = evaluate_generic(f, A, dmap, strict=False)
        if keep is not None:
            gen = gen.component(keep)
        checked += 1
        if not gen.is_zero():
            asg, val = _specialize_witness(f, A, dmap, gen, seed, keep)
            return IdentityVerdict(False, "generic", checked, asg, val, dmap)
    return IdentityVerdict(True, "generic", checked)


def _value_at(f, A, dom, flat, keep=None):
    choice = dom.tuple_at(flat)
    if isinstance(f, Alternant):
        val = _alternant_value(f, A, choice)
    else:
        val = evaluate(f, A, _complete(f, A, engine.element_of_choice(A, choice)))
    return val.component(keep) if keep is not None else val


def _complete(f, A, asg):
    """Fill unassigned variables with zero (reduced tuples)."""
    out = dict(asg)
    for v in f.variables():
        out.setdefault(v, A.zero())
    return out


def _specialize_witness(f, A, dmap, gen, seed, keep):
    """Concrete assignment where the generic value is nonzero."""
    values, labels, nt = _generic_values(f, A, dmap, strict=False)
    rng = random.Random(seed)
    for attempt in range(200):
        span = 2 + attempt // 20
        point = [rng.randint(-span, span) for _ in range(nt)]
        val = gen.specialize(point)
        if not val.is_zero():
            asg = {}
            for v in f.variables():
                g = v[1] if v[1] is not None else dmap[v[0]]
                vec = A.zero_vec()
                for k, (i, gg, b) in enumerate(labels):
                    if i == v[0] and gg == g:
                        vec[b] = CycScalar.rational(A.m, point[k])
                asg[v] = AlgElement(A, tuple(vec))
            return asg, val
    return None, None


def _first_noncommuting(A, val):
    for j in range(A.dim):
        if val * A.b(j) != A.b(j) * val:
            return A.basis[j]
    return None


def is_central(f, A: GradedAlgebra, keep: int | None = None) -> CentralityVerdict:
    """identity / central (all values in Z(A)) / neither."""
    iv = is_identity(f, A, keep)
    if iv.holds:
        return CentralityVerdict("identity", iv.checked)
    route = _sweepable(f)
    if route is not None:
        res, dom = sweep(f, A, "central", keep, per_variable=route == "variable")
        if res.first_bad is None:
            return CentralityVerdict("central", res.checked, iv.witness, iv.value)
        asg = _choice_assignment(A, dom, res.first_bad)
        val = _value_at(f, A, dom, res.first_bad, keep)
        return CentralityVerdict("neither", res.checked, asg, val, _first_noncommuting(A, val))
    checked = 0
    for dmap in _degree_maps(f, A):
        gen = evaluate_generic(f, A, dmap, strict=False)
        if keep is not None:
            gen = gen.component(keep)
        checked += 1
        for j in range(A.dim):
            comm = gen * A.b(j) - gen.rmul_basis(j)
            if not comm.is_zero():
                asg, val = _specialize_witness(f, A, dmap, comm, 0, None)
                return CentralityVerdict("neither", checked, asg, None, A.basis[j])
    return CentralityVerdict("central", checked, iv.witness, iv.value)


@dataclass
class RhoVerdict:
    kind: str
    rho: object


def rho_of(f):
    """rho_e(f); for ungraded f the projection of its embedding is applied lazily."""
    if isinstance(f, Alternant):
        return f.projected(0)
    if f.is_ungraded:
        return None
    return project(f, 0)


def rho_dichotomy(f, A: GradedAlgebra) -> RhoVerdict:
    if is_central(f, A).kind != "central":
        raise PreconditionFailed("f is not a central polynomial of A")
    r = rho_of(f)
    verdict = is_central(f, A, keep=0) if r is None else is_central(r, A)
    if verdict.kind == "neither":
        raise DichotomyViolated(f"rho(f) is neither central nor an identity; witness {verdict.witness}")
    return RhoVerdict(verdict.kind, r)


# -- strongness ---------------------------------------------------------------------------

@dataclass
class StrongReport:
    verdict: str  # no_counterexample | counterexample
    checked: int
    nonzero: int = 0
    witness: dict | None = None
    value: AlgElement | None = None
    sampled: int = 0
    seed: int = DEFAULT_SEED


def _random_homogeneous(A, g, rng):
    idx = A.component_indices(g)
    while True:
        vec = A.zero_vec()
        for b in idx:
            vec[b] = CycScalar.rational(A.m, rng.randint(-3, 3))
        if any(vec):
            return AlgElement(A, tuple(vec))


def strong_falsifier(f, A: GradedAlgebra, budget: int = TUPLE_CAP, samples: int = 100,
                     seed: int = DEFAULT_SEED, check_central: bool = True) -> StrongReport:
    """Search for an evaluation with nonzero value and zero e-component."""
    if budget <= 0:
        return StrongReport("no_counterexample", 0, seed=seed)
    if check_central and is_central(f, A).kind != "central":
        raise PreconditionFailed("f is not a central polynomial of A")
    res, dom = sweep(f, A, "strong", limit=budget)
    if res.first_bad is not None:
        asg = _choice_assignment(A, dom, res.first_bad)
        return StrongReport("counterexample", res.checked, res.nonzero, asg,
                            evaluate(f, A, _complete(f, A, asg)), seed=seed)
    rng = random.Random(seed)
    left = min(samples, budget - res.checked)
    support = [g for g in A.support]
    for k in range(max(0, left)):
        asg = {}
        for v in f.variables():
            g = v[1] if v[1] is not None else rng.choice(support)
            if not A.component_indices(g):
                continue
            asg[v] = _random_homogeneous(A, g, rng)
        val = evaluate(f, A, _complete(f, A, asg))
        if not val.is_zero() and val.component(0).is_zero():
            return StrongReport("counterexample", res.checked + k + 1, res.nonzero, asg, val, k + 1, seed)
    return StrongReport("no_counterexample", res.checked + max(0, left), res.nonzero, sampled=max(0, left), seed=seed)


def star_falsifier(fcheck: GradedPolynomial, A: GradedAlgebra, nx: int, budget: int = TUPLE_CAP,
                   samples: int = 20, seed: int = DEFAULT_SEED, star=None) -> StrongReport:
    """Check f(x) f^t(y) at y_i = x_i^*: nonzero values must have nonzero e-part."""
    star = star or (lambda x: star_involution(A, x))
    S = engine.star_matrix(A, star)
    G = A.group
    xs = [v for v in fcheck.variables() if v[0] <= nx]
    derived = {}
    for v in fcheck.variables():
        if v[0] > nx:
            src = var(v[0] - nx, None if v[1] is None else G.inv(v[1]))
            derived[v] = (src, S)
    res, dom = sweep(fcheck, A, "strong", limit=budget, derived=derived, domain_vars=xs)
    if res.first_bad is not None:
        asg = _choice_assignment(A, dom, res.first_bad)
        for v, (src, _) in derived.items():
            asg[v] = star(asg.get(src, A.zero()))
        return StrongReport("counterexample", res.checked, res.nonzero, asg, None, seed=seed)
    rng = random.Random(seed)
    left = max(0, min(samples, budget - res.checked))
    for k in range(left):
        asg = {}
        for v in xs:
            g = v[1] if v[1] is not None else rng.choice(A.support)
            asg[v] = _random_homogeneous(A, g, rng)
        for v, (src, _) in derived.items():
            asg[v] = star(asg[src]) if src in asg else A.zero()
        val = engine.eval_poly(fcheck, A, asg)
        if not val.is_zero() and val.component(0).is_zero():
            return StrongReport("counterexample", res.checked + k + 1, res.nonzero, asg, val, k + 1, seed)
    return StrongReport("no_counterexample", res.checked + left, res.nonzero, sampled=left, seed=seed)


# -- sharpness -------------------------------------------------------------------------------

@dataclass
class SharpnessReport:
    d: int | None
    rows: list = field(default_factory=list)  # (name, exponent, expected, identity?, ok)

    @property
    def sharp(self) -> bool:
        return all(r[4] for r in self.rows)


def is_sharp(f, family) -> SharpnessReport:
    if not family:
        return SharpnessReport(None)
    d = max(e for _, e in family)
    rep = SharpnessReport(d)
    for A, e in family:
        ident = is_identity(f, A).holds
        expected = "non-identity" if e == d else "identity"
        ok = (not ident) if e == d else ident
        rep.rows.append((A.name, e, expected, ident, ok))
    return rep


# -- the degree-e central polynomial ------------------------------------------------------------

@dataclass
class ECentral:
    poly: object
    degrees: tuple[int, ...]
    certificate: dict
    value: AlgElement
    n: int
    checked: int


def _regev_value(n, A, choice_x, choice_y, F):
    d = n * n
    vals = {var(i + 1, None): A.b(b) for i, b in enumerate(choice_x)}
    vals.update({var(d + i + 1, None): A.b(b) for i, b in enumerate(choice_y)})
    return engine.eval_poly(F, A, vals)


def find_e_central(A: GradedAlgebra, budget: int = 10**5) -> ECentral:
    """Degree-e central polynomial rho(F_G) from a nonvanishing Regev evaluation."""
    if trace_radical(A):
        raise NotSemisimple(f"{A.name} has a nonzero radical")
    ex = exponent(A)
    n = math.isqrt(ex)
    if n * n != ex:
        raise CheckerError(f"exponent {ex} is not a square")
    d = n * n
    F = regev(n, A.m) if n <= 2 else regev_form(n, A.m)
    tried = 0
    for X in itertools.combinations(range(A.dim), d):
        for Y in itertools.combinations(range(A.dim), d):
            tried += 1
            if tried > budget:
                raise SearchExhausted(f"no nonvanishing evaluation within {budget} candidates")
            val = _regev_value(n, A, X, Y, F)
            if val.component(0).is_zero():
                continue
            degrees = tuple(A.degrees[b] for b in X + Y)
            f = _graded_rho(n, A, degrees)
            cert = {var(i + 1, g): A.b(b) for i, (g, b) in enumerate(zip(degrees, X + Y))}
            cv = is_central(f, A)
            if cv.kind != "central":
                raise VerificationFailed(f"rho(F_G) classified {cv.kind}")
            res, _ = sweep(f, A, "central_e")
            if res.first_bad is not None:
                raise VerificationFailed("a value of rho(F_G) lies outside Z(A)_e")
            return ECentral(f, degrees, cert, val.component(0), n, res.checked)
    raise SearchExhausted("no pair of basis subsets gives a nonzero e-component")


def _graded_rho(n, A, degrees):
    if n <= 2:
        F = regev(n, A.m)
        FG = substitute_degrees(F, A.group, {i + 1: g for i, g in enumerate(degrees)})
        return project(FG, 0)
    return regev_form(n, A.m).graded(A.group, degrees).projected(0)


# -- multilinear identity spaces ---------------------------------------------------------------

@dataclass
class IdSpace:
    degrees: tuple[int, ...]
    perms: list
    basis: list  # coefficient vectors over perms
    m: int

    @property
    def dim(self) -> int:
        return len(self.basis)

    def monomial(self, perm):
        return tuple(var(s + 1, self.degrees[s]) for s in perm)

    def polynomial(self, vec, group) -> GradedPolynomial:
        return GradedPolynomial(group, self.m, {self.monomial(p): c for p, c in zip(self.perms, vec) if c})


def multilinear_id_space(A: GradedAlgebra, degrees, cap: int = ID_SPACE_CAP,
                         row_cap: int = 10**6) -> IdSpace:
    degrees = tuple(A.group.element(g) if isinstance(g, str) else g for g in degrees)
    k = len(degrees)
    if k > cap:
        raise ResourceBound(f"{k} variables exceed the identity-space cap {cap}")
    perms = list(itertools.permutations(range(k)))
    comps = [A.component_indices(g) for g in degrees]
    one, zero = A.one_scalar, A.zero_scalar
    if any(not c for c in comps):
        basis = [[one if i == j else zero for j in range(len(perms))] for i in range(len(perms))]
        return IdSpace(degrees, perms, basis, A.m)
    count = math.prod(len(c) for c in comps) * A.dim
    if count > row_cap:
        raise ResourceBound(f"{count} evaluation rows exceed the cap {row_cap}")
    rows = []
    for tup in itertools.product(*comps):
        cols = []
        for p in perms:
            v = A.basis_vec(tup[p[0]])
            for s in p[1:]:
                v = A.mul_vec(v, A.basis_vec(tup[s]))
            cols.append(v)
        for coord in range(A.dim):
            row = [c[coord] for c in cols]
            if any(row):
                rows.append(row)
    basis = [_monic(v) for v in nullspace(rows, len(perms), zero, one)]
    return IdSpace(degrees, perms, basis, A.m)


def _monic(v):
    lead = next(c for c in v if c)
    inv = lead.inv()
    return [c * inv for c in v]


@dataclass
class Comparison:
    equal: bool
    degrees: tuple | None = None
    witness: GradedPolynomial | None = None
    identity_of: str | None = None
    checked: int = 0


def compare_id_spaces(A1: GradedAlgebra, A2: GradedAlgebra, max_len: int) -> Comparison:
    if A1.group != A2.group:
        raise GroupMismatch("algebras are graded by different groups")
    if A1.m != A2.m:
        raise AlgebraMismatch("algebras use different scalar orders")
    G = A1.group
    checked = 0
    for k in range(1, max_len + 1):
        for degs in itertools.product(range(G.order), repeat=k):
            s1 = multilinear_id_space(A1, degs)
            s2 = multilinear_id_space(A2, degs)
            checked += 1
            for mine, other, name in ((s1, s2, A1.name), (s2, s1, A2.name)):
                sub = Subspace(len(other.perms), A1.zero_scalar)
                for v in other.basis:
                    sub.add(v)
                for v in mine.basis:
                    if v not in sub:
                        return Comparison(False, degs, mine.polynomial(v, G), name, checked)
    return Comparison(True, checked=checked)


# -- reports --------------------------------------------------------------------------------------

def report(verdict: str, witnesses=None, counts=None, seed: int = DEFAULT_SEED, started: float | None = None) -> dict:
    runtime = 0 if started is None else int((time.perf_counter() - started) * 1000)
    return {"verdict": verdict, "witnesses": witnesses or [], "counts": counts or {},
            "seed": seed, "runtime_ms": runtime}
