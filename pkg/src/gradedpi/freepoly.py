"""The free G-graded algebra: polynomials in variables x[i,g].

A variable is a pair ``(i, g)`` with g a group element index, or ``None``
for an ungraded variable (printed ``x[i,?]``).  Monomials are tuples of
variables; a polynomial maps monomials to nonzero CycScalar coefficients.
"""
from __future__ import annotations

import itertools
import math
import re
from dataclasses import dataclass

from .groups import FiniteGroup, GroupMismatch, QuotientMap
from .scalars import CycScalar, LiteralError, format_scalar, parse_scalar


class PolyError(ValueError):
    code = "PolyError"


class PolySyntaxError(PolyError):
    code = "SyntaxError"

    def __init__(self, msg, pos=None):
        super().__init__(msg if pos is None else f"{msg} at position {pos}")
        self.pos = pos


class UnknownGroupElement(PolyError):
    code = "UnknownGroupElement"


class ResourceBound(PolyError):
    code = "ResourceBound"


DEFAULT_TERM_CAP = 2_000_000

_VARS: dict = {}


def var(i: int, g: int | None):
    """Interned variable pair; keeps large monomial tables small."""
    key = (i, g)
    return _VARS.setdefault(key, key)


def _var_key(v):
    return (v[0], -1 if v[1] is None else v[1])


def mono_key(mono):
    return (len(mono), [_var_key(v) for v in mono])


class GradedPolynomial:
    """Immutable element of the free algebra over Q(zeta_m)."""

    __slots__ = ("group", "m", "terms")

    def __init__(self, group: FiniteGroup | None, m: int, terms=None):
        self.group = group
        self.m = m
        clean = {}
        for mono, c in (terms or {}).items():
            if not isinstance(c, CycScalar):
                c = CycScalar.rational(m, c)
            if c:
                if not mono:
                    raise PolyError("constant terms are not part of the free algebra without unit")
                clean[tuple(mono)] = c
        self.terms = clean

    @classmethod
    def monomial(cls, group, m, mono, coeff=1):
        return cls(group, m, {tuple(var(i, g) for i, g in mono): coeff})

    # structure
    def __len__(self):
        return len(self.terms)

    def __iter__(self):
        return iter(sorted(self.terms.items(), key=lambda t: mono_key(t[0])))

    def is_zero(self) -> bool:
        return not self.terms

    def variables(self) -> list:
        return sorted({v for mono in self.terms for v in mono}, key=_var_key)

    def indices(self) -> list[int]:
        return sorted({v[0] for mono in self.terms for v in mono})

    @property
    def is_ungraded(self) -> bool:
        return all(v[1] is None for mono in self.terms for v in mono)

    def mono_degree(self, mono) -> int:
        if self.group is None or any(v[1] is None for v in mono):
            raise PolyError("monomial with ungraded variables has no degree")
        return self.group.prod(v[1] for v in mono)

    def max_length(self) -> int:
        return max((len(mn) for mn in self.terms), default=0)

    def _compatible(self, other):
        if not isinstance(other, GradedPolynomial):
            return False
        if self.m != other.m:
            raise PolyError("polynomials over different scalar orders")
        if self.group is not None and other.group is not None and self.group != other.group:
            raise GroupMismatch("polynomials over different groups")
        return True

    def _group_with(self, other):
        return self.group if self.group is not None else other.group

    # arithmetic
    def __add__(self, other):
        if not self._compatible(other):
            return NotImplemented
        out = dict(self.terms)
        for mono, c in other.terms.items():
            out[mono] = out.get(mono, CycScalar.zero(self.m)) + c
        return GradedPolynomial(self._group_with(other), self.m, out)

    def __neg__(self):
        return GradedPolynomial(self.group, self.m, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        if not self._compatible(other):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, CycScalar)) or type(other).__name__ == "Fraction":
            return GradedPolynomial(self.group, self.m, {k: c * other for k, c in self.terms.items()})
        if not self._compatible(other):
            return NotImplemented
        out = {}
        zero = CycScalar.zero(self.m)
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                k = m1 + m2
                out[k] = out.get(k, zero) + c1 * c2
        return GradedPolynomial(self._group_with(other), self.m, out)

    def __rmul__(self, other):
        if isinstance(other, (int, CycScalar)) or type(other).__name__ == "Fraction":
            return self * other
        return NotImplemented

    def __eq__(self, other):
        if not isinstance(other, GradedPolynomial):
            return NotImplemented
        return self.m == other.m and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __str__(self):
        return format_poly(self)

    def __repr__(self):
        return f"GradedPolynomial({format_poly(self)!r})"

    def with_group(self, group):
        return GradedPolynomial(group, self.m, self.terms)


# -- text format ----------------------------------------------------------------

def _var_text(v, group):
    if v[1] is None:
        return f"x[{v[0]},?]"
    name = group.elements[v[1]] if group is not None else str(v[1])
    return f"x[{v[0]},{name}]"


def format_poly(f: GradedPolynomial) -> str:
    if f.is_zero():
        return "0"
    out = []
    for mono, c in f:
        body = "*".join(_var_text(v, f.group) for v in mono)
        sign = "+"
        s = format_scalar(c)
        if s.startswith("-") and not any(ch in s[1:] for ch in "+-"):
            sign, c = "-", -c
        if c.is_one():
            text = body
        else:
            s = format_scalar(c)
            if any(ch in s for ch in "+-"):
                s = f"({s})"
            text = f"{s}*{body}"
        if not out:
            out.append(text if sign == "+" else f"-{text}")
        else:
            out.append(f" {sign} {text}")
    return "".join(out)


_VAR_RE = re.compile(r"x\[\s*(\d+)\s*,\s*([^\]\s]+)\s*\]")


def _split_top(text: str, seps: str):
    """Split at top-level separator characters, keeping (piece, sep, start)."""
    pieces = []
    depth = 0
    start = 0
    sep = None
    for pos, ch in enumerate(text):
        if ch in "([":
            depth += 1
        elif ch in ")]":
            depth -= 1
            if depth < 0:
                raise PolySyntaxError("unbalanced bracket", pos)
        elif ch in seps and depth == 0:
            pieces.append((text[start:pos], sep, start))
            sep, start = ch, pos + 1
    if depth:
        raise PolySyntaxError("unbalanced bracket", len(text))
    pieces.append((text[start:], sep, start))
    return pieces


def parse_poly(text: str, G: FiniteGroup | None, m: int) -> GradedPolynomial:
    """Parse ``poly := term (('+'|'-') term)*`` with ``term := [scalar '*'] var+``."""
    raw = text
    stripped = "".join(raw.split())
    if not stripped:
        raise PolySyntaxError("empty polynomial", 0)
    if stripped == "0":
        return GradedPolynomial(G, m)
    terms = {}
    zero = CycScalar.zero(m)
    for piece, sep, start in _split_top(stripped, "+-"):
        if piece == "":
            if sep is None and start == 0:
                continue  # leading sign
            raise PolySyntaxError("empty term", start)
        coeff = CycScalar.one(m) if sep != "-" else -CycScalar.one(m)
        mono = []
        for factor, _, fstart in _split_top(piece, "*"):
            pos = start + fstart
            if not factor:
                raise PolySyntaxError("empty factor", pos)
            if factor.startswith("x["):
                mt = _VAR_RE.fullmatch(factor)
                if not mt:
                    raise PolySyntaxError(f"malformed variable {factor!r}", pos)
                if int(mt.group(1)) < 1:
                    raise PolySyntaxError("variable indices start at 1", pos)
                name = mt.group(2)
                if name == "?":
                    g = None
                else:
                    if G is None:
                        raise UnknownGroupElement(f"no group given for element {name!r}")
                    if name not in G.index:
                        raise UnknownGroupElement(f"unknown group element {name!r} at position {pos}")
                    g = G.index[name]
                mono.append(var(int(mt.group(1)), g))
            else:
                if mono:
                    raise PolySyntaxError("scalar after a variable", pos)
                try:
                    coeff = coeff * parse_scalar(factor, m)
                except (LiteralError, ValueError) as exc:
                    raise PolySyntaxError(f"bad scalar {factor!r}: {exc}", pos) from None
        if not mono:
            raise PolySyntaxError("term without variables", start)
        key = tuple(mono)
        terms[key] = terms.get(key, zero) + coeff
    return GradedPolynomial(G, m, terms)


# -- degree bookkeeping ----------------------------------------------------------

def project(f: GradedPolynomial, g: int) -> GradedPolynomial:
    """rho_g: the terms whose monomial degree is g."""
    return GradedPolynomial(f.group, f.m, {k: c for k, c in f.terms.items() if f.mono_degree(k) == g})


def components(f: GradedPolynomial) -> dict[int, GradedPolynomial]:
    out: dict[int, dict] = {}
    for k, c in f.terms.items():
        out.setdefault(f.mono_degree(k), {})[k] = c
    return {g: GradedPolynomial(f.group, f.m, t) for g, t in sorted(out.items())}


def transpose(f):
    if isinstance(f, Alternant):
        return f.transposed()
    return GradedPolynomial(f.group, f.m, {k[::-1]: c for k, c in f.terms.items()})


def rename(f: GradedPolynomial, mapping) -> GradedPolynomial:
    """Relabel variable indices by ``mapping(i)``."""
    out = {}
    zero = CycScalar.zero(f.m)
    for k, c in f.terms.items():
        key = tuple(var(mapping(v[0]), v[1]) for v in k)
        out[key] = out.get(key, zero) + c
    return GradedPolynomial(f.group, f.m, out)


def check_product(f: GradedPolynomial, nvars: int | None = None) -> GradedPolynomial:
    """f(x_1..x_m) * f^t(y_1..y_m) with y_i the fresh index m + i."""
    if isinstance(f, Alternant):
        f = f.to_poly()
    m = max(f.indices(), default=0) if nvars is None else nvars
    right = rename(transpose(f), lambda i: i + m)
    out = {}
    zero = CycScalar.zero(f.m)
    for k1, c1 in f.terms.items():
        for k2, c2 in right.terms.items():
            key = k1 + k2
            out[key] = out.get(key, zero) + c1 * c2
    return GradedPolynomial(f.group, f.m, out)


def psi_quotient(f: GradedPolynomial, q: QuotientMap) -> GradedPolynomial:
    if f.group != q.source:
        raise GroupMismatch("polynomial is not over the quotient's source group")
    out = {}
    zero = CycScalar.zero(f.m)
    for k, c in f.terms.items():
        key = tuple(var(v[0], None if v[1] is None else q(v[1])) for v in k)
        out[key] = out.get(key, zero) + c
    return GradedPolynomial(q.target, f.m, out)


def is_q_stable(f: GradedPolynomial, q: QuotientMap, all_degrees: bool = False) -> bool:
    """psi o rho_e == rho_eN o psi on f.

    With ``all_degrees`` the square is required for every g in G
    (psi(rho_g f) == rho_gN(psi f)), a strictly stronger condition.
    """
    if f.group != q.source:
        raise GroupMismatch("polynomial is not over the quotient's source group")
    image = psi_quotient(f, q)
    degrees = range(q.source.order) if all_degrees else [0]
    return all(psi_quotient(project(f, g), q) == project(image, q(g)) for g in degrees)


def is_multilinear(f) -> bool:
    """Every term contains each variable index of f exactly once."""
    if isinstance(f, Alternant):
        return True
    idx = set(f.indices())
    for mono in f.terms:
        seen = [v[0] for v in mono]
        if len(seen) != len(idx) or set(seen) != idx:
            return False
    return True


def is_linear_in_each(f) -> bool:
    """Each variable (i, g) occurs at most once per term."""
    if isinstance(f, Alternant):
        return True
    return all(len(set(mono)) == len(mono) for mono in f.terms)


def ungraded_embed(f: GradedPolynomial, G: FiniteGroup, cap: int = DEFAULT_TERM_CAP) -> GradedPolynomial:
    """x_i -> sum over g of x_{i,g}."""
    total = sum(G.order ** len(k) for k in f.terms)
    if total > cap:
        raise ResourceBound(f"embedding produces {total} terms (cap {cap})")
    out = {}
    zero = CycScalar.zero(f.m)
    for k, c in f.terms.items():
        choices = [[var(v[0], g) for g in range(G.order)] if v[1] is None else [v] for v in k]
        for mono in itertools.product(*choices):
            out[mono] = out.get(mono, zero) + c
    return GradedPolynomial(G, f.m, out)


def substitute_degrees(f: GradedPolynomial, G: FiniteGroup, degrees: dict[int, int]) -> GradedPolynomial:
    """x_i -> x_{i, degrees[i]} for ungraded variables."""
    out = {}
    zero = CycScalar.zero(f.m)
    for k, c in f.terms.items():
        key = tuple(var(v[0], degrees[v[0]]) if v[1] is None else v for v in k)
        out[key] = out.get(key, zero) + c
    return GradedPolynomial(G, f.m, out)


# -- Regev polynomial --------------------------------------------------------------

def perm_sign(p) -> int:
    s = 1
    p = list(p)
    for i in range(len(p)):
        while p[i] != i:
            j = p[i]
            p[i], p[j] = p[j], p[i]
            s = -s
    return s


def regev_pattern(n: int) -> tuple[int, ...]:
    """Family (0 = x, 1 = y) of each position: blocks 1,1,3,3,...,2n-1,2n-1."""
    out = []
    for k in range(1, n + 1):
        out += [0] * (2 * k - 1) + [1] * (2 * k - 1)
    return tuple(out)


@dataclass(frozen=True)
class Alternant:
    """Lazy sum over sigma, tau in S_d of sgn(sigma)sgn(tau) times a monomial.

    Positions of family 0 read x_{sigma(1)}, x_{sigma(2)}, ... in order and
    positions of family 1 read y_{tau(1)}, ...; x_i has index i and y_i has
    index d + i.  ``degrees`` optionally grades variable i at degrees[i]
    (a tuple indexed by i - 1) and ``keep`` restricts to the monomials of
    that degree.
    """

    d: int
    pattern: tuple[int, ...]
    group: FiniteGroup | None = None
    m: int = 1
    degrees: tuple[int, ...] | None = None
    keep: int | None = None

    @property
    def n_vars(self) -> int:
        return 2 * self.d

    def variables(self) -> list:
        if self.degrees is None:
            return [var(i, None) for i in range(1, 2 * self.d + 1)]
        return [var(i, self.degrees[i - 1]) for i in range(1, 2 * self.d + 1)]

    def indices(self) -> list[int]:
        return list(range(1, 2 * self.d + 1))

    def term_count_bound(self) -> int:
        return math.factorial(self.d) ** 2

    def graded(self, G: FiniteGroup, degrees) -> "Alternant":
        return Alternant(self.d, self.pattern, G, self.m, tuple(degrees), None)

    def projected(self, g: int) -> "Alternant":
        if self.degrees is None:
            raise PolyError("project needs graded variables")
        return Alternant(self.d, self.pattern, self.group, self.m, self.degrees, g)

    def transposed(self) -> "Alternant":
        if self.keep is not None:
            raise PolyError("transpose of a projected alternant is not kept lazily")
        return Alternant(self.d, self.pattern[::-1], self.group, self.m, self.degrees, None)

    def monomials(self):
        """Yield (monomial, sign) pairs; (d!)^2 of them."""
        d = self.d
        var_of = self.variables()
        for s in itertools.permutations(range(d)):
            ss = perm_sign(s)
            for t in itertools.permutations(range(d)):
                it = [iter(s), iter(t)]
                mono = tuple(var_of[next(it[fam]) + fam * d] for fam in self.pattern)
                if self.keep is not None and self.group.prod(v[1] for v in mono) != self.keep:
                    continue
                yield mono, ss * perm_sign(t)

    def to_poly(self, cap: int = DEFAULT_TERM_CAP) -> GradedPolynomial:
        if self.term_count_bound() > cap:
            raise ResourceBound(f"{self.term_count_bound()} terms exceed the cap {cap}")
        return GradedPolynomial(self.group, self.m, dict(self.monomials()))

    def __str__(self):
        head = f"L_{self.d}"
        if self.degrees is not None:
            head += "[" + ",".join(self.group.elements[g] for g in self.degrees) + "]"
        if self.keep is not None:
            head = f"rho_{self.group.elements[self.keep]}({head})"
        return head


def regev_form(n: int, m: int = 1) -> Alternant:
    """The Regev polynomial L_{n^2} in lazy form."""
    if n < 1:
        raise PolyError("n must be positive")
    return Alternant(n * n, regev_pattern(n), None, m)


def regev(n: int, m: int = 1, force: bool = False) -> GradedPolynomial:
    """L_d, d = n^2, expanded; refuses n > 2 unless forced."""
    if n > 2 and not force:
        raise ResourceBound(f"L_{n * n} has {math.factorial(n * n) ** 2} terms; pass force=True")
    return regev_form(n, m).to_poly(cap=math.inf)
