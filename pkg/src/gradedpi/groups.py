"""Finite groups given by Cayley tables, with quotients and transversals.

The identity always has index 0.  Subgroups are sorted tuples of element
indices.
"""
from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from functools import cached_property


class GroupError(ValueError):
    code = "GroupError"


class NotAGroup(GroupError):
    code = "NotAGroup"


class NotASubgroup(GroupError):
    code = "NotASubgroup"


class NotNormal(GroupError):
    code = "NotNormal"


class NoCandidate(GroupError):
    code = "NoCandidate"


class GroupMismatch(GroupError):
    code = "GroupMismatch"


@dataclass(frozen=True, eq=False)
class FiniteGroup:
    name: str
    elements: tuple[str, ...]
    table: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        n = len(self.elements)
        if n == 0 or len(self.table) != n or any(len(r) != n for r in self.table):
            raise NotAGroup("table shape does not match element list")
        if len(set(self.elements)) != n:
            raise NotAGroup("element names are not unique")
        full = set(range(n))
        for i, row in enumerate(self.table):
            if set(row) != full:
                raise NotAGroup(f"row {i} is not a permutation")
            if row[0] != i or self.table[0][i] != i:
                raise NotAGroup("index 0 is not the identity")
        for j in range(n):
            if {self.table[i][j] for i in range(n)} != full:
                raise NotAGroup(f"column {j} is not a permutation")
        t = self.table
        for a, b, c in itertools.product(range(n), repeat=3):
            if t[t[a][b]][c] != t[a][t[b][c]]:
                raise NotAGroup(f"associativity fails at {(a, b, c)}")

    @property
    def order(self) -> int:
        return len(self.elements)

    def __len__(self):
        return len(self.elements)

    def __eq__(self, other):
        return isinstance(other, FiniteGroup) and self.elements == other.elements and self.table == other.table

    def __hash__(self):
        return hash((self.elements, self.table))

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    @cached_property
    def inverses(self) -> tuple[int, ...]:
        return tuple(row.index(0) for row in self.table)

    def inv(self, a: int) -> int:
        return self.inverses[a]

    def prod(self, seq) -> int:
        out = 0
        for g in seq:
            out = self.table[out][g]
        return out

    @cached_property
    def index(self) -> dict[str, int]:
        return {name: i for i, name in enumerate(self.elements)}

    def element(self, name: str) -> int:
        try:
            return self.index[name]
        except KeyError:
            raise GroupError(f"unknown element {name!r} of {self.name}") from None

    def element_order(self, a: int) -> int:
        k, x = 1, a
        while x != 0:
            x = self.table[x][a]
            k += 1
        return k

    @cached_property
    def exponent(self) -> int:
        from math import lcm

        out = 1
        for a in range(self.order):
            out = lcm(out, self.element_order(a))
        return out

    @cached_property
    def is_abelian(self) -> bool:
        t = self.table
        return all(t[a][b] == t[b][a] for a in range(self.order) for b in range(a))

    # subgroups
    def is_subgroup(self, H) -> bool:
        H = set(H)
        return 0 in H and all(self.table[a][self.inverses[b]] in H for a in H for b in H)

    def generated(self, gens) -> tuple[int, ...]:
        out = {0}
        frontier = [0]
        while frontier:
            nxt = []
            for a in frontier:
                for g in gens:
                    c = self.table[a][g]
                    if c not in out:
                        out.add(c)
                        nxt.append(c)
            frontier = nxt
        return tuple(sorted(out))

    def is_normal(self, N) -> bool:
        N = set(N)
        return all(self.table[self.table[g][n]][self.inverses[g]] in N for g in range(self.order) for n in N)

    def to_json(self) -> dict:
        return {"name": self.name, "elements": list(self.elements), "table": [list(r) for r in self.table]}

    @classmethod
    def from_json(cls, doc) -> "FiniteGroup":
        if isinstance(doc, str):
            return group_build(doc)
        return cls(doc.get("name", "G"), tuple(doc["elements"]), tuple(tuple(r) for r in doc["table"]))

    def __repr__(self):
        return f"FiniteGroup({self.name}, order={self.order})"


def _check_subgroup(G: FiniteGroup, H) -> tuple[int, ...]:
    H = tuple(sorted(set(H)))
    if not H or any(not 0 <= h < G.order for h in H) or not G.is_subgroup(H):
        raise NotASubgroup(f"{H} is not a subgroup of {G.name}")
    return H


# -- constructors ----------------------------------------------------------

def cyclic(n: int, gen: str = "t") -> FiniteGroup:
    names = ["e"] + [gen if k == 1 else f"{gen}{k}" for k in range(1, n)]
    table = tuple(tuple((a + b) % n for b in range(n)) for a in range(n))
    return FiniteGroup(f"C{n}", tuple(names), table)


def direct_product(A: FiniteGroup, B: FiniteGroup) -> FiniteGroup:
    nb = B.order
    names = []
    for a in A.elements:
        for b in B.elements:
            if b == "e":
                names.append(a)
            elif a == "e":
                names.append(b)
            else:
                names.append(a + b)
    if len(set(names)) != len(names):
        names = [f"({a},{b})" if (a, b) != ("e", "e") else "e" for a in A.elements for b in B.elements]
    table = tuple(
        tuple(A.table[i // nb][j // nb] * nb + B.table[i % nb][j % nb] for j in range(A.order * nb))
        for i in range(A.order * nb)
    )
    return FiniteGroup(f"{A.name}x{B.name}", tuple(names), table)


def _from_perms(name, perms, names) -> FiniteGroup:
    idx = {p: i for i, p in enumerate(perms)}
    table = tuple(tuple(idx[tuple(p[q[k]] for k in range(len(p)))] for q in perms) for p in perms)
    return FiniteGroup(name, tuple(names), table)


def dihedral(n: int) -> FiniteGroup:
    """Symmetries of the n-gon; elements r^i s^j listed with s-free ones first."""
    rot = lambda i: tuple((k + i) % n for k in range(n))
    refl = lambda i: tuple((i - k) % n for k in range(n))
    perms = [rot(i) for i in range(n)] + [refl(i) for i in range(n)]
    names = ["e"] + [f"r{i}" if i > 1 else "r" for i in range(1, n)]
    names += ["s"] + [f"r{i}s" if i > 1 else "rs" for i in range(1, n)]
    # r^i s acts as k -> i - k, composing maps left-to-right
    return _from_perms(f"D{n}", perms, names)


def symmetric(n: int) -> FiniteGroup:
    perms = sorted(itertools.permutations(range(n)))
    names = ["e"] + ["p" + "".join(str(k + 1) for k in p) for p in perms[1:]]
    return _from_perms(f"S{n}", perms, names)


def group_build(desc) -> FiniteGroup:
    """Build a group from a description.

    Accepted forms: a FiniteGroup; a JSON group document; a dict such as
    ``{"cyclic": 4, "gen": "t"}``, ``{"product": [desc, desc]}``,
    ``{"dihedral": 3}``, ``{"sym": 3}``, ``{"table": ..., "elements": ...}``;
    or a string like ``"C4"``, ``"C3xC3"``, ``"C3(s)xC3(t)"``, ``"D4"``, ``"S3"``.
    """
    if isinstance(desc, FiniteGroup):
        return desc
    if isinstance(desc, dict):
        if "table" in desc:
            return FiniteGroup.from_json(desc)
        if "cyclic" in desc:
            return cyclic(int(desc["cyclic"]), desc.get("gen", "t"))
        if "product" in desc:
            parts = [group_build(s) for s in desc["product"]]
            out = parts[0]
            for p in parts[1:]:
                out = direct_product(out, p)
            return out
        if "dihedral" in desc:
            return dihedral(int(desc["dihedral"]))
        if "sym" in desc:
            return symmetric(int(desc["sym"]))
        raise GroupError(f"unrecognised group description {desc!r}")
    text = str(desc).strip()
    if text.startswith("{"):
        return group_build(json.loads(text))
    factors = text.split("x")
    if len(factors) > 1:
        letters = "abcdfghjk"
        built = []
        for k, f in enumerate(factors):
            if f.startswith("C") and "(" not in f:
                f = f"{f}({letters[k]})"
            built.append(group_build(f))
        out = built[0]
        for p in built[1:]:
            out = direct_product(out, p)
        return out
    if text.startswith("C"):
        body = text[1:]
        gen = "t"
        if "(" in body:
            body, gen = body.split("(")
            gen = gen.rstrip(")")
        return cyclic(int(body), gen)
    if text.startswith("D"):
        return dihedral(int(text[1:]))
    if text.startswith("S"):
        return symmetric(int(text[1:]))
    if text in ("1", "trivial"):
        return trivial_group()
    raise GroupError(f"unrecognised group description {desc!r}")


def trivial_group() -> FiniteGroup:
    return FiniteGroup("1", ("e",), ((0,),))


# -- quotients ---------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class QuotientMap:
    source: FiniteGroup
    kernel: tuple[int, ...]
    target: FiniteGroup
    projection: tuple[int, ...] = field(repr=False)

    def __call__(self, g: int) -> int:
        return self.projection[g]

    def preimage(self, q: int) -> tuple[int, ...]:
        return tuple(g for g, p in enumerate(self.projection) if p == q)


def quotient(G: FiniteGroup, N) -> QuotientMap:
    N = _check_subgroup(G, N)
    if not G.is_normal(N):
        raise NotNormal(f"{N} is not normal in {G.name}")
    proj = [-1] * G.order
    reps = []
    for g in range(G.order):
        if proj[g] >= 0:
            continue
        k = len(reps)
        reps.append(g)
        for n in N:
            proj[G.mul(g, n)] = k
    table = tuple(tuple(proj[G.mul(a, b)] for b in reps) for a in reps)
    names = tuple(G.elements[r] for r in reps)
    Q = FiniteGroup(f"{G.name}/{len(N)}", names, table)
    return QuotientMap(G, N, Q, tuple(proj))


def transversal(G: FiniteGroup, H) -> list[int]:
    """Minimal-index representatives of the right cosets Hg."""
    H = _check_subgroup(G, H)
    seen = set()
    reps = []
    for g in range(G.order):
        if g in seen:
            continue
        reps.append(g)
        seen.update(G.mul(h, g) for h in H)
    return reps


def products_up_to(G: FiniteGroup, gens, length: int) -> set[int]:
    """All products of at most ``length`` factors from ``gens`` (the empty product included)."""
    level = {0}
    out = {0}
    for _ in range(length):
        level = {G.mul(a, g) for a in level for g in gens}
        out |= level
    return out


def separates(q: QuotientMap, gens, length: int) -> bool:
    prods = products_up_to(q.source, gens, length)
    return len({q(p) for p in prods}) == len(prods)


def separating_quotient(G: FiniteGroup, generators, length: int, candidates) -> QuotientMap:
    """Largest candidate normal subgroup keeping all short products distinct."""
    if not candidates:
        raise NoCandidate("no candidate subgroups given")
    maps = [quotient(G, N) for N in candidates]
    maps.sort(key=lambda q: (-len(q.kernel), q.kernel))
    for q in maps:
        if separates(q, generators, length):
            return q
    # {e} always separates; reaching here means it was not offered
    return quotient(G, (0,))
