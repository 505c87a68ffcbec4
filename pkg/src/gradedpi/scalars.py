"""Exact arithmetic in the cyclotomic field Q(zeta_m).

An element is stored as the coefficient vector of its reduced residue
polynomial in ``zeta`` modulo the m-th cyclotomic polynomial.  Every
coefficient is a :class:`fractions.Fraction`; no floating point is used
for arithmetic (floats only appear in :func:`guess_element`, whose output
is always verified exactly by the caller).
"""
from __future__ import annotations

import cmath
import re
from fractions import Fraction
from functools import lru_cache
from math import gcd


class ScalarError(ValueError):
    code = "ScalarError"


class OrderMismatch(ScalarError):
    code = "OrderMismatch"


class DivisionByZero(ScalarError, ZeroDivisionError):
    code = "DivisionByZero"


class LiteralError(ScalarError):
    code = "SyntaxError"


# -- integer polynomials, low degree first -------------------------------

def _pdivmod(num, den):
    num = list(num)
    q = [Fraction(0)] * max(len(num) - len(den) + 1, 1)
    lead = den[-1]
    while len(num) >= len(den) and any(num):
        shift = len(num) - len(den)
        c = Fraction(num[-1]) / lead
        q[shift] = c
        for i, d in enumerate(den):
            num[shift + i] -= c * d
        num.pop()
        while num and num[-1] == 0:
            num.pop()
    return q, num


@lru_cache(maxsize=None)
def cyclotomic_poly(m: int) -> tuple[int, ...]:
    """Coefficients of Phi_m, via x^m - 1 = prod_{d | m} Phi_d."""
    if m < 1:
        raise ValueError("order must be >= 1")
    num = [-1] + [0] * (m - 1) + [1]
    for d in range(1, m):
        if m % d == 0:
            q, r = _pdivmod(num, cyclotomic_poly(d))
            assert not any(r)
            num = q
    return tuple(int(c) for c in num)


def phi(m: int) -> int:
    return len(cyclotomic_poly(m)) - 1


@lru_cache(maxsize=None)
def _power_table(m: int) -> tuple[tuple[Fraction, ...], ...]:
    """Reduced coefficient vectors of zeta^j for j = 0 .. 2m-1."""
    n = phi(m)
    cp = cyclotomic_poly(m)
    rows = []
    cur = [Fraction(0)] * n
    cur[0] = Fraction(1)
    for _ in range(2 * m):
        rows.append(tuple(cur))
        # multiply by zeta: shift and reduce the x^n term
        top = cur[-1]
        cur = [Fraction(0)] + cur[:-1]
        if top:
            for i in range(n):
                cur[i] -= top * cp[i]
    return tuple(rows)


def _reduce(m: int, coeffs) -> tuple[Fraction, ...]:
    n = phi(m)
    if len(coeffs) <= n:
        out = [Fraction(c) for c in coeffs] + [Fraction(0)] * (n - len(coeffs))
        return tuple(out)
    table = _power_table(m)
    out = [Fraction(0)] * n
    for j, c in enumerate(coeffs):
        if not c:
            continue
        if j < n:
            out[j] += c
        else:
            row = table[j % m]
            for i in range(n):
                if row[i]:
                    out[i] += c * row[i]
    return tuple(out)


class CycScalar:
    """Immutable element of Q(zeta_m)."""

    __slots__ = ("m", "coeffs", "_hash")

    def __init__(self, m: int, coeffs=(0,)):
        if m < 1:
            raise ValueError("order must be >= 1")
        self.m = m
        self.coeffs = _reduce(m, coeffs)
        self._hash = None

    @classmethod
    def _raw(cls, m: int, coeffs: tuple) -> "CycScalar":
        """Trusted constructor: coeffs already reduced Fractions of length phi(m)."""
        out = object.__new__(cls)
        out.m = m
        out.coeffs = coeffs
        out._hash = None
        return out

    # constructors
    @classmethod
    def rational(cls, m: int, q) -> "CycScalar":
        return cls(m, (Fraction(q),))

    @classmethod
    def zeta(cls, m: int, k: int = 1) -> "CycScalar":
        return _zeta_power(m, k % m)

    @classmethod
    def zero(cls, m: int) -> "CycScalar":
        return _zero(m)

    @classmethod
    def one(cls, m: int) -> "CycScalar":
        return _one(m)

    # predicates
    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def is_rational(self) -> bool:
        return not any(self.coeffs[1:])

    def is_one(self) -> bool:
        return self.coeffs[0] == 1 and self.is_rational()

    def to_fraction(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return self.coeffs[0]

    def _coerce(self, other) -> "CycScalar":
        if isinstance(other, CycScalar):
            if other.m != self.m:
                raise OrderMismatch(f"orders {self.m} and {other.m} differ")
            return other
        if isinstance(other, (int, Fraction)):
            return CycScalar(self.m, (Fraction(other),))
        return NotImplemented

    # arithmetic
    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return CycScalar._raw(self.m, tuple([a + b for a, b in zip(self.coeffs, other.coeffs)]))

    __radd__ = __add__

    def __neg__(self):
        return CycScalar._raw(self.m, tuple([-a for a in self.coeffs]))

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return CycScalar._raw(self.m, tuple([a - b for a, b in zip(self.coeffs, other.coeffs)]))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        a, b = self.coeffs, other.coeffs
        if len(a) == 1:
            return CycScalar._raw(self.m, (a[0] * b[0],))
        if not any(a[1:]):
            return CycScalar._raw(self.m, tuple([a[0] * y for y in b]))
        if not any(b[1:]):
            return CycScalar._raw(self.m, tuple([x * b[0] for x in a]))
        prod = [Fraction(0)] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        prod[i + j] += x * y
        return CycScalar(self.m, prod)

    __rmul__ = __mul__

    def inv(self) -> "CycScalar":
        if self.is_zero():
            raise DivisionByZero("inverse of zero")
        if self.is_rational():
            return CycScalar(self.m, (1 / self.coeffs[0],))
        # extended Euclid: s*a + t*Phi = 1
        cp = [Fraction(c) for c in cyclotomic_poly(self.m)]
        a = list(self.coeffs)
        while a and a[-1] == 0:
            a.pop()
        r0, r1 = cp, a
        s0, s1 = [Fraction(0)], [Fraction(1)]
        while len(r1) > 1:
            q, r = _pdivmod(r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, _psub(s0, _pmul(q, s1))
        # r1 is a nonzero constant
        c = r1[0]
        return CycScalar(self.m, [x / c for x in s1])

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inv()

    def __rtruediv__(self, other):
        return self._coerce(other) * self.inv()

    def __pow__(self, k: int):
        if k < 0:
            return self.inv() ** (-k)
        out = _one(self.m)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def conj(self) -> "CycScalar":
        """Complex conjugation, zeta -> zeta^(m-1)."""
        if self.is_rational():
            return self
        table = _power_table(self.m)
        out = [Fraction(0)] * len(self.coeffs)
        for k, c in enumerate(self.coeffs):
            if c:
                row = table[(-k) % self.m]
                for i, r in enumerate(row):
                    if r:
                        out[i] += c * r
        return CycScalar(self.m, out)

    def galois(self, j: int) -> "CycScalar":
        """Image under zeta -> zeta^j (j coprime to m)."""
        table = _power_table(self.m)
        out = [Fraction(0)] * len(self.coeffs)
        for k, c in enumerate(self.coeffs):
            if c:
                row = table[(j * k) % self.m]
                for i, r in enumerate(row):
                    if r:
                        out[i] += c * r
        return CycScalar(self.m, out)

    # comparison / hashing
    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.is_rational() and self.coeffs[0] == other
        if not isinstance(other, CycScalar):
            return NotImplemented
        return self.m == other.m and self.coeffs == other.coeffs

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.m, self.coeffs))
        return self._hash

    def __bool__(self):
        return not self.is_zero()

    def to_complex(self, j: int = 1) -> complex:
        w = cmath.exp(2j * cmath.pi * j / self.m)
        return sum(complex(c) * w**k for k, c in enumerate(self.coeffs))

    def __repr__(self):
        return f"CycScalar({self.m}, {format_scalar(self)!r})"

    def __str__(self):
        return format_scalar(self)


def _pmul(a, b):
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


def _psub(a, b):
    n = max(len(a), len(b))
    out = [(a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0) for i in range(n)]
    while len(out) > 1 and out[-1] == 0:
        out.pop()
    return out


@lru_cache(maxsize=None)
def _zero(m):
    return CycScalar(m, (0,))


@lru_cache(maxsize=None)
def _one(m):
    return CycScalar(m, (1,))


@lru_cache(maxsize=None)
def _zeta_power(m, k):
    return CycScalar(m, _power_table(m)[k])


def cyc_ops(op: str, a: CycScalar, b: CycScalar | None = None):
    """Dispatch table over the field operations (CLI / report helper)."""
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "inv":
        return a.inv()
    if op == "eq":
        if b.m != a.m:
            raise OrderMismatch(f"orders {a.m} and {b.m} differ")
        return a == b
    if op == "is_zero":
        return a.is_zero()
    raise ValueError(f"unknown scalar op {op!r}")


def cyc_conj(a: CycScalar) -> CycScalar:
    return a.conj()


def is_root_of_unity(a: CycScalar) -> bool:
    """True iff a^k = 1 for some k dividing 2m (all roots of unity in Q(zeta_m))."""
    if a.is_zero():
        return False
    order = 2 * a.m
    return (a**order).is_one() and (a * a.conj()).is_one()


# -- literals ------------------------------------------------------------

def format_scalar(a: CycScalar) -> str:
    parts = []
    for k, c in enumerate(a.coeffs):
        if not c:
            continue
        if k == 0:
            body = str(c)
        else:
            zp = "z" if k == 1 else f"z^{k}"
            if c == 1:
                body = zp
            elif c == -1:
                body = "-" + zp
            else:
                body = f"{c}*{zp}"
        parts.append(body)
    if not parts:
        return "0"
    out = parts[0]
    for p in parts[1:]:
        out += p if p.startswith("-") else "+" + p
    return out


_TOKEN = re.compile(r"\s*(?:(\d+)|(z)|(.))")


class _ScalarParser:
    def __init__(self, text: str, m: int):
        self.text, self.m, self.pos = text, m, 0

    def peek(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def take(self, ch):
        if self.peek() != ch:
            raise LiteralError(f"expected {ch!r} at position {self.pos} in {self.text!r}")
        self.pos += 1

    def number(self) -> int:
        self.peek()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if start == self.pos:
            raise LiteralError(f"expected number at position {start} in {self.text!r}")
        return int(self.text[start:self.pos])

    def expr(self) -> CycScalar:
        val = self.term()
        while self.peek() in ("+", "-"):
            op = self.text[self.pos]
            self.pos += 1
            rhs = self.term()
            val = val + rhs if op == "+" else val - rhs
        return val

    def term(self) -> CycScalar:
        val = self.factor()
        while self.peek() in ("*", "/"):
            op = self.text[self.pos]
            self.pos += 1
            rhs = self.factor()
            val = val * rhs if op == "*" else val / rhs
        return val

    def factor(self) -> CycScalar:
        ch = self.peek()
        if ch == "-":
            self.pos += 1
            return -self.factor()
        if ch == "+":
            self.pos += 1
            return self.factor()
        if ch == "(":
            self.pos += 1
            val = self.expr()
            self.take(")")
            return val
        if ch == "z":
            self.pos += 1
            k = 1
            if self.peek() == "^":
                self.pos += 1
                k = self.number()
            return CycScalar.zeta(self.m, k)
        if ch.isdigit():
            return CycScalar.rational(self.m, self.number())
        raise LiteralError(f"unexpected {ch or 'end of input'!r} at position {self.pos} in {self.text!r}")


def parse_scalar(text: str, m: int) -> CycScalar:
    """Parse literals such as ``3/2``, ``z^2`` or ``1+2*z^3``."""
    if isinstance(text, (int, Fraction)):
        return CycScalar.rational(m, text)
    p = _ScalarParser(str(text), m)
    val = p.expr()
    if p.peek():
        raise LiteralError(f"trailing input at position {p.pos} in {text!r}")
    return val


# -- embedding-based guessing (verified exactly by callers) ----------------

def units_mod(m: int) -> list[int]:
    return [j for j in range(1, m + 1) if gcd(j, m) == 1] if m > 1 else [1]


def guess_element(m: int, conjugates: list[complex], max_den: int = 10**6) -> CycScalar | None:
    """Recover a field element from its complex embeddings (one per unit j).

    Returns a candidate with small-denominator rational coefficients, or
    None.  The caller must check the candidate exactly.
    """
    import numpy as np

    js = units_mod(m)
    n = phi(m)
    if len(conjugates) != n:
        raise ValueError("need one value per embedding")
    V = np.array([[cmath.exp(2j * cmath.pi * j * k / m) for k in range(n)] for j in js])
    try:
        c = np.linalg.solve(V, np.array(conjugates, dtype=complex))
    except np.linalg.LinAlgError:
        return None
    if np.max(np.abs(c.imag)) > 1e-6:
        return None
    coeffs = [Fraction(float(x)).limit_denominator(max_den) for x in c.real]
    return CycScalar(m, coeffs)
