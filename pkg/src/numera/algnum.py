"""Exact arithmetic in a real number field Q(theta).

An :class:`AlgField` is described by a squarefree rational polynomial and a
rational interval isolating one of its real roots.  Elements are residue
polynomials evaluated at that root.  Internally residues are reduced modulo
the irreducible factor that vanishes at the root, so two elements are equal
exactly when their residues are equal, and elements are hashable.

Signs are decided with rational interval arithmetic: the isolating interval
is bisected (never with floats) until the enclosure of the residue excludes
zero.
"""

from __future__ import annotations

import threading
from fractions import Fraction
from functools import total_ordering
from typing import Iterable, Sequence

from . import _poly as P
from .errors import DivisionByZeroError, IsolationError, NotSquarefreeError

__all__ = ["AlgField", "AlgNum", "field_make", "rational_field", "parse_rational", "fmt_rational"]


def parse_rational(text: str) -> Fraction:
    return Fraction(text.strip())


def fmt_rational(q: Fraction) -> str:
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def _irreducible_factor(modulus: P.Poly, lo: Fraction, hi: Fraction) -> P.Poly:
    """The monic irreducible factor of ``modulus`` whose root lies in ``(lo, hi)``."""
    if P.degree(modulus) == 1:
        return P.monic(modulus)
    # rational roots first: cheap and covers every integer base
    for cand in _rational_root_candidates(modulus):
        if lo < cand < hi and P.evaluate(modulus, cand) == 0:
            return P.make([-cand, 1])
    import sympy

    x = sympy.Symbol("x")
    expr = sum(sympy.Rational(c.numerator, c.denominator) * x**i for i, c in enumerate(modulus))
    _, factors = sympy.factor_list(expr, x)
    for fac, _mult in factors:
        coeffs = sympy.Poly(fac, x).all_coeffs()
        f = P.monic(P.make(Fraction(int(c.p), int(c.q)) for c in reversed(coeffs)))
        if P.degree(f) >= 1 and P.count_roots_open(f, lo, hi) == 1:
            return f
    raise IsolationError("no factor of the modulus vanishes inside the isolating interval")


def _rational_root_candidates(p: P.Poly) -> list[Fraction]:
    from math import lcm

    den = lcm(*(c.denominator for c in p))
    ints = [int(c * den) for c in p]
    if ints[0] == 0:
        return [Fraction(0)]
    a0, an = abs(ints[0]), abs(ints[-1])
    if a0 > 10**4 or an > 10**4:
        return []

    def divisors(n):
        return [d for d in range(1, n + 1) if n % d == 0]

    out = set()
    for num in divisors(a0):
        for d in divisors(an):
            out.add(Fraction(num, d))
            out.add(Fraction(-num, d))
    return sorted(out)


class AlgField:
    """Q(theta) for the root of ``modulus`` isolated by ``iso = (lo, hi)``."""

    def __init__(self, modulus: Sequence, iso: tuple):
        mod = P.monic(P.make(modulus))
        if P.degree(mod) < 1:
            raise NotSquarefreeError("modulus must have degree >= 1")
        if P.degree(P.gcd(mod, P.derivative(mod))) > 0:
            raise NotSquarefreeError(f"modulus {P.to_str(mod)} is not squarefree")
        lo, hi = Fraction(iso[0]), Fraction(iso[1])
        if not lo < hi:
            raise IsolationError("empty isolating interval")
        n = P.count_roots_open(mod, lo, hi)
        if n != 1:
            raise IsolationError(f"interval ({lo}, {hi}) holds {n} roots of {P.to_str(mod)}, expected 1")
        self.modulus = mod
        self.minpoly = _irreducible_factor(mod, lo, hi)
        self.degree = P.degree(self.minpoly)
        self._lock = threading.Lock()
        if self.degree == 1:
            self.root_value = -self.minpoly[0]
            self._iso = (lo, hi)
        else:
            self.root_value = None
            self._iso = self._shrink(lo, hi)
        self.iso = (lo, hi)

    def _shrink(self, lo: Fraction, hi: Fraction) -> tuple[Fraction, Fraction]:
        f = self.minpoly
        # irreducible of degree >= 2: no rational roots, so endpoint signs are nonzero
        slo = P.sign_at(f, lo)
        for _ in range(64):
            mid = (lo + hi) / 2
            if P.sign_at(f, mid) == slo:
                lo = mid
            else:
                hi = mid
        return lo, hi

    # -- root enclosure -------------------------------------------------
    def enclosure(self) -> tuple[Fraction, Fraction]:
        return self._iso

    def refine(self, rounds: int = 32) -> tuple[Fraction, Fraction]:
        if self.degree == 1:
            return self._iso
        with self._lock:
            lo, hi = self._iso
            f = self.minpoly
            slo = P.sign_at(f, lo)
            for _ in range(rounds):
                mid = (lo + hi) / 2
                if P.sign_at(f, mid) == slo:
                    lo = mid
                else:
                    hi = mid
            self._iso = (lo, hi)
            return self._iso

    # -- constructors ---------------------------------------------------
    def element(self, residue: Iterable) -> "AlgNum":
        return AlgNum(self, P.mod(P.make(residue), self.minpoly))

    def __call__(self, value) -> "AlgNum":
        if isinstance(value, AlgNum):
            if not self.same_as(value.field):
                raise ValueError("element belongs to a different field")
            return value
        return AlgNum(self, P.make([value]))

    @property
    def theta(self) -> "AlgNum":
        return self.element(P.X)

    @property
    def zero(self) -> "AlgNum":
        return AlgNum(self, P.ZERO)

    @property
    def one(self) -> "AlgNum":
        return AlgNum(self, P.ONE)

    def same_as(self, other: "AlgField") -> bool:
        if self is other:
            return True
        if self.minpoly != other.minpoly:
            return False
        if self.degree == 1:
            return True
        lo = max(self._iso[0], other._iso[0])
        hi = min(self._iso[1], other._iso[1])
        return lo < hi and P.count_roots_open(self.minpoly, lo, hi) == 1

    def approx(self, digits: int = 15) -> float:
        return float(self.theta)

    def __repr__(self):
        lo, hi = self.iso
        return f"AlgField({P.to_str(self.modulus)}, ({lo}, {hi}))"

    def describe(self) -> str:
        cs = ",".join(fmt_rational(c) for c in self.minpoly)
        lo, hi = self.iso
        return f"field:[{cs}] iso:({fmt_rational(lo)},{fmt_rational(hi)})"


def field_make(modulus: Sequence, iso: tuple) -> AlgField:
    return AlgField(modulus, iso)


def rational_field() -> AlgField:
    """The degenerate field Q, presented as Q(1) with modulus x - 1."""
    return AlgField([-1, 1], (Fraction(1, 2), Fraction(3, 2)))


@total_ordering
class AlgNum:
    __slots__ = ("field", "res")

    def __init__(self, field: AlgField, res: P.Poly):
        self.field = field
        self.res = res

    # -- coercion -------------------------------------------------------
    def _coerce(self, other) -> P.Poly | None:
        if isinstance(other, AlgNum):
            if other.field is not self.field and not self.field.same_as(other.field):
                raise ValueError("operands live in different fields")
            return other.res
        if isinstance(other, (int, Fraction)):
            return P.make([other])
        return None

    def _new(self, res: P.Poly) -> "AlgNum":
        return AlgNum(self.field, res)

    # -- arithmetic -----------------------------------------------------
    def __add__(self, other):
        r = self._coerce(other)
        if r is None:
            return NotImplemented
        return self._new(P.add(self.res, r))

    __radd__ = __add__

    def __sub__(self, other):
        r = self._coerce(other)
        if r is None:
            return NotImplemented
        return self._new(P.sub(self.res, r))

    def __rsub__(self, other):
        r = self._coerce(other)
        if r is None:
            return NotImplemented
        return self._new(P.sub(r, self.res))

    def __neg__(self):
        return self._new(P.neg(self.res))

    def __pos__(self):
        return self

    def __mul__(self, other):
        r = self._coerce(other)
        if r is None:
            return NotImplemented
        if len(r) <= 1 or len(self.res) <= 1:
            return self._new(P.mul(self.res, r))
        return self._new(P.mod(P.mul(self.res, r), self.field.minpoly))

    __rmul__ = __mul__

    def inverse(self) -> "AlgNum":
        if not self.res:
            raise DivisionByZeroError("division by zero in Q(theta)")
        if len(self.res) == 1:
            return self._new((1 / self.res[0],))
        g, s, _ = P.xgcd(self.res, self.field.minpoly)
        if P.degree(g) != 0:
            # cannot happen for an irreducible modulus and a nonzero residue
            raise DivisionByZeroError("residue shares a factor with the minimal polynomial")
        return self._new(P.mod(s, self.field.minpoly))

    def __truediv__(self, other):
        r = self._coerce(other)
        if r is None:
            return NotImplemented
        return self * self._new(r).inverse()

    def __rtruediv__(self, other):
        r = self._coerce(other)
        if r is None:
            return NotImplemented
        return self._new(r) * self.inverse()

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        base = self if n >= 0 else self.inverse()
        n = abs(n)
        out = self.field.one
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    # -- sign, comparison -----------------------------------------------
    def sign(self) -> int:
        res = self.res
        if not res:
            return 0
        if len(res) == 1:
            return 1 if res[0] > 0 else -1
        f = self.field
        lo, hi = f.enclosure()
        while True:
            a, b = P.interval_eval(res, lo, hi)
            if a > 0:
                return 1
            if b < 0:
                return -1
            lo, hi = f.refine()

    def __eq__(self, other):
        r = self._coerce(other) if isinstance(other, (AlgNum, int, Fraction)) else None
        if r is None:
            return NotImplemented
        return self.res == r

    def __hash__(self):
        if len(self.res) <= 1:
            return hash(self.res[0] if self.res else 0)
        return hash(self.res)

    def __lt__(self, other):
        r = self._coerce(other)
        if r is None:
            return NotImplemented
        return self._new(P.sub(self.res, r)).sign() < 0

    def __bool__(self):
        return bool(self.res)

    # -- conversions ----------------------------------------------------
    def is_rational(self) -> bool:
        return len(self.res) <= 1

    def to_fraction(self) -> Fraction | None:
        if not self.res:
            return Fraction(0)
        if len(self.res) == 1:
            return self.res[0]
        return None

    def enclose(self, width: Fraction = Fraction(1, 2**60)) -> tuple[Fraction, Fraction]:
        q = self.to_fraction()
        if q is not None:
            return q, q
        f = self.field
        lo, hi = f.enclosure()
        while True:
            a, b = P.interval_eval(self.res, lo, hi)
            if b - a <= width:
                return a, b
            lo, hi = f.refine()

    def __float__(self):
        a, b = self.enclose()
        return float((a + b) / 2)

    def floor(self) -> int:
        a, b = self.enclose(Fraction(1, 4))
        k = (a.numerator // a.denominator)
        while self < k:
            k -= 1
        while self >= k + 1:
            k += 1
        return k

    def to_decimal(self, digits: int = 6) -> str:
        """Correctly rounded decimal string with ``digits`` fractional digits (ties away from zero)."""
        s = self.sign()
        mag = self if s >= 0 else -self
        n = (mag * 10**digits + Fraction(1, 2)).floor()
        whole, frac = divmod(n, 10**digits)
        text = str(whole) if digits == 0 else f"{whole}.{frac:0{digits}d}"
        return "-" + text if s < 0 and n != 0 else text

    def __repr__(self):
        q = self.to_fraction()
        if q is not None:
            return f"AlgNum({fmt_rational(q)})"
        return f"AlgNum({P.to_str(self.res, 'θ')})"

    def __str__(self):
        q = self.to_fraction()
        if q is not None:
            return fmt_rational(q)
        return P.to_str(self.res, "θ")

    def serialize(self, digits: int = 12) -> str:
        cs = ",".join(fmt_rational(c) for c in self.res) or "0"
        return f"poly:[{cs}] {self.field.describe()} ≈ {self.to_decimal(digits)}"
