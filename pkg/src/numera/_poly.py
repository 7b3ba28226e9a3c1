"""Dense univariate polynomials over the rationals.

A polynomial is a tuple of ``Fraction`` coefficients, lowest degree first,
with no trailing zeros.  The zero polynomial is the empty tuple.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

Poly = tuple

ZERO: Poly = ()
ONE: Poly = (Fraction(1),)
X: Poly = (Fraction(0), Fraction(1))


def make(coeffs: Iterable) -> Poly:
    out = [Fraction(c) for c in coeffs]
    while out and out[-1] == 0:
        out.pop()
    return tuple(out)


def degree(p: Poly) -> int:
    return len(p) - 1


def lead(p: Poly) -> Fraction:
    return p[-1]


def add(p: Poly, q: Poly) -> Poly:
    if len(p) < len(q):
        p, q = q, p
    out = list(p)
    for i, c in enumerate(q):
        out[i] += c
    return make(out)


def neg(p: Poly) -> Poly:
    return tuple(-c for c in p)


def sub(p: Poly, q: Poly) -> Poly:
    return add(p, neg(q))


def scale(p: Poly, c) -> Poly:
    c = Fraction(c)
    if c == 0:
        return ZERO
    return tuple(a * c for a in p)


def mul(p: Poly, q: Poly) -> Poly:
    if not p or not q:
        return ZERO
    out = [Fraction(0)] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a == 0:
            continue
        for j, b in enumerate(q):
            out[i + j] += a * b
    return make(out)


def divmod_(p: Poly, q: Poly) -> tuple[Poly, Poly]:
    if not q:
        raise ZeroDivisionError("polynomial division by zero")
    if len(p) < len(q):
        return ZERO, p
    rem = list(p)
    dq = len(q) - 1
    inv = 1 / q[-1]
    quo = [Fraction(0)] * (len(p) - dq)
    for k in range(len(p) - 1, dq - 1, -1):
        c = rem[k] * inv
        if c == 0:
            continue
        quo[k - dq] = c
        for j in range(dq + 1):
            rem[k - dq + j] -= c * q[j]
    return make(quo), make(rem[:dq])


def mod(p: Poly, q: Poly) -> Poly:
    return divmod_(p, q)[1]


def monic(p: Poly) -> Poly:
    if not p:
        return p
    return scale(p, 1 / p[-1])


def gcd(p: Poly, q: Poly) -> Poly:
    while q:
        p, q = q, mod(p, q)
    return monic(p)


def xgcd(p: Poly, q: Poly) -> tuple[Poly, Poly, Poly]:
    """Return ``(g, s, t)`` with ``s*p + t*q = g`` and ``g`` monic."""
    r0, r1 = p, q
    s0, s1 = ONE, ZERO
    t0, t1 = ZERO, ONE
    while r1:
        quo, rem = divmod_(r0, r1)
        r0, r1 = r1, rem
        s0, s1 = s1, sub(s0, mul(quo, s1))
        t0, t1 = t1, sub(t0, mul(quo, t1))
    if not r0:
        return ZERO, ZERO, ZERO
    c = 1 / r0[-1]
    return scale(r0, c), scale(s0, c), scale(t0, c)


def derivative(p: Poly) -> Poly:
    return make(i * c for i, c in enumerate(p) if i > 0)


def squarefree_part(p: Poly) -> Poly:
    g = gcd(p, derivative(p))
    return monic(divmod_(p, g)[0])


def evaluate(p: Poly, x):
    acc = Fraction(0) if isinstance(x, (int, Fraction)) else 0 * x
    for c in reversed(p):
        acc = acc * x + c
    return acc


def sign_at(p: Poly, x: Fraction) -> int:
    v = evaluate(p, x)
    return (v > 0) - (v < 0)


def interval_eval(p: Poly, lo: Fraction, hi: Fraction) -> tuple[Fraction, Fraction]:
    """Enclosure of ``p`` over ``[lo, hi]`` by interval Horner evaluation."""
    a = b = Fraction(0)
    for c in reversed(p):
        cands = (a * lo, a * hi, b * lo, b * hi)
        a = min(cands) + c
        b = max(cands) + c
    return a, b


def sturm_sequence(p: Poly) -> list[Poly]:
    seq = [p, derivative(p)]
    while seq[-1]:
        r = mod(seq[-2], seq[-1])
        if not r:
            break
        seq.append(neg(r))
    return seq


def _variations(seq: Sequence[Poly], x: Fraction) -> int:
    signs = [s for s in (sign_at(p, x) for p in seq) if s != 0]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def count_roots(p: Poly, lo: Fraction, hi: Fraction, seq: list[Poly] | None = None) -> int:
    """Number of distinct real roots of ``p`` in the half-open interval ``(lo, hi]``."""
    if seq is None:
        seq = sturm_sequence(p)
    return _variations(seq, lo) - _variations(seq, hi)


def count_roots_open(p: Poly, lo: Fraction, hi: Fraction, seq: list[Poly] | None = None) -> int:
    n = count_roots(p, lo, hi, seq)
    if sign_at(p, hi) == 0:
        n -= 1
    return n


def cauchy_bound(p: Poly) -> Fraction:
    lc = abs(p[-1])
    return 1 + max((abs(c) / lc for c in p[:-1]), default=Fraction(0))


def from_integer_list(coeffs: Sequence[int], high_first: bool = True) -> Poly:
    cs = list(coeffs)
    if high_first:
        cs.reverse()
    return make(cs)


def to_str(p: Poly, var: str = "x") -> str:
    if not p:
        return "0"
    terms = []
    for i in range(len(p) - 1, -1, -1):
        c = p[i]
        if c == 0:
            continue
        mag = abs(c)
        if i == 0:
            body = str(mag)
        else:
            coef = "" if mag == 1 else f"{mag}*"
            body = coef + (var if i == 1 else f"{var}^{i}")
        sgn = "-" if c < 0 else "+"
        terms.append((sgn, body))
    first_sgn, first = terms[0]
    out = ("-" if first_sgn == "-" else "") + first
    for sgn, body in terms[1:]:
        out += f" {sgn} {body}"
    return out
