"""Exact-rational ground truth: valuations, generalized binomials, Bernoulli
numbers, and the brute-force recomputation of the main binomial power sum.

Everything here works over :class:`fractions.Fraction` (exact, normalized,
positive denominator) and is deliberately independent of the ring fast path,
so the two routes can be compared bit for bit after reduction.
"""

from __future__ import annotations

import math
import threading
from fractions import Fraction

from .ring import RingCtx, RingElem, is_prime


class NegativeValuationError(ValueError):
    """Reduction mod p^e of a rational with p in its denominator."""


class ParameterOutOfRangeError(ValueError):
    """A verifier was called outside its statement's parameter domain."""


def padic_valuation(x: Fraction | int, p: int) -> int | float:
    """v_p(x): exponent of p in x, negative when p divides the denominator.

    Returns math.inf for x == 0.
    """
    x = Fraction(x)
    if x == 0:
        return math.inf

    def _ival(n: int) -> int:
        t = 0
        while n % p == 0:
            n //= p
            t += 1
        return t

    return _ival(abs(x.numerator)) - _ival(x.denominator)


def reduce_mod(x: Fraction | int, ctx: RingCtx) -> RingElem:
    """Image of a p-integral rational in Z/p^e.

    Writes x = p^t * u/v with u, v coprime to p and returns p^t * u * v^-1;
    raises NegativeValuationError when t < 0.
    """
    x = Fraction(x)
    if x.denominator % ctx.p == 0:
        raise NegativeValuationError(
            f"{x} has p={ctx.p} in its denominator (valuation "
            f"{padic_valuation(x, ctx.p)})"
        )
    return ctx.embed(x.numerator, x.denominator)


def rat_binomial(r: Fraction | int, k: int) -> Fraction:
    """Generalized binomial C(r, k) = prod_{j=1..k} (r - j + 1)/j, exact."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    r = Fraction(r)
    out = Fraction(1)
    for j in range(1, k + 1):
        out *= (r - j + 1) / j
    return out


def harmonic(n: int) -> Fraction:
    """H_n = sum_{k=1..n} 1/k as an exact rational."""
    total = Fraction(0)
    for k in range(1, n + 1):
        total += Fraction(1, k)
    return total


def von_staudt_clausen_denominator(n: int) -> int:
    """Product of the primes q with (q-1) | n; the exact denominator of B_n
    for even n >= 2."""
    out = 1
    for q in range(2, n + 2):
        if n % (q - 1) == 0 and is_prime(q):
            out *= q
    return out


class BernoulliTable:
    """Memoized Bernoulli numbers B_0, B_1, ... (convention B_1 = -1/2).

    Grown on demand via the defining recurrence

        B_n = -1/(n+1) * sum_{k=0..n-1} C(n+1, k) B_k,

    with each even-index entry checked against the von Staudt-Clausen
    denominator before publication.  Growth is serialized by a lock, so a
    shared table is safe under concurrent readers.
    """

    def __init__(self):
        self._values = [Fraction(1), Fraction(-1, 2)]
        self._lock = threading.Lock()

    def get(self, n: int) -> Fraction:
        if n < 0:
            raise ValueError("Bernoulli index must be nonnegative")
        if n >= len(self._values):
            with self._lock:
                while len(self._values) <= n:
                    self._values.append(self._next())
        return self._values[n]

    def _next(self) -> Fraction:
        n = len(self._values)
        if n % 2 == 1:
            return Fraction(0)
        acc = Fraction(0)
        for k, b_k in enumerate(self._values):
            acc += math.comb(n + 1, k) * b_k
        b_n = -acc / (n + 1)
        assert b_n.denominator == von_staudt_clausen_denominator(n), (
            f"B_{n} fails the von Staudt-Clausen denominator check"
        )
        return b_n


_shared_table = BernoulliTable()


def bernoulli(n: int, table: BernoulliTable | None = None) -> Fraction:
    """B_n, memoized in the given table (module-shared table by default)."""
    return (table or _shared_table).get(n)


def exact_theorem12_sum(m: int, q: int, p: int) -> Fraction:
    """The main alternating binomial power sum as an exact rational:

        sum_{k=0..p-1} (-1)^(k*m) * C(p/m - q, k)^m.

    This is the brute-force oracle for the mod-p^3 statement; numerators and
    denominators grow quickly, so routine use keeps p small.
    """
    if m <= 2 or q <= 0 or p <= m * q:
        raise ParameterOutOfRangeError(
            f"need m > 2, q > 0 and p > m*q; got m={m}, q={q}, p={p}"
        )
    if not is_prime(p):
        raise ParameterOutOfRangeError(f"p={p} is not prime")
    r = Fraction(p, m) - q
    total = Fraction(0)
    c = Fraction(1)
    for k in range(p):
        if k:
            c *= (r - k + 1) / k
        term = c**m
        if (k * m) % 2:
            total -= term
        else:
            total += term
    return total
