"""Truncated p-adic arithmetic: the ring Z/p^e with exact canonical residues.

A :class:`RingCtx` fixes a prime p and exponent e >= 1; a :class:`RingElem`
is a canonical residue in [0, p^e) tied to its context.  Elements support
+, -, *, unary -, ** (nonnegative integer exponent), modular inversion and
embedding of rationals whose denominator is coprime to p.  Mixing elements
from different (p, e) contexts raises instead of silently coercing.

Residues are plain Python integers, which are arbitrary precision; the
``fast_path`` flag only records whether the modulus fits a signed 64-bit
word (useful when exporting residues to fixed-width consumers).
"""

from __future__ import annotations

_MR_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
# Deterministic Miller-Rabin witness set for n < 3.317e24 (Sorenson-Webster).

_FAST_PATH_BOUND = 1 << 63


class NotPrimeError(ValueError):
    """Context construction was given a composite (or < 2) modulus base."""


class ExponentZeroError(ValueError):
    """Context construction was given an exponent < 1."""


class ContextMismatchError(ValueError):
    """Binary operation over elements with different (p, e) contexts."""


class NotInvertibleError(ArithmeticError):
    """Inversion of a residue divisible by p."""


class ZeroDenominatorError(ZeroDivisionError):
    """Rational embedding with denominator 0."""


class NonInvertibleDenominatorError(NotInvertibleError):
    """Rational embedding with denominator divisible by p."""


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin, valid for all n below 3.3e24."""
    if n < 2:
        return False
    for small in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % small == 0:
            return n == small
    d = n - 1
    s = 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_WITNESSES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


class RingCtx:
    """The ring Z/p^e for a fixed prime p and exponent e >= 1.

    Immutable after construction and shareable across threads/processes.
    """

    __slots__ = ("p", "e", "modulus", "fast_path")

    def __init__(self, p: int, e: int):
        if e < 1:
            raise ExponentZeroError(f"exponent must be >= 1, got {e}")
        if p < 2 or not is_prime(p):
            raise NotPrimeError(f"{p} is not prime")
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "e", e)
        object.__setattr__(self, "modulus", p**e)
        object.__setattr__(self, "fast_path", p**e < _FAST_PATH_BOUND)

    def __setattr__(self, name, value):
        raise AttributeError("RingCtx is immutable")

    def __eq__(self, other):
        return isinstance(other, RingCtx) and (self.p, self.e) == (other.p, other.e)

    def __hash__(self):
        return hash((self.p, self.e))

    def __repr__(self):
        return f"RingCtx(p={self.p}, e={self.e})"

    def elem(self, value: int) -> "RingElem":
        """The residue class of an integer."""
        return RingElem(value % self.modulus, self)

    def zero(self) -> "RingElem":
        return RingElem(0, self)

    def one(self) -> "RingElem":
        return RingElem(1 % self.modulus, self)

    def embed(self, num: int, den: int = 1) -> "RingElem":
        """Image of the rational num/den; den must be coprime to p.

        The numerator may carry any power of p (the result is then a
        non-unit), only the denominator is restricted.
        """
        if den == 0:
            raise ZeroDenominatorError("denominator is zero")
        if den % self.p == 0:
            raise NonInvertibleDenominatorError(
                f"denominator {den} is divisible by p={self.p}"
            )
        return self.elem(num) * self.elem(den).inv()


class RingElem:
    """A canonical residue in [0, p^e) tied to its RingCtx."""

    __slots__ = ("residue", "ctx")

    def __init__(self, residue: int, ctx: RingCtx):
        object.__setattr__(self, "residue", residue % ctx.modulus)
        object.__setattr__(self, "ctx", ctx)

    def __setattr__(self, name, value):
        raise AttributeError("RingElem is immutable")

    def _coerce(self, other) -> "RingElem":
        if isinstance(other, RingElem):
            if other.ctx != self.ctx:
                raise ContextMismatchError(
                    f"operands live in {self.ctx!r} and {other.ctx!r}"
                )
            return other
        if isinstance(other, int):
            return self.ctx.elem(other)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return RingElem(self.residue + o.residue, self.ctx)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return RingElem(self.residue - o.residue, self.ctx)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return RingElem(o.residue - self.residue, self.ctx)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return RingElem(self.residue * o.residue, self.ctx)

    __rmul__ = __mul__

    def __neg__(self):
        return RingElem(-self.residue, self.ctx)

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise ValueError("exponent must be a nonnegative integer")
        # pow(0, 0, m) == 1: the empty-product convention we rely on.
        return RingElem(pow(self.residue, n, self.ctx.modulus), self.ctx)

    def inv(self) -> "RingElem":
        """Multiplicative inverse, via extended Euclid on (residue, p^e)."""
        try:
            return RingElem(pow(self.residue, -1, self.ctx.modulus), self.ctx)
        except ValueError:
            raise NotInvertibleError(
                f"{self.residue} is divisible by p={self.ctx.p}"
            ) from None

    def valuation(self) -> int | None:
        """Largest t with p^t dividing the residue; None when residue == 0.

        None means "at least e": at precision e a zero residue only bounds
        the valuation from below.
        """
        if self.residue == 0:
            return None
        t = 0
        r = self.residue
        p = self.ctx.p
        while r % p == 0:
            r //= p
            t += 1
        return t

    def __eq__(self, other):
        if isinstance(other, int):
            return self.residue == other % self.ctx.modulus
        return (
            isinstance(other, RingElem)
            and self.ctx == other.ctx
            and self.residue == other.residue
        )

    def __hash__(self):
        return hash((self.residue, self.ctx))

    def __repr__(self):
        return f"RingElem({self.residue} mod {self.ctx.p}^{self.ctx.e})"
