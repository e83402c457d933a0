"""One verifier per checkable congruence statement.

Each statement gets an id, a fixed modulus exponent, and a required
valuation; a verified instance is summarized as a
:class:`CongruenceRecord`.  Ring-valued statements (mod p^3 / p^5) are
computed in :class:`~supercong.ring.RingCtx`; mod-p statements reduce exact
integer binomials; LEMMA21 and CENTRAL_IDENTITY are exact integer identities
and are reported with ``modulus_exp`` 0 ("no truncation"), where a pass
means the checked quantity is exactly zero.

The record convention: ``residue`` is always the quantity the statement
requires to vanish (so a passing record shows residue 0), ``valuation`` is
an exact integer or the string ">=e" when only a lower bound is known, and
``pass`` holds iff the observed valuation meets the required one.
"""

from __future__ import annotations

import enum
import math
import time
from dataclasses import dataclass
from fractions import Fraction

from .exact import (
    ParameterOutOfRangeError,
    bernoulli,
    harmonic,
    padic_valuation,
    reduce_mod,
)
from .ring import ContextMismatchError, RingCtx, RingElem, is_prime

GEQ = "≥"  # the ">=" glyph used in valuation strings


class KmaxTooLargeError(ParameterOutOfRangeError):
    """Binomial sequence requested past k = p - 1 (divisor p not invertible)."""


class DegreeTooLargeError(ParameterOutOfRangeError):
    """The polynomial degree condition (m-1)(q-1) < p - q fails."""


class StatementId(enum.IntEnum):
    """Identifiers for every verifiable statement, in report order."""

    WOLSTENHOLME_H = 1
    WOLSTENHOLME_B = 2
    THM11_A = 3
    THM11_B = 4
    THM12 = 5
    LEMMA21 = 6
    LEMMA22 = 7
    LEMMA23_A = 8
    LEMMA23_B = 9
    PROOF_STEP = 10
    HALFSUM = 11
    REFLECTION = 12
    CENTRAL_IDENTITY = 13
    POWER_SUM = 14


#: Valuation each statement must reach to pass (in its own modulus).
REQUIRED_VALUATION = {
    StatementId.WOLSTENHOLME_H: 2,
    StatementId.WOLSTENHOLME_B: 3,
    StatementId.THM11_A: 5,
    StatementId.THM11_B: 5,
    StatementId.THM12: 3,
    StatementId.LEMMA21: 1,
    StatementId.LEMMA22: 1,
    StatementId.LEMMA23_A: 1,
    StatementId.LEMMA23_B: 1,
    StatementId.PROOF_STEP: 3,
    StatementId.HALFSUM: 1,
    StatementId.REFLECTION: 1,
    StatementId.CENTRAL_IDENTITY: 1,
    StatementId.POWER_SUM: 1,
}

#: Statements whose parameter domain requires m even or q odd.
PARITY_BOUND_STATEMENTS = frozenset({StatementId.HALFSUM, StatementId.REFLECTION})


@dataclass(frozen=True, slots=True)
class CongruenceRecord:
    """One verified statement instance.

    ``valuation`` is either an exact integer or the string ">=e" (a zero
    residue at precision e only bounds the valuation from below);
    ``required`` 0 marks an observational record that asserts nothing.
    """

    statement: StatementId
    p: int | None
    m: int | None
    q: int | None
    n: int | None
    k: int | None
    modulus_exp: int
    residue: int
    valuation: int | str
    required: int
    passed: bool
    micros: int


def valuation_meets(valuation: int | str, required: int) -> bool:
    """Pass rule: ">=e" counts as exactly its stated lower bound e."""
    if isinstance(valuation, str):
        return int(valuation.lstrip(GEQ + ">=").strip()) >= required
    return valuation >= required


def _elem_valuation(elem: RingElem) -> int | str:
    v = elem.valuation()
    return f"{GEQ}{elem.ctx.e}" if v is None else v


def _record(statement, *, p=None, m=None, q=None, n=None, k=None,
            modulus_exp, residue, valuation, micros, required=None):
    required = REQUIRED_VALUATION[statement] if required is None else required
    return CongruenceRecord(
        statement=statement, p=p, m=m, q=q, n=n, k=k,
        modulus_exp=modulus_exp, residue=residue, valuation=valuation,
        required=required, passed=valuation_meets(valuation, required),
        micros=micros,
    )


def _exact_zero_valuation(deviation: int) -> int | str:
    # Exact-arithmetic statements: a zero deviation has unbounded valuation,
    # reported conservatively as ">=1" against required valuation 1.
    return f"{GEQ}1" if deviation == 0 else 0


def _micros_since(t0: int) -> int:
    return (time.perf_counter_ns() - t0) // 1000


# ---------------------------------------------------------------------------
# Ring-side binomial machinery


def binomial_sequence(r: RingElem, kmax: int, ctx: RingCtx) -> list[RingElem]:
    """Images of C(r, k) in Z/p^e for k = 0..kmax, by the ratio recurrence
    C(r, k) = C(r, k-1) * (r - k + 1) / k.

    Requires kmax < p so every divisor k is invertible.
    """
    if r.ctx != ctx:
        raise ContextMismatchError("r does not live in the given context")
    if kmax >= ctx.p:
        raise KmaxTooLargeError(f"kmax={kmax} must be < p={ctx.p}")
    seq = [ctx.one()]
    c = seq[0]
    for k in range(1, kmax + 1):
        c = c * (r - (k - 1)) * ctx.elem(k).inv()
        seq.append(c)
    return seq


def _theorem12_sum(m: int, q: int, ctx: RingCtx) -> RingElem:
    """sum_{k=0..p-1} (-1)^(k*m) C(p/m - q, k)^m in Z/p^e."""
    r = ctx.embed(ctx.p - q * m, m)
    total = ctx.zero()
    alternating = m % 2 == 1  # (-1)^(k*m) is the parity of k*m
    for k, c in enumerate(binomial_sequence(r, ctx.p - 1, ctx)):
        term = c**m
        total = total - term if (alternating and k % 2) else total + term
    return total


def _check_thm12_params(m: int, q: int, p: int) -> None:
    if m <= 2 or q <= 0 or p <= m * q:
        raise ParameterOutOfRangeError(
            f"need m > 2, q > 0 and p > m*q; got m={m}, q={q}, p={p}"
        )


def _check_prime(p: int) -> None:
    if not is_prime(p):
        raise ParameterOutOfRangeError(f"p={p} is not prime")


# ---------------------------------------------------------------------------
# Theorem verifiers (ring-valued records)


def theorem12_residue(m: int, q: int, p: int, e: int = 3) -> CongruenceRecord:
    """Main supercongruence: the alternating binomial power sum vanishes
    mod p^3.  Computed in Z/p^e (e >= 3 so the claim can be certified)."""
    _check_thm12_params(m, q, p)
    if e < 3:
        raise ParameterOutOfRangeError(
            f"certifying a mod-p^3 statement needs e >= 3, got {e}"
            " (use explore_valuation for lower precision)"
        )
    t0 = time.perf_counter_ns()
    s = _theorem12_sum(m, q, RingCtx(p, e))
    return _record(
        StatementId.THM12, p=p, m=m, q=q, modulus_exp=e,
        residue=s.residue, valuation=_elem_valuation(s),
        micros=_micros_since(t0),
    )


def theorem11_lhs1(p: int) -> CongruenceRecord:
    """First mod-p^5 congruence: sum_k C(-1/(p+1), k)^(p+1) = 0 in Z/p^5."""
    if p <= 3:
        raise ParameterOutOfRangeError(f"need p > 3, got {p}")
    t0 = time.perf_counter_ns()
    ctx = RingCtx(p, 5)
    r = ctx.embed(-1, p + 1)
    s = ctx.zero()
    for c in binomial_sequence(r, p - 1, ctx):
        s = s + c ** (p + 1)
    return _record(
        StatementId.THM11_A, p=p, modulus_exp=5,
        residue=s.residue, valuation=_elem_valuation(s),
        micros=_micros_since(t0),
    )


def theorem11_lhs2(p: int) -> RingElem:
    """sum_k C(1/(p-1), k)^(p-1) in Z/p^5."""
    if p <= 3:
        raise ParameterOutOfRangeError(f"need p > 3, got {p}")
    ctx = RingCtx(p, 5)
    r = ctx.embed(1, p - 1)
    s = ctx.zero()
    for c in binomial_sequence(r, p - 1, ctx):
        s = s + c ** (p - 1)
    return s


def theorem11_rhs2(p: int) -> RingElem:
    """(2/3) p^4 B_{p-3} reduced into Z/p^5 (B from the exact recurrence)."""
    if p <= 3:
        raise ParameterOutOfRangeError(f"need p > 3, got {p}")
    value = Fraction(2, 3) * p**4 * bernoulli(p - 3)
    return reduce_mod(value, RingCtx(p, 5))


def theorem11_bernoulli_record(p: int) -> CongruenceRecord:
    """Second mod-p^5 congruence as a record over the difference lhs - rhs."""
    t0 = time.perf_counter_ns()
    d = theorem11_lhs2(p) - theorem11_rhs2(p)
    return _record(
        StatementId.THM11_B, p=p, modulus_exp=5,
        residue=d.residue, valuation=_elem_valuation(d),
        micros=_micros_since(t0),
    )


def wolstenholme_check(p: int) -> tuple[CongruenceRecord, CongruenceRecord]:
    """Wolstenholme's theorem, both classical forms.

    Record A: the harmonic sum H_{p-1} as an exact rational has p-adic
    valuation >= 2 (its exact valuation is reported).  Record B:
    C(2p-1, p-1) - 1 vanishes mod p^3, with the binomial evaluated as the
    ring product of (p+j)/j over j = 1..p-1.
    """
    if p <= 3:
        raise ParameterOutOfRangeError(f"need p > 3, got {p}")
    t0 = time.perf_counter_ns()
    h = harmonic(p - 1)
    v = padic_valuation(h, p)
    ctx2 = RingCtx(p, 2)
    rec_a = _record(
        StatementId.WOLSTENHOLME_H, p=p, modulus_exp=2,
        residue=reduce_mod(h, ctx2).residue, valuation=int(v),
        micros=_micros_since(t0),
    )
    t0 = time.perf_counter_ns()
    ctx3 = RingCtx(p, 3)
    prod = ctx3.one()
    for j in range(1, p):
        prod = prod * ctx3.embed(p + j, j)
    d = prod - 1
    rec_b = _record(
        StatementId.WOLSTENHOLME_B, p=p, modulus_exp=3,
        residue=d.residue, valuation=_elem_valuation(d),
        micros=_micros_since(t0),
    )
    return rec_a, rec_b


# ---------------------------------------------------------------------------
# Lemma and proof-step verifiers
#
# The mod-p checks reduce exact integer binomials (math.comb) so no modular
# division can hide an error; the *_deviation helpers return the first
# quantity that fails to vanish (0 when the statement holds), which is what
# sweep records as the residue.


def _lemma21_deviation(n: int) -> int:
    if n < 1:
        raise ParameterOutOfRangeError(f"need n >= 1, got {n}")
    for m in range(n):
        s = sum((-1) ** k * math.comb(n, k) * k**m for k in range(n + 1))
        if s:
            return abs(s)
    boundary = sum((-1) ** k * math.comb(n, k) * k**n for k in range(n + 1))
    return abs(boundary - (-1) ** n * math.factorial(n))


def lemma21_check(n: int) -> bool:
    """Alternating binomial moment sums: sum_k C(n,k)(-1)^k k^m = 0 for all
    m < n (0^0 = 1), and the m = n boundary equals (-1)^n n!."""
    return _lemma21_deviation(n) == 0


def _inv_square_prefix(p: int, q: int, modulus: int) -> list[int]:
    # prefix[t] = sum_{q <= j <= t} j^-2 (mod modulus), for t = 0..p-1
    prefix = [0] * p
    acc = 0
    for t in range(q, p):
        acc = (acc + pow(t, -2, modulus)) % modulus
        prefix[t] = acc
    return prefix


def _lemma22_deviation(p: int, q: int) -> tuple[int, int | None]:
    if q < 1 or p <= 2 * q:
        raise ParameterOutOfRangeError(f"need q >= 1 and p > 2q; got p={p}, q={q}")
    _check_prime(p)
    prefix = _inv_square_prefix(p, q, p)
    rhs_base = prefix[p - q]
    for k in range(q - 1, p):
        lhs = (prefix[k] + prefix[p + q - 2 - k]) % p
        rhs = (rhs_base + sum(pow(k - l, -2, p) for l in range(q - 1))) % p
        if lhs != rhs:
            return (lhs - rhs) % p, k
    return 0, None


def lemma22_check(p: int, q: int) -> bool:
    """Reflected inverse-square sums: for every k in [q-1, p-1],

        sum_{q<=j<=k} 1/j^2 + sum_{q<=j<p+q-1-k} 1/j^2
            = sum_{j=q..p-q} 1/j^2 + sum_{0<=l<q-1} 1/(k-l)^2   (mod p).
    """
    return _lemma22_deviation(p, q)[0] == 0


def _lemma23_residues(p: int, m: int, q: int) -> tuple[int, int]:
    _check_thm12_params(m, q, p)
    _check_prime(p)
    s_plain = 0
    s_weighted = 0
    for k in range(q - 1, p):
        c_m = pow(math.comb(k, q - 1), m, p)
        s_plain += c_m
        if q > 1:
            w = sum(pow(k - l, -2, p) for l in range(q - 1)) % p
            s_weighted += c_m * w
    return s_plain % p, s_weighted % p


def lemma23_check(p: int, m: int, q: int) -> tuple[bool, bool]:
    """Binomial power sums mod p: sum_{k=q-1..p-1} C(k, q-1)^m = 0, and the
    same sum weighted by sum_{0<=l<q-1} 1/(k-l)^2 also vanishes."""
    a, b = _lemma23_residues(p, m, q)
    return a == 0, b == 0


def _reflection_deviation(p: int, m: int, q: int) -> tuple[int, int | None]:
    # The symmetry holds on the full domain q <= p (it only needs the
    # period-p shift of C(x, q-1) mod p and the sign (-1)^(m(q-1)) = +1),
    # wider than the p > mq context it is applied in.
    if m < 1 or q < 1 or q > p:
        raise ParameterOutOfRangeError(f"need m, q >= 1 and q <= p; got m={m}, q={q}, p={p}")
    if m % 2 and q % 2 == 0:
        raise ParameterOutOfRangeError(
            "reflection symmetry needs m even or q odd"
        )
    _check_prime(p)
    for k in range(q - 1, p):
        lhs = pow(math.comb(p + q - 2 - k, q - 1), m, p)
        rhs = pow(math.comb(k, q - 1), m, p)
        if lhs != rhs:
            return (lhs - rhs) % p, k
    return 0, None


def reflection_check(p: int, m: int, q: int) -> bool:
    """C(p+q-2-k, q-1)^m = C(k, q-1)^m (mod p) for every k in [q-1, p-1]."""
    return _reflection_deviation(p, m, q)[0] == 0


def _halfsum_residue(p: int, m: int, q: int) -> int:
    _check_thm12_params(m, q, p)
    if m % 2 and q % 2 == 0:
        raise ParameterOutOfRangeError(
            "the doubled half-sum needs m even or q odd"
        )
    prefix = _inv_square_prefix(p, q, p)
    total = 0
    for k in range(q - 1, p):
        total += pow(math.comb(k, q - 1), m, p) * prefix[k]
    return 2 * total % p


def halfsum_check(p: int, m: int, q: int) -> bool:
    """2 * sum_{k=q-1..p-1} C(k, q-1)^m * sum_{q<=j<=k} 1/j^2 = 0 (mod p)."""
    return _halfsum_residue(p, m, q) == 0


def proof_step_check(m: int, q: int, p: int) -> CongruenceRecord:
    """Intermediate mod-p^3 identity behind the main supercongruence:

        S - I = p^2 (m-1)/(2m) * sum_{k=q-1..p-1} C(k, q-1)^m sum_{q<=j<=k} 1/j^2

    where S is the main alternating power sum and
    I = sum_k C(k+q-1, k)^(m-1) (-1)^k C(p-q, k).  The three pieces are
    computed independently (ring path, exact integers, prefix inverse
    squares) and the difference must vanish in Z/p^3.
    """
    _check_thm12_params(m, q, p)
    t0 = time.perf_counter_ns()
    ctx = RingCtx(p, 3)
    s_main = _theorem12_sum(m, q, ctx)
    i_sum = 0
    for k in range(p):
        term = math.comb(k + q - 1, q - 1) ** (m - 1) * math.comb(p - q, k)
        i_sum += -term if k % 2 else term
    prefix = _inv_square_prefix(p, q, ctx.modulus)
    t_sum = ctx.zero()
    for k in range(q - 1, p):
        t_sum = t_sum + ctx.elem(math.comb(k, q - 1)) ** m * prefix[k]
    d = s_main - i_sum - ctx.embed(m - 1, 2 * m) * (p * p) * t_sum
    return _record(
        StatementId.PROOF_STEP, p=p, m=m, q=q, modulus_exp=3,
        residue=d.residue, valuation=_elem_valuation(d),
        micros=_micros_since(t0),
    )


def _central_identity_deviation(m: int, q: int, p: int) -> int:
    if m <= 2 or q <= 0:
        raise ParameterOutOfRangeError(f"need m > 2 and q > 0; got m={m}, q={q}")
    if (m - 1) * (q - 1) >= p - q:
        raise DegreeTooLargeError(
            f"need (m-1)(q-1) < p-q; got {(m - 1) * (q - 1)} >= {p - q}"
        )
    s_full = 0
    for k in range(p - q + 1):
        term = math.comb(p - q, k) * math.comb(k + q - 1, q - 1) ** (m - 1)
        s_full += -term if k % 2 else term
    s_alt = 0
    for k in range(p):
        term = math.comb(k + q - 1, k) ** (m - 1) * math.comb(p - q, k)
        s_alt += -term if k % 2 else term
    return abs(s_full) + abs(s_full - s_alt)


def central_identity_check(m: int, q: int, p: int) -> bool:
    """Exact vanishing of sum_{k=0..p-q} C(p-q, k)(-1)^k C(k+q-1, q-1)^(m-1),
    which also equals the k-range-extended form since C(p-q, k) = 0 past
    k = p-q.  Needs the degree condition (m-1)(q-1) < p-q."""
    return _central_identity_deviation(m, q, p) == 0


def _power_sum_deviation(p: int) -> tuple[int, int | None]:
    for j in range(1, p - 1):
        s = sum(pow(k, j, p) for k in range(p)) % p
        if s:
            return s, j
    return 0, None


def power_sum_check(p: int) -> bool:
    """sum_{k=0..p-1} k^j = 0 (mod p) for every 1 <= j <= p-2 (the power-sum
    fact the mod-p lemmas rest on)."""
    return _power_sum_deviation(p)[0] == 0


# ---------------------------------------------------------------------------
# Registry: one record builder per statement id


def verify_statement(statement: StatementId, *, p: int | None = None,
                     m: int | None = None, q: int | None = None,
                     n: int | None = None, e: int | None = None) -> CongruenceRecord:
    """Run the verifier for one statement instance and return its record.

    This is the single dispatch point used by grid sweeps; parameters not
    used by the statement are ignored and recorded as null.
    """
    t0 = time.perf_counter_ns()
    if statement is StatementId.THM12:
        return theorem12_residue(m, q, p, 3 if e is None else e)
    if statement is StatementId.THM11_A:
        return theorem11_lhs1(p)
    if statement is StatementId.THM11_B:
        return theorem11_bernoulli_record(p)
    if statement is StatementId.WOLSTENHOLME_H:
        return wolstenholme_check(p)[0]
    if statement is StatementId.WOLSTENHOLME_B:
        return wolstenholme_check(p)[1]
    if statement is StatementId.PROOF_STEP:
        return proof_step_check(m, q, p)
    if statement is StatementId.LEMMA21:
        deviation = _lemma21_deviation(n)
        return _record(
            statement, n=n, modulus_exp=0, residue=deviation,
            valuation=_exact_zero_valuation(deviation), micros=_micros_since(t0),
        )
    if statement is StatementId.CENTRAL_IDENTITY:
        deviation = _central_identity_deviation(m, q, p)
        return _record(
            statement, p=p, m=m, q=q, modulus_exp=0, residue=deviation,
            valuation=_exact_zero_valuation(deviation), micros=_micros_since(t0),
        )
    if statement is StatementId.LEMMA22:
        residue, bad_k = _lemma22_deviation(p, q)
    elif statement is StatementId.LEMMA23_A:
        residue, bad_k = _lemma23_residues(p, m, q)[0], None
    elif statement is StatementId.LEMMA23_B:
        residue, bad_k = _lemma23_residues(p, m, q)[1], None
    elif statement is StatementId.HALFSUM:
        residue, bad_k = _halfsum_residue(p, m, q), None
    elif statement is StatementId.REFLECTION:
        residue, bad_k = _reflection_deviation(p, m, q)
    elif statement is StatementId.POWER_SUM:
        residue, bad_j = _power_sum_deviation(p)
        return _record(
            statement, p=p, n=bad_j, modulus_exp=1, residue=residue,
            valuation=f"{GEQ}1" if residue == 0 else 0, micros=_micros_since(t0),
        )
    else:
        raise ValueError(f"unknown statement {statement}")
    return _record(
        statement, p=p,
        m=m if statement not in (StatementId.LEMMA22,) else None,
        q=q, k=bad_k, modulus_exp=1, residue=residue,
        valuation=f"{GEQ}1" if residue == 0 else 0, micros=_micros_since(t0),
    )
