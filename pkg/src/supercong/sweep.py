"""Parameter grids and their deterministic (optionally parallel) execution.

A :class:`Grid` names a set of statements and parameter ranges; expansion
produces one task per admissible (statement, parameters) tuple, tasks run
on a process pool, and the collected records are sorted by a fixed ordering
key so the output is byte-identical regardless of worker count or
completion order.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace

from .congruences import (
    CongruenceRecord,
    StatementId,
    _elem_valuation,
    _theorem12_sum,
    verify_statement,
)
from .exact import ParameterOutOfRangeError
from .ring import RingCtx


class EmptyGridError(ValueError):
    """Grid expansion produced no admissible task."""


#: Statements parameterized by (m, q, p).
MQP_STATEMENTS = frozenset({
    StatementId.THM12,
    StatementId.LEMMA23_A,
    StatementId.LEMMA23_B,
    StatementId.PROOF_STEP,
    StatementId.HALFSUM,
    StatementId.REFLECTION,
    StatementId.CENTRAL_IDENTITY,
})

#: (m, q, p) statements whose domain does not require m even / q odd, so an
#: include_excluded sweep can run them observationally on excluded points.
PARITY_FREE_STATEMENTS = frozenset({
    StatementId.THM12,
    StatementId.LEMMA23_A,
    StatementId.LEMMA23_B,
    StatementId.PROOF_STEP,
    StatementId.CENTRAL_IDENTITY,
})

#: Statements parameterized by p alone that need p > 3.
P_ABOVE_3_STATEMENTS = frozenset({
    StatementId.WOLSTENHOLME_H,
    StatementId.WOLSTENHOLME_B,
    StatementId.THM11_A,
    StatementId.THM11_B,
})

#: Largest n the alternating-moment identity is swept to.
LEMMA21_MAX_N = 60

DEFAULT_M_RANGE = (3, 8)
DEFAULT_Q_RANGE = (1, 4)
DEFAULT_P_MIN = 2
DEFAULT_P_MAX = 311

#: Per-statement prime caps reproducing the acceptance grids.
ACCEPTANCE_P_MAX = {
    StatementId.WOLSTENHOLME_H: 499,
    StatementId.WOLSTENHOLME_B: 499,
    StatementId.THM11_A: 97,
    StatementId.THM11_B: 97,
    StatementId.THM12: 311,
    StatementId.LEMMA21: 0,  # n-parameterized; prime cap unused
    StatementId.LEMMA22: 101,
    StatementId.LEMMA23_A: 101,
    StatementId.LEMMA23_B: 101,
    StatementId.PROOF_STEP: 101,
    StatementId.HALFSUM: 101,
    StatementId.REFLECTION: 101,
    StatementId.CENTRAL_IDENTITY: 101,
    StatementId.POWER_SUM: 101,
}


def sieve(limit: int) -> list[int]:
    """All primes <= limit, ascending (empty below 2)."""
    if limit < 2:
        return []
    flags = bytearray([1]) * (limit + 1)
    flags[0] = flags[1] = 0
    for i in range(2, math.isqrt(limit) + 1):
        if flags[i]:
            flags[i * i :: i] = bytearray(len(range(i * i, limit + 1, i)))
    return [i for i, f in enumerate(flags) if f]


def parity_admissible(m: int, q: int) -> bool:
    """The statement hypothesis on (m, q): m even or q odd."""
    return m % 2 == 0 or q % 2 == 1


@dataclass(frozen=True)
class Grid:
    """A parameter sweep: which statements over which (m, q, p) ranges.

    ``include_excluded`` additionally expands m-odd/q-even points for the
    statements whose domain admits them; those records are observational
    (required valuation 0) because nothing is claimed there.
    """

    statements: frozenset[StatementId] = frozenset(StatementId)
    m_range: tuple[int, int] = DEFAULT_M_RANGE
    q_range: tuple[int, int] = DEFAULT_Q_RANGE
    p_min: int = DEFAULT_P_MIN
    p_max: int = DEFAULT_P_MAX
    e_override: int | None = None
    include_excluded: bool = False

    def __post_init__(self):
        if self.m_range[0] < 3 or self.m_range[0] > self.m_range[1]:
            raise ParameterOutOfRangeError(f"bad m range {self.m_range}")
        if self.q_range[0] < 1 or self.q_range[0] > self.q_range[1]:
            raise ParameterOutOfRangeError(f"bad q range {self.q_range}")
        if self.p_min < 2 or self.p_max < self.p_min:
            raise ParameterOutOfRangeError(
                f"bad prime bounds [{self.p_min}, {self.p_max}]"
            )


# A task is (statement, p, m, q, n, e, asserted); plain tuples so the
# process pool can ship them around.
Task = tuple


def expand_tasks(grid: Grid) -> list[Task]:
    """Deterministic task list for a grid, in ordering-key order."""
    primes = [p for p in sieve(grid.p_max) if p >= grid.p_min]
    ms = range(grid.m_range[0], grid.m_range[1] + 1)
    qs = range(grid.q_range[0], grid.q_range[1] + 1)
    tasks: list[Task] = []
    for statement in sorted(grid.statements):
        if statement is StatementId.LEMMA21:
            tasks.extend(
                (statement, None, None, None, n, None, True)
                for n in range(1, LEMMA21_MAX_N + 1)
            )
        elif statement in P_ABOVE_3_STATEMENTS:
            tasks.extend(
                (statement, p, None, None, None, None, True)
                for p in primes if p > 3
            )
        elif statement is StatementId.POWER_SUM:
            tasks.extend((statement, p, None, None, None, None, True) for p in primes)
        elif statement is StatementId.LEMMA22:
            tasks.extend(
                (statement, p, None, q, None, None, True)
                for p in primes for q in qs if p > 2 * q
            )
        elif statement in MQP_STATEMENTS:
            e = grid.e_override if statement is StatementId.THM12 else None
            for p in primes:
                for m in ms:
                    for q in qs:
                        if p <= m * q:
                            continue
                        if parity_admissible(m, q):
                            tasks.append((statement, p, m, q, None, e, True))
                        elif (
                            grid.include_excluded
                            and statement in PARITY_FREE_STATEMENTS
                        ):
                            tasks.append((statement, p, m, q, None, e, False))
        else:
            raise ValueError(f"unknown statement {statement}")
    tasks.sort(key=lambda t: (t[0], t[1] or 0, t[2] or 0, t[3] or 0, t[4] or 0))
    return tasks


def run_task(task: Task) -> CongruenceRecord:
    """Execute one task; excluded-point tasks come back observational."""
    statement, p, m, q, n, e, asserted = task
    record = verify_statement(statement, p=p, m=m, q=q, n=n, e=e)
    if not asserted:
        record = replace(record, required=0, passed=True)
    return record


def ordering_key(record: CongruenceRecord):
    return (
        record.statement,
        record.p or 0,
        record.m or 0,
        record.q or 0,
        record.n or 0,
        record.k or 0,
    )


def run_grid(grid: Grid, parallelism: int = 1) -> list[CongruenceRecord]:
    """Run every admissible task, up to ``parallelism`` workers, and return
    records sorted by ordering key (independent of completion order)."""
    if parallelism < 1:
        raise ParameterOutOfRangeError(f"parallelism must be >= 1, got {parallelism}")
    tasks = expand_tasks(grid)
    if not tasks:
        raise EmptyGridError("no admissible (statement, parameters) point")
    if parallelism == 1 or len(tasks) == 1:
        records = [run_task(t) for t in tasks]
    else:
        chunk = max(1, len(tasks) // (parallelism * 8))
        with ProcessPoolExecutor(max_workers=parallelism) as pool:
            records = list(pool.map(run_task, tasks, chunksize=chunk))
    records.sort(key=ordering_key)
    return records


@dataclass(frozen=True)
class Summary:
    total: int
    asserted: int
    passed: int
    failed: int
    observational: int

    def __str__(self):
        base = (
            f"{self.total} records: {self.passed} pass, {self.failed} fail"
        )
        if self.observational:
            base += f", {self.observational} observational"
        return base


def summarize(records: list[CongruenceRecord]) -> Summary:
    observational = sum(1 for r in records if r.required == 0)
    asserted = len(records) - observational
    failed = sum(1 for r in records if r.required > 0 and not r.passed)
    return Summary(
        total=len(records),
        asserted=asserted,
        passed=asserted - failed,
        failed=failed,
        observational=observational,
    )


@dataclass(frozen=True)
class ExplorationReport:
    """Observed valuation of the main sum at precision e_max; asserts nothing."""

    m: int
    q: int
    p: int
    e_max: int
    residue: int
    valuation: int | str

    def as_record(self) -> CongruenceRecord:
        return CongruenceRecord(
            statement=StatementId.THM12, p=self.p, m=self.m, q=self.q,
            n=None, k=None, modulus_exp=self.e_max, residue=self.residue,
            valuation=self.valuation, required=0, passed=True, micros=0,
        )


def explore_valuation(m: int, q: int, p: int, e_max: int) -> ExplorationReport:
    """Compute the main sum in Z/p^e_max and report what is observed, with
    no pass/fail claim (this is how m-odd/q-even territory is probed)."""
    if m <= 2 or q <= 0 or p <= m * q:
        raise ParameterOutOfRangeError(
            f"need m > 2, q > 0 and p > m*q; got m={m}, q={q}, p={p}"
        )
    if not 1 <= e_max <= 8:
        raise ParameterOutOfRangeError(f"need 1 <= e_max <= 8, got {e_max}")
    s = _theorem12_sum(m, q, RingCtx(p, e_max))
    return ExplorationReport(
        m=m, q=q, p=p, e_max=e_max, residue=s.residue,
        valuation=_elem_valuation(s),
    )
