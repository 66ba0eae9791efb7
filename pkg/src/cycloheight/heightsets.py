"""Membership machinery for the realizable-height sets, and the minimal table.

Two families of heights are handled, both parameterized by a prime p and an
offset m >= 0 constrained by 4m^2 + 2m + 3 <= p:

  central: h = (p+1)/2 + m
  plus:    h = (p-1)/2 + m
  minus:   h = (p-1)/2 - m

The central family realizes heights of optimal ternary polynomials; the
plus/minus pair realizes prescribed maximum (resp. minimum) coefficients.
"""

from __future__ import annotations

import csv
import heapq
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .cyclotomic import height_only, height_report
from .primes import GapRecord, is_prime, sieve_array, sieve_primes, sqrt_gap_ok

_VARIANTS = ("central", "plus", "minus")


@dataclass(frozen=True)
class RWitness:
    """A decomposition proving a height h belongs to one of the sets."""

    h: int
    p: int
    m: int
    variant: str

    def __post_init__(self) -> None:
        if self.variant not in _VARIANTS:
            raise ValueError(f"unknown variant {self.variant!r}")
        if self.m < 0 or 4 * self.m * self.m + 2 * self.m + 3 > self.p:
            raise ValueError("offset constraint 4m^2+2m+3 <= p violated")
        if self.reconstruct() != self.h:
            raise ValueError("witness does not reconstruct h")

    def reconstruct(self) -> int:
        if self.variant == "central":
            return (self.p + 1) // 2 + self.m
        if self.variant == "plus":
            return (self.p - 1) // 2 + self.m
        return (self.p - 1) // 2 - self.m


def _candidate_p(h: int, m: int, variant: str) -> int:
    if variant == "central":
        return 2 * h - 1 - 2 * m
    if variant == "plus":
        return 2 * h + 1 - 2 * m
    return 2 * h + 1 + 2 * m


def _m_feasible(h: int, m: int, variant: str) -> bool:
    # exact forms of 4m^2+2m+3 <= candidate_p(h, m)
    if variant == "central":
        return 2 * m * m + 2 * m + 2 <= h
    if variant == "plus":
        return 2 * m * m + 2 * m + 1 <= h
    return 2 * m * m + 1 <= h


def r_membership(h: int, variant: str = "central") -> Optional[RWitness]:
    """Witness with the smallest offset m for the given variant, or None.

    Scans m = 0, 1, 2, ... (m is O(sqrt(h))) testing the determined p for
    primality and the offset constraint.
    """
    if h < 1:
        raise ValueError("h must be at least 1")
    if variant not in _VARIANTS:
        raise ValueError(f"unknown variant {variant!r}")
    m = 0
    while _m_feasible(h, m, variant):
        p = _candidate_p(h, m, variant)
        if p >= 2 and is_prime(p):
            return RWitness(h=h, p=p, m=m, variant=variant)
        m += 1
    return None


def r_nonmembers(x: int, variant: str = "central") -> list[int]:
    """All h <= x with no witness, ascending.

    variant "central" scans the central family; "pm" admits a witness from
    either the plus or the minus family.
    """
    if x < 1:
        raise ValueError("x must be at least 1")
    if variant not in ("central", "pm"):
        raise ValueError(f"unknown variant {variant!r}")
    variants = ("central",) if variant == "central" else ("plus", "minus")

    m_top = math.isqrt(x) + 2
    p_top = 2 * x + 1 + 2 * m_top
    prime = sieve_array(p_top)
    found = np.zeros(x + 1, dtype=bool)
    found[0] = True
    idx = np.arange(x + 1, dtype=np.int64)
    for v in variants:
        pending = idx[~found]
        m = 0
        while pending.size:
            feasible = pending[_m_feasible_vec(pending, m, v)]
            if feasible.size == 0:
                break
            p = _candidate_p_vec(feasible, m, v)
            hit = feasible[(p >= 2) & prime[np.maximum(p, 0)]]
            found[hit] = True
            pending = pending[~found[pending]]
            m += 1
    return [int(h) for h in idx[1:][~found[1:]]]


def _m_feasible_vec(h: np.ndarray, m: int, variant: str) -> np.ndarray:
    if variant == "central":
        return 2 * m * m + 2 * m + 2 <= h
    if variant == "plus":
        return 2 * m * m + 2 * m + 1 <= h
    return 2 * m * m + 1 <= h


def _candidate_p_vec(h: np.ndarray, m: int, variant: str) -> np.ndarray:
    if variant == "central":
        return 2 * h - 1 - 2 * m
    if variant == "plus":
        return 2 * h + 1 - 2 * m
    return 2 * h + 1 + 2 * m


@dataclass
class IntervalCoverage:
    """How much of the half-gap interval I = [(p+1)/2, (p_next-1)/2] the
    central family is guaranteed to cover from the left endpoint."""

    m_n: int
    covered: tuple[int, int]
    exception_bound: int


def interval_coverage(g: GapRecord) -> IntervalCoverage:
    """Coverage report for one prime gap (requires p >= 11).

    m_n is the unique integer in [z-1, z] with z = (sqrt(p)-1)/2, computed by
    integer square root.  exception_bound is 0 when the gap satisfies
    d < sqrt(p) + 1, else floor((d - sqrt(p) + 1)/2); it bounds how many
    integers of I can lack a central witness.
    """
    if g.p < 11:
        raise ValueError("coverage lemma requires p >= 11")
    s = math.isqrt(g.p)
    m_n = (s - 1) // 2
    # sqrt(p) is irrational for prime p, so both exact bracket checks hold
    assert (2 * m_n + 1) ** 2 <= g.p < (2 * m_n + 3) ** 2
    lo = (g.p + 1) // 2
    if sqrt_gap_ok(g.p, g.d):
        bound = 0
    else:
        bound = (g.d - s) // 2  # floor((d - sqrt(p) + 1)/2), sqrt(p) irrational
    return IntervalCoverage(m_n=m_n, covered=(lo, lo + m_n), exception_bound=bound)


# ---------------------------------------------------------------------------
# Minimal ternary integers with prescribed height
# ---------------------------------------------------------------------------


@dataclass
class TableRow:
    """One row of the minimal-height table."""

    h: int
    p: int
    q: int
    r: int
    k: int
    sign: int
    diff: int
    diff_optimal: bool
    ratio: float
    exponent: Optional[float]

    @property
    def n(self) -> int:
        return self.p * self.q * self.r


@dataclass
class TableSearchResult:
    rows: list[TableRow]
    unresolved: list[int]
    n_budget: int


def ternary_stream(n_budget: int):
    """Yield (n, p, q, r) over all ternary n <= n_budget in ascending n order.

    Heap merge over (p, q) streams, each emitting p*q*r for ascending r; the
    globally ascending order makes first-found minimality immediate.
    """
    if n_budget < 105:
        return
    primes = sieve_primes(n_budget // 15)
    plist = primes[primes > 2]
    heap: list[tuple[int, int, int, int]] = []
    for i, p in enumerate(plist):
        p = int(p)
        if p * p * p > n_budget:
            break
        for j in range(i + 1, len(plist) - 1):
            q = int(plist[j])
            if p * q * q > n_budget:
                break
            r = int(plist[j + 1])
            if p * q * r <= n_budget:
                heapq.heappush(heap, (p * q * r, p, q, j + 1))
    while heap:
        n, p, q, jr = heapq.heappop(heap)
        yield n, p, q, int(plist[jr])
        if jr + 1 < len(plist):
            r2 = int(plist[jr + 1])
            if p * q * r2 <= n_budget:
                heapq.heappush(heap, (p * q * r2, p, q, jr + 1))


def _height_of_triple(args: tuple[int, int, int, int]) -> tuple[int, int]:
    n = args[0]
    return n, height_only(n)


def minimal_height_table(
    h_max: int, n_budget: int, threads: int = 1
) -> TableSearchResult:
    """First (hence minimal) ternary n achieving each height h <= h_max.

    Heights with no ternary witness within n_budget are reported as
    unresolved.  The parallel path reduces by (height -> min n), so results
    are independent of worker count and chunking.
    """
    if h_max < 1:
        raise ValueError("h_max must be at least 1")
    best: dict[int, tuple[int, int, int, int]] = {}
    if threads <= 1:
        for n, p, q, r in ternary_stream(n_budget):
            a = height_only(n)
            if a <= h_max and a not in best:
                best[a] = (n, p, q, r)
                if len(best) == h_max:
                    break
    else:
        triples = list(ternary_stream(n_budget))
        with ProcessPoolExecutor(max_workers=threads) as pool:
            for (n, a), (_, p, q, r) in zip(
                pool.map(_height_of_triple, triples, chunksize=64), triples
            ):
                if a <= h_max and (a not in best or n < best[a][0]):
                    best[a] = (n, p, q, r)
    rows = []
    for h in sorted(best):
        _, p, q, r = best[h]
        rows.append(_row_from_report(h, p, q, r))
    unresolved = [h for h in range(1, h_max + 1) if h not in best]
    return TableSearchResult(rows=rows, unresolved=unresolved, n_budget=n_budget)


def _row_from_report(h: int, p: int, q: int, r: int) -> TableRow:
    rep = height_report(p * q * r)
    if rep.A != h:
        raise AssertionError(f"height sweep disagrees for n={p*q*r}")
    assert rep.optimal is not None
    return TableRow(
        h=h,
        p=p,
        q=q,
        r=r,
        k=rep.k_first,
        sign=rep.sign_at_k,
        diff=rep.span,
        diff_optimal=rep.optimal,
        ratio=rep.ratio,
        exponent=rep.exponent,
    )


@dataclass
class RowMismatch:
    h: int
    field: str
    expected: object
    actual: object


@dataclass
class TableVerification:
    rows_checked: int
    mismatches: list[RowMismatch]
    minimality_checked_up_to: Optional[int]
    height_bound_ok: bool  # h <= 2p/3 with equality only at h = 2

    @property
    def ok(self) -> bool:
        return not self.mismatches and self.height_bound_ok


def _printed_3dp_matches(value: float, printed: float) -> bool:
    # published tables mix round-half and truncation in the last digit;
    # accept a printed 3-decimal value that matches either convention
    r = round(value, 3)
    t = math.floor(value * 1000) / 1000
    return abs(r - printed) < 1e-9 or abs(t - printed) < 1e-9


def verify_table(
    rows: list[TableRow], scan_bound: Optional[int] = None
) -> TableVerification:
    """Recompute every row's statistics and diff them against the given rows.

    Minimality is re-established only when scan_bound is given, by exhaustive
    enumeration of ternary n <= scan_bound.
    """
    mismatches: list[RowMismatch] = []
    bound_ok = True
    for row in rows:
        rep = height_report(row.n)
        checks: list[tuple[str, object, object]] = [
            ("A", row.h, rep.A),
            ("k", row.k, rep.k_first),
            ("sign", row.sign, rep.sign_at_k),
            ("diff", row.diff, rep.span),
            ("diff_optimal", row.diff_optimal, rep.optimal),
        ]
        for name, expected, actual in checks:
            if expected != actual:
                mismatches.append(RowMismatch(row.h, name, expected, actual))
        if not _printed_3dp_matches(rep.ratio, row.ratio):
            mismatches.append(RowMismatch(row.h, "ratio", row.ratio, rep.ratio))
        if (row.exponent is None) != (rep.exponent is None):
            mismatches.append(RowMismatch(row.h, "exponent", row.exponent, rep.exponent))
        elif row.exponent is not None and not _printed_3dp_matches(
            rep.exponent, row.exponent
        ):
            mismatches.append(RowMismatch(row.h, "exponent", row.exponent, rep.exponent))
        if 3 * row.h > 2 * row.p or (3 * row.h == 2 * row.p and row.h != 2):
            bound_ok = False
    if scan_bound is not None:
        scan = minimal_height_table(max(r.h for r in rows), scan_bound)
        minimal = {r.h: r.n for r in scan.rows}
        for row in rows:
            if row.n <= scan_bound and minimal.get(row.h) != row.n:
                mismatches.append(
                    RowMismatch(row.h, "minimal_n", row.n, minimal.get(row.h))
                )
            elif row.n > scan_bound and row.h in minimal:
                mismatches.append(
                    RowMismatch(row.h, "minimal_n", row.n, minimal[row.h])
                )
    return TableVerification(
        rows_checked=len(rows),
        mismatches=mismatches,
        minimality_checked_up_to=scan_bound,
        height_bound_ok=bound_ok,
    )


TABLE_COLUMNS = ("height", "p", "q", "r", "k", "sign", "diff", "diff_optimal", "ratio", "exponent")


def write_table_csv(rows: list[TableRow], path) -> None:
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(TABLE_COLUMNS)
        for r in rows:
            w.writerow(
                [
                    r.h,
                    r.p,
                    r.q,
                    r.r,
                    r.k,
                    "+" if r.sign > 0 else "-",
                    r.diff,
                    int(r.diff_optimal),
                    f"{r.ratio:.3f}",
                    "" if r.exponent is None else f"{r.exponent:.3f}",
                ]
            )


def read_table_csv(path) -> list[TableRow]:
    rows = []
    with open(path, newline="") as fh:
        reader = csv.DictReader(fh)
        if reader.fieldnames is None or tuple(reader.fieldnames) != TABLE_COLUMNS:
            raise ValueError(f"unexpected table header in {path}")
        for rec in reader:
            rows.append(
                TableRow(
                    h=int(rec["height"]),
                    p=int(rec["p"]),
                    q=int(rec["q"]),
                    r=int(rec["r"]),
                    k=int(rec["k"]),
                    sign=1 if rec["sign"] == "+" else -1,
                    diff=int(rec["diff"]),
                    diff_optimal=bool(int(rec["diff_optimal"])),
                    ratio=float(rec["ratio"]),
                    exponent=float(rec["exponent"]) if rec["exponent"] else None,
                )
            )
    return rows
