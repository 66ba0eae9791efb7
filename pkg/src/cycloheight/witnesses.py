"""Constructive ternary witnesses of prescribed odd height.

For odd h >= 3, a prime p >= 2h-1 with q = 1 + (h-1)p prime pins the maximal
height over all triples (p, q, r) at exactly h, and any prime r > q with
r * (p+q)/2 = 1 (mod pq) attains it.  The search here picks the smallest
qualifying p and the smallest qualifying r, so outputs are canonical and as
cheap as possible to verify directly.
"""

from __future__ import annotations

import math
from bisect import bisect_left, bisect_right
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace
from typing import Optional

from .cyclotomic import DEFAULT_COEFF_BUDGET, height_report
from .primes import is_prime, sieve_primes, smallest_prime_in_class


class WitnessVerificationError(Exception):
    """A direct height computation contradicted the constructed target."""


@dataclass(frozen=True)
class TernaryWitness:
    """A (p, q, r) construction for target height h, with verification state.

    verified is one of "direct" (height recomputed exactly), "congruence-only"
    (all structural congruences re-checked; degree too large for a direct
    sweep), or "unresolved" (a search cap was exhausted; fields may be None).
    """

    h: int
    p: Optional[int]
    q: Optional[int]
    pq: Optional[int]
    r1: Optional[int]
    r: Optional[int]
    verified: str


def m_pq(p: int, q: int) -> int:
    """Maximal height over all triples with smallest primes p < q, q = 1 mod p."""
    if not (2 < p < q) or not is_prime(p) or not is_prime(q):
        raise ValueError("need primes 2 < p < q")
    if q % p != 1:
        raise ValueError(f"q={q} is not 1 mod p={p}; formula not applicable")
    return min((q - 1) // p + 1, (p + 1) // 2)


def _scan_p(h: int, start: int, p_cap: int) -> Optional[tuple[int, int]]:
    p = start if start % 2 else start + 1
    while p <= p_cap:
        if is_prime(p):
            q = 1 + (h - 1) * p
            if is_prime(q):
                return p, q
        p += 2
    return None


def with_wilms(h: int, p_cap: int = 10**6, r_cap: int = 10**6) -> TernaryWitness:
    """Smallest-p, smallest-r witness for odd h >= 3.

    Exhausting either cap yields an unresolved witness with the missing
    fields left unset; a triple is never fabricated.
    """
    if h < 3 or h % 2 == 0:
        raise ValueError("h must be odd and at least 3")
    hit = _scan_p(h, 2 * h - 1, p_cap)
    if hit is None:
        return TernaryWitness(h, None, None, None, None, None, "unresolved")
    p, q = hit
    pq = p * q
    r1 = pow((p + q) // 2, -1, pq)
    r = smallest_prime_in_class(r1, pq, q, max_candidates=r_cap)
    if r is None:
        return TernaryWitness(h, p, q, pq, r1, None, "unresolved")
    w = TernaryWitness(h, p, q, pq, r1, r, "congruence-only")
    _check_congruences(w)
    return w


def _check_congruences(w: TernaryWitness) -> None:
    assert w.p and w.q and w.pq and w.r1 and w.r
    if not (is_prime(w.p) and is_prime(w.q) and is_prime(w.r)):
        raise ValueError("witness members must be prime")
    if w.q % w.p != 1:
        raise ValueError("q is not 1 mod p")
    if m_pq(w.p, w.q) != w.h:
        raise ValueError("maximal-height formula does not give h")
    if not (0 < w.r1 < w.pq) or w.r1 * (w.p + w.q) // 2 % w.pq != 1:
        raise ValueError("r1 is not the inverse of (p+q)/2 mod pq")
    if w.r <= w.q or w.r % w.pq != w.r1 % w.pq:
        raise ValueError("r is not a prime > q in the class of r1")


def verify_witness(
    w: TernaryWitness, coeff_budget: int = DEFAULT_COEFF_BUDGET
) -> TernaryWitness:
    """Upgrade to "direct" when the half coefficient range fits the budget.

    A direct computation that contradicts h raises WitnessVerificationError;
    otherwise the congruences are re-checked and the witness stays
    congruence-only.
    """
    if w.r is None or w.p is None or w.q is None:
        return w
    _check_congruences(w)
    half = (w.p - 1) * (w.q - 1) * (w.r - 1) // 2
    if half <= coeff_budget:
        rep = height_report(w.p * w.q * w.r, budget=coeff_budget)
        if rep.A != w.h:
            raise WitnessVerificationError(
                f"direct height of {w.p}*{w.q}*{w.r} is {rep.A}, expected {w.h}"
            )
        return replace(w, verified="direct")
    return replace(w, verified="congruence-only")


def linnik_witness(
    h: int, epsilon: float = 0.0, r_cap: int = 10**6
) -> tuple[TernaryWitness, Optional[float]]:
    """Witness built by the progression-search route, with its size exponent.

    Writes h = 1 + 2m and looks for a prime p in the open interval (4m, 32m)
    with q = 1 + 2mp prime.  The residue r1 of the inverse of (p+q)/2 mod pq
    is then lifted to a prime r: directly when r1 is even; otherwise through
    the auxiliary modulus s*pq, s the smallest prime not dividing r1 + pq.
    Returns the witness and log(pqr)/log(h).  epsilon only parameterizes the
    size bound this construction is compared against; it does not enter the
    arithmetic.
    """
    if h < 3 or h % 2 == 0:
        raise ValueError("h must be odd and at least 3")
    m = (h - 1) // 2
    hit = _scan_p(h, 4 * m + 1, 32 * m - 1)
    if hit is None:
        return TernaryWitness(h, None, None, None, None, None, "unresolved"), None
    p, q = hit
    pq = p * q
    r1 = pow((p + q) // 2, -1, pq)
    if r1 % 2 == 0:
        r = smallest_prime_in_class(r1, pq, q, max_candidates=r_cap)
    else:
        t = r1 + pq
        s = 2
        while t % s == 0:
            s = 3 if s == 2 else s + 2
            while not is_prime(s):
                s += 2
        r = smallest_prime_in_class(t % (s * pq), s * pq, q, max_candidates=r_cap)
    if r is None:
        return TernaryWitness(h, p, q, pq, r1, None, "unresolved"), None
    w = TernaryWitness(h, p, q, pq, r1, r, "congruence-only")
    _check_congruences(w)
    return w, math.log(p * q * r) / math.log(h)


# ---------------------------------------------------------------------------
# The density experiment: m with a prime p in (4m, 32m) making 1 + 2mp prime
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class GRecord:
    m: int
    p: Optional[int]

    def __post_init__(self) -> None:
        if self.p is not None:
            if not (4 * self.m < self.p < 32 * self.m):
                raise ValueError("witnessing prime outside (4m, 32m)")


def _g_record(m: int, primes) -> GRecord:
    lo = bisect_right(primes, 4 * m)
    hi = bisect_left(primes, 32 * m)
    for i in range(lo, hi):
        p = int(primes[i])
        if is_prime(1 + 2 * m * p):
            return GRecord(m, p)
    return GRecord(m, None)


def _g_chunk(args: tuple[int, int, int]) -> list[GRecord]:
    lo, hi, bound = args
    primes = sieve_primes(bound).tolist()
    return [_g_record(m, primes) for m in range(lo, hi)]


def g_scan(m_max: int, threads: int = 1) -> tuple[list[GRecord], float]:
    """Least witnessing prime for every m <= m_max, and the hit density."""
    if m_max < 1:
        raise ValueError("m_max must be at least 1")
    if threads <= 1:
        primes = sieve_primes(32 * m_max).tolist()
        records = [_g_record(m, primes) for m in range(1, m_max + 1)]
    else:
        step = -(-m_max // threads)
        chunks = [
            (lo, min(lo + step, m_max + 1), 32 * m_max)
            for lo in range(1, m_max + 1, step)
        ]
        records = []
        with ProcessPoolExecutor(max_workers=threads) as pool:
            for part in pool.map(_g_chunk, chunks):
                records.extend(part)
    density = sum(1 for rec in records if rec.p is not None) / m_max
    return records, density


def pi_m(m: int, x: float) -> int:
    """Count of primes p in [x/2, x) for which 1 + 2mp is prime."""
    if m < 1 or x < 4:
        raise ValueError("need m >= 1 and x >= 4")
    count = 0
    for p in sieve_primes(math.ceil(x) - 1).tolist():
        if 2 * p >= x and p < x and is_prime(1 + 2 * m * p):
            count += 1
    return count
