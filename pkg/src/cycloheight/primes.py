"""Prime generation, deterministic primality, factorization, and exact gap predicates.

Gap predicates are decided in pure integer arithmetic; the only floating point
in this module is the e_sum accumulator of gap_summary (documented tolerance
1e-6 relative).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterator, Optional

import numpy as np

# Strong-pseudoprime bases proven sufficient for every n < 3.3e24,
# in particular for all 64-bit inputs.
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)

DEFAULT_SEGMENT = 1 << 22


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin, exact for all n below 3.3e24."""
    if n < 2:
        return False
    for p in _MR_BASES:
        if n % p == 0:
            return n == p
    d = n - 1
    r = (d & -d).bit_length() - 1
    d >>= r
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def next_prime(n: int) -> int:
    """Smallest prime strictly greater than n."""
    c = max(n + 1, 2)
    if c == 2:
        return 2
    if c % 2 == 0:
        c += 1
    while not is_prime(c):
        c += 2
    return c


def sieve_array(limit: int) -> np.ndarray:
    """Boolean array b of length limit+1 with b[i] true iff i is prime."""
    if limit < 0:
        raise ValueError("limit must be non-negative")
    b = np.ones(limit + 1, dtype=bool)
    b[:2] = False
    for p in range(2, math.isqrt(limit) + 1):
        if b[p]:
            b[p * p :: p] = False
    return b


def sieve_primes(limit: int) -> np.ndarray:
    """All primes <= limit as an int64 array (simple, non-segmented sieve)."""
    if limit < 2:
        return np.empty(0, dtype=np.int64)
    return np.flatnonzero(sieve_array(limit)).astype(np.int64)


def iter_prime_blocks(limit: int, segment: int = DEFAULT_SEGMENT) -> Iterator[np.ndarray]:
    """Yield ascending int64 arrays that jointly contain every prime <= limit.

    Memory stays bounded by the segment size, so limits up to 1e9 are fine.
    """
    if limit < 2:
        return
    root = math.isqrt(limit)
    base = sieve_primes(root)
    head = base[base <= limit]
    if head.size:
        yield head
    lo = root + 1
    while lo <= limit:
        hi = min(lo + segment - 1, limit)
        mask = np.ones(hi - lo + 1, dtype=bool)
        for p in base:
            p = int(p)
            start = max(p * p, ((lo + p - 1) // p) * p)
            if start <= hi:
                mask[start - lo :: p] = False
        block = np.flatnonzero(mask).astype(np.int64)
        block += lo
        if block.size:
            yield block
        lo = hi + 1


def primes_up_to(limit: int, segment: int = DEFAULT_SEGMENT) -> Iterator[int]:
    """Exactly the primes <= limit, ascending, generated segment by segment."""
    if limit < 2:
        raise ValueError("limit must be at least 2")
    for block in iter_prime_blocks(limit, segment):
        yield from block.tolist()


def factorize(n: int) -> list[tuple[int, int]]:
    """Prime factorization of n >= 1 as ascending (prime, exponent) pairs."""
    if n < 1:
        raise ValueError("n must be positive")
    out: list[tuple[int, int]] = []
    for p in (2, 3, 5):
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            out.append((p, e))
    f = 7
    steps = (4, 2, 4, 2, 4, 6, 2, 6)  # wheel mod 30
    i = 0
    while f * f <= n and f < 100_000:
        if n % f == 0:
            e = 0
            while n % f == 0:
                n //= f
                e += 1
            out.append((f, e))
        f += steps[i]
        i = (i + 1) % 8
    if n > 1:
        if is_prime(n):
            out.append((n, 1))
        else:
            parts: dict[int, int] = {}
            _rho_split(n, parts)
            out.extend(sorted(parts.items()))
    out.sort()
    return out


def _rho_split(n: int, acc: dict[int, int]) -> None:
    if n == 1:
        return
    if is_prime(n):
        acc[n] = acc.get(n, 0) + 1
        return
    d = _pollard_brent(n)
    _rho_split(d, acc)
    _rho_split(n // d, acc)


def _pollard_brent(n: int) -> int:
    if n % 2 == 0:
        return 2
    c = 1
    while True:
        x = y = 2
        d = 1
        while d == 1:
            x = (x * x + c) % n
            y = (y * y + c) % n
            y = (y * y + c) % n
            d = math.gcd(abs(x - y), n)
        if d != n:
            return d
        c += 1


def radical(n: int) -> int:
    """Product of the distinct primes dividing n (1 for n=1)."""
    return math.prod(p for p, _ in factorize(n))


# ---------------------------------------------------------------------------
# Gap records and exact predicates
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class GapRecord:
    """Consecutive prime pair with its gap."""

    p: int
    p_next: int
    d: int

    def __post_init__(self) -> None:
        if self.d != self.p_next - self.p or self.d < 1:
            raise ValueError("inconsistent gap record")

    @classmethod
    def from_pair(cls, p: int, p_next: int) -> "GapRecord":
        return cls(p, p_next, p_next - p)


def sqrt_gap_ok(p: int, d: int) -> bool:
    """True iff d < sqrt(p) + 1, decided exactly: (d-1)^2 < p for d >= 1."""
    if p < 2 or d < 1:
        raise ValueError("need a prime p >= 2 and a gap d >= 1")
    return (d - 1) * (d - 1) < p


def andrica_ok(p: int, p_next: int) -> bool:
    """True iff sqrt(p_next) - sqrt(p) < 1, exactly: (p_next-p-1)^2 < 4p."""
    if not p < p_next:
        raise ValueError("need p < p_next")
    t = p_next - p - 1
    return t * t < 4 * p


@dataclass
class GapSummary:
    """Aggregates of one gap sweep up to x.

    exceptions lists the gaps with d >= sqrt(p) + 1; e_sum totals
    (d - sqrt(p) + 1) over those gaps; hb_sum totals d over gaps with
    d >= C*sqrt(p); yu_sum totals d^2 over all gaps with p <= x.
    """

    x: int
    exceptions: list[GapRecord]
    e_sum: float
    hb_sum: int | float
    yu_sum: int
    andrica_violations: list[GapRecord]

    @property
    def exception_count(self) -> int:
        return len(self.exceptions)


def gap_summary(x: int, scale: float = 1.0) -> GapSummary:
    """One segmented sweep over all prime gaps (p, p_next) with p <= x.

    All predicates are exact-integer when scale == 1; a non-unit scale falls
    back to floating point for the hb threshold and is documented as such.
    """
    if x < 3:
        raise ValueError("x must be at least 3")
    exceptions: list[GapRecord] = []
    violations: list[GapRecord] = []
    e_sum = 0.0
    hb_sum: int | float = 0
    yu_sum = 0
    exact_scale = scale == 1.0

    carry: Optional[int] = None
    for block in iter_prime_blocks(x):
        if carry is not None:
            ps = np.concatenate((np.array([carry], dtype=np.int64), block))
        else:
            ps = block
        carry = int(ps[-1])
        p = ps[:-1]
        d = np.diff(ps)
        if p.size == 0:
            continue
        yu_sum += int(np.dot(d, d))
        if exact_scale:
            hb_mask = d * d >= p
            hb_sum += int(d[hb_mask].sum())
        else:
            hb_mask = d.astype(float) >= scale * np.sqrt(p.astype(float))
            hb_sum += float(d[hb_mask].sum())
        exc_mask = (d - 1) * (d - 1) >= p
        if exc_mask.any():
            pe = p[exc_mask]
            de = d[exc_mask]
            e_sum += float(np.sum(de - np.sqrt(pe.astype(float)) + 1.0))
            exceptions.extend(
                GapRecord.from_pair(int(a), int(a + g)) for a, g in zip(pe, de)
            )
        andr_mask = (d - 1) * (d - 1) >= 4 * p
        if andr_mask.any():
            violations.extend(
                GapRecord.from_pair(int(a), int(a + g))
                for a, g in zip(p[andr_mask], d[andr_mask])
            )
    # the sweep leaves the largest prime <= x without a successor
    assert carry is not None
    p_last = carry
    p_after = next_prime(p_last)
    d_last = p_after - p_last
    yu_sum += d_last * d_last
    if exact_scale:
        if d_last * d_last >= p_last:
            hb_sum += d_last
    else:
        if d_last >= scale * math.sqrt(p_last):
            hb_sum += float(d_last)
    if (d_last - 1) ** 2 >= p_last:
        e_sum += d_last - math.sqrt(p_last) + 1.0
        exceptions.append(GapRecord.from_pair(p_last, p_after))
    if (d_last - 1) ** 2 >= 4 * p_last:
        violations.append(GapRecord.from_pair(p_last, p_after))
    return GapSummary(
        x=x,
        exceptions=exceptions,
        e_sum=e_sum,
        hb_sum=hb_sum,
        yu_sum=yu_sum,
        andrica_violations=violations,
    )


def iter_gaps(x: int) -> Iterator[GapRecord]:
    """Every gap record (p, p_next) with p <= x, ascending."""
    if x < 3:
        raise ValueError("x must be at least 3")
    carry: Optional[int] = None
    for block in iter_prime_blocks(x):
        ps = block.tolist()
        if carry is not None:
            yield GapRecord.from_pair(carry, ps[0])
        for a, b in zip(ps, ps[1:]):
            yield GapRecord.from_pair(a, b)
        carry = ps[-1]
    assert carry is not None
    yield GapRecord.from_pair(carry, next_prime(carry))


def smallest_prime_in_class(
    a: int, d: int, floor: int, max_candidates: int = 10**6
) -> Optional[int]:
    """Least prime > floor congruent to a mod d, or None at the scan cap.

    The cap bounds how many progression terms are tried, so the scan window
    is max_candidates * d above the floor.
    """
    if d < 1:
        raise ValueError("modulus must be positive")
    if math.gcd(a, d) != 1:
        raise ValueError(f"residue {a} not coprime to modulus {d}")
    t = a % d
    if t <= floor:
        t += ((floor - t) // d + 1) * d
    for _ in range(max_candidates):
        if is_prime(t):
            return t
        t += d
    return None
