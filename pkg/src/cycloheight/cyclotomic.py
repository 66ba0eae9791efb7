"""Exact cyclotomic polynomial coefficients and height reports.

The coefficient engine reduces n to its radical, strips a factor of two, and
then computes the remaining odd squarefree case as a truncated power series:
one linear pass per squarefree divisor d, either a downward difference with
stride d (multiply by 1 - x^d) or an upward strided prefix sum (divide by
1 - x^d), truncated at half the degree and mirrored on demand.

Coefficients are stored as dense int64 arrays.  Every pass carries a certified
bound on the largest intermediate value; a pass that could leave the 64-bit
range raises OverflowError instead of wrapping.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations
from typing import NamedTuple, Optional

import numpy as np

from .primes import factorize, is_prime

DEFAULT_COEFF_BUDGET = 20_000_000

_INT64_MAX = 2**63 - 1


class BudgetError(Exception):
    """A coefficient array would exceed the configured memory budget."""


class RadicalReduction(NamedTuple):
    """Index-preserving reduction of n to an odd squarefree core m.

    With s = stretch, the coefficients of the two polynomials are related by
    a_n(k*s) = sign(k) * a_m(k) and a_n(j) = 0 for j not divisible by s, where
    sign(k) = (-1)^k when negate_odd_indices else 1.  Heights are invariant
    under the reduction.  core = 1 flags n in {1} or a power of two, whose
    polynomials are served directly.
    """

    core: int
    stretch: int
    negate_odd_indices: bool


def reduce_to_radical(n: int) -> RadicalReduction:
    if n < 2:
        raise ValueError("n must be at least 2")
    fac = factorize(n)
    rad = math.prod(p for p, _ in fac)
    stretch = n // rad
    if rad % 2 == 0:
        core = rad // 2
        return RadicalReduction(core, stretch, core > 1)
    return RadicalReduction(rad, stretch, False)


def _squarefree_divisor_passes(odd_primes: tuple[int, ...]) -> list[tuple[int, int]]:
    """Ascending (d, exponent) passes for the product over squarefree divisors."""
    k = len(odd_primes)
    out = []
    for j in range(k + 1):
        for combo in combinations(odd_primes, j):
            out.append((math.prod(combo), (-1) ** (k - j)))
    out.sort()
    return out


def _strided_cumsum(c: np.ndarray, d: int) -> None:
    """In place: c[j] += c[j-d] for ascending j (division by 1 - x^d)."""
    n = c.size
    if d == 1:
        np.cumsum(c, out=c)
        return
    rows = -(-n // d)
    if rows <= 1:
        return
    pad = rows * d - n
    if pad:
        buf = np.zeros(rows * d, dtype=np.int64)
        buf[:n] = c
        view = buf.reshape(rows, d)
        np.cumsum(view, axis=0, out=view)
        c[:] = buf[:n]
    else:
        view = c.reshape(rows, d)
        np.cumsum(view, axis=0, out=view)


def _half_series(odd_primes: tuple[int, ...], upto: int) -> np.ndarray:
    """Coefficients 0..upto of the cyclotomic polynomial of prod(odd_primes).

    odd_primes must be distinct odd primes.  Growth of intermediates is
    tracked with a certified bound; the bound is tightened against the actual
    array maximum before declaring an overflow.
    """
    c = np.zeros(upto + 1, dtype=np.int64)
    c[0] = 1
    bound = 1
    for d, exponent in _squarefree_divisor_passes(odd_primes):
        if d > upto:
            continue  # (1 - x^d) is 1 in the truncated ring
        if exponent == 1:
            factor = 2
        else:
            factor = -(-(upto + 1) // d)
        if bound * factor > _INT64_MAX:
            bound = int(np.abs(c).max())
            if bound * factor > _INT64_MAX:
                raise OverflowError(
                    "coefficient pass may leave the 64-bit range "
                    f"(bound {bound}, stride {d})"
                )
        if exponent == 1:
            np.subtract(c[d:], c[:-d], out=c[d:])
        else:
            _strided_cumsum(c, d)
        bound *= factor
    return c


@dataclass
class CoeffSeq:
    """A window of exact coefficients of the n-th cyclotomic polynomial.

    coeffs[i] holds the coefficient of x^(lo+i).  Indices above hi that fall
    inside [0, degree] are served by mirroring (coefficients are palindromic
    for n > 1); indices beyond the degree are zero by convention.
    """

    n: int
    degree: int
    lo: int
    hi: int
    coeffs: np.ndarray

    def coeff(self, k: int) -> int:
        if k < 0:
            raise IndexError("negative index")
        if k > self.degree:
            return 0
        if self.lo <= k <= self.hi:
            return int(self.coeffs[k - self.lo])
        mk = self.degree - k
        if self.n > 1 and self.lo <= mk <= self.hi:
            return int(self.coeffs[mk - self.lo])
        raise IndexError(f"index {k} outside the computed window")

    def full_list(self) -> list[int]:
        """All coefficients 0..degree (requires a window covering them)."""
        return [self.coeff(k) for k in range(self.degree + 1)]


class _Core:
    """Shared half-array computation behind coefficients() and height_report()."""

    def __init__(self, n: int, budget: int):
        self.n = n
        fac = factorize(n)
        self.factorization = fac
        self.is_two_power = len(fac) == 1 and fac[0][0] == 2
        red = reduce_to_radical(n) if n >= 2 else RadicalReduction(1, 1, False)
        self.core, self.stretch, self.negate = red
        if self.core > 1:
            self.core_primes = tuple(p for p, _ in fac if p != 2)
            self.phi_core = math.prod(p - 1 for p in self.core_primes)
            self.degree = self.phi_core * self.stretch
            half = self.phi_core // 2
            if half + 1 > budget:
                raise BudgetError(
                    f"half range {half + 1} exceeds the coefficient budget {budget}"
                )
            self.half = _half_series(self.core_primes, half)
        else:
            # n is 1, 2, or a power of two; coefficients come from a formula
            self.phi_core = 1
            self.degree = 1 if n <= 2 else n // 2
            self.half = None

    def value(self, k: int) -> int:
        """a_n(k) for 0 <= k <= degree."""
        n = self.n
        if n == 1:
            return (-1, 1)[k]
        if self.half is None:  # 2, 4, 8, ...
            return 1 if k in (0, self.degree) else 0
        s = self.stretch
        if k % s:
            return 0
        j = k // s
        jj = j if 2 * j <= self.phi_core else self.phi_core - j
        v = int(self.half[jj])
        if self.negate and (j & 1):
            v = -v
        return v


def coefficients(
    n: int,
    window: Optional[tuple[int, int]] = None,
    budget: int = DEFAULT_COEFF_BUDGET,
) -> CoeffSeq:
    """Exact coefficients of the n-th cyclotomic polynomial over a window.

    Without a window the half range [0, degree//2] is materialized and the
    upper half is mirrored on demand.  Window bounds are inclusive and must
    satisfy 0 <= lo <= hi <= degree.
    """
    if n < 1:
        raise ValueError("n must be positive")
    core = _Core(n, budget)
    degree = core.degree
    if window is None:
        lo, hi = 0, degree // 2 if n > 1 else degree
    else:
        lo, hi = window
        if not (0 <= lo <= hi <= degree):
            raise ValueError(f"window {window} outside [0, {degree}]")
    length = hi - lo + 1
    if length > budget:
        raise BudgetError(f"window of {length} entries exceeds the budget {budget}")

    if core.half is None:
        out = np.fromiter(
            (core.value(k) for k in range(lo, hi + 1)), dtype=np.int64, count=length
        )
    else:
        signed = core.half
        if core.negate:
            signed = signed.copy()
            signed[1::2] *= -1
        if core.stretch == 1 and not core.negate and window is None:
            out = core.half
        elif core.stretch == 1 and window is None:
            out = signed
        else:
            ks = np.arange(lo, hi + 1, dtype=np.int64)
            out = np.zeros(length, dtype=np.int64)
            hit = ks % core.stretch == 0
            j = ks[hit] // core.stretch
            # phi_core is even, so mirroring preserves index parity and the
            # parity-signed half array can be indexed directly
            jj = np.minimum(j, core.phi_core - j)
            out[hit] = signed[jj]
    return CoeffSeq(n=n, degree=degree, lo=lo, hi=hi, coeffs=out)


@dataclass
class HeightReport:
    """Height statistics of one cyclotomic polynomial, from a single sweep.

    The coefficient value set follows the k >= 0 convention, so it always
    contains the zero tail.  optimal is defined only for ternary n (three
    distinct odd primes, all exponents one) and means the value set has the
    largest possible cardinality p + 1.
    """

    n: int
    factorization: list[tuple[int, int]]
    degree: int
    A: int
    Amax: int
    Amin: int
    k_first: int
    sign_at_k: int
    span: int
    coeff_set_size: int
    optimal: Optional[bool]
    ratio: float
    exponent: Optional[float]


def _parity_stats(half: np.ndarray, phi: int, negate: bool):
    """(Amax, Amin, value set) of the full polynomial, read off the half array."""
    if not negate:
        values = set(int(v) for v in np.unique(half))
        return int(half.max()), int(half.min()), values
    even = half[0::2]
    odd = half[1::2]
    amax = int(even.max()) if even.size else -(2**62)
    amin = int(even.min()) if even.size else 2**62
    if odd.size:
        amax = max(amax, int(-odd.min()))
        amin = min(amin, int(-odd.max()))
    values = set(int(v) for v in np.unique(even))
    values.update(int(-v) for v in np.unique(odd))
    return amax, amin, values


def height_report(n: int, budget: int = DEFAULT_COEFF_BUDGET) -> HeightReport:
    """All height statistics of the n-th cyclotomic polynomial (n >= 2)."""
    if n < 2:
        raise ValueError("n must be at least 2")
    core = _Core(n, budget)
    fac = core.factorization
    degree = core.degree

    if core.half is None:  # 2, 4, 8, ...
        amax, amin = 1, (1 if n == 2 else 0)
        a = 1
        k_first, sign = 0, 1
        values = {0, 1}
    else:
        amax, amin, values = _parity_stats(core.half, core.phi_core, core.negate)
        a = max(amax, -amin)
        j = int(np.argmax(np.abs(core.half) == a))
        k_first = j * core.stretch
        v = int(core.half[j])
        if core.negate and (j & 1):
            v = -v
        sign = 1 if v > 0 else -1
        if core.stretch > 1:
            amin = min(amin, 0)
    values.add(0)

    ternary = len(fac) == 3 and fac[0][0] > 2 and all(e == 1 for _, e in fac)
    optimal: Optional[bool] = None
    if ternary:
        optimal = len(values) == fac[0][0] + 1
    return HeightReport(
        n=n,
        factorization=fac,
        degree=degree,
        A=a,
        Amax=amax,
        Amin=amin,
        k_first=k_first,
        sign_at_k=sign,
        span=amax - amin,
        coeff_set_size=len(values),
        optimal=optimal,
        ratio=k_first / degree,
        exponent=math.log(n) / math.log(a) if a > 1 else None,
    )


def height_only(n: int, budget: int = DEFAULT_COEFF_BUDGET) -> int:
    """The height alone, skipping the value-set sweep (used by bulk scans)."""
    if n < 2:
        raise ValueError("n must be at least 2")
    core = _Core(n, budget)
    if core.half is None:
        return 1
    return int(max(core.half.max(), -core.half.min()))


@dataclass(frozen=True)
class PrimeTriple:
    """Three primes 2 < p < q < r."""

    p: int
    q: int
    r: int

    def __post_init__(self) -> None:
        if not (2 < self.p < self.q < self.r):
            raise ValueError("need 2 < p < q < r")
        for v in (self.p, self.q, self.r):
            if not is_prime(v):
                raise ValueError(f"{v} is not prime")

    @property
    def n(self) -> int:
        return self.p * self.q * self.r


class KaplanClass(NamedTuple):
    residue: int
    reflected: bool


def kaplan_class(t: PrimeTriple) -> KaplanClass:
    """Canonical residue class of r mod pq, folding negated classes together.

    Triples whose largest primes are congruent mod pq share the coefficient
    value set; congruent to the negative, the negated set.  Requires r > pq.
    """
    pq = t.p * t.q
    if t.r <= pq:
        raise ValueError(f"r={t.r} must exceed p*q={pq}")
    c = t.r % pq
    if pq - c < c:
        return KaplanClass(pq - c, True)
    return KaplanClass(c, False)


def direct_series(n: int, budget: int = DEFAULT_COEFF_BUDGET) -> np.ndarray:
    """Full-length coefficient array computed without the radical reduction.

    Runs the divisor passes with strides n/d over all squarefree divisors d of
    the radical, at full degree.  Slower than the half-array path; kept as an
    independent route for cross-checks.
    """
    if n < 2:
        raise ValueError("n must be at least 2")
    fac = factorize(n)
    phi = math.prod((p - 1) * p ** (e - 1) for p, e in fac)
    if phi + 1 > budget:
        raise BudgetError(f"degree {phi} exceeds the coefficient budget {budget}")
    primes = tuple(p for p, _ in fac)
    k = len(primes)
    passes = []
    for j in range(k + 1):
        for combo in combinations(primes, j):
            d = math.prod(combo)
            passes.append((n // d, (-1) ** (len(combo))))
    # exponent of (1 - x^{n/d}) is mu(d)
    passes.sort()
    c = np.zeros(phi + 1, dtype=np.int64)
    c[0] = 1
    bound = 1
    for stride, mu in passes:
        if stride > phi:
            continue
        factor = 2 if mu == 1 else -(-(phi + 1) // stride)
        if bound * factor > _INT64_MAX:
            bound = int(np.abs(c).max())
            if bound * factor > _INT64_MAX:
                raise OverflowError("coefficient pass may leave the 64-bit range")
        if mu == 1:
            np.subtract(c[stride:], c[:-stride], out=c[stride:])
        else:
            _strided_cumsum(c, stride)
        bound *= factor
    return c
