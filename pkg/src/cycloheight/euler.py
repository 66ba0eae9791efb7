"""High-precision Euler products over odd primes, with rigorous tail bounds.

The two products are

    C2 = prod (1 - 1/(p-1)^2)            (twin prime constant)
    C1 = prod (1 + 2/(p(p-2)) + 1/(p(p-2)^2))

over odd primes p, and the derived constant c' = (log 2)^2 / (1024 C1 C2^2).

Each factor is a rational function of p, so the log of the tail past a cutoff
N expands as sum_k e_k * P_{>N}(k) with P_{>N}(k) the prime zeta tail.  The
product over p <= N is accumulated exactly in batched big-integer rationals;
the k = 2, 3 tail terms are restored through prime-zeta values, and the k >= 4
remainder plus all floating slack goes into the reported tail bound.
"""

from __future__ import annotations

from dataclasses import dataclass

import mpmath
import numpy as np
from mpmath import mp

from .primes import sieve_primes

PRECISION_BITS = 120

# log factor coefficients: log f(1/t) = sum_{k>=2} e_k t^k
# C2 factor (1-2t)(1-t)^-2:  e_k = (2 - 2^k)/k
# C1 factor (1-t)(1-3t+3t^2)(1-2t)^-2:  e_k = (2^(k+1) - 1 - s_k)/k,
#   s_k = 3 s_{k-1} - 3 s_{k-2}, s_1 = s_2 = 3 (power sums of the quadratic's roots)
_E2_C2, _E3_C2 = mpmath.mpf(-1), mpmath.mpf(-2)
_E2_C1, _E3_C1 = mpmath.mpf(2), mpmath.mpf(5)


@dataclass
class ConstantsReport:
    C1: mpmath.mpf
    C2: mpmath.mpf
    c_prime: mpmath.mpf
    cutoff: int
    tail_bound: float


def _abs_e_c1(k: int) -> float:
    s_prev, s = 3.0, 3.0
    for _ in range(k - 2):
        s_prev, s = s, 3 * s - 3 * s_prev
    return (2.0 ** (k + 1) + 1 + abs(s)) / k


def _tail_remainder_bound(cutoff: int) -> float:
    """Bound on |sum_{k>=4} e_k P_{>cutoff}(k)| for both products."""
    total = 0.0
    for k in range(4, 200):
        zeta_tail = cutoff ** (1 - k) * (1.0 / (k - 1) + 1.0 / cutoff)
        term = max(_abs_e_c1(k), (2.0**k + 2) / k) * zeta_tail
        total += term
        if term < 1e-40:
            break
    return total


def _batched_product(num_factors: list[int], den_factors: list[int]) -> mpmath.mpf:
    out = mpmath.mpf(1)
    step = 512
    for i in range(0, len(num_factors), step):
        num = 1
        den = 1
        for a in num_factors[i : i + step]:
            num *= a
        for b in den_factors[i : i + step]:
            den *= b
        out *= mpmath.mpf(num) / mpmath.mpf(den)
    return out


def constants(cutoff: int) -> ConstantsReport:
    """Both products and the derived constant, accurate to the tail bound."""
    if cutoff < 1000:
        raise ValueError("cutoff must be at least 1000")
    odd = sieve_primes(cutoff)[1:]
    plist = [int(p) for p in odd]
    with mp.workprec(PRECISION_BITS):
        c2 = _batched_product(
            [p * (p - 2) for p in plist], [(p - 1) * (p - 1) for p in plist]
        )
        c1 = _batched_product(
            [(p - 1) * (p * p - 3 * p + 3) for p in plist],
            [p * (p - 2) * (p - 2) for p in plist],
        )
        # prime zeta tails past the cutoff, k = 2 and 3
        pf = odd.astype(np.float64)
        s2 = mpmath.mpf(float(np.sum(1.0 / (pf * pf))))
        s3 = mpmath.mpf(float(np.sum(1.0 / (pf * pf * pf))))
        p2_tail = mpmath.primezeta(2) - mpmath.mpf(1) / 4 - s2
        p3_tail = mpmath.primezeta(3) - mpmath.mpf(1) / 8 - s3
        c2 = c2 * mpmath.exp(_E2_C2 * p2_tail + _E3_C2 * p3_tail)
        c1 = c1 * mpmath.exp(_E2_C1 * p2_tail + _E3_C1 * p3_tail)
        log2 = mpmath.log(2)
        c_prime = log2 * log2 / (1024 * c1 * c2 * c2)
    # remainder of the k >= 4 series, float slack of the zeta-tail sums,
    # and working-precision slack, all scaled generously
    tail = 4.0 * _tail_remainder_bound(cutoff) + 1e-11
    return ConstantsReport(C1=c1, C2=c2, c_prime=c_prime, cutoff=cutoff, tail_bound=tail)
