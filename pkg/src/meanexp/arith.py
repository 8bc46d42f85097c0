"""Elementary number-theoretic primitives.

Everything here is exact integer arithmetic; callers that need floats
convert at the boundary.  All functions are pure.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from math import gcd, isqrt

from .errors import DomainError

# Witnesses making Miller-Rabin deterministic below 3.3 * 10^24 (> 2^64).
_MR_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    """Miller-Rabin, deterministic below 2^64, 40 random rounds above."""
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    d = n - 1
    r = 0
    while d % 2 == 0:
        d //= 2
        r += 1
    if n < 1 << 64:
        witnesses = _MR_WITNESSES
    else:
        rng = random.Random(n)
        witnesses = tuple(rng.randrange(2, n - 1) for _ in range(40))
    for a in witnesses:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def sieve_primes(limit: int) -> list[int]:
    """All primes in [2, limit], ascending (segmented sieve not needed at this scale)."""
    if limit < 2:
        raise DomainError(f"sieve limit must be >= 2, got {limit}")
    flags = bytearray([1]) * (limit + 1)
    flags[0:2] = b"\x00\x00"
    for p in range(2, isqrt(limit) + 1):
        if flags[p]:
            flags[p * p :: p] = b"\x00" * len(flags[p * p :: p])
    return [i for i in range(2, limit + 1) if flags[i]]


def kronecker(a: int, n: int) -> int:
    """Kronecker symbol (a|n), the full multiplicative extension of Legendre.

    Conventions: (a|2) is 0 for even a, +1 for a = +-1 mod 8, -1 for
    a = +-3 mod 8; (a|-1) is -1 exactly when a < 0; (a|0) is undefined.
    """
    if n == 0:
        raise DomainError("kronecker symbol (a|0) is undefined")
    result = 1
    if n < 0:
        n = -n
        if a < 0:
            result = -result
    while n % 2 == 0:
        n //= 2
        if a % 2 == 0:
            return 0
        if a % 8 in (3, 5):
            result = -result
    # Jacobi symbol on the odd part via reciprocity.
    a %= n
    while a != 0:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


def vp(n: int, p: int) -> int:
    """p-adic valuation of a nonzero integer."""
    if n == 0:
        raise DomainError("valuation of 0 is infinite")
    if not is_prime(p):
        raise DomainError(f"{p} is not prime")
    n = abs(n)
    e = 0
    while n % p == 0:
        n //= p
        e += 1
    return e


def tame_local_factor(norm: int, p: int, split_completely: bool = False) -> int:
    """Size exponent of the tame inertia contribution of a place of norm `norm`.

    For odd p this is v_p(norm - 1).  For p = 2 the answer depends on the
    residue class of the norm mod 4: when norm = 1 mod 4 it is v_2(norm - 1);
    when norm = 3 mod 4, writing norm = 1 + 2n with n odd, it is
    v_2(1 + n) + 1 -- unless the place is known to split completely in the
    tower, in which case the smaller value v_2(norm - 1) = 1 applies.
    """
    if norm < 3:
        raise DomainError(f"norm must be >= 3, got {norm}")
    if gcd(norm, p) != 1:
        raise DomainError(f"norm {norm} is not coprime to p = {p}")
    if p != 2:
        return vp(norm - 1, p)
    if norm % 4 == 1 or split_completely:
        return vp(norm - 1, 2)
    n = (norm - 1) // 2  # odd since norm = 3 mod 4
    return vp(1 + n, 2) + 1


def tame_local_sum(norms, p: int, split_completely: bool = False) -> int:
    """Sum of the tame local factors over a set of place norms."""
    return sum(tame_local_factor(q, p, split_completely=split_completely) for q in norms)


@dataclass(frozen=True)
class PrimePower:
    """A prime power q = ell^m, kept factored."""

    ell: int
    m: int

    def __post_init__(self):
        if self.m < 1:
            raise DomainError(f"exponent must be >= 1, got {self.m}")
        if not is_prime(self.ell):
            raise DomainError(f"{self.ell} is not prime")

    @property
    def value(self) -> int:
        return self.ell**self.m

    @classmethod
    def from_value(cls, q: int) -> "PrimePower":
        if q < 2:
            raise DomainError(f"{q} is not a prime power")
        for ell in sieve_primes(isqrt(q) + 1) if q > 3 else [2, 3]:
            if q % ell == 0:
                m = 0
                while q % ell == 0:
                    q //= ell
                    m += 1
                if q != 1:
                    raise DomainError("not a prime power")
                return cls(ell, m)
        # q itself is prime
        return cls(q, 1)

    def __int__(self) -> int:
        return self.value
