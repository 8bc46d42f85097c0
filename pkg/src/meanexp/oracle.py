"""Ground truth for imaginary quadratic class groups via reduced forms.

Class numbers and class-group structure are recomputed from scratch here:
reduced positive-definite binary quadratic forms enumerate the classes, and
classical Dirichlet composition gives the group law.  Nothing in this module
shares code with the bound machinery it is used to cross-check.

Scale limits are deliberate: |D| up to about 10^6, class numbers in the
low thousands.  Composition is the plain textbook algorithm; no NUCOMP.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from math import gcd, isqrt

from .errors import DomainError, InternalInconsistencyError
from .groups import AbelianPShape


def _check_disc(D: int) -> None:
    if D >= 0 or D % 4 not in (0, 1):
        raise DomainError(f"discriminant must be negative and 0 or 1 mod 4, got {D}")


@dataclass(frozen=True, order=True)
class QuadForm:
    """Primitive positive-definite form a*x^2 + b*x*y + c*y^2."""

    a: int
    b: int
    c: int

    @property
    def disc(self) -> int:
        return self.b * self.b - 4 * self.a * self.c

    def is_reduced(self) -> bool:
        a, b, c = self.a, self.b, self.c
        return abs(b) <= a <= c and not (b < 0 and (abs(b) == a or a == c))

    def inverse(self) -> "QuadForm":
        return reduce_form(QuadForm(self.a, -self.b, self.c))


def reduce_form(f: QuadForm) -> QuadForm:
    """Unique reduced representative of the proper equivalence class."""
    a, b, c = f.a, f.b, f.c
    D = b * b - 4 * a * c
    if D >= 0 or a <= 0:
        raise DomainError("only positive definite forms are handled")
    while True:
        if b > a or b <= -a:
            b = b % (2 * a)
            if b > a:
                b -= 2 * a
            c = (b * b - D) // (4 * a)
            continue
        if c < a:
            a, b, c = c, -b, a
            continue
        if b < 0 and (a == c or -b == a):
            b = -b
            continue
        return QuadForm(a, b, c)


def principal_form(D: int) -> QuadForm:
    _check_disc(D)
    if D % 4 == 0:
        return QuadForm(1, 0, -D // 4)
    return QuadForm(1, 1, (1 - D) // 4)


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    return old_r, old_s, old_t


def compose(f1: QuadForm, f2: QuadForm) -> QuadForm:
    """Dirichlet composition of two primitive forms of equal discriminant."""
    if f1.disc != f2.disc:
        raise DomainError("forms must share a discriminant")
    D = f1.disc
    a1, b1, c1 = f1.a, f1.b, f1.c
    a2, b2, c2 = f2.a, f2.b, f2.c
    if a1 > a2:
        a1, b1, c1, a2, b2, c2 = a2, b2, c2, a1, b1, c1
    s = (b1 + b2) // 2
    n = (b1 - b2) // 2
    d0, u0, v0 = _xgcd(a1, a2)  # u0*a1 + v0*a2 = d0
    d, x, w = _xgcd(d0, s)  # x*d0 + w*s = d = gcd(a1, a2, s)
    v = x * v0  # so (x*u0)*a1 + v*a2 + w*s = d
    a3 = (a1 // d) * (a2 // d)
    b3 = (b2 + 2 * (a2 // d) * (v * n - w * c2)) % (2 * a3)
    c3 = (b3 * b3 - D) // (4 * a3)
    return reduce_form(QuadForm(a3, b3, c3))


def form_pow(f: QuadForm, e: int, D: int) -> QuadForm:
    result = principal_form(D)
    if e < 0:
        f = f.inverse()
        e = -e
    base = reduce_form(f)
    while e:
        if e & 1:
            result = compose(result, base)
        base = compose(base, base)
        e >>= 1
    return result


def reduced_forms(D: int) -> list[QuadForm]:
    """All primitive reduced forms of discriminant D; the count is h(D)."""
    _check_disc(D)
    forms = []
    b_max = isqrt(-D // 3)
    for b in range(-b_max, b_max + 1):
        if (b - D) % 2:
            continue
        ac4 = b * b - D
        m = ac4 // 4
        a = max(abs(b), 1)
        while a * a <= m:
            if m % a == 0:
                c = m // a
                f = QuadForm(a, b, c)
                if f.is_reduced() and gcd(gcd(a, abs(b)), c) == 1:
                    forms.append(f)
            a += 1
    forms.sort()
    return forms


def class_number(D: int) -> int:
    return len(reduced_forms(D))


def ambiguous_class_count(D: int) -> int:
    """Number of reduced forms fixed by inversion (b = 0, a = b, or a = c)."""
    return sum(1 for f in reduced_forms(D) if f.b == 0 or f.a == f.b or f.a == f.c)


def class_group_structure(D: int, p: int) -> AbelianPShape:
    """Elementary divisors of the p-part of the form class group.

    Exponent filtering: the count of classes killed by p^j is p to the
    number of elementary divisors of exponent >= 1 clipped at j, summed;
    successive-quotient logs of those counts peel off the divisor multiset.
    """
    _check_disc(D)
    if abs(D) > 10**6:
        raise DomainError("oracle is desk-scale only: |D| <= 10^6")
    forms = reduced_forms(D)
    h = len(forms)
    if h % p != 0:
        return AbelianPShape(p=p, exps=())
    e = principal_form(D)
    counts = [1]
    j = 0
    while True:
        j += 1
        killed = sum(1 for f in forms if form_pow(f, p**j, D) == e)
        klog = round(math.log(killed) / math.log(p))
        if p**klog != killed:
            raise InternalInconsistencyError(
                f"torsion count {killed} at p^{j} is not a p-power; composition is broken"
            )
        counts.append(killed)
        if killed == counts[-2]:
            counts.pop()
            break
    logs = [round(math.log(c) / math.log(p)) if c > 1 else 0 for c in counts]
    at_least = [logs[j] - logs[j - 1] for j in range(1, len(logs))]
    exps = []
    for j, cnt in enumerate(at_least):
        nxt = at_least[j + 1] if j + 1 < len(at_least) else 0
        exps.extend([j + 1] * (cnt - nxt))
    shape = AbelianPShape(p=p, exps=tuple(exps))
    if sum(shape.exps) != logs[-1]:
        raise InternalInconsistencyError("structure does not multiply up to the p-part")
    return shape


def random_law_check(D: int, trials: int, rng: random.Random) -> None:
    """Identity, inverse and associativity spot checks; raises on failure."""
    forms = reduced_forms(D)
    if not forms:
        return
    e = principal_form(D)
    if reduce_form(e) != e:
        raise InternalInconsistencyError(f"principal form of {D} is not reduced")
    for _ in range(trials):
        f1, f2, f3 = (rng.choice(forms) for _ in range(3))
        if compose(compose(f1, f2), f3) != compose(f1, compose(f2, f3)):
            raise InternalInconsistencyError(f"associativity fails at D = {D}")
        if compose(f1, e) != f1:
            raise InternalInconsistencyError(f"identity fails at D = {D}")
        if compose(f1, f1.inverse()) != e:
            raise InternalInconsistencyError(f"inverse fails at D = {D}")
