"""Generalized Brauer-Siegel machinery in the Tsfasman-Vladut normalization.

The object being bounded is the limit B of log(h_n * Reg_n)/g_n along an
asymptotically exact tower, expressed through the place densities

    B = 1 + sum_q phi_q * log(q/(q-1)) - phi_R * log 2 - phi_C * log(2 pi),

where phi_q, phi_R, phi_C are the densities of finite places of norm q and
of real/complex places relative to the genus.  The densities obey a budget

    sum_q a(q) phi_q + a0 phi_R + a1 phi_C <= 1,

and per rational prime ell the masses satisfy
sum_m m * phi_{ell^m} <= phi_R + 2 phi_C.  Since both log(q/(q-1)) and
a(q) = log q/(sqrt(q)-1) decrease in q, with the payoff-per-budget ratio
also decreasing, the maximizing allocation fills each prime's cheapest
admissible norm in ascending order; `optimize` performs that greedy fill
with a fractional last step.

All phi-type quantities here are absolute densities (already divided by the
genus); scenario code converts from genus-scaled integers at the boundary.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import exp, log, pi, sqrt

from .arith import PrimePower
from .errors import (
    DomainError,
    InfeasibleProblemError,
    MissingParameterError,
    NeedsLargerEnumerationError,
)

#: Euler-Mascheroni constant, 20 digits.
GAMMA = 0.57721566490153286061

#: Archimedean budget coefficients.
A0_REAL = log(2 * sqrt(2 * pi)) + pi / 4 + GAMMA / 2
A1_COMPLEX = log(8 * pi) + GAMMA

#: Archimedean payoff coefficients.
B0_REAL = log(2.0)
B1_COMPLEX = log(2 * pi)


def a_coeff(q) -> float:
    """Budget coefficient log q / (sqrt(q) - 1); strictly decreasing in q >= 2."""
    qv = float(int(q))
    if qv < 2:
        raise DomainError(f"norm must be >= 2, got {q}")
    return log(qv) / (sqrt(qv) - 1.0)


def b_coeff(q) -> float:
    """Payoff coefficient log(q/(q-1)); strictly decreasing in q >= 2."""
    qv = float(int(q))
    if qv < 2:
        raise DomainError(f"norm must be >= 2, got {q}")
    return log(qv / (qv - 1.0))


def universal_B(mode: str) -> float:
    """Universal upper bounds for B: 'GRH', 'GRH_totally_imaginary',
    or 'Unconditional'."""
    table = {
        "GRH": 1.0939,
        "GRH_totally_imaginary": 1.0765,
        "Unconditional": 1.1589,
    }
    try:
        return table[mode]
    except KeyError:
        raise DomainError(f"unknown mode {mode!r}; expected one of {sorted(table)}") from None


def zimmert_lower(x0: float, x1: float) -> float:
    """Regulator-density lower bound:
    (log sqrt(pi e) + gamma/2) * phi_R + (log 2 + gamma) * phi_C."""
    if x0 < 0 or x1 < 0:
        raise DomainError("densities must be nonnegative")
    return (log(sqrt(pi * exp(1))) + GAMMA / 2) * x0 + (log(2.0) + GAMMA) * x1


@dataclass(frozen=True)
class Candidate:
    """A prime's cheapest admissible norm with its admissible density mass."""

    norm: PrimePower
    weight: float  # absolute density cap at this norm

    @property
    def value(self) -> int:
        return self.norm.value


@dataclass(frozen=True)
class TVProblem:
    """Fixed archimedean densities plus the pinned finite part.

    `fixed` carries the norms whose densities are known exactly (the set
    Sigma); `excluded` lists prime powers forced to density zero.
    """

    x0: float
    x1: float
    fixed: tuple[tuple[PrimePower, float], ...] = ()
    excluded: frozenset[int] = frozenset()

    def __post_init__(self):
        if self.x0 < 0 or self.x1 < 0:
            raise DomainError("archimedean densities must be nonnegative")
        if any(x < 0 for _, x in self.fixed):
            raise DomainError("fixed densities must be nonnegative")
        per_prime: dict[int, float] = {}
        for q, x in self.fixed:
            per_prime[q.ell] = per_prime.get(q.ell, 0.0) + q.m * x
        cap = self.x0 + 2 * self.x1
        for ell, used in per_prime.items():
            if used > cap * (1 + 1e-12) + 1e-15:
                raise DomainError(
                    f"fixed densities at prime {ell} use {used}, above the cap {cap}"
                )

    def fixed_budget_use(self) -> float:
        return sum(a_coeff(q) * x for q, x in self.fixed)

    def fixed_payoff(self) -> float:
        return sum(b_coeff(q) * x for q, x in self.fixed)


def budget(problem: TVProblem) -> float:
    """Remaining budget 1 - a0*x0 - a1*x1 - sum over fixed of a(q)*x_q."""
    left = 1.0 - A0_REAL * problem.x0 - A1_COMPLEX * problem.x1 - problem.fixed_budget_use()
    if left < -1e-12:
        raise InfeasibleProblemError(
            f"fixed data violates the basic inequality by {-left:.3e}"
        )
    return max(left, 0.0)


@dataclass(frozen=True)
class TVSolution:
    """Greedy fill result with every intermediate needed for auditing."""

    ell_star_0: PrimePower | None
    alpha: float
    sum_b_bound: float
    B_upper: float
    budget: float
    prefix: tuple[tuple[PrimePower, float], ...]
    degenerate: bool = False
    b_deduction: tuple[float, float] = field(default=(0.0, 0.0))

    def to_json(self) -> dict:
        return {
            "ell_star_0": None if self.ell_star_0 is None else self.ell_star_0.value,
            "alpha": self.alpha,
            "sum_b_bound": self.sum_b_bound,
            "B_upper": self.B_upper,
            "budget": self.budget,
            "degenerate": self.degenerate,
            "prefix": [[q.value, w] for q, w in self.prefix],
        }


def optimize(
    problem: TVProblem,
    candidates: list[Candidate],
    b_deduction: tuple[float, float] | None = None,
) -> TVSolution:
    """Greedy fractional fill of the budget over ascending candidate norms.

    Candidates must be one per rational prime, in strictly ascending norm
    order, each carrying its admissible density weight.  The first candidate
    that does not fit whole becomes ell_star_0 and is filled fractionally by
    alpha in [0, 1); the payoff bound and the resulting B upper bound follow.

    `b_deduction` optionally overrides the archimedean payoff deduction
    (x0', x1') used in the B assembly; by default the problem's own
    densities are used.  This exists so a scenario can pin a published
    assembly alongside the derived one.
    """
    values = [c.value for c in candidates]
    if any(v2 <= v1 for v1, v2 in zip(values, values[1:])):
        raise DomainError("candidates must be strictly ascending by norm value")
    if any(c.weight < 0 for c in candidates):
        raise DomainError("candidate weights must be nonnegative")
    seen_primes: set[int] = set()
    for c in candidates:
        if c.norm.ell in seen_primes:
            raise DomainError(f"two candidates for prime {c.norm.ell}")
        seen_primes.add(c.norm.ell)
    left = budget(problem)

    prefix: list[tuple[PrimePower, float]] = []
    ell_star_0: PrimePower | None = None
    alpha = 0.0
    consumed = 0.0
    for cand in candidates:
        cost = cand.weight * a_coeff(cand.norm)
        if cost <= left - consumed:
            consumed += cost
            if cand.weight > 0:
                prefix.append((cand.norm, cand.weight))
        else:
            ell_star_0 = cand.norm
            alpha = (left - consumed) / cost
            break
    if ell_star_0 is None:
        remaining = left - consumed
        if remaining > 1e-12 and any(c.weight > 0 for c in candidates):
            raise NeedsLargerEnumerationError(
                f"candidates exhausted with budget {remaining:.6g} unconsumed",
                last_norm=candidates[-1].value if candidates else None,
            )
        if not any(c.weight > 0 for c in candidates):
            # Degenerate problem: no admissible finite mass at all.
            ded = b_deduction if b_deduction is not None else (problem.x0, problem.x1)
            sum_b = problem.fixed_payoff()
            return TVSolution(
                ell_star_0=None,
                alpha=0.0,
                sum_b_bound=sum_b,
                B_upper=1.0 + sum_b - ded[0] * B0_REAL - ded[1] * B1_COMPLEX,
                budget=left,
                prefix=(),
                degenerate=True,
                b_deduction=ded,
            )

    sum_b = problem.fixed_payoff()
    sum_b += sum(w * b_coeff(q) for q, w in prefix)
    if ell_star_0 is not None:
        w0 = next(c.weight for c in candidates if c.norm == ell_star_0)
        sum_b += alpha * w0 * b_coeff(ell_star_0)
    ded = b_deduction if b_deduction is not None else (problem.x0, problem.x1)
    B_upper = 1.0 + sum_b - ded[0] * B0_REAL - ded[1] * B1_COMPLEX
    return TVSolution(
        ell_star_0=ell_star_0,
        alpha=alpha,
        sum_b_bound=sum_b,
        B_upper=B_upper,
        budget=left,
        prefix=tuple(prefix),
        b_deduction=ded,
    )


def alpha_constant(B_value: float, log_sqrt_disc: float, r1: int, r2: int) -> float:
    """Archimedean-corrected numerator of the mean-exponent bound:

        B * log sqrt(disc(K,S)) - (r1/2)(gamma + 1 + log pi) - r2 (gamma + log 2).
    """
    return (
        B_value * log_sqrt_disc
        - (r1 / 2.0) * (GAMMA + 1.0 + log(pi))
        - r2 * (GAMMA + log(2.0))
    )


def alpha_constant_for_field(B_value: float, field, s_norms, p: int) -> float:
    """`alpha_constant` evaluated on a field descriptor and a tame place set."""
    from .fields import log_disc_with_tame_conductor

    half_log = 0.5 * log_disc_with_tame_conductor(field, s_norms, p)
    return alpha_constant(B_value, half_log, field.r1, field.r2)


def mean_exponent_upper(epsilon, p: int, alpha_value: float, a_sigma: int = 0) -> float:
    """Assembled asymptotic mean-exponent bound (1/eps)(alpha/log p + a(Sigma))."""
    eps = float(epsilon)
    if eps <= 0:
        raise DomainError("the linear-growth rate epsilon must be positive")
    return (alpha_value / log(p) + a_sigma) / eps


def propmain_upper(C0, t0: int, p: int, log_abs_disc: float) -> float:
    """Crude bound (C0/t0) * log_p |disc|; C0 is an absolute constant the
    underlying class-number estimate never makes numeric, so it is required
    from the caller."""
    if C0 is None:
        raise MissingParameterError("C0 must be supplied; it has no canonical value")
    if t0 <= 0:
        raise DomainError("t0 must be positive")
    return (float(C0) / t0) * (log_abs_disc / log(p))


def per_level_bound(
    index: int,
    d_n: int,
    log_sqrt_disc_ks: float,
    a_sigma: int,
    ratio_h_over_g: float,
    p: int,
) -> float:
    """Single-level mean-exponent bound
    ([K_n:K]/d_n) * (log_p sqrt(disc(K,S)) * log(h_n)/g_n + a(Sigma));
    a trivial group (d_n = 0) contributes 0."""
    if d_n == 0:
        return 0.0
    if d_n < 0 or index < 1:
        raise DomainError("need index >= 1 and d_n >= 0")
    if ratio_h_over_g < 0:
        raise DomainError("log(h)/g ratio must be nonnegative")
    return (index / d_n) * (log_sqrt_disc_ks / log(p) * ratio_h_over_g + a_sigma)
