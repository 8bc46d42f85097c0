"""Dimension series and filtration ranks of one-relator-type pro-p groups.

For a finitely presented pro-p group whose relations have degrees a_1..a_r
with respect to the dimension (Zassenhaus) filtration, the graded group
algebra has coefficient series bounded below by 1/(1 - d*T + sum_i T^{a_i}),
with equality in cohomological dimension <= 2.  The coefficients c_n then
satisfy the linear recurrence c_n = d*c_{n-1} - sum_{a_i <= n} c_{n-a_i}.

The filtration ranks b_i are tied to the series by the product identity

    U(T) = prod_{i>=1} ((T^{p*i} - 1)/(T^i - 1))^{b_i},

and are extracted exactly by taking logarithmic derivatives: with
w_m the Newton power sums of U (n*c_n = sum_{k<=n} w_k c_{n-k}) and
V_m = w_m + p * V_{m/p} (second term only when p | m), Moebius inversion of
V_m = sum_{i | m} i*b_i recovers every b_i in integer arithmetic.

For quadratic relations 1 - d*T + r*T^2 = (1 - alpha*T)(1 - beta*T) the
power sums are never computed through the irrational roots: the integer
recurrence s_m = d*s_{m-1} - r*s_{m-2}, s_0 = 2, s_1 = d, is exact for any
sign of d^2 - 4r.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .arith import is_prime
from .errors import DomainError, InapplicableError, SeriesError

#: Largest order kept in exact big-integer arithmetic; beyond this the
#: witness scan switches to log-domain floats (relative error <= 1e-6).
EXACT_ORDER_LIMIT = 4096


@dataclass(frozen=True)
class GSGroupParams:
    """Presentation data: d generators, r relations with given degrees."""

    d: int
    r: int
    p: int
    relation_degrees: tuple[int, ...] = ()

    def __post_init__(self):
        if self.d < 1:
            raise DomainError("need at least one generator")
        if self.r < 0:
            raise DomainError("relation rank must be nonnegative")
        if not is_prime(self.p):
            raise DomainError(f"{self.p} is not prime")
        degrees = self.relation_degrees or tuple([2] * self.r)
        if len(degrees) != self.r:
            raise DomainError("one degree per relation required")
        if any(a < 2 for a in degrees):
            raise DomainError("relation degrees must be >= 2")
        object.__setattr__(self, "relation_degrees", tuple(degrees))

    @property
    def quadratic(self) -> bool:
        return all(a == 2 for a in self.relation_degrees)

    def gs_type(self) -> bool:
        """Quadratic relations with d^2 >= 4r."""
        return self.quadratic and self.d * self.d >= 4 * self.r


@dataclass(frozen=True)
class SeriesExpansion:
    coeffs: tuple[int, ...]

    def __post_init__(self):
        if not self.coeffs or self.coeffs[0] != 1:
            raise SeriesError("series must start with constant term 1")

    def order(self) -> int:
        return len(self.coeffs) - 1


@dataclass(frozen=True)
class ZassenhausRanks:
    p: int
    b: tuple[int, ...]  # b[0] is b_1

    def rank(self, i: int) -> int:
        if not 1 <= i <= len(self.b):
            raise DomainError(f"rank b_{i} not computed (have {len(self.b)})")
        return self.b[i - 1]


def gs_series(params: GSGroupParams, order: int) -> SeriesExpansion:
    """Coefficients of 1/(1 - d*T + sum_i T^{a_i}) to the given order."""
    if order < 0:
        raise DomainError("order must be nonnegative")
    degree_counts: dict[int, int] = {}
    for a in params.relation_degrees:
        degree_counts[a] = degree_counts.get(a, 0) + 1
    c = [1]
    for n in range(1, order + 1):
        val = params.d * c[n - 1]
        for a, cnt in degree_counts.items():
            if a <= n:
                val -= cnt * c[n - a]
        if val < 0:
            raise SeriesError(
                f"coefficient c_{n} = {val} < 0: relations too heavy for d = {params.d}"
            )
        c.append(val)
    return SeriesExpansion(tuple(c))


def power_sums(d: int, r: int, up_to: int) -> list[int]:
    """s_m = alpha^m + beta^m for the roots of X^2 - d*X + r, exactly."""
    s = [2, d]
    for _ in range(2, up_to + 1):
        s.append(d * s[-1] - r * s[-2])
    return s[: up_to + 1]


def _newton_power_sums(coeffs: tuple[int, ...]) -> list[int]:
    """w_m with n*c_n = sum_{k=1}^{n} w_k c_{n-k}; integers when c_0 = 1."""
    n_max = len(coeffs) - 1
    w = [0] * (n_max + 1)
    for n in range(1, n_max + 1):
        acc = n * coeffs[n]
        for k in range(1, n):
            acc -= w[k] * coeffs[n - k]
        w[n] = acc
    return w


def _divisors(n: int) -> list[int]:
    out = []
    i = 1
    while i * i <= n:
        if n % i == 0:
            out.append(i)
            if i != n // i:
                out.append(n // i)
        i += 1
    return sorted(out)


def _moebius(n: int) -> int:
    mu = 1
    d = 2
    while d * d <= n:
        if n % d == 0:
            n //= d
            if n % d == 0:
                return 0
            mu = -mu
        d += 1 if d == 2 else 2
    if n > 1:
        mu = -mu
    return mu


def zassenhaus_ranks(series: SeriesExpansion, p: int, order: int) -> ZassenhausRanks:
    """The unique b_1..b_order matching the product expansion, exactly.

    Order-by-order matching is equivalent to: V_m = w_m + p*V_{m/p} with w
    the Newton power sums of the series, then i*b_i = sum_{e|i} mu(e) V_{i/e}.
    Non-integral or negative b_i mean the series is not realizable and raise.
    """
    if not is_prime(p):
        raise DomainError(f"{p} is not prime")
    if order > series.order():
        raise DomainError(
            f"series carries only {series.order()} coefficients, need {order}"
        )
    w = _newton_power_sums(series.coeffs[: order + 1])
    V = [0] * (order + 1)
    for m in range(1, order + 1):
        V[m] = w[m] + (p * V[m // p] if m % p == 0 else 0)
    b = []
    for i in range(1, order + 1):
        acc = 0
        for e in _divisors(i):
            mu = _moebius(e)
            if mu:
                acc += mu * V[i // e]
        if acc % i != 0:
            raise SeriesError(f"rank b_{i} is not integral ({acc}/{i})")
        bi = acc // i
        if bi < 0:
            raise SeriesError(f"rank b_{i} = {bi} < 0: series is not realizable at p = {p}")
        b.append(bi)
    return ZassenhausRanks(p=p, b=tuple(b))


def reconstruct_series(ranks: ZassenhausRanks, order: int) -> SeriesExpansion:
    """Expand prod_i (1 + T^i + ... + T^{(p-1)i})^{b_i} to the given order.

    Independent of the extraction route above (plain truncated-polynomial
    arithmetic), so a round trip through zassenhaus_ranks is a real check.
    """
    p = ranks.p
    coeffs = [1] + [0] * order
    for i, bi in enumerate(ranks.b, start=1):
        if i > order:
            break
        if bi == 0:
            continue
        # multiply by (1 - T^{p*i})^{b_i} * (1 - T^i)^{-b_i}
        factor = [0] * (order + 1)
        for j in range(0, order // (p * i) + 1):
            factor[p * i * j] = (-1) ** j * math.comb(bi, j) if j <= bi else 0
        inv = [0] * (order + 1)
        for k in range(0, order // i + 1):
            inv[i * k] = math.comb(bi + k - 1, k)
        mixed = _poly_mul(factor, inv, order)
        coeffs = _poly_mul(coeffs, mixed, order)
    return SeriesExpansion(tuple(coeffs))


def _poly_mul(a: list[int], b: list[int], order: int) -> list[int]:
    out = [0] * (order + 1)
    for i, ai in enumerate(a):
        if ai == 0 or i > order:
            continue
        for j, bj in enumerate(b):
            if j > order - i:
                break
            if bj:
                out[i + j] += ai * bj
    return out


def power_sum_check(params: GSGroupParams, m: int, ranks: ZassenhausRanks) -> bool:
    """Cross-check s_m = sum_{i|m} i*b_i, valid only for m coprime to p."""
    if not params.quadratic:
        raise InapplicableError("power-sum identity requires quadratic relations")
    if m % params.p == 0:
        raise InapplicableError(f"identity needs m coprime to p; got m = {m}, p = {params.p}")
    if m > len(ranks.b):
        raise DomainError(f"ranks computed only to order {len(ranks.b)}")
    s = power_sums(params.d, params.r, m)
    rhs = sum(i * ranks.rank(i) for i in _divisors(m))
    return s[m] == rhs


def b_power_of_two(params: GSGroupParams, n: int) -> int:
    """Exact b_{2^n} for odd p via (s_{2^n} - s_{2^(n-1)}) / 2^n."""
    if params.p == 2:
        raise InapplicableError("the power-of-two shortcut needs 2 coprime to p")
    if not params.quadratic:
        raise InapplicableError("requires quadratic relations")
    if n < 1:
        raise DomainError("n must be >= 1")
    s = power_sums(params.d, params.r, 2**n)
    num = s[2**n] - s[2 ** (n - 1)]
    if num % 2**n != 0:
        raise SeriesError(f"b_(2^{n}) is not integral")
    return num // 2**n


def index_log(ranks: ZassenhausRanks, n: int) -> int:
    """log_p of the index of the 2^n-th filtration step: sum of b_i, i < 2^n."""
    if n < 0:
        raise DomainError("n must be nonnegative")
    top = 2**n - 1
    if top > len(ranks.b):
        raise DomainError(f"need ranks to order {top}, have {len(ranks.b)}")
    return sum(ranks.b[: top])


def window_rank(ranks: ZassenhausRanks, n: int) -> int:
    """Rank of the 2^n-th step modulo the next: sum of b_i over [2^n, 2^(n+1))."""
    top = 2 ** (n + 1) - 1
    if top > len(ranks.b):
        raise DomainError(f"need ranks to order {top}, have {len(ranks.b)}")
    return sum(ranks.b[2**n - 1 : top])


@dataclass(frozen=True)
class WitnessRow:
    """One row of the growth-witness scan.

    In the "exact" regime index_log, window_rank and rhs are the literal
    quantities.  In the "float-log" regime the same three fields carry
    natural logarithms (the raw values overflow floats); the comparison is
    order-preserving so `satisfied` means the same thing in both regimes.
    """

    n: int
    index_log: float
    window_rank: float
    rhs: float
    satisfied: bool
    regime: str

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "index_log": self.index_log,
            "window_rank": self.window_rank,
            "rhs": self.rhs,
            "satisfied": self.satisfied,
            "regime": self.regime,
        }


def _float_log_ranks(params: GSGroupParams, lo: int, hi: int) -> float:
    """log of sum(b_i, lo <= i < hi) in the float regime (quadratic case).

    Uses b_i ~ V_i/i with V from the dominant-root expansion; the Moebius
    corrections are exponentially small and folded in via log1p where they
    are representable, giving relative error well under 1e-6 for i >= 32.
    """
    d, r, p = params.d, params.r, params.p
    disc = d * d - 4 * r
    if disc < 0:
        raise InapplicableError("float regime needs real roots (d^2 >= 4r)")
    alpha = (d + math.sqrt(disc)) / 2.0
    beta = (d - math.sqrt(disc)) / 2.0
    if alpha <= 1.0:
        raise InapplicableError("dominant root must exceed 1")
    log_alpha = math.log(alpha)

    def log_s(m: int) -> float:
        # log(alpha^m + beta^m), beta possibly below 1
        base = m * log_alpha
        if beta > 0:
            ratio = m * (math.log(beta) - log_alpha)
            if ratio > -700:
                return base + math.log1p(math.exp(ratio))
        return base

    def log_V(m: int) -> float:
        out = log_s(m)
        if m % p == 0 and (m - m // p) * log_alpha < 750:
            mm = m
            scale = 1.0
            while mm % p == 0:
                mm //= p
                scale *= p
                delta = log_s(mm) + math.log(scale) - out
                if delta > -700:
                    out += math.log1p(math.exp(delta))
        return out

    terms = []
    for i in range(lo, hi):
        lv = log_V(i)
        corr = 0.0
        # the Moebius corrections V_{i/e} shrink like alpha^(-i/2); skip the
        # divisor scan entirely once they cannot reach float underflow range
        if (i - i // 2) * log_alpha < 750:
            for e in _divisors(i):
                if e == 1:
                    continue
                mu = _moebius(e)
                if mu == 0:
                    continue
                delta = log_V(i // e) - lv
                if delta > -700:
                    corr += mu * math.exp(delta)
        terms.append(lv + math.log1p(max(corr, -0.999999)) - math.log(i))
    peak = max(terms)
    return peak + math.log(sum(math.exp(t - peak) for t in terms))


def theo2_witnesses(
    params: GSGroupParams, epsilon: float, n_max: int, exact_limit: int = EXACT_ORDER_LIMIT
) -> list[WitnessRow]:
    """Scan n = 1..n_max for window_rank(n) >= index_log(n)^(2 - epsilon).

    The underlying growth theorem guarantees infinitely many such n for
    non-analytic groups of this type; the scan records which small n witness
    it.  Rows with 2^(n+1) - 1 <= exact_limit are exact; beyond that the
    quantities switch to the log-domain float regime and the row is marked.
    """
    if not 0 < epsilon < 1:
        raise DomainError("epsilon must be in (0, 1)")
    rows: list[WitnessRow] = []
    exact_top = min(2 ** (n_max + 1) - 1, exact_limit)
    ranks = None
    if exact_top >= 1 and params.quadratic:
        s = power_sums(params.d, params.r, exact_top)
        V = [0] * (exact_top + 1)
        for m in range(1, exact_top + 1):
            V[m] = s[m] + (params.p * V[m // params.p] if m % params.p == 0 else 0)
        b = []
        for i in range(1, exact_top + 1):
            acc = sum(
                _moebius(e) * V[i // e] for e in _divisors(i) if _moebius(e)
            )
            if acc % i != 0 or acc < 0:
                raise SeriesError(f"rank b_{i} not realizable")
            b.append(acc // i)
        ranks = ZassenhausRanks(p=params.p, b=tuple(b))
    elif exact_top >= 1:
        series = gs_series(params, exact_top)
        ranks = zassenhaus_ranks(series, params.p, exact_top)

    for n in range(1, n_max + 1):
        if 2 ** (n + 1) - 1 <= exact_limit and ranks is not None:
            il = index_log(ranks, n)
            wr = window_rank(ranks, n)
            try:
                rhs = float(il) ** (2 - epsilon) if il > 0 else 0.0
                rows.append(
                    WitnessRow(
                        n=n,
                        index_log=float(il),
                        window_rank=float(wr),
                        rhs=rhs,
                        satisfied=float(wr) >= rhs,
                        regime="exact",
                    )
                )
            except OverflowError:
                # the ranks are exact but too large for raw floats: report the
                # row in the log domain (math.log is exact-input on big ints)
                log_il = math.log(il)
                log_wr = math.log(wr) if wr > 0 else float("-inf")
                log_rhs = (2 - epsilon) * log_il
                rows.append(
                    WitnessRow(
                        n=n,
                        index_log=log_il,
                        window_rank=log_wr,
                        rhs=log_rhs,
                        satisfied=log_wr >= log_rhs,
                        regime="float-log",
                    )
                )
        else:
            log_il = _float_log_ranks(params, 1, 2**n)
            log_wr = _float_log_ranks(params, 2**n, 2 ** (n + 1))
            log_rhs = (2 - epsilon) * log_il
            rows.append(
                WitnessRow(
                    n=n,
                    index_log=log_il,
                    window_rank=log_wr,
                    rhs=log_rhs,
                    satisfied=log_wr >= log_rhs,
                    regime="float-log",
                )
            )
    return rows


def uniform_lower(d: int, n: int) -> tuple[int, int]:
    """Mean-exponent lower bound along the p-central series of a uniform
    group of dimension d: the n-th step has mean exponent >= n, at index
    log_p = d*n.  Returns (bound, index_log)."""
    if d < 1 or n < 1:
        raise DomainError("need d >= 1 and n >= 1")
    return n, d * n


def prop_theo1_bound(c_kst: float, index: int) -> float:
    """Linear-in-index mean-exponent bound C * [G:U]."""
    if c_kst <= 0:
        raise DomainError("the constant must be positive")
    if index < 1:
        raise DomainError("index must be >= 1")
    return c_kst * index
