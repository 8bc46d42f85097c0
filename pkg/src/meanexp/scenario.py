"""Scenario files: schema, derivations, pins, and the full report pipeline.

A scenario file describes one tower construction: the base field, the set T
of rational primes whose places split completely in the tower, the fixed
density data, and any values pinned to reproduce a published computation.
Pins always win over derived values, but the report records both so every
deviation is visible.  Reports are plain dicts with deterministic key order;
serializing them with sorted keys is byte-stable across runs.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from typing import Any

from .arith import PrimePower, is_prime, sieve_primes, tame_local_sum
from .errors import (
    DomainError,
    NeedsLargerEnumerationError,
    SchemaError,
)
from .fields import FieldDescriptor, field_from_spec, quadratic_field
from . import tv
from .towers import GSVerdict, critere_real_quadratic, genus_rank_bound, gs_verdict

SCHEMA_VERSION = 1
REPORT_VERSION = 1

_MAX_NORM_BOUND = 2_000_000


def _expect(cond: bool, message: str, location: str) -> None:
    if not cond:
        raise SchemaError(message, location=location)


def _as_int_list(value, location: str) -> list[int]:
    _expect(isinstance(value, list), "expected a list", location)
    for i, v in enumerate(value):
        _expect(isinstance(v, int) and not isinstance(v, bool), "expected integers", f"{location}[{i}]")
    return list(value)


@dataclass(frozen=True)
class CandidateInfo:
    """A greedy candidate plus the bookkeeping the report needs."""

    prime: int
    norm: int
    weight_num: float  # in genus units
    kind: str  # split_full | ram_split | inert_sq | total_ram | override | shifted
    pinned: bool = False


@dataclass
class Scenario:
    label: str
    p: int
    field: FieldDescriptor
    base_quadratic: FieldDescriptor | None
    g_override: float | None
    t_dec: list[int]
    t_inert: list[int]
    epsilon_linear: float | None
    coarse_B: float | None
    alpha_signature: tuple[int, int] | None
    C0: float | None
    x0_num: float
    x1_num: float
    sigma_fixed_pin: list[tuple[int, float]] | None
    eps_caps: dict[int, float]
    splitting_overrides: dict[int, str]
    capacity_overrides: dict[int, tuple[int, float]]
    excluded: set[int]
    b_deduction_nums: tuple[float, float] | None
    norm_bound: int
    s_norms: list[int]
    ray_sigma_norms: list[int]
    ray_sigma_split: bool
    published_reference: dict

    @property
    def genus(self) -> float:
        if self.g_override is not None:
            return self.g_override
        return self.field.genus()


def parse_scenario(data: dict) -> Scenario:
    """Validate a scenario dict; SchemaError carries the offending field."""
    _expect(isinstance(data, dict), "scenario must be an object", "$")
    version = data.get("version")
    _expect(version == SCHEMA_VERSION, f"unsupported version {version!r}", "version")
    label = data.get("label", "")
    _expect(isinstance(label, str), "label must be a string", "label")
    p = data.get("p")
    _expect(isinstance(p, int) and is_prime(p), "p must be a prime integer", "p")

    fspec = data.get("field")
    _expect(isinstance(fspec, dict), "field must be an object", "field")
    try:
        field = field_from_spec(fspec, label=label)
    except (DomainError, KeyError) as exc:
        raise SchemaError(f"bad field spec: {exc}", location="field") from exc

    base = None
    if field.degree == 4:
        base = quadratic_field(fspec["d1_factors"], label=f"{label}:base")
    elif field.degree == 2:
        base = field

    g_override = data.get("g_override")
    if g_override is not None:
        _expect(isinstance(g_override, (int, float)), "g_override must be numeric", "g_override")
        g_override = float(g_override)

    tsec = data.get("T", {"dec": [], "inert": []})
    _expect(isinstance(tsec, dict), "T must be an object", "T")
    t_dec = _as_int_list(tsec.get("dec", []), "T.dec")
    t_inert = _as_int_list(tsec.get("inert", []), "T.inert")
    for loc, primes in (("T.dec", t_dec), ("T.inert", t_inert)):
        for ell in primes:
            _expect(is_prime(ell), f"{ell} is not prime", loc)
    _expect(not set(t_dec) & set(t_inert), "T.dec and T.inert overlap", "T")

    eps_lin = data.get("epsilon_linear")
    if eps_lin is not None:
        _expect(isinstance(eps_lin, (int, float)) and eps_lin > 0, "must be positive", "epsilon_linear")
        eps_lin = float(eps_lin)

    coarse_B = data.get("coarse_B")
    if coarse_B is not None:
        _expect(isinstance(coarse_B, (int, float)), "coarse_B must be numeric", "coarse_B")
        coarse_B = float(coarse_B)

    alpha_sig = data.get("alpha_signature")
    if alpha_sig is not None:
        sig = _as_int_list(alpha_sig, "alpha_signature")
        _expect(len(sig) == 2 and min(sig) >= 0, "expected [r1, r2]", "alpha_signature")
        alpha_sig = (sig[0], sig[1])

    C0 = data.get("C0")
    if C0 is not None:
        _expect(isinstance(C0, (int, float)) and C0 > 0, "C0 must be positive", "C0")
        C0 = float(C0)

    tvsec = data.get("tv", {})
    _expect(isinstance(tvsec, dict), "tv must be an object", "tv")
    x0_num = tvsec.get("x0_num", 0)
    x1_num = tvsec.get("x1_num", 0)
    for name, val in (("x0_num", x0_num), ("x1_num", x1_num)):
        _expect(isinstance(val, (int, float)) and val >= 0, "must be nonnegative", f"tv.{name}")

    sigma_pin = None
    if "sigma_fixed" in tvsec:
        sigma_pin = []
        _expect(isinstance(tvsec["sigma_fixed"], list), "expected a list", "tv.sigma_fixed")
        for i, entry in enumerate(tvsec["sigma_fixed"]):
            loc = f"tv.sigma_fixed[{i}]"
            _expect(isinstance(entry, dict) and "q" in entry and "num" in entry, "need q and num", loc)
            _expect(isinstance(entry["q"], int) and entry["q"] >= 2, "q must be an integer >= 2", loc)
            _expect(isinstance(entry["num"], (int, float)) and entry["num"] >= 0, "bad num", loc)
            sigma_pin.append((entry["q"], float(entry["num"])))

    eps_caps = {}
    for i, entry in enumerate(tvsec.get("eps_caps", [])):
        loc = f"tv.eps_caps[{i}]"
        _expect(isinstance(entry, dict) and "prime" in entry and "eps_num" in entry, "need prime and eps_num", loc)
        _expect(is_prime(entry["prime"]), "prime required", loc)
        eps_caps[entry["prime"]] = float(entry["eps_num"])

    overrides = {}
    raw_overrides = tvsec.get("splitting_overrides", {})
    _expect(isinstance(raw_overrides, dict), "expected an object", "tv.splitting_overrides")
    for key, val in raw_overrides.items():
        loc = f"tv.splitting_overrides.{key}"
        try:
            ell = int(key)
        except ValueError:
            raise SchemaError("keys must be primes", location=loc) from None
        _expect(is_prime(ell), "keys must be primes", loc)
        _expect(val in ("split", "inert"), "values must be 'split' or 'inert'", loc)
        overrides[ell] = val

    cap_overrides = {}
    for i, entry in enumerate(tvsec.get("capacity_overrides", [])):
        loc = f"tv.capacity_overrides[{i}]"
        _expect(
            isinstance(entry, dict) and {"prime", "norm", "weight_num"} <= set(entry),
            "need prime, norm, weight_num",
            loc,
        )
        _expect(is_prime(entry["prime"]), "prime required", loc)
        cap_overrides[entry["prime"]] = (int(entry["norm"]), float(entry["weight_num"]))

    excluded = set(_as_int_list(tvsec.get("excluded", []), "tv.excluded"))

    b_ded = tvsec.get("b_deduction_nums")
    if b_ded is not None:
        vals = b_ded
        _expect(isinstance(vals, list) and len(vals) == 2, "expected [x0_num, x1_num]", "tv.b_deduction_nums")
        b_ded = (float(vals[0]), float(vals[1]))

    norm_bound = tvsec.get("norm_bound", 1000)
    _expect(isinstance(norm_bound, int) and norm_bound >= 2, "norm_bound must be >= 2", "tv.norm_bound")

    s_norms = _as_int_list(data.get("S_norms", []), "S_norms")
    ray = data.get("ray_sigma", {})
    _expect(isinstance(ray, dict), "ray_sigma must be an object", "ray_sigma")
    ray_norms = _as_int_list(ray.get("norms", []), "ray_sigma.norms")
    ray_split = bool(ray.get("split_completely", False))

    published_reference = data.get("published_reference", {})
    _expect(isinstance(published_reference, dict), "published_reference must be an object", "published_reference")

    return Scenario(
        label=label,
        p=p,
        field=field,
        base_quadratic=base,
        g_override=g_override,
        t_dec=t_dec,
        t_inert=t_inert,
        epsilon_linear=eps_lin,
        coarse_B=coarse_B,
        alpha_signature=alpha_sig,
        C0=C0,
        x0_num=float(x0_num),
        x1_num=float(x1_num),
        sigma_fixed_pin=sigma_pin,
        eps_caps=eps_caps,
        splitting_overrides=overrides,
        capacity_overrides=cap_overrides,
        excluded=excluded,
        b_deduction_nums=b_ded,
        norm_bound=norm_bound,
        s_norms=s_norms,
        ray_sigma_norms=ray_norms,
        ray_sigma_split=ray_split,
        published_reference=published_reference,
    )


def load_scenario(path) -> Scenario:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            data = json.load(fh)
    except OSError as exc:
        raise SchemaError(f"cannot read scenario: {exc}", location=str(path)) from exc
    except json.JSONDecodeError as exc:
        raise SchemaError(f"invalid JSON: {exc.msg}", location=f"{path}:line {exc.lineno}") from exc
    return parse_scenario(data)


def _derived_sigma_fixed(sc: Scenario) -> list[tuple[int, int, str]]:
    """(norm, count, source) fixed entries derived from the T declaration."""
    out = []
    for ell in sorted(sc.t_dec):
        out.append((ell, 2, "T.dec"))
    for ell in sorted(sc.t_inert):
        out.append((ell * ell, 1, "T.inert"))
    return out


def _candidate_for_prime(sc: Scenario, ell: int, cap_num: float) -> CandidateInfo | None:
    """Cheapest admissible norm for one prime, honoring pins and exclusions."""
    from .fields import norms_above

    if ell in sc.capacity_overrides:
        norm, weight = sc.capacity_overrides[ell]
        return CandidateInfo(prime=ell, norm=norm, weight_num=weight, kind="override", pinned=True)

    discs = sc.field.subfield_discs
    pinned = ell in sc.splitting_overrides
    if sc.field.degree == 4 and pinned:
        ram = [D % ell == 0 for D in discs]
        n_ram = sum(ram)
        forced_split = sc.splitting_overrides[ell] == "split"
        if n_ram == 0:
            places = [(ell, 4)] if forced_split else [(ell * ell, 2)]
        elif n_ram == 2:
            places = [(ell, 2)] if forced_split else [(ell * ell, 1)]
        else:
            places = [(ell, 1)]
    else:
        places = norms_above(sc.field, ell)

    norm, count = places[0]
    m = round(math.log(norm, ell))
    eps = sc.eps_caps.get(ell, 0.0)
    shifted = False
    if norm in sc.excluded:
        # density forced to zero at the cheapest norm: the prime re-enters one
        # power up, where each original place contributes half a slot
        norm = norm * norm
        m *= 2
        count = count / 2 if count > 1 else count
        shifted = True
        if norm in sc.excluded:
            return None
    weight = min((cap_num - eps) / m, float(count))
    if weight <= 0:
        return None
    if sc.field.degree == 4 and not shifted:
        if count == 4:
            kind = "split_full"
        elif norm == ell and count == 2:
            kind = "ram_split"
        elif count == 1 and norm == ell:
            kind = "total_ram"
        else:
            kind = "inert_sq"
    else:
        kind = "shifted" if shifted else "quadratic"
    return CandidateInfo(prime=ell, norm=norm, weight_num=weight, kind=kind, pinned=pinned)


def build_candidates(sc: Scenario, bound: int) -> list[CandidateInfo]:
    closed = set(sc.t_dec) | set(sc.t_inert)
    cap_num = sc.x0_num + 2 * sc.x1_num
    out = []
    for ell in sieve_primes(bound):
        if ell in closed:
            continue
        cand = _candidate_for_prime(sc, ell, cap_num)
        if cand is not None and cand.norm <= bound:
            out.append(cand)
    out.sort(key=lambda c: c.norm)
    return out


def run_scenario_data(data: dict) -> dict:
    return run_scenario_obj(parse_scenario(data))


def run_scenario(path) -> dict:
    return run_scenario_obj(load_scenario(path))


def run_scenario_obj(sc: Scenario) -> dict:
    g = sc.genus
    field = sc.field

    # --- T declaration vs derived splitting in the real quadratic subfield
    t_checks = []
    if sc.base_quadratic is not None and field.degree == 4:
        from .fields import SplitType, splitting_type

        declared_pairs = [(q, "split") for q in sc.t_dec] + [(q, "inert") for q in sc.t_inert]
        for ell, declared in declared_pairs:
            st = splitting_type(sc.base_quadratic, ell)
            derived = {SplitType.SPLIT: "split", SplitType.INERT: "inert", SplitType.RAMIFIED: "ramified"}[st]
            t_checks.append({"prime": ell, "declared": declared, "derived": derived, "agree": declared == derived})

    # --- infinitude criterion over the real quadratic subfield
    critere_block = None
    if sc.base_quadratic is not None:
        ram = set(sc.base_quadratic.ramified_primes())
        tset = set(sc.t_dec) | set(sc.t_inert)
        rho = len(ram - tset)
        t_rational = len(sc.t_dec) + len(sc.t_inert)
        t_places = 2 * len(sc.t_dec) + len(sc.t_inert)
        critere_block = {
            "rho": rho,
            "t_dec": len(sc.t_dec),
            "t_rational": t_rational,
            "t_places": t_places,
            "satisfied_rational_count": critere_real_quadratic(rho, len(sc.t_dec), t_rational),
            "satisfied_place_count": critere_real_quadratic(rho, len(sc.t_dec), t_places),
        }

    # --- generator/relation verdict for the top field's own tower, from
    # level-0 genus data: the rank lower bound also caps the relation rank
    # via the Euler characteristic, and a large enough rank forces infinitude
    gs_block = None
    if sc.base_quadratic is not None and field.degree == 4:
        t_places0 = 2 * len(sc.t_dec) + len(sc.t_inert)
        arch0 = sc.base_quadratic.r1 if field.r2 > 0 else 0
        rho0 = t_places0 + arch0
        d_lower = genus_rank_bound(rho0, sc.base_quadratic.r1, sc.base_quadratic.r2, 1)
        gs_block = {"rho": rho0, "d_lower": d_lower}
        if d_lower >= 1:
            correction = field.r1 + field.r2 - 1 + field.delta(sc.p)
            r_upper = d_lower + correction
            gs_block["r_upper_at_d_lower"] = r_upper
            gs_block["verdict"] = gs_verdict(d_lower, r_upper).value
        else:
            gs_block["verdict"] = GSVerdict.INCONCLUSIVE.value

    # --- linear rank growth rate
    arch_ram = 2 if field.r2 > 0 else 0
    t_places = 2 * len(sc.t_dec) + len(sc.t_inert)
    eps_derived = t_places + arch_ram - 2 if (sc.t_dec or sc.t_inert) else None
    eps_used = sc.epsilon_linear if sc.epsilon_linear is not None else eps_derived
    epsilon_block = {
        "derived": eps_derived,
        "pinned": sc.epsilon_linear,
        "used": eps_used,
    }

    # --- fixed density set Sigma
    derived_sigma = _derived_sigma_fixed(sc)
    derived_pairs = [(q, float(num)) for q, num, _src in derived_sigma]
    if sc.sigma_fixed_pin is not None:
        sigma_pairs = sc.sigma_fixed_pin
        sigma_matches = sorted(sigma_pairs) == sorted(derived_pairs)
    else:
        sigma_pairs = derived_pairs
        sigma_matches = True

    problem = tv.TVProblem(
        x0=sc.x0_num / g,
        x1=sc.x1_num / g,
        fixed=tuple((PrimePower.from_value(q), num / g) for q, num in sigma_pairs),
        excluded=frozenset(sc.excluded),
    )

    # --- candidates and the greedy fill, growing the enumeration as needed
    bound = sc.norm_bound
    while True:
        infos = build_candidates(sc, bound)
        candidates = [
            tv.Candidate(norm=PrimePower.from_value(ci.norm), weight=ci.weight_num / g)
            for ci in infos
        ]
        b_ded = None
        if sc.b_deduction_nums is not None:
            b_ded = (sc.b_deduction_nums[0] / g, sc.b_deduction_nums[1] / g)
        try:
            solution = tv.optimize(problem, candidates, b_deduction=b_ded)
            break
        except NeedsLargerEnumerationError:
            if bound >= _MAX_NORM_BOUND:
                raise
            bound = min(bound * 2, _MAX_NORM_BOUND)

    info_by_norm = {ci.norm: ci for ci in infos}
    prefix_infos = [info_by_norm[q.value] for q, _w in solution.prefix]
    lstar0 = solution.ell_star_0.value if solution.ell_star_0 is not None else None
    split_below = sum(1 for ci in prefix_infos if ci.kind == "split_full")
    # budget left once everything except the totally split candidates is paid
    # for -- the published computations quote this intermediate
    nonsplit_cost = sum(
        (ci.weight_num / g) * tv.a_coeff(PrimePower.from_value(ci.norm))
        for ci in prefix_infos
        if ci.kind != "split_full"
    )
    budget_after_nonsplit = (solution.budget - nonsplit_cost) * g

    # honest-assembly B alongside the (possibly pinned) headline value
    B_derived = 1.0 + solution.sum_b_bound - problem.x0 * tv.B0_REAL - problem.x1 * tv.B1_COMPLEX

    # --- assembled mean-exponent bounds
    a_sigma = tame_local_sum(sc.ray_sigma_norms, sc.p, split_completely=sc.ray_sigma_split)
    log_sqrt_disc_ks = g + 0.5 * sum(math.log(q) for q in sc.s_norms)
    alpha_sig = sc.alpha_signature if sc.alpha_signature is not None else (field.r1, field.r2)

    bounds_block: dict[str, Any] = {}
    if sc.coarse_B is not None and eps_used:
        alpha_c = tv.alpha_constant(sc.coarse_B, log_sqrt_disc_ks, *alpha_sig)
        bounds_block["coarse"] = {
            "B": sc.coarse_B,
            "alpha_constant": alpha_c,
            "bound": tv.mean_exponent_upper(eps_used, sc.p, alpha_c, a_sigma),
        }
    if eps_used:
        alpha_c = tv.alpha_constant(solution.B_upper, log_sqrt_disc_ks, *alpha_sig)
        bounds_block["refined"] = {
            "B": solution.B_upper,
            "alpha_constant": alpha_c,
            "bound": tv.mean_exponent_upper(eps_used, sc.p, alpha_c, a_sigma),
        }
        alpha_cd = tv.alpha_constant(B_derived, log_sqrt_disc_ks, *alpha_sig)
        bounds_block["refined_derived_assembly"] = {
            "B": B_derived,
            "bound": tv.mean_exponent_upper(eps_used, sc.p, alpha_cd, a_sigma),
        }
    if sc.C0 is not None and eps_used:
        t0 = round(eps_used)
        bounds_block["crude_class_number"] = {
            "C0": sc.C0,
            "bound": tv.propmain_upper(sc.C0, max(t0, 1), sc.p, field.log_abs_disc()),
        }

    report = {
        "report_version": REPORT_VERSION,
        "label": sc.label,
        "p": sc.p,
        "field": {
            "degree": field.degree,
            "signature": [field.r1, field.r2],
            "subfield_discs": [str(d) for d in field.subfield_discs],
            "log_abs_disc": field.log_abs_disc(),
            "genus": field.genus(),
            "genus_used": g,
            "genus_source": "override" if sc.g_override is not None else "derived",
            "root_discriminant": field.root_discriminant(),
        },
        "T": {"dec": sorted(sc.t_dec), "inert": sorted(sc.t_inert), "checks": t_checks},
        "criteria": {"real_quadratic_tower": critere_block, "generator_relation": gs_block},
        "epsilon_linear": epsilon_block,
        "tv": {
            "x0_num": sc.x0_num,
            "x1_num": sc.x1_num,
            "budget": solution.budget,
            "budget_scaled": solution.budget * g,
            "budget_after_nonsplit_prefix_scaled": budget_after_nonsplit,
            "ell_star_0": lstar0,
            "alpha": solution.alpha,
            "sum_b_bound": solution.sum_b_bound,
            "sum_b_scaled": solution.sum_b_bound * g,
            "B_upper": solution.B_upper,
            "B_upper_derived_assembly": B_derived,
            "b_deduction_pinned": sc.b_deduction_nums is not None,
            "degenerate": solution.degenerate,
            "split_primes_below_ell_star_0": split_below,
            "norm_bound_used": bound,
            "prefix": [
                {"norm": ci.norm, "prime": ci.prime, "weight_num": ci.weight_num,
                 "kind": ci.kind, "pinned": ci.pinned}
                for ci in prefix_infos
            ],
        },
        "bounds": bounds_block,
        "pinned_inputs": {
            "g_override": sc.g_override,
            "epsilon_linear": sc.epsilon_linear,
            "alpha_signature": list(alpha_sig) if sc.alpha_signature is not None else None,
            "sigma_fixed": (
                [[q, num] for q, num in sc.sigma_fixed_pin] if sc.sigma_fixed_pin is not None else None
            ),
            "sigma_fixed_matches_derived": sigma_matches,
            "eps_caps": {str(k): v for k, v in sorted(sc.eps_caps.items())},
            "splitting_overrides": {str(k): v for k, v in sorted(sc.splitting_overrides.items())},
            "capacity_overrides": {
                str(k): list(v) for k, v in sorted(sc.capacity_overrides.items())
            },
            "excluded": sorted(sc.excluded),
            "b_deduction_nums": list(sc.b_deduction_nums) if sc.b_deduction_nums else None,
        },
        "published_reference": sc.published_reference,
    }
    return report


def dump_report(report: dict, precision: int | None = None) -> str:
    """Deterministic JSON text; identical inputs give identical bytes."""
    if precision is not None:
        report = _round_floats(report, precision)
    return json.dumps(report, sort_keys=True, indent=2)


def _round_floats(obj, precision: int):
    if isinstance(obj, float):
        return round(obj, precision)
    if isinstance(obj, dict):
        return {k: _round_floats(v, precision) for k, v in obj.items()}
    if isinstance(obj, list):
        return [_round_floats(v, precision) for v in obj]
    return obj
