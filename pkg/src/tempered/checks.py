"""Invariant suite run by ``tempered check`` over every preset."""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction as Q
from typing import Callable, List, Tuple

from . import _exact as ex
from .orbits import YES, all_configs, count_open_orbits, orbit_report, parabolic_subset
from .presets import GroupPreset, all_presets
from .realform import (
    cached_weyl_group,
    classify_cartans,
    real_weyl_group,
)
from .rootsys import TorusPoint, alternating_terms, exp_eval, varpi, weyl_denominator
from .series import (
    TRIVIAL,
    SeriesError,
    bott_borel_weil,
    character_at,
    discrete_series_param,
    hseries_param,
    orthogonality_check,
    rho_t,
    varpi_t,
)

TOL = 1e-9


@dataclass(frozen=True)
class CheckResult:
    name: str
    group: str
    passed: bool
    detail: str = ""


def _random_t_weight(cartan, rng: random.Random, span: int = 6):
    """Random t-regular weight in the half-integer lattice with ``tau nu = -nu``."""
    n = cartan.datum.rank
    for _ in range(200):
        raw = tuple(Q(rng.randint(-span, span), 2) for _ in range(n))
        nu = ex.scale(Q(1, 2), ex.sub(raw, cartan.act(raw)))
        if all((2 * x).denominator == 1 for x in nu) and varpi_t(cartan, nu) != 0:
            return nu
    raise SeriesError("no regular parameter found")


def _random_a_weight(cartan, rng: random.Random, span: int = 6):
    n = cartan.datum.rank
    raw = tuple(Q(rng.randint(-span, span), 2) for _ in range(n))
    return ex.scale(Q(1, 2), ex.add(raw, cartan.act(raw)))


def _param(cartan, nu, sigma):
    if cartan.dim_a == 0:
        return discrete_series_param(cartan, nu)
    return hseries_param(cartan, TRIVIAL, nu, sigma)


def _regular_point(cartan, rng: random.Random):
    n = cartan.datum.rank
    while True:
        x = tuple(rng.uniform(0, 4 * math.pi) for _ in range(n))
        y = tuple(rng.uniform(-1, 1) for _ in range(n)) if cartan.dim_a else None
        yield TorusPoint(x), y


def _evaluate(param, pts):
    out = []
    for t, a in pts:
        try:
            out.append(character_at(param, t, a))
        except SeriesError:
            out.append(None)
    return out


def check_classification(g: GroupPreset) -> Tuple[bool, str]:
    keys = sorted(c.key for c in g.cartans)
    for seed in range(3):
        got = sorted(c.key for c in classify_cartans(g.fundamental, seed=seed))
        if got != keys:
            return False, f"seed {seed}: {len(got)} classes vs {len(keys)}"
    return True, f"{len(keys)} classes"


def check_orbit_sweep(g: GroupPreset) -> Tuple[bool, str]:
    bad = 0
    total = 0
    for cartan in g.cartans:
        equal_rank = cartan.dim_a == 0
        for cfg in all_configs(cartan):
            r = orbit_report(cfg)
            total += 1
            eff = cfg.effective
            levi_stable = {eff.act(x) for x in cfg.subset.phi_r} == set(cfg.subset.phi_r)
            ok = (r.codim == 0) == r.is_open
            ok &= not equal_rank or r.is_measurable == YES
            ok &= r.is_measurable != YES or (r.is_partially_complex == YES and r.is_flag_type == YES)
            ok &= not levi_stable or ((r.is_measurable == YES) == r.is_integrable)
            bad += not ok
    return bad == 0, f"{bad} violations in {total} configs"


def check_open_counts(g: GroupPreset) -> Tuple[bool, str]:
    """Double cosets against a direct orbit-of-sets enumeration."""
    for cartan in g.cartans:
        if cartan.dim_a:
            continue
        wg = cartan.weyl
        datum = cartan.datum
        compact = _generated(cartan, cartan.compact_roots)
        for mask in range(1 << datum.rank):
            subset = parabolic_subset(datum, [i for i in range(datum.rank) if mask >> i & 1])
            right = _generated(cartan, [datum.simple_roots[i] for i in subset.phi])
            cosets = {
                frozenset(wg.compose(wg.compose(a, k), b) for a in compact for b in right)
                for k in range(wg.order)
            }
            if len(cosets) != count_open_orbits(cartan, subset):
                return False, f"mismatch on {cartan.label} flag {subset.label or '-'}"
    return True, ""


def _generated(cartan, roots) -> List[int]:
    """Subgroup generated by the reflections in ``roots``, by closure."""
    wg = cartan.weyl
    datum = cartan.datum
    gens = [wg.index(datum.reflection_matrix(r)) for r in roots]
    group = {wg.index(ex.identity(datum.rank))}
    frontier = list(group)
    while frontier:
        k = frontier.pop()
        for s in gens:
            m = wg.compose(k, s)
            if m not in group:
                group.add(m)
                frontier.append(m)
    return sorted(group)


def check_bbw(g: GroupPreset) -> Tuple[bool, str]:
    cartan = g.fundamental
    n = cartan.datum.rank
    datum = cartan.datum
    size = len(cartan.positive_imaginary)
    for coords in _grid(n, range(-4, 5)):
        beta = tuple(Q(c, 2) for c in coords)
        if cartan.act(beta) != ex.neg(beta):
            continue
        if any(datum.coroot_pairing(beta, a).denominator != 1 for a in cartan.positive_imaginary):
            continue
        res = bott_borel_weil(cartan, (), beta)
        singular = varpi_t(cartan, ex.add(beta, rho_t(cartan))) == 0
        if res.vanishes != singular:
            return False, f"vanishing mismatch at {beta}"
        if not res.vanishes and not 0 <= res.q0 <= size:
            return False, f"degree out of range at {beta}"
    return True, ""


def _grid(n, values):
    if n == 0:
        yield ()
        return
    for head in values:
        for tail in _grid(n - 1, values):
            yield (head,) + tail


def check_characters(g: GroupPreset, rng: random.Random) -> Tuple[bool, str]:
    """Weyl invariance, Casimir recomputation and formal-degree invariance."""
    for cartan in g.cartans:
        wg = cartan.weyl
        datum = cartan.datum
        gen = _regular_point(cartan, rng)
        pts = [next(gen) for _ in range(10)]
        for _ in range(3):
            nu = _random_t_weight(cartan, rng)
            sigma = _random_a_weight(cartan, rng)
            base = _param(cartan, nu, sigma)
            cas = datum.pair(nu, nu) + datum.pair(sigma, sigma) - datum.pair(datum.rho, datum.rho)
            if base.casimir != cas:
                return False, f"casimir mismatch on {cartan.label}"
            ref = _evaluate(base, pts)
            for u in real_weyl_group(cartan):
                other = _param(cartan, wg.act(u, nu), wg.act(u, sigma))
                for v0, v1 in zip(ref, _evaluate(other, pts)):
                    if v0 is not None and v1 is not None and abs(v0 - v1) > TOL:
                        return False, f"not W-invariant on {cartan.label}"
            if cartan.dim_a == 0:
                for k in range(wg.order):
                    if abs(varpi(datum, wg.act(k, nu))) != abs(varpi(datum, nu)):
                        return False, "formal degree not W-invariant"
    return True, ""


def check_euler(g: GroupPreset, rng: random.Random) -> Tuple[bool, str]:
    """Euler characteristic of the cohomology against the Weyl character.

    The unsigned alternating sum at ``beta + rho`` over the denominator must
    equal ``(-1)^q0`` times the character of the surviving module.
    """
    cartan = g.fundamental
    if cartan.dim_a or cartan.noncompact_roots:
        return True, "skipped (M not compact)"
    datum = cartan.datum
    wg = cartan.weyl
    gen = _regular_point(cartan, rng)
    pts = [next(gen) for _ in range(20)]
    for m in range(-6, 7):
        beta = tuple(Q(m, 2) for _ in range(datum.rank))
        res = bott_borel_weil(cartan, (), beta)
        if res.vanishes:
            continue
        lam = ex.add(beta, rho_t(cartan))
        module = discrete_series_param(cartan, res.nu)
        for (t, _), v1 in zip(pts, _evaluate(module, pts)):
            den = weyl_denominator(datum, t)
            if v1 is None or abs(den) <= TOL:
                continue
            euler = exp_eval(datum, alternating_terms(wg, lam), t) / den
            if abs(euler - (-1) ** res.q0 * v1) > TOL:
                return False, f"euler identity fails at beta={beta}"
    return True, ""


def check_disjointness(g: GroupPreset, rng: random.Random) -> Tuple[bool, str]:
    if len(g.cartans) < 2:
        return True, "single class"
    wg = cached_weyl_group(g.datum)
    for _ in range(100):
        c1, c2 = rng.sample(list(g.cartans), 2)
        p1 = (_random_t_weight(c1, rng), _random_a_weight(c1, rng))
        p2 = (_random_t_weight(c2, rng), _random_a_weight(c2, rng))
        o1 = {(wg.act(k, p1[0]), wg.act(k, p1[1])) for k in range(wg.order)}
        if (p2[0], p2[1]) in o1:
            return False, f"orbits meet for {c1.label}/{c2.label}"
    return True, ""


def check_orthogonality(g: GroupPreset, n: int = 4096) -> Tuple[bool, str]:
    if g.datum.rank != 1 or g.fundamental.noncompact_roots:
        return True, "skipped (rank-one compact only)"
    lams = [(Q(m + 1, 2),) for m in range(5)]
    for i, a in enumerate(lams):
        for j, b in enumerate(lams):
            v = orthogonality_check(g.datum, a, b, n)
            if abs(v - (1 if i == j else 0)) > 1e-6:
                return False, f"gram entry ({i},{j}) = {v}"
    return True, ""


CHECKS: List[Tuple[str, Callable]] = [
    ("classification", lambda g, rng, n: check_classification(g)),
    ("orbit-sweep", lambda g, rng, n: check_orbit_sweep(g)),
    ("open-counts", lambda g, rng, n: check_open_counts(g)),
    ("bbw", lambda g, rng, n: check_bbw(g)),
    ("characters", lambda g, rng, n: check_characters(g, rng)),
    ("euler", lambda g, rng, n: check_euler(g, rng)),
    ("disjointness", lambda g, rng, n: check_disjointness(g, rng)),
    ("orthogonality", lambda g, rng, n: check_orthogonality(g, n)),
]


def run_checks(seed: int = 0, quadrature: int = 4096) -> List[CheckResult]:
    rng = random.Random(seed)
    results = []
    for g in all_presets():
        for name, fn in CHECKS:
            try:
                ok, detail = fn(g, rng, quadrature)
            except (ValueError, KeyError) as exc:
                ok, detail = False, str(exc)
            results.append(CheckResult(name, g.id, ok, detail))
    return results
