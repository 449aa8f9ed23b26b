"""Tempered series: parameters, characters on the Cartan, BBW and realization.

Parameters ``nu`` (on t) and ``sigma`` (on a) are weights in simple-root
coordinates with ``tau nu = -nu`` and ``tau sigma = sigma``.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from fractions import Fraction as Q
from typing import Iterable, List, Optional, Sequence, Tuple, Union

import numpy as np

from . import _exact as ex
from ._exact import Vector
from .orbits import OrbitConfig
from .realform import (
    COMPACT,
    NONCOMPACT,
    CartanClass,
    cached_weyl_group,
    compact_weyl_group,
    imaginary_weyl_group,
    merge_positive_systems,
    real_weyl_group,
    restricted_roots,
    simple_system,
)
from .rootsys import RootDatum, TorusPoint, alternating_terms, dominant_conjugate, exp_eval, weight

SINGULAR_GUARD = 1e-9

RELATIVE_DISCRETE = "relative-discrete"
PRINCIPAL = "principal"
INTERMEDIATE = "intermediate"


class SeriesError(ValueError):
    pass


@dataclass(frozen=True)
class ScalarChi:
    """One-dimensional character of the component group, kept as a label.

    ``value`` is its trace at the component of the evaluation point; for
    points of the identity component it is 1.
    """

    label: str = "trivial"
    value: complex = 1 + 0j


TRIVIAL = ScalarChi()


@dataclass(frozen=True)
class SeriesParam:
    cartan: CartanClass
    chi: ScalarChi
    nu: Vector
    sigma: Vector
    series_kind: str
    casimir: Q
    formal_degree: Optional[Q] = None
    irreducible_hint: bool = True


@dataclass(frozen=True)
class BBWResult:
    vanishes: bool
    q0: Optional[int] = None
    nu: Optional[Vector] = None
    dimension: Optional[Q] = None
    chi: ScalarChi = TRIVIAL


@dataclass(frozen=True)
class RealizationResult:
    vanishes: bool
    degree: Optional[int]
    param: Optional[SeriesParam]
    euler_sign: Optional[int]
    nu_plus_rho: Vector


def _half_sum(roots: Iterable[Vector], n: int) -> Vector:
    total = ex.zero(n)
    for r in roots:
        total = ex.add(total, r)
    return ex.scale(Q(1, 2), total)


def rho_t(cartan: CartanClass) -> Vector:
    return _half_sum(cartan.positive_imaginary, cartan.datum.rank)


def varpi_t(cartan: CartanClass, nu: Sequence) -> Q:
    nu = weight(nu)
    out = Q(1)
    for phi in cartan.positive_imaginary:
        out *= cartan.datum.pair(phi, nu)
    return out


def in_lattice(v: Sequence[Q]) -> bool:
    """Half-integer simple-root coordinates (the doubled-cover convention)."""
    return all((2 * Q(x)).denominator == 1 for x in v)


def series_kind(cartan: CartanClass) -> str:
    if cartan.dim_a == 0:
        return RELATIVE_DISCRETE
    if not cartan.noncompact_roots:
        return PRINCIPAL
    return INTERMEDIATE


def _graded_count(cartan: CartanClass, lam: Vector) -> int:
    datum = cartan.datum
    q = 0
    for phi in cartan.positive_imaginary:
        p = datum.pair(phi, lam)
        if p == 0:
            raise SeriesError("q(λ) undefined on singular parameter")
        if cartan.grade[phi] == COMPACT and p < 0:
            q += 1
        elif cartan.grade[phi] == NONCOMPACT and p > 0:
            q += 1
    return q


def q_lambda(cartan: CartanClass, lam: Sequence) -> int:
    """Compact positive roots pairing negatively plus noncompact ones pairing positively.

    Counted over the positive imaginary roots, so on a compact Cartan this is
    ``q(lam)`` and in general it is ``q_M(lam)``.
    """
    return _graded_count(cartan, weight(lam))


def _check_t_weight(cartan: CartanClass, v: Vector, what: str) -> None:
    if len(v) != cartan.datum.rank or cartan.act(v) != ex.neg(v):
        raise SeriesError(f"{what} must lie in the t-part (tau v = -v)")


def _sigma_vector(cartan: CartanClass, sigma) -> Vector:
    n = cartan.datum.rank
    if sigma is None or (not isinstance(sigma, str) and len(sigma) == 0) or sigma == "":
        return ex.zero(n)
    s = weight(sigma) if not isinstance(sigma, str) else ex.parse_vector(sigma)
    if len(s) != n or cartan.act(s) != s:
        raise SeriesError("sigma must lie in the a-part (tau sigma = sigma)")
    return s


def _sigma_regular(cartan: CartanClass, sigma: Vector) -> bool:
    datum = cartan.datum
    return all(datum.pair(psi, sigma) != 0 for psi in restricted_roots(cartan).restricted_roots)


def casimir_value(datum: RootDatum, nu: Sequence[Q], sigma: Sequence[Q]) -> Q:
    return datum.pair(nu, nu) + datum.pair(sigma, sigma) - datum.pair(datum.rho, datum.rho)


def discrete_series_param(cartan: CartanClass, lam: Sequence, chi: ScalarChi = TRIVIAL) -> SeriesParam:
    """Relative discrete series at the Harish-Chandra parameter ``lam``.

    Formal degree ``|varpi(lam)|`` (Haar normalization dropped) and Casimir
    value ``|lam|^2 - |rho|^2``.
    """
    lam = weight(lam)
    if cartan.dim_a != 0:
        raise SeriesError("discrete series requires compact Cartan")
    if len(lam) != cartan.datum.rank:
        raise SeriesError("parameter has wrong dimension")
    if not in_lattice(lam):
        raise SeriesError("parameter not in the lattice L")
    degree = varpi_t(cartan, lam)
    if degree == 0:
        raise SeriesError("no discrete series at singular parameter")
    datum = cartan.datum
    zero = ex.zero(datum.rank)
    return SeriesParam(
        cartan, chi, lam, zero, RELATIVE_DISCRETE, casimir_value(datum, lam, zero), abs(degree), True
    )


def hseries_param(cartan: CartanClass, chi: ScalarChi, nu: Sequence, sigma=None) -> SeriesParam:
    nu = weight(nu)
    _check_t_weight(cartan, nu, "nu")
    if not in_lattice(nu) or varpi_t(cartan, nu) == 0:
        raise SeriesError("not an H-series parameter")
    s = _sigma_vector(cartan, sigma)
    datum = cartan.datum
    kind = series_kind(cartan)
    fdeg = abs(varpi_t(cartan, nu)) if kind == RELATIVE_DISCRETE else None
    return SeriesParam(
        cartan, chi, nu, s, kind, casimir_value(datum, nu, s), fdeg, _sigma_regular(cartan, s)
    )


def _split(cartan: CartanClass, lam: Sequence[Q]) -> Tuple[Tuple[float, ...], Tuple[float, ...]]:
    """Float t-part and a-part of a weight."""
    return (
        tuple(float(c) for c in cartan.restrict_t(lam)),
        tuple(float(c) for c in cartan.restrict_a(lam)),
    )


def _numerator_group(cartan: CartanClass, numerator: str) -> Tuple[int, ...]:
    if numerator == "complex":
        return imaginary_weyl_group(cartan)
    if numerator == "compact":
        return compact_weyl_group(cartan)
    raise ValueError("numerator must be 'complex' or 'compact'")


@dataclass(frozen=True)
class _Branch:
    """One ``u`` in ``W(G, H)``: moved numerator terms, denominator half-roots, sigma."""

    terms: Tuple[Tuple[int, Tuple[float, ...]], ...]
    halves: Tuple[Tuple[float, ...], ...]
    sigma: Tuple[float, ...]


@dataclass(frozen=True)
class _Plan:
    """Exact data of a character reduced to floats, reused across points."""

    scale: complex
    branches: Tuple[_Branch, ...]
    g_halves: Tuple[Tuple[Tuple[float, ...], Tuple[float, ...]], ...]
    m_halves: Tuple[Tuple[float, ...], ...]
    stabilizer: int


def _plan(param: SeriesParam, numerator: str, period: float) -> _Plan:
    memo = param.__dict__.setdefault("_plans", {})
    key = (numerator, period)
    if key in memo:
        return memo[key]
    cartan = param.cartan
    datum = cartan.datum
    wg = cartan.weyl
    members = _numerator_group(cartan, numerator)
    sign = -1 if q_lambda(cartan, param.nu) % 2 else 1
    t_pos = cartan.positive_imaginary
    if cartan.dim_a == 0:
        terms = alternating_terms(wg, param.nu, members)
        exp_eval(datum, terms, TorusPoint(ex.zero(datum.rank), period))  # period check only
        units = (wg.index(ex.identity(datum.rank)),)
    else:
        units = real_weyl_group(cartan)
    branches = []
    for u in units:
        moved = tuple(
            (wg.det[k], _split(cartan, wg.act(u, wg.act(k, param.nu)))[0]) for k in members
        )
        halves = tuple(_split(cartan, ex.scale(Q(1, 2), wg.act(u, r)))[0] for r in t_pos)
        branches.append(_Branch(moved, halves, _split(cartan, wg.act(u, param.sigma))[1]))
    g_roots = merge_positive_systems(cartan) if cartan.dim_a else t_pos
    plan = _Plan(
        scale=param.chi.value * sign,
        branches=tuple(branches),
        g_halves=tuple(_split(cartan, ex.scale(Q(1, 2), r)) for r in g_roots),
        m_halves=tuple(_split(cartan, ex.scale(Q(1, 2), r))[0] for r in t_pos),
        stabilizer=len(compact_weyl_group(cartan)),
    )
    memo[key] = plan
    return plan


def _dot(u: Sequence[float], v: Sequence[float]) -> float:
    return sum(a * b for a, b in zip(u, v))


def _imag_denominator(halves, x) -> complex:
    value = 1 + 0j
    for h in halves:
        value *= 2j * math.sin(_dot(h, x))
    return value


def character_at(
    param: SeriesParam,
    t: TorusPoint,
    a: Optional[Sequence[float]] = None,
    *,
    numerator: str = "complex",
) -> complex:
    """Value of the H-series character at ``t * exp(a)`` on its own Cartan.

    On a compact Cartan this is ``(-1)^q(nu) sum det(w) e^{w nu} / Delta``.
    ``numerator`` selects the Weyl group in that alternating sum: the full
    Weyl group of the t-roots (default) or the compact-root subgroup.
    """
    n = param.cartan.datum.rank
    x = t.coords
    y = tuple(0.0 for _ in range(n)) if a is None else tuple(float(v) for v in a)
    if len(x) != n or len(y) != n:
        raise SeriesError("evaluation point has wrong dimension")
    plan = _plan(param, numerator, t.period)

    def psi(branch: _Branch) -> complex:
        den = _imag_denominator(branch.halves, x)
        if abs(den) <= SINGULAR_GUARD:
            raise SeriesError("torus point too close to singular set")
        num = sum(d * cmath.exp(1j * _dot(w, x)) for d, w in branch.terms)
        return num / den

    if param.cartan.dim_a == 0:
        return plan.scale * psi(plan.branches[0])

    delta_g = 1 + 0j
    for ht, ha in plan.g_halves:
        z = complex(_dot(ha, y), _dot(ht, x))
        delta_g *= cmath.exp(z) - cmath.exp(-z)
    delta_m = _imag_denominator(plan.m_halves, x)
    if abs(delta_g) <= SINGULAR_GUARD or abs(delta_m) <= SINGULAR_GUARD:
        raise SeriesError("torus point too close to singular set")
    # Psi(u^-1 h) e^{i sigma}(u^-1 a): every weight is moved by u
    total = sum(psi(b) * cmath.exp(1j * _dot(b.sigma, y)) for b in plan.branches)
    return plan.scale * abs(delta_m) / abs(delta_g) * total / plan.stabilizer


def _span_roots(datum: RootDatum, chosen: Sequence[Vector], pool: Iterable[Vector]) -> List[Vector]:
    if not chosen:
        return []
    base = ex.rank(chosen)
    return [r for r in pool if ex.rank(list(chosen) + [r]) == base]


def _subsystem(system: Union[RootDatum, CartanClass]):
    if isinstance(system, CartanClass):
        return system.datum, tuple(system.positive_imaginary)
    return system, tuple(system.positive_roots)


def _select_simple(simple: Sequence[Vector], phi_t: Iterable) -> List[Vector]:
    chosen = []
    for item in phi_t:
        root = simple[item] if isinstance(item, int) else ex.vec(item)
        if root not in simple:
            raise SeriesError("phi_t must consist of simple roots")
        chosen.append(root)
    return chosen


def _check_highest_weight(datum: RootDatum, beta: Vector, simple, levi_positive) -> None:
    for a in simple:
        if datum.coroot_pairing(beta, a).denominator != 1:
            raise SeriesError("not a highest weight for 𝔲")
    for phi in levi_positive:
        if datum.coroot_pairing(beta, phi) < 0:
            raise SeriesError("not a highest weight for 𝔲")


def bott_borel_weil(
    system: Union[RootDatum, CartanClass],
    phi_t: Iterable = (),
    beta: Sequence = (),
    chi: ScalarChi = TRIVIAL,
) -> BBWResult:
    """Sheaf cohomology of the homogeneous bundle with highest weight ``beta``.

    ``system`` is a compact root datum or a Cartan class (whose imaginary
    roots play the part of the t-roots).  Cohomology vanishes when
    ``beta + rho_t`` is singular; otherwise it sits in the single degree
    ``q0`` and carries the module with highest weight ``nu - rho_t``.
    """
    datum, positive = _subsystem(system)
    simple = simple_system(datum, positive)
    chosen = _select_simple(simple, phi_t)
    beta = weight(beta)
    _check_highest_weight(datum, beta, simple, _span_roots(datum, chosen, positive))
    rho = _half_sum(positive, datum.rank)
    lam = ex.add(beta, rho)
    pairings = [datum.pair(lam, phi) for phi in positive]
    if any(p == 0 for p in pairings):
        return BBWResult(True, chi=chi)
    q0 = sum(1 for p in pairings if p < 0)
    nu, _ = dominant_conjugate(datum, lam, simple)
    dim = Q(1)
    for phi in positive:
        dim *= datum.pair(nu, phi) / datum.pair(rho, phi)
    return BBWResult(False, q0, nu, dim, chi)


def _transport_to(target: CartanClass, source: CartanClass) -> Optional[int]:
    for k in range(source.weyl.order):
        c = source.conjugate(k)
        if c.tau == target.tau and c.grading == target.grading:
            return k
    return None


DISJOINT = "disjoint series"


def equivalence_reason(p1: SeriesParam, p2: SeriesParam) -> Tuple[bool, str]:
    """Equivalence verdict with a short reason.

    Parameters on different Cartan classes are never equivalent: those
    series are disjoint.  Otherwise ``(chi, nu, sigma)`` must agree up to
    the real Weyl group ``W(G, H)``.
    """
    c1, c2 = p1.cartan, p2.cartan
    if c1.key != c2.key:
        return False, DISJOINT
    if p1.chi.label != p2.chi.label:
        return False, "different chi"
    k = _transport_to(c1, c2)
    if k is None:
        return False, DISJOINT
    wg = c1.weyl
    nu2, sigma2 = wg.act(k, p2.nu), wg.act(k, p2.sigma)
    for u in real_weyl_group(c1):
        if wg.act(u, p1.nu) == nu2 and wg.act(u, p1.sigma) == sigma2:
            return True, f"conjugate by {wg.word_label(u)}"
    return False, "not in one W(G,H)-orbit"


def equivalent(p1: SeriesParam, p2: SeriesParam) -> bool:
    return equivalence_reason(p1, p2)[0]


def realize(config: OrbitConfig, chi: ScalarChi = TRIVIAL, beta: Sequence = (), sigma=None) -> RealizationResult:
    """Degree and H-series class carried by the cohomology of a realization orbit.

    Everything is read off ``beta + rho_t``: vanishing when it is singular,
    otherwise the single degree ``q_M(beta + rho_t)`` and the class with
    t-parameter its compact-Weyl dominant conjugate.
    """
    if config.parabolic is None:
        raise SeriesError("orbit does not satisfy the normalizer and compact-isotropy conditions")
    cartan = config.cartan
    datum = cartan.datum
    beta = weight(beta)
    _check_t_weight(cartan, beta, "beta")
    simple = simple_system(datum, cartan.positive_imaginary)
    levi = _span_roots(datum, list(config.phi_t or ()), cartan.positive_imaginary)
    _check_highest_weight(datum, beta, simple, levi)
    lam = ex.add(beta, rho_t(cartan))
    if varpi_t(cartan, lam) == 0:
        return RealizationResult(True, None, None, None, lam)
    degree = q_lambda(cartan, lam)
    compact_pos = [r for r in cartan.positive_imaginary if cartan.grade[r] == COMPACT]
    nu, _ = dominant_conjugate(datum, lam, simple_system(datum, compact_pos))
    if cartan.dim_a == 0:
        param = discrete_series_param(cartan, nu, chi)
    else:
        param = hseries_param(cartan, chi, nu, sigma)
    sign = -1 if (len(cartan.positive_imaginary) + degree) % 2 else 1
    return RealizationResult(False, degree, param, sign, lam)


@dataclass(frozen=True)
class SeriesFamily:
    label: str
    series_kind: str
    dim_t: int
    dim_a: int
    continuous_dims: int
    regularity_roots: Tuple[Vector, ...]
    lattice: str
    disjoint_from: Tuple[str, ...] = field(default=())


def series_catalog(cartans: Sequence[CartanClass]) -> List[SeriesFamily]:
    """One tempered family per Cartan class, with its parameter space."""
    labels = [c.label for c in cartans]
    out = []
    for c in cartans:
        out.append(
            SeriesFamily(
                label=c.label,
                series_kind=series_kind(c),
                dim_t=c.dim_t,
                dim_a=c.dim_a,
                continuous_dims=c.dim_a,
                regularity_roots=tuple(c.positive_imaginary),
                lattice="nu: half-integer simple-root coordinates, tau nu = -nu, varpi_t(nu) != 0",
                disjoint_from=tuple(l for l in labels if l != c.label),
            )
        )
    return out


def orthogonality_check(datum: RootDatum, lam1: Sequence, lam2: Sequence, n: int = 4096) -> complex:
    """Weyl-measure inner product of two Weyl-formula characters.

    ``n`` trapezoid nodes per torus coordinate over one period (4 pi); the
    ``|Delta|^2`` weight cancels the denominators, so the integrand is the
    product of the alternating sums.
    """
    if n < 256:
        raise SeriesError("quadrature needs at least 256 points")
    wg = cached_weyl_group(datum)
    r = datum.rank
    nodes = np.arange(n) * (4 * math.pi / n)
    grids = np.meshgrid(*([nodes] * r), indexing="ij")
    pts = np.stack([g.ravel() for g in grids], axis=1)

    def alternating(lam):
        lam = weight(lam)
        total = np.zeros(len(pts), dtype=complex)
        for k in range(wg.order):
            wl = np.array([float(c) for c in wg.act(k, lam)])
            total += wg.det[k] * np.exp(1j * pts @ wl)
        return total

    a1, a2 = alternating(lam1), alternating(lam2)
    return complex(np.mean(a1 * np.conj(a2)) / wg.order)
