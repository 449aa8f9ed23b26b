"""Real group orbits on complex flag manifolds ``X = G_C / Q_Phi``.

Every verdict is computed from root sets at a base point: a Cartan class
(supplying tau and the grading), a Weyl element moving the base point, and
a subset ``Phi`` of the standard simple roots.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction as Q
from typing import FrozenSet, Iterable, Optional, Sequence, Tuple

from . import _exact as ex
from ._exact import Vector
from .realform import (
    COMPACT,
    CartanClass,
    CuspidalParabolic,
    RealFormError,
    compact_weyl_group,
    diagram_automorphism,
    is_closed,
    merge_positive_systems,
    simple_system,
)
from .rootsys import RootDatum

YES, NO, UNDECIDED = "yes", "no", "undecided"


class OrbitError(ValueError):
    pass


@dataclass(frozen=True)
class ParabolicSubset:
    datum: RootDatum
    phi: Tuple[int, ...]
    phi_r: FrozenSet[Vector]
    phi_u: FrozenSet[Vector]

    @property
    def label(self) -> str:
        return ",".join(f"a{i + 1}" for i in self.phi)


def parabolic_subset(datum: RootDatum, phi: Iterable[int]) -> ParabolicSubset:
    """Levi roots (span of ``phi``) and the negative roots outside it."""
    phi = tuple(sorted(set(int(i) for i in phi)))
    if any(i < 0 or i >= datum.rank for i in phi):
        raise OrbitError("flag indices must name simple roots")
    inside = set(phi)
    phi_r = frozenset(
        r for r in datum.roots if all(x == 0 for i, x in enumerate(r) if i not in inside)
    )
    phi_u = frozenset(r for r in datum.roots if sum(r) < 0 and r not in phi_r)
    return ParabolicSubset(datum, phi, phi_r, phi_u)


@dataclass(frozen=True)
class OrbitConfig:
    """Base point ``(cartan, w, Phi)``; the effective involution is ``w^-1 tau w``.

    ``parabolic`` and ``phi_t`` are set only by :func:`realization_configs`.
    """

    cartan: CartanClass
    w: int
    subset: ParabolicSubset
    parabolic: Optional[CuspidalParabolic] = None
    phi_t: Optional[Tuple[Vector, ...]] = None

    @property
    def effective(self) -> CartanClass:
        return self.cartan.conjugate(self.cartan.weyl.inverse(self.w))


@dataclass(frozen=True)
class OrbitReport:
    codim: int
    is_open: bool
    is_measurable: str
    is_integrable: bool
    is_partially_complex: str
    is_flag_type: str
    delta_x: Vector
    q_bracket: FrozenSet[Vector]
    gamma: FrozenSet[Vector]
    m_bracket: FrozenSet[Vector]
    v_plus: FrozenSet[Vector]
    v_minus: FrozenSet[Vector]
    normalizer_roots: Optional[FrozenSet[Vector]]


def orbit_report(config: OrbitConfig) -> OrbitReport:
    """Codimension and orbit-type verdicts for ``G(x)``.

    Verdicts the root data cannot settle come back as ``"undecided"``.
    """
    cartan = config.effective
    datum = cartan.datum
    roots = datum.roots
    tau = cartan.act
    p_r, p_u = set(config.subset.phi_r), set(config.subset.phi_u)
    t_r = {tau(r) for r in p_r}
    t_u = {tau(r) for r in p_u}
    neg = ex.neg

    both_u = p_u & t_u
    codim = len(both_u)
    is_open = codim == 0
    delta = ex.zero(datum.rank)
    for r in both_u:
        delta = ex.add(delta, r)
    q_bracket = frozenset(r for r in roots if datum.pair(r, delta) >= 0)
    gamma = frozenset(
        r
        for r in roots
        if datum.pair(r, delta) < 0 and neg(r) not in both_u and not datum.is_root(ex.add(r, tau(r)))
    )
    m_bracket = q_bracket | gamma

    q_roots = p_r | p_u
    tq_roots = t_r | t_u
    integrable = is_closed(datum, q_roots | tq_roots)
    v_minus = frozenset(r for r in p_u if neg(r) in t_u)
    v_plus = frozenset(tau(r) for r in v_minus)
    levi_stable = t_r == p_r
    formula_normalizer = frozenset((q_roots & tq_roots) | v_minus | v_plus)

    normalizer = None
    if is_open:
        # open orbits are integrable, partially complex and of flag type
        partially_complex = flag_type = YES
        if levi_stable and t_u == {neg(r) for r in p_u}:
            measurable = YES
            normalizer = formula_normalizer
        else:
            # measurability of open orbits depends only on Phi and the inner class
            delta_perm = diagram_automorphism(cartan)
            phi = set(config.subset.phi)
            measurable = YES if {delta_perm[i] for i in phi} == phi else NO
            if measurable == YES:
                normalizer = frozenset(roots)
    else:
        if levi_stable:
            measurable = YES if integrable else NO
        elif integrable:
            measurable = NO
        else:
            measurable = UNDECIDED
        if measurable == YES:
            partially_complex = flag_type = YES
            normalizer = formula_normalizer
        else:
            partially_complex = YES if is_closed(datum, m_bracket) else NO
            if levi_stable and partially_complex == YES:
                flag_type = NO
            else:
                flag_type = UNDECIDED

    return OrbitReport(
        codim=codim,
        is_open=is_open,
        is_measurable=measurable,
        is_integrable=integrable,
        is_partially_complex=partially_complex,
        is_flag_type=flag_type,
        delta_x=delta,
        q_bracket=q_bracket,
        gamma=gamma,
        m_bracket=m_bracket,
        v_plus=v_plus,
        v_minus=v_minus,
        normalizer_roots=normalizer,
    )


def all_configs(cartan: CartanClass):
    """Every ``(w, Phi)`` base point for one Cartan class."""
    n = cartan.datum.rank
    for mask in range(1 << n):
        subset = parabolic_subset(cartan.datum, [i for i in range(n) if mask >> i & 1])
        for k in range(cartan.weyl.order):
            yield OrbitConfig(cartan, k, subset)


def count_open_orbits(cartan: CartanClass, subset: ParabolicSubset) -> int:
    """Number of double cosets ``W_K \\ W / W_{Phi^r}`` (equal-rank case)."""
    if cartan.dim_a != 0:
        raise OrbitError("open-orbit count implemented only for equal-rank Cartan")
    wg = cartan.weyl
    left = compact_weyl_group(cartan)
    datum = cartan.datum
    right = wg.subgroup(datum.reflection_matrix(datum.simple_roots[i]) for i in subset.phi)
    seen = set()
    count = 0
    for k in range(wg.order):
        if k in seen:
            continue
        count += 1
        for a in left:
            ak = wg.compose(a, k)
            for b in right:
                seen.add(wg.compose(ak, b))
    return count


def t_simple_roots(cartan: CartanClass) -> Tuple[Vector, ...]:
    """Simple system of the default positive imaginary roots."""
    return simple_system(cartan.datum, cartan.positive_imaginary)


def realization_configs(
    cartan: CartanClass,
    parabolic: CuspidalParabolic,
    phi_t: Iterable = (),
) -> OrbitConfig:
    """Base point realizing the H-series attached to ``parabolic``.

    ``phi_t`` picks simple t-roots (indices into :func:`t_simple_roots` or
    root vectors).  The base point is moved so that the positive system
    merged from ``parabolic`` and the t-roots becomes the standard one; the
    flag is ``Q_Phi`` with ``Phi`` the image of ``phi_t``.
    """
    datum = cartan.datum
    pi_t = t_simple_roots(cartan)
    chosen = []
    for item in phi_t:
        root = pi_t[item] if isinstance(item, int) else ex.vec(item)
        if root not in pi_t:
            raise OrbitError("phi_t must consist of simple t-roots")
        chosen.append(root)
    positive = set(merge_positive_systems(cartan, parabolic.sigma_a_plus, cartan.positive_imaginary))
    wg = cartan.weyl
    w = next(
        (k for k in range(wg.order) if {wg.act(k, r) for r in datum.positive_roots} == positive),
        None,
    )
    if w is None:
        raise OrbitError("merged positive system is not a Weyl chamber")
    w_inv = wg.inverse(w)
    phi = []
    for root in chosen:
        image = wg.act(w_inv, root)
        phi.append(datum.simple_roots.index(image))
    subset = parabolic_subset(datum, phi)
    for r in subset.phi_r:
        original = wg.act(w, r)
        if cartan.grade.get(original) != COMPACT:
            raise RealFormError("isotropy not compact modulo center")
    return OrbitConfig(cartan, w, subset, parabolic, tuple(chosen))


def to_base_point(config: OrbitConfig, roots: Iterable[Sequence[Q]]) -> FrozenSet[Vector]:
    """Express roots of the original Cartan in base-point coordinates."""
    wg = config.cartan.weyl
    k = wg.inverse(config.w)
    return frozenset(wg.act(k, r) for r in roots)
