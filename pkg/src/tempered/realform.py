"""Real forms as involutions on root data.

A Cartan subgroup ``H = T x A`` is recorded by the involution ``tau`` it
induces on the roots (``-1`` on ``t``, ``+1`` on ``a``) together with the
compact/noncompact grading of the imaginary roots.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction as Q
from functools import cached_property, lru_cache
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

from . import _exact as ex
from ._exact import Matrix, Vector
from .rootsys import RootDatum, WeylGroup, weyl_group

COMPACT = "compact"
NONCOMPACT = "noncompact"


class RealFormError(ValueError):
    """Invalid involution data or an undefined real-form operation."""


@lru_cache(maxsize=None)
def cached_weyl_group(datum: RootDatum) -> WeylGroup:
    return weyl_group(datum)


def lex_positive(v: Sequence[Q]) -> bool:
    """Sign of the first nonzero coordinate."""
    for x in v:
        if x != 0:
            return x > 0
    return False


def simple_system(datum: RootDatum, positive: Iterable[Vector]) -> Tuple[Vector, ...]:
    """Indecomposable members of a positive system (of a root subsystem)."""
    pos = list(positive)
    pos_set = set(pos)
    simple = []
    for phi in pos:
        if not any(ex.sub(phi, psi) in pos_set for psi in pos if psi != phi):
            simple.append(phi)
    return tuple(sorted(simple, key=lambda r: (sum(r), tuple(-x for x in r))))


def is_closed(datum: RootDatum, roots: Iterable[Vector]) -> bool:
    """Root-closure test: phi, psi in S and phi+psi a root imply phi+psi in S."""
    s = set(roots)
    for phi in s:
        for psi in s:
            t = ex.add(phi, psi)
            if datum.is_root(t) and t not in s:
                return False
    return True


def _normalize_grade(value) -> str:
    if isinstance(value, bool):
        return COMPACT if value else NONCOMPACT
    v = str(value).strip().lower()
    if v in ("compact", "c", "k"):
        return COMPACT
    if v in ("noncompact", "non-compact", "n", "nc", "p"):
        return NONCOMPACT
    raise RealFormError(f"unknown grading value {value!r}")


def _normalize_root_key(datum: RootDatum, key) -> Vector:
    if isinstance(key, int):
        return datum.roots[key]
    if isinstance(key, str):
        s = key.strip()
        if "," not in s and s.lstrip("-").isdigit():
            return datum.roots[int(s)]
        return ex.parse_vector(s)
    return ex.vec(key)


@dataclass(frozen=True)
class CartanClass:
    """One conjugacy class of Cartan subgroups, as (tau, grading)."""

    datum: RootDatum
    tau: Matrix
    grading: Tuple[Tuple[Vector, str], ...]
    dim_t: int
    dim_a: int
    label: str = ""

    @cached_property
    def grade(self) -> Dict[Vector, str]:
        return dict(self.grading)

    def act(self, v: Sequence[Q]) -> Vector:
        return ex.apply(self.tau, v)

    @cached_property
    def imaginary_roots(self) -> Tuple[Vector, ...]:
        return tuple(r for r in self.datum.roots if self.act(r) == ex.neg(r))

    @cached_property
    def real_roots(self) -> Tuple[Vector, ...]:
        return tuple(r for r in self.datum.roots if self.act(r) == r)

    @cached_property
    def complex_roots(self) -> Tuple[Vector, ...]:
        im, re = set(self.imaginary_roots), set(self.real_roots)
        return tuple(r for r in self.datum.roots if r not in im and r not in re)

    @cached_property
    def compact_roots(self) -> Tuple[Vector, ...]:
        return tuple(r for r in self.imaginary_roots if self.grade[r] == COMPACT)

    @cached_property
    def noncompact_roots(self) -> Tuple[Vector, ...]:
        return tuple(r for r in self.imaginary_roots if self.grade[r] == NONCOMPACT)

    @cached_property
    def positive_imaginary(self) -> Tuple[Vector, ...]:
        """Default positive system on the imaginary (t-)roots."""
        pos = set(self.datum.positive_roots)
        return tuple(r for r in self.imaginary_roots if r in pos)

    @cached_property
    def weyl(self) -> WeylGroup:
        return cached_weyl_group(self.datum)

    def restrict_a(self, v: Sequence[Q]) -> Vector:
        """Projection onto the tau-fixed part (the a-restriction)."""
        return tuple(Q(x + y) / 2 for x, y in zip(v, self.act(v)))

    def restrict_t(self, v: Sequence[Q]) -> Vector:
        return tuple(Q(x - y) / 2 for x, y in zip(v, self.act(v)))

    @cached_property
    def key(self) -> tuple:
        return canonical_key(self)

    def conjugate(self, k: int) -> "CartanClass":
        """Transport by the Weyl element ``w = weyl.elements[k]``: tau -> w tau w^-1."""
        w = self.weyl.elements[k]
        winv = self.weyl.elements[self.weyl.inverse(k)]
        tau = ex.matmul(ex.matmul(w, self.tau), winv)
        grading = tuple(sorted((ex.apply(w, r), g) for r, g in self.grading))
        return CartanClass(self.datum, tau, grading, self.dim_t, self.dim_a, self.label)


def _check_involution(datum: RootDatum, tau: Matrix) -> None:
    n = datum.rank
    if len(tau) != n or any(len(row) != n for row in tau):
        raise RealFormError("invalid involution: wrong shape")
    if ex.matmul(tau, tau) != ex.identity(n):
        raise RealFormError("invalid involution: tau^2 != identity")
    for r in datum.roots:
        if not datum.is_root(ex.apply(tau, r)):
            raise RealFormError("invalid involution: roots not preserved")
    if ex.matmul(ex.matmul(ex.transpose(tau), datum.form), tau) != datum.form:
        raise RealFormError("invalid involution: form not preserved")


def attach_involution(datum: RootDatum, tau, grading: Mapping, label: str = "") -> CartanClass:
    """Validate ``(tau, grading)`` and build the Cartan class.

    ``grading`` maps roots (vectors, ``"p,q"`` strings, or indices into
    ``datum.roots``) to ``"compact"``/``"noncompact"``; entries for ``-phi``
    may be omitted.
    """
    tau = ex.mat(tau)
    _check_involution(datum, tau)
    imaginary = {r for r in datum.roots if ex.apply(tau, r) == ex.neg(r)}
    full: Dict[Vector, str] = {}
    for key, value in dict(grading).items():
        root = _normalize_root_key(datum, key)
        g = _normalize_grade(value)
        for r in (root, ex.neg(root)):
            if full.get(r, g) != g:
                raise RealFormError("grading must satisfy grading(-phi) = grading(phi)")
            full[r] = g
    if set(full) != imaginary:
        raise RealFormError("grading must cover exactly the imaginary roots")
    n = datum.rank
    minus_id = tuple(tuple(tau[i][j] - int(i == j) for j in range(n)) for i in range(n))
    dim_a = n - ex.rank(minus_id)
    return CartanClass(datum, tau, tuple(sorted(full.items())), n - dim_a, dim_a, label)


def canonical_key(cartan: CartanClass) -> tuple:
    """Minimum of ``(w tau w^-1, w.grading)`` over the Weyl group."""
    best = None
    for k in range(cartan.weyl.order):
        c = cartan.conjugate(k)
        cand = (c.tau, c.grading)
        if best is None or cand < best:
            best = cand
    return best


def cayley_transform(cartan: CartanClass, alpha: Sequence) -> CartanClass:
    """Cayley transform through a noncompact imaginary root.

    The new involution is ``s_alpha o tau``.  Imaginary roots orthogonal to
    ``alpha`` stay imaginary; they keep their grading when strongly
    orthogonal to ``alpha`` and switch it when ``beta + alpha`` is a root.
    """
    alpha = ex.vec(alpha)
    if cartan.grade.get(alpha) != NONCOMPACT:
        raise RealFormError("Cayley transform undefined")
    datum = cartan.datum
    tau = ex.matmul(datum.reflection_matrix(alpha), cartan.tau)
    grading: Dict[Vector, str] = {}
    for beta in datum.roots:
        if ex.apply(tau, beta) != ex.neg(beta):
            continue
        old = cartan.grade.get(beta)
        if old is None or datum.pair(alpha, beta) != 0:
            raise RealFormError("unsupported grading propagation")
        if datum.is_root(ex.add(alpha, beta)):
            grading[beta] = NONCOMPACT if old == COMPACT else COMPACT
        else:
            grading[beta] = old
    label = f"{cartan.label or 'H'}*c{datum.root_index(alpha)}"
    return attach_involution(datum, tau, grading, label)


def is_fundamental(cartan: CartanClass) -> bool:
    """Some simple system satisfies tau(Pi) = -Pi."""
    return fundamental_chamber(cartan) is not None


def fundamental_chamber(cartan: CartanClass) -> Optional[int]:
    w_group = cartan.weyl
    for k in range(w_group.order):
        simple = [w_group.act(k, a) for a in cartan.datum.simple_roots]
        neg_simple = {ex.neg(a) for a in simple}
        if all(cartan.act(a) in neg_simple for a in simple):
            return k
    return None


def classify_cartans(fundamental: CartanClass, seed: Optional[int] = None) -> List[CartanClass]:
    """All Cartan classes reachable from ``fundamental`` by Cayley transforms.

    Deduplicated by Weyl conjugacy of ``(tau, grading)`` and ordered by
    ``(dim_a, canonical form)``.  ``seed`` shuffles the traversal order; the
    result does not depend on it.
    """
    if not is_fundamental(fundamental):
        raise RealFormError("classification must start from a fundamental Cartan")
    rng = random.Random(seed) if seed is not None else None
    found: Dict[tuple, CartanClass] = {fundamental.key: fundamental}
    queue = [fundamental]
    while queue:
        if rng is not None:
            rng.shuffle(queue)
        current = queue.pop(0)
        roots = [r for r in current.noncompact_roots if lex_positive(r)]
        if rng is not None:
            rng.shuffle(roots)
        for alpha in roots:
            nxt = cayley_transform(current, alpha)
            if nxt.key not in found:
                found[nxt.key] = nxt
                queue.append(nxt)
    ordered = sorted(found.values(), key=lambda c: (c.dim_a, c.key))
    return [
        CartanClass(c.datum, c.tau, c.grading, c.dim_t, c.dim_a, f"H{i}")
        for i, c in enumerate(ordered)
    ]


@dataclass(frozen=True)
class RestrictedRootSystem:
    """Restricted (a-)roots with multiplicities; vectors live in weight coordinates."""

    cartan: CartanClass
    restricted_roots: Tuple[Vector, ...]
    multiplicity: Tuple[Tuple[Vector, int], ...]
    positive: Tuple[Vector, ...]
    rho_a: Vector
    empty_reason: str = ""

    @property
    def mult(self) -> Dict[Vector, int]:
        return dict(self.multiplicity)

    def __bool__(self) -> bool:
        return bool(self.restricted_roots)


def restricted_roots(cartan: CartanClass) -> RestrictedRootSystem:
    """Project every root to the tau-fixed subspace and count multiplicities.

    A compact Cartan yields an empty system carrying ``empty_reason``.
    """
    n = cartan.datum.rank
    if cartan.dim_a == 0:
        return RestrictedRootSystem(
            cartan, (), (), (), ex.zero(n), "no restricted roots for compact Cartan"
        )
    counts: Dict[Vector, int] = {}
    for r in cartan.datum.roots:
        psi = cartan.restrict_a(r)
        if not ex.is_zero(psi):
            counts[psi] = counts.get(psi, 0) + 1
    ordered = tuple(sorted(counts, key=lambda v: (not lex_positive(v), v)))
    positive = tuple(v for v in ordered if lex_positive(v))
    rho_a = ex.zero(n)
    for v in positive:
        rho_a = ex.add(rho_a, ex.scale(Q(counts[v], 2), v))
    return RestrictedRootSystem(
        cartan, ordered, tuple((v, counts[v]) for v in ordered), positive, rho_a
    )


def merge_positive_systems(
    cartan: CartanClass,
    sigma_a_plus: Optional[Iterable[Sequence]] = None,
    sigma_t_plus: Optional[Iterable[Sequence]] = None,
) -> Tuple[Vector, ...]:
    """The unique positive root system inducing the given a- and t-positive systems.

    Built from the lexicographic order that compares a-restrictions first.
    Defaults: first-nonzero-coordinate on a, standard positive roots on t.
    """
    if sigma_a_plus is None:
        sigma_a_plus = restricted_roots(cartan).positive
    if sigma_t_plus is None:
        sigma_t_plus = cartan.positive_imaginary
    a_plus = {ex.vec(v) for v in sigma_a_plus}
    t_plus = {ex.vec(v) for v in sigma_t_plus}
    datum = cartan.datum
    chosen = []
    for r in datum.roots:
        psi = cartan.restrict_a(r)
        if ex.is_zero(psi):
            pos, neg = r in t_plus, ex.neg(r) in t_plus
        else:
            pos, neg = psi in a_plus, ex.neg(psi) in a_plus
        if pos == neg:
            raise RealFormError("no compatible positive system")
        if pos:
            chosen.append(r)
    if not is_closed(datum, chosen):
        raise RealFormError("no compatible positive system")
    restricted = {cartan.restrict_a(r) for r in chosen} - {ex.zero(datum.rank)}
    imaginary = {r for r in chosen if ex.is_zero(cartan.restrict_a(r))}
    if restricted != a_plus or imaginary != t_plus:
        raise RealFormError("no compatible positive system")
    return tuple(chosen)


@dataclass(frozen=True)
class CuspidalParabolic:
    """``P = MAN`` attached to a Cartan class and a positive restricted system."""

    cartan: CartanClass
    m_roots: Tuple[Vector, ...]
    n_roots: Tuple[Vector, ...]
    a_dim: int
    modular_exponent: Vector
    sigma_a_plus: Tuple[Vector, ...] = field(default=())

    @property
    def p_roots(self) -> Tuple[Vector, ...]:
        return self.m_roots + self.n_roots


def cuspidal_parabolic(cartan: CartanClass, sigma_a_plus: Optional[Iterable[Sequence]] = None) -> CuspidalParabolic:
    """Split the roots into m (a-vanishing), n (negative on a) and -n.

    The nilradical is spanned by the root spaces of ``-phi`` for
    ``phi`` in the positive restricted system; the modular exponent is
    ``2 rho_a``.
    """
    system = restricted_roots(cartan)
    if sigma_a_plus is None:
        a_plus = system.positive
    else:
        a_plus = tuple(ex.vec(v) for v in sigma_a_plus)
    a_set = set(a_plus)
    for v in a_set:
        if v not in system.mult or ex.neg(v) in a_set:
            raise RealFormError("not a positive restricted root system")
    m_roots, n_roots = [], []
    for r in cartan.datum.roots:
        psi = cartan.restrict_a(r)
        if ex.is_zero(psi):
            m_roots.append(r)
        elif ex.neg(psi) in a_set:
            n_roots.append(r)
        elif psi not in a_set:
            raise RealFormError("not a positive restricted root system")
    exponent = ex.zero(cartan.datum.rank)
    for v in a_plus:
        exponent = ex.add(exponent, ex.scale(system.mult[v], v))
    return CuspidalParabolic(cartan, tuple(m_roots), tuple(n_roots), cartan.dim_a, exponent, a_plus)


def real_weyl_group(cartan: CartanClass) -> Tuple[int, ...]:
    """Indices in ``cartan.weyl`` of the model of ``W(G, H)``.

    Generated by reflections in real and compact imaginary roots and by
    ``s_beta s_{tau beta}`` for complex roots orthogonal to their image.
    """
    datum = cartan.datum
    gens = set()
    for r in cartan.real_roots + cartan.compact_roots:
        gens.add(datum.reflection_matrix(r))
    for r in cartan.complex_roots:
        tr = cartan.act(r)
        if datum.pair(r, tr) == 0:
            gens.add(ex.matmul(datum.reflection_matrix(r), datum.reflection_matrix(tr)))
    return cartan.weyl.subgroup(sorted(gens))


def compact_weyl_group(cartan: CartanClass) -> Tuple[int, ...]:
    """``W(M^0, T^0)`` model: generated by compact imaginary reflections."""
    datum = cartan.datum
    return cartan.weyl.subgroup(sorted({datum.reflection_matrix(r) for r in cartan.compact_roots}))


def imaginary_weyl_group(cartan: CartanClass) -> Tuple[int, ...]:
    """Complex Weyl group of the imaginary root subsystem."""
    datum = cartan.datum
    return cartan.weyl.subgroup(sorted({datum.reflection_matrix(r) for r in cartan.imaginary_roots}))


def diagram_automorphism(cartan: CartanClass) -> Dict[int, int]:
    """Permutation ``delta`` of simple indices with ``-w tau`` preserving Pi.

    ``delta`` depends only on the inner class of ``tau``; it is the identity
    exactly when ``-1`` lies in ``W tau``.
    """
    datum = cartan.datum
    simple = datum.simple_roots
    wg = cartan.weyl
    for k in range(wg.order):
        images = [ex.neg(wg.act(k, cartan.act(a))) for a in simple]
        if all(v in simple for v in images):
            return {i: simple.index(v) for i, v in enumerate(images)}
    raise RealFormError("invalid involution: no diagram automorphism")
