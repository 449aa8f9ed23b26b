"""Root data and Weyl groups in exact arithmetic.

Weights are tuples of ``Fraction`` in simple-root coordinates.  The bilinear
form is the symmetrized Cartan matrix, scaled so that long roots have
squared length 2 in every simple factor.
"""

from __future__ import annotations

import cmath
import math
import os
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction as Q
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from . import _exact as ex
from ._exact import Matrix, Vector

Weight = Vector

ROOT_GUARD = 10**4
DEFAULT_PERIOD = 4 * math.pi


class RootSystemError(ValueError):
    """Raised for invalid Cartan matrices and oversize enumerations."""


def weyl_guard() -> int:
    raw = os.environ.get("TEMPERED_GUARD")
    if raw:
        try:
            return int(raw)
        except ValueError:
            pass
    return 10**4


def weight(*coords) -> Weight:
    """Build a weight from rationals, ints or ``"p/q"`` strings."""
    if len(coords) == 1 and not isinstance(coords[0], (int, Q, str, float)):
        coords = tuple(coords[0])
    return tuple(ex.parse_rational(c) for c in coords)


def _symmetrizer(a: Sequence[Sequence[int]]) -> Tuple[Q, ...]:
    n = len(a)
    d: List[Optional[Q]] = [None] * n
    for start in range(n):
        if d[start] is not None:
            continue
        d[start] = Q(1)
        component = [start]
        queue = deque([start])
        while queue:
            i = queue.popleft()
            for j in range(n):
                if i == j or a[i][j] == 0:
                    continue
                dj = d[i] * a[i][j] / a[j][i]
                if d[j] is None:
                    d[j] = dj
                    component.append(j)
                    queue.append(j)
                elif d[j] != dj:
                    raise RootSystemError("invalid Cartan matrix: not symmetrizable")
        top = max(d[i] for i in component)
        for i in component:
            d[i] = d[i] / top
    return tuple(d)  # type: ignore[arg-type]


def _validate_cartan(cartan_matrix) -> Tuple[Tuple[int, ...], ...]:
    try:
        a = tuple(tuple(int(x) for x in row) for row in cartan_matrix)
        raw = [list(row) for row in cartan_matrix]
    except (TypeError, ValueError) as exc:
        raise RootSystemError("invalid Cartan matrix: entries must be integers") from exc
    n = len(a)
    if n == 0 or any(len(row) != n for row in a):
        raise RootSystemError("invalid Cartan matrix: must be square and non-empty")
    for i in range(n):
        for j in range(n):
            if raw[i][j] != a[i][j]:
                raise RootSystemError("invalid Cartan matrix: entries must be integers")
            if i == j and a[i][j] != 2:
                raise RootSystemError("invalid Cartan matrix: diagonal must be 2")
            if i != j:
                if a[i][j] > 0:
                    raise RootSystemError("invalid Cartan matrix: positive off-diagonal entry")
                if (a[i][j] == 0) != (a[j][i] == 0):
                    raise RootSystemError("invalid Cartan matrix: zero pattern not symmetric")
    return a


@dataclass(frozen=True)
class RootDatum:
    """A finite root system presented by its Cartan matrix.

    ``roots`` lists the positive roots ordered by height, then their
    negatives in the same order; ``simple_roots`` are the unit vectors.
    """

    rank: int
    cartan_matrix: Tuple[Tuple[int, ...], ...]
    roots: Tuple[Vector, ...]
    positive_roots: Tuple[Vector, ...]
    simple_roots: Tuple[Vector, ...]
    form: Matrix
    rho: Weight
    _root_set: frozenset = field(default=frozenset(), repr=False, compare=False)

    def pair(self, u: Sequence[Q], v: Sequence[Q]) -> Q:
        return ex.bilinear(self.form, u, v)

    def coroot_pairing(self, v: Sequence[Q], root: Sequence[Q]) -> Q:
        """``<v, root^vee> = 2 (v, root) / (root, root)``."""
        return 2 * self.pair(v, root) / self.pair(root, root)

    def reflect(self, root: Sequence[Q], v: Sequence[Q]) -> Vector:
        c = self.coroot_pairing(v, root)
        return tuple(Q(x) - c * r for x, r in zip(v, root))

    def reflection_matrix(self, root: Sequence[Q]) -> Matrix:
        cols = [self.reflect(root, e) for e in ex.identity(self.rank)]
        return ex.transpose(tuple(cols))

    def is_root(self, v: Sequence[Q]) -> bool:
        return tuple(Q(x) for x in v) in self._root_set

    def is_positive(self, root: Sequence[Q]) -> bool:
        return sum(root) > 0

    def root_index(self, root: Sequence[Q]) -> int:
        return self.roots.index(tuple(Q(x) for x in root))

    @property
    def roots_set(self) -> frozenset:
        return self._root_set


def build_root_datum(cartan_matrix) -> RootDatum:
    """Close the simple roots under simple reflections.

    Raises ``RootSystemError`` with "invalid Cartan matrix" for malformed
    input and "not finite type" once the closure passes 10^4 roots.
    """
    a = _validate_cartan(cartan_matrix)
    n = len(a)
    d = _symmetrizer(a)
    form = tuple(tuple(d[i] * a[i][j] for j in range(n)) for i in range(n))

    simple = tuple(tuple(Q(int(i == j)) for j in range(n)) for i in range(n))

    def s(i: int, v: Vector) -> Vector:
        c = sum(a[i][j] * v[j] for j in range(n))
        if c == 0:
            return v
        return tuple(v[k] - c if k == i else v[k] for k in range(n))

    seen = set(simple)
    queue = deque(simple)
    while queue:
        v = queue.popleft()
        for i in range(n):
            u = s(i, v)
            if u not in seen:
                seen.add(u)
                queue.append(u)
                if len(seen) > ROOT_GUARD:
                    raise RootSystemError("not finite type")

    positive = sorted((r for r in seen if sum(r) > 0), key=lambda r: (sum(r), tuple(-x for x in r)))
    negative = [ex.neg(r) for r in positive]
    rho = tuple(sum((r[k] for r in positive), Q(0)) / 2 for k in range(n))
    roots = tuple(positive) + tuple(negative)
    return RootDatum(
        rank=n,
        cartan_matrix=a,
        roots=roots,
        positive_roots=tuple(positive),
        simple_roots=simple,
        form=form,
        rho=rho,
        _root_set=frozenset(roots),
    )


@dataclass(frozen=True)
class WeylGroup:
    """Explicit element list of a Weyl group acting on weight coordinates.

    ``words[k]`` is a shortlex reduced word (1-based simple indices) for
    ``elements[k]``; element 0 is the identity.
    """

    elements: Tuple[Matrix, ...]
    words: Tuple[Tuple[int, ...], ...]
    det: Tuple[int, ...]
    _index: Dict[Matrix, int] = field(default_factory=dict, repr=False, compare=False)

    @property
    def order(self) -> int:
        return len(self.elements)

    def index(self, m: Matrix) -> int:
        return self._index[m]

    def act(self, k: int, v: Sequence[Q]) -> Vector:
        return ex.apply(self.elements[k], v)

    def compose(self, i: int, j: int) -> int:
        return self._index[ex.matmul(self.elements[i], self.elements[j])]

    def inverse(self, k: int) -> int:
        return self._index[ex.inverse(self.elements[k])]

    def word_label(self, k: int) -> str:
        return "".join(f"s{i}" for i in self.words[k]) or "e"

    def orbit(self, v: Sequence[Q]) -> frozenset:
        return frozenset(ex.apply(m, v) for m in self.elements)

    def subgroup(self, generators: Iterable[Matrix]) -> Tuple[int, ...]:
        """Indices of the subgroup generated by ``generators``."""
        gens = [self._index[g] for g in generators]
        found = {0}
        queue = deque([0])
        while queue:
            k = queue.popleft()
            for g in gens:
                j = self.compose(k, g)
                if j not in found:
                    found.add(j)
                    queue.append(j)
        return tuple(sorted(found))


def _simple_reflection_matrices(datum: RootDatum) -> List[Matrix]:
    # s_i(v) = v - <v, alpha_i^vee> alpha_i, and <v, alpha_i^vee> = sum_c A_ic v_c
    n = datum.rank
    mats = []
    for i in range(n):
        rows = []
        for r in range(n):
            if r == i:
                rows.append(tuple(Q(int(c == i) - datum.cartan_matrix[i][c]) for c in range(n)))
            else:
                rows.append(tuple(Q(int(r == c)) for c in range(n)))
        mats.append(tuple(rows))
    return mats


def weyl_group(datum: RootDatum) -> WeylGroup:
    """Breadth-first closure of the simple reflections."""
    guard = weyl_guard()
    gens = _simple_reflection_matrices(datum)
    ident = ex.identity(datum.rank)
    elements: List[Matrix] = [ident]
    words: List[Tuple[int, ...]] = [()]
    index: Dict[Matrix, int] = {ident: 0}
    queue = deque([0])
    while queue:
        k = queue.popleft()
        for i, g in enumerate(gens):
            m = ex.matmul(elements[k], g)
            if m not in index:
                index[m] = len(elements)
                elements.append(m)
                words.append(words[k] + (i + 1,))
                if len(elements) > guard:
                    raise RootSystemError("Weyl group too large for desk scale")
                queue.append(index[m])
    det = tuple(-1 if len(w) % 2 else 1 for w in words)
    return WeylGroup(tuple(elements), tuple(words), det, index)


def varpi(datum: RootDatum, lam: Sequence, positive: Optional[Iterable[Vector]] = None) -> Q:
    """Product of ``<phi, lam>`` over the positive roots."""
    lam = weight(lam)
    result = Q(1)
    for phi in datum.positive_roots if positive is None else positive:
        result *= datum.pair(phi, lam)
    return result


@dataclass(frozen=True)
class TorusPoint:
    """Point on the compact torus, ``e^lam(x) = exp(i * sum(lam_k * x_k))``.

    ``x_k`` is the value of the k-th simple root on the Lie algebra element.
    """

    coords: Tuple[float, ...]
    period: float = DEFAULT_PERIOD

    def __post_init__(self):
        object.__setattr__(self, "coords", tuple(float(c) for c in self.coords))

    def phase(self, lam: Sequence[Q]) -> float:
        return sum(float(l) * x for l, x in zip(lam, self.coords))


def _check_period(lam: Sequence[Q], period: float) -> None:
    turns = Q(period / (2 * math.pi)).limit_denominator(10**6)
    if abs(float(turns) * 2 * math.pi - period) > 1e-9 * max(1.0, period):
        raise RootSystemError("aperiodic exponential for given period")
    for c in lam:
        if (Q(c) * turns).denominator != 1:
            raise RootSystemError("aperiodic exponential for given period")


def exp_eval(datum: RootDatum, terms: Iterable[Tuple[complex, Sequence]], x: TorusPoint) -> complex:
    """Evaluate ``sum c * e^lam(x)`` in double precision."""
    total = 0j
    for coeff, lam in terms:
        lam = weight(lam)
        if len(lam) != datum.rank or len(x.coords) != datum.rank:
            raise RootSystemError("dimension mismatch between weight and torus point")
        _check_period(lam, x.period)
        total += complex(coeff) * cmath.exp(1j * x.phase(lam))
    return total


def weyl_denominator(datum: RootDatum, x: TorusPoint, positive: Optional[Iterable[Vector]] = None) -> complex:
    """``prod (e^{phi/2} - e^{-phi/2})`` over the positive roots."""
    value = 1 + 0j
    for phi in datum.positive_roots if positive is None else positive:
        half = ex.scale(Q(1, 2), phi)
        value *= exp_eval(datum, [(1, half), (-1, ex.neg(half))], x)
    return value


def alternating_terms(group: WeylGroup, lam: Sequence[Q], members: Optional[Iterable[int]] = None):
    """Terms of ``sum det(w) e^{w lam}`` as (coefficient, weight) pairs."""
    ks = range(group.order) if members is None else members
    return [(group.det[k], group.act(k, lam)) for k in ks]


def dominant_conjugate(datum: RootDatum, lam: Sequence[Q], simple: Sequence[Vector]) -> Tuple[Vector, int]:
    """Reflect ``lam`` into the closed dominant chamber of ``simple``.

    Returns the dominant weight and the number of reflections used.
    """
    v = weight(lam)
    steps = 0
    changed = True
    while changed:
        changed = False
        for a in simple:
            if datum.pair(v, a) < 0:
                v = datum.reflect(a, v)
                steps += 1
                changed = True
    return v, steps
