"""Independent reference computations used as test oracles.

Nothing here imports the package; each routine uses a different algorithm
from the library code it checks.
"""

import math

import numpy as np


def string_roots(cartan):
    """Positive roots by the root-string algorithm.

    For a positive root ``b`` and simple ``a_i`` the ``a_i``-string through
    ``b`` has ``p - q = <b, a_i^vee>``; grow ``b + a_i`` while ``q > 0``.
    """
    n = len(cartan)
    simple = [tuple(int(i == j) for j in range(n)) for i in range(n)]
    pos = set(simple)
    layer = list(simple)
    while layer:
        nxt = []
        for b in layer:
            for i in range(n):
                pair = sum(cartan[i][c] * b[c] for c in range(n))
                # p = how far down the string goes
                p = 0
                down = list(b)
                while True:
                    down[i] -= 1
                    if tuple(down) in pos:
                        p += 1
                    else:
                        break
                q = p - pair
                if q > 0:
                    up = list(b)
                    up[i] += 1
                    up = tuple(up)
                    if up not in pos:
                        pos.add(up)
                        nxt.append(up)
        layer = nxt
    return pos


def weyl_order(cartan):
    """``|W|`` as the orbit size of a regular weight, in numpy integer arithmetic."""
    a = np.array(cartan, dtype=np.int64)
    n = len(cartan)
    # fundamental-weight coordinates: s_i(lam)_j = lam_j - lam_i * <alpha_i, alpha_j^vee>
    start = tuple([1] * n)
    seen = {start}
    stack = [start]
    while stack:
        lam = np.array(stack.pop())
        for i in range(n):
            nxt = tuple(int(x) for x in lam - lam[i] * a[:, i])
            if nxt not in seen:
                seen.add(nxt)
                stack.append(nxt)
    return len(seen)


def double_coset_count(group, left, right):
    """Brute-force ``|L \\ G / R|`` for groups given as permutation tuples."""
    def mul(p, q):
        return tuple(p[i] for i in q)

    remaining = set(group)
    count = 0
    while remaining:
        g = next(iter(remaining))
        coset = {mul(mul(l, g), r) for l in left for r in right}
        remaining -= coset
        count += 1
    return count


def permutation_group(gens, size):
    """Closure of permutation generators."""
    ident = tuple(range(size))
    group = {ident}
    frontier = [ident]
    while frontier:
        p = frontier.pop()
        for s in gens:
            q = tuple(p[i] for i in s)
            if q not in group:
                group.add(q)
                frontier.append(q)
    return group


def su2_character(m, theta):
    """Character of the (m+1)-dimensional su(2) module at alpha(x) = theta."""
    return math.sin((m + 1) * theta / 2) / math.sin(theta / 2)


def weyl_dimension_su2(m):
    return m + 1


def sl2r_discrete(lam, theta):
    """Discrete-series character of sl(2,R) on the compact Cartan.

    ``lam`` in units of alpha; alpha noncompact, so the sign is ``-1`` when
    ``lam > 0``.
    """
    sign = -1 if lam > 0 else 1
    return sign * math.sin(lam * theta) / math.sin(theta / 2)


def sl2r_principal(s, y):
    """Principal-series character of sl(2,R) at ``exp(Y)`` with ``alpha(Y) = y``."""
    return 2 * math.cos(s * y) / abs(2 * math.sinh(y / 2))
