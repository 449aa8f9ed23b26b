"""Exact rational vector and matrix helpers.

Vectors are tuples of ``Fraction``; matrices are tuples of row tuples.
Everything here is small (rank <= 8) so plain Python loops are fine.
"""

from __future__ import annotations

from fractions import Fraction as Q
from typing import Iterable, Sequence, Tuple

Vector = Tuple[Q, ...]
Matrix = Tuple[Tuple[Q, ...], ...]


def vec(values: Iterable) -> Vector:
    return tuple(Q(v) for v in values)


def mat(rows: Iterable[Iterable]) -> Matrix:
    return tuple(tuple(Q(v) for v in row) for row in rows)


def zero(n: int) -> Vector:
    return (Q(0),) * n


def identity(n: int) -> Matrix:
    return tuple(tuple(Q(int(i == j)) for j in range(n)) for i in range(n))


def add(u: Sequence[Q], v: Sequence[Q]) -> Vector:
    return tuple(a + b for a, b in zip(u, v))


def sub(u: Sequence[Q], v: Sequence[Q]) -> Vector:
    return tuple(a - b for a, b in zip(u, v))


def neg(u: Sequence[Q]) -> Vector:
    return tuple(-a for a in u)


def scale(c, u: Sequence[Q]) -> Vector:
    c = Q(c)
    return tuple(c * a for a in u)


def is_zero(u: Sequence[Q]) -> bool:
    return all(a == 0 for a in u)


def apply(m: Matrix, v: Sequence[Q]) -> Vector:
    return tuple(sum((a * b for a, b in zip(row, v)), Q(0)) for row in m)


def matmul(a: Matrix, b: Matrix) -> Matrix:
    cols = list(zip(*b))
    return tuple(
        tuple(sum((x * y for x, y in zip(row, col)), Q(0)) for col in cols) for row in a
    )


def transpose(m: Matrix) -> Matrix:
    return tuple(zip(*m))


def bilinear(form: Matrix, u: Sequence[Q], v: Sequence[Q]) -> Q:
    return sum((ui * x for ui, x in zip(u, apply(form, v))), Q(0))


def rank(m: Sequence[Sequence[Q]]) -> int:
    """Row rank by fraction-exact Gaussian elimination."""
    rows = [list(map(Q, r)) for r in m]
    if not rows:
        return 0
    ncols = len(rows[0])
    r = 0
    for c in range(ncols):
        pivot = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                f = rows[i][c] / rows[r][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        r += 1
        if r == len(rows):
            break
    return r


def inverse(m: Matrix) -> Matrix:
    n = len(m)
    aug = [list(m[i]) + [Q(int(i == j)) for j in range(n)] for i in range(n)]
    for c in range(n):
        pivot = next((i for i in range(c, n) if aug[i][c] != 0), None)
        if pivot is None:
            raise ValueError("singular matrix")
        aug[c], aug[pivot] = aug[pivot], aug[c]
        p = aug[c][c]
        aug[c] = [x / p for x in aug[c]]
        for i in range(n):
            if i != c and aug[i][c] != 0:
                f = aug[i][c]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[c])]
    return tuple(tuple(row[n:]) for row in aug)


def parse_rational(text) -> Q:
    """Parse ``"p/q"``, an integer, or a decimal string into a Fraction."""
    if isinstance(text, Q):
        return text
    if isinstance(text, bool):
        raise ValueError(f"not a rational: {text!r}")
    if isinstance(text, int):
        return Q(text)
    if isinstance(text, float):
        return Q(text).limit_denominator(10**9)
    s = str(text).strip()
    if not s:
        raise ValueError("empty rational")
    return Q(s)


def parse_vector(text) -> Vector:
    """Parse a comma-separated string or a list of rationals."""
    if isinstance(text, str):
        parts = [p for p in text.split(",") if p.strip()]
        return tuple(parse_rational(p) for p in parts)
    return tuple(parse_rational(p) for p in text)


def fmt_rational(x: Q) -> str:
    x = Q(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def fmt_vector(v: Sequence[Q]) -> str:
    return ",".join(fmt_rational(x) for x in v)
