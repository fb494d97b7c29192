"""2x2 integer matrices as nested tuples ((p, q), (r, s))."""

from __future__ import annotations

Matrix = tuple[tuple[int, int], tuple[int, int]]

IDENTITY: Matrix = ((1, 0), (0, 1))


def mat(rows) -> Matrix:
    (p, q), (r, s) = rows
    return ((int(p), int(q)), (int(r), int(s)))


def mul(m: Matrix, n: Matrix) -> Matrix:
    (a, b), (c, d) = m
    (e, f), (g, h) = n
    return ((a * e + b * g, a * f + b * h), (c * e + d * g, c * f + d * h))


def transpose(m: Matrix) -> Matrix:
    (a, b), (c, d) = m
    return ((a, c), (b, d))


def det(m: Matrix) -> int:
    (a, b), (c, d) = m
    return a * d - b * c


def trace(m: Matrix) -> int:
    return m[0][0] + m[1][1]


def adjugate(m: Matrix) -> Matrix:
    (a, b), (c, d) = m
    return ((d, -b), (-c, a))


def inverse(m: Matrix) -> Matrix:
    """Inverse of a unimodular matrix."""
    d = det(m)
    if d not in (1, -1):
        raise ValueError(f"matrix {m} is not invertible over the integers")
    (a, b), (c, e) = adjugate(m)
    return ((a * d, b * d), (c * d, e * d))


def mat_pow(m: Matrix, n: int) -> Matrix:
    if n < 0:
        m, n = inverse(m), -n
    result = IDENTITY
    while n:
        if n & 1:
            result = mul(result, m)
        m = mul(m, m)
        n >>= 1
    return result


def congruent(m: Matrix, q: Matrix) -> Matrix:
    """m^T q m."""
    return mul(transpose(m), mul(q, m))


def as_lists(m: Matrix) -> list[list[int]]:
    return [list(m[0]), list(m[1])]
