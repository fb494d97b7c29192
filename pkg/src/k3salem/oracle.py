"""Naive exhaustive searches, kept free of the continued-fraction and
reduction code so that agreement with it means something."""

from __future__ import annotations

from math import isqrt

import numpy as np

from k3salem.pell import PellSolution
from k3salem.qform import EvenLattice


def bf_pell(D: int, w_max: int) -> PellSolution | None:
    """Smallest (u, w), 1 <= w <= w_max, with u^2 - D w^2 = 4."""
    for w in range(1, w_max + 1):
        t = 4 + D * w * w
        u = isqrt(t)
        if u * u == t:
            return PellSolution(u, w, D)
    return None


def bf_pell_pm4(D: int, w_max: int) -> PellSolution | None:
    """Smallest (u, w), 1 <= w <= w_max, with u^2 - D w^2 = +-4."""
    for w in range(1, w_max + 1):
        for t in (D * w * w - 4, D * w * w + 4):
            u = isqrt(t)
            if t > 0 and u * u == t:
                return PellSolution(u, w, D)
    return None


def _grid(box: int):
    r = np.arange(-box, box + 1, dtype=np.int64)
    return np.meshgrid(r, r, indexing="ij")


def bf_represents(L: EvenLattice, n: int, box: int) -> bool:
    x, y = _grid(box)
    values = L.a * x * x + L.b * x * y + L.c * y * y
    if n == 0:
        values[box, box] = 1  # skip the zero vector
    return bool(np.any(values == n))


def bf_isometries(L: EvenLattice, entry_bound: int) -> list[tuple[tuple[int, int], tuple[int, int]]]:
    """All integer matrices with entries in [-bound, bound] and g^T Q g = Q.

    Columns are scanned separately: column 1 must have norm 2a, column 2
    norm 2c, and their pairing must be b.
    """
    x, y = _grid(entry_bound)
    values = L.a * x * x + L.b * x * y + L.c * y * y
    p, r = x[values == L.a][:, None], y[values == L.a][:, None]
    q, s = x[values == L.c][None, :], y[values == L.c][None, :]
    pairing = 2 * L.a * p * q + L.b * (p * s + r * q) + 2 * L.c * r * s
    det = p * s - q * r
    i, j = np.nonzero((pairing == L.b) & (np.abs(det) == 1))
    p, r, q, s = p[i, 0].tolist(), r[i, 0].tolist(), q[0, j].tolist(), s[0, j].tolist()
    return sorted(((p[n], q[n]), (r[n], s[n])) for n in range(len(i)))


def bf_cf_period(delta: int) -> int:
    """Period length of sqrt(delta) by remembering every (P, Q) state."""
    a0 = isqrt(delta)
    state = (0, 1)
    seen = {}
    i = 0
    while state not in seen:
        seen[state] = i
        P, Q = state
        a = (a0 + P) // Q
        P = a * Q - P
        state = (P, (delta - P * P) // Q)
        i += 1
    return i - seen[state]


def bf_reduced_forms(D: int) -> list[EvenLattice]:
    """Reduced forms of discriminant D by scanning 0 < |a|, b <= sqrt D."""
    out = []
    bound = isqrt(D) + 1
    for b in range(1, bound + 1):
        for a in range(-bound, bound + 1):
            if a == 0 or (b * b - D) % (4 * a):
                continue
            c = (b * b - D) // (4 * a)
            # float-free: b < sqrt D, |sqrt D - 2|a|| < b
            if b * b < D and (2 * abs(a) + b) ** 2 > D and (2 * abs(a) - b < 0 or (2 * abs(a) - b) ** 2 < D):
                out.append(EvenLattice(a, b, c))
    return sorted(out)


def _icbrt(n: int) -> int:
    """floor(n^(1/3)) for n >= 0 by Newton iteration from above."""
    if n < 2:
        return n
    r = 1 << ((n.bit_length() + 2) // 3)
    while True:
        nxt = (2 * r + n // (r * r)) // 3
        if nxt >= r:
            return r
        r = nxt


def classical_pell4(D: int) -> PellSolution:
    """Smallest solution of u^2 - D w^2 = 4 via the classical route.

    For D = 4m this is (2x, y) with x + y sqrt(m) the least unit of norm 1,
    read off the convergents of sqrt(m). For odd D it takes the least norm-1
    unit x + y sqrt(D) and looks for an odd cube root ((u + w sqrt D)/2)^3
    of it: comparing rational parts gives u^3 - 3u = 2x.
    """
    if D % 4 == 0:
        x, y = _norm_one(D // 4)
        return PellSolution(2 * x, y, D)
    x, y = _norm_one(D)
    u = _icbrt(2 * x)
    for cand in (u - 1, u, u + 1):
        if cand > 0 and cand ** 3 - 3 * cand == 2 * x and (cand * cand - 4) % D == 0:
            w2 = (cand * cand - 4) // D
            w = isqrt(w2)
            if w * w == w2:
                return PellSolution(cand, w, D)
    return PellSolution(2 * x, 2 * y, D)


def _norm_one(D: int) -> tuple[int, int]:
    """Least x + y sqrt(D), y > 0, with x^2 - D y^2 = 1 (one or two periods)."""
    a0 = isqrt(D)
    P, Q = 0, 1
    p_prev, p, q_prev, q = 0, 1, 1, 0
    while True:
        a = (a0 + P) // Q
        p_prev, p = p, a * p + p_prev
        q_prev, q = q, a * q + q_prev
        P = a * Q - P
        Q = (D - P * P) // Q
        if p * p - D * q * q == 1:
            break
    return p, q
