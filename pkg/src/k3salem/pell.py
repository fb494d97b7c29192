"""Continued fractions and the Pell equations u^2 - D w^2 = +-4.

A solution (u, w) stands for the unit (u + (w/k) sqrt(D)) / 2 of the quadratic
order of discriminant D.  Everything is exact integer arithmetic.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, isqrt


def is_square(n: int) -> bool:
    return n >= 0 and isqrt(n) ** 2 == n


def _check_radicand(delta: int) -> None:
    if delta < 2:
        raise ValueError(f"radicand must be >= 2, got {delta}")
    if is_square(delta):
        raise ValueError(f"radicand {delta} is a perfect square")


def check_discriminant(D: int) -> None:
    """Raise ValueError unless D is a positive non-square discriminant."""
    if D <= 0:
        raise ValueError(f"discriminant must be positive, got {D}")
    if D % 4 not in (0, 1):
        raise ValueError(f"discriminant {D} is not congruent to 0 or 1 mod 4")
    if is_square(D):
        raise ValueError(f"discriminant {D} is a perfect square")


@dataclass(frozen=True)
class CFExpansion:
    a0: int
    period: tuple[int, ...]
    delta: int

    @property
    def period_length(self) -> int:
        return len(self.period)

    def convergent(self, n: int) -> tuple[int, int]:
        """Return (p, q) for the n-th convergent, n >= 0."""
        p_prev, p = 1, self.a0
        q_prev, q = 0, 1
        for i in range(n):
            a = self.period[i % len(self.period)]
            p_prev, p = p, a * p + p_prev
            q_prev, q = q, a * q + q_prev
        return p, q


@dataclass(frozen=True)
class PellSolution:
    """The unit (u + v sqrt(D)) / 2 with v = w / k."""

    u: int
    w: int
    D: int
    k: int = 1

    def __post_init__(self) -> None:
        if self.k < 1:
            raise ValueError("scaling denominator k must be positive")
        num = self.u * self.u * self.k * self.k - self.D * self.w * self.w
        if num not in (4 * self.k * self.k, -4 * self.k * self.k):
            raise ValueError(
                f"({self.u}, {self.w}/{self.k}) is not a solution of "
                f"u^2 - {self.D} v^2 = +-4"
            )

    @property
    def v(self) -> Fraction:
        return Fraction(self.w, self.k)

    @property
    def norm(self) -> int:
        return 1 if self.u * self.u * self.k * self.k - self.D * self.w * self.w > 0 else -1

    def conjugate(self) -> PellSolution:
        return PellSolution(self.u, -self.w, self.D, self.k)


def identity(D: int) -> PellSolution:
    return PellSolution(2, 0, D)


def cf_sqrt(delta: int) -> CFExpansion:
    """Continued fraction of sqrt(delta) via the (P, Q) recurrence.

    >>> cf_sqrt(12)
    CFExpansion(a0=3, period=(2, 6), delta=12)
    """
    _check_radicand(delta)
    a0 = isqrt(delta)
    P, Q = a0, delta - a0 * a0
    start = (P, Q)
    period = []
    while True:
        a = (a0 + P) // Q
        period.append(a)
        P = a * Q - P
        Q = (delta - P * P) // Q
        if (P, Q) == start:
            break
    return CFExpansion(a0, tuple(period), delta)


def period_parity(delta: int) -> str:
    return "even" if cf_sqrt(delta).period_length % 2 == 0 else "odd"


def fundamental_unit_pm4(D: int) -> PellSolution:
    """Smallest solution u, w > 0 of u^2 - D w^2 = +-4.

    Expands (s + sqrt(D)) / 2, s = D mod 2, and stops at the first complete
    quotient with denominator 2; the convergent p/q there gives the unit
    p - q * (s - sqrt(D)) / 2.
    """
    check_discriminant(D)
    sigma = D % 2
    r = isqrt(D)
    P, Q = sigma, 2
    p_prev, p = 0, 1
    q_prev, q = 1, 0
    while True:
        assert Q > 0
        a = (P + r) // Q
        p_prev, p = p, a * p + p_prev
        q_prev, q = q, a * q + q_prev
        P = a * Q - P
        Q = (D - P * P) // Q
        if Q == 2:
            return PellSolution(2 * p - sigma * q, q, D)


def compose(s1: PellSolution, s2: PellSolution) -> PellSolution:
    """Product of two units of the same order."""
    if s1.D != s2.D:
        raise ValueError(f"cannot compose solutions for D={s1.D} and D={s2.D}")
    if s1.k != 1 or s2.k != 1:
        raise ValueError("compose expects integral solutions (k = 1)")
    D = s1.D
    u2x = s1.u * s2.u + D * s1.w * s2.w
    w2x = s1.u * s2.w + s2.u * s1.w
    assert u2x % 2 == 0 and w2x % 2 == 0, "unit product is not integral"
    return PellSolution(u2x // 2, w2x // 2, D)


def power(s: PellSolution, n: int) -> PellSolution:
    if n < 0:
        raise ValueError("exponent must be non-negative")
    if s.k != 1:
        raise ValueError("power expects an integral solution (k = 1)")
    result = identity(s.D)
    base = s
    while n:
        if n & 1:
            result = compose(result, base)
        n >>= 1
        if n:
            base = compose(base, base)
    return result


def solve_pell4(D: int) -> PellSolution:
    eta = fundamental_unit_pm4(D)
    return eta if eta.norm == 1 else compose(eta, eta)


def solve_pell_neg4(D: int) -> PellSolution | None:
    eta = fundamental_unit_pm4(D)
    return eta if eta.norm == -1 else None


def _automorph(a: int, b: int) -> tuple[int, int, int, int]:
    """Generator (T, bU, aU, T) of the proper automorphs of a x^2 - b y^2.

    Acts by (x, y) -> (T x + bU y, aU x + T y).
    """
    k = gcd(a, b)
    s = solve_pell4(4 * a * b // (k * k))
    T = s.u // 2
    return T, b * s.w // k, a * s.w // k, T


def _search_bound(a: int, b: int, n: int) -> tuple[int, int]:
    """Box containing a representative of every automorph orbit of solutions
    of a x^2 - b y^2 = n (n != 0)."""
    T, bU, aU, _ = _automorph(a, b)
    # eps = T + U sqrt(ab) < 2T + 1; bounds from sqrt|n| <= x sqrt(a) + y sqrt(b) < sqrt|n| eps
    if n > 0:
        return (isqrt(n * (2 * T + 2) ** 2 // a) + 1, isqrt(n * aU * aU // a) + 1)
    n = -n
    return (isqrt(n * bU * bU // b) + 1, isqrt(n * (2 * T + 2) ** 2 // b) + 1)


def _small_representations(a: int, b: int, n: int) -> list[tuple[int, int]]:
    xmax, ymax = _search_bound(a, b, n)
    if n > 0:
        return [(isqrt((n + b * y * y) // a), y) for y in range(ymax + 1)
                if (n + b * y * y) % a == 0 and is_square((n + b * y * y) // a)]
    return [(x, isqrt((a * x * x - n) // b)) for x in range(xmax + 1)
            if (a * x * x - n) % b == 0 and is_square((a * x * x - n) // b)]


def _orbit_has_odd_point(x: int, y: int, a: int, b: int) -> bool:
    T, bU, aU, _ = _automorph(a, b)
    x, y = x % 2, y % 2
    seen = set()
    while (x, y) not in seen:
        if x == 1 and y == 1:
            return True
        seen.add((x, y))
        x, y = (T * x + bU * y) % 2, (aU * x + T * y) % 2
    return False


def representations(a: int, b: int, n: int) -> list[tuple[int, int]]:
    """One primitive solution of a x^2 - b y^2 = n per automorph orbit
    (possibly with repeats), for 0 < |n|.

    Uses the cycle of the form (a, 0, -b) when |n| < sqrt(ab), where every
    proper representation surfaces as a leading coefficient, and a
    bounded search otherwise.
    """
    from k3salem.qform import EvenLattice, proper_representations

    if n * n < a * b:
        return proper_representations(EvenLattice(a, 0, -b), n)
    return [(x, y) for x, y in _small_representations(a, b, n) if gcd(x, y) == 1]


def mollin_criterion(delta: int) -> bool:
    """True iff delta = a b admits a x^2 - b y^2 = +-1 (1 < a < b) or
    a x^2 - b y^2 = +-2 with x y odd (1 <= a < b)."""
    _check_radicand(delta)
    if delta <= 2:
        raise ValueError(f"radicand must exceed 2, got {delta}")
    for a in range(1, isqrt(delta) + 1):
        if delta % a:
            continue
        b = delta // a
        if a >= b:
            continue
        if a > 1 and any(representations(a, b, n) for n in (1, -1)):
            return True
        for n in (2, -2):
            if any(_orbit_has_odd_point(x, y, a, b) for x, y in representations(a, b, n)):
                return True
    return False
