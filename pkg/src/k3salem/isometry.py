"""Isometries of rank-2 even lattices of signature (1,1).

A solution (u, v) of u^2 - D v^2 = 4 with u > 0 gives the orientation- and
cone-preserving isometry

    g(u, v) = ((u - b v)/2, -c v; a v, (u + b v)/2)

of the lattice (2a b; b 2c); all of SO+ arises this way.
"""

from __future__ import annotations

import decimal
import enum
from dataclasses import dataclass
from fractions import Fraction
from math import isqrt

from k3salem import matrix as mx
from k3salem.matrix import Matrix
from k3salem.pell import PellSolution, is_square, solve_pell4
from k3salem.qform import EvenLattice, content


class Orientation(enum.Enum):
    SO_PLUS = "SO+"
    SO_MINUS = "SO \\ SO+"
    O_PLUS_NOT_SO = "O+ \\ SO+"
    O_MINUS_NOT_SO = "O \\ (SO u O+)"

    @property
    def preserves_cone(self) -> bool:
        return self in (Orientation.SO_PLUS, Orientation.O_PLUS_NOT_SO)


@dataclass(frozen=True)
class Isometry:
    m: Matrix
    lattice: EvenLattice

    def __post_init__(self):
        if not is_isometry(self.lattice, self.m):
            raise ValueError(f"{self.m} is not an isometry of {self.lattice}")

    @property
    def trace(self) -> int:
        return mx.trace(self.m)

    @property
    def det(self) -> int:
        return mx.det(self.m)

    def uv(self) -> tuple[int, Fraction]:
        return read_uv(self.lattice, self.m)

    def __mul__(self, other: Isometry) -> Isometry:
        return Isometry(mx.mul(self.m, other.m), self.lattice)

    def __pow__(self, n: int) -> Isometry:
        return Isometry(mx.mat_pow(self.m, n), self.lattice)

    def inverse(self) -> Isometry:
        return Isometry(mx.inverse(self.m), self.lattice)

    def to_json(self) -> dict:
        out = {"matrix": mx.as_lists(self.m), "gram": mx.as_lists(self.lattice.gram)}
        if self.det == 1:
            u, v = self.uv()
            out.update(u=u, v_num=v.numerator, v_den=v.denominator)
        return out


def g_from_pell(L: EvenLattice, s: PellSolution) -> Isometry:
    if s.D != L.D:
        raise ValueError(f"solution is for D={s.D}, lattice has D={L.D}")
    if s.norm != 1:
        raise ValueError("isometries come from solutions of norm +1")
    v = s.v
    entries = [(s.u - L.b * v) / 2, -L.c * v, L.a * v, (s.u + L.b * v) / 2]
    if any(e.denominator != 1 for e in entries):
        raise ValueError(f"(u, v) = ({s.u}, {v}) gives a non-integral matrix on {L}")
    p, q, r, t = (int(e) for e in entries)
    return Isometry(((p, q), (r, t)), L)


def read_uv(L: EvenLattice, m: Matrix) -> tuple[int, Fraction]:
    """Recover (u, v) with m = g(u, v) from the trace and an off-diagonal entry."""
    u = mx.trace(m)
    if L.a != 0:
        v = Fraction(m[1][0], L.a)
    elif L.c != 0:
        v = Fraction(-m[0][1], L.c)
    else:
        raise ValueError("a = c = 0: square discriminant")
    return u, v


def is_isometry(L: EvenLattice, m: Matrix) -> bool:
    return mx.det(m) in (1, -1) and mx.congruent(m, L.gram) == L.gram


def _positive_vector(L: EvenLattice) -> tuple[int, int]:
    a, b, c = L.a, L.b, L.c
    if a > 0:
        return (1, 0)
    if a < 0:
        return (-b, 2 * a)  # L(-b, 2a) = -a D
    if c > 0:
        return (0, 1)
    if c < 0:
        return (2 * c, -b)  # L(2c, -b) = -c D
    return (1, 1 if b > 0 else -1)


def orientation(L: EvenLattice, m: Matrix) -> Orientation:
    if not is_isometry(L, m):
        raise ValueError(f"{m} is not an isometry of {L}")
    if mx.det(m) == 1:
        # eigenvalues (u +- v sqrt D)/2 share the sign of u = tr
        return Orientation.SO_PLUS if mx.trace(m) > 0 else Orientation.SO_MINUS
    x, y = _positive_vector(L)
    (p, q), (r, s) = m
    gx, gy = p * x + q * y, r * x + s * y
    (A, B), (_, C) = L.gram
    pairing = A * x * gx + B * (x * gy + y * gx) + C * y * gy
    return Orientation.O_PLUS_NOT_SO if pairing > 0 else Orientation.O_MINUS_NOT_SO


def det_and_orientation(L: EvenLattice, m: Matrix) -> Orientation:
    return orientation(L, m)


def so_plus_generator(L: EvenLattice) -> Isometry | None:
    """Generator of SO+(L) with u > 2, v > 0; None when SO+ is trivial (D square)."""
    D = L.D
    if D <= 0:
        raise ValueError(f"D = {D}: lattice is not of signature (1,1)")
    if is_square(D):
        return None
    k = content(L)
    s = solve_pell4(D // (k * k))
    return g_from_pell(L, PellSolution(s.u, s.w, D, k))


def acts_eps_on_disc_group(L: EvenLattice, g: Matrix, eps: int) -> bool:
    """Whether (g - eps I) Q^{-1} is integral, i.e. g acts as eps on L*/L."""
    Q = L.gram
    d = mx.det(Q)
    (p, q), (r, s) = g
    shifted = ((p - eps, q), (r, s - eps))
    return all(x % d == 0 for row in mx.mul(shifted, mx.adjugate(Q)) for x in row)


def decompose_alpha_beta(L: EvenLattice, g: Matrix, eps: int) -> tuple[int, int] | None:
    """(alpha, beta) with tr g = alpha^2 - 2 eps, v = alpha beta and
    alpha^2 - D beta^2 = 4 eps, when g acts as eps on the discriminant group."""
    if g == mx.IDENTITY:
        raise ValueError("the identity has no decomposition (needs u > 2)")
    if orientation(L, g) is not Orientation.SO_PLUS:
        raise ValueError("decomposition needs g in SO+")
    u, v = read_uv(L, g)
    D = L.D
    if (u - 2 * eps) % D:
        return None
    m = (u - 2 * eps) // D
    if m <= 0 or not is_square(m):
        return None
    n = isqrt(m)
    alpha_sq = n * n * D + 4 * eps
    if not is_square(alpha_sq):
        return None
    alpha = isqrt(alpha_sq)
    beta = n if v > 0 else -n
    if v != alpha * beta:
        return None
    return alpha, beta


def salem_trace_poly(g: Matrix) -> tuple[int, tuple[int, int, int]]:
    """Trace t and coefficients (1, -t, 1) of x^2 - t x + 1."""
    t = mx.trace(g)
    return t, (1, -t, 1)


@dataclass(frozen=True)
class SpectralRadius:
    """(u + sqrt(radicand)) / 2 with radicand = u^2 - 4 = D v^2."""

    u: int
    radicand: int

    @classmethod
    def from_trace(cls, u: int) -> SpectralRadius:
        if u < 2:
            raise ValueError(f"trace {u} < 2: not a hyperbolic or identity element of SO+")
        return cls(u, u * u - 4)

    def decimal(self, prec: int = 30) -> decimal.Decimal:
        with decimal.localcontext() as ctx:
            ctx.prec = prec + 10
            r = (decimal.Decimal(self.u) + decimal.Decimal(self.radicand).sqrt()) / 2
            ctx.prec = prec
            return +r

    def entropy(self, prec: int = 30) -> decimal.Decimal:
        with decimal.localcontext() as ctx:
            ctx.prec = prec + 10
            e = self.decimal(prec + 10).ln()
            ctx.prec = prec
            return +e

    def __str__(self) -> str:
        return f"({self.u}+sqrt({self.radicand}))/2"


def spectral_radius(g: Matrix) -> SpectralRadius:
    return SpectralRadius.from_trace(mx.trace(g))


def entropy(g: Matrix, prec: int = 30) -> decimal.Decimal:
    return spectral_radius(g).entropy(prec)


# Conjugator exchanging U and U^{-1} on the lattice (4 2; 2 -4).
V_CONJUGATOR: Matrix = ((1, 0), (1, -1))
