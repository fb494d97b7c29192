"""Rank-2 even lattices as indefinite binary quadratic forms.

The lattice with Gram matrix (2a b; b 2c) is identified with the form
a x^2 + b x y + c y^2.  A transform M (det +1) maps a form f to f o M, which on
Gram matrices is M^T Q M.  Reduced forms of a non-square discriminant D fall
into cycles under the neighbour step; each cycle is one SL2(Z) class.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from math import gcd, isqrt

from k3salem import matrix as mx
from k3salem.matrix import Matrix
from k3salem.pell import is_square


@dataclass(frozen=True, order=True)
class EvenLattice:
    a: int
    b: int
    c: int

    @classmethod
    def from_gram(cls, gram) -> EvenLattice:
        (g11, g12), (g21, g22) = gram
        if g12 != g21:
            raise ValueError(f"Gram matrix {gram} is not symmetric")
        if g11 % 2 or g22 % 2:
            raise ValueError(f"Gram matrix {gram} has an odd diagonal entry; not an even lattice")
        return cls(g11 // 2, g12, g22 // 2)

    @property
    def D(self) -> int:
        """b^2 - 4ac, i.e. minus the Gram determinant."""
        return self.b * self.b - 4 * self.a * self.c

    @property
    def disc(self) -> int:
        return -self.D

    @property
    def gram(self) -> Matrix:
        return ((2 * self.a, self.b), (self.b, 2 * self.c))

    def __call__(self, x: int, y: int) -> int:
        return self.a * x * x + self.b * x * y + self.c * y * y

    def transform(self, m: Matrix) -> EvenLattice:
        """The form f o m, with Gram m^T Q m."""
        (p, q), (r, s) = m
        return EvenLattice(
            self(p, r),
            2 * self.a * p * q + self.b * (p * s + q * r) + 2 * self.c * r * s,
            self(q, s),
        )

    def mirror(self) -> EvenLattice:
        return EvenLattice(self.a, -self.b, self.c)

    def to_json(self) -> dict:
        return {"gram": mx.as_lists(self.gram)}

    def __str__(self) -> str:
        return f"({2 * self.a} {self.b}; {self.b} {2 * self.c})"


def content(L: EvenLattice) -> int:
    k = gcd(L.a, L.b, L.c)
    if k == 0:
        raise ValueError("the zero form has no content")
    return k


def _require_reducible(D: int) -> None:
    if D <= 0:
        raise ValueError(f"D = {D} is not positive; the lattice is not of signature (1,1)")
    if is_square(D):
        raise ValueError(f"D = {D} is a perfect square; reduction is unsupported")


def is_reduced(L: EvenLattice) -> bool:
    D = L.D
    _require_reducible(D)
    s = isqrt(D)
    two_a = 2 * abs(L.a)
    # sqrt(D) lies strictly between s and s + 1
    return 0 < L.b <= s and two_a + L.b >= s + 1 and two_a - L.b <= s


def _neighbour_b(b: int, c: int, s: int) -> int:
    """The b' = -b mod 2|c| of the neighbour step."""
    m = 2 * abs(c)
    if abs(c) > s:
        r = (-b) % m
        return r - m if r > abs(c) else r
    # the unique residue in (sqrt(D) - 2|c|, sqrt(D))
    return s - ((s + b) % m)


def rho_step(L: EvenLattice) -> tuple[EvenLattice, Matrix]:
    """Right neighbour (c, b', c') of L and the det-1 transform realising it."""
    if L.c == 0:
        raise ValueError("neighbour step needs c != 0 (square discriminant)")
    D = L.D
    _require_reducible(D)
    b_new = _neighbour_b(L.b, L.c, isqrt(D))
    t = (b_new + L.b) // (2 * L.c)
    M = ((0, -1), (1, t))
    nxt = L.transform(M)
    assert nxt.b == b_new
    return nxt, M


def reduce(L: EvenLattice) -> tuple[EvenLattice, Matrix]:
    """A reduced form R in the class of L and M with L o M = R."""
    M = mx.IDENTITY
    while not is_reduced(L):
        L, step = rho_step(L)
        M = mx.mul(M, step)
    return L, M


def _walk(R: EvenLattice):
    """Yield (form, transform from R) around the cycle of reduced R, R first."""
    form, M = R, mx.IDENTITY
    while True:
        yield form, M
        form, step = rho_step(form)
        M = mx.mul(M, step)
        if form == R:
            return


def cycle_of(L: EvenLattice) -> list[EvenLattice]:
    R, _ = reduce(L)
    return [f for f, _ in _walk(R)]


def enumerate_reduced(D: int) -> list[EvenLattice]:
    """All reduced forms of discriminant D, primitive or not, sorted."""
    if D % 4 not in (0, 1):
        raise ValueError(f"D = {D} is not 0 or 1 mod 4; no even lattice has this discriminant")
    _require_reducible(D)
    s = isqrt(D)
    out = []
    for b in range(1, s + 1):
        if (b - D) % 2:
            continue
        ac = (b * b - D) // 4
        for a_abs in range(1, -ac + 1):
            if ac % a_abs or 2 * a_abs + b < s + 1 or 2 * a_abs - b > s:
                continue
            for a in (a_abs, -a_abs):
                out.append(EvenLattice(a, b, ac // a))
    return sorted(out)


def _rep_key(L: EvenLattice):
    # positive leading coefficient first, then smallest |a|, then largest b
    return (L.a < 0, abs(L.a), -L.b, L.c)


@dataclass(frozen=True)
class FormClass:
    """One SL2(Z) class: its reduced cycle, starting at the representative."""

    cycle: tuple[EvenLattice, ...]
    primitive: bool
    represents_minus_one: bool
    mirror: int  # index of the class of the mirrored form (a, -b, c)

    @property
    def representative(self) -> EvenLattice:
        return self.cycle[0]

    # non-square D: no isotropic vectors
    represents_zero = False

    @property
    def in_L_prime(self) -> bool:
        return not self.represents_minus_one

    @property
    def content(self) -> int:
        return content(self.representative)

    def to_json(self) -> dict:
        return {
            **self.representative.to_json(),
            "primitive": self.primitive,
            "content": self.content,
            "in_L_prime": self.in_L_prime,
            "represents_zero": self.represents_zero,
            "represents_minus_one": self.represents_minus_one,
            "cycle_length": len(self.cycle),
        }


@dataclass(frozen=True)
class ClassInventory:
    D: int
    classes: tuple[FormClass, ...]
    _index: dict = field(default_factory=dict, repr=False, compare=False)

    @property
    def cycles(self) -> list[tuple[EvenLattice, ...]]:
        return [c.cycle for c in self.classes]

    def class_index(self, L: EvenLattice) -> int:
        return self._index[reduce(L)[0]]

    @property
    def narrow_class_number(self) -> int:
        return sum(1 for c in self.classes if c.primitive)

    def gl2_classes(self, primitive_only: bool = False) -> list[FormClass]:
        """One class per lattice isomorphism type (SL2 class up to mirroring)."""
        return [c for i, c in enumerate(self.classes)
                if c.mirror >= i and (c.primitive or not primitive_only)]

    @property
    def h_gl2(self) -> int:
        """Number of primitive classes up to GL2(Z)."""
        return len(self.gl2_classes(primitive_only=True))

    def to_json(self) -> dict:
        return {
            "D": self.D,
            "narrow_class_number": self.narrow_class_number,
            "classes": [dict(c.to_json(), gl2_class=min(i, c.mirror))
                        for i, c in enumerate(self.classes)],
        }


@lru_cache(maxsize=4096)
def class_inventory(D: int) -> ClassInventory:
    forms = enumerate_reduced(D)
    seen: set[EvenLattice] = set()
    cycles = []
    for f in forms:
        if f in seen:
            continue
        cyc = cycle_of(f)
        start = min(range(len(cyc)), key=lambda i: _rep_key(cyc[i]))
        cycles.append(tuple(cyc[start:] + cyc[:start]))
        seen.update(cyc)
    cycles.sort(key=lambda cyc: (_rep_key(cyc[0]), cyc[0]))
    index = {f: i for i, cyc in enumerate(cycles) for f in cyc}
    classes = []
    for cyc in cycles:
        rep = cyc[0]
        # (a, -b, c) is SL2-equivalent to the reduced (c, b, a)
        classes.append(FormClass(
            cycle=cyc,
            primitive=content(rep) == 1,
            represents_minus_one=any(f.a == -1 for f in cyc),
            mirror=index[EvenLattice(rep.c, rep.b, rep.a)],
        ))
    return ClassInventory(D, tuple(classes), index)


def narrow_class_number(D: int) -> int:
    return class_inventory(D).narrow_class_number


def represents(L: EvenLattice, n: int) -> bool:
    """Whether the form takes the value n (vector norm 2n) on the lattice."""
    D = L.D
    if n == 0:
        return is_square(D)
    if 4 * n * n >= D:
        raise ValueError(f"|2n| = {abs(2 * n)} must be below sqrt(D) for the cycle method")
    _require_reducible(D)
    return any(f.a == n for f in cycle_of(L))


def proper_representations(L: EvenLattice, n: int) -> list[tuple[int, int]]:
    """Vectors (x, y) with L(x, y) = n, gcd(x, y) = 1, one from each
    leading-coefficient occurrence of n around the cycle (|2n| < sqrt(D)).
    Every automorph orbit of proper representations is hit."""
    if n == 0 or 4 * n * n >= L.D:
        raise ValueError(f"need 0 < |2n| < sqrt(D), got n = {n}, D = {L.D}")
    R, M0 = reduce(L)
    out = []
    for f, M in _walk(R):
        if f.a == n:
            (x, _), (y, _) = mx.mul(M0, M)
            out.append((x, y))
    return out


def isotropic_vector(L: EvenLattice) -> tuple[int, int] | None:
    D = L.D
    if not is_square(D):
        return None
    if L.a == 0:
        return (1, 0)
    x, y = isqrt(D) - L.b, 2 * L.a
    g = gcd(x, y)
    return (x // g, y // g)


def in_L_prime(L: EvenLattice) -> bool:
    """No vector of norm 0 or -2."""
    if L.D <= 0:
        raise ValueError(f"D = {L.D}: lattice is not of signature (1,1)")
    if is_square(L.D):
        return False
    return not represents(L, -1)


def minus_two_vector(L: EvenLattice) -> tuple[int, int] | None:
    reps = proper_representations(L, -1)
    return reps[0] if reps else None


def sl2_equivalent(L1: EvenLattice, L2: EvenLattice) -> Matrix | None:
    """M with det 1 and L1 o M = L2, or None."""
    if L1.D != L2.D:
        raise ValueError(f"discriminants differ: {L1.D} vs {L2.D}")
    R1, M1 = reduce(L1)
    R2, M2 = reduce(L2)
    for f, N in _walk(R1):
        if f == R2:
            T = mx.mul(mx.mul(M1, N), mx.inverse(M2))
            assert L1.transform(T) == L2
            return T
    return None


MIRROR: Matrix = ((1, 0), (0, -1))


def gl2_equivalent(L1: EvenLattice, L2: EvenLattice) -> Matrix | None:
    """M with det +-1 and L1 o M = L2, or None."""
    T = sl2_equivalent(L1, L2)
    if T is not None:
        return T
    T = sl2_equivalent(L1.mirror(), L2)
    if T is None:
        return None
    T = mx.mul(MIRROR, T)
    assert L1.transform(T) == L2
    return T


def l0_lattice(D: int) -> EvenLattice:
    """The lattice (-2 d; d (D - d^2)/2), d = D mod 2, spanned from a (-2)-vector."""
    if D <= 0 or D % 4 not in (0, 1):
        raise ValueError(f"D = {D} is not a positive discriminant (0 or 1 mod 4)")
    d = D % 2
    return EvenLattice(-1, d, (D - d * d) // 4)


def is_fundamental(D: int) -> bool:
    if D % 4 == 1:
        return _squarefree(D)
    if D % 4 == 0:
        m = D // 4
        return m % 4 in (2, 3) and _squarefree(m)
    return False


def _squarefree(n: int) -> bool:
    p = 2
    while p * p <= n:
        if n % (p * p) == 0:
            return False
        p += 1
    return n > 0
