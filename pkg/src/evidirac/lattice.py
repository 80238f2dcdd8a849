"""Exact E7 root datum in eight orthonormal coordinates.

Weights live in the hyperplane orthogonal to ``e7 + e8``.  Every root has
squared length 2, so coroot pairings coincide with the bilinear form and the
Cartan matrix is the Gram matrix of the simple roots.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache
from typing import Sequence

from . import _linalg, kernels

DIM = 8
RANK = 7


@dataclass(frozen=True)
class WeightVector:
    coords: tuple

    def __post_init__(self):
        c = tuple(Fraction(x) for x in self.coords)
        if len(c) != DIM:
            raise ValueError(f"expected {DIM} coordinates, got {len(c)}")
        if c[6] + c[7] != 0:
            raise ValueError("weight is not orthogonal to e7+e8")
        object.__setattr__(self, "coords", c)

    @classmethod
    def zero(cls):
        return cls((0,) * DIM)

    def __add__(self, other):
        return WeightVector(tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other):
        return WeightVector(tuple(a - b for a, b in zip(self.coords, other.coords)))

    def __neg__(self):
        return WeightVector(tuple(-a for a in self.coords))

    def __mul__(self, k):
        k = Fraction(k)
        return WeightVector(tuple(k * a for a in self.coords))

    __rmul__ = __mul__

    def __truediv__(self, k):
        return self * (1 / Fraction(k))

    def dot(self, other):
        return sum((a * b for a, b in zip(self.coords, other.coords)), Fraction(0))

    def norm2(self):
        return self.dot(self)

    def is_zero(self):
        return not any(self.coords)

    def __repr__(self):
        return "WeightVector(" + ", ".join(str(x) for x in self.coords) + ")"


def bilinear_form(u: WeightVector, v: WeightVector) -> Fraction:
    """The standard pairing, which restricts to the invariant form."""
    return u.dot(v)


def reflect(v: WeightVector, root: WeightVector) -> WeightVector:
    c = 2 * v.dot(root) / root.dot(root)
    return v - root * c


def sum_vectors(vectors, start=None):
    total = start if start is not None else WeightVector.zero()
    for v in vectors:
        total = total + v
    return total


@dataclass(frozen=True)
class GroupElement:
    """A Weyl group element as a word in the reflections of ``generators``.

    ``word = (i1, ..., ik)`` denotes the product ``s_i1 s_i2 ... s_ik``, so
    ``apply`` uses the last letter first.
    """

    word: tuple
    generators: tuple
    length: int

    @classmethod
    def identity(cls, generators):
        return cls((), tuple(generators), 0)

    def apply(self, v: WeightVector) -> WeightVector:
        for i in reversed(self.word):
            v = reflect(v, self.generators[i])
        return v

    @cached_property
    def matrix(self):
        """8x8 rational matrix; column ``k`` is the image of ``e_k``."""
        cols = []
        for k in range(DIM):
            e = [Fraction(0)] * DIM
            e[k] = Fraction(1)
            # e_k itself is off the hyperplane, so reflect raw coordinates
            for i in reversed(self.word):
                a = self.generators[i].coords
                c = sum((x * y for x, y in zip(e, a)), Fraction(0))
                e = [x - c * y for x, y in zip(e, a)]
            cols.append(e)
        return tuple(tuple(cols[k][r] for k in range(DIM)) for r in range(DIM))

    def apply_matrix(self, v: WeightVector) -> WeightVector:
        m = self.matrix
        return WeightVector(tuple(sum((m[r][k] * v.coords[k] for k in range(DIM)), Fraction(0))
                                  for r in range(DIM)))

    def inverse(self):
        return GroupElement(tuple(reversed(self.word)), self.generators, self.length)

    def compose(self, other):
        """``self * other``; the length is only an upper bound if not reduced."""
        if other.generators != self.generators:
            raise ValueError("elements use different generators")
        return GroupElement(self.word + other.word, self.generators, self.length + other.length)

    def determinant(self):
        return (-1) ** len(self.word)

    def is_involution(self):
        m = self.matrix
        sq = _linalg.matmul(m, m)
        return all(sq[i][j] == (i == j) for i in range(DIM) for j in range(DIM))


@lru_cache(maxsize=None)
def _system_cartan(system):
    return tuple(tuple(int(2 * a.dot(b) / b.dot(b)) for b in system) for a in system)


def dominant_conjugate(v: WeightVector, system: Sequence[WeightVector]):
    """The unique conjugate of ``v`` dominant for the simple system ``system``.

    Reflects at the lowest-index simple root with negative pairing until none
    remains.  Returns ``(dominant, element)`` with ``element.apply(v) == dominant``.
    """
    system = tuple(system)
    cartan = _system_cartan(system)
    pair = [2 * v.dot(a) / a.dot(a) for a in system]
    ints, _ = _linalg.scale_to_int(pair)
    _, applied = kernels.dominant_word(ints, cartan)
    dom = v
    for i in applied:
        dom = reflect(dom, system[i])
    element = GroupElement(tuple(reversed(applied)), system, len(applied))
    return dom, element


def positive_roots_of(system: Sequence[WeightVector], roots) -> list:
    """Roots that are nonnegative combinations of ``system`` (same span only)."""
    system = list(system)
    gram = [[a.dot(b) for b in system] for a in system]
    inv = _linalg.inverse(gram)
    out = []
    for r in roots:
        coeffs = _linalg.matvec(inv, [r.dot(a) for a in system])
        if all(c >= 0 for c in coeffs):
            out.append(r)
    return out


def root_closure(generators: Sequence[WeightVector]) -> list:
    """All roots of the subsystem generated by reflections in ``generators``."""
    found = {g.coords: g for g in generators}
    for g in generators:
        found.setdefault((-g).coords, -g)
    frontier = list(found.values())
    while frontier:
        nxt = []
        for r in frontier:
            for g in generators:
                t = reflect(r, g)
                if t.coords not in found:
                    found[t.coords] = t
                    nxt.append(t)
        frontier = nxt
    return sorted(found.values(), key=lambda r: r.coords)


def weyl_dimension(hw: WeightVector, positive_system: Sequence[WeightVector]) -> int:
    """Weyl dimension formula over ``positive_system``."""
    rho = sum_vectors(positive_system) / 2
    shifted = hw + rho
    num = Fraction(1)
    for a in positive_system:
        num *= shifted.dot(a) / rho.dot(a)
    if num.denominator != 1:
        raise ValueError(f"non-integral dimension {num}: weight not dominant integral")
    if num < 0:
        raise ValueError(f"negative dimension {num}: weight not dominant")
    return int(num)


def _simple_roots():
    h = Fraction(1, 2)
    e = [[Fraction(int(i == k)) for i in range(DIM)] for k in range(DIM)]
    a1 = (h, -h, -h, -h, -h, -h, -h, h)
    a2 = tuple(x + y for x, y in zip(e[0], e[1]))
    rest = [tuple(x - y for x, y in zip(e[i - 2], e[i - 3])) for i in range(3, 8)]
    return [WeightVector(a1), WeightVector(a2)] + [WeightVector(r) for r in rest]


@dataclass(frozen=True)
class RootDatum:
    simple_roots: tuple
    positive_roots: tuple
    all_roots: tuple
    fundamental_weights: tuple
    rho: WeightVector
    highest_root: WeightVector
    cartan: tuple

    def to_zeta(self, v: WeightVector) -> tuple:
        """Coordinates in the fundamental weight basis."""
        return tuple(v.dot(a) for a in self.simple_roots)

    def from_zeta(self, coeffs) -> WeightVector:
        out = WeightVector.zero()
        for c, z in zip(coeffs, self.fundamental_weights):
            if c:
                out = out + z * c
        return out

    @cached_property
    def zeta_gram(self):
        return tuple(tuple(a.dot(b) for b in self.fundamental_weights)
                     for a in self.fundamental_weights)

    @cached_property
    def zeta_gram2(self):
        """Twice the fundamental-weight Gram matrix (integral for E7)."""
        g = [[2 * x for x in row] for row in self.zeta_gram]
        assert all(x.denominator == 1 for row in g for x in row)
        return tuple(tuple(int(x) for x in row) for row in g)

    def norm2_zeta(self, coeffs) -> Fraction:
        g = self.zeta_gram
        c = [Fraction(x) for x in coeffs]
        return sum((c[i] * g[i][j] * c[j] for i in range(RANK) for j in range(RANK)), Fraction(0))

    def is_dominant(self, v: WeightVector) -> bool:
        return all(x >= 0 for x in self.to_zeta(v))

    def orbit_level_sizes(self, start=None):
        """Length-graded sizes of the Weyl orbit of a regular dominant weight."""
        start = self.rho if start is None else start
        ints, _ = _linalg.scale_to_int(self.to_zeta(start))
        return kernels.orbit_levels(ints, self.cartan)

    def weyl_group_order(self) -> int:
        return sum(self.orbit_level_sizes())

    def longest_element(self) -> GroupElement:
        return dominant_conjugate(-self.rho, self.simple_roots)[1]


@lru_cache(maxsize=1)
def build_root_datum() -> RootDatum:
    simple = _simple_roots()
    roots = root_closure(simple)
    if len(roots) != 126:
        raise RuntimeError(f"root closure produced {len(roots)} roots, expected 126")
    gram = [[a.dot(b) for b in simple] for a in simple]
    # fundamental weights: B(z_i, a_j) = delta_ij and z_i orthogonal to e7+e8
    rows = [list(a.coords) for a in simple] + [[0] * 6 + [1, 1]]
    inv = _linalg.inverse(rows)
    fws = []
    for i in range(RANK):
        rhs = [Fraction(int(i == j)) for j in range(RANK)] + [Fraction(0)]
        fws.append(WeightVector(tuple(_linalg.matvec(inv, rhs))))
    positive = positive_roots_of(simple, roots)
    if len(positive) != 63:
        raise RuntimeError(f"found {len(positive)} positive roots, expected 63")
    rho = sum_vectors(positive) / 2
    highest = max(positive, key=lambda r: r.dot(rho))
    cartan = tuple(tuple(int(x) for x in row) for row in gram)
    return RootDatum(tuple(simple), tuple(positive), tuple(roots), tuple(fws),
                     rho, highest, cartan)
