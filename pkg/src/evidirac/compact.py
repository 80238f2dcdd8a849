"""The compact subsystem of type D6 x A1, its weights and K-type encoding."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache

from . import _linalg
from .lattice import (RANK, RootDatum, WeightVector, build_root_datum, positive_roots_of,
                      root_closure, sum_vectors)


@dataclass(frozen=True)
class KType:
    """Highest weight of a K-type in fundamental-weight coordinates of k."""

    coeffs: tuple

    def __post_init__(self):
        c = tuple(self.coeffs)
        if len(c) != RANK or not all(isinstance(x, int) for x in c):
            raise ValueError(f"K-type needs {RANK} integers, got {self.coeffs!r}")
        if not is_k_type(c):
            raise ValueError(f"{list(c)} is not a K-type (negative entry or a+c+f+g odd)")
        object.__setattr__(self, "coeffs", c)

    def __iter__(self):
        return iter(self.coeffs)

    def __add__(self, other):
        return KType(tuple(a + b for a, b in zip(self.coeffs, tuple(other))))

    def __str__(self):
        return "[" + ",".join(str(x) for x in self.coeffs) + "]"


def is_k_type(coeffs) -> bool:
    c = list(coeffs)
    if len(c) != RANK or any(x < 0 for x in c):
        return False
    if any(Fraction(x).denominator != 1 for x in c):
        return False
    return (c[0] + c[2] + c[5] + c[6]) % 2 == 0


@dataclass(frozen=True)
class CompactDatum:
    root_datum: RootDatum
    gamma: tuple
    positive_k_roots: tuple
    k_roots: tuple
    rho_c: WeightVector
    varpi: tuple
    noncompact_roots: tuple
    beta: WeightVector
    cartan: tuple

    def to_varpi(self, v: WeightVector) -> tuple:
        return tuple(v.dot(g) for g in self.gamma)

    def from_varpi(self, coeffs) -> WeightVector:
        out = WeightVector.zero()
        for c, w in zip(coeffs, self.varpi):
            if c:
                out = out + w * c
        return out

    @cached_property
    def varpi_gram(self):
        return tuple(tuple(a.dot(b) for b in self.varpi) for a in self.varpi)

    @cached_property
    def varpi_gram2(self):
        g = [[2 * x for x in row] for row in self.varpi_gram]
        assert all(x.denominator == 1 for row in g for x in row)
        return tuple(tuple(int(x) for x in row) for row in g)

    @cached_property
    def varpi_to_zeta(self):
        """Row ``k`` holds the zeta-coordinates of ``varpi_k``."""
        d = self.root_datum
        return tuple(d.to_zeta(w) for w in self.varpi)

    @cached_property
    def zeta_to_varpi(self):
        d = self.root_datum
        return tuple(self.to_varpi(z) for z in d.fundamental_weights)

    def norm2_varpi(self, coeffs) -> Fraction:
        g = self.varpi_gram
        c = [Fraction(x) for x in coeffs]
        return sum((c[i] * g[i][j] * c[j] for i in range(RANK) for j in range(RANK)), Fraction(0))

    def is_k_dominant(self, v: WeightVector) -> bool:
        return all(x >= 0 for x in self.to_varpi(v))

    def is_compact(self, root: WeightVector) -> bool:
        return root.coords in self._k_root_set

    @cached_property
    def _k_root_set(self):
        return frozenset(r.coords for r in self.k_roots)


def ktype_to_vector(kt, compact: CompactDatum | None = None) -> WeightVector:
    compact = compact or build_compact_datum()
    return compact.from_varpi(tuple(kt))


def vector_to_ktype(v: WeightVector, compact: CompactDatum | None = None) -> KType:
    compact = compact or build_compact_datum()
    c = compact.to_varpi(v)
    if any(x.denominator != 1 for x in c):
        raise ValueError(f"weight is not k-integral: {[str(x) for x in c]}")
    if any(x < 0 for x in c):
        raise ValueError(f"weight is not k-dominant: {[str(x) for x in c]}")
    return KType(tuple(int(x) for x in c))


@lru_cache(maxsize=1)
def build_compact_datum(datum: RootDatum | None = None) -> CompactDatum:
    d = datum or build_root_datum()
    a = d.simple_roots
    gamma = (a[6], a[5], a[4], a[3], a[1], a[2], d.highest_root)
    k_roots = root_closure(gamma)
    if len(k_roots) != 62:
        raise RuntimeError(f"compact subsystem has {len(k_roots)} roots, expected 62")
    k_set = {r.coords for r in k_roots}
    positive_k = [r for r in d.positive_roots if r.coords in k_set]
    if positive_roots_of(gamma, k_roots) != sorted(positive_k, key=lambda r: r.coords):
        raise RuntimeError("gamma is not the simple system of the positive compact roots")
    noncompact = [r for r in d.all_roots if r.coords not in k_set]
    rows = [list(g.coords) for g in gamma] + [[0] * 6 + [1, 1]]
    inv = _linalg.inverse(rows)
    varpi = []
    for i in range(RANK):
        rhs = [Fraction(int(i == j)) for j in range(RANK)] + [Fraction(0)]
        varpi.append(WeightVector(tuple(_linalg.matvec(inv, rhs))))
    beta = a[0] + 2 * a[1] + 3 * a[2] + 4 * a[3] + 3 * a[4] + 2 * a[5] + a[6]
    cartan = tuple(tuple(int(x.dot(y)) for y in gamma) for x in gamma)
    rho_c = sum_vectors(positive_k) / 2
    return CompactDatum(d, gamma, tuple(positive_k), tuple(k_roots), rho_c, tuple(varpi),
                        tuple(noncompact), beta, cartan)
