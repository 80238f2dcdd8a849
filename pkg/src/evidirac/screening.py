"""Pencil screening with the Dirac inequality, Helgason-Johnson filters and
range predicates for theta-stable parabolics."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from math import ceil

from .chambers import default_chambers
from .compact import build_compact_datum, is_k_type
from .lattice import RANK, GroupElement, WeightVector, sum_vectors
from .norms import spin_norm_sq

BETA = (0, 0, 0, 0, 0, 1, 1)

HJ_CLASSICAL = Fraction(399, 2)
HJ_SHARP = Fraction(227, 2)
HJ_INTEGRAL = Fraction(165, 2)
HJ_THRESHOLDS = (HJ_CLASSICAL, HJ_SHARP, HJ_INTEGRAL)


@dataclass(frozen=True)
class PencilReport:
    min_value_sq: Fraction
    attaining_n: frozenset
    terminated_at: int
    per_n: tuple


class Verdict(enum.Enum):
    NON_UNITARY = "NonUnitary"
    INCONCLUSIVE = "Inconclusive"


@dataclass(frozen=True)
class ScreenVerdict:
    verdict: Verdict
    witness_n: int | None = None
    pencil: PencilReport | None = None


def _gram():
    return build_compact_datum().varpi_gram


def _pair(x, y):
    g = _gram()
    return sum((x[a] * g[a][b] * y[b] for a in range(RANK) for b in range(RANK) if x[a] and y[b]),
               Fraction(0))


def _spin_lower_bound(mu, rho_ns, rho_c_sq):
    # |{x} + rho_c|^2 >= |x|^2 + |rho_c|^2 because {x} pairs nonnegatively with rho_c
    best = None
    for r in rho_ns:
        d = [m - x for m, x in zip(mu, r)]
        v = _pair(d, d)
        if best is None or v < best:
            best = v
    return best + rho_c_sq


def pencil_min_spin(delta, max_steps: int = 10000) -> PencilReport:
    """Minimum spin norm along ``delta + n beta``, n >= 0.

    Stops at ``n`` once ``n+1`` lies past the vertex of every quadratic
    ``|delta + m beta - rho_n^(j)|^2`` and the resulting lower bound at
    ``n+1`` exceeds the current minimum; the bound only grows from there.
    """
    delta = tuple(int(x) for x in delta)
    if not is_k_type(delta):
        raise ValueError(f"{list(delta)} is not a K-type")
    k = build_compact_datum()
    rho_ns = [c.rho_n_varpi for c in default_chambers()]
    rho_c_sq = k.rho_c.norm2()
    beta2 = _pair(BETA, BETA)
    vertex = max(-_pair([d - x for d, x in zip(delta, r)], BETA) / beta2 for r in rho_ns)
    past = max(0, ceil(vertex))
    per_n = []
    best = None
    n = 0
    while True:
        mu = tuple(d + n * b for d, b in zip(delta, BETA))
        v = spin_norm_sq(mu).value_sq
        per_n.append((n, v))
        if best is None or v < best:
            best = v
        nxt = tuple(d + (n + 1) * b for d, b in zip(delta, BETA))
        if n + 1 >= past and _spin_lower_bound(nxt, rho_ns, rho_c_sq) > best:
            break
        n += 1
        if n > max_steps:
            raise RuntimeError("pencil did not terminate")
    attaining = frozenset(m for m, v in per_n if v == best)
    return PencilReport(best, attaining, n, tuple(per_n))


def dirac_screen(delta, lambda_sq) -> ScreenVerdict:
    rep = pencil_min_spin(delta)
    lambda_sq = Fraction(lambda_sq)
    if rep.min_value_sq < lambda_sq:
        witness = min(n for n, v in rep.per_n if v < lambda_sq)
        return ScreenVerdict(Verdict.NON_UNITARY, witness, rep)
    return ScreenVerdict(Verdict.INCONCLUSIVE, None, rep)


def hj_filter(nu_sq, threshold) -> bool:
    threshold = Fraction(threshold)
    if threshold not in HJ_THRESHOLDS:
        raise ValueError(f"unknown threshold {threshold}")
    return Fraction(nu_sq) <= threshold


def _as_vector(lam) -> WeightVector:
    if isinstance(lam, WeightVector):
        return lam
    return build_compact_datum().root_datum.from_zeta(tuple(lam))


def nu_from_involution(lam, theta: GroupElement) -> WeightVector:
    if not theta.is_involution():
        raise ValueError("theta does not square to the identity")
    v = _as_vector(lam)
    return (v - theta.apply_matrix(v)) / 2


# --- theta-stable parabolics ---------------------------------------------

@dataclass(frozen=True)
class ParabolicData:
    defining_H: WeightVector
    levi_roots: tuple
    nilrad_roots: tuple
    rho_u: WeightVector


class Range(enum.Enum):
    GOOD = "Good"
    WEAKLY_GOOD = "WeaklyGood"
    FAIR = "Fair"
    WEAKLY_FAIR = "WeaklyFair"
    NONE = "None"


def build_parabolic(H: WeightVector) -> ParabolicData:
    k = build_compact_datum()
    if not k.is_k_dominant(H):
        raise ValueError("H must be dominant for the compact positive system")
    roots = k.root_datum.all_roots
    u = tuple(a for a in roots if H.dot(a) > 0)
    l = tuple(a for a in roots if H.dot(a) == 0)
    return ParabolicData(H, l, u, sum_vectors(u) / 2)


def _center_projection(v: WeightVector, levi_roots) -> WeightVector:
    """Orthogonal projection onto the common fixed space of the Levi reflections."""
    if not levi_roots:
        return v
    # Gram-Schmidt on the span of the Levi roots
    basis = []
    for a in levi_roots:
        w = a
        for b in basis:
            w = w - b * (w.dot(b) / b.dot(b))
        if not w.is_zero():
            basis.append(w)
    for b in basis:
        v = v - b * (v.dot(b) / b.dot(b))
    return v


def classify_range(lam_z: WeightVector, q: ParabolicData) -> Range:
    shifted = lam_z + q.rho_u
    direct = [shifted.dot(a) for a in q.nilrad_roots]
    if all(x > 0 for x in direct):
        return Range.GOOD
    if all(x >= 0 for x in direct):
        return Range.WEAKLY_GOOD
    central = [shifted.dot(_center_projection(a, q.levi_roots)) for a in q.nilrad_roots]
    if all(x > 0 for x in central):
        return Range.FAIR
    if all(x >= 0 for x in central):
        return Range.WEAKLY_FAIR
    return Range.NONE


def strongly_regular(lam, positive_system) -> bool:
    v = _as_vector(lam)
    rho_p = sum_vectors(positive_system) / 2
    return all((v - rho_p).dot(a) >= 0 for a in positive_system)
