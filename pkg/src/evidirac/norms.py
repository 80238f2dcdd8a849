"""Spin norm and lambda norm of K-types.

Both norms are computed in integer arithmetic on doubled coordinates and
returned as exact ``Fraction`` values of the squared norm.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations

from . import _linalg, kernels
from .chambers import default_chambers
from .compact import KType, build_compact_datum, ktype_to_vector
from .lattice import RANK, WeightVector, dominant_conjugate, sum_vectors


@dataclass(frozen=True)
class SpinNormReport:
    value_sq: Fraction
    argmin_chambers: frozenset
    per_chamber_values: tuple

    def __post_init__(self):
        assert self.value_sq == min(self.per_chamber_values)


@dataclass(frozen=True)
class LambdaReport:
    lambda_a: WeightVector
    value_sq: Fraction
    chamber_used: int
    allowable: tuple = ()


def prv_bracket(v: WeightVector) -> WeightVector:
    """Dominant conjugate of ``v`` under the compact Weyl group."""
    return dominant_conjugate(v, build_compact_datum().gamma)[0]


# --- spin norm ------------------------------------------------------------

@lru_cache(maxsize=1)
def _spin_tables():
    k = build_compact_datum()
    rho_n = [list(c.rho_n_varpi) for c in default_chambers()]
    cartan = [list(r) for r in k.cartan]
    gram2 = [list(r) for r in k.varpi_gram2]
    return rho_n, cartan, gram2, [1] * RANK


def spin_values2(mu) -> list:
    """Twice the per-chamber spin values, as integers."""
    rho_n, cartan, gram2, shift = _spin_tables()
    return kernels.spin_values(list(mu), rho_n, cartan, gram2, shift)


def spin_norm_sq(mu) -> SpinNormReport:
    vals = [Fraction(v, 2) for v in spin_values2(tuple(mu))]
    best = min(vals)
    arg = frozenset(j for j, v in enumerate(vals) if v == best)
    return SpinNormReport(best, arg, tuple(vals))


def spin_norm_value(mu) -> Fraction:
    return Fraction(min(spin_values2(tuple(mu))), 2)


# --- lambda norm -----------------------------------------------------------

@dataclass(frozen=True)
class _Face:
    S: tuple
    rest: tuple
    det: int
    adj: tuple  # adjugate of the Cartan submatrix on S


@lru_cache(maxsize=1)
def _faces():
    """The 128 faces of the dominant cone, smallest first."""
    cartan = build_compact_datum().root_datum.cartan
    out = []
    for size in range(RANK + 1):
        for S in combinations(range(RANK), size):
            rest = tuple(i for i in range(RANK) if i not in S)
            if not S:
                out.append(_Face(S, rest, 1, ()))
                continue
            sub = [[Fraction(cartan[a][b]) for b in S] for a in S]
            det = _linalg.determinant(sub)
            inv = _linalg.inverse(sub)
            adj = tuple(tuple(int(x * det) for x in row) for row in inv)
            out.append(_Face(S, rest, int(det), adj))
    return tuple(out)


@lru_cache(maxsize=1)
def _lambda_tables():
    """Per chamber: P2[k][i] = 2B(varpi_k, w alpha_i) and off2[i] = 2B(2rho_c - rho_j, w alpha_i)."""
    k = build_compact_datum()
    out = []
    for c in default_chambers():
        P = [[w.dot(a) * 2 for a in c.simple_roots_j] for w in k.varpi]
        off = [(k.rho_c * 2 - c.rho_j).dot(a) * 2 for a in c.simple_roots_j]
        assert all(x.denominator == 1 for row in P for x in row)
        assert all(x.denominator == 1 for x in off)
        out.append(([[int(x) for x in row] for row in P], [int(x) for x in off]))
    return out


def _pairings2(mu, table):
    P, off = table
    return [off[i] + sum(mu[k] * P[k][i] for k in range(RANK)) for i in range(RANK)]


def allowable_chambers(mu) -> list:
    """Chambers whose closed cone contains ``mu + 2 rho_c``."""
    out = []
    for j, tab in enumerate(_lambda_tables()):
        # B(mu + 2rho_c, w alpha_i) = a_i + B(rho, alpha_i) = a_i + 1
        if all(x + 2 >= 0 for x in _pairings2(mu, tab)):
            out.append(j)
    return out


def project_dominant(a2):
    """Nearest point of the dominant cone, in zeta coordinates.

    ``a2`` holds twice the zeta coordinates of the point.  Returns
    ``(face, c, d, scale)`` where ``c / scale`` are the zeta coordinates of
    the projection and ``d / scale`` the simple-root coefficients of the
    residual (all nonpositive).
    """
    cartan = build_compact_datum().root_datum.cartan
    for f in _faces():
        S, det, adj = f.S, f.det, f.adj
        # d_S = A_S^{-1} a_S, scaled by det (det > 0)
        dS = [sum(adj[r][t] * a2[S[t]] for t in range(len(S))) for r in range(len(S))]
        if any(x > 0 for x in dS):
            continue
        c = [a2[i] * det - sum(dS[t] * cartan[S[t]][i] for t in range(len(S)))
             for i in range(RANK)]
        if any(c[i] < 0 for i in f.rest):
            continue
        assert all(c[i] == 0 for i in S)
        d = [0] * RANK
        for t, s in enumerate(S):
            d[s] = dS[t]
        return f, c, d, 2 * det
    raise AssertionError("no face of the dominant cone satisfies the projection conditions")


def _norm_from_zeta(c, scale) -> Fraction:
    g2 = build_compact_datum().root_datum.zeta_gram2
    s = sum(c[i] * g2[i][j] * c[j] for i in range(RANK) for j in range(RANK))
    return Fraction(s, 2 * scale * scale)


def lambda_norm_value(mu) -> Fraction:
    """Squared lambda norm, without building vectors.  Checks all allowable chambers agree."""
    tabs = _lambda_tables()
    vals = set()
    for j in allowable_chambers(mu):
        _, c, _, scale = project_dominant(_pairings2(mu, tabs[j]))
        vals.add(_norm_from_zeta(c, scale))
    if len(vals) != 1:
        raise AssertionError(f"lambda norm of {list(mu)} depends on the chamber: {vals}")
    return vals.pop()


def lambda_a(mu) -> LambdaReport:
    k = build_compact_datum()
    chambers = default_chambers()
    tabs = _lambda_tables()
    allowable = allowable_chambers(mu)
    if not allowable:
        raise AssertionError(f"no chamber contains mu + 2rho_c for {list(mu)}")
    p0 = ktype_to_vector(tuple(mu), k) + k.rho_c * 2
    results = []
    for j in allowable:
        ch = chambers[j]
        p = p0 - ch.rho_j
        _, c, d, scale = project_dominant(_pairings2(mu, tabs[j]))
        lam = sum_vectors(z * Fraction(ci, scale) for z, ci in zip(ch.fw_j, c) if ci)
        r = p - lam
        # KKT certificate for the nearest point of the cone spanned by w zeta_i
        assert r == sum_vectors(a * Fraction(di, scale) for a, di in zip(ch.simple_roots_j, d) if di)
        assert r.dot(lam) == 0
        assert all(r.dot(z) <= 0 for z in ch.fw_j)
        assert all(lam.dot(a) >= 0 for a in ch.simple_roots_j)
        results.append((j, lam))
    first = results[0][1]
    for j, lam in results[1:]:
        if lam != first:
            raise AssertionError(f"lambda_a of {list(mu)} differs between chambers "
                                 f"{results[0][0]} and {j}")
    return LambdaReport(first, first.norm2(), results[0][0], tuple(allowable))


def spin_lambda_gap(mu) -> Fraction:
    return spin_norm_value(mu) - lambda_norm_value(mu)


def as_ktype(mu) -> KType:
    return mu if isinstance(mu, KType) else KType(tuple(mu))
