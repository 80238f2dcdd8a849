"""Infinitesimal-character sieves.

For an involution ``theta = s_b1 ... s_br`` with mutually orthogonal roots
``b_i``, ``nu = (L - theta L)/2 = 1/2 sum <L, b_i> b_i`` and
``|nu|^2 = 1/2 sum <L, b_i>^2``.  With ``L`` dominant and the ``b_i``
positive, each pairing is a nonnegative combination of the zeta coordinates,
so the set of ``L`` admitted by a fixed ``theta`` is closed under lowering
coordinates.  The sieve is therefore a down-set and is enumerated one
coordinate at a time with pruning.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import product
from pathlib import Path

import numpy as np

from . import kernels
from .chambers import default_chambers
from .compact import build_compact_datum
from .lattice import RANK, GroupElement

HJ_BOUND = Fraction(227, 2)
MAX_COEFFICIENT = 14
LIST_LIMIT = 3  # layers listed when the sieve is vacuous

# zeta-coordinate index pairs/triples whose sums must be positive
_POSITIVE_SUMS = ((0, 2), (1, 3), (2, 3), (3, 4), (4, 5), (5, 6), (1, 4, 6))


@dataclass(frozen=True)
class InfChar:
    coeffs: tuple

    def __post_init__(self):
        c = tuple(Fraction(x) for x in self.coeffs)
        if len(c) != RANK:
            raise ValueError(f"infinitesimal character needs {RANK} coordinates")
        if any(x < 0 for x in c):
            raise ValueError("infinitesimal character must have nonnegative zeta coordinates")
        object.__setattr__(self, "coeffs", c)

    def __iter__(self):
        return iter(self.coeffs)

    def is_integral(self):
        return all(x.denominator == 1 for x in self.coeffs)

    def __str__(self):
        return "[" + ",".join(str(x) for x in self.coeffs) + "]"


def _coeffs(lam):
    return tuple(Fraction(x) for x in (lam.coeffs if isinstance(lam, InfChar) else lam))


def hp_admissible(lam) -> bool:
    c = _coeffs(lam)
    if len(c) != RANK or any(x < 0 or x.denominator != 1 for x in c):
        return False
    return all(sum(c[i] for i in idx) > 0 for idx in _POSITIVE_SUMS)


@lru_cache(maxsize=1)
def _vanishing_tables():
    # row i of chamber j: simple-root coefficients of w_j^{-1} gamma_i, so that
    # B(w_j L, gamma_i) = sum_k L_k * row[k]
    k = build_compact_datum()
    d = k.root_datum
    out = []
    for ch in default_chambers():
        inv = ch.w.inverse()
        rows = []
        for g in k.gamma:
            r = inv.apply(g)
            rows.append(tuple(int(r.dot(z)) for z in d.fundamental_weights))
        out.append(rows)
    return out


def dominant_conjugate_vanishing_check(lam) -> bool:
    """True iff some ``w_j L`` has every varpi coordinate at least 1."""
    c = _coeffs(lam)
    for rows in _vanishing_tables():
        if all(sum(ck * rk for ck, rk in zip(c, r)) >= 1 for r in rows):
            return True
    return False


# --- involutions ---------------------------------------------------------------

@dataclass(frozen=True)
class Involution:
    roots: tuple          # indices into the positive roots, mutually orthogonal
    element: GroupElement
    neg_rows: tuple       # simple-root coefficients of the roots

    @property
    def split_rank(self):
        return len(self.roots)

    @property
    def support(self):
        return frozenset(self.element.word)

    def nu_sq(self, lam) -> Fraction:
        c = _coeffs(lam)
        return sum((sum(x * y for x, y in zip(c, r)) ** 2 for r in self.neg_rows),
                   Fraction(0)) / 2


@lru_cache(maxsize=1)
def all_involutions() -> tuple:
    """Every involution of the Weyl group, one per distinct element.

    Each is a product of reflections in mutually orthogonal roots; those
    root sets are walked depth first and deduplicated by the action on the
    fundamental weights.
    """
    d = build_compact_datum().root_datum
    pos = list(d.positive_roots)
    n = len(pos)
    coef = [tuple(int(r.dot(z)) for z in d.fundamental_weights) for r in pos]
    pair = [[int(r.dot(a)) for a in d.simple_roots] for r in pos]
    orth = [[pos[i].dot(pos[j]) == 0 for j in range(n)] for i in range(n)]
    found = {}

    def key(S):
        m = [[int(a == b) for b in range(RANK)] for a in range(RANK)]
        for i in S:
            for a in range(RANK):
                c = coef[i][a]
                if c:
                    for b in range(RANK):
                        m[a][b] -= c * pair[i][b]
        return tuple(map(tuple, m))

    def walk(start, S):
        k = key(S)
        if k not in found:
            found[k] = tuple(S)
        for i in range(start, n):
            if all(orth[i][j] for j in S):
                S.append(i)
                walk(i + 1, S)
                S.pop()

    walk(0, [])
    out = []
    for m, S in found.items():
        # theta(rho) in zeta coordinates; its dominant word is a reduced word of theta
        v = [sum(m[a][b] for a in range(RANK)) for b in range(RANK)]
        _, word = kernels.dominant_word(v, d.cartan)
        el = GroupElement(tuple(word), d.simple_roots, len(word))
        out.append(Involution(S, el, tuple(coef[i] for i in S)))
    out.sort(key=lambda t: (t.split_rank, t.element.length, t.element.word))
    return tuple(out)


def fully_supported_involutions(max_split_rank: int | None = None) -> tuple:
    """Involutions whose reduced words use every simple reflection."""
    return tuple(t for t in all_involutions()
                 if len(t.support) == RANK
                 and (max_split_rank is None or t.split_rank <= max_split_rank))


def minimal_involutions(invs) -> tuple:
    """Drop involutions whose -1 eigenspace contains another one's.

    A larger -1 eigenspace only increases the projection of L, so the sieve
    depends on the inclusion-minimal eigenspaces alone.
    """
    pos = build_compact_datum().root_datum.positive_roots
    gram = [[int(a.dot(b)) for b in pos] for a in pos]

    def neg_mask(t):
        # the b_i are orthogonal of norm^2 2, so r lies in their span iff
        # sum (r, b_i)^2 equals 2 |r|^2 = 4
        m = 0
        for i in range(len(pos)):
            if sum(gram[i][j] ** 2 for j in t.roots) == 4:
                m |= 1 << i
        return m

    masks = sorted(((neg_mask(t), t) for t in invs), key=lambda p: bin(p[0]).count("1"))
    keep = []
    for m, t in masks:
        if any(k & ~m == 0 for k, _ in keep):
            continue
        keep.append((m, t))
    return tuple(t for _, t in keep)


INVOLUTION_SETS = {
    "all": lambda: all_involutions(),
    "fully-supported": lambda: fully_supported_involutions(),
    "fully-supported-rank4": lambda: fully_supported_involutions(4),
}


@dataclass(frozen=True)
class SieveConfig:
    nu_bound_sq: Fraction = HJ_BOUND
    involution_set: str = "all"
    integer_only: bool = True
    max_coefficient: int = MAX_COEFFICIENT

    def involutions(self):
        invs = INVOLUTION_SETS[self.involution_set]()
        assert all(t.element.is_involution() for t in invs[:50])
        return invs


@dataclass
class PhiResult:
    config: SieveConfig
    counts: dict                      # i -> #Phi_i
    members: dict = field(default_factory=dict)   # i -> array of rows, when listed
    listed: bool = True

    @property
    def total(self):
        return sum(self.counts.values())

    def diff(self, expected):
        """Lines comparing computed and expected ``#Phi_i``."""
        lines = []
        for i, want in enumerate(expected, 1):
            got = self.counts.get(i, 0)
            mark = "ok" if got == want else f"diff {got - want:+d}"
            lines.append(f"Phi_{i}: computed {got} expected {want} {mark}")
        extra = sorted(i for i in self.counts if i > len(expected) and self.counts[i])
        for i in extra:
            lines.append(f"Phi_{i}: computed {self.counts[i]} expected 0 diff {self.counts[i]:+d}")
        lines.append(f"total: computed {self.total} expected {sum(expected)}")
        return lines


def _admissible_mask(pts):
    ok = pts.min(axis=1) == 0
    for idx in _POSITIVE_SUMS:
        ok &= pts[:, list(idx)].sum(axis=1) > 0
    return ok


def _zero_pattern_counts(cap):
    """``#Phi_i`` when every L passes the involution condition (closed form).

    Admissibility depends only on which coordinates vanish, so each
    admissible zero pattern with ``m`` free coordinates contributes
    ``i^m - (i-1)^m`` characters of maximum exactly ``i``.
    """
    counts = {}
    patterns = []
    for zeros in product((0, 1), repeat=RANK):
        if not any(zeros):
            continue
        v = [0 if z else 1 for z in zeros]
        if all(sum(v[i] for i in idx) > 0 for idx in _POSITIVE_SUMS):
            patterns.append(RANK - sum(zeros))
    for i in range(1, cap + 1):
        counts[i] = sum(i ** m - (i - 1) ** m for m in patterns)
    return counts


def _downset(invs, bound2, cap, cells=1 << 22):
    """Nonnegative integer L <= cap with min over invs of sum <L,b>^2 <= bound2."""
    cols, starts = [], []
    for t in invs:
        starts.append(len(cols))
        cols.extend(t.neg_rows)
    C = np.array(cols, dtype=np.int64).T
    starts = np.array(starts)
    # rows per block, so a block of squared pairings stays near ``cells`` entries
    chunk = max(1, cells // C.shape[1])
    pts = np.zeros((1, RANK), dtype=np.int64)
    for i in range(RANK):
        vals = np.arange(cap + 1, dtype=np.int64)
        pts = np.repeat(pts, len(vals), axis=0)
        pts[:, i] = np.tile(vals, len(pts) // len(vals))
        keep = np.zeros(len(pts), dtype=bool)
        for s in range(0, len(pts), chunk):
            sq = (pts[s:s + chunk] @ C) ** 2
            keep[s:s + chunk] = np.add.reduceat(sq, starts, axis=1).min(axis=1) <= bound2
        pts = pts[keep]
    return pts


def enumerate_phi(config: SieveConfig | None = None) -> PhiResult:
    config = config or SieveConfig()
    if not config.integer_only:
        raise NotImplementedError("only integral infinitesimal characters are enumerated")
    invs = config.involutions()
    if not invs:
        raise ValueError("involution set is empty")
    cap = config.max_coefficient
    if any(t.split_rank == 0 for t in invs):
        # the identity gives nu = 0, so the involution condition is vacuous;
        # only the small layers are listed
        members = {}
        for i in range(1, min(cap, LIST_LIMIT) + 1):
            pts = np.array(list(product(range(i + 1), repeat=RANK)), dtype=np.int64)
            pts = pts[_admissible_mask(pts) & (pts.max(axis=1) == i)]
            members[i] = pts
        return PhiResult(config, _zero_pattern_counts(cap), members, listed=False)
    bound2 = 2 * config.nu_bound_sq
    if bound2.denominator != 1:
        raise ValueError("2 * nu_bound_sq must be an integer")
    pts = _downset(minimal_involutions(invs), int(bound2), cap)
    pts = pts[_admissible_mask(pts)]
    mx = pts.max(axis=1)
    members = {i: pts[mx == i] for i in range(1, cap + 1)}
    counts = {i: len(m) for i, m in members.items()}
    return PhiResult(config, counts, members)


def nu_sq_min(lam, invs) -> Fraction:
    return min(t.nu_sq(lam) for t in invs)


# --- Omega ------------------------------------------------------------------------

OMEGA_LOW = Fraction(84)
OMEGA_HIGH = Fraction(140)


def enumerate_omega(low=OMEGA_LOW, high=OMEGA_HIGH) -> list:
    """All nonnegative integral L with ``low <= |L|^2 <= high``, sorted."""
    d = build_compact_datum().root_datum
    g2 = np.array(d.zeta_gram2, dtype=np.int64)
    lo2, hi2 = 2 * Fraction(low), 2 * Fraction(high)
    # each zeta_i has |zeta_i|^2 >= 3/2, so coordinate i is at most sqrt(high / g_ii)
    caps = [int((hi2 / g2[i, i]) ** 0.5) + 1 for i in range(RANK)]
    pts = np.zeros((1, RANK), dtype=np.int64)
    for i in range(RANK):
        vals = np.arange(caps[i] + 1, dtype=np.int64)
        pts = np.repeat(pts, len(vals), axis=0)
        pts[:, i] = np.tile(vals, len(pts) // len(vals))
        # all Gram entries are positive, so the norm only grows
        pts = pts[np.einsum("ij,jk,ik->i", pts, g2, pts) <= hi2]
    norms = np.einsum("ij,jk,ik->i", pts, g2, pts)
    pts = pts[norms >= lo2]
    return sorted(tuple(int(x) for x in p) for p in pts)


# --- result files -------------------------------------------------------------------

def write_phi_file(result: PhiResult, path, expected=None):
    """One L per line as seven integers, grouped by Phi_i, then a count block."""
    lines = [f"# involution set: {result.config.involution_set}; "
             f"nu bound^2: {result.config.nu_bound_sq}"]
    for i in sorted(result.counts):
        lines.append(f"[Phi_{i}] {result.counts[i]}")
        if i in result.members:
            for row in result.members[i]:
                lines.append(" ".join(str(int(x)) for x in row))
        else:
            lines.append("# members not listed: the involution condition is vacuous")
    lines.append("[summary]")
    for i in sorted(result.counts):
        lines.append(f"Phi_{i} {result.counts[i]}")
    lines.append(f"total {result.total}")
    if expected is not None:
        lines.append("[diff]")
        lines.extend(result.diff(expected))
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")

