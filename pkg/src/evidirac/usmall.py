"""Membership in the u-small hull and the census of u-small K-types.

The hull is the convex hull of the compact Weyl group orbits of the 63
vectors ``2 rho_n^(j)``.  Everything here is in varpi coordinates, where
``B(mu, c) = mu . pi`` when ``c = sum_k pi_k gamma_k``.
"""

from __future__ import annotations

import json
import threading
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from . import _linalg, kernels, lp
from .chambers import cache_dir, default_chambers
from .compact import build_compact_datum, is_k_type
from .lattice import RANK


@dataclass(frozen=True)
class Certificate:
    """``B(v, c) > h(c)``, with ``c`` stored by its simple-root coefficients.

    ``root_coeffs`` and ``bound`` share a common positive scale.
    """

    root_coeffs: tuple
    bound: int

    def separates(self, mu) -> bool:
        return sum(a * b for a, b in zip(mu, self.root_coeffs)) > self.bound


@dataclass(frozen=True)
class HullVerdict:
    inside: bool
    combination: tuple = ()          # ((orbit point, weight), ...) when inside
    certificate: Certificate | None = None
    pivots: int = 0


class HullOracle:
    def __init__(self, chambers=None):
        k = build_compact_datum()
        chambers = chambers if chambers is not None else default_chambers()
        self.cartan = [list(r) for r in k.cartan]
        self.generators_dominant = [tuple(2 * x for x in c.rho_n_varpi) for c in chambers]
        g2 = k.varpi_gram2
        # B(x, 2 rho_n) = x . targets[j] for x in varpi coordinates
        self.targets = [tuple(sum(g2[a][b] * c.rho_n_varpi[b] for b in range(RANK))
                              for a in range(RANK)) for c in chambers]
        self._cartan_inv = _linalg.inverse(self.cartan)
        self._lock = threading.Lock()
        self.certificate_cache = []
        self._cert_rows = np.zeros((0, RANK), dtype=object)
        self._cert_bounds = np.zeros(0, dtype=object)

    # support function ------------------------------------------------------

    def _varpi_of(self, pi):
        return [sum(pi[kk] * self.cartan[kk][i] for kk in range(RANK)) for i in range(RANK)]

    def support(self, pi):
        """``(h(c), argmax orbit point)`` for ``c = sum pi_k gamma_k``."""
        cv, d = _linalg.scale_to_int(self._varpi_of([Fraction(x) for x in pi]))
        dom, word = kernels.dominant_word(cv, self.cartan)
        arg, best = kernels.support_argmax(dom, self.targets)
        point = kernels.apply_word(list(self.generators_dominant[arg]), word[::-1], self.cartan)
        return Fraction(best, d), tuple(point)

    def dominant_certificate(self, pi) -> Certificate:
        """Certificate in dominant form for the direction ``sum pi_k gamma_k``."""
        cv, d = _linalg.scale_to_int(self._varpi_of([Fraction(x) for x in pi]))
        dom, _ = kernels.dominant_word(cv, self.cartan)
        h = max(sum(a * b for a, b in zip(dom, t)) for t in self.targets)
        coeffs = _linalg.matvec(self._cartan_inv, dom)
        ints, e = _linalg.scale_to_int(coeffs)
        # h is scaled by d, coeffs by e/d relative to dom/d
        return Certificate(tuple(ints), h * e)

    # membership -------------------------------------------------------------

    def _oracle(self, y):
        pi, pi0 = y[:RANK], y[RANK]
        _, point = self.support(pi)
        return point, list(point) + [1]

    def cached_rejection(self, mu):
        with self._lock:
            certs = list(self.certificate_cache)
        for c in certs:
            if c.separates(mu):
                return c
        return None

    def add_certificate(self, cert: Certificate):
        with self._lock:
            self.certificate_cache.append(cert)
            self._cert_rows = np.vstack([self._cert_rows,
                                         np.array([cert.root_coeffs], dtype=object)])
            self._cert_bounds = np.append(self._cert_bounds, np.array([cert.bound], dtype=object))

    def decide(self, mu, use_cache: bool = True) -> HullVerdict:
        """Exact membership of a k-dominant varpi vector, with a certificate."""
        mu = tuple(int(x) for x in mu)
        if any(x < 0 for x in mu):
            dom, _ = kernels.dominant_word(list(mu), self.cartan)
            mu = tuple(dom)
        if use_cache:
            c = self.cached_rejection(mu)
            if c is not None:
                return HullVerdict(False, certificate=c)
        res = lp.phase1(list(mu) + [1], self._oracle)
        if res.feasible:
            combo = tuple((key, w) for key, w in res.weights.items())
            self._check_combination(mu, combo)
            return HullVerdict(True, combination=combo, pivots=res.pivots)
        pi = res.duals[:RANK]
        h, _ = self.support(pi)
        if not sum(Fraction(a) * b for a, b in zip(mu, pi)) > h:
            raise AssertionError(f"dual of phase 1 does not separate {mu}")
        cert = self.dominant_certificate(pi)
        if not cert.separates(mu):
            raise AssertionError("dominant form of the certificate lost separation")
        if use_cache:
            self.add_certificate(cert)
        return HullVerdict(False, certificate=cert, pivots=res.pivots)

    def _check_combination(self, mu, combo):
        total = sum((w for _, w in combo), Fraction(0))
        if total != 1 or any(w <= 0 for _, w in combo):
            raise AssertionError("convex weights do not sum to one")
        for i in range(RANK):
            if sum((p[i] * w for p, w in combo), Fraction(0)) != mu[i]:
                raise AssertionError("convex combination does not reproduce the point")
        for p, _ in combo:
            dom, _ = kernels.dominant_word(list(p), self.cartan)
            if tuple(dom) not in self.generators_dominant:
                raise AssertionError(f"{p} is not an orbit point of a generator")

    def reject_mask(self, points: np.ndarray) -> np.ndarray:
        """Rows of ``points`` separated by some cached certificate."""
        with self._lock:
            rows, bounds = self._cert_rows, self._cert_bounds
        if len(bounds) == 0:
            return np.zeros(len(points), dtype=bool)
        return _reject_with(points, rows, bounds)

    # bounds -----------------------------------------------------------------

    def coordinate_bounds(self):
        """``floor(h(gamma_i))``: no hull point has a larger i-th varpi coordinate."""
        out = []
        for i in range(RANK):
            pi = [int(i == kk) for kk in range(RANK)]
            h, _ = self.support(pi)
            out.append(h.numerator // h.denominator)
        return out

    def max_norm2_times2(self):
        g2 = build_compact_datum().varpi_gram2
        return max(sum(g[a] * g2[a][b] * g[b] for a in range(RANK) for b in range(RANK))
                   for g in self.generators_dominant)


def _reject_with(points, rows, bounds):
    # int64 when safe, exact object arithmetic otherwise
    if (np.abs(rows.astype(float)).max(initial=0) * np.abs(points).max(initial=0) * RANK < 2 ** 62
            and np.abs(bounds.astype(float)).max(initial=0) < 2 ** 62):
        r = rows.astype(np.int64)
        b = bounds.astype(np.int64)
        return ((points.astype(np.int64) @ r.T) > b).any(axis=1)
    return ((points.astype(object) @ rows.T) > bounds).any(axis=1)


@lru_cache(maxsize=1)
def default_oracle() -> HullOracle:
    return HullOracle()


def is_usmall(mu, oracle: HullOracle | None = None) -> HullVerdict:
    return (oracle or default_oracle()).decide(tuple(mu))


def valid_halfspaces(oracle: HullOracle | None = None):
    """Halfspaces ``x . r <= b`` containing the hull, with ``r >= 0``.

    Directions are the dominant vectors varpi_i, rho_c and the generators
    themselves; their simple-root coefficients are nonnegative, which makes
    the constraints monotone on the nonnegative orthant.
    """
    oracle = oracle or default_oracle()
    k = build_compact_datum()
    dirs = [[int(i == j) for j in range(RANK)] for i in range(RANK)]
    dirs.append([1] * RANK)
    dirs.extend(list(g) for g in oracle.generators_dominant)
    rows, bounds = [], []
    for cv in dirs:
        cert_pi = _linalg.matvec(oracle._cartan_inv, cv)
        h, _ = oracle.support(cert_pi)
        ints, d = _linalg.scale_to_int(cert_pi)
        assert all(x >= 0 for x in ints)
        rows.append(ints)
        bounds.append(h * d)
    assert all(b.denominator == 1 for b in bounds)
    return np.array(rows, dtype=np.int64), np.array([int(b) for b in bounds], dtype=np.int64)


def candidate_ktypes(oracle: HullOracle | None = None) -> np.ndarray:
    """K-types passing the coordinate box, the norm bound and the halfspaces.

    Built one coordinate at a time; every test is monotone in each
    coordinate, so partial vectors can be pruned early.
    """
    oracle = oracle or default_oracle()
    box = oracle.coordinate_bounds()
    limit = oracle.max_norm2_times2()
    g2 = np.array(build_compact_datum().varpi_gram2, dtype=np.int64)
    rows, bounds = valid_halfspaces(oracle)
    pts = np.zeros((1, RANK), dtype=np.int64)
    for i in range(RANK):
        vals = np.arange(box[i] + 1, dtype=np.int64)
        pts = np.repeat(pts, len(vals), axis=0)
        pts[:, i] = np.tile(vals, len(pts) // len(vals))
        norms = np.einsum("ij,jk,ik->i", pts, g2, pts)
        keep = (norms <= limit) & ((pts @ rows.T) <= bounds).all(axis=1)
        pts = pts[keep]
    parity = (pts[:, 0] + pts[:, 2] + pts[:, 5] + pts[:, 6]) % 2 == 0
    return pts[parity]


def count_usmall_ktypes(oracle: HullOracle | None = None, progress=None):
    """Return ``(count, list of u-small K-types)`` in lexicographic order."""
    oracle = oracle or default_oracle()
    pts = candidate_ktypes(oracle)
    alive = ~oracle.reject_mask(pts)
    inside = []
    n_certs = len(oracle.certificate_cache)
    for idx in range(len(pts)):
        if not alive[idx]:
            continue
        mu = tuple(int(x) for x in pts[idx])
        v = oracle.decide(mu, use_cache=False)
        if v.inside:
            inside.append(mu)
            continue
        oracle.add_certificate(v.certificate)
        # new certificate: sweep the remaining candidates
        rest = slice(idx + 1, None)
        new = len(oracle.certificate_cache)
        rows = oracle._cert_rows[n_certs:new]
        bounds = oracle._cert_bounds[n_certs:new]
        alive[rest] &= ~_reject_with(pts[rest], rows, bounds)
        n_certs = new
        if progress:
            progress(idx, len(pts), len(inside), n_certs)
    inside.sort()
    assert all(is_k_type(m) for m in inside)
    return len(inside), inside


CERTS_GAP = Fraction(165, 2)


def pencil_gap(mu) -> Fraction:
    """Pencil minimum of the spin norm minus the lambda norm (squared).

    Every K-type of the pencil through a lowest K-type occurs, so the Dirac
    inequality bounds |Lambda|^2 by the pencil minimum, not just by the spin
    norm of ``mu`` itself.
    """
    from .norms import lambda_norm_value
    from .screening import pencil_min_spin
    return pencil_min_spin(mu).min_value_sq - lambda_norm_value(mu)


def certs(usmall_list=None):
    """u-small K-types whose pencil gap is at least 165/2."""
    from .norms import spin_lambda_gap
    if usmall_list is None:
        _, usmall_list = count_usmall_ktypes()
    # the plain gap bounds the pencil gap from above, so it prefilters cheaply
    rough = [mu for mu in usmall_list if spin_lambda_gap(mu) >= CERTS_GAP]
    return [mu for mu in rough if pencil_gap(mu) >= CERTS_GAP]


def usmall_cache_path():
    return cache_dir() / "usmall.json"


def save_usmall(usmall_list, path=None):
    path = path or usmall_cache_path()
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps([list(m) for m in usmall_list]), encoding="utf-8")
    return path


def load_usmall(path=None):
    """The cached census, or None when absent."""
    path = path or usmall_cache_path()
    if not path.exists():
        return None
    return [tuple(m) for m in json.loads(path.read_text(encoding="utf-8"))]
