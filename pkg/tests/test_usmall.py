import random
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from evidirac.chambers import default_chambers
from evidirac.compact import build_compact_datum, is_k_type
from evidirac.lp import phase1
from evidirac.usmall import (HullOracle, candidate_ktypes, default_oracle, load_usmall,
                             save_usmall, valid_halfspaces)

K = build_compact_datum()
CARTAN = [list(r) for r in K.cartan]
GENS = [tuple(2 * x for x in c.rho_n_varpi) for c in default_chambers()]


def dominance_oracle(mu):
    """Hull membership for dominant mu by the dominance order.

    mu lies in the hull iff some convex combination of the dominant
    generators minus mu is a nonnegative combination of simple roots.
    Fixed 70-column LP, no orbit points and no column generation.
    """
    cols = [list(g) + [1] for g in GENS] + [[-x for x in CARTAN[i]] + [0] for i in range(7)]

    def oracle(y):
        best = max(range(len(cols)), key=lambda k: sum(a * b for a, b in zip(y, cols[k])))
        return best, cols[best]

    return phase1(list(mu) + [1], oracle).feasible


ORACLE = default_oracle()
dominant = st.lists(st.integers(0, 12), min_size=6, max_size=6).flatmap(
    lambda v: st.integers(0, 30).map(lambda g: tuple(v) + (g,)))


@given(dominant)
def test_decide_matches_dominance_oracle(mu):
    v = ORACLE.decide(mu, use_cache=False)
    assert v.inside == dominance_oracle(mu)
    if not v.inside:
        assert v.certificate.separates(mu)


@pytest.mark.parametrize("mu,inside", [((0,) * 7, True), ((0, 0, 0, 0, 0, 0, 2), True),
                                       ((0, 0, 0, 0, 0, 0, 32), True),
                                       ((4, 4, 4, 4, 4, 4, 4), False)])
def test_decide_known_points(mu, inside):
    assert HullOracle().decide(mu).inside is inside


def test_generators_are_inside():
    o = HullOracle()
    for g in GENS[:10]:
        assert o.decide(g).inside


@given(dominant, st.integers(2, 4))
def test_hull_scaling_monotone(mu, t):
    # the hull is convex and contains 0, so membership of t*mu implies membership of mu
    big = tuple(t * x for x in mu)
    if ORACLE.decide(big, use_cache=False).inside:
        assert ORACLE.decide(mu, use_cache=False).inside


def test_support_function_attained_by_orbit_point():
    from evidirac import kernels
    rng = random.Random(11)
    for _ in range(30):
        pi = [Fraction(rng.randrange(-5, 6), rng.randrange(1, 4)) for _ in range(7)]
        h, point = ORACLE.support(pi)
        # B(point, c) = point . pi
        assert sum(a * b for a, b in zip(pi, point)) == h
        # no generator does better
        assert all(sum(a * b for a, b in zip(pi, g)) <= h for g in GENS)
        # dominant conjugates of orbit points are generators
        dom, _ = kernels.dominant_word(list(point), CARTAN)
        assert tuple(dom) in GENS


def test_certificates_are_valid_halfspaces():
    o = HullOracle()
    v = o.decide((4, 4, 4, 4, 4, 4, 4))
    c = v.certificate
    for g in GENS:
        assert not c.separates(g)


def test_coordinate_bounds_and_candidates():
    o = HullOracle()
    assert o.coordinate_bounds() == [16, 16, 16, 16, 16, 16, 32]
    assert len(valid_halfspaces(o)) > 0


@pytest.mark.slow
def test_candidate_box_is_complete_on_sample():
    # every sampled K-type the exact LP accepts must be among the candidates
    pts = {tuple(int(x) for x in p) for p in candidate_ktypes()}
    rng = random.Random(5)
    o = HullOracle()
    for _ in range(150):
        mu = tuple(rng.randrange(0, 6) for _ in range(6)) + (rng.randrange(0, 20),)
        if is_k_type(mu) and o.decide(mu).inside:
            assert mu in pts


def test_cache_round_trip(tmp_path):
    p = tmp_path / "u.json"
    save_usmall([(0,) * 7, (1, 0, 0, 0, 0, 0, 1)], p)
    assert load_usmall(p) == [(0,) * 7, (1, 0, 0, 0, 0, 0, 1)]
    assert load_usmall(tmp_path / "missing.json") is None


def test_reject_mask_matches_certificates():
    o = HullOracle()
    o.decide((4, 4, 4, 4, 4, 4, 4))
    pts = np.array([(4, 4, 4, 4, 4, 4, 4), (0,) * 7], dtype=np.int64)
    assert list(o.reject_mask(pts)) == [True, False]


def test_certs_uses_the_pencil_minimum():
    from evidirac.usmall import certs, pencil_gap
    from evidirac.norms import spin_lambda_gap
    # the trivial K-type has a large plain gap but its pencil dips to 191/2 - 3/2
    assert spin_lambda_gap((0,) * 7) == 198
    assert pencil_gap((0,) * 7) < Fraction(165, 2)
    sample = [(0,) * 7, (0, 0, 0, 0, 0, 0, 2), (0, 0, 0, 0, 0, 0, 8), (1, 0, 0, 0, 0, 1, 6)]
    assert certs(sample) == [(0, 0, 0, 0, 0, 0, 2), (1, 0, 0, 0, 0, 1, 6)]
