from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from scipy.optimize import nnls

from evidirac.chambers import default_chambers
from evidirac.compact import build_compact_datum, is_k_type, ktype_to_vector
from evidirac.lattice import dominant_conjugate
from evidirac.norms import (allowable_chambers, lambda_a, lambda_norm_value, prv_bracket,
                            spin_norm_sq, spin_norm_value)

K = build_compact_datum()
CH = default_chambers()


def ktypes(hi=10):
    return st.lists(st.integers(0, hi), min_size=7, max_size=7).filter(is_k_type).map(tuple)


def spin_oracle(mu):
    """Spin norm straight from the definition, over Fractions."""
    v = ktype_to_vector(mu, K)
    best = None
    for c in CH:
        w = dominant_conjugate(v - c.rho_n_j, K.gamma)[0] + K.rho_c
        n = w.norm2()
        best = n if best is None or n < best else best
    return best


@given(st.lists(st.integers(-8, 8), min_size=7, max_size=7))
def test_prv_bracket_preserves_norm_and_is_dominant(c):
    v = K.from_varpi(c)
    b = prv_bracket(v)
    assert b.norm2() == v.norm2()
    assert K.is_k_dominant(b)
    assert prv_bracket(b) == b


@given(ktypes())
def test_spin_norm_matches_definition(mu):
    r = spin_norm_sq(mu)
    assert r.value_sq == spin_oracle(mu)
    assert len(r.per_chamber_values) == 63
    assert all(r.per_chamber_values[j] == r.value_sq for j in r.argmin_chambers)


@pytest.mark.parametrize("mu", [(0, 3, 0, 0, 0, 1, 9), (1, 0, 1, 0, 0, 4, 2), (2, 0, 0, 1, 0, 3, 3)])
def test_spin_norm_known_values(mu):
    assert spin_norm_value(mu) == Fraction(111, 2)


def test_every_rho_n_attains_rho_c():
    # |{x} + rho_c| >= |rho_c|, with equality at x = 0
    rc = K.rho_c.norm2()
    for c in CH:
        r = spin_norm_sq(c.rho_n_varpi)
        assert r.value_sq == rc
        assert c.index in r.argmin_chambers


@given(ktypes())
def test_lambda_a_kkt_and_chamber_independence(mu):
    # lambda_a asserts the KKT conditions and agreement across chambers itself
    r = lambda_a(mu)
    assert r.value_sq == lambda_norm_value(mu)
    assert r.chamber_used in allowable_chambers(mu)
    assert r.value_sq >= 0


@given(ktypes(8))
def test_lambda_projection_matches_nnls(mu):
    j = allowable_chambers(mu)[0]
    ch = CH[j]
    p = ktype_to_vector(mu, K) + K.rho_c * 2 - ch.rho_j
    A = np.array([[float(x) for x in z.coords] for z in ch.fw_j]).T
    b = np.array([float(x) for x in p.coords])
    coef, _ = nnls(A, b)
    proj = A @ coef
    assert abs(float(proj @ proj) - float(lambda_norm_value(mu))) < 1e-8


def test_lambda_norm_range_on_small_ktypes():
    assert lambda_norm_value((0,) * 7) >= Fraction(3, 2)
