from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from evidirac.compact import build_compact_datum, is_k_type
from evidirac.enumeration import all_involutions
from evidirac.lattice import GroupElement
from evidirac.norms import spin_norm_value
from evidirac.screening import (BETA, HJ_INTEGRAL, HJ_SHARP, Range, Verdict, build_parabolic,
                                classify_range, dirac_screen, hj_filter, nu_from_involution,
                                pencil_min_spin, strongly_regular)

K = build_compact_datum()
D = K.root_datum

ktypes = st.lists(st.integers(0, 8), min_size=7, max_size=7).filter(is_k_type).map(tuple)


def shifted(delta, n):
    return tuple(d + n * b for d, b in zip(delta, BETA))


@given(ktypes)
def test_pencil_stopping_rule_is_sound(delta):
    rep = pencil_min_spin(delta)
    # brute force well past the stopping point
    brute = min(spin_norm_value(shifted(delta, n)) for n in range(rep.terminated_at + 25))
    assert rep.min_value_sq == brute
    assert all(spin_norm_value(shifted(delta, n)) == v for n, v in rep.per_n)


@pytest.mark.parametrize("delta,value,at", [((0, 1, 0, 0, 4, 0, 0), Fraction(223, 2), None),
                                            ((6, 0, 0, 0, 0, 0, 10), Fraction(231, 2), None)])
def test_pencil_known_minima(delta, value, at):
    assert pencil_min_spin(delta).min_value_sq == value


def test_minimal_representation_pencil_attains_on_first_six():
    rep = pencil_min_spin((0, 0, 0, 0, 0, 0, 4))
    assert rep.min_value_sq == Fraction(231, 2)


def test_pencil_rejects_non_ktype():
    with pytest.raises(ValueError):
        pencil_min_spin((1, 0, 0, 0, 0, 0, 0))


def test_dirac_screen_verdicts():
    delta = (0, 1, 0, 0, 4, 0, 0)
    assert dirac_screen(delta, Fraction(215, 2)).verdict is Verdict.INCONCLUSIVE
    v = dirac_screen(delta, 300)
    assert v.verdict is Verdict.NON_UNITARY
    assert v.witness_n == 0


def test_zeta_norm_example():
    assert D.norm2_zeta((0, 0, 1, 1, 1, 0, 2)) == Fraction(215, 2)


def test_hj_filter():
    assert hj_filter(HJ_SHARP, HJ_SHARP)
    assert not hj_filter(HJ_SHARP + Fraction(1, 2), HJ_SHARP)
    assert hj_filter(80, HJ_INTEGRAL)
    with pytest.raises(ValueError):
        hj_filter(1, 7)


@given(st.lists(st.integers(0, 6), min_size=7, max_size=7), st.integers(0, 10207))
def test_nu_from_involution(lam, idx):
    t = all_involutions()[idx]
    nu = nu_from_involution(lam, t.element)
    v = D.from_zeta(lam)
    # nu is the -1 part of lambda under theta
    assert t.element.apply_matrix(nu) == -nu
    assert nu.norm2() == t.nu_sq(lam)
    assert (v - nu) == t.element.apply_matrix(v - nu)


def test_nu_from_non_involution_rejected():
    with pytest.raises(ValueError):
        nu_from_involution((1,) * 7, GroupElement((0, 2), D.simple_roots, 2))


def test_parabolic_and_ranges():
    H = K.rho_c
    q = build_parabolic(H)
    assert len(q.nilrad_roots) + len(q.levi_roots) == 126 - len(q.nilrad_roots)
    assert classify_range(-q.rho_u, q) is Range.WEAKLY_GOOD
    assert classify_range(D.rho * 0, q) is Range.GOOD
    with pytest.raises(ValueError):
        build_parabolic(K.from_varpi((-1, 0, 0, 0, 0, 0, 0)))


def test_strongly_regular():
    assert strongly_regular((1,) * 7, D.positive_roots)
    assert strongly_regular((2,) * 7, D.positive_roots)
    assert not strongly_regular((1, 0, 1, 1, 1, 1, 1), D.positive_roots)
