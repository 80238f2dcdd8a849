from fractions import Fraction
from itertools import product

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from evidirac.compact import build_compact_datum
from evidirac.enumeration import (InfChar, PhiResult, SieveConfig, _downset, _zero_pattern_counts,
                                  all_involutions, dominant_conjugate_vanishing_check,
                                  enumerate_omega, enumerate_phi, fully_supported_involutions,
                                  hp_admissible, minimal_involutions, write_phi_file)
from evidirac.verification import reference_values

D = build_compact_datum().root_datum
REF = reference_values()


def test_infchar_validation():
    assert InfChar((1, 0, 1, 1, 0, 1, 1)).is_integral()
    assert not InfChar((Fraction(1, 2),) + (1,) * 6).is_integral()
    with pytest.raises(ValueError):
        InfChar((-1,) + (1,) * 6)
    with pytest.raises(ValueError):
        InfChar((1,) * 6)


def test_hp_admissible_agrees_with_vanishing_check_on_grid():
    for lam in product(range(3), repeat=7):
        assert hp_admissible(lam) == dominant_conjugate_vanishing_check(lam), lam


@given(st.lists(st.integers(0, 5), min_size=7, max_size=7))
def test_hp_admissible_agrees_with_vanishing_check_sampled(lam):
    assert hp_admissible(lam) == dominant_conjugate_vanishing_check(lam)


def test_involution_census():
    invs = all_involutions()
    assert len(invs) == 10208
    assert len({t.element.matrix for t in invs[:300]}) == 300
    assert all(t.element.is_involution() for t in invs[::97])
    assert len(fully_supported_involutions()) == 8479
    assert invs[0].split_rank == 0


@given(st.lists(st.integers(0, 6), min_size=7, max_size=7), st.integers(0, 10207))
def test_involution_nu_norm_formula(lam, idx):
    t = all_involutions()[idx]
    v = D.from_zeta(lam)
    nu = (v - t.element.apply_matrix(v)) / 2
    assert nu.norm2() == t.nu_sq(lam)


def test_closed_form_matches_brute_force():
    counts = _zero_pattern_counts(3)
    brute = {i: 0 for i in range(1, 4)}
    for lam in product(range(4), repeat=7):
        if min(lam) == 0 and hp_admissible(lam):
            brute[max(lam)] += 1
    assert counts == brute


def test_minimal_involutions_give_the_same_sieve():
    fs = fully_supported_involutions()
    mins = minimal_involutions(fs)
    assert len(mins) < len(fs)
    a = {tuple(r) for r in _downset(mins, 227, 3)}
    b = {tuple(r) for r in _downset(fs, 227, 3)}
    assert a == b


def test_phi_layers_under_all_involutions():
    r = enumerate_phi()
    assert [r.counts[i] for i in (1, 2, 3)] == REF["phi_counts"][:3]
    assert sorted(map(tuple, r.members[1].tolist())) == sorted(map(tuple, REF["phi1"]))


def test_phi1_under_fully_supported_surrogate():
    r = enumerate_phi(SieveConfig(involution_set="fully-supported", max_coefficient=2))
    assert sorted(map(tuple, r.members[1].tolist())) == sorted(map(tuple, REF["phi1"]))
    assert r.counts[2] == REF["phi_counts"][1]


def test_phi_diff_report_and_file(tmp_path):
    r = PhiResult(SieveConfig(), {1: 32, 2: 1000}, {})
    lines = r.diff([32, 1056])
    assert lines[0].endswith("ok") and "diff -56" in lines[1]
    p = tmp_path / "phi.txt"
    write_phi_file(r, p, [32, 1056])
    text = p.read_text()
    assert "[summary]" in text and "[diff]" in text


def test_sieve_config_errors():
    with pytest.raises(NotImplementedError):
        enumerate_phi(SieveConfig(integer_only=False))
    with pytest.raises(KeyError):
        enumerate_phi(SieveConfig(involution_set="nonsense"))


def test_omega_against_box_scan():
    g2 = np.array(D.zeta_gram2, dtype=np.int64)
    caps = [int((280 / g2[i, i]) ** 0.5) for i in range(7)]
    axes = np.meshgrid(*[np.arange(c + 1) for c in caps], indexing="ij")
    pts = np.stack([a.ravel() for a in axes], axis=1)
    n2 = np.einsum("ij,jk,ik->i", pts, g2, pts)
    brute = sorted(tuple(int(x) for x in p) for p in pts[(n2 >= 168) & (n2 <= 280)])
    omega = enumerate_omega()
    assert omega == brute
    assert len(omega) == REF["omega_count"]
