import cmath
from fractions import Fraction
from itertools import product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sscgamma.cyclo import GammaMonomial
from sscgamma.lf import RAMIFIED, MultChar, enumerate_chars, make_local_field
from sscgamma.ssc import (SSCTriple, all_triples, central_char_trivial_on_F, contragredient,
                          galois_twist, gamma_condition_tame, gamma_depth_one_gl2,
                          gamma_table_rows, gamma_tame, is_distinguished, is_sigma_self_dual,
                          make_triple, self_dual_conditions)

HALF = Fraction(1, 2)
FIELDS = [make_local_field(3), make_local_field(3, kind=RAMIFIED),
          make_local_field(5), make_local_field(5, kind=RAMIFIED)]


def triples(lf, n=None):
    return st.builds(lambda n_, v, p, z: SSCTriple(n_, v, p, z),
                     st.just(n) if n else st.integers(2, 4), st.integers(0, lf.qE - 2),
                     st.integers(0, lf.qE - 2), st.integers(0, lf.zeta_order - 1))


def _numeric_gamma_condition(t, lf):
    """gamma(1/2) = 1 for all tame lambda trivial on F^x, by complex evaluation.

    Characters are enumerated naively as pairs (residue index j, value w at
    the uniformizer) and tested on k_F^x and the uniformizer of F.
    """
    qE, Z = lf.qE, lf.zeta_order
    kE = lf.kE

    def lam(j, w, val, a):
        return cmath.exp(2j * cmath.pi * (j * a / (qE - 1) + val * w / Z))

    def val_lead(x):
        return x.val, x.lead

    F_gens = [val_lead(lf.teich(lf.kF_generator())), val_lead(lf.varpi_F)]
    minus_one = kE.from_int(-1)
    zeta = cmath.exp(2j * cmath.pi * t.zeta / Z)
    for j, w in product(range(qE - 1), range(Z)):
        if any(abs(lam(j, w, v, a) - 1) > 1e-9 for v, a in F_gens):
            continue
        g = lam(j, w, 0, minus_one) ** (t.n - 1) * lam(j, w, 1, t.v) / zeta
        if abs(g - 1) > 1e-9:
            return False
    return True


@pytest.mark.parametrize("lf", FIELDS[:2], ids=repr)
@pytest.mark.parametrize("n", [2, 3])
def test_gamma_condition_against_numeric_evaluation(lf, n):
    for t in all_triples(lf, n):
        assert gamma_condition_tame(t, lf) == _numeric_gamma_condition(t, lf), t


def test_gamma_tame_frozen_values():
    lf = make_local_field(3)
    triv = MultChar(lf, 0, 0, 0)
    assert gamma_tame(SSCTriple(2, 0, 0, 0), triv, lf) == GammaMonomial(lf.ring, 0, HALF, 1)
    # zeta = -1 shows up as -1 on the trivial row
    g = gamma_tame(SSCTriple(2, 0, 0, 12), triv, lf)
    assert g.value_str(HALF) == "-1"


def test_gamma_depth_one_frozen_value():
    lf = make_local_field(3)
    g = gamma_depth_one_gl2(SSCTriple(2, 0, 0, 0), MultChar(lf, 1, 0, 0, 0), lf)
    assert g == GammaMonomial(lf.ring, 0, Fraction(1), 2)
    assert g.is_one_at(HALF)


def test_depth_one_rows_carry_q_one_minus_two_s():
    lf = make_local_field(3)
    rows = gamma_table_rows(SSCTriple(2, 3, 1, 5), lf, 1, trivial_on_F=False)
    assert len(rows) == 8 * 24 * 8
    assert all(g.alpha == 1 and g.beta == 2 for _, g in rows)


def test_distinguished_triples_have_trivial_gamma_rows():
    lf = make_local_field(3)
    dist = [t for t in all_triples(lf, 2) if is_distinguished(t, lf)]
    assert len(dist) == 8  # v in k_F (2 choices), phi trivial on k_F (4), zeta = 1
    for t in dist:
        assert all(g.is_one_at(HALF) for _, g in gamma_table_rows(t, lf, 0))


@settings(max_examples=300, deadline=None)
@given(st.sampled_from(FIELDS), st.data())
def test_parameter_maps_are_involutions(lf, data):
    t = data.draw(triples(lf)).normalized(lf)
    assert contragredient(contragredient(t, lf), lf) == t
    assert galois_twist(galois_twist(t, lf), lf) == t
    assert contragredient(galois_twist(t, lf), lf) == galois_twist(contragredient(t, lf), lf)


@settings(max_examples=300, deadline=None)
@given(st.sampled_from(FIELDS), st.data())
def test_distinguished_implies_self_dual_and_trivial_central_character(lf, data):
    t = data.draw(triples(lf)).normalized(lf)
    if is_distinguished(t, lf):
        assert is_sigma_self_dual(t, lf)
        assert central_char_trivial_on_F(t, lf)
        assert gamma_condition_tame(t, lf)


@pytest.mark.parametrize("lf", FIELDS, ids=repr)
@pytest.mark.parametrize("n", [2, 3])
def test_self_duality_implies_the_explicit_conditions(lf, n):
    for t in all_triples(lf, n):
        if is_sigma_self_dual(t, lf):
            assert self_dual_conditions(t, lf), t


@pytest.mark.parametrize("lf", FIELDS, ids=repr)
def test_explicit_conditions_are_exact_for_even_n(lf):
    for t in all_triples(lf, 2):
        assert is_sigma_self_dual(t, lf) == self_dual_conditions(t, lf), t


def test_odd_n_self_duality_needs_v_of_norm_minus_one():
    """For n odd and E/F unramified, the maps force v^(q_F - 1) = -1, which is
    stronger than v outside k_F once q_F >= 3."""
    lf = make_local_field(3)
    kE = lf.kE
    for t in all_triples(lf, 3):
        if is_sigma_self_dual(t, lf):
            assert kE.power(t.v, lf.qF - 1) == kE.from_int(-1)
    extra = [t for t in all_triples(lf, 3)
             if self_dual_conditions(t, lf) and not is_sigma_self_dual(t, lf)]
    assert len(extra) == 32


def test_make_triple_validation():
    lf = make_local_field(3)
    assert make_triple(lf, 2, 9, -1, 25) == SSCTriple(2, 1, 7, 1)
    with pytest.raises(ValueError):
        make_triple(lf, 1, 0, 0, 0)
    with pytest.raises(ValueError):
        gamma_tame(SSCTriple(2, 0, 0, 0), MultChar(lf, 1, 0, 0, 0), lf)
    with pytest.raises(ValueError):
        gamma_depth_one_gl2(SSCTriple(3, 0, 0, 0), MultChar(lf, 1, 0, 0, 0), lf)


def test_tame_characters_trivial_on_F_take_values_plus_minus_one_at_varpi():
    for lf in FIELDS:
        for lam in enumerate_chars(lf, 0, trivial_on_F=True):
            assert (2 * lam.pi_exp) % lf.m == 0
