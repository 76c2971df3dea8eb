from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sscgamma.cyclo import GammaMonomial
from sscgamma.lf import RAMIFIED, MultChar, make_local_field, units_mod
from sscgamma.rso import (TILDE, Mat2, WhittakerSpec, alpha, beta, coset_data,
                          extra_translates, gamma_for_translate,
                          gamma_from_functional_equation, integral_psi, tilde_matrix,
                          whittaker_exp)
from sscgamma.ssc import (SSCTriple, central_char, dual_zeta_integral_depth_one,
                          gamma_depth_one_gl2, gamma_tame, zeta_integral_depth_one)

LF = make_local_field(3)


def spec_of(lf, v, phi, zeta):
    return WhittakerSpec(SSCTriple(2, v, phi, zeta), lf)


def matrices(lf):
    """Exact invertible matrices with entries of small valuation."""
    entry = st.builds(lambda v, a0, a1: lf.series([a0, a1], v),
                      st.integers(-2, 2), st.integers(0, lf.qE - 2), st.integers(-1, lf.qE - 2))
    return st.builds(Mat2, entry, entry, entry, entry).filter(lambda g: not g.det().is_zero())


def test_whittaker_at_identity_is_one():
    for v in range(8):
        for zeta in (0, 5, 12):
            assert whittaker_exp(spec_of(LF, v, 3, zeta), Mat2.identity(LF)) == 0


@settings(max_examples=150, deadline=None)
@given(st.data())
def test_left_equivariance_under_N(data):
    W = spec_of(LF, data.draw(st.integers(0, 7)), data.draw(st.integers(0, 7)),
                data.draw(st.integers(0, 23)))
    g = data.draw(matrices(LF))
    x = LF.series([data.draw(st.integers(0, 7))], data.draw(st.integers(-3, 2)))
    e0, e1 = whittaker_exp(W, g), whittaker_exp(W, Mat2.upper(x) * g)
    assert (e0 is None) == (e1 is None)
    if e0 is not None:
        assert e1 == (e0 + LF.psi.exp(x)) % LF.m


@settings(max_examples=150, deadline=None)
@given(st.data())
def test_right_equivariance_under_J(data):
    """W(g j) = W(g) Lambda(j) for the generators of J_v."""
    v, phi, zeta = (data.draw(st.integers(0, 7)), data.draw(st.integers(0, 7)),
                    data.draw(st.integers(0, 23)))
    W = spec_of(LF, v, phi, zeta)
    g = data.draw(matrices(LF))
    e0 = whittaker_exp(W, g)
    m = LF.m
    a = data.draw(st.integers(0, 7))
    z12 = LF.series([data.draw(st.integers(-1, 7))], 0)
    z21 = LF.series([data.draw(st.integers(-1, 7))], 1)
    w = LF.varpi(1)
    cases = [
        (beta(LF, v), zeta * (m // 24)),
        (Mat2.diag(LF.teich(a), LF.teich(a)), phi * a * (m // 8)),
        (Mat2.upper(z12), LF.psi.exp(z12)),
        (Mat2.lower(z21), LF.psi.exp(z21 * LF.monomial(LF.kE.inv(v), -1))),
        (Mat2.diag(LF.one + w, LF.one), 0),
    ]
    for j, shift in cases:
        e1 = whittaker_exp(W, g * j)
        assert (e0 is None) == (e1 is None)
        if e0 is not None:
            assert e1 == (e0 + shift) % m


def test_center_acts_by_the_central_character():
    for v, phi, zeta in [(0, 0, 0), (3, 5, 7), (6, 1, 12)]:
        t = SSCTriple(2, v, phi, zeta)
        W = WhittakerSpec(t, LF)
        omega = central_char(LF, t)
        w = LF.varpi(1)
        g = Mat2.diag(w, w)
        assert whittaker_exp(W, g) == omega.exp(w)


def test_tilde_is_an_involution():
    g = Mat2(LF.series([1, 2], 0), LF.series([3], -1), LF.series([5], 1), LF.series([0, 4], 0))
    back = tilde_matrix(tilde_matrix(g))
    assert all((x - y).is_zero() or (x - y).val >= LF.precision - 3
               for x, y in zip(back.entries(), g.entries()))


def test_support_of_the_dual_integrand_sits_in_one_shell():
    """Only h in -c^2 w^-2 (1 + P) contribute, all through beta^-2."""
    for c in (0, 3, 5):
        T = alpha(LF, c)
        lead = LF.kE.neg(LF.kE.mul(c, c))
        for val in range(-4, 3):
            for u in units_mod(LF, 2):
                h = u.shift(val)
                hinv = h.inverse()
                g = Mat2(T.c, T.d, hinv * T.a, hinv * T.b)
                data = coset_data(LF, 2, g)
                inside = val == -2 and h.lead == lead
                assert (data is not None) == inside
                if inside:
                    assert data[0] == -2


def test_zeta_integral_closed_form_example():
    W = spec_of(LF, 0, 0, 0)
    lam = MultChar(LF, 1, 0, 0, 0)
    T = alpha(LF, 0)
    assert integral_psi(W, T, lam) == zeta_integral_depth_one(lam, LF).to_cyclo()
    assert integral_psi(W, T, lam) == LF.ring.one
    assert integral_psi(W, T, lam.inverse(), TILDE) == LF.ring.monomial(0, 2, 2)
    assert integral_psi(W, T, lam.inverse(), TILDE) == \
        dual_zeta_integral_depth_one(W.triple, lam, LF).to_cyclo()


def test_tame_integrals_frozen():
    W = spec_of(LF, 0, 0, 0)
    triv = MultChar(LF, 0, 0, 0)
    ident = Mat2.identity(LF)
    assert integral_psi(W, ident, triv) == LF.ring.one
    assert integral_psi(W, ident, triv, TILDE) == LF.ring.monomial(0, 1, 1)


def test_gamma_frozen_examples():
    t = SSCTriple(2, 0, 0, 0)
    W = WhittakerSpec(t, LF)
    deep = MultChar(LF, 1, 0, 0, 0)
    assert gamma_from_functional_equation(W, deep) == GammaMonomial(LF.ring, 0, Fraction(1), 2)
    assert gamma_from_functional_equation(W, deep) == gamma_depth_one_gl2(t, deep, LF)
    tame = MultChar(LF, 0, 3, 6)
    assert gamma_from_functional_equation(W, tame) == gamma_tame(t, tame, LF)


def test_measure_normalization_does_not_change_gamma():
    t = SSCTriple(2, 5, 2, 9)
    W = WhittakerSpec(t, LF)
    for lam in (MultChar(LF, 0, 1, 3), MultChar(LF, 1, 2, 6, 4)):
        base = gamma_from_functional_equation(W, lam)
        for mass in (Fraction(1, 8), Fraction(3, 7), Fraction(5)):
            assert gamma_from_functional_equation(W, lam, mass=mass) == base
        assert integral_psi(W, Mat2.identity(LF), lam, mass=Fraction(2)) == \
            integral_psi(W, Mat2.identity(LF), lam) * 2


def test_gamma_does_not_depend_on_the_translate():
    t = SSCTriple(2, 1, 6, 3)
    W = WhittakerSpec(t, LF)
    for lam in (MultChar(LF, 1, 0, 12, 2), MultChar(LF, 1, 5, 7, 6)):
        want = gamma_from_functional_equation(W, lam)
        got = [gamma_for_translate(W, lam, T) for T in extra_translates(LF, lam)]
        assert all(g == want for g in got)
    # tame characters integrate to zero against these translates, so they are skipped
    tame = MultChar(LF, 0, 2, 0)
    assert all(gamma_for_translate(W, tame, T) is None for T in extra_translates(LF, tame))


@pytest.mark.parametrize("epsilon", [0, 1])
def test_ramified_oracle_matches_tame_formula(epsilon):
    lf = make_local_field(3, kind=RAMIFIED, epsilon=epsilon)
    for v, phi, zeta in [(0, 0, 0), (1, 1, 5), (1, 0, 12)]:
        t = SSCTriple(2, v, phi, zeta)
        W = WhittakerSpec(t, lf)
        for lam in (MultChar(lf, 0, 0, 0), MultChar(lf, 0, 1, 6), MultChar(lf, 0, 1, 13)):
            assert gamma_from_functional_equation(W, lam) == gamma_tame(t, lam, lf)


def test_only_gl2_is_modelled():
    with pytest.raises(ValueError):
        WhittakerSpec(SSCTriple(3, 0, 0, 0), LF)
    with pytest.raises(ValueError):
        integral_psi(spec_of(LF, 0, 0, 0), Mat2.identity(LF), MultChar(LF, 0, 0, 0), "other")
