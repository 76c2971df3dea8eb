import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sscgamma.chargrp import build_quotient, dual_group, kernel_intersection_contains
from sscgamma.lf import RAMIFIED, make_local_field, units_mod

FIELDS = [make_local_field(q, kind=k) for q in (3, 5, 7) for k in ("unramified", RAMIFIED)]


@pytest.mark.parametrize("lf", FIELDS, ids=repr)
def test_group_order_and_dual_size(lf):
    G = build_quotient(lf)
    expected = lf.qF + 1 if lf.unramified else 2
    assert G.order == expected
    assert len(dual_group(G)) == expected


def test_frozen_pairing_table():
    G = build_quotient(make_local_field(3))
    assert G.pairing_table() == [[0, 0, 0, 0], [0, 6, 12, 18], [0, 12, 0, 12], [0, 18, 12, 6]]
    assert build_quotient(make_local_field(3, kind=RAMIFIED)).pairing_table() == [[0, 0], [0, 12]]


@pytest.mark.parametrize("lf", FIELDS, ids=repr)
def test_pairing_is_perfect(lf):
    G = build_quotient(lf)
    table = G.pairing_table()
    m = lf.m
    assert len({tuple(r) for r in table}) == G.order
    assert len({tuple(c) for c in zip(*table)}) == G.order
    for i, row in enumerate(table):
        for j in range(G.order):
            for k in range(G.order):
                assert row[(j + k) % G.order] == (row[j] + row[k]) % m


def _brute_class_identity(lf, x):
    """Is x in F^x (1 + P_E)?  Search a scalar b in F^x with x / b in 1 + P_E."""
    for k in range(-4, 5):
        for b in range(lf.qF - 1):
            f = (lf.varpi_F ** k).scale(lf.from_kF(b)) if k >= 0 else \
                (lf.varpi_F ** (-k)).inverse().scale(lf.from_kF(b))
            y = x * f.inverse()
            if y.val == 0 and y.lead == 0:
                return True
    return False


@settings(max_examples=150, deadline=None)
@given(st.sampled_from(FIELDS[:4]), st.data())
def test_kernel_intersection_matches_brute_force(lf, data):
    val = data.draw(st.integers(-3, 3))
    lead = data.draw(st.integers(0, lf.qE - 2))
    tail = data.draw(st.lists(st.integers(-1, lf.qE - 2), max_size=2))
    x = lf.series([lead, *tail], val)
    G = build_quotient(lf)
    got = kernel_intersection_contains(G, x)
    assert got == G.is_identity(x) == _brute_class_identity(lf, x)


def test_ramified_varpi_times_unit_is_never_trivial():
    for q in (3, 5):
        lf = make_local_field(q, kind=RAMIFIED)
        G = build_quotient(lf)
        for v in units_mod(lf, 2):
            assert not kernel_intersection_contains(G, v * lf.varpi(1))


def test_zero_has_no_class():
    G = build_quotient(make_local_field(3))
    with pytest.raises(ZeroDivisionError):
        kernel_intersection_contains(G, G.lf.zero)
