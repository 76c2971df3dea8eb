import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import NaiveField
from sscgamma.ff import (ZERO, FieldError, frobenius, is_irreducible, make_field,
                         make_quadratic_extension, norm_and_trace, smallest_irreducible,
                         solve_trace_zero)

FIELDS = [(3, 1), (3, 2), (5, 1), (5, 2), (7, 2), (3, 4)]


@pytest.mark.parametrize("p,f", FIELDS)
def test_tables_agree_with_polynomial_arithmetic(p, f):
    k = make_field(p, f)
    naive = NaiveField(p, k.modulus)
    g = naive.from_code(k.generator)
    assert naive.order(g) == k.q - 1
    x = naive.one()
    for a in range(k.q - 1):
        assert naive.from_code(k.exp[a]) == x
        x = naive.mul(x, g)
    for a in range(k.q - 1):
        for b in range(-1, k.q - 1):
            want_code = k.code_of(a) if b == ZERO else None
            if b != ZERO:
                s = naive.add(naive.from_code(k.exp[a]), naive.from_code(k.exp[b]))
                want = ZERO if not any(s) else k.log[sum(c * p**i for i, c in enumerate(s))]
                assert k.add(a, b) == want
            else:
                assert k.code_of(k.add(a, b)) == want_code


def test_frozen_conventions_for_small_fields():
    f3 = make_field(3)
    f9 = make_field(3, 2)
    assert f9.modulus == (1, 0, 1)
    assert f3.generator == 2
    assert f9.generator == 4
    assert smallest_irreducible(3, 2) == (1, 0, 1)
    assert is_irreducible([1, 0, 1], 3) and not is_irreducible([2, 0, 1], 3)


def test_quadratic_extension_structure():
    kE = make_quadratic_extension(make_field(3))
    assert kE.q == 9 and kE.subfield.q == 3
    assert sorted(a for a in range(8) if kE.in_subfield(a)) == [0, 4]
    # Frobenius is a -> 3a on logs
    assert [kE.frob_raw(a) for a in range(8)] == [3 * a % 8 for a in range(8)]
    fixed = [a for a in range(8) if kE.frob_raw(a) == a]
    assert len(fixed) + 1 == 3  # plus zero: the subfield F_3
    kernel = [a for a in range(8) if norm_and_trace(kE(a))[0].log == 0]
    assert len(kernel) == 4
    trace_zero = [a for a in range(-1, 8) if norm_and_trace(kE(a))[1].log == ZERO]
    assert len(trace_zero) == 3
    assert solve_trace_zero(kE).log == 6


@settings(max_examples=200, deadline=None)
@given(st.sampled_from([(3, 1), (5, 1), (7, 1)]), st.data())
def test_norm_and_trace_are_norm_and_trace(pf, data):
    base = make_field(*pf)
    kE = make_quadratic_extension(base)
    a = data.draw(st.integers(0, kE.q - 2))
    b = data.draw(st.integers(0, kE.q - 2))
    x, y = kE(a), kE(b)
    nx, tx = norm_and_trace(x)
    ny, _ = norm_and_trace(y)
    assert norm_and_trace(x * y)[0] == nx * ny
    sx = frobenius(x)
    assert frobenius(sx) == x
    assert kE.embed(tx.log) == (x + sx).log
    assert kE.embed(nx.log) == (x * sx).log


@settings(max_examples=200, deadline=None)
@given(st.sampled_from(FIELDS), st.data())
def test_field_axioms(pf, data):
    k = make_field(*pf)
    elt = st.integers(-1, k.q - 2).map(k)
    x, y, z = data.draw(elt), data.draw(elt), data.draw(elt)
    assert (x + y) + z == x + (y + z)
    assert x * (y + z) == x * y + x * z
    assert x - x == k.zero
    if not x.is_zero:
        assert x * x.inverse() == k.one


def test_rejects_bad_parameters():
    for p, f in [(2, 1), (9, 1), (3, 0)]:
        with pytest.raises(FieldError):
            make_field(p, f)
