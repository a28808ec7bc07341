import pytest
from hypothesis import given, settings, strategies as st

from regulus.errors import (
    IncompatibleModulus,
    NonUnitConstantTerm,
    RingMismatch,
    TruncationTooSmall,
)
from regulus.etaq import expand_f, jacobi_cube_series
from regulus.series import RingSpec, TruncatedSeries, ZZ, from_coeffs, make_constant

MOD_RINGS = [RingSpec.mod(2), RingSpec.mod(5), RingSpec.mod(24)]
RINGS = [ZZ] + MOD_RINGS

rings = st.sampled_from(RINGS)
mod_rings = st.sampled_from(MOD_RINGS)
coeff = st.integers(min_value=-50, max_value=50)


@st.composite
def series_pair(draw, ring=None, n=2, min_trunc=0):
    r = draw(rings) if ring is None else ring
    trunc = draw(st.integers(min_value=min_trunc, max_value=64))
    out = tuple(
        from_coeffs(r, draw(st.lists(coeff, min_size=trunc + 1, max_size=trunc + 1)))
        for _ in range(n)
    )
    return out if n > 1 else out[0]


# ---------------------------------------------------------------------------
# constructors and access
# ---------------------------------------------------------------------------


def test_make_constant():
    assert make_constant(ZZ, 1, 4).coeffs() == [1, 0, 0, 0, 0]
    assert make_constant(RingSpec.mod(5), 7, 2).coeffs() == [2, 0, 0]
    assert make_constant(ZZ, 0, 0).coeffs() == [0]
    with pytest.raises(ValueError):
        make_constant(ZZ, 1, -1)
    with pytest.raises(ValueError):
        RingSpec.mod(1)


def test_at_boundaries():
    s = from_coeffs(ZZ, [1, 2, 3])
    assert s.at(-5) == 0
    assert s.at(2) == 3
    with pytest.raises(TruncationTooSmall):
        s.at(3)


# ---------------------------------------------------------------------------
# arithmetic examples
# ---------------------------------------------------------------------------


def test_add_sub():
    assert (from_coeffs(ZZ, [1, 1]) + from_coeffs(ZZ, [1, -1])).coeffs() == [2, 0]
    s = from_coeffs(ZZ, [1, 2, 3])
    assert (s - s).coeffs() == [0, 0, 0]
    m3 = RingSpec.mod(3)
    assert (from_coeffs(m3, [2, 2]) + from_coeffs(m3, [2, 2])).coeffs() == [1, 1]
    with pytest.raises(RingMismatch):
        from_coeffs(ZZ, [1]) + from_coeffs(m3, [1])


def test_mul():
    a = from_coeffs(ZZ, [1, 1, 0])
    b = from_coeffs(ZZ, [1, -1, 0])
    assert (a * b).coeffs() == [1, 0, -1]
    f1 = expand_f(1, 50)
    assert (f1 * f1.invert()).coeffs() == make_constant(ZZ, 1, 50).coeffs()


def test_invert():
    assert from_coeffs(ZZ, [1, -1, 0, 0, 0]).invert().coeffs() == [1, 1, 1, 1, 1]
    p = expand_f(1, 10).invert()
    assert p.coeffs() == [1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42]
    with pytest.raises(NonUnitConstantTerm):
        from_coeffs(ZZ, [2, 1]).invert()
    with pytest.raises(NonUnitConstantTerm):
        from_coeffs(RingSpec.mod(4), [2, 1]).invert()


def test_pow():
    assert (from_coeffs(ZZ, [1, 1, 0]) ** 2).coeffs() == [1, 2, 1]
    s = from_coeffs(ZZ, [1, 5, -2])
    assert (s**1) == s
    assert (s**0) == make_constant(ZZ, 1, 2)
    assert expand_f(1, 100) ** 3 == jacobi_cube_series(100)


def test_magnify():
    assert from_coeffs(ZZ, [1, 1]).magnify(3).coeffs() == [1, 0, 0, 1]
    s = from_coeffs(ZZ, [3, 1, 4])
    assert s.magnify(1) is s
    assert expand_f(1, 20).magnify(2) == expand_f(2, 40)


def test_shift():
    assert from_coeffs(ZZ, [1, 1]).shift(1).coeffs() == [0, 1, 1]
    s = from_coeffs(ZZ, [1, 2])
    assert s.shift(0) is s


def test_extract_ap():
    s = from_coeffs(ZZ, [10, 11, 12, 13, 14, 15])
    assert s.extract_ap(3, 1).coeffs() == [11, 14]
    assert s.extract_ap(1, 0) is s
    with pytest.raises(ValueError):
        s.extract_ap(3, 3)


def test_reduce_mod():
    assert from_coeffs(ZZ, [7, -1]).reduce_mod(5).coeffs() == [2, 4]
    s = from_coeffs(ZZ, list(range(20)))
    assert s.reduce_mod(24).reduce_mod(12) == s.reduce_mod(12)
    with pytest.raises(IncompatibleModulus):
        s.reduce_mod(24).reduce_mod(7)


# ---------------------------------------------------------------------------
# ring laws and structural properties
# ---------------------------------------------------------------------------


@given(series_pair(n=3))
def test_ring_laws(triple):
    a, b, c = triple
    assert a * b == b * a
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    one = make_constant(a.ring, 1, a.trunc)
    assert one * a == a * one == a


@given(series_pair(n=1))
def test_invert_two_sided(s):
    u = from_coeffs(s.ring, [1] + s.coeffs()[1:])
    one = make_constant(s.ring, 1, s.trunc)
    assert u * u.invert() == one
    assert u.invert() * u == one
    assert u.invert().invert() == u


@given(
    series_pair(n=1),
    st.integers(min_value=-3, max_value=3),
    st.integers(min_value=-3, max_value=3),
)
@settings(max_examples=40)
def test_pow_additivity(s, e1, e2):
    u = from_coeffs(s.ring, [1] + s.coeffs()[1:])
    assert u ** (e1 + e2) == (u**e1) * (u**e2)


@given(series_pair(n=1, min_trunc=16), st.integers(min_value=1, max_value=6))
def test_dissection_reassembles(s, m):
    parts = [s.extract_ap(m, r).magnify(m).shift(r) for r in range(m)]
    total = parts[0]
    for part in parts[1:]:
        total = total + part
    assert total == s.prefix(total.trunc)


@given(series_pair(ring=ZZ, n=2), st.sampled_from([2, 3, 5, 12, 24]))
def test_reduce_mod_is_homomorphism(pair, m):
    a, b = pair
    assert (a * b).reduce_mod(m) == a.reduce_mod(m) * b.reduce_mod(m)
    assert (a + b).reduce_mod(m) == a.reduce_mod(m) + b.reduce_mod(m)


@given(series_pair(ring=RingSpec.mod(24), n=2))
def test_reduce_mod_nested_homomorphism(pair):
    a, b = pair
    assert (a * b).reduce_mod(12) == a.reduce_mod(12) * b.reduce_mod(12)


def test_min_trunc_semantics():
    a = from_coeffs(ZZ, [1, 2, 3, 4, 5])
    b = from_coeffs(ZZ, [1, 1])
    assert (a + b).trunc == 1
    assert (a * b).trunc == 1
    assert (a * b).coeffs() == [1, 3]
