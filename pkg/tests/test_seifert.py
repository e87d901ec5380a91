from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from sfs4.homology import h1_oracle
from sfs4.seifert import (
    SeifertData,
    StandardForm,
    euler_invariant,
    expand,
    find_contractions,
    normalize,
)

F = Fraction


def sfs(g, e, *fibers):
    return SeifertData(g, e, tuple(F(x) for x in fibers))


def std(g, e, *fibers):
    return StandardForm(g, e, tuple(F(x) for x in fibers))


# random raw Seifert data: small fibers, arbitrary signs and normalization state
fiber_st = st.fractions(min_value=F(-20), max_value=20).filter(
    lambda r: r != 0 and abs(r.numerator) <= 20 and r.denominator <= 20
)
raw_st = st.builds(
    SeifertData,
    st.integers(min_value=0, max_value=2),
    st.integers(min_value=-5, max_value=5),
    st.lists(fiber_st, max_size=6).map(tuple),
)


def test_euler_invariant_examples():
    assert euler_invariant(sfs(0, 2, 2, F(3, 2), F(5, 4))) == F(1, 30)
    assert euler_invariant(sfs(0, 0)) == 0
    assert euler_invariant(sfs(0, 0, 3, -3, 2)) == F(-1, 2)


def test_normalize_examples():
    s = normalize(sfs(0, 0, -3, 3, -3))
    assert (s.central, sorted(s.fibers)) == (2, [F(3, 2), F(3, 2), F(3)])
    assert not s.orientation_reversed

    t = std(1, 1, 2)
    assert normalize(t.as_seifert_data()) == t

    u = normalize(sfs(0, 0, 3, -3, 5))
    assert (u.central, sorted(u.fibers)) == (2, [F(5, 4), F(3, 2), F(3)])
    assert u.orientation_reversed
    assert euler_invariant(u) == F(1, 5)


def test_normalize_drops_regular_fibers():
    s = normalize(sfs(0, 1, F(1, 3), 2))
    # fiber 1/3 has integer reciprocal 3, folds into the central weight
    assert s.fibers == (F(2),)
    assert euler_invariant(s) == abs(euler_invariant(sfs(0, 1, F(1, 3), 2)))


@given(raw_st)
@settings(max_examples=200)
def test_normalize_standard_and_eps(s):
    n = normalize(s)
    assert all(r > 1 for r in n.fibers)
    eps = euler_invariant(n)
    assert eps >= 0
    assert eps == abs(euler_invariant(s))


@given(raw_st)
@settings(max_examples=100)
def test_normalize_idempotent(s):
    n = normalize(s)
    again = normalize(n.as_seifert_data())
    assert (again.genus, again.central, again.fibers) == (n.genus, n.central, n.fibers)
    assert not again.orientation_reversed


@given(raw_st)
@settings(max_examples=60)
def test_normalize_preserves_h1(s):
    assert h1_oracle(normalize(s)) == h1_oracle(s)


def test_expand_examples():
    s = expand(std(1, 1, F(3, 2)), 1)
    assert (s.central, s.fibers) == (2, (F(3, 2), F(3), F(3, 2)))

    t = expand(std(1, 1, 2, F(5, 2)), 1)
    assert (t.central, t.fibers) == (2, (F(2), F(5, 2), F(2), F(2)))
    assert euler_invariant(t) == F(1, 10)

    with pytest.raises(IndexError):
        expand(std(0, 1, 2), 2)


@st.composite
def standard_forms(draw, max_fibers=6, max_p=12):
    k = draw(st.integers(min_value=1, max_value=max_fibers))
    fibers = []
    for _ in range(k):
        p = draw(st.integers(min_value=2, max_value=max_p))
        q = draw(st.integers(min_value=1, max_value=p - 1))
        fibers.append(F(p, q))
    beta_sum = sum((1 / r for r in fibers), F(0))
    ceil_beta = -(-beta_sum.numerator // beta_sum.denominator)
    e = draw(st.integers(min_value=0, max_value=3)) + ceil_beta
    genus = draw(st.integers(min_value=0, max_value=2))
    return StandardForm(genus, e, tuple(fibers))


@given(standard_forms(), st.data())
@settings(max_examples=150)
def test_expand_preserves_eps_and_contracts_back(s, data):
    j = data.draw(st.integers(min_value=1, max_value=s.fiber_count))
    big = expand(s, j)
    assert euler_invariant(big) == euler_invariant(s)
    keys = [c.canonical_key() for _, c in find_contractions(big)]
    assert s.canonical_key() in keys


def test_find_contractions_examples():
    cs = find_contractions(std(1, 2, F(3, 2), 3, F(3, 2)))
    assert any(c.canonical_key() == std(1, 1, F(3, 2)).canonical_key() for _, c in cs)

    assert find_contractions(std(1, 1, 2, F(5, 2))) == []

    cs2 = find_contractions(std(1, 2, 2, 2, 2, 2))
    assert [c.canonical_key() for _, c in cs2] == [std(1, 1, 2, 2).canonical_key()]


def test_contraction_replays_through_expand():
    big = std(0, 2, 2, F(5, 2), 2, 2)
    for j, small in find_contractions(big):
        redone = expand(small, j)
        assert redone.canonical_key() == big.canonical_key()


def test_validation():
    with pytest.raises(ValueError):
        SeifertData(-1, 0, ())
    with pytest.raises(ValueError):
        SeifertData(0, 0, (F(0),))
    with pytest.raises(ValueError):
        StandardForm(0, 1, (F(1, 2),))
    with pytest.raises(ValueError):
        StandardForm(0, 0, (F(3, 2),))  # eps < 0


def test_round_trip_text():
    s = sfs(0, 2, F(3, 2), 3, F(3, 2))
    assert str(s) == "SFS(g=0; e=2; 3/2, 3, 3/2)"
