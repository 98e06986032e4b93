from fractions import Fraction

from hypothesis import given, settings
from hypothesis import strategies as st

from virk.coeff import ALPHA, I, ONE, Scalar
from virk.coeff import linalg

F = Fraction


def S(x):
    return Scalar.coerce(x)


def test_rank_nullspace_solve():
    m = [[S(1), S(2), S(3)], [S(2), S(4), S(6)], [S(0), S(1), S(1)]]
    assert linalg.rank(m) == 2
    (v,) = linalg.nullspace(m, 3)
    assert all(x.is_zero() for x in linalg.mat_vec(m, v))
    assert linalg.solve(m, [S(1), S(2), S(1)]) is not None
    assert linalg.solve(m, [S(1), S(0), S(0)]) is None
    assert linalg.nullspace([], 2) == [[S(1), S(0)], [S(0), S(1)]]


def test_ldl_positive_and_witness():
    good = [[S(2), I], [-I, S(1)]]
    sig = linalg.hermitian_ldl(good)
    assert sig.positive and sig.rank == 2
    bad = [[S(0), S(1)], [S(1), S(0)]]
    sig = linalg.hermitian_ldl(bad)
    assert not sig.positive
    w = sig.witness
    norm = sum((w[i].conj() * bad[i][j] * w[j] for i in range(2) for j in range(2)), S(0))
    assert norm == sig.witness_norm and norm.real_value() < 0


def test_specialize_alpha2():
    s = ONE + ALPHA * ALPHA * 12
    assert linalg.specialize_alpha2(s, 1) == 13
    assert linalg.specialize_alpha2(I * ALPHA, F(1, 4)) == I / 2
    q = linalg.specialize_alpha2(ALPHA + 1, 2)  # 1 + sqrt 2
    assert not q.is_zero()
    assert q * q.inverse() == linalg.QuadraticValue(F(1), F(0), F(2))


@settings(max_examples=40, deadline=None)
@given(st.lists(st.lists(st.integers(-4, 4), min_size=3, max_size=3), min_size=1, max_size=4))
def test_rank_nullity(rows):
    m = [[S(x) for x in r] for r in rows]
    assert linalg.rank(m) + len(linalg.nullspace(m, 3)) == 3
