from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from meanexp.errors import DomainError, InconsistentParametersError
from meanexp.groups import (
    AbelianPShape,
    IwasawaClass,
    IwasawaParams,
    exponent_log,
    iwasawa_asymptotic_class,
    iwasawa_level_data,
    mean_exponent,
    order_log,
    rank,
)


def test_mean_exponent_examples():
    assert mean_exponent(AbelianPShape(2, (3, 1))) == 2
    assert mean_exponent(AbelianPShape(3, ())) == 0
    assert mean_exponent(AbelianPShape(3, (5,))) == 5
    assert mean_exponent(AbelianPShape(2, (1, 1, 1))) == 1


def test_shape_accessors():
    a = AbelianPShape(2, (3, 1))
    assert exponent_log(a) == 3
    assert rank(a) == 2
    assert order_log(a) == 4
    t = AbelianPShape(2, ())
    assert exponent_log(t) == rank(t) == order_log(t) == 0


def test_shape_validation():
    with pytest.raises(DomainError):
        AbelianPShape(4, (1,))
    with pytest.raises(DomainError):
        AbelianPShape(2, (0,))


@given(st.lists(st.integers(min_value=1, max_value=30), max_size=8))
def test_mean_exponent_bounds_and_permutation_invariance(exps):
    a = AbelianPShape(3, tuple(exps))
    m = mean_exponent(a)
    if not exps:
        assert m == 0
        return
    assert 1 <= m <= order_log(a)
    assert (m == 1) == all(e == 1 for e in exps)
    assert (m == order_log(a)) == (len(exps) == 1)
    shuffled = AbelianPShape(3, tuple(reversed(sorted(exps))))
    assert mean_exponent(shuffled) == m


def test_iwasawa_level_data_examples():
    p1 = IwasawaParams(p=2, mu=2, lam=0, nu=0, s=1, c=0)
    assert iwasawa_level_data(p1, 5) == (64, 32, Fraction(2))

    p2 = IwasawaParams(p=2, mu=0, lam=2, nu=0, s=0, c=1)
    order, rk, mean = iwasawa_level_data(p2, 10)
    assert (order, rk) == (20, 3)
    assert mean == Fraction(20, 3)

    p3 = IwasawaParams(p=2, mu=0, lam=0, nu=4, s=0, c=2)
    for n in (1, 5, 9):
        assert iwasawa_level_data(p3, n)[2] == 2


def test_iwasawa_level_data_rejects_inconsistent():
    p = IwasawaParams(p=2, mu=0, lam=0, nu=1, s=0, c=2)
    with pytest.raises(InconsistentParametersError):
        iwasawa_level_data(p, 3)  # order_log 1 < rank 2


def test_mu_iff_s_enforced():
    with pytest.raises(InconsistentParametersError):
        IwasawaParams(p=2, mu=1, lam=0, nu=0, s=0, c=1)
    with pytest.raises(InconsistentParametersError):
        IwasawaParams(p=2, mu=0, lam=1, nu=0, s=2, c=0)


def test_asymptotic_classification():
    cls, val = iwasawa_asymptotic_class(IwasawaParams(p=3, mu=0, lam=3, nu=0, s=0, c=1))
    assert cls is IwasawaClass.GROWS_LOG and val == Fraction(3, 4)
    cls, val = iwasawa_asymptotic_class(IwasawaParams(p=3, mu=5, lam=0, nu=0, s=2, c=0))
    assert cls is IwasawaClass.CONSTANT_MU_OVER_S and val == Fraction(5, 2)
    cls, val = iwasawa_asymptotic_class(IwasawaParams(p=3, mu=0, lam=0, nu=6, s=0, c=3))
    assert cls is IwasawaClass.CONSTANT_NU_OVER_C and val == 2


def test_growth_matches_classification_at_level_30():
    params = IwasawaParams(p=2, mu=0, lam=2, nu=1, s=0, c=1)
    cls, delta = iwasawa_asymptotic_class(params)
    assert cls is IwasawaClass.GROWS_LOG
    _, _, mean = iwasawa_level_data(params, 30)
    ratio = float(mean) / (float(delta) * 30)
    assert abs(ratio - 1) < 0.05
