import math
import random

import pytest

from meanexp.errors import DomainError
from meanexp.groups import mean_exponent, order_log
from meanexp.oracle import (
    QuadForm,
    ambiguous_class_count,
    class_group_structure,
    class_number,
    compose,
    form_pow,
    principal_form,
    random_law_check,
    reduce_form,
    reduced_forms,
)


def test_classical_class_number_tables():
    # the complete lists of fundamental discriminants with h = 1 and h = 2
    h1 = [-3, -4, -7, -8, -11, -19, -43, -67, -163]
    h2 = [-15, -20, -24, -35, -40, -51, -52, -88, -91, -115, -123, -148,
          -187, -232, -235, -267, -403, -427]
    for D in h1:
        assert class_number(D) == 1, D
    for D in h2:
        assert class_number(D) == 2, D
    # a few larger documented values
    assert class_number(-71) == 7
    assert class_number(-95) == 8
    assert class_number(-199) == 9
    assert class_number(-479) == 25


def test_reduced_forms_counts():
    assert class_number(-23) == 3
    assert class_number(-4) == 1
    assert class_number(-47) == 5
    assert class_number(-3) == 1
    assert reduced_forms(-4) == [QuadForm(1, 0, 1)]
    with pytest.raises(DomainError):
        reduced_forms(-5)
    with pytest.raises(DomainError):
        reduced_forms(4)


def test_reduced_forms_are_reduced_and_primitive():
    for D in (-23, -47, -71, -84, -120, -1155, -4620):
        for f in reduced_forms(D):
            assert f.is_reduced()
            assert f.disc == D
            assert math.gcd(math.gcd(f.a, abs(f.b)), f.c) == 1


def test_composition_identity_inverse():
    D = -47
    e = principal_form(D)
    for f in reduced_forms(D):
        assert compose(f, e) == f
        assert compose(f, f.inverse()) == e


def test_composition_independent_of_representative():
    # apply a unimodular substitution and compose: the class cannot change
    rng = random.Random(11)
    D = -71

    def transform(f, alpha, beta, gamma, delta):
        a = f.a * alpha * alpha + f.b * alpha * gamma + f.c * gamma * gamma
        b = 2 * f.a * alpha * beta + f.b * (alpha * delta + beta * gamma) + 2 * f.c * gamma * delta
        c = f.a * beta * beta + f.b * beta * delta + f.c * delta * delta
        return QuadForm(a, b, c)

    forms = reduced_forms(D)
    for _ in range(40):
        f1, f2 = rng.choice(forms), rng.choice(forms)
        beta, gamma = rng.randrange(-3, 4), rng.randrange(-3, 4)
        # build a determinant-one matrix [[alpha, beta], [gamma, delta]]
        alpha, delta = 1, 1 + beta * gamma
        moved = transform(f1, alpha, beta, gamma, delta)
        assert reduce_form(moved) == f1
        assert compose(moved, f2) == compose(f1, f2)


def test_class_group_structure_examples():
    assert class_group_structure(-23, 3).exps == (1,)
    assert float(mean_exponent(class_group_structure(-23, 3))) == 1.0
    assert class_group_structure(-3, 2).exps == ()
    assert class_group_structure(-3, 5).exps == ()
    # 2-part of the class group of the order of discriminant -4620
    shape = class_group_structure(-4620, 2)
    assert shape.exps == (1, 1, 1)
    assert class_number(-4620) == 24
    # the maximal order underneath, disc -1155, has the same 2-part
    assert class_group_structure(-1155, 2).exps == (1, 1, 1)
    assert class_number(-1155) == 8


def test_structure_orders_multiply_to_h():
    for D in (-23, -47, -84, -120, -231, -1155, -4620):
        h = class_number(D)
        total = 1
        m = h
        p = 2
        while m > 1:
            if m % p == 0:
                shape = class_group_structure(D, p)
                total *= p ** order_log(shape)
                while m % p == 0:
                    m //= p
            p += 1
        assert total == h, D


def test_ambiguous_count_matches_prime_discriminant_factors():
    # fundamental discriminants with known prime-discriminant factorizations
    cases = {
        -23: 1,   # prime discriminant
        -84: 3,   # (-4)(-3)(-7)
        -120: 3,  # (8)(-3)(5)
        -1155: 4, # (-3)(5)(-7)(-11)
    }
    for D, mu in cases.items():
        assert ambiguous_class_count(D) == 2 ** (mu - 1), D


def test_mean_exponent_in_range():
    for D in (-23, -47, -84, -120, -231, -1155):
        h = class_number(D)
        m = h
        p = 2
        while m > 1:
            if m % p == 0:
                shape = class_group_structure(D, p)
                if shape.exps:
                    me = mean_exponent(shape)
                    assert 1 <= me <= math.log(h) / math.log(p)
                while m % p == 0:
                    m //= p
            p += 1


def test_random_law_check_runs():
    rng = random.Random(0)
    for _ in range(10):
        n = rng.randrange(3, 30000)
        D = -n
        while D % 4 not in (0, 1):
            D -= 1
        random_law_check(D, trials=5, rng=rng)


def test_power_and_order():
    D = -47  # cyclic of order 5
    forms = reduced_forms(D)
    e = principal_form(D)
    nontrivial = [f for f in forms if f != e]
    for f in nontrivial:
        assert form_pow(f, 5, D) == e
        assert form_pow(f, 1, D) == f
        assert form_pow(f, -1, D) == f.inverse()
        assert form_pow(f, 2, D) != e  # order exactly 5
