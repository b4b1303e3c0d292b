#!/usr/bin/env python3

import sys
import os
sys.path.insert(0, os.path.dirname(__file__))

from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from ffield import (
    BadReduction,
    BudgetExceeded,
    FieldError,
    check_budget,
    embedding,
    fifth_power_count,
    make_field,
    quadratic_root_count,
)
from field_cache import FieldCache, get_field


def test_prime_field_generator_order():
    ctx = make_field(11)
    assert ctx.q == 11
    assert len(set(ctx.exp.tolist())) == 10
    assert ctx.GF(ctx.generator) ** 5 != 1


def test_extension_generator_order():
    f9 = make_field(3, 2)
    assert f9.q == 9
    assert sorted(f9.exp.tolist()) == list(range(1, 9))


@pytest.mark.slow
def test_degree_four_extension():
    ctx = make_field(7, 4)
    assert ctx.q == 2401
    assert len(np.unique(ctx.exp)) == 2400


@pytest.mark.parametrize("p,k", [(2, 1), (5, 1), (9, 1), (3, 5), (7, 0)])
def test_rejects_bad_fields(p, k):
    with pytest.raises(FieldError):
        make_field(p, k)


def test_exp_log_roundtrip():
    ctx = make_field(3, 2)
    nonzero = np.arange(1, ctx.q)
    assert np.array_equal(ctx.exp[ctx.log[nonzero]], nonzero)
    assert ctx.log[0] == -1


def test_fifth_power_count_examples():
    f11 = get_field(11)
    f7 = get_field(7)
    assert fifth_power_count(f11, 1) == 5
    assert fifth_power_count(f7, 3) == 1
    assert fifth_power_count(f11, 0) == 1
    assert fifth_power_count(f11, 2) == 0


@pytest.mark.parametrize("p,k", [(3, 1), (7, 1), (11, 1), (3, 2)])
def test_fifth_power_counts_partition_the_field(p, k):
    ctx = get_field(p, k)
    assert int(ctx.fifth_power_counts(ctx.elements).sum()) == ctx.q


def test_fifth_power_counts_match_enumeration():
    ctx = get_field(11)
    fifth = ctx.elements ** 5
    for value in range(ctx.q):
        c = ctx.GF(value)
        assert fifth_power_count(ctx, c) == int(np.count_nonzero(fifth == c))


def test_quadratic_root_count_examples():
    f11 = get_field(11)
    assert quadratic_root_count(f11, 1, 0, -1) == 2
    assert quadratic_root_count(f11, 1, 0, 1) == 0
    assert quadratic_root_count(f11, 1, 2, 1) == 1
    with pytest.raises(FieldError):
        quadratic_root_count(f11, 0, 1, 1)


@settings(max_examples=60, deadline=None)
@given(st.sampled_from([(3, 1), (7, 1), (13, 1), (3, 2)]), st.data())
def test_quadratic_root_count_matches_enumeration(field, data):
    ctx = get_field(*field)
    a2 = data.draw(st.integers(1, ctx.q - 1))
    a1 = data.draw(st.integers(0, ctx.q - 1))
    a0 = data.draw(st.integers(0, ctx.q - 1))
    x = ctx.elements
    values = ctx.GF(a2) * x * x + ctx.GF(a1) * x + ctx.GF(a0)
    expected = int(np.count_nonzero(values == 0))
    assert quadratic_root_count(ctx, ctx.GF(a2), ctx.GF(a1), ctx.GF(a0)) == expected


def test_from_rational():
    ctx = get_field(7)
    assert ctx.from_rational(Fraction(1, 2)) == ctx.GF(4)
    assert ctx.from_rational(-1) == ctx.GF(6)
    with pytest.raises(BadReduction):
        ctx.from_rational(Fraction(1, 7))


def test_coerce_rejects_foreign_elements():
    f7 = get_field(7)
    f11 = get_field(11)
    with pytest.raises(FieldError):
        f7.coerce(f11.GF(3))


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 8), st.integers(0, 8))
def test_embedding_commutes_with_arithmetic(a, b):
    small = get_field(3, 2)
    big = get_field(3, 4)
    embed = embedding(small, big)
    x, y = small.GF(a), small.GF(b)
    assert embed(x + y) == embed(x) + embed(y)
    assert embed(x * y) == embed(x) * embed(y)


def test_prime_field_embedding_keeps_integers():
    embed = embedding(get_field(7), get_field(7, 2))
    assert int(embed(get_field(7).GF(3))) == 3


def test_embedding_rejects_other_characteristic():
    with pytest.raises(FieldError):
        embedding(get_field(3), get_field(7, 2))


def test_check_budget():
    check_budget(10, 10, "ok")
    check_budget(10 ** 12, None, "unbounded")
    with pytest.raises(BudgetExceeded):
        check_budget(11, 10, "too much")


def test_field_cache_statistics():
    cache = FieldCache()
    first = cache.get_field(13)
    second = cache.get_field(13)
    assert first is second
    stats = cache.get_cache_stats()
    assert stats['hits'] == 1
    assert stats['misses'] == 1
    assert stats['fields'] == [(13, 1)]
    cache.clear()
    assert cache.get_cache_stats()['fields'] == []


def test_add_table_matches_field_addition():
    ctx = get_field(3, 2)
    table = ctx.add_table()
    x = ctx.elements
    assert np.array_equal(table, ctx.ints(x[:, None] + x[None, :]))
