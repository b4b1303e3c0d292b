#!/usr/bin/env python3

import sys
import os
sys.path.insert(0, os.path.dirname(__file__))

import pytest

from counts import IntegralityError, count_quintic_roots
from ffield import BudgetExceeded
from field_cache import get_field
from weil import (
    EulerClassMod2,
    MethodMismatch,
    WeilBoundViolation,
    WeilQuartic,
    check_curve_weil_bound,
    cross_checked_quartic,
    curve_l_polynomial,
    mod2_class,
    newton_coefficients,
    reconstruct_mirror_quartic,
    square_root_quartic,
)


@pytest.mark.parametrize("a,b,expected", [
    (0, 0, EulerClassMod2.ONE_T4),
    (1, 0, EulerClassMod2.T3_T4),
    (1, 1, EulerClassMod2.CYCLOTOMIC5),
    (0, 1, EulerClassMod2.FORBIDDEN),
    (-3, 8, EulerClassMod2.T3_T4),
])
def test_mod2_class(a, b, expected):
    assert mod2_class(WeilQuartic(7, a, b)) is expected


def test_euler_class_polynomials():
    assert EulerClassMod2.FORBIDDEN.polynomial == "1+t^2+t^4"
    assert EulerClassMod2.CYCLOTOMIC5.trace_odd
    assert not EulerClassMod2.ONE_T4.trace_odd
    assert EulerClassMod2.from_coefficients((1, 0, 1, 1, 1)) is None


def test_coefficients_and_trace_roots():
    w = WeilQuartic(5, 3, 7)
    assert w.coefficients == [1, -3, 7, -375, 15625]
    assert w.trace_roots_ok()
    # (1 - 8t)^2 (1 + 8t)^2 over F_4 sits on the boundary
    assert WeilQuartic(4, 0, -128).trace_roots_ok()


@pytest.mark.parametrize("b", [10 ** 6, -1000])
def test_trace_roots_reject_inconsistent_b(b):
    w = WeilQuartic(7, 0, b)
    assert not w.trace_roots_ok()
    with pytest.raises(WeilBoundViolation):
        w.check_weil_bound()


def test_weil_bound_accepts_a_square():
    # (1 + q^3 t^2)^2
    w = WeilQuartic(3, 0, 54)
    assert w.check_weil_bound() < 1e-6


def test_weil_bound_rejects_large_trace():
    with pytest.raises(WeilBoundViolation):
        WeilQuartic(3, 100, 0).check_weil_bound()


def test_newton_coefficients():
    # roots of t^2 + t - 1
    assert newton_coefficients([-1, 3]) == [1, 1, -1]
    with pytest.raises(IntegralityError):
        newton_coefficients([1, 2])


@pytest.mark.parametrize("psi,q", [(2, 3), (0, 3), (2, 7), (3, 7), (-1, 7), (-2, 7)])
def test_reconstructed_quartic(psi, q):
    w = reconstruct_mirror_quartic(psi, q)
    n = count_quintic_roots(get_field(q), psi)
    assert w.a % 2 == (n + 1) % 2
    if w.a % 2 == 0:
        assert w.b % 2 == 0
    assert mod2_class(w) is not EulerClassMod2.FORBIDDEN


def test_reconstruction_methods_agree():
    assert reconstruct_mirror_quartic(2, 3, "naive") == reconstruct_mirror_quartic(2, 3, "accelerated")


def test_square_root_quartic():
    quartic = [1, 2, 3, 4, 5]
    square = [sum(quartic[j] * quartic[i - j] for j in range(max(0, i - 4), min(i, 4) + 1))
              for i in range(9)]
    assert square_root_quartic(square) == quartic
    square[4] += 1
    assert square_root_quartic(square) is None


@pytest.mark.parametrize("square,root", [
    ([1, 4, 10, 20, 35, 44, 46, 40, 25], [1, 2, 3, 4, 5]),
    # L-polynomial of the B curve at psi = 2 over F_11
    ([1, 12, 98, 504, 1995, 5544, 11858, 15972, 14641], [1, 6, 31, 66, 121]),
])
def test_square_root_quartic_is_exact(square, root):
    assert square_root_quartic(square) == root
    assert all(isinstance(c, int) for c in square_root_quartic(square))


def test_square_root_quartic_rejects_odd_middle():
    assert square_root_quartic([1, 3, 0, 0, 0, 0, 0, 0, 1]) is None


def test_cross_checked_quartic_agrees():
    w = cross_checked_quartic(2, 3, "both")
    assert w == reconstruct_mirror_quartic(2, 3, "accelerated")


def test_cross_checked_quartic_mismatch(monkeypatch):
    import weil

    def skewed(psi, q, method, budget):
        return WeilQuartic(q, 1 if method == "naive" else -1, 0)

    monkeypatch.setattr(weil, "reconstruct_mirror_quartic", skewed)
    with pytest.raises(MethodMismatch):
        cross_checked_quartic(2, 3, "both")


def test_cross_checked_quartic_over_budget(monkeypatch):
    import weil

    def naive_too_big(psi, q, method, budget):
        if method == "naive":
            raise BudgetExceeded("naive X over F_3")
        return WeilQuartic(q, 1, 0)

    monkeypatch.setattr(weil, "reconstruct_mirror_quartic", naive_too_big)
    assert cross_checked_quartic(2, 3, "both") == WeilQuartic(3, 1, 0)


def test_curve_weil_bound_rejects_wrong_sizes():
    with pytest.raises(WeilBoundViolation):
        check_curve_weil_bound([1, 0, 0, 0, 0, 0, 0, 0, 1], 7)


@pytest.mark.parametrize("which", ["A", "B"])
def test_curve_l_polynomial_without_fifth_roots(which):
    coeffs = curve_l_polynomial(2, 7, which)
    assert len(coeffs) == 9
    assert coeffs[0] == 1
    assert coeffs[1] == 0
    assert coeffs[8] == 7 ** 4


@pytest.mark.slow
def test_b_curve_is_a_square_when_five_divides_q_minus_one():
    assert square_root_quartic(curve_l_polynomial(2, 11, "B")) is not None
    curve_l_polynomial(2, 11, "A")


@pytest.mark.slow
@pytest.mark.parametrize("psi", [2, 0, -1])
def test_reconstructed_quartic_at_eleven(psi):
    w = reconstruct_mirror_quartic(psi, 11)
    n = count_quintic_roots(get_field(11), psi)
    assert w.a % 2 == (n + 1) % 2
