"""
Weil Polynomials Module

Rebuilds the mirror Euler factor P(t) = 1 - a t + b t^2 - q^3 a t^3 + q^6 t^4
from the power sums produced by counts, classifies it mod 2, and rebuilds the
degree-8 L-polynomials of the superelliptic curves for diagnostics.
"""

import logging
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

import numpy as np
from sympy import Poly, Symbol

from counts import (
    IntegralityError,
    curve_trace,
    h3_power_sum,
    lift_psi,
    superelliptic_components,
)
from ffield import DEFAULT_BUDGET, BudgetExceeded
from utils import rate_limited_log

logger = logging.getLogger(__name__)

ROOT_TOLERANCE = 1e-6
T = Symbol("t")


class WeilBoundViolation(ArithmeticError):
    """Reconstructed Frobenius eigenvalues break the Riemann hypothesis bound."""


def eigenvalue_sizes(coeffs):
    """
    Absolute values of the reciprocal roots of the polynomial with
    coefficients t^0, t^1, ... given in coeffs.

    Read leading-first, the coefficients describe the reversed polynomial,
    whose roots are the eigenvalues. Repeated roots are removed exactly
    before the floating point root finder runs.
    """
    reversed_poly = Poly([int(c) for c in coeffs], T)
    sqf = reversed_poly.sqf_part()
    return np.abs(np.roots([float(c) for c in sqf.all_coeffs()]))


class EulerClassMod2(Enum):
    """The four quartics over F_2 a mirror Euler factor could reduce to. Values are
    coefficients from t^0 up to t^4."""

    ONE_T4 = (1, 0, 0, 0, 1)
    T3_T4 = (1, 1, 0, 1, 1)
    CYCLOTOMIC5 = (1, 1, 1, 1, 1)
    FORBIDDEN = (1, 0, 1, 0, 1)

    @property
    def polynomial(self):
        terms = {0: "1", 1: "t"}
        return "+".join(terms.get(i, f"t^{i}") for i, c in enumerate(self.value) if c)

    @property
    def trace_odd(self):
        return self.value[1] == 1

    @classmethod
    def from_coefficients(cls, coeffs):
        """Class of a quartic over F_2 given t^0..t^4 coefficients, or None."""
        key = tuple(int(c) % 2 for c in coeffs)
        for member in cls:
            if member.value == key:
                return member
        return None


@dataclass(frozen=True)
class WeilQuartic:
    q: int
    a: int
    b: int

    @property
    def coefficients(self):
        q = self.q
        return [1, -self.a, self.b, -q ** 3 * self.a, q ** 6]

    def trace_roots_ok(self):
        """
        P factors as (1 - x1 t + q^3 t^2)(1 - x2 t + q^3 t^2) with x1, x2 real
        and |xi| <= 2 q^(3/2). Exact: x1 + x2 = a, x1 x2 = b - 2 q^3.
        """
        q3 = self.q ** 3
        shifted = 2 * q3 + self.b
        return (
            self.a * self.a - 4 * (self.b - 2 * q3) >= 0
            and self.a * self.a <= 16 * q3
            and shifted >= 0
            and shifted * shifted >= 4 * self.a * self.a * q3
        )

    def eigenvalue_sizes(self):
        return eigenvalue_sizes(self.coefficients)

    def check_weil_bound(self):
        if self.a * self.a > 16 * self.q ** 3:
            raise WeilBoundViolation(f"|a|={abs(self.a)} exceeds 4 q^(3/2) for q={self.q}")
        if not self.trace_roots_ok():
            raise WeilBoundViolation(
                f"q={self.q} a={self.a} b={self.b}: trace roots are not real or leave "
                "[-2q^(3/2), 2q^(3/2)]"
            )
        target = self.q ** 1.5
        sizes = self.eigenvalue_sizes()
        worst = float(np.max(np.abs(sizes - target) / target))
        if worst > ROOT_TOLERANCE:
            raise WeilBoundViolation(
                f"q={self.q} a={self.a} b={self.b}: eigenvalue size off by {worst:.2e}"
            )
        return worst


def mod2_class(w):
    return EulerClassMod2.from_coefficients((1, w.a, w.b, w.a, 1))


def reconstruct_mirror_quartic(psi, q, method="accelerated", budget=DEFAULT_BUDGET):
    p1 = h3_power_sum(psi, q, 1, method, budget)
    p2 = h3_power_sum(psi, q, 2, method, budget)
    b2 = p1 * p1 - p2
    if b2 % 2:
        raise IntegralityError(f"q={q}: p1^2 - p2 = {b2} is odd")
    w = WeilQuartic(q, p1, b2 // 2)
    w.check_weil_bound()
    logger.info(f"P over F_{q}: a={w.a} b={w.b} class={mod2_class(w).name}")
    return w


class MethodMismatch(ArithmeticError):
    """Naive and accelerated counts rebuilt different Euler factors."""


def cross_checked_quartic(psi, q, method="accelerated", budget=DEFAULT_BUDGET):
    """
    reconstruct_mirror_quartic for one method, or for "both": the accelerated
    result checked against the naive one. Over budget, the naive side is
    skipped with an INFO line.
    """
    if method != "both":
        return reconstruct_mirror_quartic(psi, q, method, budget)
    fast = reconstruct_mirror_quartic(psi, q, "accelerated", budget)
    try:
        slow = reconstruct_mirror_quartic(psi, q, "naive", budget)
    except BudgetExceeded:
        rate_limited_log(f"oracle_{q}", f"q={q}: naive count exceeds the budget, "
                         "accelerated result unchecked", level=logging.INFO)
        return fast
    if fast != slow:
        raise MethodMismatch(f"q={q}: naive {slow} and accelerated {fast} disagree")
    return fast


def newton_coefficients(power_sums):
    """c_1..c_n of prod(1 - alpha t) from p_1..p_n, exactly."""
    coeffs = [1]
    for i in range(1, len(power_sums) + 1):
        total = sum(power_sums[j - 1] * coeffs[i - j] for j in range(1, i + 1))
        c, rest = divmod(-total, i)
        if rest:
            raise IntegralityError(f"Newton step {i} is not integral: {-total}/{i}")
        coeffs.append(c)
    return coeffs


def curve_power_sums(psi, q, which, depth=4):
    sums = []
    for r in range(1, depth + 1):
        _, big, value = lift_psi(psi, q, r)
        sums.append(curve_trace(big, superelliptic_components(big, value, which)))
    return sums


def curve_l_polynomial(psi, q, which):
    """Degree-8 L-polynomial of A_psi or B_psi (t^0 first)."""
    half = newton_coefficients(curve_power_sums(psi, q, which))
    coeffs = half + [q ** (4 - i) * half[i] for i in range(3, -1, -1)]
    check_curve_weil_bound(coeffs, q)
    return coeffs


def check_curve_weil_bound(coeffs, q):
    sizes = eigenvalue_sizes(coeffs)
    target = q ** 0.5
    worst = float(np.max(np.abs(sizes - target) / target))
    if worst > ROOT_TOLERANCE:
        raise WeilBoundViolation(f"curve over F_{q}: eigenvalue size off by {worst:.2e}")
    return worst


def square_root_quartic(coeffs):
    """The quartic Q with Q^2 equal to the degree-8 polynomial, or None."""
    d = [Fraction(1)]
    for i in range(1, 5):
        cross = sum((d[j] * d[i - j] for j in range(1, i)), Fraction(0))
        d.append((coeffs[i] - cross) / 2)
    if any(v.denominator != 1 for v in d):
        return None
    root = [int(v) for v in d]
    square = [
        sum(root[j] * root[i - j] for j in range(max(0, i - 4), min(i, 4) + 1))
        for i in range(9)
    ]
    if square != list(coeffs):
        return None
    return root
