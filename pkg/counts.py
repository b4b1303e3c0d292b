"""
Point Counts Module

Exact point counts over F_q for the varieties attached to the mirror quintic
family: roots of f_psi = 4x^5 - 5 psi x^4 + 1, the affine mirror U_psi, its
fixed locus V_psi, the closure Y_psi, the projective quintic X_psi and the
superelliptic curves A_psi, B_psi. Every count is an integer computed by
enumeration; the accelerated paths use lookup tables, never floats.

Outer loops take an optional shard=(index, count) and only visit the outer
values at positions congruent to index mod count, so partial counts over a
full set of shards add up to the unsharded count.
"""

import logging
import time
from dataclasses import dataclass
from fractions import Fraction
from math import gcd

import numpy as np
from sympy import factorint

from ffield import BadReduction, DEFAULT_BUDGET, FqElem, check_budget, embedding
from field_cache import get_field

logger = logging.getLogger(__name__)

VARIETIES = ("f-roots", "U", "V", "Y", "X-proj", "A-curve", "B-curve")
METHODS = ("naive", "accelerated")


class IntegralityError(ArithmeticError):
    """An exact division that must be exact was not. Always a bug upstream."""


class RamificationError(ValueError):
    """A branch point of a superelliptic model is not totally ramified."""


@dataclass(frozen=True)
class CountRecord:
    psi: str
    q: int
    variety: str
    count: int
    method: str

    def to_dict(self):
        return {
            "psi": self.psi,
            "q": self.q,
            "variety": self.variety,
            "count": self.count,
            "method": self.method,
        }


@dataclass(frozen=True)
class SuperellipticCurve:
    """y^5 = lead * prod (x - b)^m over F_q, branch points already merged."""

    q: int
    lead: int
    branches: tuple
    label: str = ""

    @property
    def degree(self):
        return sum(m for _, m in self.branches)

    @property
    def genus(self):
        ramified = len(self.branches) + (1 if self.degree % 5 else 0)
        return 2 * (ramified - 2)

    @classmethod
    def from_factors(cls, ctx, lead, factors, label=""):
        merged = {}
        for point, mult in factors:
            key = int(ctx.coerce(point))
            merged[key] = merged.get(key, 0) + mult
        branches = tuple(sorted(merged.items()))
        return cls(ctx.q, int(ctx.coerce(lead)), branches, label)

    def validate(self):
        for point, mult in self.branches:
            if gcd(5, mult) != 1:
                raise RamificationError(
                    f"{self.label}: branch x={point} has multiplicity {mult}"
                )
        if self.degree % 5 == 0:
            raise RamificationError(f"{self.label}: degree {self.degree} is divisible by 5")

    def evaluate(self, ctx, x):
        value = ctx.GF(self.lead) * ctx.GF.Ones(np.shape(x))
        for point, mult in self.branches:
            value = value * (x - ctx.GF(point)) ** mult
        return value


def _shard(values, shard):
    if shard is None:
        return values
    index, count = shard
    return values[index::count]


def _points(values, shard=None):
    """One-element slices of a FieldArray, restricted to a shard."""
    return (values[i:i + 1] for i in _shard(np.arange(len(values)), shard))


def psi_label(psi):
    if isinstance(psi, FqElem):
        return f"F:{int(psi)}"
    return str(Fraction(psi))


def reduce_psi(ctx, psi):
    """psi in F_q with psi^5 != 1, else BadReduction."""
    value = ctx.coerce(psi)
    if value ** 5 == ctx.GF(1):
        raise BadReduction(f"psi={psi_label(psi)} has psi^5 = 1 in F_{ctx.q}")
    return value


def count_quintic_roots(ctx, psi):
    psi = ctx.coerce(psi)
    x = ctx.elements
    four = ctx.from_rational(4)
    five = ctx.from_rational(5)
    values = four * x ** 5 - five * psi * x ** 4 + ctx.GF(1)
    return int(np.count_nonzero(values == 0))


def count_U(ctx, psi, method="accelerated", budget=DEFAULT_BUDGET, shard=None):
    psi = reduce_psi(ctx, psi)
    five_psi = ctx.from_rational(5) * psi
    nz = ctx.nonzero
    total = 0
    if method == "accelerated":
        check_budget((ctx.q - 1) ** 3, budget, f"accelerated U over F_{ctx.q}")
        x2, x3 = nz[:, None], nz[None, :]
        partial_prod = x2 * x3
        partial_sum = x2 + x3 - five_psi
        for x1 in _points(nz, shard):
            A = x1 * partial_prod
            c = x1 + partial_sum
            # A x4^2 + A c x4 + 1 = 0; the constant term keeps both roots nonzero
            total += int(ctx.quadratic_root_counts(A, A * c, ctx.GF.Ones(A.shape)).sum())
    elif method == "naive":
        check_budget((ctx.q - 1) ** 4, budget, f"naive U over F_{ctx.q}")
        x3, x4 = nz[:, None], nz[None, :]
        tail_sum = x3 + x4
        tail_prod = x3 * x4
        for x1 in _points(nz, shard):
            for x2 in _points(nz):
                lhs = x1 + x2 + tail_sum + (x1 * x2 * tail_prod) ** -1
                total += int(np.count_nonzero(lhs == five_psi))
    else:
        raise ValueError(f"unknown method {method!r}")
    return total


def count_V(ctx, psi, shard=None):
    psi = reduce_psi(ctx, psi)
    nz = ctx.nonzero
    two = ctx.from_rational(2)
    five_psi = ctx.from_rational(5) * psi
    x1 = _shard(nz, shard)[:, None]
    x2 = nz[None, :]
    lhs = two * x1 + two * x2 + (x1 * x1 * x2 * x2) ** -1
    return int(np.count_nonzero(lhs == five_psi))


def count_Y(ctx, psi, method="accelerated", budget=DEFAULT_BUDGET):
    q = ctx.q
    u = count_U(ctx, psi, method, budget)
    removed, r1 = divmod((q - 1) ** 4 + (-1) ** 5, q)
    added, r2 = divmod(q ** 4 - 1, q - 1)
    if r1 or r2:
        raise IntegralityError(f"closure correction is not integral for q={q}")
    return u - removed + added


def _x_tables(ctx, c):
    q = ctx.q
    E = ctx.elements
    fifth = E ** 5

    # T[A, B] = #{x : x^5 + A x + B = 0}
    B = -fifth[None, :] - E[:, None] * E[None, :]
    rows = np.repeat(np.arange(q), q)
    T = np.zeros((q, q), dtype=np.int64)
    np.add.at(T, (rows, ctx.ints(B).ravel()), 1)

    prod = E[:, None] * E[None, :]
    sums = ctx.ints(fifth[:, None] + fifth[None, :]).ravel()
    H = np.zeros((q, q), dtype=np.int64)
    np.add.at(H, (ctx.ints(prod).ravel(), sums), 1)
    Hc = np.zeros((q, q), dtype=np.int64)
    np.add.at(Hc, (ctx.ints(c * prod).ravel(), sums), 1)
    return T, H, Hc


def count_affine_X(ctx, psi, method="accelerated", budget=DEFAULT_BUDGET, shard=None):
    """Affine solutions in F_q^5 of the cone over X_psi, restricted to a shard."""
    psi = reduce_psi(ctx, psi)
    c = -ctx.from_rational(5) * psi
    q = ctx.q
    total = 0

    if method == "accelerated":
        check_budget(q ** 4, budget, f"accelerated X over F_{q}")
        T, H, Hc = _x_tables(ctx, c)
        add = ctx.add_table()
        S = np.arange(q)[:, None]
        Ht = H.T.copy()
        for lam in _shard(np.arange(q), shard):
            weights = Hc[lam]
            if not weights.any():
                continue
            K = Ht @ T[ctx.mul_row(lam), :]
            G = K[S, add].sum(axis=0)
            total += int(weights @ G)
    elif method == "naive":
        check_budget(q ** 5, budget, f"naive X over F_{q}")
        E = ctx.elements
        f = E ** 5
        tail_sum = f[:, None, None] + f[None, :, None] + f[None, None, :]
        tail_prod = E[:, None, None] * E[None, :, None] * E[None, None, :]
        for x0 in _points(E, shard):
            for x1 in _points(E):
                values = x0 ** 5 + x1 ** 5 + tail_sum + c * x0 * x1 * tail_prod
                total += int(np.count_nonzero(values == 0))
    else:
        raise ValueError(f"unknown method {method!r}")
    return total


def combine_shards(ctx, parts):
    """Projective count from partial affine counts over a full set of shards."""
    affine = sum(parts)
    projective, rest = divmod(affine - 1, ctx.q - 1)
    if rest:
        raise IntegralityError(
            f"F_{ctx.q}: q-1 does not divide N_affine-1 = {affine - 1}"
        )
    return projective


def count_X_projective(ctx, psi, method="accelerated", budget=DEFAULT_BUDGET, label=None):
    start = time.time()
    count = combine_shards(ctx, [count_affine_X(ctx, psi, method, budget)])
    logger.info(
        f"#X over F_{ctx.q} (psi={label or psi_label(psi)}, {method}) = {count} "
        f"in {time.time() - start:.2f}s"
    )
    return count


def superelliptic_curve(ctx, psi, which):
    """The model of A_psi or B_psi with coincident branch points merged."""
    c = reduce_psi(ctx, psi) ** 5
    if which == "A":
        # x^2 (1-x)^3 (x-c)^2
        return SuperellipticCurve.from_factors(ctx, -1, [(0, 2), (1, 3), (c, 2)], "A")
    if which == "B":
        # x^2 (1-x)^4 (x-c)
        return SuperellipticCurve.from_factors(ctx, 1, [(0, 2), (1, 4), (c, 1)], "B")
    raise ValueError(f"unknown curve {which!r}")


def superelliptic_components(ctx, psi, which):
    """
    Curves whose L-polynomials make up the A or B part of the zeta factor of
    X_psi over F_q. At psi = 0 the model degenerates to genus 2 and a second
    genus-2 curve from the rescaled neighbourhood of x = 0 carries the rest.
    """
    curve = superelliptic_curve(ctx, psi, which)
    if ctx.coerce(psi) != 0:
        return [curve]
    if which == "A":
        extra = SuperellipticCurve.from_factors(ctx, 1, [(0, 2), (1, 2)], "A0'")
    else:
        extra = SuperellipticCurve.from_factors(ctx, 1, [(0, 2), (1, 1)], "B0'")
    return [curve, extra]


def count_superelliptic(ctx, curve):
    curve.validate()
    if curve.q != ctx.q:
        raise ValueError(f"{curve.label} is defined over F_{curve.q}, not F_{ctx.q}")
    values = curve.evaluate(ctx, ctx.elements)
    nonzero = values[values != 0]
    affine = int(ctx.fifth_power_counts(nonzero).sum())
    # one place over each branch point and one at infinity
    return affine + len(curve.branches) + 1


def _prime_power(q):
    factors = factorint(q)
    if len(factors) != 1:
        raise ValueError(f"{q} is not a prime power")
    (p, k), = factors.items()
    return p, k


def curve_trace(ctx, components):
    """s_r = q + 1 - #C summed over the components."""
    return sum(ctx.q + 1 - count_superelliptic(ctx, curve) for curve in components)


def lift_psi(psi, q, r):
    """(F_q, F_{q^r}, psi in F_{q^r}) for rational psi or psi in F_q."""
    p, k = _prime_power(q)
    base = get_field(p, k)
    big = get_field(p, k * r)
    reduce_psi(base, psi)
    if isinstance(psi, FqElem):
        return base, big, embedding(base, big)(base.coerce(psi))
    return base, big, big.from_rational(psi)


def h3_power_sum(psi, q, r, method="accelerated", budget=DEFAULT_BUDGET):
    """r-th power sum of the Frobenius eigenvalues on the mirror quartic factor."""
    _, big, value = lift_psi(psi, q, r)
    Q = big.q
    x_count = count_X_projective(big, value, method, budget, label=psi_label(psi))
    s_a = curve_trace(big, superelliptic_components(big, value, "A"))
    s_b = curve_trace(big, superelliptic_components(big, value, "B"))
    power_sum = 1 + Q + Q ** 2 + Q ** 3 - x_count - 10 * Q * s_a - 15 * Q * s_b
    logger.debug(
        f"psi={psi_label(psi)} q={q} r={r}: #X={x_count} sA={s_a} sB={s_b} p_r={power_sum}"
    )
    return power_sum


def count_variety(ctx, psi, variety, method="accelerated", budget=DEFAULT_BUDGET):
    if variety == "f-roots":
        count = count_quintic_roots(ctx, psi)
        method = "naive"
    elif variety == "U":
        count = count_U(ctx, psi, method, budget)
    elif variety == "V":
        count = count_V(ctx, psi)
        method = "naive"
    elif variety == "Y":
        count = count_Y(ctx, psi, method, budget)
    elif variety == "X-proj":
        count = count_X_projective(ctx, psi, method, budget)
    elif variety in ("A-curve", "B-curve"):
        count = count_superelliptic(ctx, superelliptic_curve(ctx, psi, variety[0]))
        method = "naive"
    else:
        raise ValueError(f"unknown variety {variety!r}")
    return CountRecord(psi_label(psi), ctx.q, variety, count, method)
