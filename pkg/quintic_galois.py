"""
Galois Classification Module

Classifies the Galois group over Q of f_psi(x) = 4x^5 - 5 psi x^4 + 1 for
rational psi. Every verdict carries the evidence it rests on: an
irreducibility certificate, the discriminant, the rational root (or its
absence) of the sextic resolvent, and the cycle types of Frobenius at the
sampled good primes, which must fit the claimed group.

Also runs the per-prime reciprocity scan tying root counts, Frobenius cycle
types and mod-2 Euler classes together.
"""

import logging
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from functools import partial

from sympy import Poly, Rational, Symbol, factor_list, primerange, resultant
from sympy.polys.domains import ZZ
from sympy.polys.galoistools import (
    gf_ddf_zassenhaus,
    gf_from_int_poly,
    gf_monic,
    gf_sqf_p,
)

from counts import count_quintic_roots
from ffield import DEFAULT_BUDGET, BadReduction, BudgetExceeded
from field_cache import get_field
from sp4s6 import CycleType, Perm6, close_subgroup, cycle_type_to_class
from utils import get_memory_usage, is_rational_square, rate_limited_log, rational_roots
from weil import EulerClassMod2, cross_checked_quartic, mod2_class

logger = logging.getLogger(__name__)

X = Symbol("x")
DEFAULT_PRIME_BUDGET = 200

GROUP_TAGS = ("C5", "D10", "F20", "A5", "S5", "REDUCIBLE", "UNKNOWN")

# generators inside S5 = stabiliser of 6
GROUP_GENERATORS = {
    "C5": ["(12345)"],
    "D10": ["(12345)", "(25)(34)"],
    "F20": ["(12345)", "(1243)"],
    "A5": ["(12345)", "(123)"],
    "S5": ["(12345)", "(12)"],
}

GROUP_SUPPORT = {
    "S5": {(1, 1, 1, 1, 1), (2, 1, 1, 1), (2, 2, 1), (3, 1, 1), (3, 2), (4, 1), (5,)},
    "F20": {(5,), (4, 1), (2, 2, 1), (1, 1, 1, 1, 1)},
    "D10": {(5,), (2, 2, 1), (1, 1, 1, 1, 1)},
    "C5": {(5,), (1, 1, 1, 1, 1)},
    "A5": {(5,), (3, 1, 1), (2, 2, 1), (1, 1, 1, 1, 1)},
}


class Inconclusive(RuntimeError):
    """No certificate was found within the prime budget."""


class RamifiedPrime(ValueError):
    """f_psi is not squarefree mod p, or p divides 10 or the denominator of psi."""


@dataclass(frozen=True)
class RationalPsi:
    u: int
    v: int

    @classmethod
    def of(cls, value):
        value = Fraction(value)
        if value == 1:
            raise BadReduction("psi = 1 is the singular fibre")
        return cls(value.numerator, value.denominator)

    @property
    def value(self):
        return Fraction(self.u, self.v)

    def __str__(self):
        return str(self.value)


def cleared_quintic(psi):
    """v f_psi as integer coefficients, leading first: 4v x^5 - 5u x^4 + v."""
    psi = RationalPsi.of(psi)
    return [4 * psi.v, -5 * psi.u, 0, 0, 0, psi.v]


def quintic_poly(psi):
    r = Rational(Fraction(psi).numerator, Fraction(psi).denominator)
    return Poly(4 * X ** 5 - 5 * r * X ** 4 + 1, X, domain="QQ")


def discriminant(psi):
    """The closed form 2^8 5^5 (1 - psi^5), checked against Res(f, f')/4."""
    psi = RationalPsi.of(psi).value
    closed = Fraction(2 ** 8 * 5 ** 5) * (1 - psi ** 5)
    f = quintic_poly(psi)
    # degree 5: sign (-1)^(5*4/2) = +1, divided by the leading coefficient
    via_resultant = resultant(f, f.diff(X)) / 4
    if Fraction(str(via_resultant)) != closed:
        raise ArithmeticError(f"psi={psi}: resultant gives {via_resultant}, closed form {closed}")
    return closed, is_rational_square(closed)


def is_good_prime(psi, p):
    psi = RationalPsi.of(psi)
    if p in (2, 5) or psi.v % p == 0:
        return False
    f = gf_from_int_poly(cleared_quintic(psi.value), p)
    return gf_sqf_p(f, p, ZZ)


def good_primes(psi, prime_max):
    return [p for p in primerange(3, prime_max + 1) if is_good_prime(psi, p)]


def frobenius_cycle_type(psi, p):
    """Degree pattern of f_psi mod p from its distinct-degree factorization."""
    if not is_good_prime(psi, p):
        raise RamifiedPrime(f"p={p} is not a good prime for psi={psi}")
    f = gf_from_int_poly(cleared_quintic(psi), p)
    _, f = gf_monic(f, p, ZZ)
    parts = []
    for factor, degree in gf_ddf_zassenhaus(f, p, ZZ):
        parts.extend([degree] * ((len(factor) - 1) // degree))
    return CycleType.of(parts, 5)


def _subset_sums(parts):
    sums = {0}
    for part in parts:
        sums |= {s + part for s in sums}
    return sums


def is_irreducible(psi, prime_budget=DEFAULT_PRIME_BUDGET):
    """
    (True, certificate) when f_psi is certified irreducible over Q,
    (False, witness) when an explicit factor is found, Inconclusive otherwise.

    A certificate is a prime where f_psi stays irreducible, or a set of primes
    whose degree patterns admit no factor of degree 1 or 2 between them.
    """
    coeffs = cleared_quintic(psi)
    roots = rational_roots(coeffs)
    if roots:
        return False, {"rational_root": str(roots[0])}

    witnesses = {}
    for p in good_primes(psi, prime_budget):
        ct = frobenius_cycle_type(psi, p)
        if ct.parts == (5,):
            return True, {"irreducible_mod": p}
        sums = _subset_sums(ct.parts)
        for d in (1, 2):
            if d not in sums and d not in witnesses:
                witnesses[d] = {"p": p, "cycle_type": str(ct)}
        if len(witnesses) == 2:
            return True, {"pattern_incompatibility": witnesses, "rational_roots": []}

    _, factors = factor_list(quintic_poly(psi).as_expr(), X)
    proper = [f for f, _ in factors if 0 < Poly(f, X).degree() < 5]
    if proper:
        return False, {"factor": str(proper[0])}
    raise Inconclusive(f"psi={psi}: no irreducibility certificate below {prime_budget}")


def dummit_resolvent(psi):
    """
    The sextic resolvent of g_psi(x) = x^5 - 5 psi x + 4 (same splitting
    field as f_psi), with theta = t / v substituted so it is monic over Z:

      t^6 - 40u t^5 + 1000u^2 t^4 - 20000u^3 t^3 + 250000u^4 t^2
          - 800000(v^5 + 2u^5) t + 4000000 u (3v^5 + u^5)

    Returns (coefficients leading first, rational root theta or None, flags).
    """
    psi = RationalPsi.of(psi)
    u, v = psi.u, psi.v
    coeffs = [
        1,
        -40 * u,
        1000 * u ** 2,
        -20000 * u ** 3,
        250000 * u ** 4,
        -800000 * (v ** 5 + 2 * u ** 5),
        4000000 * u * (3 * v ** 5 + u ** 5),
    ]
    roots = [Fraction(t, v) for t in rational_roots(coeffs)]
    flags = {"root_is_10psi": bool(roots) and roots[0] == 10 * psi.value}
    return coeffs, (roots[0] if roots else None), flags


def complex_conjugation_type(psi):
    real_roots = quintic_poly(psi).count_roots()
    pairs = (5 - real_roots) // 2
    return CycleType.of([2] * pairs + [1] * real_roots, 5)


@dataclass
class GaloisVerdict:
    psi: str
    tag: str
    certificates: dict = field(default_factory=dict)
    reason: str = ""

    def to_dict(self):
        return {"psi": self.psi, "tag": self.tag, "reason": self.reason, **self.certificates}


def sample_cycle_types(psi, prime_budget):
    return {p: frobenius_cycle_type(psi, p) for p in good_primes(psi, prime_budget)}


def classify(psi, prime_budget=DEFAULT_PRIME_BUDGET):
    psi = RationalPsi.of(psi)
    verdict = GaloisVerdict(str(psi), "UNKNOWN")
    try:
        irreducible, evidence = is_irreducible(psi.value, prime_budget)
    except Inconclusive as e:
        verdict.reason = str(e)
        return verdict
    verdict.certificates["irreducibility"] = evidence
    if not irreducible:
        verdict.tag = "REDUCIBLE"
        return verdict

    disc, square = discriminant(psi.value)
    _, root, flags = dummit_resolvent(psi.value)
    samples = sample_cycle_types(psi.value, prime_budget)
    histogram = Counter(ct.parts for ct in samples.values())
    conjugation = complex_conjugation_type(psi.value)
    verdict.certificates.update({
        "discriminant": str(disc),
        "disc_square": square,
        "resolvent_root": None if root is None else str(root),
        "resolvent_flags": flags,
        "complex_conjugation": str(conjugation),
        "histogram": {str(CycleType.of(k)): n for k, n in sorted(histogram.items())},
        "sample_size": len(samples),
    })

    if root is not None:
        if square:
            seen = set(histogram) | {conjugation.parts}
            tag = "D10" if (2, 2, 1) in seen else "C5"
        else:
            tag = "F20"
    else:
        tag = "A5" if square else "S5"

    support = GROUP_SUPPORT[tag]
    stray = [k for k in histogram if k not in support]
    if conjugation.parts not in support:
        stray.append(conjugation.parts)
    if stray:
        verdict.reason = f"cycle type {CycleType.of(stray[0])} is not in {tag}"
        return verdict
    if tag == "S5":
        not_f20 = [k for k in histogram if k not in GROUP_SUPPORT["F20"]]
        not_a5 = [k for k in histogram if k not in GROUP_SUPPORT["A5"]]
        if not not_f20 or not not_a5:
            verdict.reason = "no sampled cycle types separating S5 from F20 and A5"
            return verdict
        verdict.certificates["s5_witnesses"] = [
            str(CycleType.of(not_f20[0])), str(CycleType.of(not_a5[0]))
        ]
    verdict.tag = tag
    logger.info(f"psi={psi}: Galois group {tag} from {len(samples)} primes")
    return verdict


def group_elements(tag):
    return close_subgroup([Perm6.from_cycles(g) for g in GROUP_GENERATORS[tag]])


def chebotarev_table(verdict):
    """Expected density against observed frequency for every cycle type."""
    elements = group_elements(verdict.tag)
    expected = Counter(g.cycle_type().restricted(5).parts for g in elements)
    observed = {
        CycleType.of(int(n) for n in k.strip("[]").split(",")).parts: count
        for k, count in verdict.certificates.get("histogram", {}).items()
    }
    total = sum(observed.values()) or 1
    rows = []
    for parts in sorted(GROUP_SUPPORT["S5"], reverse=True):
        rows.append({
            "cycle_type": str(CycleType.of(parts)),
            "expected": expected.get(parts, 0) / len(elements),
            "observed": observed.get(parts, 0) / total,
            "count": observed.get(parts, 0),
        })
    return rows


def depth2_feasible(p, budget):
    return p ** 8 <= budget


def reciprocity_row(psi, p, depth=1, budget=DEFAULT_BUDGET, method="accelerated"):
    """One (psi, p) cell of the reciprocity scan. Never raises for arithmetic failures."""
    psi = RationalPsi.of(psi).value
    row = {
        "psi": str(psi), "p": p, "depth": depth, "n_roots": None, "cycle_type": None,
        "cycle_class": None, "a": None, "b": None, "class": None,
        "congruence_ok": None, "parity_ok": None, "class_ok": None,
        "forbidden": False, "ok": False, "error": None,
    }
    try:
        n = count_quintic_roots(get_field(p), psi)
        ct = frobenius_cycle_type(psi, p)
        cycle_class = cycle_type_to_class(ct)
        row.update(n_roots=n, cycle_type=str(ct), cycle_class=cycle_class.name)
        if n != ct.fixed_points:
            raise ArithmeticError(f"{n} roots but cycle type {ct}")

        if depth >= 2 and not depth2_feasible(p, budget):
            rate_limited_log(f"depth_{p}", f"p={p}: depth 2 exceeds the budget, parity only",
                             level=logging.INFO)
            row["depth"] = 1
        if row["depth"] >= 2:
            w = cross_checked_quartic(psi, p, method, budget)
            euler = mod2_class(w)
            row.update(a=w.a, b=w.b, **{"class": euler.name})
            row["congruence_ok"] = w.a % 2 == (n + 1) % 2
            row["parity_ok"] = w.a % 2 == 1 or w.b % 2 == 0
            row["class_ok"] = euler is cycle_class
            row["forbidden"] = euler is EulerClassMod2.FORBIDDEN
            row["ok"] = row["congruence_ok"] and row["parity_ok"] and row["class_ok"] \
                and not row["forbidden"]
        else:
            # the class of the cycle type fixes a mod 2, which must be n + 1
            row["congruence_ok"] = cycle_class.trace_odd == ((n + 1) % 2 == 1)
            row["ok"] = row["congruence_ok"]
    except (BadReduction, RamifiedPrime, BudgetExceeded, ArithmeticError) as e:
        row["error"] = f"{type(e).__name__}: {e}"
        rate_limited_log(f"row_{psi}_{type(e).__name__}", f"psi={psi} p={p}: {row['error']}")
    logger.info(f"psi={psi} p={p}: n={row['n_roots']} type={row['cycle_type']} "
                f"class={row['class'] or row['cycle_class']} ok={row['ok']}")
    logger.debug(f"Memory usage: {get_memory_usage()}")
    return row


def reciprocity_scan(psi, prime_max, depth=1, budget=DEFAULT_BUDGET, method="accelerated",
                     mapper=map):
    """
    Rows for every good prime up to prime_max plus a summary. mapper may be
    an executor's map; rows come back sorted by p either way.
    """
    primes = good_primes(psi, prime_max)
    cell = partial(reciprocity_row, psi, depth=depth, budget=budget, method=method)
    rows = sorted(mapper(cell, primes), key=lambda r: r["p"])
    summary = {
        "psi": str(Fraction(psi)),
        "primes": len(rows),
        "failures": sum(1 for r in rows if not r["ok"]),
        "errors": sum(1 for r in rows if r["error"]),
        "congruence_failures": sum(1 for r in rows if r["congruence_ok"] is False),
        "parity_failures": sum(1 for r in rows if r["parity_ok"] is False),
        "class_failures": sum(1 for r in rows if r["class_ok"] is False),
        "forbidden_count": sum(1 for r in rows if r["forbidden"]),
        "depth2_rows": sum(1 for r in rows if r["depth"] >= 2 and r["a"] is not None),
    }
    return rows, summary
