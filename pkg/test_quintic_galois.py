#!/usr/bin/env python3

import sys
import os
sys.path.insert(0, os.path.dirname(__file__))

from fractions import Fraction

import pytest
from sympy import Poly, Symbol, discriminant as sympy_discriminant

from counts import count_quintic_roots
from ffield import BadReduction
from field_cache import get_field
from quintic_galois import (
    GROUP_SUPPORT,
    RamifiedPrime,
    chebotarev_table,
    classify,
    complex_conjugation_type,
    depth2_feasible,
    discriminant,
    dummit_resolvent,
    frobenius_cycle_type,
    good_primes,
    group_elements,
    is_good_prime,
    is_irreducible,
    quintic_poly,
    reciprocity_row,
    reciprocity_scan,
)

# sympy names for the transitive subgroups of S5
SYMPY_TAGS = {"C5": "C5", "D5": "D10", "M20": "F20", "A5": "A5", "S5": "S5"}


def test_discriminant_closed_form():
    assert discriminant(0) == (Fraction(800000), False)
    assert discriminant(-1) == (Fraction(1600000), False)
    for psi in (-3, -2, 2, 3, Fraction(1, 2)):
        closed, _ = discriminant(psi)
        assert closed == Fraction(str(sympy_discriminant(quintic_poly(psi))))
        assert closed == Fraction(2 ** 8 * 5 ** 5) * (1 - Fraction(psi) ** 5)


def test_psi_one_is_rejected():
    with pytest.raises(BadReduction):
        discriminant(1)


def test_good_primes():
    assert good_primes(2, 13) == [3, 7, 11, 13]
    # 1 - 3^5 = -2 * 11^2
    assert not is_good_prime(3, 11)
    assert not is_good_prime(Fraction(1, 3), 3)
    assert good_primes(-2, 13) == [7, 13]


@pytest.mark.parametrize("psi", [0, 2, -1, Fraction(1, 2)])
def test_cycle_type_fixed_points_count_roots(psi):
    for p in good_primes(psi, 60):
        ct = frobenius_cycle_type(psi, p)
        assert sum(ct.parts) == 5
        assert ct.fixed_points == count_quintic_roots(get_field(p), psi)


def test_cycle_type_rejects_bad_primes():
    for psi, p in ((2, 5), (2, 31), (Fraction(1, 3), 3)):
        with pytest.raises(RamifiedPrime):
            frobenius_cycle_type(psi, p)


def test_irreducibility():
    ok, certificate = is_irreducible(2)
    assert ok
    assert "irreducible_mod" in certificate or "pattern_incompatibility" in certificate
    ok, _ = is_irreducible(0)
    assert ok
    # 4(-1)^5 - 5 psi (-1)^4 + 1 = 0 at psi = -3/5
    ok, witness = is_irreducible(Fraction(-3, 5))
    assert not ok
    assert witness == {"rational_root": "-1"}


def test_resolvent():
    coeffs, root, flags = dummit_resolvent(0)
    assert coeffs[0] == 1 and coeffs[-1] == 0
    assert root == 0
    assert flags["root_is_10psi"]
    _, root, _ = dummit_resolvent(2)
    assert root is None


@pytest.mark.parametrize("psi,expected", [
    (0, "[2,2,1]"), (Fraction(1, 2), "[2,2,1]"), (-2, "[2,2,1]"),
    (2, "[2,1,1,1]"), (3, "[2,1,1,1]"),
])
def test_complex_conjugation(psi, expected):
    assert str(complex_conjugation_type(psi)) == expected


def test_group_support_matches_elements():
    for tag, support in GROUP_SUPPORT.items():
        elements = group_elements(tag)
        assert {g.cycle_type().restricted(5).parts for g in elements} == support
    assert [len(group_elements(t)) for t in ("C5", "D10", "F20", "A5", "S5")] == [5, 10, 20, 60, 120]


@pytest.mark.parametrize("psi,tag", [
    (0, "F20"), (2, "S5"), (3, "S5"), (-2, "S5"), (Fraction(1, 2), "S5"),
    (Fraction(-3, 5), "REDUCIBLE"),
])
def test_classify(psi, tag):
    verdict = classify(psi)
    assert verdict.tag == tag, verdict.reason
    if tag == "S5":
        assert len(verdict.certificates["s5_witnesses"]) == 2
    if tag == "F20":
        assert not verdict.certificates["disc_square"]
        assert verdict.certificates["resolvent_root"] == "0"


def test_classify_without_primes_is_unknown():
    verdict = classify(2, prime_budget=2)
    assert verdict.tag == "UNKNOWN"
    assert verdict.reason
    assert verdict.to_dict()["tag"] == "UNKNOWN"


@pytest.mark.slow
@pytest.mark.parametrize("psi", [0, 2, Fraction(1, 2)])
def test_classify_agrees_with_sympy(psi):
    from sympy.polys.numberfields.galoisgroups import galois_group

    psi = Fraction(psi)
    u, v = psi.numerator, psi.denominator
    y = Symbol("y")
    # x^5 - 5 psi x + 4 scaled by v, same splitting field as f_psi
    monic = Poly(y ** 5 - 5 * u * v ** 3 * y + 4 * v ** 5, y)
    group, _ = galois_group(monic, by_name=True)
    assert SYMPY_TAGS[group.name] == classify(psi).tag


def test_chebotarev_table():
    rows = chebotarev_table(classify(0))
    expected = {r["cycle_type"]: r["expected"] for r in rows}
    assert sum(expected.values()) == pytest.approx(1.0)
    assert expected["[5]"] == pytest.approx(4 / 20)
    assert expected["[4,1]"] == pytest.approx(10 / 20)
    assert expected["[2,2,1]"] == pytest.approx(5 / 20)
    assert expected["[3,2]"] == 0
    assert sum(r["count"] for r in rows) == classify(0).certificates["sample_size"]


def test_depth2_feasible():
    assert depth2_feasible(13, 2_000_000_000)
    assert not depth2_feasible(17, 2_000_000_000)


def test_reciprocity_row_reports_bad_primes():
    row = reciprocity_row(2, 31)
    assert not row["ok"]
    assert row["error"].startswith("RamifiedPrime")


def test_reciprocity_scan_depth_one():
    rows, summary = reciprocity_scan(2, 200)
    assert summary["failures"] == 0
    assert summary["primes"] == len(good_primes(2, 200))
    assert all(r["error"] is None for r in rows)


def test_reciprocity_scan_depth_two_small():
    rows, summary = reciprocity_scan(2, 7, depth=2)
    assert [r["p"] for r in rows] == [3, 7]
    assert all(r["ok"] for r in rows)
    assert summary["depth2_rows"] == 2
    assert summary["forbidden_count"] == 0


@pytest.mark.slow
def test_reciprocity_scan_depth_two():
    rows, summary = reciprocity_scan(2, 13, depth=2)
    assert [r["p"] for r in rows] == [3, 7, 11, 13]
    assert all(r["congruence_ok"] for r in rows)
    assert all(r["class"] == r["cycle_class"] for r in rows)
    assert summary["failures"] == 0


def test_depth_two_falls_back_over_budget():
    row = reciprocity_row(2, 7, depth=2, budget=1000)
    assert row["depth"] == 1
    assert row["ok"]
