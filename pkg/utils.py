#!/usr/bin/env python3

import logging
import time
from fractions import Fraction

import psutil
from sympy import divisors
from sympy.ntheory.primetest import is_square


def parse_psi(text):
    """Parse '2', '-1', '1/2' into a reduced Fraction."""
    try:
        return Fraction(str(text).strip())
    except (ValueError, ZeroDivisionError) as e:
        raise ValueError(f"cannot read psi from {text!r}: {e}") from e


def parse_psi_list(text):
    return [parse_psi(part) for part in str(text).split(",") if part.strip()]


def is_rational_square(value):
    value = Fraction(value)
    if value < 0:
        return False
    return is_square(value.numerator) and is_square(value.denominator)


def rational_roots(coeffs):
    """
    All rational roots of an integer polynomial, coefficients leading first,
    found by the rational root theorem.
    """
    coeffs = [int(c) for c in coeffs]
    while coeffs and coeffs[0] == 0:
        coeffs.pop(0)
    roots = set()
    while coeffs and coeffs[-1] == 0:
        roots.add(Fraction(0))
        coeffs.pop()
    if len(coeffs) < 2:
        return sorted(roots)

    lead, const = abs(coeffs[0]), abs(coeffs[-1])
    for num in divisors(const):
        for den in divisors(lead):
            for sign in (1, -1):
                candidate = Fraction(sign * num, den)
                if candidate in roots:
                    continue
                value = Fraction(0)
                for c in coeffs:
                    value = value * candidate + c
                if value == 0:
                    roots.add(candidate)
    return sorted(roots)


_last_log_times = {}


def rate_limited_log(key, message, level=logging.WARNING, rate_limit_seconds=30):
    """First occurrence per key at level, repeats inside the window at DEBUG."""
    now = time.time()
    if key not in _last_log_times or now - _last_log_times[key] >= rate_limit_seconds:
        logging.log(level, message)
        _last_log_times[key] = now
    else:
        logging.debug(f"[RATE LIMITED] {message}")


def get_memory_usage():
    process = psutil.Process()
    memory_info = process.memory_info()
    return {
        'rss_mb': memory_info.rss / 1024 / 1024,
        'vms_mb': memory_info.vms / 1024 / 1024,
        'percent': process.memory_percent()
    }
