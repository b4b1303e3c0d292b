"""
Finite Field Module

Exact arithmetic over F_q, q = p^k, for the point counters. Elements are
galois FieldArrays; the integer representation of an element (its
coefficient vector read in base p) doubles as its index into the lookup
tables kept on the context.

Key Features:
- exp/log tables against a verified primitive element
- power-residue and quadratic root counting by log parity
- embedding of F_q into an extension field
- a shared step budget for the enumeration loops
"""

import logging
from fractions import Fraction
from math import gcd

import galois
import numpy as np
from sympy import isprime

logger = logging.getLogger(__name__)

DEFAULT_BUDGET = 2_000_000_000
MAX_DEGREE = 4
ADD_TABLE_LIMIT = 4096

FqElem = galois.FieldArray


class FieldError(ValueError):
    """Raised for an inadmissible characteristic, degree or modulus."""


class BadReduction(ValueError):
    """Raised when a rational parameter has no image in F_q."""


class BudgetExceeded(RuntimeError):
    """Raised before starting an enumeration larger than the configured budget."""


def check_budget(steps, budget, what):
    if budget is not None and steps > budget:
        raise BudgetExceeded(
            f"{what} needs {steps:.3g} steps, budget is {budget:.3g}"
        )


class FieldCtx:
    """A finite field F_q with exp/log tables. Immutable after construction."""

    def __init__(self, p, k):
        self.p = p
        self.k = k
        self.q = p ** k
        self.GF = galois.GF(self.q)
        self.modulus = self.GF.irreducible_poly
        self.generator = int(self.GF.primitive_element)

        order = self.q - 1
        powers = self.GF.primitive_element ** np.arange(order)
        self.exp = powers.view(np.ndarray).astype(np.int64)
        self.log = np.full(self.q, -1, dtype=np.int64)
        self.log[self.exp] = np.arange(order, dtype=np.int64)
        self.fifth_gcd = gcd(5, order)

        self._verify()
        self.exp.flags.writeable = False
        self.log.flags.writeable = False
        self._add_table = None

    def _verify(self):
        if not self.modulus.is_irreducible():
            raise FieldError(f"modulus {self.modulus} is reducible over F_{self.p}")
        if self.k == 2:
            # a reducible quadratic has a root in F_p
            values = self.modulus(galois.GF(self.p).elements)
            if np.any(values == 0):
                raise FieldError(f"modulus {self.modulus} has a root in F_{self.p}")
        if len(np.unique(self.exp)) != self.q - 1 or np.any(self.exp == 0):
            raise FieldError(
                f"generator {self.generator} does not have order {self.q - 1}"
            )
        if np.any(self.exp[self.log[1:]] != np.arange(1, self.q)):
            raise FieldError("exp and log tables disagree")

    def __repr__(self):
        return f"FieldCtx(p={self.p}, k={self.k}, q={self.q})"

    def __reduce__(self):
        return (FieldCtx, (self.p, self.k))

    @property
    def elements(self):
        return self.GF.elements

    @property
    def nonzero(self):
        return self.GF.elements[1:]

    def element(self, value):
        return self.GF(value)

    def ints(self, x):
        return np.asarray(x.view(np.ndarray), dtype=np.int64)

    def from_rational(self, value):
        """Reduce an int or Fraction into the prime subfield of F_q."""
        value = Fraction(value)
        if value.denominator % self.p == 0:
            raise BadReduction(f"{value} is not p-integral at p={self.p}")
        num = value.numerator % self.p
        den = pow(value.denominator, -1, self.p)
        return self.GF((num * den) % self.p)

    def coerce(self, psi):
        if isinstance(psi, galois.FieldArray):
            if type(psi) is not self.GF:
                raise FieldError(f"{psi!r} is not an element of F_{self.q}")
            return psi
        return self.from_rational(psi)

    def is_square(self, x):
        """Elementwise: True for 0 and for nonzero squares."""
        idx = self.ints(x)
        return (idx == 0) | (self.log[idx] % 2 == 0)

    def fifth_power_counts(self, c):
        """Elementwise #{y : y^5 = c}."""
        idx = self.ints(c)
        residue = self.log[idx] % self.fifth_gcd == 0
        counts = np.where(residue, self.fifth_gcd, 0)
        return np.where(idx == 0, 1, counts)

    def quadratic_root_counts(self, a2, a1, a0):
        """Elementwise root counts of a2 x^2 + a1 x + a0 with a2 != 0."""
        disc = self.ints(a1 * a1 - self.from_rational(4) * a2 * a0)
        nonzero_square = (disc != 0) & (self.log[disc] % 2 == 0)
        return np.where(disc == 0, 1, np.where(nonzero_square, 2, 0))

    def add_table(self):
        if self._add_table is None:
            if self.q > ADD_TABLE_LIMIT:
                raise BudgetExceeded(f"addition table for q={self.q} is too large")
            E = self.elements
            self._add_table = self.ints(E[:, None] + E[None, :])
            self._add_table.flags.writeable = False
        return self._add_table

    def mul_row(self, lam):
        """Indices of lam * x for every x, in table order."""
        return self.ints(self.GF(int(lam)) * self.elements)


def make_field(p, k=1):
    if not isprime(p):
        raise FieldError(f"{p} is not prime")
    if p in (2, 5):
        raise FieldError(f"characteristic {p} divides 10")
    if not 1 <= k <= MAX_DEGREE:
        raise FieldError(f"extension degree {k} outside 1..{MAX_DEGREE}")
    ctx = FieldCtx(p, k)
    logger.debug(f"Built {ctx} with generator {ctx.generator}")
    return ctx


def fifth_power_count(ctx, c):
    return int(ctx.fifth_power_counts(ctx.coerce(c)))


def quadratic_root_count(ctx, a2, a1, a0):
    a2, a1, a0 = (ctx.coerce(v) for v in (a2, a1, a0))
    if a2 == 0:
        raise FieldError("leading coefficient is zero")
    return int(ctx.quadratic_root_counts(a2, a1, a0))


def embedding(small, big):
    """
    Return a function mapping elements of small into big.

    The image of the defining root of small is a root of its modulus in big;
    the rest follows by writing elements in the power basis.
    """
    if small.p != big.p or big.k % small.k != 0:
        raise FieldError(f"F_{small.q} does not embed in F_{big.q}")
    if small.k == 1:
        return lambda x: big.GF(small.ints(x))

    lifted = galois.Poly(big.GF(small.modulus.coeffs.view(np.ndarray)))
    root = lifted.roots()[0]
    basis = root ** np.arange(small.k)

    def embed(x):
        flat = np.atleast_1d(small.ints(x))
        digits = (flat[:, None] // small.p ** np.arange(small.k)) % small.p
        image = big.GF(digits) * basis
        out = np.add.reduce(image, axis=1)
        return out.reshape(np.shape(x))

    return embed
