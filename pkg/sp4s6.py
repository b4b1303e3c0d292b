"""
Symplectic Dictionary Module

The exceptional isomorphism between S6 and the symplectic group of a
4-dimensional F_2 space, realised on W = U^perp / U inside F_2^6 with U the
line spanned by (1,...,1). Characteristic polynomials over F_2 connect cycle
types of Frobenius elements with the mod-2 Euler classes in weil.

Also home to two representations of SL_2(F_4): its symmetric cube, which
never reaches the (3,3) class, and its restriction of scalars to F_2, which
does.
"""

import itertools
import logging
import re
from collections import Counter, deque
from dataclasses import dataclass
from math import factorial

import galois
import numpy as np

from weil import EulerClassMod2

logger = logging.getLogger(__name__)

GF2 = galois.GF(2)
GF4 = galois.GF(4)
ALPHA = GF4(2)
GROUP_CAP = 720

# Displayed matrices are those of x -> (x_sigma(i))_i, i.e. of phi(sigma^-1).
DISPLAY_CONVENTION = "inverse"

J = np.fliplr(np.eye(4, dtype=np.uint8))

# e1 = (f1, 0), e2 = (0, f1), e3 = (0, f2), e4 = (f2, 0), f1 = (1,1,0), f2 = (1,0,1)
BASIS = np.array([
    [1, 1, 0, 0, 0, 0],
    [0, 0, 0, 1, 1, 0],
    [0, 0, 0, 1, 0, 1],
    [1, 0, 1, 0, 0, 0],
], dtype=np.uint8)


class GroupError(ValueError):
    """Bad permutation, matrix or generating set."""


@dataclass(frozen=True)
class CycleType:
    parts: tuple
    degree: int

    def __post_init__(self):
        if sum(self.parts) != self.degree or any(p < 1 for p in self.parts):
            raise GroupError(f"{self.parts} is not a partition of {self.degree}")

    @classmethod
    def of(cls, parts, degree=None):
        parts = tuple(sorted((int(p) for p in parts), reverse=True))
        return cls(parts, degree if degree is not None else sum(parts))

    @property
    def fixed_points(self):
        return self.parts.count(1)

    def restricted(self, degree):
        """Drop fixed points so the type reads as one of a smaller symmetric group."""
        extra = self.degree - degree
        if extra < 0 or self.fixed_points < extra:
            raise GroupError(f"{self} does not fix {extra} points")
        parts = list(self.parts)
        for _ in range(extra):
            parts.remove(1)
        return CycleType(tuple(parts), degree)

    def __str__(self):
        return "[" + ",".join(str(p) for p in self.parts) + "]"


@dataclass(frozen=True)
class Perm6:
    """A permutation of {1..6}; images[i-1] is the image of i."""

    images: tuple

    def __post_init__(self):
        if sorted(self.images) != list(range(1, 7)):
            raise GroupError(f"{self.images} is not a permutation of 1..6")

    @classmethod
    def identity(cls):
        return cls(tuple(range(1, 7)))

    @classmethod
    def from_cycles(cls, text):
        """Parse '(25463)' or '(12)(34)'; the empty string is the identity."""
        images = list(range(1, 7))
        for cycle in re.findall(r"\(([1-6]+)\)", text):
            points = [int(c) for c in cycle]
            if len(set(points)) != len(points):
                raise GroupError(f"repeated point in cycle ({cycle})")
            for src, dst in zip(points, points[1:] + points[:1]):
                images[src - 1] = dst
        return cls(tuple(images))

    def __call__(self, i):
        return self.images[i - 1]

    def __mul__(self, other):
        # (self * other)(i) = self(other(i))
        return Perm6(tuple(self(other(i)) for i in range(1, 7)))

    def inverse(self):
        images = [0] * 6
        for i, image in enumerate(self.images, start=1):
            images[image - 1] = i
        return Perm6(tuple(images))

    def cycles(self):
        seen, out = set(), []
        for start in range(1, 7):
            if start in seen:
                continue
            cycle, i = [], start
            while i not in seen:
                seen.add(i)
                cycle.append(i)
                i = self(i)
            out.append(tuple(cycle))
        return out

    def cycle_type(self):
        return CycleType.of([len(c) for c in self.cycles()], 6)

    def is_even(self):
        return sum(len(c) - 1 for c in self.cycles()) % 2 == 0

    def __str__(self):
        text = "".join("(" + "".join(map(str, c)) + ")" for c in self.cycles() if len(c) > 1)
        return text or "e"


def _normalize(v):
    """Representative of v + U with last coordinate 0."""
    return tuple(int(x) for x in (v ^ v[5]))


def _coordinate_table():
    table = {}
    for coeffs in itertools.product((0, 1), repeat=4):
        v = np.array(coeffs, dtype=np.uint8) @ BASIS % 2
        table[_normalize(v.astype(np.uint8))] = coeffs
    return table


_COORDS = _coordinate_table()


def act(sigma, v):
    """(sigma v)_{sigma(i)} = v_i."""
    out = np.zeros(6, dtype=np.uint8)
    for i in range(1, 7):
        out[sigma(i) - 1] = v[i - 1]
    return out


def phi(sigma):
    """Matrix of sigma on W in the basis e1..e4, acting on column vectors."""
    columns = [_COORDS[_normalize(act(sigma, e))] for e in BASIS]
    return np.array(columns, dtype=np.uint8).T


def is_symplectic(m, form=J):
    return bool(np.array_equal(m.T.astype(int) @ form @ m % 2, form))


def matrix_order(m, cap=GROUP_CAP):
    power = m.copy()
    identity = np.eye(len(m), dtype=m.dtype)
    for order in range(1, cap + 1):
        if np.array_equal(power, identity):
            return order
        power = power.astype(int) @ m % 2
    raise GroupError("matrix order exceeds the cap")


def charpoly_mod2(m):
    """det(t - m) over F_2, coefficients from t^0 up to t^4."""
    poly = GF2(np.asarray(m, dtype=np.uint8) % 2).characteristic_poly()
    return tuple(int(c) for c in poly.coeffs[::-1])


def charpoly_gf4(m):
    poly = m.characteristic_poly()
    return tuple(int(c) for c in poly.coeffs[::-1])


# S5 = stabiliser of 6. Cycle type -> Euler class via charpolys of phi.
CLASS_OF_CYCLE_TYPE = {
    (1, 1, 1, 1, 1): EulerClassMod2.ONE_T4,
    (2, 1, 1, 1): EulerClassMod2.ONE_T4,
    (2, 2, 1): EulerClassMod2.ONE_T4,
    (4, 1): EulerClassMod2.ONE_T4,
    (3, 1, 1): EulerClassMod2.T3_T4,
    (3, 2): EulerClassMod2.T3_T4,
    (5,): EulerClassMod2.CYCLOTOMIC5,
}


def cycle_type_to_class(ct):
    if ct.degree != 5:
        raise GroupError(f"{ct} is a cycle type of degree {ct.degree}, not 5")
    return CLASS_OF_CYCLE_TYPE[ct.parts]


# tau_1 .. tau_5 with their displayed matrices
CLASS_REPRESENTATIVES = {
    "": [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]],
    "(12)": [[1, 0, 0, 1], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]],
    "(12)(34)": [[1, 1, 1, 0], [0, 0, 1, 1], [0, 1, 0, 1], [0, 0, 0, 1]],
    "(123)": [[0, 0, 0, 1], [0, 1, 0, 0], [0, 0, 1, 0], [1, 0, 0, 1]],
    "(123)(45)": [[0, 0, 0, 1], [0, 1, 1, 0], [0, 0, 1, 0], [1, 0, 0, 1]],
    "(1234)": [[1, 1, 1, 0], [1, 0, 1, 1], [1, 1, 0, 1], [1, 0, 0, 1]],
    "(12345)": [[1, 1, 1, 0], [0, 1, 1, 0], [1, 1, 0, 1], [1, 0, 0, 1]],
}

D10_GENERATORS = {
    "(23)(56)": J.tolist(),
    "(25463)": [[0, 0, 0, 1], [0, 0, 1, 1], [0, 1, 0, 0], [1, 1, 0, 1]],
}

# displayed as an order-3 element of H(F_2); its permutation label is not used
ORDER3_ENDOSCOPIC = [[1, 0, 0, 1], [0, 1, 1, 0], [0, 1, 0, 0], [1, 0, 0, 0]]


def displayed_matrix(sigma):
    """phi under the convention the displayed matrices were written in."""
    return phi(sigma.inverse()) if DISPLAY_CONVENTION == "inverse" else phi(sigma)


def endoscopic_member(m):
    """
    Membership in H: the block shape

        x 0 0 y
        0 a b 0
        0 c d 0
        z 0 0 w

    with xw - yz = ad - bc (over F_2 the signs are irrelevant).
    """
    m = np.asarray(m) % 2
    outer = [(0, 1), (0, 2), (3, 1), (3, 2), (1, 0), (2, 0), (1, 3), (2, 3)]
    if any(m[i, j] for i, j in outer):
        return False
    det_outer = (m[0, 0] * m[3, 3] + m[0, 3] * m[3, 0]) % 2
    det_inner = (m[1, 1] * m[2, 2] + m[1, 2] * m[2, 1]) % 2
    return bool(det_outer == det_inner)


def all_permutations():
    return [Perm6(tuple(p)) for p in itertools.permutations(range(1, 7))]


@dataclass(frozen=True)
class SubgroupVerdict:
    tag: str
    order: int
    has33: bool
    abelian: bool
    cycle_types: tuple

    def to_dict(self):
        return {
            "tag": self.tag,
            "order": self.order,
            "has33": self.has33,
            "abelian": self.abelian,
            "cycle_types": [str(ct) for ct in self.cycle_types],
        }


def close_subgroup(generators):
    """Breadth-first closure of the generated subgroup of S6."""
    identity = Perm6.identity()
    elements = {identity}
    queue = deque([identity])
    while queue:
        g = queue.popleft()
        for s in generators:
            h = g * s
            if h not in elements:
                elements.add(h)
                if len(elements) > GROUP_CAP:
                    raise GroupError("closure exceeded |S6|")
                queue.append(h)
    return elements


def classify_subgroup(generators):
    elements = close_subgroup(list(generators))
    order = len(elements)
    abelian = all(a * b == b * a for a in generators for b in generators)
    types = sorted({g.cycle_type().parts for g in elements}, reverse=True)
    has33 = (3, 3) in types
    all_even = all(g.is_even() for g in elements)

    if order == 5:
        tag = "C5"
    elif order == 10 and not abelian:
        tag = "D10"
    elif order == 20 and not abelian:
        tag = "F20"
    elif order == 60 and all_even:
        tag = "A5"
    elif order == 120:
        tag = "S5"
    elif order == 360 and all_even:
        tag = "A6"
    elif order == 720:
        tag = "S6"
    else:
        tag = "OTHER"
    return SubgroupVerdict(
        tag, order, has33, abelian, tuple(CycleType(t, 6) for t in types)
    )


def conjugacy_table():
    """One row per cycle type of S6 with its image under phi."""
    rows = []
    for parts in _partitions(6):
        points = iter(range(1, 7))
        cycles = ["".join(str(next(points)) for _ in range(k)) for k in parts]
        sigma = Perm6.from_cycles("".join(f"({c})" for c in cycles if len(c) > 1))
        m = phi(sigma)
        poly = charpoly_mod2(m)
        euler = EulerClassMod2.from_coefficients(poly)
        multiplicities = Counter(parts)
        centraliser = 1
        for k, count in multiplicities.items():
            centraliser *= k ** count * factorial(count)
        rows.append({
            "cycle_type": str(CycleType.of(parts, 6)),
            "representative": str(sigma),
            "class_size": 720 // centraliser,
            "order": matrix_order(m),
            "charpoly": list(poly),
            "euler_class": euler.name if euler else None,
            "in_s5": 1 in parts,
        })
    return rows


def _partitions(n, largest=None):
    largest = largest or n
    if n == 0:
        yield ()
        return
    for k in range(min(n, largest), 0, -1):
        for rest in _partitions(n - k, k):
            yield (k,) + rest


def sl2f4_elements():
    out = []
    for a, b, c, d in itertools.product(range(4), repeat=4):
        m = GF4([[a, b], [c, d]])
        if np.linalg.det(m) == 1:
            out.append(m)
    return out


# identity, order 2, order 3, and the two order-5 classes
SL2F4_CLASS_REPRESENTATIVES = {
    "identity": [[1, 0], [0, 1]],
    "order2": [[1, 0], [1, 1]],
    "order3": [[2, 0], [0, 3]],
    "order5a": [[0, 1], [1, 2]],
    "order5b": [[0, 1], [1, 3]],
}


def _as_gf4(m):
    m = m if isinstance(m, GF4) else GF4(np.asarray(m))
    if m.shape != (2, 2):
        raise GroupError(f"expected a 2x2 matrix over F_4, got shape {m.shape}")
    if np.linalg.det(m) != 1:
        raise GroupError("matrix is not in SL_2(F_4)")
    return m


def sym3_sl2f4(m):
    """
    Symmetric cube on the basis x^3, x^2 y, x y^2, y^3, with m sending x to
    m[0,0] x + m[1,0] y and y to m[0,1] x + m[1,1] y.
    """
    m = _as_gf4(m)
    image_x = m[:, 0]
    image_y = m[:, 1]
    columns = []
    for j in range(4):
        form = GF4([1])
        for _ in range(3 - j):
            form = np.convolve(form, image_x)
        for _ in range(j):
            form = np.convolve(form, image_y)
        columns.append(form)
    return GF4(np.stack([c.view(np.ndarray) for c in columns], axis=1))


def preserved_alternating_forms(matrices):
    """Basis of the alternating forms B over F_4 with g^T B g = B for all g."""
    pairs = [(i, j) for i in range(4) for j in range(i + 1, 4)]
    rows = []
    for g in matrices:
        block = []
        for i, j in pairs:
            E = GF4.Zeros((4, 4))
            E[i, j] = E[j, i] = 1
            block.append((g.T @ E @ g - E).flatten())
        rows.append(GF4(np.stack([b.view(np.ndarray) for b in block], axis=1)))
    system = GF4(np.concatenate([r.view(np.ndarray) for r in rows], axis=0))
    solutions = system.null_space()
    forms = []
    for vector in solutions:
        B = GF4.Zeros((4, 4))
        for value, (i, j) in zip(vector, pairs):
            B[i, j] = B[j, i] = value
        forms.append(B)
    return forms


def sym3_invariant_form():
    """A nondegenerate alternating form preserved by sym3 of SL_2(F_4)."""
    gens = [GF4([[1, 1], [0, 1]]), GF4([[1, 2], [0, 1]]),
            GF4([[1, 0], [1, 1]]), GF4([[1, 0], [2, 1]])]
    images = [sym3_sl2f4(g) for g in gens]
    for B in preserved_alternating_forms(images):
        if np.linalg.det(B) != 0:
            return B
    raise GroupError("no nondegenerate invariant form")


def _f2_coordinates(vector):
    # x = c0 + c1 a has integer representation c0 + 2 c1
    out = []
    for value in vector.view(np.ndarray):
        out.extend((int(value) & 1, (int(value) >> 1) & 1))
    return out


TRACE_BASIS = [GF4([1, 0]), GF4([2, 0]), GF4([0, 1]), GF4([0, 2])]


def _trace(z):
    return int(z + z ** 2)


def trace_form_gram():
    """Gram matrix of tr(x1 y2 + y1 x2) on F_4^2 in TRACE_BASIS."""
    gram = np.zeros((4, 4), dtype=np.uint8)
    for i, u in enumerate(TRACE_BASIS):
        for j, v in enumerate(TRACE_BASIS):
            gram[i, j] = _trace(u[0] * v[1] + u[1] * v[0])
    return gram


def trace_form_sl2f4(m):
    """m acting on F_4^2 viewed as F_2^4."""
    m = _as_gf4(m)
    columns = [_f2_coordinates(m @ v) for v in TRACE_BASIS]
    return np.array(columns, dtype=np.uint8).T
