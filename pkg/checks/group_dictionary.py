import numpy as np

from sp4s6 import (
    CLASS_REPRESENTATIVES,
    D10_GENERATORS,
    Perm6,
    all_permutations,
    charpoly_mod2,
    classify_subgroup,
    displayed_matrix,
    is_symplectic,
    phi,
)

from .common import expect

HOMOMORPHISM_PAIRS = 1000

# charpolys of the displayed class representatives, t^0 first
EXPECTED_CHARPOLYS = {
    "": (1, 0, 0, 0, 1),
    "(12)": (1, 0, 0, 0, 1),
    "(12)(34)": (1, 0, 0, 0, 1),
    "(123)": (1, 1, 0, 1, 1),
    "(123)(45)": (1, 1, 0, 1, 1),
    "(1234)": (1, 0, 0, 0, 1),
    "(12345)": (1, 1, 1, 1, 1),
}

SUBGROUP_EXAMPLES = {
    "D10": ["(23)(56)", "(25463)"],
    "F20": ["(12345)", "(1243)"],
    "S5": ["(12345)", "(12)"],
}


def run(config):
    perms = all_permutations()
    images = {}
    for sigma in perms:
        m = phi(sigma)
        expect(is_symplectic(m), "phi(sigma) is not symplectic", sigma=str(sigma))
        images[m.tobytes()] = sigma
    expect(len(images) == 720, "phi is not injective", distinct=len(images))

    rng = np.random.default_rng(config.seed)
    for _ in range(HOMOMORPHISM_PAIRS):
        a, b = (perms[i] for i in rng.integers(0, len(perms), size=2))
        expect(np.array_equal(phi(a * b), phi(a).astype(int) @ phi(b) % 2),
               "phi(ab) != phi(a) phi(b)", a=str(a), b=str(b))

    for cycles, displayed in CLASS_REPRESENTATIVES.items():
        sigma = Perm6.from_cycles(cycles)
        expect(np.array_equal(displayed_matrix(sigma), np.array(displayed)),
               "class representative differs from its displayed matrix", sigma=cycles)
        expect(charpoly_mod2(displayed) == EXPECTED_CHARPOLYS[cycles],
               "unexpected characteristic polynomial", sigma=cycles)

    for cycles, displayed in D10_GENERATORS.items():
        expect(np.array_equal(displayed_matrix(Perm6.from_cycles(cycles)), np.array(displayed)),
               "D10 generator differs from its displayed matrix", sigma=cycles)

    for tag, generators in SUBGROUP_EXAMPLES.items():
        verdict = classify_subgroup([Perm6.from_cycles(g) for g in generators])
        expect(verdict.tag == tag, "subgroup misclassified", expected=tag, got=verdict.tag)
    return {"order": len(images), "pairs": HOMOMORPHISM_PAIRS}
