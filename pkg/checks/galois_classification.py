from quintic_galois import GROUP_SUPPORT, classify

from .common import expect

EXPECTED_TAGS = {"0": "F20", "2": "S5", "3": "S5", "-2": "S5", "1/2": "S5"}


def run(config):
    tags = {}
    for psi, expected in EXPECTED_TAGS.items():
        verdict = classify(psi, config.prime_budget)
        expect(verdict.tag == expected, "unexpected Galois group", psi=psi, verdict=verdict.to_dict())
        expect("irreducibility" in verdict.certificates, "missing irreducibility certificate", psi=psi)
        tags[psi] = verdict.tag
    return tags
