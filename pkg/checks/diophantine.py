from dioph import KINDS, curve_report, substitution_identity_check

from .common import expect

MUTATION_TRIALS = 3


def run(config):
    report = curve_report(11)
    expect(report["C_count"] == 12 and report["D10_count"] == 8, "F_11 counts are off", **report)
    expect(report["ok"], "torsion cardinalities do not match the F_11 counts", **report)

    identities = {}
    for kind in KINDS:
        result = substitution_identity_check(kind, config.trials, config.dioph_seed, config.dioph_prime)
        expect(result["ok"], "substitution identity failed", **result)
        mutated = substitution_identity_check(kind, MUTATION_TRIALS, config.dioph_seed,
                                              config.dioph_prime, mutate=True)
        expect(not mutated["ok"], "perturbed substitution still passes", **mutated)
        identities[kind] = result["orientation"]
    return {"curves": report, "orientation": identities}
