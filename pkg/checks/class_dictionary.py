from quintic_galois import reciprocity_scan

from .common import expect

DICTIONARY_PSI = [0, 2, 3]


def run(config):
    """
    The Euler class of every reconstructed quartic is the class of the
    Frobenius cycle type; at depth 1 only the parity of a is compared.
    """
    depth2_max = 13 if config.full else 7
    report = {}
    for psi in DICTIONARY_PSI:
        shallow, summary = reciprocity_scan(psi, config.prime_budget, depth=1)
        expect(summary["failures"] == 0, "parity component mismatch", psi=psi,
               rows=[r for r in shallow if not r["ok"]][:3])
        deep, deep_summary = reciprocity_scan(psi, depth2_max, depth=2, budget=config.budget)
        expect(deep_summary["class_failures"] == 0, "Euler class differs from cycle type class",
               psi=psi, rows=[r for r in deep if r["class_ok"] is False][:3])
        report[str(psi)] = {"depth1": summary["primes"], "depth2": deep_summary["depth2_rows"]}
    return report
