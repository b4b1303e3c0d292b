from quintic_galois import reciprocity_scan

from .common import expect

GRID_PSI = [-2, -1, 0, 2, 3]


def run(config):
    """a = n(f) + 1 mod 2, a even implies b even, and no forbidden class."""
    prime_max = 13 if config.full else 11
    totals = {"rows": 0, "depth2_rows": 0}
    for psi in GRID_PSI:
        rows, summary = reciprocity_scan(psi, prime_max, depth=2, budget=config.budget,
                                         method=config.method)
        bad = [r for r in rows if not r["ok"]]
        expect(not bad, "reciprocity grid failure", psi=psi, rows=bad[:3])
        expect(summary["forbidden_count"] == 0, "forbidden class reached", psi=psi)
        totals["rows"] += summary["primes"]
        totals["depth2_rows"] += summary["depth2_rows"]
    return totals
