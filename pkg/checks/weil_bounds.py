import logging

from weil import curve_l_polynomial, reconstruct_mirror_quartic, square_root_quartic

from .common import expect

MIRROR_CASES = [(2, 3), (2, 7), (3, 7)]


def run(config):
    """
    Mirror quartics have roots of size q^(3/2); with curve diagnostics on,
    the L-polynomial of B_psi over F_11 is the square of a quartic.
    """
    for psi, q in MIRROR_CASES:
        reconstruct_mirror_quartic(psi, q, config.method, config.budget)
    report = {"mirror_cases": len(MIRROR_CASES)}
    if not config.curve_diagnostics:
        logging.info("Curve diagnostics disabled, skipping L-polynomials over F_11")
        return report
    curve_l_polynomial(2, 11, "A")
    b_poly = curve_l_polynomial(2, 11, "B")
    expect(square_root_quartic(b_poly) is not None, "L-polynomial of B is not a square",
           coefficients=b_poly)
    report["curve_q"] = 11
    return report
