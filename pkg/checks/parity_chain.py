import logging

from counts import count_U, count_V, count_Y, count_quintic_roots
from field_cache import get_field

from .common import expect

QUICK_FIELDS = [(3, 1), (7, 1), (11, 1), (3, 2)]
FULL_FIELDS = QUICK_FIELDS + [(13, 1), (7, 2)]


def run(config):
    """
    #U and #V have the parity of the root count of f_psi, and #Y the
    opposite parity, for every psi in F_q with psi^5 != 1.
    """
    fields = FULL_FIELDS if config.full else QUICK_FIELDS
    cells = 0
    for p, k in fields:
        ctx = get_field(p, k)
        for psi in (ctx.GF(v) for v in range(ctx.q)):
            if psi ** 5 == ctx.GF(1):
                continue
            n = count_quintic_roots(ctx, psi)
            u = count_U(ctx, psi, budget=config.budget)
            v = count_V(ctx, psi)
            y = count_Y(ctx, psi, budget=config.budget)
            witness = {"q": ctx.q, "psi": int(psi), "n": n, "U": u, "V": v, "Y": y}
            expect(u % 2 == n % 2, "#U and n(f) differ mod 2", **witness)
            expect(v % 2 == n % 2, "#V and n(f) differ mod 2", **witness)
            expect(y % 2 == (u + 1) % 2, "#Y is not #U + 1 mod 2", **witness)
            cells += 1
        logging.info(f"Parity chain holds over F_{ctx.q}")
    return {"fields": [p ** k for p, k in fields], "cells": cells}
