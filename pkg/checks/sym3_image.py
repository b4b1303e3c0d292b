import numpy as np

from sp4s6 import (
    SL2F4_CLASS_REPRESENTATIVES,
    charpoly_gf4,
    charpoly_mod2,
    is_symplectic,
    sl2f4_elements,
    sym3_invariant_form,
    sym3_sl2f4,
    trace_form_gram,
    trace_form_sl2f4,
)
from weil import EulerClassMod2

from .common import expect


def run(config):
    """
    The symmetric cube of SL_2(F_4) is faithful, symplectic and misses the
    (3,3) class; the restriction of scalars reaches it.
    """
    forbidden = EulerClassMod2.FORBIDDEN.value
    elements = sl2f4_elements()
    expect(len(elements) == 60, "|SL_2(F_4)| != 60", order=len(elements))

    form = sym3_invariant_form()
    images = set()
    for g in elements:
        m = sym3_sl2f4(g)
        images.add(m.tobytes())
        expect(np.array_equal(m.T @ form @ m, form), "sym3 image leaves the invariant form",
               g=g.tolist())
        expect(charpoly_gf4(m) != forbidden, "sym3 image reaches the (3,3) class", g=g.tolist())
    expect(len(images) == 60, "sym3 is not faithful", order=len(images))
    for name in ("order5a", "order5b"):
        m = sym3_sl2f4(SL2F4_CLASS_REPRESENTATIVES[name])
        expect(charpoly_gf4(m) == EulerClassMod2.CYCLOTOMIC5.value,
               "sym3 of an order-5 element is not 1+t+t^2+t^3+t^4", representative=name)

    gram = trace_form_gram()
    contrast = [charpoly_mod2(trace_form_sl2f4(g)) == forbidden for g in elements]
    expect(all(is_symplectic(trace_form_sl2f4(g), gram) for g in elements),
           "restriction of scalars leaves the trace form")
    expect(any(contrast), "restriction of scalars misses the (3,3) class")
    return {"order": len(images), "trace_form_33": sum(contrast)}
