# Import all checks here
from .common import CheckFailed
from .parity_chain import run as parity_chain
from .group_dictionary import run as group_dictionary
from .sym3_image import run as sym3_image
from .galois_classification import run as galois_classification
from .diophantine import run as diophantine
from .weil_bounds import run as weil_bounds
from .reciprocity_grid import run as reciprocity_grid
from .class_dictionary import run as class_dictionary

# List of checks to run in order, cheapest first
CHECKS = [
    group_dictionary,
    sym3_image,
    diophantine,
    galois_classification,
    parity_chain,
    weil_bounds,
    reciprocity_grid,
    class_dictionary,
]
