"""Regular positive Brieskorn-Pham links in low dimension."""
from sasaki_cone import enumerate_regular_positive, positivity_and_index, weights_from_exponents

for n in (3, 4):
    for a in enumerate_regular_positive(n):
        bd = weights_from_exponents(a)
        print(n, a, "weights", bd.weights, "index", positivity_and_index(bd).index)
