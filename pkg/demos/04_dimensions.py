# Similarity dimension of the tipset, and dimension of the boundary path.
import math
import numpy as np
from complextrees.dimension import similarity_dimension, path_dimension
from complextrees.family import family_alphabet, MIRROR_START

g = (5**0.5 - 1) / 2
print("golden:", similarity_dimension(family_alphabet(g).alphabet()).value,
      "vs ln2/ln(tau) =", math.log(2) / math.log(1 / g))
print("golden path dimension:", path_dimension(g).value)

for z in (0.8139945485+0.1464185886j, 0.8430850339+0.1255411858j):
    print(z, similarity_dimension(family_alphabet(z).alphabet()).value)

zs = np.linspace(MIRROR_START + 1e-9, 0.99, 12)
for z in zs:
    print("%.3f  %.4f" % (z, path_dimension(z).value))
