# The one-parameter family z -> (z, c2(z), c3(z)).
import numpy as np
from complextrees.family import family_alphabet, family_arrays, MIRROR_START

for z in (0.5, (5**0.5 - 1) / 2, 0.7 + 0.2j, 0.3, 1.2):
    s = family_alphabet(z)
    print(f"z={s.z:.4f}  c2={s.c2:.6f}  c3={s.c3:.6f}  in R: {s.in_R}  in M2: {s.in_M2}")

# where does the real axis meet R?
x = np.linspace(-0.99, 0.999, 4000)
_, _, in_r, _ = family_arrays(x.astype(complex))
print("real points in R: [%.4f, %.4f]" % (x[in_r].min(), x[in_r].max()))
print("c2 and c3 are conjugate from", MIRROR_START)
