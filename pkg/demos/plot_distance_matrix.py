"""
Dense distance matrices and lazy pairs
======================================

Small graphs can be written out as a full matrix.  For large ones,
stream only the pairs you need.
"""

import numpy as np

from clusterdist import PpmParams, generate_ppm, pairwise
from clusterdist.experiment import export_distance_matrix

g, _ = generate_ppm(PpmParams(4, 10, 0.8, 0.1, seed=1))

path = export_distance_matrix(g, "otoc", "otoc_matrix.csv")
M = np.loadtxt(path, delimiter=",")
print(M.shape, "symmetric:", np.array_equal(M, M.T))

for d in pairwise(g, "burt", [(0, 1), (0, 39), (5, 12)]):
    print(d.u, d.v, round(d.value, 4))
