# The hyperspace of nonempty subsets: distances, neighborhoods, and the
# correspondence between subsets and min/max functionals.

import numpy as np

from idemx import (
    HyperPoint,
    VietorisNbhd,
    discrete,
    enumerate_hyperspace,
    hausdorff_distance,
    hyperspace_roundtrip,
    line_metric,
    lipschitz_constant,
    subset_min,
    vietoris_contains,
)
from idemx.functionals import RealFunction

# Enumerate all nonempty subsets of a 3-point space: 2^3 - 1 of them.
X = discrete(["a", "b", "c"])
hyper = enumerate_hyperspace(X)
print("hyperspace points:", [h.ids() for h in hyper])

# On a metric grid the hyperspace carries the Hausdorff distance.
M = line_metric({"0": 0.0, "h": 0.5, "1": 1.0})
F = HyperPoint(M, M.mask(["0"]))
G = HyperPoint(M, M.mask(["h", "1"]))
print("\nd_H({0}, {0.5, 1}) =", hausdorff_distance(F, G, M))

# min over a subset is 1-Lipschitz for the Hausdorff distance, scaled by
# the Lipschitz constant of the input function.
rng = np.random.default_rng(0)
f = RealFunction(M, tuple(rng.uniform(-3, 3, 3)))
L = lipschitz_constant(f, M)
gap = abs(subset_min(f, F.member) - subset_min(f, G.member))
print(f"|min_F f - min_G f| = {gap:.3f} <= L*d_H = {L * hausdorff_distance(F, G, M):.3f}")

# Vietoris-style neighborhoods: upper means "contained in U", lower means
# "meets every listed U", full means both at once for a finite list.
U = X.mask(["a", "b"])
upper = VietorisNbhd(X, (U,), "upper")
lower = VietorisNbhd(X, (U,), "lower")
for h in hyper:
    flags = []
    if vietoris_contains(upper, h):
        flags.append("upper")
    if vietoris_contains(lower, h):
        flags.append("lower")
    print(f"  {h.ids()}: {' '.join(flags) or '-'}")

# Subsets and min/max functionals are two views of the same thing: sending
# F to min-over-F and taking the support comes back to F, for every F.
rep = hyperspace_roundtrip(discrete(["a", "b", "c", "d"]), "min")
print(f"\nroundtrip on 4 points: {rep.cases} subsets, failures: {len(rep.failures)}")
