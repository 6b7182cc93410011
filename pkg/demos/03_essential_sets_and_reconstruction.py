# Essential sets and the inf-sup reconstruction of a functional.
#
# A set A is essential for mu when every admissible test function pinned at
# -1 on a neighborhood of A (and zero far away) is separated from zero by
# mu.  For a min-over-F functional the essential sets are exactly the sets
# meeting F, and the singletons recover F itself.  Evaluation can then be
# rebuilt without touching the functional: take the inf over essential sets
# of the sup of the input on each set.

from idemx import (
    discrete,
    essential_family,
    from_mapping,
    infsup_reconstruct,
    is_essential,
    support,
    support_functional,
)

X = discrete(["a", "b", "c"])
mu = support_functional(X, "min", ["a", "b"])

fam = essential_family(mu)
print("essential sets of min over {a,b}:")
for s in fam.subsets():
    print("  ", sorted(s))

print("\nsingleton essentials:", sorted(p for p in X.points if is_essential(mu, {p})))
print("support:             ", sorted(support(mu)))

f = from_mapping(X, {"a": 1.0, "b": 2.0, "c": 5.0})
print("\nmu(f) =", mu(f))
print("inf over essential sets of sup_A f =", infsup_reconstruct(mu, f, family=fam))

# The same machinery works for the max-type functional: its essential sets
# are the supersets of the support, and the reconstruction returns max_F f.
nu = support_functional(X, "max", ["a", "b"])
print("\nmax-type reconstruction:", infsup_reconstruct(nu, f), "== nu(f) ==", nu(f))
