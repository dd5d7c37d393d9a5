"""Representation counts, isometry and stabilisers on small forms."""

from ternlat.catalog import DIAG_1_1_16, TWIN_1_1_16
from ternlat.counting import (
    aut_order,
    embed_count,
    is_isometric,
    rep_count,
    theta_vector,
    vectors_of_norm,
)
from ternlat.harness import form_tag
from ternlat.lattices import TernaryLattice

cube = TernaryLattice.diagonal(1, 1, 1)

# the classic three-squares counts fall straight out of the enumerator
print("sum-of-three-squares counts:", theta_vector(cube, 10))
print("vectors of norm 5:", sorted(vectors_of_norm(cube, 5))[:6], "...")

a, b = DIAG_1_1_16, TWIN_1_1_16
print("\n{} vs {}".format(form_tag(a), form_tag(b)))
print("same disc:", a.disc == b.disc)
print("isometric:", is_isometric(a, b))
print("theta tails agree for a long time though:")
print("  ", theta_vector(a, 14))
print("  ", theta_vector(b, 14))

print("\nstabiliser sizes: cube {},  {} {},  {} {}".format(
    aut_order(cube), form_tag(a), aut_order(a), form_tag(b), aut_order(b)))

# a basis change is invisible to every count
skew = a.transformed(((1, 0, 1), (0, 1, 0), (0, 0, 1)))
print("\nskewed copy gram2:", skew.gram2)
print("still isometric:", is_isometric(skew, a))
print("self-embeddings = stabiliser:", embed_count(a, a) == aut_order(a))

# scaling embeds a copy with index p^2 and transported counts
scaled = a.scale(9)
print("\nscale by 9: embeds forward {}, backward {}".format(
    embed_count(scaled, a) > 0, embed_count(a, scaled) > 0))
print("r(9n, scaled) == r(n, a):",
      all(rep_count(scaled, 9 * n) == rep_count(a, n) for n in range(20)))
