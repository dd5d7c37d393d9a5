"""Local data at a prime: Jordan blocks, point classes, kernel descent.

A form's behaviour under the tower machinery is decided by its shape
over Z_p.  This walks the pieces for a few forms: the block splitting,
the mod-p point classification with its fixed class sizes, the split
condition, and the kernel sublattice that drives the transform.
"""

from ternlat.counting import rep_count
from ternlat.harness import form_tag
from ternlat.lattices import TernaryLattice
from ternlat.local import (
    jordan_decompose,
    locally_isometric,
    satisfies_condition_2_2,
    unimodular_part_anisotropic,
)
from ternlat.sublattices import classify_points, watson_kernel

lat = TernaryLattice.diagonal(1, 2, 9)

for p in (2, 3, 5):
    sym = jordan_decompose(lat, p)
    blocks = ", ".join(
        "p^{} rank {} ({})".format(c.scale_exp, c.rank, c.shape)
        for c in sym.components)
    print("{} at {}: {}".format(form_tag(lat), p, blocks))

print("\nsplit condition at 3:", satisfies_condition_2_2(lat, 3))
print("split condition at 5:", satisfies_condition_2_2(lat, 5))

# mod-p projective points fall into value classes of fixed sizes
sizes = {k: len(v) for k, v in classify_points(lat, 3).items()}
print("point classes mod 3: {}  (total {})".format(
    sizes, sum(sizes.values())))

# two forms in one genus are locally alike everywhere
a = TernaryLattice.diagonal(1, 1, 16)
b = TernaryLattice(((4, 0, -2), (0, 4, 2), (-2, 2, 10)))
print("\n{} ~ {} locally at 2, 3, 11: {}".format(
    form_tag(a), form_tag(b),
    [locally_isometric(a, b, p) for p in (2, 3, 11)]))

# when the unimodular part at p stays anisotropic, counts at multiples
# of p transfer to the kernel sublattice unchanged
k = TernaryLattice.diagonal(1, 1, 3)
print("\nanisotropic unimodular part at 3:",
      unimodular_part_anisotropic(k, 3))
kern = watson_kernel(k, 3).lattice
print("kernel form:", form_tag(kern))
same = all(rep_count(k, n) == rep_count(kern, n)
           for n in range(3, 100, 3))
print("counts at multiples of 3 agree:", same)
