"""Walk through the two-class tower over <1,1,16> at p = 11.

The ground genus has two classes; one step down the tower there are two
more.  The class graph between them is complete bipartite after halving,
the weighted neighbour matrix has constant rows, and the scaled counts
of the ground forms satisfy two exact rational identities with the
level-1 counts.  Everything printed here is integer or Fraction.
"""

from fractions import Fraction

from ternlat.catalog import DIAG_1_1_16
from ternlat.counting import rep_count
from ternlat.graphs import anzahlmatrix, build_graph, classify_type, n_matrix
from ternlat.harness import form_tag, p11_example_classes
from ternlat.towers import genus_tower

p = 11
tower = genus_tower(DIAG_1_1_16, p, 1)

print("ground classes (disc 2):")
for c in tower[0].classes:
    print("  {}  |stab| = {}".format(form_tag(c.lattice), c.aut_order))
print("level-1 classes (disc 2*11^2):")
for c in tower[1].classes:
    print("  {}  |stab| = {}".format(form_tag(c.lattice), c.aut_order))
print("level masses: {} -> {}".format(tower[0].mass(), tower[1].mass()))

graph = build_graph(tower[0], tower[1])
print("\nincidence matrix:", graph.incidence)
print("weighted counts :", n_matrix(graph))
print("graph type      :", classify_type(graph))
print("neighbour matrix:", anzahlmatrix(tower[0], p))

# the two scalar identities tying r(11n) of each ground class to the
# level-1 counts; coefficients are fixed rationals
verts, edges = p11_example_classes()
t1, t2 = verts[0].lattice, verts[1].lattice
s1, s2 = edges[0].lattice, edges[1].lattice
c = [Fraction(38, 5), Fraction(2, 5), Fraction(39, 10), Fraction(1, 10)]

print("\n n  r(11n,T1) r(11n,T2)   shared part   swing")
for n in range(1, 13):
    common = (c[0] * rep_count(s1, n) - c[1] * rep_count(s1, 121 * n)
              + c[2] * rep_count(s2, n) - c[3] * rep_count(s2, 121 * n))
    swing = Fraction(rep_count(t1, 11 * n) - rep_count(t2, 11 * n), 2)
    lhs1 = 11 * rep_count(t1, 11 * n)
    lhs2 = 11 * rep_count(t2, 11 * n)
    assert Fraction(lhs1) == common - swing
    assert Fraction(lhs2) == common + swing
    print("{:3d} {:9d} {:9d}   {!s:>11}   {!s}".format(
        n, rep_count(t1, 11 * n), rep_count(t2, 11 * n), common, swing))

print("\nthe difference r(11n,T1) - r(11n,T2) is almost always zero;")
print("nonzero spots sit at n = 11 m^2 with odd m:")
for n in range(1, 500):
    d = rep_count(t1, 11 * n) - rep_count(t2, 11 * n)
    if d:
        print("  n = {:3d}: difference {}".format(n, d))
