"""The tower over <1,1,2> at p = 3, four levels deep.

Class counts go 1, 1, 2, 4; the level-3 quartet is the smallest stage
where counts at one level stop being a rational combination of counts
one level up, and the harness can certify that negatively.  On the way
down we also see the level-2 graph stay O-type.
"""

from ternlat.catalog import DIAG_1_1_2, DIAG_1_2_9, DISC54_QUARTET
from ternlat.counting import is_isometric, rep_count
from ternlat.graphs import build_graph, classify_type
from ternlat.harness import (
    form_tag,
    verify_thm_4_8,
    verify_thm_4_8_negative,
)
from ternlat.towers import genus_tower

tower = genus_tower(DIAG_1_1_2, 3, 3)
for m, level in enumerate(tower):
    tags = ", ".join(form_tag(c.lattice) for c in level.classes)
    print("level {}: {} class(es): {}".format(m, len(level.classes), tags))

hit = next(c for c in tower[2].classes
           if is_isometric(c.lattice, DIAG_1_2_9))
print("\nlevel 2 contains the diagonal form {}".format(form_tag(hit.lattice)))

print("level 3 matches the frozen quartet:")
for s in DISC54_QUARTET:
    match = next(c for c in tower[3].classes if is_isometric(c.lattice, s))
    print("  {}  |stab| = {}".format(form_tag(s), match.aut_order))

g2 = build_graph(tower[2], tower[3])
print("\nlevel-2 graph: {} vertices, {} edges, {}".format(
    g2.order, len(g2.edges), classify_type(g2, "O-type")))

# counts two levels apart are tied by exact vector identities, split by
# whether 3 divides the argument
rep = verify_thm_4_8(DIAG_1_1_2, 3, 100)
print("\nvector recursion, both argument classes:", rep.line())

# but no single rational recursion can tie level 2 to level 3: the linear
# system from the first forty arguments is inconsistent
rep = verify_thm_4_8_negative(DIAG_1_1_2, 3, 40)
print("no-constant-recursion certificate:", rep.line())

print("\nfirst counts of the quartet, n = 1..12:")
print(" n  " + "  ".join("S{}".format(i + 1) for i in range(4)))
for n in range(1, 13):
    row = [rep_count(s, n) for s in DISC54_QUARTET]
    print("{:2d}  ".format(n) + "  ".join("{:2d}".format(r) for r in row))
