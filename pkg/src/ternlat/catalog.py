"""Named example lattices used by the demos and the verification corpus.

Doubled Grams throughout.  The disc-16 pair is a two-class genus whose
level-1 tower at 11 has the two disc-176 forms below it; the disc-54
quartet is the four-class level-3 stage over <1,1,2> at 3.
"""

from .lattices import TernaryLattice

DIAG_1_1_16 = TernaryLattice.diagonal(1, 1, 16)
TWIN_1_1_16 = TernaryLattice(((4, 0, -2), (0, 4, 2), (-2, 2, 10)))

DISC176_A = TernaryLattice(((6, 2, 2), (2, 12, -2), (2, -2, 22)))
DISC176_B = TernaryLattice(((12, 4, 6), (4, 12, 2), (6, 2, 14)))

DIAG_1_1_2 = TernaryLattice.diagonal(1, 1, 2)
DIAG_1_2_9 = TernaryLattice.diagonal(1, 2, 9)

DISC54_QUARTET = (
    TernaryLattice.diagonal(1, 2, 27),
    TernaryLattice(((6, 2, 2), (2, 8, 4), (2, 4, 12))),
    TernaryLattice(((2, 0, 0), (0, 10, 2), (0, 2, 22))),
    TernaryLattice(((4, 0, 0), (0, 8, 2), (0, 2, 14))),
)

# even-type plane glued to a unit, and a shifted variant; both admit the
# hyperbolic rewriting at 2
PLANE_WITH_UNIT = TernaryLattice(((2, 1, 0), (1, 2, 0), (0, 0, 2)))
PLANE_SHIFTED = TernaryLattice(((2, 1, 0), (1, 4, 0), (0, 0, 4)))
