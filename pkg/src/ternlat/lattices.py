"""Positive definite ternary lattices over Z, stored via the doubled Gram.

A lattice L with bilinear form B is kept as the integer matrix
``gram2 = (2 B(x_i, x_j))``: symmetric, even diagonal, positive definite.
Quadratic values are ``Q(x) = (x^t gram2 x) / 2``.  Storing twice the Gram
keeps every entry integral for non-classic lattices, i.e. those whose
off-diagonal products live in (1/2)Z.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .errors import NonIntegralScale, PreconditionViolated
from .matrices import Mat


def _check_gram2(rows):
    if len(rows) != 3 or any(len(r) != 3 for r in rows):
        raise ValueError("gram2 must be 3x3")
    g = tuple(tuple(int(x) for x in r) for r in rows)
    for i in range(3):
        for j in range(3):
            if g[i][j] != g[j][i]:
                raise ValueError("gram2 must be symmetric")
        if g[i][i] % 2:
            raise ValueError("gram2 diagonal must be even")
    # positive definiteness via leading principal minors
    m1 = g[0][0]
    m2 = g[0][0] * g[1][1] - g[0][1] ** 2
    m3 = Mat(g).det()
    if not (m1 > 0 and m2 > 0 and m3 > 0):
        raise ValueError("gram2 must be positive definite")
    return g


class TernaryLattice:
    """Immutable positive definite ternary Z-lattice."""

    __slots__ = ("gram2", "_det2", "_reduced", "_canon")

    def __init__(self, gram2):
        object.__setattr__(self, "gram2", _check_gram2(gram2))
        object.__setattr__(self, "_det2", None)
        object.__setattr__(self, "_reduced", None)
        object.__setattr__(self, "_canon", None)

    def __setattr__(self, name, value):
        raise AttributeError("TernaryLattice is immutable")

    # -- basics ---------------------------------------------------------

    @staticmethod
    def diagonal(a: int, b: int, c: int) -> "TernaryLattice":
        """Lattice of the classic diagonal form ax^2 + by^2 + cz^2."""
        return TernaryLattice([[2 * a, 0, 0], [0, 2 * b, 0], [0, 0, 2 * c]])

    @property
    def mat(self) -> Mat:
        return Mat(self.gram2)

    @property
    def det2(self) -> int:
        """Determinant of the doubled Gram matrix (= 8 * disc)."""
        if self._det2 is None:
            object.__setattr__(self, "_det2", int(Mat(self.gram2).det()))
        return self._det2

    @property
    def disc(self) -> Fraction:
        return Fraction(self.det2, 8)

    @property
    def disc4(self) -> int:
        """4 * disc, an integer for every even-diagonal doubled Gram."""
        d = self.det2
        if d % 2:
            raise ValueError("doubled Gram determinant must be even")
        return d // 2

    @property
    def norm_gcd(self) -> int:
        """Generator of the norm ideal: gcd of Q-values."""
        vals = [self.gram2[i][i] // 2 for i in range(3)]
        vals += [self.gram2[i][j] for i in range(3) for j in range(i + 1, 3)]
        g = 0
        for v in vals:
            g = gcd(g, v)
        return g

    def quad(self, x) -> Fraction:
        """Q(x) for an integer coordinate triple."""
        g = self.gram2
        s = 0
        for i in range(3):
            for j in range(3):
                s += g[i][j] * x[i] * x[j]
        return Fraction(s, 2)

    def __eq__(self, other):
        return isinstance(other, TernaryLattice) and self.gram2 == other.gram2

    def __hash__(self):
        return hash(self.gram2)

    def __repr__(self):
        return f"TernaryLattice({[list(r) for r in self.gram2]})"

    # -- constructions --------------------------------------------------

    def scale(self, r) -> "TernaryLattice":
        """Lattice with form multiplied by the positive rational r."""
        r = Fraction(r)
        if r <= 0:
            raise PreconditionViolated("scale factor must be positive")
        rows = []
        for row in self.gram2:
            new_row = []
            for x in row:
                v = r * x
                if v.denominator != 1:
                    raise NonIntegralScale(f"scaling by {r} leaves Z")
                new_row.append(int(v))
            rows.append(new_row)
        for i in range(3):
            if rows[i][i] % 2:
                raise NonIntegralScale(f"scaling by {r} gives odd diagonal")
        return TernaryLattice(rows)

    def transformed(self, u_rows) -> "TernaryLattice":
        """Gram of the basis change with integer column matrix U: U^t G U."""
        u = Mat(u_rows)
        g = u.t * Mat(self.gram2) * u
        return TernaryLattice([[int(x) for x in row] for row in g.rows])

    def dual(self) -> "RationalLattice":
        """Dual lattice; its true Gram is the inverse of this one's."""
        inv = Mat(self.gram2).inv().scaled(4)
        return RationalLattice(inv)

    # -- reduction and canonical form -----------------------------------

    def reduced_gram(self):
        """A greedily reduced doubled Gram for the same isometry class."""
        if self._reduced is None:
            object.__setattr__(self, "_reduced", _greedy_reduce(self.gram2))
        return self._reduced

    def canonical_form(self):
        """Reduced Gram minimised over signed axis permutations.

        Canonical for almost all classes; equality of forms implies
        isometry, and the few residual collisions inside an isometry
        class are resolved by the registry behind canonical_key.
        """
        if self._canon is None:
            object.__setattr__(self, "_canon",
                               _signed_perm_min(self.reduced_gram()))
        return self._canon


@dataclass(frozen=True)
class RationalLattice:
    """Lattice presented by a rational doubled Gram (e.g. a dual)."""

    gram2: Mat

    def __post_init__(self):
        if not self.gram2.is_symmetric() or self.gram2.nrows != 3:
            raise ValueError("gram2 must be a symmetric 3x3 matrix")

    @property
    def disc(self) -> Fraction:
        return self.gram2.det() / 8

    def scale(self, r) -> "RationalLattice":
        return RationalLattice(self.gram2.scaled(Fraction(r)))

    def dual(self) -> "RationalLattice":
        return RationalLattice(self.gram2.inv().scaled(4))

    def as_integral(self) -> TernaryLattice:
        rows = [[x for x in row] for row in self.gram2.rows]
        if any(x.denominator != 1 for row in rows for x in row):
            raise NonIntegralScale("gram has nontrivial denominators")
        return TernaryLattice([[int(x) for x in row] for row in rows])


@dataclass(frozen=True)
class ClassRep:
    """An isometry class representative with its automorphism count."""

    lattice: TernaryLattice
    aut_order: int


# ---- reduction helpers ----

def _apply(g, u_rows):
    u = Mat(u_rows)
    res = u.t * Mat(g) * u
    return [[int(x) for x in row] for row in res.rows]


def _greedy_reduce_t(gram2):
    """Greedy reduction with its change of basis: returns (g, t) with
    g = t^T gram2 t."""
    g = [list(r) for r in gram2]
    t = [[1 if a == b else 0 for b in range(3)] for a in range(3)]

    def bump(u):
        g[:] = _apply(g, u)
        t[:] = [[sum(t[r][k] * u[k][c] for k in range(3)) for c in range(3)]
                for r in range(3)]

    def pair_pass():
        changed = False
        for i in range(3):
            for j in range(3):
                if i == j:
                    continue
                # nearest-integer reduction of v_i against v_j
                q = (2 * g[i][j] + g[j][j]) // (2 * g[j][j])
                if q == 0:
                    continue
                new_diag = g[i][i] - 2 * q * g[i][j] + q * q * g[j][j]
                if new_diag < g[i][i]:
                    u = [[1 if a == b else 0 for b in range(3)] for a in range(3)]
                    u[j][i] = -q
                    bump(u)
                    changed = True
        return changed

    def triple_pass():
        # occasionally a vector shortens only against a combination
        for i in range(3):
            j, k = [a for a in range(3) if a != i]
            for sj in (-1, 0, 1):
                for sk in (-1, 0, 1):
                    if sj == 0 and sk == 0:
                        continue
                    new_diag = (g[i][i] + sj * sj * g[j][j] + sk * sk * g[k][k]
                                + 2 * sj * g[i][j] + 2 * sk * g[i][k]
                                + 2 * sj * sk * g[j][k])
                    if new_diag < g[i][i]:
                        u = [[1 if a == b else 0 for b in range(3)] for a in range(3)]
                        u[j][i] = sj
                        u[k][i] = sk
                        bump(u)
                        return True
        return False

    while True:
        any_change = False
        while pair_pass():
            any_change = True
        if triple_pass():
            any_change = True
        if not any_change:
            break
    order = sorted(range(3), key=lambda i: g[i][i])
    perm = [[0] * 3 for _ in range(3)]
    for new, old in enumerate(order):
        perm[old][new] = 1
    bump(perm)
    return (tuple(tuple(r) for r in g),
            tuple(tuple(r) for r in t))


def _greedy_reduce(gram2):
    return _greedy_reduce_t(gram2)[0]


def _signed_perm_min(gram2):
    from itertools import permutations
    best = None
    for perm in permutations(range(3)):
        for signs in range(8):
            u = [[0] * 3 for _ in range(3)]
            for new, old in enumerate(perm):
                u[old][new] = -1 if (signs >> new) & 1 else 1
            cand = _apply(gram2, u)
            key = (cand[0][0], cand[1][1], cand[2][2],
                   cand[0][1], cand[0][2], cand[1][2])
            if best is None or key < best:
                best = key
    g00, g11, g22, g01, g02, g12 = best
    return ((g00, g01, g02), (g01, g11, g12), (g02, g12, g22))


# ---- canonical keys via a per-process class registry ----

class ClassRegistry:
    """Maps lattices to a stable key that is shared exactly by isometry.

    Two lattices receive equal keys iff they are isometric: a coarse
    invariant bucket (determinant plus a short theta prefix) narrows the
    candidates and an exact isometry test is the final arbiter.
    """

    THETA_PREFIX = 8

    def __init__(self):
        self._buckets = {}

    @staticmethod
    def _prefix_len(det2: int) -> int:
        # past the Hermite bound on the minimum, so the prefix is never
        # all zeros and the buckets actually separate large forms
        disc = det2 // 8
        k = 1
        while k * k * k < 4 * disc:
            k += 1
        return max(ClassRegistry.THETA_PREFIX, k + 3)

    def key_for(self, lattice: TernaryLattice):
        from .counting import is_isometric, theta_prefix
        bucket = (lattice.det2,
                  theta_prefix(lattice, self._prefix_len(lattice.det2)))
        reps = self._buckets.setdefault(bucket, [])
        for rep in reps:
            if is_isometric(rep, lattice):
                return rep.canonical_form()
        reps.append(lattice)
        return lattice.canonical_form()


_DEFAULT_REGISTRY = ClassRegistry()


def canonical_key(lattice: TernaryLattice, registry: ClassRegistry | None = None):
    """Stable per-process key; equal keys exactly characterise isometry."""
    reg = registry if registry is not None else _DEFAULT_REGISTRY
    return reg.key_for(lattice)


# ---- form JSON interface ----

def lattice_from_dict(data) -> TernaryLattice:
    """Build a lattice from the form-JSON dictionary shape.

    Accepts ``{"gram2": [[...], [...], [...]]}`` for the doubled Gram or
    ``{"diag": [a, b, c]}`` for the classic diagonal form.
    """
    if not isinstance(data, dict):
        raise ValueError("form JSON must be an object")
    if "gram2" in data:
        return TernaryLattice(data["gram2"])
    if "diag" in data:
        diag = data["diag"]
        if len(diag) != 3:
            raise ValueError("diag needs exactly three coefficients")
        return TernaryLattice.diagonal(*[int(x) for x in diag])
    raise ValueError("form JSON needs a 'gram2' or 'diag' entry")


def lattice_to_dict(lattice: TernaryLattice) -> dict:
    return {"gram2": [list(r) for r in lattice.gram2]}


def load_form(path: str) -> TernaryLattice:
    with open(path, "r", encoding="utf-8") as fh:
        return lattice_from_dict(json.load(fh))
