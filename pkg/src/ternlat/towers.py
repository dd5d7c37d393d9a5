"""Genus enumeration and the level tower over a base lattice.

Class lists are produced by neighbor closure at the two smallest odd
primes away from the determinant; level t+1 is lifted from level t
through the zero-line family with the form divided by p.  Both are
audited: the scaled-class counting sums must hit p+1, 2p, and 2 on the
nose, otherwise the enumeration is reported as suspect rather than
returned.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .counting import aut_order, embed_count, is_isometric
from .errors import (
    CompletenessSuspect,
    KernelClassUnknown,
    PreconditionViolated,
)
from .lattices import ClassRep, TernaryLattice, canonical_key
from .local import in_genus_level, ordp, satisfies_condition_2_2
from .sublattices import (
    classify_points,
    hyperplane_module_basis,
    phi_family,
    watson_transform,
)
from .matrices import hnf_rows


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def good_odd_primes(det2: int, count: int = 2):
    """Smallest odd primes not dividing the doubled determinant."""
    out = []
    q = 3
    while len(out) < count:
        if _is_prime(q) and det2 % q:
            out.append(q)
        q += 2
    return out


def _refine_isotropic(lattice: TernaryLattice, v, q: int):
    """Lift a zero line mod q to a vector with value divisible by q^2."""
    val = int(lattice.quad(v))
    if val % q:
        raise PreconditionViolated("line is not isotropic")
    if val % (q * q) == 0:
        return tuple(v)
    g = lattice.gram2
    w = [sum(g[i][k] * v[k] for k in range(3)) % q for i in range(3)]
    j = next(i for i in range(3) if w[i])
    t = (-(val // q) * pow(w[j], -1, q)) % q
    out = list(v)
    out[j] += q * t
    assert int(lattice.quad(out)) % (q * q) == 0
    return tuple(out)


def neighbor(lattice: TernaryLattice, v, q: int) -> TernaryLattice:
    """q-neighbor along the isotropic line spanned by v."""
    v = _refine_isotropic(lattice, v, q)
    g = lattice.gram2
    w = tuple(sum(g[i][k] * v[k] for k in range(3)) % q for i in range(3))
    plane = hyperplane_module_basis(w, q)
    gens = [[q * x for x in row] for row in plane] + [list(v)]
    scaled = hnf_rows(gens)
    gsc = [[sum(scaled[a][i] * g[i][k] for i in range(3)) for k in range(3)]
           for a in range(3)]
    rows = []
    for a in range(3):
        row = []
        for b in range(3):
            num = sum(gsc[a][i] * scaled[b][i] for i in range(3))
            if num % (q * q):
                raise PreconditionViolated("neighbor Gram not integral")
            row.append(num // (q * q))
        rows.append(row)
    return TernaryLattice(rows)


def genus_classes(lattice: TernaryLattice):
    """All isometry classes in the genus, input class first."""
    primes = good_odd_primes(lattice.det2)
    reps = [lattice]
    queue = [lattice]
    while queue:
        cur = queue.pop(0)
        for q in primes:
            for v in classify_points(cur, q)[0]:
                cand = neighbor(cur, v, q)
                if not any(is_isometric(cand, r) for r in reps):
                    reps.append(cand)
                    queue.append(cand)
    return tuple(ClassRep(r, aut_order(r)) for r in reps)


_GENUS_CACHE: dict = {}


def genus_classes_cached(lattice: TernaryLattice):
    key = lattice.canonical_form()
    if key not in _GENUS_CACHE:
        _GENUS_CACHE[key] = genus_classes(lattice)
    return _GENUS_CACHE[key]


@dataclass(frozen=True)
class GenusLevel:
    base: TernaryLattice
    p: int
    m: int
    classes: tuple

    def lattices(self):
        return [c.lattice for c in self.classes]

    def mass(self) -> Fraction:
        return sum((Fraction(1, c.aut_order) for c in self.classes),
                   Fraction(0))


_TOWER_CACHE: dict = {}


def genus_tower(base: TernaryLattice, p: int, top: int):
    """Levels 0..top of the tower, each audited for completeness.

    Built levels are cached per (class of base, p), so deep towers are
    paid for once per process."""
    if ordp(base.disc4, p) != 0:
        raise PreconditionViolated(f"base is not unimodular at {p}")
    if not satisfies_condition_2_2(base, p):
        raise PreconditionViolated("base fails the splitting condition")
    key = (base.canonical_form(), p)
    levels = _TOWER_CACHE.get(key)
    if levels is None:
        ground = genus_classes(base)
        for rep in ground:
            if not in_genus_level(base, p, 0, rep.lattice):
                raise CompletenessSuspect("ground class leaves the genus")
        levels = [GenusLevel(base, p, 0, ground)]
        _TOWER_CACHE[key] = levels
    while len(levels) <= top:
        t = len(levels) - 1
        prev = levels[-1].classes
        seen = {}
        for rep in prev:
            for mem in phi_family(rep.lattice, p):
                k = canonical_key(mem.lattice)
                if k not in seen:
                    seen[k] = mem.lattice
        classes = tuple(ClassRep(c, aut_order(c)) for c in seen.values())
        _audit_level(prev, classes, p, t)
        levels.append(GenusLevel(base, p, t + 1, classes))
    return levels[:top + 1]


def _audit_level(prev, new, p: int, t: int):
    """Scaled-class counting sums from the splitting theory.

    The cokernel-filtered lift count equals the scaled embedding count one
    level down, so a single count matrix feeds both sums; either sum off
    target means a missed or duplicated class."""
    up_target = p + 1 if t == 0 else 2 * p
    counts = [[embed_count(rep.lattice.scale(p), cand.lattice)
               for cand in new] for rep in prev]
    for i, rep in enumerate(prev):
        total = sum((Fraction(counts[i][j], cand.aut_order)
                     for j, cand in enumerate(new)), Fraction(0))
        if total != up_target:
            raise CompletenessSuspect(
                f"lift sum {total} != {up_target} into level {t + 1}")
    for j, cand in enumerate(new):
        total = sum((Fraction(counts[i][j], rep.aut_order)
                     for i, rep in enumerate(prev)), Fraction(0))
        if total != 2:
            raise CompletenessSuspect(
                f"descent sum {total} != 2 from level {t + 1}")


def lambda_class(lattice: TernaryLattice, p: int) -> TernaryLattice:
    """Normalized kernel transform, the descent map of the tower."""
    return watson_transform(lattice, p)


def kernel_matched_classes(lattice: TernaryLattice, p: int, classes=None):
    """Genus classes of ``lattice`` whose kernel transform matches its own.

    The match is by abstract isometry of the transformed lattices."""
    if classes is None:
        classes = genus_classes_cached(lattice)
    target = lambda_class(lattice, p)
    hits = tuple(c for c in classes
                 if is_isometric(lambda_class(c.lattice, p), target))
    if not hits:
        raise KernelClassUnknown("no genus class shares the kernel type")
    return hits


def restricted_genus_count(n: int, lattice: TernaryLattice, p: int,
                           classes=None) -> Fraction:
    """Automorphism-weighted representation count, summed over the genus
    classes of ``lattice`` whose kernel transform matches its own.

    Plain weighted sum, no mass normalization."""
    from .counting import rep_count
    return sum((Fraction(rep_count(c.lattice, n), c.aut_order)
                for c in kernel_matched_classes(lattice, p, classes)),
               Fraction(0))
