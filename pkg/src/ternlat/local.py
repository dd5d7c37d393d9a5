"""Local structure of ternary lattices at a prime.

Jordan decompositions are computed from the doubled Gram by exact Schur
complements over Q, tracking p-valuations, so no working-precision cap
is involved.  Scale exponents refer to the true bilinear form: at p = 2
a doubled-Gram-unimodular plane has scale exponent -1, the (1/2)Z_2-
modular case.  At odd primes the doubled and true scales agree.

Binary even-type blocks at 2 are classified by the determinant of the
unimodular rescale: -1 mod 8 gives the hyperbolic plane, 3 mod 8 the
anisotropic even plane.  Symbol comparison at 2 follows the classical
compartment/train calculus: oddities fuse along chains of adjacent odd
scales, and a sign walk inside one train flips two signs while moving
every touched compartment's oddity by 4.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import DiscMismatch, PreconditionViolated, UnsupportedLocalShape
from .lattices import TernaryLattice


def legendre(a: int, p: int) -> int:
    """Legendre symbol (a/p) for an odd prime p."""
    a %= p
    if a == 0:
        return 0
    t = pow(a, (p - 1) // 2, p)
    return 1 if t == 1 else -1


def valuation(x, p: int) -> int:
    """p-adic valuation of a nonzero int or Fraction."""
    f = Fraction(x)
    if f == 0:
        raise ValueError("valuation of zero")
    v = 0
    n = f.numerator
    while n % p == 0:
        n //= p
        v += 1
    d = f.denominator
    while d % p == 0:
        d //= p
        v -= 1
    return v


def _unit_part(x, p: int):
    return Fraction(x) / Fraction(p) ** valuation(x, p)


def _unit_mod8(x) -> int:
    f = Fraction(x)
    num = f.numerator % 8
    den = f.denominator % 8
    inv = {1: 1, 3: 3, 5: 5, 7: 7}[den]  # odd residues are self-inverse mod 8
    return (num * inv) % 8


@dataclass(frozen=True)
class JordanComponent:
    """One block of a Jordan splitting.

    ``det_class`` is the Legendre class (+-1) of the unit determinant at
    odd p, and the unit determinant mod 8 at p = 2.  ``oddity`` is the
    mod-8 trace of a diagonal block at 2, zero elsewhere.
    """

    scale_exp: int
    rank: int
    det_class: int
    shape: str  # "diagonal" | "hyperbolic-plane" | "odd-plane"
    oddity: int = 0


@dataclass(frozen=True)
class LocalSymbol:
    p: int
    components: tuple


def _min_valuation(work, idx, p):
    best = None
    for i in idx:
        for j in idx:
            if work[i][j] != 0:
                v = valuation(work[i][j], p)
                if best is None or v < best:
                    best = v
    return best


def _schur_remove(work, idx, drop):
    """Schur complement of the principal block on ``drop`` indices."""
    keep = [i for i in idx if i not in drop]
    if len(drop) == 1:
        (i,) = drop
        piv = work[i][i]
        for r in keep:
            for c in keep:
                work[r][c] -= work[r][i] * work[i][c] / piv
    else:
        i, j = drop
        a, b, c = work[i][i], work[i][j], work[j][j]
        det = a * c - b * b
        for r in keep:
            ri, rj = work[r][i], work[r][j]
            for s in keep:
                si, sj = work[i][s], work[j][s]
                x = (c * ri - b * rj) / det
                y = (a * rj - b * ri) / det
                work[r][s] -= x * si + y * sj
    return keep


def _raw_blocks(gram_rows, p):
    """Greedy Jordan splitting; yields ("unary", e, value) and
    ("plane", e, det) with e the doubled-Gram scale exponent."""
    work = [[Fraction(x) for x in row] for row in gram_rows]
    idx = list(range(len(work)))
    blocks = []
    while idx:
        e = _min_valuation(work, idx, p)
        diag = next((i for i in idx if work[i][i] != 0
                     and valuation(work[i][i], p) == e), None)
        if diag is None and p != 2:
            # symmetrize an off-diagonal minimum onto the diagonal
            i, j = next((i, j) for i in idx for j in idx if i != j
                        and work[i][j] != 0 and valuation(work[i][j], p) == e)
            for sign in (1, -1):
                cand = work[i][i] + 2 * sign * work[i][j] + work[j][j]
                if cand != 0 and valuation(cand, p) == e:
                    for c in idx:
                        work[i][c] += sign * work[j][c]
                    for r in idx:
                        work[r][i] += sign * work[r][j]
                    break
            diag = i
        if diag is not None:
            blocks.append(("unary", e, work[diag][diag]))
            idx = _schur_remove(work, idx, (diag,))
            continue
        # p = 2, minimum met only off the diagonal: split an even plane
        i, j = next((i, j) for i in idx for j in idx if i != j
                    and work[i][j] != 0 and valuation(work[i][j], p) == e)
        det = work[i][i] * work[j][j] - work[i][j] ** 2
        blocks.append(("plane", e, det))
        idx = _schur_remove(work, idx, (i, j))
    return blocks


def jordan_symbol(gram_rows, p: int) -> LocalSymbol:
    """Jordan splitting of an arbitrary nonsingular symmetric matrix,
    interpreted as a doubled Gram."""
    blocks = _raw_blocks(gram_rows, p)
    comps = []
    if p == 2:
        by_scale: dict = {}
        for kind, e, val in blocks:
            if kind == "unary":
                unit = _unit_mod8(_unit_part(val, 2))
                slot = by_scale.setdefault(e - 1, [0, 1, 0])
                slot[0] += 1
                slot[1] = (slot[1] * unit) % 8
                slot[2] = (slot[2] + unit) % 8
            else:
                det_unit = _unit_mod8(Fraction(val) / Fraction(4) ** e)
                if det_unit == 7:
                    shape = "hyperbolic-plane"
                elif det_unit == 3:
                    shape = "odd-plane"
                else:
                    raise UnsupportedLocalShape(
                        f"even plane with determinant {det_unit} mod 8")
                comps.append(JordanComponent(e - 1, 2, det_unit, shape))
        for e, (rank, det8, oddity) in by_scale.items():
            comps.append(JordanComponent(e, rank, det8, "diagonal", oddity))
    else:
        by_scale = {}
        for kind, e, val in blocks:
            unit = _unit_part(val, p)
            slot = by_scale.setdefault(e, [0, 1])
            slot[0] += 1
            slot[1] = slot[1] * legendre(unit.numerator * unit.denominator, p)
        for e, (rank, eps) in by_scale.items():
            comps.append(JordanComponent(e, rank, eps, "diagonal"))
    comps.sort(key=lambda c: (c.scale_exp, c.shape))
    return LocalSymbol(p, tuple(comps))


def jordan_decompose(lattice: TernaryLattice, p: int) -> LocalSymbol:
    return jordan_symbol(lattice.gram2, p)


# ---- 2-adic symbol comparison ----

def _profile2(symbol: LocalSymbol):
    """Aggregate per scale: (scale, rank, type_I, eps, det8, oddity)."""
    agg: dict = {}
    for c in symbol.components:
        slot = agg.setdefault(c.scale_exp, [0, False, 1, 0])
        slot[0] += c.rank
        if c.shape == "diagonal":
            slot[1] = True
            slot[3] = (slot[3] + c.oddity) % 8
        slot[2] = (slot[2] * c.det_class) % 8
    out = []
    for e in sorted(agg):
        rank, type_i, det8, oddity = agg[e]
        eps = 1 if det8 in (1, 7) else -1
        out.append((e, rank, type_i, eps, det8, oddity))
    return tuple(out)


def _compartments(profile):
    """Indices grouped into maximal chains of adjacent odd-type scales."""
    comps = []
    current = []
    for k, entry in enumerate(profile):
        e, _, type_i, *_ = entry
        if type_i and current and profile[current[-1]][0] == e - 1:
            current.append(k)
        elif type_i:
            if current:
                comps.append(current)
            current = [k]
        else:
            if current:
                comps.append(current)
            current = []
    if current:
        comps.append(current)
    return comps


def _trains(profile):
    # a lone empty scale does not break a train, two in a row do
    trains = []
    current = []
    for k, entry in enumerate(profile):
        if current and profile[current[-1]][0] >= entry[0] - 2:
            current.append(k)
        else:
            if current:
                trains.append(current)
            current = [k]
    if current:
        trains.append(current)
    return trains


def _walk_states(profile):
    """All (eps-vector, fused-oddity-vector) states reachable by walks."""
    comps = _compartments(profile)
    trains = _trains(profile)
    comp_of = {}
    for ci, comp in enumerate(comps):
        for k in comp:
            comp_of[k] = ci
    eps0 = tuple(entry[3] for entry in profile)
    odd0 = tuple(sum(profile[k][5] for k in comp) % 8 for comp in comps)
    seen = {(eps0, odd0)}
    frontier = [(eps0, odd0)]
    pairs = []
    for train in trains:
        for a in range(len(train)):
            for b in range(a + 1, len(train)):
                pairs.append((train[a], train[b]))
    while frontier:
        eps, odd = frontier.pop()
        for i, j in pairs:
            new_eps = list(eps)
            new_eps[i] = -new_eps[i]
            new_eps[j] = -new_eps[j]
            new_odd = list(odd)
            touched = {comp_of[k] for k in (i, j) if k in comp_of}
            for ci in touched:
                new_odd[ci] = (new_odd[ci] + 4) % 8
            state = (tuple(new_eps), tuple(new_odd))
            if state not in seen:
                seen.add(state)
                frontier.append(state)
    return seen


def _profiles_equivalent(pa, pb) -> bool:
    if [x[:3] for x in pa] != [x[:3] for x in pb]:
        return False
    comps_b = _compartments(pb)
    eps_b = tuple(x[3] for x in pb)
    odd_b = tuple(sum(pb[k][5] for k in comp) % 8 for comp in comps_b)
    return (eps_b, odd_b) in _walk_states(pa)


def two_adic_equivalent(sym_a: LocalSymbol, sym_b: LocalSymbol) -> bool:
    pa, pb = _profile2(sym_a), _profile2(sym_b)
    if sum(x[1] for x in pa) > 3:
        raise UnsupportedLocalShape("rank exceeds the ternary catalogue")
    return _profiles_equivalent(pa, pb)


def zp_isometric(a: TernaryLattice, b: TernaryLattice, p: int) -> bool:
    """p-adic isometry, comparing local data only; discs may differ
    away from p."""
    if p == 2:
        return two_adic_equivalent(jordan_decompose(a, 2), jordan_decompose(b, 2))
    sa = jordan_decompose(a, p)
    sb = jordan_decompose(b, p)
    key = lambda s: [(c.scale_exp, c.rank, c.det_class) for c in s.components]
    return key(sa) == key(sb)


def locally_isometric(a: TernaryLattice, b: TernaryLattice, p: int) -> bool:
    """Are two lattices of equal discriminant isometric over Z_p?"""
    if a.det2 != b.det2:
        raise DiscMismatch(f"disc {a.disc} vs {b.disc}")
    return zp_isometric(a, b, p)


# ---- hypotheses of the transformation machinery ----

def satisfies_condition_2_2(lattice: TernaryLattice, p: int) -> bool:
    """Does the minimal-scale component allow the splitting machinery?

    Requires a nonzero isotropic component of scale (1/2)Z_p.  At odd p
    that is a doubled-Gram-unimodular part of rank 2 (hyperbolic) or 3;
    at 2 a hyperbolic plane, or the anisotropic even plane paired with a
    unit diagonal entry, which re-expresses hyperbolically.
    """
    sym = jordan_decompose(lattice, p)
    comps = sym.components
    if p == 2:
        plane = next((c for c in comps if c.scale_exp == -1), None)
        if plane is None or plane.shape == "diagonal":
            return False
        if plane.shape == "hyperbolic-plane":
            return True
        return any(c.shape == "diagonal" and c.scale_exp == 0 for c in comps)
    zero = next((c for c in comps if c.scale_exp == 0), None)
    if zero is None or zero.rank == 1:
        return False
    if zero.rank == 3:
        return True
    return zero.det_class == legendre(-1, p)


def unimodular_part_anisotropic(lattice: TernaryLattice, p: int) -> bool:
    """Does the scale-zero part represent zero only trivially over Z_p?

    At 2 only diagonal-at-2 lattices are handled; the half-scale plane
    shapes are outside what the divisibility identity is run on.
    """
    comps = jordan_decompose(lattice, p).components
    if p != 2:
        zero = next((c for c in comps if c.scale_exp == 0), None)
        if zero is None or zero.rank == 1:
            return True
        if zero.rank == 3:
            return False
        return zero.det_class != legendre(-1, p)
    if any(c.scale_exp == -1 for c in comps):
        raise UnsupportedLocalShape("half-scale plane at 2")
    units = [_unit_mod8(_unit_part(val, 2))
             for kind, e, val in _raw_blocks(lattice.gram2, 2)
             if kind == "unary" and e == 1]
    if len(units) <= 1:
        return True
    if len(units) == 2:
        return (-units[0] * units[1]) % 8 != 1
    # three units: isotropy needs u_i + u_j + u_k*t to vanish mod 8
    # with t in {0, 1, 4}
    for i in range(3):
        for j in range(3):
            if i == j:
                continue
            k = 3 - i - j
            for t in (0, 1, 4):
                if (units[i] + units[j] + units[k] * t) % 8 == 0:
                    return False
    return True


def ordp(n: int, p: int) -> int:
    if n == 0:
        raise ValueError("ordp of zero")
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def in_genus_level(base: TernaryLattice, p: int, m: int,
                   candidate: TernaryLattice) -> bool:
    """Membership of ``candidate`` in the level-m genus over ``base``.

    The base must be unimodular at p and satisfy the splitting
    condition; level-m members share disc p^m * disc(base), carry the
    hyperbolic-plus-p^m structure at p, and match the scaled base at
    every other place.
    """
    if m < 0:
        raise PreconditionViolated("level must be nonnegative")
    if ordp(base.disc4, p) != 0:
        raise PreconditionViolated(f"base is not unimodular at {p}")
    if not satisfies_condition_2_2(base, p):
        raise PreconditionViolated("base fails the splitting condition")
    if candidate.det2 != p ** m * base.det2:
        return False
    reference = base.scale(p ** m)
    # structure at p itself
    if not has_level_shape_at_p(candidate, p, m):
        return False
    # structure at every other relevant prime; primes away from the
    # determinant carry no information once discriminants agree
    for q in _odd_prime_divisors(candidate.det2):
        if q != p and not zp_isometric(candidate, reference, q):
            return False
    if p != 2 and not zp_isometric(candidate, reference, 2):
        return False
    return True


def _odd_prime_divisors(n):
    n = abs(n)
    out = []
    q = 3
    while q * q <= n:
        if n % q == 0:
            out.append(q)
            while n % q == 0:
                n //= q
        q += 2
    if n > 2 and n % 2:
        out.append(n)
    return out


def has_level_shape_at_p(lattice: TernaryLattice, p: int, m: int) -> bool:
    """Split shape at p: isotropic plane at scale zero, unit at scale m.

    Intrinsic in ``lattice``: the unit class of the top entry is forced
    by the discriminant, so no base form is consulted.
    """
    if p == 2:
        eps8 = _unit_mod8(Fraction(-lattice.disc4, 2 ** m))
        plane = (-1, 2, False, 1, 7, 0)
        unary = (m, 1, True, 1 if eps8 in (1, 7) else -1, eps8, eps8)
        have = _profile2(jordan_decompose(lattice, 2))
        return _profiles_equivalent(have, (plane, unary))
    comps = jordan_decompose(lattice, p).components
    if m == 0:
        return [(c.scale_exp, c.rank) for c in comps] == [(0, 3)]
    return ([(c.scale_exp, c.rank) for c in comps] == [(0, 2), (m, 1)]
            and comps[0].det_class == legendre(-1, p))


def is_split_level_shape(lattice: TernaryLattice, p: int) -> bool:
    """Level read off from the discriminant, then the shape test."""
    return has_level_shape_at_p(lattice, p, ordp(lattice.disc4, p))
