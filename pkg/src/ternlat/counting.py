"""Vector enumeration, theta coefficients, embeddings and isometries.

The enumeration core works on an arbitrary positive definite symmetric
integer 3x3 matrix A and the integer values x^t A x.  For a lattice with
doubled Gram G this value is 2*Q(x), so representation counts of n read
off the slot 2n.  Everything is integer arithmetic; square roots only
ever appear through math.isqrt on nonnegative integers.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, isqrt

from .errors import DiscMismatch
from .lattices import RationalLattice, TernaryLattice, _greedy_reduce_t
from .matrices import Mat, smith_normal_form


def _root_interval(a, b, c):
    """Integer solutions of a x^2 + 2 b x + c <= 0 with a > 0.

    Returns (lo, hi) with the solution set exactly {lo..hi}; empty when
    lo > hi.  Exact: uses isqrt and a one-step endpoint correction.
    """
    disc = b * b - a * c
    if disc < 0:
        return 1, 0
    r = isqrt(disc)
    hi = (-b + r) // a
    if a * (hi + 1) ** 2 + 2 * b * (hi + 1) + c <= 0:
        hi += 1
    lo = -((b + r) // a)
    if a * (lo - 1) ** 2 + 2 * b * (lo - 1) + c <= 0:
        lo -= 1
    return lo, hi


def value_counts(a_rows, tmax: int):
    """counts[t] = #{x in Z^3 : x^t A x = t} for t = 0..tmax."""
    if tmax < 0:
        return []
    a11, a12, a13 = a_rows[0]
    _, a22, a23 = a_rows[1]
    a33 = a_rows[2][2]
    counts = [0] * (tmax + 1)
    # nested exact bounds from the principal minors
    m2 = a12 * a12 - a11 * a22          # negative
    b3 = a12 * a13 - a11 * a23
    g3 = a13 * a13 - a11 * a33          # negative
    c3 = b3 * b3 - m2 * g3              # equals -a11*det(A), negative
    k3 = (-m2) * a11 * tmax
    x3_hi = isqrt(k3 // (-c3)) + 1
    while c3 * x3_hi * x3_hi + k3 < 0:
        x3_hi -= 1
    for x3 in range(-x3_hi, x3_hi + 1):
        lo2, hi2 = _root_interval(-m2, -b3 * x3, g3 * x3 * x3 - a11 * tmax)
        for x2 in range(lo2, hi2 + 1):
            b1 = a12 * x2 + a13 * x3
            c1 = a22 * x2 * x2 + 2 * a23 * x2 * x3 + a33 * x3 * x3
            lo1, hi1 = _root_interval(a11, b1, c1 - tmax)
            if lo1 > hi1:
                continue
            val = a11 * lo1 * lo1 + 2 * b1 * lo1 + c1
            step = a11 * (2 * lo1 + 1) + 2 * b1
            for _ in range(lo1, hi1 + 1):
                counts[val] += 1
                val += step
                step += 2 * a11
    return counts


def vectors_with_value(a_rows, t: int):
    """All x in Z^3 with x^t A x = t (both signs included)."""
    if t < 0:
        return []
    if t == 0:
        return [(0, 0, 0)]
    out = []
    a11, a12, a13 = a_rows[0]
    _, a22, a23 = a_rows[1]
    a33 = a_rows[2][2]
    m2 = a12 * a12 - a11 * a22
    b3 = a12 * a13 - a11 * a23
    g3 = a13 * a13 - a11 * a33
    c3 = b3 * b3 - m2 * g3
    k3 = (-m2) * a11 * t
    x3_hi = isqrt(k3 // (-c3)) + 1
    while c3 * x3_hi * x3_hi + k3 < 0:
        x3_hi -= 1
    for x3 in range(-x3_hi, x3_hi + 1):
        lo2, hi2 = _root_interval(-m2, -b3 * x3, g3 * x3 * x3 - a11 * t)
        for x2 in range(lo2, hi2 + 1):
            b1 = a12 * x2 + a13 * x3
            c1 = a22 * x2 * x2 + 2 * a23 * x2 * x3 + a33 * x3 * x3
            lo1, hi1 = _root_interval(a11, b1, c1 - t)
            if lo1 > hi1:
                continue
            val = a11 * lo1 * lo1 + 2 * b1 * lo1 + c1
            step = a11 * (2 * lo1 + 1) + 2 * b1
            for x1 in range(lo1, hi1 + 1):
                if val == t:
                    out.append((x1, x2, x3))
                val += step
                step += 2 * a11
    return out


# ---- theta tables with a per-class growing cache ----

_THETA_CACHE: dict = {}


def theta_vector(lattice: TernaryLattice, nmax: int):
    """List [r(0), r(1), ..., r(nmax)] of representation numbers."""
    key = lattice.canonical_form()
    cached = _THETA_CACHE.get(key)
    if cached is None or len(cached) <= nmax:
        grow = max(nmax, 2 * (len(cached) - 1) if cached else 0, 16)
        counts = value_counts(key, 2 * grow)
        table = [counts[2 * n] for n in range(grow + 1)]
        _THETA_CACHE[key] = table
        cached = table
    return cached[: nmax + 1]


def rep_count(lattice: TernaryLattice, n: int) -> int:
    """r(n, L): number of lattice vectors of norm n."""
    if n < 0:
        return 0
    return theta_vector(lattice, n)[n]


def rep_count_q(lattice: TernaryLattice, n) -> int:
    """r(n, L) for rational n: zero off the integers."""
    n = Fraction(n)
    if n.denominator != 1:
        return 0
    return rep_count(lattice, int(n))


def theta_prefix(lattice: TernaryLattice, k: int):
    return tuple(theta_vector(lattice, k)[1:])


def vectors_of_norm(lattice: TernaryLattice, n: int):
    """All x with Q(x) = n, as coordinate triples."""
    if n < 0:
        return []
    return vectors_with_value(lattice.gram2, 2 * n)


# ---- embeddings, automorphisms, isometry ----

def _gram_entries(obj):
    if isinstance(obj, TernaryLattice):
        return [[Fraction(x) for x in row] for row in obj.gram2]
    if isinstance(obj, RationalLattice):
        return [list(row) for row in obj.gram2.rows]
    if isinstance(obj, Mat):
        return [list(row) for row in obj.rows]
    return [[Fraction(x) for x in row] for row in obj]


def _common_integral(src, dst):
    """Scale source/target Grams by one rational to integer matrices."""
    s = _gram_entries(src)
    d = _gram_entries(dst)
    den = 1
    for rows in (s, d):
        for row in rows:
            for x in row:
                den = den * x.denominator // gcd(den, x.denominator)
    num = 0
    for rows in (s, d):
        for row in rows:
            for x in row:
                num = gcd(num, int(x * den))
    if num == 0:
        raise ValueError("zero Gram matrix")
    si = [[int(x * den) // num for x in row] for row in s]
    di = [[int(x * den) // num for x in row] for row in d]
    return si, di


_REDUCE_CACHE: dict = {}
_VEC_CACHE: dict = {}


def _reduce_cached(rows):
    key = tuple(tuple(r) for r in rows)
    hit = _REDUCE_CACHE.get(key)
    if hit is None:
        hit = _greedy_reduce_t(key)
        _REDUCE_CACHE[key] = hit
    return hit


def _vectors_cached(red, t):
    key = (red, t)
    hit = _VEC_CACHE.get(key)
    if hit is None:
        hit = tuple(vectors_with_value(red, t))
        _VEC_CACHE[key] = hit
    return hit


def embeddings(src, dst, first_only: bool = False):
    """All integer matrices X with X^t G_dst X = G_src.

    Both Grams are reduced internally so the search boxes stay small for
    skewed bases; results are mapped back to the given coordinates.
    Columns are searched largest source value first, which prunes the
    backtracking sharply for lopsided forms.
    """
    s_raw, d = _common_integral(src, dst)
    red_d, tf_d = _reduce_cached(d)
    s, tf_s = _reduce_cached(s_raw)
    order = sorted(range(3), key=lambda i: -s[i][i])
    cands = []
    for i in order:
        vecs = [tuple(sum(tf_d[r][c] * y[c] for c in range(3))
                      for r in range(3))
                for y in _vectors_cached(red_d, s[i][i])]
        if not vecs:
            return []
        cands.append(vecs)
    d_mat = d
    results = []

    def dot(u, gv):
        return u[0] * gv[0] + u[1] * gv[1] + u[2] * gv[2]

    def gtimes(v):
        return tuple(sum(d_mat[r][c] * v[c] for c in range(3)) for r in range(3))

    gcache = [{id(v): gtimes(v) for v in cands[k]} for k in range(3)]
    chosen = [None, None, None]
    # embeddings of the reduced source convert back through its transform
    back = Mat(tf_s).inv()
    backcols = tuple(tuple(int(back[r, c]) for r in range(3)) for c in range(3))

    def emit():
        cols = [None, None, None]
        for pos, i in enumerate(order):
            cols[i] = chosen[pos]
        results.append(tuple(
            tuple(sum(cols[k][r] * backcols[j][k] for k in range(3))
                  for j in range(3))
            for r in range(3)))

    def place(k):
        for v in cands[k]:
            gv = gcache[k][id(v)]
            ok = True
            for m in range(k):
                if dot(chosen[m], gv) != s[order[m]][order[k]]:
                    ok = False
                    break
            if not ok:
                continue
            chosen[k] = v
            if k == 2:
                emit()
                if first_only:
                    return True
            else:
                if place(k + 1):
                    return True
        chosen[k] = None
        return False

    place(0)
    return results


_AUT_CACHE: dict = {}


def aut_order(lattice: TernaryLattice) -> int:
    """Order of the (finite) automorphism group O(L)."""
    key = lattice.canonical_form()
    cached = _AUT_CACHE.get(key)
    if cached is None:
        canon = TernaryLattice(key)
        cached = len(embeddings(canon, canon))
        _AUT_CACHE[key] = cached
    return cached


def is_isometric(a: TernaryLattice, b: TernaryLattice) -> bool:
    if a.det2 != b.det2:
        return False
    if a.canonical_form() == b.canonical_form():
        return True
    # prefix long enough to reach past both minima, else it separates nothing
    k = max(6, a.reduced_gram()[0][0] // 2 + 3, b.reduced_gram()[0][0] // 2 + 3)
    if theta_prefix(a, k) != theta_prefix(b, k):
        return False
    return bool(embeddings(a, b, first_only=True))


def embed_count(src, dst) -> int:
    """r(src, dst): number of representations of one lattice by another."""
    return len(embeddings(src, dst))


def tilde_rep_count(ell: TernaryLattice, lattice: TernaryLattice, p: int) -> int:
    """Embeddings of ell into L whose cokernel is (Z/p)^2.

    Requires disc(ell) = p^4 disc(L); embeddings with cyclic cokernel
    (Smith shape (1, 1, p^2)) are excluded by the Smith filter.
    """
    if ell.det2 != p ** 4 * lattice.det2:
        raise DiscMismatch("tilde count needs disc(ell) = p^4 disc(L)")
    hits = 0
    for x in embeddings(ell, lattice):
        if smith_normal_form(Mat(x)) == (1, p, p):
            hits += 1
    return hits


def clear_theta_caches():
    _THETA_CACHE.clear()
    _AUT_CACHE.clear()
