"""Exact verification of the representation-number identities.

Every check runs over integer ranges with Fraction arithmetic and
reports pass/fail per instance; nothing here is approximate.  The
verify_* functions mirror the CLI check ids, the check_* functions are
library-level consistency sweeps used by the test suite.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, isqrt

from .counting import (
    aut_order,
    embed_count,
    is_isometric,
    rep_count,
    tilde_rep_count,
)
from .errors import (
    NonIntegralScale,
    PreconditionViolated,
    StructureError,
    WrongType,
)
from .graphs import (
    bipartition,
    build_graph,
    classify_type,
    components,
    anzahlmatrix,
    n_matrix,
    neighbor_count_matrix,
)
from .lattices import TernaryLattice
from .local import (
    legendre,
    ordp,
    satisfies_condition_2_2,
    unimodular_part_anisotropic,
)
from .matrices import Mat, matrix_rank
from .sublattices import (
    bilinear_integral_sublattice,
    classify_points,
    gamma_half_pair,
    omega_family,
    psi_family,
    watson_kernel,
)
from .towers import (
    genus_classes_cached,
    genus_tower,
    lambda_class,
    restricted_genus_count,
)

MAX_RECORDED_FAILURES = 32


def _now_ms() -> int:
    return time.monotonic_ns() // 1_000_000


@dataclass(frozen=True)
class VerificationReport:
    identity: str
    params: tuple
    checked: int
    failures: tuple
    wall_ms: int

    @property
    def passed(self) -> bool:
        return not self.failures

    @property
    def first_counterexample(self):
        return self.failures[0] if self.failures else None

    def line(self) -> str:
        head = "PASS" if self.passed else "FAIL"
        args = " ".join("{}={}".format(k, v) for k, v in self.params)
        tail = ""
        if self.failures:
            where, lhs, rhs = self.failures[0]
            tail = "  first at {}: {} != {}".format(where, lhs, rhs)
        return "{} {} [{}] ({} checks, {} ms){}".format(
            head, self.identity, args, self.checked, self.wall_ms, tail)

    def to_dict(self) -> dict:
        return {
            "identity": self.identity,
            "params": {k: v for k, v in self.params},
            "checked": self.checked,
            "passed": self.passed,
            "failures": [list(f) for f in self.failures],
            "wall_ms": self.wall_ms,
        }


def form_tag(lattice: TernaryLattice) -> str:
    g = lattice.gram2
    if all(g[i][j] == 0 for i in range(3) for j in range(3) if i != j):
        return "diag({},{},{})".format(*(g[i][i] // 2 for i in range(3)))
    return "gram2=" + ";".join(",".join(str(x) for x in row) for row in g)


class _Recorder:
    """Collects check outcomes and freezes them into a report."""

    def __init__(self, identity, params):
        self.identity = identity
        self.params = tuple(params)
        self.t0 = _now_ms()
        self.checked = 0
        self.failures = []

    def expect(self, where, lhs, rhs):
        self.checked += 1
        if lhs != rhs:
            if len(self.failures) < MAX_RECORDED_FAILURES:
                self.failures.append((str(where), str(lhs), str(rhs)))

    def expect_true(self, where, flag, detail=""):
        self.checked += 1
        if not flag:
            if len(self.failures) < MAX_RECORDED_FAILURES:
                self.failures.append((str(where), detail or "false", "true"))

    def report(self) -> VerificationReport:
        return VerificationReport(self.identity, self.params, self.checked,
                                  tuple(self.failures), _now_ms() - self.t0)


def _r_scaled(lattice: TernaryLattice, n: int, p: int) -> int:
    """r(n, L^p): nonzero only when p divides n."""
    return rep_count(lattice, n // p) if n % p == 0 else 0


def _r_div(lattice: TernaryLattice, n: int, d: int) -> int:
    """r(n/d, L) with the convention that fractional n/d contributes 0."""
    return rep_count(lattice, n // d) if n % d == 0 else 0


def _rvec(class_reps, idxs, n: int):
    return tuple(Fraction(rep_count(class_reps[i].lattice, n),
                          class_reps[i].aut_order) for i in idxs)


def _rvec_scaled(class_reps, idxs, n: int, p: int):
    return tuple(Fraction(_r_scaled(class_reps[i].lattice, n, p),
                          class_reps[i].aut_order) for i in idxs)


def _vadd(a, b):
    return tuple(x + y for x, y in zip(a, b))


def _vscale(c, v):
    c = Fraction(c)
    return tuple(c * x for x in v)


def _fmat(rows) -> Mat:
    return Mat([[Fraction(x) for x in row] for row in rows])


# ---- tower plumbing shared by the graph-level identities ---------------


def _component_blocks(graph):
    """Component-restricted incidence data.

    Yields (vertex idxs, edge idxs, M block, N block); every edge of a
    component has both endpoints inside it, so the blocks are exact.
    """
    nm = n_matrix(graph)
    out = []
    for comp in components(graph):
        eidx = tuple(j for j, (a, _) in enumerate(graph.endpoints)
                     if a in comp)
        mm_block = [[graph.incidence[i][j] for j in eidx] for i in comp]
        nm_block = [[nm[i][j] for j in eidx] for i in comp]
        out.append((comp, eidx, mm_block, nm_block))
    return out


def _graph_at(base, p, m):
    tower = genus_tower(base, p, m + 1)
    graph = build_graph(tower[m], tower[m + 1])
    if m == 0:
        ground = graph
    else:
        ground = build_graph(tower[0], tower[1])
    gtype = classify_type(ground)
    mtype = classify_type(graph, ground_type=gtype)
    return tower, graph, mtype


def _side_weight(graph, side) -> Fraction:
    return sum((Fraction(1, graph.vertices[i].aut_order) for i in side),
               Fraction(0))


def _extended_block(graph, comp, eidx, nm_block):
    """N block with the signed reciprocal-mass column appended."""
    sides = bipartition(graph, comp)
    if sides is None:
        raise WrongType("component is not two-colorable")
    w0 = _side_weight(graph, sides[0])
    w1 = _side_weight(graph, sides[1])
    if w0 != w1:
        raise StructureError("bipartition sides carry unequal mass")
    eps = 1 / w0
    rows = []
    for pos, i in enumerate(comp):
        tail = eps if i in sides[0] else -eps
        rows.append(tuple(nm_block[pos]) + (tail,))
    return sides, eps, rows


def _spinor_average(graph, side, n: int) -> Fraction:
    w = _side_weight(graph, side)
    tot = sum((Fraction(rep_count(graph.vertices[i].lattice, n),
                        graph.vertices[i].aut_order) for i in side),
              Fraction(0))
    return tot / w


# ---- zero-class splitting identities -----------------------------------


def _eps_matches(n: int, p: int, eps) -> bool:
    if p == 2:
        return (n % 2 == 0) if eps == 0 else (n % 2 == 1)
    return legendre(n, p) == eps


def verify_lemma_2_6(lattice: TernaryLattice, p: int, eps=None,
                     n_max: int = 200) -> VerificationReport:
    """Value-class splitting: summing counts over one zero-class family
    overcounts the deep sublattice a known number of times."""
    if not satisfies_condition_2_2(lattice, p):
        raise PreconditionViolated("split plane at the prime is required")
    if eps is None:
        eps_list = [0, "*"] if p == 2 else [0, 1, -1]
    else:
        eps_list = [eps]
    rec = _Recorder("lemma2.6", [("form", form_tag(lattice)), ("p", p),
                                 ("n_max", n_max)])
    for e in eps_list:
        members = [m.lattice for m in omega_family(lattice, p, e)]
        over = len(members) - 1
        for n in range(1, n_max + 1):
            if not _eps_matches(n, p, e):
                continue
            total = sum(rep_count(m, n) for m in members)
            deep = _r_div(lattice, n, p * p)
            rec.expect("eps={} n={}".format(e, n),
                       rep_count(lattice, n), total - over * deep)
    return rec.report()


def check_point_class_sizes(lattice: TernaryLattice, p: int
                            ) -> VerificationReport:
    """Projective point counts per value class against the closed forms."""
    if not satisfies_condition_2_2(lattice, p):
        raise PreconditionViolated("split plane at the prime is required")
    rec = _Recorder("point-classes", [("form", form_tag(lattice)),
                                      ("p", p)])
    sizes = {k: len(v) for k, v in classify_points(lattice, p).items()}
    unimodular = ordp(lattice.disc4, p) == 0
    if p == 2:
        want = {0: 3, "*": 4} if unimodular else {0: 5, "*": 2}
    elif unimodular:
        inv4 = pow(4, -1, p)
        eta = legendre((-lattice.disc4 * inv4) % p, p)
        want = {0: p + 1,
                1: p * (p + eta) // 2,
                -1: p * (p - eta) // 2}
    else:
        want = {0: 2 * p + 1, 1: p * (p - 1) // 2, -1: p * (p - 1) // 2}
    for key in sorted(want, key=str):
        rec.expect("class {}".format(key), sizes.get(key), want[key])
    rec.expect("total", sum(sizes.values()), p * p + p + 1)
    return rec.report()


# ---- scaled-count bookkeeping checks -----------------------------------


def _dual_pair_integral(ell: TernaryLattice, lattice: TernaryLattice,
                        p: int):
    """Both duals, one scaled by p^2, brought to a common integral scale."""
    a = ell.dual().scale(p * p)
    b = lattice.dual()
    denoms = [x.denominator for m in (a.gram2, b.gram2)
              for row in m.rows for x in row]
    s = 1
    for d in denoms:
        s = s * d // gcd(s, d)
    for _ in range(4):
        try:
            return (a.scale(s).as_integral(), b.scale(s).as_integral())
        except (NonIntegralScale, ValueError):
            s *= 2
    raise StructureError("could not integralize the dual pair")


def check_tilde_routes(ell: TernaryLattice, lattice: TernaryLattice,
                       p: int) -> VerificationReport:
    """The cokernel-filtered embedding count agrees with both scaled
    reformulations (direct and through duals)."""
    rec = _Recorder("tilde-routes", [("ell", form_tag(ell)),
                                     ("form", form_tag(lattice)),
                                     ("p", p)])
    direct = tilde_rep_count(ell, lattice, p)
    via_scaled = embed_count(lattice.scale(p * p), ell)
    da, db = _dual_pair_integral(ell, lattice, p)
    via_dual = embed_count(da, db)
    rec.expect("scaled-route", direct, via_scaled)
    rec.expect("dual-route", direct, via_dual)
    return rec.report()


def check_scaled_embed_symmetry(base: TernaryLattice, p: int
                                ) -> VerificationReport:
    """Across one ground tower step the two scaled counts coincide."""
    tower = genus_tower(base, p, 1)
    rec = _Recorder("scaled-symmetry", [("form", form_tag(base)),
                                        ("p", p)])
    for i, t in enumerate(tower[0].classes):
        for j, s in enumerate(tower[1].classes):
            up = embed_count(t.lattice.scale(p), s.lattice)
            down = embed_count(s.lattice.scale(p), t.lattice)
            rec.expect("T{} S{}".format(i, j), up, down)
    return rec.report()


def check_tower_completeness(base: TernaryLattice, p: int, top: int
                             ) -> VerificationReport:
    """The two weighted lift/descend sums over adjacent levels."""
    tower = genus_tower(base, p, top)
    rec = _Recorder("tower-sums", [("form", form_tag(base)), ("p", p),
                                   ("top", top)])
    for t in range(top):
        lower, upper = tower[t], tower[t + 1]
        want_up = p + 1 if t == 0 else 2 * p
        for i, low in enumerate(lower.classes):
            s = sum(Fraction(tilde_rep_count(cand.lattice.scale(p),
                                             low.lattice, p),
                             cand.aut_order)
                    for cand in upper.classes)
            rec.expect("lift t={} T{}".format(t, i), s, Fraction(want_up))
        for j, cand in enumerate(upper.classes):
            s = sum(Fraction(embed_count(low.lattice.scale(p),
                                         cand.lattice),
                             low.aut_order)
                    for low in lower.classes)
            rec.expect("descend t={} S{}".format(t, j), s, Fraction(2))
    return rec.report()


# ---- restricted genus counts -------------------------------------------


def _require_kernel_context(lattice: TernaryLattice, p: int, min_ord: int):
    if not satisfies_condition_2_2(lattice, p):
        raise PreconditionViolated("split plane at the prime is required")
    if ordp(lattice.disc4, p) < min_ord:
        raise PreconditionViolated(
            "discriminant valuation at the prime is too small")


def verify_prop_2_10(lattice: TernaryLattice, p: int,
                     n_max: int = 200) -> VerificationReport:
    """Restricted genus count at arguments prime to p, against the
    kernel-quotient closed forms."""
    _require_kernel_context(lattice, p, 2)
    rec = _Recorder("prop2.10", [("form", form_tag(lattice)), ("p", p),
                                 ("n_max", n_max)])
    classes = genus_classes_cached(lattice)
    kq = lambda_class(lattice, p)
    ok = aut_order(kq)
    deep = ordp(lattice.disc4, p) >= 3
    pair_kernel = None
    if not deep and p == 2:
        pair_kernel = bilinear_integral_sublattice(kq).lattice
    for n in range(1, n_max + 1):
        if n % p == 0:
            continue
        got = restricted_genus_count(n, lattice, p, classes)
        if deep:
            want = Fraction(p * rep_count(kq, n), ok)
        elif p == 2:
            want = Fraction(rep_count(kq, n) - rep_count(pair_kernel, n),
                            ok)
        else:
            inv4 = pow(4, -1, p)
            sym = legendre((-n * kq.disc4 * inv4) % p, p)
            want = Fraction((p - sym) * rep_count(kq, n), 2 * ok)
        rec.expect("n={}".format(n), got, want)
    return rec.report()


def verify_prop_2_11(lattice: TernaryLattice, p: int,
                     n_max: int = 200) -> VerificationReport:
    """Restricted genus count at arguments divisible by p."""
    _require_kernel_context(lattice, p, 2)
    rec = _Recorder("prop2.11", [("form", form_tag(lattice)), ("p", p),
                                 ("n_max", n_max)])
    classes = genus_classes_cached(lattice)
    kq = lambda_class(lattice, p)
    ok = aut_order(kq)
    deep = ordp(lattice.disc4, p) >= 3
    kq_kernel = watson_kernel(kq, p).lattice if deep else None
    for n in range(p, n_max + 1, p):
        got = restricted_genus_count(n, lattice, p, classes)
        inner = _r_div(kq, n, p * p)
        if deep:
            want = (Fraction(p * rep_count(kq, n), ok)
                    + Fraction(p * p * inner, ok)
                    - Fraction(p * rep_count(kq_kernel, n), ok))
        else:
            want = (Fraction(p * rep_count(kq, n), ok)
                    + Fraction(p * (p - 1) * inner, 2 * ok))
        rec.expect("n={}".format(n), got, want)
    return rec.report()


# ---- one-step recursions across the tower ------------------------------


def verify_props_4_1_4_2(base: TernaryLattice, p: int, m: int = 0,
                         n_max: int = 200) -> VerificationReport:
    """Both one-step recursions between adjacent tower levels."""
    tower = genus_tower(base, p, m + 1)
    lower, upper = tower[m], tower[m + 1]
    rec = _Recorder("props4.1-4.2", [("form", form_tag(base)), ("p", p),
                                     ("m", m), ("n_max", n_max)])
    for j, s in enumerate(upper.classes):
        kern = watson_kernel(s.lattice, p).lattice
        weights = [embed_count(t.lattice.scale(p), s.lattice)
                   for t in lower.classes]
        for n in range(0, n_max + 1):
            total = sum(Fraction(w * rep_count(t.lattice, n), t.aut_order)
                        for w, t in zip(weights, lower.classes))
            rec.expect("down S{} n={}".format(j, n),
                       Fraction(rep_count(s.lattice, p * n)),
                       total - rep_count(kern, p * n))
    for i, t in enumerate(lower.classes):
        if m == 0:
            weights = [embed_count(s.lattice.scale(p), t.lattice)
                       for s in upper.classes]
            kern = None
        else:
            weights = [tilde_rep_count(s.lattice.scale(p), t.lattice, p)
                       for s in upper.classes]
            kern = watson_kernel(t.lattice, p).lattice
        for n in range(0, n_max + 1):
            total = sum(Fraction(w * rep_count(s.lattice, n), s.aut_order)
                        for w, s in zip(weights, upper.classes))
            scaled = _r_scaled(t.lattice, n, p)
            if m == 0:
                want = total - p * scaled
            else:
                want = total + rep_count(kern, p * n) - 2 * p * scaled
            rec.expect("up T{} n={}".format(i, n),
                       Fraction(rep_count(t.lattice, p * n)), want)
    return rec.report()


def verify_prop_3_7(base: TernaryLattice, p: int) -> VerificationReport:
    """Neighbor-step matrix against the incidence product, with the
    neighbor matrix itself computed along two routes."""
    tower = genus_tower(base, p, 1)
    graph = build_graph(tower[0], tower[1])
    rec = _Recorder("prop3.7", [("form", form_tag(base)), ("p", p)])
    pi = anzahlmatrix(tower[0], p)
    pi_walk = neighbor_count_matrix(tower[0], p)
    h = len(tower[0].classes)
    for i in range(h):
        for j in range(h):
            rec.expect("routes {} {}".format(i, j), pi[i][j],
                       pi_walk[i][j])
    prod = _fmat(graph.incidence) * _fmat(n_matrix(graph)).t
    for i in range(h):
        for j in range(h):
            want = Fraction(pi[i][j]) + (p + 1 if i == j else 0)
            rec.expect("product {} {}".format(i, j), prod[i, j], want)
    return rec.report()


# ---- ground-level spinor identities ------------------------------------


def verify_thm_4_3(base: TernaryLattice, p: int,
                   n_max: int = 200) -> VerificationReport:
    """Ground-level scaled-class identity on a non-split class graph."""
    tower, graph, mtype = _graph_at(base, p, 0)
    if mtype == "E-type":
        raise WrongType("class graph splits; the split-form check applies")
    rec = _Recorder("thm4.3", [("form", form_tag(base)), ("p", p),
                               ("n_max", n_max)])
    for comp, eidx, mm, nm in _component_blocks(graph):
        mmat, nmat = _fmat(mm), _fmat(nm)
        zmat = (mmat * nmat.t).inv() * mmat
        for n in range(1, n_max + 1):
            r_tp = _rvec_scaled(graph.vertices, comp, n, p)
            rs_n = _rvec(graph.edges, eidx, n)
            rs_p2 = _rvec(graph.edges, eidx, p * p * n)
            lhs = _vscale(p, r_tp)
            rhs = tuple(x - y for x, y in zip(
                mmat.apply(rs_n), zmat.apply(_vadd(rs_p2, rs_n))))
            rec.expect("comp{} n={}".format(comp[0], n), lhs, rhs)
    return rec.report()


def verify_thm_4_5(base: TernaryLattice, p: int,
                   n_max: int = 200) -> VerificationReport:
    """Ground-level identity on a split class graph, via the extended
    incidence system with the signed mass column."""
    tower, graph, mtype = _graph_at(base, p, 0)
    if mtype == "O-type":
        raise WrongType("class graph does not split; use the plain check")
    rec = _Recorder("thm4.5", [("form", form_tag(base)), ("p", p),
                               ("n_max", n_max)])
    for comp, eidx, mm, nm in _component_blocks(graph):
        sides, eps, ext_rows = _extended_block(graph, comp, eidx, nm)
        mmat = _fmat(mm)
        ext = _fmat(ext_rows)
        zmat = (ext * ext.t).inv() * ext
        for n in range(1, n_max + 1):
            r_tp = _rvec_scaled(graph.vertices, comp, n, p)
            rs_n = _rvec(graph.edges, eidx, n)
            rs_p2 = _rvec(graph.edges, eidx, p * p * n)
            diff = (_spinor_average(graph, sides[0], p * n)
                    - _spinor_average(graph, sides[1], p * n))
            col = _rvec(graph.vertices, comp, p * n)
            via_column = sum(row[-1] * x for row, x in zip(ext_rows, col))
            rec.expect("sides n={}".format(n), diff, via_column)
            consistency = _fmat([r for r in nm]).t.apply(col)
            for jj, val in enumerate(consistency):
                rec.expect("edge-sums n={} j={}".format(n, jj),
                           val, rs_p2[jj] + rs_n[jj])
            r_ext = _vadd(rs_p2, rs_n) + (diff,)
            lhs = _vscale(p, r_tp)
            rhs = tuple(x - y for x, y in zip(
                mmat.apply(rs_n), zmat.apply(r_ext)))
            rec.expect("comp{} n={}".format(comp[0], n), lhs, rhs)
    return rec.report()


def p11_example_classes():
    """Ground and first-level classes of the disc-2 tower at 11, ordered
    as (plain diagonal first, split-mass column positive on it)."""
    from .catalog import DIAG_1_1_16
    tower = genus_tower(DIAG_1_1_16, 11, 1)
    graph = build_graph(tower[0], tower[1])
    verts = list(graph.vertices)
    edges = sorted(graph.edges, key=lambda c: c.aut_order)
    return verts, edges


def verify_spinor_closed_form(n_max: int = 500) -> VerificationReport:
    """The displayed two-class difference at 11 against its closed form."""
    verts, _ = p11_example_classes()
    t1, t2 = verts[0].lattice, verts[1].lattice
    rec = _Recorder("spinor-closed-form", [("p", 11), ("n_max", n_max)])
    for n in range(1, n_max + 1):
        want = 0
        if n % 11 == 0:
            m = isqrt(n // 11)
            if m * m == n // 11:
                want = ((1 - (-1) ** m) // 2) * (-1) ** ((m + 1) // 2) \
                    * 44 * m
        rec.expect("n={}".format(n),
                   rep_count(t1, 11 * n) - rep_count(t2, 11 * n), want)
    return rec.report()


def verify_p11_displayed_identities(n_max: int = 200) -> VerificationReport:
    """The two fully written-out scalar identities of the disc-2 tower
    at 11, with literal coefficients."""
    verts, edges = p11_example_classes()
    t1, t2 = verts[0].lattice, verts[1].lattice
    s1, s2 = edges[0].lattice, edges[1].lattice
    rec = _Recorder("p11-displays", [("p", 11), ("n_max", n_max)])
    c = [Fraction(38, 5), Fraction(2, 5), Fraction(39, 10),
         Fraction(1, 10), Fraction(1, 2)]
    for n in range(0, n_max + 1):
        common = (c[0] * rep_count(s1, n) - c[1] * rep_count(s1, 121 * n)
                  + c[2] * rep_count(s2, n)
                  - c[3] * rep_count(s2, 121 * n))
        swing = c[4] * (rep_count(t1, 11 * n) - rep_count(t2, 11 * n))
        rec.expect("first n={}".format(n),
                   Fraction(11 * _r_scaled(t1, n, 11)), common - swing)
        rec.expect("second n={}".format(n),
                   Fraction(11 * _r_scaled(t2, n, 11)), common + swing)
    return rec.report()


# ---- level-one scalar identity -----------------------------------------


def verify_thm_4_6(base: TernaryLattice, p: int,
                   n_max: int = 200) -> VerificationReport:
    """Level-one counts from genus-wide sums two levels up."""
    tower = genus_tower(base, p, 2)
    rec = _Recorder("thm4.6", [("form", form_tag(base)), ("p", p),
                               ("n_max", n_max)])
    gen2 = tower[2].classes
    for i, t in enumerate(tower[1].classes):
        halves = gamma_half_pair(t.lattice, p)
        half_lats = [mem.lattice.scale(Fraction(1, p)) for mem in halves]
        half_auts = [aut_order(h) for h in half_lats]
        lam = [lambda_class(s.lattice, p) for s in gen2]
        match = [[j for j, l in enumerate(lam) if is_isometric(l, h)]
                 for h in half_lats]
        tw = [tilde_rep_count(s.lattice.scale(p), t.lattice, p)
              for s in gen2]
        if not any(tw):
            raise StructureError("no second-level class meets the lattice")
        for n in range(1, n_max + 1):
            main = sum(
                Fraction(tw[j], gen2[j].aut_order)
                * (Fraction(3 * p, 2) * rep_count(gen2[j].lattice, p * n)
                   - Fraction(p, p - 1)
                   * rep_count(gen2[j].lattice, p ** 3 * n))
                for j in range(len(gen2)))
            rest = Fraction(0)
            for side in (0, 1):
                part = sum(Fraction(rep_count(gen2[j].lattice, p ** 3 * n),
                                    gen2[j].aut_order)
                           for j in match[side])
                rest += half_auts[side] * part
            rhs = main + Fraction(1, p - 1) * rest
            rec.expect("T{} n={}".format(i, n),
                       Fraction((3 * p * p - p) * rep_count(t.lattice, n)),
                       rhs)
    return rec.report()


# ---- level-two identities and the negative certificate -----------------


def verify_thm_4_8(base: TernaryLattice, p: int,
                   n_max: int = 100) -> VerificationReport:
    """Level-two class vectors from one level up, split by p | n."""
    tower, graph, mtype = _graph_at(base, p, 2)
    rec = _Recorder("thm4.8", [("form", form_tag(base)), ("p", p),
                               ("type", mtype), ("n_max", n_max)])
    for comp, eidx, mm, nm in _component_blocks(graph):
        mmat = _fmat(mm)
        if mtype == "O-type":
            nmat = _fmat(nm)
            zmat = (nmat * nmat.t).inv() * nmat
            sides = None
        else:
            sides, eps, ext_rows = _extended_block(graph, comp, eidx, nm)
            ext = _fmat(ext_rows)
            zmat = (ext * ext.t).inv() * ext
        for n in range(1, n_max + 1):
            r_t = _rvec(graph.vertices, comp, n)
            rs_pn = _rvec(graph.edges, eidx, p * n)
            if mtype == "O-type":
                if n % p:
                    rec.expect("comp{} n={}".format(comp[0], n),
                               r_t, zmat.apply(rs_pn))
                else:
                    rs_p3 = _rvec(graph.edges, eidx, p ** 3 * n)
                    rhs = tuple(
                        Fraction(a - b, 2 * p - 1) for a, b in zip(
                            mmat.apply(rs_pn),
                            zmat.apply(_vadd(rs_pn, rs_p3))))
                    rec.expect("comp{} n={}".format(comp[0], n), r_t, rhs)
            else:
                diff = (_spinor_average(graph, sides[0], n)
                        - _spinor_average(graph, sides[1], n))
                if n % p:
                    rec.expect("comp{} n={}".format(comp[0], n),
                               r_t, zmat.apply(rs_pn + (diff,)))
                else:
                    rs_p3 = _rvec(graph.edges, eidx, p ** 3 * n)
                    tail = (2 * p - 1) * (-diff)
                    rhs = tuple(
                        Fraction(a - b, 2 * p - 1) for a, b in zip(
                            mmat.apply(rs_pn),
                            zmat.apply(_vadd(rs_pn, rs_p3) + (tail,))))
                    rec.expect("comp{} n={}".format(comp[0], n), r_t, rhs)
    return rec.report()


def verify_thm_4_8_negative(base: TernaryLattice, p: int,
                            n_rows: int = 40) -> VerificationReport:
    """No constant coefficients tie a level-two count to the level-three
    genus: certified by an inconsistent exact linear system."""
    tower = genus_tower(base, p, 3)
    lv2, lv3 = tower[2], tower[3]
    rec = _Recorder("thm4.8-negative", [("form", form_tag(base)),
                                        ("p", p), ("rows", n_rows)])
    for i, t in enumerate(lv2.classes):
        plain, aug = [], []
        for n in range(1, n_rows + 1):
            row = [Fraction(rep_count(s.lattice, p * n))
                   for s in lv3.classes]
            row += [Fraction(rep_count(s.lattice, p ** 3 * n))
                    for s in lv3.classes]
            plain.append(row)
            aug.append(row + [Fraction(rep_count(t.lattice, n))])
        inconsistent = matrix_rank(_fmat(plain)) < matrix_rank(_fmat(aug))
        rec.expect_true("T{}".format(i), inconsistent,
                        "coefficient system is solvable on sampled rows")
    return rec.report()


# ---- deep-level identities ---------------------------------------------


def verify_thm_4_9(base: TernaryLattice, p: int, m: int = 3,
                   n_max: int = 60) -> VerificationReport:
    """The three deep-level displays, including the restricted-genus
    correction vector."""
    if m < 3:
        raise PreconditionViolated("needs level three or deeper")
    tower, graph, mtype = _graph_at(base, p, m)
    if mtype == "E-type":
        raise WrongType("deep split graphs are out of scope here")
    rec = _Recorder("thm4.9", [("form", form_tag(base)), ("p", p),
                               ("m", m), ("n_max", n_max)])
    all_upper = tower[m + 1].classes
    from .towers import kernel_matched_classes
    for comp, eidx, mm, nm in _component_blocks(graph):
        mmat, nmat = _fmat(mm), _fmat(nm)
        zmat = (nmat * nmat.t).inv() * nmat
        lam_auts, matched = {}, {}
        for j in eidx:
            lam_auts[j] = aut_order(lambda_class(
                graph.edges[j].lattice, p))
            matched[j] = kernel_matched_classes(
                graph.edges[j].lattice, p, all_upper)
        for n in range(1, n_max + 1):
            r_t_n = _rvec(graph.vertices, comp, n)
            rs_pn = _rvec(graph.edges, eidx, p * n)
            if n % p:
                rec.expect("plain comp{} n={}".format(comp[0], n),
                           r_t_n, zmat.apply(rs_pn))
                r_t_pn = _rvec(graph.vertices, comp, p * n)
                rs_n = _rvec(graph.edges, eidx, n)
                rec.expect("step comp{} n={}".format(comp[0], n),
                           r_t_pn, mmat.apply(rs_n))
            r_t_p2 = _rvec(graph.vertices, comp, p * p * n)
            rs_p3 = _rvec(graph.edges, eidx, p ** 3 * n)
            flat = tuple(
                Fraction(lam_auts[j], graph.edges[j].aut_order)
                * sum((Fraction(rep_count(c.lattice, p * n), c.aut_order)
                       for c in matched[j]), Fraction(0))
                for j in eidx)
            lhs = tuple(p * a - p * p * b for a, b in zip(r_t_p2, r_t_n))
            inner = _vadd(_vadd(_vscale(2 * p, rs_p3),
                                _vscale(p * p, rs_pn)), flat)
            rhs = tuple(a - p * b for a, b in zip(
                zmat.apply(inner), mmat.apply(rs_pn)))
            rec.expect("deep comp{} n={}".format(comp[0], n), lhs, rhs)
    return rec.report()


# ---- anisotropic stability ---------------------------------------------


def verify_watson_2_1(lattice: TernaryLattice, p: int,
                      n_max: int = 200) -> VerificationReport:
    """Counts at multiples of p survive passing to the kernel sublattice
    when the local unimodular part is anisotropic."""
    if not unimodular_part_anisotropic(lattice, p):
        raise PreconditionViolated("local unimodular part is isotropic")
    kern = watson_kernel(lattice, p).lattice
    rec = _Recorder("watson2.1", [("form", form_tag(lattice)), ("p", p),
                                  ("n_max", n_max)])
    for n in range(p, n_max + 1, p):
        rec.expect("n={}".format(n), rep_count(lattice, n),
                   rep_count(kern, n))
    return rec.report()


# ---- structural family checks ------------------------------------------


def _lift_rows(member_rows, ambient_rows):
    """Key of a submodule given in a member's coordinates, in base ones."""
    from .matrices import hnf_rows
    lifted = Mat([[int(x) for x in row] for row in member_rows]) \
        * Mat([[int(x) for x in row] for row in ambient_rows])
    return hnf_rows([[int(v) for v in row] for row in lifted.rows])


def _module_inside(inner_rows, outer_rows):
    coords = Mat([list(r) for r in inner_rows]) \
        * Mat([list(r) for r in outer_rows]).inv()
    return all(x.denominator == 1 for row in coords.rows for x in row)


def check_pair_closure(lattice: TernaryLattice, p: int, cross_only: bool
                       ) -> VerificationReport:
    """Every admissible pair of line lifts is the half pair of exactly
    one two-step member.

    With ``cross_only`` the pairing is restricted to lifts sitting in
    different halves of the lattice, which is the deeper-level rule."""
    from .sublattices import phi_family
    tag = "cross-pairs" if cross_only else "ground-pairs"
    rec = _Recorder(tag, [("form", form_tag(lattice)), ("p", p)])
    phi = list(phi_family(lattice, p))
    keys = [mem.basis for mem in phi]
    rec.expect("line-lift count", len(phi),
               2 * p if cross_only else p + 1)
    if cross_only:
        halves = gamma_half_pair(lattice, p)
        side_of = {}
        for mem in phi:
            inside = [i for i, h in enumerate(halves)
                      if _module_inside(mem.basis, h.basis)]
            rec.expect_true("side of {}".format(mem.label),
                            len(inside) == 1,
                            "lift sits in {} halves".format(len(inside)))
            side_of[mem.basis] = inside[0] if len(inside) == 1 else None
        wanted = {frozenset((a, b)) for a in keys for b in keys
                  if a != b and side_of[a] == 0 and side_of[b] == 1}
    else:
        wanted = {frozenset((a, b)) for i, a in enumerate(keys)
                  for b in keys[i + 1:]}
    psi = list(psi_family(lattice, p))
    seen = {}
    for mem in psi:
        pair = gamma_half_pair(mem.lattice, p)
        pk = frozenset(_lift_rows(h.basis, mem.basis) for h in pair)
        rec.expect_true("halves split {}".format(mem.label), len(pk) == 2,
                        "coincident half modules")
        seen[pk] = seen.get(pk, 0) + 1
    rec.expect("member count", len(psi),
               p * p if cross_only else p * (p + 1) // 2)
    for pair in sorted(wanted, key=sorted):
        rec.expect("pair {}".format(sorted(pair)), seen.get(pair, 0), 1)
    rec.expect("surplus pairs", len(set(seen) - wanted), 0)
    return rec.report()


def check_shared_kernel_walks(base: TernaryLattice, p: int, m: int
                              ) -> VerificationReport:
    """Members over a common kernel quotient sit four steps apart."""
    if m < 2:
        raise PreconditionViolated("needs two levels of headroom")
    tower = genus_tower(base, p, m + 1)
    graph = build_graph(tower[m], tower[m + 1])
    rec = _Recorder("kernel-walks", [("form", form_tag(base)), ("p", p),
                                     ("m", m)])
    from .graphs import has_walk_of_length
    for t in tower[m - 2].classes:
        members = list(psi_family(t.lattice, p))
        idx = []
        for mem in members:
            rec.expect_true(
                "descends {}".format(mem.label),
                is_isometric(lambda_class(mem.lattice, p), t.lattice),
                "kernel quotient drifted")
            where = [k for k, c in enumerate(tower[m].classes)
                     if is_isometric(mem.lattice, c.lattice)]
            rec.expect("placement {}".format(mem.label), len(where), 1)
            idx.append(where[0] if where else None)
        for a in range(len(members)):
            for b in range(a + 1, len(members)):
                if idx[a] is None or idx[b] is None:
                    continue
                rec.expect_true(
                    "walk {}-{}".format(idx[a], idx[b]),
                    has_walk_of_length(graph, idx[a], idx[b], 4),
                    "no four-step walk")
    return rec.report()


def check_walk_parity_descent(base: TernaryLattice, p: int, m: int
                              ) -> VerificationReport:
    """Walk parities at a level agree with those of the kernel images
    two levels down."""
    if m < 2:
        raise PreconditionViolated("needs two levels of headroom")
    tower = genus_tower(base, p, m + 1)
    graph = build_graph(tower[m], tower[m + 1])
    low = build_graph(tower[m - 2], tower[m - 1])
    from .graphs import walk_parities
    rec = _Recorder("parity-descent", [("form", form_tag(base)), ("p", p),
                                       ("m", m)])
    image = []
    for c in tower[m].classes:
        lam = lambda_class(c.lattice, p)
        hits = [k for k, d in enumerate(tower[m - 2].classes)
                if is_isometric(lam, d.lattice)]
        rec.expect("image count", len(hits), 1)
        image.append(hits[0])
    for i in range(graph.order):
        for j in range(graph.order):
            rec.expect("parity {} {}".format(i, j),
                       walk_parities(graph, i, j),
                       walk_parities(low, image[i], image[j]))
    return rec.report()


# ---- corpus -------------------------------------------------------------


def diagonal_corpus(cmax: int = 20):
    """All nondecreasing diagonal forms up to the bound."""
    out = []
    for a in range(1, cmax + 1):
        for b in range(a, cmax + 1):
            for c in range(b, cmax + 1):
                out.append(TernaryLattice(
                    ((2 * a, 0, 0), (0, 2 * b, 0), (0, 0, 2 * c))))
    return out


def eligible_bases(primes=(2, 3, 5, 7, 11), cmax: int = 20):
    """(lattice, p) pairs where the tower machinery applies."""
    for lat in diagonal_corpus(cmax):
        for p in primes:
            if lat.disc4 % p == 0:
                continue
            if satisfies_condition_2_2(lat, p):
                yield lat, p


# ---- dispatch ------------------------------------------------------------


CHECK_IDS = ("lemma2.6", "prop2.10", "prop2.11", "prop3.7",
             "props4.1-4.2", "thm4.3", "thm4.5", "thm4.6", "thm4.8",
             "thm4.8-negative", "thm4.9", "watson2.1")


def run_check(check_id: str, lattice: TernaryLattice, p: int,
              level=None, n_max=None) -> VerificationReport:
    """Run one named check on a form at a prime."""
    if check_id == "lemma2.6":
        return verify_lemma_2_6(lattice, p, None, n_max or 200)
    if check_id == "prop2.10":
        return verify_prop_2_10(lattice, p, n_max or 200)
    if check_id == "prop2.11":
        return verify_prop_2_11(lattice, p, n_max or 200)
    if check_id == "prop3.7":
        return verify_prop_3_7(lattice, p)
    if check_id == "props4.1-4.2":
        return verify_props_4_1_4_2(lattice, p, level or 0, n_max or 200)
    if check_id == "thm4.3":
        return verify_thm_4_3(lattice, p, n_max or 200)
    if check_id == "thm4.5":
        return verify_thm_4_5(lattice, p, n_max or 200)
    if check_id == "thm4.6":
        return verify_thm_4_6(lattice, p, n_max or 200)
    if check_id == "thm4.8":
        return verify_thm_4_8(lattice, p, n_max or 100)
    if check_id == "thm4.8-negative":
        return verify_thm_4_8_negative(lattice, p, n_max or 40)
    if check_id == "thm4.9":
        return verify_thm_4_9(lattice, p, level or 3, n_max or 60)
    if check_id == "watson2.1":
        return verify_watson_2_1(lattice, p, n_max or 200)
    raise ValueError("unknown check id: {}".format(check_id))
