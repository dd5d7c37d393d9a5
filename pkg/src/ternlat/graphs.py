"""Class multigraph of a tower level.

Vertices are the classes one level down, edges the classes one level
up; an edge hangs off the two classes obtained by halving its pair of
norm-divisible sublattices.  The incidence matrix, its aut-weighted
companion, and the neighbor-count matrix feed the representation
identities downstream.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .counting import aut_order, embed_count, is_isometric
from .errors import (
    CriteriaDisagree,
    EndpointNotFound,
    PreconditionViolated,
    StructureError,
)
from .lattices import TernaryLattice
from .local import ordp
from .matrices import Mat, has_eigenvalue, matrix_rank
from .sublattices import classify_points, gamma_half_pair
from .towers import GenusLevel, neighbor


@dataclass(frozen=True)
class ClassGraph:
    p: int
    m: int
    vertices: tuple
    edges: tuple
    endpoints: tuple
    incidence: tuple

    @property
    def order(self) -> int:
        return len(self.vertices)

    @property
    def size(self) -> int:
        return len(self.edges)

    def adjacency(self):
        """Vertex-by-vertex edge counts; loops count once."""
        n = self.order
        adj = [[0] * n for _ in range(n)]
        for i, j in self.endpoints:
            adj[i][j] += 1
            if i != j:
                adj[j][i] += 1
        return adj

    def neighbors_of(self, i: int):
        out = set()
        for a, b in self.endpoints:
            if a == i:
                out.add(b)
            elif b == i:
                out.add(a)
        return out


def _class_index(lattice: TernaryLattice, classes) -> int:
    for i, rep in enumerate(classes):
        if is_isometric(lattice, rep.lattice):
            return i
    raise EndpointNotFound("gamma descent left the vertex class list")


def build_graph(level_m: GenusLevel, level_m1: GenusLevel) -> ClassGraph:
    if level_m.p != level_m1.p or level_m1.m != level_m.m + 1:
        raise PreconditionViolated("levels must be consecutive at one prime")
    p = level_m.p
    endpoints = []
    for edge in level_m1.classes:
        pair = gamma_half_pair(edge.lattice, p)
        ends = []
        for member in pair:
            half = member.lattice.scale(Fraction(1, p))
            ends.append(_class_index(half, level_m.classes))
        endpoints.append((min(ends), max(ends)))
    h = len(level_m.classes)
    inc = [[0] * len(level_m1.classes) for _ in range(h)]
    for j, (a, b) in enumerate(endpoints):
        inc[a][j] += 1
        inc[b][j] += 1
    return ClassGraph(p, level_m.m, level_m.classes, level_m1.classes,
                      tuple(endpoints), tuple(tuple(r) for r in inc))


def incidence_counts(graph: ClassGraph):
    """The incidence entries recomputed from scaled embedding numbers.

    Entry (i, j) counts sublattices of the edge class isometric to the
    p-scaled vertex class; it must reproduce the endpoint bookkeeping.
    """
    p = graph.p
    rows = []
    for vert in graph.vertices:
        scaled = vert.lattice.scale(p)
        row = []
        for edge in graph.edges:
            cnt = Fraction(embed_count(scaled, edge.lattice),
                           vert.aut_order)
            if cnt.denominator != 1:
                raise StructureError("non-integral incidence count")
            row.append(int(cnt))
        rows.append(tuple(row))
    return tuple(rows)


def n_matrix(graph: ClassGraph):
    """Edge-aut-weighted companion of the incidence matrix."""
    p = graph.p
    rows = []
    for i, vert in enumerate(graph.vertices):
        scaled = vert.lattice.scale(p)
        row = []
        for j, edge in enumerate(graph.edges):
            cnt = embed_count(scaled, edge.lattice)
            entry = Fraction(cnt, edge.aut_order)
            if entry.denominator != 1:
                raise StructureError("non-integral weighted incidence")
            # same count divided by the vertex aut order must equal the
            # incidence entry assembled from gamma descent
            if Fraction(cnt, vert.aut_order) != graph.incidence[i][j]:
                raise StructureError(
                    "incidence and embedding counts disagree")
            row.append(int(entry))
        rows.append(tuple(row))
    return tuple(rows)


def extended_n_matrix(graph: ClassGraph, sides):
    """n-matrix with one extra signed column marking the bipartition.

    The added entry is the reciprocal one-side mass, positive on the
    first side and negative on the second.
    """
    base = n_matrix(graph)
    weight = Fraction(0)
    for i in sides[0]:
        weight += Fraction(1, graph.vertices[i].aut_order)
    eps = 1 / weight
    rows = []
    for i, row in enumerate(base):
        tail = eps if i in sides[0] else -eps
        rows.append(tuple(row) + (tail,))
    return tuple(rows)


def anzahlmatrix(level: GenusLevel, p: int):
    """Neighbor-count matrix at p over a ground-level class list."""
    if level.m != 0:
        raise PreconditionViolated("neighbor matrix wants a ground level")
    if p == 2 or level.base.disc4 % p == 0:
        raise PreconditionViolated("prime must be odd and miss the det")
    classes = level.classes
    rows = []
    for i, src in enumerate(classes):
        scaled = src.lattice.scale(p * p)
        row = []
        for j, dst in enumerate(classes):
            cnt = Fraction(embed_count(scaled, dst.lattice), src.aut_order)
            if cnt.denominator != 1:
                raise StructureError("non-integral neighbor count")
            row.append(int(cnt) - (1 if i == j else 0))
        rows.append(tuple(row))
    return tuple(rows)


def neighbor_count_matrix(level: GenusLevel, p: int):
    """Same matrix by walking the isotropic lines one at a time."""
    if p == 2 or level.base.disc4 % p == 0:
        raise PreconditionViolated("prime must be odd and miss the det")
    classes = level.classes
    rows = [[0] * len(classes) for _ in classes]
    for j, dst in enumerate(classes):
        for v in classify_points(dst.lattice, p)[0]:
            stepped = neighbor(dst.lattice, v, p)
            rows[_class_index(stepped, classes)][j] += 1
    return tuple(tuple(r) for r in rows)


def components(graph: ClassGraph):
    """Connected components as sorted vertex index tuples."""
    seen = set()
    out = []
    for start in range(graph.order):
        if start in seen:
            continue
        comp = {start}
        queue = [start]
        while queue:
            cur = queue.pop()
            for nxt in graph.neighbors_of(cur):
                if nxt not in comp:
                    comp.add(nxt)
                    queue.append(nxt)
        seen |= comp
        out.append(tuple(sorted(comp)))
    return tuple(out)


def bipartition(graph: ClassGraph, comp):
    """Two-coloring of one component, or None when an odd walk exists."""
    color = {comp[0]: 0}
    queue = [comp[0]]
    while queue:
        cur = queue.pop()
        for a, b in graph.endpoints:
            if a == cur or b == cur:
                other = b if a == cur else a
                if other == cur:
                    return None
                if other in color:
                    if color[other] == color[cur]:
                        return None
                else:
                    color[other] = 1 - color[cur]
                    queue.append(other)
    side0 = tuple(sorted(v for v in comp if color[v] == 0))
    side1 = tuple(sorted(v for v in comp if color[v] == 1))
    return side0, side1


def walk_parities(graph: ClassGraph, i: int, j: int):
    """Achievable walk-length parities from i to j (0 allowed if i==j)."""
    reached = {(i, 0)}
    queue = [(i, 0)]
    while queue:
        cur, par = queue.pop()
        for a, b in graph.endpoints:
            if a == cur or b == cur:
                nxt = (b if a == cur else a, 1 - par)
                if nxt not in reached:
                    reached.add(nxt)
                    queue.append(nxt)
    return frozenset(par for (v, par) in reached if v == j)


def has_walk_of_length(graph: ClassGraph, i: int, j: int, steps: int) -> bool:
    frontier = {i}
    for _ in range(steps):
        nxt = set()
        for v in frontier:
            for a, b in graph.endpoints:
                if a == v:
                    nxt.add(b)
                elif b == v:
                    nxt.add(a)
        frontier = nxt
    return j in frontier


def classify_type(graph: ClassGraph, ground_type=None) -> str:
    """O-type or E-type, with every applicable criterion compared."""
    comps = components(graph)
    parts = [bipartition(graph, c) for c in comps]
    if all(p is None for p in parts):
        cycle_verdict = "O-type"
    elif all(p is not None for p in parts):
        cycle_verdict = "E-type"
    else:
        raise CriteriaDisagree("components of mixed parity")
    h = graph.order
    rank = matrix_rank(Mat(graph.incidence))
    if rank == h:
        rank_verdict = "O-type"
    elif rank == h - len(comps):
        rank_verdict = "E-type"
    else:
        raise CriteriaDisagree(f"incidence rank {rank} fits neither type")
    if rank_verdict != cycle_verdict:
        raise CriteriaDisagree("rank and odd-walk tests disagree")
    if graph.m == 0 and graph.p != 2 \
            and _ground_disc(graph) % graph.p != 0:
        pi = anzahlmatrix(
            GenusLevel(graph.vertices[0].lattice, graph.p, 0,
                       graph.vertices),
            graph.p)
        eig = has_eigenvalue(Mat(pi), -(graph.p + 1))
        eig_verdict = "E-type" if eig else "O-type"
        if eig_verdict != cycle_verdict:
            raise CriteriaDisagree("eigenvalue test disagrees")
    if graph.m >= 1 and ground_type is not None:
        parity_verdict = ("E-type" if graph.m % 2 == 0
                          and ground_type == "E-type" else "O-type")
        if parity_verdict != cycle_verdict:
            raise CriteriaDisagree("level parity rule disagrees")
    return cycle_verdict


def _ground_disc(graph: ClassGraph) -> int:
    return graph.vertices[0].lattice.disc4


@dataclass(frozen=True)
class SpinorPartition:
    graph_type: str
    cspn: tuple
    spn: tuple


def spinor_partition(graph: ClassGraph, ground_type=None) -> SpinorPartition:
    """Component sets, refined into halves when the type is E."""
    kind = classify_type(graph, ground_type)
    comps = components(graph)
    if kind == "O-type":
        return SpinorPartition(kind, comps, comps)
    spn = []
    for comp in comps:
        sides = bipartition(graph, comp)
        if sides is None:
            raise CriteriaDisagree("E-type component with an odd walk")
        spn.extend(sides)
    return SpinorPartition(kind, comps, tuple(spn))
