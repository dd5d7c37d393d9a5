"""Index-p sublattice families of a ternary lattice.

Families are parametrized by points or hyperplanes of P^2(F_p).  Each
member records the basis rows of its module inside the ambient Q^3, the
resulting lattice, and the scalar applied to the form, so module-level
identities can be checked independently of the Gram data.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import StructureError
from .lattices import TernaryLattice
from .local import is_split_level_shape, legendre
from .matrices import hnf_rows, module_key


def projective_points(p: int):
    """Representatives of P^2(F_p), leading coordinate one."""
    pts = []
    for a in range(p):
        for b in range(p):
            pts.append((1, a, b))
    for b in range(p):
        pts.append((0, 1, b))
    pts.append((0, 0, 1))
    return tuple(pts)


def classify_points(lattice: TernaryLattice, p: int) -> dict:
    """Partition P^2(F_p) by the class of the represented value.

    Keys at odd p are the Legendre classes -1, 0, 1; at 2 the keys are
    0 and "*", the points with odd value.
    """
    out: dict = {0: []} | ({"*": []} if p == 2 else {1: [], -1: []})
    for v in projective_points(p):
        q = int(lattice.quad(v))
        if p == 2:
            out["*" if q % 2 else 0].append(v)
        else:
            out[legendre(q, p)].append(v)
    return out


@dataclass(frozen=True)
class FamilyMember:
    label: str
    basis: tuple
    lattice: TernaryLattice
    form_scale: Fraction = Fraction(1)

    def module_fingerprint(self):
        return module_key(self.basis)


@dataclass(frozen=True)
class SublatticeFamily:
    kind: str
    p: int
    base: TernaryLattice
    members: tuple
    eps: object = None

    def __len__(self):
        return len(self.members)

    def __iter__(self):
        return iter(self.members)

    def lattices(self):
        return [m.lattice for m in self.members]


def _gram_rows(lattice: TernaryLattice, rows):
    g = lattice.gram2
    gv = [[sum(g[i][k] * r[k] for k in range(3)) for i in range(3)]
          for r in rows]
    return [[sum(rows[a][i] * gv[b][i] for i in range(3)) for b in range(3)]
            for a in range(3)]


def line_module_basis(v, p: int):
    """Basis of pZ^3 + Zv."""
    gens = [[p, 0, 0], [0, p, 0], [0, 0, p], list(v)]
    return hnf_rows(gens)


def hyperplane_module_basis(w, p: int):
    """Basis of the x with w.x = 0 mod p."""
    j = next(i for i in range(3) if w[i] % p)
    inv = pow(w[j], -1, p)
    gens = []
    for k in range(3):
        if k == j:
            row = [0, 0, 0]
            row[j] = p
        else:
            row = [0, 0, 0]
            row[k] = 1
            row[j] = -((w[k] * inv) % p)
        gens.append(row)
    return hnf_rows(gens)


def _member_from_basis(base, basis, label, divide=1):
    rows = _gram_rows(base, basis)
    if divide != 1:
        for r in rows:
            if any(x % divide for x in r):
                raise StructureError("non-integral scaled Gram")
        rows = [[x // divide for x in r] for r in rows]
    return FamilyMember(label, tuple(tuple(r) for r in basis),
                        TernaryLattice(rows),
                        Fraction(1, divide))


def omega_family(lattice: TernaryLattice, p: int, eps) -> SublatticeFamily:
    """Members pL + Zv over the points of the given value class."""
    classes = classify_points(lattice, p)
    if eps not in classes:
        raise ValueError(f"no point class {eps!r} at {p}")
    members = []
    for v in classes[eps]:
        basis = line_module_basis(v, p)
        label = "v=({}:{}:{})".format(*v)
        members.append(_member_from_basis(lattice, basis, label))
    return SublatticeFamily("omega", p, lattice, tuple(members), eps)


def index_p_sublattices(lattice: TernaryLattice, p: int) -> SublatticeFamily:
    """All p^2+p+1 sublattices of index p."""
    members = []
    for w in projective_points(p):
        basis = hyperplane_module_basis(w, p)
        label = "w=({}:{}:{})".format(*w)
        members.append(_member_from_basis(lattice, basis, label))
    return SublatticeFamily("hyperplanes", p, lattice, tuple(members))


def gamma_half_pair(lattice: TernaryLattice, p: int):
    """The two index-p sublattices whose norm is divisible by p."""
    hits = [m for m in index_p_sublattices(lattice, p)
            if m.lattice.norm_gcd % p == 0]
    if len(hits) != 2:
        raise StructureError(
            f"expected two norm-divisible sublattices, found {len(hits)}")
    return tuple(hits)


def watson_kernel(lattice: TernaryLattice, p: int) -> FamilyMember:
    """The sublattice with trivial mod-p polarization and values in pZ.

    The value condition is automatic at odd p; at 2 it cuts the linear
    kernel by one more parity functional.
    """
    space = _nullspace_mod_p(lattice.gram2, p)
    if p == 2:
        vals = [int(lattice.quad(b)) % 2 for b in space]
        if any(vals):
            piv = vals.index(1)
            space = [
                [(b[k] + vals[i] * space[piv][k]) % 2 for k in range(3)]
                for i, b in enumerate(space) if i != piv
            ]
    gens = [[p, 0, 0], [0, p, 0], [0, 0, p]] + [list(b) for b in space]
    basis = hnf_rows(gens)
    return _member_from_basis(lattice, basis, "kernel")


def bilinear_integral_sublattice(lattice: TernaryLattice) -> FamilyMember:
    """Vectors pairing integrally with the whole lattice.

    Same linear kernel as the 2-kernel but without the parity cut on
    values, so it can be strictly larger at 2.
    """
    space = _nullspace_mod_p(lattice.gram2, 2)
    gens = [[2, 0, 0], [0, 2, 0], [0, 0, 2]] + [list(b) for b in space]
    basis = hnf_rows(gens)
    return _member_from_basis(lattice, basis, "pairing-kernel")


def watson_transform(lattice: TernaryLattice, p: int) -> TernaryLattice:
    """Kernel sublattice with its norm divided out."""
    kern = watson_kernel(lattice, p).lattice
    return kern.scale(Fraction(1, kern.norm_gcd))


def phi_family(lattice: TernaryLattice, p: int) -> SublatticeFamily:
    """Level-raising family: zero-value lines, form divided by p,
    filtered by the split shape at p."""
    members = []
    for v in classify_points(lattice, p)[0]:
        basis = line_module_basis(v, p)
        label = "v=({}:{}:{})".format(*v)
        member = _member_from_basis(lattice, basis, label, divide=p)
        if is_split_level_shape(member.lattice, p):
            members.append(member)
    return SublatticeFamily("phi", p, lattice, tuple(members))


def psi_family(lattice: TernaryLattice, p: int) -> SublatticeFamily:
    """Two-level raise: index-p sublattices with the split shape."""
    members = []
    for m in index_p_sublattices(lattice, p):
        if is_split_level_shape(m.lattice, p):
            members.append(m)
    return SublatticeFamily("psi", p, lattice, tuple(members))


def _nullspace_mod_p(g, p):
    rows = [[x % p for x in row] for row in g]
    cols = 3
    pivots = []
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, len(rows)) if rows[i][c] % p), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = pow(rows[r][c], -1, p)
        rows[r] = [(x * inv) % p for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [(rows[i][k] - f * rows[r][k]) % p for k in range(3)]
        pivots.append(c)
        r += 1
    free = [c for c in range(cols) if c not in pivots]
    basis = []
    for f in free:
        vec = [0, 0, 0]
        vec[f] = 1
        for i, c in enumerate(pivots):
            vec[c] = (-rows[i][f]) % p
        basis.append(vec)
    return basis


def p_power_normalized(lattice: TernaryLattice, p: int) -> TernaryLattice:
    """Divide the form by p^2 while it stays a lattice: the canonical
    representative of the homothety class at p."""
    current = lattice
    while True:
        rows = current.gram2
        if all(x % (p * p) == 0 for row in rows for x in row):
            current = current.scale(Fraction(1, p * p))
        else:
            return current


def module_homothety_key(basis_rows, p: int):
    """Module fingerprint modulo multiplication by p."""
    rows, denom = module_key(basis_rows)
    while all(x % p == 0 for row in rows for x in row):
        rows = tuple(tuple(x // p for x in row) for row in rows)
    while denom % p == 0:
        denom //= p
    return rows, denom
