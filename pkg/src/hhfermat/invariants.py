"""The invariant subalgebra (A'_{f,G})^G and its Frobenius-algebra checks.

Invariants are computed one conjugacy class at a time: for a representative u
the Z(u)-invariants of the sector A'_u are found as an exact nullspace (per
polynomial degree, so every basis vector is bihomogeneous), then spread over
the class by the orbit sum.  The global averaging operator is kept as an
independent cross-check for small groups.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .cuptable import CupEngine
from .cyclotomic import CycNum
from .fixedlocus import AlgebraElement, Fermat, monomial_basis, sector_vars
from .gaction import GAction
from .grading_pairing import bidegree, eta
from .group import Group, GroupElement, closure
from .linalg import SpanSolver, nullspace, rank
from .polyring import Poly


class ConsistencyError(RuntimeError):
    """A product of invariants left the invariant span, or a cross-check failed."""


def generating_set(elements: list[GroupElement], N: int, n: int) -> list[GroupElement]:
    """Greedy small generating set of the subgroup formed by ``elements``."""
    gens: list[GroupElement] = []
    span = {GroupElement.identity(N, n)}
    for g in elements:
        if g not in span:
            gens.append(g)
            span = set(closure(gens, N, n))
    return gens


def _by_degree(monos: list[tuple]) -> dict:
    out: dict = {}
    for m in monos:
        out.setdefault(sum(m), []).append(m)
    return out


def invariant_sector_basis(action: GAction, group: Group, u: GroupElement) -> list[AlgebraElement]:
    """Basis of (A'_u)^{Z(u)}, bihomogeneous, in degree order."""
    fm = action.fm
    F = fm.F
    gens = generating_set(group.centralizer(u), group.N, group.n)
    out = []
    for deg, monos in sorted(_by_degree(monomial_basis(fm, u)).items()):
        rows = []
        for z in gens:
            M = action.matrix(z, u, monos, monos)
            for i in range(len(monos)):
                rows.append([M[i][j] - (F.one() if i == j else F.zero()) for j in range(len(monos))])
        for v in nullspace(rows, F, ncols=len(monos)):
            poly = Poly(F, fm.N, {m: c for m, c in zip(monos, v) if c})
            out.append(AlgebraElement(fm, {u: poly}))
    return out


def coset_representatives(group: Group, u: GroupElement) -> list[GroupElement]:
    """One w per element of the class of u, with w u w^-1 running over the class."""
    seen: dict = {}
    for w in group:
        c = u.conj(w)
        if c not in seen:
            seen[c] = w
    return [seen[c] for c in sorted(seen, key=GroupElement.sort_key)]


def orbit_sum(action: GAction, group: Group, a: AlgebraElement, u: GroupElement) -> AlgebraElement:
    """sum over the class of u of w^*(a); equals symmetrize(a)/|Z(u)| for a in (A'_u)^{Z(u)}."""
    out = AlgebraElement(action.fm)
    for w in coset_representatives(group, u):
        out = out + action.act(w, a)
    return out


def symmetrize(action: GAction, group: Group, a: AlgebraElement) -> AlgebraElement:
    """x -> sum_{w in G} w^*(x)."""
    out = AlgebraElement(action.fm)
    for w in group:
        out = out + action.act(w, a)
    return out


def _keys(fm: Fermat, group: Group) -> list[tuple]:
    return [(u, m) for u in group for m in monomial_basis(fm, u)]


def coordinates(a: AlgebraElement, keys: list[tuple]) -> list[CycNum]:
    F = a.fm.F
    out = []
    for u, m in keys:
        p = a.terms.get(u)
        out.append(p.coeff(m) if p is not None else F.zero())
    return out


def global_averaging_dimension(action: GAction, group: Group) -> int:
    """Rank of the averaging operator on all of A'_{f,G} (small groups only)."""
    fm = action.fm
    keys = _keys(fm, group)
    cols = []
    for u, m in keys:
        cols.append(coordinates(symmetrize(action, group, AlgebraElement.monomial(fm, u, m)), keys))
    return rank(cols, fm.F)


def character_dimension(action: GAction, group: Group) -> Fraction:
    """(1/|G|) sum_w trace(w^*), an exact count of invariants."""
    fm = action.fm
    total = fm.F.zero()
    for w in group:
        for u in group.centralizer(w):
            monos = monomial_basis(fm, u)
            M = action.matrix(w, u, monos, monos)
            for i in range(len(monos)):
                total = total + M[i][i]
    val = total / len(group)
    if not val.is_rational():
        raise ConsistencyError("trace average is not rational")
    return Fraction(val.rational_value())


# ------------------------------------------------------------------ the algebra


@dataclass
class BasisElement:
    label: str
    rep: GroupElement
    element: AlgebraElement
    parity: int
    bidegree: tuple


@dataclass
class HHAlgebra:
    fm: Fermat
    group: Group
    basis: list
    structure: list  # structure[i][j] = {k: coeff}
    gram: list
    flags: dict = field(default_factory=dict)
    class_dims: list = field(default_factory=list)
    keys: list = field(default_factory=list, repr=False)
    solver: object = field(default=None, repr=False)

    def coords(self, a: AlgebraElement) -> list[CycNum] | None:
        """Coordinates of an invariant element in the basis, or None if outside the span."""
        keyset = set(self.keys)
        if any((u, m) not in keyset for u, p in a.terms.items() for m in p.t):
            return None
        if self.solver is None:
            return [] if a.is_zero() else None
        return self.solver.coords(coordinates(a, self.keys))

    @property
    def dimension(self) -> int:
        return len(self.basis)

    def graded_dims(self) -> dict:
        out: dict = {}
        for b in self.basis:
            out[b.bidegree] = out.get(b.bidegree, 0) + 1
        return dict(sorted(out.items()))

    def index(self, label: str) -> int:
        for i, b in enumerate(self.basis):
            if b.label == label:
                return i
        raise KeyError(label)

    def product(self, i: int, j: int) -> AlgebraElement:
        out = AlgebraElement(self.fm)
        for k, c in self.structure[i][j].items():
            out = out + self.basis[k].element.scale(c)
        return out

    def to_json(self) -> dict:
        def q(x):
            return str(x)

        return {
            "L": self.fm.L,
            "n": self.fm.n,
            "N": self.fm.N,
            "group_order": len(self.group),
            "dimension": self.dimension,
            "classes": [{"rep": str(u), "size": s, "invariants": d} for u, s, d in self.class_dims],
            "graded_dims": [{"q_l": q(k[0]), "q_r": q(k[1]), "dim": v} for k, v in self.graded_dims().items()],
            "basis": [
                {"index": i, "label": b.label, "parity": b.parity, "bidegree": [q(b.bidegree[0]), q(b.bidegree[1])], "element": b.element.to_json()}
                for i, b in enumerate(self.basis)
            ],
            "structure_constants": [
                {"i": i, "j": j, "k": k, "coeff": c.to_json()}
                for i, row in enumerate(self.structure)
                for j, d in enumerate(row)
                for k, c in sorted(d.items())
            ],
            "gram": [[c.to_json() for c in row] for row in self.gram],
            "flags": self.flags,
        }


def _label(fm: Fermat, u: GroupElement, a: AlgebraElement) -> str:
    return f"[{a.terms[u].render(sector_vars(u).names(fm.N))}]xi_{u}"


def hh_algebra(group: Group, L: int | None = None, engine: CupEngine | None = None, action: GAction | None = None, verify: bool = True) -> HHAlgebra:
    """Invariant basis, structure constants, Gram matrix and Frobenius flags.

    L defaults to the group's eigenvalue order; a multiple of it may be given
    to work in a larger cyclotomic field.
    """
    if engine is None:
        L = L or group.eigen_order()
        if L % group.eigen_order():
            raise ValueError(f"L = {L} is not a multiple of {group.eigen_order()}")
        engine = CupEngine(Fermat(group.n, group.N, L))
    fm = engine.fm
    action = action or GAction(fm, group)
    basis: list[BasisElement] = []
    class_dims = []
    for u, cls in group.conjugacy_classes:
        local = invariant_sector_basis(action, group, u)
        class_dims.append((u, len(cls), len(local)))
        for a in local:
            full = orbit_sum(action, group, a, u)
            p = a.terms[u]
            basis.append(BasisElement(_label(fm, u, a), u, full, u.d % 2, bidegree(fm, u, p)))

    keys = sorted({(u, m) for b in basis for u, p in b.element.terms.items() for m in p.t}, key=lambda k: (k[0].sort_key(), k[1]))
    solver = SpanSolver([coordinates(b.element, keys) for b in basis], fm.F) if basis else None
    keyset = set(keys)
    structure = []
    for bi in basis:
        row = []
        for bj in basis:
            prod = engine.cup(bi.element, bj.element)
            if any((u, m) not in keyset for u, p in prod.terms.items() for m in p.t):
                raise ConsistencyError(f"{bi.label} * {bj.label} leaves the invariant span")
            x = solver.coords(coordinates(prod, keys))
            if x is None:
                raise ConsistencyError(f"{bi.label} * {bj.label} is not in the invariant span")
            row.append({k: c for k, c in enumerate(x) if c})
        structure.append(row)
    gram = [[eta(bi.element, bj.element) for bj in basis] for bi in basis]
    alg = HHAlgebra(fm, group, basis, structure, gram, class_dims=class_dims, keys=keys, solver=solver)
    if verify:
        alg.flags = algebra_flags(alg)
    return alg


def algebra_flags(alg: HHAlgebra) -> dict:
    F = alg.fm.F
    B, C, G = alg.basis, alg.structure, alg.gram
    d = len(B)

    def mul(x: dict, y: dict) -> dict:
        out: dict = {}
        for i, a in x.items():
            for j, b in y.items():
                for k, c in C[i][j].items():
                    out[k] = out.get(k, F.zero()) + a * b * c
        return {k: v for k, v in out.items() if v}

    e = [{i: F.one()} for i in range(d)]
    assoc = all(mul(mul(e[i], e[j]), e[k]) == mul(e[i], mul(e[j], e[k])) for i in range(d) for j in range(d) for k in range(d))
    sc = all(
        C[i][j] == {k: (-c if B[i].parity and B[j].parity else c) for k, c in C[j][i].items()} for i in range(d) for j in range(d)
    )

    def pair(x: dict, k: int) -> CycNum:
        s = F.zero()
        for m, c in x.items():
            s = s + c * G[m][k]
        return s

    def pair_r(i: int, x: dict) -> CycNum:
        s = F.zero()
        for m, c in x.items():
            s = s + c * G[i][m]
        return s

    frob = all(pair(C[i][j], k) == pair_r(i, C[j][k]) for i in range(d) for j in range(d) for k in range(d))
    idn = GroupElement.identity(alg.group.N, alg.group.n)
    unit_idx = next((i for i, b in enumerate(B) if b.rep == idn and b.element == AlgebraElement.xi(alg.fm, idn)), None)
    unit = unit_idx is not None and all(C[unit_idx][j] == {j: F.one()} and C[j][unit_idx] == {j: F.one()} for j in range(d))
    return {
        "diag_in_SL": alg.group.diag_in_sl(),
        "associative": assoc,
        "supercommutative": sc,
        "frobenius": frob,
        "nondegenerate": rank(G, F) == d,
        "unit": unit,
    }


def check_algebra_map(src: HHAlgebra, dst: HHAlgebra, images: list[AlgebraElement]) -> dict:
    """Check that b_i -> images[i] is a unital algebra isomorphism src -> dst.

    Both algebras must live over the same field.  Returns a dict of flags and
    the first failing product, if any.
    """
    F = dst.fm.F
    if src.fm.L != dst.fm.L:
        raise ValueError("algebras over different fields")
    T = []
    for im in images:
        x = dst.coords(im)
        if x is None:
            return {"well_defined": False, "bijective": False, "multiplicative": False, "failure": "image outside the invariant span"}
        T.append(x)
    bij = len(images) == src.dimension == dst.dimension and rank(T, F) == dst.dimension

    def image(coeffs: dict) -> list[CycNum]:
        out = [F.zero()] * dst.dimension
        for k, c in coeffs.items():
            out = [a + c * b for a, b in zip(out, T[k])]
        return out

    def prod(x: list, y: list) -> list[CycNum]:
        out = [F.zero()] * dst.dimension
        for i, a in enumerate(x):
            if not a:
                continue
            for j, b in enumerate(y):
                if not b:
                    continue
                for k, c in dst.structure[i][j].items():
                    out[k] = out[k] + a * b * c
        return out

    failure = None
    for i in range(src.dimension):
        for j in range(src.dimension):
            if image(src.structure[i][j]) != prod(T[i], T[j]):
                failure = (src.basis[i].label, src.basis[j].label)
                break
        if failure:
            break
    return {"well_defined": True, "bijective": bij, "multiplicative": failure is None, "failure": failure}


def check_map_pairs(src: HHAlgebra, dst: HHAlgebra, pairs: list[tuple[AlgebraElement, AlgebraElement]]) -> dict:
    """Like ``check_algebra_map`` with the map given on any basis f_k -> t_k of src."""
    F = src.fm.F
    rows = []
    for f, _ in pairs:
        x = src.coords(f)
        if x is None:
            raise ConsistencyError("a source element is not invariant")
        rows.append(x)
    try:
        solver = SpanSolver(rows, F)
    except ValueError:
        return {"well_defined": False, "bijective": False, "multiplicative": False, "failure": "source elements are not a basis"}
    if len(rows) != src.dimension:
        return {"well_defined": False, "bijective": False, "multiplicative": False, "failure": "source elements are not a basis"}
    images = []
    for i in range(src.dimension):
        e = [F.one() if j == i else F.zero() for j in range(src.dimension)]
        y = solver.coords(e)
        img = AlgebraElement(dst.fm)
        for yk, (_, t) in zip(y, pairs):
            if yk:
                img = img + t.scale(yk)
        images.append(img)
    return check_algebra_map(src, dst, images)
