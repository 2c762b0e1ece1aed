"""Fixed loci, sector Jacobian algebras, restriction/lift and Hessian classes.

Sector polynomials live in the same N positional variables as ambient ones:
a free fixed index l keeps position l, and the eigen coordinate x~ of a special
cycle (i_1, ..., i_k) sits at position i_1.  Jacobian reduction is monomial
(every exponent must stay <= n-2).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product as iproduct
from typing import Iterable, Mapping

from .cyclotomic import CycNum, CyclotomicField
from .group import GroupElement
from .polyring import Poly, substitute


@dataclass(frozen=True)
class Fermat:
    """f = x_1^n + ... + x_N^n over Q(zeta_L)."""

    n: int
    N: int
    L: int

    def __post_init__(self):
        if self.n < 2 or self.N < 1 or self.L % self.n:
            raise ValueError("need n >= 2, N >= 1 and n | L")

    @property
    def F(self) -> CyclotomicField:
        return CyclotomicField(self.L)

    def z(self, e: int) -> CycNum:
        """zeta_n^e."""
        return self.F.zeta(self.n, e % self.n)

    def poly(self) -> Poly:
        F = self.F
        return Poly(F, self.N, {tuple(self.n if j == i else 0 for j in range(self.N)): F.one() for i in range(self.N)})

    def const(self, c) -> Poly:
        return Poly.const(self.F, self.N, c)

    def one(self) -> Poly:
        return Poly.const(self.F, self.N, 1)

    def x(self, i: int) -> Poly:
        """Ambient x_i, 1-based."""
        return Poly.var(self.F, self.N, i - 1)


@dataclass(frozen=True)
class SectorVars:
    free: tuple  # 1-based ambient indices
    eigen: tuple  # CycleFactors of special cycles

    def positions(self) -> tuple:
        return tuple(sorted([i - 1 for i in self.free] + [c.indices[0] - 1 for c in self.eigen]))

    def names(self, N: int) -> list[str]:
        out = [f"x{i + 1}" for i in range(N)]
        for c in self.eigen:
            out[c.indices[0] - 1] = f"xt{c.indices[0]}"
        return out


def sector_vars(u: GroupElement) -> SectorVars:
    free = tuple(c.indices[0] for c in u.components if c.k == 1 and c.A == 0)
    eigen = tuple(c for c in u.components if c.k >= 2 and c.special)
    return SectorVars(free, eigen)


def jac_reduce(p: Poly, n: int) -> Poly:
    return p.truncate(n - 2)


def f_restricted(fm: Fermat, u: GroupElement) -> Poly:
    sv = sector_vars(u)
    out = Poly(fm.F, fm.N)
    for i in sv.free:
        out = out + Poly.monomial(fm.F, fm.N, [fm.n if j == i - 1 else 0 for j in range(fm.N)])
    for c in sv.eigen:
        out = out + Poly.monomial(fm.F, fm.N, [fm.n if j == c.indices[0] - 1 else 0 for j in range(fm.N)], c.k)
    return out


def restrict_raw(fm: Fermat, p: Poly, u: GroupElement) -> Poly:
    """Substitute the fixed-locus parametrization (no Jacobian reduction)."""
    n = fm.n
    where = {}  # ambient 0-based index -> (target position, g~ exponent)
    for c in u.components:
        if c.k == 1 and c.A == 0:
            where[c.indices[0] - 1] = (c.indices[0] - 1, 0)
        elif c.k >= 2 and c.special:
            for i, g in zip(c.indices, c.gt):
                where[i - 1] = (c.indices[0] - 1, g)
    N = fm.N

    def fn(m):
        e = [0] * N
        s = 0
        for i, a in enumerate(m):
            if a:
                w = where.get(i)
                if w is None:
                    return None
                e[w[0]] += a
                s -= w[1] * a
        return tuple(e), fm.z(s)

    return p.map_monomials(fn)


def restrict(fm: Fermat, p: Poly, u: GroupElement) -> Poly:
    return jac_reduce(restrict_raw(fm, p, u), fm.n)


def lift(fm: Fermat, s: Poly, u: GroupElement) -> Poly:
    """Replace each eigen coordinate by (1/k) sum_a g~_{i_a} x_{i_a}."""
    F, N = fm.F, fm.N
    images = [Poly.var(F, N, i) for i in range(N)]
    for c in sector_vars(u).eigen:
        lin = Poly(F, N)
        for i, g in zip(c.indices, c.gt):
            lin = lin + Poly.var(F, N, i - 1, fm.z(g) * F.rational(1) / c.k)
        images[c.indices[0] - 1] = lin
    if all(len(im.t) == 1 and im.t.get(tuple(1 if j == i else 0 for j in range(N))) == F.one() for i, im in enumerate(images)):
        return s
    return substitute(s, images)


def monomial_basis(fm: Fermat, u: GroupElement) -> list[tuple]:
    """Exponent tuples (length N) spanning Jac(f^u), in lexicographic order."""
    pos = sector_vars(u).positions()
    out = []
    for es in iproduct(range(fm.n - 1), repeat=len(pos)):
        e = [0] * fm.N
        for p, a in zip(pos, es):
            e[p] = a
        out.append(tuple(e))
    return sorted(out)


def top_monomial(fm: Fermat, u: GroupElement) -> tuple:
    e = [0] * fm.N
    for p in sector_vars(u).positions():
        e[p] = fm.n - 2
    return tuple(e)


def hessian_class(fm: Fermat, u: GroupElement) -> tuple[Poly, CycNum]:
    """The class H_u in Jac(f^u) and the scalar lambda_u with H_u = lambda_u * top monomial.

    Factors: (-1)^D with D = sum_{i<j} p_i p_j over the moved components,
    (-1)^{k-1} n(n-1) x~^{n-2} per special cycle, a scalar per non-special
    component (see ``nonspecial_hessian_factor``) and n(n-1) x_a^{n-2} per free
    fixed index.
    """
    F, n = fm.F, fm.n
    lam = F.one()
    ps = []
    for c in u.components:
        if c.k == 1 and c.A == 0:
            lam = lam * (n * (n - 1))
        elif c.special:
            lam = lam * ((-1) ** (c.k - 1) * n * (n - 1))
            ps.append(c.k - 1)
        else:
            lam = lam * nonspecial_hessian_factor(fm, c)
            ps.append(c.k)
    D = sum(ps[i] * ps[j] for i in range(len(ps)) for j in range(i + 1, len(ps)))
    if D % 2:
        lam = -lam
    return Poly.monomial(F, fm.N, top_monomial(fm, u), lam), lam


def nonspecial_hessian_factor(fm: Fermat, c) -> CycNum:
    """Scalar Hessian factor det - 1 of a non-special component with determinant zeta_n^A."""
    return fm.z(c.A) - 1


# ------------------------------------------------------------ algebra elements


class AlgebraElement:
    """Finite sum of sector classes: mapping group element -> reduced sector polynomial."""

    __slots__ = ("fm", "terms")

    def __init__(self, fm: Fermat, terms: Mapping[GroupElement, Poly] | None = None):
        self.fm = fm
        self.terms: dict = {}
        if terms:
            for u, p in terms.items():
                if p:
                    self.terms[u] = p

    @classmethod
    def xi(cls, fm: Fermat, u: GroupElement, poly: Poly | None = None) -> "AlgebraElement":
        return cls(fm, {u: poly if poly is not None else fm.one()})

    @classmethod
    def monomial(cls, fm: Fermat, u: GroupElement, exps, c=1) -> "AlgebraElement":
        return cls(fm, {u: Poly.monomial(fm.F, fm.N, exps, c)})

    def __add__(self, o: "AlgebraElement") -> "AlgebraElement":
        out = dict(self.terms)
        for u, p in o.terms.items():
            out[u] = out[u] + p if u in out else p
        return AlgebraElement(self.fm, out)

    def __neg__(self):
        return AlgebraElement(self.fm, {u: -p for u, p in self.terms.items()})

    def __sub__(self, o):
        return self + (-o)

    def scale(self, c) -> "AlgebraElement":
        return AlgebraElement(self.fm, {u: p.scale(c) for u, p in self.terms.items()})

    def __eq__(self, o) -> bool:
        return isinstance(o, AlgebraElement) and self.terms == o.terms

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def sectors(self):
        return sorted(self.terms, key=GroupElement.sort_key)

    def render(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for u in self.sectors():
            names = sector_vars(u).names(self.fm.N)
            parts.append(f"[{self.terms[u].render(names)}] xi_{u}")
        return " + ".join(parts)

    def __repr__(self):
        return f"AlgebraElement({self.render()})"

    def to_json(self) -> list:
        out = []
        for u in self.sectors():
            p = self.terms[u]
            out.append({"sector": u.to_json(), "terms": [{"exps": list(m), "coeff": c.to_json()} for m, c in sorted(p.t.items())]})
        return out
