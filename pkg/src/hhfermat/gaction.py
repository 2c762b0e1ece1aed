"""The G-action v^*: A'_u -> A'_{v u v^-1}.

On the Clifford side v acts on the d_theta's contragrediently to its action on
coordinates: t_k^d scales d_theta_k by zeta^-d and a permutation relabels the
indices.  Since v^* is an algebra automorphism and every xi_u is a product of
odd generators with leading terms multiplying like d_theta~, the scalar of
v^*(xi_u) is read off from v . d_theta~_u = c d_theta~_{v u v^-1}.  The
elementary rules (diagonal on diagonal, diagonal on transposition,
transposition on transposition, permutation on diagonal) are special cases and
are exposed separately for testing.
"""

from __future__ import annotations

from .cuptable import Generator, dtilde
from .cyclotomic import CycNum
from .exterior import Ext, proportional
from .fixedlocus import AlgebraElement, Fermat, lift, restrict
from .group import GroupElement
from .polyring import Poly, group_twist


class ActionError(RuntimeError):
    pass


def act_on_dtheta(fm: Fermat, v: GroupElement, e: Ext) -> Ext:
    """Image of a scalar Clifford form under d_theta_k -> zeta^{-g_k} d_theta_{sigma(k)}."""
    out = Ext()
    for S, c in e.terms.items():
        coef = c
        seq = []
        for k in S:
            coef = coef * fm.z(-v.diag[k])
            seq.append(v.perm[k])
        out = out + Ext.mono(seq, coef)
    return out


def xi_scalar(fm: Fermat, v: GroupElement, u: GroupElement) -> CycNum:
    """c with v^*(xi_u) = c xi_{v u v^-1}."""
    img = act_on_dtheta(fm, v, dtilde(fm, u))
    w = u.conj(v)
    c = proportional(img, dtilde(fm, w))
    if c is None or not c:
        raise ActionError(f"{v} does not map d_theta~ of {u} onto that of {w}")
    return c


def act_poly(fm: Fermat, v: GroupElement, phi: Poly, u: GroupElement) -> Poly:
    """phi(v(x)) as a class on Fix(v u v^-1), for phi a reduced class on Fix(u)."""
    amb = group_twist(lift(fm, phi, u), v.perm, v.diag, fm.n)
    return restrict(fm, amb, u.conj(v))


class GAction:
    def __init__(self, fm: Fermat, group=None):
        self.fm = fm
        self.group = group
        self._scal: dict = {}

    def _check(self, v: GroupElement):
        if self.group is not None and v not in self.group.index:
            raise ActionError(f"{v} is not in the group")

    def scalar(self, v: GroupElement, u: GroupElement) -> CycNum:
        key = (v, u)
        if key not in self._scal:
            self._scal[key] = xi_scalar(self.fm, v, u)
        return self._scal[key]

    def act_sector(self, v: GroupElement, u: GroupElement, phi: Poly) -> tuple[GroupElement, Poly]:
        w = u.conj(v)
        return w, act_poly(self.fm, v, phi, u).scale(self.scalar(v, u))

    def act(self, v: GroupElement, a: AlgebraElement) -> AlgebraElement:
        self._check(v)
        out: dict = {}
        for u, p in a.terms.items():
            w, q = self.act_sector(v, u, p)
            out[w] = out[w] + q if w in out else q
        return AlgebraElement(self.fm, out)

    def matrix(self, v: GroupElement, u: GroupElement, basis_u, basis_w) -> list[list[CycNum]]:
        """Matrix of v^* from sector u to sector v u v^-1, columns indexed by basis_u."""
        F, N = self.fm.F, self.fm.N
        cols = []
        for m in basis_u:
            _, q = self.act_sector(v, u, Poly.monomial(F, N, m))
            cols.append([q.coeff(mm) for mm in basis_w])
        return [[cols[j][i] for j in range(len(basis_u))] for i in range(len(basis_w))]


# ---------------------------------------------------------------- elementary rules


def diagonal_on_diagonal(fm: Fermat, h: GroupElement, g: GroupElement) -> CycNum:
    """h^*(xi_g) for diagonal h, g: product of h_i^-1 over the indices moved by g."""
    c = fm.F.one()
    for i in range(fm.N):
        if g.diag[i] % fm.n:
            c = c * fm.z(-h.diag[i])
    return c


def diagonal_on_transposition(fm: Fermat, i: int, gen: Generator) -> tuple[CycNum, Generator]:
    """t_i^*(xi_{(i,j) t_i^d t_j^-d}) = xi_{(i,j) t_i^{d-1} t_j^{1-d}}; t_j shifts d up by one."""
    if gen.kind != "trans":
        raise ValueError("needs a transposition generator")
    one = fm.F.one()
    if i == gen.i:
        return one, Generator("trans", gen.i, gen.j, (gen.d - 1) % fm.n)
    if i == gen.j:
        return one, Generator("trans", gen.i, gen.j, (gen.d + 1) % fm.n)
    return one, gen


def transposition_on_transposition(fm: Fermat, a: int, b: int, gen: Generator) -> tuple[CycNum, Generator]:
    """(a,b)^*(xi_gen) for a pure transposition (a,b), via the action on leading terms."""
    N, n = fm.N, fm.n
    v = GroupElement.from_cycles([(a, b)], N, n)
    u = gen.element(N, n)
    w = u.conj(v)
    return xi_scalar(fm, v, u), Generator.of(w)


def permutation_on_diagonal(fm: Fermat, pi: GroupElement, g: GroupElement) -> tuple[CycNum, GroupElement]:
    """(pi, id)^*(xi_g) = c xi_{pi g pi^-1}; c is the sign of pi on the moved indices of g."""
    return xi_scalar(fm, pi, g), g.conj(pi)


def act_on_special(fm: Fermat, h: GroupElement, c: GroupElement) -> CycNum:
    """Closed form for diagonal h on a special cycle: (prod_{p >= 2} h_{i_p})^-1."""
    (cy,) = c.cycles()
    s = 0
    for i in cy.indices[1:]:
        s -= h.diag[i - 1]
    return fm.z(s)


def act_on_nonspecial(fm: Fermat, h: GroupElement, c: GroupElement) -> CycNum:
    """Closed form for diagonal h on a non-special cycle: (prod_{i in support} h_i)^-1."""
    (cy,) = c.cycles()
    return fm.z(-sum(h.diag[i - 1] for i in cy.indices))
