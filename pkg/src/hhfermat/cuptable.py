"""Closed-form cup product on A'_{f,G_f}.

sigma_{u,v} is computed by writing xi_v as a word in the odd generators
xi_{t_i^d} and xi_{(i,j) t_i^d t_j^-d} and multiplying them onto xi_u one at
a time.  Each step is one of two kinds:

* length-additive (d_{w gamma} = d_w + 1): a unit read off from the leading
  Clifford terms d_theta~_w * d_theta~_gamma = kappa * d_theta~_{w gamma};
* contracting (d_{w gamma} = d_w - 1): with w' = w gamma we have
  xi_{w'} u xi_{gamma^-1} = kappa xi_w, so
  xi_w u xi_gamma = kappa^-1 xi_{w'} u (xi_{gamma^-1} u xi_gamma)
                  = kappa^-1 [P_gamma(w'(x))] xi_{w'},
  where P_gamma is the closed-form inverse-pair class of the generator.

Intermediate polynomials are ambient representatives reduced modulo the
monomial ideal (x_i^{n-1}); only the final class is restricted to Fix(uv).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import product as iproduct
from typing import Sequence

from .cyclotomic import CycNum
from .exterior import Ext, proportional
from .fixedlocus import AlgebraElement, Fermat, lift, restrict, restrict_raw
from .group import CycleFactor, GroupElement
from .polyring import Poly, group_twist


class UncoveredShape(RuntimeError):
    pass


@dataclass(frozen=True)
class Generator:
    """t_i^d (kind "diag", j = 0) or (i,j) t_i^d t_j^-d with i < j (kind "trans"); 1-based."""

    kind: str
    i: int
    j: int
    d: int

    def element(self, N: int, n: int) -> GroupElement:
        diag = [0] * N
        if self.kind == "diag":
            diag[self.i - 1] = self.d
            return GroupElement.diagonal(diag, n)
        diag[self.i - 1] = self.d
        diag[self.j - 1] = -self.d
        return GroupElement.from_cycles([(self.i, self.j)], N, n, diag)

    @classmethod
    def of(cls, g: GroupElement) -> "Generator":
        comps = g.moved_components()
        if len(comps) != 1 or comps[0].k > 2 or (comps[0].k == 2 and not comps[0].special):
            raise ValueError(f"{g} is not a generator")
        c = comps[0]
        if c.k == 1:
            return cls("diag", c.indices[0], 0, c.exps[0])
        return cls("trans", c.indices[0], c.indices[1], c.exps[0])

    def __str__(self):
        if self.kind == "diag":
            return f"t{self.i}^{self.d}"
        return f"({self.i},{self.j})t{self.i}^{self.d}t{self.j}^{-self.d}"


@dataclass(frozen=True)
class GeneratorWord:
    """Cup-multiplying the factors left to right gives scalar * xi_target."""

    scalar: CycNum
    factors: tuple
    target: GroupElement


# ------------------------------------------------------------------ Phi


def phi(fm: Fermat, indices: Sequence[int], D: int = 0) -> Poly:
    """Phi^{(D)}_{i_1..i_k}: sum of monomials of degree (k-1)(n-2), exponents <= n-2, x_{i_1} twisted by zeta^-D."""
    n, N = fm.n, fm.N
    k = len(indices)
    total = (k - 1) * (n - 2)
    out = {}
    for es in iproduct(range(n - 1), repeat=k):
        if sum(es) != total:
            continue
        e = [0] * N
        for i, a in zip(indices, es):
            e[i - 1] = a
        out[tuple(e)] = fm.z(-D * es[0])
    return Poly(fm.F, N, out)


# ------------------------------------------------------------------ leading Clifford terms


def dtilde(fm: Fermat, u: GroupElement) -> Ext:
    """Leading term d_theta~_u (scalar coefficients), components ordered by minimal index."""
    out = Ext({(): fm.F.one()})
    for c in u.components:
        if c.k == 1 and c.A == 0:
            continue
        idx = [i - 1 for i in c.indices]
        if c.k >= 2 and c.special:
            part = Ext()
            for m in range(c.k):
                coef = fm.z(c.gt[m])
                if m % 2:
                    coef = -coef
                part = part + Ext.mono(idx[:m] + idx[m + 1 :], coef)
        else:
            part = Ext.mono(idx, fm.F.one())
        out = out.wedge(part)
    return out


# ------------------------------------------------------------------ closed-form rules


def rule_diag_inverse(fm: Fermat, g: GroupElement) -> Poly:
    """xi_g u xi_{g^-1} for diagonal g: (-1)^{d(d-1)/2} prod 1/(g_i - 1) * prod n x_i^{n-2}."""
    if not g.is_diagonal() or g.is_identity():
        raise ValueError("rule_diag_inverse needs a nontrivial diagonal element")
    moved = [i for i in range(fm.N) if g.diag[i]]
    d = len(moved)
    c = fm.F.rational(-1 if (d * (d - 1) // 2) % 2 else 1)
    e = [0] * fm.N
    for i in moved:
        c = c * fm.n / (fm.z(g.diag[i]) - 1)
        e[i] = fm.n - 2
    return Poly.monomial(fm.F, fm.N, e, c)


def rule_diag_vanishing(fm: Fermat, g: GroupElement, h: GroupElement) -> bool:
    """True when I_g, I_h, I_gh fail to cover every index, so that xi_g u xi_h = 0."""
    gh = g * h
    cover = set(g.fixed_data.I_u) | set(h.fixed_data.I_u) | set(gh.fixed_data.I_u)
    return len(cover) != fm.N


def rule_cycle_inverse(fm: Fermat, u: GroupElement) -> Poly:
    """xi_u u xi_{u^-1} for a special cycle u = (i_1..i_k) t_{i_1}^{d_1}..t_{i_k}^{d_k}.

    Equals (-n)^{k-1} (prod_a g~_a)^2 Phi(g~_1 x_{i_1}, ..., g~_k x_{i_k}) with
    g~ the eigenvector weights of the cycle.  For k = 2 this is Phi^{(d_1)}.
    """
    c = _special_cycle(fm, u)
    n = fm.n
    out = {}
    total = (c.k - 1) * (n - 2)
    w = 2 * sum(c.gt)
    for es in iproduct(range(n - 1), repeat=c.k):
        if sum(es) != total:
            continue
        e = [0] * fm.N
        for i, a in zip(c.indices, es):
            e[i - 1] = a
        out[tuple(e)] = fm.z(w + sum(g * a for g, a in zip(c.gt, es)))
    return Poly(fm.F, fm.N, out).scale((-n) ** (c.k - 1))


def rule_cycle_inverse_stated(fm: Fermat, u: GroupElement) -> Poly:
    """The closed form (-n)^{k-1} Phi^{(D)} with D = -(d_1 + ... + d_{k-1}).

    Kept for comparison only: it agrees with the product for k = 2 and
    d_1 = 0 but not in general (see ``rule_cycle_inverse``).
    """
    c = _special_cycle(fm, u)
    D = -sum(c.exps[: c.k - 1])
    return phi(fm, c.indices, D).scale((-fm.n) ** (c.k - 1))


def _special_cycle(fm: Fermat, u: GroupElement) -> CycleFactor:
    comps = u.moved_components()
    if len(comps) != 1 or comps[0].k < 2 or not comps[0].special:
        raise ValueError("needs a single special cycle")
    return comps[0]


def rule_mixed_transposition(fm: Fermat, u1: GroupElement, u2: GroupElement) -> Poly:
    """xi_{u1} u xi_{u2} for u_a = (i,j) t_i^{d_a} t_j^{-d_a}, as a class in sector u1 u2.

    For d_1 = d_2 this is Phi^{(d_1)} in the identity sector.  Otherwise the
    product is the unit zeta^{d_2} - zeta^{d_1} times xi_{t_i^{d_1-d_2} t_j^{d_2-d_1}},
    read off from the leading terms (d_theta_j - zeta^{d_1} d_theta_i)(d_theta_j - zeta^{d_2} d_theta_i).
    """
    g1, g2 = Generator.of(u1), Generator.of(u2)
    if g1.kind != "trans" or (g1.i, g1.j) != (g2.i, g2.j):
        raise ValueError("needs two transposition generators on the same pair")
    if (g1.d - g2.d) % fm.n:
        return fm.const(fm.z(g2.d) - fm.z(g1.d))
    return rule_cycle_inverse(fm, u1)


def rule_mixed_transposition_stated(fm: Fermat, u1: GroupElement, u2: GroupElement) -> Poly:
    """Variant in which the product vanishes for d_1 != d_2."""
    g1, g2 = Generator.of(u1), Generator.of(u2)
    if (g1.d - g2.d) % fm.n:
        return Poly(fm.F, fm.N)
    return rule_mixed_transposition(fm, u1, u2)


def rule_nonspecial_vanishing(fm: Fermat, a: GroupElement, b: GroupElement) -> bool:
    """True when some index lies in non-special components u of a and v of b with det(u) det(v) != 1.

    In that case xi_a u xi_b = 0.
    """
    def owner(x: GroupElement) -> dict:
        out = {}
        for c in x.moved_components():
            for i in c.indices:
                out[i] = c
        return out

    oa, ob = owner(a), owner(b)
    for i in set(oa) & set(ob):
        ca, cb = oa[i], ob[i]
        if not ca.special and not cb.special and (ca.A + cb.A) % fm.n:
            return True
    return False


def rule_nonspecial_inverse(fm: Fermat, u: GroupElement) -> Poly:
    """xi_u u xi_{u^-1} for a non-special cycle (length k >= 1): n^k/(det - 1) prod x^{n-2}.

    See the decisions ledger: the determinant enters as in the diagonal rule.
    """
    comps = u.moved_components()
    if len(comps) != 1 or comps[0].special:
        raise ValueError("rule_nonspecial_inverse needs a non-special cycle")
    c = comps[0]
    det = fm.z(c.A)
    e = [0] * fm.N
    for i in c.indices:
        e[i - 1] = fm.n - 2
    return Poly.monomial(fm.F, fm.N, e, nonspecial_inverse_scalar(fm, c.k, det))


def nonspecial_inverse_scalar(fm: Fermat, k: int, det: CycNum) -> CycNum:
    return fm.F.rational(fm.n ** k) / (det - 1)


def epsilon_cycles(k: int, l: int, i1: int, j1: int) -> int:
    """Sign of xi_alpha u xi_beta for disjoint pure cycles of lengths k, l with minimal indices i1, j1."""
    return (-1) ** ((k - 1) * (l - 1)) if i1 > j1 else 1


def rule_special_overlap(fm: Fermat, u: GroupElement, v: GroupElement) -> CycNum:
    """Unit c with xi_u u xi_v = c xi_{uv} for special cycles sharing exactly one index."""
    (cu,), (cv,) = u.cycles(), v.cycles()
    shared = set(cu.indices) & set(cv.indices)
    if len(shared) != 1:
        raise ValueError("cycles must share exactly one index")
    s = shared.pop()
    a, b = cu.indices.index(s), cv.indices.index(s)
    pu = GroupElement(u.perm, (0,) * fm.N, fm.n)
    pv = GroupElement(v.perm, (0,) * fm.N, fm.n)
    eps = lead(fm, pu, pv)
    if cu.indices[0] < cv.indices[0]:
        return eps * fm.z(cv.gt[b])
    return eps * fm.z(cu.gt[a])


def rule_special_times_diag(fm: Fermat, c: GroupElement, h: GroupElement, left: bool = False) -> Poly:
    """Class of xi_c u xi_h (or xi_h u xi_c with left=True) in the product sector.

    c is a special cycle and h a diagonal element supported on it.  One moved
    index i_a: the unit (-1)^{k-1} g~_{i_a} (right) or g~_{i_a} (left).  Two
    moved indices with h special: n g~_{i_a} g~_{i_b} w x~^{n-2}, where for
    p = min(i_a, i_b)

    * i_1 moved: w = h_p/(h_p - 1) on the right and 1/(h_p - 1) on the left;
    * i_1 fixed: w = h_p/(h_p - 1) if p precedes the other index along the
      cycle and 1/(h_p - 1) otherwise, for both orders.

    Two non-special indices give zero, as do three or more moved indices
    when n >= 3 (at n = 2 the latter can be a nonzero constant).
    """
    (cy,) = c.cycles()
    moved = [i for i in range(1, fm.N + 1) if h.diag[i - 1]]
    n = fm.n
    zero = Poly(fm.F, fm.N)
    if not set(moved) <= set(cy.indices):
        raise ValueError("h must be supported on the cycle")
    if len(moved) == 1:
        a = cy.indices.index(moved[0])
        g = fm.z(cy.gt[a])
        return fm.const(g if left else g * (-1) ** (cy.k - 1))
    if not h.is_special() or len(moved) != 2:
        return zero
    ia, ib = moved
    p = min(moved)
    a, b = cy.indices.index(ia), cy.indices.index(ib)
    hp = fm.z(h.diag[p - 1])
    if cy.indices[0] in moved:
        numer = fm.F.one() if left else hp
    else:
        q = max(moved)
        numer = hp if cy.indices.index(p) < cy.indices.index(q) else fm.F.one()
    c0 = fm.z(cy.gt[a]) * fm.z(cy.gt[b]) * n * numer / (hp - 1)
    e = [0] * fm.N
    e[cy.indices[0] - 1] = n - 2
    return Poly.monomial(fm.F, fm.N, e, c0)


def rule_special_times_diag_stated(fm: Fermat, c: GroupElement, h: GroupElement, left: bool = False) -> Poly:
    """Two-index case with w = h_p/(h_p - 1) on the right and 1/(h_p - 1) on the left regardless of position."""
    (cy,) = c.cycles()
    moved = [i for i in range(1, fm.N + 1) if h.diag[i - 1]]
    if len(moved) != 2 or not h.is_special():
        return rule_special_times_diag(fm, c, h, left)
    p = min(moved)
    a, b = cy.indices.index(moved[0]), cy.indices.index(moved[1])
    hp = fm.z(h.diag[p - 1])
    c0 = fm.z(cy.gt[a]) * fm.z(cy.gt[b]) * fm.n * (fm.F.one() if left else hp) / (hp - 1)
    e = [0] * fm.N
    e[cy.indices[0] - 1] = fm.n - 2
    return Poly.monomial(fm.F, fm.N, e, c0)


# ------------------------------------------------------------------ engine


_LEAD: dict = {}


def lead(fm: Fermat, u: GroupElement, v: GroupElement):
    """kappa with d_theta~_u d_theta~_v = kappa d_theta~_{uv}, or None when not proportional."""
    key = (fm, u, v)
    if key in _LEAD:
        return _LEAD[key]
    P = dtilde(fm, u).wedge(dtilde(fm, v))
    T = dtilde(fm, u * v)
    c = proportional(P, T)
    _LEAD[key] = c
    return c


def epsilon(fm: Fermat, u: GroupElement, v: GroupElement) -> CycNum:
    if (u * v).d != u.d + v.d:
        raise UncoveredShape(f"epsilon needs a length-additive pair, got {u}, {v}")
    c = lead(fm, u, v)
    if c is None or not c:
        raise UncoveredShape(f"leading terms of {u}, {v} are not proportional to the product")
    return c


def inverse_pair_class(fm: Fermat, gamma: GroupElement) -> Poly:
    """P_gamma = sigma_{gamma^-1, gamma} for a generator, from the closed-form rules."""
    gen = Generator.of(gamma)
    if gen.kind == "diag":
        return rule_diag_inverse(fm, gamma.inverse())
    return rule_cycle_inverse(fm, gamma)


def component_word(fm: Fermat, c: CycleFactor) -> list[GroupElement]:
    N, n = fm.N, fm.n
    e = c.element(N)
    if c.k == 1:
        return [e]
    word = []
    if not c.special:
        t = GroupElement.t(c.indices[0], c.A, N, n)
        word.append(t)
        e = t.inverse() * e
    R = e
    idx = c.indices
    for a in range(c.k - 1):
        i, j = idx[a], idx[a + 1]
        for d in range(n):
            diag = [0] * N
            diag[i - 1], diag[j - 1] = d, -d
            alpha = GroupElement.from_cycles([(i, j)], N, n, diag)
            R2 = alpha * R
            if R2.perm[i - 1] == i - 1 and R2.diag[i - 1] == 0:
                break
        else:  # pragma: no cover - the peel always succeeds
            raise UncoveredShape(f"cannot peel {c}")
        word.append(alpha)
        R = R2
    assert R.is_identity()
    return word


class CupEngine:
    """Memoized sigma_{u,v} and cup products for one Fermat setting."""

    def __init__(self, fm: Fermat):
        self.fm = fm
        self._word: dict = {}
        self._sigma: dict = {}
        self._P: dict = {}
        self.stats = {"sigma_calls": 0}

    # words
    def word(self, u: GroupElement) -> GeneratorWord:
        if u in self._word:
            return self._word[u]
        fm = self.fm
        gens: list[GroupElement] = []
        for c in u.components:
            if c.k >= 2 or c.A:
                gens.extend(component_word(fm, c))
        s = fm.F.one()
        if gens:
            w = gens[0]
            for g in gens[1:]:
                s = s * epsilon(fm, w, g)
                w = w * g
            assert w == u
        out = GeneratorWord(s, tuple(Generator.of(g) for g in gens), u)
        self._word[u] = out
        return out

    def word_elements(self, u: GroupElement) -> list[GroupElement]:
        return [g.element(self.fm.N, self.fm.n) for g in self.word(u).factors]

    def P(self, gamma: GroupElement) -> Poly:
        if gamma not in self._P:
            self._P[gamma] = inverse_pair_class(self.fm, gamma)
        return self._P[gamma]

    def times_generator(self, w: GroupElement, gamma: GroupElement) -> tuple[CycNum, Poly | None, GroupElement]:
        """xi_w u xi_gamma = c [phi] xi_{w gamma}; phi None means phi = 1."""
        fm = self.fm
        wg = w * gamma
        if wg.d == w.d + 1:
            return epsilon(fm, w, gamma), None, wg
        if wg.d == w.d - 1:
            kappa = epsilon(fm, wg, gamma.inverse())
            Pw = group_twist(self.P(gamma), wg.perm, wg.diag, fm.n)
            return kappa.inverse(), Pw, wg
        return fm.F.zero(), None, wg

    def sigma(self, u: GroupElement, v: GroupElement) -> Poly:
        """Ambient representative of sigma_{u,v} (reduced mod x_i^{n-1})."""
        key = (u, v)
        if key in self._sigma:
            return self._sigma[key]
        self.stats["sigma_calls"] += 1
        fm = self.fm
        uv = u * v
        dd = u.d + v.d - uv.d
        zero = Poly(fm.F, fm.N)
        if dd < 0 or dd % 2:
            self._sigma[key] = zero
            return zero
        word = self.word(v)
        coef = word.scalar.inverse()
        poly = fm.one()
        w = u
        for g in self.word_elements(v):
            c, ph, w = self.times_generator(w, g)
            if not c:
                poly = zero
                break
            coef = coef * c
            if ph is not None:
                poly = poly.mul(ph, cap=fm.n - 2)
                if not poly:
                    break
        assert not poly or w == uv
        out = poly.scale(coef)
        self._sigma[key] = out
        return out

    def sigma_class(self, u: GroupElement, v: GroupElement) -> Poly:
        return restrict(self.fm, self.sigma(u, v), u * v)

    def cup_sector(self, u: GroupElement, phi_u: Poly, v: GroupElement, psi_v: Poly) -> Poly:
        """Reduced class of [phi] xi_u u [psi] xi_v in sector uv."""
        fm = self.fm
        s = self.sigma(u, v)
        if not s:
            return s
        a = lift(fm, phi_u, u)
        b = group_twist(lift(fm, psi_v, v), u.perm, u.diag, fm.n)
        return restrict(fm, a.mul(b, cap=None).mul(s), u * v)

    def cup(self, a: AlgebraElement, b: AlgebraElement) -> AlgebraElement:
        out: dict = {}
        for u, p in a.terms.items():
            for v, q in b.terms.items():
                r = self.cup_sector(u, p, v, q)
                if r:
                    w = u * v
                    out[w] = out[w] + r if w in out else r
        return AlgebraElement(self.fm, out)
