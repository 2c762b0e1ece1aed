"""Property suites shared by the CLI ``verify`` command and the test-suite.

Every suite returns a ``PropertyResult``; none of them raises on a failed
property.  Suites that iterate over "all basis triples" skip triples whose two
sides vanish for sector reasons, and report how many were actually computed.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from itertools import permutations, product

from .clifford_oracle import CliffordOracle
from .cuptable import (
    CupEngine,
    Generator,
    rule_cycle_inverse,
    rule_cycle_inverse_stated,
    rule_diag_inverse,
    rule_diag_vanishing,
    rule_mixed_transposition,
    rule_mixed_transposition_stated,
    rule_nonspecial_inverse,
    rule_nonspecial_vanishing,
    rule_special_overlap,
    rule_special_times_diag,
    rule_special_times_diag_stated,
)
from .fixedlocus import AlgebraElement, Fermat, monomial_basis, restrict
from .gaction import GAction
from .grading_pairing import bidegree, element_bidegrees, eta, hessian_relation_holds
from .group import Group, GroupElement
from .invariants import character_dimension, global_averaging_dimension, hh_algebra
from .polyring import Poly


@dataclass
class PropertyResult:
    name: str
    passed: bool
    checked: int
    failures: list = field(default_factory=list)
    seconds: float = 0.0
    extra: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {"name": self.name, "passed": self.passed, "checked": self.checked, "failures": self.failures[:5], "seconds": round(self.seconds, 3), **self.extra}


class _Run:
    def __init__(self, name: str):
        self.name, self.checked, self.failures, self.t0 = name, 0, [], time.perf_counter()
        self.extra: dict = {}

    def check(self, ok: bool, what) -> None:
        self.checked += 1
        if not ok:
            self.failures.append(str(what))

    def done(self) -> PropertyResult:
        return PropertyResult(self.name, not self.failures, self.checked, self.failures, time.perf_counter() - self.t0, self.extra)


def full_basis(fm: Fermat, group: Group) -> list[AlgebraElement]:
    return [AlgebraElement.monomial(fm, u, m) for u in group for m in monomial_basis(fm, u)]


def _sector(a: AlgebraElement) -> GroupElement:
    (u,) = a.terms
    return u


class Context:
    """Group, field, engine, action and full sector basis for one setting."""

    def __init__(self, group: Group, L: int | None = None):
        self.group = group
        self.fm = Fermat(group.n, group.N, L or group.eigen_order())
        self.engine = CupEngine(self.fm)
        self.action = GAction(self.fm, group)
        self.basis = full_basis(self.fm, group)
        self.by_sector: dict = {}
        for a in self.basis:
            self.by_sector.setdefault(_sector(a), []).append(a)
        self._table: list | None = None

    def coords(self, a: AlgebraElement) -> dict:
        """Sparse coordinates {basis index: coeff}; products are Jacobian-reduced, so monomials suffice."""
        return {self.index[(u, m)]: c for u, p in a.terms.items() for m, c in p.t.items() if c}

    @property
    def table(self) -> list:
        """table[i][j] = coords(b_i u b_j), computed once."""
        if self._table is None:
            self.index = {(_sector(a), next(iter(a.terms[_sector(a)].t))): i for i, a in enumerate(self.basis)}
            E = self.engine
            self._table = [[self.coords(E.cup(a, b)) for b in self.basis] for a in self.basis]
        return self._table


# ------------------------------------------------------------------ sanity


def ages(ctx: Context) -> PropertyResult:
    r = _Run("age(u) + age(u^-1) = d_u")
    for u in ctx.group:
        r.check(u.fixed_data.age + u.inverse().fixed_data.age == u.d, u)
    return r.done()


def jacobian_dims(ctx: Context) -> PropertyResult:
    r = _Run("dim Jac(f^u) = (n-1)^N_u")
    for u in ctx.group:
        r.check(len(monomial_basis(ctx.fm, u)) == (ctx.fm.n - 1) ** u.N_u, u)
    return r.done()


def hessian_relation(ctx: Context) -> PropertyResult:
    r = _Run("H_{u^-1} = (-1)^M_u det(u)^-1 H_u")
    for u in ctx.group:
        r.check(hessian_relation_holds(ctx.fm, u), u)
    return r.done()


def class_vs_global(ctx: Context, global_cap: int = 64) -> PropertyResult:
    r = _Run("class-wise invariant dimension = global averaging dimension")
    alg = hh_algebra(ctx.group, L=ctx.fm.L, engine=ctx.engine, action=ctx.action, verify=False)
    chi = character_dimension(ctx.action, ctx.group)
    r.check(chi == alg.dimension, f"character {chi} vs class-wise {alg.dimension}")
    r.extra["dimension"] = alg.dimension
    if len(ctx.group) <= global_cap:
        g = global_averaging_dimension(ctx.action, ctx.group)
        r.check(g == alg.dimension, f"averaging rank {g} vs class-wise {alg.dimension}")
        r.extra["averaging_rank"] = g
    return r.done()


# ------------------------------------------------------------------ algebra on A'


def _mul_left(T: list, x: dict, j: int, zero) -> dict:
    out: dict = {}
    for i, a in x.items():
        for k, c in T[i][j].items():
            out[k] = out.get(k, zero) + a * c
    return {k: v for k, v in out.items() if v}


def _mul_right(T: list, i: int, x: dict, zero) -> dict:
    out: dict = {}
    for j, a in x.items():
        for k, c in T[i][j].items():
            out[k] = out.get(k, zero) + a * c
    return {k: v for k, v in out.items() if v}


def associativity(ctx: Context, sample: int | None = None, seed: int = 0) -> PropertyResult:
    """(ab)c = a(bc) on basis triples.

    All triples go through the basis product table (|B|^2 cups); a sample
    multiplies elements directly instead.
    """
    r = _Run("associativity on basis triples")
    E, B = ctx.engine, ctx.basis
    if sample is None:
        T, zero, d = ctx.table, ctx.fm.F.zero(), len(B)
        for i in range(d):
            Ti = T[i]
            for j in range(d):
                ab = Ti[j]
                Tj = T[j]
                for k in range(d):
                    bc = Tj[k]
                    if not ab and not bc:
                        r.checked += 1
                        continue
                    r.check(_mul_left(T, ab, k, zero) == _mul_right(T, i, bc, zero), (B[i], B[j], B[k]))
        return r.done()
    rng = random.Random(seed)
    triples = (tuple(rng.choice(B) for _ in range(3)) for _ in range(sample))
    for a, b, c in triples:
        ab = E.cup(a, b)
        bc = E.cup(b, c)
        if not ab and not bc:
            r.checked += 1
            continue
        r.check(E.cup(ab, c) == E.cup(a, bc), (a, b, c))
    return r.done()


def braided_commutativity(ctx: Context) -> PropertyResult:
    r = _Run("braided commutativity a u b = (-1)^{|a||b|} b u v^-1*(a)")
    E, A = ctx.engine, ctx.action
    for a in ctx.basis:
        u = _sector(a)
        for b in ctx.basis:
            v = _sector(b)
            rhs = E.cup(b, A.act(v.inverse(), a))
            if (u.d * v.d) % 2:
                rhs = -rhs
            r.check(E.cup(a, b) == rhs, (a, b))
    return r.done()


def action_homomorphism(ctx: Context, per_pair: int = 4, seed: int = 0) -> PropertyResult:
    r = _Run("(vw)^* = v^* w^*")
    rng = random.Random(seed)
    A = ctx.action
    for v in ctx.group:
        for w in ctx.group:
            for a in rng.sample(ctx.basis, min(per_pair, len(ctx.basis))):
                r.check(A.act(v * w, a) == A.act(v, A.act(w, a)), (v, w, a))
    return r.done()


def action_is_automorphism(ctx: Context, sample: int = 300, seed: int = 0) -> PropertyResult:
    r = _Run("v^*(a u b) = v^*a u v^*b")
    rng = random.Random(seed)
    E, A = ctx.engine, ctx.action
    for _ in range(sample):
        v, a, b = rng.choice(ctx.group.elements), rng.choice(ctx.basis), rng.choice(ctx.basis)
        r.check(A.act(v, E.cup(a, b)) == E.cup(A.act(v, a), A.act(v, b)), (v, a, b))
    return r.done()


def frobenius(ctx: Context) -> PropertyResult:
    """eta(a u b, c) = eta(a, b u c); only triples with c in sector (uv)^-1 can be nonzero."""
    r = _Run("Frobenius eta(a u b, c) = eta(a, b u c)")
    T, B, zero = ctx.table, ctx.basis, ctx.fm.F.zero()
    pos = {id(a): i for i, a in enumerate(B)}
    gram: dict = {}

    def pair(x: dict, k: int, left: bool):
        s = zero
        for m, c in x.items():
            key = (m, k) if left else (k, m)
            if key not in gram:
                gram[key] = eta(B[key[0]], B[key[1]])
            s = s + c * gram[key]
        return s

    for i, a in enumerate(B):
        u = _sector(a)
        for j, b in enumerate(B):
            w = (u * _sector(b)).inverse()
            for c in ctx.by_sector.get(w, []):
                k = pos[id(c)]
                r.check(pair(T[i][j], k, True) == pair(T[j][k], i, False), (a, b, c))
    r.extra["all_triples"] = len(B) ** 3
    return r.done()


def grading_additivity(ctx: Context) -> PropertyResult:
    r = _Run("bigrading additive on nonzero products")
    E, fm = ctx.engine, ctx.fm
    for a in ctx.basis:
        u = _sector(a)
        qa = bidegree(fm, u, a.terms[u])
        for b in ctx.basis:
            ab = E.cup(a, b)
            if not ab:
                continue
            v = _sector(b)
            qb = bidegree(fm, v, b.terms[v])
            r.check(element_bidegrees(ab) == {(qa[0] + qb[0], qa[1] + qb[1])}, (a, b))
    return r.done()


def eta_invariance(ctx: Context) -> PropertyResult:
    r = _Run("eta(v^*a, v^*b) = eta(a, b)")
    A = ctx.action
    for u, au in ctx.by_sector.items():
        bu = ctx.by_sector.get(u.inverse(), [])
        for v in ctx.group:
            for a in au:
                va = A.act(v, a)
                for b in bu:
                    r.check(eta(va, A.act(v, b)) == eta(a, b), (v, a, b))
    return r.done()


def sector_nondegeneracy(ctx: Context) -> PropertyResult:
    r = _Run("eta nondegenerate between A'_u and A'_{u^-1}")
    for u, au in ctx.by_sector.items():
        bu = ctx.by_sector[u.inverse()]
        for a in au:
            r.check(any(eta(a, b) for b in bu), a)
    return r.done()


def invariant_algebra(ctx: Context) -> PropertyResult:
    r = _Run("invariant algebra: associative, supercommutative, Frobenius, nondegenerate, unital")
    alg = hh_algebra(ctx.group, L=ctx.fm.L, engine=ctx.engine, action=ctx.action)
    for k, v in alg.flags.items():
        if k != "diag_in_SL":
            r.check(v, k)
    r.extra["dimension"] = alg.dimension
    return r.done()


def oracle_agreement(ctx: Context, frame: str = "koszul") -> PropertyResult:
    r = _Run("Clifford oracle sigma = cup table sigma")
    O = CliffordOracle(ctx.fm, frame=frame)
    inc = 0
    for u in ctx.group:
        for v in ctx.group:
            res = O.sigma(u, v)
            inc += not res.conclusive
            r.check(res.sigma == ctx.engine.sigma_class(u, v), (u, v))
    r.extra["inconclusive"] = inc
    r.extra["inconclusive_rate"] = inc / max(1, r.checked)
    return r.done()


def full_suite(ctx: Context, triples: bool = True) -> list[PropertyResult]:
    out = [oracle_agreement(ctx), ages(ctx), jacobian_dims(ctx), hessian_relation(ctx), class_vs_global(ctx)]
    out.append(associativity(ctx) if triples else associativity(ctx, sample=2000))
    out += [braided_commutativity(ctx), action_homomorphism(ctx), action_is_automorphism(ctx)]
    out += [frobenius(ctx), grading_additivity(ctx), sector_nondegeneracy(ctx)]
    if ctx.group.diag_in_sl():
        out += [eta_invariance(ctx), invariant_algebra(ctx)]
    return out


# ------------------------------------------------------------------ closed-form rules


def single_cycles(N: int, n: int, k: int):
    """All elements whose only moved component is one k-cycle (k >= 2) or one t_i^d (k = 1)."""
    for idx in permutations(range(1, N + 1), k):
        if idx[0] != min(idx):
            continue
        for ds in product(range(n), repeat=k):
            if k == 1 and ds[0] == 0:
                continue
            diag = [0] * N
            for i, d in zip(idx, ds):
                diag[i - 1] = d
            yield GroupElement.from_cycles([idx], N, n, diag)


def all_elements(N: int, n: int) -> list[GroupElement]:
    """Every element of S_N x| (Z/n)^N, in sort order."""
    out = []
    for perm in permutations(range(N)):
        for diag in product(range(n), repeat=N):
            out.append(GroupElement(perm, diag, n))
    return sorted(out, key=GroupElement.sort_key)


def _const(p: Poly):
    return p.coeff((0,) * p.nv) if p.is_const() or not p else None


def rule_suite(fm: Fermat, pair_sample: int | None = None, seed: int = 0) -> dict[str, PropertyResult]:
    """Every closed-form rule against the engine on all applicable shapes of (N, n).

    The non-special vanishing rule ranges over pairs of all of G_f; with
    ``pair_sample`` set, that one check uses a random sample of pairs instead.
    """
    N, n = fm.N, fm.n
    E = CupEngine(fm)
    idn = GroupElement.identity(N, n)
    out = {}

    r = _Run("transposition square: xi_(ij) u xi_(ij) = -n Phi")
    for u in single_cycles(N, n, 2):
        if not any(u.diag):
            r.check(E.sigma(u, u) == rule_cycle_inverse(fm, u), u)
    out["transposition_square"] = r.done()

    r = _Run("mixed transpositions (verified form)")
    st = _Run("mixed transpositions, including d1 != d2 vanishing")
    for u1 in single_cycles(N, n, 2):
        if not u1.is_special():
            continue
        for u2 in single_cycles(N, n, 2):
            if u2.is_special() and u2.perm == u1.perm:
                got = restrict(fm, E.sigma(u1, u2), u1 * u2)
                r.check(got == restrict(fm, rule_mixed_transposition(fm, u1, u2), u1 * u2), (u1, u2))
                st.check(got == restrict(fm, rule_mixed_transposition_stated(fm, u1, u2), u1 * u2), (u1, u2))
    out["mixed_transposition"] = r.done()
    out["mixed_transposition_stated"] = st.done()

    r = _Run("special cycle with inverse (verified closed form)")
    s = _Run("special cycle with inverse, D = -(d_1+...+d_{k-1})")
    for k in range(2, N + 1):
        for u in single_cycles(N, n, k):
            if u.is_special():
                got = E.sigma(u, u.inverse())
                r.check(got == rule_cycle_inverse(fm, u), u)
                s.check(got == rule_cycle_inverse_stated(fm, u), u)
    out["cycle_inverse"] = r.done()
    out["cycle_inverse_stated"] = s.done()

    r = _Run("non-special inverse: sigma_{u^-1,u} = n^k det/(1-det)")
    r2 = _Run("non-special inverse: sigma_{u,u^-1} = n^k/(det-1)")
    for k in range(1, N + 1):
        for u in single_cycles(N, n, k):
            if u.is_special():
                continue
            det = fm.z(u.det_exponent())
            e = [0] * N
            for c in u.moved_components():
                for i in c.indices:
                    e[i - 1] = n - 2
            stated = Poly.monomial(fm.F, N, e, fm.F.rational(n**k) * det / (1 - det))
            r.check(restrict(fm, E.sigma(u.inverse(), u), idn) == stated, u)
            r2.check(restrict(fm, E.sigma(u, u.inverse()), idn) == rule_nonspecial_inverse(fm, u), u)
    out["nonspecial_inverse_reversed"] = r.done()
    out["nonspecial_inverse"] = r2.done()

    diags = [GroupElement.diagonal(d, n) for d in product(range(n), repeat=N) if any(d)]
    r = _Run("diagonal with inverse")
    v = _Run("diagonal vanishing when I_g, I_h, I_gh miss an index")
    for g in diags:
        r.check(E.sigma(g, g.inverse()) == rule_diag_inverse(fm, g), g)
        for h in diags:
            if rule_diag_vanishing(fm, g, h):
                v.check(not E.sigma_class(g, h), (g, h))
    out["diag_inverse"] = r.done()
    out["diag_vanishing"] = v.done()

    r = _Run("non-special pieces sharing an index with det(u_a) det(v_b) != 1 vanish")
    full = all_elements(N, n)
    if pair_sample is None:
        pairs = ((a, b) for a in full if not all(c.special for c in a.moved_components()) for b in full)
    else:
        rng = random.Random(seed)
        pairs = ((rng.choice(full), rng.choice(full)) for _ in range(pair_sample))
    for a, b in pairs:
        if rule_nonspecial_vanishing(fm, a, b):
            r.check(not E.sigma_class(a, b), (a, b))
    out["nonspecial_vanishing"] = r.done()

    r = _Run("special cycles sharing one index: unit")
    cyc = [u for k in range(2, N + 1) for u in single_cycles(N, n, k) if u.is_special()]
    for u in cyc:
        for w in cyc:
            if len(set(u.cycles()[0].indices) & set(w.cycles()[0].indices)) == 1 and (u * w).d == u.d + w.d:
                c = _const(E.sigma_class(u, w))
                r.check(c is not None and c == rule_special_overlap(fm, u, w), (u, w))
    out["special_overlap"] = r.done()

    r = _Run("special cycle times diagonal, both cases and both orders")
    st = _Run("special cycle times diagonal, two-index case as stated")
    for c in cyc:
        idx = c.cycles()[0].indices
        for h in diags:
            if not all(h.diag[i] == 0 for i in range(N) if i + 1 not in idx):
                continue
            if sum(1 for x in h.diag if x) > 2:
                continue
            for left in (False, True):
                a, b = (h, c) if left else (c, h)
                got = restrict(fm, E.sigma(a, b), a * b)
                r.check(got == rule_special_times_diag(fm, c, h, left=left), (a, b))
                st.check(got == rule_special_times_diag_stated(fm, c, h, left=left), (a, b))
    out["special_times_diag"] = r.done()
    out["special_times_diag_stated"] = st.done()
    return out
