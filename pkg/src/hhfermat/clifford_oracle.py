"""Independent oracle for sigma_{u,v} via the Clifford/Koszul structure-constant formula.

Clifford elements are ``Ext`` objects whose coefficients are ambient
polynomials (``Poly``); theta_i acts by contraction.  Everything is expanded
literally:

    Upsilon( exp(H_f(x, u(x), x)) . xi~_u (x) u(xi~_v) ),   xi~_w = exp(H_{f,w}) d_theta~_w,

then the degree-d_{uv} part is split into its d_theta~_{uv} component and a
residual, both restricted to Fix(uv) and Jacobian-reduced.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Sequence

from .cuptable import dtilde
from .cyclotomic import CycNum
from .exterior import Ext, sort_sign
from .fixedlocus import Fermat, restrict
from .group import GroupElement
from .polyring import Poly, diff_derivative, group_twist, substitute


# ------------------------------------------------------------------ helpers


def root_of_unity(fm: Fermat, m: int, e: int) -> CycNum:
    """zeta_m^e, reduced to lowest terms before looking it up in Q(zeta_L)."""
    e %= m
    g = gcd(e, m)
    m, e = m // g, e // g
    L = fm.L
    if L % m and L % 2 and (2 * L) % m == 0:
        # zeta_{2L} = -zeta_L^{(L+1)/2} when L is odd
        k = e * (2 * L // m)
        r = fm.F.root(k * (L + 1) // 2)
        return -r if k % 2 else r
    return fm.F.zeta(m, e)


def theta_action(i: int, e: Ext) -> Ext:
    """theta_i acting on C[d_theta] (0-based index)."""
    return e.contract(i)


def _lift_poly(e: Ext, F, N) -> Ext:
    return Ext({S: (c if isinstance(c, Poly) else Poly.const(F, N, c)) for S, c in e.terms.items()})


# ------------------------------------------------------------------ eigen coordinates


@dataclass(frozen=True)
class EigenCoord:
    """One eigen coordinate X = sum_i coeffs[i] x_i with u-eigenvalue lam."""

    key: tuple  # (component min index, b)
    coeffs: tuple  # ((0-based i, CycNum), ...)
    lam: CycNum


def eigen_coords(fm: Fermat, u: GroupElement) -> tuple[list[EigenCoord], list[Poly]]:
    """Eigen coordinates ordered by (component min index, b) and the inverse images x_i in them.

    The second list gives each ambient x_i as a linear polynomial in the N
    eigen variables (variable p = p-th eigen coordinate).
    """
    F, N, n = fm.F, fm.N, fm.n
    coords: list[EigenCoord] = []
    inv_terms: dict = {}
    for c in u.components:
        k, A = c.k, c.A
        lams = [root_of_unity(fm, n * k, A + n * b) for b in range(k)]
        gts = [fm.z(g) for g in c.gt]
        base = len(coords)
        for b in range(k):
            lam = lams[b]
            li = lam.inverse()
            co = []
            for a, i in enumerate(c.indices):
                co.append((i - 1, li ** a * gts[a] / k))
            coords.append(EigenCoord((c.indices[0], b), tuple(co), lam))
        for a, i in enumerate(c.indices):
            ginv = gts[a].inverse()
            inv_terms[i - 1] = [(base + b, lams[b] ** a * ginv) for b in range(k)]
    images = []
    for i in range(N):
        p = Poly(F, N)
        for pos, coef in inv_terms[i]:
            p = p + Poly.var(F, N, pos, coef)
        images.append(p)
    return coords, images


def _forward_images(fm: Fermat, coords: list[EigenCoord]) -> list[Poly]:
    """X_p as linear polynomials in ambient x."""
    out = []
    for ec in coords:
        p = Poly(fm.F, fm.N)
        for i, c in ec.coeffs:
            p = p + Poly.var(fm.F, fm.N, i, c)
        out.append(p)
    return out


# ------------------------------------------------------------------ H_f and H_{f,u}


def h_f_generic(fm: Fermat) -> list[Poly]:
    """Coefficients of theta_i (x) theta_i in H_f(x, y, z) as polynomials in 3N variables (x, y, z tiers).

    Computed from difference derivatives; off-diagonal pairs vanish for Fermat f.
    """
    N = fm.N
    f3 = Poly(fm.F, 3 * N, {tuple(fm.n if j == i else 0 for j in range(3 * N)): fm.F.one() for i in range(N)})
    out = []
    for i in range(N):
        d1 = diff_derivative(f3, i, N, 0, 1)
        out.append(diff_derivative(d1, i, N, 1, 2))
    return out


def h_f_twisted(fm: Fermat, u: GroupElement) -> list[Poly]:
    """c_i with H_f(x, u(x), x) = sum_i c_i theta_i (x) theta_i (closed form)."""
    F, N, n = fm.F, fm.N, fm.n
    out = []
    for i in range(N):
        s = u.perm[i]
        g = u.diag[i]
        p = Poly(F, N)
        for a in range(n - 1):
            b = n - 2 - a
            e = [0] * N
            e[i] += a
            e[s] += b
            p = p + Poly.monomial(F, N, e, fm.z(g * b) * (a + 1))
        out.append(p)
    return out


def h_f_twisted_generic(fm: Fermat, u: GroupElement) -> list[Poly]:
    """Same as ``h_f_twisted`` but by substituting y = u(x), z = x into ``h_f_generic``."""
    F, N = fm.F, fm.N
    xs = [Poly.var(F, N, i) for i in range(N)]
    ys = [Poly.var(F, N, u.perm[i], fm.z(u.diag[i])) for i in range(N)]
    return [substitute(c, xs + ys + xs) for c in h_f_generic(fm)]


def h_fu(fm: Fermat, u: GroupElement) -> list[tuple[int, int, Poly]]:
    """H_{f,u} as a list (j, i, coefficient) meaning coefficient * theta~_j theta~_i (eigen positions, j < i)."""
    F, N = fm.F, fm.N
    coords, images = eigen_coords(fm, u)
    moved = [p for p, ec in enumerate(coords) if ec.lam != F.one()]
    if len(moved) < 2:
        return []
    # f in eigen variables, placed in tier 0 of a 2N-variable ring
    fX = substitute(fm.poly(), images)
    two = [Poly.var(F, 2 * N, p) for p in range(N)]
    f2 = substitute(fX, two)
    Xs = [Poly.var(F, N, p) for p in range(N)]
    lamX = [Poly.var(F, N, p, coords[p].lam) for p in range(N)]
    projX = [Poly.var(F, N, p) if coords[p].lam == F.one() else Poly(F, N) for p in range(N)]
    out = []
    for i in moved:
        di = substitute(diff_derivative(f2, i, N, 0, 1), Xs + lamX)
        di2 = substitute(di, two)
        for j in moved:
            if j >= i:
                break
            dj = substitute(diff_derivative(di2, j, N, 0, 1), Xs + projX)
            if dj:
                w = (F.one() - coords[j].lam).inverse()
                out.append((j, i, dj.scale(w)))
    return out


class OracleSector:
    """Clifford data of one group element: eigen frame, xi~_u in the standard d_theta basis."""

    def __init__(self, fm: Fermat, u: GroupElement):
        self.fm = fm
        self.u = u
        self.coords, self.images = eigen_coords(fm, u)
        self.forward = _forward_images(fm, self.coords)
        self.H = h_fu(fm, u)
        self.lead = _lift_poly(dtilde(fm, u), fm.F, fm.N)

    def theta_tilde(self, p: int) -> dict:
        return {i: c for i, c in self.coords[p].coeffs}

    def act_theta_tilde(self, p: int, e: Ext) -> Ext:
        return e.contract_form(self.theta_tilde(p))

    def act_H(self, e: Ext) -> Ext:
        out = Ext()
        for j, i, c in self.H:
            cx = substitute(c, self.forward)
            t = self.act_theta_tilde(j, self.act_theta_tilde(i, e))
            out = out + t.map_coeffs(lambda a, cx=cx: cx * a)
        return out

    def xi_tilde_eigen(self) -> Ext:
        """exp(H_{f,u}) d_theta~_u with H_{f,u} taken in the eigen frame of u."""
        total = self.lead
        term = self.lead
        m = 1
        while True:
            term = self.act_H(term)
            if not term:
                break
            term = term.map_coeffs(lambda a, m=m: a.scale(self.fm.F.rational(1) / m))
            total = total + term
            m += 1
        return total

    # ---- eigen frame <-> standard frame
    def _P(self, b: int, a: int) -> CycNum:
        """Coefficient of x_a in X_b."""
        return dict(self.coords[b].coeffs).get(a, self.fm.F.zero())

    def _Pinv(self, a: int, b: int) -> CycNum:
        """Coefficient of X_b in x_a."""
        N = self.fm.N
        return self.images[a].coeff(tuple(1 if q == b else 0 for q in range(N)))

    def _change(self, e: Ext, gen_image, coeff_map) -> Ext:
        F, N = self.fm.F, self.fm.N
        out = Ext()
        for S, c in e.terms.items():
            acc = Ext({(): coeff_map(c)})
            for a in S:
                acc = acc.wedge(gen_image[a])
            out = out + acc
        return out

    def to_frame(self, e: Ext) -> Ext:
        F, N = self.fm.F, self.fm.N
        gen = [Ext({(b,): Poly.const(F, N, self._P(b, a)) for b in range(N) if self._P(b, a)}) for a in range(N)]
        return self._change(e, gen, lambda c: substitute(c, self.images))

    def from_frame(self, e: Ext) -> Ext:
        F, N = self.fm.F, self.fm.N
        gen = [Ext({(a,): Poly.const(F, N, self._Pinv(a, b)) for a in range(N) if self._Pinv(a, b)}) for b in range(N)]
        return self._change(e, gen, lambda c: substitute(c, self.forward))

    def nabla_frame(self) -> list[tuple[int, Poly]]:
        """sum_i nabla_i f(x, u(x)) theta_i rewritten as sum_b w_b(X) theta~_b."""
        fm, F, N = self.fm, self.fm.F, self.fm.N
        u = self.u
        w = [Poly(F, N) for _ in range(N)]
        for i in range(N):
            x = Poly.var(F, N, i)
            y = Poly.var(F, N, u.perm[i], fm.z(u.diag[i]))
            g = Poly(F, N)
            for a in range(fm.n):
                g = g + (x ** a) * (y ** (fm.n - 1 - a))
            gX = substitute(g, self.images)
            for b in range(N):
                c = self._Pinv(i, b)
                if c:
                    w[b] = w[b] + gX.scale(c)
        return [(b, w[b]) for b in range(N) if w[b]]

    def koszul_apply(self, e: Ext) -> Ext:
        F, N = self.fm.F, self.fm.N
        out = Ext()
        for p in self.normal_positions():
            l = Poly.var(F, N, p, F.one() - self.coords[p].lam)
            out = out + Ext({(p,): l}).wedge(e)
        return out

    def koszul_homotopy(self, r: Ext) -> Ext:
        """eta with K(eta) = r for K-closed r without weight-zero part (K = sum (1 - lam_p) X_p d_theta~_p)."""
        F, N = self.fm.F, self.fm.N
        normals = self.normal_positions()
        out: dict = {}
        for S, c in r.terms.items():
            missing = sum(1 for p in normals if p not in S)
            for m, a in c.t.items():
                w = missing + sum(m[p] for p in normals)
                if w == 0:
                    raise ArithmeticError("Koszul obstruction in a weight-zero component")
                for p in normals:
                    if not m[p] or p not in S:
                        continue
                    pos = S.index(p)
                    T = S[:pos] + S[pos + 1 :]
                    e2 = list(m)
                    e2[p] -= 1
                    coef = a * m[p] / ((F.one() - self.coords[p].lam) * w)
                    if pos % 2:
                        coef = -coef
                    term = Poly.monomial(F, N, e2, coef)
                    out[T] = out[T] + term if T in out else term
        return Ext(out)

    def xi_tilde(self) -> Ext:
        """A cocycle of the standard-coordinate mixed complex with leading term d_theta~_u.

        Differential: sum (x_i - u(x)_i) d_theta_i - sum nabla_i f(x, u(x)) theta_i.
        Lower terms are produced by the Koszul contracting homotopy in the eigen
        frame of u; for diagonal u this reproduces exp(H_{f,u}) d_theta_u.
        """
        nab = self.nabla_frame()
        cur = self.to_frame(self.lead)
        total = cur
        while True:
            r = Ext()
            for b, wb in nab:
                r = r + cur.contract(b).map_coeffs(lambda c, wb=wb: wb * c)
            if not r:
                break
            nxt = self.koszul_homotopy(r)
            if self.koszul_apply(nxt) != r:
                raise ArithmeticError(f"cocycle completion failed for {self.u}")
            total = total + nxt
            cur = nxt
        return self.from_frame(total)

    def normal_positions(self) -> list[int]:
        return [p for p, ec in enumerate(self.coords) if ec.lam != self.fm.F.one()]

    def extract(self, D: Ext) -> tuple[Poly, Ext]:
        """Split a degree-d_u form into c * d_theta~_u + residual; returns (c, residual)."""
        normals = self.normal_positions()
        x = D
        y = self.lead
        for p in reversed(normals):
            x = self.act_theta_tilde(p, x)
            y = self.act_theta_tilde(p, y)
        F, N = self.fm.F, self.fm.N
        num = x.terms.get((), Poly(F, N))
        den = y.terms.get(())
        if den is None or not den:
            raise ArithmeticError(f"leading term of {self.u} does not pair with its normal frame")
        c = num.scale(den.const_value().inverse())
        resid = D - self.lead.map_coeffs(lambda a: a * c)
        return c, resid


@dataclass
class OracleResult:
    sigma: Poly  # reduced class in Jac(f^{uv})
    conclusive: bool
    residual_terms: int


class CliffordOracle:
    def __init__(self, fm: Fermat, frame: str = "koszul"):
        if frame not in ("koszul", "eigen"):
            raise ValueError("frame must be 'koszul' or 'eigen'")
        self.fm = fm
        self.frame = frame
        self._sec: dict = {}
        self._xi: dict = {}
        self.inconclusive = 0
        self.calls = 0

    def sector(self, u: GroupElement) -> OracleSector:
        if u not in self._sec:
            self._sec[u] = OracleSector(self.fm, u)
        return self._sec[u]

    def xi_tilde(self, u: GroupElement) -> Ext:
        if u not in self._xi:
            sec = self.sector(u)
            self._xi[u] = sec.xi_tilde() if self.frame == "koszul" else sec.xi_tilde_eigen()
        return self._xi[u]

    def upsilon(self, u: GroupElement, q1: Ext, q2: Ext, dmax: int | None = None) -> Ext:
        """Upsilon(exp(H_f(x,u(x),x)) . q1 (x) q2)."""
        fm = self.fm
        F, N = fm.F, fm.N
        cs = h_f_twisted(fm, u)
        out = Ext()
        subsets = [()]
        for i in range(N):
            subsets += [S + (i,) for S in subsets]
        for S in sorted(subsets, key=lambda s: (len(s), s)):
            m = len(S)
            if dmax is not None and m > dmax:
                continue
            cS = Poly.const(F, N, -1 if (m * (m - 1) // 2) % 2 else 1)
            for i in S:
                cS = cS * cs[i]
            if not cS:
                continue
            a = q1
            b = q2
            for i in reversed(S):
                a = a.contract(i)
                b = b.contract(i)
            if not a or not b:
                continue
            if m % 2:
                a = Ext({T: (-c if len(T) % 2 else c) for T, c in a.terms.items()})
            # the sign uses |q1| before contraction: |q1| = |a| + m, so (-1)^{m(|a|+m)}
            if m % 2:
                a = -a
            out = out + a.wedge(b).map_coeffs(lambda c, cS=cS: cS * c)
        return out

    def sigma(self, u: GroupElement, v: GroupElement) -> OracleResult:
        fm = self.fm
        self.calls += 1
        uv = u * v
        dd = u.d + v.d - uv.d
        zero = Poly(fm.F, fm.N)
        if dd < 0 or dd % 2:
            return OracleResult(zero, True, 0)
        q1 = self.xi_tilde(u)
        q2 = self.xi_tilde(v).map_coeffs(lambda c: group_twist(c, u.perm, u.diag, fm.n))
        R = self.upsilon(u, q1, q2).part(uv.d)
        sec = self.sector(uv)
        c, resid = sec.extract(R)
        s = restrict(fm, c, uv)
        bad = 0
        for T, r in resid.terms.items():
            if restrict(fm, r, uv):
                bad += 1
        if bad:
            self.inconclusive += 1
        return OracleResult(s, bad == 0, bad)
