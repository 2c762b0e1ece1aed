"""Sparse multivariate polynomials over Q(zeta_L).

Variables are positional.  A polynomial in ``nv`` variables maps exponent
tuples to CycNum coefficients.  Several "tiers" of N variables each are laid
out consecutively when difference derivatives need the shadow copies y, z.
Which positions mean ambient x_i and which mean eigen coordinates is decided
by the caller; ``VarId`` only exists for rendering.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product as iproduct
from typing import Callable, Iterable, Mapping, Sequence

from .cyclotomic import CycNum, CyclotomicField


@dataclass(frozen=True, order=True)
class VarId:
    tier: int  # 0 ambient / eigen, 1 = y shadow, 2 = z shadow
    index: int  # 1-based
    eigen: bool = False

    def name(self) -> str:
        base = "xyz"[self.tier] if self.tier < 3 else f"w{self.tier}_"
        return f"{base}t{self.index}" if self.eigen else f"{base}{self.index}"


class Poly:
    __slots__ = ("F", "nv", "t")

    def __init__(self, F: CyclotomicField, nv: int, terms: Mapping | None = None):
        self.F = F
        self.nv = nv
        self.t: dict = {}
        if terms:
            for m, c in terms.items():
                if c:
                    self.t[m] = c

    # ---- constructors ----
    @classmethod
    def zero(cls, F, nv) -> "Poly":
        return cls(F, nv)

    @classmethod
    def const(cls, F, nv, c) -> "Poly":
        c = c if isinstance(c, CycNum) else F.rational(c)
        return cls(F, nv, {(0,) * nv: c})

    @classmethod
    def var(cls, F, nv, i: int, c=None) -> "Poly":
        e = [0] * nv
        e[i] = 1
        c = F.one() if c is None else c
        return cls(F, nv, {tuple(e): c})

    @classmethod
    def monomial(cls, F, nv, exps: Sequence[int], c=None) -> "Poly":
        c = F.one() if c is None else (c if isinstance(c, CycNum) else F.rational(c))
        return cls(F, nv, {tuple(exps): c})

    # ---- predicates ----
    def is_zero(self) -> bool:
        return not self.t

    def __bool__(self) -> bool:
        return bool(self.t)

    def is_const(self) -> bool:
        return not self.t or (len(self.t) == 1 and not any(next(iter(self.t))))

    def const_value(self) -> CycNum:
        return self.t.get((0,) * self.nv, self.F.zero())

    def degree(self) -> int:
        return max((sum(m) for m in self.t), default=-1)

    def is_homogeneous(self) -> bool:
        return len({sum(m) for m in self.t}) <= 1

    def coeff(self, exps: Sequence[int]) -> CycNum:
        return self.t.get(tuple(exps), self.F.zero())

    # ---- ring operations ----
    def _check(self, o: "Poly"):
        if o.nv != self.nv or o.F is not self.F:
            raise ValueError("incompatible polynomials")

    def __add__(self, o: "Poly") -> "Poly":
        self._check(o)
        out = dict(self.t)
        for m, c in o.t.items():
            v = out.get(m)
            if v is None:
                out[m] = c
            else:
                s = v + c
                if s:
                    out[m] = s
                else:
                    del out[m]
        return Poly(self.F, self.nv, out)

    def __neg__(self) -> "Poly":
        return Poly(self.F, self.nv, {m: -c for m, c in self.t.items()})

    def __sub__(self, o: "Poly") -> "Poly":
        return self + (-o)

    def scale(self, c) -> "Poly":
        if not isinstance(c, CycNum):
            c = self.F.rational(c)
        if not c:
            return Poly(self.F, self.nv)
        return Poly(self.F, self.nv, {m: v * c for m, v in self.t.items()})

    def __mul__(self, o) -> "Poly":
        if not isinstance(o, Poly):
            return self.scale(o)
        return self.mul(o)

    __rmul__ = __mul__

    def mul(self, o: "Poly", cap: int | None = None) -> "Poly":
        """Product; with ``cap`` set, monomials with an exponent > cap are dropped."""
        self._check(o)
        out: dict = {}
        for m1, c1 in self.t.items():
            for m2, c2 in o.t.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                if cap is not None and max(m, default=0) > cap:
                    continue
                v = out.get(m)
                out[m] = c1 * c2 if v is None else v + c1 * c2
        return Poly(self.F, self.nv, {m: c for m, c in out.items() if c})

    def __pow__(self, k: int) -> "Poly":
        out = Poly.const(self.F, self.nv, 1)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, o) -> bool:
        return isinstance(o, Poly) and o.nv == self.nv and o.t == self.t

    def __hash__(self):
        return hash(frozenset(self.t.items()))

    # ---- structural maps ----
    def truncate(self, cap: int, positions: Iterable[int] | None = None) -> "Poly":
        """Kill every monomial with an exponent > cap (in the given positions)."""
        pos = range(self.nv) if positions is None else list(positions)
        return Poly(self.F, self.nv, {m: c for m, c in self.t.items() if all(m[i] <= cap for i in pos)})

    def map_monomials(self, fn: Callable) -> "Poly":
        """fn(exps) -> (new_exps, CycNum factor) or None to drop; new polys keep nv."""
        out: dict = {}
        nv = self.nv
        for m, c in self.t.items():
            r = fn(m)
            if r is None:
                continue
            m2, f = r
            nv = len(m2)
            v = c * f
            w = out.get(m2)
            out[m2] = v if w is None else w + v
        return Poly(self.F, nv, {m: c for m, c in out.items() if c})

    def embed(self, nv: int, positions: Sequence[int]) -> "Poly":
        """Re-index variable i as positions[i] in a ring with nv variables."""
        out = {}
        for m, c in self.t.items():
            e = [0] * nv
            for i, a in enumerate(m):
                if a:
                    e[positions[i]] += a
            out[tuple(e)] = c
        return Poly(self.F, nv, out)

    def render(self, names: Sequence[str] | None = None) -> str:
        if not self.t:
            return "0"
        names = names or [f"x{i + 1}" for i in range(self.nv)]
        parts = []
        for m in sorted(self.t, reverse=True):
            mono = "*".join(f"{names[i]}^{a}" if a > 1 else names[i] for i, a in enumerate(m) if a)
            c = self.t[m]
            cs = str(c)
            if not mono:
                parts.append(f"({cs})")
            elif cs == "1":
                parts.append(mono)
            else:
                parts.append(f"({cs})*{mono}")
        return " + ".join(parts)

    def __repr__(self) -> str:
        return f"Poly({self.render()})"


def substitute(p: Poly, images: Sequence[Poly]) -> Poly:
    """Simultaneous substitution x_i -> images[i]; every variable must be assigned."""
    if len(images) != p.nv:
        raise ValueError("substitution must assign every variable")
    if not images:
        return Poly(p.F, 0, dict(p.t))
    nv = images[0].nv
    one = Poly.const(p.F, nv, 1)
    cache: dict = {}

    def power(i, a):
        key = (i, a)
        if key not in cache:
            cache[key] = one if a == 0 else power(i, a - 1) * images[i]
        return cache[key]

    out = Poly(p.F, nv)
    for m, c in p.t.items():
        term = Poly.const(p.F, nv, c)
        for i, a in enumerate(m):
            if a:
                term = term * power(i, a)
        out = out + term
    return out


def group_twist(p: Poly, perm: Sequence[int], diag: Sequence[int], n: int) -> Poly:
    """Replace x_k by zeta_n^{diag[k]} x_{perm[k]} (0-based perm) in an ambient polynomial."""
    F = p.F
    N = len(perm)

    def fn(m):
        e = [0] * N
        s = 0
        for k, a in enumerate(m):
            if a:
                e[perm[k]] += a
                s += diag[k] * a
        return tuple(e), F.zeta(n, s % n)

    return p.map_monomials(fn)


def diff_derivative(p: Poly, i: int, N: int, src: int, dst: int) -> Poly:
    """Difference derivative along index i (0-based) from tier ``src`` to tier ``dst``.

    Variables of tier t occupy positions t*N .. t*N+N-1.  With x = tier src and
    y = tier dst this returns (l_i(p) - l_{i+1}(p)) / (x_i - y_i) where
    l_i(p) = p(y_1..y_{i-1}, x_i..x_N), computed monomial-wise.
    """
    F = p.F
    out: dict = {}
    one = F.one()
    so, do = src * N, dst * N
    for m, c in p.t.items():
        a = m[so + i]
        if a == 0:
            continue
        base = list(m)
        for v in range(i):
            e = base[so + v]
            if e:
                base[so + v] = 0
                base[do + v] += e
        base[so + i] = 0
        for s in range(a):
            e = list(base)
            e[so + i] += s
            e[do + i] += a - 1 - s
            k = tuple(e)
            w = out.get(k)
            out[k] = c if w is None else w + c
    return Poly(F, p.nv, {m: c for m, c in out.items() if c})
