"""Elements and subgroups of G_f = S_N x| (Z/n)^N for the Fermat polynomial.

An element (sigma, g) acts on coordinates by x_k -> zeta_n^{g_k} x_{sigma(k)}.
Permutations are stored 0-based as image tuples; cycle notation in strings
and in CycleFactor.indices is 1-based.
"""

from __future__ import annotations

import re
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Sequence


class GroupError(ValueError):
    pass


class GroupElement:
    """(sigma, g) with sigma a permutation of N letters and g in (Z/n)^N."""

    __slots__ = ("perm", "diag", "n", "_hash", "__dict__")

    def __init__(self, perm: Sequence[int], diag: Sequence[int], n: int):
        self.perm = tuple(perm)
        self.diag = tuple(d % n for d in diag)
        self.n = n
        if len(self.perm) != len(self.diag) or sorted(self.perm) != list(range(len(self.perm))):
            raise GroupError(f"not a valid element: {perm} {diag}")
        self._hash = hash((self.perm, self.diag, n))

    @property
    def N(self) -> int:
        return len(self.perm)

    @classmethod
    def identity(cls, N: int, n: int) -> "GroupElement":
        return cls(range(N), (0,) * N, n)

    @classmethod
    def diagonal(cls, exps: Sequence[int], n: int) -> "GroupElement":
        return cls(range(len(exps)), exps, n)

    @classmethod
    def t(cls, i: int, d: int, N: int, n: int) -> "GroupElement":
        """t_i^d, 1-based i."""
        e = [0] * N
        e[i - 1] = d
        return cls.diagonal(e, n)

    @classmethod
    def from_cycles(cls, cycles: Iterable[Sequence[int]], N: int, n: int, diag=None) -> "GroupElement":
        p = list(range(N))
        for c in cycles:
            for a in range(len(c)):
                p[c[a] - 1] = c[(a + 1) % len(c)] - 1
        return cls(p, diag if diag is not None else (0,) * N, n)

    # ---- group law ----
    def __mul__(self, other: "GroupElement") -> "GroupElement":
        return compose(self, other)

    def inverse(self) -> "GroupElement":
        inv = [0] * self.N
        for k, s in enumerate(self.perm):
            inv[s] = k
        # (sigma,g)(sigma^-1,h) = id  =>  h_k = -g_{sigma^-1(k)}
        return GroupElement(inv, [-self.diag[inv[k]] for k in range(self.N)], self.n)

    def __pow__(self, k: int) -> "GroupElement":
        base = self if k >= 0 else self.inverse()
        out = GroupElement.identity(self.N, self.n)
        for _ in range(abs(k)):
            out = out * base
        return out

    def conj(self, v: "GroupElement") -> "GroupElement":
        """v u v^-1."""
        return v * self * v.inverse()

    def __eq__(self, o) -> bool:
        return isinstance(o, GroupElement) and self.perm == o.perm and self.diag == o.diag and self.n == o.n

    def __hash__(self) -> int:
        return self._hash

    def __lt__(self, o: "GroupElement") -> bool:
        return self.sort_key() < o.sort_key()

    def sort_key(self):
        return (self.perm, self.diag)

    def is_identity(self) -> bool:
        return self.perm == tuple(range(self.N)) and not any(self.diag)

    def is_diagonal(self) -> bool:
        return self.perm == tuple(range(self.N))

    def is_special(self) -> bool:
        return sum(self.diag) % self.n == 0

    def det_exponent(self) -> int:
        return sum(self.diag) % self.n

    def order(self) -> int:
        k, x = 1, self
        while not x.is_identity():
            x = x * self
            k += 1
        return k

    # ---- structure ----
    @cached_property
    def components(self) -> tuple["CycleFactor", ...]:
        """All orbits of sigma as CycleFactors (length-1 ones included), ordered by min index."""
        seen = [False] * self.N
        out = []
        for s in range(self.N):
            if seen[s]:
                continue
            idx = []
            k = s
            while not seen[k]:
                seen[k] = True
                idx.append(k + 1)
                k = self.perm[k]
            out.append(CycleFactor(tuple(idx), tuple(self.diag[i - 1] for i in idx), self.n))
        return tuple(out)

    def cycles(self) -> list["CycleFactor"]:
        """Cycles of length >= 2."""
        return [c for c in self.components if c.k >= 2]

    def moved_components(self) -> list["CycleFactor"]:
        """Components contributing to the moved part: cycles and diagonally moved indices."""
        return [c for c in self.components if c.k >= 2 or c.A]

    @cached_property
    def fixed_data(self) -> "FixedData":
        free = [c.indices[0] for c in self.components if c.k == 1 and c.A == 0]
        special = [c for c in self.components if c.k >= 2 and c.special]
        N_u = len(free) + len(special)
        I_u = [i for c in self.components if (c.k == 1 and c.A == 0) for i in c.indices]
        return FixedData(
            I_u=tuple(sorted(I_u)),
            I_u_c=tuple(sorted(set(range(1, self.N + 1)) - set(I_u))),
            N_u=N_u,
            d_u=self.N - N_u,
            age=age(self),
            det_exponent=self.det_exponent(),
            special=self.is_special(),
            parity=(self.N - N_u) % 2,
            M_u=sum(1 for c in self.components if (c.k >= 2 and not c.special) or (c.k == 1 and c.A)),
        )

    @property
    def d(self) -> int:
        return self.fixed_data.d_u

    @property
    def N_u(self) -> int:
        return self.fixed_data.N_u

    def perm_string(self) -> str:
        cyc = [c for c in self.components if c.k >= 2]
        return "".join("(" + ",".join(map(str, c.indices)) + ")" for c in cyc) or "()"

    def __str__(self) -> str:
        return f"{self.perm_string()}[{','.join(map(str, self.diag))}]"

    def __repr__(self) -> str:
        return f"GroupElement({self}, n={self.n})"

    def to_json(self) -> dict:
        return {"perm": self.perm_string(), "diag": list(self.diag)}


@dataclass(frozen=True)
class CycleFactor:
    """One orbit (i_1, ..., i_k) of sigma, i_1 minimal, sigma(i_a) = i_{a+1}."""

    indices: tuple
    exps: tuple  # d_{i_a}
    n: int

    @property
    def k(self) -> int:
        return len(self.indices)

    @property
    def A(self) -> int:
        return sum(self.exps) % self.n

    @property
    def special(self) -> bool:
        return self.A == 0

    @property
    def gt(self) -> tuple:
        """Exponents of g~_{i_a} = g_{i_1}...g_{i_{a-1}}."""
        out, acc = [], 0
        for d in self.exps:
            out.append(acc % self.n)
            acc += d
        return tuple(out)

    def age(self) -> Fraction:
        k, A, n = self.k, self.A, self.n
        return sum((Fraction(A + p * n, n * k) % 1 for p in range(k)), Fraction(0))

    def element(self, N: int) -> GroupElement:
        diag = [0] * N
        for i, d in zip(self.indices, self.exps):
            diag[i - 1] = d
        return GroupElement.from_cycles([self.indices], N, self.n, diag)


@dataclass(frozen=True)
class FixedData:
    I_u: tuple
    I_u_c: tuple
    N_u: int
    d_u: int
    age: Fraction
    det_exponent: int
    special: bool
    parity: int
    M_u: int


@dataclass(frozen=True)
class CycleDecomp:
    diagonal_rest: GroupElement
    cycles: tuple


def compose(a: GroupElement, b: GroupElement) -> GroupElement:
    """Product a*b, normalized so that M(a*b) = M(a) M(b) for M(sigma,g) e_k = g_k e_{sigma(k)}."""
    if a.N != b.N or a.n != b.n:
        raise GroupError("mismatched N or n")
    return GroupElement(
        tuple(a.perm[t] for t in b.perm),
        tuple(a.diag[b.perm[k]] + b.diag[k] for k in range(a.N)),
        a.n,
    )


def cycle_decompose(u: GroupElement) -> CycleDecomp:
    rest = [0] * u.N
    for c in u.components:
        if c.k == 1:
            rest[c.indices[0] - 1] = c.exps[0]
    return CycleDecomp(GroupElement.diagonal(rest, u.n), tuple(c for c in u.components if c.k >= 2))


def special_decompose(u: GroupElement) -> list[tuple[GroupElement, GroupElement]]:
    """Pairs (u1 special, u2 diagonal on the first cycle index) with u = prod(u1 * u2)."""
    out = []
    for c in u.components:
        if c.k == 1:
            if c.A:
                out.append((GroupElement.identity(u.N, u.n), c.element(u.N)))
            continue
        e = c.element(u.N)
        t = GroupElement.t(c.indices[0], c.A, u.N, u.n)
        out.append((e * t.inverse(), t))
    return out


def _split(x: GroupElement, idx: tuple, pos: int) -> tuple[GroupElement, GroupElement]:
    """Split a single-cycle element with cycle idx at position pos into L*R = x."""
    N, n = x.N, x.n
    left, right = idx[: pos + 1], idx[pos:]
    sL = GroupElement.from_cycles([left], N, n)
    sR = GroupElement.from_cycles([right], N, n)
    gL = [0] * N
    for i in left[:-1]:
        gL[i - 1] = x.diag[i - 1]
    gR = [(x.diag[k] - gL[sR.perm[k]]) % n for k in range(N)]
    L = GroupElement(sL.perm, gL, n)
    R = GroupElement(sR.perm, gR, n)
    assert L * R == x
    return L, R


def pair_decompose(a: GroupElement, b: GroupElement) -> tuple[list[GroupElement], list[GroupElement]]:
    """Refine the cycles of a (w.r.t. b) and of b (w.r.t. a) until any two pieces meet in <= 1 index or coincide."""

    def pieces(u):
        out = [c.element(u.N) for c in u.components if c.k >= 2]
        rest = cycle_decompose(u).diagonal_rest
        if not rest.is_identity():
            out.insert(0, rest)
        return out

    def refine(ps, others):
        changed = True
        while changed:
            changed = False
            for pi, p in enumerate(ps):
                if p.is_diagonal():
                    continue
                c = p.cycles()[0]
                for q in others:
                    if q.is_diagonal():
                        continue
                    qs = set(q.cycles()[0].indices)
                    shared = [a for a, i in enumerate(c.indices) if i in qs]
                    if len(shared) >= 2 and set(c.indices) != qs:
                        L, R = _split(p, c.indices, shared[1])
                        ps[pi : pi + 1] = [L, R]
                        changed = True
                        break
                if changed:
                    break
        return ps

    pa = refine(pieces(a), pieces(b))
    pb = refine(pieces(b), pa)
    return pa, pb


def age(u: GroupElement) -> Fraction:
    return sum((c.age() for c in u.components), Fraction(0))


# ---------------------------------------------------------------- groups


def closure(generators: Sequence[GroupElement], N: int, n: int, cap: int = 20000) -> list[GroupElement]:
    idn = GroupElement.identity(N, n)
    gens = [g for g in generators if not g.is_identity()]
    for g in gens:
        if g.N != N or g.n != n:
            raise GroupError("generator with mismatched N or n")
    seen = {idn}
    queue = deque([idn])
    while queue:
        x = queue.popleft()
        for g in gens:
            y = x * g
            if y not in seen:
                seen.add(y)
                if len(seen) > cap:
                    raise GroupError(f"group order exceeds cap {cap}")
                queue.append(y)
    return sorted(seen, key=GroupElement.sort_key)


class Group:
    """A finite subgroup of G_f, stored as a sorted element list."""

    def __init__(self, generators: Sequence[GroupElement], N: int, n: int, cap: int = 20000):
        self.N, self.n = N, n
        self.generators = list(generators)
        self.elements = closure(generators, N, n, cap)
        self.index = {g: i for i, g in enumerate(self.elements)}

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, g) -> bool:
        return g in self.index

    @cached_property
    def identity(self) -> GroupElement:
        return GroupElement.identity(self.N, self.n)

    def centralizer(self, u: GroupElement) -> list[GroupElement]:
        return [g for g in self.elements if g * u == u * g]

    @cached_property
    def conjugacy_classes(self) -> list[tuple[GroupElement, list[GroupElement]]]:
        done: set = set()
        out = []
        for u in self.elements:
            if u in done:
                continue
            cls = sorted({u.conj(g) for g in self.elements}, key=GroupElement.sort_key)
            done.update(cls)
            out.append((cls[0], cls))
        return out

    def diagonal_subgroup(self) -> list[GroupElement]:
        return [g for g in self.elements if g.is_diagonal()]

    def diag_in_sl(self) -> bool:
        return all(g.is_special() for g in self.diagonal_subgroup())

    def eigen_order(self) -> int:
        """Smallest L such that Q(zeta_L) holds zeta_n and every eigenvalue of every element."""
        from .cyclotomic import lcm

        L = self.n
        for g in self.elements:
            for c in g.components:
                if c.k >= 2:
                    # eigenvalues mu * zeta_k^b with mu = zeta_{nk}^A
                    nk = self.n * c.k
                    L = lcm(L, c.k, nk // _gcd(nk, c.A) if c.A else 1)
        return L

    def to_json(self) -> dict:
        return {"N": self.N, "n": self.n, "order": len(self), "elements": [g.to_json() for g in self.elements]}


def _gcd(a, b):
    from math import gcd

    return gcd(a, b)


# ---------------------------------------------------------------- parsing

_TOKEN = re.compile(r"\s*(\((?:\s*\d+\s*,?)*\)|\[[^\]]*\]|t\d+(?:\^-?\d+)?|J(?:\^-?\d+)?|\*)")


def parse_element(text: str, N: int, n: int) -> GroupElement:
    """Parse products like "(1,2,3)", "[1,1,1]", "t1^2*t3", "(1,2)t1t2^-1", "J^2"."""
    out = GroupElement.identity(N, n)
    pos = 0
    text = text.strip()
    if text in ("", "id", "()"):
        return out
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise GroupError(f"cannot parse group element near {text[pos:]!r}")
        tok = m.group(1)
        pos = m.end()
        if tok == "*":
            continue
        if tok.startswith("("):
            body = tok[1:-1].strip()
            idx = [int(x) for x in re.split(r"[,\s]+", body) if x] if body else []
            if any(i < 1 or i > N for i in idx) or len(set(idx)) != len(idx):
                raise GroupError(f"bad cycle {tok}")
            x = GroupElement.from_cycles([idx], N, n) if len(idx) > 1 else GroupElement.identity(N, n)
        elif tok.startswith("["):
            vals = [int(v) for v in tok[1:-1].split(",") if v.strip()]
            if len(vals) != N:
                raise GroupError(f"diagonal vector {tok} must have {N} entries")
            x = GroupElement.diagonal(vals, n)
        elif tok.startswith("t"):
            i, _, e = tok[1:].partition("^")
            i = int(i)
            if not 1 <= i <= N:
                raise GroupError(f"bad index in {tok}")
            x = GroupElement.t(i, int(e) if e else 1, N, n)
        else:  # J
            _, _, e = tok.partition("^")
            x = GroupElement.diagonal([int(e) if e else 1] * N, n)
        out = out * x
    return out


def parse_generator(spec, N: int, n: int) -> GroupElement:
    """A generator given as a string, or as {"perm": "(1,2)", "diag": [..] or "t1*t2"}."""
    if isinstance(spec, str):
        return parse_element(spec, N, n)
    perm = parse_element(spec.get("perm", "()"), N, n)
    d = spec.get("diag", None)
    if d is None:
        diag = GroupElement.identity(N, n)
    elif isinstance(d, str):
        diag = parse_element(d, N, n)
    else:
        diag = GroupElement.diagonal(d, n)
    if not perm.is_diagonal() and any(perm.diag):
        raise GroupError("perm field must be a pure permutation")
    return GroupElement(perm.perm, diag.diag, n)
