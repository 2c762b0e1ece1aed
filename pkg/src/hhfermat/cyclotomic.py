"""Exact arithmetic in the cyclotomic field Q(zeta_L).

Elements are stored densely as coefficient tuples in the power basis
1, z, ..., z^(phi(L)-1) modulo the L-th cyclotomic polynomial.
"""

from __future__ import annotations

import cmath
from math import gcd
from typing import Iterable, Sequence

try:
    from gmpy2 import mpq as Q
except ImportError:  # pragma: no cover - gmpy2 is a declared dependency
    from fractions import Fraction as Q

ZERO_Q = Q(0)
ONE_Q = Q(1)


def lcm(*xs: int) -> int:
    out = 1
    for x in xs:
        out = out * x // gcd(out, x)
    return out


def _poly_divmod_int(num: list[int], den: list[int]) -> tuple[list[int], list[int]]:
    # integer polynomials, den monic; coefficient lists low -> high
    num = list(num)
    dd = len(den) - 1
    if len(num) - 1 < dd:
        return [0], num
    quot = [0] * (len(num) - dd)
    for k in range(len(num) - 1, dd - 1, -1):
        c = num[k]
        if c:
            quot[k - dd] = c
            for j in range(dd + 1):
                num[k - dd + j] -= c * den[j]
    rem = num[:dd] or [0]
    return quot, rem


def cyclotomic_polynomial(L: int) -> list[int]:
    """Integer coefficients (low to high) of Phi_L, via x^L - 1 = prod_{d|L} Phi_d."""
    if L < 1:
        raise ValueError("cyclotomic order must be positive")
    poly = [-1] + [0] * (L - 1) + [1]
    for d in range(1, L):
        if L % d == 0:
            poly, rem = _poly_divmod_int(poly, cyclotomic_polynomial(d))
            assert not any(rem), "non-exact division building Phi_L"
    return poly


# ---- dense rational polynomial helpers (low -> high) used by the inverse ----

def _trim(p: list) -> list:
    while p and p[-1] == 0:
        p.pop()
    return p


def _pdivmod(a: list, b: list) -> tuple[list, list]:
    a = list(a)
    b = _trim(list(b))
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    q = [ZERO_Q] * max(len(a) - len(b) + 1, 1)
    lead = b[-1]
    while len(_trim(a)) >= len(b):
        shift = len(a) - len(b)
        c = a[-1] / lead
        q[shift] = c
        for j, bj in enumerate(b):
            a[shift + j] -= c * bj
        a.pop()
    return q, a


def _psub(a: list, b: list) -> list:
    n = max(len(a), len(b))
    return _trim([(a[i] if i < len(a) else ZERO_Q) - (b[i] if i < len(b) else ZERO_Q) for i in range(n)])


def _pmul(a: list, b: list) -> list:
    if not a or not b:
        return []
    out = [ZERO_Q] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _trim(out)


class CyclotomicField:
    """Q(zeta_L) with a fixed power basis. Instances are cached per L."""

    _cache: dict[int, "CyclotomicField"] = {}

    def __new__(cls, L: int):
        if L in cls._cache:
            return cls._cache[L]
        self = super().__new__(cls)
        self.L = L
        self.phi = cyclotomic_polynomial(L)
        self.deg = len(self.phi) - 1
        self._zero_t = (ZERO_Q,) * self.deg
        # precomputed reductions of z^e, 0 <= e < L
        pw = []
        cur = [ZERO_Q] * self.deg
        cur[0] = ONE_Q
        for _ in range(L):
            pw.append(tuple(cur))
            cur = self._reduce([ZERO_Q] + cur)
        self._powers = pw
        cls._cache[L] = self
        return self

    def __reduce__(self):
        return (CyclotomicField, (self.L,))

    def __repr__(self) -> str:
        return f"CyclotomicField({self.L})"

    def _reduce(self, r: list) -> list:
        d = self.deg
        phi = self.phi
        for e in range(len(r) - 1, d - 1, -1):
            c = r[e]
            if c:
                base = e - d
                for k in range(d):
                    pk = phi[k]
                    if pk:
                        r[base + k] -= c * pk
        if len(r) < d:
            r = r + [ZERO_Q] * (d - len(r))
        return r[:d]

    # constructors
    def zero(self) -> "CycNum":
        return CycNum(self, self._zero_t)

    def one(self) -> "CycNum":
        return self.rational(1)

    def rational(self, q) -> "CycNum":
        c = [ZERO_Q] * self.deg
        c[0] = Q(q)
        return CycNum(self, tuple(c))

    def root(self, e: int) -> "CycNum":
        """zeta_L^e."""
        return CycNum(self, self._powers[e % self.L])

    def zeta(self, m: int, e: int = 1) -> "CycNum":
        """zeta_m^e, which requires m | L."""
        if m <= 0 or self.L % m:
            raise ValueError(f"zeta_{m} is not in Q(zeta_{self.L})")
        return self.root((self.L // m) * e)

    def from_coeffs(self, coeffs: Sequence) -> "CycNum":
        r = [Q(x) for x in coeffs]
        if len(r) < self.deg:
            r += [ZERO_Q] * (self.deg - len(r))
        return CycNum(self, tuple(self._reduce(r)))

    def from_json(self, triples: Iterable) -> "CycNum":
        acc = self.zero()
        for e, p, q in triples:
            acc = acc + self.root(int(e)) * self.rational(Q(int(p), int(q)))
        return acc


class CycNum:
    """An element of Q(zeta_L); immutable value type."""

    __slots__ = ("F", "c")

    def __init__(self, F: CyclotomicField, c: tuple):
        self.F = F
        self.c = c

    # --- predicates ---
    def is_zero(self) -> bool:
        return not any(self.c)

    def __bool__(self) -> bool:
        return any(self.c)

    def is_rational(self) -> bool:
        return not any(self.c[1:])

    def rational_value(self):
        if not self.is_rational():
            raise ValueError("not a rational number")
        return self.c[0]

    def _coerce(self, other) -> "CycNum":
        if isinstance(other, CycNum):
            if other.F is not self.F:
                raise ValueError(f"field mismatch: {self.F} vs {other.F}")
            return other
        if isinstance(other, (int,)) or type(other) is type(ONE_Q):
            return self.F.rational(other)
        from fractions import Fraction
        if isinstance(other, Fraction):
            return self.F.rational(Q(other.numerator, other.denominator))
        return NotImplemented

    # --- arithmetic ---
    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return CycNum(self.F, tuple(a + b for a, b in zip(self.c, o.c)))

    __radd__ = __add__

    def __neg__(self):
        return CycNum(self.F, tuple(-a for a in self.c))

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return CycNum(self.F, tuple(a - b for a, b in zip(self.c, o.c)))

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o - self

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        a, b = self.c, o.c
        if not any(b[1:]):
            s = b[0]
            if s == 1:
                return self
            return CycNum(self.F, tuple(x * s for x in a))
        if not any(a[1:]):
            s = a[0]
            if s == 1:
                return o
            return CycNum(self.F, tuple(x * s for x in b))
        d = self.F.deg
        r = [ZERO_Q] * (2 * d - 1)
        for i in range(d):
            x = a[i]
            if x:
                for j in range(d):
                    y = b[j]
                    if y:
                        r[i + j] += x * y
        return CycNum(self.F, tuple(self.F._reduce(r)))

    __rmul__ = __mul__

    def inverse(self) -> "CycNum":
        """Multiplicative inverse by the extended Euclidean algorithm against Phi_L."""
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero in cyclotomic field")
        if self.is_rational():
            return self.F.rational(ONE_Q / self.c[0])
        # invariant: s_i * self == r_i  (mod Phi_L)
        r0 = [Q(x) for x in self.F.phi]
        r1 = _trim(list(self.c))
        s0: list = []
        s1: list = [ONE_Q]
        while len(r1) > 1:
            q, rem = _pdivmod(r0, r1)
            r0, r1 = r1, _trim(rem)
            s0, s1 = s1, _psub(s0, _pmul(q, s1))
        c = r1[0]
        out = [x / c for x in s1]
        return self.F.from_coeffs(out)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o * self.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        out = self.F.one()
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    # --- comparison / hashing ---
    def __eq__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return False
        return self.c == o.c

    def __hash__(self):
        return hash((self.F.L, self.c))

    # --- conversion ---
    def to_complex(self) -> complex:
        w = cmath.exp(2j * cmath.pi / self.F.L)
        return sum(complex(float(x)) * w ** e for e, x in enumerate(self.c))

    def to_json(self) -> list:
        return [[e, int(x.numerator), int(x.denominator)] for e, x in enumerate(self.c) if x]

    def __str__(self) -> str:
        parts = []
        for e, x in enumerate(self.c):
            if not x:
                continue
            coef = str(x)
            if e == 0:
                parts.append(coef)
            elif x == 1:
                parts.append(f"z^{e}")
            elif x == -1:
                parts.append(f"-z^{e}")
            else:
                parts.append(f"({coef})*z^{e}")
        if not parts:
            return "0"
        return " + ".join(parts).replace("+ -", "- ")

    def __repr__(self) -> str:
        return f"CycNum[L={self.F.L}]({self})"


def zeta(F: CyclotomicField, m: int, e: int = 1) -> CycNum:
    return F.zeta(m, e)


def cyc_add(a: CycNum, b: CycNum) -> CycNum:
    return a + b


def cyc_mul(a: CycNum, b: CycNum) -> CycNum:
    return a * b


def cyc_neg(a: CycNum) -> CycNum:
    return -a


def cyc_inv(a: CycNum) -> CycNum:
    return a.inverse()
