"""Exterior algebra C[d_theta] with coefficients in any commutative ring type.

Elements map sorted index tuples S (0-based) to coefficients, representing
sum c_S * d_{theta_S} with d_{theta_S} the ascending product.  The theta_i act
as contractions: theta_i . d_{theta_S} = (-1)^{#(s in S, s < i)} d_{theta_{S - i}}.
"""

from __future__ import annotations

from typing import Callable, Iterable, Mapping, Sequence


def _merge_sign(S: tuple, T: tuple) -> int:
    inv = 0
    for s in S:
        for t in T:
            if s > t:
                inv += 1
    return -1 if inv & 1 else 1


def sort_sign(seq: Sequence[int]) -> tuple[int, tuple]:
    """Sign of sorting a sequence of distinct indices, and the sorted tuple (sign 0 on repeats)."""
    if len(set(seq)) != len(seq):
        return 0, ()
    inv = sum(1 for a in range(len(seq)) for b in range(a + 1, len(seq)) if seq[a] > seq[b])
    return (-1 if inv & 1 else 1), tuple(sorted(seq))


class Ext:
    __slots__ = ("terms",)

    def __init__(self, terms: Mapping | None = None):
        self.terms: dict = {}
        if terms:
            for S, c in terms.items():
                if c:
                    self.terms[S] = c

    @classmethod
    def mono(cls, seq: Sequence[int], c) -> "Ext":
        s, S = sort_sign(seq)
        if s == 0:
            return cls()
        return cls({S: c if s > 0 else -c})

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def degrees(self) -> set:
        return {len(S) for S in self.terms}

    def part(self, deg: int) -> "Ext":
        return Ext({S: c for S, c in self.terms.items() if len(S) == deg})

    def __add__(self, o: "Ext") -> "Ext":
        out = dict(self.terms)
        for S, c in o.terms.items():
            if S in out:
                v = out[S] + c
                if v:
                    out[S] = v
                else:
                    del out[S]
            else:
                out[S] = c
        return Ext(out)

    def __neg__(self):
        return Ext({S: -c for S, c in self.terms.items()})

    def __sub__(self, o):
        return self + (-o)

    def scale(self, c) -> "Ext":
        return Ext({S: v * c for S, v in self.terms.items()})

    def map_coeffs(self, fn: Callable) -> "Ext":
        return Ext({S: fn(c) for S, c in self.terms.items()})

    def wedge(self, o: "Ext") -> "Ext":
        out: dict = {}
        for S, a in self.terms.items():
            for T, b in o.terms.items():
                if set(S) & set(T):
                    continue
                U = tuple(sorted(S + T))
                v = a * b
                if _merge_sign(S, T) < 0:
                    v = -v
                out[U] = out[U] + v if U in out else v
        return Ext(out)

    def contract(self, i: int) -> "Ext":
        """theta_i acting on the left."""
        out: dict = {}
        for S, c in self.terms.items():
            if i in S:
                pos = S.index(i)
                U = S[:pos] + S[pos + 1 :]
                out[U] = out[U] + (-c if pos & 1 else c) if U in out else (-c if pos & 1 else c)
        return Ext(out)

    def contract_form(self, form: Mapping[int, object]) -> "Ext":
        """(sum_i a_i theta_i) acting on the left; a_i multiply coefficients from the left."""
        out = Ext()
        for i, a in form.items():
            out = out + self.contract(i).map_coeffs(lambda c, a=a: a * c)
        return out

    def __eq__(self, o) -> bool:
        return isinstance(o, Ext) and self.terms == o.terms

    def __repr__(self) -> str:
        parts = [f"({c})*d{''.join(str(s + 1) for s in S)}" if S else f"({c})" for S, c in sorted(self.terms.items())]
        return "Ext(" + " + ".join(parts) + ")"


def proportional(P: Ext, T: Ext):
    """Return c with P = c*T (coefficients must support division), or None."""
    if not T.terms:
        return None
    S0 = next(iter(sorted(T.terms)))
    c = P.terms.get(S0)
    if c is None:
        return None if P.terms else 0 * T.terms[S0]
    c = c / T.terms[S0]
    if set(P.terms) != set(T.terms):
        return None
    for S, t in T.terms.items():
        if P.terms[S] != c * t:
            return None
    return c
