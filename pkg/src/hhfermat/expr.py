"""A small safe expression language for scalars, sector classes and elements.

    (3/(zeta(3)-1))**3 * x1*x2*x3 * xi("id")  +  xi("J")

Names: x1..xN and xt1..xtN (the same positional variable; xt marks an eigen
coordinate), z = zeta_L, zeta(m) and zeta(m, e), i (= zeta(4)), sqrt3, and
xi("<group element>") for the class of 1 in that sector.  Operators: + - * /
and ** with integer exponents; division only by scalars.
"""

from __future__ import annotations

import ast
import re

from .cyclotomic import CycNum
from .fixedlocus import AlgebraElement, Fermat, jac_reduce, sector_vars
from .group import parse_element
from .polyring import Poly


class ExprError(ValueError):
    pass


_VAR = re.compile(r"xt?(\d+)$")


class _Eval:
    def __init__(self, fm: Fermat):
        self.fm = fm
        self.F = fm.F

    # values are CycNum, Poly or AlgebraElement
    def promote_poly(self, v):
        return Poly.const(self.F, self.fm.N, v) if isinstance(v, CycNum) else v

    def as_elem(self, poly: Poly, u) -> AlgebraElement:
        allowed = set(sector_vars(u).positions())
        for m in poly.t:
            if any(a and i not in allowed for i, a in enumerate(m)):
                raise ExprError(f"polynomial uses a variable that is not a coordinate of sector {u}")
        return AlgebraElement(self.fm, {u: jac_reduce(poly, self.fm.n)})

    def mul(self, a, b):
        if isinstance(a, CycNum) and isinstance(b, CycNum):
            return a * b
        if isinstance(a, AlgebraElement) and isinstance(b, AlgebraElement):
            raise ExprError("use the product command to multiply algebra elements")
        if isinstance(b, AlgebraElement):
            a, b = b, a
        if isinstance(a, AlgebraElement):
            if isinstance(b, CycNum):
                return a.scale(b)
            out = AlgebraElement(self.fm)
            for u, p in a.terms.items():
                out = out + self.as_elem(p * b, u)
            return out
        return self.promote_poly(a) * self.promote_poly(b)

    def add(self, a, b, sign=1):
        if sign < 0:
            b = self.neg(b)
        if isinstance(a, CycNum) and isinstance(b, CycNum):
            return a + b
        if isinstance(a, AlgebraElement) or isinstance(b, AlgebraElement):
            if not (isinstance(a, AlgebraElement) and isinstance(b, AlgebraElement)):
                raise ExprError("cannot add a sector-less value to an algebra element")
            return a + b
        return self.promote_poly(a) + self.promote_poly(b)

    def neg(self, a):
        return -a

    def ev(self, node):
        if isinstance(node, ast.Expression):
            return self.ev(node.body)
        if isinstance(node, ast.Constant) and isinstance(node.value, int) and not isinstance(node.value, bool):
            return self.F.rational(node.value)
        if isinstance(node, ast.Name):
            return self.name(node.id)
        if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
            v = self.ev(node.operand)
            return self.neg(v) if isinstance(node.op, ast.USub) else v
        if isinstance(node, ast.BinOp):
            if isinstance(node.op, ast.Pow):
                base = self.ev(node.left)
                e = node.right
                sign = 1
                if isinstance(e, ast.UnaryOp) and isinstance(e.op, ast.USub):
                    sign, e = -1, e.operand
                if not (isinstance(e, ast.Constant) and isinstance(e.value, int)):
                    raise ExprError("exponents must be integer literals")
                k = sign * e.value
                if isinstance(base, CycNum):
                    return base**k
                if isinstance(base, Poly) and k >= 0:
                    return base**k
                raise ExprError("only scalars may have negative powers; elements have no powers")
            a, b = self.ev(node.left), self.ev(node.right)
            if isinstance(node.op, ast.Add):
                return self.add(a, b)
            if isinstance(node.op, ast.Sub):
                return self.add(a, b, -1)
            if isinstance(node.op, ast.Mult):
                return self.mul(a, b)
            if isinstance(node.op, ast.Div):
                if not isinstance(b, CycNum):
                    raise ExprError("division only by scalars")
                return self.mul(a, b.inverse())
        if isinstance(node, ast.Call) and isinstance(node.func, ast.Name):
            args = node.args
            if node.func.id == "zeta" and 1 <= len(args) <= 2:
                vals = [a.value for a in args if isinstance(a, ast.Constant) and isinstance(a.value, int)]
                if len(vals) != len(args):
                    raise ExprError("zeta takes integer literals")
                m, e = vals[0], vals[1] if len(vals) > 1 else 1
                if self.F.L % m:
                    raise ExprError(f"zeta({m}) is not in Q(zeta_{self.F.L})")
                return self.F.zeta(m, e % m)
            if node.func.id == "xi" and len(args) == 1 and isinstance(args[0], ast.Constant) and isinstance(args[0].value, str):
                u = parse_element(args[0].value, self.fm.N, self.fm.n)
                return AlgebraElement.xi(self.fm, u)
        raise ExprError(f"unsupported syntax: {ast.dump(node)[:60]}")

    def name(self, s: str):
        F = self.F
        if s == "z":
            return F.root(1)
        if s == "i":
            return self.zeta_checked(4)
        if s == "sqrt3":
            return self.zeta_checked(12) + F.zeta(12, 11)
        m = _VAR.match(s)
        if m:
            k = int(m.group(1))
            if not 1 <= k <= self.fm.N:
                raise ExprError(f"no variable {s}")
            return Poly.var(F, self.fm.N, k - 1)
        raise ExprError(f"unknown name {s}")

    def zeta_checked(self, m: int) -> CycNum:
        if self.F.L % m:
            raise ExprError(f"zeta({m}) is not in Q(zeta_{self.F.L}); pass a larger L")
        return self.F.zeta(m, 1)


def evaluate(text: str, fm: Fermat):
    try:
        tree = ast.parse(text.strip(), mode="eval")
    except SyntaxError as e:
        raise ExprError(f"cannot parse {text!r}: {e.msg}") from None
    return _Eval(fm).ev(tree)


def parse_scalar(text: str, fm: Fermat) -> CycNum:
    v = evaluate(text, fm)
    if not isinstance(v, CycNum):
        raise ExprError(f"{text!r} is not a scalar")
    return v


def parse_algebra_element(text: str, fm: Fermat) -> AlgebraElement:
    """An element expression; a bare group element such as "J^2" means xi of it."""
    err = None
    try:
        v = evaluate(text, fm)
    except ExprError as e:
        v, err = None, e
    if isinstance(v, AlgebraElement):
        return v
    try:
        return AlgebraElement.xi(fm, parse_element(text, fm.N, fm.n))
    except ValueError:
        if err is not None and "xi(" in text:
            raise err
        raise ExprError(f"{text!r} is neither an element expression nor a group element") from None
