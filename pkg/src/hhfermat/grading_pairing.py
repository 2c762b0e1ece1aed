"""Bigrading and the residue pairing on A'_{f,G}.

A homogeneous class [phi] xi_u has bidegree

    q_l = (deg phi - d_u)/n + age(u),   q_r = (deg phi - d_u)/n + age(u^-1),

so q_l + q_r = 2 deg(phi)/n - d_u (2/n - 1) since age(u) + age(u^-1) = d_u.

The pairing only couples sector u with sector u^-1 (same fixed locus):

    eta(phi xi_u, psi xi_{u^-1}) = (n-1)^{N_u} / lambda_u * [top] (phi psi mod Jac),

normalized so that eta(H_u xi_u, xi_{u^-1}) = (n-1)^{N_u} with H_u = lambda_u top.
"""

from __future__ import annotations

from fractions import Fraction

from .cyclotomic import CycNum
from .fixedlocus import AlgebraElement, Fermat, hessian_class, jac_reduce, monomial_basis, top_monomial
from .group import GroupElement
from .polyring import Poly


class GradingError(ValueError):
    pass


def bidegree(fm: Fermat, u: GroupElement, poly: Poly) -> tuple[Fraction, Fraction]:
    """(q_l, q_r) of [poly] xi_u; poly must be nonzero and homogeneous."""
    if not poly or not poly.is_homogeneous():
        raise GradingError("bidegree needs a nonzero homogeneous class")
    base = Fraction(poly.degree() - u.d, fm.n)
    return base + u.fixed_data.age, base + u.inverse().fixed_data.age


def element_bidegrees(a: AlgebraElement) -> set:
    """Set of bidegrees of the homogeneous pieces of a."""
    out = set()
    for u, p in a.terms.items():
        by_deg: dict = {}
        for m, c in p.t.items():
            by_deg.setdefault(sum(m), {})[m] = c
        for part in by_deg.values():
            out.add(bidegree(a.fm, u, Poly(a.fm.F, a.fm.N, part)))
    return out


def hessian_scalar(fm: Fermat, u: GroupElement) -> CycNum:
    return hessian_class(fm, u)[1]


def eta_sector(fm: Fermat, u: GroupElement, phi: Poly, psi: Poly) -> CycNum:
    """eta(phi xi_u, psi xi_{u^-1})."""
    lam = hessian_scalar(fm, u)
    top = jac_reduce(phi * psi, fm.n).coeff(top_monomial(fm, u))
    return top * ((fm.n - 1) ** u.N_u) / lam


def eta(a: AlgebraElement, b: AlgebraElement) -> CycNum:
    """Bilinear extension over all sector pairs (u, u^-1)."""
    fm = a.fm
    out = fm.F.zero()
    for u, p in a.terms.items():
        q = b.terms.get(u.inverse())
        if q is not None:
            out = out + eta_sector(fm, u, p, q)
    return out


def gram(basis: list[AlgebraElement]) -> list[list[CycNum]]:
    return [[eta(x, y) for y in basis] for x in basis]


def sector_basis(fm: Fermat, u: GroupElement) -> list[AlgebraElement]:
    return [AlgebraElement.monomial(fm, u, m) for m in monomial_basis(fm, u)]


def symmetry_factor(fm: Fermat, u: GroupElement) -> CycNum:
    """c_u = (-1)^{M_u} det(u)^-1, so that eta_u(phi', phi'') = c_u eta_{u^-1}(phi'', phi').

    This is lambda_{u^-1} / lambda_u for the non-special Hessian factor det - 1.
    """
    return (-1) ** u.fixed_data.M_u * fm.z(-u.det_exponent())


def hessian_relation_holds(fm: Fermat, u: GroupElement) -> bool:
    """H_{u^-1} = (-1)^{M_u} det(u)^-1 H_u."""
    return hessian_scalar(fm, u.inverse()) == symmetry_factor(fm, u) * hessian_scalar(fm, u)


def hessian_relation_stated_holds(fm: Fermat, u: GroupElement) -> bool:
    """The variant H_{u^-1} = (-1)^{M_u} det(u) H_u, which needs det^-1 - 1 as the non-special factor."""
    return hessian_scalar(fm, u.inverse()) == (-1) ** u.fixed_data.M_u * fm.z(u.det_exponent()) * hessian_scalar(fm, u)
