import pytest
from hypothesis import given, settings, strategies as st

from hhfermat.cyclotomic import CyclotomicField
from hhfermat.cuptable import (
    CupEngine, Generator, UncoveredShape, epsilon, epsilon_cycles, lead, phi, rule_cycle_inverse,
    rule_diag_inverse, rule_diag_vanishing, rule_mixed_transposition, rule_nonspecial_inverse,
    rule_special_overlap, rule_special_times_diag,
)
from hhfermat.fixedlocus import AlgebraElement, Fermat, restrict
from hhfermat.group import GroupElement, parse_element
from hhfermat.polyring import Poly
from hhfermat.properties import all_elements, rule_suite


def P(s, N, n):
    return parse_element(s, N, n)


def xi(fm, s):
    return AlgebraElement.xi(fm, P(s, fm.N, fm.n))


@pytest.mark.parametrize("n", [3, 4, 5])
def test_special_overlap_units(n):
    fm = Fermat(n, 3, n)
    E = CupEngine(fm)
    one = fm.const(1)
    assert E.sigma(P("(1,2)", 3, n), P("(2,3)", 3, n)) == one
    assert P("(1,2)", 3, n) * P("(2,3)", 3, n) == P("(1,2,3)", 3, n)
    assert E.sigma(P("(1,3)", 3, n), P("(1,2)", 3, n)) == -one
    assert P("(1,3)", 3, n) * P("(1,2)", 3, n) == P("(1,2,3)", 3, n)


@pytest.mark.parametrize("a,b", [("(3,4,5)", "(1,2)"), ("(3,4)", "(1,2)"), ("(1,2)", "(3,4)"), ("(4,5)", "(1,2,3)"), ("(2,3,4)", "(1,5)")])
def test_nonintersecting_sign(a, b):
    fm = Fermat(3, 5, 3)
    u, v = P(a, 5, 3), P(b, 5, 3)
    i1, j1 = u.cycles()[0].indices[0], v.cycles()[0].indices[0]
    want = epsilon_cycles(u.cycles()[0].k, v.cycles()[0].k, i1, j1)
    assert epsilon(fm, u, v) == fm.F.rational(want)
    assert CupEngine(fm).sigma(u, v) == fm.const(want)


def test_epsilon_rejects_uncovered_shape():
    fm = Fermat(3, 2, 3)
    with pytest.raises(UncoveredShape):
        epsilon(fm, P("(1,2)", 2, 3), P("(1,2)", 2, 3))


def test_phi_examples():
    fm = Fermat(3, 3, 3)
    assert phi(fm, [1, 2]) == fm.x(1) + fm.x(2)
    assert phi(fm, [2]) == fm.one()
    assert phi(fm, [1, 3], 0) == phi(fm, [1, 3])
    fm4 = Fermat(4, 2, 4)
    x1, x2 = fm4.x(1), fm4.x(2)
    assert phi(fm4, [1, 2]) == x1 ** 2 + x1 * x2 + x2 ** 2
    assert phi(fm4, [1, 2], 1) == (x1 ** 2).scale(fm4.z(-2)) + (x1 * x2).scale(fm4.z(-1)) + x2 ** 2


@pytest.mark.parametrize("n", [3, 4, 5])
def test_transposition_square(n):
    fm = Fermat(n, 2, n)
    u = P("(1,2)", 2, n)
    assert CupEngine(fm).sigma(u, u) == phi(fm, [1, 2]).scale(-n)


@pytest.mark.parametrize("n,p", [(3, 1), (3, 2), (4, 1), (4, 3), (5, 2)])
def test_diag_inverse_example(n, p):
    fm = Fermat(n, 1, n)
    g = P(f"t1^{p}", 1, n)
    want = Poly.monomial(fm.F, 1, (n - 2,), n / (fm.z(p) - 1))
    assert rule_diag_inverse(fm, g) == want
    assert CupEngine(fm).sigma(g, g.inverse()) == want


def test_diag_vanishing_examples():
    fm = Fermat(3, 2, 3)
    assert rule_diag_vanishing(fm, P("t1", 2, 3), P("t1", 2, 3))
    assert not rule_diag_vanishing(fm, P("t1", 2, 3), P("t1^2", 2, 3))
    assert not rule_diag_vanishing(fm, P("t1", 2, 3), P("t2", 2, 3))
    assert not CupEngine(fm).sigma(P("t1", 2, 3), P("t1", 2, 3))


def test_words():
    fm = Fermat(3, 4, 3)
    E = CupEngine(fm)
    w = E.word(P("t2^2", 4, 3))
    assert w.factors == (Generator("diag", 2, 0, 2),) and w.scalar == fm.F.one()
    w = E.word(P("(1,2,3,4)", 4, 3))
    assert len(w.factors) == 3 and all(g.kind == "trans" for g in w.factors)
    assert w.scalar == fm.F.one()
    w = E.word(P("(1,2)[1,0,0,0]", 4, 3))
    assert w.factors[0].kind == "diag" and w.factors[0].i == 1
    with pytest.raises(ValueError):
        Generator.of(P("(1,2,3)", 4, 3))


def test_example1_product():
    fm = Fermat(3, 3, 3)
    E = CupEngine(fm)
    c = (3 / (fm.z(1) - 1)) ** 3
    top = AlgebraElement.monomial(fm, P("id", 3, 3), (1, 1, 1), 1)
    # [DERIVED] frozen from the oracle-verified engine
    assert E.cup(xi(fm, "J"), xi(fm, "J^2")) == top.scale(-c)
    assert E.cup(xi(fm, "J^2"), xi(fm, "J")) == top.scale(c)
    assert E.cup(xi(fm, "J"), xi(fm, "J")).is_zero()


def test_double_transposition_product():
    fm = Fermat(3, 4, 3)
    u, v = P("(1,2)(3,4)", 4, 3), P("(1,3)(2,4)", 4, 3)
    assert CupEngine(fm).sigma_class(u, v) == restrict(fm, phi(fm, [2, 4]).scale(3), u * v)


@pytest.mark.parametrize("n", [3, 4, 5])
def test_worked_nonspecial_product(n):
    fm = Fermat(n, 2, n)
    E = CupEngine(fm)
    z = fm.z
    for p in range(n):
        for q in range(n):
            s = (p + q) % n
            if not s:
                continue
            u, v = f"(1,2)*[{p},{q}]", f"t1^{-s}"
            w = P(u, 2, n) * P(v, 2, n)
            # first step of the worked computation, reference value
            first = E.cup(xi(fm, f"(1,2)*[{p},{-p}]"), xi(fm, f"t2^{s}"))
            assert first == xi(fm, u).scale(-z(p))
            # final value [DERIVED]: n/(1 - zeta^{p+q}) x~^{n-2}, oracle-confirmed
            got = E.cup(xi(fm, u), xi(fm, v))
            assert got == AlgebraElement.monomial(fm, w, (n - 2, 0), n / (1 - z(s)))


@pytest.mark.parametrize("n", [3, 4])
def test_nonspecial_inverse_orders(n):
    fm = Fermat(n, 2, 2 * n)
    E = CupEngine(fm)
    for d in range(1, n):
        u = P(f"(1,2)[{d},0]", 2, n)
        det = fm.z(d)
        top = (n - 2, n - 2)
        assert E.sigma(u, u.inverse()) == rule_nonspecial_inverse(fm, u)
        assert E.sigma(u, u.inverse()).coeff(top) == n ** 2 / (det - 1)
        # the stated n^k det/(1 - det) is the reversed order
        assert E.sigma(u.inverse(), u).coeff(top) == n ** 2 * det / (1 - det)


def test_special_overlap_pure_permutations():
    fm = Fermat(3, 3, 3)
    E = CupEngine(fm)
    for a, b in [("(1,2)", "(2,3)"), ("(1,3)", "(1,2)"), ("(2,3)", "(1,2)")]:
        u, v = P(a, 3, 3), P(b, 3, 3)
        assert rule_special_overlap(fm, u, v) == lead(fm, u, v)
        assert E.sigma(u, v) == fm.const(rule_special_overlap(fm, u, v))


def test_special_times_diag_single_index():
    fm = Fermat(3, 3, 3)
    E = CupEngine(fm)
    c = P("(1,2,3)[1,2,0]", 3, 3)
    h = P("t2", 3, 3)
    assert E.sigma_class(c, h) == rule_special_times_diag(fm, c, h)
    assert E.sigma_class(h, c) == rule_special_times_diag(fm, c, h, left=True)


def test_mixed_transposition_nonvanishing():
    fm = Fermat(3, 2, 3)
    E = CupEngine(fm)
    u1, u2 = P("(1,2)[1,2]", 2, 3), P("(1,2)[2,1]", 2, 3)
    got = E.sigma(u1, u2)
    assert got == rule_mixed_transposition(fm, u1, u2) == fm.const(fm.z(2) - fm.z(1))


def test_sigma_memo():
    fm = Fermat(3, 3, 3)
    E = CupEngine(fm)
    u, v = P("(1,2)", 3, 3), P("(1,2,3)", 3, 3)
    a = E.sigma(u, v)
    calls = E.stats["sigma_calls"]
    assert E.sigma(u, v) is a and E.stats["sigma_calls"] == calls


def test_rule_suite_small():
    res = rule_suite(Fermat(3, 3, 3))
    verified = ["transposition_square", "mixed_transposition", "cycle_inverse", "nonspecial_inverse",
                "nonspecial_inverse_reversed", "diag_inverse", "diag_vanishing", "nonspecial_vanishing",
                "special_overlap", "special_times_diag"]
    for k in verified:
        assert res[k].passed and res[k].checked > 0, k
    # stated variants that the exhaustive check refutes (see the decisions ledger)
    for k in ["mixed_transposition_stated", "cycle_inverse_stated", "special_times_diag_stated"]:
        assert not res[k].passed, k


G33 = all_elements(3, 3)
elems = st.sampled_from(G33)


@settings(max_examples=120, deadline=None)
@given(elems, elems)
def test_parity_vanishing(u, v):
    fm = Fermat(3, 3, 6)
    if (u.d + v.d - (u * v).d) % 2:
        assert not CupEngine(fm).sigma(u, v)


ENGINE = CupEngine(Fermat(3, 3, 6))


@settings(max_examples=150, deadline=None)
@given(elems, elems, elems)
def test_cocycle_associativity(u, v, w):
    fm = ENGINE.fm
    a, b, c = (AlgebraElement.xi(fm, x) for x in (u, v, w))
    assert ENGINE.cup(ENGINE.cup(a, b), c) == ENGINE.cup(a, ENGINE.cup(b, c))


@settings(max_examples=100, deadline=None)
@given(elems)
def test_identity_is_unit(u):
    fm = ENGINE.fm
    e = GroupElement.identity(3, 3)
    assert ENGINE.sigma(e, u) == fm.one() and ENGINE.sigma(u, e) == fm.one()
