from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from conftest import make_group
from hhfermat.group import (
    GroupElement, GroupError, age, closure, cycle_decompose, pair_decompose,
    parse_element, parse_generator, special_decompose,
)


def P(s, N=3, n=3):
    return parse_element(s, N, n)


def test_parse_forms_agree():
    assert P("(1,2)t1t2^-1", 2, 4) == P("(1,2)", 2, 4) * P("[1,3]", 2, 4)
    assert P("J^2") == P("[2,2,2]")
    assert P("t1*t3^2") == P("[1,0,2]")
    assert P("id").is_identity() and P("()").is_identity()


@pytest.mark.parametrize("bad", ["(1,2", "(1,4)", "[1,2]", "t4", "(1,1)", "q"])
def test_parse_errors(bad):
    with pytest.raises(GroupError):
        P(bad)


def test_generator_dict_form():
    g = parse_generator({"perm": "(1,2)", "diag": [1, 2, 0]}, 3, 3)
    assert g == P("(1,2)") * P("[1,2,0]")
    with pytest.raises(GroupError):
        parse_generator({"perm": "(1,2)t1"}, 3, 3)


def test_action_convention():
    # T_u(x_k) = g_k x_{sigma(k)}: composition matches matrix product
    a, b = P("(1,2,3)[1,0,0]"), P("(1,2)[0,2,0]")
    ab = a * b
    for k in range(3):
        assert ab.perm[k] == a.perm[b.perm[k]]
        assert ab.diag[k] == (a.diag[b.perm[k]] + b.diag[k]) % 3


def test_example1_group_order():
    assert len(make_group(["(1,2,3)", "J"], 3, 3)) == 9
    assert len(make_group(["(1,2,3)", "[1,2,0]"], 3, 3)) == 27


def test_closure_cap():
    with pytest.raises(GroupError):
        closure([P("(1,2,3)"), P("(1,2)"), P("J")], 3, 3, cap=10)


def test_cycle_decomposition_example():
    u = P("(1,2,3,4)(5,6)", 6, 3) * P("[1,2,0,1,0,2]", 6, 3)
    cd = cycle_decompose(u)
    assert cd.diagonal_rest.is_identity()
    assert [c.indices for c in cd.cycles] == [(1, 2, 3, 4), (5, 6)]
    assert [c.exps for c in cd.cycles] == [(1, 2, 0, 1), (0, 2)]


def test_special_decompose_product():
    u = P("(1,2,3,4)(5,6)", 6, 3) * P("[1,2,0,1,0,2]", 6, 3)
    acc = GroupElement.identity(6, 3)
    for s, t in special_decompose(u):
        assert s.is_special() and t.is_diagonal()
        acc = acc * s * t
    assert acc == u


def test_pair_decompose_refines():
    a, b = P("(1,2,3,4)(5,6)", 6, 3), P("(1,2)(4,5)", 6, 3)
    pa, pb = pair_decompose(a, b)
    assert [x.perm_string() for x in pa] == ["(1,2)", "(2,3,4)", "(5,6)"]
    assert [x.perm_string() for x in pb] == ["(1,2)", "(4,5)"]


def test_ages():
    assert age(P("(1,2,3)")) == 1  # special 3-cycle: (k-1)/2
    assert age(P("J")) == 1 and age(P("J^2")) == 2
    # non-special 2-cycle with exponent sum A = 1, n = 3: A/n + (k-1)/2
    assert age(P("(1,2)[1,0,0]")) == Fraction(1, 3) + Fraction(1, 2)


def test_fixed_data():
    u = P("(1,2)[1,2,0,0]", 4, 3)
    fd = u.fixed_data
    assert fd.special and fd.N_u == 3 and fd.d_u == 1 and fd.M_u == 0
    v = P("(1,2)[1,0,0,0]", 4, 3)
    assert v.fixed_data.M_u == 1 and v.N_u == 2


def test_a4_class_and_centralizer():
    G = make_group(["(1,2,3)", "(1,2)(3,4)"], 4, 2)
    assert len(G) == 12
    u = P("(1,2)(3,4)", 4, 2)
    cls = next(c for r, c in G.conjugacy_classes if u in c)
    assert {x.perm_string() for x in cls} == {"(1,2)(3,4)", "(1,3)(2,4)", "(1,4)(2,3)"}
    assert len(G.centralizer(u)) == 4


def test_eigen_order():
    assert make_group(["(1,2,3)", "J"], 3, 3).eigen_order() == 3
    assert make_group(["J", "(1,2)(3,4)", "(1,3)(2,4)"], 4, 4).eigen_order() == 4
    # a non-special transposition needs square roots of zeta_n
    assert make_group(["(1,2)[1,0]"], 2, 3).eigen_order() == 6


def test_diag_in_sl():
    assert make_group(["(1,2,3)", "J"], 3, 3).diag_in_sl()
    assert not make_group(["t1"], 2, 3).diag_in_sl()


elements = st.builds(
    lambda perm, diag: GroupElement(perm, diag, 4),
    st.permutations(range(4)),
    st.lists(st.integers(0, 3), min_size=4, max_size=4),
)


@settings(max_examples=80, deadline=None)
@given(elements, elements, elements)
def test_group_axioms(a, b, c):
    e = GroupElement.identity(4, 4)
    assert (a * b) * c == a * (b * c)
    assert a * a.inverse() == e and a.inverse() * a == e
    assert (a * b).inverse() == b.inverse() * a.inverse()
    assert a ** a.order() == e


@settings(max_examples=80, deadline=None)
@given(elements, elements)
def test_invariants_under_conjugation(u, v):
    w = u.conj(v)
    assert w.d == u.d and w.N_u == u.N_u and age(w) == age(u)
    assert w.det_exponent() == u.det_exponent()


@settings(max_examples=80, deadline=None)
@given(elements)
def test_age_sum(u):
    assert age(u) + age(u.inverse()) == u.d


@settings(max_examples=60, deadline=None)
@given(elements)
def test_str_roundtrip(u):
    text = f"{u.perm_string()}*[{','.join(map(str, u.diag))}]"
    assert parse_element(text, 4, 4) == u
