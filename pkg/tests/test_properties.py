import pytest

from conftest import make_group
from hhfermat.fixedlocus import Fermat
from hhfermat.properties import (
    Context, all_elements, associativity, frobenius, full_suite, oracle_agreement, rule_suite, single_cycles,
)

VERIFIED_RULES = [
    "transposition_square", "mixed_transposition", "cycle_inverse", "nonspecial_inverse",
    "nonspecial_inverse_reversed", "diag_inverse", "diag_vanishing", "nonspecial_vanishing",
    "special_overlap", "special_times_diag",
]


def test_counts_of_elements():
    assert len(all_elements(2, 3)) == 2 * 9
    assert len(all_elements(3, 2)) == 6 * 8
    assert len(list(single_cycles(3, 3, 3))) == 2 * 27
    assert len(list(single_cycles(3, 3, 1))) == 3 * 2


@pytest.mark.parametrize("gens,N,n", [
    (["(1,2,3)", "J"], 3, 3),
    (["(1,2)[1,3]"], 2, 4),
    (["(1,2)", "[1,2,0]"], 3, 3),
])
def test_full_suite_green(gens, N, n):
    ctx = Context(make_group(gens, N, n))
    results = full_suite(ctx)
    bad = [(r.name, r.failures[:3]) for r in results if not r.passed]
    assert not bad
    assert all(r.checked > 0 for r in results if "overlap" not in r.name)


def test_oracle_never_inconclusive_on_example_two_group():
    ctx = Context(make_group(["J", "(1,2)(3,4)", "(1,3)(2,4)"], 4, 4))
    r = oracle_agreement(ctx)
    assert r.passed
    assert r.checked == 256
    assert r.extra["inconclusive"] == 0


def test_sampled_associativity_on_example_two_group():
    ctx = Context(make_group(["J", "(1,2)(3,4)", "(1,3)(2,4)"], 4, 4))
    r = associativity(ctx, sample=400, seed=1)
    assert r.passed


@pytest.mark.parametrize("n,N", [(3, 2), (4, 2), (5, 2), (3, 3)])
def test_verified_rules(n, N):
    res = rule_suite(Fermat(n, N, 2 * n if n % 2 else n), pair_sample=3000 if N == 3 else None)
    for k in VERIFIED_RULES:
        assert res[k].passed, (k, res[k].failures[:3])


def test_stated_forms_that_disagree_with_the_engine():
    # frozen: these literal closed forms fail against both engine and oracle
    res = rule_suite(Fermat(3, 3, 6), pair_sample=500)
    assert not res["cycle_inverse_stated"].passed
    assert not res["mixed_transposition_stated"].passed
    assert not res["special_times_diag_stated"].passed


def test_table_checks_catch_a_corrupted_product():
    ctx = Context(make_group(["(1,2,3)", "J"], 3, 3))
    T = ctx.table
    F = ctx.fm.F
    # find a nonzero product and scale it
    i, j = next((i, j) for i in range(len(T)) for j in range(len(T)) if T[i][j] and i and j)
    T[i][j] = {k: c * F.rational(2) for k, c in T[i][j].items()}
    assert not associativity(ctx).passed
    assert not frobenius(ctx).passed


def test_sampled_associativity_draws_varied_triples():
    ctx = Context(make_group(["(1,2)[1,3]"], 2, 4))
    r = associativity(ctx, sample=50, seed=3)
    assert r.passed and r.checked == 50
