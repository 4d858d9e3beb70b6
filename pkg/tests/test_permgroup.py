from hypothesis import given, settings, strategies as st

from selfsim.utils.permgroup import (
    StabilizerChain,
    format_cycles,
    identity_perm,
    inv_perm,
    mult_perm,
    parse_cycles,
    perm_group_order,
)


def closure_size(gens, n):
    seen = {identity_perm(n)}
    frontier = [identity_perm(n)]
    while frontier:
        nxt = []
        for p in frontier:
            for g in gens:
                q = mult_perm(p, g)
                if q not in seen:
                    seen.add(q)
                    nxt.append(q)
        frontier = nxt
    return len(seen)


def test_cycle_notation():
    assert parse_cycles("(0 1 2)", 3) == (1, 2, 0)
    assert parse_cycles("()", 2) == (0, 1)
    assert format_cycles((1, 2, 0, 4, 3)) == "(0 1 2)(3 4)"
    assert format_cycles(identity_perm(4)) == "()"


def test_mult_is_left_to_right():
    p, q = (1, 0, 2), (0, 2, 1)
    # 0 -> 1 under p, then 1 -> 2 under q
    assert mult_perm(p, q)[0] == 2
    assert mult_perm(p, inv_perm(p)) == identity_perm(3)


def test_known_orders():
    assert perm_group_order([parse_cycles("(0 1)", 4), parse_cycles("(0 1 2 3)", 4)], 4) == 24
    assert perm_group_order([parse_cycles("(0 1 2 3 4)", 5)], 5) == 5
    assert perm_group_order([], 3) == 1
    # Klein four group
    assert perm_group_order([parse_cycles("(0 1)(2 3)", 4), parse_cycles("(0 2)(1 3)", 4)], 4) == 4


def test_membership():
    chain = StabilizerChain(4)
    chain.add_generator(parse_cycles("(0 1)(2 3)", 4))
    assert chain.contains(parse_cycles("(0 1)(2 3)", 4))
    assert not chain.contains(parse_cycles("(0 1)", 4))


@given(st.integers(2, 6).flatmap(lambda n: st.tuples(st.just(n), st.lists(st.permutations(range(n)), max_size=3))))
@settings(max_examples=60, deadline=None)
def test_order_matches_brute_force(case):
    n, gens = case
    gens = [tuple(g) for g in gens]
    assert perm_group_order(gens, n) == closure_size(gens, n)
