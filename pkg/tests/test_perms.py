"""Permutations of the naturals: chains, decomposition, name actions."""

import random

import pytest

from forcelab import (
    Chain, CohenGridPoset, EMPTY_NAME, InvalidInput, MalformedSigma,
    NotInSubgroup, ONE, Perm, act_condition, act_name, check_name,
    clear_act_cache, column_support, compose, decompose, identity,
    is_fixed_by_Hn, nat, pname, sigma_conjugate, transposition,
    unordered_pair_name, xdot_name,
)


def std_chain():
    # ..., 9, 7, 5, 3, 1, 0, 2, 4, 6, 8, ...
    return Chain(0, (3, 1, 0, 2, 4), (2, 5), (2, 4))


class TestChain:
    def test_values_on_both_tails(self):
        ch = std_chain()
        assert [ch.value(i) for i in range(-2, 7)] == \
            [9, 7, 3, 1, 0, 2, 4, 6, 8]

    def test_index_of_inverts_value(self):
        ch = std_chain()
        for i in range(-6, 10):
            assert ch.index_of(ch.value(i)) == i
        assert ch.index_of(5) is None

    def test_min_value_and_indices_below(self):
        ch = std_chain()
        assert ch.min_value() == 0
        assert sorted(ch.value(i) for i in ch.indices_below(2)) == [0, 1]

    def test_validation(self):
        with pytest.raises(InvalidInput):
            Chain(0, (1, 1), (2, 5), (2, 4))       # repeated middle value
        with pytest.raises(InvalidInput):
            Chain(0, (7, 9), (2, 5), (2, 4))       # middle meets a tail
        with pytest.raises(InvalidInput):
            Chain(0, (0,), (2, 4), (2, 4))         # tails share values
        with pytest.raises(InvalidInput):
            Chain(0, (0,), (0, 5), (2, 4))         # tail step must advance

    def test_shift_relabels_indices_only(self):
        ch = std_chain()
        sh = ch.shift(2)
        for i in range(-5, 9):
            assert sh.value(i) == ch.value(i + 2)

    def test_reverse_swaps_direction(self):
        ch = std_chain()
        rev = ch.reverse()
        for i in range(-6, 7):
            assert rev.value(i) == ch.value(-i)


class TestPerm:
    def test_cycles_canonicalized(self):
        assert Perm([(1, 2, 0)]) == Perm([(0, 1, 2)])
        assert Perm([(3,)]) == identity()

    def test_apply_and_inverse(self):
        high = Chain(0, (13, 11, 10, 12, 14), (2, 15), (2, 14))
        pi = Perm([(0, 1, 2)], [high])
        for x in range(40):
            assert pi.apply_inv(pi.apply(x)) == x
            assert pi.inverse().apply(pi.apply(x)) == x

    def test_overlap_rejected(self):
        with pytest.raises(InvalidInput):
            Perm([(0, 1), (1, 2)])
        with pytest.raises(InvalidInput):
            Perm([(0, 3)], [std_chain()])

    def test_subgroup_predicates(self):
        fin = Perm([(2, 3)])
        inf = Perm((), [std_chain()])
        assert fin.in_G() and fin.in_Hn(2) and not fin.in_Hn(3)
        assert not inf.in_G() and inf.in_Hn_inf(0) and not inf.in_Hn_inf(1)

    def test_compose_finite(self):
        pi = compose(Perm([(0, 1)]), Perm([(1, 2)]))
        assert [pi.apply(x) for x in range(3)] == [1, 2, 0]
        with pytest.raises(InvalidInput):
            compose(Perm((), [std_chain()]), identity())

    def test_transposition_validates(self):
        with pytest.raises(InvalidInput):
            transposition(4, 4)


def random_perm(rng, fix_below=0):
    """Disjoint random cycles and at most one chain above a floor."""
    pool = list(range(fix_below, fix_below + 30))
    rng.shuffle(pool)
    cycles = []
    for _ in range(rng.randrange(3)):
        k = rng.randrange(2, 5)
        cycles.append(tuple(pool.pop() for _ in range(k)))
    chains = []
    if rng.random() < 0.7:
        mid = tuple(pool.pop() for _ in range(rng.randrange(1, 4)))
        base = fix_below + 40
        chains.append(Chain(0, mid, (2, base), (2, base + 1)))
    return Perm(cycles, chains)


class TestDecompose:
    def test_chain_split_oracle(self):
        pi = Perm((), [std_chain()])
        first, second = decompose(pi, 0, 2)
        assert first == Perm([(1, 0, 2)])
        assert second.fixes_below(2) and not second.in_G()
        for x in range(60):
            assert pi.apply(x) == first.apply(second.apply(x))

    def test_split_laws_randomized(self):
        rng = random.Random(20240817)
        for trial in range(60):
            n = rng.randrange(0, 5)
            k = rng.randrange(n + 1, 11)
            pi = random_perm(rng, fix_below=n)
            first, second = decompose(pi, n, k)
            assert first.in_Hn(n), (trial, pi)
            assert second.fixes_below(k), (trial, pi)
            for x in range(100):
                assert pi.apply(x) == first.apply(second.apply(x)), \
                    (trial, pi, x)

    def test_requires_fixing_below_n(self):
        with pytest.raises(NotInSubgroup):
            decompose(Perm([(0, 5)]), 1, 2)

    def test_requires_n_below_k(self):
        with pytest.raises(InvalidInput):
            decompose(identity(), 2, 2)


GRID = CohenGridPoset(6, 2)


class TestNameAction:
    def test_act_condition_relabels_columns(self):
        cond = frozenset({((0, 1), 1), ((2, 0), 0)})
        out = act_condition(transposition(0, 2), cond)
        assert out == frozenset({((2, 1), 1), ((0, 0), 0)})
        assert act_condition(transposition(0, 2), ONE) is ONE

    def test_act_name_moves_column_names(self):
        pi = transposition(1, 4)
        assert act_name(pi, xdot_name(GRID, 1)) == xdot_name(GRID, 4)
        assert act_name(pi, xdot_name(GRID, 0)) == xdot_name(GRID, 0)

    def test_act_name_is_functorial(self):
        tau = unordered_pair_name(xdot_name(GRID, 0), xdot_name(GRID, 1))
        pi, rho = transposition(0, 1), transposition(1, 2)
        assert act_name(pi, act_name(rho, tau)) == \
            act_name(compose(pi, rho), tau)

    def test_act_name_fixes_check_names(self):
        clear_act_cache()
        tau = check_name(nat(3))
        assert act_name(transposition(0, 5), tau) == tau

    def test_column_support(self):
        tau = pname([(frozenset({((3, 0), 1)}), xdot_name(GRID, 1))])
        assert column_support(tau) == frozenset({1, 3})


class TestFixedness:
    def test_single_column_name(self):
        assert is_fixed_by_Hn(xdot_name(GRID, 0), 1)
        assert not is_fixed_by_Hn(xdot_name(GRID, 0), 0)

    def test_pair_moved_by_fresh_transposition(self):
        tau = unordered_pair_name(xdot_name(GRID, 2), xdot_name(GRID, 3))
        assert not is_fixed_by_Hn(tau, 2)

    def test_check_names_always_fixed(self):
        assert is_fixed_by_Hn(check_name(nat(2)), 0)
        assert is_fixed_by_Hn(EMPTY_NAME, 0)


class TestSigmaConjugate:
    def test_oracle(self):
        pi, out = sigma_conjugate({(0, 0), (1, 2)}, 1, 3)
        assert pi == Perm([(1, 4), (2, 5)])
        assert out == frozenset({(0, 0), (4, 5)})

    def test_translated_part_lives_on_fresh_columns(self):
        _, out = sigma_conjugate({(0, 0), (1, 1), (2, 3)}, 2, 4)
        assert out == frozenset({(0, 0), (1, 1), (6, 7)})

    def test_rejects_non_injection(self):
        with pytest.raises(MalformedSigma):
            sigma_conjugate({(0, 0), (1, 0)}, 0, 2)

    def test_rejects_missing_identity_part(self):
        with pytest.raises(MalformedSigma):
            sigma_conjugate({(0, 1), (1, 0)}, 1, 2)

    def test_rejects_escaping_bound(self):
        with pytest.raises(MalformedSigma):
            sigma_conjugate({(0, 0), (1, 5)}, 1, 3)
