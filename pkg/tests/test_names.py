"""Names over a poset and their evaluation along filters."""

import pytest
from hypothesis import given, strategies as st

from forcelab import (
    EMPTY, EMPTY_NAME, Family, FlatPoset, HF, InvalidInput, ONE,
    check_name, eval_name, gamma_name, generic_filter,
    hereditary_closure, name_conditions, name_hf, nat, ordered_pair_name,
    pair_names, pname, union_name, unordered_pair_name, kuratowski,
)

FAM = Family([("a", [nat(0), nat(1)]), ("b", [nat(2)])])
FLAT = FlatPoset(FAM)
G_A = generic_filter(FLAT, "a")
G_B = generic_filter(FLAT, "b")


def small_hf():
    return st.recursive(
        st.just(EMPTY), lambda kids: st.frozensets(kids, max_size=3).map(HF),
        max_leaves=6)


class TestBasics:
    def test_entries_deduplicate(self):
        tau = pname([("a", EMPTY_NAME), ("a", EMPTY_NAME)])
        assert len(tau.sorted_entries()) == 1

    def test_rank_counts_nesting(self):
        assert EMPTY_NAME.rank == 0
        assert pname([(ONE, EMPTY_NAME)]).rank == 1
        assert pname([(ONE, pname([(ONE, EMPTY_NAME)]))]).rank == 2

    def test_hashable_and_equal_by_entries(self):
        t1 = pname([("a", EMPTY_NAME), ("b", EMPTY_NAME)])
        t2 = pname([("b", EMPTY_NAME), ("a", EMPTY_NAME)])
        assert t1 == t2 and hash(t1) == hash(t2)

    @given(small_hf())
    def test_check_name_rank_matches_set_rank(self, x):
        assert check_name(x).rank == x.rank


class TestEvaluation:
    @given(small_hf())
    def test_check_name_evaluates_to_its_set(self, x):
        assert eval_name(check_name(x), G_A) == x
        assert eval_name(check_name(x), G_B) == x

    def test_eval_keeps_only_filter_entries(self):
        tau = pname([("a", check_name(nat(1))), ("b", check_name(nat(2)))])
        assert eval_name(tau, G_A) == HF([nat(1)])
        assert eval_name(tau, G_B) == HF([nat(2)])

    def test_gamma_evaluates_to_filter_image(self):
        gamma = gamma_name(FLAT)
        assert eval_name(gamma, G_A) == HF(
            [FLAT.condition_hf("a"), FLAT.condition_hf(FLAT.top)])

    def test_pair_names(self):
        t1, t2 = check_name(nat(1)), check_name(nat(2))
        assert eval_name(unordered_pair_name(t1, t2), G_A) == \
            HF([nat(1), nat(2)])
        assert eval_name(ordered_pair_name(t1, t2), G_A) == \
            kuratowski(nat(1), nat(2))
        assert pair_names(t1, t2) == (
            unordered_pair_name(t1, t2), ordered_pair_name(t1, t2))

    def test_union_collapse(self):
        rho = pname([("a", pname([("a", check_name(nat(1)))])),
                     ("b", pname([(ONE, check_name(nat(2)))]))])
        tau = union_name(FLAT, rho)
        assert eval_name(tau, G_A) == HF([nat(1)])
        assert eval_name(tau, G_B) == HF([nat(2)])

    def test_union_respects_conjunction_of_conditions(self):
        # the inner entry only survives below conditions extending both
        rho = pname([("a", pname([("b", check_name(nat(1)))]))])
        tau = union_name(FLAT, rho)
        assert eval_name(tau, G_A) == EMPTY
        assert eval_name(tau, G_B) == EMPTY


class TestStructure:
    def test_hereditary_closure_contains_children(self):
        tau = pname([("a", pname([(ONE, EMPTY_NAME)]))])
        closure = hereditary_closure([tau])
        assert EMPTY_NAME in closure and tau in closure
        assert len(closure) == 3

    def test_name_conditions(self):
        tau = pname([("a", pname([("b", EMPTY_NAME)]))])
        assert name_conditions(tau) == {"a", "b"}

    def test_name_hf_encodes_top_entries(self):
        tau = pname([(ONE, EMPTY_NAME)])
        assert name_hf(tau) == HF([kuratowski(EMPTY, EMPTY)])

    def test_name_hf_rejects_unencodable_conditions(self):
        with pytest.raises(InvalidInput):
            name_hf(pname([("a", EMPTY_NAME)]))

    def test_name_hf_with_encoder(self):
        tau = pname([("a", EMPTY_NAME)])
        out = name_hf(tau, FLAT.condition_hf)
        assert out == HF([kuratowski(FLAT.condition_hf("a"), EMPTY)])

    def test_check_name_entries_use_one(self):
        tau = check_name(nat(2))
        assert all(c is ONE for c, _ in tau.sorted_entries())
